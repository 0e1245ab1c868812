//! Finite abelian covers: character subgroups of the realization group,
//! Pardini building data with its linear relation and epsilon table,
//! eigensheaf pushforward decompositions, Hodge numbers of covers, and the
//! congruence-cover quasi-polynomials h^q(N).

use crate::geometry::{CurveModel, ResolvedGeometry};
use crate::lattice::Lattice;
use crate::matrix::{snf, ZMatrix};
use crate::parabolic::{
    decompose_boundaries, group_law, inverse, torsion_points, BoundaryRealization, DivisorSet,
    ResolutionData,
};
use crate::quasipoly::QuasiPolynomial;
use crate::rat::{self, Int};
use crate::strata::{compute_strata, count_stratum_torsion, stratum_torsion_qp};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::collections::BTreeSet;

const MAX_SUBGROUP: usize = 1 << 20;

/// A finite subgroup of the realization group, generated from torsion
/// elements and closed under the group law.
#[derive(Clone, Debug)]
pub struct CharacterSubgroup {
    pub divisors: DivisorSet,
    pub generators: Vec<BoundaryRealization>,
    /// all elements, identity first, then sorted canonically
    pub elements: Vec<BoundaryRealization>,
    /// invariant factors > 1 of the abstract group, in dividing order
    pub invariant_factors: Vec<Int>,
}

impl CharacterSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Closes the generator set under the group law and derives the abstract
/// group structure from the Smith normal form of the relation lattice.
pub fn generate_subgroup(
    d: &DivisorSet,
    generators: Vec<BoundaryRealization>,
) -> Result<CharacterSubgroup> {
    for g in &generators {
        if g.alpha.len() != d.size() {
            return Err(Error::Usage("generator over a different divisor set".into()));
        }
    }
    let identity = BoundaryRealization::identity(d);
    let mut seen: BTreeSet<BoundaryRealization> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut queue = vec![identity.clone()];
    while let Some(x) = queue.pop() {
        for g in &generators {
            let y = group_law(d, &x, g)?;
            if seen.insert(y.clone()) {
                if seen.len() > MAX_SUBGROUP {
                    return Err(Error::Usage("generated subgroup is too large".into()));
                }
                queue.push(y);
            }
        }
    }
    // closure under the group law of torsion generators is already a group;
    // verify inverses as a cheap structural assertion
    for x in &seen {
        let xi = inverse(d, x)?;
        if !seen.contains(&xi) {
            return Err(Error::Usage(
                "generators do not generate a finite group (non-torsion input?)".into(),
            ));
        }
    }
    let mut elements: Vec<BoundaryRealization> = seen.into_iter().collect();
    elements.sort();
    let pos = elements.iter().position(|e| e.is_identity()).unwrap();
    elements.swap(0, pos);
    elements[1..].sort();

    let invariant_factors = invariant_factors_of(d, &generators, elements.len())?;
    Ok(CharacterSubgroup { divisors: d.clone(), generators, elements, invariant_factors })
}

/// Invariant factors of Z^g / ker(phi) where phi sends the standard basis to
/// the generators; the kernel is cut out by congruences on the alpha parts
/// and the torsion labels.
fn invariant_factors_of(
    d: &DivisorSet,
    generators: &[BoundaryRealization],
    expected_order: usize,
) -> Result<Vec<Int>> {
    let g = generators.len();
    if g == 0 {
        return Ok(vec![]);
    }
    let s = d.size();
    let labels = d.variety.pic_tau_torsion.len();
    let mut denom = Int::one();
    for gen in generators {
        denom = denom.lcm(&rat::denominator_lcm(gen.alpha.iter()));
    }
    // kernel of t -> (sum t_i alpha_i mod Z^S, sum t_i label_i mod factors):
    // solve A t + M k = 0 over the integers and project to t
    let rows = s + labels;
    let cols = g + rows;
    let mut m = ZMatrix::zero(rows, cols);
    for (i, gen) in generators.iter().enumerate() {
        for r in 0..s {
            let scaled = &gen.alpha[r] * rat::rat_from_int(&denom);
            debug_assert!(scaled.is_integer());
            m.set(r, i, scaled.to_integer());
        }
        for (r, lab) in gen.torsion_label.iter().enumerate() {
            m.set(s + r, i, lab.clone());
        }
    }
    for r in 0..s {
        m.set(r, g + r, denom.clone());
    }
    for r in 0..labels {
        m.set(s + r, g + s + r, d.variety.pic_tau_torsion[r].clone());
    }
    let full = crate::lattice::kernel_lattice(&m.to_rational());
    let mut trows = Vec::new();
    for row in full.basis_rows() {
        trows.push(row[..g].to_vec());
    }
    let ker = Lattice::from_rows(g, trows);
    if ker.rank() < g {
        return Err(Error::Usage("generators are not torsion".into()));
    }
    let (diag, _, _) = snf(ker.basis_matrix());
    let mut factors = Vec::new();
    let mut order = Int::one();
    for i in 0..g {
        let f = diag.get(i, i).clone();
        order *= &f;
        if f > Int::one() {
            factors.push(f);
        }
    }
    if order != Int::from(expected_order as u64) {
        return Err(Error::Internal(format!(
            "group order mismatch: closure found {expected_order}, relation lattice gives {order}"
        )));
    }
    Ok(factors)
}

/// Pardini building data for a character subgroup: inertia orders m_i,
/// indices iota_{chi,i} = m_i alpha_{chi,i}, and the epsilon table
/// (eps_{chi,chi'})_i = [iota_{chi,i} + iota_{chi',i} >= m_i].
#[derive(Clone, Debug)]
pub struct BuildingData {
    /// inertia order per component, the lcm of the alpha denominators
    pub inertia: Vec<Int>,
    /// iota[c][i] for character index c and component i
    pub iota: Vec<Vec<Int>>,
    /// eps[c][c'][i] in {0, 1}
    pub eps: Vec<Vec<Vec<u8>>>,
}

pub fn building_data(g: &CharacterSubgroup) -> Result<BuildingData> {
    let d = &g.divisors;
    let s = d.size();
    let k = g.order();
    let mut inertia = vec![Int::one(); s];
    for x in &g.elements {
        for (i, a) in x.alpha.iter().enumerate() {
            inertia[i] = inertia[i].lcm(a.denom());
        }
    }
    let mut iota = Vec::with_capacity(k);
    for x in &g.elements {
        let row: Vec<Int> = x
            .alpha
            .iter()
            .zip(&inertia)
            .map(|(a, m)| {
                let v = a * rat::rat_from_int(m);
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        iota.push(row);
    }
    let mut eps = vec![vec![vec![0u8; s]; k]; k];
    for c1 in 0..k {
        for c2 in 0..k {
            for i in 0..s {
                if &iota[c1][i] + &iota[c2][i] >= inertia[i] {
                    eps[c1][c2][i] = 1;
                }
            }
        }
    }
    // the linear relation L_chi + L_chi' = L_chi chi' + eps . D must hold for
    // every pair; failure signals corrupted subgroup input
    for c1 in 0..k {
        for c2 in 0..k {
            let prod = group_law(d, &g.elements[c1], &g.elements[c2])?;
            let mut rhs = prod.bundle.clone();
            for i in 0..s {
                if eps[c1][c2][i] == 1 {
                    for (r, cl) in rhs.iter_mut().zip(&d.classes[i]) {
                        *r += cl;
                    }
                }
            }
            let lhs: Vec<Int> = g.elements[c1]
                .bundle
                .iter()
                .zip(&g.elements[c2].bundle)
                .map(|(a, b)| a + b)
                .collect();
            if lhs != rhs {
                return Err(Error::Internal(format!(
                    "building-data linear relation failed for characters {c1}, {c2}"
                )));
            }
        }
    }
    Ok(BuildingData { inertia, iota, eps })
}

/// The rank-one summands of the pushforward of the structure sheaf: the
/// classes -L_chi on the base, or -mu*L_chi + floor(e(alpha_chi)) . E on a
/// log resolution.
pub fn pushforward_decomposition(
    g: &CharacterSubgroup,
    r: Option<&ResolutionData>,
) -> Vec<Vec<Int>> {
    g.elements
        .iter()
        .map(|x| match r {
            None => x.bundle.iter().map(|v| -v).collect(),
            Some(res) => {
                let neg_bundle: Vec<Int> = x.bundle.iter().map(|v| -v).collect();
                let floors = res.floors_of(&x.alpha);
                res.class_on_target(&neg_bundle, &floors)
            }
        })
        .collect()
}

/// dim H^0(Y, Omega^q) of a nonsingular model of the cover: the sum over
/// characters of h^{n-q}(X, omega_X ⊗ L_chi ⊗ J(alpha_chi . D)), each term
/// evaluated on the resolution.
pub fn cover_hodge(geom: &ResolvedGeometry, g: &CharacterSubgroup, q: usize) -> Result<u64> {
    if q > geom.dim {
        return Ok(0);
    }
    let mut cache: BTreeMap<Vec<Int>, u64> = BTreeMap::new();
    let mut total = 0u64;
    for x in &g.elements {
        let cls = geom.adjoint_class(&x.bundle, &x.alpha);
        let h = match cache.get(&cls) {
            Some(v) => *v,
            None => {
                let v = geom.hq_on_target(&cls, geom.dim - q)?;
                cache.insert(cls, v);
                v
            }
        };
        total += h;
    }
    Ok(total)
}

/// h^q(N) of the congruence cover, direct mode: the Hodge number summed over
/// the full N-torsion character group.
pub fn congruence_hodge(geom: &ResolvedGeometry, q: usize, n: u64) -> Result<Int> {
    if q > geom.dim {
        return Ok(Int::zero());
    }
    let b = decompose_boundaries(&geom.divisors)?;
    let chars = torsion_points(&geom.divisors, &b, n)?;
    let mut cache: BTreeMap<Vec<Int>, u64> = BTreeMap::new();
    let mut total = Int::zero();
    for x in &chars {
        let cls = geom.adjoint_class(&x.bundle, &x.alpha);
        let h = match cache.get(&cls) {
            Some(v) => *v,
            None => {
                let v = geom.hq_on_target(&cls, geom.dim - q)?;
                cache.insert(cls, v);
                v
            }
        };
        total += Int::from(h);
    }
    Ok(total)
}

/// h^q(N) as a quasi-polynomial: sum over i >= 1 of #V_i^{n-q}[N].
pub fn congruence_hodge_qp(geom: &ResolvedGeometry, q: usize) -> Result<QuasiPolynomial> {
    if q > geom.dim {
        return Ok(QuasiPolynomial::zero());
    }
    let table = compute_strata(geom, None)?;
    congruence_hodge_qp_from(geom, &table, q)
}

fn congruence_hodge_qp_from(
    geom: &ResolvedGeometry,
    table: &crate::strata::StrataTable,
    q: usize,
) -> Result<QuasiPolynomial> {
    let qdual = geom.dim - q;
    let mut acc = QuasiPolynomial::zero();
    let mut i = 1usize;
    while !table.members(qdual, i).is_empty() {
        acc = acc.add(&stratum_torsion_qp(table, qdual, i)?);
        i += 1;
    }
    Ok(acc)
}

/// Verifies QP mode and raw stratum counts against direct mode on a range
/// of torsion levels.
pub fn verify_congruence_hodge(geom: &ResolvedGeometry, q: usize, nmax: u64) -> Result<()> {
    if q > geom.dim {
        return Ok(());
    }
    let table = compute_strata(geom, None)?;
    let qp = congruence_hodge_qp_from(geom, &table, q)?;
    let qdual = geom.dim - q;
    for n in 1..=nmax {
        let direct = congruence_hodge(geom, q, n)?;
        let fitted = qp.eval_count(n)?;
        if direct != fitted {
            return Err(Error::Internal(format!(
                "congruence Hodge modes disagree at q = {q}, N = {n}: direct {direct}, quasi-polynomial {fitted}"
            )));
        }
        let mut sum = Int::zero();
        let mut i = 1usize;
        while !table.members(qdual, i).is_empty() {
            sum += count_stratum_torsion(&table, qdual, i, n)?;
            i += 1;
        }
        if sum != direct {
            return Err(Error::Internal(format!(
                "stratum counts disagree with direct mode at q = {q}, N = {n}"
            )));
        }
    }
    Ok(())
}

/// Independent genus oracle for covers of P^1:
/// 2g - 2 = |G| (-2) + sum_p (|G|/m_p)(m_p - 1).
pub fn riemann_hurwitz_genus(c: &CurveModel, g: &CharacterSubgroup) -> Result<Int> {
    if g.divisors.size() != c.len() || g.divisors.variety.name != "P1" {
        return Err(Error::Usage("Riemann-Hurwitz oracle needs a curve subgroup".into()));
    }
    let data = building_data(g)?;
    let order = Int::from(g.order() as u64);
    let mut rhs = &order * Int::from(-2);
    for m in &data.inertia {
        let (quot, rem) = order.div_rem(m);
        if !rem.is_zero() {
            return Err(Error::Internal("inertia order does not divide the group order".into()));
        }
        rhs += quot * (m - Int::one());
    }
    let total = rhs + Int::from(2);
    let (genus, rem) = total.div_rem(&Int::from(2));
    if !rem.is_zero() {
        return Err(Error::Internal("Riemann-Hurwitz parity violated".into()));
    }
    Ok(genus)
}
