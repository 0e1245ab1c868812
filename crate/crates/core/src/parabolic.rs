//! The group of realizations of boundaries: pairs (L, alpha) with
//! c1(L) = alpha . [D], the fractional-part group law, torsion, the polytope
//! decomposition of the realizable boundaries, and the comparison with a log
//! resolution (monodromy pullback, parabolic pullback, Deligne extension).

use crate::lattice::{kernel_lattice, Lattice};
use crate::matrix::{QMatrix, ZMatrix};
use crate::polytope::{self, Constraint, HalfOpenPolytope, Rel};
use crate::rat::{self, Int, Rat};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Numerical model of the underlying variety: the Neron-Severi lattice with
/// its intersection form, the canonical class, and descriptors for the
/// torsion and continuous parts of Pic^tau.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyModel {
    pub name: String,
    pub ns_rank: usize,
    pub intersection_form: ZMatrix,
    pub canonical_class: Vec<Int>,
    /// invariant factors of the finite torsion part; empty means trivial
    pub pic_tau_torsion: Vec<Int>,
    /// symbolic rank of the continuous part Pic^0
    pub pic0_rank: usize,
}

impl VarietyModel {
    pub fn new(
        name: &str,
        intersection_form: ZMatrix,
        canonical_class: Vec<Int>,
        pic_tau_torsion: Vec<Int>,
        pic0_rank: usize,
    ) -> Result<Self> {
        let n = intersection_form.rows();
        if intersection_form.cols() != n || canonical_class.len() != n {
            return Err(Error::Dimension("variety model shape mismatch".into()));
        }
        if intersection_form != intersection_form.transpose() {
            return Err(Error::Usage("intersection form must be symmetric".into()));
        }
        Ok(VarietyModel {
            name: name.to_string(),
            ns_rank: n,
            intersection_form,
            canonical_class,
            pic_tau_torsion,
            pic0_rank,
        })
    }

    pub fn p2() -> Self {
        VarietyModel::new("P2", ZMatrix::from_i64(&[&[1]]), vec![Int::from(-3)], vec![], 0).unwrap()
    }

    pub fn p1() -> Self {
        VarietyModel::new("P1", ZMatrix::from_i64(&[&[1]]), vec![Int::from(-2)], vec![], 0).unwrap()
    }

    pub fn pair(&self, u: &[Int], v: &[Int]) -> Int {
        let mv = self.intersection_form.mul_vec(v);
        u.iter().zip(&mv).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSet {
    pub variety: VarietyModel,
    /// NS classes of the components D_i, indexed by i in S
    pub classes: Vec<Vec<Int>>,
}

impl DivisorSet {
    pub fn new(variety: VarietyModel, classes: Vec<Vec<Int>>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::Usage("divisor set must have at least one component".into()));
        }
        if classes.iter().any(|c| c.len() != variety.ns_rank) {
            return Err(Error::Dimension("component class rank mismatch".into()));
        }
        if classes.iter().any(|c| c.iter().all(|x| x.is_zero())) {
            return Err(Error::Usage("component classes must be nonzero".into()));
        }
        Ok(DivisorSet { variety, classes })
    }

    pub fn size(&self) -> usize {
        self.classes.len()
    }

    /// The linear map l : R^S -> NS ⊗ R, alpha -> sum alpha_i [D_i],
    /// as a matrix with the [D_i] as columns.
    pub fn class_map(&self) -> QMatrix {
        let ns = self.variety.ns_rank;
        QMatrix::from_rows(
            (0..ns)
                .map(|r| self.classes.iter().map(|c| rat::rat_from_int(&c[r])).collect())
                .collect(),
        )
    }

    pub fn c1(&self, alpha: &[Rat]) -> Vec<Rat> {
        self.class_map().mul_vec(&alpha.to_vec())
    }
}

/// A realization (L, alpha) of the boundary alpha . D: an NS class plus a
/// torsion label, and alpha in [0,1)^S with c1(L) = alpha . [D] exactly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundaryRealization {
    pub bundle: Vec<Int>,
    pub torsion_label: Vec<Int>,
    pub alpha: Vec<Rat>,
}

impl BoundaryRealization {
    pub fn new(d: &DivisorSet, bundle: Vec<Int>, torsion_label: Vec<Int>, alpha: Vec<Rat>) -> Result<Self> {
        if bundle.len() != d.variety.ns_rank
            || alpha.len() != d.size()
            || torsion_label.len() != d.variety.pic_tau_torsion.len()
        {
            return Err(Error::Dimension("realization shape mismatch".into()));
        }
        if alpha.iter().any(|a| a.is_negative() || *a >= Rat::one()) {
            return Err(Error::Usage("boundary coefficients must lie in [0, 1)".into()));
        }
        let c1 = d.c1(&alpha);
        let ok = c1
            .iter()
            .zip(&bundle)
            .all(|(c, b)| *c == rat::rat_from_int(b));
        if !ok {
            return Err(Error::Usage(format!(
                "c1 condition violated: alpha.[D] = {:?} but bundle class is {:?}",
                c1.iter().map(rat::format_rat).collect::<Vec<_>>(),
                bundle
            )));
        }
        Ok(BoundaryRealization { bundle, torsion_label, alpha })
    }

    pub fn identity(d: &DivisorSet) -> Self {
        BoundaryRealization {
            bundle: vec![Int::zero(); d.variety.ns_rank],
            torsion_label: vec![Int::zero(); d.variety.pic_tau_torsion.len()],
            alpha: vec![Rat::zero(); d.size()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.bundle.iter().all(|x| x.is_zero())
            && self.torsion_label.iter().all(|x| x.is_zero())
            && self.alpha.iter().all(|x| x.is_zero())
    }
}

fn reduce_label(d: &DivisorSet, label: Vec<Int>) -> Vec<Int> {
    label
        .into_iter()
        .zip(&d.variety.pic_tau_torsion)
        .map(|(x, f)| x.mod_floor(f))
        .collect()
}

/// (L, alpha) . (L', alpha') = (L + L' - floor(alpha + alpha') . D, {alpha + alpha'})
pub fn group_law(d: &DivisorSet, x: &BoundaryRealization, y: &BoundaryRealization) -> Result<BoundaryRealization> {
    if x.alpha.len() != d.size() || y.alpha.len() != d.size() {
        return Err(Error::Usage("realizations over mismatched divisor sets".into()));
    }
    let mut bundle: Vec<Int> = x.bundle.iter().zip(&y.bundle).map(|(a, b)| a + b).collect();
    let mut alpha = Vec::with_capacity(d.size());
    for (i, (ax, ay)) in x.alpha.iter().zip(&y.alpha).enumerate() {
        let s = ax + ay;
        let fl = rat::rat_floor(&s);
        if !fl.is_zero() {
            for (br, cl) in bundle.iter_mut().zip(&d.classes[i]) {
                *br -= &fl * cl;
            }
        }
        alpha.push(rat::rat_frac(&s));
    }
    let label = reduce_label(
        d,
        x.torsion_label.iter().zip(&y.torsion_label).map(|(a, b)| a + b).collect(),
    );
    BoundaryRealization::new(d, bundle, label, alpha)
}

/// Inverse: (M, beta) with M = -L + sum_{alpha_i != 0} [D_i] and
/// beta_i = 0 if alpha_i = 0, else 1 - alpha_i.
pub fn inverse(d: &DivisorSet, x: &BoundaryRealization) -> Result<BoundaryRealization> {
    let mut bundle: Vec<Int> = x.bundle.iter().map(|v| -v).collect();
    let mut beta = Vec::with_capacity(d.size());
    for (i, a) in x.alpha.iter().enumerate() {
        if a.is_zero() {
            beta.push(Rat::zero());
        } else {
            for (br, cl) in bundle.iter_mut().zip(&d.classes[i]) {
                *br += cl;
            }
            beta.push(Rat::one() - a);
        }
    }
    let label = reduce_label(d, x.torsion_label.iter().map(|v| -v).collect());
    BoundaryRealization::new(d, bundle, label, beta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionOrder {
    Finite(u64),
    Infinite,
}

/// Least N with x^N = identity, by iterating the group law up to the lcm of
/// the alpha denominators times the torsion exponent of the model.
pub fn torsion_order(d: &DivisorSet, x: &BoundaryRealization) -> Result<TorsionOrder> {
    let dlcm = rat::denominator_lcm(x.alpha.iter());
    let mut exponent = Int::one();
    for f in &d.variety.pic_tau_torsion {
        exponent = exponent.lcm(f);
    }
    let cap = (dlcm * exponent)
        .to_u64()
        .ok_or_else(|| Error::Usage("torsion order out of range".into()))?;
    let mut acc = x.clone();
    for k in 1..=cap {
        if acc.is_identity() {
            return Ok(TorsionOrder::Finite(k));
        }
        acc = group_law(d, &acc, x)?;
    }
    // a finite order divides lcm(denominators) * torsion exponent <= cap
    Ok(TorsionOrder::Infinite)
}

#[derive(Clone, Debug)]
pub struct Representative {
    pub realization: BoundaryRealization,
    pub torsion_order: TorsionOrder,
}

#[derive(Clone, Debug)]
pub struct DecompositionEntry {
    pub id: String,
    pub polytope: HalfOpenPolytope,
    pub base_class: Vec<Int>,
    /// constant floor vector of e(alpha) over the cell, present after refinement
    pub floors: Option<Vec<Int>>,
    pub representative: Option<Representative>,
}

#[derive(Clone, Debug)]
pub struct BoundaryDecomposition {
    pub ambient: usize,
    pub refined: bool,
    pub entries: Vec<DecompositionEntry>,
}

fn unit_box_constraints(dim: usize) -> Vec<Constraint> {
    let mut cs = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        let mut lo = vec![Rat::zero(); dim];
        lo[i] = rat::rat(-1, 1);
        cs.push(Constraint::le(lo, Rat::zero()));
        let mut hi = vec![Rat::zero(); dim];
        hi[i] = Rat::one();
        cs.push(Constraint::lt(hi, Rat::one()));
    }
    cs
}

fn make_representative(d: &DivisorSet, p: &HalfOpenPolytope, base_class: &[Int]) -> Result<Representative> {
    let alpha = p.interior_point()?;
    let realization = BoundaryRealization::new(
        d,
        base_class.to_vec(),
        vec![Int::zero(); d.variety.pic_tau_torsion.len()],
        alpha,
    )?;
    let torsion_order = torsion_order(d, &realization)?;
    Ok(Representative { realization, torsion_order })
}

/// The canonical decomposition of the realizable boundaries: one half-open
/// polytope P_k = l^{-1}(p_k) ∩ [0,1)^S per NS-lattice point p_k of the
/// image of the unit box under l.
pub fn decompose_boundaries(d: &DivisorSet) -> Result<BoundaryDecomposition> {
    let s = d.size();
    let ns = d.variety.ns_rank;
    let lmap = d.class_map();
    // graph polytope in R^{S + ns}: alpha in [0,1)^S, y = l(alpha)
    let mut cs: Vec<Constraint> = Vec::new();
    for c in unit_box_constraints(s) {
        let mut a = c.a.clone();
        a.extend(vec![Rat::zero(); ns]);
        cs.push(Constraint::new(a, c.rel, c.b));
    }
    for r in 0..ns {
        let mut a: Vec<Rat> = lmap.row(r).to_vec();
        a.extend((0..ns).map(|j| if j == r { -Rat::one() } else { Rat::zero() }));
        cs.push(Constraint::eq(a, Rat::zero()));
    }
    let graph = HalfOpenPolytope::new(s + ns, cs)?;
    let image = graph.project(&(s..s + ns).collect::<Vec<_>>())?;
    let candidates = polytope::lattice_points(&image, &Lattice::full(ns), 1)?;

    let mut entries = Vec::new();
    for (idx, p) in candidates.iter().enumerate() {
        let mut cons = unit_box_constraints(s);
        for r in 0..ns {
            cons.push(Constraint::eq(lmap.row(r).to_vec(), rat::rat_from_int(&p[r])));
        }
        let fiber = HalfOpenPolytope::new(s, cons)?;
        debug_assert!(!fiber.is_empty(), "image point with empty fiber");
        let representative = if d.variety.pic0_rank == 0 {
            Some(make_representative(d, &fiber, p)?)
        } else {
            None
        };
        entries.push(DecompositionEntry {
            id: format!("P{idx}"),
            polytope: fiber,
            base_class: p.clone(),
            floors: None,
            representative,
        });
    }
    Ok(BoundaryDecomposition { ambient: s, refined: false, entries })
}

/// Log-resolution data: the pullback multiplicity matrix e_ij, the divisor
/// set on the resolution (strict transforms first, then exceptionals), the
/// pullback on NS classes and the canonical class upstairs.
#[derive(Clone, Debug)]
pub struct ResolutionData {
    pub source: DivisorSet,
    pub target: DivisorSet,
    /// e_ij with rows i in S and columns j in S'; the first |S| columns are
    /// the strict transforms (unit columns), the rest exceptionals
    pub e_matrix: ZMatrix,
    /// NS(X) -> NS(Z) on classes
    pub pullback: ZMatrix,
    pub canonical_target: Vec<Int>,
}

impl ResolutionData {
    pub fn new(
        source: DivisorSet,
        target: DivisorSet,
        e_matrix: ZMatrix,
        pullback: ZMatrix,
        canonical_target: Vec<Int>,
    ) -> Result<Self> {
        let s = source.size();
        if e_matrix.rows() != s || e_matrix.cols() != target.size() {
            return Err(Error::Dimension("e-matrix shape mismatch".into()));
        }
        for i in 0..s {
            for j in 0..e_matrix.cols() {
                if e_matrix.get(i, j).is_negative() {
                    return Err(Error::Usage("pullback multiplicities must be nonnegative".into()));
                }
                if j < s {
                    let expect = if i == j { Int::one() } else { Int::zero() };
                    if *e_matrix.get(i, j) != expect {
                        return Err(Error::Usage(
                            "strict-transform columns of the e-matrix must be unit columns".into(),
                        ));
                    }
                }
            }
        }
        if pullback.rows() != target.variety.ns_rank || pullback.cols() != source.variety.ns_rank {
            return Err(Error::Dimension("pullback matrix shape mismatch".into()));
        }
        if canonical_target.len() != target.variety.ns_rank {
            return Err(Error::Dimension("canonical class rank mismatch".into()));
        }
        Ok(ResolutionData { source, target, e_matrix, pullback, canonical_target })
    }

    /// The identity resolution of an already simple-normal-crossings pair.
    pub fn identity(d: &DivisorSet) -> Self {
        let n = d.variety.ns_rank;
        ResolutionData {
            source: d.clone(),
            target: d.clone(),
            e_matrix: ZMatrix::identity(d.size()),
            pullback: ZMatrix::identity(n),
            canonical_target: d.variety.canonical_class.clone(),
        }
    }

    /// e(alpha)_j = sum_i e_ij alpha_i
    pub fn e_of(&self, alpha: &[Rat]) -> Vec<Rat> {
        assert_eq!(alpha.len(), self.source.size());
        (0..self.e_matrix.cols())
            .map(|j| {
                alpha
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a * rat::rat_from_int(self.e_matrix.get(i, j)))
                    .sum()
            })
            .collect()
    }

    pub fn floors_of(&self, alpha: &[Rat]) -> Vec<Int> {
        self.e_of(alpha).iter().map(rat::rat_floor).collect()
    }

    /// mu*L + coeffs . [E_j] as an NS(Z) class
    pub fn class_on_target(&self, bundle_on_x: &[Int], e_coeffs: &[Int]) -> Vec<Int> {
        let mut out = self.pullback.mul_vec(bundle_on_x);
        for (j, c) in e_coeffs.iter().enumerate() {
            for (o, e) in out.iter_mut().zip(&self.target.classes[j]) {
                *o += c * e;
            }
        }
        out
    }
}

/// Monodromy of the pullback local system: beta_j = {sum_i e_ij alpha_i}.
pub fn monodromy_pullback(alpha: &[Rat], r: &ResolutionData) -> Vec<Rat> {
    r.e_of(alpha).iter().map(rat::rat_frac).collect()
}

/// The parabolic pullback (mu*L - floor(e) . E, {e}), an isomorphism onto
/// the realizations on the resolution.
pub fn pullback_parabolic(x: &BoundaryRealization, r: &ResolutionData) -> Result<BoundaryRealization> {
    let e = r.e_of(&x.alpha);
    let floors: Vec<Int> = e.iter().map(rat::rat_floor).collect();
    let neg: Vec<Int> = floors.iter().map(|f| -f).collect();
    let bundle = r.class_on_target(&x.bundle, &neg);
    let beta: Vec<Rat> = e.iter().map(rat::rat_frac).collect();
    BoundaryRealization::new(&r.target, bundle, x.torsion_label.clone(), beta)
}

/// The bundle of the canonical Deligne extension: mu*L + floor(e) . E.
pub fn deligne_extension_class(x: &BoundaryRealization, r: &ResolutionData) -> Vec<Int> {
    let floors = r.floors_of(&x.alpha);
    r.class_on_target(&x.bundle, &floors)
}

/// Subdivides each polytope by the integer-translate hyperplanes
/// {e_j(alpha) in Z}; on each resulting half-open cell the floor vector of
/// e(alpha) is constant.
pub fn refine_by_resolution(
    d: &DivisorSet,
    b: &BoundaryDecomposition,
    r: &ResolutionData,
) -> Result<BoundaryDecomposition> {
    if r.source.size() != d.size() {
        return Err(Error::Usage("resolution data over a different divisor set".into()));
    }
    let sprime = r.e_matrix.cols();
    let mut entries = Vec::new();
    for entry in &b.entries {
        let verts = entry.polytope.vertices();
        if verts.is_empty() {
            continue;
        }
        // exact range of each e_j over the closure
        let mut fixed: Vec<Option<Int>> = vec![None; sprime];
        let mut ranges: Vec<(usize, Int, Int)> = Vec::new();
        for j in 0..sprime {
            let coeff: Vec<Rat> = (0..d.size())
                .map(|i| rat::rat_from_int(r.e_matrix.get(i, j)))
                .collect();
            let vals: Vec<Rat> = verts.iter().map(|v| rat::dot(&coeff, v)).collect();
            let mn = vals.iter().min().unwrap().clone();
            let mx = vals.iter().max().unwrap().clone();
            let fmn = rat::rat_floor(&mn);
            let fmx = rat::rat_floor(&mx);
            if fmn == fmx {
                fixed[j] = Some(fmn);
            } else {
                ranges.push((j, fmn, fmx));
            }
        }
        let mut cells: Vec<(Vec<Int>, HalfOpenPolytope)> = Vec::new();
        let mut combo: Vec<Int> = ranges.iter().map(|(_, lo, _)| lo.clone()).collect();
        loop {
            let mut extra = Vec::new();
            for ((j, _, _), c) in ranges.iter().zip(&combo) {
                let coeff: Vec<Rat> = (0..d.size())
                    .map(|i| rat::rat_from_int(r.e_matrix.get(i, *j)))
                    .collect();
                let neg: Vec<Rat> = coeff.iter().map(|x| -x).collect();
                extra.push(Constraint::new(neg, Rel::Le, -rat::rat_from_int(c)));
                extra.push(Constraint::new(coeff, Rel::Lt, rat::rat_from_int(c) + Rat::one()));
            }
            let cell = entry.polytope.with_constraints(extra)?;
            if !cell.is_empty() {
                let mut floors: Vec<Int> = Vec::with_capacity(sprime);
                let mut ri = 0;
                for j in 0..sprime {
                    match &fixed[j] {
                        Some(f) => floors.push(f.clone()),
                        None => {
                            floors.push(combo[ri].clone());
                            ri += 1;
                        }
                    }
                }
                cells.push((floors, cell));
            }
            // advance the odometer over candidate floor combinations
            if ranges.is_empty() {
                break;
            }
            let mut pos = ranges.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if combo[pos] < ranges[pos].2 {
                    combo[pos] += 1;
                    for (k, c) in combo.iter_mut().enumerate().skip(pos + 1) {
                        *c = ranges[k].1.clone();
                    }
                    break;
                }
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
        let single = cells.len() == 1;
        for (cell_idx, (floors, cell)) in cells.into_iter().enumerate() {
            let representative = if d.variety.pic0_rank == 0 {
                let rep = make_representative(d, &cell, &entry.base_class)?;
                let rep_floors = r.floors_of(&rep.realization.alpha);
                if rep_floors != floors {
                    return Err(Error::Internal(
                        "refined cell representative has inconsistent floor vector".into(),
                    ));
                }
                Some(rep)
            } else {
                None
            };
            let id = if single {
                entry.id.clone()
            } else {
                format!("{}_{}", entry.id, cell_idx)
            };
            entries.push(DecompositionEntry {
                id,
                polytope: cell,
                base_class: entry.base_class.clone(),
                floors: Some(floors),
                representative,
            });
        }
    }
    Ok(BoundaryDecomposition { ambient: b.ambient, refined: true, entries })
}

/// All x with x^n = identity: alpha in (1/n)Z^S meeting each polytope, with
/// the unique bundle class attached. Cross-checked against the order of
/// H_1(U, Z_n) computed from the Smith normal form of the class map.
pub fn torsion_points(d: &DivisorSet, b: &BoundaryDecomposition, n: u64) -> Result<Vec<BoundaryRealization>> {
    if d.variety.pic0_rank > 0 {
        return Err(Error::SymbolicOnly(
            "torsion points are only enumerable when the continuous part of Pic^tau vanishes".into(),
        ));
    }
    if n == 0 {
        return Err(Error::Usage("torsion level must be at least 1".into()));
    }
    let mut out = Vec::new();
    let nr = rat::rat_int(n as i64);
    for entry in &b.entries {
        let pts = polytope::lattice_points(&entry.polytope, &Lattice::full(d.size()), n)?;
        for p in pts {
            let alpha: Vec<Rat> = p.iter().map(|x| rat::rat_from_int(x) / &nr).collect();
            out.push(BoundaryRealization::new(
                d,
                entry.base_class.clone(),
                vec![Int::zero(); d.variety.pic_tau_torsion.len()],
                alpha,
            )?);
        }
    }
    out.sort();
    out.dedup();
    let expected = h1_torsion_count(d, n)?;
    if Int::from(out.len() as u64) != expected {
        return Err(Error::Internal(format!(
            "torsion point count {} disagrees with |H_1(U, Z_{})| = {}",
            out.len(),
            n,
            expected
        )));
    }
    Ok(out)
}

/// |H_1(U, Z_n)| where H_1(U) = coker(NS -> Z^S) via the class pairing;
/// valid for the built-in models where H_2(X) is the NS lattice.
pub fn h1_torsion_count(d: &DivisorSet, n: u64) -> Result<Int> {
    let ns = d.variety.ns_rank;
    let s = d.size();
    // pairing matrix: row per NS generator, column per component
    let mut rows = Vec::with_capacity(ns);
    for g in 0..ns {
        let mut gen = vec![Int::zero(); ns];
        gen[g] = Int::one();
        rows.push(
            d.classes
                .iter()
                .map(|c| d.variety.pair(&gen, c))
                .collect::<Vec<Int>>(),
        );
    }
    let m = ZMatrix::from_rows(rows);
    let (diag, _, _) = crate::matrix::snf(&m);
    let rank = (0..ns.min(s)).take_while(|&i| !diag.get(i, i).is_zero()).count();
    let nn = Int::from(n);
    let mut count = Int::one();
    for i in 0..rank {
        count *= diag.get(i, i).gcd(&nn);
    }
    for _ in 0..(s - rank) {
        count *= &nn;
    }
    Ok(count)
}

/// The lattice {v in Z^S : v . [D] = 0}, i.e. ker(l) ∩ Z^S.
pub fn boundary_kernel_lattice(d: &DivisorSet) -> Lattice {
    kernel_lattice(&d.class_map())
}
