//! The canonical stratifications V^q_i: loci where
//! h^q(X, omega_X ⊗ L ⊗ J(alpha . D)) >= i, computed per refined polytope
//! through the log resolution, together with their N-torsion counts and
//! counting quasi-polynomials.

use crate::ehrhart::{coset_count_qp, Subspace};
use crate::geometry::ResolvedGeometry;
use crate::lattice::Lattice;
use crate::parabolic::{
    decompose_boundaries, refine_by_resolution, BoundaryDecomposition, BoundaryRealization,
    ResolutionData,
};
use crate::polytope::{count_lattice_points, Constraint, HalfOpenPolytope, Rel};
use crate::quasipoly::QuasiPolynomial;
use crate::rat::{self, Int, Rat};
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct StratumRecord {
    pub polytope_id: String,
    pub representative: BoundaryRealization,
    /// symbolic rank of the torus factor; always 0 for the built-in models
    pub torus_rank: usize,
    pub torsion_label: Vec<Int>,
}

#[derive(Clone, Debug)]
pub struct StrataTable {
    pub dim: usize,
    pub qmax: usize,
    pub decomposition: BoundaryDecomposition,
    /// polytope id -> (h^0, ..., h^qmax)
    pub hq_by_polytope: BTreeMap<String, Vec<u64>>,
    /// (q, i) -> member strata, present only for nonempty V^q_i with i >= 1
    pub entries: BTreeMap<(usize, usize), Vec<StratumRecord>>,
}

impl StrataTable {
    pub fn members(&self, q: usize, i: usize) -> Vec<&str> {
        self.entries
            .get(&(q, i))
            .map(|v| v.iter().map(|r| r.polytope_id.as_str()).collect())
            .unwrap_or_default()
    }

    fn polytope_by_id(&self, id: &str) -> Option<&HalfOpenPolytope> {
        self.decomposition
            .entries
            .iter()
            .find(|e| e.id == id)
            .map(|e| &e.polytope)
    }
}

/// Builds the resolution-refined decomposition and evaluates the cohomology
/// oracle on the adjoint class of each cell representative; V^q_i collects
/// the cells with h^q >= i.
pub fn compute_strata(g: &ResolvedGeometry, qmax: Option<usize>) -> Result<StrataTable> {
    if g.divisors.variety.pic0_rank > 0 {
        return Err(Error::SymbolicOnly(
            "strata require a variety model with vanishing Pic^0".into(),
        ));
    }
    let qmax = qmax.unwrap_or(g.dim);
    let canonical = decompose_boundaries(&g.divisors)?;
    let refined = refine_by_resolution(&g.divisors, &canonical, &g.resolution)?;
    compute_strata_on(g, refined, qmax)
}

pub(crate) fn compute_strata_on(
    g: &ResolvedGeometry,
    refined: BoundaryDecomposition,
    qmax: usize,
) -> Result<StrataTable> {
    let mut hq_by_polytope = BTreeMap::new();
    let mut reps: BTreeMap<String, BoundaryRealization> = BTreeMap::new();
    for entry in &refined.entries {
        let rep = entry
            .representative
            .as_ref()
            .ok_or_else(|| Error::SymbolicOnly("cell without computable representative".into()))?;
        let cls = g.adjoint_class(&entry.base_class, &rep.realization.alpha);
        let mut hq = Vec::with_capacity(qmax + 1);
        for q in 0..=qmax {
            hq.push(g.hq_on_target(&cls, q)?);
        }
        hq_by_polytope.insert(entry.id.clone(), hq);
        reps.insert(entry.id.clone(), rep.realization.clone());
    }
    let mut entries = BTreeMap::new();
    for q in 0..=qmax {
        let imax = refined
            .entries
            .iter()
            .map(|e| hq_by_polytope[&e.id][q])
            .max()
            .unwrap_or(0);
        for i in 1..=imax {
            let members: Vec<StratumRecord> = refined
                .entries
                .iter()
                .filter(|e| hq_by_polytope[&e.id][q] >= i)
                .map(|e| StratumRecord {
                    polytope_id: e.id.clone(),
                    representative: reps[&e.id].clone(),
                    torus_rank: g.divisors.variety.pic0_rank,
                    torsion_label: vec![],
                })
                .collect();
            if !members.is_empty() {
                entries.insert((q, i as usize), members);
            }
        }
    }
    Ok(StrataTable { dim: g.dim, qmax, decomposition: refined, hq_by_polytope, entries })
}

/// Exact check that floor(e(alpha)) is constant over the half-open polytope:
/// for each component, neither {e_j < c_j} nor {e_j >= c_j + 1} meets the
/// polytope, where c_j is the floor at an interior representative.
pub fn floor_constancy_check(p: &HalfOpenPolytope, r: &ResolutionData) -> Result<bool> {
    let verts = p.vertices();
    if verts.is_empty() || p.is_empty() {
        return Ok(true);
    }
    let rep = p.interior_point()?;
    let floors = r.floors_of(&rep);
    let s = r.source.size();
    for j in 0..r.e_matrix.cols() {
        let coeff: Vec<Rat> = (0..s)
            .map(|i| rat::rat_from_int(r.e_matrix.get(i, j)))
            .collect();
        let c = rat::rat_from_int(&floors[j]);
        // e_j < c_j anywhere?
        let below = p.with_constraints(vec![Constraint::new(coeff.clone(), Rel::Lt, c.clone())])?;
        if !below.is_empty() {
            return Ok(false);
        }
        // e_j >= c_j + 1 anywhere?
        let neg: Vec<Rat> = coeff.iter().map(|x| -x).collect();
        let above = p.with_constraints(vec![Constraint::new(neg, Rel::Le, -(c + Rat::from_integer(Int::from(1))))])?;
        if !above.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// #V^q_i[n]: torsion points of level n lying in the stratum, summed over
/// its member polytopes.
pub fn count_stratum_torsion(t: &StrataTable, q: usize, i: usize, n: u64) -> Result<Int> {
    let Some(records) = t.entries.get(&(q, i)) else {
        return Ok(Int::zero());
    };
    let s = t.decomposition.ambient;
    let mut total = Int::zero();
    for rec in records {
        let p = t
            .polytope_by_id(&rec.polytope_id)
            .ok_or_else(|| Error::Internal("stratum references unknown polytope".into()))?;
        total += count_lattice_points(p, &Lattice::full(s), n)?;
    }
    Ok(total)
}

/// The counting quasi-polynomial N -> #V^q_i[N], assembled per member
/// polytope through the coset-count pipeline and scaled by the symbolic
/// torus factor N^r when a record carries r > 0.
pub fn stratum_torsion_qp(t: &StrataTable, q: usize, i: usize) -> Result<QuasiPolynomial> {
    let Some(records) = t.entries.get(&(q, i)) else {
        return Ok(QuasiPolynomial::zero());
    };
    let s = t.decomposition.ambient;
    let mut acc: Option<QuasiPolynomial> = None;
    for rec in records {
        let p = t
            .polytope_by_id(&rec.polytope_id)
            .ok_or_else(|| Error::Internal("stratum references unknown polytope".into()))?;
        let mut qp = coset_count_qp(p, &Subspace::full(s), &Lattice::full(s), &vec![Rat::zero(); s])?;
        if rec.torus_rank > 0 {
            qp = qp.scale_by_torus_rank(rec.torus_rank);
        }
        acc = Some(match acc {
            None => qp,
            Some(a) => {
                if a.torus_exponent() != qp.torus_exponent() {
                    return Err(Error::SymbolicOnly(
                        "mixed torus ranks within one stratum cannot be summed numerically".into(),
                    ));
                }
                a.add(&qp)
            }
        });
    }
    Ok(acc.unwrap_or_else(QuasiPolynomial::zero))
}
