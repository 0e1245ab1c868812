//! Counting pipelines: Ehrhart quasi-polynomials of half-open rational
//! polytopes and the coset-counting function
//! `F(N) = #[(N*wvec + lam) ∩ W ∩ N*Q]`.

use crate::lattice::Lattice;
use crate::matrix::{QMatrix, ZMatrix};
use crate::polytope::{DilationCounter, HalfOpenPolytope};
use crate::quasipoly::{fit_quasi_polynomial, QuasiPolynomial};
use crate::rat::{self, Int, Rat};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

const MAX_PERIOD: usize = 4096;

/// A rational linear subspace `{x : eqs * x = 0}`; zero rows means the
/// full space.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    eqs: QMatrix,
}

impl Subspace {
    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, eqs: QMatrix::zero(0, ambient) }
    }

    pub fn from_equations(ambient: usize, rows: Vec<Vec<Rat>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ambient) {
            return Err(Error::Dimension("subspace equation arity mismatch".into()));
        }
        Ok(Subspace { ambient, eqs: QMatrix::from_rows(rows) })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn eqs(&self) -> &QMatrix {
        &self.eqs
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.eqs.mul_vec(&x.to_vec()).iter().all(|v| v.is_zero())
    }
}

fn period_from(values: impl Iterator<Item = Int>) -> Result<usize> {
    let mut m = Int::from(1);
    for v in values {
        m = m.lcm(&v);
    }
    m.abs()
        .to_usize()
        .filter(|&p| p >= 1 && p <= MAX_PERIOD)
        .ok_or_else(|| Error::Usage("quasi-polynomial period too large for exact fitting".into()))
}

/// Ehrhart quasi-polynomial: `f(N) = #(l ∩ N*p)` for all `N >= 1`.
/// The period divides the lcm of the closure-vertex coordinate
/// denominators, measured in lattice-basis coordinates.
pub fn ehrhart_qp(p: &HalfOpenPolytope, l: &Lattice) -> Result<QuasiPolynomial> {
    let counter = DilationCounter::new(p, l)?;
    let verts = counter.t_vertices().to_vec();
    if verts.is_empty() && l.rank() > 0 {
        return Ok(QuasiPolynomial::zero());
    }
    let period = period_from(
        verts
            .iter()
            .flat_map(|v| v.iter().map(|x| x.denom().clone())),
    )?;
    let degree = crate::polytope::affine_dim_of(&verts);
    fit_quasi_polynomial(period, degree, |_| false, |n| counter.count(n))
}

/// The coset-count quasi-polynomial `F(N) = #[(1/N)(N*wvec + lam) ∩ w ∩ q]`,
/// equivalently `#[(N*wvec + lam) ∩ w ∩ N*q]`.
///
/// Requires the torsion hypothesis: some positive multiple of `wvec` lies in
/// `lam`. Residue classes of N (mod that multiple) whose coset misses `w`
/// contribute identically zero; the others are counted through the reduction
/// to a translated Ehrhart problem over `lam ∩ w`.
pub fn coset_count_qp(
    q: &HalfOpenPolytope,
    w: &Subspace,
    lam: &Lattice,
    wvec: &[Rat],
) -> Result<QuasiPolynomial> {
    let n = q.dim();
    if w.ambient_dim() != n || lam.ambient_dim() != n || wvec.len() != n {
        return Err(Error::Dimension("coset count: ambient dimensions disagree".into()));
    }
    // minimal m >= 1 with m*wvec in lam
    let m = if wvec.iter().all(|x| x.is_zero()) {
        1usize
    } else {
        let basis = lam.basis_rows();
        let bt = QMatrix::from_rows(
            (0..n)
                .map(|c| basis.iter().map(|row| rat::rat_from_int(&row[c])).collect())
                .collect(),
        );
        let s = bt.solve(&wvec.to_vec()).ok_or_else(|| {
            Error::Usage("torsion hypothesis violated: no multiple of wvec lies in the lattice".into())
        })?;
        rat::denominator_lcm(s.iter())
            .to_usize()
            .filter(|&v| v <= MAX_PERIOD)
            .ok_or_else(|| Error::Usage("torsion order of wvec too large".into()))?
    };
    let lam_w = lam.intersect_subspace(w.eqs());

    // a representative w'_r of (r*wvec + lam) ∩ w per residue class, if any
    let mut wprimes: Vec<Option<Vec<Rat>>> = Vec::with_capacity(m);
    for r in 1..=m as i64 {
        let rv = rat::scale_vec(wvec, &rat::rat_int(r));
        if w.eqs().rows() == 0 {
            wprimes.push(Some(rv));
            continue;
        }
        match coset_subspace_point(lam, w, &rv) {
            Some(p) => wprimes.push(Some(p)),
            None => wprimes.push(None),
        }
    }

    let mut counters: Vec<Option<DilationCounter>> = Vec::with_capacity(m);
    for wp in &wprimes {
        match wp {
            None => counters.push(None),
            Some(base) => counters.push(Some(DilationCounter::with_base(q, &lam_w, base)?)),
        }
    }
    let Some(first) = counters.iter().flatten().next() else {
        // unreachable: class m always has the representative -m*wvec + m*wvec = 0
        return Ok(QuasiPolynomial::zero());
    };
    let verts = first.t_vertices().to_vec();
    if verts.is_empty() && lam_w.rank() > 0 {
        return Ok(QuasiPolynomial::zero());
    }
    let denoms = verts
        .iter()
        .flat_map(|v| v.iter().map(|x| x.denom().clone()))
        .chain(
            counters
                .iter()
                .flatten()
                .flat_map(|c| c.tau().iter().map(|x| x.denom().clone())),
        )
        .chain(std::iter::once(Int::from(m as i64)));
    let period = period_from(denoms)?;
    let degree = crate::polytope::affine_dim_of(&verts);
    fit_quasi_polynomial(
        period,
        degree,
        |class| counters[(class - 1) % m].is_none(),
        |n| {
            let r = ((n - 1) as usize) % m;
            counters[r]
                .as_ref()
                .map(|c| c.count(n))
                .unwrap_or_else(Int::zero)
        },
    )
}

/// Finds a point of `(v + lam) ∩ w` by solving an integer linear system,
/// or reports that the coset misses the subspace.
fn coset_subspace_point(lam: &Lattice, w: &Subspace, v: &[Rat]) -> Option<Vec<Rat>> {
    let basis = lam.basis_rows();
    let a = w.eqs();
    if lam.rank() == 0 {
        return w.contains(v).then(|| v.to_vec());
    }
    // rows: (A * B^T) t = -A v, integerized row by row
    let mut int_rows = Vec::with_capacity(a.rows());
    let mut rhs = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let row: Vec<Rat> = basis
            .iter()
            .map(|b| {
                a.row(i)
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x * rat::rat_from_int(y))
                    .sum::<Rat>()
            })
            .collect();
        let r = -rat::dot(a.row(i), v);
        let lcm = rat::denominator_lcm(row.iter().chain(std::iter::once(&r)));
        let s = Rat::from_integer(lcm);
        int_rows.push(row.iter().map(|x| (x * &s).to_integer()).collect::<Vec<Int>>());
        rhs.push((&r * &s).to_integer());
    }
    let t = crate::matrix::solve_integer(&ZMatrix::from_rows(int_rows), &rhs)?;
    let mut out = v.to_vec();
    for (trow, brow) in t.iter().zip(&basis) {
        for (o, bv) in out.iter_mut().zip(brow) {
            *o += rat::rat_from_int(&(trow * bv));
        }
    }
    Some(out)
}
