//! Sublattices of Z^n, stored canonically in row Hermite normal form.

use crate::matrix::{hnf, QMatrix, ZMatrix};
use crate::rat::{Int, Rat};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: ZMatrix, // rows are basis vectors, in HNF, no zero rows
}

impl Lattice {
    pub fn full(n: usize) -> Self {
        Lattice { ambient: n, basis: ZMatrix::identity(n) }
    }

    pub fn zero(n: usize) -> Self {
        Lattice { ambient: n, basis: ZMatrix::zero(0, n) }
    }

    /// Lattice generated by the given integer vectors.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Int>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ambient), "generator dimension mismatch");
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let (h, _) = hnf(&ZMatrix::from_rows(rows));
        let kept: Vec<Vec<Int>> = (0..h.rows())
            .filter(|&r| h.row(r).iter().any(|x| !x.is_zero()))
            .map(|r| h.row(r).to_vec())
            .collect();
        if kept.is_empty() {
            Self::zero(ambient)
        } else {
            Lattice { ambient, basis: ZMatrix::from_rows(kept) }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_rows(&self) -> Vec<Vec<Int>> {
        self.basis.row_vecs()
    }

    pub fn basis_matrix(&self) -> &ZMatrix {
        &self.basis
    }

    /// Membership test by back-substitution against the HNF basis.
    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for r in 0..self.basis.rows() {
            let pivot_col = (0..self.ambient)
                .find(|&c| !self.basis.get(r, c).is_zero())
                .expect("no zero rows in lattice basis");
            let p = self.basis.get(r, pivot_col);
            let (q, rem) = num_integer::Integer::div_rem(&w[pivot_col], p);
            if !rem.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for c in 0..self.ambient {
                    w[c] = &w[c] - &q * self.basis.get(r, c);
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    /// Intersection with the rational subspace `{x : eqs * x = 0}`.
    pub fn intersect_subspace(&self, eqs: &QMatrix) -> Lattice {
        assert_eq!(eqs.cols(), self.ambient);
        if self.rank() == 0 {
            return Self::zero(self.ambient);
        }
        // rows t of the integer kernel of eqs * Bᵀ give the members B't
        let bt = self.basis.transpose().to_rational();
        let m = eqs.mul(&bt);
        let tkernel = kernel_of_rational(&m);
        let rows: Vec<Vec<Int>> = tkernel
            .iter()
            .map(|t| {
                (0..self.ambient)
                    .map(|c| {
                        let mut acc = Int::zero();
                        for (j, tj) in t.iter().enumerate() {
                            acc += tj * self.basis.get(j, c);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Lattice::from_rows(self.ambient, rows)
    }
}

/// Integer vectors of the kernel of a rational matrix, i.e. a basis of
/// `{v in Z^n : m v = 0}`. The result is saturated by construction.
pub fn kernel_lattice(m: &QMatrix) -> Lattice {
    let n = m.cols();
    Lattice::from_rows(n, kernel_of_rational(m))
}

fn kernel_of_rational(m: &QMatrix) -> Vec<Vec<Int>> {
    // clear denominators row-wise, then take the integer kernel via SNF
    let rows: Vec<Vec<Int>> = (0..m.rows())
        .map(|r| {
            let lcm = crate::rat::denominator_lcm(m.row(r).iter());
            m.row(r)
                .iter()
                .map(|x: &Rat| {
                    let v = x * Rat::from_integer(lcm.clone());
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    let n = m.cols();
    if rows.is_empty() {
        return ZMatrix::identity(n).row_vecs();
    }
    let zm = ZMatrix::from_rows(rows);
    let (d, _, v) = crate::matrix::snf(&zm);
    let k = zm.rows().min(n);
    let mut basis = Vec::new();
    for c in 0..n {
        let free = c >= k || d.get(c, c).is_zero();
        if free {
            basis.push((0..n).map(|r| v.get(r, c).clone()).collect());
        }
    }
    basis
}
