//! Integer and rational matrices: Hermite and Smith normal forms, exact
//! Gaussian elimination, integer linear systems.

use crate::rat::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl ZMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ZMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        ZMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> ZMatrix {
        let mut t = ZMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ZMatrix) -> ZMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = ZMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Int::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn to_rational(&self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.get(i, c).clone();
            self.set(i, c, v);
        }
    }

    /// row_i -= q * row_j
    fn row_sub(&mut self, i: usize, j: usize, q: &Int) {
        for c in 0..self.cols {
            let v = self.get(i, c) - q * self.get(j, c);
            self.set(i, c, v);
        }
    }

    /// col_i -= q * col_j
    fn col_sub(&mut self, i: usize, j: usize, q: &Int) {
        for r in 0..self.rows {
            let v = self.get(r, i) - q * self.get(r, j);
            self.set(r, i, v);
        }
    }

    /// Replaces rows (i, j) by (x*row_i + y*row_j, -b/g*row_i + a/g*row_j)
    /// where a, b are the pivot-column entries and g = xa + yb = gcd(a, b).
    /// The transform has determinant one.
    fn rows_gcd_transform(&mut self, i: usize, j: usize, a: &Int, b: &Int, x: &Int, y: &Int, g: &Int) {
        let bg = b / g;
        let ag = a / g;
        for c in 0..self.cols {
            let vi = self.get(i, c).clone();
            let vj = self.get(j, c).clone();
            self.set(i, c, x * &vi + y * &vj);
            self.set(j, c, &ag * &vj - &bg * &vi);
        }
    }

    fn cols_gcd_transform(&mut self, i: usize, j: usize, a: &Int, b: &Int, x: &Int, y: &Int, g: &Int) {
        let bg = b / g;
        let ag = a / g;
        for r in 0..self.rows {
            let vi = self.get(r, i).clone();
            let vj = self.get(r, j).clone();
            self.set(r, i, x * &vi + y * &vj);
            self.set(r, j, &ag * &vj - &bg * &vi);
        }
    }
}

/// Row Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `h = u * m` in row echelon form with positive pivots and reduced
/// entries above each pivot.
pub fn hnf(m: &ZMatrix) -> (ZMatrix, ZMatrix) {
    let mut h = m.clone();
    let mut u = ZMatrix::identity(m.rows());
    let mut pr = 0usize;
    for pc in 0..h.cols() {
        if pr >= h.rows() {
            break;
        }
        let Some(pivot_row) = (pr..h.rows()).find(|&r| !h.get(r, pc).is_zero()) else {
            continue;
        };
        h.swap_rows(pr, pivot_row);
        u.swap_rows(pr, pivot_row);
        for r in pr + 1..h.rows() {
            if h.get(r, pc).is_zero() {
                continue;
            }
            let a = h.get(pr, pc).clone();
            let b = h.get(r, pc).clone();
            let ext = a.extended_gcd(&b);
            h.rows_gcd_transform(pr, r, &a, &b, &ext.x, &ext.y, &ext.gcd);
            u.rows_gcd_transform(pr, r, &a, &b, &ext.x, &ext.y, &ext.gcd);
        }
        if h.get(pr, pc).is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let pivot = h.get(pr, pc).clone();
        for r in 0..pr {
            let q = h.get(r, pc).div_floor(&pivot);
            if !q.is_zero() {
                h.row_sub(r, pr, &q);
                u.row_sub(r, pr, &q);
            }
        }
        pr += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(d, u, v)` with `d = u * m * v` diagonal,
/// `d_1 | d_2 | ...`, all diagonal entries nonnegative, and `u`, `v`
/// unimodular.
pub fn snf(m: &ZMatrix) -> (ZMatrix, ZMatrix, ZMatrix) {
    let mut d = m.clone();
    let mut u = ZMatrix::identity(m.rows());
    let mut v = ZMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());
    let mut t = 0usize;
    while t < n {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for r in t..d.rows() {
            for c in t..d.cols() {
                if !d.get(r, c).is_zero()
                    && best.map_or(true, |(br, bc)| d.get(r, c).abs() < d.get(br, bc).abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        d.swap_rows(t, br);
        u.swap_rows(t, br);
        d.swap_cols(t, bc);
        v.swap_cols(t, bc);

        loop {
            let mut dirty = false;
            for r in t + 1..d.rows() {
                if !d.get(r, t).is_zero() {
                    let a = d.get(t, t).clone();
                    let b = d.get(r, t).clone();
                    if (&b % &a).is_zero() {
                        // plain reduction keeps the pivot row untouched
                        let q = &b / &a;
                        d.row_sub(r, t, &q);
                        u.row_sub(r, t, &q);
                    } else {
                        // gcd step strictly shrinks the pivot
                        let ext = a.extended_gcd(&b);
                        d.rows_gcd_transform(t, r, &a, &b, &ext.x, &ext.y, &ext.gcd);
                        u.rows_gcd_transform(t, r, &a, &b, &ext.x, &ext.y, &ext.gcd);
                        dirty = true;
                    }
                }
            }
            for c in t + 1..d.cols() {
                if !d.get(t, c).is_zero() {
                    let a = d.get(t, t).clone();
                    let b = d.get(t, c).clone();
                    if (&b % &a).is_zero() {
                        let q = &b / &a;
                        d.col_sub(c, t, &q);
                        v.col_sub(c, t, &q);
                    } else {
                        let ext = a.extended_gcd(&b);
                        d.cols_gcd_transform(t, c, &a, &b, &ext.x, &ext.y, &ext.gcd);
                        v.cols_gcd_transform(t, c, &a, &b, &ext.x, &ext.y, &ext.gcd);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // enforce the divisibility chain on the trailing block
            let pivot = d.get(t, t).clone();
            let mut fixed = true;
            'search: for r in t + 1..d.rows() {
                for c in t + 1..d.cols() {
                    if !(d.get(r, c) % &pivot).is_zero() {
                        // fold row r into row t and restart the cleaning loop
                        for cc in 0..d.cols() {
                            let val = d.get(t, cc) + d.get(r, cc);
                            d.set(t, cc, val);
                        }
                        for cc in 0..u.cols() {
                            let val = u.get(t, cc) + u.get(r, cc);
                            u.set(t, cc, val);
                        }
                        fixed = false;
                        break 'search;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    for i in 0..n {
        if d.get(i, i).is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }
    (d, u, v)
}

/// Solves `m x = c` over the integers via the Smith normal form.
pub fn solve_integer(m: &ZMatrix, c: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(m.rows(), c.len());
    let (d, u, v) = snf(m);
    let uc = u.mul_vec(c);
    let n = m.rows().min(m.cols());
    let mut y = vec![Int::zero(); m.cols()];
    for i in 0..m.rows() {
        let di = if i < n { d.get(i, i).clone() } else { Int::zero() };
        if di.is_zero() {
            if !uc[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = uc[i].div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(v.mul_vec(&y))
}

/// Exact determinant by fraction-free rational elimination.
pub fn det(m: &ZMatrix) -> Int {
    assert_eq!(m.rows(), m.cols());
    let q = m.to_rational();
    let d = q.det();
    debug_assert!(d.is_integer());
    d.to_integer()
}

pub fn is_unimodular(m: &ZMatrix) -> bool {
    m.rows() == m.cols() && det(m).abs() == Int::one()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|r| crate::rat::dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..self.cols {
            if pr >= self.rows {
                break;
            }
            let Some(pivot_row) = (pr..self.rows).find(|&r| !self.get(r, pc).is_zero()) else {
                continue;
            };
            self.swap_rows(pr, pivot_row);
            let inv = self.get(pr, pc).recip();
            for c in pc..self.cols {
                let v = self.get(pr, c) * &inv;
                self.set(pr, c, v);
            }
            for r in 0..self.rows {
                if r != pr && !self.get(r, pc).is_zero() {
                    let f = self.get(r, pc).clone();
                    for c in pc..self.cols {
                        let v = self.get(r, c) - &f * self.get(pr, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut d = Rat::one();
        for pc in 0..m.cols {
            let Some(pivot_row) = (pc..m.rows).find(|&r| !m.get(r, pc).is_zero()) else {
                return Rat::zero();
            };
            if pivot_row != pc {
                m.swap_rows(pc, pivot_row);
                d = -d;
            }
            let p = m.get(pc, pc).clone();
            d *= &p;
            for r in pc + 1..m.rows {
                if !m.get(r, pc).is_zero() {
                    let f = m.get(r, pc) / &p;
                    for c in pc..m.cols {
                        let v = m.get(r, c) - &f * m.get(pc, c);
                        m.set(r, c, v);
                    }
                }
            }
        }
        d
    }

    /// A particular solution of `self * x = b`, if consistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let mut aug = QMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// The unique solution of `self * x = b`, if it exists.
    pub fn solve_unique(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        if self.rank() < self.cols {
            return None;
        }
        self.solve(b)
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, f).clone();
            }
            basis.push(v);
        }
        basis
    }
}
