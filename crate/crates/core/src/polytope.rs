//! Half-open rational convex polytopes: mixed strict/non-strict/equality
//! constraints, exact Fourier-Motzkin elimination, vertex enumeration of the
//! closure, and lattice-point enumeration in dilates.

use crate::lattice::Lattice;
use crate::rat::{self, Int, Rat};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rel {
    Le,
    Lt,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Constraint {
    pub a: Vec<Rat>,
    pub rel: Rel,
    pub b: Rat,
}

impl Constraint {
    pub fn new(a: Vec<Rat>, rel: Rel, b: Rat) -> Self {
        Constraint { a, rel, b }
    }

    pub fn le(a: Vec<Rat>, b: Rat) -> Self {
        Self::new(a, Rel::Le, b)
    }

    pub fn lt(a: Vec<Rat>, b: Rat) -> Self {
        Self::new(a, Rel::Lt, b)
    }

    pub fn eq(a: Vec<Rat>, b: Rat) -> Self {
        Self::new(a, Rel::Eq, b)
    }

    pub fn holds_at(&self, x: &[Rat]) -> bool {
        let v = rat::dot(&self.a, x);
        match self.rel {
            Rel::Le => v <= self.b,
            Rel::Lt => v < self.b,
            Rel::Eq => v == self.b,
        }
    }

    fn closure(&self) -> Constraint {
        let rel = if self.rel == Rel::Lt { Rel::Le } else { self.rel };
        Constraint { a: self.a.clone(), rel, b: self.b.clone() }
    }

    /// scale by the positive factor that makes `a` a primitive integer vector
    fn primitive(&self) -> Constraint {
        let lcm = rat::denominator_lcm(self.a.iter());
        let ints: Vec<Int> = self
            .a
            .iter()
            .map(|x| (x * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = Int::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if g.is_zero() {
            return self.clone();
        }
        let scale = Rat::new(lcm, g);
        Constraint {
            a: self.a.iter().map(|x| x * &scale).collect(),
            rel: self.rel,
            b: &self.b * &scale,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfOpenPolytope {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl HalfOpenPolytope {
    /// Builds a polytope and verifies that its closure is bounded.
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        let p = Self::new_unchecked(dim, constraints)?;
        p.check_bounded()?;
        Ok(p)
    }

    pub(crate) fn new_unchecked(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if constraints.iter().any(|c| c.a.len() != dim) {
            return Err(Error::Dimension(format!(
                "constraint arity does not match ambient dimension {dim}"
            )));
        }
        let constraints = match normalize_dedupe(constraints) {
            Some(cs) => cs,
            None => empty_marker(dim),
        };
        Ok(HalfOpenPolytope { dim, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn closure(&self) -> HalfOpenPolytope {
        HalfOpenPolytope {
            dim: self.dim,
            constraints: self.constraints.iter().map(|c| c.closure()).collect(),
        }
    }

    fn check_bounded(&self) -> Result<()> {
        let closure = self.closure();
        for axis in 0..self.dim {
            let elim: Vec<usize> = (0..self.dim).filter(|&j| j != axis).collect();
            let Some(shadow) = eliminate_all(closure.constraints.clone(), &elim) else {
                return Ok(()); // empty is bounded
            };
            let mut upper = false;
            let mut lower = false;
            for c in &shadow {
                let coef = &c.a[axis];
                if coef.is_zero() {
                    continue;
                }
                match c.rel {
                    Rel::Eq => {
                        upper = true;
                        lower = true;
                    }
                    _ => {
                        if coef.is_positive() {
                            upper = true;
                        } else {
                            lower = true;
                        }
                    }
                }
            }
            if !(upper && lower) {
                return Err(Error::Unbounded);
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        self.constraints.iter().all(|c| c.holds_at(x))
    }

    /// Membership of `x` in the dilate `n * self`.
    pub fn contains_dilated(&self, x: &[Rat], n: u64) -> bool {
        let nr = Rat::from_integer(Int::from(n));
        self.constraints.iter().all(|c| {
            let v = rat::dot(&c.a, x);
            let b = &c.b * &nr;
            match c.rel {
                Rel::Le => v <= b,
                Rel::Lt => v < b,
                Rel::Eq => v == b,
            }
        })
    }

    /// True iff the half-open set contains no point at all.
    pub fn is_empty(&self) -> bool {
        let all: Vec<usize> = (0..self.dim).collect();
        eliminate_all(self.constraints.clone(), &all).is_none()
    }

    /// Vertex set of the closure, exact, deduplicated, in lexicographic
    /// order. Every equality participates in every basis; inequality subsets
    /// of size dim - rank(equalities) suffice to reach all basic solutions.
    pub fn vertices(&self) -> Vec<Vec<Rat>> {
        let closure = self.closure();
        let eqs: Vec<&Constraint> = closure.constraints.iter().filter(|c| c.rel == Rel::Eq).collect();
        let ineqs: Vec<&Constraint> = closure.constraints.iter().filter(|c| c.rel != Rel::Eq).collect();
        let eq_rank = if eqs.is_empty() {
            0
        } else {
            crate::matrix::QMatrix::from_rows(eqs.iter().map(|c| c.a.clone()).collect()).rank()
        };
        let need = self.dim - eq_rank;
        if need > ineqs.len() {
            return vec![];
        }
        let mut found: Vec<Vec<Rat>> = Vec::new();
        let mut subset: Vec<usize> = Vec::new();
        fn rec(
            start: usize,
            remaining: usize,
            subset: &mut Vec<usize>,
            ineqs: &[&Constraint],
            eqs: &[&Constraint],
            closure: &HalfOpenPolytope,
            found: &mut Vec<Vec<Rat>>,
        ) {
            if remaining == 0 {
                let mut rows: Vec<Vec<Rat>> = eqs.iter().map(|c| c.a.clone()).collect();
                let mut rhs: Vec<Rat> = eqs.iter().map(|c| c.b.clone()).collect();
                for &i in subset.iter() {
                    rows.push(ineqs[i].a.clone());
                    rhs.push(ineqs[i].b.clone());
                }
                if !rows.is_empty() || closure.dim == 0 {
                    let m = crate::matrix::QMatrix::from_rows(rows);
                    if let Some(x) = m.solve_unique(&rhs) {
                        if closure.contains(&x) && !found.contains(&x) {
                            found.push(x);
                        }
                    }
                }
                return;
            }
            for i in start..ineqs.len() {
                subset.push(i);
                rec(i + 1, remaining - 1, subset, ineqs, eqs, closure, found);
                subset.pop();
            }
        }
        rec(0, need, &mut subset, &ineqs, &eqs, &closure, &mut found);
        found.sort();
        found
    }

    /// Coordinate projection onto the given (sorted, distinct) indices, by
    /// exact Fourier-Motzkin elimination. A derived constraint is strict
    /// exactly when some derivation forces it.
    pub fn project(&self, coords: &[usize]) -> Result<HalfOpenPolytope> {
        if coords.windows(2).any(|w| w[0] >= w[1]) || coords.iter().any(|&c| c >= self.dim) {
            return Err(Error::Usage("projection indices must be sorted, distinct, in range".into()));
        }
        let elim: Vec<usize> = (0..self.dim).filter(|j| !coords.contains(j)).collect();
        let reduced = eliminate_all(self.constraints.clone(), &elim);
        let constraints = match reduced {
            None => empty_marker(coords.len()),
            Some(cs) => cs
                .into_iter()
                .map(|c| {
                    debug_assert!(elim.iter().all(|&j| c.a[j].is_zero()));
                    Constraint {
                        a: coords.iter().map(|&j| c.a[j].clone()).collect(),
                        rel: c.rel,
                        b: c.b,
                    }
                })
                .collect(),
        };
        HalfOpenPolytope::new_unchecked(coords.len(), constraints)
    }

    /// The translate `self + v`.
    pub fn translate(&self, v: &[Rat]) -> HalfOpenPolytope {
        assert_eq!(v.len(), self.dim);
        let constraints = self
            .constraints
            .iter()
            .map(|c| Constraint {
                a: c.a.clone(),
                rel: c.rel,
                b: &c.b + rat::dot(&c.a, v),
            })
            .collect();
        HalfOpenPolytope { dim: self.dim, constraints }
    }

    /// Intersection with additional constraints (stays bounded).
    pub fn with_constraints(&self, extra: Vec<Constraint>) -> Result<HalfOpenPolytope> {
        let mut cs = self.constraints.clone();
        cs.extend(extra);
        HalfOpenPolytope::new_unchecked(self.dim, cs)
    }

    /// Dimension of the affine span of the closure.
    pub fn affine_dim(&self) -> usize {
        affine_dim_of(&self.vertices())
    }

    /// A rational point in the relative interior of a nonempty polytope: the
    /// barycenter of the closure vertex set, which satisfies every strict
    /// constraint strictly.
    pub fn interior_point(&self) -> Result<Vec<Rat>> {
        let verts = self.vertices();
        if verts.is_empty() {
            return Err(Error::Internal("interior point requested for empty polytope".into()));
        }
        let n = Rat::from_integer(Int::from(verts.len() as u64));
        let mut bary = vec![Rat::zero(); self.dim];
        for v in &verts {
            for (b, x) in bary.iter_mut().zip(v) {
                *b += x;
            }
        }
        for b in bary.iter_mut() {
            *b /= &n;
        }
        if self.contains(&bary) {
            return Ok(bary);
        }
        // shrink toward each vertex in turn looking for an interior point
        for v in &verts {
            let mid: Vec<Rat> = bary
                .iter()
                .zip(v)
                .map(|(b, x)| (b + x) / Rat::from_integer(Int::from(2)))
                .collect();
            if self.contains(&mid) {
                return Ok(mid);
            }
        }
        Err(Error::Internal("no interior representative found for nonempty polytope".into()))
    }
}

/// A canonically empty constraint set whose closure is still bounded, so
/// that contradictory input flows through every pipeline as the empty
/// polytope rather than tripping the boundedness check.
fn empty_marker(dim: usize) -> Vec<Constraint> {
    if dim == 0 {
        return vec![Constraint::lt(vec![], Rat::zero())];
    }
    let mut cs = Vec::with_capacity(dim + 1);
    let mut a = vec![Rat::zero(); dim];
    a[0] = Rat::one();
    cs.push(Constraint::le(a.clone(), -Rat::one()));
    cs.push(Constraint::le(a.iter().map(|x| -x).collect(), -Rat::one()));
    for i in 1..dim {
        let mut e = vec![Rat::zero(); dim];
        e[i] = Rat::one();
        cs.push(Constraint::eq(e, Rat::zero()));
    }
    cs
}

pub fn affine_dim_of(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let rows: Vec<Vec<Rat>> = points[1..].iter().map(|p| rat::sub_vec(p, base)).collect();
    crate::matrix::QMatrix::from_rows(rows).rank()
}

/// Conjunction-preserving normalization: primitive integer coefficient
/// vectors, duplicate directions merged to their tightest bound, trivially
/// true constraints dropped. Returns `None` when a trivially false
/// constraint is found.
fn normalize_dedupe(cs: Vec<Constraint>) -> Option<Vec<Constraint>> {
    #[derive(Default)]
    struct Bucket {
        eq: Option<Rat>,
        ineq: Option<(Rat, bool)>, // (bound, strict)
    }
    let mut buckets: BTreeMap<Vec<Rat>, Bucket> = BTreeMap::new();
    for c in cs {
        if c.a.iter().all(|x| x.is_zero()) {
            let ok = match c.rel {
                Rel::Le => !c.b.is_negative(),
                Rel::Lt => c.b.is_positive(),
                Rel::Eq => c.b.is_zero(),
            };
            if !ok {
                return None;
            }
            continue;
        }
        let p = c.primitive();
        match p.rel {
            Rel::Eq => {
                // canonical sign for equalities: first nonzero coefficient positive
                let flip = p.a.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative());
                let (a, b) = if flip {
                    (p.a.iter().map(|x| -x).collect::<Vec<_>>(), -p.b.clone())
                } else {
                    (p.a.clone(), p.b.clone())
                };
                let bucket = buckets.entry(a).or_default();
                match &bucket.eq {
                    Some(existing) if *existing != b => return None,
                    _ => bucket.eq = Some(b),
                }
            }
            rel => {
                let strict = rel == Rel::Lt;
                let bucket = buckets.entry(p.a.clone()).or_default();
                bucket.ineq = Some(match bucket.ineq.take() {
                    None => (p.b.clone(), strict),
                    Some((b0, s0)) => {
                        if p.b < b0 {
                            (p.b.clone(), strict)
                        } else if p.b > b0 {
                            (b0, s0)
                        } else {
                            (b0, s0 || strict)
                        }
                    }
                });
            }
        }
    }
    let mut out = Vec::new();
    for (a, bucket) in buckets {
        if let Some(b) = &bucket.eq {
            // an inequality in the same direction is either implied or contradictory
            if let Some((ib, strict)) = &bucket.ineq {
                if b > ib || (b == ib && *strict) {
                    return None;
                }
            }
            out.push(Constraint::eq(a.clone(), b.clone()));
        } else if let Some((b, strict)) = bucket.ineq {
            let rel = if strict { Rel::Lt } else { Rel::Le };
            out.push(Constraint::new(a, rel, b));
        }
    }
    out.sort();
    Some(out)
}

/// Eliminates one variable; `None` means the system is infeasible.
fn eliminate_one(cs: Vec<Constraint>, k: usize) -> Option<Vec<Constraint>> {
    // substitution through an equality is exact and cheap
    if let Some(pos) = cs.iter().position(|c| c.rel == Rel::Eq && !c.a[k].is_zero()) {
        let e = cs[pos].clone();
        let ek = e.a[k].clone();
        let mut out = Vec::with_capacity(cs.len());
        for (i, c) in cs.into_iter().enumerate() {
            if i == pos {
                continue;
            }
            if c.a[k].is_zero() {
                out.push(c);
            } else {
                let f = &c.a[k] / &ek;
                let a = c
                    .a
                    .iter()
                    .zip(&e.a)
                    .map(|(x, y)| x - &f * y)
                    .collect::<Vec<_>>();
                let b = &c.b - &f * &e.b;
                out.push(Constraint { a, rel: c.rel, b });
            }
        }
        return normalize_dedupe(out);
    }
    let mut keep = Vec::new();
    let mut uppers = Vec::new();
    let mut lowers = Vec::new();
    for c in cs {
        if c.a[k].is_zero() {
            keep.push(c);
        } else if c.a[k].is_positive() {
            uppers.push(c);
        } else {
            lowers.push(c);
        }
    }
    for l in &lowers {
        for u in &uppers {
            let p = u.a[k].clone();
            let q = -l.a[k].clone();
            let a: Vec<Rat> = u
                .a
                .iter()
                .zip(&l.a)
                .map(|(ua, la)| &q * ua + &p * la)
                .collect();
            let b = &q * &u.b + &p * &l.b;
            let rel = if u.rel == Rel::Lt || l.rel == Rel::Lt { Rel::Lt } else { Rel::Le };
            keep.push(Constraint { a, rel, b });
        }
    }
    normalize_dedupe(keep)
}

fn eliminate_all(cs: Vec<Constraint>, vars: &[usize]) -> Option<Vec<Constraint>> {
    let mut cur = normalize_dedupe(cs)?;
    for &k in vars {
        cur = eliminate_one(cur, k)?;
    }
    Some(cur)
}

/// Exact enumeration of the points of `l` inside the dilate `n * p`,
/// in lexicographic order.
pub fn lattice_points(p: &HalfOpenPolytope, l: &Lattice, n: u64) -> Result<Vec<Vec<Int>>> {
    DilationCounter::new(p, l).map(|c| c.points(n))
}

pub fn count_lattice_points(p: &HalfOpenPolytope, l: &Lattice, n: u64) -> Result<Int> {
    DilationCounter::new(p, l).map(|c| c.count(n))
}

/// Integerized constraint on lattice coordinates `t`:
/// `a . t  rel  n * b - off`, all quantities integers.
#[derive(Clone, Debug)]
struct IntConstraint {
    a: Vec<Int>,
    rel: Rel,
    b: Int,
    off: Int,
}

impl IntConstraint {
    fn from_rational(a: &[Rat], rel: Rel, b: &Rat, off: &Rat) -> IntConstraint {
        let mut lcm = rat::denominator_lcm(a.iter());
        lcm = lcm.lcm(b.denom()).lcm(off.denom());
        let s = Rat::from_integer(lcm);
        let ai = a.iter().map(|x| (x * &s).to_integer()).collect();
        IntConstraint {
            a: ai,
            rel,
            b: (b * &s).to_integer(),
            off: (off * &s).to_integer(),
        }
    }
}

/// Counts points of a fixed affine lattice inside dilates of a fixed
/// polytope. Built once, evaluated at many dilation factors.
///
/// The counted set at dilation `n` is `{ base + B^T t : t integer,
/// A (base + B^T t)  rel  n * b }`; in `t`-coordinates the constraints take
/// the form `a . t  rel  n * b - off` and the bounding box comes from the
/// closure vertices of the `t`-space polytope and the offset `tau`.
pub(crate) struct DilationCounter {
    tdim: usize,
    cons: Vec<IntConstraint>,
    verts: Vec<Vec<Rat>>,
    tau: Vec<Rat>,
    basis_rows: Vec<Vec<Int>>,
    ambient: usize,
    base: Vec<Rat>,
}

impl DilationCounter {
    pub(crate) fn new(p: &HalfOpenPolytope, l: &Lattice) -> Result<DilationCounter> {
        if l.ambient_dim() != p.dim() {
            return Err(Error::Dimension("lattice/polytope ambient mismatch".into()));
        }
        let base = vec![Rat::zero(); p.dim()];
        Self::with_base(p, l, &base)
    }

    /// Counter for `{ base + lattice }` points inside dilates of `p`.
    /// `base` must lie in the rational span of the lattice.
    pub(crate) fn with_base(p: &HalfOpenPolytope, l: &Lattice, base: &[Rat]) -> Result<DilationCounter> {
        let tdim = l.rank();
        let basis_rows = l.basis_rows();
        // tau solves B^T tau = base
        let tau = if base.iter().all(|x| x.is_zero()) {
            vec![Rat::zero(); tdim]
        } else {
            let bt = crate::matrix::QMatrix::from_rows(
                (0..l.ambient_dim())
                    .map(|c| basis_rows.iter().map(|row| rat::rat_from_int(&row[c])).collect())
                    .collect(),
            );
            bt.solve(&base.to_vec())
                .ok_or_else(|| Error::Internal("coset base point outside lattice span".into()))?
        };
        let mut cons = Vec::new();
        let mut tcons_closure = Vec::new();
        for c in p.constraints() {
            let at: Vec<Rat> = basis_rows
                .iter()
                .map(|row| {
                    c.a.iter()
                        .zip(row)
                        .map(|(x, y)| x * rat::rat_from_int(y))
                        .sum::<Rat>()
                })
                .collect();
            let off = rat::dot(&c.a, base);
            cons.push(IntConstraint::from_rational(&at, c.rel, &c.b, &off));
            let rel = if c.rel == Rel::Lt { Rel::Le } else { c.rel };
            tcons_closure.push(Constraint::new(at, rel, c.b.clone()));
        }
        // vertices of the t-space closure of the base polytope (offset-free)
        let tpoly = HalfOpenPolytope::new_unchecked(tdim, tcons_closure)?;
        let verts = tpoly.vertices();
        Ok(DilationCounter {
            tdim,
            cons,
            verts,
            tau,
            basis_rows,
            ambient: p.dim(),
            base: base.to_vec(),
        })
    }

    pub(crate) fn t_vertices(&self) -> &[Vec<Rat>] {
        &self.verts
    }

    pub(crate) fn tau(&self) -> &[Rat] {
        &self.tau
    }

    fn boxes(&self, n: u64) -> Option<(Vec<Int>, Vec<Int>)> {
        if self.tdim == 0 {
            return Some((vec![], vec![]));
        }
        if self.verts.is_empty() {
            return None;
        }
        let nn = Rat::from_integer(Int::from(n));
        let mut lo = Vec::with_capacity(self.tdim);
        let mut hi = Vec::with_capacity(self.tdim);
        for j in 0..self.tdim {
            let mut mn = &self.verts[0][j] * &nn;
            let mut mx = mn.clone();
            for v in &self.verts[1..] {
                let val = &v[j] * &nn;
                if val < mn {
                    mn = val.clone();
                }
                if val > mx {
                    mx = val;
                }
            }
            mn -= &self.tau[j];
            mx -= &self.tau[j];
            lo.push(rat_ceil(&mn));
            hi.push(rat::rat_floor(&mx));
        }
        Some((lo, hi))
    }

    pub(crate) fn count(&self, n: u64) -> Int {
        let Some((lo, hi)) = self.boxes(n) else {
            return Int::zero();
        };
        if (0..self.tdim).any(|j| lo[j] > hi[j]) {
            return Int::zero();
        }
        if let Some(c) = self.try_count_i64(n, &lo, &hi) {
            return Int::from(c);
        }
        self.count_big(n, &lo, &hi, None)
    }

    pub(crate) fn points(&self, n: u64) -> Vec<Vec<Int>> {
        let Some((lo, hi)) = self.boxes(n) else {
            return vec![];
        };
        if (0..self.tdim).any(|j| lo[j] > hi[j]) {
            return vec![];
        }
        let mut pts = Vec::new();
        self.count_big(n, &lo, &hi, Some(&mut pts));
        pts.sort();
        pts
    }

    fn try_count_i64(&self, n: u64, lo: &[Int], hi: &[Int]) -> Option<u64> {
        const LIMIT: i64 = 1 << 40;
        let small = |x: &Int| -> Option<i64> {
            let v = x.to_i64()?;
            (v.abs() < LIMIT).then_some(v)
        };
        let n_i = i128::from(n);
        let lo: Vec<i64> = lo.iter().map(small).collect::<Option<_>>()?;
        let hi: Vec<i64> = hi.iter().map(small).collect::<Option<_>>()?;
        struct FastCon {
            a: Vec<i64>,
            rel: Rel,
            rhs: i128,
        }
        let mut fast = Vec::with_capacity(self.cons.len());
        for c in &self.cons {
            let a: Vec<i64> = c.a.iter().map(small).collect::<Option<_>>()?;
            let b = small(&c.b)?;
            let off = small(&c.off)?;
            let rhs = n_i.checked_mul(i128::from(b))?.checked_sub(i128::from(off))?;
            fast.push(FastCon { a, rel: c.rel, rhs });
        }
        if self.tdim == 0 {
            let ok = fast.iter().all(|c| match c.rel {
                Rel::Le => 0 <= c.rhs,
                Rel::Lt => 0 < c.rhs,
                Rel::Eq => 0 == c.rhs,
            });
            return Some(u64::from(ok));
        }
        let mut t = lo.clone();
        let mut count = 0u64;
        'outer: loop {
            let ok = fast.iter().all(|c| {
                let mut acc: i128 = 0;
                for (av, tv) in c.a.iter().zip(&t) {
                    acc += i128::from(*av) * i128::from(*tv);
                }
                match c.rel {
                    Rel::Le => acc <= c.rhs,
                    Rel::Lt => acc < c.rhs,
                    Rel::Eq => acc == c.rhs,
                }
            });
            if ok {
                count += 1;
            }
            let mut j = self.tdim;
            loop {
                if j == 0 {
                    break 'outer;
                }
                j -= 1;
                if t[j] < hi[j] {
                    t[j] += 1;
                    for (idx, tv) in t.iter_mut().enumerate().skip(j + 1) {
                        *tv = lo[idx];
                    }
                    continue 'outer;
                }
            }
        }
        Some(count)
    }

    fn count_big(&self, n: u64, lo: &[Int], hi: &[Int], mut sink: Option<&mut Vec<Vec<Int>>>) -> Int {
        let n_i = Int::from(n);
        let rhs: Vec<Int> = self.cons.iter().map(|c| &n_i * &c.b - &c.off).collect();
        if self.tdim == 0 {
            let ok = self.cons.iter().zip(&rhs).all(|(c, r)| match c.rel {
                Rel::Le => Int::zero() <= *r,
                Rel::Lt => Int::zero() < *r,
                Rel::Eq => Int::zero() == *r,
            });
            if ok {
                if let Some(sink) = sink.as_deref_mut() {
                    sink.push(self.ambient_point(&[]));
                }
                return Int::one();
            }
            return Int::zero();
        }
        let mut t: Vec<Int> = lo.to_vec();
        let mut count = Int::zero();
        'outer: loop {
            let ok = self.cons.iter().zip(&rhs).all(|(c, r)| {
                let mut acc = Int::zero();
                for (av, tv) in c.a.iter().zip(&t) {
                    acc += av * tv;
                }
                match c.rel {
                    Rel::Le => acc <= *r,
                    Rel::Lt => acc < *r,
                    Rel::Eq => acc == *r,
                }
            });
            if ok {
                count += 1;
                if let Some(sink) = sink.as_deref_mut() {
                    sink.push(self.ambient_point(&t));
                }
            }
            let mut j = self.tdim;
            loop {
                if j == 0 {
                    break 'outer;
                }
                j -= 1;
                if t[j] < hi[j] {
                    t[j] += 1;
                    for (idx, tv) in t.iter_mut().enumerate().skip(j + 1) {
                        *tv = lo[idx].clone();
                    }
                    continue 'outer;
                }
            }
        }
        count
    }

    /// maps t-coordinates back to the ambient lattice point (plain case only)
    fn ambient_point(&self, t: &[Int]) -> Vec<Int> {
        debug_assert!(self.base.iter().all(|x| x.is_zero()), "points only for lattice counts");
        let mut x = vec![Int::zero(); self.ambient];
        for (row, tv) in self.basis_rows.iter().zip(t) {
            for (c, rv) in row.iter().enumerate() {
                x[c] += tv * rv;
            }
        }
        x
    }
}

pub fn rat_ceil(x: &Rat) -> Int {
    -rat::rat_floor(&-x.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat, rat_int, rat_vec};

    pub(crate) fn unit_box_half_open(dim: usize) -> HalfOpenPolytope {
        let mut cs = Vec::new();
        for i in 0..dim {
            let mut lo = vec![Rat::zero(); dim];
            lo[i] = rat(-1, 1);
            cs.push(Constraint::le(lo, Rat::zero()));
            let mut hi = vec![Rat::zero(); dim];
            hi[i] = rat(1, 1);
            cs.push(Constraint::lt(hi, rat(1, 1)));
        }
        HalfOpenPolytope::new(dim, cs).unwrap()
    }

    fn closed_box(dim: usize, side: Rat) -> HalfOpenPolytope {
        let mut cs = Vec::new();
        for i in 0..dim {
            let mut lo = vec![Rat::zero(); dim];
            lo[i] = rat(-1, 1);
            cs.push(Constraint::le(lo, Rat::zero()));
            let mut hi = vec![Rat::zero(); dim];
            hi[i] = rat(1, 1);
            cs.push(Constraint::le(hi, side.clone()));
        }
        HalfOpenPolytope::new(dim, cs).unwrap()
    }

    #[test]
    fn unit_square_vertices() {
        let p = closed_box(2, rat(1, 1));
        let vs = p.vertices();
        assert_eq!(vs.len(), 4);
        assert_eq!(vs[0], rat_vec(&[(0, 1), (0, 1)]));
        assert_eq!(vs[3], rat_vec(&[(1, 1), (1, 1)]));
    }

    #[test]
    fn simplex_vertices() {
        // x, y >= 0, x + y <= 1/2
        let p = HalfOpenPolytope::new(
            2,
            vec![
                Constraint::le(rat_vec(&[(-1, 1), (0, 1)]), Rat::zero()),
                Constraint::le(rat_vec(&[(0, 1), (-1, 1)]), Rat::zero()),
                Constraint::le(rat_vec(&[(1, 1), (1, 1)]), rat(1, 2)),
            ],
        )
        .unwrap();
        let vs = p.vertices();
        assert_eq!(
            vs,
            vec![
                rat_vec(&[(0, 1), (0, 1)]),
                rat_vec(&[(0, 1), (1, 2)]),
                rat_vec(&[(1, 2), (0, 1)]),
            ]
        );
    }

    #[test]
    fn five_lines_slice_has_ten_vertices() {
        // closure of {alpha in [0,1)^5 : sum = 2}: vertices are the 0/1
        // vectors with exactly two ones
        let dim = 5;
        let mut cs = Vec::new();
        for i in 0..dim {
            let mut lo = vec![Rat::zero(); dim];
            lo[i] = rat(-1, 1);
            cs.push(Constraint::le(lo, Rat::zero()));
            let mut hi = vec![Rat::zero(); dim];
            hi[i] = rat(1, 1);
            cs.push(Constraint::lt(hi, rat(1, 1)));
        }
        cs.push(Constraint::eq(vec![rat(1, 1); dim], rat(2, 1)));
        let p = HalfOpenPolytope::new(dim, cs).unwrap();
        let vs = p.vertices();
        assert_eq!(vs.len(), 10);
        for v in &vs {
            assert!(v.iter().all(|x| x.is_integer()));
            let s: Rat = v.iter().sum();
            assert_eq!(s, rat(2, 1));
        }
    }

    #[test]
    fn contains_respects_strictness() {
        let p = unit_box_half_open(2);
        assert!(p.contains(&rat_vec(&[(0, 1), (0, 1)])));
        assert!(!p.contains(&rat_vec(&[(1, 1), (0, 1)])));
        let mut cs: Vec<Constraint> = Vec::new();
        for i in 0..5 {
            let mut lo = vec![Rat::zero(); 5];
            lo[i] = rat(-1, 1);
            cs.push(Constraint::le(lo, Rat::zero()));
            let mut hi = vec![Rat::zero(); 5];
            hi[i] = rat(1, 1);
            cs.push(Constraint::lt(hi, rat_int(1)));
        }
        cs.push(Constraint::eq(vec![rat(1, 1); 5], rat(2, 1)));
        let p5 = HalfOpenPolytope::new(5, cs).unwrap();
        assert!(p5.contains(&vec![rat(2, 5); 5]));
    }

    #[test]
    fn lattice_point_examples() {
        let p = unit_box_half_open(2);
        let pts = lattice_points(&p, &Lattice::full(2), 3).unwrap();
        assert_eq!(pts.len(), 9);
        // [0, 1/2] in R^1 at n = 5: {0, 1, 2}
        let seg = HalfOpenPolytope::new(
            1,
            vec![
                Constraint::le(vec![rat(-1, 1)], Rat::zero()),
                Constraint::le(vec![rat(1, 1)], rat(1, 2)),
            ],
        )
        .unwrap();
        let pts = lattice_points(&seg, &Lattice::full(1), 5).unwrap();
        assert_eq!(pts, vec![vec![int(0)], vec![int(1)], vec![int(2)]]);
        // empty polytope
        let empty = HalfOpenPolytope::new(
            1,
            vec![
                Constraint::le(vec![rat(1, 1)], Rat::zero()),
                Constraint::lt(vec![rat(-1, 1)], Rat::zero()),
            ],
        )
        .unwrap();
        assert!(empty.is_empty());
        assert!(lattice_points(&empty, &Lattice::full(1), 4).unwrap().is_empty());
    }

    #[test]
    fn dilation_linearity() {
        // lattice_points(p, l, n) equals lattice_points(n*p as constraints, l, 1)
        let p = unit_box_half_open(2);
        for n in 1..=5u64 {
            let scaled = HalfOpenPolytope::new(
                2,
                p.constraints()
                    .iter()
                    .map(|c| Constraint::new(c.a.clone(), c.rel, &c.b * rat_int(n as i64)))
                    .collect(),
            )
            .unwrap();
            assert_eq!(
                lattice_points(&p, &Lattice::full(2), n).unwrap(),
                lattice_points(&scaled, &Lattice::full(2), 1).unwrap()
            );
        }
    }

    #[test]
    fn contains_consistent_with_enumeration() {
        let p = unit_box_half_open(2);
        let n = 4u64;
        let pts = lattice_points(&p, &Lattice::full(2), n).unwrap();
        for x in -1i64..=5 {
            for y in -1i64..=5 {
                let q = vec![rat_int(x), rat_int(y)];
                let listed = pts.contains(&vec![int(x), int(y)]);
                assert_eq!(listed, p.contains_dilated(&q, n));
            }
        }
    }

    #[test]
    fn project_examples() {
        let p = unit_box_half_open(2);
        let q = p.project(&[0]).unwrap();
        assert!(q.contains(&[Rat::zero()]));
        assert!(q.contains(&[rat(1, 2)]));
        assert!(!q.contains(&[rat(1, 1)]));
        assert!(!q.contains(&[rat(-1, 10)]));

        // {x + y = 1} ∩ [0,1)^2 projects to the open interval (0, 1)
        let mut cs = unit_box_half_open(2).constraints().to_vec();
        cs.push(Constraint::eq(rat_vec(&[(1, 1), (1, 1)]), rat(1, 1)));
        let slice = HalfOpenPolytope::new(2, cs).unwrap();
        let proj = slice.project(&[0]).unwrap();
        assert!(!proj.contains(&[Rat::zero()]));
        assert!(proj.contains(&[rat(1, 2)]));
        assert!(proj.contains(&[rat(999, 1000)]));
        assert!(!proj.contains(&[rat(1, 1)]));
        // membership of sampled points matches the 2-d preimage test
        for num in 0..=8i64 {
            let x = rat(num, 8);
            let pre = vec![x.clone(), rat(1, 1) - x.clone()];
            assert_eq!(proj.contains(&[x]), slice.contains(&pre));
        }

        // projecting a point gives a point
        let pt = HalfOpenPolytope::new(
            2,
            vec![
                Constraint::eq(rat_vec(&[(1, 1), (0, 1)]), rat(1, 3)),
                Constraint::eq(rat_vec(&[(0, 1), (1, 1)]), rat(2, 3)),
            ],
        )
        .unwrap();
        let pp = pt.project(&[1]).unwrap();
        assert!(pp.contains(&[rat(2, 3)]));
        assert_eq!(pp.vertices(), vec![vec![rat(2, 3)]]);
    }

    #[test]
    fn contradictory_input_is_empty_not_unbounded() {
        // 0 <= -1 is plainly infeasible; construction yields the empty
        // polytope instead of an unboundedness error
        let p = HalfOpenPolytope::new(
            2,
            vec![Constraint::le(vec![Rat::zero(), Rat::zero()], rat(-1, 1))],
        )
        .unwrap();
        assert!(p.is_empty());
        assert!(p.vertices().is_empty());
        assert_eq!(count_lattice_points(&p, &Lattice::full(2), 3).unwrap(), int(0));
    }

    #[test]
    fn unbounded_rejected() {
        let r = HalfOpenPolytope::new(2, vec![Constraint::le(rat_vec(&[(1, 1), (0, 1)]), rat(1, 1))]);
        assert!(matches!(r, Err(Error::Unbounded)));
    }

    #[test]
    fn sublattice_counting() {
        // points of 2Z in [0, 1] scaled: #(2Z ∩ [0, n]) = floor(n/2) + 1
        let seg = HalfOpenPolytope::new(
            1,
            vec![
                Constraint::le(vec![rat(-1, 1)], Rat::zero()),
                Constraint::le(vec![rat(1, 1)], rat(1, 1)),
            ],
        )
        .unwrap();
        let l = Lattice::from_rows(1, vec![vec![int(2)]]);
        for n in 1..=9u64 {
            let c = count_lattice_points(&seg, &l, n).unwrap();
            assert_eq!(c, Int::from(n / 2 + 1));
        }
    }
}
