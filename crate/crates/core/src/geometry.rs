//! Concrete input geometries: line arrangements in P^2 with their one-round
//! log resolutions (blow-ups of the points of multiplicity >= 3), point
//! configurations on P^1, and the exact sheaf-cohomology oracles for line
//! bundles on these models.

use crate::matrix::{QMatrix, ZMatrix};
use crate::parabolic::{DivisorSet, ResolutionData, VarietyModel};
use crate::rat::{self, Int, Rat};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn normalize_primitive(mut v: Vec<Int>) -> Option<Vec<Int>> {
    let mut g = Int::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return None;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
    if v.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
    Some(v)
}

/// A point of P^2 in primitive integer homogeneous coordinates with
/// canonical sign.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint(pub Vec<Int>);

impl ProjPoint {
    fn new(v: Vec<Int>) -> Option<Self> {
        normalize_primitive(v).map(ProjPoint)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineArrangement {
    /// primitive integer coefficient vectors (a, b, c) of the lines, with
    /// canonical sign, pairwise distinct
    lines: Vec<Vec<Int>>,
}

impl LineArrangement {
    pub fn new(lines: Vec<[Rat; 3]>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::Usage("arrangement needs at least one line".into()));
        }
        let mut norm = Vec::with_capacity(lines.len());
        for l in &lines {
            let lcm = rat::denominator_lcm(l.iter());
            let ints: Vec<Int> = l
                .iter()
                .map(|x| (x * Rat::from_integer(lcm.clone())).to_integer())
                .collect();
            let p = normalize_primitive(ints)
                .ok_or_else(|| Error::Usage("zero line coefficients".into()))?;
            norm.push(p);
        }
        for i in 0..norm.len() {
            for j in i + 1..norm.len() {
                if norm[i] == norm[j] {
                    return Err(Error::Usage(format!(
                        "lines {i} and {j} coincide as projective lines"
                    )));
                }
            }
        }
        Ok(LineArrangement { lines: norm })
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[Vec<Int>] {
        &self.lines
    }
}

fn cross(u: &[Int], v: &[Int]) -> Vec<Int> {
    vec![
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

fn incident(line: &[Int], p: &ProjPoint) -> bool {
    line.iter().zip(&p.0).map(|(a, x)| a * x).sum::<Int>().is_zero()
}

/// All pairwise intersection points with their multiplicities (number of
/// lines through the point), in canonical order.
pub fn singular_points(a: &LineArrangement) -> Vec<(ProjPoint, usize)> {
    let mut pts: Vec<ProjPoint> = Vec::new();
    for i in 0..a.lines.len() {
        for j in i + 1..a.lines.len() {
            let p = ProjPoint::new(cross(&a.lines[i], &a.lines[j]))
                .expect("distinct projective lines always meet");
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
    }
    pts.sort();
    pts.into_iter()
        .map(|p| {
            let mult = a.lines.iter().filter(|l| incident(l, &p)).count();
            (p, mult)
        })
        .collect()
}

/// The blow-up of P^2 at finitely many distinct points: NS basis
/// (H, E_1, ..., E_r), intersection form diag(1, -1, ..., -1), canonical
/// class -3H + sum E_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupSurface {
    pub points: Vec<ProjPoint>,
}

impl BlowupSurface {
    pub fn new(points: Vec<ProjPoint>) -> Result<Self> {
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::Usage("blown-up points must be distinct".into()));
                }
            }
        }
        Ok(BlowupSurface { points })
    }

    pub fn ns_rank(&self) -> usize {
        1 + self.points.len()
    }

    pub fn canonical_class(&self) -> Vec<Int> {
        let mut k = vec![Int::from(-3)];
        k.extend(vec![Int::one(); self.points.len()]);
        k
    }

    /// intersection pairing for the basis (H, E_1, ..., E_r)
    pub fn pair(&self, u: &[Int], v: &[Int]) -> Int {
        let mut acc = &u[0] * &v[0];
        for (a, b) in u[1..].iter().zip(&v[1..]) {
            acc -= a * b;
        }
        acc
    }

    pub fn variety_model(&self) -> VarietyModel {
        let n = self.ns_rank();
        let mut form = ZMatrix::zero(n, n);
        form.set(0, 0, Int::one());
        for i in 1..n {
            form.set(i, i, Int::from(-1));
        }
        VarietyModel::new("BlowupP2", form, self.canonical_class(), vec![], 0).unwrap()
    }
}

/// Blows up exactly the points where three or more lines meet; the strict
/// transforms and exceptionals then form a simple normal crossings divisor.
pub fn build_log_resolution(a: &LineArrangement) -> Result<(BlowupSurface, ResolutionData)> {
    let s = a.len();
    let source = DivisorSet::new(VarietyModel::p2(), vec![vec![Int::one()]; s])?;
    let blown: Vec<ProjPoint> = singular_points(a)
        .into_iter()
        .filter(|(_, m)| *m >= 3)
        .map(|(p, _)| p)
        .collect();
    let surface = BlowupSurface::new(blown)?;
    let r = surface.points.len();
    let zmodel = surface.variety_model();
    let mut classes: Vec<Vec<Int>> = Vec::with_capacity(s + r);
    for line in &a.lines {
        let mut c = vec![Int::one()];
        for p in &surface.points {
            c.push(if incident(line, p) { Int::from(-1) } else { Int::zero() });
        }
        classes.push(c);
    }
    for j in 0..r {
        let mut c = vec![Int::zero(); 1 + r];
        c[1 + j] = Int::one();
        classes.push(c);
    }
    let target = DivisorSet::new(zmodel, classes)?;
    let mut e = ZMatrix::zero(s, s + r);
    for i in 0..s {
        e.set(i, i, Int::one());
        for (j, p) in surface.points.iter().enumerate() {
            if incident(&a.lines[i], p) {
                e.set(i, s + j, Int::one());
            }
        }
    }
    let mut pullback = ZMatrix::zero(1 + r, 1);
    pullback.set(0, 0, Int::one());
    let canonical = surface.canonical_class();
    let resolution = ResolutionData::new(source, target, e, pullback, canonical)?;
    Ok((surface, resolution))
}

fn monomial_exponents(d: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push((i, j, d - i - j));
        }
    }
    out
}

fn falling_factorial(n: i64, k: i64) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut acc = Int::one();
    for t in 0..k {
        acc *= Int::from(n - t);
    }
    acc
}

fn int_pow(base: &Int, exp: i64) -> Int {
    let mut acc = Int::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// h^0 of dH - sum m_k E_k on the blow-up: degree-d forms with multiplicity
/// at least m_k at each point, the conditions imposed as exact vanishing of
/// all order-(m_k - 1) partial derivatives. E-coefficients <= 0 (i.e. classes
/// dH + c E with c >= 0) carry no condition: the exceptional summand is a
/// fixed component.
pub fn h0_blowup(s: &BlowupSurface, cls: &[Int]) -> Result<u64> {
    if cls.len() != s.ns_rank() {
        return Err(Error::Dimension("class rank does not match surface".into()));
    }
    let d = cls[0]
        .to_i64()
        .ok_or_else(|| Error::Usage("degree out of supported range".into()))?;
    if d < 0 {
        return Ok(0);
    }
    let mults: Vec<i64> = cls[1..]
        .iter()
        .map(|c| {
            let m = (-c.clone()).to_i64().unwrap_or(0);
            m.max(0)
        })
        .collect();
    if mults.iter().any(|&m| m > d) {
        return Ok(0);
    }
    let monomials = monomial_exponents(d);
    let ncols = monomials.len();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (p, &m) in s.points.iter().zip(&mults) {
        if m == 0 {
            continue;
        }
        let (px, py, pz) = (&p.0[0], &p.0[1], &p.0[2]);
        for (sx, sy, sz) in monomial_exponents(m - 1) {
            let row: Vec<Rat> = monomials
                .iter()
                .map(|&(i, j, k)| {
                    let c = falling_factorial(i, sx)
                        * falling_factorial(j, sy)
                        * falling_factorial(k, sz);
                    if c.is_zero() {
                        Rat::zero()
                    } else {
                        let v = c
                            * int_pow(px, i - sx)
                            * int_pow(py, j - sy)
                            * int_pow(pz, k - sz);
                        rat::rat_from_int(&v)
                    }
                })
                .collect();
            rows.push(row);
        }
    }
    let rank = if rows.is_empty() { 0 } else { QMatrix::from_rows(rows).rank() };
    Ok((ncols - rank) as u64)
}

/// chi(L) = chi(O) + L.(L - K)/2 = 1 + (L^2 - L.K)/2 on a rational surface.
pub fn euler_char(s: &BlowupSurface, cls: &[Int]) -> Result<Int> {
    if cls.len() != s.ns_rank() {
        return Err(Error::Dimension("class rank does not match surface".into()));
    }
    let k = s.canonical_class();
    let l2 = s.pair(cls, cls);
    let lk = s.pair(cls, &k);
    let num = l2 - lk;
    let (q, r) = num.div_rem(&Int::from(2));
    if !r.is_zero() {
        return Err(Error::Internal("Riemann-Roch parity violated".into()));
    }
    Ok(Int::one() + q)
}

/// h^q for q in {0, 1, 2}: h^0 by fat points, h^2 by Serre duality,
/// h^1 = h^0 + h^2 - chi. A negative h^1 means the fat-point model was
/// violated and is a fatal error.
pub fn hq_blowup(s: &BlowupSurface, cls: &[Int], q: usize) -> Result<u64> {
    match q {
        0 => h0_blowup(s, cls),
        2 => {
            let k = s.canonical_class();
            let dual: Vec<Int> = k.iter().zip(cls).map(|(a, b)| a - b).collect();
            h0_blowup(s, &dual)
        }
        1 => {
            let h0 = h0_blowup(s, cls)?;
            let h2 = hq_blowup(s, cls, 2)?;
            let chi = euler_char(s, cls)?;
            let h1 = Int::from(h0) + Int::from(h2) - chi;
            if h1.is_negative() {
                return Err(Error::ModelViolation(format!(
                    "negative h^1 = {h1} for class {cls:?}"
                )));
            }
            h1.to_u64()
                .ok_or_else(|| Error::Internal("h^1 out of range".into()))
        }
        _ => Ok(0),
    }
}

/// A point of P^1 in primitive integer homogeneous coordinates (x : y),
/// y >= 0, infinity = (1 : 0).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CurvePoint(pub Vec<Int>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePointSpec {
    Finite(Rat),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub points: Vec<CurvePoint>,
}

impl CurveModel {
    pub fn new(points: Vec<CurvePointSpec>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Usage("curve model needs at least one marked point".into()));
        }
        let mut norm = Vec::with_capacity(points.len());
        for p in &points {
            let v = match p {
                CurvePointSpec::Infinity => vec![Int::one(), Int::zero()],
                CurvePointSpec::Finite(x) => vec![x.numer().clone(), x.denom().clone()],
            };
            norm.push(CurvePoint(v));
        }
        for i in 0..norm.len() {
            for j in i + 1..norm.len() {
                if norm[i] == norm[j] {
                    return Err(Error::Usage("marked points must be distinct".into()));
                }
            }
        }
        Ok(CurveModel { points: norm })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Line-bundle cohomology on P^1: h^0(O(d)) = max(d + 1, 0), h^1 by Serre
/// duality. The marked points play no role here.
pub fn hq_curve(_c: &CurveModel, degree: &Int, q: usize) -> u64 {
    let val: Int = match q {
        0 => degree + Int::one(),
        1 => -degree - Int::one(),
        _ => return 0,
    };
    if val.is_negative() {
        0
    } else {
        val.to_u64().expect("curve cohomology dimension out of range")
    }
}

#[derive(Clone, Debug)]
pub enum GeometryInput {
    Lines(LineArrangement),
    Curve(CurveModel),
}

/// A resolved input: the divisor set on the base, the log-resolution data,
/// and the cohomology oracle on the resolution.
#[derive(Clone, Debug)]
pub struct ResolvedGeometry {
    pub input: GeometryInput,
    pub divisors: DivisorSet,
    pub resolution: ResolutionData,
    pub surface: Option<BlowupSurface>,
    pub dim: usize,
}

impl ResolvedGeometry {
    pub fn new(input: GeometryInput) -> Result<Self> {
        match input {
            GeometryInput::Lines(a) => {
                let (surface, resolution) = build_log_resolution(&a)?;
                let divisors = resolution.source.clone();
                Ok(ResolvedGeometry {
                    input: GeometryInput::Lines(a),
                    divisors,
                    resolution,
                    surface: Some(surface),
                    dim: 2,
                })
            }
            GeometryInput::Curve(c) => {
                let divisors =
                    DivisorSet::new(VarietyModel::p1(), vec![vec![Int::one()]; c.len()])?;
                let resolution = ResolutionData::identity(&divisors);
                Ok(ResolvedGeometry {
                    input: GeometryInput::Curve(c),
                    divisors,
                    resolution,
                    surface: None,
                    dim: 1,
                })
            }
        }
    }

    /// h^q of a line-bundle class on the resolution.
    pub fn hq_on_target(&self, cls: &[Int], q: usize) -> Result<u64> {
        match (&self.input, &self.surface) {
            (GeometryInput::Lines(_), Some(s)) => hq_blowup(s, cls, q),
            (GeometryInput::Curve(c), _) => {
                if cls.len() != 1 {
                    return Err(Error::Dimension("curve classes have rank one".into()));
                }
                Ok(hq_curve(c, &cls[0], q))
            }
            _ => Err(Error::Internal("inconsistent resolved geometry".into())),
        }
    }

    /// The class K_Z + mu*L - floor(e(alpha)) . E evaluated by the strata
    /// pipeline; h^q of it computes h^q(X, omega_X ⊗ L ⊗ J(alpha . D)).
    pub fn adjoint_class(&self, bundle_on_x: &[Int], alpha: &[Rat]) -> Vec<Int> {
        let floors = self.resolution.floors_of(alpha);
        let neg: Vec<Int> = floors.iter().map(|f| -f).collect();
        let mut cls = self.resolution.class_on_target(bundle_on_x, &neg);
        for (c, k) in cls.iter_mut().zip(&self.resolution.canonical_target) {
            *c += k;
        }
        cls
    }
}
