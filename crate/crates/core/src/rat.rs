//! Exact number substrate: arbitrary-precision integers and reduced fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// `n/d` as a reduced fraction. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_from_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_floor(x: &Rat) -> Int {
    x.floor().to_integer()
}

/// Fractional part in `[0, 1)`.
pub fn rat_frac(x: &Rat) -> Rat {
    x - Rat::from_integer(rat_floor(x))
}

pub fn is_int(x: &Rat) -> bool {
    x.is_integer()
}

/// Least common multiple of the denominators, at least 1.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Int {
    let mut m = Int::one();
    for x in xs {
        m = m.lcm(x.denom());
    }
    m.abs()
}

/// Parses `"p/q"`, `"p"`, or a decimal integer string.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: Int = num.trim().parse().ok()?;
        let d: Int = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: Int = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Canonical form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn add_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rat_vec(v: &[(i64, i64)]) -> Vec<Rat> {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}
