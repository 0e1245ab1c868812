//! Quasi-polynomials: period M with one rational polynomial per residue
//! class of N mod M (class i covers N ≡ i for 1 <= i <= M), plus a symbolic
//! factor N^r carried as an exponent.

use crate::rat::{Int, Rat};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>, // low degree first, trimmed
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Polynomial::new(out)
    }

    /// Unique interpolating polynomial of degree < points.len(), by Newton
    /// divided differences, exact.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Polynomial {
        let n = points.len();
        if n == 0 {
            return Polynomial::zero();
        }
        // divided-difference table
        let mut dd: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
        let xs: Vec<Rat> = points.iter().map(|(x, _)| x.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &xs[i] - &xs[i - level];
                dd[i] = num / den;
            }
        }
        // expand the Newton form into monomial coefficients
        let mut coeffs = vec![Rat::zero(); n];
        let mut basis = vec![Rat::zero(); n]; // product (x - x_0)...(x - x_{k-1})
        basis[0] = Rat::one();
        let mut basis_len = 1usize;
        for (k, c) in dd.iter().enumerate() {
            for i in 0..basis_len {
                coeffs[i] += c * &basis[i];
            }
            if k + 1 < n {
                // basis *= (x - x_k): new[j] = old[j-1] - x_k * old[j]
                let xk = xs[k].clone();
                for j in (0..=basis_len).rev() {
                    let prev = if j > 0 { basis[j - 1].clone() } else { Rat::zero() };
                    basis[j] = prev - &basis[j] * &xk;
                }
                basis_len += 1;
            }
        }
        Polynomial::new(coeffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    period: usize,
    polys: Vec<Polynomial>, // polys[i-1] applies when N ≡ i (mod period), 1 <= i <= period
    torus_exponent: usize,  // symbolic multiplication by N^r
}

impl QuasiPolynomial {
    pub fn new(period: usize, polys: Vec<Polynomial>) -> Self {
        assert!(period >= 1 && polys.len() == period);
        QuasiPolynomial { period, polys, torus_exponent: 0 }
    }

    pub fn zero() -> Self {
        QuasiPolynomial { period: 1, polys: vec![Polynomial::zero()], torus_exponent: 0 }
    }

    pub fn constant(c: Rat) -> Self {
        QuasiPolynomial { period: 1, polys: vec![Polynomial::constant(c)], torus_exponent: 0 }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn torus_exponent(&self) -> usize {
        self.torus_exponent
    }

    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(|p| p.is_zero())
    }

    /// Max degree over the component polynomials, ignoring the N^r factor.
    pub fn degree(&self) -> Option<usize> {
        self.polys.iter().filter_map(|p| p.degree()).max()
    }

    fn class_index(&self, n: u64) -> usize {
        let r = (n as usize) % self.period;
        if r == 0 {
            self.period - 1
        } else {
            r - 1
        }
    }

    pub fn eval(&self, n: u64) -> Rat {
        assert!(n >= 1, "quasi-polynomials are evaluated at N >= 1");
        let x = Rat::from_integer(Int::from(n));
        let mut v = self.polys[self.class_index(n)].eval(&x);
        for _ in 0..self.torus_exponent {
            v *= &x;
        }
        v
    }

    /// Evaluation that must land on an integer (all counting pipelines).
    pub fn eval_count(&self, n: u64) -> Result<Int> {
        let v = self.eval(n);
        if !v.is_integer() {
            return Err(Error::Internal(format!(
                "quasi-polynomial count at N = {n} is not an integer: {v}"
            )));
        }
        Ok(v.to_integer())
    }

    pub fn add(&self, other: &QuasiPolynomial) -> QuasiPolynomial {
        assert_eq!(
            self.torus_exponent, other.torus_exponent,
            "cannot add quasi-polynomials with different symbolic factors"
        );
        let period = self.period.lcm(&other.period);
        let polys = (1..=period)
            .map(|i| {
                let a = &self.polys[(i - 1) % self.period];
                let b = &other.polys[(i - 1) % other.period];
                a.add(b)
            })
            .collect();
        QuasiPolynomial { period, polys, torus_exponent: self.torus_exponent }
    }

    /// Multiplies by the symbolic factor N^r.
    pub fn scale_by_torus_rank(&self, r: usize) -> QuasiPolynomial {
        QuasiPolynomial {
            period: self.period,
            polys: self.polys.clone(),
            torus_exponent: self.torus_exponent + r,
        }
    }
}

/// Fits one polynomial of degree <= `degree` per residue class by exact
/// interpolation on counts, then verifies each class on two held-out
/// samples. A verification failure is a fatal internal error: the counting
/// function is the ground truth.
pub fn fit_quasi_polynomial(
    period: usize,
    degree: usize,
    skip_class: impl Fn(usize) -> bool,
    count: impl Fn(u64) -> Int,
) -> Result<QuasiPolynomial> {
    assert!(period >= 1);
    let mut polys = Vec::with_capacity(period);
    for class in 1..=period {
        if skip_class(class) {
            polys.push(Polynomial::zero());
            continue;
        }
        let samples: Vec<(Rat, Rat)> = (0..=degree)
            .map(|j| {
                let n = class as u64 + (j * period) as u64;
                (Rat::from_integer(Int::from(n)), Rat::from_integer(count(n)))
            })
            .collect();
        let poly = Polynomial::interpolate(&samples);
        for j in degree + 1..=degree + 2 {
            let n = class as u64 + (j * period) as u64;
            let expected = count(n);
            let got = poly.eval(&Rat::from_integer(Int::from(n)));
            if got != Rat::from_integer(expected.clone()) {
                return Err(Error::Internal(format!(
                    "quasi-polynomial fit verification failed at N = {n}: fitted {got}, counted {expected}"
                )));
            }
        }
        polys.push(poly);
    }
    Ok(QuasiPolynomial::new(period, polys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat, rat_int};

    #[test]
    fn interpolation_recovers_polynomial() {
        // (N+1)^2
        let pts: Vec<(Rat, Rat)> = (1..=3)
            .map(|n: i64| (rat_int(n), rat_int((n + 1) * (n + 1))))
            .collect();
        let p = Polynomial::interpolate(&pts);
        assert_eq!(p.coeffs(), &[rat_int(1), rat_int(2), rat_int(1)]);
        for n in 1..=10i64 {
            assert_eq!(p.eval(&rat_int(n)), rat_int((n + 1) * (n + 1)));
        }
    }

    #[test]
    fn eval_classes_follow_paper_convention() {
        // period 2: class 1 for odd N, class 2 for even N
        let qp = QuasiPolynomial::new(
            2,
            vec![
                Polynomial::new(vec![rat(1, 2), rat(1, 2)]), // (N+1)/2
                Polynomial::new(vec![rat_int(1), rat(1, 2)]), // N/2 + 1
            ],
        );
        let expect = |n: u64| Int::from(n / 2 + 1); // #([0,1/2] ∩ (1/n)Z scaled)
        for n in 1..=9 {
            assert_eq!(qp.eval_count(n).unwrap(), expect(n));
        }
    }

    #[test]
    fn torus_exponent_multiplies() {
        let qp = QuasiPolynomial::constant(rat_int(1)).scale_by_torus_rank(2);
        assert_eq!(qp.eval_count(3).unwrap(), int(9));
        let lin = QuasiPolynomial::new(1, vec![Polynomial::new(vec![rat_int(0), rat_int(1)])]);
        assert_eq!(lin.scale_by_torus_rank(1).eval_count(4).unwrap(), int(16));
        assert_eq!(lin.scale_by_torus_rank(0), lin);
    }

    #[test]
    fn addition_takes_lcm_period() {
        let a = QuasiPolynomial::new(
            2,
            vec![Polynomial::constant(rat_int(1)), Polynomial::constant(rat_int(2))],
        );
        let b = QuasiPolynomial::new(
            3,
            vec![
                Polynomial::constant(rat_int(10)),
                Polynomial::constant(rat_int(20)),
                Polynomial::constant(rat_int(30)),
            ],
        );
        let s = a.add(&b);
        assert_eq!(s.period(), 6);
        for n in 1..=12 {
            assert_eq!(s.eval(n), a.eval(n) + b.eval(n));
        }
    }

    #[test]
    fn fit_detects_wrong_degree() {
        // N^2 cannot be fit with degree 1; verification must catch it
        let r = fit_quasi_polynomial(1, 1, |_| false, |n| Int::from(n * n));
        assert!(matches!(r, Err(Error::Internal(_))));
        let ok = fit_quasi_polynomial(1, 2, |_| false, |n| Int::from(n * n)).unwrap();
        assert_eq!(ok.eval_count(17).unwrap(), int(289));
    }
}
