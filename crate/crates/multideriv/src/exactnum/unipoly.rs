//! Dense univariate polynomials over the rationals, just enough for
//! cyclotomic polynomials and extended-Euclid inversion in `K_h`.

use super::{rat, Rational};
use num_traits::{One, Zero};

/// Coefficients in ascending degree; empty vector is the zero polynomial,
/// otherwise the last coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![rat(1)],
        }
    }

    /// `t^n - 1`.
    pub fn t_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = rat(-1);
        coeffs[n] = rat(1);
        UniPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UniPoly::new(coeffs)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UniPoly::new(coeffs)
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, rhs: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let d = rhs.coeffs.len() - 1;
        let lead = rhs.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (UniPoly::zero(), UniPoly::new(rem));
        }
        let mut quo = vec![Rational::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = &rem[k] / &lead;
            if c.is_zero() {
                continue;
            }
            quo[k - d] = c.clone();
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = &c * b;
                rem[k - d + j] -= t;
            }
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, rhs: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(rhs);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

/// The `n`-th cyclotomic polynomial `Phi_n(t)`: monic with integer
/// coefficients, degree `phi(n)`, computed as `(t^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic_poly(n: u32) -> UniPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    if n == 1 {
        return UniPoly::new(vec![rat(-1), rat(1)]);
    }
    let mut quotient = UniPoly::t_pow_minus_one(n as usize);
    for d in 1..n {
        if n % d == 0 {
            quotient = quotient.div_exact(&cyclotomic_poly(d));
        }
    }
    quotient
}

/// Extended Euclid: returns `(g, u, v)` with `u*a + v*b = g` and `g` the
/// monic gcd (or zero).
pub fn extended_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (UniPoly::one(), UniPoly::zero());
    let (mut v0, mut v1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let u = u0.sub(&q.mul(&u1));
        let v = v0.sub(&q.mul(&v1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
        v0 = v1;
        v1 = v;
    }
    if r0.is_zero() {
        return (r0, u0, v0);
    }
    let lead = r0.coeffs.last().unwrap().clone();
    let inv = Rational::one() / lead;
    (r0.scale(&inv), u0.scale(&inv), v0.scale(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::euler_phi;

    fn poly(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn cyclotomic_phi4() {
        // primitive 4th roots are +-i, so Phi_4 = t^2 + 1
        assert_eq!(cyclotomic_poly(4), poly(&[1, 0, 1]));
    }

    #[test]
    fn cyclotomic_phi8_phi12_against_division_oracle() {
        // Independent route: divide t^n - 1 by the hand-written proper
        // cyclotomic factors rather than recursing.
        let phi1 = poly(&[-1, 1]);
        let phi2 = poly(&[1, 1]);
        let phi4 = poly(&[1, 0, 1]);
        let oracle8 = UniPoly::t_pow_minus_one(8)
            .div_exact(&phi1)
            .div_exact(&phi2)
            .div_exact(&phi4);
        assert_eq!(cyclotomic_poly(8), oracle8);
        assert_eq!(oracle8, poly(&[1, 0, 0, 0, 1]));

        let phi3 = poly(&[1, 1, 1]);
        let phi6 = poly(&[1, -1, 1]);
        let oracle12 = UniPoly::t_pow_minus_one(12)
            .div_exact(&phi1)
            .div_exact(&phi2)
            .div_exact(&phi3)
            .div_exact(&phi4)
            .div_exact(&phi6);
        assert_eq!(cyclotomic_poly(12), oracle12);
        assert_eq!(oracle12, poly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_degree_is_phi() {
        for n in 1..=32 {
            let p = cyclotomic_poly(n);
            assert_eq!(p.degree(), Some(euler_phi(n) as usize), "n={n}");
            assert_eq!(*p.coeffs().last().unwrap(), rat(1), "monic, n={n}");
        }
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = poly(&[1, 1]).mul(&poly(&[2, 0, 1]));
        let b = poly(&[1, 1]).mul(&poly(&[-1, 1]));
        let (g, u, v) = extended_gcd(&a, &b);
        assert_eq!(g, poly(&[1, 1]));
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }
}
