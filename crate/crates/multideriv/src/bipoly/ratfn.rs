//! Rational functions `num / (Q1^e1 * Q2^e2)` with poles confined to the
//! arrangement lines. A value is kept normalized: a full orbit factor is
//! cancelled out of the numerator whenever possible, partial cancellations
//! (which would leave a non-Q-power denominator) are never performed, so
//! the representation is canonical and equality is structural.

use std::fmt;

use super::{BiPoly, Var};
use crate::arrangement::Arrangement;
use crate::exactnum::{FieldScalar, Mat2};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFn {
    num: BiPoly,
    den_q1: u32,
    den_q2: u32,
}

impl RatFn {
    pub fn new(num: BiPoly, den_q1: u32, den_q2: u32, arr: &Arrangement) -> RatFn {
        assert_eq!(num.two_h(), arr.two_h());
        let mut r = RatFn {
            num,
            den_q1,
            den_q2,
        };
        r.normalize(arr);
        r
    }

    pub fn zero(arr: &Arrangement) -> RatFn {
        RatFn {
            num: BiPoly::zero(arr.two_h()),
            den_q1: 0,
            den_q2: 0,
        }
    }

    pub fn one(arr: &Arrangement) -> RatFn {
        RatFn {
            num: BiPoly::one(arr.two_h()),
            den_q1: 0,
            den_q2: 0,
        }
    }

    pub fn from_poly(num: BiPoly) -> RatFn {
        RatFn {
            num,
            den_q1: 0,
            den_q2: 0,
        }
    }

    fn normalize(&mut self, arr: &Arrangement) {
        if self.num.is_zero() {
            self.den_q1 = 0;
            self.den_q2 = 0;
            return;
        }
        while self.den_q1 > 0 {
            match arr.div_by_q1(&self.num) {
                Some(q) => {
                    self.num = q;
                    self.den_q1 -= 1;
                }
                None => break,
            }
        }
        while self.den_q2 > 0 {
            match arr.div_by_q2(&self.num) {
                Some(q) => {
                    self.num = q;
                    self.den_q2 -= 1;
                }
                None => break,
            }
        }
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den_q1(&self) -> u32 {
        self.den_q1
    }

    pub fn den_q2(&self) -> u32 {
        self.den_q2
    }

    pub fn two_h(&self) -> u32 {
        self.num.two_h()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den_q1 == 0 && self.den_q2 == 0
    }

    /// Numerator re-expanded over the denominator `Q1^e1 Q2^e2`;
    /// `None` when the actual denominator exceeds the requested one.
    pub fn num_at(&self, e1: u32, e2: u32, arr: &Arrangement) -> Option<BiPoly> {
        if e1 < self.den_q1 || e2 < self.den_q2 {
            return None;
        }
        let mut n = self.num.clone();
        if e1 > self.den_q1 {
            n = n.mul(&arr.q1().pow(e1 - self.den_q1));
        }
        if e2 > self.den_q2 {
            n = n.mul(&arr.q2().pow(e2 - self.den_q2));
        }
        Some(n)
    }

    pub fn add(&self, rhs: &RatFn, arr: &Arrangement) -> RatFn {
        let e1 = self.den_q1.max(rhs.den_q1);
        let e2 = self.den_q2.max(rhs.den_q2);
        let a = self.num_at(e1, e2, arr).unwrap();
        let b = rhs.num_at(e1, e2, arr).unwrap();
        RatFn::new(a.add(&b), e1, e2, arr)
    }

    pub fn sub(&self, rhs: &RatFn, arr: &Arrangement) -> RatFn {
        self.add(&rhs.neg(), arr)
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den_q1: self.den_q1,
            den_q2: self.den_q2,
        }
    }

    pub fn mul(&self, rhs: &RatFn, arr: &Arrangement) -> RatFn {
        RatFn::new(
            self.num.mul(&rhs.num),
            self.den_q1 + rhs.den_q1,
            self.den_q2 + rhs.den_q2,
            arr,
        )
    }

    pub fn mul_poly(&self, p: &BiPoly, arr: &Arrangement) -> RatFn {
        RatFn::new(self.num.mul(p), self.den_q1, self.den_q2, arr)
    }

    pub fn scale(&self, c: &FieldScalar) -> RatFn {
        if c.is_zero() {
            return RatFn {
                num: BiPoly::zero(self.two_h()),
                den_q1: 0,
                den_q2: 0,
            };
        }
        RatFn {
            num: self.num.scale(c),
            den_q1: self.den_q1,
            den_q2: self.den_q2,
        }
    }

    /// Multiplies by `Q1^k1 Q2^k2` with integer (possibly negative) `k`.
    pub fn mul_q_power(&self, k1: i64, k2: i64, arr: &Arrangement) -> RatFn {
        let mut num = self.num.clone();
        let e1 = self.den_q1 as i64 - k1.min(0);
        let e2 = self.den_q2 as i64 - k2.min(0);
        if k1 > 0 {
            num = num.mul(&arr.q1().pow(k1 as u32));
        }
        if k2 > 0 {
            num = num.mul(&arr.q2().pow(k2 as u32));
        }
        RatFn::new(num, e1 as u32, e2 as u32, arr)
    }

    /// Formal partial derivative.
    pub fn derive(&self, v: Var, arr: &Arrangement) -> RatFn {
        if self.is_zero() {
            return self.clone();
        }
        let (a, b) = (self.den_q1, self.den_q2);
        if a == 0 && b == 0 {
            return RatFn::from_poly(self.num.partial_derive(v));
        }
        // d(num/(Q1^a Q2^b)) over the common denominator Q1^(a+1) Q2^(b+1)
        let dn = self.num.partial_derive(v);
        let dq1 = arr.q1().partial_derive(v);
        let dq2 = arr.q2().partial_derive(v);
        let mut top = dn.mul(arr.q1()).mul(arr.q2());
        let mut corr = BiPoly::zero(self.two_h());
        if a > 0 {
            corr = corr.add(
                &dq1.mul(arr.q2())
                    .scale(&FieldScalar::from_i64(self.two_h(), a as i64)),
            );
        }
        if b > 0 {
            corr = corr.add(
                &dq2.mul(arr.q1())
                    .scale(&FieldScalar::from_i64(self.two_h(), b as i64)),
            );
        }
        top = top.sub(&self.num.mul(&corr));
        RatFn::new(top, a + 1, b + 1, arr)
    }

    /// Polynomial degree: numerator degree minus denominator degree.
    /// `None` when zero or inhomogeneous.
    pub fn pdeg(&self, arr: &Arrangement) -> Option<i64> {
        let d = self.num.homogeneous_degree()? as i64;
        let half = arr.h() as i64 / 2;
        Some(d - half * (self.den_q1 as i64 + self.den_q2 as i64))
    }

    /// Composition with the linear substitution `x -> M x` for `M` in the
    /// reflection group (orbit polynomials map to themselves up to sign).
    pub fn substitute_group(&self, m: &Mat2, arr: &Arrangement) -> RatFn {
        let (s1, s2) = arr.q_signs(m);
        let mut num = self.num.substitute_linear(m);
        let mut sign = 1i64;
        if s1 < 0 && self.den_q1 % 2 == 1 {
            sign = -sign;
        }
        if s2 < 0 && self.den_q2 % 2 == 1 {
            sign = -sign;
        }
        if sign < 0 {
            num = num.neg();
        }
        RatFn::new(num, self.den_q1, self.den_q2, arr)
    }

    /// Valuation along an arrangement line: numerator valuation minus the
    /// denominator exponent of that line's orbit. `None` encodes infinity.
    pub fn valuation_along_line(&self, line: usize, arr: &Arrangement) -> Option<i64> {
        let v = self.num.valuation_along(arr.line(line))? as i64;
        let den = if arr.orbit_of(line) == 0 {
            self.den_q1
        } else {
            self.den_q2
        } as i64;
        Some(v - den)
    }

    /// Scalar ratio `c` with `self = c * other`, when one exists.
    pub fn proportionality(&self, other: &RatFn) -> Option<FieldScalar> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(FieldScalar::zero(self.two_h()));
        }
        if self.den_q1 != other.den_q1 || self.den_q2 != other.den_q2 {
            return None;
        }
        let (lk, lc) = self.num.leading().unwrap();
        let (rk, rc) = other.num.leading().unwrap();
        if lk != rk {
            return None;
        }
        let c = lc.div(&rc).ok()?;
        if self.num == other.num.scale(&c) {
            Some(c)
        } else {
            None
        }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let den = match (self.den_q1, self.den_q2) {
            (a, 0) => format!("Q1{}", pow(a)),
            (0, b) => format!("Q2{}", pow(b)),
            (a, b) => format!("Q1{}*Q2{}", pow(a), pow(b)),
        };
        if self.num.num_terms() > 1 {
            write!(f, "({}) / ({})", self.num, den)
        } else {
            write!(f, "{} / ({})", self.num, den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({})", self)
    }
}

fn pow(k: u32) -> String {
    if k == 1 {
        String::new()
    } else {
        format!("^{}", k)
    }
}
