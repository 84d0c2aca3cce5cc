//! Sparse bivariate polynomials over `K_h` and rational functions whose
//! denominators are monomials in the orbit polynomials `Q1`, `Q2`.

mod ratfn;

pub use ratfn::RatFn;

use std::collections::BTreeMap;
use std::fmt;

use crate::exactnum::{FieldScalar, Mat2};

/// Which variable, `x1` or `x2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X1,
    X2,
}

/// `a*x1 + b*x2` with `(a, b) != (0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub a: FieldScalar,
    pub b: FieldScalar,
}

impl LinearForm {
    pub fn new(a: FieldScalar, b: FieldScalar) -> Self {
        assert!(!(a.is_zero() && b.is_zero()), "zero linear form");
        assert_eq!(a.two_h(), b.two_h());
        LinearForm { a, b }
    }

    pub fn two_h(&self) -> u32 {
        self.a.two_h()
    }

    pub fn to_poly(&self) -> BiPoly {
        let mut p = BiPoly::zero(self.two_h());
        p.add_term(1, 0, self.a.clone());
        p.add_term(0, 1, self.b.clone());
        p
    }

    /// True when the two forms cut out the same line.
    pub fn same_line(&self, other: &LinearForm) -> bool {
        self.a.mul(&other.b).sub(&self.b.mul(&other.a)).is_zero()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Sparse bivariate polynomial; keys are `(deg_x1, deg_x2)` and no zero
/// coefficient is stored. The zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    two_h: u32,
    terms: BTreeMap<(u32, u32), FieldScalar>,
}

impl BiPoly {
    pub fn zero(two_h: u32) -> Self {
        BiPoly {
            two_h,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldScalar) -> Self {
        let mut p = BiPoly::zero(c.two_h());
        p.add_term(0, 0, c);
        p
    }

    pub fn one(two_h: u32) -> Self {
        Self::constant(FieldScalar::one(two_h))
    }

    pub fn var(two_h: u32, v: Var) -> Self {
        let mut p = BiPoly::zero(two_h);
        match v {
            Var::X1 => p.add_term(1, 0, FieldScalar::one(two_h)),
            Var::X2 => p.add_term(0, 1, FieldScalar::one(two_h)),
        }
        p
    }

    pub fn monomial(two_h: u32, i: u32, j: u32, c: FieldScalar) -> Self {
        let mut p = BiPoly::zero(two_h);
        p.add_term(i, j, c);
        p
    }

    pub fn two_h(&self) -> u32 {
        self.two_h
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &FieldScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldScalar {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| FieldScalar::zero(self.two_h))
    }

    /// Adds `c * x1^i * x2^j`, dropping the entry if it cancels.
    pub fn add_term(&mut self, i: u32, j: u32, c: FieldScalar) {
        if c.is_zero() {
            return;
        }
        assert_eq!(c.two_h(), self.two_h, "coefficient from the wrong field");
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, j)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_tag(&self, rhs: &BiPoly) {
        assert_eq!(self.two_h, rhs.two_h, "polynomials from different fields");
    }

    pub fn add(&self, rhs: &BiPoly) -> BiPoly {
        self.check_tag(rhs);
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &BiPoly) -> BiPoly {
        self.check_tag(rhs);
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.neg());
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        let mut out = BiPoly::zero(self.two_h);
        for (&(i, j), c) in &self.terms {
            out.terms.insert((i, j), c.neg());
        }
        out
    }

    pub fn mul(&self, rhs: &BiPoly) -> BiPoly {
        self.check_tag(rhs);
        let mut out = BiPoly::zero(self.two_h);
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldScalar) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero(self.two_h);
        }
        let mut out = BiPoly::zero(self.two_h);
        for (&(i, j), a) in &self.terms {
            out.add_term(i, j, a.mul(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut out = BiPoly::one(self.two_h);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn partial_derive(&self, v: Var) -> BiPoly {
        let mut out = BiPoly::zero(self.two_h);
        for (&(i, j), c) in &self.terms {
            match v {
                Var::X1 if i > 0 => {
                    out.add_term(i - 1, j, c.scale(&crate::exactnum::rat(i as i64)))
                }
                Var::X2 if j > 0 => {
                    out.add_term(i, j - 1, c.scale(&crate::exactnum::rat(j as i64)))
                }
                _ => {}
            }
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// The common total degree of all terms, or `None` if the polynomial
    /// is zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|&(i, j)| i + j);
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Leading term in lex order with `x1 > x2`.
    pub fn leading(&self) -> Option<((u32, u32), FieldScalar)> {
        self.terms.iter().next_back().map(|(&k, c)| (k, c.clone()))
    }

    pub fn leading_coeff(&self) -> Option<FieldScalar> {
        self.leading().map(|(_, c)| c)
    }

    /// Evaluates at field points (used in tests and sanity checks).
    pub fn eval(&self, x1: &FieldScalar, x2: &FieldScalar) -> FieldScalar {
        let mut acc = FieldScalar::zero(self.two_h);
        for (&(i, j), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t = t.mul(x1);
            }
            for _ in 0..j {
                t = t.mul(x2);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitution `(x1, x2) -> M (x1, x2)`: each variable `x_i` is
    /// replaced by the image row `M[i][0] x1 + M[i][1] x2`.
    pub fn substitute_linear(&self, m: &Mat2) -> BiPoly {
        assert!(!m.det().is_zero(), "singular substitution matrix");
        let two_h = self.two_h;
        let img1 = {
            let mut p = BiPoly::zero(two_h);
            p.add_term(1, 0, m.m[0][0].clone());
            p.add_term(0, 1, m.m[0][1].clone());
            p
        };
        let img2 = {
            let mut p = BiPoly::zero(two_h);
            p.add_term(1, 0, m.m[1][0].clone());
            p.add_term(0, 1, m.m[1][1].clone());
            p
        };
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut pow1 = vec![BiPoly::one(two_h)];
        for k in 1..=max_i {
            pow1.push(pow1[(k - 1) as usize].mul(&img1));
        }
        let mut pow2 = vec![BiPoly::one(two_h)];
        for k in 1..=max_j {
            pow2.push(pow2[(k - 1) as usize].mul(&img2));
        }
        let mut out = BiPoly::zero(two_h);
        for (&(i, j), c) in &self.terms {
            let t = pow1[i as usize].mul(&pow2[j as usize]).scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Exact division by a linear form, or `None` when not divisible.
    pub fn div_linear(&self, alpha: &LinearForm) -> Option<BiPoly> {
        assert_eq!(alpha.two_h(), self.two_h);
        if self.is_zero() {
            return Some(self.clone());
        }
        if alpha.b.is_zero() {
            // alpha = a*x1: divisible iff every term has positive x1-degree
            let inv = alpha.a.inverse().expect("nonzero linear form");
            let mut out = BiPoly::zero(self.two_h);
            for (&(i, j), c) in &self.terms {
                if i == 0 {
                    return None;
                }
                out.add_term(i - 1, j, c.mul(&inv));
            }
            return Some(out);
        }
        // long division in x2; the remainder is the image of the
        // substitution x2 -> -(a/b) x1, a univariate polynomial in x1
        let binv = alpha.b.inverse().expect("nonzero coefficient");
        let mut rem = self.clone();
        let mut quo = BiPoly::zero(self.two_h);
        loop {
            // term of maximal x2-degree; the step strictly reduces it
            let Some((&(i, j), c)) = rem.terms.iter().max_by_key(|(&(i2, j2), _)| (j2, i2)) else {
                break;
            };
            if j == 0 {
                break;
            }
            let qc = c.mul(&binv);
            quo.add_term(i, j - 1, qc.clone());
            // rem -= (a x1 + b x2) * qc * x1^i x2^(j-1)
            rem.add_term(i + 1, j - 1, qc.mul(&alpha.a).neg());
            rem.add_term(i, j, qc.mul(&alpha.b).neg());
        }
        if rem.is_zero() {
            Some(quo)
        } else {
            None
        }
    }

    /// The largest `e` with `alpha^e | p`; `None` encodes infinity (p = 0).
    pub fn valuation_along(&self, alpha: &LinearForm) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut e = 0;
        let mut p = self.clone();
        while let Some(q) = p.div_linear(alpha) {
            e += 1;
            p = q;
        }
        Some(e)
    }

    /// Exact division by an arbitrary nonzero polynomial, or `None`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        // lex division with x1 > x2; divisor leading term must divide
        let (dk, dc) = d.leading().unwrap();
        let dinv = dc.inverse().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quo = BiPoly::zero(self.two_h);
        while !rem.is_zero() {
            let (rk, rc) = rem.leading().unwrap();
            if rk.0 < dk.0 || rk.1 < dk.1 {
                return None;
            }
            let qk = (rk.0 - dk.0, rk.1 - dk.1);
            let qc = rc.mul(&dinv);
            quo.add_term(qk.0, qk.1, qc.clone());
            let t = d.mul(&BiPoly::monomial(self.two_h, qk.0, qk.1, qc));
            rem = rem.sub(&t);
        }
        Some(quo)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            let cs = format!("{}", c);
            let (sign, body) = if c.support() > 1 {
                ("+", format!("({})", cs))
            } else if let Some(stripped) = cs.strip_prefix('-') {
                ("-", stripped.to_string())
            } else {
                ("+", cs)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign == "-" {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (i, 0) => format!("x1{}", super_pow(i)),
                (0, j) => format!("x2{}", super_pow(j)),
                (i, j) => format!("x1{}*x2{}", super_pow(i), super_pow(j)),
            };
            if mono.is_empty() {
                write!(f, "{}", body)?;
            } else if body == "1" {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", body, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self)
    }
}

fn super_pow(k: u32) -> String {
    if k == 1 {
        String::new()
    } else {
        format!("^{}", k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio, FieldScalar};
    use proptest::prelude::*;

    const TWO_H: u32 = 8;

    fn x1() -> BiPoly {
        BiPoly::var(TWO_H, Var::X1)
    }

    fn x2() -> BiPoly {
        BiPoly::var(TWO_H, Var::X2)
    }

    fn c(n: i64) -> FieldScalar {
        FieldScalar::from_i64(TWO_H, n)
    }

    #[test]
    fn product_of_sum_and_difference() {
        let p = x1().add(&x2());
        let q = x1().sub(&x2());
        let want = x1().mul(&x1()).sub(&x2().mul(&x2()));
        assert_eq!(p.mul(&q), want);
    }

    #[test]
    fn additive_identity() {
        let p = x1().mul(&x2()).add(&BiPoly::constant(c(3)));
        assert_eq!(p.add(&BiPoly::zero(TWO_H)), p);
    }

    #[test]
    fn expansion_example() {
        // (x1 x2)(x1^2 - x2^2) = x1^3 x2 - x1 x2^3
        let p = x1().mul(&x2());
        let q = x1().pow(2).sub(&x2().pow(2));
        let mut want = BiPoly::zero(TWO_H);
        want.add_term(3, 1, c(1));
        want.add_term(1, 3, c(-1));
        assert_eq!(p.mul(&q), want);
    }

    #[test]
    fn derivative_examples() {
        // d/dx1 (x1^2 x2) = 2 x1 x2
        let p = x1().pow(2).mul(&x2());
        assert_eq!(
            p.partial_derive(Var::X1),
            BiPoly::monomial(TWO_H, 1, 1, c(2))
        );
        // d/dx2 ((x1^2 + x2^2)/2) = x2
        let p1 = x1()
            .pow(2)
            .add(&x2().pow(2))
            .scale(&FieldScalar::from_rational(TWO_H, ratio(1, 2)));
        assert_eq!(p1.partial_derive(Var::X2), x2());
        // d/dx1 (x1^2 - x2^2) = 2 x1
        let q2 = x1().pow(2).sub(&x2().pow(2));
        assert_eq!(
            q2.partial_derive(Var::X1),
            BiPoly::monomial(TWO_H, 1, 0, c(2))
        );
    }

    #[test]
    fn valuation_examples() {
        let along_x2 = LinearForm::new(c(0), c(1));
        let along_x1 = LinearForm::new(c(1), c(0));
        let p = x1().pow(2).mul(&x2());
        assert_eq!(p.valuation_along(&along_x2), Some(1));
        // h = 4 normalization: Q1 = 2 x1 x2
        let q1 = x1().mul(&x2()).scale(&c(2));
        assert_eq!(q1.valuation_along(&along_x1), Some(1));
        let s = x1().pow(2).add(&x2().pow(2));
        assert_eq!(s.valuation_along(&along_x1), Some(0));
        assert_eq!(BiPoly::zero(TWO_H).valuation_along(&along_x1), None);
        // diagonal line
        let diag = LinearForm::new(c(1), c(1));
        let odd_sum = x1().pow(3).add(&x2().pow(3));
        assert_eq!(odd_sum.valuation_along(&diag), Some(1));
    }

    #[test]
    fn division_by_linear_forms() {
        let alpha = LinearForm::new(c(2), c(-3));
        let p = alpha.to_poly().pow(3).mul(&x1().add(&x2()));
        let q = p.div_linear(&alpha).unwrap();
        assert_eq!(q.mul(&alpha.to_poly()), p);
        assert_eq!(p.valuation_along(&alpha), Some(3));
        assert!(x1().div_linear(&LinearForm::new(c(0), c(1))).is_none());
    }

    #[test]
    fn substitution_convention_on_x1() {
        // x1 composed with M maps to M[0][0] x1 + M[0][1] x2
        let m = Mat2::new([[c(2), c(3)], [c(5), c(7)]]);
        let got = x1().substitute_linear(&m);
        let mut want = BiPoly::zero(TWO_H);
        want.add_term(1, 0, c(2));
        want.add_term(0, 1, c(3));
        assert_eq!(got, want);
    }

    fn arb_poly() -> impl Strategy<Value = BiPoly> {
        proptest::collection::vec(((0u32..4, 0u32..4), -5i64..=5), 0..6).prop_map(|terms| {
            let mut p = BiPoly::zero(TWO_H);
            for ((i, j), n) in terms {
                p.add_term(i, j, c(n));
            }
            p
        })
    }

    fn arb_line() -> impl Strategy<Value = LinearForm> {
        (-3i64..=3, -3i64..=3)
            .prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
            .prop_map(|(a, b)| LinearForm::new(c(a), c(b)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn valuation_is_additive(p in arb_poly(), q in arb_poly(), alpha in arb_line()) {
            let (vp, vq) = (p.valuation_along(&alpha), q.valuation_along(&alpha));
            let v = p.mul(&q).valuation_along(&alpha);
            match (vp, vq) {
                (Some(a), Some(b)) => prop_assert_eq!(v, Some(a + b)),
                _ => prop_assert_eq!(v, None),
            }
        }

        #[test]
        fn substitution_is_ring_homomorphism(p in arb_poly(), q in arb_poly()) {
            let m = Mat2::new([[c(1), c(2)], [c(1), c(-1)]]);
            prop_assert_eq!(
                p.mul(&q).substitute_linear(&m),
                p.substitute_linear(&m).mul(&q.substitute_linear(&m))
            );
            prop_assert_eq!(
                p.add(&q).substitute_linear(&m),
                p.substitute_linear(&m).add(&q.substitute_linear(&m))
            );
        }

        #[test]
        fn substitution_respects_composition(p in arb_poly()) {
            let m1 = Mat2::new([[c(1), c(1)], [c(0), c(1)]]);
            let m2 = Mat2::new([[c(2), c(0)], [c(3), c(1)]]);
            // (p o m1) o m2 substitutes x -> m1 x first: equals p o (m1 m2)
            prop_assert_eq!(
                p.substitute_linear(&m1).substitute_linear(&m2),
                p.substitute_linear(&m1.mul(&m2))
            );
        }

        #[test]
        fn derivative_drops_homogeneous_degree(k in 1u32..5) {
            let p = x1().pow(k).add(&x1().pow(k - 1).mul(&x2()).scale(&c(3)));
            let d = p.partial_derive(Var::X1);
            prop_assert_eq!(p.homogeneous_degree(), Some(k));
            prop_assert_eq!(d.homogeneous_degree(), Some(k - 1));
        }
    }

    #[test]
    fn eval_and_rat_helpers() {
        let p = x1().pow(2).add(&x2());
        let two = c(2);
        let three = c(3);
        assert_eq!(p.eval(&two, &three), c(7));
        assert_eq!(rat(2), ratio(4, 2));
    }
}
