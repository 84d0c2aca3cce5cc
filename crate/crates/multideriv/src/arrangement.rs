//! The dihedral reflection arrangement of `I2(h)` for even `h >= 4`:
//! the `h` lines `ker(alpha_j)` with `alpha_j = -sin(j*pi/h) x1 + cos(j*pi/h) x2`,
//! their two orbits (even / odd `j`), the defining polynomials and basic
//! invariants, and the group generators.
//!
//! Normalization (fixed once, replacing every "up to constant" statement):
//! `Q1 = Im((x1 + i x2)^(h/2))`, `Q2 = Re((x1 + i x2)^(h/2))`, `Q = Q1*Q2`,
//! `P1 = (x1^2 + x2^2)/2`, `P2 = Q1^2`. With them `V(Q1) = (h/2) Q2` and
//! `V(Q2) = -(h/2) Q1` hold exactly, where `V = -x2 d1 + x1 d2`.

use thiserror::Error;

use crate::bipoly::{BiPoly, LinearForm, RatFn, Var};
use crate::exactnum::{ratio, trig_constant, FieldScalar, Mat2, TrigKind};

/// Default upper bound on `h`; keeps `phi(2h)` and solver sizes desk-scale.
pub const DEFAULT_H_CAP: u32 = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("h must be even (odd h has a single orbit and constant multiplicities)")]
    OddH,
    #[error("h must be at least 4")]
    TooSmall,
    #[error("h = {h} exceeds the configured cap {cap}")]
    ExceedsCap { h: u32, cap: u32 },
}

/// Orbit-constant integer multiplicity `(a1, a2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Multiplicity {
    pub a1: i64,
    pub a2: i64,
}

impl Multiplicity {
    pub fn new(a1: i64, a2: i64) -> Self {
        Multiplicity { a1, a2 }
    }

    pub fn neg(&self) -> Self {
        Multiplicity::new(-self.a1, -self.a2)
    }

    /// The value on the orbit of line `j` (orbit 0 = even `j`).
    pub fn on_orbit(&self, orbit: usize) -> i64 {
        if orbit == 0 {
            self.a1
        } else {
            self.a2
        }
    }
}

#[derive(Debug)]
pub struct Arrangement {
    h: u32,
    two_h: u32,
    lines: Vec<LinearForm>,
    orbit1: Vec<usize>,
    orbit2: Vec<usize>,
    q1: BiPoly,
    q2: BiPoly,
    q: BiPoly,
    p1: BiPoly,
    p2: BiPoly,
    gen_rot: Mat2,
    gen_refl: Mat2,
}

impl Arrangement {
    pub fn build(h: u32) -> Result<Arrangement, BuildError> {
        Self::build_with_cap(h, DEFAULT_H_CAP)
    }

    pub fn build_with_cap(h: u32, cap: u32) -> Result<Arrangement, BuildError> {
        if h % 2 != 0 {
            return Err(BuildError::OddH);
        }
        if h < 4 {
            return Err(BuildError::TooSmall);
        }
        if h > cap {
            return Err(BuildError::ExceedsCap { h, cap });
        }
        let two_h = 2 * h;

        let lines: Vec<LinearForm> = (0..h as i64)
            .map(|j| {
                LinearForm::new(
                    trig_constant(TrigKind::Sin, j, h).neg(),
                    trig_constant(TrigKind::Cos, j, h),
                )
            })
            .collect();
        let orbit1: Vec<usize> = (0..h as usize).step_by(2).collect();
        let orbit2: Vec<usize> = (1..h as usize).step_by(2).collect();

        // binomial expansion of (x1 + i x2)^(h/2); both parts have integer
        // coefficients
        let n = h / 2;
        let mut q1 = BiPoly::zero(two_h);
        let mut q2 = BiPoly::zero(two_h);
        let mut binom = num_bigint::BigInt::from(1);
        for k in 0..=n {
            let c = FieldScalar::from_rational(
                two_h,
                crate::exactnum::Rational::from_integer(binom.clone()),
            );
            match k % 4 {
                0 => q2.add_term(n - k, k, c),
                1 => q1.add_term(n - k, k, c),
                2 => q2.add_term(n - k, k, c.neg()),
                3 => q1.add_term(n - k, k, c.neg()),
                _ => unreachable!(),
            }
            binom = binom * (n - k) / (k + 1);
        }
        let q = q1.mul(&q2);
        let half = FieldScalar::from_rational(two_h, ratio(1, 2));
        let p1 = BiPoly::var(two_h, Var::X1)
            .pow(2)
            .add(&BiPoly::var(two_h, Var::X2).pow(2))
            .scale(&half);
        let p2 = q1.mul(&q1);

        let cos = trig_constant(TrigKind::Cos, 2, h);
        let sin = trig_constant(TrigKind::Sin, 2, h);
        let gen_rot = Mat2::new([[cos.clone(), sin.neg()], [sin, cos]]);
        let one = FieldScalar::one(two_h);
        let zero = FieldScalar::zero(two_h);
        let gen_refl = Mat2::new([[one.clone(), zero.clone()], [zero, one.neg()]]);

        let arr = Arrangement {
            h,
            two_h,
            lines,
            orbit1,
            orbit2,
            q1,
            q2,
            q,
            p1,
            p2,
            gen_rot,
            gen_refl,
        };
        arr.verify_invariants();
        Ok(arr)
    }

    /// Build-time structural checks; panic on violation (they would mean a
    /// construction bug, not bad input).
    fn verify_invariants(&self) {
        let h = self.h as usize;
        assert_eq!(self.orbit1.len(), h / 2);
        assert_eq!(self.orbit2.len(), h / 2);
        // valuation census: Q1 vanishes to order one exactly on orbit 1
        for j in 0..h {
            let v1 = self.q1.valuation_along(&self.lines[j]).unwrap();
            let v2 = self.q2.valuation_along(&self.lines[j]).unwrap();
            if j % 2 == 0 {
                assert_eq!((v1, v2), (1, 0), "line {j}");
            } else {
                assert_eq!((v1, v2), (0, 1), "line {j}");
            }
        }
        assert_eq!(self.q, self.q1.mul(&self.q2));
        assert_eq!(self.p2, self.q1.mul(&self.q1));
        assert_eq!(self.q.total_degree(), Some(self.h));
        assert_eq!(self.p2.total_degree(), Some(self.h));
        // rotational derivative identities with exact constants
        let half_h = FieldScalar::from_rational(self.two_h, ratio(self.h as i64, 2));
        assert_eq!(self.rot_derive(&self.q1), self.q2.scale(&half_h));
        assert_eq!(self.rot_derive(&self.q2), self.q1.scale(&half_h).neg());
        // the group generated by r and s has order 2h and permutes the
        // lines preserving orbits
        let identity = Mat2::identity(self.two_h);
        let mut rk = identity.clone();
        for _ in 0..h {
            rk = rk.mul(&self.gen_rot);
        }
        assert_eq!(rk, identity, "r^h = 1");
        assert_eq!(self.gen_refl.mul(&self.gen_refl), identity, "s^2 = 1");
        let elements = self.group_elements();
        assert_eq!(elements.len(), 2 * h);
        for (a, wa) in elements.iter().enumerate() {
            for wb in elements.iter().skip(a + 1) {
                assert!(wa != wb, "group elements must be pairwise distinct");
            }
        }
        for w in &elements {
            for j in 0..h {
                let jp = self.line_image(j, w);
                assert_eq!(jp % 2, j % 2, "group action must preserve orbits");
            }
        }
    }

    /// `V(f) = -x2 df/dx1 + x1 df/dx2`.
    pub fn rot_derive(&self, f: &BiPoly) -> BiPoly {
        let x1 = BiPoly::var(self.two_h, Var::X1);
        let x2 = BiPoly::var(self.two_h, Var::X2);
        x1.mul(&f.partial_derive(Var::X2))
            .sub(&x2.mul(&f.partial_derive(Var::X1)))
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn two_h(&self) -> u32 {
        self.two_h
    }

    pub fn lines(&self) -> &[LinearForm] {
        &self.lines
    }

    pub fn line(&self, j: usize) -> &LinearForm {
        &self.lines[j]
    }

    pub fn orbit_of(&self, j: usize) -> usize {
        j % 2
    }

    pub fn orbit1(&self) -> &[usize] {
        &self.orbit1
    }

    pub fn orbit2(&self) -> &[usize] {
        &self.orbit2
    }

    pub fn q1(&self) -> &BiPoly {
        &self.q1
    }

    pub fn q2(&self) -> &BiPoly {
        &self.q2
    }

    pub fn q(&self) -> &BiPoly {
        &self.q
    }

    pub fn p1(&self) -> &BiPoly {
        &self.p1
    }

    pub fn p2(&self) -> &BiPoly {
        &self.p2
    }

    pub fn gen_rot(&self) -> &Mat2 {
        &self.gen_rot
    }

    pub fn gen_refl(&self) -> &Mat2 {
        &self.gen_refl
    }

    /// All `2h` group elements: `r^k` and `r^k s`.
    pub fn group_elements(&self) -> Vec<Mat2> {
        let mut out = Vec::with_capacity(2 * self.h as usize);
        let mut rk = Mat2::identity(self.two_h);
        for _ in 0..self.h {
            out.push(rk.clone());
            out.push(rk.mul(&self.gen_refl));
            rk = rk.mul(&self.gen_rot);
        }
        out
    }

    /// Index of the line `w^-1(ker alpha_j)`, i.e. the line whose form is
    /// proportional to `alpha_j` composed with `w`.
    pub fn line_image(&self, j: usize, w: &Mat2) -> usize {
        let composed = self.lines[j].to_poly().substitute_linear(w);
        let a = composed.coeff(1, 0);
        let b = composed.coeff(0, 1);
        let form = LinearForm::new(a, b);
        for (k, line) in self.lines.iter().enumerate() {
            if form.same_line(line) {
                return k;
            }
        }
        panic!("group element does not permute the arrangement lines");
    }

    /// Signs `(s1, s2)` with `Q_i o w = s_i * Q_i` for a group element `w`.
    pub fn q_signs(&self, w: &Mat2) -> (i8, i8) {
        let s1 = self.sign_of(&self.q1, w);
        let s2 = self.sign_of(&self.q2, w);
        (s1, s2)
    }

    fn sign_of(&self, qi: &BiPoly, w: &Mat2) -> i8 {
        let image = qi.substitute_linear(w);
        if image == *qi {
            1
        } else if image == qi.neg() {
            -1
        } else {
            panic!("matrix is not in the reflection group: orbit polynomial not preserved");
        }
    }

    /// `Q1^a1 * Q2^a2` with negative exponents in the denominator.
    pub fn q_power(&self, m: Multiplicity) -> RatFn {
        RatFn::one(self).mul_q_power(m.a1, m.a2, self)
    }

    /// Exact division by `Q1`, line by line through its linear factors.
    pub fn div_by_q1(&self, p: &BiPoly) -> Option<BiPoly> {
        self.div_by_orbit(p, &self.orbit1, &self.q1)
    }

    /// Exact division by `Q2`.
    pub fn div_by_q2(&self, p: &BiPoly) -> Option<BiPoly> {
        self.div_by_orbit(p, &self.orbit2, &self.q2)
    }

    fn div_by_orbit(&self, p: &BiPoly, orbit: &[usize], qi: &BiPoly) -> Option<BiPoly> {
        let mut cur = p.clone();
        for &j in orbit {
            cur = cur.div_linear(&self.lines[j])?;
        }
        // fix the constant: p = (prod alpha_j) * cur = (Q_i / c) * cur
        let prod = orbit
            .iter()
            .fold(BiPoly::one(self.two_h), |acc, &j| {
                acc.mul(&self.lines[j].to_poly())
            });
        let c = qi
            .leading_coeff()
            .unwrap()
            .div(&prod.leading_coeff().unwrap())
            .expect("orbit product is nonzero");
        let cinv = c.inverse().expect("nonzero constant");
        Some(cur.scale(&cinv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn fs(two_h: u32, n: i64) -> FieldScalar {
        FieldScalar::from_i64(two_h, n)
    }

    #[test]
    fn rejects_bad_h() {
        assert_eq!(Arrangement::build(5).unwrap_err(), BuildError::OddH);
        assert_eq!(Arrangement::build(2).unwrap_err(), BuildError::TooSmall);
        assert!(matches!(
            Arrangement::build_with_cap(32, 30).unwrap_err(),
            BuildError::ExceedsCap { .. }
        ));
    }

    #[test]
    fn h4_defining_polynomials() {
        let arr = Arrangement::build(4).unwrap();
        let two_h = arr.two_h();
        let x1 = BiPoly::var(two_h, Var::X1);
        let x2 = BiPoly::var(two_h, Var::X2);
        // Q1 = Im((x1 + i x2)^2) = 2 x1 x2, proportional to x1 x2
        assert_eq!(arr.q1(), &x1.mul(&x2).scale(&fs(two_h, 2)));
        assert_eq!(arr.q2(), &x1.pow(2).sub(&x2.pow(2)));
    }

    #[test]
    fn h6_defining_polynomials() {
        let arr = Arrangement::build(6).unwrap();
        let two_h = arr.two_h();
        let x1 = BiPoly::var(two_h, Var::X1);
        let x2 = BiPoly::var(two_h, Var::X2);
        // (x1 + i x2)^3: Q1 = 3 x1^2 x2 - x2^3, Q2 = x1^3 - 3 x1 x2^2
        let q1 = x1.pow(2).mul(&x2).scale(&fs(two_h, 3)).sub(&x2.pow(3));
        let q2 = x1.pow(3).sub(&x1.mul(&x2.pow(2)).scale(&fs(two_h, 3)));
        assert_eq!(arr.q1(), &q1);
        assert_eq!(arr.q2(), &q2);
    }

    #[test]
    fn degrees_for_several_h() {
        for h in [4u32, 6, 8, 10, 12] {
            let arr = Arrangement::build(h).unwrap();
            assert_eq!(arr.q().total_degree(), Some(h));
            assert_eq!(arr.p2().total_degree(), Some(h));
            assert_eq!(arr.p1().total_degree(), Some(2));
        }
    }

    #[test]
    fn q_power_examples() {
        let arr = Arrangement::build(4).unwrap();
        let one = arr.q_power(Multiplicity::new(0, 0));
        assert!(one.is_polynomial());
        assert_eq!(one.num(), &BiPoly::one(arr.two_h()));

        let q = arr.q_power(Multiplicity::new(1, 1));
        assert_eq!(q.num(), arr.q());

        let mixed = arr.q_power(Multiplicity::new(2, -1));
        assert_eq!(mixed.num(), &arr.q1().mul(arr.q1()));
        assert_eq!((mixed.den_q1(), mixed.den_q2()), (0, 1));
    }

    #[test]
    fn jacobian_of_p1_q2_is_proportional_to_q1() {
        for h in [4u32, 6, 8] {
            let arr = Arrangement::build(h).unwrap();
            let j11 = arr.p1().partial_derive(Var::X1);
            let j12 = arr.q2().partial_derive(Var::X1);
            let j21 = arr.p1().partial_derive(Var::X2);
            let j22 = arr.q2().partial_derive(Var::X2);
            let det = j11.mul(&j22).sub(&j21.mul(&j12));
            let want = arr
                .q1()
                .scale(&FieldScalar::from_rational(arr.two_h(), ratio(-(h as i64), 2)));
            assert_eq!(det, want);
        }
    }

    #[test]
    fn q_is_anti_invariant() {
        for h in [4u32, 6] {
            let arr = Arrangement::build(h).unwrap();
            for w in arr.group_elements() {
                let image = arr.q().substitute_linear(&w);
                let det = w.det();
                assert_eq!(image, arr.q().scale(&det));
            }
        }
    }

    #[test]
    fn q_signs_on_generators() {
        let arr = Arrangement::build(4).unwrap();
        // rotation by 2 pi / h: z^{h/2} -> -z^{h/2}, both parts flip
        assert_eq!(arr.q_signs(arr.gen_rot()), (-1, -1));
        // reflection x2 -> -x2: conjugation, Q1 flips and Q2 stays
        assert_eq!(arr.q_signs(arr.gen_refl()), (-1, 1));
    }

    #[test]
    fn division_by_orbit_polynomials() {
        let arr = Arrangement::build(6).unwrap();
        let x1 = BiPoly::var(arr.two_h(), Var::X1);
        let p = arr.q1().mul(&x1).add(&arr.q1().mul(arr.q1()));
        let q = arr.div_by_q1(&p).unwrap();
        assert_eq!(q, x1.add(arr.q1()));
        assert!(arr.div_by_q1(&x1).is_none());
        let _ = rat(0);
    }
}
