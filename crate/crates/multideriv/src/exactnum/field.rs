//! The cyclotomic field `K_h = Q(zeta)` with `zeta` a fixed primitive
//! `2h`-th root of unity, represented on the power basis
//! `1, zeta, ..., zeta^{phi(2h)-1}` modulo `Phi_{2h}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::unipoly::{cyclotomic_poly, extended_gcd, UniPoly};
use super::{euler_phi, rat, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field tag mismatch: 2h = {0} versus 2h = {1}")]
    TagMismatch(u32, u32),
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("not a rational literal: {0:?}")]
    BadRational(String),
    #[error("coefficient vector has length {got}, field 2h = {two_h} needs {want}")]
    BadLength { two_h: u32, got: usize, want: usize },
}

/// Reduction data shared by every element of one field.
struct FieldCtx {
    phi: usize,
    /// Power-basis coordinates of `zeta^m` for `m` in `0 .. 2*phi - 1`.
    zeta_pow: Vec<Vec<Rational>>,
}

impl FieldCtx {
    fn new(two_h: u32) -> Self {
        let phi = euler_phi(two_h) as usize;
        let min_poly = cyclotomic_poly(two_h);
        debug_assert_eq!(min_poly.degree(), Some(phi));
        let mut zeta_pow: Vec<Vec<Rational>> = Vec::with_capacity(2 * phi - 1);
        for m in 0..phi {
            let mut v = vec![Rational::zero(); phi];
            v[m] = Rational::one();
            zeta_pow.push(v);
        }
        // zeta^phi = -(c_0 + c_1 zeta + ... + c_{phi-1} zeta^{phi-1})
        for m in phi..(2 * phi - 1) {
            let prev = &zeta_pow[m - 1];
            let mut v = vec![Rational::zero(); phi];
            let top = prev[phi - 1].clone();
            for k in 1..phi {
                v[k] = prev[k - 1].clone();
            }
            if !top.is_zero() {
                for k in 0..phi {
                    v[k] -= &top * min_poly.coeff(k);
                }
            }
            zeta_pow.push(v);
        }
        FieldCtx { phi, zeta_pow }
    }
}

fn ctx(two_h: u32) -> Arc<FieldCtx> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldCtx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(c) = cache.read().unwrap().get(&two_h) {
        return Arc::clone(c);
    }
    let fresh = Arc::new(FieldCtx::new(two_h));
    let mut w = cache.write().unwrap();
    Arc::clone(w.entry(two_h).or_insert(fresh))
}

/// An element of `K_h = Q[t]/(Phi_{2h}(t))`.
///
/// Two elements combine only when their `two_h` tags agree; arithmetic
/// on mismatched tags panics (the JSON layer rejects them up front).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldScalar {
    two_h: u32,
    coeffs: Vec<Rational>,
}

impl FieldScalar {
    pub fn zero(two_h: u32) -> Self {
        let phi = euler_phi(two_h) as usize;
        FieldScalar {
            two_h,
            coeffs: vec![Rational::zero(); phi],
        }
    }

    pub fn one(two_h: u32) -> Self {
        Self::from_rational(two_h, Rational::one())
    }

    pub fn from_rational(two_h: u32, r: Rational) -> Self {
        let mut s = Self::zero(two_h);
        s.coeffs[0] = r;
        s
    }

    pub fn from_i64(two_h: u32, n: i64) -> Self {
        Self::from_rational(two_h, rat(n))
    }

    /// Builds an element from raw power-basis coordinates.
    pub fn from_coeffs(two_h: u32, coeffs: Vec<Rational>) -> Result<Self, FieldError> {
        let want = euler_phi(two_h) as usize;
        if coeffs.len() != want {
            return Err(FieldError::BadLength {
                two_h,
                got: coeffs.len(),
                want,
            });
        }
        Ok(FieldScalar { two_h, coeffs })
    }

    /// The generator `zeta` itself.
    pub fn zeta(two_h: u32) -> Self {
        Self::zeta_power(two_h, 1)
    }

    /// `zeta^j` for any integer exponent.
    pub fn zeta_power(two_h: u32, j: i64) -> Self {
        let c = ctx(two_h);
        let m = j.rem_euclid(two_h as i64) as usize;
        if m < c.phi {
            let mut s = Self::zero(two_h);
            s.coeffs[m] = Rational::one();
            return s;
        }
        // fold zeta^m down by repeated multiplication with the table
        let mut s = Self::one(two_h);
        let z = Self::zeta(two_h);
        for _ in 0..m {
            s = s.mul(&z);
        }
        s
    }

    /// `i = zeta^{h/2}` (requires `4 | 2h`, i.e. even `h`).
    pub fn i_unit(two_h: u32) -> Self {
        assert!(two_h % 4 == 0, "imaginary unit needs 4 | 2h");
        Self::zeta_power(two_h, (two_h / 4) as i64)
    }

    pub fn two_h(&self) -> u32 {
        self.two_h
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational part if the element lies in `Q`, else `None`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_tag(&self, rhs: &FieldScalar) {
        assert_eq!(
            self.two_h, rhs.two_h,
            "field tag mismatch: {} vs {}",
            self.two_h, rhs.two_h
        );
    }

    pub fn add(&self, rhs: &FieldScalar) -> FieldScalar {
        self.check_tag(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        FieldScalar {
            two_h: self.two_h,
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &FieldScalar) -> FieldScalar {
        self.check_tag(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        FieldScalar {
            two_h: self.two_h,
            coeffs,
        }
    }

    pub fn neg(&self) -> FieldScalar {
        FieldScalar {
            two_h: self.two_h,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, rhs: &FieldScalar) -> FieldScalar {
        self.check_tag(rhs);
        let c = ctx(self.two_h);
        let phi = c.phi;
        let mut conv = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut coeffs = vec![Rational::zero(); phi];
        for (m, cm) in conv.into_iter().enumerate() {
            if cm.is_zero() {
                continue;
            }
            for (k, red) in c.zeta_pow[m].iter().enumerate() {
                if !red.is_zero() {
                    coeffs[k] += &cm * red;
                }
            }
        }
        FieldScalar {
            two_h: self.two_h,
            coeffs,
        }
    }

    pub fn scale(&self, r: &Rational) -> FieldScalar {
        FieldScalar {
            two_h: self.two_h,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    pub fn inverse(&self) -> Result<FieldScalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let a = UniPoly::new(self.coeffs.clone());
        let m = cyclotomic_poly(self.two_h);
        let (g, u, _) = extended_gcd(&a, &m);
        debug_assert!(g.degree() == Some(0), "Phi_{{2h}} must be coprime to a");
        let (_, r) = u.div_rem(&m);
        let mut coeffs = vec![Rational::zero(); self.coeffs.len()];
        for (k, c) in r.coeffs().iter().enumerate() {
            coeffs[k] = c.clone();
        }
        let inv = FieldScalar {
            two_h: self.two_h,
            coeffs,
        };
        debug_assert!(inv.mul(self).is_one());
        Ok(inv)
    }

    pub fn div(&self, rhs: &FieldScalar) -> Result<FieldScalar, FieldError> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// Complex conjugation `zeta -> zeta^{-1}`; an element is real iff it
    /// is fixed by this map.
    pub fn conjugate(&self) -> FieldScalar {
        let two_h = self.two_h;
        let mut acc = FieldScalar::zero(two_h);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&FieldScalar::zeta_power(two_h, -(k as i64)).scale(c));
        }
        acc
    }

    /// Numeric embedding `zeta -> exp(i*pi/h)` in double precision.
    /// Display and sanity checks only; never involved in any decision.
    pub fn embed(&self) -> (f64, f64) {
        let h = self.two_h as f64 / 2.0;
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(1.0);
            let ang = std::f64::consts::PI * (k as f64) / h;
            re += x * ang.cos();
            im += x * ang.sin();
        }
        (re, im)
    }

    /// Support size: number of nonzero power-basis coordinates.
    pub fn support(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldScalar({})", self)
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if k == 0 {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "z{}", pow_suffix(k))?;
            } else {
                write!(f, "{}*z{}", a, pow_suffix(k))?;
            }
        }
        Ok(())
    }
}

fn pow_suffix(k: usize) -> String {
    if k == 1 {
        String::new()
    } else {
        format!("^{}", k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    Cos,
    Sin,
}

/// `cos(j*pi/h) = (zeta^j + zeta^-j)/2` or
/// `sin(j*pi/h) = (zeta^j - zeta^-j)/(2i)` as exact elements of `K_h`.
pub fn trig_constant(kind: TrigKind, j: i64, h: u32) -> FieldScalar {
    assert!(h >= 4 && h % 2 == 0, "need even h >= 4");
    let two_h = 2 * h;
    let zj = FieldScalar::zeta_power(two_h, j);
    let zmj = FieldScalar::zeta_power(two_h, -j);
    let half = ratio_half();
    match kind {
        TrigKind::Cos => zj.add(&zmj).scale(&half),
        TrigKind::Sin => {
            let two_i = FieldScalar::i_unit(two_h).scale(&rat(2));
            zj.sub(&zmj)
                .div(&two_i)
                .expect("2i is invertible")
        }
    }
}

fn ratio_half() -> Rational {
    Rational::new(1.into(), 2.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use proptest::prelude::*;

    #[test]
    fn zeta_times_zeta_inverse_is_one() {
        for two_h in [8u32, 12, 16, 24] {
            let z = FieldScalar::zeta(two_h);
            let zi = FieldScalar::zeta_power(two_h, two_h as i64 - 1);
            assert!(z.mul(&zi).is_one(), "2h={two_h}");
        }
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        for two_h in [8u32, 12, 16, 24] {
            let i = FieldScalar::i_unit(two_h);
            assert_eq!(i.mul(&i), FieldScalar::from_i64(two_h, -1));
        }
    }

    #[test]
    fn two_cos_quarter_pi_squared_is_two() {
        // 2h = 8: (zeta + zeta^-1)^2 = 2, i.e. (2 cos(pi/4))^2 = 2
        let z = FieldScalar::zeta(8);
        let s = z.add(&FieldScalar::zeta_power(8, -1));
        assert_eq!(s.mul(&s), FieldScalar::from_i64(8, 2));
    }

    #[test]
    fn inverse_examples() {
        let two = FieldScalar::from_i64(8, 2);
        assert_eq!(two.inverse().unwrap(), FieldScalar::from_rational(8, ratio(1, 2)));

        let z = FieldScalar::zeta(8);
        assert_eq!(z.inverse().unwrap(), FieldScalar::zeta_power(8, 7));

        // extended-Euclid oracle check: a * a^-1 == 1 and the closed form
        // (zeta + zeta^-1)^-1 = (zeta + zeta^-1)/2 in Q(zeta_8)
        let a = z.add(&FieldScalar::zeta_power(8, -1));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_one());
        assert_eq!(inv, a.scale(&ratio(1, 2)));

        assert_eq!(
            FieldScalar::zero(8).inverse(),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn minimal_polynomial_annihilates_generator() {
        for two_h in [8u32, 12, 16, 20, 24] {
            let phi = cyclotomic_poly(two_h);
            let z = FieldScalar::zeta(two_h);
            let mut acc = FieldScalar::zero(two_h);
            let mut zk = FieldScalar::one(two_h);
            for k in 0..=phi.degree().unwrap() {
                acc = acc.add(&zk.scale(&phi.coeff(k)));
                zk = zk.mul(&z);
            }
            assert!(acc.is_zero(), "Phi_{two_h}(zeta) = 0");
        }
    }

    #[test]
    fn trig_basics() {
        for h in [4u32, 6, 8, 12] {
            assert!(trig_constant(TrigKind::Cos, 0, h).is_one());
            assert!(trig_constant(TrigKind::Sin, h as i64, h).is_zero(), "sin pi = 0");
            assert!(trig_constant(TrigKind::Sin, (h / 2) as i64, h).is_one(), "sin pi/2 = 1");
            for j in 0..(2 * h as i64) {
                let c = trig_constant(TrigKind::Cos, j, h);
                let s = trig_constant(TrigKind::Sin, j, h);
                assert_eq!(c.conjugate(), c, "cos real");
                assert_eq!(s.conjugate(), s, "sin real");
                let one = c.mul(&c).add(&s.mul(&s));
                assert!(one.is_one(), "cos^2+sin^2, h={h} j={j}");
            }
        }
    }

    #[test]
    fn trig_numeric_embedding() {
        // cos(pi/6) = sqrt(3)/2 = 0.8660254...
        let c = trig_constant(TrigKind::Cos, 1, 6);
        let (re, im) = c.embed();
        assert!((re - 0.8660254037844386).abs() < 1e-12);
        assert!(im.abs() < 1e-12);
    }

    fn arb_scalar(two_h: u32) -> impl Strategy<Value = FieldScalar> {
        let phi = euler_phi(two_h) as usize;
        proptest::collection::vec((-6i64..=6, 1i64..=4), phi).prop_map(move |v| {
            FieldScalar::from_coeffs(two_h, v.into_iter().map(|(n, d)| ratio(n, d)).collect())
                .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn field_axioms_h4(a in arb_scalar(8), b in arb_scalar(8), c in arb_scalar(8)) {
            field_axioms(a, b, c);
        }

        #[test]
        fn field_axioms_h6(a in arb_scalar(12), b in arb_scalar(12), c in arb_scalar(12)) {
            field_axioms(a, b, c);
        }

        #[test]
        fn field_axioms_h8(a in arb_scalar(16), b in arb_scalar(16), c in arb_scalar(16)) {
            field_axioms(a, b, c);
        }

        #[test]
        fn field_axioms_h12(a in arb_scalar(24), b in arb_scalar(24), c in arb_scalar(24)) {
            field_axioms(a, b, c);
        }
    }

    fn field_axioms(a: FieldScalar, b: FieldScalar, c: FieldScalar) {
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)), "associativity");
        assert_eq!(
            a.add(&b).mul(&c),
            a.mul(&c).add(&b.mul(&c)),
            "distributivity"
        );
        if !a.is_zero() {
            assert!(a.mul(&a.inverse().unwrap()).is_one(), "a * a^-1 = 1");
        }
    }
}
