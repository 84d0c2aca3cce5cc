//! Derivations `c1 d1 + c2 d2` with rational-function coefficients:
//! Euler and primitive derivations, the isomorphism from 1-forms, the
//! Levi-Civita connection (coefficient-wise in the fixed orthonormal
//! coordinates), the group action, membership in `D(A, (a1, a2))`, and
//! the generalized Saito determinant check.

use std::fmt;

use thiserror::Error;

use crate::arrangement::{Arrangement, Multiplicity};
use crate::bipoly::{BiPoly, RatFn, Var};
use crate::exactnum::{ratio, FieldScalar, Mat2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivError {
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
}

/// `c1 * d/dx1 + c2 * d/dx2`.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    c1: RatFn,
    c2: RatFn,
}

/// `c1 * dx1 + c2 * dx2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneForm {
    pub c1: RatFn,
    pub c2: RatFn,
}

/// The three primitive derivations: `D` for the whole group, `D1`, `D2`
/// for the orbit subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Primitive {
    D,
    D1,
    D2,
}

impl OneForm {
    pub fn new(c1: RatFn, c2: RatFn) -> Self {
        OneForm { c1, c2 }
    }

    /// Exterior derivative of a polynomial.
    pub fn d(p: &BiPoly) -> Self {
        OneForm {
            c1: RatFn::from_poly(p.partial_derive(Var::X1)),
            c2: RatFn::from_poly(p.partial_derive(Var::X2)),
        }
    }

    /// `df / f` for `f = Q1^e1 Q2^e2`-type arguments is built at the call
    /// site; this helper gives `omega_0 = -x2 dx1 + x1 dx2`.
    pub fn omega0(arr: &Arrangement) -> Self {
        let two_h = arr.two_h();
        OneForm {
            c1: RatFn::from_poly(BiPoly::var(two_h, Var::X2).neg()),
            c2: RatFn::from_poly(BiPoly::var(two_h, Var::X1)),
        }
    }
}

/// `I*` in orthonormal coordinates: the Gram matrix is the identity, so a
/// 1-form and its dual derivation share coefficients.
pub fn istar(omega: &OneForm) -> Derivation {
    Derivation::new(omega.c1.clone(), omega.c2.clone())
}

impl Derivation {
    pub fn new(c1: RatFn, c2: RatFn) -> Self {
        assert_eq!(c1.two_h(), c2.two_h());
        Derivation { c1, c2 }
    }

    pub fn zero(arr: &Arrangement) -> Self {
        Derivation {
            c1: RatFn::zero(arr),
            c2: RatFn::zero(arr),
        }
    }

    pub fn from_polys(c1: BiPoly, c2: BiPoly) -> Self {
        Derivation::new(RatFn::from_poly(c1), RatFn::from_poly(c2))
    }

    /// `d/dx1` or `d/dx2`.
    pub fn partial(arr: &Arrangement, v: Var) -> Self {
        let one = BiPoly::one(arr.two_h());
        let zero = BiPoly::zero(arr.two_h());
        match v {
            Var::X1 => Derivation::from_polys(one, zero),
            Var::X2 => Derivation::from_polys(zero, one),
        }
    }

    pub fn c1(&self) -> &RatFn {
        &self.c1
    }

    pub fn c2(&self) -> &RatFn {
        &self.c2
    }

    pub fn two_h(&self) -> u32 {
        self.c1.two_h()
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn add(&self, rhs: &Derivation, arr: &Arrangement) -> Derivation {
        Derivation::new(self.c1.add(&rhs.c1, arr), self.c2.add(&rhs.c2, arr))
    }

    pub fn sub(&self, rhs: &Derivation, arr: &Arrangement) -> Derivation {
        Derivation::new(self.c1.sub(&rhs.c1, arr), self.c2.sub(&rhs.c2, arr))
    }

    pub fn neg(&self) -> Derivation {
        Derivation::new(self.c1.neg(), self.c2.neg())
    }

    pub fn scale(&self, c: &FieldScalar) -> Derivation {
        Derivation::new(self.c1.scale(c), self.c2.scale(c))
    }

    /// `f * theta` for a rational function `f`.
    pub fn scale_ratfn(&self, f: &RatFn, arr: &Arrangement) -> Derivation {
        Derivation::new(self.c1.mul(f, arr), self.c2.mul(f, arr))
    }

    pub fn scale_poly(&self, p: &BiPoly, arr: &Arrangement) -> Derivation {
        Derivation::new(self.c1.mul_poly(p, arr), self.c2.mul_poly(p, arr))
    }

    /// `theta(f) = c1 df/dx1 + c2 df/dx2`.
    pub fn apply(&self, f: &RatFn, arr: &Arrangement) -> RatFn {
        let d1 = f.derive(Var::X1, arr);
        let d2 = f.derive(Var::X2, arr);
        self.c1.mul(&d1, arr).add(&self.c2.mul(&d2, arr), arr)
    }

    pub fn apply_poly(&self, f: &BiPoly, arr: &Arrangement) -> RatFn {
        self.apply(&RatFn::from_poly(f.clone()), arr)
    }

    /// Polynomial degree of a homogeneous derivation; `None` when zero or
    /// inhomogeneous.
    pub fn pdeg(&self, arr: &Arrangement) -> Option<i64> {
        match (self.c1.is_zero(), self.c2.is_zero()) {
            (true, true) => None,
            (true, false) => self.c2.pdeg(arr),
            (false, true) => self.c1.pdeg(arr),
            (false, false) => {
                let d1 = self.c1.pdeg(arr)?;
                let d2 = self.c2.pdeg(arr)?;
                if d1 == d2 {
                    Some(d1)
                } else {
                    None
                }
            }
        }
    }

    /// The scalar `k` with `self = k * other`, if any.
    pub fn proportional_to(&self, other: &Derivation) -> Option<FieldScalar> {
        let two_h = self.two_h();
        let k = if !other.c1.is_zero() {
            if self.c1.is_zero() {
                FieldScalar::zero(two_h)
            } else {
                self.c1.proportionality(&other.c1)?
            }
        } else if !other.c2.is_zero() {
            if self.c2.is_zero() {
                FieldScalar::zero(two_h)
            } else {
                self.c2.proportionality(&other.c2)?
            }
        } else {
            return if self.is_zero() {
                Some(FieldScalar::zero(two_h))
            } else {
                None
            };
        };
        if self.c1 == other.c1.scale(&k) && self.c2 == other.c2.scale(&k) {
            Some(k)
        } else {
            None
        }
    }

    /// Divides by the coefficient of the lex-greatest monomial (taken
    /// across both coordinates, `d1` first on ties); returns the rescaled
    /// derivation and the factor that was divided out.
    pub fn normalize_leading(&self) -> (Derivation, FieldScalar) {
        let l1 = self.c1.num().leading();
        let l2 = self.c2.num().leading();
        let lead = match (l1, l2) {
            (None, None) => return (self.clone(), FieldScalar::one(self.two_h())),
            (Some((_, c)), None) => c,
            (None, Some((_, c))) => c,
            (Some((k1, c1)), Some((k2, c2))) => {
                if k1 >= k2 {
                    c1
                } else {
                    c2
                }
            }
        };
        let inv = lead.inverse().expect("leading coefficient is nonzero");
        (self.scale(&inv), lead)
    }

    /// Group action `(w . theta)(f) = w(theta(w^-1 f))`; `w` must be
    /// orthogonal.
    pub fn w_action(&self, w: &Mat2, arr: &Arrangement) -> Result<Derivation, DerivError> {
        if !w.is_orthogonal() {
            return Err(DerivError::NotOrthogonal);
        }
        let winv = w.transpose();
        let s1 = self.c1.substitute_group(&winv, arr);
        let s2 = self.c2.substitute_group(&winv, arr);
        let c1 = s1.scale(&w.m[0][0]).add(&s2.scale(&w.m[0][1]), arr);
        let c2 = s1.scale(&w.m[1][0]).add(&s2.scale(&w.m[1][1]), arr);
        Ok(Derivation::new(c1, c2))
    }

    /// True when both group generators fix the derivation.
    pub fn is_w_invariant(&self, arr: &Arrangement) -> bool {
        let r = self.w_action(arr.gen_rot(), arr).expect("generator is orthogonal");
        if r != *self {
            return false;
        }
        let s = self.w_action(arr.gen_refl(), arr).expect("generator is orthogonal");
        s == *self
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c1.is_zero(), self.c2.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "[{}] d1", self.c1),
            (true, false) => write!(f, "[{}] d2", self.c2),
            (false, false) => write!(f, "[{}] d1 + [{}] d2", self.c1, self.c2),
        }
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({})", self)
    }
}

/// The Euler derivation `x1 d1 + x2 d2`.
pub fn euler(arr: &Arrangement) -> Derivation {
    let two_h = arr.two_h();
    Derivation::from_polys(BiPoly::var(two_h, Var::X1), BiPoly::var(two_h, Var::X2))
}

/// Primitive derivations, normalized so that `D(P2) = 1`:
/// `D = V/(hQ)`, `D1 = V/(hQ1) = Q2 D`, `D2 = V/(hQ2) = Q1 D`
/// with `V = -x2 d1 + x1 d2`.
pub fn primitive(arr: &Arrangement, which: Primitive) -> Derivation {
    let two_h = arr.two_h();
    let inv_h = FieldScalar::from_rational(two_h, ratio(1, arr.h() as i64));
    let c1 = BiPoly::var(two_h, Var::X2).neg().scale(&inv_h);
    let c2 = BiPoly::var(two_h, Var::X1).scale(&inv_h);
    let (e1, e2) = match which {
        Primitive::D => (1, 1),
        Primitive::D1 => (1, 0),
        Primitive::D2 => (0, 1),
    };
    Derivation::new(RatFn::new(c1, e1, e2, arr), RatFn::new(c2, e1, e2, arr))
}

/// The Levi-Civita connection in flat orthonormal coordinates:
/// `(nabla_theta delta)(x_i) = theta(delta(x_i))`, i.e. `theta` applied to
/// each coefficient of `delta`.
pub fn connection(theta: &Derivation, delta: &Derivation, arr: &Arrangement) -> Derivation {
    Derivation::new(
        theta.apply(delta.c1(), arr),
        theta.apply(delta.c2(), arr),
    )
}

/// Outcome of the membership test for `theta` in `D(A, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipOutcome {
    Pass,
    /// First offending line in index order, with the required and actual
    /// valuations of `theta(alpha)` along it.
    Fail {
        line: usize,
        required: i64,
        actual: i64,
    },
}

impl MembershipOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, MembershipOutcome::Pass)
    }
}

/// Checks `theta(alpha_H) in alpha_H^{m(H)} S_(alpha_H)` for every line.
/// Poles off the arrangement are impossible by construction (`RatFn`
/// denominators are monomials in `Q1`, `Q2`).
pub fn membership(theta: &Derivation, m: Multiplicity, arr: &Arrangement) -> MembershipOutcome {
    for j in 0..arr.lines().len() {
        let alpha = arr.line(j);
        let value = theta
            .c1()
            .scale(&alpha.a)
            .add(&theta.c2().scale(&alpha.b), arr);
        let required = m.on_orbit(arr.orbit_of(j));
        match value.valuation_along_line(j, arr) {
            None => {} // theta(alpha) = 0: infinite valuation
            Some(actual) => {
                if actual < required {
                    return MembershipOutcome::Fail {
                        line: j,
                        required,
                        actual,
                    };
                }
            }
        }
    }
    MembershipOutcome::Pass
}

/// A successful Saito check: the determinant equals
/// `scalar * Q1^a1 * Q2^a2` with `scalar != 0`, and both derivations are
/// members; `exponents` are the polynomial degrees in input order.
#[derive(Clone, Debug)]
pub struct SaitoOk {
    pub scalar: FieldScalar,
    pub exponents: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaitoFail {
    Membership {
        which: u8,
        line: usize,
        required: i64,
        actual: i64,
    },
    NotHomogeneous {
        which: u8,
    },
    DeterminantZero,
    DeterminantNotProportional,
}

impl fmt::Display for SaitoFail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SaitoFail::Membership {
                which,
                line,
                required,
                actual,
            } => write!(
                f,
                "theta{} fails membership at line {}: valuation {} < required {}",
                which, line, actual, required
            ),
            SaitoFail::NotHomogeneous { which } => {
                write!(f, "theta{} is not homogeneous", which)
            }
            SaitoFail::DeterminantZero => write!(f, "coefficient determinant vanishes"),
            SaitoFail::DeterminantNotProportional => {
                write!(f, "determinant is not a scalar multiple of Q1^a1 Q2^a2")
            }
        }
    }
}

/// Generalized Saito criterion: `theta1, theta2` form a basis of
/// `D(A, m)` iff both are members and `det [theta_i(x_j)]` equals a
/// nonzero constant times `Q1^a1 Q2^a2`.
pub fn saito_check(
    arr: &Arrangement,
    theta1: &Derivation,
    theta2: &Derivation,
    m: Multiplicity,
) -> Result<SaitoOk, SaitoFail> {
    for (which, theta) in [(1u8, theta1), (2u8, theta2)] {
        if let MembershipOutcome::Fail {
            line,
            required,
            actual,
        } = membership(theta, m, arr)
        {
            return Err(SaitoFail::Membership {
                which,
                line,
                required,
                actual,
            });
        }
    }
    let p1 = theta1.pdeg(arr).ok_or(SaitoFail::NotHomogeneous { which: 1 })?;
    let p2 = theta2.pdeg(arr).ok_or(SaitoFail::NotHomogeneous { which: 2 })?;
    let det = theta1
        .c1()
        .mul(theta2.c2(), arr)
        .sub(&theta1.c2().mul(theta2.c1(), arr), arr);
    if det.is_zero() {
        return Err(SaitoFail::DeterminantZero);
    }
    let expected = arr.q_power(m);
    let scalar = det
        .proportionality(&expected)
        .ok_or(SaitoFail::DeterminantNotProportional)?;
    debug_assert!(!scalar.is_zero());
    Ok(SaitoOk {
        scalar,
        exponents: (p1, p2),
    })
}
