//! Exact coefficient arithmetic: arbitrary-precision rationals, the
//! cyclotomic fields `K_h = Q(zeta_{2h})` that hold the constants
//! `cos(j*pi/h)` and `sin(j*pi/h)`, and a dense exact linear solver.

mod field;
mod linalg;
mod matrix;
mod unipoly;

pub use field::{trig_constant, FieldError, FieldScalar, TrigKind};
pub use linalg::{solve_linear, LinSolution, LinSystem};
pub use matrix::Mat2;
pub use unipoly::{cyclotomic_poly, UniPoly};

use num_bigint::BigInt;

/// Exact rational number, always gcd-reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| FieldError::BadRational(s.to_string()))
}

/// Canonical string form `p/q` (denominator always printed).
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Euler's totient by trial division.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}
