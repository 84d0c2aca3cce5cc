//! Exact construction and certification of bases for the logarithmic
//! derivation modules `D(A, (a1, a2))` of the two-dimensional dihedral
//! reflection arrangements `I2(h)` (`h` even, `h >= 4`) with multiplicities
//! constant on each of the two line orbits.
//!
//! Everything is computed symbolically over the cyclotomic field
//! `K_h = Q(zeta_{2h})`; every emitted basis is verified by the generalized
//! Saito determinant criterion before it is returned.

pub mod arrangement;
pub mod basis;
pub mod bipoly;
pub mod deriv;
pub mod exactnum;
pub mod jsonio;
pub mod selftest;
pub mod universal;

pub use arrangement::{Arrangement, Multiplicity};
pub use basis::{classify, construct, table4_exponents, BasisBuilder, BasisCertificate};
pub use bipoly::{BiPoly, LinearForm, RatFn};
pub use deriv::{saito_check, Derivation, OneForm};
pub use exactnum::{FieldScalar, Rational};
pub use universal::{UniversalBuilder, UniversalSpec, Variant};
