//! Universal derivations `E^(s,t)`: forward powers of the connection along
//! the primitive derivations, exact inversion of `nabla_D` by a
//! degree-bounded linear ansatz, and the per-instance universality check.

use std::collections::HashMap;

use thiserror::Error;

use crate::arrangement::{Arrangement, Multiplicity};
use crate::bipoly::{BiPoly, RatFn, Var};
use crate::deriv::{
    connection, euler, membership, primitive, saito_check, Derivation, Primitive, SaitoFail,
    SaitoOk,
};
use crate::exactnum::{ratio, solve_linear, FieldScalar, LinSystem};

/// Default number of extra pole orders tried beyond the predicted seed.
pub const DEFAULT_POLE_CAP: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniversalError {
    #[error("spec violates variant constraints: variant {variant:?} needs {need}")]
    BadSpec { variant: Variant, need: &'static str },
    #[error("t - s must be even, got (s, t) = ({s}, {t})")]
    OddParity { s: i64, t: i64 },
    #[error("input to invert_D must be homogeneous and nonzero")]
    NotHomogeneous,
    #[error("input to invert_D must be W-invariant")]
    NotInvariant,
    #[error("ansatz exhausted after {tried} pole bumps (internal consistency failure)")]
    AnsatzExhausted { tried: u32 },
    #[error("solution not unique after invariance constraints (internal error)")]
    NonUnique,
    #[error("inverted derivation fails predicted membership (internal error)")]
    PredictedMembership,
}

/// Which defining composition produces `E^(s,t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `E1^(s,t) = nabla_D^{-t} nabla_{D1}^{t-s} E`, needs `t >= 0`, `t >= s`.
    E1,
    /// `E2^(s,t) = nabla_D^{-s} nabla_{D2}^{s-t} E`, needs `s >= 0`, `s >= t`.
    E2,
}

/// A requested universal derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UniversalSpec {
    pub s: i64,
    pub t: i64,
    pub variant: Variant,
}

impl UniversalSpec {
    pub fn new(s: i64, t: i64, variant: Variant) -> Result<Self, UniversalError> {
        if (t - s) % 2 != 0 {
            return Err(UniversalError::OddParity { s, t });
        }
        match variant {
            Variant::E1 if t < 0 || t < s => Err(UniversalError::BadSpec {
                variant,
                need: "t >= 0 and t >= s",
            }),
            Variant::E2 if s < 0 || s < t => Err(UniversalError::BadSpec {
                variant,
                need: "s >= 0 and s >= t",
            }),
            _ => Ok(UniversalSpec { s, t, variant }),
        }
    }

    /// Picks the variant whose mono-primitive powers run forward; `None`
    /// when both `s, t < 0` (the duality path handles those).
    pub fn choose(s: i64, t: i64) -> Option<UniversalSpec> {
        if (t - s) % 2 != 0 {
            return None;
        }
        if t >= s.max(0) {
            Some(UniversalSpec {
                s,
                t,
                variant: Variant::E1,
            })
        } else if s >= t.max(0) {
            Some(UniversalSpec {
                s,
                t,
                variant: Variant::E2,
            })
        } else {
            None
        }
    }

    pub fn expected_pdeg(&self, h: u32) -> i64 {
        1 + (self.s + self.t) * (h as i64) / 2
    }

    /// A `(s,t)`-universal derivation lies in `D(A, (2s+1, 2t+1))`.
    pub fn target_multiplicity(&self) -> Multiplicity {
        Multiplicity::new(2 * self.s + 1, 2 * self.t + 1)
    }
}

/// `nabla_which^n theta` by `n` forward applications of the connection.
pub fn forward_power(
    arr: &Arrangement,
    which: Primitive,
    n: u32,
    theta: &Derivation,
) -> Derivation {
    let p = primitive(arr, which);
    let mut out = theta.clone();
    for _ in 0..n {
        out = connection(&p, &out, arr);
    }
    out
}

/// Record of one successful inversion, for round-trip audits.
#[derive(Clone, Copy, Debug)]
pub struct InvertRecord {
    pub input_pdeg: i64,
    pub output_pdeg: i64,
}

/// Builds universal derivations with memoization; one builder per
/// arrangement. Cloning keeps the warmed cache, so sweeps can hand
/// independent builders to worker threads.
#[derive(Clone)]
pub struct UniversalBuilder<'a> {
    arr: &'a Arrangement,
    pole_cap: u32,
    cache: HashMap<UniversalSpec, Derivation>,
    invert_log: Vec<InvertRecord>,
}

impl<'a> UniversalBuilder<'a> {
    pub fn new(arr: &'a Arrangement) -> Self {
        UniversalBuilder {
            arr,
            pole_cap: DEFAULT_POLE_CAP,
            cache: HashMap::new(),
            invert_log: Vec::new(),
        }
    }

    pub fn with_pole_cap(arr: &'a Arrangement, pole_cap: u32) -> Self {
        UniversalBuilder {
            arr,
            pole_cap,
            cache: HashMap::new(),
            invert_log: Vec::new(),
        }
    }

    pub fn arrangement(&self) -> &Arrangement {
        self.arr
    }

    pub fn invert_log(&self) -> &[InvertRecord] {
        &self.invert_log
    }

    /// Every spec built so far with its value (chain intermediates
    /// included).
    pub fn cache_snapshot(&self) -> Vec<(UniversalSpec, Derivation)> {
        let mut out: Vec<(UniversalSpec, Derivation)> = self
            .cache
            .iter()
            .map(|(s, d)| (*s, d.clone()))
            .collect();
        out.sort_by_key(|(s, _)| (s.s, s.t, s.variant as u8));
        out
    }

    /// The universal derivation `E^(s,t)` given by the spec's defining
    /// composition, with no rescaling.
    pub fn build(&mut self, spec: UniversalSpec) -> Result<Derivation, UniversalError> {
        if let Some(hit) = self.cache.get(&spec) {
            return Ok(hit.clone());
        }
        let value = self.build_uncached(spec)?;
        self.cache.insert(spec, value.clone());
        Ok(value)
    }

    fn build_uncached(&mut self, spec: UniversalSpec) -> Result<Derivation, UniversalError> {
        let arr = self.arr;
        let value = match spec.variant {
            Variant::E1 => {
                if spec.t == 0 {
                    forward_power(arr, Primitive::D1, (-spec.s) as u32, &euler(arr))
                } else {
                    // E1^(s,t) = nabla_D^{-1} E1^(s-1, t-1): the forward
                    // D1-power t - s is shared along the chain
                    let prev = self.build(UniversalSpec::new(
                        spec.s - 1,
                        spec.t - 1,
                        Variant::E1,
                    )?)?;
                    self.invert_d(&prev, spec.target_multiplicity())?
                }
            }
            Variant::E2 => {
                if spec.s == 0 {
                    forward_power(arr, Primitive::D2, (-spec.t) as u32, &euler(arr))
                } else {
                    let prev = self.build(UniversalSpec::new(
                        spec.s - 1,
                        spec.t - 1,
                        Variant::E2,
                    )?)?;
                    self.invert_d(&prev, spec.target_multiplicity())?
                }
            }
        };
        debug_assert_eq!(value.pdeg(arr), Some(spec.expected_pdeg(arr.h())));
        Ok(value)
    }

    /// The unique W-invariant homogeneous `eta` with `nabla_D eta = zeta`.
    ///
    /// `target` is the multiplicity the pipeline predicts for `eta`; it
    /// seeds the pole orders of the ansatz
    /// `eta(x_i) = p_i / (Q1^m1 Q2^m2)` with
    /// `m_i = max(0, -target.a_i)` and `deg p_i = pdeg zeta + h + (m1 + m2) h/2`.
    /// The coefficient equation `D(eta(x_i)) = zeta(x_i)` is solved first
    /// (it decouples per coordinate); its solution set is an affine family
    /// of dimension at most two, on which the W-invariance constraints are
    /// then imposed. The round trip is asserted exactly before returning.
    pub fn invert_d(
        &mut self,
        zeta: &Derivation,
        target: Multiplicity,
    ) -> Result<Derivation, UniversalError> {
        let arr = self.arr;
        let pdeg_zeta = zeta.pdeg(arr).ok_or(UniversalError::NotHomogeneous)?;
        if !zeta.is_w_invariant(arr) {
            return Err(UniversalError::NotInvariant);
        }
        let seed1 = (-target.a1).max(0) as u32;
        let seed2 = (-target.a2).max(0) as u32;
        for bump in 0..=self.pole_cap {
            let m1 = seed1 + bump;
            let m2 = seed2 + bump;
            match self.try_ansatz(zeta, pdeg_zeta, m1, m2)? {
                Some(eta) => {
                    let back = connection(&primitive(arr, Primitive::D), &eta, arr);
                    assert!(
                        back == *zeta,
                        "round trip nabla_D(invert_d(zeta)) = zeta must hold exactly"
                    );
                    let out_pdeg = eta.pdeg(arr).expect("solution is homogeneous");
                    assert_eq!(out_pdeg, pdeg_zeta + arr.h() as i64);
                    if !membership(&eta, target, arr).passed() {
                        return Err(UniversalError::PredictedMembership);
                    }
                    self.invert_log.push(InvertRecord {
                        input_pdeg: pdeg_zeta,
                        output_pdeg: out_pdeg,
                    });
                    return Ok(eta);
                }
                None => continue,
            }
        }
        Err(UniversalError::AnsatzExhausted {
            tried: self.pole_cap,
        })
    }

    /// One ansatz attempt at fixed pole orders. `Ok(None)` means the linear
    /// system is inconsistent at these orders (caller bumps and retries).
    fn try_ansatz(
        &self,
        zeta: &Derivation,
        pdeg_zeta: i64,
        m1: u32,
        m2: u32,
    ) -> Result<Option<Derivation>, UniversalError> {
        let arr = self.arr;
        let two_h = arr.two_h();
        let h = arr.h() as i64;
        let d = pdeg_zeta + h + (m1 as i64 + m2 as i64) * h / 2;
        if d < 0 {
            return Ok(None);
        }
        let d = d as u32;

        // coordinate systems: for p = sum c_k x1^(d-k) x2^k require
        //   Q1 Q2 V(p) - (h/2) (m1 Q2^2 - m2 Q1^2) p = h * zeta_i * Q1^(m1+2) Q2^(m2+2)
        // after clearing both sides to a common Q-monomial denominator.
        let correction = arr
            .q2()
            .mul(arr.q2())
            .scale(&FieldScalar::from_rational(two_h, ratio(m1 as i64 * h, 2)))
            .sub(
                &arr.q1()
                    .mul(arr.q1())
                    .scale(&FieldScalar::from_rational(two_h, ratio(m2 as i64 * h, 2))),
            );
        let q1q2 = arr.q1().mul(arr.q2());
        let columns: Vec<BiPoly> = (0..=d)
            .map(|k| {
                let mono = BiPoly::monomial(two_h, d - k, k, FieldScalar::one(two_h));
                q1q2.mul(&arr.rot_derive(&mono)).sub(&correction.mul(&mono))
            })
            .collect();

        let mut parts: Vec<(Vec<FieldScalar>, Vec<Vec<FieldScalar>>)> = Vec::with_capacity(2);
        for zi in [zeta.c1(), zeta.c2()] {
            let n1 = zi.den_q1();
            let n2 = zi.den_q2();
            let cap1 = n1.max(m1 + 2);
            let cap2 = n2.max(m2 + 2);
            let lhs_extra = arr
                .q1()
                .pow(cap1 - (m1 + 2))
                .mul(&arr.q2().pow(cap2 - (m2 + 2)));
            let rhs = zi
                .num()
                .mul(&arr.q1().pow(cap1 - n1))
                .mul(&arr.q2().pow(cap2 - n2))
                .scale(&FieldScalar::from_i64(two_h, h));
            let cols: Vec<BiPoly> = columns.iter().map(|c| c.mul(&lhs_extra)).collect();

            // enumerate every monomial present in any column or the rhs
            let mut monos: Vec<(u32, u32)> = Vec::new();
            for p in cols.iter().chain(std::iter::once(&rhs)) {
                for (&k, _) in p.terms() {
                    if !monos.contains(&k) {
                        monos.push(k);
                    }
                }
            }
            monos.sort_unstable();
            let matrix: Vec<Vec<FieldScalar>> = monos
                .iter()
                .map(|&(i, j)| cols.iter().map(|c| c.coeff(i, j)).collect())
                .collect();
            let rhs_vec: Vec<FieldScalar> = monos.iter().map(|&(i, j)| rhs.coeff(i, j)).collect();
            let sol = solve_linear(&LinSystem::new(matrix, rhs_vec), two_h);
            match sol.particular {
                None => return Ok(None),
                Some(p) => parts.push((p, sol.nullspace)),
            }
        }

        let assemble = |coeffs: &[FieldScalar]| -> BiPoly {
            let mut p = BiPoly::zero(two_h);
            for (k, c) in coeffs.iter().enumerate() {
                p.add_term(d - k as u32, k as u32, c.clone());
            }
            p
        };
        let (p1, null1) = &parts[0];
        let (p2, null2) = &parts[1];
        let base = Derivation::new(
            RatFn::new(assemble(p1), m1, m2, arr),
            RatFn::new(assemble(p2), m1, m2, arr),
        );
        // kernel of D on each coordinate is at most one-dimensional
        // (spanned by P1-powers), so at most two free parameters remain
        let mut gens: Vec<Derivation> = Vec::new();
        for v in null1 {
            gens.push(Derivation::new(
                RatFn::new(assemble(v), m1, m2, arr),
                RatFn::zero(arr),
            ));
        }
        for v in null2 {
            gens.push(Derivation::new(
                RatFn::zero(arr),
                RatFn::new(assemble(v), m1, m2, arr),
            ));
        }

        match self.pin_invariance(&base, &gens, m1, m2) {
            Some(eta) => Ok(Some(eta)),
            None => Err(UniversalError::NonUnique),
        }
    }

    /// Imposes `w . eta = eta` for both generators on the affine family
    /// `base + sum lambda_k gens[k]`; `None` when the small system is
    /// inconsistent or underdetermined.
    fn pin_invariance(
        &self,
        base: &Derivation,
        gens: &[Derivation],
        m1: u32,
        m2: u32,
    ) -> Option<Derivation> {
        let arr = self.arr;
        let two_h = arr.two_h();
        if gens.is_empty() {
            return if base.is_w_invariant(arr) {
                Some(base.clone())
            } else {
                None
            };
        }
        let mut rows: Vec<Vec<FieldScalar>> = Vec::new();
        // the generators are never W-invariant (rotation mixes the two
        // coordinates), so the row set below is nonempty whenever gens is
        let mut rhs: Vec<FieldScalar> = Vec::new();
        for w in [arr.gen_rot(), arr.gen_refl()] {
            let residual = |theta: &Derivation| -> Derivation {
                theta
                    .w_action(w, arr)
                    .expect("generators are orthogonal")
                    .sub(theta, arr)
            };
            let r0 = residual(base);
            let rg: Vec<Derivation> = gens.iter().map(residual).collect();
            // coordinates of each residual over the shared denominator
            let mut monos: Vec<(usize, u32, u32)> = Vec::new();
            let num_of = |theta: &Derivation, side: usize| -> BiPoly {
                let c = if side == 0 { theta.c1() } else { theta.c2() };
                c.num_at(m1, m2, arr)
                    .expect("denominators cannot exceed the ansatz orders")
            };
            for side in 0..2 {
                for p in std::iter::once(&r0).chain(rg.iter()) {
                    for (&(i, j), _) in num_of(p, side).terms() {
                        if !monos.contains(&(side, i, j)) {
                            monos.push((side, i, j));
                        }
                    }
                }
            }
            for &(side, i, j) in &monos {
                let row: Vec<FieldScalar> =
                    rg.iter().map(|g| num_of(g, side).coeff(i, j)).collect();
                rows.push(row);
                rhs.push(num_of(&r0, side).coeff(i, j).neg());
            }
        }
        if rows.is_empty() {
            return None;
        }
        let sol = solve_linear(&LinSystem::new(rows, rhs), two_h);
        let lambdas = sol.particular?;
        if !sol.nullspace.is_empty() {
            return None;
        }
        let mut eta = base.clone();
        for (lambda, g) in lambdas.iter().zip(gens) {
            eta = eta.add(&g.scale(lambda), arr);
        }
        debug_assert!(eta.is_w_invariant(arr));
        Some(eta)
    }
}

/// Operational universality test: `zeta` is `(s,t)`-universal iff
/// `nabla_{d1} zeta` and `nabla_{d2} zeta` certify as a basis of
/// `D(A, (2s, 2t))`.
pub fn universality_check(
    arr: &Arrangement,
    zeta: &Derivation,
    s: i64,
    t: i64,
) -> Result<SaitoOk, SaitoFail> {
    let g1 = connection(&Derivation::partial(arr, Var::X1), zeta, arr);
    let g2 = connection(&Derivation::partial(arr, Var::X2), zeta, arr);
    saito_check(arr, &g1, &g2, Multiplicity::new(2 * s, 2 * t))
}

/// The derivations `d/dP1`, `d/dP2` through the inverse Jacobian of the
/// basic invariants; `d/dP2` is exactly the primitive derivation `D`.
pub fn basic_invariant_partials(arr: &Arrangement) -> (Derivation, Derivation) {
    let j12 = arr.p2().partial_derive(Var::X1);
    let j22 = arr.p2().partial_derive(Var::X2);
    // det J = V(P2) = h * Q; dP1 = (dP2/dx2 * d1 - dP2/dx1 * d2) / (hQ)
    let h = arr.h();
    let inv_h = FieldScalar::from_rational(arr.two_h(), ratio(1, h as i64));
    let dp1 = Derivation::new(
        RatFn::new(j22.scale(&inv_h), 1, 1, arr),
        RatFn::new(j12.scale(&inv_h).neg(), 1, 1, arr),
    );
    (dp1, primitive(arr, Primitive::D))
}

/// Handy wrapper used by tests and the self-test suite.
pub fn w_orbit_fixes(arr: &Arrangement, theta: &Derivation) -> bool {
    theta.is_w_invariant(arr)
}

/// `x1^-k` (or `x2^-k`) as a rational function for `h = 4`, where
/// `Q1 = 2 x1 x2`: `x1^-k = 2^k x2^k / Q1^k`.
pub fn inverse_variable_power(arr: &Arrangement, v: Var, k: u32) -> RatFn {
    assert_eq!(arr.h(), 4, "closed form uses the h = 4 coordinates");
    let two_h = arr.two_h();
    let c = FieldScalar::from_i64(two_h, 1 << k);
    let num = match v {
        Var::X1 => BiPoly::monomial(two_h, 0, k, c),
        Var::X2 => BiPoly::monomial(two_h, k, 0, c),
    };
    RatFn::new(num, k, 0, arr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;

    fn arr(h: u32) -> Arrangement {
        Arrangement::build(h).unwrap()
    }

    #[test]
    fn forward_power_zero_is_identity() {
        let a = arr(6);
        let e = euler(&a);
        assert_eq!(forward_power(&a, Primitive::D1, 0, &e), e);
    }

    #[test]
    fn inverse_variable_power_is_reciprocal() {
        let a = arr(4);
        for k in 1..=4u32 {
            let r = inverse_variable_power(&a, Var::X1, k);
            let xk = BiPoly::var(a.two_h(), Var::X1).pow(k);
            assert_eq!(r.mul_poly(&xk, &a), RatFn::one(&a));
        }
    }

    #[test]
    fn b2_forward_closed_form_n1() {
        // h = 4: with D1 = V/(4 Q1) and Q1 = 2 x1 x2 each pair of
        // applications scales the textbook closed form by 1/64, so
        // nabla_{D1}^2 E = -(1/64)(x1^-3 d1 + x2^-3 d2).
        let a = arr(4);
        let got = forward_power(&a, Primitive::D1, 2, &euler(&a));
        let c = FieldScalar::from_rational(a.two_h(), ratio(-1, 64));
        let want = Derivation::new(
            inverse_variable_power(&a, Var::X1, 3).scale(&c),
            inverse_variable_power(&a, Var::X2, 3).scale(&c),
        );
        assert_eq!(got, want);
        assert_eq!(got.pdeg(&a), Some(-3));
    }

    #[test]
    fn b2_forward_closed_form_n2() {
        // n = 2: constant -(5!!)/64^2 = -15/4096 on the x^-7 diagonal
        let a = arr(4);
        let got = forward_power(&a, Primitive::D1, 4, &euler(&a));
        let c = FieldScalar::from_rational(a.two_h(), ratio(-15, 4096));
        let want = Derivation::new(
            inverse_variable_power(&a, Var::X1, 7).scale(&c),
            inverse_variable_power(&a, Var::X2, 7).scale(&c),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn invert_d_round_trips_on_euler() {
        for h in [4u32, 6] {
            let a = arr(h);
            let mut b = UniversalBuilder::new(&a);
            let e = euler(&a);
            let eta = b.invert_d(&e, Multiplicity::new(3, 3)).unwrap();
            assert_eq!(eta.pdeg(&a), Some(1 + h as i64));
            let back = connection(&primitive(&a, Primitive::D), &eta, &a);
            assert_eq!(back, e);
            assert!(eta.is_w_invariant(&a));
            // inverse composed with forward is the identity on the
            // invariant chain: invert_d(nabla_D eta) = eta
            let again = b
                .invert_d(&connection(&primitive(&a, Primitive::D), &eta, &a), Multiplicity::new(3, 3))
                .unwrap();
            assert_eq!(again, eta);
        }
    }

    #[test]
    fn invert_d_h4_certifies_at_2_2() {
        let a = arr(4);
        let mut b = UniversalBuilder::new(&a);
        let eta = b.invert_d(&euler(&a), Multiplicity::new(3, 3)).unwrap();
        assert_eq!(eta.pdeg(&a), Some(5));
        let ok = universality_check(&a, &eta, 1, 1).unwrap();
        assert_eq!(ok.exponents, (4, 4));
    }

    #[test]
    fn invert_d_rejects_bad_input() {
        let a = arr(4);
        let mut b = UniversalBuilder::new(&a);
        // not W-invariant
        let bad = Derivation::from_polys(
            BiPoly::var(a.two_h(), Var::X1),
            BiPoly::zero(a.two_h()),
        );
        assert_eq!(
            b.invert_d(&bad, Multiplicity::new(1, 1)).unwrap_err(),
            UniversalError::NotInvariant
        );
    }

    #[test]
    fn build_e_zero_spec_is_euler() {
        let a = arr(6);
        let mut b = UniversalBuilder::new(&a);
        let e1 = b
            .build(UniversalSpec::new(0, 0, Variant::E1).unwrap())
            .unwrap();
        let e2 = b
            .build(UniversalSpec::new(0, 0, Variant::E2).unwrap())
            .unwrap();
        assert_eq!(e1, euler(&a));
        assert_eq!(e2, euler(&a));
    }

    #[test]
    fn build_e_minus2_zero_matches_closed_form() {
        let a = arr(4);
        let mut b = UniversalBuilder::new(&a);
        let z = b
            .build(UniversalSpec::new(-2, 0, Variant::E1).unwrap())
            .unwrap();
        assert_eq!(z, forward_power(&a, Primitive::D1, 2, &euler(&a)));
        let ok = universality_check(&a, &z, -2, 0).unwrap();
        assert_eq!(ok.exponents.0 + ok.exponents.1, -8);
    }

    #[test]
    fn build_e_2_0_passes_universality() {
        let a = arr(4);
        let mut b = UniversalBuilder::new(&a);
        let spec = UniversalSpec::choose(2, 0).unwrap();
        assert_eq!(spec.variant, Variant::E2);
        let z = b.build(spec).unwrap();
        assert_eq!(z.pdeg(&a), Some(5));
        universality_check(&a, &z, 2, 0).unwrap();
        assert!(z.is_w_invariant(&a));
    }

    #[test]
    fn universality_check_rejects_non_universal() {
        let a = arr(4);
        let theta = Derivation::from_polys(
            BiPoly::var(a.two_h(), Var::X1).pow(2),
            BiPoly::zero(a.two_h()),
        );
        assert!(universality_check(&a, &theta, 1, 0).is_err());
    }

    #[test]
    fn spec_constraints() {
        assert!(UniversalSpec::new(1, 0, Variant::E1).is_err());
        assert!(UniversalSpec::new(0, 2, Variant::E1).is_ok());
        assert!(UniversalSpec::new(2, 0, Variant::E1).is_err());
        assert!(UniversalSpec::new(2, 0, Variant::E2).is_ok());
        assert!(UniversalSpec::new(0, -2, Variant::E2).is_ok());
        assert_eq!(UniversalSpec::choose(-1, -1), None);
        assert_eq!(
            UniversalSpec::choose(-2, 0).map(|s| s.variant),
            Some(Variant::E1)
        );
    }

    #[test]
    fn basic_invariant_partials_give_primitive() {
        let a = arr(6);
        let (dp1, dp2) = basic_invariant_partials(&a);
        assert_eq!(dp2, primitive(&a, Primitive::D));
        // dP_i(P_j) = kronecker delta
        assert_eq!(dp1.apply_poly(a.p1(), &a), RatFn::one(&a));
        assert!(dp1.apply_poly(a.p2(), &a).is_zero());
        assert!(dp2.apply_poly(a.p1(), &a).is_zero());
        assert_eq!(dp2.apply_poly(a.p2(), &a), RatFn::one(&a));
    }

    #[test]
    fn psi_over_basic_partials_certifies_shifted_basis() {
        // for universal zeta, nabla_{dP1} zeta and nabla_{dP2} zeta form a
        // basis of D(A, 2k - 1)
        let a = arr(4);
        let mut b = UniversalBuilder::new(&a);
        let spec = UniversalSpec::choose(1, 1).unwrap();
        let z = b.build(spec).unwrap();
        let (dp1, dp2) = basic_invariant_partials(&a);
        let g1 = connection(&dp1, &z, &a);
        let g2 = connection(&dp2, &z, &a);
        saito_check(&a, &g1, &g2, Multiplicity::new(1, 1)).unwrap();
    }

    #[test]
    fn inversion_preserves_universality_along_chain() {
        // (0,0) -> (1,1) -> (2,2) for h = 4
        let a = arr(4);
        let mut b = UniversalBuilder::new(&a);
        let mut z = euler(&a);
        for k in 1..=2i64 {
            z = b
                .invert_d(&z, Multiplicity::new(2 * k + 1, 2 * k + 1))
                .unwrap();
            universality_check(&a, &z, k, k).unwrap();
        }
        assert_eq!(b.invert_log().len(), 2);
        for rec in b.invert_log() {
            assert_eq!(rec.output_pdeg - rec.input_pdeg, a.h() as i64);
        }
    }

    #[test]
    fn w_invariance_of_build_e_outputs() {
        let a = arr(6);
        let mut b = UniversalBuilder::new(&a);
        for (s, t) in [(0i64, 0i64), (0, 2), (2, 0), (1, 1), (-2, 0)] {
            let spec = UniversalSpec::choose(s, t).unwrap();
            let z = b.build(spec).unwrap();
            assert!(w_orbit_fixes(&a, &z), "E^({s},{t}) is W-invariant");
            assert_eq!(z.pdeg(&a), Some(spec.expected_pdeg(a.h())));
        }
    }
}
