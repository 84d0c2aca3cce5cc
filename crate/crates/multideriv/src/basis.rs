//! Case analysis and basis construction for `D(A, (a1, a2))`:
//! the sixteen residue classes of `(a1 mod 4, a2 mod 4)`, seed derivations,
//! the ordinary construction `nabla_theta zeta`, the corrected maps
//! `Phi^(1)`, `Phi^(2)` for the two exceptional classes, the duality step
//! for doubly-negative multiplicities, and the closed-form exponents.

use std::fmt;

use thiserror::Error;

use crate::arrangement::{Arrangement, BuildError, Multiplicity};
use crate::bipoly::{BiPoly, RatFn, Var};
use crate::deriv::{
    connection, euler, istar, membership, primitive, saito_check, Derivation, OneForm, Primitive,
};
use crate::exactnum::FieldScalar;
use crate::universal::{UniversalBuilder, UniversalError, UniversalSpec};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("universal derivation failed: {0}")]
    Universal(#[from] UniversalError),
    #[error("verification failed: {reason}")]
    Verification { reason: String, trace: Vec<String> },
    #[error("internal error: {reason}")]
    Internal { reason: String, trace: Vec<String> },
}

/// The twelve seed derivations appearing in Tables 1-3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeedTag {
    Euler,
    GradP2,
    Dprim,
    DlogQ,
    DlogQ1,
    DlogQ2,
    GradQ1,
    GradQ2,
    D1,
    D2,
    Dx1,
    Dx2,
}

impl SeedTag {
    pub const ALL: [SeedTag; 12] = [
        SeedTag::Euler,
        SeedTag::GradP2,
        SeedTag::Dprim,
        SeedTag::DlogQ,
        SeedTag::DlogQ1,
        SeedTag::DlogQ2,
        SeedTag::GradQ1,
        SeedTag::GradQ2,
        SeedTag::D1,
        SeedTag::D2,
        SeedTag::Dx1,
        SeedTag::Dx2,
    ];

    /// The multiplicity this seed is a member of (its Table-3 home).
    pub fn home_multiplicity(self) -> Multiplicity {
        match self {
            SeedTag::Euler | SeedTag::GradP2 => Multiplicity::new(1, 1),
            SeedTag::Dprim | SeedTag::DlogQ => Multiplicity::new(-1, -1),
            SeedTag::DlogQ1 => Multiplicity::new(-1, 1),
            SeedTag::DlogQ2 => Multiplicity::new(1, -1),
            SeedTag::GradQ1 => Multiplicity::new(0, 1),
            SeedTag::GradQ2 => Multiplicity::new(1, 0),
            SeedTag::D1 => Multiplicity::new(-1, 0),
            SeedTag::D2 => Multiplicity::new(0, -1),
            SeedTag::Dx1 | SeedTag::Dx2 => Multiplicity::new(0, 0),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SeedTag::Euler => "E",
            SeedTag::GradP2 => "I*(dP2)",
            SeedTag::Dprim => "D",
            SeedTag::DlogQ => "I*(dQ/Q)",
            SeedTag::DlogQ1 => "I*(dQ1/Q1)",
            SeedTag::DlogQ2 => "I*(dQ2/Q2)",
            SeedTag::GradQ1 => "I*(dQ1)",
            SeedTag::GradQ2 => "I*(dQ2)",
            SeedTag::D1 => "D1",
            SeedTag::D2 => "D2",
            SeedTag::Dx1 => "d/dx1",
            SeedTag::Dx2 => "d/dx2",
        }
    }
}

impl fmt::Display for SeedTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Builds the tagged derivation and asserts its home membership.
pub fn seed_derivation(arr: &Arrangement, tag: SeedTag) -> Derivation {
    let dlog = |qi: &BiPoly, e1: u32, e2: u32| -> Derivation {
        istar(&OneForm::new(
            RatFn::new(qi.partial_derive(Var::X1), e1, e2, arr),
            RatFn::new(qi.partial_derive(Var::X2), e1, e2, arr),
        ))
    };
    let theta = match tag {
        SeedTag::Euler => euler(arr),
        SeedTag::GradP2 => istar(&OneForm::d(arr.p2())),
        SeedTag::Dprim => primitive(arr, Primitive::D),
        SeedTag::DlogQ => dlog(arr.q(), 1, 1),
        SeedTag::DlogQ1 => dlog(arr.q1(), 1, 0),
        SeedTag::DlogQ2 => dlog(arr.q2(), 0, 1),
        SeedTag::GradQ1 => istar(&OneForm::d(arr.q1())),
        SeedTag::GradQ2 => istar(&OneForm::d(arr.q2())),
        SeedTag::D1 => primitive(arr, Primitive::D1),
        SeedTag::D2 => primitive(arr, Primitive::D2),
        SeedTag::Dx1 => Derivation::partial(arr, Var::X1),
        SeedTag::Dx2 => Derivation::partial(arr, Var::X2),
    };
    assert!(
        membership(&theta, tag.home_multiplicity(), arr).passed(),
        "seed {} must lie in its home module",
        tag
    );
    theta
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pat {
    P4,
    P4Plus1,
    P4Minus1,
    P4Plus2,
    P4Plus3,
}

impl Pat {
    fn extract(self, a: i64) -> i64 {
        let off = match self {
            Pat::P4 => 0,
            Pat::P4Plus1 => 1,
            Pat::P4Minus1 => -1,
            Pat::P4Plus2 => 2,
            Pat::P4Plus3 => 3,
        };
        debug_assert_eq!((a - off).rem_euclid(4), 0, "pattern/residue mismatch");
        (a - off) / 4
    }
}

struct CaseRow {
    residues: (u8, u8),
    label: &'static str,
    pat1: Pat,
    pat2: Pat,
    /// `true`: `zeta = E^(2p+1, 2q+1)`; `false`: `zeta = E^(2p, 2q)`.
    shifted: bool,
    thetas: (SeedTag, SeedTag),
    phi: Option<u8>,
}

/// Tables 1 and 2, one row per residue pair.
const ROWS: [CaseRow; 16] = [
    CaseRow {
        residues: (0, 0),
        label: "(4p, 4q)",
        pat1: Pat::P4,
        pat2: Pat::P4,
        shifted: false,
        thetas: (SeedTag::Dx1, SeedTag::Dx2),
        phi: None,
    },
    CaseRow {
        residues: (0, 1),
        label: "(4p, 4q+1)",
        pat1: Pat::P4,
        pat2: Pat::P4Plus1,
        shifted: false,
        thetas: (SeedTag::Euler, SeedTag::GradQ1),
        phi: None,
    },
    CaseRow {
        residues: (0, 2),
        label: "(4p, 4q+2)",
        pat1: Pat::P4,
        pat2: Pat::P4Plus2,
        shifted: false,
        thetas: (SeedTag::Dx1, SeedTag::Dx2),
        phi: Some(2),
    },
    CaseRow {
        residues: (0, 3),
        label: "(4p, 4q-1)",
        pat1: Pat::P4,
        pat2: Pat::P4Minus1,
        shifted: false,
        thetas: (SeedTag::D2, SeedTag::DlogQ2),
        phi: None,
    },
    CaseRow {
        residues: (1, 0),
        label: "(4p+1, 4q)",
        pat1: Pat::P4Plus1,
        pat2: Pat::P4,
        shifted: false,
        thetas: (SeedTag::Euler, SeedTag::GradQ2),
        phi: None,
    },
    CaseRow {
        residues: (1, 1),
        label: "(4p+1, 4q+1)",
        pat1: Pat::P4Plus1,
        pat2: Pat::P4Plus1,
        shifted: false,
        thetas: (SeedTag::Euler, SeedTag::GradP2),
        phi: None,
    },
    CaseRow {
        residues: (1, 2),
        label: "(4p+1, 4q+2)",
        pat1: Pat::P4Plus1,
        pat2: Pat::P4Plus2,
        shifted: true,
        thetas: (SeedTag::D1, SeedTag::DlogQ1),
        phi: None,
    },
    CaseRow {
        residues: (1, 3),
        label: "(4p+1, 4q-1)",
        pat1: Pat::P4Plus1,
        pat2: Pat::P4Minus1,
        shifted: false,
        thetas: (SeedTag::DlogQ2, SeedTag::Euler),
        phi: None,
    },
    CaseRow {
        residues: (2, 0),
        label: "(4p+2, 4q)",
        pat1: Pat::P4Plus2,
        pat2: Pat::P4,
        shifted: false,
        thetas: (SeedTag::Dx1, SeedTag::Dx2),
        phi: Some(1),
    },
    CaseRow {
        residues: (2, 1),
        label: "(4p+2, 4q+1)",
        pat1: Pat::P4Plus2,
        pat2: Pat::P4Plus1,
        shifted: true,
        thetas: (SeedTag::D2, SeedTag::DlogQ2),
        phi: None,
    },
    CaseRow {
        residues: (2, 2),
        label: "(4p+2, 4q+2)",
        pat1: Pat::P4Plus2,
        pat2: Pat::P4Plus2,
        shifted: true,
        thetas: (SeedTag::Dx1, SeedTag::Dx2),
        phi: None,
    },
    CaseRow {
        residues: (2, 3),
        label: "(4p+2, 4q+3)",
        pat1: Pat::P4Plus2,
        pat2: Pat::P4Plus3,
        shifted: true,
        thetas: (SeedTag::Euler, SeedTag::GradQ1),
        phi: None,
    },
    CaseRow {
        residues: (3, 0),
        label: "(4p-1, 4q)",
        pat1: Pat::P4Minus1,
        pat2: Pat::P4,
        shifted: false,
        thetas: (SeedTag::D1, SeedTag::DlogQ1),
        phi: None,
    },
    CaseRow {
        residues: (3, 1),
        label: "(4p-1, 4q+1)",
        pat1: Pat::P4Minus1,
        pat2: Pat::P4Plus1,
        shifted: false,
        thetas: (SeedTag::DlogQ1, SeedTag::Euler),
        phi: None,
    },
    CaseRow {
        residues: (3, 2),
        label: "(4p+3, 4q+2)",
        pat1: Pat::P4Plus3,
        pat2: Pat::P4Plus2,
        shifted: true,
        thetas: (SeedTag::Euler, SeedTag::GradQ2),
        phi: None,
    },
    CaseRow {
        residues: (3, 3),
        label: "(4p-1, 4q-1)",
        pat1: Pat::P4Minus1,
        pat2: Pat::P4Minus1,
        shifted: false,
        thetas: (SeedTag::Dprim, SeedTag::DlogQ),
        phi: None,
    },
];

fn row_for(residues: (u8, u8)) -> &'static CaseRow {
    ROWS.iter()
        .find(|r| r.residues == residues)
        .expect("all sixteen residue pairs are covered")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseKind {
    Ordinary,
    Exceptional,
    Dual,
}

/// The resolved plan for one multiplicity.
#[derive(Clone, Debug)]
pub struct CasePlan {
    pub a1: i64,
    pub a2: i64,
    pub residues: (u8, u8),
    pub row_label: &'static str,
    pub p: i64,
    pub q: i64,
    pub kind: CaseKind,
    /// Spec of the universal derivation; `None` on the dual path.
    pub zeta: Option<UniversalSpec>,
    /// Table-order theta pair; `None` on the dual path.
    pub thetas: Option<(SeedTag, SeedTag)>,
    pub phi_variant: Option<u8>,
}

/// The paper's exceptional condition: `a1` even and `a1 - a2 = 2 (mod 4)`.
pub fn is_exceptional(a1: i64, a2: i64) -> bool {
    a1 % 2 == 0 && (a1 - a2).rem_euclid(4) == 2
}

/// Total classification of `(a1, a2)` into the sixteen residue cases.
pub fn classify(a1: i64, a2: i64) -> CasePlan {
    let residues = (a1.rem_euclid(4) as u8, a2.rem_euclid(4) as u8);
    let row = row_for(residues);
    let p = row.pat1.extract(a1);
    let q = row.pat2.extract(a2);
    if p < 0 && q < 0 {
        return CasePlan {
            a1,
            a2,
            residues,
            row_label: row.label,
            p,
            q,
            kind: CaseKind::Dual,
            zeta: None,
            thetas: None,
            phi_variant: None,
        };
    }
    let (s, t) = if row.shifted {
        (2 * p + 1, 2 * q + 1)
    } else {
        (2 * p, 2 * q)
    };
    let zeta = UniversalSpec::choose(s, t)
        .expect("a forward variant exists whenever p >= 0 or q >= 0");
    let kind = if row.phi.is_some() {
        CaseKind::Exceptional
    } else {
        CaseKind::Ordinary
    };
    CasePlan {
        a1,
        a2,
        residues,
        row_label: row.label,
        p,
        q,
        kind,
        zeta: Some(zeta),
        thetas: Some(row.thetas),
        phi_variant: row.phi,
    }
}

/// Closed-form exponents of `(A, (a1, a2))`, ascending.
pub fn table4_exponents(h: u32, a1: i64, a2: i64) -> (i64, i64) {
    let h = h as i64;
    let s = a1 + a2;
    let (e1, e2) = match (a1 % 2 != 0, a2 % 2 != 0) {
        (true, true) => {
            if (a1 - a2).rem_euclid(4) == 0 {
                ((s - 2) * h / 4 + 1, (s + 2) * h / 4 - 1)
            } else {
                (s * h / 4 - 1, s * h / 4 + 1)
            }
        }
        (true, false) | (false, true) => ((s - 1) * h / 4 + 1, (s + 1) * h / 4 - 1),
        (false, false) => (s * h / 4, s * h / 4),
    };
    if e1 <= e2 {
        (e1, e2)
    } else {
        (e2, e1)
    }
}

/// `Phi^(1)(theta) = Q1 (nabla_theta zeta) - (4p+1) theta(Q1) zeta` and the
/// `Q2`/`(4q+1)` mirror; `zeta` must be `(2p, 2q)`-universal for the image
/// to land in `D(A, (4p+2, 4q))` resp. `D(A, (4p, 4q+2))`.
pub fn phi_map(
    arr: &Arrangement,
    variant: u8,
    zeta: &Derivation,
    p: i64,
    q: i64,
    theta: &Derivation,
) -> Derivation {
    let (qi, factor) = match variant {
        1 => (arr.q1(), 4 * p + 1),
        2 => (arr.q2(), 4 * q + 1),
        _ => panic!("phi variant must be 1 or 2"),
    };
    let main = connection(theta, zeta, arr).scale_poly(qi, arr);
    let corr = zeta
        .scale_ratfn(&theta.apply_poly(qi, arr), arr)
        .scale(&FieldScalar::from_i64(arr.two_h(), factor));
    main.sub(&corr, arr)
}

/// Inverse-transpose step of the duality: from a basis of
/// `D(A, (-a1, -a2))` to a basis of `D(A, (a1, a2))` via
/// `[g_ij] = M(theta)^{-1} = Q1^a1 Q2^a2 / c * adj`, columns as derivations.
pub fn dual_basis(
    arr: &Arrangement,
    theta1: &Derivation,
    theta2: &Derivation,
    a1: i64,
    a2: i64,
) -> Result<(Derivation, Derivation), ConstructError> {
    let det = theta1
        .c1()
        .mul(theta2.c2(), arr)
        .sub(&theta1.c2().mul(theta2.c1(), arr), arr);
    let expected = arr.q_power(Multiplicity::new(-a1, -a2));
    let c = det.proportionality(&expected).ok_or_else(|| ConstructError::Internal {
        reason: "dual_basis input determinant is not a scalar times Q1^-a1 Q2^-a2".into(),
        trace: Vec::new(),
    })?;
    if c.is_zero() {
        return Err(ConstructError::Internal {
            reason: "dual_basis input basis is singular".into(),
            trace: Vec::new(),
        });
    }
    let scale = arr
        .q_power(Multiplicity::new(a1, a2))
        .scale(&c.inverse().expect("nonzero scalar"));
    let eta1 = Derivation::new(
        theta2.c2().mul(&scale, arr),
        theta2.c1().mul(&scale, arr).neg(),
    );
    let eta2 = Derivation::new(
        theta1.c2().mul(&scale, arr).neg(),
        theta1.c1().mul(&scale, arr),
    );
    Ok((eta1, eta2))
}

/// A verified basis of `D(A, (a1, a2))` with its audit trail.
#[derive(Clone, Debug)]
pub struct BasisCertificate {
    pub h: u32,
    pub a1: i64,
    pub a2: i64,
    pub case: String,
    pub basis: (Derivation, Derivation),
    pub exponents: (i64, i64),
    /// Saito scalar of the basis before leading-coefficient normalization.
    pub saito_scalar: FieldScalar,
    pub trace: Vec<String>,
    pub verified: bool,
}

/// Constructs and certifies bases, reusing universal derivations across
/// calls on the same arrangement.
#[derive(Clone)]
pub struct BasisBuilder<'a> {
    universal: UniversalBuilder<'a>,
}

impl<'a> BasisBuilder<'a> {
    pub fn new(arr: &'a Arrangement) -> Self {
        BasisBuilder {
            universal: UniversalBuilder::new(arr),
        }
    }

    pub fn with_pole_cap(arr: &'a Arrangement, cap: u32) -> Self {
        BasisBuilder {
            universal: UniversalBuilder::with_pole_cap(arr, cap),
        }
    }

    pub fn arr(&self) -> &Arrangement {
        self.universal.arrangement()
    }

    pub fn universal_mut(&mut self) -> &mut UniversalBuilder<'a> {
        &mut self.universal
    }

    pub fn construct(&mut self, a1: i64, a2: i64) -> Result<BasisCertificate, ConstructError> {
        let plan = classify(a1, a2);
        let mut trace = vec![format!(
            "classify: (a1,a2)=({},{}) residues=({},{}) row={} p={} q={} kind={:?}",
            a1, a2, plan.residues.0, plan.residues.1, plan.row_label, plan.p, plan.q, plan.kind
        )];
        let (raw1, raw2) = match plan.kind {
            CaseKind::Dual => self.construct_dual(&plan, &mut trace)?,
            CaseKind::Ordinary => self.construct_ordinary(&plan, &mut trace)?,
            CaseKind::Exceptional => self.construct_exceptional(&plan, &mut trace)?,
        };
        self.certify(a1, a2, plan, raw1, raw2, trace)
    }

    fn construct_ordinary(
        &mut self,
        plan: &CasePlan,
        trace: &mut Vec<String>,
    ) -> Result<(Derivation, Derivation), ConstructError> {
        let spec = plan.zeta.expect("ordinary plan has a zeta spec");
        let (tag1, tag2) = plan.thetas.expect("ordinary plan has thetas");
        let zeta = self.universal.build(spec)?;
        let arr = self.arr();
        trace.push(format!(
            "zeta: {:?} E^({},{}) pdeg={}",
            spec.variant,
            spec.s,
            spec.t,
            zeta.pdeg(arr).expect("universal derivations are homogeneous")
        ));
        trace.push(format!("theta (table order): {}, {}", tag1, tag2));
        let mut images = Vec::with_capacity(2);
        for tag in [tag1, tag2] {
            let theta = seed_derivation(arr, tag);
            let image = connection(&theta, &zeta, arr);
            // Psi restriction: theta in D(A, m) maps into D(A, 2k + m)
            let home = tag.home_multiplicity();
            let shifted = Multiplicity::new(2 * spec.s + home.a1, 2 * spec.t + home.a2);
            if !membership(&image, shifted, arr).passed() {
                return Err(ConstructError::Internal {
                    reason: format!(
                        "nabla_{} zeta escapes D(A, ({}, {}))",
                        tag, shifted.a1, shifted.a2
                    ),
                    trace: trace.clone(),
                });
            }
            images.push(image);
        }
        let b2 = images.pop().unwrap();
        let b1 = images.pop().unwrap();
        trace.push("basis: nabla_theta1 zeta, nabla_theta2 zeta".to_string());
        Ok((b1, b2))
    }

    fn construct_exceptional(
        &mut self,
        plan: &CasePlan,
        trace: &mut Vec<String>,
    ) -> Result<(Derivation, Derivation), ConstructError> {
        let spec = plan.zeta.expect("exceptional plan has a zeta spec");
        let variant = plan.phi_variant.expect("exceptional plan has a phi variant");
        let zeta = self.universal.build(spec)?;
        let arr = self.arr();
        trace.push(format!(
            "zeta: {:?} E^({},{}) pdeg={}",
            spec.variant,
            spec.s,
            spec.t,
            zeta.pdeg(arr).expect("universal derivations are homogeneous")
        ));
        trace.push(format!("basis: Phi^({}) of d/dx1, d/dx2", variant));
        let b1 = phi_map(
            arr,
            variant,
            &zeta,
            plan.p,
            plan.q,
            &Derivation::partial(arr, Var::X1),
        );
        let b2 = phi_map(
            arr,
            variant,
            &zeta,
            plan.p,
            plan.q,
            &Derivation::partial(arr, Var::X2),
        );
        Ok((b1, b2))
    }

    fn construct_dual(
        &mut self,
        plan: &CasePlan,
        trace: &mut Vec<String>,
    ) -> Result<(Derivation, Derivation), ConstructError> {
        let (a1, a2) = (plan.a1, plan.a2);
        let inner_plan = classify(-a1, -a2);
        if inner_plan.kind == CaseKind::Dual {
            return Err(ConstructError::Internal {
                reason: "duality must terminate in one step".into(),
                trace: trace.clone(),
            });
        }
        trace.push(format!("dual: via ({}, {})", -a1, -a2));
        let inner = self.construct(-a1, -a2)?;
        trace.extend(inner.trace.iter().map(|l| format!("  {}", l)));
        let arr = self.arr();
        let (eta1, eta2) = dual_basis(arr, &inner.basis.0, &inner.basis.1, a1, a2)?;
        trace.push("basis: columns of M(inner)^-1".to_string());
        Ok((eta1, eta2))
    }

    fn certify(
        &self,
        a1: i64,
        a2: i64,
        plan: CasePlan,
        raw1: Derivation,
        raw2: Derivation,
        mut trace: Vec<String>,
    ) -> Result<BasisCertificate, ConstructError> {
        let arr = self.arr();
        // deterministic output order: ascending pdeg, ties by the lex
        // leading monomials of the coefficients
        let key = |d: &Derivation| {
            (
                d.pdeg(arr),
                d.c1().num().leading().map(|(k, _)| k),
                d.c2().num().leading().map(|(k, _)| k),
            )
        };
        let (b1, b2) = if key(&raw1) <= key(&raw2) {
            (raw1, raw2)
        } else {
            (raw2, raw1)
        };
        let m = Multiplicity::new(a1, a2);
        let ok = saito_check(arr, &b1, &b2, m).map_err(|e| ConstructError::Verification {
            reason: e.to_string(),
            trace: trace.clone(),
        })?;
        let expected = table4_exponents(arr.h(), a1, a2);
        if ok.exponents != expected {
            return Err(ConstructError::Internal {
                reason: format!(
                    "exponents {:?} disagree with the closed form {:?}",
                    ok.exponents, expected
                ),
                trace,
            });
        }
        let sum = ok.exponents.0 + ok.exponents.1;
        if sum != (arr.h() as i64 / 2) * (a1 + a2) {
            return Err(ConstructError::Internal {
                reason: "exponent sum disagrees with deg Q^k".into(),
                trace,
            });
        }
        let (n1, l1) = b1.normalize_leading();
        let (n2, l2) = b2.normalize_leading();
        trace.push(format!(
            "saito: scalar {} (leading coefficients {} and {} divided out)",
            ok.scalar, l1, l2
        ));
        trace.push(format!("exponents: ({}, {})", ok.exponents.0, ok.exponents.1));
        let case = match plan.kind {
            CaseKind::Ordinary => format!("ordinary {}", plan.row_label),
            CaseKind::Exceptional => format!(
                "exceptional {} Phi^({})",
                plan.row_label,
                plan.phi_variant.unwrap_or(0)
            ),
            CaseKind::Dual => format!("dual of ({}, {})", -a1, -a2),
        };
        Ok(BasisCertificate {
            h: arr.h(),
            a1,
            a2,
            case,
            basis: (n1, n2),
            exponents: ok.exponents,
            saito_scalar: ok.scalar,
            trace,
            verified: true,
        })
    }
}

/// One-shot construction: builds the arrangement and a fresh builder.
pub fn construct(h: u32, a1: i64, a2: i64) -> Result<BasisCertificate, ConstructError> {
    let arr = Arrangement::build(h)?;
    let mut builder = BasisBuilder::new(&arr);
    builder.construct(a1, a2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use proptest::prelude::*;

    fn arr(h: u32) -> Arrangement {
        Arrangement::build(h).unwrap()
    }

    #[test]
    fn classify_examples() {
        let plan = classify(5, 1);
        assert_eq!(plan.kind, CaseKind::Ordinary);
        assert_eq!(plan.residues, (1, 1));
        assert_eq!((plan.p, plan.q), (1, 0));
        let z = plan.zeta.unwrap();
        assert_eq!((z.s, z.t), (2, 0));
        assert_eq!(plan.thetas, Some((SeedTag::Euler, SeedTag::GradP2)));

        let plan = classify(2, 0);
        assert_eq!(plan.kind, CaseKind::Exceptional);
        assert_eq!((plan.p, plan.q), (0, 0));
        assert_eq!(plan.phi_variant, Some(1));
        assert_eq!(plan.zeta.map(|z| (z.s, z.t)), Some((0, 0)));
        assert_eq!(plan.thetas, Some((SeedTag::Dx1, SeedTag::Dx2)));

        let plan = classify(-3, -3);
        assert_eq!(plan.kind, CaseKind::Dual);
        let inner = classify(3, 3);
        assert_eq!(inner.kind, CaseKind::Ordinary);
        assert_eq!(inner.row_label, "(4p-1, 4q-1)");
        assert_eq!((inner.p, inner.q), (1, 1));
        assert_eq!(inner.thetas, Some((SeedTag::Dprim, SeedTag::DlogQ)));
    }

    #[test]
    fn classify_boundary_rows() {
        // (-1, -1) matches (4p-1, 4q-1) with p = q = 0: direct, not dual
        let plan = classify(-1, -1);
        assert_eq!(plan.kind, CaseKind::Ordinary);
        assert_eq!((plan.p, plan.q), (0, 0));
        assert_eq!(plan.zeta.map(|z| (z.s, z.t)), Some((0, 0)));

        // (-2, 0) is exceptional with q = 0 >= 0: direct
        let plan = classify(-2, 0);
        assert_eq!(plan.kind, CaseKind::Exceptional);
        assert_eq!((plan.p, plan.q), (-1, 0));
        assert_eq!(plan.zeta.map(|z| (z.s, z.t)), Some((-2, 0)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn classify_is_total_and_consistent(a1 in -50i64..=50, a2 in -50i64..=50) {
            let plan = classify(a1, a2);
            // the row reproduces the multiplicity from (p, q)
            let rebuild = |pat: Pat, p: i64| match pat {
                Pat::P4 => 4 * p,
                Pat::P4Plus1 => 4 * p + 1,
                Pat::P4Minus1 => 4 * p - 1,
                Pat::P4Plus2 => 4 * p + 2,
                Pat::P4Plus3 => 4 * p + 3,
            };
            let row = row_for(plan.residues);
            prop_assert_eq!(rebuild(row.pat1, plan.p), a1);
            prop_assert_eq!(rebuild(row.pat2, plan.q), a2);
            // the exceptional residues are exactly the paper's condition
            let exc = plan.phi_variant.is_some() || (plan.kind == CaseKind::Dual && row.phi.is_some());
            prop_assert_eq!(is_exceptional(a1, a2), exc);
            prop_assert_eq!(
                is_exceptional(a1, a2),
                plan.residues == (2, 0) || plan.residues == (0, 2)
            );
            // dual iff both matched parameters are negative, and the
            // negated pair is then directly constructible
            prop_assert_eq!(plan.kind == CaseKind::Dual, plan.p < 0 && plan.q < 0);
            if plan.kind == CaseKind::Dual {
                prop_assert!(a1 < 0 && a2 < 0);
                let inner = classify(-a1, -a2);
                prop_assert!(inner.kind != CaseKind::Dual);
                prop_assert!(inner.p >= 0 && inner.q >= 0);
            }
        }

        #[test]
        fn table4_exponent_sum(a1 in -20i64..=20, a2 in -20i64..=20, hi in 0usize..3) {
            let h = [4u32, 6, 8][hi];
            let (e1, e2) = table4_exponents(h, a1, a2);
            prop_assert!(e1 <= e2);
            prop_assert_eq!(e1 + e2, (h as i64 / 2) * (a1 + a2));
        }
    }

    #[test]
    fn table4_examples() {
        // (1,1) -> (1, h-1) for any h
        for h in [4u32, 6, 8, 10, 12] {
            assert_eq!(table4_exponents(h, 1, 1), (1, h as i64 - 1));
        }
        assert_eq!(table4_exponents(6, 3, 1), (5, 7));
        assert_eq!(table4_exponents(4, 2, 0), (2, 2));
        assert_eq!(table4_exponents(4, -1, -1), (-3, -1));
        assert_eq!(table4_exponents(6, -2, -2), (-6, -6));
        assert_eq!(table4_exponents(8, 1, 0), (1, 3));
    }

    #[test]
    fn seeds_live_in_their_home_modules() {
        for h in [4u32, 6] {
            let a = arr(h);
            for tag in SeedTag::ALL {
                let theta = seed_derivation(&a, tag);
                assert!(
                    membership(&theta, tag.home_multiplicity(), &a).passed(),
                    "h={h} seed {tag}"
                );
            }
        }
    }

    #[test]
    fn dlog_q2_example_membership() {
        let a = arr(6);
        let theta = seed_derivation(&a, SeedTag::DlogQ2);
        assert!(membership(&theta, Multiplicity::new(1, -1), &a).passed());
        let d1 = seed_derivation(&a, SeedTag::D1);
        assert!(membership(&d1, Multiplicity::new(-1, 0), &a).passed());
    }

    #[test]
    fn phi_map_hand_expansion_h4() {
        // h = 4, p = q = 0, zeta = E, with Q1 = 2 x1 x2:
        // Phi^1(d1) = Q1 d1 - d1(Q1) E = -2 x2^2 d2
        // Phi^1(d2) = -2 x1^2 d1
        let a = arr(4);
        let e = euler(&a);
        let two_h = a.two_h();
        let b1 = phi_map(&a, 1, &e, 0, 0, &Derivation::partial(&a, Var::X1));
        let b2 = phi_map(&a, 1, &e, 0, 0, &Derivation::partial(&a, Var::X2));
        let want1 = Derivation::from_polys(
            BiPoly::zero(two_h),
            BiPoly::var(two_h, Var::X2)
                .pow(2)
                .scale(&FieldScalar::from_i64(two_h, -2)),
        );
        let want2 = Derivation::from_polys(
            BiPoly::var(two_h, Var::X1)
                .pow(2)
                .scale(&FieldScalar::from_i64(two_h, -2)),
            BiPoly::zero(two_h),
        );
        assert_eq!(b1, want1);
        assert_eq!(b2, want2);
        assert!(membership(&b1, Multiplicity::new(2, 0), &a).passed());

        // det M(Phi^1(d1), Phi^1(d2)) = -Q1^2 (predicted scalar -1)
        let det = b1
            .c1()
            .mul(b2.c2(), &a)
            .sub(&b1.c2().mul(b2.c1(), &a), &a);
        let q1sq = RatFn::from_poly(a.q1().mul(a.q1()).neg());
        assert_eq!(det, q1sq);
    }

    #[test]
    fn phi_determinant_identity_parametrized() {
        // det M(Phi^(1) d1, Phi^(1) d2)
        //   = (2 - h(2p - 2q + 1)) / (2 (1 + h(p+q))) * c_zeta * Q1^(4p+2) Q2^(4q)
        // where c_zeta is the Saito scalar of (nabla_d1 zeta, nabla_d2 zeta)
        for (h, p, q) in [(4u32, 0i64, 0i64), (6, 0, 0), (6, 1, 0)] {
            let a = arr(h);
            let mut ub = UniversalBuilder::new(&a);
            let spec = UniversalSpec::choose(2 * p, 2 * q).unwrap();
            let zeta = ub.build(spec).unwrap();
            let czeta = crate::universal::universality_check(&a, &zeta, 2 * p, 2 * q)
                .unwrap()
                .scalar;
            for variant in [1u8, 2] {
                let b1 = phi_map(&a, variant, &zeta, p, q, &Derivation::partial(&a, Var::X1));
                let b2 = phi_map(&a, variant, &zeta, p, q, &Derivation::partial(&a, Var::X2));
                let det = b1
                    .c1()
                    .mul(b2.c2(), &a)
                    .sub(&b1.c2().mul(b2.c1(), &a), &a);
                let hh = h as i64;
                let num = if variant == 1 {
                    2 - hh * (2 * p - 2 * q + 1)
                } else {
                    2 - hh * (2 * q - 2 * p + 1)
                };
                let den = 2 * (1 + hh * (p + q));
                let scalar = FieldScalar::from_rational(a.two_h(), ratio(num, den)).mul(&czeta);
                let m = if variant == 1 {
                    Multiplicity::new(4 * p + 2, 4 * q)
                } else {
                    Multiplicity::new(4 * p, 4 * q + 2)
                };
                let expected = a.q_power(m).scale(&scalar);
                assert_eq!(det, expected, "h={h} p={p} q={q} variant={variant}");
            }
        }
    }

    #[test]
    fn construct_table3_corners() {
        for h in [4u32, 6] {
            let a = arr(h);
            let mut b = BasisBuilder::new(&a);
            let c = b.construct(1, 1).unwrap();
            assert!(c.verified);
            assert_eq!(c.exponents, (1, h as i64 - 1));
            let c = b.construct(-1, -1).unwrap();
            assert_eq!(c.exponents, (1 - h as i64, -1));
            // basis is (D, I*(dQ/Q)) up to scalars
            let d = seed_derivation(&a, SeedTag::Dprim);
            assert!(c.basis.0.proportional_to(&d).is_some());
            let c = b.construct(0, 0).unwrap();
            assert_eq!(c.exponents, (0, 0));
        }
    }

    #[test]
    fn construct_exceptional_h4() {
        let a = arr(4);
        let mut b = BasisBuilder::new(&a);
        let c = b.construct(2, 0).unwrap();
        assert_eq!(c.exponents, (2, 2));
        // basis spans { x2^2 d2, x1^2 d1 } up to scalars and order
        let two_h = a.two_h();
        let w1 = Derivation::from_polys(BiPoly::zero(two_h), BiPoly::var(two_h, Var::X2).pow(2));
        let w2 = Derivation::from_polys(BiPoly::var(two_h, Var::X1).pow(2), BiPoly::zero(two_h));
        let hits = [&c.basis.0, &c.basis.1]
            .iter()
            .filter(|b| b.proportional_to(&w1).is_some() || b.proportional_to(&w2).is_some())
            .count();
        assert_eq!(hits, 2);

        let c = b.construct(0, 2).unwrap();
        assert_eq!(c.exponents, (2, 2));
    }

    #[test]
    fn construct_exceptional_h6_shifted_p() {
        let c = construct(6, 6, 0).unwrap();
        assert_eq!(c.exponents, (9, 9));
        assert!(c.case.starts_with("exceptional"));
    }

    #[test]
    fn construct_dual_cases() {
        let c = construct(6, -2, -2).unwrap();
        assert_eq!(c.exponents, (-6, -6));
        assert!(c.case.starts_with("dual"));

        let c = construct(4, -3, -3).unwrap();
        assert_eq!(c.exponents, table4_exponents(4, -3, -3));
    }

    #[test]
    fn dual_basis_identity_sanity() {
        // boundary algebraic identity: the dual of (d1, d2) at (0,0) is
        // (d1, d2) again
        let a = arr(4);
        let d1 = Derivation::partial(&a, Var::X1);
        let d2 = Derivation::partial(&a, Var::X2);
        let (e1, e2) = dual_basis(&a, &d1, &d2, 0, 0).unwrap();
        assert_eq!(e1, d1);
        assert_eq!(e2, d2);
    }

    #[test]
    fn dual_of_table3_row_11() {
        // h = 4: dual of the (1,1) basis certifies at (-1,-1) with
        // exponents (-3, -1)
        let a = arr(4);
        let e = seed_derivation(&a, SeedTag::Euler);
        let xi = seed_derivation(&a, SeedTag::GradP2);
        let (eta1, eta2) = dual_basis(&a, &e, &xi, -1, -1).unwrap();
        let ok = saito_check(&a, &eta1, &eta2, Multiplicity::new(-1, -1)).unwrap();
        let mut exps = [ok.exponents.0, ok.exponents.1];
        exps.sort_unstable();
        assert_eq!(exps, [-3, -1]);
    }

    #[test]
    fn construct_one_shot_examples() {
        let c = construct(4, 0, 0).unwrap();
        assert_eq!(c.exponents, (0, 0));
        let c = construct(8, 1, 1).unwrap();
        assert_eq!(c.exponents, (1, 7));
    }

    #[test]
    fn deep_dual_pair_h4() {
        // (-2, -8): dual via (2, 8), which is exceptional with q = 2
        let c = construct(4, -2, -8).unwrap();
        assert_eq!(c.exponents, (-10, -10));
    }

    #[test]
    fn certificate_basis_is_normalized() {
        let c = construct(6, 1, 1).unwrap();
        for b in [&c.basis.0, &c.basis.1] {
            let lead = b
                .c1()
                .num()
                .leading()
                .into_iter()
                .chain(b.c2().num().leading())
                .max_by_key(|(k, _)| *k)
                .map(|(_, c)| c)
                .unwrap();
            assert!(lead.is_one(), "leading coefficient is normalized to 1");
        }
    }
}
