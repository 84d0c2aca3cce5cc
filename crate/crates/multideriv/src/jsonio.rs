//! JSON interchange formats. Field elements are arrays of `phi(2h)`
//! rational strings `"p/q"` next to a `two_h` tag; everything else is
//! built on top of that.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::basis::BasisCertificate;
use crate::bipoly::{BiPoly, RatFn};
use crate::deriv::Derivation;
use crate::exactnum::{euler_phi, parse_rational, rational_string, FieldScalar};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("bad rational literal: {0}")]
    BadRational(String),
    #[error("field element has {got} coefficients, field 2h = {two_h} needs {want}")]
    BadLength { two_h: u32, got: usize, want: usize },
    #[error("value belongs to field 2h = {got}, expected 2h = {want}")]
    WrongField { got: u32, want: u32 },
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldScalarJson {
    pub two_h: u32,
    pub coeffs: Vec<String>,
}

impl FieldScalarJson {
    pub fn encode(v: &FieldScalar) -> Self {
        FieldScalarJson {
            two_h: v.two_h(),
            coeffs: v.coeffs().iter().map(rational_string).collect(),
        }
    }

    pub fn decode(&self) -> Result<FieldScalar, JsonError> {
        let want = euler_phi(self.two_h) as usize;
        if self.coeffs.len() != want {
            return Err(JsonError::BadLength {
                two_h: self.two_h,
                got: self.coeffs.len(),
                want,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(|_| JsonError::BadRational(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        FieldScalar::from_coeffs(self.two_h, coeffs)
            .map_err(|e| JsonError::Other(e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub i: u32,
    pub j: u32,
    pub c: FieldScalarJson,
}

pub type BiPolyJson = Vec<TermJson>;

pub fn encode_bipoly(p: &BiPoly) -> BiPolyJson {
    p.terms()
        .map(|(&(i, j), c)| TermJson {
            i,
            j,
            c: FieldScalarJson::encode(c),
        })
        .collect()
}

pub fn decode_bipoly(terms: &BiPolyJson, two_h: u32) -> Result<BiPoly, JsonError> {
    let mut p = BiPoly::zero(two_h);
    for t in terms {
        let c = t.c.decode()?;
        if c.two_h() != two_h {
            return Err(JsonError::WrongField {
                got: c.two_h(),
                want: two_h,
            });
        }
        p.add_term(t.i, t.j, c);
    }
    Ok(p)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RatFnJson {
    pub num: BiPolyJson,
    pub den_q1: u32,
    pub den_q2: u32,
}

impl RatFnJson {
    pub fn encode(r: &RatFn) -> Self {
        RatFnJson {
            num: encode_bipoly(r.num()),
            den_q1: r.den_q1(),
            den_q2: r.den_q2(),
        }
    }

    pub fn decode(&self, arr: &Arrangement) -> Result<RatFn, JsonError> {
        let num = decode_bipoly(&self.num, arr.two_h())?;
        Ok(RatFn::new(num, self.den_q1, self.den_q2, arr))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivationJson {
    pub c1: RatFnJson,
    pub c2: RatFnJson,
    pub pdeg: Option<i64>,
}

impl DerivationJson {
    pub fn encode(d: &Derivation, arr: &Arrangement) -> Self {
        DerivationJson {
            c1: RatFnJson::encode(d.c1()),
            c2: RatFnJson::encode(d.c2()),
            pdeg: d.pdeg(arr),
        }
    }

    pub fn decode(&self, arr: &Arrangement) -> Result<Derivation, JsonError> {
        Ok(Derivation::new(
            self.c1.decode(arr)?,
            self.c2.decode(arr)?,
        ))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub h: u32,
    pub a1: i64,
    pub a2: i64,
    pub case: String,
    pub basis: [DerivationJson; 2],
    pub exponents: [i64; 2],
    pub saito_scalar: FieldScalarJson,
    pub trace: Vec<String>,
    pub verified: bool,
}

impl CertificateJson {
    pub fn encode(c: &BasisCertificate, arr: &Arrangement) -> Self {
        CertificateJson {
            h: c.h,
            a1: c.a1,
            a2: c.a2,
            case: c.case.clone(),
            basis: [
                DerivationJson::encode(&c.basis.0, arr),
                DerivationJson::encode(&c.basis.1, arr),
            ],
            exponents: [c.exponents.0, c.exponents.1],
            saito_scalar: FieldScalarJson::encode(&c.saito_scalar),
            trace: c.trace.clone(),
            verified: c.verified,
        }
    }

    pub fn decode_basis(
        &self,
        arr: &Arrangement,
    ) -> Result<(Derivation, Derivation), JsonError> {
        if self.h != arr.h() {
            return Err(JsonError::Other(format!(
                "certificate is for h = {}, arrangement has h = {}",
                self.h,
                arr.h()
            )));
        }
        Ok((self.basis[0].decode(arr)?, self.basis[1].decode(arr)?))
    }
}

/// Input accepted by `verify`: either a full certificate or a bare
/// `{"basis": [...]}` pair.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum BasisInput {
    Certificate(CertificateJson),
    Pair { basis: [DerivationJson; 2] },
}

impl BasisInput {
    pub fn decode_basis(
        &self,
        arr: &Arrangement,
    ) -> Result<(Derivation, Derivation), JsonError> {
        match self {
            BasisInput::Certificate(c) => c.decode_basis(arr),
            BasisInput::Pair { basis } => {
                Ok((basis[0].decode(arr)?, basis[1].decode(arr)?))
            }
        }
    }
}
