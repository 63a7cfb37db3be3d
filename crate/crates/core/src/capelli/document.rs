//! JSON form of certificates.
//!
//! All integers are written as decimal strings. Objects are emitted with
//! sorted keys, so identical certificates serialize to identical bytes.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::{json, Map, Value};
use thiserror::Error;

use super::{reduce_to_integer, verify_certificate, Certificate, CertifiedFactor, Provenance, Witness};
use crate::polyring::IntPoly;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing or malformed field `{0}`")]
    Field(&'static str),
    #[error("not a decimal integer: {0:?}")]
    Integer(String),
    #[error("unknown provenance tag {0:?}")]
    Provenance(String),
    #[error("unknown witness kind {0:?}")]
    WitnessKind(String),
    #[error("{factors} factors but {tags} provenance tags")]
    ProvenanceLength { factors: usize, tags: usize },
}

/// A certificate together with the binomial it was produced for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateDocument {
    pub n: u32,
    pub a: BigRational,
    pub certificate: Certificate,
    pub witnesses: Vec<Witness>,
}

fn coeff_array(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

/// Tagged JSON record for a witness.
pub fn witness_to_json<T: fmt::Display>(w: &Witness<T>) -> Value {
    let mut record = Map::new();
    record.insert("kind".into(), Value::String(w.kind().into()));
    match w {
        Witness::PerfectPower { base, t } => {
            record.insert("base".into(), Value::String(base.to_string()));
            record.insert("t".into(), Value::String(t.to_string()));
        }
        Witness::SophieGermain { b } => {
            record.insert("b".into(), Value::String(b.to_string()));
        }
        Witness::Eisenstein { p } => {
            record.insert("p".into(), Value::String(p.to_string()));
        }
        Witness::SelmerParity { k, base } => {
            record.insert("k".into(), Value::String(k.to_string()));
            record.insert("base".into(), coeff_array(base));
        }
        Witness::UnitConstant | Witness::ZeroConstant => {}
    }
    Value::Object(record)
}

fn int(v: &Value, field: &'static str) -> Result<BigInt, DocumentError> {
    let s = v.as_str().ok_or(DocumentError::Field(field))?;
    s.parse().map_err(|_| DocumentError::Integer(s.to_string()))
}

fn small<T: std::str::FromStr>(v: &Value, field: &'static str) -> Result<T, DocumentError> {
    let s = v.as_str().ok_or(DocumentError::Field(field))?;
    s.parse().map_err(|_| DocumentError::Integer(s.to_string()))
}

fn poly(v: &Value, field: &'static str) -> Result<IntPoly, DocumentError> {
    let arr = v.as_array().ok_or(DocumentError::Field(field))?;
    Ok(IntPoly::new(arr.iter().map(|c| int(c, field)).collect::<Result<_, _>>()?))
}

fn get<'a>(obj: &'a Value, field: &'static str) -> Result<&'a Value, DocumentError> {
    obj.get(field).ok_or(DocumentError::Field(field))
}

fn witness_from_json(v: &Value) -> Result<Witness, DocumentError> {
    let kind = get(v, "kind")?.as_str().ok_or(DocumentError::Field("kind"))?;
    Ok(match kind {
        "perfect_power" => Witness::PerfectPower {
            base: int(get(v, "base")?, "base")?,
            t: small(get(v, "t")?, "t")?,
        },
        "sophie_germain" => Witness::SophieGermain { b: int(get(v, "b")?, "b")? },
        "eisenstein" => Witness::Eisenstein { p: int(get(v, "p")?, "p")? },
        "selmer_parity" => Witness::SelmerParity {
            k: small(get(v, "k")?, "k")?,
            base: poly(get(v, "base")?, "base")?,
        },
        "unit_constant" => Witness::UnitConstant,
        "zero_constant" => Witness::ZeroConstant,
        other => return Err(DocumentError::WitnessKind(other.to_string())),
    })
}

impl CertificateDocument {
    pub fn to_json(&self) -> Value {
        let cert = &self.certificate;
        json!({
            "n": self.n.to_string(),
            "a": {
                "num": self.a.numer().to_string(),
                "den": self.a.denom().to_string(),
            },
            "target": coeff_array(&cert.target),
            "factors": cert.polys().map(coeff_array).collect::<Vec<_>>(),
            "provenance": cert
                .factors
                .iter()
                .map(|f| Value::String(f.provenance.as_str().into()))
                .collect::<Vec<_>>(),
            "witnesses": self.witnesses.iter().map(witness_to_json).collect::<Vec<_>>(),
        })
    }

    /// Pretty-printed JSON with sorted keys and a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json_str(text: &str) -> Result<Self, DocumentError> {
        let doc: Value = serde_json::from_str(text)?;
        let n: u32 = small(get(&doc, "n")?, "n")?;
        let a_obj = get(&doc, "a")?;
        let num = int(get(a_obj, "num")?, "a.num")?;
        let den = int(get(a_obj, "den")?, "a.den")?;
        if !den.is_positive() {
            return Err(DocumentError::Field("a.den"));
        }
        let target = poly(get(&doc, "target")?, "target")?;
        let factors = get(&doc, "factors")?
            .as_array()
            .ok_or(DocumentError::Field("factors"))?
            .iter()
            .map(|f| poly(f, "factors"))
            .collect::<Result<Vec<_>, _>>()?;
        let tags = get(&doc, "provenance")?
            .as_array()
            .ok_or(DocumentError::Field("provenance"))?
            .iter()
            .map(|t| {
                let s = t.as_str().ok_or(DocumentError::Field("provenance"))?;
                Provenance::parse(s).ok_or_else(|| DocumentError::Provenance(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if tags.len() != factors.len() {
            return Err(DocumentError::ProvenanceLength {
                factors: factors.len(),
                tags: tags.len(),
            });
        }
        let witnesses = match doc.get("witnesses") {
            Some(Value::Array(ws)) => ws.iter().map(witness_from_json).collect::<Result<_, _>>()?,
            Some(_) => return Err(DocumentError::Field("witnesses")),
            None => Vec::new(),
        };
        Ok(CertificateDocument {
            n,
            a: BigRational::new(num, den),
            certificate: Certificate {
                target,
                factors: factors
                    .into_iter()
                    .zip(tags)
                    .map(|(poly, provenance)| CertifiedFactor { poly, provenance })
                    .collect(),
            },
            witnesses,
        })
    }

    /// Valid when the certificate verifies and its target is the
    /// integer-normalized binomial `x^n - A` for the recorded `n` and `a`.
    pub fn verify(&self) -> bool {
        let expected = IntPoly::binomial(self.n as usize, &reduce_to_integer(self.n, &self.a));
        self.certificate.target == expected && verify_certificate(&self.certificate)
    }

    pub fn is_integral(&self) -> bool {
        self.a.denom().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capelli::{decide, factor_once};

    fn sample() -> CertificateDocument {
        let a = BigInt::from(59049);
        let verdict = decide(25, &a).unwrap();
        CertificateDocument {
            n: 25,
            a: BigRational::from_integer(a.clone()),
            certificate: factor_once(25, &a, &verdict).unwrap(),
            witnesses: verdict.witnesses,
        }
    }

    #[test]
    fn round_trip_and_verify() {
        let doc = sample();
        let text = doc.to_json_string();
        let back = CertificateDocument::from_json_str(&text).unwrap();
        assert_eq!(back, doc);
        assert!(back.verify());
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn keys_are_sorted_and_integers_are_strings() {
        let text = sample().to_json_string();
        let positions: Vec<_> = ["\"a\"", "\"factors\"", "\"n\"", "\"provenance\"", "\"target\"", "\"witnesses\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(text.contains("\"n\": \"25\""));
        assert!(text.contains("\"-59049\""));
    }

    #[test]
    fn tampering_is_detected() {
        let mut doc = sample();
        doc.certificate.factors[1].poly = {
            let mut c = doc.certificate.factors[1].poly.coeffs().to_vec();
            c[0] += 1;
            IntPoly::new(c)
        };
        assert!(!doc.verify());

        let mut doc = sample();
        doc.n = 24;
        assert!(!doc.verify());
    }

    #[test]
    fn malformed_documents_are_errors() {
        assert!(CertificateDocument::from_json_str("{").is_err());
        assert!(CertificateDocument::from_json_str("{}").is_err());
        let text = sample().to_json_string().replace("\"geometric_sum\"", "\"magic\"");
        assert!(matches!(
            CertificateDocument::from_json_str(&text),
            Err(DocumentError::Provenance(_))
        ));
        let text = sample().to_json_string().replace("\"6561\"", "\"65x1\"");
        assert!(matches!(
            CertificateDocument::from_json_str(&text),
            Err(DocumentError::Integer(_))
        ));
    }
}
