//! Algebra configuration files: a JSON document describing the base
//! field, coefficient ring, the two maps and default truncation bounds.
//!
//! Schema (unknown fields are rejected):
//!
//! ```json
//! {
//!   "base_field": { "kind": "Q" | "Fp", "p": 7 },
//!   "ring": { "kind": "field" | "poly" | "quotient" | "ratfunc" | "sequences",
//!             "var": "y", "modulus": "y^2", "domain": true },
//!   "sigma": { "kind": "identity" | "q_scale" | "seq_shift" | "eval0", "q": "2" },
//!   "delta": { "kind": "zero" | "d_dy" | "jackson" | "euler" | "inner"
//!                      | "quotient_d_dy" | "monomial_shift", "a": "y" },
//!   "bounds": { "x_degree": 4, "coeff_degree": 4, "samples": 8 }
//! }
//! ```
//!
//! Compatibility table (enforced by the map constructors):
//!
//! | ring      | sigma                     | delta                                        |
//! |-----------|---------------------------|----------------------------------------------|
//! | field     | identity                  | zero, inner                                  |
//! | poly      | identity, q_scale, eval0  | zero, d_dy, euler, jackson, monomial_shift, inner |
//! | quotient  | identity                  | zero, quotient_d_dy, inner                   |
//! | ratfunc   | identity, q_scale         | zero, d_dy, jackson, inner                   |
//! | sequences | identity, seq_shift       | zero, inner                                  |
//!
//! `jackson` takes its q from the paired `q_scale`; `monomial_shift`
//! requires `eval0`.

use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use ore_algebra::maps::{DerivDescriptor, DerivKind, EndoDescriptor, EndoKind};
use ore_algebra::ore::{AlgebraSpec, Degree};
use ore_algebra::ring::RingDescriptor;
use ore_algebra::scalar::{BaseField, Scalar};
use ore_algebra::structure::TruncationBound;

use crate::parse::parse_ore_expr;

/// A configuration error; the CLI maps these to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    pub base_field: BaseFieldConfig,
    pub ring: RingConfig,
    pub sigma: SigmaConfig,
    pub delta: DeltaConfig,
    #[serde(default)]
    pub bounds: Option<BoundsConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseFieldConfig {
    pub kind: String,
    #[serde(default)]
    pub p: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    pub kind: String,
    #[serde(default)]
    pub var: Option<String>,
    #[serde(default)]
    pub modulus: Option<String>,
    #[serde(default)]
    pub domain: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaConfig {
    pub kind: String,
    #[serde(default)]
    pub q: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaConfig {
    pub kind: String,
    #[serde(default)]
    pub a: Option<String>,
}

#[derive(Debug, Deserialize, Clone, Copy)]
#[serde(deny_unknown_fields)]
pub struct BoundsConfig {
    #[serde(default = "default_degree")]
    pub x_degree: usize,
    #[serde(default = "default_degree")]
    pub coeff_degree: usize,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_degree() -> usize {
    4
}

fn default_samples() -> usize {
    8
}

impl AlgebraConfig {
    pub fn from_json(text: &str) -> Result<AlgebraConfig, ConfigError> {
        serde_json::from_str(text).map_err(|e| err(e.to_string()))
    }

    /// Builds the validated spec and the default bounds.
    pub fn build(&self) -> Result<(Arc<AlgebraSpec>, TruncationBound), ConfigError> {
        let base = match self.base_field.kind.as_str() {
            "Q" => BaseField::Q,
            "Fp" => {
                let p = self.base_field.p.ok_or_else(|| err("Fp needs a prime p"))?;
                BaseField::fp(p).map_err(|e| err(e.to_string()))?
            }
            other => return Err(err(format!("unknown base field kind {other:?}"))),
        };
        let var = self.ring.var.clone().unwrap_or_else(|| "y".to_string());
        let ring = match self.ring.kind.as_str() {
            "field" => RingDescriptor::base_field(base),
            "poly" => RingDescriptor::polynomial(base, &var),
            "quotient" => {
                let text = self
                    .ring
                    .modulus
                    .as_ref()
                    .ok_or_else(|| err("quotient rings need a modulus"))?;
                let modulus = parse_coeff_poly(text, base, &var)?;
                RingDescriptor::quotient(base, &var, modulus, self.ring.domain)
                    .map_err(|e| err(e.to_string()))?
            }
            "ratfunc" => RingDescriptor::rational_functions(base, &var),
            "sequences" => {
                if base != BaseField::Q {
                    return Err(err("the sequence ring is only available over Q"));
                }
                RingDescriptor::sequences()
            }
            other => return Err(err(format!("unknown ring kind {other:?}"))),
        };

        let sigma_kind = match self.sigma.kind.as_str() {
            "identity" => EndoKind::Identity,
            "q_scale" => {
                let q_text = self.sigma.q.as_ref().ok_or_else(|| err("q_scale needs q"))?;
                EndoKind::QScale {
                    q: Scalar::parse(&base, q_text).map_err(|e| err(e.to_string()))?,
                }
            }
            "seq_shift" => EndoKind::SeqShift,
            "eval0" => EndoKind::Eval0,
            other => return Err(err(format!("unknown sigma kind {other:?}"))),
        };
        let sigma = EndoDescriptor::new(&ring, sigma_kind).map_err(|e| err(e.to_string()))?;

        let delta_kind = match self.delta.kind.as_str() {
            "zero" => DerivKind::Zero,
            "d_dy" => DerivKind::FormalDeriv,
            "jackson" => {
                let EndoKind::QScale { q } = sigma.kind() else {
                    return Err(err("jackson requires sigma to be q_scale"));
                };
                DerivKind::Jackson { q: q.clone() }
            }
            "euler" => DerivKind::Euler,
            "inner" => {
                let a_text = self
                    .delta
                    .a
                    .as_ref()
                    .ok_or_else(|| err("inner derivations need the element a"))?;
                // Parse a through a throwaway spec with trivial maps.
                let id = EndoDescriptor::identity(&ring);
                let zero = DerivDescriptor::zero(&ring, &id).map_err(|e| err(e.to_string()))?;
                let tmp = AlgebraSpec::new(&ring, id, zero).map_err(|e| err(e.to_string()))?;
                let a = crate::parse::parse_ring_element(a_text, &tmp)
                    .map_err(|e| err(e.to_string()))?;
                DerivKind::Inner { a }
            }
            "quotient_d_dy" => DerivKind::QuotientFormalDeriv,
            "monomial_shift" => DerivKind::MonomialShift,
            other => return Err(err(format!("unknown delta kind {other:?}"))),
        };
        let delta = DerivDescriptor::new(&ring, delta_kind, &sigma).map_err(|e| err(e.to_string()))?;

        let spec = AlgebraSpec::new(&ring, sigma, delta).map_err(|e| err(e.to_string()))?;
        let bounds = self.bounds.unwrap_or(BoundsConfig {
            x_degree: default_degree(),
            coeff_degree: default_degree(),
            samples: default_samples(),
        });
        let bound = TruncationBound::new(bounds.x_degree, bounds.coeff_degree)
            .with_samples(bounds.samples);
        Ok((spec, bound))
    }
}

/// Parses a plain polynomial in the ring variable (no `x`) into dense
/// coefficients over the base field.
fn parse_coeff_poly(text: &str, base: BaseField, var: &str) -> Result<Vec<Scalar>, ConfigError> {
    let ring = RingDescriptor::polynomial(base, var);
    let id = EndoDescriptor::identity(&ring);
    let zero = DerivDescriptor::zero(&ring, &id).map_err(|e| err(e.to_string()))?;
    let tmp = AlgebraSpec::new(&ring, id, zero).map_err(|e| err(e.to_string()))?;
    let p = parse_ore_expr(text, &tmp).map_err(|e| err(e.to_string()))?;
    if p.degree() > Degree::Of(0) {
        return Err(err("the modulus must not involve x"));
    }
    Ok(p.coeff(0).poly_coeffs().expect("polynomial payload").to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_the_weyl_algebra() {
        let cfg = AlgebraConfig::from_json(
            r#"{
                "base_field": {"kind": "Q"},
                "ring": {"kind": "poly", "var": "y"},
                "sigma": {"kind": "identity"},
                "delta": {"kind": "d_dy"}
            }"#,
        )
        .unwrap();
        let (spec, bound) = cfg.build().unwrap();
        assert!(spec.is_differential());
        assert_eq!(bound.x_degree, 4);
    }

    #[test]
    fn builds_the_nilpotent_quotient() {
        let cfg = AlgebraConfig::from_json(
            r#"{
                "base_field": {"kind": "Fp", "p": 2},
                "ring": {"kind": "quotient", "var": "y", "modulus": "y^2"},
                "sigma": {"kind": "identity"},
                "delta": {"kind": "quotient_d_dy"},
                "bounds": {"x_degree": 4, "coeff_degree": 1, "samples": 4}
            }"#,
        )
        .unwrap();
        let (spec, bound) = cfg.build().unwrap();
        assert_eq!(spec.ring().cardinality(), Some(4));
        assert_eq!(bound.coeff_degree, 1);
    }

    #[test]
    fn rejects_bad_configs() {
        // Unknown field.
        assert!(AlgebraConfig::from_json(r#"{"base_field": {"kind": "Q"}, "oops": 1}"#).is_err());
        // Non-prime modulus.
        let cfg = AlgebraConfig::from_json(
            r#"{
                "base_field": {"kind": "Fp", "p": 6},
                "ring": {"kind": "poly"},
                "sigma": {"kind": "identity"},
                "delta": {"kind": "d_dy"}
            }"#,
        )
        .unwrap();
        assert!(cfg.build().is_err());
        // Incompatible pairing: jackson without q_scale.
        let cfg = AlgebraConfig::from_json(
            r#"{
                "base_field": {"kind": "Q"},
                "ring": {"kind": "poly"},
                "sigma": {"kind": "identity"},
                "delta": {"kind": "jackson"}
            }"#,
        )
        .unwrap();
        assert!(cfg.build().is_err());
    }
}
