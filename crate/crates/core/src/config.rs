//! JSON instance documents.
//!
//! ```json
//! {"Q": [[0, 1]], "A": [1],
//!  "rhs": {"kind": "binary_form", "coeffs_desc": [1, 0, 1]},
//!  "flags": {"assume_irreducible": false, "allow_zero_n": false}}
//! ```
//!
//! `Q` polynomials list coefficients constant first; binary forms list
//! `a_d, …, a_0`. Integers may be JSON numbers or decimal strings.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::instance::{EquationInstance, InstanceFlags, Rhs};
use crate::poly::{BinaryForm, FormFactorization, IntegerPolynomial};
use crate::serde_big::Big;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    #[serde(rename = "Q")]
    pub q: Vec<Vec<Big>>,
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    pub rhs: RhsConfig,
    #[serde(default)]
    pub flags: FlagsConfig,
}

/// Right-hand side fields; which ones are required depends on `kind`.
/// Kept flat (not an internally tagged enum) so that errors inside the
/// coefficient lists keep their field path.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhsConfig {
    pub kind: RhsKind,
    pub coeffs_desc: Option<Vec<Big>>,
    pub factors: Option<Vec<FactorConfig>>,
    pub composite: Option<Vec<Big>>,
    pub coeffs: Option<Vec<Big>>,
    pub d: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhsKind {
    BinaryForm,
    FactoredForm,
    Univariate,
    MonomialPower,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorConfig {
    pub coeffs_desc: Vec<Big>,
    #[serde(default = "one")]
    pub exponent: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsConfig {
    #[serde(default)]
    pub assume_irreducible: bool,
    #[serde(default)]
    pub allow_zero_n: bool,
}

fn unwrap(v: Vec<Big>) -> Vec<num_bigint::BigInt> {
    v.into_iter().map(|b| b.0).collect()
}

fn form(v: Vec<Big>, what: &str) -> Result<BinaryForm> {
    BinaryForm::new(unwrap(v)).map_err(|e| Error::Config(format!("{what}: {e}")))
}

impl InstanceConfig {
    pub fn into_instance(self) -> Result<EquationInstance> {
        let q = self
            .q
            .into_iter()
            .map(|c| IntegerPolynomial::new(unwrap(c)))
            .collect();
        let rhs = self.rhs.into_rhs()?;
        let flags = InstanceFlags {
            assume_irreducible: self.flags.assume_irreducible,
            allow_zero_n: self.flags.allow_zero_n,
        };
        EquationInstance::new(q, self.a, rhs, flags).map_err(|e| match e {
            Error::InvalidInput(m) => Error::Config(m),
            other => other,
        })
    }
}

impl RhsConfig {
    fn into_rhs(self) -> Result<Rhs> {
        fn need<T>(v: Option<T>, field: &str, kind: &str) -> Result<T> {
            v.ok_or_else(|| Error::Config(format!("rhs.{field} is required for kind {kind}")))
        }
        let allowed: &[&str] = match self.kind {
            RhsKind::BinaryForm => &["coeffs_desc"],
            RhsKind::FactoredForm => &["factors", "composite"],
            RhsKind::Univariate => &["coeffs"],
            RhsKind::MonomialPower => &["d"],
        };
        let present = [
            ("coeffs_desc", self.coeffs_desc.is_some()),
            ("factors", self.factors.is_some()),
            ("composite", self.composite.is_some()),
            ("coeffs", self.coeffs.is_some()),
            ("d", self.d.is_some()),
        ];
        if let Some((field, _)) = present.iter().find(|(f, p)| *p && !allowed.contains(f)) {
            return Err(Error::Config(format!(
                "rhs.{field} does not apply to kind {:?}",
                self.kind
            )));
        }
        Ok(match self.kind {
            RhsKind::BinaryForm => Rhs::BinaryForm {
                form: form(
                    need(self.coeffs_desc, "coeffs_desc", "binary_form")?,
                    "rhs.coeffs_desc",
                )?,
            },
            RhsKind::FactoredForm => {
                let factors = need(self.factors, "factors", "factored_form")?
                    .into_iter()
                    .enumerate()
                    .map(|(j, f)| {
                        Ok((
                            form(f.coeffs_desc, &format!("rhs.factors[{j}]"))?,
                            f.exponent,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let declared = self
                    .composite
                    .map(|c| form(c, "rhs.composite"))
                    .transpose()?;
                Rhs::FactoredForm {
                    factorization: FormFactorization::new(factors, declared)
                        .map_err(|e| Error::Config(format!("rhs.factors: {e}")))?,
                }
            }
            RhsKind::Univariate => Rhs::Univariate {
                poly: IntegerPolynomial::new(unwrap(need(self.coeffs, "coeffs", "univariate")?)),
            },
            RhsKind::MonomialPower => Rhs::MonomialPower {
                d: need(self.d, "d", "monomial_power")?,
            },
        })
    }
}

/// Parses and validates an instance document. Syntax and type errors carry
/// the line, column and field path.
pub fn parse_instance(doc: &str) -> Result<EquationInstance> {
    let de = &mut serde_json::Deserializer::from_str(doc);
    let cfg: InstanceConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Config(format!(
            "line {} column {} at `{path}`: {inner}",
            inner.line(),
            inner.column()
        ))
    })?;
    cfg.into_instance()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn univariate_square() {
        let inst =
            parse_instance(r#"{"Q":[[0,1]],"A":[1],"rhs":{"kind":"univariate","coeffs":[0,0,1]}}"#)
                .unwrap();
        assert_eq!(inst.q_polys()[0], IntegerPolynomial::from_i64(&[0, 1]));
        assert_eq!(inst.bases(), &[1]);
        assert_eq!(
            inst.rhs(),
            &Rhs::Univariate {
                poly: IntegerPolynomial::from_i64(&[0, 0, 1])
            }
        );
    }

    #[test]
    fn length_mismatch() {
        let err =
            parse_instance(r#"{"Q":[[0,1]],"A":[1,2],"rhs":{"kind":"monomial_power","d":2}}"#)
                .unwrap_err();
        assert!(err.to_string().contains("Q/A length mismatch"), "{err}");
    }

    #[test]
    fn zero_root_gate_is_deferred() {
        let inst = parse_instance(
            r#"{"Q":[[1,1]],"A":[1],"rhs":{"kind":"binary_form","coeffs_desc":[1,0,1]}}"#,
        )
        .unwrap();
        assert!(inst
            .require_zero_roots()
            .unwrap_err()
            .to_string()
            .contains("l₁ = 0"));
    }

    #[test]
    fn diagnostics_name_field_and_line() {
        let doc = "{\"Q\":[[0,1]],\n\"A\":[1],\n\"rhs\":{\"kind\":\"binary_form\",\"coeffs_desc\":[1,\"x\",1]}}";
        let msg = parse_instance(doc).unwrap_err().to_string();
        assert!(msg.contains("line 3"), "{msg}");
        assert!(msg.contains("rhs.coeffs_desc[1]"), "{msg}");
        let msg = parse_instance("{\"Q\":[[0,1]],").unwrap_err().to_string();
        assert!(msg.contains("line 1"), "{msg}");
        assert!(
            parse_instance(r#"{"Q":[],"A":[],"rhs":{"kind":"monomial_power","d":2}}"#).is_err()
        );
        assert!(
            parse_instance(r#"{"Q":[[0,0]],"A":[1],"rhs":{"kind":"monomial_power","d":2}}"#)
                .unwrap_err()
                .to_string()
                .contains("zero polynomial")
        );
    }

    #[test]
    fn factored_form_with_big_coefficients() {
        let doc = r#"{"Q":[["0","1"]],"A":[3],
            "rhs":{"kind":"factored_form",
                   "factors":[{"coeffs_desc":[1,0,"100000000000000000000000001"],"exponent":2}]},
            "flags":{"assume_irreducible":true}}"#;
        let inst = parse_instance(doc).unwrap();
        assert!(inst.flags().assume_irreducible);
        let ff = inst.rhs().form_factorization().unwrap();
        assert_eq!(ff.valuation_threshold(), 4);
        assert_eq!(
            ff.factors()[0].0.a_0(),
            &"100000000000000000000000001".parse::<BigInt>().unwrap()
        );
        let bad = r#"{"Q":[[0,1]],"A":[1],"rhs":{"kind":"factored_form",
            "factors":[{"coeffs_desc":[1,0,1]}],"composite":[1,0,2]}}"#;
        assert!(parse_instance(bad).is_err());
        let wrong = r#"{"Q":[[0,1]],"A":[1],"rhs":{"kind":"univariate","coeffs_desc":[1,0,1]}}"#;
        assert!(parse_instance(wrong)
            .unwrap_err()
            .to_string()
            .contains("coeffs_desc"));
    }
}
