//! Run configuration: deformation selection (preset or custom polynomial
//! data), suite selection, index windows, and convention flags.

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::brackets::SuperPrefactor;
use crate::deformation::{preset, ArgTarget, Deformation, Tau};
use crate::error::{Error, Result};
use crate::poly::{Ctx, LaurentPoly, Mono};
use crate::scalar::Scalar;

/// One monomial of a config polynomial: an exact rational coefficient
/// ("a/b" or "a") and an exponent vector over the module's variables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub exponents: Vec<i32>,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Config(format!("bad integer `{t}` in coefficient")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den == BigInt::from(0) {
                return Err(Error::Config(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn poly_from_terms(ctx: Ctx, terms: &[TermRecord]) -> Result<LaurentPoly> {
    let arity = ctx.arity();
    let mut acc = LaurentPoly::zero(ctx);
    for t in terms {
        if t.exponents.len() > arity {
            return Err(Error::Config(format!(
                "exponent vector {:?} longer than the {arity} context variables",
                t.exponents
            )));
        }
        let mut e = [0i32; crate::poly::MAX_VARS];
        e[..t.exponents.len()].copy_from_slice(&t.exponents);
        let c = parse_rational(&t.coeff)?;
        acc = acc.add(&LaurentPoly::monomial(ctx, c, Mono(e)));
    }
    Ok(acc)
}

/// Custom deformation data: R over (x, y, p, q); phi and the optional tau
/// pair over (p, q).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CustomDeformation {
    #[serde(rename = "R_num")]
    pub r_num: Vec<TermRecord>,
    #[serde(rename = "R_den")]
    pub r_den: Vec<TermRecord>,
    pub phi_num: Vec<TermRecord>,
    pub phi_den: Vec<TermRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau1: Option<Vec<TermRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau2: Option<Vec<TermRecord>>,
    /// Which parameter each formal argument of R tracks: "p", "q" or "1".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_args: Option<[String; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub enum DeformationSpec {
    #[serde(rename = "preset")]
    Preset(String),
    #[serde(rename = "custom")]
    Custom(Box<CustomDeformation>),
}

impl Default for DeformationSpec {
    fn default() -> Self {
        DeformationSpec::Preset("jagannathan-srinivasa".to_string())
    }
}

fn pq_scalar(num: &[TermRecord], den: &[TermRecord]) -> Result<Scalar> {
    let n = poly_from_terms(Ctx::Pqc, num)?;
    let d = poly_from_terms(Ctx::Pqc, den)?;
    Scalar::new(n, d)
}

fn arg_target(s: &str) -> Result<ArgTarget> {
    match s {
        "p" => Ok(ArgTarget::P),
        "q" => Ok(ArgTarget::Q),
        "1" => Ok(ArgTarget::One),
        other => Err(Error::Config(format!(
            "R argument target must be \"p\", \"q\" or \"1\", got `{other}`"
        ))),
    }
}

impl DeformationSpec {
    pub fn build(&self) -> Result<Deformation> {
        match self {
            DeformationSpec::Preset(name) => preset(name),
            DeformationSpec::Custom(c) => {
                let r_num = poly_from_terms(Ctx::Def, &c.r_num)?;
                let r_den = poly_from_terms(Ctx::Def, &c.r_den)?;
                let phi = pq_scalar(&c.phi_num, &c.phi_den)?;
                let tau = match (&c.tau1, &c.tau2) {
                    (Some(t1), Some(t2)) => {
                        let tau1 = Scalar::from_poly(poly_from_terms(Ctx::Pqc, t1)?);
                        let tau2 = Scalar::from_poly(poly_from_terms(Ctx::Pqc, t2)?);
                        let diff = &tau1 - &tau2;
                        if diff.is_zero() {
                            return Err(Error::Config("custom tau pair has tau1 = tau2".into()));
                        }
                        Some(Tau {
                            scale: diff.inv()?,
                            tau1,
                            tau2,
                        })
                    }
                    (None, None) => None,
                    _ => {
                        return Err(Error::Config(
                            "custom tau factorization needs both tau1 and tau2".into(),
                        ))
                    }
                };
                let (xt, yt) = match &c.r_args {
                    Some([x, y]) => (arg_target(x)?, arg_target(y)?),
                    None => (ArgTarget::P, ArgTarget::Q),
                };
                Deformation::new("custom", r_num, r_den, xt, yt, phi, tau)
            }
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct WindowConfig {
    /// Index range for bracket grids; suites fall back to their own
    /// defaults ([-3, 3] binary, [-2, 2] n-ary) when unset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_min: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_max: Option<i64>,
    /// Basis window half-width for operator equality; default 8.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_window: Option<i64>,
}

impl WindowConfig {
    pub fn validate(&self) -> Result<()> {
        if let (Some(lo), Some(hi)) = (self.index_min, self.index_max) {
            if lo > hi {
                return Err(Error::Config(format!(
                    "empty index window [{lo}, {hi}]"
                )));
            }
        }
        if let Some(w) = self.basis_window {
            if w < 1 {
                return Err(Error::Config("basis window must be >= 1".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Flags {
    /// Prefactor denominator for the fermionic n-bracket:
    /// "negative-shift" ([-2S-1]/(2[-S-1]), the brute-force convention)
    /// or "positive-shift" ([-2S-1]/(2[S-1]), the closed-form one).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rnb2_prefactor_variant: Option<String>,
    /// Replacement twist phi as a rational function over (p, q).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_override: Option<PhiOverride>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhiOverride {
    pub num: Vec<TermRecord>,
    pub den: Vec<TermRecord>,
}

impl Flags {
    pub fn prefactor_variant(&self) -> Result<SuperPrefactor> {
        match self.rnb2_prefactor_variant.as_deref() {
            None | Some("negative-shift") => Ok(SuperPrefactor::NegativeShift),
            Some("positive-shift") => Ok(SuperPrefactor::PositiveShift),
            Some(other) => Err(Error::Config(format!(
                "unknown prefactor variant `{other}`; use \"negative-shift\" or \"positive-shift\""
            ))),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default)]
    pub deformation: DeformationSpec,
    /// Suite ids to run; empty means the full battery.
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default)]
    pub window: WindowConfig,
    #[serde(default)]
    pub flags: Flags,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.window.validate()?;
        cfg.flags.prefactor_variant()?;
        Ok(cfg)
    }

    pub fn build_deformation(&self) -> Result<Deformation> {
        let d = self.deformation.build()?;
        if let Some(over) = &self.flags.phi_override {
            let phi = pq_scalar(&over.num, &over.den)?;
            return d.with_phi(phi);
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_config_round_trip() {
        let cfg = RunConfig::from_json(r#"{ "deformation": { "preset": "arik-coon" } }"#).unwrap();
        let d = cfg.build_deformation().unwrap();
        assert_eq!(d.name(), "arik-coon");
    }

    #[test]
    fn custom_deformation_js_clone() {
        // (x - y)/(p - q) with tau = (p, q): a hand-rolled copy of the
        // two-parameter preset
        let text = r#"{
            "deformation": { "custom": {
                "R_num": [
                    { "coeff": "1", "exponents": [1, 0, 0, 0] },
                    { "coeff": "-1", "exponents": [0, 1, 0, 0] }
                ],
                "R_den": [
                    { "coeff": "1", "exponents": [0, 0, 1, 0] },
                    { "coeff": "-1", "exponents": [0, 0, 0, 1] }
                ],
                "phi_num": [ { "coeff": "1", "exponents": [1, 1] } ],
                "phi_den": [ { "coeff": "1", "exponents": [0, 0] } ],
                "tau1": [ { "coeff": "1", "exponents": [1, 0] } ],
                "tau2": [ { "coeff": "1", "exponents": [0, 1] } ]
            } }
        }"#;
        let cfg = RunConfig::from_json(text).unwrap();
        let d = cfg.build_deformation().unwrap();
        let js = crate::deformation::preset("jagannathan-srinivasa").unwrap();
        for n in -4..=4 {
            assert_eq!(
                d.bracket_number(n).unwrap(),
                js.bracket_number(n).unwrap()
            );
        }
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(RunConfig::from_json("{ not json").is_err());
        let bad_window = r#"{ "window": { "index_min": 3, "index_max": -3 } }"#;
        assert!(RunConfig::from_json(bad_window).is_err());
        let bad_flag = r#"{ "flags": { "rnb2_prefactor_variant": "sideways" } }"#;
        assert!(RunConfig::from_json(bad_flag).is_err());
        // a custom R that violates R(1,1) = 0 must be rejected at build
        let bad_r = r#"{ "deformation": { "custom": {
            "R_num": [ { "coeff": "1", "exponents": [0, 0, 0, 0] } ],
            "R_den": [ { "coeff": "1", "exponents": [0, 0, 0, 0] } ],
            "phi_num": [ { "coeff": "1", "exponents": [1, 1] } ],
            "phi_den": [ { "coeff": "1", "exponents": [0, 0] } ]
        } } }"#;
        let cfg = RunConfig::from_json(bad_r).unwrap();
        assert!(cfg.build_deformation().is_err());
    }
}
