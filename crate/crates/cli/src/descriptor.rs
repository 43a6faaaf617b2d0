//! Representation descriptors: a TOML document naming a field, a
//! representation and a truncation depth.
//!
//! ```toml
//! [field]
//! p = 3
//! f = 1
//!
//! [rep]
//! class = "positive_sc"
//!
//! [rep.scp]
//! gamma1 = "1"
//! gamma2 = "pi"
//! depth = "1/2"
//! a_class = "pi^-1"
//! central = "+"
//!
//! [truncate]
//! max_depth = 4
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};
use sl2_branching::arith::{parse_rational, FieldParams, KElem, Rational, Sign, SquareClass, UnitClass};
use sl2_branching::grep::{
    make_depth_zero_sc, make_positive_sc, make_reducible_constituent, CharKx, CharT, FiniteCuspidal, GRep,
    UnitRestriction, Vertex,
};
use sl2_branching::tori::classify_torus;

/// A number written either bare or as a string (`4`, `"5/2"`, `"+"`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(i) => write!(f, "{i}"),
            Scalar::Text(s) => f.write_str(s),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        if r.is_integer() {
            Scalar::Int(r.to_integer())
        } else {
            Scalar::Text(r.to_string())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub f: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiSpec {
    pub depth: u32,
    /// `trivial`, `sgn`, or any other name for a generic restriction.
    pub unit_restriction: String,
    /// Square class of `λ_χ`: `1` or `eps`.
    pub lambda_val_class: String,
    pub central: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sgn_tau: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sc0Spec {
    pub vertex: u8,
    /// `sigma0+`, `sigma0-` or `generic`.
    pub sigma_kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central: Option<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScpSpec {
    pub gamma1: String,
    pub gamma2: String,
    pub depth: Scalar,
    pub a_class: String,
    pub central: Scalar,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    /// `principal_series`, `reducible_ps`, `depth_zero_sc` or `positive_sc`.
    pub class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<ChiSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sc0: Option<Sc0Spec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scp: Option<ScpSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncate {
    pub max_depth: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    pub field: FieldSpec,
    pub rep: RepSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncate: Option<Truncate>,
}

/// A schema or validation problem, phrased in terms of descriptor keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError(pub String);

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SchemaError {}

fn err(key: &str, why: impl fmt::Display) -> SchemaError {
    SchemaError(format!("{key}: {why}"))
}

pub fn parse_sign(key: &str, s: &Scalar) -> Result<Sign, SchemaError> {
    match s {
        Scalar::Int(1) => Ok(Sign::Plus),
        Scalar::Int(-1) => Ok(Sign::Minus),
        Scalar::Text(t) => match t.trim() {
            "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
            "-" | "-1" | "minus" => Ok(Sign::Minus),
            other => Err(err(key, format!("expected + or -, got {other:?}"))),
        },
        Scalar::Int(i) => Err(err(key, format!("expected 1 or -1, got {i}"))),
    }
}

pub fn parse_depth(key: &str, s: &Scalar) -> Result<Rational, SchemaError> {
    match s {
        Scalar::Int(i) => Ok(Rational::from(*i)),
        Scalar::Text(t) => parse_rational(t).ok_or_else(|| err(key, format!("malformed rational {t:?}"))),
    }
}

fn parse_kelem(key: &str, s: &str, fp: &FieldParams) -> Result<KElem, SchemaError> {
    KElem::parse_with(s, fp).map_err(|e| err(key, e))
}

fn parse_square_class(key: &str, s: &str, fp: &FieldParams) -> Result<SquareClass, SchemaError> {
    parse_kelem(key, s, fp)?.square_class().map_err(|e| err(key, e))
}

fn parse_unit_class(key: &str, s: &str, fp: &FieldParams) -> Result<UnitClass, SchemaError> {
    let e = parse_kelem(key, s, fp)?;
    match (e.valuation(), e.unit_class()) {
        (Some(0), Some(c)) => Ok(c),
        _ => Err(err(key, format!("{s:?} is not a unit"))),
    }
}

/// `"p,f"`
pub fn parse_field_flag(s: &str) -> Result<FieldSpec, SchemaError> {
    let mut parts = s.split(',').map(str::trim);
    let p = parts.next().and_then(|x| x.parse().ok());
    let f = parts.next().map(|x| x.parse().ok()).unwrap_or(Some(1));
    match (p, f, parts.next()) {
        (Some(p), Some(f), None) => Ok(FieldSpec { p, f }),
        _ => Err(err("--field", format!("expected p,f, got {s:?}"))),
    }
}

impl Descriptor {
    /// Parses TOML, or the JSON written by `--format json` (which embeds the
    /// descriptor under `descriptor`).
    pub fn parse(text: &str) -> Result<Descriptor, SchemaError> {
        if text.trim_start().starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(text).map_err(|e| SchemaError(format!("json: {e}")))?;
            let d = v.get("descriptor").ok_or_else(|| SchemaError("json: missing key \"descriptor\"".into()))?;
            return serde_json::from_value(d.clone()).map_err(|e| SchemaError(format!("descriptor: {e}")));
        }
        toml::from_str(text).map_err(|e| SchemaError(e.to_string().trim_end().to_string()))
    }

    pub fn field_params(&self) -> Result<FieldParams, SchemaError> {
        FieldParams::new(self.field.p, self.field.f).map_err(|e| err("field", e))
    }

    pub fn max_depth(&self) -> Result<Option<Rational>, SchemaError> {
        self.truncate.as_ref().map(|t| parse_depth("truncate.max_depth", &t.max_depth)).transpose()
    }

    pub fn to_grep(&self) -> Result<GRep, SchemaError> {
        let fp = self.field_params()?;
        let rep = &self.rep;
        let need = |present: bool, key: &str| {
            if present {
                Ok(())
            } else {
                Err(err(key, format!("required when rep.class = {:?}", rep.class)))
            }
        };
        match rep.class.as_str() {
            "principal_series" => {
                need(rep.chi.is_some(), "rep.chi")?;
                let c = rep.chi.as_ref().expect("checked");
                let central = parse_sign("rep.chi.central", &c.central)?;
                if let Some(tau) = &c.sgn_tau {
                    let tau = parse_square_class("rep.chi.sgn_tau", tau, &fp)?;
                    let chi = CharKx::sgn(tau, &fp).map_err(|e| err("rep.chi.sgn_tau", e))?;
                    if chi.central != central || c.depth != 0 {
                        return Err(err("rep.chi", format!("sgn_{tau} has depth 0 and central value {}", chi.central)));
                    }
                    return Ok(GRep::PrincipalSeries(chi));
                }
                let ur = match c.unit_restriction.as_str() {
                    "trivial" => UnitRestriction::Trivial,
                    "sgn" => UnitRestriction::Sgn,
                    other => UnitRestriction::Other(other.to_string()),
                };
                let lambda = parse_unit_class("rep.chi.lambda_val_class", &c.lambda_val_class, &fp)?;
                let label = c.label.clone().unwrap_or_else(|| "chi".into());
                let chi = CharKx::new(c.depth, ur, lambda, central, label, &fp).map_err(|e| err("rep.chi", e))?;
                Ok(GRep::PrincipalSeries(chi))
            }
            "reducible_ps" => {
                need(rep.tau.is_some(), "rep.tau")?;
                need(rep.sign.is_some(), "rep.sign")?;
                let tau = parse_square_class("rep.tau", rep.tau.as_deref().expect("checked"), &fp)?;
                let sign = parse_sign("rep.sign", rep.sign.as_ref().expect("checked"))?;
                make_reducible_constituent(tau, sign, &fp).map_err(|e| err("rep.tau", e))
            }
            "depth_zero_sc" => {
                need(rep.sc0.is_some(), "rep.sc0")?;
                let s = rep.sc0.as_ref().expect("checked");
                let vertex = Vertex::from_index(s.vertex).ok_or_else(|| err("rep.sc0.vertex", "expected 0 or 1"))?;
                let sigma = match s.sigma_kind.as_str() {
                    "sigma0+" => FiniteCuspidal::special(Sign::Plus, &fp),
                    "sigma0-" => FiniteCuspidal::special(Sign::Minus, &fp),
                    "generic" => {
                        let omega = s.omega.ok_or_else(|| err("rep.sc0.omega", "required for a generic cuspidal"))?;
                        FiniteCuspidal::generic(omega, &fp).map_err(|e| err("rep.sc0.omega", e))?
                    }
                    other => return Err(err("rep.sc0.sigma_kind", format!("expected sigma0+, sigma0- or generic, got {other:?}"))),
                };
                if let Some(c) = &s.central {
                    let c = parse_sign("rep.sc0.central", c)?;
                    if c != sigma.central {
                        return Err(err("rep.sc0.central", format!("{sigma} has central value {}", sigma.central)));
                    }
                }
                Ok(make_depth_zero_sc(vertex, sigma))
            }
            "positive_sc" => {
                need(rep.scp.is_some(), "rep.scp")?;
                let s = rep.scp.as_ref().expect("checked");
                let g1 = parse_kelem("rep.scp.gamma1", &s.gamma1, &fp)?;
                let g2 = parse_kelem("rep.scp.gamma2", &s.gamma2, &fp)?;
                let torus = classify_torus(&g1, &g2, &fp).map_err(|e| err("rep.scp.gamma1/gamma2", e))?;
                let phi = CharT {
                    torus,
                    depth: parse_depth("rep.scp.depth", &s.depth)?,
                    a_coeff: parse_kelem("rep.scp.a_class", &s.a_class, &fp)?,
                    central: parse_sign("rep.scp.central", &s.central)?,
                    label: s.label.clone().unwrap_or_else(|| "phi".into()),
                };
                make_positive_sc(&torus, phi).map_err(|e| err("rep.scp", e))
            }
            other => Err(err(
                "rep.class",
                format!("expected principal_series, reducible_ps, depth_zero_sc or positive_sc, got {other:?}"),
            )),
        }
    }
}
