//! JSON encodings shared by every command.

use derivimage_core::ederiv::CaseTag;
use derivimage_core::mathieu::{ExponentSet, MsClause, MsVerdict};
use derivimage_core::{ImageShape, Polynomial, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::text::{parse_rational, ParseError};

/// Rationals as `"p/q"` or `"n"`.
pub fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

/// `{"coeffs": [...]}`, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<String>,
}

impl From<&Polynomial> for PolyJson {
    fn from(p: &Polynomial) -> Self {
        PolyJson { coeffs: p.coeffs().iter().map(ToString::to_string).collect() }
    }
}

impl TryFrom<&PolyJson> for Polynomial {
    type Error = ParseError;

    fn try_from(p: &PolyJson) -> Result<Self, ParseError> {
        let coeffs = p.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<_, _>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

pub fn poly(p: &Polynomial) -> Value {
    serde_json::to_value(PolyJson::from(p)).expect("plain struct")
}

pub fn opt_poly(p: Option<&Polynomial>) -> Value {
    p.map_or(Value::Null, poly)
}

pub fn shape(s: &ImageShape) -> Value {
    match s {
        ImageShape::Zero => json!({ "kind": "zero" }),
        ImageShape::FullAlgebra => json!({ "kind": "full_algebra" }),
        ImageShape::PrincipalIdeal(g) => json!({ "kind": "principal_ideal", "generator": poly(g) }),
        ImageShape::RadicalZeroClaimed => json!({ "kind": "radical_zero_claimed" }),
        ImageShape::Unclassified => json!({ "kind": "unclassified" }),
    }
}

pub fn case_tag(t: &CaseTag) -> Value {
    match t {
        CaseTag::ConstW(c) => json!({ "kind": "const_w", "c": rat(c) }),
        CaseTag::Translation(c) => json!({ "kind": "translation", "c": rat(c) }),
        CaseTag::Scaling { q, shift } => {
            json!({ "kind": "scaling", "q": rat(q), "shift": rat(shift) })
        }
        CaseTag::HighDegree(d) => json!({ "kind": "high_degree", "d": d }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentSetJson {
    #[serde(default)]
    pub exceptional: Vec<u64>,
    pub modulus: u64,
    #[serde(default)]
    pub residues: Vec<u64>,
    #[serde(default)]
    pub threshold: u64,
}

impl ExponentSetJson {
    pub fn build(&self) -> derivimage_core::Result<ExponentSet> {
        ExponentSet::new(
            self.exceptional.iter().copied(),
            self.modulus,
            self.residues.iter().copied(),
            self.threshold,
        )
    }
}

impl From<&ExponentSet> for ExponentSetJson {
    fn from(s: &ExponentSet) -> Self {
        ExponentSetJson {
            exceptional: s.exceptional().iter().copied().collect(),
            modulus: s.modulus(),
            residues: s.residues().iter().copied().collect(),
            threshold: s.threshold(),
        }
    }
}

pub fn clause_name(c: MsClause) -> &'static str {
    match c {
        MsClause::Full => "full",
        MsClause::FiniteDimNoOne => "finite_dim_no_one",
        MsClause::CofiniteNoOne => "cofinite_no_one",
        MsClause::SparseNoRay => "sparse_no_ray",
        MsClause::NotMS => "not_ms",
    }
}

pub fn verdict(v: &MsVerdict) -> Value {
    json!({
        "clause": clause_name(v.clause),
        "is_ms": v.clause.is_ms(),
        "witness": v.witness,
    })
}

/// Indented `key: value` rendering; `{"coeffs": ...}` objects print as text.
pub fn render_pretty(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}

fn as_poly_text(v: &Value) -> Option<String> {
    let obj = v.as_object()?;
    if obj.len() != 1 || !obj.contains_key("coeffs") {
        return None;
    }
    let p: PolyJson = serde_json::from_value(v.clone()).ok()?;
    Polynomial::try_from(&p).ok().map(|p| p.to_string())
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => as_poly_text(v),
    }
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match scalar(val) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(val, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            if let Some(line) = items.iter().map(scalar).collect::<Option<Vec<_>>>() {
                out.push_str(&format!("{pad}[{}]\n", line.join(", ")));
                return;
            }
            for item in items {
                out.push_str(&format!("{pad}-\n"));
                render_into(item, indent + 1, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
