use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};
use superq::catalog::{construct_over, FamilySpec};
use superq::exactla::NumberField;
use superq::liealg::{algebra_from_json, field_from_json, field_json, SuperLieAlgebra};

use crate::{CliError, CliResult};

/// Environment variable holding the session minimal polynomial.
pub const FIELD_ENV: &str = "SUPERQ_FIELD";

/// Coefficients low to high, either comma separated (`"2,0,1"` is `t^2 + 2`)
/// or as a JSON list.
pub fn parse_field(s: &str) -> CliResult<Arc<NumberField>> {
    let t = s.trim();
    let list: Value = if t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| superq::Error::Parse(format!("{FIELD_ENV}: {e}")))?
    } else {
        Value::Array(t.split(',').map(|c| Value::String(c.trim().to_string())).collect())
    };
    Ok(field_from_json(Some(&json!({ "minpoly": list })))?)
}

pub fn session_field() -> CliResult<Arc<NumberField>> {
    match std::env::var(FIELD_ENV) {
        Ok(s) if !s.trim().is_empty() => parse_field(&s),
        _ => Ok(NumberField::rationals()),
    }
}

/// Where an algebra came from.
#[derive(Clone, Debug, serde::Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Source {
    Spec(String),
    File(String),
}

/// A family spec (`osp(3,2)`, JSON spec object) or a path to an algebra JSON file.
pub fn load_algebra(arg: &str, field: &Arc<NumberField>) -> CliResult<(SuperLieAlgebra, Source)> {
    let path = Path::new(arg);
    if arg.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{arg}: {e}")))?;
        let mut v: Value = serde_json::from_str(&text).map_err(|e| superq::Error::Parse(format!("{arg}: {e}")))?;
        if v.get("field").is_none() && v.is_object() {
            v["field"] = field_json(field);
        }
        let g = if v.get("family").is_some() {
            let spec = FamilySpec::parse(&v.to_string())?;
            construct_over(&spec, field)?
        } else {
            algebra_from_json(&v)?
        };
        return Ok((g, Source::File(arg.to_string())));
    }
    let spec = FamilySpec::parse(arg)?;
    Ok((construct_over(&spec, field)?, Source::Spec(spec.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_strings() {
        assert!(parse_field("0,1").unwrap().is_rational());
        assert_eq!(parse_field("2,0,1").unwrap().degree(), 2);
        assert_eq!(parse_field("[\"-2\", \"0\", \"1\"]").unwrap().degree(), 2);
        assert!(parse_field("-1,0,1").is_err());
        assert!(parse_field("x").is_err());
    }

    #[test]
    fn specs_load() {
        let f = NumberField::rationals();
        let (g, src) = load_algebra("gl(2,1)", &f).unwrap();
        assert_eq!(g.dims(), (5, 4));
        assert!(matches!(src, Source::Spec(s) if s == "gl(2,1)"));
        assert!(load_algebra("nonsense(1)", &f).is_err());
    }
}
