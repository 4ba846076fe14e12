//! JSON and DOT import/export.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::interval::{fmt_q, PLJson, PLMap, Q};
use crate::order::FinPoset;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema { pointer: pointer.into(), message: message.into() }
}

pub fn poset_from_value(v: &Value) -> Result<FinPoset> {
    let obj = v.as_object().ok_or_else(|| schema("", "expected an object"))?;
    let n = obj
        .get("n")
        .ok_or_else(|| schema("/n", "missing"))?
        .as_u64()
        .ok_or_else(|| schema("/n", "expected a non-negative integer"))? as usize;
    let rows = obj
        .get("leq")
        .ok_or_else(|| schema("/leq", "missing"))?
        .as_array()
        .ok_or_else(|| schema("/leq", "expected an array"))?;
    if rows.len() != n {
        return Err(schema("/leq", format!("expected {n} rows, found {}", rows.len())));
    }
    let mut leq = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| schema(format!("/leq/{i}"), "expected an array"))?;
        if row.len() != n {
            return Err(schema(format!("/leq/{i}"), format!("expected {n} entries, found {}", row.len())));
        }
        let mut r = Vec::with_capacity(n);
        for (j, e) in row.iter().enumerate() {
            r.push(e.as_bool().ok_or_else(|| schema(format!("/leq/{i}/{j}"), "expected a boolean"))?);
        }
        leq.push(r);
    }
    let p = FinPoset::from_matrix(&leq).map_err(|e| match e {
        Error::AxiomViolated { axiom, witness } => {
            let at = match witness.as_slice() {
                [i] => format!("/leq/{i}/{i}"),
                [i, j, ..] => format!("/leq/{i}/{j}"),
                _ => "/leq".into(),
            };
            schema(at, format!("{axiom} fails at {witness:?}"))
        }
        other => other,
    })?;
    match obj.get("labels") {
        None | Some(Value::Null) => Ok(p),
        Some(Value::Array(ls)) => {
            let labels = ls
                .iter()
                .enumerate()
                .map(|(i, l)| l.as_str().map(String::from).ok_or_else(|| schema(format!("/labels/{i}"), "expected a string")))
                .collect::<Result<Vec<_>>>()?;
            p.with_labels(labels).map_err(|e| schema("/labels", e.to_string()))
        }
        Some(_) => Err(schema("/labels", "expected an array")),
    }
}

pub fn poset_to_json(x: &FinPoset) -> PosetJson {
    PosetJson { n: x.len(), leq: x.matrix(), labels: x.labels().map(|l| l.to_vec()) }
}

pub fn poset_to_value(x: &FinPoset) -> Value {
    serde_json::to_value(poset_to_json(x)).expect("serializable")
}

pub fn poset_from_str(s: &str) -> Result<FinPoset> {
    let v: Value = serde_json::from_str(s).map_err(|e| schema("", e.to_string()))?;
    poset_from_value(&v)
}

pub fn poset_to_string(x: &FinPoset) -> String {
    serde_json::to_string(&poset_to_json(x)).expect("serializable")
}

/// Hasse diagram in DOT, edges pointing from lower to upper covers.
pub fn to_dot(x: &FinPoset) -> String {
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
    for i in 0..x.len() {
        s.push_str(&format!("  n{i} [label=\"{}\"];\n", x.label(i).replace('"', "\\\"")));
    }
    for (a, b) in x.covers() {
        s.push_str(&format!("  n{a} -> n{b};\n"));
    }
    s.push_str("}\n");
    s
}

pub fn read_value(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| schema("", format!("{}: {e}", path.display())))
}

pub fn read_poset(path: &Path) -> Result<FinPoset> {
    poset_from_value(&read_value(path)?)
}

pub fn pl_from_value(v: &Value) -> Result<PLMap> {
    let j: PLJson = serde_json::from_value(v.clone()).map_err(|e| schema("/pieces", e.to_string()))?;
    PLMap::from_json(&j)
}

pub fn pl_to_value(f: &PLMap) -> Value {
    serde_json::to_value(f.to_json()).expect("serializable")
}

/// A value table keyed by element label.
pub fn table_to_value(x: &FinPoset, t: &[Q]) -> Value {
    let mut m = serde_json::Map::new();
    for (i, v) in t.iter().enumerate() {
        m.insert(x.label(i), Value::String(fmt_q(v)));
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_round_trip() {
        let d = FinPoset::diamond();
        let s = poset_to_string(&d);
        let back = poset_from_str(&s).unwrap();
        assert_eq!(poset_to_string(&back), s);
        let l = d.with_labels(vec!["bot".into(), "a".into(), "b".into(), "top".into()]).unwrap();
        let s = poset_to_string(&l);
        assert_eq!(poset_to_string(&poset_from_str(&s).unwrap()), s);
    }

    #[test]
    fn dot_has_reduced_edges() {
        let dot = to_dot(&FinPoset::diamond());
        assert_eq!(dot.matches("->").count(), 4);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert!(dot.contains("rankdir=BT"));
    }

    #[test]
    fn malformed_matrix_reports_location() {
        let e = poset_from_str(r#"{"n":2,"leq":[[true,false],[false]]}"#).unwrap_err();
        assert!(matches!(e, Error::Schema { ref pointer, .. } if pointer == "/leq/1"), "{e:?}");
        let e = poset_from_str(r#"{"n":2,"leq":[[true,1],[false,true]]}"#).unwrap_err();
        assert!(matches!(e, Error::Schema { ref pointer, .. } if pointer == "/leq/0/1"), "{e:?}");
        let e = poset_from_str(r#"{"n":2,"leq":[[true,true],[true,true]]}"#).unwrap_err();
        assert!(matches!(e, Error::Schema { .. }), "{e:?}");
    }
}
