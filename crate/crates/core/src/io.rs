//! JSON formats for polytopes and simplicial complexes, plus helpers that write
//! integers as decimal strings.

use num_bigint::BigInt;
use serde::Serializer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homology::SimplicialComplex;
use crate::polytope::SimplePolytope;

pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn ser_usizes<S: Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn ser_usize<S: Serializer>(v: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Reads a label that may be written as a JSON string or number.
fn label(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("expected a vertex label, got {other}"))),
    }
}

fn labels(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))?
        .iter()
        .map(label)
        .collect()
}

/// Reads an integer written as a JSON number or decimal string.
pub fn integer(v: &Value) -> Result<i64> {
    match v {
        Value::Number(n) => n.as_i64().ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

/// Parses `{"dim": n, "vertices": [...], "facets": [[...]]}`.
///
/// `vertices` is optional; when present it must list exactly the labels used by
/// the facets.
pub fn polytope_from_json(text: &str) -> Result<SimplePolytope> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let dim = integer(v.get("dim").ok_or_else(|| Error::Parse("missing \"dim\"".into()))?)?;
    let dim = usize::try_from(dim).map_err(|_| Error::Parse(format!("negative dimension {dim}")))?;
    let facets: Vec<Vec<String>> = v
        .get("facets")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"facets\" array".into()))?
        .iter()
        .map(|f| labels(f, "a facet"))
        .collect::<Result<_>>()?;
    let p = SimplePolytope::build(&facets, dim)?;
    if let Some(listed) = v.get("vertices") {
        let mut listed = labels(listed, "\"vertices\"")?;
        crate::polytope::sort_labels(&mut listed);
        listed.dedup();
        if listed != p.vertices() {
            return Err(Error::VertexMismatch(
                "\"vertices\" does not match the labels used by the facets".into(),
            ));
        }
    }
    Ok(p)
}

pub fn polytope_to_json(p: &SimplePolytope) -> Value {
    let facets: Vec<Vec<&String>> = p
        .facets()
        .iter()
        .map(|f| f.iter().map(|&v| &p.vertices()[v]).collect())
        .collect();
    json!({ "dim": p.dim(), "vertices": p.vertices(), "facets": facets })
}

/// Parses `{"vertices": [...], "maximal_simplices": [[...]]}` and takes the closure.
pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let vertices = labels(
        v.get("vertices")
            .ok_or_else(|| Error::Parse("missing \"vertices\"".into()))?,
        "\"vertices\"",
    )?;
    let maximal: Vec<Vec<String>> = v
        .get("maximal_simplices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"maximal_simplices\" array".into()))?
        .iter()
        .map(|s| labels(s, "a simplex"))
        .collect::<Result<_>>()?;
    SimplicialComplex::from_labelled(vertices, &maximal)
}

pub fn complex_to_json(k: &SimplicialComplex) -> Value {
    let maximal: Vec<Vec<String>> = k.maximal_simplices().iter().map(|s| k.simplex_labels(s)).collect();
    json!({ "vertices": k.labels(), "maximal_simplices": maximal })
}
