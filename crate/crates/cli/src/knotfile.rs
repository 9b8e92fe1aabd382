//! JSON knot complex documents.
//!
//! ```json
//! {"generators": [{"name": "a", "gr_w": -1, "gr_z": "-1"}],
//!  "differential": [{"from": "a", "to": "b", "monomials": [[1, 0]]}]}
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use num_rational::Rational64;
use serde::Deserialize;
use surgery_triangle_core::knotfloer::{KnotArrow, KnotComplex, KnotError, KnotGenerator};

#[derive(Debug, thiserror::Error)]
pub enum KnotFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid knot document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid grading `{0}`")]
    Grading(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error(transparent)]
    Knot(#[from] KnotError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    generators: Vec<Generator>,
    differential: Vec<Arrow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Generator {
    name: String,
    gr_w: Grading,
    gr_z: Grading,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Arrow {
    from: String,
    to: String,
    monomials: Vec<[u32; 2]>,
}

/// An integer or a string `"n/d"`.
#[derive(Deserialize)]
#[serde(untagged)]
enum Grading {
    Int(i64),
    Text(String),
}

impl Grading {
    fn value(&self) -> Result<Rational64, KnotFileError> {
        match self {
            Grading::Int(v) => Ok(Rational64::from_integer(*v)),
            Grading::Text(s) => s.trim().parse().map_err(|_| KnotFileError::Grading(s.clone())),
        }
    }
}

pub fn parse_knot(text: &str) -> Result<KnotComplex, KnotFileError> {
    let doc: Document = serde_json::from_str(text)?;
    let mut index = BTreeMap::new();
    let mut generators = Vec::with_capacity(doc.generators.len());
    for (i, g) in doc.generators.iter().enumerate() {
        index.entry(g.name.as_str()).or_insert(i);
        generators.push(KnotGenerator { name: g.name.clone(), gr_w: g.gr_w.value()?, gr_z: g.gr_z.value()? });
    }
    let lookup = |name: &str| index.get(name).copied().ok_or_else(|| KnotFileError::UnknownGenerator(name.to_string()));
    let mut arrows = Vec::with_capacity(doc.differential.len());
    for a in &doc.differential {
        arrows.push(KnotArrow {
            from: lookup(&a.from)?,
            to: lookup(&a.to)?,
            monomials: a.monomials.iter().map(|&[w, z]| (w, z)).collect(),
        });
    }
    Ok(KnotComplex::new(generators, arrows)?)
}

pub fn read_knot(path: &Path) -> Result<KnotComplex, KnotFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| KnotFileError::Io { path: path.display().to_string(), source })?;
    parse_knot(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_document() {
        let k = parse_knot(
            r#"{"generators": [{"name": "a", "gr_w": -1, "gr_z": -1},
                               {"name": "b", "gr_w": 0, "gr_z": "-2"},
                               {"name": "c", "gr_w": "-2/1", "gr_z": 0}],
                "differential": [{"from": "a", "to": "b", "monomials": [[1, 0]]},
                                 {"from": "a", "to": "c", "monomials": [[0, 1]]}]}"#,
        )
        .unwrap();
        assert_eq!(k.generators().len(), 3);
        assert_eq!(k.arrows().len(), 2);
    }

    #[test]
    fn rejects_unknown_fields() {
        let r = parse_knot(r#"{"generators": [], "differential": [], "extra": 1}"#);
        assert!(matches!(r, Err(KnotFileError::Json(_))));
    }

    #[test]
    fn rejects_float_grading() {
        let r = parse_knot(r#"{"generators": [{"name": "a", "gr_w": 0.5, "gr_z": 0}], "differential": []}"#);
        assert!(r.is_err());
    }

    #[test]
    fn rejects_unknown_generator() {
        let r = parse_knot(
            r#"{"generators": [{"name": "a", "gr_w": 0, "gr_z": 0}],
                "differential": [{"from": "a", "to": "z", "monomials": [[0, 0]]}]}"#,
        );
        assert!(matches!(r, Err(KnotFileError::UnknownGenerator(n)) if n == "z"));
    }

    #[test]
    fn rejects_duplicate_names() {
        let r = parse_knot(
            r#"{"generators": [{"name": "a", "gr_w": 0, "gr_z": 0}, {"name": "a", "gr_w": 0, "gr_z": 0}],
                "differential": []}"#,
        );
        assert!(matches!(r, Err(KnotFileError::Knot(KnotError::DuplicateName(_)))));
    }
}
