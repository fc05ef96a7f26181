//! JSON document format for precubical sets.
//!
//! ```json
//! { "cells": { "0": ["1", "2"], "1": ["u"] },
//!   "dims": 1,
//!   "faces": { "u": { "0": ["1"], "1": ["2"] } } }
//! ```
//!
//! `dims` is the top dimension; `faces[c]["e"][i-1]` is `d^e_i c`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CellFaces, PrecubicalError, PrecubicalSet};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    cells: BTreeMap<String, Vec<String>>,
    dims: usize,
    #[serde(default)]
    faces: BTreeMap<String, FaceLists>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceLists {
    #[serde(rename = "0")]
    zero: Vec<String>,
    #[serde(rename = "1")]
    one: Vec<String>,
}

impl PrecubicalSet {
    /// Parses the JSON document format. Only the document shape is checked here; use
    /// [`validate`](Self::validate) for the precubical identities.
    pub fn from_json(text: &str) -> Result<Self, PrecubicalError> {
        let doc: Document = serde_json::from_str(text)?;
        let mut cells = vec![Vec::new(); doc.dims + 1];
        for (k, ids) in doc.cells {
            let n: usize = k.parse().map_err(|_| {
                PrecubicalError::Parse(serde::de::Error::custom(format!("dimension key `{k}` is not a number")))
            })?;
            if n > doc.dims {
                return Err(PrecubicalError::Parse(serde::de::Error::custom(format!(
                    "cells listed in dimension {n} above dims = {}",
                    doc.dims
                ))));
            }
            cells[n] = ids;
        }
        let faces = doc.faces.into_iter().map(|(k, f)| (k, CellFaces { zero: f.zero, one: f.one })).collect();
        Ok(PrecubicalSet::new(cells, faces))
    }

    /// Canonical pretty-printed JSON, with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let doc = Document {
            cells: self.cells.iter().enumerate().map(|(n, ids)| (n.to_string(), ids.clone())).collect(),
            dims: self.top_dim().unwrap_or(0),
            faces: self
                .faces
                .iter()
                .map(|(k, f)| (k.clone(), FaceLists { zero: f.zero.clone(), one: f.one.clone() }))
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precubical::{filled_square, hollow_cube, two_holes_left};

    #[test]
    fn round_trip_is_byte_identical() {
        for c in [filled_square(), two_holes_left(), hollow_cube()] {
            let text = c.to_json();
            let back = PrecubicalSet::from_json(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn rejects_unknown_fields_and_bad_dims() {
        assert!(PrecubicalSet::from_json(r#"{"cells":{},"dims":0,"extra":1}"#).is_err());
        assert!(PrecubicalSet::from_json(r#"{"cells":{"2":["x"]},"dims":1}"#).is_err());
        assert!(PrecubicalSet::from_json(r#"{"cells":{"x":["x"]},"dims":1}"#).is_err());
    }

    #[test]
    fn minimal_document() {
        let c = PrecubicalSet::from_json(r#"{"cells":{"0":["p"]},"dims":0}"#).unwrap();
        assert_eq!(c.vertices(), ["p".to_string()]);
        assert!(c.is_valid());
    }
}
