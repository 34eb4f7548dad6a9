//! Polygon file formats.
//!
//! Text: one vertex per line as `x y` (blank lines and `#` comments ignored).
//! JSON: `{"vertices": [[x, y], ...]}`.

use serde::{Deserialize, Serialize};

use super::polygon::{validate_polygon, IntPolygon};
use super::vector::IntVector;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct PolygonJson {
    vertices: Vec<[i64; 2]>,
}

/// Parses either format, choosing JSON when the first non-blank character is `{`.
pub fn parse_polygon(src: &str) -> Result<IntPolygon> {
    if src.trim_start().starts_with('{') {
        parse_polygon_json(src)
    } else {
        parse_polygon_text(src)
    }
}

pub fn parse_polygon_text(src: &str) -> Result<IntPolygon> {
    let mut vs = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected two integers, found {:?}", line),
            });
        }
        let parse = |s: &str| {
            s.parse::<i64>().map_err(|e| Error::Parse {
                line: idx + 1,
                message: format!("{s:?}: {e}"),
            })
        };
        vs.push(IntVector::new(parse(fields[0])?, parse(fields[1])?));
    }
    validate_polygon(&vs).map(|o| o.polygon)
}

pub fn parse_polygon_json(src: &str) -> Result<IntPolygon> {
    let parsed: PolygonJson = serde_json::from_str(src).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let vs: Vec<IntVector> = parsed
        .vertices
        .iter()
        .map(|&[x, y]| IntVector::new(x, y))
        .collect();
    validate_polygon(&vs).map(|o| o.polygon)
}

pub fn polygon_to_json(p: &IntPolygon) -> serde_json::Value {
    serde_json::json!({
        "vertices": p.vertices().iter().map(|v| [v.x, v.y]).collect::<Vec<_>>()
    })
}
