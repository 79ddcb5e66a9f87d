//! The plain-text terrain file format.
//!
//! ```text
//! # comments start with '#'
//! 4
//! 0 0
//! 10 5
//! 8 9
//! 2 7
//! ```
//!
//! The first non-comment line holds the vertex count `n >= 3`; exactly `n`
//! lines of `x y` follow. Coordinates are decimal literals (or `p/q`
//! fractions) and are read exactly. Any counterclockwise rotation of a
//! valid terrain is accepted.

use std::fmt::{self, Write as _};

use terrain_core::geom::Point;
use terrain_core::scalar::Scalar;
use terrain_core::terrain::{Terrain, TerrainError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Malformed text; `line` is 1-based.
    Syntax { line: usize, message: String },
    /// Well-formed but not a terrain; carries the first violation.
    Validation(TerrainError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, message } => write!(f, "SyntaxError: line {line}: {message}"),
            ParseError::Validation(e) => write!(f, "ValidationError: {e}"),
        }
    }
}

impl std::error::Error for ParseError {}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Reads the vertex listing without checking that it forms a terrain.
pub fn parse_points(text: &str) -> Result<Vec<Point>, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, head) = lines.next().ok_or_else(|| syntax(1, "empty input, expected the vertex count"))?;
    let n: usize = head.parse().map_err(|_| syntax(line, format!("expected a vertex count, found {head:?}")))?;
    if n < 3 {
        return Err(syntax(line, format!("vertex count must be at least 3, got {n}")));
    }

    let mut pts = Vec::with_capacity(n);
    for (line, text) in lines {
        if pts.len() == n {
            return Err(syntax(line, format!("more than {n} vertex lines")));
        }
        let mut fields = text.split_whitespace();
        let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(syntax(line, format!("expected two coordinates, found {text:?}")));
        };
        let x: Scalar = x.parse().map_err(|e| syntax(line, format!("{e}")))?;
        let y: Scalar = y.parse().map_err(|e| syntax(line, format!("{e}")))?;
        pts.push(Point::new(x, y));
    }
    if pts.len() < n {
        return Err(syntax(text.lines().count().max(1), format!("expected {n} vertices, found {}", pts.len())));
    }
    Ok(pts)
}

/// Parses and validates a terrain, returning it in normal form.
pub fn parse_terrain(text: &str) -> Result<Terrain, ParseError> {
    let pts = parse_points(text)?;
    Terrain::from_points(pts).map_err(ParseError::Validation)
}

/// Parses a listing and normalizes it without validating, so that all
/// violations can be reported.
pub fn parse_unvalidated(text: &str) -> Result<Terrain, ParseError> {
    let pts = parse_points(text)?;
    Terrain::normalize(pts).map_err(ParseError::Validation)
}

/// Serializes a terrain in its original (unsheared) coordinates.
pub fn write_terrain(t: &Terrain, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "{}", t.n());
    for v in t.vertices() {
        let p = t.shear().invert(v);
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}
