//! Result formatting shared by `solve` and `oracle`.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use terrain_core::geom::Point;
use terrain_core::scalar::Scalar;
use terrain_core::terrain::GroundedTriangle;

/// `v` rounded to 12 significant digits.
pub fn approx(v: &Scalar) -> f64 {
    let f = v.to_f64();
    if !f.is_finite() || f == 0.0 {
        return f;
    }
    format!("{f:.11e}").parse().unwrap_or(f)
}

fn approx_json(v: &Scalar) -> Value {
    serde_json::Number::from_f64(approx(v)).map_or(Value::Null, Value::Number)
}

fn point_json(p: &Point) -> Value {
    json!([p.x.to_string(), p.y.to_string()])
}

fn point_approx_json(p: &Point) -> Value {
    json!([approx_json(&p.x), approx_json(&p.y)])
}

/// A solved triangle in input coordinates, ready to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub triangle: GroundedTriangle,
    pub case: &'static str,
    pub n: usize,
    /// Wall-clock phases in milliseconds; empty unless requested.
    pub timings_ms: Vec<(&'static str, u128)>,
}

impl Outcome {
    /// Corners in the order apex, left foot, right foot.
    fn corners(&self) -> [&Point; 3] {
        [&self.triangle.apex, &self.triangle.left_foot, &self.triangle.right_foot]
    }

    pub fn to_json(&self) -> Value {
        let area = &self.triangle.area;
        let timings: Map<String, Value> =
            self.timings_ms.iter().map(|&(k, v)| (k.to_string(), json!(v as u64))).collect();
        json!({
            "area": {
                "num": area.numer().to_string(),
                "den": area.denom().to_string(),
                "approx": approx_json(area),
            },
            "triangle": self.corners().map(point_json),
            "triangle_approx": self.corners().map(point_approx_json),
            "case": self.case,
            "n": self.n,
            "timings_ms": timings,
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values are serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let t = &self.triangle;
        let mut out = String::new();
        let _ = writeln!(out, "area       {} (~{})", t.area, approx(&t.area));
        let _ = writeln!(out, "case       {}", self.case);
        let _ = writeln!(out, "apex       ({}, {})", t.apex.x, t.apex.y);
        let _ = writeln!(out, "left foot  ({}, {})", t.left_foot.x, t.left_foot.y);
        let _ = writeln!(out, "right foot ({}, {})", t.right_foot.x, t.right_foot.y);
        let _ = writeln!(out, "n          {}", self.n);
        for (k, v) in &self.timings_ms {
            let _ = writeln!(out, "time {k:<6}{v} ms");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use terrain_core::fixtures;

    #[test]
    fn twelve_digits() {
        assert_eq!(approx(&Scalar::ratio(1, 3)), 0.333333333333);
        assert_eq!(approx(&Scalar::ratio(2, 3)), 0.666666666667);
        assert_eq!(approx(&Scalar::from_int(25)), 25.0);
        assert_eq!(approx(&Scalar::zero()), 0.0);
    }

    #[test]
    fn json_shape() {
        let tri = fixtures::t1().as_triangle().unwrap();
        let o = Outcome { triangle: tri, case: "whole_terrain", n: 3, timings_ms: Vec::new() };
        let v = o.to_json();
        assert_eq!(v["area"]["num"], "25");
        assert_eq!(v["area"]["den"], "1");
        assert_eq!(v["area"]["approx"], 25.0);
        assert_eq!(v["triangle"][0], json!(["5", "5"]));
        assert_eq!(v["triangle_approx"][2], json!([10.0, 0.0]));
        assert_eq!(v["case"], "whole_terrain");
        assert_eq!(v["n"], 3);
        assert_eq!(v["timings_ms"], json!({}));
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["area", "triangle", "triangle_approx", "case", "n", "timings_ms"]);
    }

    #[test]
    fn lowest_terms() {
        let mut tri = fixtures::t1().as_triangle().unwrap();
        tri.area = Scalar::ratio(50, 4);
        let o = Outcome { triangle: tri, case: "boundary_apex", n: 3, timings_ms: Vec::new() };
        let v = o.to_json();
        assert_eq!((v["area"]["num"].as_str(), v["area"]["den"].as_str()), (Some("25"), Some("2")));
    }
}
