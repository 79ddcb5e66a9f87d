//! SVG pictures of a terrain, its shortest-path trees, the prolongations
//! and the solution triangle.

use std::fmt::Write as _;

use terrain_core::apex::Prepared;
use terrain_core::geom::Point;
use terrain_core::spt::{ProlongationSet, SpTree};
use terrain_core::terrain::{GroundedTriangle, Terrain};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 20.0;

/// Which layers to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layers {
    pub terrain: bool,
    pub base: bool,
    pub trees: bool,
    pub l: bool,
    pub r: bool,
    pub backward: bool,
    pub triangle: bool,
}

impl Default for Layers {
    fn default() -> Self {
        Layers { terrain: true, base: true, trees: true, l: true, r: true, backward: true, triangle: true }
    }
}

/// Maps input coordinates onto the canvas, y pointing up. The axes are
/// scaled independently so tall, narrow terrains stay readable.
struct View {
    x0: f64,
    y0: f64,
    sx: f64,
    sy: f64,
}

impl View {
    fn fit(pts: &[(f64, f64)]) -> View {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let span = |a: f64, b: f64| if b > a { b - a } else { 1.0 };
        View { x0, y0, sx: (WIDTH - 2.0 * MARGIN) / span(x0, x1), sy: (HEIGHT - 2.0 * MARGIN) / span(y0, y1) }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (MARGIN + (x - self.x0) * self.sx, HEIGHT - MARGIN - (y - self.y0) * self.sy)
    }
}

/// Two decimals, without a negative zero.
fn num(v: f64) -> String {
    let s = format!("{:.2}", v);
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

struct Canvas<'a> {
    t: &'a Terrain,
    view: View,
    out: String,
}

impl Canvas<'_> {
    /// A normal-form point in screen coordinates.
    fn screen(&self, p: &Point) -> (f64, f64) {
        self.view.map(self.t.shear().invert(p).to_f64())
    }

    fn points_attr(&self, pts: &[&Point]) -> String {
        pts.iter()
            .map(|p| {
                let (x, y) = self.screen(p);
                format!("{},{}", num(x), num(y))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn line(&mut self, a: &Point, b: &Point) {
        let (x1, y1) = self.screen(a);
        let (x2, y2) = self.screen(b);
        let _ = writeln!(
            self.out,
            "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    }

    fn open(&mut self, id: &str, style: &str) {
        let _ = writeln!(self.out, "  <g id=\"{id}\" {style}>");
    }

    fn close(&mut self) {
        self.out.push_str("  </g>\n");
    }

    fn tree(&mut self, id: &str, tree: &SpTree, colour: &str) {
        self.open(id, &format!("stroke=\"{colour}\" stroke-width=\"1\" stroke-opacity=\"0.6\""));
        let chain = self.t.chain();
        for (p, q) in tree.edges() {
            self.line(&chain[p], &chain[q]);
        }
        self.close();
    }

    fn forward(&mut self, id: &str, set: &ProlongationSet, colour: &str) {
        self.open(id, &format!("stroke=\"{colour}\" stroke-width=\"1.5\""));
        for s in &set.items {
            self.line(s.q(), s.hit());
        }
        self.close();
    }
}

/// A standalone SVG document. `tri` is in the terrain's input coordinates.
/// The output depends only on the arguments.
pub fn render_svg(t: &Terrain, prep: Option<&Prepared>, tri: Option<&GroundedTriangle>, layers: Layers) -> String {
    let pts: Vec<(f64, f64)> = t.vertices().iter().map(|p| t.shear().invert(p).to_f64()).collect();
    let mut c = Canvas { t, view: View::fit(&pts), out: String::new() };
    let _ = writeln!(
        c.out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    c.out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    if layers.terrain {
        let verts: Vec<&Point> = t.vertices().iter().collect();
        let attr = c.points_attr(&verts);
        c.open("terrain", "fill=\"#e8e4d8\" stroke=\"black\" stroke-width=\"1.5\"");
        let _ = writeln!(c.out, "    <polygon points=\"{attr}\"/>");
        c.close();
    }
    if layers.base {
        c.open("base", "stroke=\"#444\" stroke-width=\"3\"");
        c.line(t.base_left(), t.base_right());
        c.close();
    }
    if let Some(prep) = prep {
        if layers.trees {
            c.tree("tree-l", &prep.tree_l, "#1f77b4");
            c.tree("tree-r", &prep.tree_r, "#d62728");
        }
        if layers.l {
            c.forward("prolongations-l", &prep.l, "#1f77b4");
        }
        if layers.r {
            c.forward("prolongations-r", &prep.r, "#d62728");
        }
        if layers.backward {
            c.open("backward", "stroke=\"#777\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
            for s in prep.l.items.iter().chain(&prep.r.items) {
                c.line(&s.base_foot, s.q());
            }
            c.close();
        }
    }
    if let (true, Some(tri)) = (layers.triangle, tri) {
        // `tri` is already in input coordinates; draw it without the shear.
        let attr = [&tri.apex, &tri.left_foot, &tri.right_foot]
            .iter()
            .map(|p| {
                let (x, y) = c.view.map(p.to_f64());
                format!("{},{}", num(x), num(y))
            })
            .collect::<Vec<_>>()
            .join(" ");
        c.open("triangle", "fill=\"#2ca02c\" fill-opacity=\"0.35\" stroke=\"#2ca02c\" stroke-width=\"1.5\"");
        let _ = writeln!(c.out, "    <polygon points=\"{attr}\"/>");
        c.close();
    }
    c.out.push_str("</svg>\n");
    c.out
}
