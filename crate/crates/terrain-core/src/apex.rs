//! The two maximizations: apices where an `L` and an `R` prolongation
//! cross, found node by node in the segment tree with row-maxima searches,
//! and apices on the upper boundary, found piece by piece.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::geom::Point;
use crate::hst::{Family, Hst, OrderError, SegInfo, Wall};
use crate::poly::{Poly, Sturm};
use crate::scalar::Scalar;
use crate::smawk::{row_maxima, MatrixEntry, MatrixOracle};
use crate::spt::{forward_prolongations, shortest_path_tree, ProlongationSet, Root, SpTree, SptError};
use crate::terrain::{x_at_y, GroundedTriangle, Terrain};

/// Where a candidate triangle came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Apex where segment `l` of `L` crosses segment `r` of `R`, found at tree node `node`.
    InteriorApex { node: usize, l: usize, r: usize },
    /// Apex on boundary piece `piece`.
    BoundaryApex { piece: usize },
    /// Apex at upper-chain vertex `vertex` (a chain index).
    VertexApex { vertex: usize },
    /// The terrain is itself a triangle.
    WholeTerrain,
}

impl Provenance {
    pub fn is_interior(&self) -> bool {
        matches!(self, Provenance::InteriorApex { .. })
    }

    /// Short label used in reports.
    pub fn case(&self) -> &'static str {
        match self {
            Provenance::InteriorApex { .. } => "interior_apex",
            Provenance::BoundaryApex { .. } | Provenance::VertexApex { .. } => "boundary_apex",
            Provenance::WholeTerrain => "whole_terrain",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub triangle: GroundedTriangle,
    pub provenance: Provenance,
}

impl Candidate {
    pub fn area(&self) -> &Scalar {
        &self.triangle.area
    }

    /// Larger area wins; on equal area a boundary apex beats an interior
    /// one, then the smaller apex `(x, y)` wins.
    pub fn beats(&self, other: &Candidate) -> bool {
        match self.triangle.area.cmp(&other.triangle.area) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => match (self.provenance.is_interior(), other.provenance.is_interior()) {
                (false, true) => true,
                (true, false) => false,
                _ => self.triangle.apex < other.triangle.apex,
            },
        }
    }
}

fn keep_best(best: &mut Option<Candidate>, cand: Candidate) {
    if best.as_ref().is_none_or(|b| cand.beats(b)) {
        *best = Some(cand);
    }
}

/// The triangle with apex `l ∩ r` and feet where their lines meet the base.
pub fn pair_triangle(l: &SegInfo, r: &SegInfo, base: &Scalar) -> GroundedTriangle {
    let x = &(&r.intercept - &l.intercept) / &(&l.slope - &r.slope);
    let y = l.y_at(&x);
    GroundedTriangle::new(
        Point::new(x, y),
        Point::new(l.foot_x.clone(), base.clone()),
        Point::new(r.foot_x.clone(), base.clone()),
    )
}

/// Area of [`pair_triangle`] without building the corners.
pub fn pair_area(l: &SegInfo, r: &SegInfo, base: &Scalar) -> Scalar {
    let x = &(&r.intercept - &l.intercept) / &(&l.slope - &r.slope);
    let h = &l.y_at(&x) - base;
    (&(&r.foot_x - &l.foot_x) * &h).half()
}

/// Which pair of lists at a node interact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Interaction {
    /// Standard `L` against standard `R`.
    StdStd,
    /// Hereditary `L` against standard `R`.
    LhVsR,
    /// Standard `L` against hereditary `R`.
    RhVsL,
}

impl Interaction {
    pub const ALL: [Interaction; 3] = [Interaction::StdStd, Interaction::LhVsR, Interaction::RhVsL];
}

/// The crossing structure of one interaction at one node.
///
/// Row `i` (an `L` segment) crosses exactly the columns `lo[i]..hi[i]`
/// (`R` segments) inside the node's strip. Rows are ordered top-down and
/// both ends of the range never move left going down the rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionContext {
    pub node: usize,
    pub kind: Interaction,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub lo: Vec<usize>,
    pub hi: Vec<usize>,
    /// `(l, r)` pairs meeting only at a shared reflex vertex on the node's
    /// wall, where the hereditary segment ends; these sit outside the matrix.
    pub shared: Vec<(usize, usize)>,
}

impl InteractionContext {
    /// Column of the last crossing in row `i`.
    pub fn psi(&self, i: usize) -> usize {
        self.hi[i] - 1
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() && self.shared.is_empty()
    }

    /// Every crossing pair `(l, r)` this context accounts for.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(move |(i, &l)| self.cols[self.lo[i]..self.hi[i]].iter().map(move |&r| (l, r)))
            .chain(self.shared.iter().copied())
    }
}

/// The implicit matrix of one context.
pub struct NodeMatrix<'a> {
    ctx: &'a InteractionContext,
    l: &'a [SegInfo],
    r: &'a [SegInfo],
    base: &'a Scalar,
}

impl MatrixOracle for NodeMatrix<'_> {
    type Entry = MatrixEntry;

    fn rows(&self) -> usize {
        self.ctx.rows.len()
    }

    fn cols(&self) -> usize {
        self.ctx.cols.len()
    }

    fn entry(&self, i: usize, j: usize) -> MatrixEntry {
        if j < self.ctx.lo[i] {
            MatrixEntry::PosEps(j)
        } else if j >= self.ctx.hi[i] {
            MatrixEntry::NegEps(j)
        } else {
            MatrixEntry::Area(pair_area(&self.l[self.ctx.rows[i]], &self.r[self.ctx.cols[j]], self.base))
        }
    }
}

/// Whether `r` counts as above `l` at a wall: crossing inside the strip
/// means above at the left wall and not above at the right wall.
fn above_at(wall_closed: bool, is_left: bool, ry: &Scalar, ly: &Scalar) -> bool {
    if wall_closed == is_left {
        ry >= ly
    } else {
        ry > ly
    }
}

/// For each row, the number of columns above it at the wall. Both lists
/// are top-down at the wall, so the counts never decrease.
fn count_above(rows_y: &[Scalar], cols_y: &[Scalar], wall: &Wall, is_left: bool) -> Vec<usize> {
    let mut k = 0;
    rows_y
        .iter()
        .map(|ly| {
            while k < cols_y.len() && above_at(wall.closed, is_left, &cols_y[k], ly) {
                k += 1;
            }
            k
        })
        .collect()
}

/// Everything needed to scan the segment tree for interior apices.
pub struct InteriorSearch<'a> {
    pub hst: &'a Hst,
    pub base: Scalar,
    parent: Vec<Option<usize>>,
    /// `L` segments by their reflex vertex (left end), `R` by theirs (right end).
    l_at: BTreeMap<&'a Point, usize>,
    r_at: BTreeMap<&'a Point, usize>,
}

/// Statistics of an interior search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InteriorStats {
    pub matrix_evals: usize,
    pub contexts: usize,
}

impl<'a> InteriorSearch<'a> {
    pub fn new(t: &Terrain, hst: &'a Hst) -> Self {
        let mut parent = vec![None; hst.nodes.len()];
        for (v, node) in hst.nodes.iter().enumerate() {
            if let Some((a, b)) = node.children {
                parent[a] = Some(v);
                parent[b] = Some(v);
            }
        }
        let l_at = hst.l.iter().enumerate().map(|(i, s)| (&s.left, i)).collect();
        let r_at = hst.r.iter().enumerate().map(|(i, s)| (&s.right, i)).collect();
        InteriorSearch { hst, base: t.base_y().clone(), parent, l_at, r_at }
    }

    fn covers(&self, fam: Family, id: usize, v: usize) -> bool {
        let s = &self.hst.segments(fam)[id];
        let (lo, hi) = self.hst.atoms.leaf_range(&s.left.x, &s.right.x);
        let node = &self.hst.nodes[v];
        lo <= node.lo && node.hi <= hi
    }

    /// Whether the segment is in the standard list of node `v`.
    fn standard_at(&self, fam: Family, id: usize, v: usize) -> bool {
        self.covers(fam, id, v) && self.parent[v].is_none_or(|p| !self.covers(fam, id, p))
    }

    pub fn make_context(&self, v: usize, kind: Interaction) -> InteractionContext {
        let node = &self.hst.nodes[v];
        let (l, r) = (&self.hst.l, &self.hst.r);
        let (lw, rw) = (&node.left_wall, &node.right_wall);
        let ys = |segs: &[SegInfo], ids: &[usize], x: &Scalar| -> Vec<Scalar> {
            ids.iter().map(|&i| segs[i].y_at(x)).collect()
        };
        let mut ctx = InteractionContext {
            node: v,
            kind,
            rows: Vec::new(),
            cols: Vec::new(),
            lo: Vec::new(),
            hi: Vec::new(),
            shared: Vec::new(),
        };
        let keep = |ctx: &mut InteractionContext, row: usize, lo: usize, hi: usize| {
            if lo < hi {
                ctx.rows.push(row);
                ctx.lo.push(lo);
                ctx.hi.push(hi);
            }
        };
        match kind {
            Interaction::StdStd => {
                let a = count_above(&ys(l, &node.l_std, &lw.x), &ys(r, &node.r_std, &lw.x), lw, true);
                let b = count_above(&ys(l, &node.l_std, &rw.x), &ys(r, &node.r_std, &rw.x), rw, false);
                for (i, &row) in node.l_std.iter().enumerate() {
                    keep(&mut ctx, row, b[i], a[i]);
                }
                ctx.cols = node.r_std.clone();
            }
            Interaction::RhVsL => {
                // Only hereditary segments reaching the right wall can cross a
                // full-width `l` inside the strip; one ending earlier is above
                // every `l` there unless it ends on that `l`'s reflex vertex.
                let (cols, ended): (Vec<usize>, Vec<usize>) = node.r_her.iter().partition(|&&j| r[j].right.x >= rw.x);
                let b = count_above(&ys(l, &node.l_std, &rw.x), &ys(r, &cols, &rw.x), rw, false);
                for (i, &row) in node.l_std.iter().enumerate() {
                    keep(&mut ctx, row, b[i], cols.len());
                }
                ctx.cols = cols;
                for j in ended {
                    let q = &r[j].right;
                    if let Some(&i) = self.l_at.get(q) {
                        if node.contains_x(&q.x) && self.standard_at(Family::L, i, v) {
                            ctx.shared.push((i, j));
                        }
                    }
                }
            }
            Interaction::LhVsR => {
                let (rows, ended): (Vec<usize>, Vec<usize>) = node.l_her.iter().partition(|&&i| l[i].left.x <= lw.x);
                let a = count_above(&ys(l, &rows, &lw.x), &ys(r, &node.r_std, &lw.x), lw, true);
                for (i, &row) in rows.iter().enumerate() {
                    keep(&mut ctx, row, 0, a[i]);
                }
                ctx.cols = node.r_std.clone();
                for i in ended {
                    let q = &l[i].left;
                    if let Some(&j) = self.r_at.get(q) {
                        if node.contains_x(&q.x) && self.standard_at(Family::R, j, v) {
                            ctx.shared.push((i, j));
                        }
                    }
                }
            }
        }
        ctx
    }

    pub fn matrix_for<'c>(&'c self, ctx: &'c InteractionContext) -> NodeMatrix<'c> {
        NodeMatrix { ctx, l: &self.hst.l, r: &self.hst.r, base: &self.base }
    }

    /// The best crossing charged to node `v` over all three interactions.
    pub fn best_at_node(&self, v: usize, stats: &mut InteriorStats) -> Option<Candidate> {
        let mut best = None;
        for kind in Interaction::ALL {
            let ctx = self.make_context(v, kind);
            if ctx.is_empty() {
                continue;
            }
            stats.contexts += 1;
            let m = self.matrix_for(&ctx);
            debug_assert!(ctx.rows.len() > 6 || ctx.cols.len() > 6 || crate::smawk::is_totally_monotone(&m));
            let (argmax, evals) = row_maxima(&m);
            stats.matrix_evals += evals;
            let pairs = ctx.rows.iter().zip(&argmax).map(|(&i, &j)| (i, ctx.cols[j]));
            for (i, j) in pairs.chain(ctx.shared.iter().copied()) {
                let triangle = pair_triangle(&self.hst.l[i], &self.hst.r[j], &self.base);
                keep_best(
                    &mut best,
                    Candidate { triangle, provenance: Provenance::InteriorApex { node: v, l: i, r: j } },
                );
            }
        }
        best
    }

    /// All crossing pairs charged to node `v`. For tests and diagnostics.
    pub fn charged_pairs(&self, v: usize) -> Vec<(usize, usize)> {
        Interaction::ALL.iter().flat_map(|&k| self.make_context(v, k).pairs().collect::<Vec<_>>()).collect()
    }

    pub fn best_interior_apex(&self) -> (Option<Candidate>, InteriorStats) {
        let mut stats = InteriorStats::default();
        let mut best = None;
        for v in 0..self.hst.nodes.len() {
            if let Some(c) = self.best_at_node(v, &mut stats) {
                keep_best(&mut best, c);
            }
        }
        (best, stats)
    }
}

/// A stretch of one upper edge on which both tangent vertices are fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPiece {
    /// Chain edge `edge..edge + 1`.
    pub edge: usize,
    pub x0: Scalar,
    pub x1: Scalar,
    /// Chain indices of the vertices the left and right sides pass through.
    pub w_l: usize,
    pub w_r: usize,
}

/// Splits every upper edge at the far endpoints of the prolongations that
/// land on it. Crossing such a point swaps the tangent vertex on that side
/// between the prolongation's two tree vertices.
pub fn boundary_pieces(
    t: &Terrain,
    tree_l: &SpTree,
    tree_r: &SpTree,
    l: &ProlongationSet,
    r: &ProlongationSet,
) -> Vec<BoundaryPiece> {
    let chain = t.chain();
    let n = chain.len();
    let mut l_hits: Vec<Vec<(&Scalar, usize, usize)>> = vec![Vec::new(); n - 1];
    let mut r_hits: Vec<Vec<(&Scalar, usize, usize)>> = vec![Vec::new(); n - 1];
    for (hits, set) in [(&mut l_hits, l), (&mut r_hits, r)] {
        for p in &set.items {
            hits[p.hit_edge].push((&p.hit().x, p.origin.0, p.origin.1));
        }
    }
    let mut pieces = Vec::new();
    for k in 0..n - 1 {
        // Left tangents, from the right end leftwards: (x where it starts to hold, vertex).
        let lh = &mut l_hits[k];
        lh.sort();
        let mut left_tan = Vec::with_capacity(lh.len() + 1);
        let mut w = tree_l.parent[k + 1].expect("only the root lacks a parent");
        for &(x, a, q) in lh.iter().rev() {
            debug_assert_eq!(w, a, "left tangent switches at a prolongation's far end");
            left_tan.push((x, w));
            w = q;
        }
        left_tan.push((&chain[k].x, w));
        left_tan.reverse();
        // Right tangents, from the left end rightwards.
        let rh = &mut r_hits[k];
        rh.sort();
        let mut right_tan = Vec::with_capacity(rh.len() + 1);
        let mut w = tree_r.parent[k].expect("only the root lacks a parent");
        right_tan.push((&chain[k].x, w));
        for &(x, a, q) in rh.iter() {
            debug_assert_eq!(w, a, "right tangent switches at a prolongation's far end");
            w = q;
            right_tan.push((x, w));
        }
        let mut cuts: Vec<&Scalar> = left_tan.iter().chain(&right_tan).map(|&(x, _)| x).collect();
        cuts.push(&chain[k + 1].x);
        cuts.sort();
        cuts.dedup();
        let (mut li, mut ri) = (0, 0);
        for win in cuts.windows(2) {
            while li + 1 < left_tan.len() && left_tan[li + 1].0 <= win[0] {
                li += 1;
            }
            while ri + 1 < right_tan.len() && right_tan[ri + 1].0 <= win[0] {
                ri += 1;
            }
            pieces.push(BoundaryPiece {
                edge: k,
                x0: win[0].clone(),
                x1: win[1].clone(),
                w_l: left_tan[li].1,
                w_r: right_tan[ri].1,
            });
        }
    }
    pieces
}

/// The grounded triangle with apex `p` whose sides pass through `w_l` and `w_r`.
fn triangle_through(t: &Terrain, p: &Point, w_l: &Point, w_r: &Point) -> Option<GroundedTriangle> {
    let b = t.base_y();
    if &p.y <= b || p.x == w_l.x || p.x == w_r.x {
        return None;
    }
    let xl = x_at_y(p, w_l, b);
    let xr = x_at_y(p, w_r, b);
    Some(GroundedTriangle::new(p.clone(), Point::new(xl, b.clone()), Point::new(xr, b.clone())))
}

/// Numerator of the derivative of the area along the piece, as a
/// polynomial in the apex's `x`. Degree at most four.
pub fn area_derivative_numerator(t: &Terrain, piece: &BoundaryPiece) -> Poly {
    let chain = t.chain();
    let (a, e) = (&chain[piece.edge], &chain[piece.edge + 1]);
    let b = t.base_y();
    let beta = &(&e.y - &a.y) / &(&e.x - &a.x);
    // Height of the apex above the base: h(x) = h0 + beta x.
    let h = Poly::linear(&(&a.y - &(&beta * &a.x)) - b, beta);
    // Foot of the line through the apex and w: (xw h - g x) / (h - g).
    let foot = |w: &Point| {
        let g = &w.y - b;
        let num = h.scale(&w.x).sub(&Poly::linear(Scalar::zero(), g.clone()));
        let den = h.sub(&Poly::constant(g));
        (num, den)
    };
    let (nl, dl) = foot(&chain[piece.w_l]);
    let (nr, dr) = foot(&chain[piece.w_r]);
    let p = h.mul(&nr.mul(&dl).sub(&nl.mul(&dr)));
    let q = dl.mul(&dr);
    p.derivative().mul(&q).sub(&p.mul(&q.derivative()))
}

fn point_on_edge(a: &Point, e: &Point, x: &Scalar) -> Point {
    if x == &a.x {
        a.clone()
    } else if x == &e.x {
        e.clone()
    } else {
        a.lerp(e, &(&(x - &a.x) / &(&e.x - &a.x)))
    }
}

/// Foot of the side through tangent vertex `w` for an apex `p` on the
/// piece. When `w` ends the carrier edge the side runs along that edge for
/// every apex, which also gives the limit at `p = w`; a `w` on the base is
/// its own foot.
fn foot_on_piece(t: &Terrain, piece: &BoundaryPiece, w: usize, p: &Point) -> Scalar {
    let chain = t.chain();
    if &chain[w].y == t.base_y() {
        chain[w].x.clone()
    } else if w == piece.edge || w == piece.edge + 1 {
        x_at_y(&chain[piece.edge], &chain[piece.edge + 1], t.base_y())
    } else {
        x_at_y(p, &chain[w], t.base_y())
    }
}

/// The exact candidates at the two ends of a piece, and an upper bound on
/// the area anywhere on it. Along a piece the height is linear and each
/// foot is a monotone linear-fractional function, so the extremes of all
/// three at the ends bound the area.
fn piece_ends(t: &Terrain, piece: &BoundaryPiece, id: usize) -> (Option<Candidate>, Scalar) {
    let chain = t.chain();
    let (a, e) = (&chain[piece.edge], &chain[piece.edge + 1]);
    let (w_l, w_r) = (&chain[piece.w_l], &chain[piece.w_r]);
    let mut best = None;
    let (mut h_max, mut xl_min, mut xr_max): (Option<Scalar>, Option<Scalar>, Option<Scalar>) = (None, None, None);
    for x in [&piece.x0, &piece.x1] {
        let p = point_on_edge(a, e, x);
        if let Some(triangle) = triangle_through(t, &p, w_l, w_r) {
            keep_best(&mut best, Candidate { triangle, provenance: Provenance::BoundaryApex { piece: id } });
        }
        let h = &p.y - t.base_y();
        let xl = foot_on_piece(t, piece, piece.w_l, &p);
        let xr = foot_on_piece(t, piece, piece.w_r, &p);
        h_max = Some(h_max.map_or(h.clone(), |m| m.max(h)));
        xl_min = Some(xl_min.map_or(xl.clone(), |m| m.min(xl)));
        xr_max = Some(xr_max.map_or(xr.clone(), |m| m.max(xr)));
    }
    let (h, xl, xr) = (h_max.expect("two ends"), xl_min.expect("two ends"), xr_max.expect("two ends"));
    (best, (&h * &(&xr - &xl)).half())
}

/// Candidates at the critical points of the area strictly inside a piece.
/// Irrational critical points are approximated by a rational point within
/// `(x1 - x0) / 2^60` of them.
fn piece_critical_points(t: &Terrain, piece: &BoundaryPiece, id: usize) -> Option<Candidate> {
    if piece.x0 == piece.x1 {
        return None;
    }
    let num = area_derivative_numerator(t, piece);
    if num.is_zero() || num.descartes_bound(&piece.x0, &piece.x1) == 0 {
        return None;
    }
    let chain = t.chain();
    let (a, e) = (&chain[piece.edge], &chain[piece.edge + 1]);
    let width = &(&piece.x1 - &piece.x0) * &Scalar::ratio(1, 1 << 60);
    let mut best = None;
    for (lo, hi) in Sturm::new(&num).isolate(&piece.x0, &piece.x1, &width) {
        let x = if num.eval(&hi).is_zero() { hi } else { lo.midpoint(&hi) };
        if let Some(triangle) = triangle_through(t, &point_on_edge(a, e, &x), &chain[piece.w_l], &chain[piece.w_r]) {
            keep_best(&mut best, Candidate { triangle, provenance: Provenance::BoundaryApex { piece: id } });
        }
    }
    best
}

/// The best apex on one piece: its two ends and every critical point of
/// the area inside it.
pub fn best_apex_on_piece(t: &Terrain, piece: &BoundaryPiece, id: usize) -> Option<Candidate> {
    let (mut best, _) = piece_ends(t, piece, id);
    if let Some(c) = piece_critical_points(t, piece, id) {
        keep_best(&mut best, c);
    }
    best
}

/// Upper bound on the area of any apex on the piece.
pub fn piece_area_bound(t: &Terrain, piece: &BoundaryPiece) -> Scalar {
    piece_ends(t, piece, 0).1
}

/// Bisection levels before handing a sub-piece to exact root isolation.
const REFINE_DEPTH: u32 = 20;

/// Branch and bound over one piece: halves whose area bound cannot beat
/// `best` are dropped, and small survivors get an exact critical-point search.
fn refine_piece(t: &Terrain, piece: &BoundaryPiece, id: usize, best: &mut Option<Candidate>) {
    let mut todo = vec![(piece.x0.clone(), piece.x1.clone(), 0u32)];
    while let Some((x0, x1, depth)) = todo.pop() {
        let sub = BoundaryPiece { x0, x1, ..piece.clone() };
        let (c, bound) = piece_ends(t, &sub, id);
        if let Some(c) = c {
            keep_best(best, c);
        }
        if best.as_ref().is_some_and(|b| &bound <= b.area()) || sub.x0 == sub.x1 {
            continue;
        }
        if depth == REFINE_DEPTH {
            if let Some(c) = piece_critical_points(t, &sub, id) {
                keep_best(best, c);
            }
            continue;
        }
        let mid = sub.x0.midpoint(&sub.x1);
        todo.push((mid.clone(), sub.x1, depth + 1));
        todo.push((sub.x0, mid, depth + 1));
    }
}

/// The best triangle with its apex on the upper boundary: every piece and
/// every upper-chain vertex. Returns the number of pieces alongside.
///
/// All vertices and piece ends are evaluated first; critical points are
/// then sought only on pieces whose area bound beats the best so far.
pub fn best_boundary_apex(
    t: &Terrain,
    tree_l: &SpTree,
    tree_r: &SpTree,
    l: &ProlongationSet,
    r: &ProlongationSet,
) -> (Option<Candidate>, usize) {
    let chain = t.chain();
    let n = chain.len();
    let mut best = None;
    for c in 1..n - 1 {
        let w_l = &chain[tree_l.parent[c].expect("non-root")];
        let w_r = &chain[tree_r.parent[c].expect("non-root")];
        if let Some(triangle) = triangle_through(t, &chain[c], w_l, w_r) {
            keep_best(&mut best, Candidate { triangle, provenance: Provenance::VertexApex { vertex: c } });
        }
    }
    let pieces = boundary_pieces(t, tree_l, tree_r, l, r);
    let mut bounds = Vec::with_capacity(pieces.len());
    for (id, piece) in pieces.iter().enumerate() {
        let (c, bound) = piece_ends(t, piece, id);
        if let Some(c) = c {
            keep_best(&mut best, c);
        }
        bounds.push((bound, id));
    }
    // Most promising pieces first, so the bar rises quickly.
    bounds.sort_by(|a, b| b.cmp(a));
    for (bound, id) in bounds {
        if best.as_ref().is_some_and(|b: &Candidate| &bound <= b.area()) {
            break;
        }
        refine_piece(t, &pieces[id], id, &mut best);
    }
    (best, pieces.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    GeneralPosition(SptError),
    Order(OrderError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::GeneralPosition(e) => write!(f, "{e}"),
            SolveError::Order(e) => write!(f, "{e}"),
        }
    }
}

impl From<SptError> for SolveError {
    fn from(e: SptError) -> Self {
        SolveError::GeneralPosition(e)
    }
}

impl From<OrderError> for SolveError {
    fn from(e: OrderError) -> Self {
        SolveError::Order(e)
    }
}

/// Both shortest-path trees and both prolongation sets.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub tree_l: SpTree,
    pub tree_r: SpTree,
    pub l: ProlongationSet,
    pub r: ProlongationSet,
}

pub fn prepare(t: &Terrain) -> Result<Prepared, SolveError> {
    let tree_l = shortest_path_tree(t, Root::Left);
    let tree_r = shortest_path_tree(t, Root::Right);
    let l = forward_prolongations(t, &tree_l)?;
    let r = forward_prolongations(t, &tree_r)?;
    Ok(Prepared { tree_l, tree_r, l, r })
}

/// Work counters for one solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub n: usize,
    pub l_count: usize,
    pub r_count: usize,
    pub walk_steps: usize,
    pub hst_nodes: usize,
    pub list_size: usize,
    pub matrix_evals: usize,
    pub pieces: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// In the input's own coordinates.
    pub triangle: GroundedTriangle,
    pub provenance: Provenance,
    pub stats: SolveStats,
}

impl Solution {
    pub fn area(&self) -> &Scalar {
        &self.triangle.area
    }
}

/// The interior phase: builds the segment tree (skipped when `L` or `R`
/// is empty) and searches it.
pub fn interior_phase(t: &Terrain, prep: &Prepared, stats: &mut SolveStats) -> Result<Option<Candidate>, SolveError> {
    if prep.l.items.is_empty() || prep.r.items.is_empty() {
        return Ok(None);
    }
    let hst = Hst::new(&prep.l, &prep.r)?;
    stats.hst_nodes = hst.nodes.len();
    stats.list_size = hst.total_list_size();
    let (best, s) = InteriorSearch::new(t, &hst).best_interior_apex();
    stats.matrix_evals = s.matrix_evals;
    Ok(best)
}

/// Picks the winner and maps it back to the input's coordinates.
pub fn finish(t: &Terrain, candidates: impl IntoIterator<Item = Candidate>, stats: SolveStats) -> Solution {
    let mut best: Option<Candidate> = None;
    for c in candidates {
        keep_best(&mut best, c);
    }
    let best = best.expect("every terrain has a vertex apex");
    let shear = t.shear();
    Solution { triangle: best.triangle.map(|p| shear.invert(p)), provenance: best.provenance, stats }
}

/// A largest-area triangle inside the terrain.
pub fn solve(t: &Terrain) -> Result<Solution, SolveError> {
    let mut stats = SolveStats { n: t.n(), ..SolveStats::default() };
    if let Some(triangle) = t.as_triangle() {
        return Ok(finish(t, [Candidate { triangle, provenance: Provenance::WholeTerrain }], stats));
    }
    let prep = prepare(t)?;
    stats.l_count = prep.l.items.len();
    stats.r_count = prep.r.items.len();
    stats.walk_steps = prep.l.walk_steps + prep.r.walk_steps;
    let interior = interior_phase(t, &prep, &mut stats)?;
    let (boundary, pieces) = best_boundary_apex(t, &prep.tree_l, &prep.tree_r, &prep.l, &prep.r);
    stats.pieces = pieces;
    Ok(finish(t, interior.into_iter().chain(boundary), stats))
}
