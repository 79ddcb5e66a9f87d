//! The terrain polygon in horizontal-base normal form.
//!
//! Vertices are stored counterclockwise with vertex 0 the left base vertex,
//! vertex 1 the right base vertex and vertices `2..n` the upper chain in
//! strictly decreasing `x`. Most algorithms walk the upper boundary left to
//! right instead; [`Terrain::chain`] exposes that order, where chain index 0
//! is the left base vertex and chain index `n - 1` the right one.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::geom::{self, orient, AffineShear, DirSegment, GeomError, Orientation, Point};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Convex,
    Reflex,
    Base,
}

/// A violated terrain invariant. Indices refer to the normal-form vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooFewVertices(usize),
    BaseNotHorizontal,
    BaseReversed,
    /// Upper-chain vertices `i` and `i + 1` share an `x`-coordinate.
    VerticalEdge(usize),
    /// The upper chain turns back in `x` at vertex `i`.
    NotMonotone(usize),
    /// Upper-chain vertex `i` is not strictly above the base.
    NotAboveBase(usize),
    /// The two edges at vertex `i` are collinear.
    CollinearEdges(usize),
    CollinearTriple(usize, usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices(n) => write!(f, "TooFewVertices: {n} < 3"),
            Violation::BaseNotHorizontal => write!(f, "BaseNotHorizontal"),
            Violation::BaseReversed => write!(f, "BaseReversed: left base vertex is not left of the right one"),
            Violation::VerticalEdge(i) => write!(f, "VerticalEdge at vertex {i}"),
            Violation::NotMonotone(i) => write!(f, "NotMonotone at vertex {i}"),
            Violation::NotAboveBase(i) => write!(f, "NotAboveBase at vertex {i}"),
            Violation::CollinearEdges(i) => write!(f, "CollinearEdges at vertex {i}"),
            Violation::CollinearTriple(i, j, k) => write!(f, "CollinearTriple({i}, {j}, {k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TerrainError {
    /// The listing is clockwise, or its lower boundary is not a single edge.
    NotCounterClockwise,
    Geom(GeomError),
    Invalid(Violation),
}

impl fmt::Display for TerrainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TerrainError::NotCounterClockwise => {
                write!(f, "NotCounterClockwise: expected a counterclockwise listing whose lower boundary is one edge")
            }
            TerrainError::Geom(e) => write!(f, "{e}"),
            TerrainError::Invalid(v) => write!(f, "{v}"),
        }
    }
}

impl From<GeomError> for TerrainError {
    fn from(e: GeomError) -> Self {
        TerrainError::Geom(e)
    }
}

#[derive(Debug, Clone)]
pub struct Terrain {
    vertices: Vec<Point>,
    chain: Vec<Point>,
    shear: AffineShear,
}

impl Terrain {
    /// Builds a terrain from a counterclockwise listing starting anywhere.
    /// The listing is rotated so the left base vertex comes first, sheared
    /// to a horizontal base and validated (without the all-triples check).
    pub fn from_points(raw: Vec<Point>) -> Result<Terrain, TerrainError> {
        let t = Terrain::normalize(raw)?;
        if let Some(v) = t.validate(false).into_iter().next() {
            return Err(TerrainError::Invalid(v));
        }
        Ok(t)
    }

    /// Like [`Terrain::from_points`] but skips validation. Used by the
    /// validator itself and by tests that need malformed input.
    pub fn normalize(raw: Vec<Point>) -> Result<Terrain, TerrainError> {
        let n = raw.len();
        if n < 3 {
            return Err(TerrainError::Invalid(Violation::TooFewVertices(n)));
        }
        let left = (0..n).min_by(|&a, &b| raw[a].x.cmp(&raw[b].x).then(raw[a].y.cmp(&raw[b].y))).expect("non-empty");
        let next = (left + 1) % n;
        let prev = (left + n - 1) % n;
        let max_x = raw.iter().map(|p| &p.x).max().expect("non-empty");
        if &raw[next].x != max_x {
            if &raw[prev].x == max_x {
                return Err(TerrainError::NotCounterClockwise);
            }
            // Lower boundary has more than one edge; report it as a monotonicity failure.
            return Err(TerrainError::Invalid(Violation::NotMonotone(next)));
        }
        let mut rotated = Vec::with_capacity(n);
        rotated.extend_from_slice(&raw[left..]);
        rotated.extend_from_slice(&raw[..left]);
        let (vertices, shear) = geom::shear_to_horizontal(&rotated)?;
        Ok(Terrain::from_normal_form(vertices, shear))
    }

    /// Wraps vertices already in normal form. No checks are done.
    pub fn from_normal_form(vertices: Vec<Point>, shear: AffineShear) -> Terrain {
        let n = vertices.len();
        let chain = (0..n).map(|c| vertices[chain_to_vertex(n, c)].clone()).collect();
        Terrain { vertices, chain, shear }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Upper boundary from the left base vertex to the right one.
    pub fn chain(&self) -> &[Point] {
        &self.chain
    }

    pub fn shear(&self) -> &AffineShear {
        &self.shear
    }

    pub fn base_y(&self) -> &Scalar {
        &self.vertices[0].y
    }

    pub fn base_left(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn base_right(&self) -> &Point {
        &self.vertices[1]
    }

    pub fn chain_to_vertex(&self, c: usize) -> usize {
        chain_to_vertex(self.n(), c)
    }

    pub fn vertex_to_chain(&self, v: usize) -> usize {
        let n = self.n();
        match v {
            0 => 0,
            1 => n - 1,
            _ => n - v,
        }
    }

    /// Checks every terrain invariant. With `full_gp` all vertex triples are
    /// also tested for collinearity, which is cubic.
    pub fn validate(&self, full_gp: bool) -> Vec<Violation> {
        let n = self.n();
        let mut out = Vec::new();
        if n < 3 {
            out.push(Violation::TooFewVertices(n));
            return out;
        }
        let v = &self.vertices;
        if v[0].y != v[1].y {
            out.push(Violation::BaseNotHorizontal);
        }
        if v[0].x >= v[1].x {
            out.push(Violation::BaseReversed);
        }
        // Walk B_r, v2, ..., v_{n-1}, B_l: x must strictly decrease.
        let order: Vec<usize> = core::iter::once(1).chain(2..n).chain(core::iter::once(0)).collect();
        for w in order.windows(2) {
            match v[w[1]].x.cmp(&v[w[0]].x) {
                Ordering::Less => {}
                Ordering::Equal => out.push(Violation::VerticalEdge(w[0])),
                Ordering::Greater => out.push(Violation::NotMonotone(w[0])),
            }
        }
        for (i, p) in v.iter().enumerate().skip(2) {
            if p.y <= v[0].y {
                out.push(Violation::NotAboveBase(i));
            }
        }
        // The all-triples check below subsumes this one.
        for i in (0..n).filter(|_| !full_gp) {
            let prev = &v[(i + n - 1) % n];
            let next = &v[(i + 1) % n];
            if orient(prev, &v[i], next) == Orientation::Collinear {
                out.push(Violation::CollinearEdges(i));
            }
        }
        if full_gp {
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        if orient(&v[i], &v[j], &v[k]) == Orientation::Collinear {
                            out.push(Violation::CollinearTriple(i, j, k));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn classify_vertex(&self, i: usize) -> VertexClass {
        let n = self.n();
        assert!(i < n, "vertex {i} out of range");
        if i < 2 {
            return VertexClass::Base;
        }
        let prev = &self.vertices[i - 1];
        let next = &self.vertices[(i + 1) % n];
        match orient(prev, &self.vertices[i], next) {
            Orientation::CounterClockwise => VertexClass::Convex,
            _ => VertexClass::Reflex,
        }
    }

    /// Chain-order counterpart of [`Terrain::classify_vertex`].
    pub fn is_reflex_chain(&self, c: usize) -> bool {
        c > 0
            && c + 1 < self.n()
            && orient(&self.chain[c - 1], &self.chain[c], &self.chain[c + 1]) == Orientation::CounterClockwise
    }

    /// Index `k` of the chain edge `chain[k]..chain[k + 1]` whose closed
    /// `x`-range contains `x`, preferring the edge that starts at `x`.
    /// `None` outside the base span.
    pub fn edge_at(&self, x: &Scalar) -> Option<usize> {
        let n = self.n();
        if x < &self.chain[0].x || x > &self.chain[n - 1].x {
            return None;
        }
        // First chain vertex strictly right of x.
        let first_right = self.chain.partition_point(|p| &p.x <= x);
        Some(first_right.saturating_sub(1).min(n - 2))
    }

    /// Height of the upper boundary above `x`.
    pub fn chain_y_at(&self, x: &Scalar) -> Option<Scalar> {
        let k = self.edge_at(x)?;
        Some(y_on_line(&self.chain[k], &self.chain[k + 1], x))
    }

    /// Whether `p` is inside the closed terrain region.
    pub fn contains_point(&self, p: &Point) -> bool {
        if &p.y < self.base_y() {
            return false;
        }
        match self.chain_y_at(&p.x) {
            Some(top) => p.y <= top,
            None => false,
        }
    }

    /// Whether the closed segment lies in the closed terrain region.
    pub fn segment_inside(&self, s: &DirSegment) -> bool {
        if !self.contains_point(&s.src) || !self.contains_point(&s.dst) {
            return false;
        }
        let (a, b) = (s.left(), s.right());
        if a.x == b.x {
            return true;
        }
        let lo = self.chain.partition_point(|p| p.x <= a.x);
        let hi = self.chain.partition_point(|p| p.x < b.x);
        self.chain[lo..hi].iter().all(|v| y_on_line(a, b, &v.x) <= v.y)
    }

    /// The grounded triangle whose sides lie on the two given lines, if it
    /// fits inside the terrain.
    pub fn grounded_triangle_from_lines(
        &self,
        left_line: (&Point, &Point),
        right_line: (&Point, &Point),
    ) -> Option<GroundedTriangle> {
        let sl = slope(left_line.0, left_line.1)?;
        let sr = slope(right_line.0, right_line.1)?;
        if !sl.is_positive() || !sr.is_negative() {
            return None;
        }
        let apex = geom::line_intersection(left_line.0, left_line.1, right_line.0, right_line.1)?;
        let b = self.base_y();
        if &apex.y <= b {
            return None;
        }
        let left_foot = Point::new(x_at_y(left_line.0, left_line.1, b), b.clone());
        let right_foot = Point::new(x_at_y(right_line.0, right_line.1, b), b.clone());
        let tri = GroundedTriangle::new(apex, left_foot, right_foot);
        if self.feet_on_base(&tri)
            && self.segment_inside(&DirSegment::untagged(tri.left_foot.clone(), tri.apex.clone()))
            && self.segment_inside(&DirSegment::untagged(tri.apex.clone(), tri.right_foot.clone()))
        {
            Some(tri)
        } else {
            None
        }
    }

    pub(crate) fn feet_on_base(&self, tri: &GroundedTriangle) -> bool {
        let (lo, hi) = (&self.base_left().x, &self.base_right().x);
        &tri.left_foot.y == self.base_y()
            && &tri.right_foot.y == self.base_y()
            && lo <= &tri.left_foot.x
            && tri.left_foot.x <= tri.right_foot.x
            && &tri.right_foot.x <= hi
    }

    /// The terrain itself as a grounded triangle; only meaningful for `n == 3`.
    pub fn as_triangle(&self) -> Option<GroundedTriangle> {
        if self.n() != 3 {
            return None;
        }
        Some(GroundedTriangle::new(self.vertices[2].clone(), self.vertices[0].clone(), self.vertices[1].clone()))
    }
}

fn chain_to_vertex(n: usize, c: usize) -> usize {
    if c == 0 {
        0
    } else if c == n - 1 {
        1
    } else {
        n - c
    }
}

pub(crate) fn slope(a: &Point, b: &Point) -> Option<Scalar> {
    let dx = &b.x - &a.x;
    if dx.is_zero() {
        None
    } else {
        Some((&b.y - &a.y) / dx)
    }
}

/// `y` of the (non-vertical) line through `a` and `b` at `x`.
pub fn y_on_line(a: &Point, b: &Point, x: &Scalar) -> Scalar {
    if a.x == b.x {
        return a.y.clone().max(b.y.clone());
    }
    &a.y + &(&(&b.y - &a.y) * &(x - &a.x) / (&b.x - &a.x))
}

/// `x` of the (non-horizontal) line through `a` and `b` at height `y`.
pub fn x_at_y(a: &Point, b: &Point, y: &Scalar) -> Scalar {
    &a.x + &(&(&b.x - &a.x) * &(y - &a.y) / (&b.y - &a.y))
}

/// A triangle with one edge on the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundedTriangle {
    pub apex: Point,
    pub left_foot: Point,
    pub right_foot: Point,
    pub area: Scalar,
}

impl GroundedTriangle {
    /// Area is computed from the three corners.
    pub fn new(apex: Point, left_foot: Point, right_foot: Point) -> Self {
        let area = geom::triangle_area(&apex, &left_foot, &right_foot);
        GroundedTriangle { apex, left_foot, right_foot, area }
    }

    /// Same triangle under an affine map with unit determinant.
    pub fn map(&self, f: impl Fn(&Point) -> Point) -> GroundedTriangle {
        GroundedTriangle {
            apex: f(&self.apex),
            left_foot: f(&self.left_foot),
            right_foot: f(&self.right_foot),
            area: self.area.clone(),
        }
    }

    pub fn corners(&self) -> [&Point; 3] {
        [&self.apex, &self.left_foot, &self.right_foot]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn fixtures_validate() {
        assert!(fixtures::t1().validate(true).is_empty());
        assert!(fixtures::t2().validate(true).is_empty());
        assert!(fixtures::t3().validate(true).is_empty());
    }

    #[test]
    fn rotated_listing_is_renormalized() {
        let t = Terrain::from_points(vec![p(7, 6), p(5, 2), p(2, 4), p(0, 0), p(10, 0)]).unwrap();
        assert_eq!(t.vertices(), fixtures::t3().vertices());
    }

    #[test]
    fn clockwise_is_rejected() {
        let err = Terrain::from_points(vec![p(0, 0), p(5, 5), p(10, 0)]).unwrap_err();
        assert_eq!(err, TerrainError::NotCounterClockwise);
    }

    #[test]
    fn sheared_input() {
        let t = Terrain::from_points(vec![p(0, 0), p(10, 5), p(8, 9), p(2, 7)]).unwrap();
        assert_eq!(t.vertices(), &[p(0, 0), p(10, 0), p(8, 5), p(2, 6)]);
        assert_eq!(t.shear().slope, Scalar::ratio(1, 2));
    }

    #[test]
    fn vertical_edge_reported() {
        let t = Terrain::normalize(vec![p(0, 0), p(10, 0), p(6, 4), p(6, 2), p(2, 3)]).unwrap();
        assert_eq!(t.validate(false), vec![Violation::VerticalEdge(2)]);
    }

    #[test]
    fn collinear_triple_needs_full_check() {
        let t = Terrain::normalize(vec![p(0, 0), p(10, 0), p(8, 4), p(4, 2)]).unwrap();
        assert_eq!(t.validate(false), vec![Violation::CollinearEdges(3)]);
        assert_eq!(t.validate(true), vec![Violation::CollinearTriple(0, 2, 3)]);
    }

    #[test]
    fn not_above_base() {
        let t = Terrain::normalize(vec![p(0, 0), p(10, 0), p(7, 3), p(4, 0), p(2, 3)]).unwrap();
        assert!(t.validate(false).contains(&Violation::NotAboveBase(3)));
    }

    #[test]
    fn classification() {
        let t1 = fixtures::t1();
        assert_eq!(t1.classify_vertex(2), VertexClass::Convex);
        let t3 = fixtures::t3();
        assert_eq!(t3.classify_vertex(3), VertexClass::Reflex);
        assert_eq!(t3.classify_vertex(2), VertexClass::Convex);
        assert_eq!(t3.classify_vertex(4), VertexClass::Convex);
        let bases = (0..t3.n()).filter(|&i| t3.classify_vertex(i) == VertexClass::Base).count();
        assert_eq!(bases, 2);
        assert!(t3.is_reflex_chain(2));
        assert!(!t3.is_reflex_chain(1));
    }

    #[test]
    fn inside_examples() {
        let t1 = fixtures::t1();
        assert!(t1.segment_inside(&DirSegment::untagged(p(0, 0), p(10, 0))));
        let t3 = fixtures::t3();
        assert!(!t3.segment_inside(&DirSegment::untagged(p(0, 0), p(7, 6))));
        assert!(t3.segment_inside(&DirSegment::untagged(p(0, 0), p(5, 2))));
        assert!(!t3.segment_inside(&DirSegment::untagged(p(0, 0), p(11, 0))));
        assert!(!t3.segment_inside(&DirSegment::untagged(p(1, -1), p(3, 1))));
    }

    #[test]
    fn chain_height() {
        let t3 = fixtures::t3();
        assert_eq!(t3.chain_y_at(&Scalar::from_int(6)), Some(Scalar::from_int(4)));
        assert_eq!(t3.chain_y_at(&Scalar::from_int(5)), Some(Scalar::from_int(2)));
        assert_eq!(t3.chain_y_at(&Scalar::from_int(11)), None);
    }

    #[test]
    fn triangle_from_lines() {
        let t3 = fixtures::t3();
        let tri = t3.grounded_triangle_from_lines((&p(0, 0), &p(5, 2)), (&p(5, 2), &p(10, 0))).unwrap();
        assert_eq!(tri.apex, p(5, 2));
        assert_eq!(tri.left_foot, p(0, 0));
        assert_eq!(tri.right_foot, p(10, 0));
        assert_eq!(tri.area, Scalar::from_int(10));

        let tri = t3.grounded_triangle_from_lines((&p(0, 0), &p(5, 2)), (&p(2, 4), &p(5, 2))).unwrap();
        assert_eq!(tri.right_foot, p(8, 0));
        assert_eq!(tri.area, Scalar::from_int(8));

        let t1 = fixtures::t1();
        let tri = t1.grounded_triangle_from_lines((&p(0, 0), &p(5, 5)), (&p(5, 5), &p(10, 0))).unwrap();
        assert_eq!(tri.area, Scalar::from_int(25));

        // Lines crossing below the base.
        assert!(t1.grounded_triangle_from_lines((&p(6, 1), &p(7, 2)), (&p(3, 1), &p(4, 0))).is_none());
    }
}
