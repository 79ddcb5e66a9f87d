//! Brute-force reference solvers. Slow, simple, and independent of the
//! fast path: they never look at shortest-path trees, prolongations or the
//! segment tree.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::geom::{DirSegment, Point};
use crate::scalar::Scalar;
use crate::terrain::{slope, y_on_line, GroundedTriangle, Terrain};

/// Which candidate family produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleMethod {
    /// Pairs of lines through two terrain vertices.
    TwoVertexLines,
    /// Apices at vertices plus evenly spaced points on every upper edge.
    BoundarySampled,
    /// Apices at vertices plus every two-vertex line's crossing with an edge.
    BoundaryExact,
    Combined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub best: Option<GroundedTriangle>,
    pub candidates_examined: usize,
    pub method: OracleMethod,
}

impl OracleReport {
    pub fn area(&self) -> Scalar {
        self.best.as_ref().map_or_else(Scalar::zero, |t| t.area.clone())
    }
}

/// Larger area wins; ties go to the smaller apex.
fn better(a: &GroundedTriangle, b: &GroundedTriangle) -> bool {
    match a.area.cmp(&b.area) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a.apex < b.apex,
    }
}

fn keep_best(best: &mut Option<GroundedTriangle>, cand: GroundedTriangle) {
    if best.as_ref().is_none_or(|b| better(&cand, b)) {
        *best = Some(cand);
    }
}

/// Both feet on the base in order, apex strictly above it, both sides
/// inside the terrain, and the recorded area matches the corners.
pub fn check_triangle_valid(t: &Terrain, tri: &GroundedTriangle) -> bool {
    let b = t.base_y();
    let (lo, hi) = (&t.base_left().x, &t.base_right().x);
    let feet_ok = &tri.left_foot.y == b
        && &tri.right_foot.y == b
        && lo <= &tri.left_foot.x
        && tri.left_foot.x <= tri.right_foot.x
        && &tri.right_foot.x <= hi;
    if !feet_ok || &tri.apex.y <= b {
        return false;
    }
    let area_ok =
        tri.area == GroundedTriangle::new(tri.apex.clone(), tri.left_foot.clone(), tri.right_foot.clone()).area;
    area_ok
        && t.segment_inside(&DirSegment::untagged(tri.left_foot.clone(), tri.apex.clone()))
        && t.segment_inside(&DirSegment::untagged(tri.apex.clone(), tri.right_foot.clone()))
}

/// A candidate side: a line through two vertices, its base foot, and the
/// `x`-range over which the part between the foot and an apex stays inside.
struct Side {
    a: Point,
    b: Point,
    foot: Scalar,
    /// For a left side, the furthest apex `x`; for a right side, the nearest.
    reach: Scalar,
}

/// How far the segment from the base foot can extend along the line while
/// staying inside the terrain, walking away from the foot.
fn reach_from_foot(t: &Terrain, a: &Point, b: &Point, foot: &Scalar, rightward: bool) -> Scalar {
    let chain = t.chain();
    let n = chain.len();
    let edges: Vec<usize> = if rightward { (0..n - 1).collect() } else { (0..n - 1).rev().collect() };
    for k in edges {
        let (p, q) = (&chain[k], &chain[k + 1]);
        let (near, far) = if rightward { (p, q) } else { (q, p) };
        let beyond = if rightward { &far.x <= foot } else { &far.x >= foot };
        if beyond {
            continue;
        }
        // Signed gap between the line and the chain at the edge's far end.
        let gap_far = &y_on_line(a, b, &far.x) - &far.y;
        if gap_far.is_positive() {
            let start = if rightward { near.x.clone().max(foot.clone()) } else { near.x.clone().min(foot.clone()) };
            let gap_start = &y_on_line(a, b, &start) - &y_on_line(p, q, &start);
            // The gap is linear along the edge; find where it turns positive.
            let frac = &gap_start / &(&gap_start - &gap_far);
            return &start + &(&frac * &(&far.x - &start));
        }
    }
    if rightward {
        chain[n - 1].x.clone()
    } else {
        chain[0].x.clone()
    }
}

fn sides(t: &Terrain) -> (Vec<Side>, Vec<Side>) {
    let chain = t.chain();
    let n = chain.len();
    let base = t.base_y();
    let (lo, hi) = (&t.base_left().x, &t.base_right().x);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&chain[i], &chain[j]);
            let Some(s) = slope(a, b) else { continue };
            if s.is_zero() {
                continue;
            }
            let foot = &a.x + &(&(base - &a.y) / &s);
            if &foot < lo || &foot > hi {
                continue;
            }
            if s.is_positive() {
                let reach = reach_from_foot(t, a, b, &foot, true);
                left.push(Side { a: a.clone(), b: b.clone(), foot, reach });
            } else {
                let reach = reach_from_foot(t, a, b, &foot, false);
                right.push(Side { a: a.clone(), b: b.clone(), foot, reach });
            }
        }
    }
    (left, right)
}

/// Best grounded triangle whose two sides lie on lines through pairs of
/// terrain vertices. Every pair of a rising and a falling line is tried.
pub fn oracle_interior(t: &Terrain) -> Option<OracleReport> {
    let (left, right) = sides(t);
    let base = t.base_y();
    let mut best: Option<GroundedTriangle> = None;
    let mut examined = 0usize;
    for l in &left {
        for r in &right {
            examined += 1;
            if r.foot < l.foot {
                continue;
            }
            let Some(apex) = crate::geom::line_intersection(&l.a, &l.b, &r.a, &r.b) else { continue };
            if &apex.y <= base || apex.x > l.reach || apex.x < r.reach {
                continue;
            }
            let tri = GroundedTriangle::new(
                apex,
                Point::new(l.foot.clone(), base.clone()),
                Point::new(r.foot.clone(), base.clone()),
            );
            keep_best(&mut best, tri);
        }
    }
    if let Some(tri) = &best {
        debug_assert!(check_triangle_valid(t, tri));
    }
    (examined > 0).then_some(OracleReport { best, candidates_examined: examined, method: OracleMethod::TwoVertexLines })
}

/// The largest grounded triangle with apex `p` on the upper boundary,
/// found by scanning every vertex for the binding tangent on each side.
pub fn max_triangle_at(t: &Terrain, p: &Point) -> Option<GroundedTriangle> {
    let base = t.base_y();
    if &p.y <= base {
        return None;
    }
    let mut steepest_left: Option<Scalar> = None;
    let mut flattest_right: Option<Scalar> = None;
    for w in t.chain() {
        match w.x.cmp(&p.x) {
            Ordering::Less => {
                let s = slope(w, p).expect("distinct x");
                if steepest_left.as_ref().is_none_or(|m| &s > m) {
                    steepest_left = Some(s);
                }
            }
            Ordering::Greater => {
                let s = slope(p, w).expect("distinct x");
                if flattest_right.as_ref().is_none_or(|m| &s < m) {
                    flattest_right = Some(s);
                }
            }
            Ordering::Equal => {}
        }
    }
    let h = &p.y - base;
    let xl = &p.x - &(&h / &steepest_left?);
    let xr = &p.x - &(&h / &flattest_right?);
    Some(GroundedTriangle::new(p.clone(), Point::new(xl, base.clone()), Point::new(xr, base.clone())))
}

fn boundary_with(
    t: &Terrain,
    extra: impl Fn(usize, &Point, &Point, &mut Vec<Point>),
    method: OracleMethod,
) -> OracleReport {
    let chain = t.chain();
    let n = chain.len();
    let mut apices: Vec<Point> = chain[1..n - 1].to_vec();
    for k in 0..n - 1 {
        extra(k, &chain[k], &chain[k + 1], &mut apices);
    }
    let mut best = None;
    for p in &apices {
        if let Some(tri) = max_triangle_at(t, p) {
            keep_best(&mut best, tri);
        }
    }
    OracleReport { best, candidates_examined: apices.len(), method }
}

/// Apices at every upper-chain vertex and at `samples_per_edge - 1` evenly
/// spaced interior points of every upper edge. A lower bound on the best
/// boundary apex.
pub fn oracle_boundary(t: &Terrain, samples_per_edge: usize) -> OracleReport {
    let s = samples_per_edge.max(2);
    boundary_with(
        t,
        |_, a, b, out| {
            for i in 1..s {
                out.push(a.lerp(b, &Scalar::ratio(i as i64, s as i64)));
            }
        },
        OracleMethod::BoundarySampled,
    )
}

/// Apices at every upper-chain vertex and wherever a line through two
/// vertices crosses the interior of an upper edge. Quartic; small `n` only.
pub fn oracle_boundary_exact(t: &Terrain) -> OracleReport {
    let chain = t.chain();
    let n = chain.len();
    boundary_with(
        t,
        |_, a, b, out| {
            for i in 0..n {
                for j in i + 1..n {
                    if let Some(p) = crate::geom::line_intersection(&chain[i], &chain[j], a, b) {
                        if a.x < p.x && p.x < b.x {
                            out.push(p);
                        }
                    }
                }
            }
        },
        OracleMethod::BoundaryExact,
    )
}

/// Best of the interior enumeration, the exact boundary candidates and the
/// sampled boundary apices.
pub fn oracle_solve(t: &Terrain, samples_per_edge: usize) -> OracleReport {
    if let Some(tri) = t.as_triangle() {
        return OracleReport { best: Some(tri), candidates_examined: 1, method: OracleMethod::Combined };
    }
    let mut best = None;
    let mut examined = 0;
    let reports = [oracle_interior(t), Some(oracle_boundary_exact(t)), Some(oracle_boundary(t, samples_per_edge))];
    for r in reports.into_iter().flatten() {
        examined += r.candidates_examined;
        if let Some(tri) = r.best {
            keep_best(&mut best, tri);
        }
    }
    OracleReport { best, candidates_examined: examined, method: OracleMethod::Combined }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen::{generate_random, Profile};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn validity_examples() {
        let t1 = fixtures::t1();
        assert!(check_triangle_valid(&t1, &t1.as_triangle().unwrap()));
        let t3 = fixtures::t3();
        assert!(!check_triangle_valid(&t3, &GroundedTriangle::new(p(7, 6), p(0, 0), p(10, 0))));
        assert!(check_triangle_valid(&t3, &GroundedTriangle::new(p(7, 6), p(4, 0), p(10, 0))));
        assert!(!check_triangle_valid(&t1, &GroundedTriangle::new(p(5, -1), p(0, 0), p(10, 0))));
        assert!(!check_triangle_valid(&t1, &GroundedTriangle::new(p(5, 5), p(-1, 0), p(10, 0))));
    }

    #[test]
    fn interior_examples() {
        let t3 = fixtures::t3();
        // The two prolongation lines meet at the reflex vertex for area 10,
        // but the side (5,2)-(7,6) with the edge (7,6)-(10,0) does better.
        let best = oracle_interior(&t3).unwrap().best.unwrap();
        assert_eq!(best.area, Scalar::from_int(18));
        assert_eq!(best.apex, p(7, 6));
        let pair = t3.grounded_triangle_from_lines((&p(0, 0), &p(5, 2)), (&p(5, 2), &p(10, 0))).unwrap();
        assert_eq!(pair.area, Scalar::from_int(10));
        assert!(check_triangle_valid(&t3, &pair));
        let t1 = fixtures::t1();
        assert_eq!(oracle_interior(&t1).unwrap().best.unwrap().area, Scalar::from_int(25));
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(oracle_boundary(&fixtures::t1(), 2).area(), Scalar::from_int(25));
        assert_eq!(oracle_boundary(&fixtures::t2(), 7).area(), Scalar::from_int(20));
        let t3 = oracle_boundary(&fixtures::t3(), 1000);
        assert_eq!(t3.area(), Scalar::from_int(18));
        let best = t3.best.unwrap();
        assert_eq!(best.apex, p(7, 6));
        assert_eq!(best.left_foot, p(4, 0));
        assert_eq!(best.right_foot, p(10, 0));
    }

    #[test]
    fn fixture_optima() {
        for (t, want) in [(fixtures::t1(), 25), (fixtures::t2(), 20), (fixtures::t3(), 18)] {
            let r = oracle_solve(&t, 1000);
            assert_eq!(r.area(), Scalar::from_int(want));
            assert!(check_triangle_valid(&t, r.best.as_ref().unwrap()));
        }
    }

    #[test]
    fn reach_matches_segment_inside() {
        // The pruned interior enumeration agrees with checking every pair directly.
        for seed in 0..4 {
            let t = generate_random(9, seed, Profile::Spiky).unwrap();
            let fast = oracle_interior(&t).and_then(|r| r.best);
            let chain = t.chain();
            let mut slow: Option<GroundedTriangle> = None;
            for i in 0..t.n() {
                for j in i + 1..t.n() {
                    for k in 0..t.n() {
                        for l in k + 1..t.n() {
                            if let Some(tri) =
                                t.grounded_triangle_from_lines((&chain[i], &chain[j]), (&chain[k], &chain[l]))
                            {
                                keep_best(&mut slow, tri);
                            }
                        }
                    }
                }
            }
            assert_eq!(fast.map(|t| t.area), slow.map(|t| t.area), "seed {seed}");
        }
    }

    #[test]
    fn everything_reported_is_valid() {
        for profile in Profile::ALL {
            for seed in 0..5 {
                let t = generate_random(12, seed, profile).unwrap();
                let r = oracle_solve(&t, 16);
                assert!(check_triangle_valid(&t, r.best.as_ref().unwrap()));
                let sampled = oracle_boundary(&t, 16).area();
                let exact = oracle_boundary_exact(&t).area();
                assert!(r.area() >= sampled && r.area() >= exact);
            }
        }
    }
}
