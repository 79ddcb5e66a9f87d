//! Shortest-path trees from the two base vertices and the forward
//! prolongations of their edges.
//!
//! Every vertex index in this module is a *chain* index (see
//! [`Terrain::chain`]): 0 is the left base vertex, `n - 1` the right one.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::geom::{self, orient, DirSegment, Orientation, Point, SegmentTag};
use crate::scalar::Scalar;
use crate::terrain::{x_at_y, Terrain};

/// Which base vertex a tree hangs from. The left root yields the segment
/// set `L`, the right root the set `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Root {
    Left,
    Right,
}

impl Root {
    fn tag(self) -> SegmentTag {
        match self {
            Root::Left => SegmentTag::LeftSide,
            Root::Right => SegmentTag::RightSide,
        }
    }

    /// Orientation of a point lying above a ray that heads away from this root.
    fn above(self) -> Orientation {
        match self {
            Root::Left => Orientation::CounterClockwise,
            Root::Right => Orientation::Clockwise,
        }
    }
}

/// Raised when exact arithmetic finds a degeneracy that general position rules out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SptError {
    /// A prolongation passes exactly through chain vertex `vertex` or runs along an edge.
    GeneralPosition { from: usize, vertex: usize },
}

impl fmt::Display for SptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SptError::GeneralPosition { from, vertex } => {
                write!(f, "GeneralPosition: prolongation from chain vertex {from} meets chain vertex {vertex} exactly")
            }
        }
    }
}

/// Triangles over normal-form vertex indices, each listed counterclockwise.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub triangles: Vec<[usize; 3]>,
    /// `adjacent[t][e]` is the triangle across edge `e` of triangle `t`
    /// (edge `e` joins corners `e` and `e + 1`).
    pub adjacent: Vec<[Option<usize>; 3]>,
}

impl Triangulation {
    /// Edges shared by two triangles, as sorted vertex pairs.
    pub fn diagonals(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for e in 0..3 {
                if let Some(u) = self.adjacent[t][e] {
                    if t < u {
                        let (a, b) = (tri[e], tri[(e + 1) % 3]);
                        out.push((a.min(b), a.max(b)));
                    }
                }
            }
        }
        out
    }
}

/// Triangulates the terrain with one left-to-right stack sweep. All
/// non-base vertices lie on the upper chain, so the sweep never switches
/// chains until the right base vertex, which closes a final fan.
pub fn triangulate(t: &Terrain) -> Triangulation {
    let n = t.n();
    let chain = t.chain();
    let mut tris_chain: Vec<[usize; 3]> = Vec::with_capacity(n - 2);
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    stack.push(0);
    stack.push(1);
    for u in 2..n - 1 {
        while stack.len() >= 2 {
            let a = stack[stack.len() - 2];
            let b = stack[stack.len() - 1];
            if orient(&chain[a], &chain[b], &chain[u]) != Orientation::Clockwise {
                break;
            }
            tris_chain.push([a, b, u]);
            stack.pop();
        }
        stack.push(u);
    }
    for w in stack.windows(2) {
        tris_chain.push([w[0], w[1], n - 1]);
    }

    let triangles: Vec<[usize; 3]> = tris_chain
        .into_iter()
        .map(|tri| {
            let mut v = tri.map(|c| t.chain_to_vertex(c));
            if orient(&t.vertices()[v[0]], &t.vertices()[v[1]], &t.vertices()[v[2]]) == Orientation::Clockwise {
                v.swap(1, 2);
            }
            v
        })
        .collect();

    let mut by_edge: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let mut adjacent = alloc::vec![[None; 3]; triangles.len()];
    for (ti, tri) in triangles.iter().enumerate() {
        for e in 0..3 {
            let (a, b) = (tri[e], tri[(e + 1) % 3]);
            let key = (a.min(b), a.max(b));
            if let Some(&(tj, ej)) = by_edge.get(&key) {
                adjacent[ti][e] = Some(tj);
                adjacent[tj][ej] = Some(ti);
            } else {
                by_edge.insert(key, (ti, e));
            }
        }
    }
    Triangulation { triangles, adjacent }
}

/// Geodesic shortest-path tree from one base vertex, edges oriented away
/// from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpTree {
    pub root: Root,
    /// `parent[c]` for chain index `c`; `None` only at the root.
    pub parent: Vec<Option<usize>>,
}

impl SpTree {
    pub fn root_index(&self) -> usize {
        match self.root {
            Root::Left => 0,
            Root::Right => self.parent.len() - 1,
        }
    }

    /// Tree edges `(p, q)` with `p` the parent, in chain-index order of `q`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().enumerate().filter_map(|(q, p)| p.map(|p| (p, q)))
    }
}

/// Shortest-path tree from the chosen base vertex.
///
/// Inside a terrain the geodesic from the left base vertex to chain vertex
/// `c` is the lower convex hull of `chain[0..=c]`: the region is bounded
/// above by the chain and below by a horizontal base under every vertex, so
/// a taut path can only bend around chain vertices from below. Maintaining
/// that hull with a stack gives every parent in linear total time.
pub fn shortest_path_tree(t: &Terrain, root: Root) -> SpTree {
    let n = t.n();
    let chain = t.chain();
    let mut parent = alloc::vec![None; n];
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    let order: Vec<usize> = match root {
        Root::Left => (0..n).collect(),
        Root::Right => (0..n).rev().collect(),
    };
    // A hull turn that keeps the path convex from below, seen in sweep direction.
    let keep = root.above();
    stack.push(order[0]);
    for &c in &order[1..] {
        while stack.len() >= 2 {
            let a = stack[stack.len() - 2];
            let b = stack[stack.len() - 1];
            if orient(&chain[a], &chain[b], &chain[c]) == keep {
                break;
            }
            stack.pop();
        }
        parent[c] = Some(*stack.last().expect("root stays on the stack"));
        stack.push(c);
    }
    SpTree { root, parent }
}

/// The forward prolongation of tree edge `p -> q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prolongation {
    /// Chain indices of the originating tree edge.
    pub origin: (usize, usize),
    /// From `q` to the point where the ray leaves the terrain.
    pub segment: DirSegment,
    /// Chain edge `hit_edge..hit_edge + 1` containing the far endpoint.
    pub hit_edge: usize,
    /// Where the line through the prolongation meets the base.
    pub base_foot: Point,
}

impl Prolongation {
    pub fn q(&self) -> &Point {
        &self.segment.src
    }

    pub fn hit(&self) -> &Point {
        &self.segment.dst
    }
}

/// The set `L` (left root) or `R` (right root).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProlongationSet {
    pub side: Root,
    pub items: Vec<Prolongation>,
    /// Chain edges inspected while shooting rays.
    pub walk_steps: usize,
}

/// All non-empty forward prolongations of the tree's edges.
///
/// Only edges ending at a reflex vertex can be prolonged. A ray that
/// immediately dips below the chain has zero length and is skipped; a ray
/// that meets a chain vertex exactly violates general position.
pub fn forward_prolongations(t: &Terrain, tree: &SpTree) -> Result<ProlongationSet, SptError> {
    let n = t.n();
    let chain = t.chain();
    let above = tree.root.above();
    let step = |c: usize| -> usize {
        match tree.root {
            Root::Left => c + 1,
            Root::Right => c - 1,
        }
    };
    let mut items = Vec::new();
    let mut walk_steps = 0usize;
    for (p, q) in tree.edges() {
        if !t.is_reflex_chain(q) {
            continue;
        }
        let (pp, qq) = (&chain[p], &chain[q]);
        let mut j = step(q);
        let first = orient(pp, qq, &chain[j]);
        if first == Orientation::Collinear {
            return Err(SptError::GeneralPosition { from: q, vertex: j });
        }
        if first != above {
            continue;
        }
        loop {
            walk_steps += 1;
            j = step(j);
            match orient(pp, qq, &chain[j]) {
                o if o == above => {}
                Orientation::Collinear => return Err(SptError::GeneralPosition { from: q, vertex: j }),
                _ => break,
            }
        }
        let prev = match tree.root {
            Root::Left => j - 1,
            Root::Right => j + 1,
        };
        let hit = geom::line_intersection(pp, qq, &chain[prev], &chain[j]).expect("ray crosses the edge");
        let hit_edge = prev.min(j);
        debug_assert!(hit_edge + 1 < n);
        let base_foot = Point::new(x_at_y(pp, qq, t.base_y()), t.base_y().clone());
        items.push(Prolongation {
            origin: (p, q),
            segment: DirSegment::new(qq.clone(), hit, tree.root.tag()),
            hit_edge,
            base_foot,
        });
    }
    Ok(ProlongationSet { side: tree.root, items, walk_steps })
}

/// First boundary point met by the ray from `from` (inside the terrain)
/// in direction `dir`. Scans every boundary edge; meant for tests and tools.
pub fn boundary_hit(t: &Terrain, from: &Point, dir: (&Scalar, &Scalar)) -> Option<Point> {
    assert!(!(dir.0.is_zero() && dir.1.is_zero()), "zero direction");
    let far = Point::new(&from.x + dir.0, &from.y + dir.1);
    let chain = t.chain();
    let n = t.n();
    let mut best: Option<(Scalar, Point)> = None;
    let edges = (0..n - 1).map(|k| (&chain[k], &chain[k + 1])).chain(core::iter::once((&chain[0], &chain[n - 1])));
    for (a, b) in edges {
        let (dx, dy) = (dir.0, dir.1);
        let (ex, ey) = b.sub(a);
        let den = dx * &ey - dy * &ex;
        if den.is_zero() {
            continue;
        }
        let (wx, wy) = a.sub(from);
        // from + s * dir == a + u * (b - a)
        let s = (&wx * &ey - &wy * &ex) / &den;
        let u = (&wx * dy - &wy * dx) / &den;
        if !s.is_positive() || u.is_negative() || u > Scalar::one() {
            continue;
        }
        if best.as_ref().is_none_or(|(bs, _)| &s < bs) {
            best = Some((s.clone(), geom::line_intersection(from, &far, a, b).expect("not parallel")));
        }
    }
    best.map(|(_, p)| p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen::{generate_random, Profile};
    use alloc::vec;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn edge_points(t: &Terrain, tree: &SpTree) -> Vec<(Point, Point)> {
        tree.edges().map(|(a, b)| (t.chain()[a].clone(), t.chain()[b].clone())).collect()
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(triangulate(&fixtures::t1()).triangles.len(), 1);
        assert_eq!(triangulate(&fixtures::t2()).triangles.len(), 2);
        let t3 = fixtures::t3();
        let tri = triangulate(&t3);
        assert_eq!(tri.triangles.len(), 3);
        let diags = tri.diagonals();
        assert_eq!(diags.len(), 2);
        for (a, b) in diags {
            let s = DirSegment::untagged(t3.vertices()[a].clone(), t3.vertices()[b].clone());
            assert!(t3.segment_inside(&s), "{s:?}");
        }
    }

    #[test]
    fn triangulation_covers_the_area() {
        for seed in 0..10 {
            let t = generate_random(40, seed, Profile::Spiky).unwrap();
            let tri = triangulate(&t);
            assert_eq!(tri.triangles.len(), t.n() - 2);
            let v = t.vertices();
            let mut total = Scalar::zero();
            for tr in &tri.triangles {
                assert_eq!(orient(&v[tr[0]], &v[tr[1]], &v[tr[2]]), Orientation::CounterClockwise);
                total += &geom::triangle_area(&v[tr[0]], &v[tr[1]], &v[tr[2]]);
            }
            let mut shoelace = Scalar::zero();
            for i in 0..t.n() {
                let (a, b) = (&v[i], &v[(i + 1) % t.n()]);
                shoelace += &(&a.x * &b.y - &b.x * &a.y);
            }
            assert_eq!(total, shoelace.half());
            for (a, b) in tri.diagonals() {
                assert!(t.segment_inside(&DirSegment::untagged(v[a].clone(), v[b].clone())));
            }
        }
    }

    #[test]
    fn fixture_trees() {
        let t1 = fixtures::t1();
        let tl = shortest_path_tree(&t1, Root::Left);
        assert_eq!(edge_points(&t1, &tl), vec![(p(0, 0), p(5, 5)), (p(0, 0), p(10, 0))]);

        let t3 = fixtures::t3();
        let tl = shortest_path_tree(&t3, Root::Left);
        assert_eq!(
            edge_points(&t3, &tl),
            vec![(p(0, 0), p(2, 4)), (p(0, 0), p(5, 2)), (p(5, 2), p(7, 6)), (p(0, 0), p(10, 0))]
        );
        let tr = shortest_path_tree(&t3, Root::Right);
        let mut got = edge_points(&t3, &tr);
        got.sort();
        let mut want = vec![(p(10, 0), p(7, 6)), (p(10, 0), p(5, 2)), (p(5, 2), p(2, 4)), (p(10, 0), p(0, 0))];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn fixture_prolongations() {
        let t1 = fixtures::t1();
        let l = forward_prolongations(&t1, &shortest_path_tree(&t1, Root::Left)).unwrap();
        assert!(l.items.is_empty());

        let t3 = fixtures::t3();
        let l = forward_prolongations(&t3, &shortest_path_tree(&t3, Root::Left)).unwrap();
        assert_eq!(l.items.len(), 1);
        let s = &l.items[0];
        assert_eq!(s.q(), &p(5, 2));
        assert_eq!(s.hit(), &Point::new(Scalar::ratio(25, 3), Scalar::ratio(10, 3)));
        assert_eq!(s.base_foot, p(0, 0));
        assert_eq!(s.hit_edge, 3);

        let r = forward_prolongations(&t3, &shortest_path_tree(&t3, Root::Right)).unwrap();
        assert_eq!(r.items.len(), 1);
        let s = &r.items[0];
        assert_eq!(s.hit(), &Point::new(Scalar::ratio(5, 3), Scalar::ratio(10, 3)));
        assert_eq!(s.base_foot, p(10, 0));
        assert_eq!(s.hit_edge, 0);
    }

    #[test]
    fn zero_length_prolongation_is_skipped() {
        // The chain leaves (40, 20) below the line through (0, 0) and (40, 20).
        let t = Terrain::from_points(vec![p(0, 0), p(80, 0), p(60, 29), p(40, 20), p(20, 12)]).unwrap();
        let tree = shortest_path_tree(&t, Root::Left);
        assert_eq!(tree.parent[2], Some(0));
        assert!(t.is_reflex_chain(2));
        let l = forward_prolongations(&t, &tree).unwrap();
        assert!(l.items.is_empty());
    }

    #[test]
    fn ray_through_vertex_is_reported() {
        // The line through (0, 0) and (10, 2) passes through (25, 5).
        let t = Terrain::from_points(vec![p(0, 0), p(40, 0), p(25, 5), p(15, 9), p(10, 2), p(5, 6)]).unwrap();
        let tree = shortest_path_tree(&t, Root::Left);
        assert!(matches!(forward_prolongations(&t, &tree), Err(SptError::GeneralPosition { .. })));
    }

    #[test]
    fn boundary_hit_examples() {
        let t1 = fixtures::t1();
        let up = (Scalar::zero(), Scalar::one());
        assert_eq!(boundary_hit(&t1, &p(5, 1), (&up.0, &up.1)), Some(p(5, 5)));
        let t3 = fixtures::t3();
        let d = (Scalar::from_int(5), Scalar::from_int(2));
        assert_eq!(
            boundary_hit(&t3, &p(5, 2), (&d.0, &d.1)),
            Some(Point::new(Scalar::ratio(25, 3), Scalar::ratio(10, 3)))
        );
        for x in 1..10 {
            let from = p(x, 0);
            let hit = boundary_hit(&t3, &from, (&up.0, &up.1)).unwrap();
            assert_eq!(hit.x, from.x);
            assert_eq!(Some(hit.y), t3.chain_y_at(&from.x));
        }
    }

    /// Geodesic distances by Dijkstra over the visibility graph of the chain.
    fn visibility_distances(t: &Terrain, root: usize) -> Vec<f64> {
        let n = t.n();
        let c = t.chain();
        let mut dist = vec![f64::INFINITY; n];
        let mut done = vec![false; n];
        dist[root] = 0.0;
        for _ in 0..n {
            let u = (0..n).filter(|&i| !done[i]).min_by(|&a, &b| dist[a].total_cmp(&dist[b])).unwrap();
            done[u] = true;
            for v in 0..n {
                if done[v] || v == u {
                    continue;
                }
                if t.segment_inside(&DirSegment::untagged(c[u].clone(), c[v].clone())) {
                    let (ux, uy) = c[u].to_f64();
                    let (vx, vy) = c[v].to_f64();
                    let d = dist[u] + ((ux - vx).powi(2) + (uy - vy).powi(2)).sqrt();
                    if d < dist[v] {
                        dist[v] = d;
                    }
                }
            }
        }
        dist
    }

    fn tree_distances(t: &Terrain, tree: &SpTree) -> Vec<f64> {
        let c = t.chain();
        (0..t.n())
            .map(|mut v| {
                let mut d = 0.0;
                while let Some(p) = tree.parent[v] {
                    let (ax, ay) = c[p].to_f64();
                    let (bx, by) = c[v].to_f64();
                    d += ((ax - bx).powi(2) + (ay - by).powi(2)).sqrt();
                    v = p;
                }
                d
            })
            .collect()
    }

    #[test]
    fn trees_match_visibility_graph() {
        for profile in Profile::ALL {
            for seed in 0..6 {
                let t = generate_random(30, seed, profile).unwrap();
                for root in [Root::Left, Root::Right] {
                    let tree = shortest_path_tree(&t, root);
                    let want = visibility_distances(&t, tree.root_index());
                    let got = tree_distances(&t, &tree);
                    for (g, w) in got.iter().zip(&want) {
                        assert!((g - w).abs() <= 1e-9 * w.max(1.0), "{profile} {seed} {root:?}: {g} vs {w}");
                    }
                    for (a, b) in tree.edges() {
                        let s = DirSegment::untagged(t.chain()[a].clone(), t.chain()[b].clone());
                        assert!(t.segment_inside(&s));
                    }
                }
            }
        }
    }

    #[test]
    fn slopes_disjointness_and_feet() {
        for profile in Profile::ALL {
            for seed in 0..8 {
                let t = generate_random(60, seed, profile).unwrap();
                let reflex = (1..t.n() - 1).filter(|&c| t.is_reflex_chain(c)).count();
                for root in [Root::Left, Root::Right] {
                    let tree = shortest_path_tree(&t, root);
                    for (a, b) in tree.edges() {
                        if (a, b) == (0, t.n() - 1) || (a, b) == (t.n() - 1, 0) {
                            continue;
                        }
                        let s = DirSegment::untagged(t.chain()[a].clone(), t.chain()[b].clone()).slope().unwrap();
                        match root {
                            Root::Left => assert!(s.is_positive()),
                            Root::Right => assert!(s.is_negative()),
                        }
                    }
                    let set = forward_prolongations(&t, &tree).unwrap();
                    assert!(set.items.len() <= reflex);
                    for s in &set.items {
                        let sl = s.segment.slope().unwrap();
                        match root {
                            Root::Left => assert!(sl.is_positive()),
                            Root::Right => assert!(sl.is_negative()),
                        }
                        assert!(t.segment_inside(&s.segment));
                        assert!(t.base_left().x <= s.base_foot.x && s.base_foot.x <= t.base_right().x);
                        let k = s.hit_edge;
                        let (a, b) = (&t.chain()[k], &t.chain()[k + 1]);
                        assert_eq!(orient(a, b, s.hit()), Orientation::Collinear);
                    }
                    for (i, a) in set.items.iter().enumerate() {
                        for b in &set.items[i + 1..] {
                            let hit = geom::segment_intersection(&a.segment, &b.segment).unwrap();
                            // Segments may only touch at a shared endpoint.
                            if let Some(x) = hit {
                                let ends = [a.q(), a.hit()];
                                assert!(ends.contains(&&x) && (x == *b.q() || x == *b.hit()));
                            }
                        }
                    }
                }
            }
        }
    }
}
