//! Hereditary segment tree over the prolongation sets `L` and `R`.
//!
//! The `x`-axis between the extreme segment endpoints is split into atoms:
//! the open intervals between consecutive endpoint coordinates and the
//! interior coordinates themselves as single points (the outermost
//! intervals are closed at the extreme coordinates). Atoms therefore
//! partition the span exactly, so every crossing `x` lies in one leaf, and a
//! segment's closed projection is a contiguous run of leaves.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};
use core::fmt;

use crate::geom::{orient, Orientation, Point};
use crate::scalar::Scalar;
use crate::spt::{Prolongation, ProlongationSet};

/// A segment of `L` or `R` with its supporting line precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegInfo {
    pub left: Point,
    pub right: Point,
    pub slope: Scalar,
    pub intercept: Scalar,
    /// `x` where the supporting line meets the base.
    pub foot_x: Scalar,
}

impl SegInfo {
    pub fn from_prolongation(p: &Prolongation) -> SegInfo {
        let s = &p.segment;
        let (left, right) = (s.left().clone(), s.right().clone());
        let slope = s.slope().expect("prolongations are never vertical");
        let intercept = &left.y - &(&slope * &left.x);
        SegInfo { left, right, slope, intercept, foot_x: p.base_foot.x.clone() }
    }

    pub fn y_at(&self, x: &Scalar) -> Scalar {
        &(&self.slope * x) + &self.intercept
    }

    pub fn spans(&self, x: &Scalar) -> bool {
        &self.left.x <= x && x <= &self.right.x
    }
}

/// A boundary of a node's strip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub x: Scalar,
    /// Whether the coordinate itself belongs to the node's interval.
    pub closed: bool,
}

/// Sorted distinct endpoint coordinates and the atoms between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicIntervals {
    pub xs: Vec<Scalar>,
}

impl AtomicIntervals {
    pub fn new(segments: impl IntoIterator<Item = Scalar>) -> Self {
        let mut xs: Vec<Scalar> = segments.into_iter().collect();
        xs.sort();
        xs.dedup();
        AtomicIntervals { xs }
    }

    /// Leaf count: `k - 1` open intervals and `k - 2` interior points.
    pub fn leaf_count(&self) -> usize {
        let k = self.xs.len();
        if k < 2 {
            0
        } else {
            2 * k - 3
        }
    }

    fn index_of(&self, x: &Scalar) -> usize {
        self.xs.binary_search(x).expect("endpoint coordinate is registered")
    }

    /// Leaves covered by the closed projection `[a, b]` of a segment.
    pub fn leaf_range(&self, a: &Scalar, b: &Scalar) -> (usize, usize) {
        let k = self.xs.len();
        let (ia, ib) = (self.index_of(a), self.index_of(b));
        let lo = if ia == 0 { 0 } else { 2 * ia - 1 };
        let hi = if ib == k - 1 { 2 * (k - 2) } else { 2 * ib - 1 };
        (lo, hi)
    }

    /// The leaf containing `x`, which must lie in the span.
    pub fn leaf_containing(&self, x: &Scalar) -> usize {
        let k = self.xs.len();
        match self.xs.binary_search(x) {
            Ok(0) => 0,
            Ok(i) if i == k - 1 => 2 * (k - 2),
            Ok(i) => 2 * i - 1,
            Err(i) => {
                assert!(i > 0 && i < k, "x outside the atomic span");
                2 * (i - 1)
            }
        }
    }

    pub fn left_wall(&self, leaf: usize) -> Wall {
        if leaf.is_multiple_of(2) {
            let i = leaf / 2;
            Wall { x: self.xs[i].clone(), closed: i == 0 }
        } else {
            Wall { x: self.xs[leaf.div_ceil(2)].clone(), closed: true }
        }
    }

    pub fn right_wall(&self, leaf: usize) -> Wall {
        if leaf.is_multiple_of(2) {
            let i = leaf / 2 + 1;
            Wall { x: self.xs[i].clone(), closed: i == self.xs.len() - 1 }
        } else {
            Wall { x: self.xs[leaf.div_ceil(2)].clone(), closed: true }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HstNode {
    /// Inclusive leaf range below this node.
    pub lo: usize,
    pub hi: usize,
    pub children: Option<(usize, usize)>,
    pub left_wall: Wall,
    pub right_wall: Wall,
    /// Standard lists: segments covering this node but not its parent.
    pub l_std: Vec<usize>,
    pub r_std: Vec<usize>,
    /// Hereditary lists: segments standard at some proper descendant.
    pub l_her: Vec<usize>,
    pub r_her: Vec<usize>,
}

impl HstNode {
    pub fn list_size(&self) -> usize {
        self.l_std.len() + self.r_std.len() + self.l_her.len() + self.r_her.len()
    }

    /// Whether `x` lies in this node's interval.
    pub fn contains_x(&self, x: &Scalar) -> bool {
        let lw = &self.left_wall;
        let rw = &self.right_wall;
        let after_left = if lw.closed { &lw.x <= x } else { &lw.x < x };
        let before_right = if rw.closed { x <= &rw.x } else { x < &rw.x };
        after_left && before_right
    }
}

/// Which segment family a list refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    L,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderError {
    /// The above/below relation has a cycle, so the segments were not
    /// interior-disjoint.
    CycleDetected,
}

impl fmt::Display for OrderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderError::CycleDetected => write!(f, "CycleDetected: segments are not interior-disjoint"),
        }
    }
}

/// Permutation of segment ids extending the above/below relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentOrder {
    pub order: Vec<usize>,
    /// Sweep comparisons plus relation edges; linear-logarithmic in size.
    pub work: usize,
}

impl SegmentOrder {
    /// Position of every segment in the order.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.order.len()];
        for (pos, &id) in self.order.iter().enumerate() {
            rank[id] = pos;
        }
        rank
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hst {
    pub atoms: AtomicIntervals,
    pub nodes: Vec<HstNode>,
    /// `None` when there are no segments at all.
    pub root: Option<usize>,
    pub l: Vec<SegInfo>,
    pub r: Vec<SegInfo>,
    /// List pushes performed while distributing.
    pub distribute_work: usize,
}

impl Hst {
    /// Builds the tree, orders both families and fills all lists in order.
    pub fn new(l: &ProlongationSet, r: &ProlongationSet) -> Result<Hst, OrderError> {
        let mut hst = build_hst(l, r);
        let order_l = compute_total_order(&hst.l)?;
        let order_r = compute_total_order(&hst.r)?;
        distribute_sorted(&mut hst, &order_l, &order_r);
        Ok(hst)
    }

    pub fn segments(&self, fam: Family) -> &[SegInfo] {
        match fam {
            Family::L => &self.l,
            Family::R => &self.r,
        }
    }

    /// Total size of all four lists over all nodes.
    pub fn total_list_size(&self) -> usize {
        self.nodes.iter().map(HstNode::list_size).sum()
    }

    /// Node ids from the leaf containing `x` up to the root.
    pub fn path_to_root(&self, x: &Scalar) -> Vec<usize> {
        let Some(root) = self.root else { return Vec::new() };
        let leaf = self.atoms.leaf_containing(x);
        let mut path = Vec::new();
        let mut v = root;
        loop {
            path.push(v);
            match self.nodes[v].children {
                Some((a, b)) => v = if leaf <= self.nodes[a].hi { a } else { b },
                None => break,
            }
        }
        path.reverse();
        path
    }
}

/// Balanced tree over the atoms of `L ∪ R`, with every segment assigned to
/// its standard and hereditary lists in id order.
pub fn build_hst(l: &ProlongationSet, r: &ProlongationSet) -> Hst {
    let l: Vec<SegInfo> = l.items.iter().map(SegInfo::from_prolongation).collect();
    let r: Vec<SegInfo> = r.items.iter().map(SegInfo::from_prolongation).collect();
    let atoms = AtomicIntervals::new(l.iter().chain(&r).flat_map(|s| [s.left.x.clone(), s.right.x.clone()]));
    let mut hst = Hst { atoms, nodes: Vec::new(), root: None, l, r, distribute_work: 0 };
    let leaves = hst.atoms.leaf_count();
    if leaves > 0 {
        let root = make_nodes(&hst.atoms, &mut hst.nodes, 0, leaves - 1);
        hst.root = Some(root);
    }
    let identity_l: Vec<usize> = (0..hst.l.len()).collect();
    let identity_r: Vec<usize> = (0..hst.r.len()).collect();
    fill_lists(&mut hst, &identity_l, &identity_r);
    hst
}

fn make_nodes(atoms: &AtomicIntervals, nodes: &mut Vec<HstNode>, lo: usize, hi: usize) -> usize {
    let children = if lo == hi {
        None
    } else {
        let mid = lo + (hi - lo) / 2;
        let a = make_nodes(atoms, nodes, lo, mid);
        let b = make_nodes(atoms, nodes, mid + 1, hi);
        Some((a, b))
    };
    nodes.push(HstNode {
        lo,
        hi,
        children,
        left_wall: atoms.left_wall(lo),
        right_wall: atoms.right_wall(hi),
        l_std: Vec::new(),
        r_std: Vec::new(),
        l_her: Vec::new(),
        r_her: Vec::new(),
    });
    nodes.len() - 1
}

fn insert(nodes: &mut [HstNode], v: usize, range: (usize, usize), fam: Family, id: usize, work: &mut usize) {
    let node = &mut nodes[v];
    if range.1 < node.lo || node.hi < range.0 {
        return;
    }
    *work += 1;
    if range.0 <= node.lo && node.hi <= range.1 {
        match fam {
            Family::L => node.l_std.push(id),
            Family::R => node.r_std.push(id),
        }
        return;
    }
    match fam {
        Family::L => node.l_her.push(id),
        Family::R => node.r_her.push(id),
    }
    let (a, b) = node.children.expect("partial overlap implies an internal node");
    insert(nodes, a, range, fam, id, work);
    insert(nodes, b, range, fam, id, work);
}

fn fill_lists(hst: &mut Hst, order_l: &[usize], order_r: &[usize]) {
    for node in &mut hst.nodes {
        node.l_std.clear();
        node.r_std.clear();
        node.l_her.clear();
        node.r_her.clear();
    }
    let Some(root) = hst.root else { return };
    let mut work = 0;
    for (fam, order) in [(Family::L, order_l), (Family::R, order_r)] {
        for &id in order {
            let s = &hst.segments(fam)[id];
            let range = hst.atoms.leaf_range(&s.left.x, &s.right.x);
            insert(&mut hst.nodes, root, range, fam, id, &mut work);
        }
    }
    hst.distribute_work = work;
}

/// Refills every list by pushing segments in global order, so each list
/// ends up sorted top-down without any per-node sorting.
pub fn distribute_sorted(hst: &mut Hst, order_l: &SegmentOrder, order_r: &SegmentOrder) {
    fill_lists(hst, &order_l.order, &order_r.order);
}

/// Compares two segments that share an `x`-coordinate: `Less` when `a` is
/// above `b` where both are defined.
fn above_order(segs: &[SegInfo], a: usize, b: usize) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let (sa, sb) = (&segs[a], &segs[b]);
    // Test the later-starting segment's left endpoint against the other's line.
    let first = if sa.left.x <= sb.left.x {
        below_if_ccw(orient(&sa.left, &sa.right, &sb.left))
    } else {
        below_if_ccw(orient(&sb.left, &sb.right, &sa.left)).reverse()
    };
    if first != Ordering::Equal {
        return first;
    }
    let second = if sa.right.x <= sb.right.x {
        below_if_ccw(orient(&sb.left, &sb.right, &sa.right)).reverse()
    } else {
        below_if_ccw(orient(&sa.left, &sa.right, &sb.right))
    };
    second.then(a.cmp(&b))
}

/// `Greater` (the line's owner sorts after) when the probe is above the line.
fn below_if_ccw(o: Orientation) -> Ordering {
    match o {
        Orientation::CounterClockwise => Ordering::Greater,
        Orientation::Clockwise => Ordering::Less,
        Orientation::Collinear => Ordering::Equal,
    }
}

struct Active<'a> {
    segs: &'a [SegInfo],
    id: usize,
}

impl PartialEq for Active<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Active<'_> {}

impl PartialOrd for Active<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Active<'_> {
    // Only ever called on segments that are simultaneously active, which
    // share the sweep coordinate, so this is consistent within the set.
    fn cmp(&self, other: &Self) -> Ordering {
        above_order(self.segs, self.id, other.id)
    }
}

/// Total order of interior-disjoint segments such that whenever two share
/// an `x`-coordinate the upper one comes first; segments that do not share
/// one are ordered left to right where the relation leaves freedom.
///
/// A left-to-right sweep keeps the active segments ordered top-down and
/// records every pair that becomes adjacent; a topological sort of those
/// pairs yields the order.
pub fn compute_total_order(segs: &[SegInfo]) -> Result<SegmentOrder, OrderError> {
    let n = segs.len();
    // Insertions at a coordinate precede removals there, so segments that
    // merely touch at a coordinate are still compared.
    let mut events: Vec<(&Scalar, u8, usize)> = Vec::with_capacity(2 * n);
    for (id, s) in segs.iter().enumerate() {
        events.push((&s.left.x, 0, id));
        events.push((&s.right.x, 1, id));
    }
    events.sort();

    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    let mut work = 0usize;
    let mut add_edge = |above: usize, below: usize, work: &mut usize| {
        *work += 1;
        succ[above].push(below);
        indeg[below] += 1;
    };
    let mut active: BTreeSet<Active<'_>> = BTreeSet::new();
    for &(_, kind, id) in &events {
        work += 1;
        let key = Active { segs, id };
        if kind == 0 {
            let up = active.range(..&key).next_back().map(|a| a.id);
            let down =
                active.range((core::ops::Bound::Excluded(&key), core::ops::Bound::Unbounded)).next().map(|a| a.id);
            if let Some(u) = up {
                add_edge(u, id, &mut work);
            }
            if let Some(d) = down {
                add_edge(id, d, &mut work);
            }
            active.insert(key);
        } else {
            let up = active.range(..&key).next_back().map(|a| a.id);
            let down =
                active.range((core::ops::Bound::Excluded(&key), core::ops::Bound::Unbounded)).next().map(|a| a.id);
            if let (Some(u), Some(d)) = (up, down) {
                add_edge(u, d, &mut work);
            }
            active.remove(&key);
        }
    }

    // Kahn's algorithm, preferring segments that end further left.
    let mut by_position: Vec<usize> = (0..n).collect();
    by_position.sort_by(|&a, &b| {
        segs[a].right.x.cmp(&segs[b].right.x).then_with(|| segs[b].left.x.cmp(&segs[a].left.x)).then(a.cmp(&b))
    });
    let mut pos_rank = vec![0usize; n];
    for (r, &id) in by_position.iter().enumerate() {
        pos_rank[id] = r;
    }
    let order = topological_order(&succ, indeg, &pos_rank, &mut work).ok_or(OrderError::CycleDetected)?;
    Ok(SegmentOrder { order, work })
}

/// Kahn's algorithm; among ready nodes the smallest `priority` goes first.
/// `None` if the graph has a cycle.
fn topological_order(
    succ: &[Vec<usize>],
    mut indeg: Vec<usize>,
    priority: &[usize],
    work: &mut usize,
) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..n).filter(|&i| indeg[i] == 0).map(|i| Reverse((priority[i], i))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((_, u))) = heap.pop() {
        order.push(u);
        for &v in &succ[u] {
            *work += 1;
            indeg[v] -= 1;
            if indeg[v] == 0 {
                heap.push(Reverse((priority[v], v)));
            }
        }
    }
    (order.len() == n).then_some(order)
}
