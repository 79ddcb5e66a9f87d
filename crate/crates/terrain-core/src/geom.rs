//! Points, directed segments, exact predicates and the base-levelling shear.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    pub fn sub(&self, other: &Point) -> (Scalar, Scalar) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Scalar) -> Point {
        Point::new(&self.x + &(t * &(&other.x - &self.x)), &self.y + &(t * &(&other.y - &self.y)))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Result of the orientation predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn as_sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }
}

/// Twice the signed area of `(p, q, r)`.
pub fn cross(p: &Point, q: &Point, r: &Point) -> Scalar {
    let (ax, ay) = q.sub(p);
    let (bx, by) = r.sub(p);
    &ax * &by - &ay * &bx
}

pub fn orient(p: &Point, q: &Point, r: &Point) -> Orientation {
    match cross(p, q, r).sign() {
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
        Ordering::Greater => Orientation::CounterClockwise,
    }
}

/// Absolute area of the triangle `(p, q, r)`.
pub fn triangle_area(p: &Point, q: &Point, r: &Point) -> Scalar {
    cross(p, q, r).abs().half()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentTag {
    LeftSide,
    RightSide,
    TreeEdge,
    Other,
}

#[derive(Clone, PartialEq, Eq)]
pub struct DirSegment {
    pub src: Point,
    pub dst: Point,
    pub tag: SegmentTag,
}

impl fmt::Debug for DirSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{:?}", self.src, self.dst)
    }
}

impl DirSegment {
    /// Panics when `src == dst`.
    pub fn new(src: Point, dst: Point, tag: SegmentTag) -> Self {
        assert!(src != dst, "degenerate segment at {src:?}");
        DirSegment { src, dst, tag }
    }

    pub fn untagged(src: Point, dst: Point) -> Self {
        DirSegment::new(src, dst, SegmentTag::Other)
    }

    /// Endpoint with the smaller `x` (then smaller `y`).
    pub fn left(&self) -> &Point {
        if self.src <= self.dst {
            &self.src
        } else {
            &self.dst
        }
    }

    pub fn right(&self) -> &Point {
        if self.src <= self.dst {
            &self.dst
        } else {
            &self.src
        }
    }

    /// `None` for vertical segments.
    pub fn slope(&self) -> Option<Scalar> {
        let dx = &self.dst.x - &self.src.x;
        if dx.is_zero() {
            None
        } else {
            Some((&self.dst.y - &self.src.y) / dx)
        }
    }

    pub fn reversed(&self) -> DirSegment {
        DirSegment { src: self.dst.clone(), dst: self.src.clone(), tag: self.tag }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeomError {
    /// Two collinear segments share more than one point.
    CollinearOverlap,
    /// The base endpoints have equal `x`, so no shear can level it.
    VerticalBase,
    /// Fewer than two points were supplied to the shear.
    MissingBase,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::CollinearOverlap => write!(f, "CollinearOverlap: collinear segments overlap"),
            GeomError::VerticalBase => write!(f, "VerticalBase: base endpoints share an x-coordinate"),
            GeomError::MissingBase => write!(f, "MissingBase: need at least two base vertices"),
        }
    }
}

/// Intersection point of the two supporting lines, if they are not parallel.
pub fn line_intersection(a0: &Point, a1: &Point, b0: &Point, b1: &Point) -> Option<Point> {
    let (dax, day) = a1.sub(a0);
    let (dbx, dby) = b1.sub(b0);
    let den = &dax * &dby - &day * &dbx;
    if den.is_zero() {
        return None;
    }
    let (wx, wy) = b0.sub(a0);
    let t = (&wx * &dby - &wy * &dbx) / den;
    Some(Point::new(&a0.x + &(&t * &dax), &a0.y + &(&t * &day)))
}

fn on_closed_box(p: &Point, a: &Point, b: &Point) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
}

/// The unique common point of two closed segments, `None` if they are
/// disjoint, or `CollinearOverlap` if they share a sub-segment.
pub fn segment_intersection(a: &DirSegment, b: &DirSegment) -> Result<Option<Point>, GeomError> {
    let d1 = orient(&a.src, &a.dst, &b.src);
    let d2 = orient(&a.src, &a.dst, &b.dst);
    let d3 = orient(&b.src, &b.dst, &a.src);
    let d4 = orient(&b.src, &b.dst, &a.dst);

    if d1 == Orientation::Collinear && d2 == Orientation::Collinear {
        // Collinear: compare along the dominant axis.
        let key = |p: &Point| if a.src.x != a.dst.x { p.x.clone() } else { p.y.clone() };
        let (alo, ahi) = minmax(key(&a.src), key(&a.dst));
        let (blo, bhi) = minmax(key(&b.src), key(&b.dst));
        let lo = alo.max(blo);
        let hi = ahi.min(bhi);
        return match lo.cmp(&hi) {
            Ordering::Greater => Ok(None),
            Ordering::Less => Err(GeomError::CollinearOverlap),
            Ordering::Equal => {
                let shared = [&a.src, &a.dst]
                    .into_iter()
                    .find(|p| key(p) == lo)
                    .cloned()
                    .expect("touching collinear segments share an endpoint");
                Ok(Some(shared))
            }
        };
    }

    let straddle = |u: Orientation, v: Orientation| u.as_sign() * v.as_sign() <= 0;
    if !(straddle(d1, d2) && straddle(d3, d4)) {
        return Ok(None);
    }
    // Endpoint touches are returned verbatim so the result is exactly symmetric.
    for (p, seg) in [(&b.src, a), (&b.dst, a), (&a.src, b), (&a.dst, b)] {
        if orient(&seg.src, &seg.dst, p) == Orientation::Collinear && on_closed_box(p, &seg.src, &seg.dst) {
            return Ok(Some(p.clone()));
        }
    }
    Ok(line_intersection(&a.src, &a.dst, &b.src, &b.dst))
}

fn minmax(a: Scalar, b: Scalar) -> (Scalar, Scalar) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The vertical-line-preserving shear `(x, y) -> (x, y - (x - x0) * slope)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineShear {
    pub x0: Scalar,
    pub slope: Scalar,
}

impl AffineShear {
    pub fn identity() -> Self {
        AffineShear { x0: Scalar::zero(), slope: Scalar::zero() }
    }

    pub fn is_identity(&self) -> bool {
        self.slope.is_zero()
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(p.x.clone(), &p.y - &(&(&p.x - &self.x0) * &self.slope))
    }

    pub fn invert(&self, p: &Point) -> Point {
        Point::new(p.x.clone(), &p.y + &(&(&p.x - &self.x0) * &self.slope))
    }
}

/// Shears `raw` so the edge between its first two points becomes horizontal.
pub fn shear_to_horizontal(raw: &[Point]) -> Result<(Vec<Point>, AffineShear), GeomError> {
    let (b0, b1) = match raw {
        [b0, b1, ..] => (b0, b1),
        _ => return Err(GeomError::MissingBase),
    };
    let dx = &b1.x - &b0.x;
    if dx.is_zero() {
        return Err(GeomError::VerticalBase);
    }
    let shear = AffineShear { x0: b0.x.clone(), slope: (&b1.y - &b0.y) / dx };
    let out = if shear.is_identity() { raw.to_vec() } else { raw.iter().map(|p| shear.apply(p)).collect() };
    Ok((out, shear))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn seg(a: Point, b: Point) -> DirSegment {
        DirSegment::untagged(a, b)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)).as_sign(), 1);
        assert_eq!(orient(&p(0, 0), &p(1, 1), &p(2, 2)).as_sign(), 0);
        // 5*6 - 2*7 = 16
        assert_eq!(cross(&p(0, 0), &p(5, 2), &p(7, 6)), Scalar::from_int(16));
        assert_eq!(orient(&p(0, 0), &p(5, 2), &p(7, 6)).as_sign(), 1);
    }

    #[test]
    fn intersection_examples() {
        let r = segment_intersection(&seg(p(0, 0), p(2, 2)), &seg(p(0, 2), p(2, 0))).unwrap();
        assert_eq!(r, Some(p(1, 1)));
        let r = segment_intersection(&seg(p(0, 0), p(1, 0)), &seg(p(3, 1), p(4, 1))).unwrap();
        assert_eq!(r, None);

        let q = p(5, 2);
        let a = seg(q.clone(), Point::new(Scalar::ratio(25, 3), Scalar::ratio(10, 3)));
        let b = seg(q.clone(), Point::new(Scalar::ratio(5, 3), Scalar::ratio(10, 3)));
        assert_eq!(segment_intersection(&a, &b).unwrap(), Some(q));
    }

    #[test]
    fn collinear_cases() {
        let a = seg(p(0, 0), p(2, 2));
        assert_eq!(segment_intersection(&a, &seg(p(1, 1), p(3, 3))), Err(GeomError::CollinearOverlap));
        assert_eq!(segment_intersection(&a, &seg(p(2, 2), p(3, 3))).unwrap(), Some(p(2, 2)));
        assert_eq!(segment_intersection(&a, &seg(p(3, 3), p(4, 4))).unwrap(), None);
        let v = seg(p(0, 0), p(0, 2));
        assert_eq!(segment_intersection(&v, &seg(p(0, 1), p(0, 3))), Err(GeomError::CollinearOverlap));
    }

    #[test]
    fn t_junction() {
        let a = seg(p(0, 0), p(4, 0));
        let b = seg(p(2, 0), p(2, 5));
        assert_eq!(segment_intersection(&a, &b).unwrap(), Some(p(2, 0)));
        assert_eq!(segment_intersection(&b, &a).unwrap(), Some(p(2, 0)));
    }

    #[test]
    fn shear_examples() {
        let flat = [p(0, 0), p(10, 0), p(5, 5)];
        let (out, sh) = shear_to_horizontal(&flat).unwrap();
        assert!(sh.is_identity());
        assert_eq!(out, flat.to_vec());

        let raw = [p(0, 0), p(10, 5), p(4, 7)];
        let (out, sh) = shear_to_horizontal(&raw).unwrap();
        assert_eq!(sh.slope, Scalar::ratio(1, 2));
        assert_eq!(out[1], p(10, 0));
        assert_eq!(out[2], p(4, 5));
        for (o, r) in out.iter().zip(raw.iter()) {
            assert_eq!(&sh.invert(o), r);
        }
        assert_eq!(shear_to_horizontal(&[p(1, 0), p(1, 3)]), Err(GeomError::VerticalBase));
    }

    #[test]
    fn areas() {
        assert_eq!(triangle_area(&p(0, 0), &p(10, 0), &p(5, 5)), Scalar::from_int(25));
        assert_eq!(triangle_area(&p(0, 0), &p(1, 1), &p(3, 3)), Scalar::zero());
        assert_eq!(triangle_area(&p(0, 0), &p(10, 0), &p(5, 2)), Scalar::from_int(10));
    }
}
