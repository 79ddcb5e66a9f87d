//! Small named terrains used throughout the tests and examples.

use alloc::vec::Vec;

use crate::geom::Point;
use crate::terrain::Terrain;

fn build(coords: &[(i64, i64)]) -> Terrain {
    let pts: Vec<Point> = coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
    Terrain::from_points(pts).expect("fixture is a valid terrain")
}

/// A single triangle.
pub fn t1() -> Terrain {
    build(&[(0, 0), (10, 0), (5, 5)])
}

/// A trapezoid with a flat top.
pub fn t2() -> Terrain {
    build(&[(0, 0), (10, 0), (8, 4), (2, 4)])
}

/// Pentagon with one reflex vertex at `(5, 2)`.
pub fn t3() -> Terrain {
    build(&[(0, 0), (10, 0), (7, 6), (5, 2), (2, 4)])
}
