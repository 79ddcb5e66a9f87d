//! Largest-area triangle inscribed in a terrain.
//!
//! A terrain is an `x`-monotone polygon whose lower boundary is a single
//! segment. [`solve`] returns one largest-area inscribed triangle in
//! `O(n log n)` time using exact rational arithmetic throughout.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod apex;
pub mod fixtures;
pub mod gen;
pub mod geom;
pub mod hst;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod smawk;
pub mod spt;
pub mod terrain;

pub use geom::{AffineShear, DirSegment, Orientation, Point, SegmentTag};
pub use scalar::Scalar;
pub use terrain::{GroundedTriangle, Terrain, TerrainError, VertexClass, Violation};
