//! Deterministic random terrains with integer coordinates.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{AffineShear, Point};
use crate::terrain::Terrain;

/// Height profile of the upper chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Independent heights.
    Uniform,
    /// Alternating deep valleys and tall peaks; roughly half the vertices are reflex.
    Spiky,
    /// A high flat-ish top with occasional deep dips.
    Plateau,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::Uniform, Profile::Spiky, Profile::Plateau];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Uniform => "uniform",
            Profile::Spiky => "spiky",
            Profile::Plateau => "plateau",
        }
    }

    fn tag(self) -> u64 {
        match self {
            Profile::Uniform => 0x75,
            Profile::Spiky => 0x73,
            Profile::Plateau => 0x70,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Profile::Uniform),
            "spiky" => Ok(Profile::Spiky),
            "plateau" => Ok(Profile::Plateau),
            _ => Err(GenError::UnknownProfile),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenError {
    TooFewVertices(usize),
    UnknownProfile,
    /// No valid terrain was produced within the retry budget.
    GenerationFailed,
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::TooFewVertices(n) => write!(f, "need at least 3 vertices, got {n}"),
            GenError::UnknownProfile => write!(f, "unknown profile (expected uniform, spiky or plateau)"),
            GenError::GenerationFailed => write!(f, "GenerationFailed: retry budget exhausted"),
        }
    }
}

const HEIGHT: i64 = 1_000_000_000;
const RETRIES: usize = 64;
/// Above this size only consecutive triples are checked for collinearity.
pub const FULL_GP_LIMIT: usize = 300;

/// A valid terrain with `n` vertices, base from `(0, 0)` to `(4n, 0)`.
/// The same `(n, seed, profile)` always produces the same terrain.
pub fn generate_random(n: usize, seed: u64, profile: Profile) -> Result<Terrain, GenError> {
    if n < 3 {
        return Err(GenError::TooFewVertices(n));
    }
    let mix = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add((n as u64) << 8).wrapping_add(profile.tag());
    let mut rng = ChaCha8Rng::seed_from_u64(mix);
    let width = 4 * n as i64;
    for _ in 0..RETRIES {
        let chain = draw_chain(&mut rng, n, width, profile);
        if general_position(&chain) {
            return Ok(to_terrain(&chain));
        }
    }
    Err(GenError::GenerationFailed)
}

fn draw_chain(rng: &mut ChaCha8Rng, n: usize, width: i64, profile: Profile) -> Vec<(i64, i64)> {
    let inner = n - 2;
    let mut xs: Vec<i64> = index::sample(rng, (width - 1) as usize, inner).into_iter().map(|i| i as i64 + 1).collect();
    xs.sort_unstable();

    let mut chain = Vec::with_capacity(n);
    chain.push((0, 0));
    for (k, &x) in xs.iter().enumerate() {
        let y = match profile {
            Profile::Uniform => rng.gen_range(1..=HEIGHT),
            Profile::Spiky => {
                if k % 2 == 0 {
                    rng.gen_range(HEIGHT / 2..=HEIGHT)
                } else {
                    rng.gen_range(1..=HEIGHT / 10)
                }
            }
            Profile::Plateau => {
                if rng.gen_ratio(1, 10) {
                    rng.gen_range(1..=HEIGHT / 2)
                } else {
                    rng.gen_range(HEIGHT - HEIGHT / 20..=HEIGHT)
                }
            }
        };
        chain.push((x, y));
    }
    chain.push((width, 0));
    chain
}

fn collinear(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> bool {
    let (ax, ay) = ((b.0 - a.0) as i128, (b.1 - a.1) as i128);
    let (bx, by) = ((c.0 - a.0) as i128, (c.1 - a.1) as i128);
    ax * by == ay * bx
}

fn general_position(chain: &[(i64, i64)]) -> bool {
    let n = chain.len();
    if n <= FULL_GP_LIMIT {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if collinear(chain[i], chain[j], chain[k]) {
                        return false;
                    }
                }
            }
        }
        true
    } else {
        chain.windows(3).all(|w| !collinear(w[0], w[1], w[2]))
    }
}

fn to_terrain(chain: &[(i64, i64)]) -> Terrain {
    let n = chain.len();
    let mut vertices = Vec::with_capacity(n);
    vertices.push(Point::from_ints(chain[0].0, chain[0].1));
    vertices.push(Point::from_ints(chain[n - 1].0, chain[n - 1].1));
    for &(x, y) in chain[1..n - 1].iter().rev() {
        vertices.push(Point::from_ints(x, y));
    }
    Terrain::from_normal_form(vertices, AffineShear::identity())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let t = generate_random(3, 99, Profile::Uniform).unwrap();
        assert_eq!(t.n(), 3);
        assert!(t.validate(true).is_empty());
    }

    #[test]
    fn spiky_24_is_valid() {
        let t = generate_random(24, 7, Profile::Spiky).unwrap();
        assert_eq!(t.n(), 24);
        assert!(t.validate(true).is_empty());
    }

    #[test]
    fn deterministic() {
        for profile in Profile::ALL {
            let a = generate_random(40, 5, profile).unwrap();
            let b = generate_random(40, 5, profile).unwrap();
            assert_eq!(a.vertices(), b.vertices());
        }
        let a = generate_random(40, 5, Profile::Uniform).unwrap();
        let b = generate_random(40, 6, Profile::Uniform).unwrap();
        assert_ne!(a.vertices(), b.vertices());
    }

    #[test]
    fn rejects_small_n() {
        assert_eq!(generate_random(2, 0, Profile::Uniform).unwrap_err(), GenError::TooFewVertices(2));
    }

    #[test]
    fn valid_across_sizes() {
        for n in [3usize, 4, 5, 8, 17, 64, 301, 1000] {
            for profile in Profile::ALL {
                let t = generate_random(n, n as u64, profile).unwrap();
                assert!(t.validate(n <= 64).is_empty(), "{n} {profile}");
            }
        }
    }
}
