//! Timing runs over generated terrains.

use std::fmt::Write as _;
use std::time::Instant;

use terrain_core::apex::{solve, SolveError};
use terrain_core::gen::{generate_random, GenError, Profile};

pub const CSV_HEADER: &str = "n,time_ms,sum_list_sizes,nodes,pieces";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    /// Median over the repetitions.
    pub time_ms: f64,
    pub sum_list_sizes: usize,
    pub nodes: usize,
    pub pieces: usize,
}

#[derive(Debug)]
pub enum BenchError {
    Gen(GenError),
    Solve(SolveError),
}

impl std::fmt::Display for BenchError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchError::Gen(e) => write!(f, "{e}"),
            BenchError::Solve(e) => write!(f, "{e}"),
        }
    }
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

/// Solves one terrain per size `reps` times. The terrain for size `n` is
/// `generate_random(n, seed, profile)`, so the counters are reproducible.
pub fn run(sizes: &[usize], reps: usize, seed: u64, profile: Profile) -> Result<Vec<BenchRow>, BenchError> {
    let reps = reps.max(1);
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let t = generate_random(n, seed, profile).map_err(BenchError::Gen)?;
        let mut times = Vec::with_capacity(reps);
        let mut stats = None;
        for _ in 0..reps {
            let start = Instant::now();
            let sol = solve(&t).map_err(BenchError::Solve)?;
            times.push(start.elapsed().as_secs_f64() * 1e3);
            stats = Some(sol.stats);
        }
        let s = stats.expect("at least one repetition");
        rows.push(BenchRow {
            n,
            time_ms: median(&mut times),
            sum_list_sizes: s.list_size,
            nodes: s.hst_nodes,
            pieces: s.pieces,
        });
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{:.3},{},{},{}", r.n, r.time_ms, r.sum_list_sizes, r.nodes, r.pieces);
    }
    out
}

/// Least-squares slope of `log t` against `log n`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, t)| (n.ln(), t.max(1e-9).ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
