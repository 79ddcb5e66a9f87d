//! Row maxima of implicit totally monotone matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::scalar::Scalar;

/// Matrix value with exact infinitesimals.
///
/// Every `Area` exceeds every `PosEps`, which exceeds every `NegEps`.
/// `PosEps(j)` stands for `j * eps` and `NegEps(j)` for `-j * eps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixEntry {
    Area(Scalar),
    PosEps(usize),
    NegEps(usize),
}

impl MatrixEntry {
    fn rank(&self) -> u8 {
        match self {
            MatrixEntry::NegEps(_) => 0,
            MatrixEntry::PosEps(_) => 1,
            MatrixEntry::Area(_) => 2,
        }
    }

    pub fn area(&self) -> Option<&Scalar> {
        match self {
            MatrixEntry::Area(a) => Some(a),
            _ => None,
        }
    }
}

/// The total order on [`MatrixEntry`].
pub fn entry_compare(a: &MatrixEntry, b: &MatrixEntry) -> Ordering {
    match (a, b) {
        (MatrixEntry::Area(x), MatrixEntry::Area(y)) => x.cmp(y),
        (MatrixEntry::PosEps(i), MatrixEntry::PosEps(j)) => i.cmp(j),
        (MatrixEntry::NegEps(i), MatrixEntry::NegEps(j)) => j.cmp(i),
        _ => a.rank().cmp(&b.rank()),
    }
}

impl PartialOrd for MatrixEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MatrixEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        entry_compare(self, other)
    }
}

/// An implicit matrix whose entries are computed on demand.
pub trait MatrixOracle {
    type Entry: Ord;
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn entry(&self, i: usize, j: usize) -> Self::Entry;
}

/// Leftmost column of the maximum in every row, using SMAWK.
///
/// Requires the matrix to be totally monotone: for `i < i'` and `j < j'`,
/// `M[i', j] > M[i', j']` implies `M[i, j] > M[i, j']`. Performs
/// `O(rows + cols)` entry evaluations; returns the leftmost maxima along
/// with the number of evaluations.
pub fn row_maxima<M: MatrixOracle>(m: &M) -> (Vec<usize>, usize) {
    let (nr, nc) = (m.rows(), m.cols());
    if nr == 0 || nc == 0 {
        return (Vec::new(), 0);
    }
    let mut evals = 0usize;
    let mut f = |i: usize, j: usize| {
        evals += 1;
        m.entry(i, j)
    };
    let rows: Vec<usize> = (0..nr).collect();
    let cols: Vec<usize> = (0..nc).collect();
    let mut out = vec![0usize; nr];
    smawk(&rows, &cols, &mut f, &mut out);
    (out, evals)
}

fn smawk<T: Ord>(rows: &[usize], cols: &[usize], f: &mut impl FnMut(usize, usize) -> T, out: &mut [usize]) {
    if rows.is_empty() {
        return;
    }
    // REDUCE: keep at most one candidate column per row.
    let mut stack: Vec<usize> = Vec::with_capacity(rows.len());
    for &c in cols {
        while let Some(&top) = stack.last() {
            let r = rows[stack.len() - 1];
            if f(r, top) < f(r, c) {
                stack.pop();
            } else {
                break;
            }
        }
        if stack.len() < rows.len() {
            stack.push(c);
        }
    }

    let odd: Vec<usize> = rows.iter().skip(1).step_by(2).copied().collect();
    smawk(&odd, &stack, f, out);

    // INTERPOLATE the even rows between the maxima of their odd neighbours.
    let mut j = 0;
    for i in (0..rows.len()).step_by(2) {
        let r = rows[i];
        let last = if i + 1 < rows.len() { out[rows[i + 1]] } else { *stack.last().expect("non-empty") };
        let mut best = stack[j];
        let mut best_val = f(r, best);
        while stack[j] != last {
            j += 1;
            let v = f(r, stack[j]);
            if v > best_val {
                best = stack[j];
                best_val = v;
            }
        }
        out[r] = best;
    }
}

/// Leftmost row maxima by scanning every entry.
pub fn row_maxima_naive<M: MatrixOracle>(m: &M) -> Vec<usize> {
    (0..m.rows())
        .map(|i| {
            let mut best = 0;
            let mut best_val = m.entry(i, 0);
            for j in 1..m.cols() {
                let v = m.entry(i, j);
                if v > best_val {
                    best = j;
                    best_val = v;
                }
            }
            best
        })
        .collect()
}

/// Whether every 2x2 minor satisfies total monotonicity. Quartic; tests only.
pub fn is_totally_monotone<M: MatrixOracle>(m: &M) -> bool {
    let (nr, nc) = (m.rows(), m.cols());
    for i in 0..nr {
        for i2 in i + 1..nr {
            for j in 0..nc {
                for j2 in j + 1..nc {
                    if m.entry(i2, j) > m.entry(i2, j2) && m.entry(i, j) <= m.entry(i, j2) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A dense matrix, handy for tests and examples.
pub struct Dense<T>(pub Vec<Vec<T>>);

impl<T: Ord + Clone> MatrixOracle for Dense<T> {
    type Entry = T;

    fn rows(&self) -> usize {
        self.0.len()
    }

    fn cols(&self) -> usize {
        self.0.first().map_or(0, Vec::len)
    }

    fn entry(&self, i: usize, j: usize) -> T {
        self.0[i][j].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn area(v: i64) -> MatrixEntry {
        MatrixEntry::Area(Scalar::from_int(v))
    }

    #[test]
    fn entry_order() {
        let tiny = MatrixEntry::Area(Scalar::ratio(1, 1000));
        assert_eq!(entry_compare(&tiny, &MatrixEntry::PosEps(1_000_000)), Ordering::Greater);
        assert_eq!(entry_compare(&MatrixEntry::PosEps(2), &MatrixEntry::PosEps(5)), Ordering::Less);
        assert_eq!(entry_compare(&MatrixEntry::NegEps(2), &MatrixEntry::NegEps(5)), Ordering::Greater);
        assert_eq!(entry_compare(&MatrixEntry::PosEps(0), &MatrixEntry::NegEps(0)), Ordering::Greater);
    }

    #[test]
    fn small_examples() {
        assert_eq!(row_maxima(&Dense(vec![vec![area(7)]])).0, vec![0]);
        assert_eq!(row_maxima(&Dense(vec![vec![area(2), area(1)], vec![area(1), area(2)]])).0, vec![0, 1]);
        assert!(row_maxima(&Dense::<MatrixEntry>(vec![])).0.is_empty());
        assert!(row_maxima(&Dense::<MatrixEntry>(vec![vec![], vec![]])).0.is_empty());
    }

    #[test]
    fn leftmost_on_ties() {
        let m = Dense(vec![vec![1, 3, 3, 2], vec![1, 3, 4, 4], vec![0, 1, 4, 4]]);
        assert!(is_totally_monotone(&m));
        assert_eq!(row_maxima(&m).0, vec![1, 2, 2]);
    }

    /// Staircase matrices shaped like the ones the solver builds: each row
    /// has a contiguous block of values, epsilons on either side, blocks
    /// shifting right going down, filled from a concave-ish profile.
    fn staircase(rows: usize, cols: usize, seeds: &[i64]) -> Dense<MatrixEntry> {
        let mut lo = 0usize;
        let mut hi = 0usize;
        let mut m = Vec::new();
        for i in 0..rows {
            let s = seeds[i % seeds.len()].unsigned_abs() as usize;
            lo = (lo + s % 2).min(cols - 1);
            hi = (hi.max(lo) + s % 3).min(cols - 1);
            let row = (0..cols)
                .map(|j| {
                    if j < lo {
                        MatrixEntry::PosEps(j)
                    } else if j > hi {
                        MatrixEntry::NegEps(j)
                    } else {
                        // Sum of a row term and a column term plus a convex
                        // interaction keeps the block Monge.
                        let (a, b) = (i as i64, j as i64);
                        area(1000 + seeds[j % seeds.len()] * 3 + seeds[i % seeds.len()] - (a - b) * (a - b))
                    }
                })
                .collect();
            m.push(row);
        }
        Dense(m)
    }

    proptest! {
        #[test]
        fn matches_naive_on_monotone(rows in 1usize..9, cols in 1usize..9, seeds in proptest::collection::vec(-50i64..50, 1..12)) {
            let m = staircase(rows, cols, &seeds);
            prop_assume!(is_totally_monotone(&m));
            let (got, evals) = row_maxima(&m);
            prop_assert_eq!(got, row_maxima_naive(&m));
            prop_assert!(evals <= 6 * (rows + cols));
        }

        #[test]
        fn matches_naive_on_monge(rows in 1usize..40, cols in 1usize..40, a in proptest::collection::vec(-1000i64..1000, 40), b in proptest::collection::vec(-1000i64..1000, 40)) {
            // -(a_i - b_j)^2 style entries are totally monotone when a, b are sorted.
            let mut a = a; a.sort();
            let mut b = b; b.sort();
            let m = Dense((0..rows).map(|i| (0..cols).map(|j| -(a[i] - b[j]).pow(2) * 4 + j as i64 % 2).collect()).collect());
            prop_assume!(is_totally_monotone(&m));
            prop_assert_eq!(row_maxima(&m).0, row_maxima_naive(&m));
        }
    }
}
