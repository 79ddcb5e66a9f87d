//! Dense univariate polynomials over [`Scalar`] with exact real-root
//! isolation by Sturm sequences.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::scalar::Scalar;

/// Coefficients from the constant term up; never has a zero leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(vec![c])
    }

    /// `a + b x`.
    pub fn linear(a: Scalar, b: Scalar) -> Poly {
        Poly::new(vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &Scalar::from_int(i as i64)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Scalar::zero();
        Poly::new((0..n).map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, k: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder of division by a non-zero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = &divisor.coeffs[d];
        let mut r = self.coeffs.clone();
        let mut q = vec![Scalar::zero(); r.len().saturating_sub(d)];
        while r.len() > d {
            let top = r.len() - 1;
            let factor = &r[top] / lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let idx = top - d + i;
                r[idx] = &r[idx] - &(&factor * c);
            }
            q[top - d] = factor;
            r.pop();
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Number of sign changes in the coefficients of the polynomial mapped
    /// from `(a, b)` onto `(0, inf)`. Zero proves there is no root in `(a, b)`.
    pub fn descartes_bound(&self, a: &Scalar, b: &Scalar) -> usize {
        let Some(d) = self.degree() else { return 0 };
        // Q(z) = (1 + z)^d P((a + b z) / (1 + z)) = sum c_i (a + b z)^i (1 + z)^(d - i).
        let base = Poly::linear(a.clone(), b.clone());
        let one_z = Poly::linear(Scalar::one(), Scalar::one());
        let mut q = Poly::zero();
        let mut pow_base = Poly::constant(Scalar::one());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut term = pow_base.scale(c);
                for _ in 0..d - i {
                    term = term.mul(&one_z);
                }
                q = q.add(&term);
            }
            pow_base = pow_base.mul(&base);
        }
        sign_changes(q.coeffs.iter().map(Scalar::sign))
    }
}

fn sign_changes(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut changes = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Sturm sequence of a polynomial.
#[derive(Debug, Clone)]
pub struct Sturm {
    chain: Vec<Poly>,
}

impl From<Vec<Poly>> for Sturm {
    fn from(chain: Vec<Poly>) -> Sturm {
        Sturm { chain }
    }
}

impl Sturm {
    /// Sturm sequence of the square-free part of `p`, which has the same
    /// distinct roots; this keeps counts exact even at multiple roots.
    pub fn new(p: &Poly) -> Sturm {
        let chain = Sturm::chain_of(p);
        match chain.last().and_then(Poly::degree) {
            Some(d) if d > 0 => Sturm::chain_of(&p.div_rem(chain.last().expect("non-empty")).0).into(),
            _ => chain.into(),
        }
    }

    fn chain_of(p: &Poly) -> Vec<Poly> {
        let mut chain = vec![p.clone()];
        if p.is_zero() {
            return chain;
        }
        let mut next = p.derivative();
        while !next.is_zero() {
            let r = chain.last().expect("non-empty").rem(&next).scale(&-Scalar::one());
            chain.push(next);
            next = r;
        }
        chain
    }

    fn variations(&self, x: &Scalar) -> usize {
        sign_changes(self.chain.iter().map(|q| q.eval(x).sign()))
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Scalar, b: &Scalar) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Disjoint brackets `(lo, hi]`, each containing exactly one distinct
    /// root inside `(a, b)`, each narrower than `width`.
    pub fn isolate(&self, a: &Scalar, b: &Scalar, width: &Scalar) -> Vec<(Scalar, Scalar)> {
        let mut out = Vec::new();
        let mut todo = vec![(a.clone(), b.clone())];
        while let Some((lo, hi)) = todo.pop() {
            let k = self.count(&lo, &hi);
            // Roots exactly at b belong to the closed end and are not interior.
            let k = if &hi == b && self.chain[0].eval(b).is_zero() { k - 1 } else { k };
            if k == 0 {
                continue;
            }
            if k == 1 && &(&hi - &lo) < width {
                out.push((lo, hi));
                continue;
            }
            let mid = lo.midpoint(&hi);
            todo.push((mid.clone(), hi));
            todo.push((lo, mid));
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 2]);
        let b = p(&[-1, 0, 1]);
        assert_eq!(a.mul(&b), p(&[-1, -2, 1, 2]));
        assert_eq!(b.derivative(), p(&[0, 2]));
        assert_eq!(a.mul(&b).rem(&b), Poly::zero());
        assert_eq!(p(&[5, 0, 1]).rem(&p(&[0, 1])), p(&[5]));
        assert_eq!(a.mul(&b).eval(&s(3)), s(56));
        assert_eq!(a.sub(&a), Poly::zero());
        assert_eq!(a.mul(&b).div_rem(&a), (b.clone(), Poly::zero()));
    }

    #[test]
    fn sturm_counts_distinct_roots() {
        // (x - 1)(x - 2)^2(x - 5)
        let q = p(&[-1, 1]).mul(&p(&[-2, 1])).mul(&p(&[-2, 1])).mul(&p(&[-5, 1]));
        let st = Sturm::new(&q);
        assert_eq!(st.count(&s(0), &s(10)), 3);
        assert_eq!(st.count(&s(1), &s(10)), 2);
        assert_eq!(st.count(&s(0), &s(1)), 1);
        let roots = st.isolate(&s(0), &s(10), &Scalar::ratio(1, 1000));
        assert_eq!(roots.len(), 3);
        for ((lo, hi), want) in roots.iter().zip([1, 2, 5]) {
            assert!(lo < &s(want) && &s(want) <= hi);
        }
        // Roots at the ends of the interval are not interior, and a
        // bisection point landing on the double root is handled.
        assert_eq!(st.isolate(&s(1), &s(5), &Scalar::ratio(1, 10)).len(), 1);
        assert_eq!(st.count(&s(1), &s(2)), 1);
        assert_eq!(st.count(&s(2), &s(3)), 0);
    }

    #[test]
    fn irrational_roots_are_bracketed() {
        let q = p(&[-2, 0, 1]);
        let roots = Sturm::new(&q).isolate(&s(0), &s(2), &Scalar::ratio(1, 1 << 30));
        assert_eq!(roots.len(), 1);
        let (lo, hi) = &roots[0];
        assert!(q.eval(lo).is_negative() && !q.eval(hi).is_negative());
    }

    #[test]
    fn descartes_certificate() {
        let q = p(&[-1, 1]).mul(&p(&[-4, 1]));
        assert_eq!(q.descartes_bound(&s(2), &s(3)), 0);
        assert!(q.descartes_bound(&s(0), &s(2)) >= 1);
        assert!(q.descartes_bound(&s(0), &s(5)) >= 2);
        assert_eq!(Poly::zero().descartes_bound(&s(0), &s(1)), 0);
    }
}
