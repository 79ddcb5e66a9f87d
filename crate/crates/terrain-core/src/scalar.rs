//! Exact rational scalar used for every coordinate, slope and area.
//!
//! Values whose reduced numerator and denominator fit in an `i128` are
//! stored inline and combined with checked machine arithmetic; anything
//! larger, or any operation that would overflow, falls back to a
//! big-integer rational. The two forms never hold the same value, so
//! equality and hashing stay structural.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Lowest terms, `d > 0`, `n != i128::MIN`.
    Small { n: i128, d: i128 },
    /// Only for values that do not fit `Small`.
    Big(BigRational),
}

/// An arbitrary-precision rational number, always kept in lowest terms with
/// a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

/// A reduced small fraction, or `None` if it does not fit.
fn small(n: i128, d: i128) -> Option<Scalar> {
    debug_assert!(d != 0);
    if n == i128::MIN || d == i128::MIN {
        return None;
    }
    let g = n.gcd(&d);
    let (mut n, mut d) = (n / g, d / g);
    if d < 0 {
        n = n.checked_neg()?;
        d = d.checked_neg()?;
    }
    (n != i128::MIN).then_some(Scalar(Repr::Small { n, d }))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small { n: 0, d: 1 })
    }

    pub fn one() -> Self {
        Scalar(Repr::Small { n: 1, d: 1 })
    }

    pub fn from_int(v: i64) -> Self {
        Scalar(Repr::Small { n: v as i128, d: 1 })
    }

    /// `num / den`. Panics if `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        small(num as i128, den as i128).expect("i64 fractions fit")
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        Scalar::from(BigRational::new(num, den))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { n, .. } => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { d, .. } => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match &self.0 {
            Repr::Small { n, d } => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { n: 0, .. })
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Sign as an ordering against zero.
    pub fn sign(&self) -> Ordering {
        match &self.0 {
            Repr::Small { n, .. } => n.cmp(&0),
            Repr::Big(r) => {
                if r.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small { n, d } => {
                assert!(*n != 0, "reciprocal of zero");
                small(*d, *n).expect("swapping a small fraction fits")
            }
            Repr::Big(r) => Scalar::from(r.recip()),
        }
    }

    pub fn half(&self) -> Self {
        match &self.0 {
            Repr::Small { n, d } if n % 2 == 0 => Scalar(Repr::Small { n: n / 2, d: *d }),
            Repr::Small { n, d } => d
                .checked_mul(2)
                .and_then(|d2| small(*n, d2))
                .unwrap_or_else(|| self.big_op(&Scalar::from_int(2), |a, b| a / b)),
            Repr::Big(r) => Scalar::from(r / BigInt::from(2)),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { d, .. } => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    /// Nearest `f64`; for display and timing paths only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { n, d } => *n as f64 / *d as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Scalar) -> Scalar {
        (self + other).half()
    }

    fn big_op(&self, other: &Scalar, f: impl FnOnce(BigRational, BigRational) -> BigRational) -> Scalar {
        Scalar::from(f(self.to_rational(), other.to_rational()))
    }

    fn add_ref(&self, other: &Scalar) -> Scalar {
        if let (Repr::Small { n: n1, d: d1 }, Repr::Small { n: n2, d: d2 }) = (&self.0, &other.0) {
            let fast = if d1 == d2 {
                n1.checked_add(*n2).and_then(|n| small(n, *d1))
            } else {
                // Knuth's reduction: only gcd(d1, d2) can be shared.
                let g = d1.gcd(d2);
                let (a, b) = (d1 / g, d2 / g);
                n1.checked_mul(b)
                    .zip(n2.checked_mul(a))
                    .and_then(|(x, y)| x.checked_add(y))
                    .filter(|&t| t != i128::MIN)
                    .and_then(|t| {
                        let g2 = t.gcd(&g);
                        a.checked_mul(d2 / g2).and_then(|d| small(t / g2, d))
                    })
            };
            if let Some(v) = fast {
                return v;
            }
        }
        self.big_op(other, |a, b| a + b)
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        if let (Repr::Small { n: n1, d: d1 }, Repr::Small { n: n2, d: d2 }) = (&self.0, &other.0) {
            let g1 = n1.gcd(d2).max(1);
            let g2 = n2.gcd(d1).max(1);
            let fast = (n1 / g1)
                .checked_mul(n2 / g2)
                .zip((d1 / g2).checked_mul(d2 / g1))
                .and_then(|(n, d)| (n != i128::MIN).then_some(Scalar(Repr::Small { n, d })));
            if let Some(v) = fast {
                return v;
            }
        }
        self.big_op(other, |a, b| a * b)
    }

    fn div_ref(&self, other: &Scalar) -> Scalar {
        assert!(!other.is_zero(), "division by zero");
        self.mul_ref(&other.recip())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small { n: n1, d: d1 }, Repr::Small { n: n2, d: d2 }) = (&self.0, &other.0) {
            if d1 == d2 {
                return n1.cmp(n2);
            }
            // Each side carries at most a few ulps of relative error.
            let (a, b) = (*n1 as f64 / *d1 as f64, *n2 as f64 / *d2 as f64);
            if (a - b).abs() > 1e-12 * (a.abs() + b.abs()) {
                return a.partial_cmp(&b).expect("finite");
            }
            if let (Some(x), Some(y)) = (n1.checked_mul(*d2), n2.checked_mul(*d1)) {
                return x.cmp(&y);
            }
        }
        self.to_rational().cmp(&other.to_rational())
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::from_int(v as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        match (v.numer().to_i128(), v.denom().to_i128()) {
            (Some(n), Some(d)) if n != i128::MIN => Scalar(Repr::Small { n, d }),
            _ => Scalar(Repr::Big(v)),
        }
    }
}

/// Error returned when a decimal literal cannot be read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError {
    pub input: String,
}

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid decimal number `{}`", self.input)
    }
}

/// Parses decimal literals such as `12`, `-0.125`, `3.5e-2` and plain
/// fractions `7/3`. Decimals are scaled by a power of ten, so the conversion
/// is lossless.
impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError { input: String::from(s) };
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Scalar::from(BigRational::new(n, d)));
        }

        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(pos) => {
                let e: i64 = s[pos + 1..].parse().map_err(|_| err())?;
                (&s[..pos], e)
            }
            None => (s, 0),
        };
        let (negative, digits) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = match digits.split_once('.') {
            Some((i, f)) => (i, f),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        if exponent.unsigned_abs() > 4096 {
            return Err(err());
        }

        let mut all = String::with_capacity(int_part.len() + frac_part.len());
        all.push_str(int_part);
        all.push_str(frac_part);
        let mut num: BigInt = all.parse().map_err(|_| err())?;
        if negative {
            num = -num;
        }
        let scale = exponent - frac_part.len() as i64;
        let ten = BigInt::from(10);
        let value = if scale >= 0 {
            BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(Scalar::from(value))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { n, d: 1 } => write!(f, "{n}"),
            Repr::Small { n, d } => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                self.$imp(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            #[inline]
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$imp(&rhs)
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            #[inline]
            fn $m(self, rhs: &'b Scalar) -> Scalar {
                self.$imp(rhs)
            }
        }
    };
}

impl Scalar {
    fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&-other)
    }
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, div_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small { n, d } => Scalar(Repr::Small { n: -n, d: *d }),
            Repr::Big(r) => Scalar::from(-r),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.sub_ref(rhs);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_ref(rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing_is_lossless() {
        assert_eq!("0.1".parse::<Scalar>().unwrap(), Scalar::ratio(1, 10));
        assert_eq!("-12.50".parse::<Scalar>().unwrap(), Scalar::ratio(-25, 2));
        assert_eq!("3.5e-2".parse::<Scalar>().unwrap(), Scalar::ratio(7, 200));
        assert_eq!("2E3".parse::<Scalar>().unwrap(), Scalar::from_int(2000));
        assert_eq!("7/21".parse::<Scalar>().unwrap(), Scalar::ratio(1, 3));
        assert_eq!(".5".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "-", "1.2.3", "abc", "1e", "4/0", "1 2"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad}");
        }
    }

    #[test]
    fn canonical_form() {
        let v = Scalar::ratio(6, -4);
        assert_eq!(v.numer(), BigInt::from(-3));
        assert_eq!(v.denom(), BigInt::from(2));
        assert_eq!(alloc::format!("{v}"), "-3/2");
        assert_eq!(alloc::format!("{}", Scalar::from_int(25)), "25");
    }

    #[test]
    fn arithmetic() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 6);
        assert_eq!(&a + &b, Scalar::ratio(1, 2));
        assert_eq!(&a - &b, b);
        assert_eq!(&a * &b, Scalar::ratio(1, 18));
        assert_eq!(&a / &b, Scalar::from_int(2));
        assert!(Scalar::ratio(-1, 1000) < Scalar::zero());
    }

    fn big(v: &Scalar) -> BigRational {
        v.to_rational()
    }

    #[test]
    fn small_and_big_agree() {
        // Values straddling the i128 boundary must behave like plain rationals.
        let huge = Scalar::from(BigRational::from_integer(BigInt::from(i128::MAX) * BigInt::from(3)));
        let near = Scalar::from(BigRational::new(BigInt::from(i128::MAX), BigInt::from(7)));
        let vals = [
            Scalar::ratio(1, 3),
            Scalar::ratio(-5, 7),
            Scalar::from_int(i64::MAX),
            Scalar::from(BigRational::new(BigInt::from(i128::MAX - 1), BigInt::from(i128::MAX))),
            near.clone(),
            huge.clone(),
            -&huge,
            Scalar::zero(),
        ];
        for a in &vals {
            for b in &vals {
                assert_eq!(big(&(a + b)), big(a) + big(b));
                assert_eq!(big(&(a - b)), big(a) - big(b));
                assert_eq!(big(&(a * b)), big(a) * big(b));
                if !b.is_zero() {
                    assert_eq!(big(&(a / b)), big(a) / big(b));
                }
                assert_eq!(a.cmp(b), big(a).cmp(&big(b)));
                assert_eq!(a == b, big(a) == big(b));
            }
        }
        // Results that shrink back into range compare equal to small values.
        assert_eq!(&(&huge - &huge) + &Scalar::one(), Scalar::one());
        assert_eq!(&huge / &huge, Scalar::one());
    }

    #[test]
    fn close_values_compare_exactly() {
        let a = Scalar::from(BigRational::new(BigInt::from(10i128.pow(30)), BigInt::from(10i128.pow(30) + 1)));
        let b = Scalar::from(BigRational::new(BigInt::from(10i128.pow(30) + 1), BigInt::from(10i128.pow(30) + 2)));
        assert!(a < b);
        assert!(Scalar::ratio(1, 3) > Scalar::ratio(333_333_333_333, 1_000_000_000_000));
    }
}
