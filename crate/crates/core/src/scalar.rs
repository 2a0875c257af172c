//! Exact scalar fields.
//!
//! Everything in the crate is generic over [`Field`]. The trait is implemented
//! for every `num_rational::Ratio<T>` over a signed integer type, so both the
//! arbitrary-precision [`Rational`](crate::Rational) and fixed-width ratios such
//! as `Ratio<i128>` can drive the same code. Floating point types are not
//! fields in the exact sense used here (rank and kernel computations compare
//! against zero) and deliberately do not implement the trait.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact, ordered field.
pub trait Field: Clone + Debug + Display + Eq + Ord + Hash + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    /// Parses `p`, `-p` or `p/q`.
    fn parse_exact(s: &str) -> Option<Self>;

    /// True when the value is a nonzero element that could act as a pivot.
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Hash + Debug + Display + FromStr + From<i64> + Send + Sync + 'static,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(T::from(v))
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: T = num.parse().ok()?;
        match den {
            None => Some(Ratio::from_integer(num)),
            Some(d) => {
                let den: T = d.parse().ok()?;
                if den.is_zero() {
                    None
                } else {
                    Some(Ratio::new(num, den))
                }
            }
        }
    }
}

/// Binomial coefficient `C(n, k)` as a field element.
pub fn binomial<F: Field>(n: u64, k: u64) -> F {
    if k > n {
        return F::zero();
    }
    let k = k.min(n - k);
    let mut acc = F::one();
    for j in 1..=k {
        acc = acc * F::from_i64((n - k + j) as i64) / F::from_i64(j as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn parses_fractions_in_lowest_terms() {
        let q = Rational::parse_exact("6/4").unwrap();
        assert_eq!(q.to_string(), "3/2");
        assert_eq!(Rational::parse_exact("-7").unwrap(), Rational::from_i64(-7));
        assert!(Rational::parse_exact("1/0").is_none());
        assert!(Rational::parse_exact("abc").is_none());
        assert!(Rational::parse_exact("0.5").is_none());
    }

    #[test]
    fn denominator_is_positive() {
        let q = Rational::parse_exact("3/-6").unwrap();
        assert!(q.denom() > &num_bigint::BigInt::from(0));
        assert_eq!(q.to_string(), "-1/2");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial::<Rational>(5, 2), Rational::from_i64(10));
        assert_eq!(binomial::<Rational>(2, 5), Rational::from_i64(0));
        assert_eq!(binomial::<Ratio<i64>>(10, 0), Ratio::from_integer(1));
    }
}
