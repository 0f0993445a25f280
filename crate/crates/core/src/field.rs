use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// Coefficient field for the polynomial kernel.
///
/// All arithmetic must be exact: Gröbner computations and ideal tests compare
/// coefficients with `==`.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// Parses an unsigned decimal integer literal.
    fn parse_integer(digits: &str) -> Option<Self>;

    fn is_negative(&self) -> bool;

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// `self^k` for any integer `k` (`self` must be nonzero when `k < 0`).
    fn powi(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        acc
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Display + Debug + FromPrimitive + FromStr + Send + Sync + 'static,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer fits coefficient type"))
    }

    fn parse_integer(digits: &str) -> Option<Self> {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse::<T>().ok().map(Ratio::from_integer)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rational};

    #[test]
    fn powi_handles_negative_exponents() {
        assert_eq!(rat(2, 3).powi(-2), rat(9, 4));
        assert_eq!(rat(-2, 1).powi(3), rat(-8, 1));
        assert_eq!(rat(5, 7).powi(0), Rational::one());
    }

    #[test]
    fn parse_integer_rejects_signs() {
        assert_eq!(Rational::parse_integer("42"), Some(rat(42, 1)));
        assert_eq!(Rational::parse_integer("-4"), None);
        assert_eq!(<Ratio<i64> as Field>::parse_integer("7"), Some(Ratio::from_integer(7)));
    }
}
