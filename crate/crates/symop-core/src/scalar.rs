//! Scalar abstraction for the exact linear algebra underneath the engine.
//!
//! Every construction in this crate is plain field linear algebra, so the
//! whole core is generic over the scalar. The only instantiation the tests
//! and the CLI exercise is `num_rational::BigRational` (see [`crate::Q`]);
//! rank, kernel and quotient computations rely on `==` against zero being
//! meaningful, so exact fields are the intended instances.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

/// An exact field scalar.
///
/// The blanket impl below picks this up for any type with field-like
/// arithmetic from `num-traits`, in particular `BigRational`.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    /// Embeds a small signed integer, used for Koszul signs and averaging.
    fn from_i64(n: i64) -> Self;

    /// Multiplicative inverse. Panics on zero, like field division.
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Scalar for T
where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + AddAssign
        + SubAssign
        + MulAssign
        + 'static,
{
    fn from_i64(n: i64) -> Self {
        let mut acc = T::zero();
        let one = T::one();
        for _ in 0..n.unsigned_abs() {
            acc += one.clone();
        }
        if n < 0 {
            -acc
        } else {
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    #[test]
    fn from_i64_matches_bigrational() {
        assert_eq!(Q::from_i64(-3), -Q::from_integer(3.into()));
        assert_eq!(Q::from_i64(0), Q::zero());
        assert_eq!(Q::from_i64(7).inv() * Q::from_i64(7), Q::one());
    }
}
