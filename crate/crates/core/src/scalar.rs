use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// Coefficient type for polynomials and matrices.
///
/// Anything with ring operations, negation and integer embedding qualifies:
/// `BigRational` and `BigInt` for exact work, `i64` / `f64` for quick
/// experiments. Rank computations assume exact division, so only the exact
/// types give certificates.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("integer embeds into scalar type")
    }
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + Display + Num + Neg<Output = T> + FromPrimitive + Send + Sync
{
}
