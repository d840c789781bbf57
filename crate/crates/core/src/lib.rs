//! Exact toolkit for skew-distance set systems.
//!
//! * [`family`]: subsets of `[n]`, skew distance `sd(F,G) = min(|F∖G|, |G∖F|)`,
//!   and the L-close Sperner / L-sd checks, plus the family file format.
//! * [`constructions`]: explicit extremal and near-extremal families.
//! * [`polycert`]: multilinear polynomials `p_{F,L}` and exact rank
//!   certificates of their linear independence.
//! * [`search`]: exact `ex_sd(n, L)` by maximum clique, with a brute-force
//!   oracle and a seeded random-family generator.
//! * [`analysis`]: step-by-step audit of the inductive bound for `L = {0,1}`.
//!
//! Polynomial and matrix code is generic over [`Scalar`]; the exact aliases
//! below are what certificates use.

pub mod analysis;
pub mod constructions;
pub mod error;
pub mod family;
pub mod polycert;
mod scalar;
pub mod search;
pub mod subset;

pub use error::{Error, Result};
pub use family::{
    is_close_sperner, is_sd_family, sd, sd_profile, DistanceSpec, PairViolation, SetFamily,
};
pub use scalar::Scalar;
pub use subset::{char_vector, CharVector, Subset};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;

pub type RationalPoly = polycert::MultilinearPoly<Rational>;
pub type RationalMatrix = polycert::Matrix<Rational>;
pub type IntegerMatrix = polycert::Matrix<Integer>;
pub type F64Poly = polycert::MultilinearPoly<f64>;
