//! Permutation matrices of cyclic products, characters of the symmetric
//! group, and rank-based lower bounds for two-way automata.

pub mod bounds;
pub mod characters;
pub mod error;
pub mod group_algebra;
pub mod matrix;
pub mod perm;
pub mod permmatrix;
pub mod scalar;
pub mod twoway;
pub mod verify;
pub mod young;

use num_bigint::BigInt;

pub use error::{Error, Result};
pub use group_algebra::GroupAlgebraElement;
pub use matrix::{BinaryMatrix, DenseMatrix};
pub use perm::Permutation;
pub use permmatrix::{rank_certified, RankCertificate, RankConfig, RankMethod};
pub use scalar::{Field, IntegralDomain, Rational, Ring};
pub use twoway::TwoWayDfa;
pub use verify::{Suite, VerifyOptions, VerifyReport};
pub use young::Partition;

/// Group algebra element with integer coefficients.
pub type IntegerAlgebraElement = GroupAlgebraElement<BigInt>;
/// Group algebra element with rational coefficients.
pub type RationalAlgebraElement = GroupAlgebraElement<Rational>;
/// Group algebra element with machine-integer coefficients.
pub type SmallAlgebraElement = GroupAlgebraElement<i64>;
pub type IntMatrix = DenseMatrix<BigInt>;
pub type RationalMatrix = DenseMatrix<Rational>;
