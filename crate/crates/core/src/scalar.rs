//! Scalar traits shared by the group algebra and the elimination kernels.
//!
//! The exact code paths are written once against these traits and
//! instantiated with machine integers, big integers or big rationals; the
//! type aliases at the crate root name the common instantiations.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::Ratio;

/// A commutative ring with exact arithmetic.
pub trait Ring: num_traits::Num + Clone + Debug + Send + Sync {}

impl<T> Ring for T where T: num_traits::Num + Clone + Debug + Send + Sync {}

/// A ring where fraction-free elimination is valid: exact division by a
/// previous pivot always succeeds.
pub trait IntegralDomain: Ring + num_integer::Integer {}

impl<T> IntegralDomain for T where T: Ring + num_integer::Integer {}

/// A field with exact division. Floating point is deliberately excluded.
pub trait Field: Ring {}

impl<T> Field for Ratio<T> where T: Clone + num_integer::Integer + Debug + Send + Sync {}

/// Big-integer rationals are the default exact field.
pub type Rational = Ratio<BigInt>;
