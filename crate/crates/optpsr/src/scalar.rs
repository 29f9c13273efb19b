//! The scalar abstraction shared by every numeric structure in the crate.
//!
//! Algorithms are written once against [`Scalar`] and instantiated with
//! [`crate::Rat`] (exact arithmetic, the canonical choice) or with `f32`/
//! `f64` when only approximate scores are needed.  The trait is a bounds
//! alias with a blanket implementation, so any type with the right
//! `num-traits` impls qualifies automatically.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// Numbers the crate can compute with: ring operations, signs, ordering,
/// and embedding of machine integers.
///
/// Exactness is *not* part of the contract; callers that need exact
/// satisfaction tests (the optimizers, the feasibility checker) should
/// instantiate with [`crate::Rat`].
pub trait Scalar: Clone + Debug + Display + Num + Signed + PartialOrd + FromPrimitive {
    /// Embed a machine integer.  Panics only for scalars that cannot
    /// represent the value, which none of the supported types hit at the
    /// magnitudes this crate produces.
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("integer embeds into scalar")
    }

    /// `true` iff `self > 0`.  Spelled out so call sites read as the
    /// strict satisfaction test they implement.
    fn is_strictly_positive(&self) -> bool {
        *self > Self::zero()
    }
}

impl<T> Scalar for T where T: Clone + Debug + Display + Num + Signed + PartialOrd + FromPrimitive {}
