use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real scalar used for coordinates, velocities and classifier features.
///
/// Implemented for `f32` and `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Lossless-where-possible conversion from `f64`.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 converts to any Float scalar")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("Float scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Arithmetic mean, `0` for an empty slice.
pub(crate) fn mean<T: Scalar>(values: &[T]) -> T {
    if values.is_empty() {
        return T::zero();
    }
    values.iter().copied().sum::<T>() / T::of(values.len() as f64)
}

/// Population variance (divisor `n`), `0` for an empty slice.
pub(crate) fn population_variance<T: Scalar>(values: &[T], mean: T) -> T {
    if values.is_empty() {
        return T::zero();
    }
    let ss: T = values.iter().map(|&v| (v - mean) * (v - mean)).sum();
    ss / T::of(values.len() as f64)
}
