use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real numbers used for weights, scores and conjecture values: `f32` or `f64`.
///
/// Serialization goes through serde, which emits the shortest decimal that
/// round-trips for either width.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as float")
    }

    /// Lossy conversion used for values drawn from an `f64` random stream.
    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(Self::nan)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
