use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::Float;

/// Scalar type for edge weights, filter values and entropy values.
///
/// Everything numeric in this crate is generic over `Real`; `f32` and `f64`
/// satisfy it via the blanket impl. `f64` is the default type parameter on
/// all public types, so downstream code that does not care about the scalar
/// can ignore it entirely.
pub trait Real: Float + Sum + Debug + Display + Default + Send + Sync + 'static {}

impl<T> Real for T where T: Float + Sum + Debug + Display + Default + Send + Sync + 'static {}

/// Converts an `f64` constant into the working scalar.
///
/// Panics only if the target type cannot represent any finite `f64` at all,
/// which does not happen for the supported float types.
pub(crate) fn real<F: Real>(x: f64) -> F {
    F::from(x).expect("constant representable in scalar type")
}
