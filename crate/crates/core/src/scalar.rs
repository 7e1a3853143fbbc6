//! Numeric traits the engine is generic over.
//!
//! Every sign decision runs on an exact integer ring ([`ExactScalar`]);
//! derived geometric quantities that are only ever displayed (areas, float
//! alpha values) are produced in a floating-point type ([`FloatScalar`]).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, FromPrimitive, Signed, ToPrimitive};

/// An exact, signed integer ring.
///
/// Implemented for the primitive signed integers and for [`BigInt`]. The
/// primitive types are only safe for very small coordinates because predicate
/// polynomials have degree up to seven in the input; the pipeline itself uses
/// [`BigInt`] (see [`crate::Coord`]).
pub trait ExactScalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Lossy conversion used only for display values.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl ExactScalar for i32 {}
impl ExactScalar for i64 {}
impl ExactScalar for i128 {}
impl ExactScalar for BigInt {}

/// Floating-point output type for display quantities.
pub trait FloatScalar: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl FloatScalar for f32 {}
impl FloatScalar for f64 {}
