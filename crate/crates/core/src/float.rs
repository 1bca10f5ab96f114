//! Scalar abstraction for the geometry and link-budget math.

use num_traits::{Float, FromPrimitive};

/// Floating point scalar: f32 or f64.
pub trait Real: Float + FromPrimitive + core::fmt::Debug + Send + Sync + 'static {
    /// Lossy conversion from an f64 literal or constant.
    fn from_f64_c(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts a power ratio from decibels to linear scale.
pub fn db_to_linear<T: Real>(db: T) -> T {
    let ten = T::from_f64_c(10.0);
    ten.powf(db / ten)
}

/// Converts a linear power ratio to decibels.
pub fn linear_to_db<T: Real>(linear: T) -> T {
    T::from_f64_c(10.0) * linear.log10()
}

/// Converts a power level from dBm to watts.
pub fn dbm_to_watts<T: Real>(dbm: T) -> T {
    db_to_linear(dbm) * T::from_f64_c(1e-3)
}

/// Wraps an angle to [0, 2π).
pub fn wrap_angle<T: Real>(angle: T) -> T {
    let tau = T::from_f64_c(core::f64::consts::TAU);
    let r = angle % tau;
    if r < T::zero() {
        r + tau
    } else {
        r
    }
}

/// Absolute angular difference between two azimuths, in [0, π].
pub fn angle_difference<T: Real>(a: T, b: T) -> T {
    let tau = T::from_f64_c(core::f64::consts::TAU);
    let d = wrap_angle(a - b);
    if d > tau / T::from_f64_c(2.0) {
        tau - d
    } else {
        d
    }
}
