//! Cone-bulb antenna directivity model.
//!
//! The pattern amplifies a spherical cap of half-angle `beamwidth/2` by the
//! main-lobe gain `M` and attenuates the rest of the sphere by the side-lobe
//! gain `m`, normalized so the total radiated power is preserved.

use crate::float::Real;
use crate::{Error, Result};

/// Default singularity guard for the beamwidth, 1 degree in radians.
pub const DEFAULT_MIN_BEAMWIDTH_RAD: f64 = core::f64::consts::PI / 180.0;

/// Cone-bulb directivity pattern of a ceiling-mounted AP.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaPattern<T: Real> {
    /// Main-lobe beamwidth θ_BW, radians.
    pub beamwidth_rad: T,
    /// Side-lobe linear power gain m, in (0, 1).
    pub side_lobe_gain: T,
    /// Main-lobe linear power gain M, derived.
    pub main_lobe_gain: T,
    /// Ground radius of the main-lobe footprint, metres, derived from the AP height.
    pub illumination_radius_m: T,
}

impl<T: Real> AntennaPattern<T> {
    /// Builds a pattern for an AP mounted `ap_height_m` above UE level,
    /// using the default minimum-beamwidth guard.
    pub fn new(beamwidth_rad: T, side_lobe_gain: T, ap_height_m: T) -> Result<Self> {
        Self::with_min_beamwidth(
            beamwidth_rad,
            side_lobe_gain,
            ap_height_m,
            T::from_f64_c(DEFAULT_MIN_BEAMWIDTH_RAD),
        )
    }

    /// Builds a pattern with an explicit minimum-beamwidth guard.
    pub fn with_min_beamwidth(
        beamwidth_rad: T,
        side_lobe_gain: T,
        ap_height_m: T,
        min_beamwidth_rad: T,
    ) -> Result<Self> {
        if !(side_lobe_gain > T::zero() && side_lobe_gain < T::one()) {
            return Err(Error::domain("side_lobe_gain must lie in (0, 1)"));
        }
        if ap_height_m <= T::zero() {
            return Err(Error::domain("ap_height_m must be positive"));
        }
        let main_lobe_gain =
            main_lobe_gain_guarded(beamwidth_rad, side_lobe_gain, min_beamwidth_rad)?;
        let illumination_radius_m = illumination_radius(beamwidth_rad, ap_height_m)?;
        Ok(Self {
            beamwidth_rad,
            side_lobe_gain,
            main_lobe_gain,
            illumination_radius_m,
        })
    }
}

/// Main-lobe gain M(θ_BW, m) = (2 − m·(1 + cos θ_BW/2)) / (1 − cos θ_BW/2),
/// with the default minimum-beamwidth guard.
pub fn main_lobe_gain<T: Real>(beamwidth_rad: T, side_lobe_gain: T) -> Result<T> {
    main_lobe_gain_guarded(
        beamwidth_rad,
        side_lobe_gain,
        T::from_f64_c(DEFAULT_MIN_BEAMWIDTH_RAD),
    )
}

/// Main-lobe gain with an explicit minimum-beamwidth guard.
pub fn main_lobe_gain_guarded<T: Real>(
    beamwidth_rad: T,
    side_lobe_gain: T,
    min_beamwidth_rad: T,
) -> Result<T> {
    let tau = T::from_f64_c(core::f64::consts::TAU);
    if beamwidth_rad <= T::zero() || beamwidth_rad > tau {
        return Err(Error::domain("beamwidth_rad must lie in (0, 2π]"));
    }
    if beamwidth_rad < min_beamwidth_rad {
        return Err(Error::domain(
            "beamwidth_rad below the minimum-beamwidth guard",
        ));
    }
    if side_lobe_gain < T::zero() || side_lobe_gain >= T::one() {
        return Err(Error::domain("side_lobe_gain must lie in [0, 1)"));
    }
    let two = T::from_f64_c(2.0);
    let cos_half = (beamwidth_rad / two).cos();
    Ok((two - side_lobe_gain * (T::one() + cos_half)) / (T::one() - cos_half))
}

/// Ground radius of the main-lobe footprint, r_M = h_AP · tan(θ_BW/2).
pub fn illumination_radius<T: Real>(beamwidth_rad: T, ap_height_m: T) -> Result<T> {
    let pi = T::from_f64_c(core::f64::consts::PI);
    if beamwidth_rad <= T::zero() || beamwidth_rad >= pi {
        return Err(Error::domain(
            "beamwidth_rad must lie in (0, π) for a bounded footprint",
        ));
    }
    if ap_height_m <= T::zero() {
        return Err(Error::domain("ap_height_m must be positive"));
    }
    Ok(ap_height_m * (beamwidth_rad / T::from_f64_c(2.0)).tan())
}

/// Directivity gain seen by a UE at the given horizontal distance from the
/// AP's ground projection. Footprint boundary is inclusive.
pub fn directivity_gain<T: Real>(ue_ground_distance_m: T, pattern: &AntennaPattern<T>) -> T {
    if ue_ground_distance_m <= pattern.illumination_radius_m {
        pattern.main_lobe_gain
    } else {
        pattern.side_lobe_gain
    }
}
