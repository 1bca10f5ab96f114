//! Self-body blockage geometry.
//!
//! The user's body can occlude the ray from an AP to the UE. Vertically, a UE
//! within the ground disc of radius `r_blockFree` around the AP projection is
//! never blocked; horizontally, the body shadows an angular sector of width
//! `θ_BB` centred on the body direction.

use crate::float::{angle_difference, wrap_angle, Real};
use crate::{Error, Result};

/// Geometry and attenuation of the user's body relative to the device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyModel<T: Real> {
    /// Body width w_body, metres.
    pub body_width_m: T,
    /// Horizontal device-to-body distance d_toBody, metres (0 = device in pocket).
    pub dist_to_body_m: T,
    /// Vertical device-to-head-top distance d_topHead, metres.
    pub dist_top_head_m: T,
    /// Linear power factor applied to blocked links, in (0, 1].
    pub body_attenuation: T,
    /// Angular width θ_BB of the blocked sector, radians, derived; π when d_toBody = 0.
    pub blockage_angle_rad: T,
}

impl<T: Real> BodyModel<T> {
    pub fn new(
        body_width_m: T,
        dist_to_body_m: T,
        dist_top_head_m: T,
        body_attenuation: T,
    ) -> Result<Self> {
        if body_width_m <= T::zero() {
            return Err(Error::domain("body_width_m must be positive"));
        }
        if dist_to_body_m < T::zero() {
            return Err(Error::domain("dist_to_body_m must be non-negative"));
        }
        if dist_top_head_m <= T::zero() {
            return Err(Error::domain("dist_top_head_m must be positive"));
        }
        if !(body_attenuation > T::zero() && body_attenuation <= T::one()) {
            return Err(Error::domain("body_attenuation must lie in (0, 1]"));
        }
        let two = T::from_f64_c(2.0);
        let blockage_angle_rad = if dist_to_body_m == T::zero() {
            T::from_f64_c(core::f64::consts::PI)
        } else {
            two * (body_width_m / (two * dist_to_body_m)).atan()
        };
        Ok(Self {
            body_width_m,
            dist_to_body_m,
            dist_top_head_m,
            body_attenuation,
            blockage_angle_rad,
        })
    }
}

/// Direction from the UE toward the body centre, wrapped to [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyOrientation<T: Real> {
    pub azimuth_rad: T,
}

impl<T: Real> BodyOrientation<T> {
    pub fn new(azimuth_rad: T) -> Self {
        Self {
            azimuth_rad: wrap_angle(azimuth_rad),
        }
    }
}

/// Radius of the self-block free zone, r_blockFree = h_AP · d_toBody / d_topHead.
pub fn block_free_radius<T: Real>(ap_height_m: T, body: &BodyModel<T>) -> Result<T> {
    if ap_height_m <= T::zero() {
        return Err(Error::domain("ap_height_m must be positive"));
    }
    if body.dist_top_head_m <= T::zero() {
        return Err(Error::domain("dist_top_head_m must be positive"));
    }
    Ok(ap_height_m * body.dist_to_body_m / body.dist_top_head_m)
}

/// Probability that a uniformly oriented body blocks a given AP's ray for a
/// UE outside the block-free zone: arctan(w_body / (2·d_toBody)) / π.
/// The d_toBody = 0 limit is 1/2.
pub fn self_block_probability<T: Real>(body: &BodyModel<T>) -> T {
    let two = T::from_f64_c(2.0);
    let pi = T::from_f64_c(core::f64::consts::PI);
    if body.dist_to_body_m == T::zero() {
        return T::one() / two;
    }
    (body.body_width_m / (two * body.dist_to_body_m)).atan() / pi
}

/// Whether the body blocks the ray from the AP at the given ground distance
/// and azimuth (as seen from the UE). Both the vertical condition (UE outside
/// the block-free zone) and the horizontal condition (AP azimuth inside the
/// blocked sector, boundary inclusive) must hold.
pub fn is_blocked<T: Real>(
    ue_to_ap_ground_distance_m: T,
    ue_to_ap_azimuth_rad: T,
    orientation: BodyOrientation<T>,
    body: &BodyModel<T>,
    ap_height_m: T,
) -> Result<bool> {
    let r_free = block_free_radius(ap_height_m, body)?;
    if ue_to_ap_ground_distance_m <= r_free {
        return Ok(false);
    }
    let diff = angle_difference(ue_to_ap_azimuth_rad, orientation.azimuth_rad);
    Ok(diff <= body.blockage_angle_rad / T::from_f64_c(2.0))
}

/// Linear power factor for a link: `body_attenuation` if blocked, else 1.
pub fn attenuation_factor<T: Real>(blocked: bool, body: &BodyModel<T>) -> T {
    if blocked {
        body.body_attenuation
    } else {
        T::one()
    }
}
