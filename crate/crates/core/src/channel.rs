//! Path loss, noise, received power and SINR evaluation.
//!
//! All quantities are kept in linear scale; dB appears only at I/O
//! boundaries.

use crate::float::{db_to_linear, Real};
use crate::{Error, Result};

/// Speed of light, m/s.
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;
/// Boltzmann constant, J/K.
pub const BOLTZMANN_J_K: f64 = 1.380_649e-23;
/// Thermal noise reference temperature, K.
pub const NOISE_REF_TEMPERATURE_K: f64 = 290.0;

/// Transmitter and link-budget parameters shared by all APs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConfig<T: Real> {
    /// Transmit power P_TX, watts.
    pub tx_power_w: T,
    pub carrier_freq_hz: T,
    pub bandwidth_hz: T,
    pub noise_figure_linear: T,
    /// Free-space path loss at 1 m, linear factor L_0.
    pub ref_loss_1m: T,
    /// Attenuation exponent α.
    pub pathloss_exponent: T,
    /// Thermal noise power N_0 = k_B·T_0·BW·NF, watts, derived.
    pub noise_power_w: T,
}

impl<T: Real> RadioConfig<T> {
    pub fn new(
        tx_power_w: T,
        carrier_freq_hz: T,
        bandwidth_hz: T,
        noise_figure_db: T,
        pathloss_exponent: T,
    ) -> Result<Self> {
        if tx_power_w <= T::zero() {
            return Err(Error::domain("tx_power_w must be positive"));
        }
        if carrier_freq_hz <= T::zero() {
            return Err(Error::domain("carrier_freq_hz must be positive"));
        }
        if bandwidth_hz <= T::zero() {
            return Err(Error::domain("bandwidth_hz must be positive"));
        }
        if pathloss_exponent <= T::zero() {
            return Err(Error::domain("pathloss_exponent must be positive"));
        }
        Ok(Self {
            tx_power_w,
            carrier_freq_hz,
            bandwidth_hz,
            noise_figure_linear: db_to_linear(noise_figure_db),
            ref_loss_1m: free_space_ref_loss(carrier_freq_hz),
            pathloss_exponent,
            noise_power_w: noise_power(bandwidth_hz, noise_figure_db),
        })
    }
}

/// Per-AP link state for one realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkState<T: Real> {
    pub ap_index: usize,
    pub ground_distance_m: T,
    /// Directivity gain G ∈ {m, M}.
    pub gain: T,
    /// Body attenuation B ∈ {L_body, 1}.
    pub blockage: T,
    pub received_power_w: T,
}

impl<T: Real> LinkState<T> {
    /// Assembles a link with received power P_TX·G·L(d, h_AP)·B.
    pub fn evaluate(
        ap_index: usize,
        ground_distance_m: T,
        ap_height_m: T,
        gain: T,
        blockage: T,
        config: &RadioConfig<T>,
    ) -> Self {
        let loss = path_loss(ground_distance_m, ap_height_m, config);
        Self {
            ap_index,
            ground_distance_m,
            gain,
            blockage,
            received_power_w: config.tx_power_w * gain * loss * blockage,
        }
    }
}

/// Friis free-space loss at 1 m: (c / (4π·f·1 m))².
pub fn free_space_ref_loss<T: Real>(carrier_freq_hz: T) -> T {
    let c = T::from_f64_c(SPEED_OF_LIGHT_M_S);
    let four_pi = T::from_f64_c(4.0 * core::f64::consts::PI);
    let x = c / (four_pi * carrier_freq_hz);
    x * x
}

/// L(d, h_AP) = L_0 · (√(d² + h_AP²))^(−α).
pub fn path_loss<T: Real>(ground_distance_m: T, ap_height_m: T, config: &RadioConfig<T>) -> T {
    let r2 = ground_distance_m * ground_distance_m + ap_height_m * ap_height_m;
    let half = T::from_f64_c(0.5);
    config.ref_loss_1m * r2.powf(-config.pathloss_exponent * half)
}

/// Thermal noise power k_B·290·BW·10^(NF/10), watts.
pub fn noise_power<T: Real>(bandwidth_hz: T, noise_figure_db: T) -> T {
    T::from_f64_c(BOLTZMANN_J_K * NOISE_REF_TEMPERATURE_K)
        * bandwidth_hz
        * db_to_linear(noise_figure_db)
}

/// SINR of the serving link against thermal noise plus the full interference
/// sum over every other AP.
pub fn sinr<T: Real>(
    serving_index: usize,
    links: &[LinkState<T>],
    config: &RadioConfig<T>,
) -> Result<T> {
    if links.is_empty() {
        return Err(Error::domain("sinr requires a non-empty link list"));
    }
    let mut serving = None;
    let mut interference = T::zero();
    for link in links {
        if link.ap_index == serving_index {
            serving = Some(link.received_power_w);
        } else {
            interference = interference + link.received_power_w;
        }
    }
    let serving =
        serving.ok_or_else(|| Error::domain("serving_index not present in the link list"))?;
    Ok(serving / (config.noise_power_w + interference))
}
