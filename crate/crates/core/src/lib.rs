//! Monte Carlo simulator for indoor millimetre-wave networks with
//! ceiling-mounted, fixed-beam access points.
//!
//! APs sit on a hexagonal grid over a square venue and illuminate the floor
//! with a cone-bulb directivity pattern. A UE in the central cell experiences
//! self-body blockage; the engine estimates SINR coverage and area spectral
//! efficiency over seeded, reproducible parameter sweeps.
//!
//! The geometry and link-budget math is generic over the scalar type (see
//! [`float::Real`]); the engine and I/O layers run on `f64`.

pub mod antenna;
pub mod blockage;
pub mod channel;
pub mod config;
pub mod deployment;
pub mod engine;
pub mod float;
pub mod metrics;
pub mod plot;
pub mod report;

/// Double-precision antenna pattern, the engine's working type.
pub type AntennaPattern64 = antenna::AntennaPattern<f64>;
/// Single-precision antenna pattern.
pub type AntennaPattern32 = antenna::AntennaPattern<f32>;
/// Double-precision body model.
pub type BodyModel64 = blockage::BodyModel<f64>;
/// Single-precision body model.
pub type BodyModel32 = blockage::BodyModel<f32>;
/// Double-precision radio configuration.
pub type RadioConfig64 = channel::RadioConfig<f64>;
/// Single-precision radio configuration.
pub type RadioConfig32 = channel::RadioConfig<f32>;

/// Errors reported by the simulator.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid value for `{key}`: {msg}")]
    Validation { key: String, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
