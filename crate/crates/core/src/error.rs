use thiserror::Error;

/// Errors raised when a physical input or configuration is invalid.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("wavenumber must be positive and finite, got {0}")]
    NonPositiveWavenumber(f64),

    #[error("amplitudes have zero total norm")]
    ZeroNorm,

    #[error("squared amplitudes sum to {0}, expected 1")]
    NotNormalized(f64),

    #[error("total energy {energy} lies below internal level {level}")]
    EnergyBelowLevel { energy: f64, level: f64 },

    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },

    #[error("measurement basis is not orthonormal (deviation {0:e})")]
    NonOrthonormalBasis(f64),

    #[error("angular frequency {0} appears more than once")]
    RepeatedFrequency(f64),

    #[error("packet has no components")]
    EmptyPacket,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<f64> {
    if value.is_nan() || value < min || value > max {
        Err(Error::OutOfRange { name, value, min, max })
    } else {
        Ok(value)
    }
}

pub(crate) fn check_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NotFinite { name, value })
    }
}
