//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by constructors and numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Array geometry parameters out of range.
    #[error("invalid array geometry: {0}")]
    InvalidGeometry(String),

    /// Polar angle outside `[0, pi]`.
    #[error("polar angle {theta} rad outside [0, pi]")]
    InvalidAngle {
        /// The offending angle in radians.
        theta: f64,
    },

    /// Non-positive or non-finite source distance.
    #[error("source distance {distance} m must be positive and finite")]
    InvalidDistance {
        /// The offending distance in metres.
        distance: f64,
    },

    /// Scattering region with empty or inverted extents, or out-of-range
    /// parameters.
    #[error("invalid scattering region: {0}")]
    InvalidRegion(String),

    /// The scattering region starts inside the amplitude-variation boundary
    /// `2 D`, where the constant-amplitude model underlying the correlation
    /// integrand loses validity.  Construct the region with
    /// `allow_inside_amplitude_boundary` to proceed anyway.
    #[error(
        "scattering region inner distance {d1} m lies inside the amplitude boundary {boundary} m; \
         enable allow_inside_amplitude_boundary to override"
    )]
    RegionInsideAmplitudeBoundary {
        /// Inner radial extent of the region in metres.
        d1: f64,
        /// Amplitude-variation boundary `2 D` in metres.
        boundary: f64,
    },

    /// Quadrature node counts too small to mean anything.
    #[error("quadrature rule needs at least {min} nodes per axis, got {got}")]
    QuadratureTooCoarse {
        /// Minimum accepted node count.
        min: usize,
        /// Requested node count.
        got: usize,
    },

    /// Eigendecomposition failed to converge or produced non-finite values.
    #[error("eigendecomposition failed: {0}")]
    Eigen(String),

    /// A numerical result left the finite range (overflow, NaN).
    #[error("numerical failure: {0}")]
    Numerical(String),
}
