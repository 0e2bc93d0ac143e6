//! Uniform linear array geometry and radiated-field region boundaries.
//!
//! The array is a uniform linear array (ULA) of `N` elements with spacing
//! `delta` metres, centred on the origin of its axis.  Element `n`
//! (1-based, `n = 1..=N`) sits at coordinate `i_n * delta` where
//!
//! ```text
//! i_n = n - (N + 1) / 2
//! ```
//!
//! so the offsets are symmetric about zero: half-integers for even `N`,
//! integers for odd `N`.  The aperture is `D = N * delta`.
//!
//! Around a transmitting aperture the radiated field is conventionally split
//! into concentric regions; [`FieldBoundaries`] reports the three classical
//! boundary distances (reactive near field, amplitude-variation distance,
//! Fraunhofer far field).

use crate::error::Error;

/// Speed of light in vacuum, metres per second.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// A uniform linear array together with the carrier wavelength.
///
/// All distances are in metres.  The type is cheap to copy and carries no
/// heap data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    n_antennas: usize,
    spacing_m: f64,
    wavelength_m: f64,
}

impl ArrayGeometry {
    /// Builds a geometry from an explicit wavelength.
    ///
    /// # Errors
    ///
    /// Rejects `n_antennas == 0` and non-positive or non-finite spacing /
    /// wavelength.
    pub fn with_wavelength(
        n_antennas: usize,
        spacing_m: f64,
        wavelength_m: f64,
    ) -> Result<Self, Error> {
        if n_antennas == 0 {
            return Err(Error::InvalidGeometry("array needs at least one antenna".into()));
        }
        if !(spacing_m.is_finite() && spacing_m > 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "element spacing must be positive and finite, got {spacing_m}"
            )));
        }
        if !(wavelength_m.is_finite() && wavelength_m > 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "wavelength must be positive and finite, got {wavelength_m}"
            )));
        }
        Ok(Self { n_antennas, spacing_m, wavelength_m })
    }

    /// Builds a geometry from a carrier frequency in hertz
    /// (`wavelength = c / f_c`).
    pub fn from_carrier(n_antennas: usize, spacing_m: f64, carrier_hz: f64) -> Result<Self, Error> {
        if !(carrier_hz.is_finite() && carrier_hz > 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "carrier frequency must be positive and finite, got {carrier_hz}"
            )));
        }
        Self::with_wavelength(n_antennas, spacing_m, SPEED_OF_LIGHT / carrier_hz)
    }

    /// Builds a geometry with the spacing given as a multiple of the
    /// wavelength (`spacing = factor * wavelength`), the usual way array
    /// layouts are quoted.
    pub fn with_spacing_factor(
        n_antennas: usize,
        spacing_over_lambda: f64,
        wavelength_m: f64,
    ) -> Result<Self, Error> {
        if !(spacing_over_lambda.is_finite() && spacing_over_lambda > 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "spacing/wavelength ratio must be positive and finite, got {spacing_over_lambda}"
            )));
        }
        Self::with_wavelength(n_antennas, spacing_over_lambda * wavelength_m, wavelength_m)
    }

    /// Critically sampled array: `spacing = wavelength / 2`.
    pub fn half_wavelength(n_antennas: usize, wavelength_m: f64) -> Result<Self, Error> {
        Self::with_spacing_factor(n_antennas, 0.5, wavelength_m)
    }

    /// Number of antenna elements `N`.
    #[inline]
    pub fn n_antennas(&self) -> usize {
        self.n_antennas
    }

    /// Element spacing in metres.
    #[inline]
    pub fn spacing_m(&self) -> f64 {
        self.spacing_m
    }

    /// Carrier wavelength in metres.
    #[inline]
    pub fn wavelength_m(&self) -> f64 {
        self.wavelength_m
    }

    /// Spacing expressed in wavelengths, `delta / lambda`.
    #[inline]
    pub fn spacing_over_lambda(&self) -> f64 {
        self.spacing_m / self.wavelength_m
    }

    /// Array aperture `D = N * delta` in metres.
    #[inline]
    pub fn aperture_m(&self) -> f64 {
        self.n_antennas as f64 * self.spacing_m
    }

    /// Wavenumber `k = 2 pi / lambda` in radians per metre.
    #[inline]
    pub fn wavenumber(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.wavelength_m
    }

    /// Signed half-integer/integer offset of element `idx` (0-based) from the
    /// array centre, in units of the spacing: `i = idx - (N - 1) / 2`.
    #[inline]
    pub fn offset(&self, idx: usize) -> f64 {
        debug_assert!(idx < self.n_antennas);
        idx as f64 - (self.n_antennas as f64 - 1.0) / 2.0
    }

    /// Offsets `i_n` for all elements, in element order.
    ///
    /// The offsets are symmetric about zero and spaced by exactly 1; for
    /// even `N` they are half-integers (e.g. `N = 4` gives
    /// `[-1.5, -0.5, 0.5, 1.5]`), for odd `N` integers.
    pub fn offsets(&self) -> Vec<f64> {
        (0..self.n_antennas).map(|idx| self.offset(idx)).collect()
    }

    /// Physical element coordinates `i_n * delta` along the array axis,
    /// in metres, in element order.
    pub fn antenna_positions(&self) -> Vec<f64> {
        (0..self.n_antennas).map(|idx| self.offset(idx) * self.spacing_m).collect()
    }

    /// Classical radiated-field region boundaries for this aperture.
    pub fn field_boundaries(&self) -> FieldBoundaries {
        let d = self.aperture_m();
        let lambda = self.wavelength_m;
        FieldBoundaries {
            reactive_m: 0.62 * (d.powi(3) / lambda).sqrt(),
            amplitude_m: 2.0 * d,
            fraunhofer_m: 2.0 * d * d / lambda,
        }
    }
}

/// The three classical field-region boundary distances of an aperture of
/// size `D` at wavelength `lambda`, in metres.
///
/// * reactive near-field boundary: `0.62 * sqrt(D^3 / lambda)`;
/// * amplitude-variation boundary: `2 D` — beyond it the per-element
///   amplitude differences across the aperture are negligible and only the
///   phase front curvature matters;
/// * Fraunhofer (far-field) distance: `2 D^2 / lambda` — beyond it the
///   phase front is planar to within the usual `pi/8` criterion.
///
/// For any aperture larger than about a wavelength these are ordered
/// `reactive < amplitude < fraunhofer`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldBoundaries {
    /// Reactive near-field boundary in metres.
    pub reactive_m: f64,
    /// Amplitude-variation boundary `2 D` in metres.
    pub amplitude_m: f64,
    /// Fraunhofer far-field distance `2 D^2 / lambda` in metres.
    pub fraunhofer_m: f64,
}
