//! Spherical-wave (near-field) and planar-wave (far-field) channel models
//! for a ULA serving a single point source.
//!
//! The source sits at polar angle `theta` (measured from the array axis, so
//! `theta = pi/2` is broadside) and distance `d` metres from the array
//! centre.  Element `n` at axis offset `i_n * delta` sees the exact
//! propagation distance
//!
//! ```text
//! d_n = sqrt(d^2 + (i_n delta)^2 - 2 d i_n delta cos theta)
//! ```
//!
//! and the free-space channel coefficient
//!
//! ```text
//! h_n = sqrt(beta_n) exp(-j 2 pi d_n / lambda),    beta_n = (lambda / (4 pi d_n))^2.
//! ```
//!
//! Beyond the amplitude-variation boundary `2 D` the per-element amplitudes
//! are essentially common, and the channel is captured by the unit-modulus
//! *near-field response* `b_n = exp(-j 2 pi (d_n - d) / lambda)` times the
//! common scalar `h_c = sqrt(beta) exp(-j 2 pi d / lambda)`.
//!
//! Expanding `d_n` to second order in the aperture (the Fresnel
//! approximation, writing the direction cosine `cos theta` as `Theta`)
//!
//! ```text
//! d_n ~ d - i_n delta Theta + i_n^2 delta^2 (1 - Theta^2) / (2 d)
//! ```
//!
//! gives the quadratic-phase response used throughout the spatial-spectrum
//! analysis; letting `d -> inf` drops the quadratic term and leaves the
//! familiar far-field steering vector `a_n = exp(+j 2 pi i_n delta Theta / lambda)`.

use num_complex::Complex64;

use crate::error::Error;
use crate::geometry::ArrayGeometry;

/// A point source position in the array's polar coordinates.
///
/// The polar angle is measured from the array axis and restricted to
/// `[0, pi]`; the distance is from the array centre and must be positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserLocation {
    theta_rad: f64,
    distance_m: f64,
}

impl UserLocation {
    /// Builds a location from an angle in radians and a distance in metres.
    pub fn new(theta_rad: f64, distance_m: f64) -> Result<Self, Error> {
        if !(theta_rad.is_finite() && (0.0..=std::f64::consts::PI).contains(&theta_rad)) {
            return Err(Error::InvalidAngle { theta: theta_rad });
        }
        if !(distance_m.is_finite() && distance_m > 0.0) {
            return Err(Error::InvalidDistance { distance: distance_m });
        }
        Ok(Self { theta_rad, distance_m })
    }

    /// Builds a location from an angle in degrees.
    pub fn from_degrees(theta_deg: f64, distance_m: f64) -> Result<Self, Error> {
        Self::new(theta_deg.to_radians(), distance_m)
    }

    /// Polar angle in radians.
    #[inline]
    pub fn theta_rad(&self) -> f64 {
        self.theta_rad
    }

    /// Distance from the array centre in metres.
    #[inline]
    pub fn distance_m(&self) -> f64 {
        self.distance_m
    }

    /// Direction cosine `Theta = cos theta`, in `[-1, 1]`.
    #[inline]
    pub fn dir_cosine(&self) -> f64 {
        self.theta_rad.cos()
    }
}

/// A full channel vector with its model-validity flag.
#[derive(Debug, Clone)]
pub struct ChannelVector {
    /// Per-element complex channel coefficients, in element order.
    pub coefficients: Vec<Complex64>,
    /// Set when the source distance lies inside the reactive near-field
    /// boundary, where the radiating far-zone model behind these
    /// coefficients stops being meaningful.
    pub reactive_warning: bool,
}

/// Exact per-element propagation distances `d_n`, in metres.
pub fn exact_distances(geom: &ArrayGeometry, loc: &UserLocation) -> Vec<f64> {
    let d = loc.distance_m();
    let cos_theta = loc.dir_cosine();
    (0..geom.n_antennas())
        .map(|idx| {
            let y = geom.offset(idx) * geom.spacing_m();
            (d * d + y * y - 2.0 * d * y * cos_theta).sqrt()
        })
        .collect()
}

/// Second-order (Fresnel) approximation of the propagation distances.
///
/// Accurate to `O(aperture^4 / d^3)`; the error grows towards the array
/// ends and shrinks rapidly with distance.
pub fn nearfield_expansion_distance(geom: &ArrayGeometry, loc: &UserLocation) -> Vec<f64> {
    let d = loc.distance_m();
    let cos_theta = loc.dir_cosine();
    let sin2 = 1.0 - cos_theta * cos_theta;
    (0..geom.n_antennas())
        .map(|idx| {
            let y = geom.offset(idx) * geom.spacing_m();
            d - y * cos_theta + y * y * sin2 / (2.0 * d)
        })
        .collect()
}

/// Free-space amplitude `sqrt(beta) = lambda / (4 pi d)` at distance `d`.
#[inline]
pub fn pathloss_amplitude(geom: &ArrayGeometry, distance_m: f64) -> f64 {
    geom.wavelength_m() / (4.0 * std::f64::consts::PI * distance_m)
}

/// Common scalar factor `h_c = sqrt(beta) exp(-j 2 pi d / lambda)` taken at
/// the array centre.
pub fn common_scalar(geom: &ArrayGeometry, loc: &UserLocation) -> Complex64 {
    let phase = -geom.wavenumber() * loc.distance_m();
    pathloss_amplitude(geom, loc.distance_m()) * Complex64::new(phase.cos(), phase.sin())
}

/// Exact free-space channel vector `h_n = sqrt(beta_n) e^{-j 2 pi d_n / lambda}`.
///
/// The result's `reactive_warning` is set when `d` lies inside the reactive
/// near-field boundary; the coefficients are still produced.
pub fn exact_channel(geom: &ArrayGeometry, loc: &UserLocation) -> ChannelVector {
    let k = geom.wavenumber();
    let coefficients = exact_distances(geom, loc)
        .into_iter()
        .map(|dn| {
            let phase = -k * dn;
            pathloss_amplitude(geom, dn) * Complex64::new(phase.cos(), phase.sin())
        })
        .collect();
    ChannelVector {
        coefficients,
        reactive_warning: loc.distance_m() < geom.field_boundaries().reactive_m,
    }
}

/// Unit-modulus near-field response `b_n = exp(-j 2 pi (d_n - d) / lambda)`
/// built from the exact propagation distances.
pub fn nearfield_response(geom: &ArrayGeometry, loc: &UserLocation) -> Vec<Complex64> {
    let k = geom.wavenumber();
    let d = loc.distance_m();
    exact_distances(geom, loc)
        .into_iter()
        .map(|dn| {
            let phase = -k * (dn - d);
            Complex64::new(phase.cos(), phase.sin())
        })
        .collect()
}

/// Quadratic-phase (Fresnel) near-field response,
/// `b_n = exp(+j 2 pi / lambda (i_n delta Theta - i_n^2 delta^2 (1 - Theta^2) / (2 d)))`.
///
/// This is the response obtained by inserting the second-order distance
/// expansion into `exp(-j 2 pi (d_n - d) / lambda)`; it underlies the
/// closed-form beamforming-gain analysis.
pub fn nearfield_expansion_response(geom: &ArrayGeometry, loc: &UserLocation) -> Vec<Complex64> {
    let k = geom.wavenumber();
    let delta = geom.spacing_m();
    let cos_theta = loc.dir_cosine();
    let sin2 = 1.0 - cos_theta * cos_theta;
    let d = loc.distance_m();
    (0..geom.n_antennas())
        .map(|idx| {
            let i = geom.offset(idx);
            let phase = k * (i * delta * cos_theta - i * i * delta * delta * sin2 / (2.0 * d));
            Complex64::new(phase.cos(), phase.sin())
        })
        .collect()
}

/// Far-field (planar wavefront) steering vector for a source at polar angle
/// `theta_rad`: `a_n = exp(+j 2 pi i_n delta cos(theta) / lambda)`.
pub fn farfield_response(geom: &ArrayGeometry, theta_rad: f64) -> Result<Vec<Complex64>, Error> {
    if !(theta_rad.is_finite() && (0.0..=std::f64::consts::PI).contains(&theta_rad)) {
        return Err(Error::InvalidAngle { theta: theta_rad });
    }
    farfield_response_from_cosine(geom, theta_rad.cos())
}

/// Far-field steering vector parameterised directly by the direction cosine
/// `Theta in [-1, 1]`.
pub fn farfield_response_from_cosine(
    geom: &ArrayGeometry,
    dir_cosine: f64,
) -> Result<Vec<Complex64>, Error> {
    if !(dir_cosine.is_finite() && (-1.0..=1.0).contains(&dir_cosine)) {
        return Err(Error::InvalidAngle { theta: dir_cosine.acos() });
    }
    let k = geom.wavenumber();
    let delta = geom.spacing_m();
    Ok((0..geom.n_antennas())
        .map(|idx| {
            let phase = k * geom.offset(idx) * delta * dir_cosine;
            Complex64::new(phase.cos(), phase.sin())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn geom(n: usize) -> ArrayGeometry {
        ArrayGeometry::half_wavelength(n, 0.1).unwrap()
    }

    #[test]
    fn exact_distances_three_element_broadside() {
        // N = 3, delta = 0.05 m, broadside source at 10 m: the outer
        // elements are sqrt(10^2 + 0.05^2) away, the centre exactly 10 m.
        let g = geom(3);
        let loc = UserLocation::new(std::f64::consts::FRAC_PI_2, 10.0).unwrap();
        let d = exact_distances(&g, &loc);
        let outer = (100.0f64 + 0.0025).sqrt();
        assert_relative_eq!(d[0], outer, epsilon = 1e-12);
        assert_relative_eq!(d[1], 10.0, epsilon = 1e-12);
        assert_relative_eq!(d[2], outer, epsilon = 1e-12);
    }

    #[test]
    fn distances_collapse_towards_axis() {
        // At theta = 0 the source sits on the array axis: d_n = |d - y_n|.
        let g = geom(5);
        let loc = UserLocation::new(0.0, 2.0).unwrap();
        let d = exact_distances(&g, &loc);
        for (idx, dn) in d.iter().enumerate() {
            let y = g.offset(idx) * g.spacing_m();
            assert_relative_eq!(*dn, (2.0 - y).abs(), epsilon = 1e-12);
        }
    }

    #[test]
    fn expansion_error_large_desk_array() {
        // N = 225 at lambda = 0.1 m, broadside, d = 25 m: the worst-case
        // expansion error (at the array ends) is 7.676 mm — comfortably
        // below lambda/8, slightly above lambda/16.
        let g = geom(225);
        let loc = UserLocation::new(std::f64::consts::FRAC_PI_2, 25.0).unwrap();
        let exact = exact_distances(&g, &loc);
        let approx = nearfield_expansion_distance(&g, &loc);
        let max_err = exact
            .iter()
            .zip(&approx)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max)
            ;
        assert!((max_err - 7.6762e-3).abs() < 1e-6, "max_err = {max_err}");
        assert!(max_err < g.wavelength_m() / 8.0);
    }

    #[test]
    fn expansion_converges_quartically_in_distance() {
        // Leading error term scales as d^-3: doubling the distance should
        // shrink the worst-case error by ~8x.
        let g = geom(225);
        let err = |d: f64| {
            let loc = UserLocation::new(std::f64::consts::FRAC_PI_2, d).unwrap();
            exact_distances(&g, &loc)
                .iter()
                .zip(nearfield_expansion_distance(&g, &loc))
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max)
        };
        let ratio = err(50.0) / err(100.0);
        assert!((ratio - 8.0).abs() < 0.4, "ratio = {ratio}");
    }

    #[test]
    fn nearfield_response_is_unit_modulus() {
        let g = geom(64);
        let loc = UserLocation::new(1.1, 7.5).unwrap();
        for b in nearfield_response(&g, &loc) {
            assert_relative_eq!(b.norm(), 1.0, epsilon = 1e-14);
        }
        for b in nearfield_expansion_response(&g, &loc) {
            assert_relative_eq!(b.norm(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn broadside_responses_are_symmetric() {
        // At theta = pi/2 the geometry is mirror-symmetric, so b_n = b_{N+1-n}.
        let g = geom(16);
        let loc = UserLocation::new(std::f64::consts::FRAC_PI_2, 3.0).unwrap();
        for b in [nearfield_response(&g, &loc), nearfield_expansion_response(&g, &loc)] {
            for (x, y) in b.iter().zip(b.iter().rev()) {
                assert_relative_eq!(x.re, y.re, epsilon = 1e-12);
                assert_relative_eq!(x.im, y.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn exact_channel_equals_common_scalar_times_response_in_phase() {
        // h_n and h_c * b_n agree exactly in phase; amplitudes differ only
        // through beta_n vs beta, which fades beyond the 2D boundary.
        let g = geom(10);
        let boundaries = g.field_boundaries();
        let loc = UserLocation::new(1.0, 10.0 * boundaries.amplitude_m).unwrap();
        let h = exact_channel(&g, &loc);
        assert!(!h.reactive_warning);
        let hc = common_scalar(&g, &loc);
        let b = nearfield_response(&g, &loc);
        for (hn, bn) in h.coefficients.iter().zip(&b) {
            let reconstructed = hc * bn;
            // Identical phase.
            let phase_diff = (hn / reconstructed).arg();
            assert!(phase_diff.abs() < 1e-12);
            // Amplitude ratio d / d_n deviates from 1 by at most about
            // i_max delta / d = 2.25e-2 at this distance.
            let ratio = hn.norm() / reconstructed.norm();
            assert!((ratio - 1.0).abs() < 2.5e-2, "ratio = {ratio}");
        }
    }

    #[test]
    fn amplitude_taper_follows_distance() {
        // The element closest to the source carries the largest amplitude.
        let g = geom(8);
        let loc = UserLocation::new(0.9, 1.5).unwrap();
        let h = exact_channel(&g, &loc);
        let d = exact_distances(&g, &loc);
        let closest = d
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        let strongest = h
            .coefficients
            .iter()
            .map(|c| c.norm())
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap()
            .0;
        assert_eq!(closest, strongest);
        for (dn, hn) in d.iter().zip(&h.coefficients) {
            assert_relative_eq!(hn.norm(), pathloss_amplitude(&g, *dn), epsilon = 1e-15);
        }
    }

    #[test]
    fn reactive_warning_fires_inside_boundary() {
        let g = geom(16);
        let reactive = g.field_boundaries().reactive_m;
        let inside = UserLocation::new(1.0, reactive * 0.5).unwrap();
        let outside = UserLocation::new(1.0, reactive * 1.5).unwrap();
        assert!(exact_channel(&g, &inside).reactive_warning);
        assert!(!exact_channel(&g, &outside).reactive_warning);
    }

    #[test]
    fn nearfield_approaches_farfield_at_fraunhofer() {
        // At d = d_FA the residual (quadratic) phase error peaks at about
        // pi/8 at the array ends (exactly pi/8 ((N-1)/N)^2 at broadside);
        // far beyond it the responses coincide.
        let g = geom(100);
        let fraunhofer = g.field_boundaries().fraunhofer_m;
        let theta = std::f64::consts::FRAC_PI_2;
        let a = farfield_response(&g, theta).unwrap();

        let at = |d: f64| {
            let loc = UserLocation::new(theta, d).unwrap();
            nearfield_response(&g, &loc)
                .iter()
                .zip(&a)
                .map(|(bn, an)| (bn / an).arg().abs())
                .fold(0.0f64, f64::max)
        };
        let at_boundary = at(fraunhofer);
        let limit = std::f64::consts::PI / 8.0;
        assert!(at_boundary < limit * 1.001, "phase dev {at_boundary}");
        assert!(at_boundary > limit * 0.9, "phase dev {at_boundary}");
        assert!(at(100.0 * fraunhofer) < limit / 50.0);
    }

    #[test]
    fn farfield_cosine_and_angle_forms_agree() {
        let g = geom(9);
        let theta = 0.7;
        let a1 = farfield_response(&g, theta).unwrap();
        let a2 = farfield_response_from_cosine(&g, theta.cos()).unwrap();
        for (x, y) in a1.iter().zip(&a2) {
            assert_relative_eq!(x.re, y.re, epsilon = 1e-15);
            assert_relative_eq!(x.im, y.im, epsilon = 1e-15);
        }
    }

    #[test]
    fn invalid_locations_rejected() {
        assert!(UserLocation::new(-0.1, 1.0).is_err());
        assert!(UserLocation::new(std::f64::consts::PI + 0.1, 1.0).is_err());
        assert!(UserLocation::new(1.0, 0.0).is_err());
        assert!(UserLocation::new(1.0, -5.0).is_err());
        assert!(UserLocation::new(f64::NAN, 1.0).is_err());
        assert!(UserLocation::new(1.0, f64::INFINITY).is_err());
        let g = geom(4);
        assert!(farfield_response(&g, -0.2).is_err());
        assert!(farfield_response_from_cosine(&g, 1.2).is_err());
    }
}
