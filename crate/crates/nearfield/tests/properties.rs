//! Property-based invariants across randomly drawn geometries, user
//! locations, and scattering regions.
//!
//! These complement the pinned-value unit tests: rather than checking one
//! known answer, each property states something that must hold for *every*
//! valid input (unit-modulus steering entries, Parseval's identity, exact
//! Hermitian symmetry of accumulated correlation matrices, and so on).

use nearfield::beamgrid::{beamforming_gain, BeamGrid};
use nearfield::channel::{
    exact_channel, exact_distances, farfield_response, nearfield_response, UserLocation,
};
use nearfield::correlation::{
    build_correlation, eigen_spectrum, CorrelationOptions, EigenOptions, QuadratureSpec,
    ScatteringRegion,
};
use nearfield::fresnel::{fresnel, fresnel_c, fresnel_s};
use nearfield::geometry::ArrayGeometry;
use nearfield::quad::GaussLegendre;
use nearfield::spectrum::{dft_spectrum, effective_spatial_frequencies, CountOptions};
use proptest::prelude::*;
use std::f64::consts::PI;

/// Strategy for a modest array geometry: `2..=64` antennas, decimetre-scale
/// wavelengths, spacings from a tenth of a wavelength up to one wavelength.
fn any_geometry() -> impl Strategy<Value = ArrayGeometry> {
    (2usize..=64, 0.01f64..1.0, 0.1f64..=1.0).prop_map(|(n, lambda, factor)| {
        ArrayGeometry::with_spacing_factor(n, lambda, factor).unwrap()
    })
}

/// Strategy for a user location away from the end-fire directions and the
/// immediate vicinity of the array.
fn any_location() -> impl Strategy<Value = UserLocation> {
    (0.1f64..(PI - 0.1), 1.0f64..5000.0)
        .prop_map(|(theta, d)| UserLocation::new(theta, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Every entry of the phase-only near-field response has unit modulus.
    #[test]
    fn nearfield_response_has_unit_modulus(geom in any_geometry(), loc in any_location()) {
        for b in nearfield_response(&geom, &loc) {
            prop_assert!((b.norm() - 1.0).abs() <= 1e-12);
        }
    }

    /// Every entry of the far-field steering vector has unit modulus.
    #[test]
    fn farfield_response_has_unit_modulus(geom in any_geometry(), theta in 0.0f64..PI) {
        for a in farfield_response(&geom, theta).unwrap() {
            prop_assert!((a.norm() - 1.0).abs() <= 1e-12);
        }
    }

    /// Exact per-antenna distances stay within one half-aperture of the
    /// reference distance (triangle inequality) and are strictly positive.
    #[test]
    fn exact_distances_obey_triangle_inequality(geom in any_geometry(), loc in any_location()) {
        let half_aperture = 0.5 * geom.aperture_m();
        for d in exact_distances(&geom, &loc) {
            prop_assert!(d > 0.0);
            prop_assert!((d - loc.distance_m()).abs() <= half_aperture + 1e-12);
        }
    }

    /// Spherical-wave channel amplitudes follow the free-space path loss
    /// `lambda / (4 pi d_p)` antenna by antenna.
    #[test]
    fn channel_amplitudes_match_pathloss(geom in any_geometry(), loc in any_location()) {
        let h = exact_channel(&geom, &loc);
        let distances = exact_distances(&geom, &loc);
        for (value, d) in h.coefficients.iter().zip(&distances) {
            let expected = geom.wavelength_m() / (4.0 * PI * d);
            prop_assert!((value.norm() - expected).abs() <= 1e-12 * expected);
        }
    }

    /// The centred DFT preserves energy: `sum_k |X[k]|^2 = N sum_p |s[p]|^2`
    /// (Parseval's identity for the unnormalised transform).
    #[test]
    fn dft_preserves_energy(geom in any_geometry(), loc in any_location()) {
        let samples = nearfield_response(&geom, &loc);
        let spectrum = dft_spectrum(&geom, &samples);
        let direct: f64 = samples.iter().map(|s| s.norm_sqr()).sum();
        let expected = geom.n_antennas() as f64 * direct;
        prop_assert!((spectrum.energy() - expected).abs() <= 1e-9 * expected.max(1.0));
    }

    /// Field boundaries are positive, finite, and follow their defining
    /// expressions in the aperture and wavelength.
    #[test]
    fn field_boundaries_follow_definitions(geom in any_geometry()) {
        let b = geom.field_boundaries();
        let aperture = geom.aperture_m();
        let lambda = geom.wavelength_m();
        prop_assert!(b.reactive_m > 0.0 && b.reactive_m.is_finite());
        prop_assert!(b.amplitude_m > 0.0 && b.amplitude_m.is_finite());
        prop_assert!(b.fraunhofer_m > 0.0 && b.fraunhofer_m.is_finite());
        prop_assert!((b.fraunhofer_m - 2.0 * aperture * aperture / lambda).abs()
            <= 1e-12 * b.fraunhofer_m);
        prop_assert!((b.amplitude_m - 2.0 * aperture).abs() <= 1e-12 * b.amplitude_m);
        prop_assert!((b.reactive_m - 0.62 * (aperture.powi(3) / lambda).sqrt()).abs()
            <= 1e-12 * b.reactive_m);
    }

    /// Beamforming gain against any grid beam lies in `[0, N]`.
    #[test]
    fn beamforming_gain_is_bounded(geom in any_geometry(), loc in any_location(), pick in 0usize..1024) {
        let grid = BeamGrid::new(&geom);
        let target = nearfield_response(&geom, &loc);
        let beam = grid.column(pick % grid.len());
        let gain = beamforming_gain(&target, &beam);
        let n = geom.n_antennas() as f64;
        prop_assert!(gain >= 0.0);
        prop_assert!(gain <= n * (1.0 + 1e-12));
    }

    /// Grid beams are mutually orthogonal with squared norm `N` at any
    /// antenna spacing (the direction filter only drops columns, never
    /// breaks DFT orthogonality).
    #[test]
    fn beam_grid_is_orthogonal(geom in any_geometry()) {
        let grid = BeamGrid::new(&geom);
        let n = geom.n_antennas() as f64;
        let cols: Vec<_> = (0..grid.len()).map(|j| grid.column(j)).collect();
        for (j, cj) in cols.iter().enumerate() {
            for (l, cl) in cols.iter().enumerate() {
                let inner: num_complex::Complex64 =
                    cj.iter().zip(cl.iter()).map(|(a, b)| a.conj() * b).sum();
                let expected = if j == l { n } else { 0.0 };
                prop_assert!((inner.re - expected).abs() <= 1e-9 * n);
                prop_assert!(inner.im.abs() <= 1e-9 * n);
            }
        }
    }

    /// Away from end-fire the 3 dB census always keeps at least the peak
    /// bin, and can never exceed the grid size.
    #[test]
    fn effective_count_stays_in_range(geom in any_geometry(), loc in any_location()) {
        let eff = effective_spatial_frequencies(&geom, &loc, &CountOptions::default());
        prop_assert!(eff.count >= 1);
        prop_assert!(eff.count <= geom.n_antennas());
    }

    /// Fresnel integrals are exactly odd and bounded by their first maxima.
    #[test]
    fn fresnel_is_odd_and_bounded(v in -50.0f64..50.0) {
        let (c, s) = fresnel(v);
        prop_assert_eq!(fresnel_c(-v), -c);
        prop_assert_eq!(fresnel_s(-v), -s);
        prop_assert!(c.abs() <= 0.7799);
        prop_assert!(s.abs() <= 0.7140);
    }

    /// For large arguments both integrals settle onto `±1/2` inside the
    /// asymptotic `1/(pi v)` envelope.
    #[test]
    fn fresnel_approaches_one_half(v in 2.0f64..1.0e6) {
        let (c, s) = fresnel(v);
        let envelope = 0.4 / v;
        prop_assert!((c - 0.5).abs() <= envelope);
        prop_assert!((s - 0.5).abs() <= envelope);
    }

    /// Gauss–Legendre weights are positive, sum to the interval length, and
    /// the nodes stay strictly inside the interval in ascending order.
    #[test]
    fn gauss_legendre_rule_is_well_formed(n in 1usize..=64, a in -10.0f64..10.0, width in 0.1f64..20.0) {
        let rule = GaussLegendre::new(n, a, a + width);
        prop_assert_eq!(rule.len(), n);
        let total: f64 = rule.weights.iter().sum();
        prop_assert!((total - width).abs() <= 1e-12 * width);
        for w in &rule.weights {
            prop_assert!(*w > 0.0);
        }
        for pair in rule.nodes.windows(2) {
            prop_assert!(pair[0] < pair[1]);
        }
        prop_assert!(rule.nodes[0] > a && rule.nodes[n - 1] < a + width);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Small-array correlation matrices are exactly Hermitian, carry trace
    /// `N * beta` with `beta` on every diagonal entry, and are numerically
    /// positive semi-definite.
    #[test]
    fn correlation_matrix_invariants(
        n in 2usize..=8,
        theta1 in 0.1f64..1.2,
        theta_width in 0.2f64..1.5,
        d1 in 20.0f64..50.0,
        d_width in 5.0f64..30.0,
        beta in 0.5f64..2.0,
    ) {
        let geom = ArrayGeometry::half_wavelength(n, 0.1).unwrap();
        let region = ScatteringRegion::new(
            &geom, theta1, theta1 + theta_width, d1, d1 + d_width, beta,
        ).unwrap();
        let options = CorrelationOptions {
            quadrature: Some(QuadratureSpec { n_theta: 16, n_u: 16 }),
            ..CorrelationOptions::default()
        };
        let r = build_correlation(&geom, &region, &options).unwrap();

        prop_assert_eq!(r.hermitian_error(), 0.0);
        let trace = r.trace();
        prop_assert!((trace - n as f64 * beta).abs() <= 1e-12 * n as f64 * beta);
        for p in 0..n {
            prop_assert!((r.get(p, p).re - beta).abs() <= 1e-12 * beta);
            prop_assert_eq!(r.get(p, p).im, 0.0);
        }

        let eigen = eigen_spectrum(&r, &EigenOptions::default()).unwrap();
        prop_assert!(eigen.min_eigenvalue() >= -1e-10 * trace);
        prop_assert!((eigen.total() - trace).abs() <= 1e-9 * trace);
        prop_assert!(eigen.effective_rank_energy >= 1);
        prop_assert!(eigen.effective_rank_threshold >= 1);
        prop_assert!(eigen.effective_rank_energy <= n);
        prop_assert!(eigen.effective_rank_threshold <= n);
    }
}
