//! Cross-checks against independently coded reference computations.
//!
//! Each oracle here is written from scratch in the most literal style
//! possible — plane-geometry distances via `hypot`, a textbook DFT double
//! loop, composite Gauss–Legendre quadrature of the Fresnel integrands —
//! so that agreement with the library is evidence of correctness rather
//! than of shared code.

use nearfield::channel::{exact_distances, nearfield_response, UserLocation};
use nearfield::correlation::{
    build_correlation, monte_carlo_correlation, ChannelSampler, CorrelationOptions,
    MonteCarloOptions, ScatteringRegion,
};
use nearfield::exec::Strategy;
use nearfield::fresnel::fresnel;
use nearfield::geometry::ArrayGeometry;
use nearfield::quad::GaussLegendre;
use nearfield::spectrum::dft_spectrum;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Places the array on the z-axis and the user in the xz-plane, then
/// measures every element-to-user distance with plain coordinate geometry.
fn coordinate_distances(geom: &ArrayGeometry, theta_rad: f64, distance_m: f64) -> Vec<f64> {
    let user_x = distance_m * theta_rad.sin();
    let user_z = distance_m * theta_rad.cos();
    geom.offsets()
        .iter()
        .map(|&z| f64::hypot(user_x, user_z - z * geom.spacing_m()))
        .collect()
}

#[test]
fn exact_distances_match_coordinate_geometry() {
    let cases = [
        (16usize, 2.0 * PI / 3.0, 0.5),
        (16, PI / 2.0, 3.0),
        (225, PI / 3.0, 25.0),
        (225, 0.3, 100.0),
        (7, 2.9, 1.7),
    ];
    for (n, theta, d) in cases {
        let geom = ArrayGeometry::half_wavelength(n, 0.1).unwrap();
        let loc = UserLocation::new(theta, d).unwrap();
        let fast = exact_distances(&geom, &loc);
        let reference = coordinate_distances(&geom, theta, d);
        for (a, b) in fast.iter().zip(&reference) {
            assert!(
                (a - b).abs() <= 1e-12 * b,
                "distance mismatch at n={n} theta={theta} d={d}: {a} vs {b}"
            );
        }
    }
}

/// Textbook DFT at a (possibly negative) centred bin index `k`:
/// `X[k] = sum_p s[p] e^(-j 2 pi k p / N)` over the 0-based element index.
fn naive_dft(samples: &[Complex64], k: i64) -> Complex64 {
    let n = samples.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for (p, s) in samples.iter().enumerate() {
        let phase = -2.0 * PI * k as f64 * p as f64 / n as f64;
        acc += s * Complex64::new(phase.cos(), phase.sin());
    }
    acc
}

#[test]
fn spectrum_matches_naive_dft() {
    for (n, theta, d) in [(8usize, PI / 2.0, 4.0), (33, 1.1, 9.0), (64, 2.2, 40.0)] {
        let geom = ArrayGeometry::half_wavelength(n, 0.1).unwrap();
        let loc = UserLocation::new(theta, d).unwrap();
        let samples = nearfield_response(&geom, &loc);
        let spectrum = dft_spectrum(&geom, &samples);
        for (bin, value) in spectrum.bins().iter().zip(spectrum.values()) {
            let reference = naive_dft(&samples, *bin);
            assert!(
                (value - reference).norm() <= 1e-10 * n as f64,
                "bin {bin} mismatch at n={n}: {value} vs {reference}"
            );
        }
    }
}

/// Composite Gauss–Legendre evaluation of `C(v)` and `S(v)`: the integrand
/// `cos(pi t^2 / 2)` (resp. `sin`) oscillates faster as `t` grows, so the
/// interval is split into enough panels for a 20-point rule per panel.
fn fresnel_oracle(v: f64) -> (f64, f64) {
    let x = v.abs();
    if x == 0.0 {
        return (0.0, 0.0);
    }
    let panels = ((PI * x * x / 4.0).ceil() as usize + 8).min(4000);
    let mut c = 0.0;
    let mut s = 0.0;
    for p in 0..panels {
        let a = x * p as f64 / panels as f64;
        let b = x * (p + 1) as f64 / panels as f64;
        let rule = GaussLegendre::new(20, a, b);
        c += rule.integrate(|t| (0.5 * PI * t * t).cos());
        s += rule.integrate(|t| (0.5 * PI * t * t).sin());
    }
    (c.copysign(v), s.copysign(v))
}

#[test]
fn fresnel_matches_quadrature_oracle() {
    let spots = [
        0.05, 0.1, 0.5, 1.0, 1.5, 1.6, 1.7, 2.0, 2.5, 3.0, 3.1, 5.0, 8.0, 12.5, 20.0, 37.7,
    ];
    for &x in &spots {
        for v in [x, -x] {
            let (c, s) = fresnel(v);
            let (c_ref, s_ref) = fresnel_oracle(v);
            assert!(
                (c - c_ref).abs() <= 1e-11,
                "C({v}) = {c} vs oracle {c_ref}"
            );
            assert!(
                (s - s_ref).abs() <= 1e-11,
                "S({v}) = {s} vs oracle {s_ref}"
            );
        }
    }
}

#[test]
fn monte_carlo_agrees_on_alternate_region_and_seed() {
    let geom = ArrayGeometry::half_wavelength(8, 0.1).unwrap();
    let region =
        ScatteringRegion::new(&geom, 0.3 * PI, 0.7 * PI, 10.0, 15.0, 1.0).unwrap();
    let quadrature = build_correlation(&geom, &region, &CorrelationOptions::default()).unwrap();
    let mc = monte_carlo_correlation(
        &geom,
        &region,
        &MonteCarloOptions { n_realizations: 50_000, n_paths: 4, seed: 7, ..Default::default() },
    )
    .unwrap();
    let rel = mc.rel_frobenius_distance(&quadrature);
    assert!(rel < 0.08, "Monte-Carlo relative Frobenius distance {rel}");
}

#[test]
fn sampler_covariance_agrees_on_alternate_seed() {
    let geom = ArrayGeometry::half_wavelength(8, 0.1).unwrap();
    let region =
        ScatteringRegion::new(&geom, 0.3 * PI, 0.7 * PI, 10.0, 15.0, 1.0).unwrap();
    let r = build_correlation(&geom, &region, &CorrelationOptions::default()).unwrap();
    let sampler = ChannelSampler::new(&r).unwrap();
    let empirical = sampler.empirical_covariance(50_000, 11, Strategy::default());
    let rel = empirical.rel_frobenius_distance(&r);
    assert!(rel < 0.08, "sampled covariance relative Frobenius distance {rel}");
}
