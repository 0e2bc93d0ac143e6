//! Spatial-frequency analysis of sampled wavefronts and beamforming-gain
//! profiles over the Fourier beam grid.
//!
//! A wavefront sampled at the `N` element positions is a length-`N` complex
//! sequence; its discrete spatial spectrum is the centred DFT
//!
//! ```text
//! X[k] = sum_{p=0}^{N-1} s[p] exp(-j 2 pi p k / N),
//! k = -floor(N/2) .. N-1-floor(N/2),
//! ```
//!
//! where bin `k` corresponds to spatial frequency `k / (N delta)` cycles per
//! metre along the aperture.  A planar (far-field) wavefront from a grid
//! direction occupies a single bin; a spherical (near-field) wavefront
//! spreads over many.
//!
//! The same physics viewed through a beamforming lens: steering the array
//! to grid direction `Theta_n` collects gain
//!
//! ```text
//! G(Theta_n) = |a(Theta_n)^H b|^2 / N^2  in [0, 1],
//! ```
//!
//! and the number of beams whose gain clears a threshold relative to the
//! profile peak — the *effective number of spatial frequencies* — measures
//! how many array DoF the source engages.  `G` admits a closed form in
//! Fresnel integrals (see [`closed_form_gain`]); both the DFT profile and
//! the closed form are available as counting routes.
//!
//! The direct `O(N^2)` DFT is deliberate: profiles are dominated by the
//! `O(N^2)` gain evaluation anyway, array sizes here are a few hundred, and
//! the direct sum keeps bin ordering and phase conventions explicit.

use num_complex::Complex64;

use crate::beamgrid::BeamGrid;
use crate::channel::{
    farfield_response, nearfield_expansion_response, nearfield_response, UserLocation,
};
use crate::error::Error;
use crate::fresnel::fresnel;
use crate::geometry::ArrayGeometry;

/// Below this value of `1 - Theta^2` the source direction counts as
/// end-fire, where the Fresnel parameterisation of the closed-form gain
/// degenerates.
const END_FIRE_GAMMA: f64 = 1e-30;

/// Matching tolerance between a beam direction and the source direction in
/// the degenerate end-fire indicator.
const END_FIRE_MATCH_TOL: f64 = 1e-12;

/// Which wavefront is sampled across the aperture.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavefrontModel {
    /// Planar wavefront: the far-field steering vector of the source angle.
    FarField,
    /// Spherical wavefront with exact per-element propagation distances.
    NearField,
}

/// Samples the chosen wavefront of a source at `loc` across the aperture.
pub fn sample_wavefront(
    geom: &ArrayGeometry,
    loc: &UserLocation,
    model: WavefrontModel,
) -> Vec<Complex64> {
    match model {
        WavefrontModel::FarField => {
            farfield_response(geom, loc.theta_rad()).expect("validated location")
        }
        WavefrontModel::NearField => nearfield_response(geom, loc),
    }
}

/// Centred discrete spatial spectrum of an aperture-sampled sequence.
#[derive(Debug, Clone)]
pub struct SpatialSpectrum {
    bins: Vec<i64>,
    values: Vec<Complex64>,
    bin_spacing_per_m: f64,
}

impl SpatialSpectrum {
    /// Centred bin indices, ascending (`-floor(N/2) .. N-1-floor(N/2)`).
    #[inline]
    pub fn bins(&self) -> &[i64] {
        &self.bins
    }

    /// Complex DFT values, aligned with [`bins`](Self::bins).
    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Spatial frequency of each bin in cycles per metre, `k / (N delta)`.
    pub fn frequencies_per_m(&self) -> Vec<f64> {
        self.bins.iter().map(|&k| k as f64 * self.bin_spacing_per_m).collect()
    }

    /// `|X[k]|` per bin.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }

    /// Total spectral energy `sum_k |X[k]|^2` (equals `N sum_p |s[p]|^2`).
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    /// Number of bins (`N`).
    #[inline]
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    /// True for an empty spectrum (never constructed by [`dft_spectrum`]).
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }
}

/// Computes the centred spatial DFT of `samples` taken on `geom`'s elements.
///
/// # Panics
///
/// Panics when `samples.len()` differs from the element count; callers
/// always derive the samples from the same geometry.
pub fn dft_spectrum(geom: &ArrayGeometry, samples: &[Complex64]) -> SpatialSpectrum {
    let n = geom.n_antennas();
    assert_eq!(samples.len(), n, "sample count must equal element count");
    let half = (n / 2) as i64;
    let mut bins = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for k in -half..(n as i64 - half) {
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, s) in samples.iter().enumerate() {
            let phase = -2.0 * std::f64::consts::PI * (p as i64 * k) as f64 / n as f64;
            acc += s * Complex64::new(phase.cos(), phase.sin());
        }
        bins.push(k);
        values.push(acc);
    }
    SpatialSpectrum {
        bins,
        values,
        bin_spacing_per_m: 1.0 / (n as f64 * geom.spacing_m()),
    }
}

/// Phase model behind the near-field gain profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhaseModel {
    /// Quadratic-phase (Fresnel) wavefront from the second-order distance
    /// expansion — the model the closed-form gain describes exactly in the
    /// continuum limit, and the default for spatial-spectrum analysis.
    #[default]
    Fresnel,
    /// Exact spherical-wave phases.  At desk-scale distances comparable to
    /// the aperture, fourth-order phase terms make this profile deviate
    /// visibly from the Fresnel model (and from the closed form built on
    /// it); it is provided for sensitivity studies.
    ExactDistance,
}

/// Beamforming-gain profile of one source over the full beam grid.
#[derive(Debug, Clone)]
pub struct GainProfile {
    directions: Vec<f64>,
    bins: Vec<i64>,
    dft_gains: Vec<f64>,
    closed_form: Vec<f64>,
    degenerate_end_fire: bool,
    wavelength_m: f64,
}

impl GainProfile {
    /// Beam direction cosines, descending (the beam grid order).
    #[inline]
    pub fn directions(&self) -> &[f64] {
        &self.directions
    }

    /// DFT bin index of each beam.
    #[inline]
    pub fn bins(&self) -> &[i64] {
        &self.bins
    }

    /// Gains `|a(Theta_n)^H b|^2 / N^2` from the sampled wavefront.
    #[inline]
    pub fn dft_gains(&self) -> &[f64] {
        &self.dft_gains
    }

    /// Closed-form gains at the same beams.
    #[inline]
    pub fn closed_form(&self) -> &[f64] {
        &self.closed_form
    }

    /// Set when the source direction is end-fire and the closed-form column
    /// fell back to its indicator limit.
    #[inline]
    pub fn degenerate_end_fire(&self) -> bool {
        self.degenerate_end_fire
    }

    /// Spatial frequency of each beam in cycles per metre, `Theta_n / lambda`.
    pub fn frequencies_per_m(&self) -> Vec<f64> {
        self.directions.iter().map(|&t| t / self.wavelength_m).collect()
    }

    /// Sum of the DFT-route gains; equals 1 for a unit-modulus wavefront on
    /// a critically sampled (full) beam grid.
    pub fn total_dft_gain(&self) -> f64 {
        self.dft_gains.iter().sum()
    }
}

/// Computes the gain profile of the source at `loc` over the beam grid,
/// with the near-field wavefront rendered by `model`.
pub fn gain_profile(geom: &ArrayGeometry, loc: &UserLocation, model: PhaseModel) -> GainProfile {
    let grid = BeamGrid::new(geom);
    let b = match model {
        PhaseModel::Fresnel => nearfield_expansion_response(geom, loc),
        PhaseModel::ExactDistance => nearfield_response(geom, loc),
    };
    let n2 = (geom.n_antennas() * geom.n_antennas()) as f64;
    let dft_gains: Vec<f64> = (0..grid.len())
        .map(|j| {
            let col = grid.column(j);
            let ip: Complex64 = col.iter().zip(&b).map(|(a, x)| a.conj() * x).sum();
            ip.norm_sqr() / n2
        })
        .collect();
    let (closed_form, degenerate_end_fire) = closed_form_values(geom, loc, grid.directions());
    GainProfile {
        directions: grid.directions().to_vec(),
        bins: grid.bins().to_vec(),
        dft_gains,
        closed_form,
        degenerate_end_fire,
        wavelength_m: geom.wavelength_m(),
    }
}

/// The Fresnel-integral parameterisation of the closed-form gain for one
/// source/beam pair.
///
/// With direction cosines `Theta` (source) and `Theta_n` (beam), distance
/// `d` and `gamma = 1 - Theta^2`:
///
/// ```text
/// s     = delta sqrt(2 gamma / (lambda d))     (chirp scale per element)
/// beta1 = N s / 2
/// beta2 = (Theta - Theta_n) / s
/// c1    = s / sqrt(2)
/// c2    = (Theta - Theta_n + (N + 1) c1^2) / (2 c1)
/// ```
///
/// For half-wavelength spacing `s` reduces to `sqrt(delta gamma / d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelGainParams {
    /// Chirp scale `s`.
    pub s: f64,
    /// Half-aperture argument `beta1 = N s / 2`.
    pub beta1: f64,
    /// Mismatch argument `beta2 = (Theta - Theta_n) / s`.
    pub beta2: f64,
    /// Completed-square scale `c1 = s / sqrt(2)`.
    pub c1: f64,
    /// Completed-square offset `c2`.
    pub c2: f64,
}

/// Computes the closed-form gain parameters (errors on end-fire geometry,
/// where the parameterisation degenerates).
pub fn fresnel_gain_params(
    geom: &ArrayGeometry,
    loc: &UserLocation,
    beam_dir_cosine: f64,
) -> Result<FresnelGainParams, Error> {
    let theta_bar = loc.dir_cosine();
    let gamma = 1.0 - theta_bar * theta_bar;
    if gamma < END_FIRE_GAMMA {
        return Err(Error::Numerical(
            "end-fire source direction has no Fresnel gain parameterisation".into(),
        ));
    }
    let n = geom.n_antennas() as f64;
    let s = geom.spacing_m()
        * (2.0 * gamma / (geom.wavelength_m() * loc.distance_m())).sqrt();
    let mismatch = theta_bar - beam_dir_cosine;
    let c1 = s / std::f64::consts::SQRT_2;
    Ok(FresnelGainParams {
        s,
        beta1: 0.5 * n * s,
        beta2: mismatch / s,
        c1,
        c2: (mismatch + (n + 1.0) * c1 * c1) / (2.0 * c1),
    })
}

/// A closed-form gain value together with the end-fire degeneracy flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormGain {
    /// The gain estimate `G_hat in [0, 1]`.
    pub value: f64,
    /// True when the source is end-fire and the value is the indicator
    /// limit rather than the Fresnel expression.
    pub degenerate_end_fire: bool,
}

/// Closed-form (continuum Fresnel) beamforming gain of the beam at
/// `beam_dir_cosine` for the source at `loc`:
///
/// ```text
/// G_hat = ([C(b1+b2) + C(b1-b2)]^2 + [S(b1+b2) + S(b1-b2)]^2) / (4 b1^2)
/// ```
///
/// with `b1, b2` from [`fresnel_gain_params`].  At end-fire
/// (`|Theta| = 1`) the chirp vanishes and the expression collapses to its
/// far-field limit, a discrete sinc that is an exact indicator on the beam
/// grid; the returned value is `1` when the beam matches the source
/// direction and `0` otherwise, with the flag set.
pub fn closed_form_gain(
    geom: &ArrayGeometry,
    loc: &UserLocation,
    beam_dir_cosine: f64,
) -> ClosedFormGain {
    let theta_bar = loc.dir_cosine();
    if 1.0 - theta_bar * theta_bar < END_FIRE_GAMMA {
        return ClosedFormGain {
            value: if (beam_dir_cosine - theta_bar).abs() < END_FIRE_MATCH_TOL {
                1.0
            } else {
                0.0
            },
            degenerate_end_fire: true,
        };
    }
    let p = fresnel_gain_params(geom, loc, beam_dir_cosine).expect("non-end-fire");
    let (c_plus, s_plus) = fresnel(p.beta1 + p.beta2);
    let (c_minus, s_minus) = fresnel(p.beta1 - p.beta2);
    let num = (c_plus + c_minus).powi(2) + (s_plus + s_minus).powi(2);
    ClosedFormGain { value: num / (4.0 * p.beta1 * p.beta1), degenerate_end_fire: false }
}

/// Closed-form gains over a set of beam directions plus the end-fire flag.
fn closed_form_values(
    geom: &ArrayGeometry,
    loc: &UserLocation,
    directions: &[f64],
) -> (Vec<f64>, bool) {
    let mut degenerate = false;
    let values = directions
        .iter()
        .map(|&t| {
            let g = closed_form_gain(geom, loc, t);
            degenerate |= g.degenerate_end_fire;
            g.value
        })
        .collect();
    (values, degenerate)
}

/// How the gain profile behind the effective-frequency count is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainRoute {
    /// Beamform the sampled wavefront of the chosen phase model over the
    /// grid (the default, with the Fresnel phase model).
    DftProfile(PhaseModel),
    /// Evaluate the closed-form gain at the grid directions.  Free of the
    /// periodic aliasing a DFT profile picks up near end-fire, which makes
    /// it the route of choice for angle sweeps reaching the axis.
    ClosedForm,
}

impl Default for GainRoute {
    fn default() -> Self {
        GainRoute::DftProfile(PhaseModel::default())
    }
}

/// Options for [`effective_spatial_frequencies`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountOptions {
    /// Threshold below the profile peak, in dB (default 3, i.e. bins within
    /// 3 dB of the peak are counted).
    pub threshold_db: f64,
    /// Profile route (default: DFT profile of the Fresnel phase model).
    pub route: GainRoute,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self { threshold_db: 3.0, route: GainRoute::default() }
    }
}

/// The effective spatial-frequency content of one source.
#[derive(Debug, Clone)]
pub struct EffectiveFrequencies {
    /// Number of beams within the threshold of the profile peak.
    pub count: usize,
    /// Gain-weighted centre of mass (direction cosine) of the counted
    /// beams; `NaN` when no beam qualified (degenerate all-zero profile).
    pub centre_of_mass: f64,
    /// The linear threshold `10^(-threshold_db/10)` that was applied.
    pub threshold_linear: f64,
    /// Beam direction cosines, descending.
    pub directions: Vec<f64>,
    /// Profile gains normalised by the profile peak.
    pub normalized_gains: Vec<f64>,
    /// End-fire degeneracy flag from the closed-form route.
    pub degenerate_end_fire: bool,
}

/// Counts the beams whose gain lies within `threshold_db` of the profile
/// peak — the effective number of spatial frequencies the source excites.
pub fn effective_spatial_frequencies(
    geom: &ArrayGeometry,
    loc: &UserLocation,
    opts: &CountOptions,
) -> EffectiveFrequencies {
    let (directions, gains, degenerate) = match opts.route {
        GainRoute::DftProfile(model) => {
            let profile = gain_profile(geom, loc, model);
            (profile.directions.clone(), profile.dft_gains.clone(), false)
        }
        GainRoute::ClosedForm => {
            let grid = BeamGrid::new(geom);
            let (values, degenerate) = closed_form_values(geom, loc, grid.directions());
            (grid.directions().to_vec(), values, degenerate)
        }
    };
    let threshold_linear = 10f64.powf(-opts.threshold_db / 10.0);
    let peak = gains.iter().fold(0.0f64, |m, &g| m.max(g));
    let normalized: Vec<f64> =
        if peak > 0.0 { gains.iter().map(|&g| g / peak).collect() } else { vec![0.0; gains.len()] };
    let mut count = 0usize;
    let mut weighted = 0.0;
    let mut weight = 0.0;
    for (&t, &g) in directions.iter().zip(&normalized) {
        if g >= threshold_linear {
            count += 1;
            weighted += t * g;
            weight += g;
        }
    }
    EffectiveFrequencies {
        count,
        centre_of_mass: if weight > 0.0 { weighted / weight } else { f64::NAN },
        threshold_linear,
        directions,
        normalized_gains: normalized,
        degenerate_end_fire: degenerate,
    }
}

/// One point of an effective-frequency sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    /// The swept parameter value (distance in metres, or angle in radians).
    pub parameter: f64,
    /// Effective spatial-frequency count at that parameter.
    pub count: usize,
}

/// Effective-frequency count as a function of source distance at a fixed
/// angle.
pub fn effective_freq_distance_sweep(
    geom: &ArrayGeometry,
    theta_rad: f64,
    distances_m: &[f64],
    opts: &CountOptions,
) -> Result<Vec<SweepPoint>, Error> {
    distances_m
        .iter()
        .map(|&d| {
            let loc = UserLocation::new(theta_rad, d)?;
            let eff = effective_spatial_frequencies(geom, &loc, opts);
            Ok(SweepPoint { parameter: d, count: eff.count })
        })
        .collect()
}

/// Effective-frequency count as a function of source angle at a fixed
/// distance.
pub fn effective_freq_angle_sweep(
    geom: &ArrayGeometry,
    distance_m: f64,
    thetas_rad: &[f64],
    opts: &CountOptions,
) -> Result<Vec<SweepPoint>, Error> {
    thetas_rad
        .iter()
        .map(|&theta| {
            let loc = UserLocation::new(theta, distance_m)?;
            let eff = effective_spatial_frequencies(geom, &loc, opts);
            Ok(SweepPoint { parameter: theta, count: eff.count })
        })
        .collect()
}
