//! Fourier (DFT) beam grid of a ULA and beam-space utilities.
//!
//! A ULA with `N` elements resolves the direction-cosine axis
//! `Theta = cos theta` into a uniform grid of beams spaced `lambda / (N delta)`
//! apart:
//!
//! ```text
//! Theta_n = (floor(N/2) + 1 - n) / N * lambda / delta,    n = 1..=N,
//! ```
//!
//! restricted to the physically meaningful half-open interval `(-1, 1]`
//! (both endpoints describe end-fire; keeping exactly one of them avoids a
//! duplicated beam).  For `delta = lambda/2` all `N` grid points survive;
//! for sparser-than-critical spacing (`delta < lambda/2`) only
//! `min(N, floor(2 N delta / lambda))` do, which is precisely the array's
//! number of spatial degrees of freedom.
//!
//! The steering vectors on the grid are, up to a global phase, columns of
//! the `N`-point DFT matrix: beam `n` maps to DFT bin `k_n = n - 1 - floor(N/2)`
//! with entries `exp(-j 2 pi p k_n / N)` for element index `p = 0..N-1`.
//! The columns here are normalised to start with `+1` exactly (the global
//! phase is divided out), which makes beam matrices reproducible bit for
//! bit across runs and platforms.

use num_complex::Complex64;

use crate::geometry::ArrayGeometry;

/// Tolerance used when testing grid points against the `(-1, 1]` interval:
/// absorbs the rounding of `m/N * lambda/delta` for commensurate spacings.
const GRID_EDGE_TOL: f64 = 1e-12;

/// The surviving Fourier beams of an array: their direction cosines and DFT
/// bin indices, ordered by descending direction cosine.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamGrid {
    n_antennas: usize,
    directions: Vec<f64>,
    bins: Vec<i64>,
}

impl BeamGrid {
    /// Builds the beam grid of `geom`.
    pub fn new(geom: &ArrayGeometry) -> Self {
        let n = geom.n_antennas();
        let half = (n / 2) as i64;
        let ratio = geom.wavelength_m() / geom.spacing_m();
        let mut directions = Vec::with_capacity(n);
        let mut bins = Vec::with_capacity(n);
        for beam in 1..=(n as i64) {
            let m = half + 1 - beam;
            let theta = m as f64 / n as f64 * ratio;
            if theta <= 1.0 + GRID_EDGE_TOL && theta > -1.0 + GRID_EDGE_TOL {
                directions.push(theta.min(1.0));
                bins.push(-m);
            }
        }
        Self { n_antennas: n, directions, bins }
    }

    /// Number of antenna elements behind the grid.
    #[inline]
    pub fn n_antennas(&self) -> usize {
        self.n_antennas
    }

    /// Number of surviving beams.
    #[inline]
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    /// True when no beam survived (cannot happen: the broadside beam
    /// `Theta = 0` always does).
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Beam direction cosines, descending.
    #[inline]
    pub fn directions(&self) -> &[f64] {
        &self.directions
    }

    /// DFT bin index of each beam (same order as [`directions`](Self::directions)).
    #[inline]
    pub fn bins(&self) -> &[i64] {
        &self.bins
    }

    /// The normalised steering column of beam `j`:
    /// `[exp(-j 2 pi p k_j / N)]_{p=0..N-1}`, first entry exactly `1`.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        let n = self.n_antennas as f64;
        let k = self.bins[j] as f64;
        (0..self.n_antennas)
            .map(|p| {
                let phase = -2.0 * std::f64::consts::PI * p as f64 * k / n;
                Complex64::new(phase.cos(), phase.sin())
            })
            .collect()
    }

    /// All beam columns, beam-major: `matrix()[j][p]` is element `p` of
    /// beam `j`.
    pub fn matrix(&self) -> Vec<Vec<Complex64>> {
        (0..self.len()).map(|j| self.column(j)).collect()
    }
}

/// Direction cosines of the surviving beams, descending.
pub fn beam_directions(geom: &ArrayGeometry) -> Vec<f64> {
    BeamGrid::new(geom).directions.clone()
}

/// Beam-major steering matrix of the surviving beams (see [`BeamGrid::matrix`]).
pub fn beam_matrix(geom: &ArrayGeometry) -> Vec<Vec<Complex64>> {
    BeamGrid::new(geom).matrix()
}

/// Beamforming gain of weight vector `beam` applied to channel (or steering)
/// vector `target`: `|beam^H target|^2 / N`.
///
/// For unit-modulus vectors of length `N` the gain lies in `[0, N]`,
/// reaching `N` exactly when the two vectors align.
pub fn beamforming_gain(target: &[Complex64], beam: &[Complex64]) -> f64 {
    assert_eq!(target.len(), beam.len(), "vector lengths must match");
    let inner: Complex64 = beam.iter().zip(target).map(|(w, t)| w.conj() * t).sum();
    inner.norm_sqr() / target.len() as f64
}

/// Spatial degrees of freedom of an array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialDof {
    /// Continuous DoF measure `min(N, 2 N delta / lambda)`.
    pub continuous: f64,
    /// Number of resolvable Fourier beams, `min(N, floor(2 N delta / lambda))`.
    pub beam_count: usize,
}

/// Computes the spatial DoF of `geom`.
///
/// The beam count equals the number of grid points surviving the `(-1, 1]`
/// filter whenever `2 N delta / lambda` is an integer (in particular at all
/// power-of-two fractions of `lambda`); `min(N, 2 N delta / lambda)` is the
/// continuous version of the same quantity.
pub fn spatial_dof(geom: &ArrayGeometry) -> SpatialDof {
    let n = geom.n_antennas();
    let two_q = 2.0 * n as f64 * geom.spacing_over_lambda();
    SpatialDof {
        continuous: (n as f64).min(two_q),
        beam_count: n.min((two_q + GRID_EDGE_TOL).floor() as usize),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::farfield_response_from_cosine;
    use approx::assert_relative_eq;

    fn geom(n: usize, spacing_factor: f64) -> ArrayGeometry {
        ArrayGeometry::with_spacing_factor(n, spacing_factor, 0.1).unwrap()
    }

    #[test]
    fn full_grid_even_array() {
        let grid = BeamGrid::new(&geom(8, 0.5));
        assert_eq!(grid.directions(), &[1.0, 0.75, 0.5, 0.25, 0.0, -0.25, -0.5, -0.75]);
        assert_eq!(grid.bins(), &[-4, -3, -2, -1, 0, 1, 2, 3]);
    }

    #[test]
    fn full_grid_odd_array() {
        let grid = BeamGrid::new(&geom(9, 0.5));
        assert_eq!(grid.len(), 9);
        let want: Vec<f64> = (0..9).map(|n| (4 - n) as f64 * 2.0 / 9.0).collect();
        for (got, want) in grid.directions().iter().zip(&want) {
            assert_relative_eq!(got, want, epsilon = 1e-15);
        }
        assert!(grid.directions().iter().all(|t| t.abs() < 1.0));
    }

    #[test]
    fn sparse_spacings_prune_the_grid() {
        // Quarter-wavelength spacing keeps the half-open window (-1, 1]:
        // end-fire +1 stays, -1 goes.
        let quarter = BeamGrid::new(&geom(8, 0.25));
        assert_eq!(quarter.directions(), &[1.0, 0.5, 0.0, -0.5]);
        let eighth = BeamGrid::new(&geom(8, 0.125));
        assert_eq!(eighth.directions(), &[1.0, 0.0]);
    }

    #[test]
    fn beam_count_law() {
        for &(factor, want) in
            &[(0.125, 2usize), (0.25, 4), (0.5, 8), (1.0, 8), (2.0, 8)]
        {
            let g = geom(8, factor);
            let dof = spatial_dof(&g);
            assert_eq!(dof.beam_count, want, "factor {factor}");
            assert_eq!(BeamGrid::new(&g).len(), want, "factor {factor}");
            assert_relative_eq!(dof.continuous, (16.0 * factor).min(8.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn columns_are_dft_vectors() {
        let grid = BeamGrid::new(&geom(8, 0.5));
        for j in 0..grid.len() {
            let col = grid.column(j);
            assert_eq!(col[0], Complex64::new(1.0, 0.0));
            let k = grid.bins()[j] as f64;
            for (p, entry) in col.iter().enumerate() {
                let phase = -2.0 * std::f64::consts::PI * p as f64 * k / 8.0;
                assert_relative_eq!(entry.re, phase.cos(), epsilon = 1e-14);
                assert_relative_eq!(entry.im, phase.sin(), epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn critically_sampled_matrix_is_orthogonal() {
        // At delta = lambda/2 the beam matrix is sqrt(N) times a unitary
        // DFT matrix: A^H A = N I.
        let grid = BeamGrid::new(&geom(8, 0.5));
        let a = grid.matrix();
        for (i, ci) in a.iter().enumerate() {
            for (j, cj) in a.iter().enumerate() {
                let ip: Complex64 = ci.iter().zip(cj).map(|(x, y)| x.conj() * y).sum();
                let want = if i == j { 8.0 } else { 0.0 };
                assert!((ip - want).norm() < 1e-10, "({i},{j}) -> {ip}");
            }
        }
    }

    #[test]
    fn columns_match_steering_vectors_up_to_global_phase() {
        let g = geom(9, 0.5);
        let grid = BeamGrid::new(&g);
        for j in 0..grid.len() {
            let col = grid.column(j);
            let steer = farfield_response_from_cosine(&g, grid.directions()[j]).unwrap();
            // Same vector up to a unit scalar: |<col, steer>| = N.
            let ip: Complex64 = col.iter().zip(&steer).map(|(x, y)| x.conj() * y).sum();
            assert_relative_eq!(ip.norm(), 9.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn gain_bounds_and_alignment() {
        let g = geom(16, 0.5);
        let grid = BeamGrid::new(&g);
        // Self-gain is exactly N; cross-beam gain vanishes.
        for i in 0..grid.len() {
            let ci = grid.column(i);
            assert_relative_eq!(beamforming_gain(&ci, &ci), 16.0, epsilon = 1e-10);
            for j in 0..grid.len() {
                if i != j {
                    assert!(beamforming_gain(&ci, &grid.column(j)) < 1e-10);
                }
            }
        }
        // Off-grid steering stays within [0, N].
        for &t in &[0.9999, 0.313, -0.62, 0.031] {
            let steer = farfield_response_from_cosine(&g, t).unwrap();
            for j in 0..grid.len() {
                let gain = beamforming_gain(&steer, &grid.column(j));
                assert!((0.0..=16.0 + 1e-9).contains(&gain));
            }
        }
    }

    #[test]
    fn grid_spacing_is_lambda_over_aperture() {
        let g = geom(225, 0.5);
        let dirs = beam_directions(&g);
        assert_eq!(dirs.len(), 225);
        let step = g.wavelength_m() / (g.n_antennas() as f64 * g.spacing_m());
        for w in dirs.windows(2) {
            assert_relative_eq!(w[0] - w[1], step, epsilon = 1e-12);
        }
    }
}
