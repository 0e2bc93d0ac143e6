//! Numerical toolkit for near-field behaviour of uniform linear antenna
//! arrays.
//!
//! When the aperture of an antenna array becomes large relative to the
//! distance of the terminals it serves, the familiar plane-wave (far-field)
//! picture of array processing stops being accurate: wavefronts are curved
//! across the aperture, a single physical direction no longer maps to a
//! single spatial frequency, and the number of significant channel
//! dimensions grows beyond what far-field reasoning predicts.  This crate
//! provides the numerical machinery to quantify all of that for uniform
//! linear arrays (ULAs):
//!
//! - [`geometry`] — array layout, element offsets, aperture, and the
//!   classical reactive / amplitude / Fraunhofer field-region boundaries;
//! - [`channel`] — exact spherical-wave channel vectors, the second-order
//!   (Fresnel) distance expansion, and far-field steering vectors;
//! - [`beamgrid`] — the orthogonal DFT beam grid, per-beam gains, and
//!   spatial degrees-of-freedom estimates;
//! - [`spectrum`] — spatial-frequency analysis: DFT spectra of sampled
//!   wavefronts, beam-gain profiles of near-field sources, a closed-form
//!   gain expression built on Fresnel integrals, and the derived
//!   effective-bandwidth summaries (count above threshold, centre of
//!   mass, parameter sweeps);
//! - [`correlation`] — correlation matrices of diffuse scattered channels
//!   via adaptive tensor quadrature, a seeded Monte-Carlo cross-check,
//!   eigenvalue/effective-rank summaries, and correlated channel sampling;
//! - [`fresnel`] — standalone Fresnel integrals `C(v)`, `S(v)` accurate to
//!   a few ulps times ten;
//! - [`quad`] — Gauss–Legendre rules on arbitrary intervals;
//! - [`exec`] — the chunked, bit-deterministic sequential/parallel
//!   execution layer used by every heavy loop.
//!
//! # Conventions
//!
//! Angles are measured from the positive array axis, so `theta = pi/2` is
//! broadside and `cos theta` is the direction cosine.  Element offsets are
//! symmetric about the array centre, distances are taken from the centre,
//! and all lengths are in metres.  Time-harmonic fields use the
//! `e^{-j 2 pi d / lambda}` propagation sign.
//!
//! # Determinism
//!
//! Every operation is deterministic: equal inputs (plus equal seeds, for
//! the randomised estimators) produce bit-identical outputs, whether the
//! `parallel` feature is enabled or not and regardless of thread count.
//! This is achieved by accumulating all reductions over a fixed chunk
//! decomposition in a fixed order; see [`exec`].
//!
//! # Example
//!
//! ```
//! use nearfield::geometry::ArrayGeometry;
//! use nearfield::channel::{nearfield_response, UserLocation};
//! use nearfield::spectrum::{effective_spatial_frequencies, CountOptions};
//! use std::f64::consts::FRAC_PI_2;
//!
//! // A 225-element half-wavelength ULA at lambda = 0.1 m: aperture 11.2 m,
//! // Fraunhofer distance 2531.25 m.
//! let geom = ArrayGeometry::half_wavelength(225, 0.1).unwrap();
//! assert!((geom.field_boundaries().fraunhofer_m - 2531.25).abs() < 1e-9);
//!
//! // A broadside source at 25 m is deep inside the radiating near field;
//! // its wavefront occupies many DFT beams rather than one.
//! let user = UserLocation::new(FRAC_PI_2, 25.0).unwrap();
//! let b = nearfield_response(&geom, &user);
//! let eff = effective_spatial_frequencies(&geom, &user, &CountOptions::default());
//! assert_eq!(eff.count, 45);
//! drop(b);
//! ```

pub mod beamgrid;
pub mod channel;
pub mod correlation;
pub mod error;
pub mod exec;
pub mod fresnel;
pub mod geometry;
pub mod quad;
pub mod spectrum;

pub use beamgrid::{BeamGrid, SpatialDof};
pub use channel::{ChannelVector, UserLocation};
pub use correlation::{
    ChannelSampler, CorrelationMatrix, CorrelationOptions, EigenSpectrum, MonteCarloOptions,
    ScatteringRegion,
};
pub use error::Error;
pub use exec::Strategy;
pub use geometry::{ArrayGeometry, FieldBoundaries, SPEED_OF_LIGHT};
pub use spectrum::{CountOptions, EffectiveFrequencies, GainProfile, SpatialSpectrum};
