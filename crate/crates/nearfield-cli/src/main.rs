//! `nearfield` — command-line front end for the near-field ULA toolkit.
//!
//! Wires scenarios described by a flat key=value config file and/or flag
//! overrides (flags win) to the `nearfield` library and emits analysis
//! tables as CSV or JSON:
//!
//! - `boundaries` — field-region boundaries of the array;
//! - `spectrum`   — spatial DFT spectrum of a sampled wavefront;
//! - `beams`      — the orthogonal DFT beam grid;
//! - `gain`       — per-beam gain profile of a point source, with the
//!   closed-form (Fresnel-integral) column alongside the exact one;
//! - `effective`  — effective spatial-frequency counts, single-point or
//!   swept over distance/angle;
//! - `dof`        — eigenvalue spectrum and effective ranks of the
//!   correlation matrix of a scattered channel.
//!
//! Exit codes: 0 success, 2 usage/config error, 3 numerical failure.
//! Identical configs (seed included) produce byte-identical outputs.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nearfield::beamgrid::{spatial_dof, BeamGrid};
use nearfield::channel::UserLocation;
use nearfield::correlation::{
    build_correlation, eigen_spectrum, CorrelationMatrix, CorrelationOptions,
    CorrelationPhaseModel, EigenOptions, QuadratureSpec, ScatteringRegion,
};
use nearfield::geometry::{ArrayGeometry, SPEED_OF_LIGHT};
use nearfield::spectrum::{
    dft_spectrum, effective_freq_angle_sweep, effective_freq_distance_sweep,
    effective_spatial_frequencies, gain_profile, sample_wavefront, CountOptions, GainRoute,
    PhaseModel, WavefrontModel,
};

use config::{Format, PhaseKind, RankMode, RouteKind, Scenario, SweepKind, Wavefront};
use output::{db10, render, write_out, Cell, Table};

/// CLI failure with its exit-code class.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config, or scenario parameters — exit code 2.
    Usage(String),
    /// The computation itself failed (eigensolver, non-finite values) —
    /// exit code 3.
    Numerical(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Maps library errors onto exit-code classes: everything that reflects
/// scenario input is a usage error; solver/numerical breakdowns are not.
fn lib_err(e: nearfield::Error) -> CliError {
    match e {
        nearfield::Error::Eigen(_) | nearfield::Error::Numerical(_) => {
            CliError::Numerical(e.to_string())
        }
        other => CliError::Usage(other.to_string()),
    }
}

#[derive(Parser)]
#[command(
    name = "nearfield",
    version,
    about = "Near-field analysis of uniform linear antenna arrays",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field-region boundaries (reactive, amplitude, Fraunhofer)
    Boundaries(BoundariesOpts),
    /// Spatial DFT spectrum of a sampled wavefront
    Spectrum(SpectrumOpts),
    /// The orthogonal DFT beam grid of the array
    Beams(BeamsOpts),
    /// Per-beam gain profile of a point source
    Gain(GainOpts),
    /// Effective spatial-frequency count, single point or swept
    Effective(EffectiveOpts),
    /// Correlation-matrix eigenvalues and effective ranks
    Dof(DofOpts),
}

/// Flags shared by every subcommand.  Each one overrides the config-file
/// key of the same name.
#[derive(Args, Clone, Default)]
struct CommonOpts {
    /// Flat key=value config file
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file (stdout if omitted)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for randomised estimators
    #[arg(long)]
    seed: Option<u64>,
    /// Number of array elements
    #[arg(long)]
    n_antennas: Option<usize>,
    /// Element spacing as a fraction of the wavelength
    #[arg(long)]
    spacing_over_lambda: Option<f64>,
    /// Carrier wavelength in metres
    #[arg(long, conflicts_with = "carrier_hz")]
    wavelength_m: Option<f64>,
    /// Carrier frequency in hertz
    #[arg(long)]
    carrier_hz: Option<f64>,
    /// Source polar angle in radians (0 = array axis, pi/2 = broadside)
    #[arg(long, conflicts_with = "theta_deg")]
    theta_rad: Option<f64>,
    /// Source polar angle in degrees
    #[arg(long)]
    theta_deg: Option<f64>,
    /// Source distance from the array centre in metres
    #[arg(long)]
    distance_m: Option<f64>,
    /// Scattering region: lower polar angle in radians
    #[arg(long)]
    theta1_rad: Option<f64>,
    /// Scattering region: upper polar angle in radians
    #[arg(long)]
    theta2_rad: Option<f64>,
    /// Scattering region: inner distance in metres
    #[arg(long)]
    d1_m: Option<f64>,
    /// Scattering region: outer distance in metres
    #[arg(long)]
    d2_m: Option<f64>,
    /// Average channel power of the scattering region
    #[arg(long)]
    beta: Option<f64>,
    /// Allow scattering regions reaching inside the amplitude boundary 2D
    #[arg(long)]
    allow_inside_boundary: bool,
    /// Quadrature nodes along theta (set with --n-u-nodes; default: auto)
    #[arg(long)]
    n_theta_nodes: Option<usize>,
    /// Quadrature nodes along 1/d (set with --n-theta-nodes; default: auto)
    #[arg(long)]
    n_u_nodes: Option<usize>,
    /// Count threshold below the profile peak, in dB
    #[arg(long)]
    threshold_db: Option<f64>,
    /// Effective-rank summaries reported by dof
    #[arg(long, value_enum)]
    eigen_rank_mode: Option<RankMode>,
}

#[derive(Args)]
struct BoundariesOpts {
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct SpectrumOpts {
    #[command(flatten)]
    common: CommonOpts,
    /// Wavefront model (default: near when distance_m is set, else far)
    #[arg(long, value_enum)]
    wavefront: Option<Wavefront>,
}

#[derive(Args)]
struct BeamsOpts {
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args)]
struct GainOpts {
    #[command(flatten)]
    common: CommonOpts,
    /// Phase model behind the DFT gain column
    #[arg(long, value_enum)]
    phase_model: Option<PhaseKind>,
}

#[derive(Args)]
struct EffectiveOpts {
    #[command(flatten)]
    common: CommonOpts,
    /// Gain route (default: closed-form for angle sweeps, dft otherwise)
    #[arg(long, value_enum)]
    route: Option<RouteKind>,
    /// Sweep axis
    #[arg(long, value_enum)]
    sweep: Option<SweepKind>,
    /// Sweep interval start (metres or radians)
    #[arg(long)]
    sweep_from: Option<f64>,
    /// Sweep interval end (metres or radians)
    #[arg(long)]
    sweep_to: Option<f64>,
    /// Number of sweep points
    #[arg(long)]
    sweep_points: Option<usize>,
}

#[derive(Args)]
struct DofOpts {
    #[command(flatten)]
    common: CommonOpts,
    /// Phase model of the correlation integrand
    #[arg(long, value_enum)]
    phase_model: Option<PhaseKind>,
    /// Also write the raw correlation matrix to this binary file
    #[arg(long, value_name = "PATH")]
    dump_r: Option<PathBuf>,
}

impl CommonOpts {
    /// Config file under flag overrides; flags always win, and giving
    /// either member of an exactly-one-of pair on the command line clears
    /// the config file's choice for that pair.
    fn scenario(&self) -> Result<Scenario, CliError> {
        let mut s = Scenario::from_config_file(self.config.as_deref())?;
        if self.wavelength_m.is_some() || self.carrier_hz.is_some() {
            s.wavelength_m = None;
            s.carrier_hz = None;
        }
        if self.theta_rad.is_some() || self.theta_deg.is_some() {
            s.theta_rad = None;
        }
        if let Some(v) = self.out.clone() {
            s.out = Some(v);
        }
        if let Some(v) = self.format {
            s.format = v;
        }
        if let Some(v) = self.seed {
            s.seed = v;
        }
        if let Some(v) = self.n_antennas {
            s.n_antennas = Some(v);
        }
        if let Some(v) = self.spacing_over_lambda {
            s.spacing_over_lambda = v;
        }
        if let Some(v) = self.wavelength_m {
            s.wavelength_m = Some(v);
        }
        if let Some(v) = self.carrier_hz {
            s.carrier_hz = Some(v);
        }
        if let Some(v) = self.theta_rad {
            s.theta_rad = Some(v);
        }
        if let Some(v) = self.theta_deg {
            s.theta_rad = Some(v.to_radians());
        }
        if let Some(v) = self.distance_m {
            s.distance_m = Some(v);
        }
        if let Some(v) = self.theta1_rad {
            s.theta1_rad = Some(v);
        }
        if let Some(v) = self.theta2_rad {
            s.theta2_rad = Some(v);
        }
        if let Some(v) = self.d1_m {
            s.d1_m = Some(v);
        }
        if let Some(v) = self.d2_m {
            s.d2_m = Some(v);
        }
        if let Some(v) = self.beta {
            s.beta = v;
        }
        if self.allow_inside_boundary {
            s.allow_inside_boundary = true;
        }
        if let Some(v) = self.n_theta_nodes {
            s.n_theta_nodes = Some(v);
        }
        if let Some(v) = self.n_u_nodes {
            s.n_u_nodes = Some(v);
        }
        if let Some(v) = self.threshold_db {
            s.threshold_db = v;
        }
        if let Some(v) = self.eigen_rank_mode {
            s.eigen_rank_mode = v;
        }
        Ok(s)
    }
}

fn geometry(s: &Scenario) -> Result<ArrayGeometry, CliError> {
    let n = s.n_antennas.ok_or_else(|| usage("n_antennas is required"))?;
    let wavelength = match (s.wavelength_m, s.carrier_hz) {
        (Some(w), None) => w,
        (None, Some(f)) => {
            if !(f.is_finite() && f > 0.0) {
                return Err(usage(format!("carrier_hz must be positive and finite, got {f}")));
            }
            SPEED_OF_LIGHT / f
        }
        (Some(_), Some(_)) => return Err(usage("set exactly one of wavelength_m / carrier_hz")),
        (None, None) => return Err(usage("one of wavelength_m / carrier_hz is required")),
    };
    ArrayGeometry::with_spacing_factor(n, s.spacing_over_lambda, wavelength).map_err(lib_err)
}

fn user(s: &Scenario) -> Result<UserLocation, CliError> {
    let theta = s.theta_rad.ok_or_else(|| usage("theta_rad or theta_deg is required"))?;
    let distance = s.distance_m.ok_or_else(|| usage("distance_m is required"))?;
    UserLocation::new(theta, distance).map_err(lib_err)
}

fn region(s: &Scenario, geom: &ArrayGeometry) -> Result<ScatteringRegion, CliError> {
    let get = |v: Option<f64>, k: &str| {
        v.ok_or_else(|| usage(format!("{k} is required for a scattering region")))
    };
    let theta1 = get(s.theta1_rad, "theta1_rad")?;
    let theta2 = get(s.theta2_rad, "theta2_rad")?;
    let d1 = get(s.d1_m, "d1_m")?;
    let d2 = get(s.d2_m, "d2_m")?;
    if s.allow_inside_boundary {
        ScatteringRegion::with_inside_amplitude_boundary(theta1, theta2, d1, d2, s.beta)
    } else {
        ScatteringRegion::new(geom, theta1, theta2, d1, d2, s.beta)
    }
    .map_err(lib_err)
}

fn phase_model(kind: PhaseKind) -> PhaseModel {
    match kind {
        PhaseKind::Fresnel => PhaseModel::Fresnel,
        PhaseKind::Exact => PhaseModel::ExactDistance,
    }
}

fn correlation_phase_model(kind: PhaseKind) -> CorrelationPhaseModel {
    match kind {
        PhaseKind::Fresnel => CorrelationPhaseModel::Expansion,
        PhaseKind::Exact => CorrelationPhaseModel::ExactDistance,
    }
}

fn cmd_boundaries(s: &mut Scenario) -> Result<Table, CliError> {
    let geom = geometry(s)?;
    let b = geom.field_boundaries();
    let mut table = Table {
        columns: vec!["reactive_m", "amplitude_m", "fraunhofer_m"],
        ..Default::default()
    };
    table.push_row(vec![
        Cell::Float(b.reactive_m),
        Cell::Float(b.amplitude_m),
        Cell::Float(b.fraunhofer_m),
    ]);
    Ok(table)
}

fn cmd_spectrum(s: &mut Scenario) -> Result<Table, CliError> {
    let geom = geometry(s)?;
    let theta = s.theta_rad.ok_or_else(|| usage("theta_rad or theta_deg is required"))?;
    let wavefront = s.wavefront.unwrap_or(if s.distance_m.is_some() {
        Wavefront::Near
    } else {
        Wavefront::Far
    });
    s.wavefront = Some(wavefront);
    let (model, loc) = match wavefront {
        Wavefront::Far => {
            // The planar wavefront has no distance dependence; any valid
            // distance satisfies the location contract.
            (WavefrontModel::FarField, UserLocation::new(theta, s.distance_m.unwrap_or(1.0)))
        }
        Wavefront::Near => {
            let d = s
                .distance_m
                .ok_or_else(|| usage("distance_m is required for the near wavefront"))?;
            (WavefrontModel::NearField, UserLocation::new(theta, d))
        }
    };
    let loc = loc.map_err(lib_err)?;
    let samples = sample_wavefront(&geom, &loc, model);
    let spec = dft_spectrum(&geom, &samples);
    let mut table = Table {
        columns: vec!["bin_index", "spatial_frequency_per_m", "re", "im", "magnitude"],
        ..Default::default()
    };
    let freqs = spec.frequencies_per_m();
    for (i, &bin) in spec.bins().iter().enumerate() {
        let value = spec.values()[i];
        table.push_row(vec![
            Cell::Int(bin),
            Cell::Float(freqs[i]),
            Cell::Float(value.re),
            Cell::Float(value.im),
            Cell::Float(value.norm()),
        ]);
    }
    table.meta.push(("total_energy".into(), format!("{:.12e}", spec.energy())));
    Ok(table)
}

fn cmd_beams(s: &mut Scenario) -> Result<Table, CliError> {
    let geom = geometry(s)?;
    let grid = BeamGrid::new(&geom);
    let dof = spatial_dof(&geom);
    let mut table = Table {
        columns: vec!["beam_index", "bin_index", "dir_cosine", "spatial_frequency_per_m"],
        ..Default::default()
    };
    for (i, (&dir, &bin)) in grid.directions().iter().zip(grid.bins()).enumerate() {
        table.push_row(vec![
            Cell::Uint(i as u64 + 1),
            Cell::Int(bin),
            Cell::Float(dir),
            Cell::Float(dir / geom.wavelength_m()),
        ]);
    }
    table.meta.push(("beam_count".into(), grid.len().to_string()));
    table.meta.push(("spatial_dof_continuous".into(), format!("{:.12e}", dof.continuous)));
    table.meta.push(("spatial_dof_beams".into(), dof.beam_count.to_string()));
    Ok(table)
}

fn cmd_gain(s: &mut Scenario) -> Result<Table, CliError> {
    let geom = geometry(s)?;
    let loc = user(s)?;
    let profile = gain_profile(&geom, &loc, phase_model(s.phase_model));
    let mut table = Table {
        columns: vec![
            "bin_index",
            "spatial_frequency_per_m",
            "dir_cosine",
            "gain_linear",
            "gain_db",
            "gain_closed_form",
        ],
        ..Default::default()
    };
    let freqs = profile.frequencies_per_m();
    for (i, &bin) in profile.bins().iter().enumerate() {
        let gain = profile.dft_gains()[i];
        table.push_row(vec![
            Cell::Int(bin),
            Cell::Float(freqs[i]),
            Cell::Float(profile.directions()[i]),
            Cell::Float(gain),
            Cell::Float(db10(gain)),
            Cell::Float(profile.closed_form()[i]),
        ]);
    }
    table.meta.push(("total_dft_gain".into(), format!("{:.12e}", profile.total_dft_gain())));
    if profile.degenerate_end_fire() {
        table.meta.push(("degenerate_end_fire".into(), "true".into()));
    }
    Ok(table)
}

fn count_options(s: &Scenario, route: RouteKind) -> CountOptions {
    CountOptions {
        threshold_db: s.threshold_db,
        route: match route {
            RouteKind::Dft => GainRoute::DftProfile(phase_model(s.phase_model)),
            RouteKind::ClosedForm => GainRoute::ClosedForm,
        },
    }
}

fn log_spaced(from: f64, to: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![from];
    }
    let ratio = to / from;
    (0..points).map(|i| from * ratio.powf(i as f64 / (points - 1) as f64)).collect()
}

fn lin_spaced(from: f64, to: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![from];
    }
    let step = (to - from) / (points - 1) as f64;
    (0..points).map(|i| from + step * i as f64).collect()
}

fn cmd_effective(s: &mut Scenario) -> Result<Table, CliError> {
    let geom = geometry(s)?;
    // The closed-form route is free of the periodic aliasing the DFT
    // profile picks up near end-fire, so it is the default for sweeps that
    // approach the array axis.
    let route = s.route.unwrap_or(match s.sweep {
        Some(SweepKind::Angle) => RouteKind::ClosedForm,
        _ => RouteKind::Dft,
    });
    s.route = Some(route);
    let opts = count_options(s, route);
    match s.sweep {
        None => {
            let loc = user(s)?;
            let eff = effective_spatial_frequencies(&geom, &loc, &opts);
            let mut table = Table {
                columns: vec!["theta_rad", "distance_m", "effective_count", "centre_of_mass"],
                ..Default::default()
            };
            table.push_row(vec![
                Cell::Float(loc.theta_rad()),
                Cell::Float(loc.distance_m()),
                Cell::Uint(eff.count as u64),
                Cell::Float(eff.centre_of_mass),
            ]);
            table
                .meta
                .push(("threshold_linear".into(), format!("{:.12e}", eff.threshold_linear)));
            Ok(table)
        }
        Some(kind) => {
            let from = s.sweep_from.ok_or_else(|| usage("sweep_from is required for sweeps"))?;
            let to = s.sweep_to.ok_or_else(|| usage("sweep_to is required for sweeps"))?;
            if s.sweep_points == 0 {
                return Err(usage("sweep_points must be at least 1"));
            }
            if !(from.is_finite() && to.is_finite() && from < to) {
                return Err(usage(format!("need sweep_from < sweep_to, got [{from}, {to}]")));
            }
            let points = match kind {
                SweepKind::Distance => {
                    if from <= 0.0 {
                        return Err(usage("distance sweeps need sweep_from > 0"));
                    }
                    let theta =
                        s.theta_rad.ok_or_else(|| usage("theta_rad or theta_deg is required"))?;
                    let distances = log_spaced(from, to, s.sweep_points);
                    effective_freq_distance_sweep(&geom, theta, &distances, &opts)
                        .map_err(lib_err)?
                }
                SweepKind::Angle => {
                    let d = s
                        .distance_m
                        .ok_or_else(|| usage("distance_m is required for angle sweeps"))?;
                    let thetas = lin_spaced(from, to, s.sweep_points);
                    effective_freq_angle_sweep(&geom, d, &thetas, &opts).map_err(lib_err)?
                }
            };
            let mut table = Table {
                columns: vec!["parameter_value", "effective_count"],
                ..Default::default()
            };
            for p in points {
                table.push_row(vec![Cell::Float(p.parameter), Cell::Uint(p.count as u64)]);
            }
            Ok(table)
        }
    }
}

/// Writes the raw correlation matrix: one ASCII header line, then the
/// row-major entries as interleaved little-endian f64 (re, im) pairs.
fn dump_matrix(
    path: &std::path::Path,
    geom: &ArrayGeometry,
    reg: &ScatteringRegion,
    r: &CorrelationMatrix,
) -> Result<(), CliError> {
    let header = format!(
        "nearfield-r n={} delta={} lambda={} theta1={} theta2={} d1={} d2={} beta={}\n",
        geom.n_antennas(),
        geom.spacing_m(),
        geom.wavelength_m(),
        reg.theta1_rad(),
        reg.theta2_rad(),
        reg.d1_m(),
        reg.d2_m(),
        reg.beta(),
    );
    let mut bytes = Vec::with_capacity(header.len() + 16 * r.data().len());
    bytes.extend_from_slice(header.as_bytes());
    for z in r.data() {
        bytes.extend_from_slice(&z.re.to_le_bytes());
        bytes.extend_from_slice(&z.im.to_le_bytes());
    }
    std::fs::write(path, bytes)
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_dof(s: &mut Scenario, dump_r: Option<&std::path::Path>) -> Result<Table, CliError> {
    let geom = geometry(s)?;
    let reg = region(s, &geom)?;
    let quadrature = match (s.n_theta_nodes, s.n_u_nodes) {
        (Some(nt), Some(nu)) => Some(QuadratureSpec { n_theta: nt, n_u: nu }),
        (None, None) => None,
        _ => return Err(usage("set both n_theta_nodes and n_u_nodes, or neither for auto")),
    };
    let opts = CorrelationOptions {
        quadrature,
        phase_model: correlation_phase_model(s.phase_model),
        ..Default::default()
    };
    let r = build_correlation(&geom, &reg, &opts).map_err(lib_err)?;
    if let Some(path) = dump_r {
        dump_matrix(path, &geom, &reg, &r)?;
    }
    let eig = eigen_spectrum(&r, &EigenOptions::default()).map_err(lib_err)?;
    let mut table = Table {
        columns: vec![
            "index",
            "eigenvalue",
            "eigenvalue_db_rel_max",
            "cumulative_energy_fraction",
        ],
        ..Default::default()
    };
    let total = eig.total();
    let largest = eig.eigenvalues[0];
    let mut cumulative = 0.0;
    for (i, &value) in eig.eigenvalues.iter().enumerate() {
        cumulative += value;
        table.push_row(vec![
            Cell::Uint(i as u64 + 1),
            Cell::Float(value),
            Cell::Float(db10(value.max(0.0) / largest)),
            Cell::Float(cumulative / total),
        ]);
    }
    table.meta.push(("trace".into(), format!("{:.12e}", r.trace())));
    table.meta.push(("min_eigenvalue".into(), format!("{:.12e}", eig.min_eigenvalue())));
    if matches!(s.eigen_rank_mode, RankMode::Energy | RankMode::Both) {
        table.meta.push(("effective_rank_energy".into(), eig.effective_rank_energy.to_string()));
    }
    if matches!(s.eigen_rank_mode, RankMode::Threshold | RankMode::Both) {
        table
            .meta
            .push(("effective_rank_threshold".into(), eig.effective_rank_threshold.to_string()));
    }
    Ok(table)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (name, common, specific): (&str, &CommonOpts, _) = match &cli.command {
        Command::Boundaries(o) => ("boundaries", &o.common, None),
        Command::Spectrum(o) => ("spectrum", &o.common, None),
        Command::Beams(o) => ("beams", &o.common, None),
        Command::Gain(o) => ("gain", &o.common, None),
        Command::Effective(o) => ("effective", &o.common, None),
        Command::Dof(o) => ("dof", &o.common, o.dump_r.as_deref()),
    };
    let mut s = common.scenario()?;
    match &cli.command {
        Command::Spectrum(o) => {
            if let Some(w) = o.wavefront {
                s.wavefront = Some(w);
            }
        }
        Command::Gain(o) => {
            if let Some(p) = o.phase_model {
                s.phase_model = p;
            }
        }
        Command::Effective(o) => {
            if let Some(r) = o.route {
                s.route = Some(r);
            }
            if let Some(k) = o.sweep {
                s.sweep = Some(k);
            }
            if let Some(v) = o.sweep_from {
                s.sweep_from = Some(v);
            }
            if let Some(v) = o.sweep_to {
                s.sweep_to = Some(v);
            }
            if let Some(v) = o.sweep_points {
                s.sweep_points = v;
            }
        }
        Command::Dof(o) => {
            if let Some(p) = o.phase_model {
                s.phase_model = p;
            }
        }
        _ => {}
    }
    let table = match &cli.command {
        Command::Boundaries(_) => cmd_boundaries(&mut s)?,
        Command::Spectrum(_) => cmd_spectrum(&mut s)?,
        Command::Beams(_) => cmd_beams(&mut s)?,
        Command::Gain(_) => cmd_gain(&mut s)?,
        Command::Effective(_) => cmd_effective(&mut s)?,
        Command::Dof(_) => cmd_dof(&mut s, specific)?,
    };
    let text = render(s.format, name, &s.echo_pairs(), &table);
    write_out(s.out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("nearfield: error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("nearfield: error: {msg}");
            ExitCode::from(3)
        }
    }
}
