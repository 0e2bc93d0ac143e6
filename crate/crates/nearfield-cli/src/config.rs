//! Scenario configuration: a flat `key=value` file merged with flag
//! overrides (flags win).
//!
//! The file format is deliberately minimal: one `key=value` pair per line,
//! `#` starts a comment, blank lines are ignored, later assignments of the
//! same key override earlier ones, and unknown keys are rejected so typos
//! fail loudly instead of silently running a default scenario.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::CliError;

/// Output format of every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    /// Comment-prefixed config echo, header row, one CSV row per record.
    #[default]
    Csv,
    /// A single JSON object with `config`, `columns`, `rows`, and `meta`.
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Wavefront model for the `spectrum` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Wavefront {
    /// Planar wavefront (distance ignored).
    Far,
    /// Spherical wavefront with exact propagation distances.
    Near,
}

impl fmt::Display for Wavefront {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Wavefront::Far => "far",
            Wavefront::Near => "near",
        })
    }
}

/// Phase model for gain profiles and correlation assembly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum PhaseKind {
    /// Second-order (Fresnel) distance expansion.  Default.
    #[default]
    Fresnel,
    /// Exact spherical-wave distances.
    Exact,
}

impl fmt::Display for PhaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseKind::Fresnel => "fresnel",
            PhaseKind::Exact => "exact",
        })
    }
}

/// Gain-profile route for the `effective` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum RouteKind {
    /// Beamform the sampled wavefront over the DFT grid.
    Dft,
    /// Evaluate the closed-form gain expression at the grid directions.
    ClosedForm,
}

impl fmt::Display for RouteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RouteKind::Dft => "dft",
            RouteKind::ClosedForm => "closed-form",
        })
    }
}

/// Sweep axis for the `effective` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepKind {
    /// Log-spaced distance sweep at fixed angle.
    Distance,
    /// Linearly spaced angle sweep at fixed distance.
    Angle,
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepKind::Distance => "distance",
            SweepKind::Angle => "angle",
        })
    }
}

/// Which effective-rank summaries the `dof` subcommand reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum RankMode {
    /// 99%-energy rank only.
    Energy,
    /// Threshold rank (eigenvalues above `1e-3` of the largest) only.
    Threshold,
    /// Both summaries.  Default.
    #[default]
    Both,
}

impl fmt::Display for RankMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankMode::Energy => "energy",
            RankMode::Threshold => "threshold",
            RankMode::Both => "both",
        })
    }
}

macro_rules! parse_enum_from_str {
    ($ty:ty, $($text:literal => $variant:expr),+ $(,)?) => {
        impl FromStr for $ty {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($text => Ok($variant),)+
                    other => Err(format!(
                        concat!("expected one of ", $("'", $text, "' "),+, "- got '{}'"),
                        other
                    )),
                }
            }
        }
    };
}

parse_enum_from_str!(Format, "csv" => Format::Csv, "json" => Format::Json);
parse_enum_from_str!(Wavefront, "far" => Wavefront::Far, "near" => Wavefront::Near);
parse_enum_from_str!(PhaseKind, "fresnel" => PhaseKind::Fresnel, "exact" => PhaseKind::Exact);
parse_enum_from_str!(RouteKind, "dft" => RouteKind::Dft, "closed-form" => RouteKind::ClosedForm);
parse_enum_from_str!(SweepKind, "distance" => SweepKind::Distance, "angle" => SweepKind::Angle);
parse_enum_from_str!(
    RankMode,
    "energy" => RankMode::Energy,
    "threshold" => RankMode::Threshold,
    "both" => RankMode::Both,
);

/// Every key the config file accepts.
pub const KNOWN_KEYS: &[&str] = &[
    "n_antennas",
    "spacing_over_lambda",
    "wavelength_m",
    "carrier_hz",
    "theta_rad",
    "theta_deg",
    "distance_m",
    "theta1_rad",
    "theta2_rad",
    "d1_m",
    "d2_m",
    "beta",
    "allow_inside_boundary",
    "n_theta_nodes",
    "n_u_nodes",
    "threshold_db",
    "eigen_rank_mode",
    "seed",
    "format",
    "out",
    "wavefront",
    "phase_model",
    "route",
    "sweep",
    "sweep_from",
    "sweep_to",
    "sweep_points",
];

/// The fully resolved scenario a subcommand runs against.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub n_antennas: Option<usize>,
    pub spacing_over_lambda: f64,
    pub wavelength_m: Option<f64>,
    pub carrier_hz: Option<f64>,
    /// Polar angle, already converted to radians if given in degrees.
    pub theta_rad: Option<f64>,
    pub distance_m: Option<f64>,
    pub theta1_rad: Option<f64>,
    pub theta2_rad: Option<f64>,
    pub d1_m: Option<f64>,
    pub d2_m: Option<f64>,
    pub beta: f64,
    pub allow_inside_boundary: bool,
    pub n_theta_nodes: Option<usize>,
    pub n_u_nodes: Option<usize>,
    pub threshold_db: f64,
    pub eigen_rank_mode: RankMode,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub wavefront: Option<Wavefront>,
    pub phase_model: PhaseKind,
    pub route: Option<RouteKind>,
    pub sweep: Option<SweepKind>,
    pub sweep_from: Option<f64>,
    pub sweep_to: Option<f64>,
    pub sweep_points: usize,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            n_antennas: None,
            spacing_over_lambda: 0.5,
            wavelength_m: None,
            carrier_hz: None,
            theta_rad: None,
            distance_m: None,
            theta1_rad: None,
            theta2_rad: None,
            d1_m: None,
            d2_m: None,
            beta: 1.0,
            allow_inside_boundary: false,
            n_theta_nodes: None,
            n_u_nodes: None,
            threshold_db: 3.0,
            eigen_rank_mode: RankMode::default(),
            seed: 1,
            format: Format::default(),
            out: None,
            wavefront: None,
            phase_model: PhaseKind::default(),
            route: None,
            sweep: None,
            sweep_from: None,
            sweep_to: None,
            sweep_points: 60,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e| usage(format!("config key '{key}': {e}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(usage(format!("config key '{key}': expected true/false, got '{other}'"))),
    }
}

impl Scenario {
    /// Loads the config file (when given) over the defaults.
    pub fn from_config_file(path: Option<&Path>) -> Result<Self, CliError> {
        let mut scenario = Scenario::default();
        let Some(path) = path else { return Ok(scenario) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut pairs = BTreeMap::new();
        for (lineno, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(usage(format!(
                    "{}:{}: expected key=value, got '{line}'",
                    path.display(),
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            if !KNOWN_KEYS.contains(&key) {
                return Err(usage(format!(
                    "{}:{}: unknown config key '{key}'",
                    path.display(),
                    lineno + 1
                )));
            }
            pairs.insert(key.to_string(), value.to_string());
        }
        if pairs.contains_key("wavelength_m") && pairs.contains_key("carrier_hz") {
            return Err(usage("set exactly one of wavelength_m / carrier_hz, not both"));
        }
        if pairs.contains_key("theta_rad") && pairs.contains_key("theta_deg") {
            return Err(usage("set exactly one of theta_rad / theta_deg, not both"));
        }
        for (key, value) in &pairs {
            scenario.apply(key, value)?;
        }
        Ok(scenario)
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "n_antennas" => self.n_antennas = Some(parse_value(key, value)?),
            "spacing_over_lambda" => self.spacing_over_lambda = parse_value(key, value)?,
            "wavelength_m" => self.wavelength_m = Some(parse_value(key, value)?),
            "carrier_hz" => self.carrier_hz = Some(parse_value(key, value)?),
            "theta_rad" => self.theta_rad = Some(parse_value(key, value)?),
            "theta_deg" => {
                self.theta_rad = Some(parse_value::<f64>(key, value)?.to_radians());
            }
            "distance_m" => self.distance_m = Some(parse_value(key, value)?),
            "theta1_rad" => self.theta1_rad = Some(parse_value(key, value)?),
            "theta2_rad" => self.theta2_rad = Some(parse_value(key, value)?),
            "d1_m" => self.d1_m = Some(parse_value(key, value)?),
            "d2_m" => self.d2_m = Some(parse_value(key, value)?),
            "beta" => self.beta = parse_value(key, value)?,
            "allow_inside_boundary" => self.allow_inside_boundary = parse_bool(key, value)?,
            "n_theta_nodes" => self.n_theta_nodes = Some(parse_value(key, value)?),
            "n_u_nodes" => self.n_u_nodes = Some(parse_value(key, value)?),
            "threshold_db" => self.threshold_db = parse_value(key, value)?,
            "eigen_rank_mode" => self.eigen_rank_mode = parse_value(key, value)?,
            "seed" => self.seed = parse_value(key, value)?,
            "format" => self.format = parse_value(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "wavefront" => self.wavefront = Some(parse_value(key, value)?),
            "phase_model" => self.phase_model = parse_value(key, value)?,
            "route" => self.route = Some(parse_value(key, value)?),
            "sweep" => self.sweep = Some(parse_value(key, value)?),
            "sweep_from" => self.sweep_from = Some(parse_value(key, value)?),
            "sweep_to" => self.sweep_to = Some(parse_value(key, value)?),
            "sweep_points" => self.sweep_points = parse_value(key, value)?,
            other => return Err(usage(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// The `key=value` pairs of the resolved scenario, sorted by key, for
    /// the config-echo line.  Unset optional fields are omitted.
    pub fn echo_pairs(&self) -> Vec<(String, String)> {
        let mut pairs: Vec<(String, String)> = Vec::new();
        let mut push = |k: &str, v: String| pairs.push((k.to_string(), v));
        if let Some(n) = self.n_antennas {
            push("n_antennas", n.to_string());
        }
        push("spacing_over_lambda", self.spacing_over_lambda.to_string());
        if let Some(v) = self.wavelength_m {
            push("wavelength_m", v.to_string());
        }
        if let Some(v) = self.carrier_hz {
            push("carrier_hz", v.to_string());
        }
        if let Some(v) = self.theta_rad {
            push("theta_rad", v.to_string());
        }
        if let Some(v) = self.distance_m {
            push("distance_m", v.to_string());
        }
        if let Some(v) = self.theta1_rad {
            push("theta1_rad", v.to_string());
        }
        if let Some(v) = self.theta2_rad {
            push("theta2_rad", v.to_string());
        }
        if let Some(v) = self.d1_m {
            push("d1_m", v.to_string());
        }
        if let Some(v) = self.d2_m {
            push("d2_m", v.to_string());
        }
        if self.theta1_rad.is_some() {
            push("beta", self.beta.to_string());
            push("allow_inside_boundary", self.allow_inside_boundary.to_string());
        }
        if let Some(v) = self.n_theta_nodes {
            push("n_theta_nodes", v.to_string());
        }
        if let Some(v) = self.n_u_nodes {
            push("n_u_nodes", v.to_string());
        }
        push("threshold_db", self.threshold_db.to_string());
        push("eigen_rank_mode", self.eigen_rank_mode.to_string());
        push("seed", self.seed.to_string());
        push("format", self.format.to_string());
        if let Some(v) = &self.wavefront {
            push("wavefront", v.to_string());
        }
        push("phase_model", self.phase_model.to_string());
        if let Some(v) = &self.route {
            push("route", v.to_string());
        }
        if let Some(v) = &self.sweep {
            push("sweep", v.to_string());
        }
        if let Some(v) = self.sweep_from {
            push("sweep_from", v.to_string());
        }
        if let Some(v) = self.sweep_to {
            push("sweep_to", v.to_string());
        }
        if self.sweep.is_some() {
            push("sweep_points", self.sweep_points.to_string());
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_config(name: &str, content: &str) -> PathBuf {
        let path = std::env::temp_dir()
            .join(format!("nearfield-config-{}-{name}.txt", std::process::id()));
        std::fs::write(&path, content).unwrap();
        path
    }

    #[test]
    fn parses_flat_key_value_with_comments() {
        let path = write_config(
            "parse",
            "# scenario\nn_antennas = 225\nwavelength_m=0.1\ntheta_deg = 90 # broadside\n\nseed=7\n",
        );
        let s = Scenario::from_config_file(Some(&path)).unwrap();
        std::fs::remove_file(&path).unwrap();
        assert_eq!(s.n_antennas, Some(225));
        assert_eq!(s.wavelength_m, Some(0.1));
        assert!((s.theta_rad.unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert_eq!(s.seed, 7);
        assert_eq!(s.spacing_over_lambda, 0.5);
    }

    #[test]
    fn rejects_unknown_keys_and_conflicts() {
        let path = write_config("reject", "n_antenas=8\n");
        assert!(Scenario::from_config_file(Some(&path)).is_err());
        std::fs::write(&path, "wavelength_m=0.1\ncarrier_hz=3e9\n").unwrap();
        assert!(Scenario::from_config_file(Some(&path)).is_err());
        std::fs::write(&path, "theta_rad=1.0\ntheta_deg=60\n").unwrap();
        assert!(Scenario::from_config_file(Some(&path)).is_err());
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn echo_is_sorted_and_complete() {
        let s = Scenario {
            n_antennas: Some(16),
            wavelength_m: Some(0.1),
            ..Default::default()
        };
        let pairs = s.echo_pairs();
        let keys: Vec<&str> = pairs.iter().map(|(k, _)| k.as_str()).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert!(keys.contains(&"n_antennas"));
        assert!(keys.contains(&"threshold_db"));
    }
}
