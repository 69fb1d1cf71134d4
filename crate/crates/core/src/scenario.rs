//! Scenario documents and batch runs.
//!
//! A scenario is one TOML (or JSON) document. Every key is optional:
//!
//! ```toml
//! t_end = 6.283185307179586
//! samples = 64
//! schemes = ["hamiltonian", "S1", "S2", "S3"]
//! variants = ["derived"]
//! strict = false
//!
//! [params]
//! m = 1.0
//! A = 1.0
//! omega = 1.0
//! hbar = 1.0
//!
//! [packet]
//! k0 = 0.0
//! sigma_k = 1.0
//! x0 = 0.0
//!
//! [grid]
//! k_min = -24.0
//! k_max = 24.0
//! n = 1024
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::characteristics::EngineOptions;
use crate::error::{Error, Result};
use crate::hamiltonian::{evolve_hamiltonian, HamiltonianVariant};
use crate::model::{GaussianPacket, MomentumGrid, PhysicalParams};
use crate::observables::density_distance;
use crate::reference::{splitstep_evolve, PositionGrid, PositionState, SplitStepOptions};
use crate::report::{build_scheme_report, SchemeReport};
use crate::schemes::{scheme3_char_map, FormulaVariant, SchemeId};

/// One of the four quantizations compared by a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SchemeKind {
    #[serde(rename = "hamiltonian")]
    Hamiltonian,
    S1,
    S2,
    S3,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 4] = [SchemeKind::Hamiltonian, SchemeKind::S1, SchemeKind::S2, SchemeKind::S3];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Hamiltonian => "hamiltonian",
            SchemeKind::S1 => "S1",
            SchemeKind::S2 => "S2",
            SchemeKind::S3 => "S3",
        }
    }

    pub fn constant_scheme(self) -> Option<SchemeId> {
        match self {
            SchemeKind::Hamiltonian => None,
            SchemeKind::S1 => Some(SchemeId::S1),
            SchemeKind::S2 => Some(SchemeId::S2),
            SchemeKind::S3 => Some(SchemeId::S3),
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown scheme `{s}` in `schemes`; expected hamiltonian, S1, S2 or S3")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub k_min: f64,
    pub k_max: f64,
    pub n: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            k_min: -24.0,
            k_max: 24.0,
            n: 1024,
        }
    }
}

impl GridSpec {
    pub fn build(&self) -> Result<MomentumGrid> {
        MomentumGrid::new(self.k_min, self.k_max, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub params: PhysicalParams,
    pub packet: GaussianPacket,
    pub grid: GridSpec,
    pub schemes: Vec<SchemeKind>,
    pub variants: Vec<FormulaVariant>,
    pub t_end: f64,
    pub samples: usize,
    /// Time step of the split-step oracle.
    pub dt: f64,
    /// Characteristic RK4 steps per unit time; `None` uses the engine default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    pub strict: bool,
    /// Largest L¹ distance tolerated between the split-step oracle and the
    /// Hamiltonian solution in strict runs.
    pub tolerance: f64,
    /// Widen the grid when the packet would outgrow it; abort otherwise.
    pub extend_grid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            params: PhysicalParams::default(),
            packet: GaussianPacket::default(),
            grid: GridSpec::default(),
            schemes: SchemeKind::ALL.to_vec(),
            variants: vec![FormulaVariant::Derived],
            t_end: 2.0 * PI,
            samples: 64,
            dt: 1e-3,
            steps: None,
            strict: false,
            tolerance: 1e-5,
            extend_grid: true,
            output_dir: None,
        }
    }
}

fn invalid(key: &str, reason: impl fmt::Display) -> Error {
    Error::Config(format!("`{key}`: {reason}"))
}

/// Document syntax of a scenario file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfigFormat {
    Toml,
    Json,
}

impl ConfigFormat {
    /// `.json` files are JSON, anything else TOML.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => ConfigFormat::Json,
            _ => ConfigFormat::Toml,
        }
    }
}

/// Parses and validates a scenario document, filling in defaults.
pub fn parse_config(document: &str, format: ConfigFormat) -> Result<ScenarioConfig> {
    let config: ScenarioConfig = match format {
        ConfigFormat::Toml => toml::from_str(document).map_err(|e| Error::Config(e.to_string()))?,
        ConfigFormat::Json => {
            if document.trim().is_empty() {
                ScenarioConfig::default()
            } else {
                serde_json::from_str(document).map_err(|e| Error::Config(e.to_string()))?
            }
        }
    };
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let text = fs::read_to_string(path)?;
    parse_config(&text, ConfigFormat::from_path(path))
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        for (key, v) in [("params.m", p.m), ("params.A", p.amplitude), ("params.omega", p.omega), ("params.hbar", p.hbar)] {
            if !v.is_finite() {
                return Err(invalid(key, format!("must be finite, got {v}")));
            }
        }
        if p.m <= 0.0 {
            return Err(invalid("params.m", format!("must be positive, got {}", p.m)));
        }
        if p.hbar <= 0.0 {
            return Err(invalid("params.hbar", format!("must be positive, got {}", p.hbar)));
        }
        if p.omega == 0.0 {
            return Err(invalid("params.omega", "must be nonzero"));
        }
        let k = &self.packet;
        if !(k.sigma_k > 0.0 && k.sigma_k.is_finite()) {
            return Err(invalid("packet.sigma_k", format!("must be positive, got {}", k.sigma_k)));
        }
        if !k.k0.is_finite() {
            return Err(invalid("packet.k0", "must be finite"));
        }
        if !k.x0.is_finite() {
            return Err(invalid("packet.x0", "must be finite"));
        }
        if self.grid.n < 16 {
            return Err(invalid("grid.n", format!("need at least 16 points, got {}", self.grid.n)));
        }
        if !(self.grid.k_min.is_finite() && self.grid.k_max.is_finite() && self.grid.k_min < self.grid.k_max) {
            return Err(invalid("grid.k_min", format!("need k_min < k_max, got [{}, {}]", self.grid.k_min, self.grid.k_max)));
        }
        if self.schemes.is_empty() {
            return Err(invalid("schemes", "select at least one scheme"));
        }
        if self.variants.is_empty() {
            return Err(invalid("variants", "select at least one variant"));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(invalid("t_end", format!("must be positive, got {}", self.t_end)));
        }
        if self.samples < 2 {
            return Err(invalid("samples", format!("need at least 2, got {}", self.samples)));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(invalid("dt", format!("must be positive, got {}", self.dt)));
        }
        if self.steps == Some(0) {
            return Err(invalid("steps", "must be positive"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(invalid("tolerance", format!("must be positive, got {}", self.tolerance)));
        }
        Ok(())
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Evenly spaced sample instants in `[0, t_end]`.
    pub fn sample_times(&self) -> Vec<f64> {
        crate::numerics::linspace(0.0, self.t_end, self.samples)
    }

    /// Characteristic solver settings for evolving to time `t`.
    pub fn engine_options(&self, t: f64) -> EngineOptions {
        let base = EngineOptions::for_frequency(self.params.omega);
        match self.steps {
            Some(per_unit) => base.with_steps((per_unit as f64 * t).ceil().max(1.0) as usize),
            None => base,
        }
    }

    pub fn wants_variant(&self, v: FormulaVariant) -> bool {
        self.variants.contains(&v)
    }

    /// Grid actually used by a run; see [`plan_grid`].
    pub fn plan_grid(&self) -> Result<GridPlan> {
        plan_grid(self)
    }
}

/// Grid chosen for a run, with the support the selected schemes need.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPlan {
    pub grid: MomentumGrid,
    /// Half-width `|k|` that holds eight packet widths of every selected
    /// scheme over `[0, t_end]`.
    pub required_half_width: f64,
    pub extended: bool,
    pub warnings: Vec<String>,
}

const PACKET_WIDTHS: f64 = 8.0;

/// Largest `|k|` at which a selected scheme's density is still above the
/// eight-width Gaussian tail at some sampled time.
pub fn required_half_width(config: &ScenarioConfig) -> Result<f64> {
    let p = &config.params;
    let reach = config.packet.k0.abs() + PACKET_WIDTHS * config.packet.sigma_k;
    let mut need = reach + (p.amplitude / (p.hbar * p.omega)).abs();
    let times = config.sample_times();
    for kind in &config.schemes {
        match kind {
            SchemeKind::Hamiltonian | SchemeKind::S1 => {}
            SchemeKind::S2 => need = need.max(reach + (p.amplitude * config.t_end / p.hbar).abs()),
            SchemeKind::S3 => {
                for &t in &times {
                    let map = scheme3_char_map(p, t, FormulaVariant::Derived, config.engine_options(t).resolve_steps(t))?;
                    // k = (k0 - shift)/scale
                    need = need.max((reach + map.shift.abs()) / map.scale);
                }
            }
        }
    }
    Ok(need)
}

pub fn plan_grid(config: &ScenarioConfig) -> Result<GridPlan> {
    let grid = config.grid.build()?;
    let need = required_half_width(config)?;
    if grid.k_min() <= -need && grid.k_max() >= need {
        return Ok(GridPlan {
            grid,
            required_half_width: need,
            extended: false,
            warnings: Vec::new(),
        });
    }
    let message = format!(
        "grid [{}, {}] does not hold the packet support |k| <= {need:.3} reached by the selected schemes by t = {}",
        grid.k_min(),
        grid.k_max(),
        config.t_end
    );
    if !config.extend_grid {
        return Err(Error::GridTooCoarse(message));
    }
    let sigma = config.packet.sigma_k;
    let spacing = grid.spacing().clamp(sigma / 8.0, sigma / 4.0);
    let (k_min, k_max) = (grid.k_min().min(-need), grid.k_max().max(need));
    let n = ((k_max - k_min) / spacing).ceil() as usize + 1;
    let widened = MomentumGrid::new(k_min, k_max, n)?;
    Ok(GridPlan {
        grid: widened,
        required_half_width: need,
        extended: true,
        warnings: vec![format!(
            "{message}; extended to [{k_min:.3}, {k_max:.3}] with {n} points (spacing {:.4})",
            widened.spacing()
        )],
    })
}

/// Split-step solution of the Hamiltonian scheme at `t`, transformed to the
/// report grid and compared with the characteristics solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub t: f64,
    pub distance: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Position grid wide enough for the packet at every time up to `t` and
/// fine enough for its largest wavenumber.
pub fn oracle_position_grid(params: &PhysicalParams, packet: &GaussianPacket, t: f64) -> Result<PositionGrid> {
    let vel = params.hbar / params.m;
    let drive_k = (params.amplitude / (params.hbar * params.omega)).abs();
    let k_reach = packet.k0.abs() + drive_k + 10.0 * packet.sigma_k;
    let sx0 = packet.sigma_x();
    let spread = sx0 * (1.0 + (vel * t / (2.0 * sx0 * sx0)).powi(2)).sqrt();
    let excursion = vel * (packet.k0.abs() + drive_k) * t + 2.0 * (params.amplitude / (params.m * params.omega * params.omega)).abs();
    let half = packet.x0.abs() + excursion + 14.0 * spread;
    let dx_max = PI / (1.5 * k_reach);
    let n = ((2.0 * half / dx_max).ceil() as usize).next_power_of_two().max(64);
    PositionGrid::new(-half, half, n)
}

pub fn splitstep_oracle(config: &ScenarioConfig, grid: &MomentumGrid) -> Result<OracleCheck> {
    let t = config.t_end;
    let pgrid = oracle_position_grid(&config.params, &config.packet, t)?;
    let psi0 = PositionState::gaussian(&config.packet, &pgrid);
    let out = splitstep_evolve(&psi0, &config.params, t, config.dt, &SplitStepOptions::default())?;
    let oracle = out.to_momentum(grid)?;
    let exact = evolve_hamiltonian(
        &config.packet,
        grid,
        &config.params,
        t,
        HamiltonianVariant::ExactCharacteristics,
        &config.engine_options(t),
    )?;
    let distance = density_distance(&oracle, &exact)?;
    Ok(OracleCheck {
        t,
        distance,
        tolerance: config.tolerance,
        passed: distance <= config.tolerance,
    })
}

/// Checks applied by strict runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrictOutcome {
    pub norm_tolerance: f64,
    pub worst_norm_error: f64,
    pub min_uncertainty_ratio: f64,
    pub oracle: OracleCheck,
    pub failures: Vec<String>,
}

impl StrictOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const NORM_TOLERANCE: f64 = 1e-6;
pub const ROBERTSON_SLACK: f64 = 1e-9;

pub fn strict_checks(config: &ScenarioConfig, report: &SchemeReport) -> Result<StrictOutcome> {
    let mut failures = Vec::new();
    let mut worst_norm: f64 = 0.0;
    let mut min_ratio = f64::INFINITY;
    for series in &report.series {
        for (mo, &t) in series.moments.iter().zip(&report.times) {
            let err = (mo.norm - 1.0).abs();
            worst_norm = worst_norm.max(err);
            if series.variant == FormulaVariant::Derived && err > NORM_TOLERANCE {
                failures.push(format!("{} norm {} at t = {t} is off by more than {NORM_TOLERANCE:e}", series.label, mo.norm));
            }
            let ratio = mo.uncertainty_product() / report.uncertainty_bound;
            min_ratio = min_ratio.min(ratio);
            if series.variant == FormulaVariant::Derived && ratio < 1.0 - ROBERTSON_SLACK {
                failures.push(format!("{} violates the uncertainty bound at t = {t}: ratio {ratio}", series.label));
            }
        }
    }
    let oracle = splitstep_oracle(config, &report.grid()?)?;
    if !oracle.passed {
        failures.push(format!(
            "split-step oracle differs from the hamiltonian solution by {:e} > {:e} at t = {}",
            oracle.distance, oracle.tolerance, oracle.t
        ));
    }
    Ok(StrictOutcome {
        norm_tolerance: NORM_TOLERANCE,
        worst_norm_error: worst_norm,
        min_uncertainty_ratio: min_ratio,
        oracle,
        failures,
    })
}

/// Everything written to `summary.json`.
#[derive(Clone, Debug, Serialize)]
pub struct RunSummary<'a> {
    pub config: &'a ScenarioConfig,
    pub grid: crate::report::GridSummary,
    pub warnings: &'a [String],
    pub times: &'a [f64],
    pub distances: Vec<DistanceColumn<'a>>,
    pub audit: &'a [crate::report::AuditEntry],
    pub uncertainty_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<&'a StrictOutcome>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceColumn<'a> {
    pub scheme: &'a str,
    pub distance_to_hamiltonian: &'a [f64],
}

/// Result of [`run_scenario`].
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: SchemeReport,
    pub strict: Option<StrictOutcome>,
    pub files: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.strict.as_ref().map_or(true, StrictOutcome::passed)
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Builds the report, runs the strict checks when requested and writes
/// `densities.csv`, `moments.csv` and `summary.json` into `out_dir`.
pub fn run_scenario(config: &ScenarioConfig, out_dir: &Path) -> Result<RunOutcome> {
    config.validate()?;
    let report = build_scheme_report(config)?;
    let strict = if config.strict { Some(strict_checks(config, &report)?) } else { None };
    fs::create_dir_all(out_dir)?;
    let files = write_outputs(config, &report, strict.as_ref(), out_dir)?;
    Ok(RunOutcome { report, strict, files })
}

pub fn write_outputs(config: &ScenarioConfig, report: &SchemeReport, strict: Option<&StrictOutcome>, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let densities = out_dir.join("densities.csv");
    let mut w = BufWriter::new(fs::File::create(&densities)?);
    writeln!(w, "t,k,scheme,density")?;
    let ks = report.k.clone();
    for (ti, &t) in report.times.iter().enumerate() {
        for series in &report.series {
            for (k, d) in ks.iter().zip(&series.densities[ti]) {
                writeln!(w, "{},{},{},{}", num(t), num(*k), series.label, num(*d))?;
            }
        }
    }
    w.flush()?;

    let moments = out_dir.join("moments.csv");
    let mut w = BufWriter::new(fs::File::create(&moments)?);
    writeln!(w, "t,scheme,mean_x,mean_v,sigma_x,sigma_v,norm")?;
    for (ti, &t) in report.times.iter().enumerate() {
        for series in &report.series {
            let m = &series.moments[ti];
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                num(t),
                series.label,
                num(m.mean_x),
                num(m.mean_v),
                num(m.sigma_x),
                num(m.sigma_v),
                num(m.norm)
            )?;
        }
    }
    w.flush()?;

    let summary_path = out_dir.join("summary.json");
    let summary = RunSummary {
        config,
        grid: report.grid_summary,
        warnings: &report.warnings,
        times: &report.times,
        distances: report
            .series
            .iter()
            .map(|s| DistanceColumn {
                scheme: &s.label,
                distance_to_hamiltonian: &s.distance_to_hamiltonian,
            })
            .collect(),
        audit: &report.audit,
        uncertainty_bound: report.uncertainty_bound,
        strict,
        passed: strict.map_or(true, StrictOutcome::passed),
    };
    let text = serde_json::to_string_pretty(&summary).map_err(|e| Error::Config(e.to_string()))?;
    fs::write(&summary_path, text + "\n")?;
    Ok(vec![densities, moments, summary_path])
}
