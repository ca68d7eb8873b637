//! Scenario files, batch runs and the built-in figure reproductions.
//!
//! A run writes plain data into one output directory:
//!
//! | file | content |
//! |------|---------|
//! | `run.json` | resolved scenario with every default expanded, list of outputs |
//! | `fields_z{k}.csv` / `.json` | field grid at `z_samples[k]` and its metadata |
//! | `vortices_z{k}_field{m}.json` | vortex report of field `m` (from 1) at `z_samples[k]` |
//! | `zscan.csv` | intensities at the probe point along `z` |
//! | `convergence.csv` | RK4 error table (`convergence` scenarios) |
//! | `validity.json` | first-order and diffraction diagnostics |
//!
//! Outputs contain no timestamps or host data, so a scenario always
//! produces byte-identical files.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::analytic::{propagate, propagate_grid, steady_coherences, write_zscan_csv, zscan, FieldVector};
use crate::beam::{
    diffraction_criterion, sample_grid, superpose_at, BeamSuperposition, DiffractionCheck, FieldGrid,
    LgBeam, TransverseGrid,
};
use crate::error::{Error, Result};
use crate::numeric::{convergence_report, IntegratorSettings};
use crate::scheme::{validate_first_order, FirstOrderDiagnostic, SchemeConfig};
use crate::vortex::{analyze, MIN_DETECTION_RESOLUTION};

pub const DEFAULT_ZSCAN_POINTS: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    LambdaTransfer,
    TripodTransfer,
    MultilevelTransfer,
    Composite,
    Zscan,
    Convergence,
}

/// Sampling of the on-axis z-scan: `points` distances spread evenly over `[0, max_z]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZScanSettings {
    #[serde(default = "default_zscan_points")]
    pub points: usize,
    /// Defaults to the medium length `L`.
    #[serde(default)]
    pub max_z: Option<f64>,
}

fn default_zscan_points() -> usize {
    DEFAULT_ZSCAN_POINTS
}

impl Default for ZScanSettings {
    fn default() -> Self {
        ZScanSettings { points: DEFAULT_ZSCAN_POINTS, max_z: None }
    }
}

/// Physical lengths for the diffraction guard, all in one unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffractionSpec {
    pub length: f64,
    pub wavelength: f64,
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub config: SchemeConfig,
    /// One entry per field; `null` leaves that field dark at the entrance.
    pub beams: Vec<Option<BeamSuperposition>>,
    #[serde(default)]
    pub grid: TransverseGrid,
    #[serde(default)]
    pub z_samples: Vec<f64>,
    #[serde(default)]
    pub zscan: ZScanSettings,
    /// Transverse point `[x, y]` whose entrance amplitudes drive the z-scan
    /// and the convergence table.
    #[serde(default)]
    pub probe: [f64; 2],
    #[serde(default)]
    pub diffraction: Option<DiffractionSpec>,
    #[serde(default)]
    pub integrator: IntegratorSettings,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let scenario: Scenario = serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Scenario::from_json(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.config.n();
        if self.beams.len() != n {
            return Err(Error::ShapeMismatch { expected: n, found: self.beams.len() });
        }
        match self.kind {
            ScenarioKind::LambdaTransfer if n != 2 => {
                return Err(Error::InvalidConfig(format!("lambda-transfer needs n = 2, got {n}")))
            }
            ScenarioKind::TripodTransfer if n != 3 => {
                return Err(Error::InvalidConfig(format!("tripod-transfer needs n = 3, got {n}")))
            }
            _ => {}
        }
        self.grid.validate()?;
        self.integrator.validate()?;
        if self.z_samples.iter().any(|z| !(*z >= 0.0) || !z.is_finite()) {
            return Err(Error::InvalidConfig("z_samples must be finite and ≥ 0".into()));
        }
        if self.z_samples.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidConfig("z_samples must be ascending".into()));
        }
        if !self.z_samples.is_empty() && self.grid.resolution < MIN_DETECTION_RESOLUTION {
            return Err(Error::InvalidConfig(format!(
                "field grids need resolution ≥ {MIN_DETECTION_RESOLUTION} for vortex analysis"
            )));
        }
        if self.zscan.points < 2 {
            return Err(Error::InvalidConfig("zscan.points must be ≥ 2".into()));
        }
        if let Some(max_z) = self.zscan.max_z {
            if !(max_z > 0.0) || !max_z.is_finite() {
                return Err(Error::InvalidConfig(format!("zscan.max_z must be > 0, got {max_z}")));
            }
        }
        if self.probe.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidConfig("probe coordinates must be finite".into()));
        }
        if let Some(d) = &self.diffraction {
            diffraction_criterion(d.length, d.wavelength, d.width)?;
        }
        if matches!(self.kind, ScenarioKind::Zscan) && self.probe_entrance().0[0].norm_sqr() == 0.0 {
            return Err(Error::InvalidConfig("zscan needs a nonzero Ω₁ at the probe point".into()));
        }
        Ok(())
    }

    /// Entrance amplitudes at the probe point.
    pub fn probe_entrance(&self) -> FieldVector {
        let [x, y] = self.probe;
        FieldVector(self.beams.iter().map(|b| superpose_at(b.as_ref(), x, y)).collect())
    }

    pub fn zscan_distances(&self) -> Vec<f64> {
        let max_z = self.zscan.max_z.unwrap_or(self.config.length());
        let last = self.zscan.points - 1;
        (0..=last).map(|k| max_z * k as f64 / last as f64).collect()
    }

    /// Distance used for the convergence table: the last z sample, else `L`.
    pub fn convergence_distance(&self) -> f64 {
        self.z_samples.last().copied().unwrap_or(self.config.length())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub first_order: FirstOrderDiagnostic,
    pub diffraction: Option<DiffractionCheck>,
    /// Human-readable descriptions of every failed guard.
    pub flags: Vec<String>,
}

impl ValidityReport {
    pub fn ok(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Outcome of [`run`]: written files (relative to the output directory) and diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub files: Vec<String>,
    pub validity: ValidityReport,
}

fn write_file(dir: &Path, name: &str, files: &mut Vec<String>, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    let mut out = BufWriter::new(File::create(dir.join(name))?);
    body(&mut out)?;
    out.flush()?;
    files.push(name.to_string());
    Ok(())
}

fn write_json<T: Serialize>(dir: &Path, name: &str, files: &mut Vec<String>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    write_file(dir, name, files, |out| writeln!(out, "{text}"))
}

/// Largest `|ρ_{g_m e}|` over a set of field vectors.
fn max_coherence<'a>(config: &SchemeConfig, points: impl Iterator<Item = &'a [C64]>) -> Result<f64> {
    let mut max = 0.0f64;
    for p in points {
        let rho = steady_coherences(config, &FieldVector(p.to_vec()))?;
        max = max.max(rho.0.iter().map(|r| r.norm()).fold(0.0, f64::max));
    }
    Ok(max)
}

fn grid_points(grid: &FieldGrid) -> impl Iterator<Item = &[C64]> {
    grid.values().chunks(grid.n())
}

/// Runs `scenario` and writes its artifacts into `out_dir` (created if needed).
///
/// With `strict`, a failed validity guard turns into [`Error::Validity`]
/// after all files have been written.
pub fn run(scenario: &Scenario, out_dir: &Path, strict: bool) -> Result<RunOutput> {
    scenario.validate()?;
    fs::create_dir_all(out_dir)?;
    let config = &scenario.config;
    let mut files = Vec::new();
    let mut coherence = 0.0f64;

    if !scenario.z_samples.is_empty() {
        let entrance = sample_grid(config, &scenario.beams, &scenario.grid)?;
        coherence = coherence.max(max_coherence(config, grid_points(&entrance))?);
        for (k, &z) in scenario.z_samples.iter().enumerate() {
            let fields = propagate_grid(config, &entrance, z)?;
            coherence = coherence.max(max_coherence(config, grid_points(&fields))?);
            write_file(out_dir, &format!("fields_z{k}.csv"), &mut files, |out| fields.write_csv(out))?;
            write_json(out_dir, &format!("fields_z{k}.json"), &mut files, &fields.sidecar(z, config))?;
            for m in 0..config.n() {
                let report = analyze(&fields, m)?;
                write_json(out_dir, &format!("vortices_z{k}_field{}.json", m + 1), &mut files, &report)?;
            }
        }
    }

    let probe = scenario.probe_entrance();
    coherence = coherence.max(max_coherence(config, std::iter::once(probe.as_slice()))?);
    if probe.0[0].norm_sqr() > 0.0 {
        let rows = zscan(config, &probe, &scenario.zscan_distances())?;
        for row in &rows {
            let out = propagate(config, &probe, row.z)?;
            coherence = coherence.max(max_coherence(config, std::iter::once(out.as_slice()))?);
        }
        write_file(out_dir, "zscan.csv", &mut files, |out| write_zscan_csv(&rows, out))?;
    }

    if scenario.kind == ScenarioKind::Convergence {
        let report = convergence_report(config, &probe, scenario.convergence_distance())?;
        write_file(out_dir, "convergence.csv", &mut files, |out| report.write_csv(out))?;
    }

    let first_order = validate_first_order(config, &[C64::new(coherence, 0.0)]);
    let diffraction = scenario
        .diffraction
        .map(|d| diffraction_criterion(d.length, d.wavelength, d.width))
        .transpose()?;
    let mut flags = Vec::new();
    if !first_order.valid {
        flags.push(format!(
            "first-order: max |ρ| = {:.6e} is not below {}",
            first_order.max_coherence, first_order.threshold
        ));
    }
    if let Some(d) = diffraction.filter(|d| !d.negligible) {
        flags.push(format!("diffraction: Lλ/w² = {:.6e} is not below π", d.value));
    }
    let validity = ValidityReport { first_order, diffraction, flags };
    write_json(out_dir, "validity.json", &mut files, &validity)?;

    files.push("run.json".to_string());
    let meta = serde_json::json!({ "scenario": scenario, "outputs": files });
    let text = serde_json::to_string_pretty(&meta)?;
    fs::write(out_dir.join("run.json"), format!("{text}\n"))?;

    if strict && !validity.ok() {
        return Err(Error::Validity(validity.flags.join("; ")));
    }
    Ok(RunOutput { files, validity })
}

/// Figure identifiers understood by [`reproduce`].
pub const FIGURES: [&str; 5] = ["fig2", "fig4", "fig6", "fig7", "fig8"];

/// Entrance amplitude of every beam in the built-in figures, in units of γ.
pub const FIGURE_EPSILON: f64 = 0.1;
pub const FIGURE_ALPHA: f64 = 20.0;

fn real(values: &[f64]) -> Vec<C64> {
    values.iter().map(|&v| C64::new(v, 0.0)).collect()
}

fn beam(epsilon: f64, l: i32) -> Option<BeamSuperposition> {
    Some(BeamSuperposition::single(LgBeam { epsilon, w: 1.0, l }))
}

fn zscan_scenario(c: Vec<C64>) -> Scenario {
    let n = c.len();
    let mut beams = vec![None; n];
    beams[0] = beam(FIGURE_EPSILON, 0);
    Scenario {
        kind: if n == 2 { ScenarioKind::LambdaTransfer } else { ScenarioKind::TripodTransfer },
        config: SchemeConfig::resonant(c, FIGURE_ALPHA).expect("built-in coefficients are normalized"),
        beams,
        grid: TransverseGrid::default(),
        z_samples: Vec::new(),
        zscan: ZScanSettings { points: DEFAULT_ZSCAN_POINTS, max_z: Some(2.0) },
        probe: [0.0, 0.0],
        diffraction: None,
        integrator: IntegratorSettings::default(),
    }
}

/// Two-beam Λ composite at `z = L/2` with equal entrance strengths.
pub fn composite_scenario(l1: i32, l2: i32) -> Scenario {
    Scenario {
        kind: ScenarioKind::Composite,
        config: SchemeConfig::resonant(real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]), FIGURE_ALPHA)
            .expect("built-in coefficients are normalized"),
        beams: vec![beam(FIGURE_EPSILON, l1), beam(FIGURE_EPSILON, l2)],
        grid: TransverseGrid::default(),
        z_samples: vec![0.5],
        zscan: ZScanSettings::default(),
        probe: [0.0, 0.0],
        diffraction: None,
        integrator: IntegratorSettings::default(),
    }
}

/// Built-in scenarios for a figure, each with the subdirectory it is written to
/// (empty for single-scenario figures).
pub fn figure_scenarios(figure: &str) -> Result<Vec<(String, Scenario)>> {
    let pairs: Vec<(i32, i32)> = match figure {
        "fig2" => return Ok(vec![(String::new(), zscan_scenario(real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2])))]),
        "fig4" => {
            let c = [0.5f64, 1.0 / 3.0, 1.0 / 6.0].map(f64::sqrt);
            return Ok(vec![(String::new(), zscan_scenario(real(&c)))]);
        }
        "fig6" => [1, 5, 8].iter().map(|&l| (l, l)).collect(),
        "fig7" => vec![(1, -3), (-1, 4), (3, -5)],
        "fig8" => (1..=4).map(|l| (l, -l)).collect(),
        other => return Err(Error::UnknownFigure(other.to_string())),
    };
    Ok(pairs
        .into_iter()
        .map(|(l1, l2)| (format!("l1_{l1}_l2_{l2}"), composite_scenario(l1, l2)))
        .collect())
}

/// Runs the built-in scenarios of `figure` below `out_dir`.
pub fn reproduce(figure: &str, out_dir: &Path) -> Result<Vec<RunOutput>> {
    figure_scenarios(figure)?
        .into_iter()
        .map(|(sub, scenario)| run(&scenario, &out_dir.join(sub), false))
        .collect()
}
