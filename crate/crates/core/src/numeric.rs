//! Fixed-step RK4 integration of the coupled propagation equations.
//!
//! This is the brute-force cross-check for [`crate::analytic`]: it builds the
//! dense coupling matrix `M_mj = −i β_m c_m c_j*` and marches
//! `dΩ/dz = M Ω` without using the rank-one structure or `X`.

use std::io::Write;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::analytic::{propagate, FieldVector};
use crate::error::{Error, Result};
use crate::scheme::{compute_beta, SchemeConfig};

pub const DEFAULT_STEP_COUNT: usize = 10_000;
pub const MIN_STEP_COUNT: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegratorSettings {
    pub step_count: usize,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        IntegratorSettings { step_count: DEFAULT_STEP_COUNT }
    }
}

impl IntegratorSettings {
    pub fn new(step_count: usize) -> Result<Self> {
        let s = IntegratorSettings { step_count };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.step_count < MIN_STEP_COUNT {
            return Err(Error::InvalidConfig(format!(
                "integrator needs at least {MIN_STEP_COUNT} steps, got {}",
                self.step_count
            )));
        }
        Ok(())
    }
}

fn coupling_matrix(config: &SchemeConfig) -> Vec<Vec<C64>> {
    let beta = compute_beta(config);
    let c = config.c();
    (0..c.len())
        .map(|m| {
            (0..c.len())
                .map(|j| C64::new(0.0, -1.0) * beta[m] * c[m] * c[j].conj())
                .collect()
        })
        .collect()
}

fn apply(matrix: &[Vec<C64>], v: &[C64]) -> Vec<C64> {
    matrix
        .iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn axpy(y: &[C64], a: f64, x: &[C64]) -> Vec<C64> {
    y.iter().zip(x).map(|(y, x)| y + x * a).collect()
}

pub fn integrate(
    config: &SchemeConfig,
    entrance: &FieldVector,
    z: f64,
    settings: &IntegratorSettings,
) -> Result<FieldVector> {
    settings.validate()?;
    if entrance.len() != config.n() {
        return Err(Error::ShapeMismatch { expected: config.n(), found: entrance.len() });
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::InvalidConfig(format!("propagation distance must be ≥ 0, got {z}")));
    }
    let matrix = coupling_matrix(config);
    let h = z / settings.step_count as f64;
    let mut state = entrance.0.clone();
    for step in 0..settings.step_count {
        let k1 = apply(&matrix, &state);
        let k2 = apply(&matrix, &axpy(&state, 0.5 * h, &k1));
        let k3 = apply(&matrix, &axpy(&state, 0.5 * h, &k2));
        let k4 = apply(&matrix, &axpy(&state, h, &k3));
        for (m, s) in state.iter_mut().enumerate() {
            *s += (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]) * (h / 6.0);
        }
        if state.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite { step: step + 1 });
        }
    }
    Ok(FieldVector(state))
}

/// `max_m |a_m − b_m| / max_m |b_m|`, or the absolute error when `b` vanishes.
pub fn max_relative_error(a: &[C64], b: &[C64]) -> f64 {
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let scale = b.iter().map(|y| y.norm()).fold(0.0, f64::max);
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub steps: usize,
    pub max_rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// `log2(e_k / e_{k+1})` between consecutive rows; `None` where either error is zero.
    pub observed_orders: Vec<Option<f64>>,
}

impl ConvergenceReport {
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "steps,max_rel_error")?;
        for row in &self.rows {
            writeln!(out, "{},{:.16e}", row.steps, row.max_rel_error)?;
        }
        Ok(())
    }
}

/// RK4 error against the closed form at `z` for step counts 100, 200, …, 3200.
pub fn convergence_report(config: &SchemeConfig, entrance: &FieldVector, z: f64) -> Result<ConvergenceReport> {
    let reference = propagate(config, entrance, z)?;
    let rows = (0..6)
        .map(|k| {
            let steps = MIN_STEP_COUNT << k;
            let numeric = integrate(config, entrance, z, &IntegratorSettings::new(steps)?)?;
            Ok(ConvergenceRow { steps, max_rel_error: max_relative_error(&numeric.0, &reference.0) })
        })
        .collect::<Result<Vec<_>>>()?;
    let observed_orders = rows
        .windows(2)
        .map(|w| {
            (w[0].max_rel_error > 0.0 && w[1].max_rel_error > 0.0)
                .then(|| (w[0].max_rel_error / w[1].max_rel_error).log2())
        })
        .collect();
    Ok(ConvergenceReport { rows, observed_orders })
}
