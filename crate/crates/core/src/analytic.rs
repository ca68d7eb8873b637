//! Closed-form steady-state propagation through the prepared medium.
//!
//! In the weak-field regime every coherence is slaved to the bright
//! combination `S = Σ_j c_j* Ω_j`, and the field equations reduce to the
//! rank-one linear system
//!
//! ```text
//! dΩ_m/dz = −i β_m c_m S,        dS/dz = −i X S
//! ```
//!
//! whose solution is `Ω_m(z) = Ω_m(0) + β_m c_m S(0) (e^{−iXz} − 1)/X`. The
//! Λ, tripod and general n-level solutions are all special cases of it.

use std::io::Write;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::beam::FieldGrid;
use crate::error::{Error, Result};
use crate::scheme::{PropagationCoefficients, SchemeConfig};

/// Below this `|u|` the factor `(e^u − 1)/u` is taken from its Taylor series.
const SERIES_THRESHOLD: f64 = 1e-5;

/// Complex Rabi frequencies `Ω_1 … Ω_n` at one transverse point, in units of γ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldVector(pub Vec<C64>);

impl FieldVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }
}

impl From<Vec<C64>> for FieldVector {
    fn from(v: Vec<C64>) -> Self {
        FieldVector(v)
    }
}

/// Optical coherences `ρ_{g_m e}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoherenceVector(pub Vec<C64>);

/// Orthonormal atomic states that do not couple to the excited level.
#[derive(Debug, Clone, PartialEq)]
pub struct DarkStateBasis {
    pub vectors: Vec<Vec<C64>>,
}

fn check_len(config: &SchemeConfig, fields: &[C64]) -> Result<()> {
    if fields.len() != config.n() {
        return Err(Error::ShapeMismatch { expected: config.n(), found: fields.len() });
    }
    Ok(())
}

/// `(e^u − 1)/u`, finite and accurate for every `u` including 0.
pub fn exprel(u: C64) -> C64 {
    if u.norm() < SERIES_THRESHOLD {
        // 1 + u/2 + u²/6 + u³/24; the next term is below 1e-21.
        C64::new(1.0, 0.0) + u * (0.5 + u * (1.0 / 6.0 + u / 24.0))
    } else {
        expm1(u) / u
    }
}

/// `e^u − 1` without cancellation for small `|u|`.
fn expm1(u: C64) -> C64 {
    let half = (0.5 * u.im).sin();
    C64::new(
        u.re.exp_m1() * u.im.cos() - 2.0 * half * half,
        u.re.exp() * u.im.sin(),
    )
}

pub fn bright_component(config: &SchemeConfig, fields: &FieldVector) -> Result<C64> {
    check_len(config, &fields.0)?;
    Ok(bright(config.c(), &fields.0))
}

fn bright(c: &[C64], fields: &[C64]) -> C64 {
    c.iter().zip(fields).map(|(c, f)| c.conj() * f).sum()
}

/// First-order steady state `ρ_m = −c_m S / (δ_m + iγ_m)`.
pub fn steady_coherences(config: &SchemeConfig, fields: &FieldVector) -> Result<CoherenceVector> {
    check_len(config, &fields.0)?;
    let s = bright(config.c(), &fields.0);
    Ok(CoherenceVector(
        config
            .c()
            .iter()
            .zip(config.delta())
            .zip(config.gamma())
            .map(|((c, &delta), &gamma)| -(c * s) / C64::new(delta, gamma))
            .collect(),
    ))
}

/// Precomputed propagation constants for repeated evaluation on many points.
#[derive(Debug, Clone)]
pub struct Propagator {
    c: Vec<C64>,
    coefficients: PropagationCoefficients,
    equal_beta: bool,
}

impl Propagator {
    pub fn new(config: &SchemeConfig) -> Self {
        let coefficients = config.coefficients();
        let equal_beta = coefficients.beta.iter().all(|b| *b == coefficients.beta[0]);
        Propagator { c: config.c().to_vec(), coefficients, equal_beta }
    }

    pub fn coefficients(&self) -> &PropagationCoefficients {
        &self.coefficients
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    /// Field vector after a distance `z` with entrance values `entrance`.
    pub fn apply(&self, entrance: &[C64], z: f64) -> Vec<C64> {
        let s0 = bright(&self.c, entrance);
        let beta = &self.coefficients.beta;
        if self.equal_beta {
            // β_m / X = 1: Ω_m(z) = Ω_m(0) + c_m S(0) (e^{−iβz} − 1)
            let growth = expm1(C64::new(0.0, -1.0) * beta[0] * z);
            entrance
                .iter()
                .zip(&self.c)
                .map(|(f, c)| f + c * s0 * growth)
                .collect()
        } else {
            // (e^{−iXz} − 1)/X = −iz · exprel(−iXz)
            let u = C64::new(0.0, -1.0) * self.coefficients.x * z;
            let factor = C64::new(0.0, -z) * exprel(u) * s0;
            entrance
                .iter()
                .zip(&self.c)
                .zip(beta)
                .map(|((f, c), b)| f + b * c * factor)
                .collect()
        }
    }

    /// The `z → ∞` limit, dropping the decaying exponential.
    pub fn asymptote(&self, entrance: &[C64]) -> Result<Vec<C64>> {
        let x = self.coefficients.x;
        if x.norm() == 0.0 {
            return Err(Error::NoAsymptote);
        }
        let s0 = bright(&self.c, entrance);
        Ok(if self.equal_beta {
            entrance.iter().zip(&self.c).map(|(f, c)| f - c * s0).collect()
        } else {
            entrance
                .iter()
                .zip(&self.c)
                .zip(&self.coefficients.beta)
                .map(|((f, c), b)| f - b * c * s0 / x)
                .collect()
        })
    }
}

fn check_distance(z: f64) -> Result<()> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::InvalidConfig(format!("propagation distance must be ≥ 0, got {z}")));
    }
    Ok(())
}

pub fn propagate(config: &SchemeConfig, entrance: &FieldVector, z: f64) -> Result<FieldVector> {
    check_len(config, &entrance.0)?;
    check_distance(z)?;
    Ok(FieldVector(Propagator::new(config).apply(&entrance.0, z)))
}

pub fn asymptotic_fields(config: &SchemeConfig, entrance: &FieldVector) -> Result<FieldVector> {
    check_len(config, &entrance.0)?;
    Propagator::new(config).asymptote(&entrance.0).map(FieldVector)
}

/// Pointwise propagation of a sampled entrance grid (transverse diffraction dropped).
pub fn propagate_grid(config: &SchemeConfig, entrance: &FieldGrid, z: f64) -> Result<FieldGrid> {
    if entrance.n() != config.n() {
        return Err(Error::ShapeMismatch { expected: config.n(), found: entrance.n() });
    }
    check_distance(z)?;
    let propagator = Propagator::new(config);
    Ok(entrance.map_points(|point| propagator.apply(point, z)))
}

/// Orthonormal basis of the atomic states orthogonal to the field vector, i.e.
/// every `d` satisfies `Σ_m Ω_m* d_m = 0`.
pub fn dark_basis(fields: &FieldVector) -> Result<DarkStateBasis> {
    let omega = &fields.0;
    let norm = omega.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 || omega.len() < 2 {
        return Err(Error::ZeroField);
    }
    if omega.len() == 2 {
        return Ok(DarkStateBasis {
            vectors: vec![vec![omega[1].conj() / norm, -omega[0].conj() / norm]],
        });
    }
    let unit: Vec<C64> = omega.iter().map(|v| v / norm).collect();
    let mut accepted: Vec<Vec<C64>> = vec![unit.clone()];
    // Seed with every axis except the one the field leans on most.
    let pivot = (0..unit.len())
        .max_by(|&a, &b| unit[a].norm().total_cmp(&unit[b].norm()))
        .unwrap_or(0);
    let mut order: Vec<usize> = (0..unit.len()).filter(|&k| k != pivot).collect();
    order.sort_by(|&a, &b| unit[a].norm().total_cmp(&unit[b].norm()));
    for k in order {
        let mut v = vec![C64::new(0.0, 0.0); unit.len()];
        v[k] = C64::new(1.0, 0.0);
        for _ in 0..2 {
            for q in &accepted {
                let overlap: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= qi * overlap;
                }
            }
        }
        let len = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        accepted.push(v.into_iter().map(|x| x / len).collect());
    }
    accepted.remove(0);
    Ok(DarkStateBasis { vectors: accepted })
}

/// Derivatives of the two-level output with respect to the preparation errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sensitivity {
    /// `∂Ω₁/∂|c₁|`
    pub d_omega1_d_abs_c1: C64,
    /// `∂Ω₂/∂|c₁|`; `None` where it is singular (`|c₁| ∈ {0, 1}`).
    pub d_omega2_d_abs_c1: Option<C64>,
    /// `∂Ω₂/∂φ_c = iΩ₂(z)`
    pub d_omega2_d_phase: C64,
}

/// Sensitivity of a Λ medium with equal resonant coefficients to errors in
/// `|c₁|` and in the relative phase `φ_c = arg c₂ − arg c₁`, for a single
/// incident field `Ω₁(0) = Ω`, `Ω₂(0) = 0`.
pub fn sensitivity(config: &SchemeConfig, entrance: &FieldVector, z: f64) -> Result<Sensitivity> {
    check_len(config, &entrance.0)?;
    check_distance(z)?;
    if config.n() != 2 {
        return Err(Error::SensitivityRegime(format!("needs n = 2, got {}", config.n())));
    }
    if !config.is_symmetric_resonant() {
        return Err(Error::SensitivityRegime(
            "needs resonant transitions with a common optical depth".into(),
        ));
    }
    if entrance.0[1].norm() != 0.0 {
        return Err(Error::SensitivityRegime("needs Ω₂(0) = 0".into()));
    }
    let propagator = Propagator::new(config);
    let omega = entrance.0[0];
    let beta = propagator.coefficients().beta[0];
    let decay_minus_one = expm1(C64::new(0.0, -1.0) * beta * z);
    let c = config.c();
    let a1 = c[0].norm();
    let phase = c[1].arg() - c[0].arg();
    let singular = a1 < 1e-12 || 1.0 - a1 < 1e-12;
    let d2 = (!singular).then(|| {
        omega * C64::from_polar(1.0, phase) * decay_minus_one * (1.0 - 2.0 * a1 * a1)
            / (1.0 - a1 * a1).sqrt()
    });
    let omega2 = propagator.apply(&entrance.0, z)[1];
    Ok(Sensitivity {
        d_omega1_d_abs_c1: 2.0 * omega * a1 * decay_minus_one,
        d_omega2_d_abs_c1: d2,
        d_omega2_d_phase: C64::new(0.0, 1.0) * omega2,
    })
}

/// One sample of a z-scan: intensities normalized to `|Ω₁(0)|²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZScanRow {
    pub z: f64,
    pub z_over_labs: f64,
    pub intensity: Vec<f64>,
}

/// Intensities along `z_values`, normalized to `|Ω₁(0)|²`, with distances
/// expressed in absorption lengths.
pub fn zscan(config: &SchemeConfig, entrance: &FieldVector, z_values: &[f64]) -> Result<Vec<ZScanRow>> {
    check_len(config, &entrance.0)?;
    let reference = entrance.0[0].norm_sqr();
    if reference == 0.0 {
        return Err(Error::InvalidConfig("z-scan needs a nonzero Ω₁(0) for normalization".into()));
    }
    let propagator = Propagator::new(config);
    let scale = propagator
        .coefficients()
        .absorption
        .effective_length()
        .unwrap_or(config.length());
    z_values
        .iter()
        .map(|&z| {
            check_distance(z)?;
            let out = propagator.apply(&entrance.0, z);
            Ok(ZScanRow {
                z,
                z_over_labs: z / scale,
                intensity: out.iter().map(|v| v.norm_sqr() / reference).collect(),
            })
        })
        .collect()
}

/// Writes `z_over_Labs,field_index,intensity_normalized` rows (field index from 1).
pub fn write_zscan_csv<W: Write>(rows: &[ZScanRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "z_over_Labs,field_index,intensity_normalized")?;
    for row in rows {
        for (m, v) in row.intensity.iter().enumerate() {
            writeln!(out, "{:.16e},{},{:.16e}", row.z_over_labs, m + 1, v)?;
        }
    }
    Ok(())
}
