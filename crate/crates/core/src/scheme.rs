//! The coherently prepared (n+1)-level medium and its propagation constants.
//!
//! Rates are measured in units of a reference decay rate (γ = 1) and lengths
//! in units of the medium length unless a configuration overrides them. Each
//! of the `n` ground states `|g_m⟩` couples to the single excited state `|e⟩`
//! through its own field `Ω_m`; the atoms start in `Σ c_m |g_m⟩`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `Σ|c_m|² = 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Default bound on `max_m |ρ_{g_m e}|` for the weak-field expansion.
pub const DEFAULT_FIRST_ORDER_THRESHOLD: f64 = 0.1;

/// Medium description for a scheme with `n ≥ 2` ground states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSchemeConfig", into = "RawSchemeConfig")]
pub struct SchemeConfig {
    c: Vec<C64>,
    alpha: Vec<f64>,
    gamma: Vec<f64>,
    delta: Vec<f64>,
    length: f64,
    first_order_threshold: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSchemeConfig {
    n: usize,
    c: Vec<C64>,
    alpha: Vec<f64>,
    #[serde(default)]
    gamma: Option<Vec<f64>>,
    #[serde(default)]
    delta: Option<Vec<f64>>,
    #[serde(rename = "L", default = "default_length")]
    length: f64,
    #[serde(default = "default_threshold")]
    first_order_threshold: f64,
}

fn default_length() -> f64 {
    1.0
}

fn default_threshold() -> f64 {
    DEFAULT_FIRST_ORDER_THRESHOLD
}

impl TryFrom<RawSchemeConfig> for SchemeConfig {
    type Error = Error;

    fn try_from(raw: RawSchemeConfig) -> Result<Self> {
        if raw.c.len() != raw.n {
            return Err(Error::InvalidConfig(format!(
                "`n` is {} but `c` has {} entries",
                raw.n,
                raw.c.len()
            )));
        }
        let n = raw.n;
        let config = SchemeConfig::new(
            raw.c,
            raw.alpha,
            raw.gamma.unwrap_or_else(|| vec![1.0; n]),
            raw.delta.unwrap_or_else(|| vec![0.0; n]),
            raw.length,
        )?;
        config.with_first_order_threshold(raw.first_order_threshold)
    }
}

impl From<SchemeConfig> for RawSchemeConfig {
    fn from(config: SchemeConfig) -> Self {
        RawSchemeConfig {
            n: config.n(),
            c: config.c,
            alpha: config.alpha,
            gamma: Some(config.gamma),
            delta: Some(config.delta),
            length: config.length,
            first_order_threshold: config.first_order_threshold,
        }
    }
}

impl SchemeConfig {
    /// Builds and validates a medium description.
    pub fn new(
        c: Vec<C64>,
        alpha: Vec<f64>,
        gamma: Vec<f64>,
        delta: Vec<f64>,
        length: f64,
    ) -> Result<Self> {
        let n = c.len();
        if n < 2 {
            return Err(Error::InvalidConfig(format!(
                "a scheme needs at least two ground states, got {n}"
            )));
        }
        for (name, len) in [("alpha", alpha.len()), ("gamma", gamma.len()), ("delta", delta.len())] {
            if len != n {
                return Err(Error::InvalidConfig(format!(
                    "`{name}` has {len} entries, expected {n}"
                )));
            }
        }
        if c.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidConfig("non-finite superposition amplitude".into()));
        }
        let norm: f64 = c.iter().map(|v| v.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidConfig(format!(
                "superposition amplitudes are not normalized: Σ|c|² = {norm}"
            )));
        }
        if alpha.iter().any(|&a| !(a >= 0.0) || !a.is_finite()) {
            return Err(Error::InvalidConfig("optical depths must be finite and ≥ 0".into()));
        }
        if gamma.iter().any(|&g| !(g > 0.0) || !g.is_finite()) {
            return Err(Error::InvalidConfig("decay rates must be finite and > 0".into()));
        }
        if delta.iter().any(|d| !d.is_finite()) {
            return Err(Error::InvalidConfig("detunings must be finite".into()));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidConfig(format!("medium length must be > 0, got {length}")));
        }
        Ok(SchemeConfig {
            c,
            alpha,
            gamma,
            delta,
            length,
            first_order_threshold: DEFAULT_FIRST_ORDER_THRESHOLD,
        })
    }

    /// Resonant medium with a common optical depth, γ = 1 and L = 1.
    pub fn resonant(c: Vec<C64>, alpha: f64) -> Result<Self> {
        let n = c.len();
        Self::new(c, vec![alpha; n], vec![1.0; n], vec![0.0; n], 1.0)
    }

    pub fn with_first_order_threshold(mut self, threshold: f64) -> Result<Self> {
        if !(threshold > 0.0) || !threshold.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "first-order threshold must be > 0, got {threshold}"
            )));
        }
        self.first_order_threshold = threshold;
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn c(&self) -> &[C64] {
        &self.c
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn first_order_threshold(&self) -> f64 {
        self.first_order_threshold
    }

    /// True when every transition is resonant and shares one optical depth,
    /// the regime in which the absorption length `L/α` is defined.
    pub fn is_symmetric_resonant(&self) -> bool {
        self.delta.iter().all(|&d| d == 0.0) && self.alpha.iter().all(|&a| a == self.alpha[0])
    }

    pub fn coefficients(&self) -> PropagationCoefficients {
        let beta = compute_beta(self);
        let x = compute_x(self, &beta);
        let absorption = if self.is_symmetric_resonant() && self.alpha[0] > 0.0 {
            AbsorptionScale::Length(self.length / self.alpha[0])
        } else {
            AbsorptionScale::DecayConstant(-2.0 * x.im)
        };
        PropagationCoefficients { beta, x, absorption }
    }
}

/// Either the absorption length (symmetric resonant media) or the intensity
/// decay constant `−2 Im X` of the bright component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AbsorptionScale {
    #[serde(rename = "L_abs")]
    Length(f64),
    #[serde(rename = "intensity_decay_constant")]
    DecayConstant(f64),
}

impl AbsorptionScale {
    /// Length over which the bright-component intensity falls by `1/e`, if it decays at all.
    pub fn effective_length(&self) -> Option<f64> {
        match *self {
            AbsorptionScale::Length(l) => Some(l),
            AbsorptionScale::DecayConstant(k) if k > 0.0 => Some(1.0 / k),
            AbsorptionScale::DecayConstant(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationCoefficients {
    pub beta: Vec<C64>,
    #[serde(rename = "X")]
    pub x: C64,
    pub absorption: AbsorptionScale,
}

/// `β_m = α_m γ_m / (2L(δ_m + iγ_m))`.
///
/// On resonance this is evaluated as `−iα_m/(2L)` directly so symmetric media
/// get exactly equal coefficients.
pub fn compute_beta(config: &SchemeConfig) -> Vec<C64> {
    let two_l = 2.0 * config.length;
    config
        .alpha
        .iter()
        .zip(&config.gamma)
        .zip(&config.delta)
        .map(|((&alpha, &gamma), &delta)| {
            if delta == 0.0 {
                C64::new(0.0, -alpha / two_l)
            } else {
                C64::from(alpha * gamma) / (C64::new(delta, gamma) * two_l)
            }
        })
        .collect()
}

/// Collective eigenvalue `X = Σ_m β_m |c_m|²`.
pub fn compute_x(config: &SchemeConfig, beta: &[C64]) -> C64 {
    beta.iter()
        .zip(&config.c)
        .map(|(b, c)| b * c.norm_sqr())
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FirstOrderDiagnostic {
    pub max_coherence: f64,
    pub threshold: f64,
    pub valid: bool,
}

/// Checks the weak-field assumption `|ρ_{g_m e}| ≪ 1` against the configured threshold.
pub fn validate_first_order(config: &SchemeConfig, coherences: &[C64]) -> FirstOrderDiagnostic {
    let max_coherence = coherences.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let threshold = config.first_order_threshold;
    FirstOrderDiagnostic {
        max_coherence,
        threshold,
        valid: max_coherence < threshold,
    }
}
