//! Analytic Laguerre–Gaussian vortex profiles, their superpositions, and
//! sampling onto square Cartesian grids.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheme::SchemeConfig;

pub const DEFAULT_EXTENT: f64 = 3.0;
pub const DEFAULT_RESOLUTION: usize = 256;
pub const MIN_RESOLUTION: usize = 16;

/// Doughnut beam `ε (r/w)^{|l|} e^{−r²/w²} e^{ilφ}` (radial index zero).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LgBeam {
    pub epsilon: f64,
    #[serde(default = "unit_waist")]
    pub w: f64,
    pub l: i32,
}

fn unit_waist() -> f64 {
    1.0
}

impl LgBeam {
    pub fn new(epsilon: f64, w: f64, l: i32) -> Result<Self> {
        let beam = LgBeam { epsilon, w, l };
        beam.validate()?;
        Ok(beam)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.w > 0.0) || !self.w.is_finite() {
            return Err(Error::InvalidConfig(format!("beam waist must be > 0, got {}", self.w)));
        }
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "beam strength must be ≥ 0, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// Complex amplitude of `beam` at polar position `(r, phi)`.
///
/// The core of a charged beam is exactly `0 + 0i`; the radial power is taken
/// through `exp(|l| ln(r/w))` so large `|l|` neither overflows nor hits `0⁰`.
pub fn lg_amplitude(beam: &LgBeam, r: f64, phi: f64) -> C64 {
    let order = beam.l.unsigned_abs() as f64;
    let modulus = if r == 0.0 {
        if beam.l == 0 {
            beam.epsilon
        } else {
            return C64::new(0.0, 0.0);
        }
    } else {
        let s = r / beam.w;
        beam.epsilon * (order * s.ln() - s * s).exp()
    };
    C64::from_polar(modulus, beam.l as f64 * phi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamTerm {
    #[serde(default = "unit_weight")]
    pub weight: C64,
    #[serde(flatten)]
    pub beam: LgBeam,
}

fn unit_weight() -> C64 {
    C64::new(1.0, 0.0)
}

/// Weighted sum of LG beams sharing one axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<BeamTerm>", into = "Vec<BeamTerm>")]
pub struct BeamSuperposition {
    terms: Vec<BeamTerm>,
}

impl TryFrom<Vec<BeamTerm>> for BeamSuperposition {
    type Error = Error;

    fn try_from(terms: Vec<BeamTerm>) -> Result<Self> {
        BeamSuperposition::new(terms)
    }
}

impl From<BeamSuperposition> for Vec<BeamTerm> {
    fn from(s: BeamSuperposition) -> Self {
        s.terms
    }
}

impl BeamSuperposition {
    pub fn new(terms: Vec<BeamTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidConfig("a beam superposition needs at least one term".into()));
        }
        for t in &terms {
            t.beam.validate()?;
            if !t.weight.re.is_finite() || !t.weight.im.is_finite() {
                return Err(Error::InvalidConfig("non-finite superposition weight".into()));
            }
        }
        Ok(BeamSuperposition { terms })
    }

    pub fn single(beam: LgBeam) -> Self {
        BeamSuperposition { terms: vec![BeamTerm { weight: unit_weight(), beam }] }
    }

    pub fn terms(&self) -> &[BeamTerm] {
        &self.terms
    }
}

pub fn superpose(s: &BeamSuperposition, r: f64, phi: f64) -> C64 {
    s.terms
        .iter()
        .map(|t| t.weight * lg_amplitude(&t.beam, r, phi))
        .sum()
}

/// Evaluates an optional superposition at a Cartesian point; `None` is a dark input.
pub fn superpose_at(s: Option<&BeamSuperposition>, x: f64, y: f64) -> C64 {
    match s {
        Some(s) => superpose(s, x.hypot(y), y.atan2(x)),
        None => C64::new(0.0, 0.0),
    }
}

/// Square grid centred on the beam axis. Sample `i` sits at
/// `−extent + i·(2·extent/resolution)`, so for even resolutions the axis
/// itself is sampled at index `resolution/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransverseGrid {
    pub extent: f64,
    pub resolution: usize,
}

impl Default for TransverseGrid {
    fn default() -> Self {
        TransverseGrid { extent: DEFAULT_EXTENT, resolution: DEFAULT_RESOLUTION }
    }
}

impl TransverseGrid {
    pub fn new(extent: f64, resolution: usize) -> Result<Self> {
        let grid = TransverseGrid { extent, resolution };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < MIN_RESOLUTION {
            return Err(Error::InvalidConfig(format!(
                "grid resolution must be ≥ {MIN_RESOLUTION}, got {}",
                self.resolution
            )));
        }
        if !(self.extent > 0.0) || !self.extent.is_finite() {
            return Err(Error::InvalidConfig(format!("grid extent must be > 0, got {}", self.extent)));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / self.resolution as f64
    }

    pub fn coordinate(&self, index: usize) -> f64 {
        -self.extent + index as f64 * self.spacing()
    }

    pub fn point_count(&self) -> usize {
        self.resolution * self.resolution
    }
}

/// Sampled n-component field: `values[(j·res + i)·n + m]` holds `Ω_m` at
/// `(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    grid: TransverseGrid,
    n: usize,
    values: Vec<C64>,
}

impl FieldGrid {
    pub fn from_values(grid: TransverseGrid, n: usize, values: Vec<C64>) -> Result<Self> {
        grid.validate()?;
        let expected = grid.point_count() * n;
        if values.len() != expected {
            return Err(Error::ShapeMismatch { expected, found: values.len() });
        }
        Ok(FieldGrid { grid, n, values })
    }

    /// Fills the grid by evaluating `f(x, y)` at every point, in parallel over rows.
    pub fn from_fn<F>(grid: TransverseGrid, n: usize, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Vec<C64> + Sync,
    {
        grid.validate()?;
        let res = grid.resolution;
        let rows: Vec<Vec<C64>> = (0..res)
            .into_par_iter()
            .map(|j| {
                let y = grid.coordinate(j);
                let mut row = Vec::with_capacity(res * n);
                for i in 0..res {
                    let point = f(grid.coordinate(i), y);
                    assert_eq!(point.len(), n, "point evaluator returned the wrong component count");
                    row.extend(point);
                }
                row
            })
            .collect();
        Ok(FieldGrid { grid, n, values: rows.concat() })
    }

    /// Applies `f` to every point's field vector, preserving the component count.
    pub fn map_points<F>(&self, f: F) -> FieldGrid
    where
        F: Fn(&[C64]) -> Vec<C64> + Sync,
    {
        let values: Vec<C64> = self
            .values
            .par_chunks(self.n)
            .flat_map_iter(|point| {
                let out = f(point);
                assert_eq!(out.len(), self.n, "point map changed the component count");
                out
            })
            .collect();
        FieldGrid { grid: self.grid, n: self.n, values }
    }

    pub fn grid(&self) -> &TransverseGrid {
        &self.grid
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize, field: usize) -> C64 {
        self.values[(j * self.grid.resolution + i) * self.n + field]
    }

    pub fn point(&self, i: usize, j: usize) -> &[C64] {
        let start = (j * self.grid.resolution + i) * self.n;
        &self.values[start..start + self.n]
    }

    /// One field component as a row-major `res × res` array.
    pub fn component(&self, field: usize) -> Vec<C64> {
        self.values.iter().skip(field).step_by(self.n).copied().collect()
    }

    pub fn max_intensity(&self, field: usize) -> f64 {
        self.values
            .iter()
            .skip(field)
            .step_by(self.n)
            .map(|v| v.norm_sqr())
            .fold(0.0, f64::max)
    }

    /// `Σ |Ω_m|² h²` over the grid, a Riemann estimate of the transverse power.
    pub fn power(&self, field: usize) -> f64 {
        let h = self.grid.spacing();
        self.values.iter().skip(field).step_by(self.n).map(|v| v.norm_sqr()).sum::<f64>() * h * h
    }

    /// Writes `x,y,field_index,re,im` rows (field index starting at 1), floats with
    /// 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y,field_index,re,im")?;
        let res = self.grid.resolution;
        for j in 0..res {
            let y = self.grid.coordinate(j);
            for i in 0..res {
                let x = self.grid.coordinate(i);
                for (m, v) in self.point(i, j).iter().enumerate() {
                    writeln!(out, "{x:.16e},{y:.16e},{},{:.16e},{:.16e}", m + 1, v.re, v.im)?;
                }
            }
        }
        Ok(())
    }

    /// Grid metadata accompanying the CSV export.
    pub fn sidecar(&self, z: f64, config: &SchemeConfig) -> serde_json::Value {
        serde_json::json!({
            "extent": self.grid.extent,
            "resolution": self.grid.resolution,
            "spacing": self.grid.spacing(),
            "coordinate_rule": "x_i = -extent + i * spacing, i = 0..resolution-1",
            "length_unit": "w",
            "n": self.n,
            "field_index_base": 1,
            "z": z,
            "config": config,
        })
    }
}

/// Samples the entrance amplitudes `Ω_m(0)` of every field on `grid`.
/// `inputs[m] == None` leaves field `m` dark.
pub fn sample_grid(
    config: &SchemeConfig,
    inputs: &[Option<BeamSuperposition>],
    grid: &TransverseGrid,
) -> Result<FieldGrid> {
    if inputs.len() != config.n() {
        return Err(Error::ShapeMismatch { expected: config.n(), found: inputs.len() });
    }
    FieldGrid::from_fn(*grid, config.n(), |x, y| {
        inputs.iter().map(|s| superpose_at(s.as_ref(), x, y)).collect()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffractionCheck {
    /// `Lλ/w²`
    pub value: f64,
    pub negligible: bool,
}

/// Transverse diffraction over a medium of length `length` is negligible when
/// `Lλ/w² < π`. All three inputs share one length unit.
pub fn diffraction_criterion(length: f64, wavelength: f64, width: f64) -> Result<DiffractionCheck> {
    for (name, v) in [("length", length), ("wavelength", wavelength), ("width", width)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidConfig(format!("{name} must be > 0, got {v}")));
        }
    }
    let value = length * wavelength / (width * width);
    Ok(DiffractionCheck { value, negligible: value < PI })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn beam(l: i32) -> LgBeam {
        LgBeam::new(1.0, 1.0, l).unwrap()
    }

    #[test]
    fn lg_amplitude_examples() {
        assert_eq!(lg_amplitude(&beam(0), 0.0, 0.3), C64::new(1.0, 0.0));
        for l in [-4, -1, 1, 3] {
            assert_eq!(lg_amplitude(&beam(l), 0.0, 1.1), C64::new(0.0, 0.0));
        }
        let v = lg_amplitude(&beam(2), 1.0, PI / 2.0);
        assert_abs_diff_eq!(v.re, -0.36787944117144233, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn high_order_profiles_stay_finite() {
        let b = LgBeam::new(1.0, 1.0, 200).unwrap();
        for r in [1e-300, 1e-8, 0.5, 10.0, 1e3] {
            let v = lg_amplitude(&b, r, 0.0);
            assert!(v.re.is_finite() && v.im.is_finite());
        }
    }

    #[test]
    fn superpose_examples() {
        let pair = BeamSuperposition::new(vec![
            BeamTerm { weight: C64::new(1.0, 0.0), beam: beam(1) },
            BeamTerm { weight: C64::new(1.0, 0.0), beam: beam(-1) },
        ])
        .unwrap();
        for k in 0..16 {
            let phi = k as f64 * 0.4;
            let v = superpose(&pair, 1.0, phi);
            assert_abs_diff_eq!(v.re, 2.0 * phi.cos() * (-1.0f64).exp(), epsilon = 1e-15);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
        }

        let single = BeamSuperposition::single(beam(3));
        assert_eq!(superpose(&single, 0.7, 0.2), lg_amplitude(&beam(3), 0.7, 0.2));

        let cancel = BeamSuperposition::new(vec![
            BeamTerm { weight: C64::new(1.0, 0.0), beam: beam(2) },
            BeamTerm { weight: C64::new(-1.0, 0.0), beam: beam(2) },
        ])
        .unwrap();
        assert_eq!(superpose(&cancel, 0.9, 1.3).norm(), 0.0);
        assert!(BeamSuperposition::new(vec![]).is_err());
    }

    fn lambda_config() -> SchemeConfig {
        let h = 0.5f64.sqrt();
        SchemeConfig::resonant(vec![C64::new(h, 0.0), C64::new(h, 0.0)], 20.0).unwrap()
    }

    #[test]
    fn sample_grid_examples() {
        let cfg = lambda_config();
        let grid = TransverseGrid::new(3.0, 64).unwrap();
        let fields = sample_grid(&cfg, &[Some(BeamSuperposition::single(beam(1))), None], &grid).unwrap();
        assert!(fields.component(1).iter().all(|v| v.norm() == 0.0));
        assert_eq!(grid.coordinate(32), 0.0);
        assert_eq!(fields.value(32, 32, 0), C64::new(0.0, 0.0));

        assert!(matches!(
            sample_grid(&cfg, &[None], &grid),
            Err(Error::ShapeMismatch { expected: 2, found: 1 })
        ));
        assert!(TransverseGrid::new(3.0, 8).is_err());
        assert!(TransverseGrid::new(0.0, 64).is_err());
    }

    /// Composite Simpson rule on `[0, upper]`.
    fn simpson<F: Fn(f64) -> f64>(f: F, upper: f64, intervals: usize) -> f64 {
        let h = upper / intervals as f64;
        let mut acc = f(0.0) + f(upper);
        for k in 1..intervals {
            acc += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    }

    #[test]
    fn grid_power_matches_radial_quadrature() {
        // ∫|Ω|² dA = 2π ∫ r^{2|l|+1} e^{−2r²} dr, evaluated independently in 1-D.
        for l in [0, 1, 3] {
            let oracle = 2.0 * PI * simpson(|r| r.powi(2 * l + 1) * (-2.0 * r * r).exp(), 8.0, 20_000);
            let grid = TransverseGrid::new(4.0, 256).unwrap();
            let fields =
                sample_grid(&lambda_config(), &[Some(BeamSuperposition::single(beam(l))), None], &grid).unwrap();
            assert_abs_diff_eq!(fields.power(0), oracle, epsilon = 1e-9);
        }
        // l = 1 closed form π/4
        let oracle = 2.0 * PI * simpson(|r| r.powi(3) * (-2.0 * r * r).exp(), 8.0, 20_000);
        assert_abs_diff_eq!(oracle, PI / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn csv_rows_use_seventeen_digits() {
        let cfg = lambda_config();
        let grid = TransverseGrid::new(1.0, 16).unwrap();
        let fields = sample_grid(&cfg, &[Some(BeamSuperposition::single(beam(0))), None], &grid).unwrap();
        let mut buf = Vec::new();
        fields.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,y,field_index,re,im"));
        let first = lines.next().unwrap();
        assert_eq!(first.split(',').nth(0), Some("-1.0000000000000000e0"));
        assert_eq!(text.lines().count(), 1 + 16 * 16 * 2);
        let meta = fields.sidecar(0.5, &cfg);
        assert_eq!(meta["resolution"], 16);
        assert_eq!(meta["z"], 0.5);
    }

    #[test]
    fn diffraction_examples() {
        let d = diffraction_criterion(100.0, 1.0, 20.0).unwrap();
        assert_abs_diff_eq!(d.value, 0.25, epsilon = 1e-15);
        assert!(d.negligible);
        let d4 = diffraction_criterion(400.0, 1.0, 20.0).unwrap();
        assert_abs_diff_eq!(d4.value, 1.0, epsilon = 1e-15);
        assert!(d4.negligible);
        let boundary = diffraction_criterion(PI, 1.0, 1.0).unwrap();
        assert_eq!(boundary.value, PI);
        assert!(!boundary.negligible);
        assert!(diffraction_criterion(-1.0, 1.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn opposite_charges_share_modulus(l in -12i32..=12, r in 0.0f64..4.0, phi in -PI..PI) {
            let a = lg_amplitude(&beam(l), r, phi).norm();
            let b = lg_amplitude(&beam(-l), r, phi).norm();
            prop_assert!((a - b).abs() <= 1e-15 * a.max(1.0));
        }

        #[test]
        fn superpose_is_linear(
            a in (-2.0f64..2.0, -2.0f64..2.0),
            b in (-2.0f64..2.0, -2.0f64..2.0),
            l1 in -5i32..=5, l2 in -5i32..=5,
            r in 0.0f64..3.0, phi in -PI..PI,
        ) {
            let (a, b) = (C64::new(a.0, a.1), C64::new(b.0, b.1));
            let s1 = BeamSuperposition::single(beam(l1));
            let s2 = BeamSuperposition::new(vec![
                BeamTerm { weight: C64::new(0.5, -0.2), beam: beam(l2) },
                BeamTerm { weight: C64::new(1.0, 0.0), beam: LgBeam::new(2.0, 1.5, l1 - l2).unwrap() },
            ]).unwrap();
            let mut combined: Vec<BeamTerm> = s1.terms().iter().map(|t| BeamTerm { weight: a * t.weight, ..*t }).collect();
            combined.extend(s2.terms().iter().map(|t| BeamTerm { weight: b * t.weight, ..*t }));
            let lhs = superpose(&BeamSuperposition::new(combined).unwrap(), r, phi);
            let rhs = a * superpose(&s1, r, phi) + b * superpose(&s2, r, phi);
            prop_assert!((lhs - rhs).norm() <= 1e-12);
        }
    }
}
