//! Phase-singularity and intensity-structure analysis of sampled fields.
//!
//! Windings are accumulated from integer branch jumps: every grid edge
//! `a → b` contributes the integer `k` for which `θ_b − θ_a + 2πk` lies in
//! `(−π, π]`. A loop's winding is the sum of its edge integers, so plaquette
//! charges add up to the boundary winding exactly (discrete Stokes).

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::beam::FieldGrid;
use crate::error::{Error, Result};

/// Samples at or below this modulus have no usable phase on a winding loop.
pub const LOOP_MODULUS_FLOOR: f64 = 1e-300;
/// Grid points with `|Ω|² < INTENSITY_FLOOR × max|Ω|²` are treated as unresolved.
pub const INTENSITY_FLOOR: f64 = 1e-12;
pub const MIN_DETECTION_RESOLUTION: usize = 64;
/// Active plaquettes within this Chebyshev distance (in plaquettes) share a cluster.
pub const CLUSTER_LINK: i64 = 3;
pub const PETAL_RING_SAMPLES: usize = 512;
/// Rings whose smoothed relative contrast is below this count as uniform.
pub const PETAL_UNIFORM_CONTRAST: f64 = 1e-3;
/// Minimum peak prominence, as a fraction of the ring's intensity range.
pub const PETAL_MIN_PROMINENCE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vortex {
    pub x: f64,
    pub y: f64,
    pub charge: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VortexReport {
    pub vortices: Vec<Vortex>,
    pub total_winding: i32,
    pub petal_count: Option<usize>,
    pub ring_radius: Option<f64>,
}

impl VortexReport {
    pub fn charge_sum(&self) -> i32 {
        self.vortices.iter().map(|v| v.charge).sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The vortex nearest the beam axis, if any.
    pub fn central(&self) -> Option<&Vortex> {
        self.vortices
            .iter()
            .min_by(|a, b| a.x.hypot(a.y).total_cmp(&b.x.hypot(b.y)))
    }
}

fn phase(v: C64) -> f64 {
    if v.re == 0.0 && v.im == 0.0 {
        0.0
    } else {
        v.im.atan2(v.re)
    }
}

/// Integer `k` with `to − from + 2πk ∈ (−π, π]`.
fn branch(from: f64, to: f64) -> i32 {
    let d = to - from;
    if d > PI {
        -1
    } else if d <= -PI {
        1
    } else {
        0
    }
}

/// Winding number of a closed loop of samples (the last joins the first).
pub fn loop_winding(samples: &[C64]) -> Result<i32> {
    if let Some(index) = samples.iter().position(|v| v.norm() <= LOOP_MODULUS_FLOOR) {
        return Err(Error::ZeroModulusOnLoop { index });
    }
    let phases: Vec<f64> = samples.iter().map(|&v| phase(v)).collect();
    Ok(phases
        .iter()
        .zip(phases.iter().cycle().skip(1))
        .map(|(&a, &b)| branch(a, b))
        .sum())
}

fn check_field(grid: &FieldGrid, field_index: usize) -> Result<()> {
    if field_index >= grid.n() {
        return Err(Error::ShapeMismatch { expected: grid.n(), found: field_index + 1 });
    }
    Ok(())
}

/// Per-plaquette charges and the boundary winding of one field component.
struct ChargeMap {
    res: usize,
    /// `(res−1)²` plaquette charges, row-major, plaquette `(i, j)` spans `x_i..x_{i+1}`.
    charge: Vec<i32>,
    /// Plaquettes whose four corners all fall below the intensity floor.
    unresolved: Vec<bool>,
    boundary: i32,
}

impl ChargeMap {
    fn new(grid: &FieldGrid, field_index: usize) -> Self {
        let res = grid.grid().resolution;
        let values = grid.component(field_index);
        let theta: Vec<f64> = values.iter().map(|&v| phase(v)).collect();
        let floor = INTENSITY_FLOOR * grid.max_intensity(field_index);
        let dead: Vec<bool> = values.iter().map(|v| v.norm_sqr() < floor).collect();
        let at = |i: usize, j: usize| j * res + i;
        // horizontal[j·(res−1) + i]: (i, j) → (i+1, j); vertical[j·res + i]: (i, j) → (i, j+1)
        let mut horizontal = vec![0i32; res * (res - 1)];
        let mut vertical = vec![0i32; (res - 1) * res];
        for j in 0..res {
            for i in 0..res - 1 {
                horizontal[j * (res - 1) + i] = branch(theta[at(i, j)], theta[at(i + 1, j)]);
            }
        }
        for j in 0..res - 1 {
            for i in 0..res {
                vertical[j * res + i] = branch(theta[at(i, j)], theta[at(i, j + 1)]);
            }
        }
        let h = |i: usize, j: usize| horizontal[j * (res - 1) + i];
        let v = |i: usize, j: usize| vertical[j * res + i];

        let cells = res - 1;
        let mut charge = vec![0i32; cells * cells];
        let mut unresolved = vec![false; cells * cells];
        for j in 0..cells {
            for i in 0..cells {
                charge[j * cells + i] = h(i, j) + v(i + 1, j) - h(i, j + 1) - v(i, j);
                unresolved[j * cells + i] =
                    dead[at(i, j)] && dead[at(i + 1, j)] && dead[at(i, j + 1)] && dead[at(i + 1, j + 1)];
            }
        }
        let last = res - 1;
        let boundary = (0..cells).map(|i| h(i, 0)).sum::<i32>()
            + (0..cells).map(|j| v(last, j)).sum::<i32>()
            - (0..cells).map(|i| h(i, last)).sum::<i32>()
            - (0..cells).map(|j| v(0, j)).sum::<i32>();
        ChargeMap { res, charge, unresolved, boundary }
    }
}

/// Locates phase singularities of one field component.
///
/// Plaquettes carrying charge are grouped into vortices (summed charge,
/// centroid weighted by `|charge|`) when they lie within [`CLUSTER_LINK`]
/// plaquettes of each other. A charge-`l` core changes phase by about `π`
/// per edge out to `|l|/π` spacings, which scatters its winding over nearby
/// plaquettes; the link distance collects it again. Unresolved plaquettes,
/// where all corners sit below the intensity floor, also join the clusters
/// they touch. Clusters with zero net charge are dropped.
pub fn detect_vortices(grid: &FieldGrid, field_index: usize) -> Result<VortexReport> {
    check_field(grid, field_index)?;
    let res = grid.grid().resolution;
    if res < MIN_DETECTION_RESOLUTION {
        return Err(Error::InvalidConfig(format!(
            "vortex detection needs resolution ≥ {MIN_DETECTION_RESOLUTION}, got {res}"
        )));
    }
    let map = ChargeMap::new(grid, field_index);
    let cells = map.res - 1;
    let active = |k: usize| map.charge[k] != 0 || map.unresolved[k];
    let spacing = grid.grid().spacing();
    let centre = |index: usize| grid.grid().coordinate(index) + 0.5 * spacing;

    let mut visited = vec![false; cells * cells];
    let mut vortices = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..cells * cells {
        if visited[start] || !active(start) {
            continue;
        }
        visited[start] = true;
        queue.push_back(start);
        let (mut total, mut weight, mut sx, mut sy) = (0i32, 0.0, 0.0, 0.0);
        while let Some(k) = queue.pop_front() {
            let (i, j) = (k % cells, k / cells);
            let q = map.charge[k];
            if q != 0 {
                let w = q.unsigned_abs() as f64;
                total += q;
                weight += w;
                sx += w * centre(i);
                sy += w * centre(j);
            }
            for dj in -CLUSTER_LINK..=CLUSTER_LINK {
                for di in -CLUSTER_LINK..=CLUSTER_LINK {
                    let (ni, nj) = (i as i64 + di, j as i64 + dj);
                    if ni < 0 || nj < 0 || ni >= cells as i64 || nj >= cells as i64 {
                        continue;
                    }
                    let nk = nj as usize * cells + ni as usize;
                    if !visited[nk] && active(nk) {
                        visited[nk] = true;
                        queue.push_back(nk);
                    }
                }
            }
        }
        if total != 0 {
            vortices.push(Vortex { x: sx / weight, y: sy / weight, charge: total });
        }
    }
    Ok(VortexReport { vortices, total_winding: map.boundary, petal_count: None, ring_radius: None })
}

/// Bilinear interpolation of `|Ω|²` at `(x, y)`, which must lie inside the grid.
fn intensity_at(grid: &FieldGrid, field_index: usize, x: f64, y: f64) -> f64 {
    let g = grid.grid();
    let h = g.spacing();
    let fx = (x + g.extent) / h;
    let fy = (y + g.extent) / h;
    let i = (fx.floor() as usize).min(g.resolution - 2);
    let j = (fy.floor() as usize).min(g.resolution - 2);
    let (tx, ty) = (fx - i as f64, fy - j as f64);
    let sample = |i: usize, j: usize| grid.value(i, j, field_index).norm_sqr();
    (1.0 - tx) * (1.0 - ty) * sample(i, j)
        + tx * (1.0 - ty) * sample(i + 1, j)
        + (1.0 - tx) * ty * sample(i, j + 1)
        + tx * ty * sample(i + 1, j + 1)
}

/// Number of intensity maxima around the ring `r = ring_radius`.
///
/// The ring is sampled at 512 angles and smoothed with a cyclic 3-point
/// moving average. A maximum must exceed both neighbours strictly and stand
/// at least 10 % of the ring's intensity range above the higher of its two
/// flanking minima. Rings whose contrast is below `1e-3` (azimuthally
/// uniform up to interpolation error) have no petals.
pub fn count_petals(grid: &FieldGrid, field_index: usize, ring_radius: f64) -> Result<usize> {
    check_field(grid, field_index)?;
    let g = grid.grid();
    if !(ring_radius > 0.0) || ring_radius > g.extent - g.spacing() {
        return Err(Error::InvalidConfig(format!(
            "petal ring radius {ring_radius} must lie in (0, {}]",
            g.extent - g.spacing()
        )));
    }
    let raw: Vec<f64> = (0..PETAL_RING_SAMPLES)
        .map(|k| {
            let phi = TAU * k as f64 / PETAL_RING_SAMPLES as f64;
            intensity_at(grid, field_index, ring_radius * phi.cos(), ring_radius * phi.sin())
        })
        .collect();
    Ok(count_ring_maxima(&raw)?)
}

fn count_ring_maxima(raw: &[f64]) -> Result<usize> {
    let n = raw.len();
    if raw.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroIntensityRing);
    }
    let s: Vec<f64> = (0..n)
        .map(|k| (raw[(k + n - 1) % n] + raw[k] + raw[(k + 1) % n]) / 3.0)
        .collect();
    let hi = s.iter().copied().fold(f64::MIN, f64::max);
    let lo = s.iter().copied().fold(f64::MAX, f64::min);
    let range = hi - lo;
    if range <= PETAL_UNIFORM_CONTRAST * hi {
        return Ok(0);
    }
    let count = (0..n)
        .filter(|&k| s[k] > s[(k + n - 1) % n] && s[k] > s[(k + 1) % n])
        .filter(|&k| prominence(&s, k, lo) >= PETAL_MIN_PROMINENCE * range)
        .count();
    Ok(count)
}

/// Height of the peak at `k` above the higher of the minima separating it
/// from strictly taller samples on either side (cyclic).
fn prominence(s: &[f64], k: usize, global_min: f64) -> f64 {
    let n = s.len();
    let walk = |dir: isize| -> Option<f64> {
        let mut low = s[k];
        for step in 1..n {
            let idx = (k as isize + dir * step as isize).rem_euclid(n as isize) as usize;
            if s[idx] > s[k] {
                return Some(low);
            }
            low = low.min(s[idx]);
        }
        None
    };
    match (walk(-1), walk(1)) {
        (Some(a), Some(b)) => s[k] - a.max(b),
        (Some(a), None) | (None, Some(a)) => s[k] - a,
        (None, None) => s[k] - global_min,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialBin {
    /// Mean radius of the samples in the bin.
    pub r: f64,
    pub mean_intensity: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub bins: Vec<RadialBin>,
    pub peak_radius: f64,
}

/// Azimuthally averaged `|Ω|²` in bins one grid spacing wide, out to the grid extent.
pub fn radial_profile(grid: &FieldGrid, field_index: usize) -> Result<RadialProfile> {
    check_field(grid, field_index)?;
    let g = grid.grid();
    let h = g.spacing();
    let nbins = (g.extent / h).floor() as usize;
    let mut sum_r = vec![0.0; nbins];
    let mut sum_i = vec![0.0; nbins];
    let mut count = vec![0usize; nbins];
    for j in 0..g.resolution {
        for i in 0..g.resolution {
            let r = g.coordinate(i).hypot(g.coordinate(j));
            let bin = (r / h).floor() as usize;
            if bin < nbins {
                sum_r[bin] += r;
                sum_i[bin] += grid.value(i, j, field_index).norm_sqr();
                count[bin] += 1;
            }
        }
    }
    let bins: Vec<RadialBin> = (0..nbins)
        .filter(|&b| count[b] > 0)
        .map(|b| RadialBin {
            r: sum_r[b] / count[b] as f64,
            mean_intensity: sum_i[b] / count[b] as f64,
            samples: count[b],
        })
        .collect();
    let peak_radius = bins
        .iter()
        .max_by(|a, b| a.mean_intensity.total_cmp(&b.mean_intensity))
        .map_or(0.0, |b| b.r);
    Ok(RadialProfile { bins, peak_radius })
}

/// Vortices plus petals counted on the ring of peak mean intensity.
pub fn analyze(grid: &FieldGrid, field_index: usize) -> Result<VortexReport> {
    let mut report = detect_vortices(grid, field_index)?;
    let ring = radial_profile(grid, field_index)?.peak_radius;
    let g = grid.grid();
    if ring > 0.0 && ring <= g.extent - g.spacing() {
        match count_petals(grid, field_index, ring) {
            Ok(petals) => {
                report.petal_count = Some(petals);
                report.ring_radius = Some(ring);
            }
            Err(Error::ZeroIntensityRing) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam::{lg_amplitude, sample_grid, BeamSuperposition, BeamTerm, LgBeam, TransverseGrid};
    use crate::scheme::SchemeConfig;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn beam(l: i32) -> LgBeam {
        LgBeam::new(1.0, 1.0, l).unwrap()
    }

    fn config() -> SchemeConfig {
        let h = 0.5f64.sqrt();
        SchemeConfig::resonant(vec![C64::new(h, 0.0), C64::new(h, 0.0)], 20.0).unwrap()
    }

    fn grid_of(s: BeamSuperposition, resolution: usize) -> FieldGrid {
        sample_grid(&config(), &[Some(s), None], &TransverseGrid::new(3.0, resolution).unwrap()).unwrap()
    }

    fn circle(l: i32, r: f64, samples: usize) -> Vec<C64> {
        (0..samples)
            .map(|k| lg_amplitude(&beam(l), r, TAU * k as f64 / samples as f64))
            .collect()
    }

    #[test]
    fn loop_winding_examples() {
        assert_eq!(loop_winding(&circle(3, 1.0, 64)).unwrap(), 3);
        assert_eq!(loop_winding(&circle(-2, 0.5, 64)).unwrap(), -2);
        assert_eq!(loop_winding(&[C64::new(0.3, -0.1); 10]).unwrap(), 0);
        let mut broken = circle(1, 1.0, 16);
        broken[5] = C64::new(0.0, 0.0);
        assert!(matches!(loop_winding(&broken), Err(Error::ZeroModulusOnLoop { index: 5 })));
    }

    #[test]
    fn composite_winding_depends_on_loop_radius() {
        // Asymptotic Λ output for l₁ = 1, l₂ = −3, equal strengths, c₁ = c₂ = 1/√2:
        // ½(r e^{iφ} − r³ e^{−3iφ}) e^{−r²}.
        let field = |r: f64, phi: f64| {
            0.5 * (lg_amplitude(&beam(1), r, phi) - lg_amplitude(&beam(-3), r, phi))
        };
        let ring = |r: f64| -> Vec<C64> {
            (0..720).map(|k| field(r, TAU * k as f64 / 720.0)).collect()
        };
        assert_eq!(loop_winding(&ring(3.0)).unwrap(), -3);
        assert_eq!(loop_winding(&ring(0.1)).unwrap(), 1);
    }

    #[test]
    fn single_vortex_detected_at_origin() {
        let report = detect_vortices(&grid_of(BeamSuperposition::single(beam(1)), 256), 0).unwrap();
        assert_eq!(report.vortices.len(), 1);
        let v = report.vortices[0];
        assert_eq!(v.charge, 1);
        assert!(v.x.hypot(v.y) < 0.03, "{v:?}");
        assert_eq!(report.total_winding, 1);
    }

    #[test]
    fn every_charge_up_to_eight_is_one_cluster() {
        for l in -8..=8 {
            let report = detect_vortices(&grid_of(BeamSuperposition::single(beam(l)), 256), 0).unwrap();
            assert_eq!(report.total_winding, l);
            if l == 0 {
                assert!(report.vortices.is_empty());
            } else {
                assert_eq!(report.vortices.len(), 1, "l = {l}: {report:?}");
                assert_eq!(report.vortices[0].charge, l);
                let v = report.vortices[0];
                assert!(v.x.hypot(v.y) < 0.1, "l = {l}: {v:?}");
            }
        }
    }

    #[test]
    fn detection_preconditions() {
        let small = grid_of(BeamSuperposition::single(beam(1)), 32);
        assert!(detect_vortices(&small, 0).is_err());
        let g = grid_of(BeamSuperposition::single(beam(1)), 64);
        assert!(matches!(detect_vortices(&g, 2), Err(Error::ShapeMismatch { .. })));
        // The dark second field: nothing to report.
        let dark = detect_vortices(&g, 1).unwrap();
        assert!(dark.vortices.is_empty());
        assert_eq!(dark.total_winding, 0);
    }

    fn pair(l1: i32, w1: C64, l2: i32, w2: C64) -> BeamSuperposition {
        BeamSuperposition::new(vec![
            BeamTerm { weight: w1, beam: beam(l1) },
            BeamTerm { weight: w2, beam: beam(l2) },
        ])
        .unwrap()
    }

    #[test]
    fn peripheral_vortices_of_a_composite() {
        let one = C64::new(0.5, 0.0);
        let report = detect_vortices(&grid_of(pair(1, one, -3, -one), 256), 0).unwrap();
        assert_eq!(report.total_winding, -3);
        assert_eq!(report.charge_sum(), -3);
        let central = report.central().unwrap();
        assert_eq!(central.charge, 1);
        let peripheral: Vec<_> = report.vortices.iter().filter(|v| v.x.hypot(v.y) > 0.5).collect();
        assert_eq!(peripheral.len(), 4);
        for want in [0.0, PI / 2.0, PI, 1.5 * PI] {
            let hit = peripheral.iter().any(|v| {
                let d = (v.y.atan2(v.x) - want).rem_euclid(TAU);
                d.min(TAU - d) < 0.05
            });
            assert!(hit, "no vortex near φ = {want}: {peripheral:?}");
        }
        for v in peripheral {
            assert_eq!(v.charge, -1);
            assert!((v.x.hypot(v.y) - 1.0).abs() < 0.05);
        }
    }

    #[test]
    fn petal_counts() {
        let one = C64::new(1.0, 0.0);
        for l in 1..=4 {
            let g = grid_of(pair(l, one, -l, one), 256);
            let ring = (l as f64 / 2.0).sqrt();
            assert_eq!(count_petals(&g, 0, ring).unwrap(), 2 * l as usize, "l = {l}");
        }
        for l in [1, 3, 6] {
            let g = grid_of(BeamSuperposition::single(beam(l)), 256);
            assert_eq!(count_petals(&g, 0, (l as f64 / 2.0).sqrt()).unwrap(), 0, "l = {l}");
        }
        let g = grid_of(pair(2, one, -2, one), 256);
        assert!(count_petals(&g, 0, 2.99).is_err());
        assert!(matches!(count_petals(&g, 1, 1.0), Err(Error::ZeroIntensityRing)));
    }

    #[test]
    fn ring_maxima_rules() {
        assert_eq!(count_ring_maxima(&[2.0; 64]).unwrap(), 0);
        let bumps: Vec<f64> = (0..512).map(|k| (3.0 * TAU * k as f64 / 512.0).cos() + 2.0).collect();
        assert_eq!(count_ring_maxima(&bumps).unwrap(), 3);
        // Ripples below 10 % of the range are not petals.
        let rippled: Vec<f64> = (0..512)
            .map(|k| {
                let t = TAU * k as f64 / 512.0;
                (2.0 * t).cos() + 2.0 + 0.01 * (40.0 * t).cos()
            })
            .collect();
        assert_eq!(count_ring_maxima(&rippled).unwrap(), 2);
        assert!(matches!(count_ring_maxima(&[0.0; 8]), Err(Error::ZeroIntensityRing)));
    }

    #[test]
    fn radial_peaks_follow_charge() {
        let h = 6.0 / 256.0;
        let mut previous = 0.0;
        for l in [0, 1, 2, 5, 8] {
            let profile = radial_profile(&grid_of(BeamSuperposition::single(beam(l)), 256), 0).unwrap();
            let expected = (l as f64 / 2.0).sqrt();
            assert!((profile.peak_radius - expected).abs() <= 1.5 * h, "l = {l}: {}", profile.peak_radius);
            if l == 0 {
                assert_eq!(profile.peak_radius, 0.0);
            } else {
                assert!(profile.peak_radius > previous);
            }
            previous = profile.peak_radius;
        }
    }

    #[test]
    fn analyze_fills_petals() {
        let one = C64::new(1.0, 0.0);
        let report = analyze(&grid_of(pair(3, one, -3, one), 256), 0).unwrap();
        assert_eq!(report.petal_count, Some(6));
        assert_abs_diff_eq!(report.ring_radius.unwrap(), 1.5f64.sqrt(), epsilon = 0.05);
        let json = serde_json::to_value(&report).unwrap();
        for key in ["vortices", "total_winding", "petal_count", "ring_radius"] {
            assert!(json.get(key).is_some());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn boundary_winding_equals_cluster_charges(
            l1 in -6i32..=6, l2 in -6i32..=6,
            re in -1.0f64..1.0, im in -1.0f64..1.0, eps in 0.2f64..2.0,
        ) {
            let s = pair(l1, C64::new(1.0, 0.0), l2, C64::new(re, im) * eps);
            let report = detect_vortices(&grid_of(s, 64), 0).unwrap();
            prop_assert_eq!(report.total_winding, report.charge_sum());
        }

        #[test]
        fn winding_ignores_global_constants(l in -8i32..=8, mag in 0.01f64..100.0, arg in -PI..PI) {
            let base = grid_of(BeamSuperposition::single(beam(l)), 64);
            let k = C64::from_polar(mag, arg);
            let scaled = FieldGrid::from_values(*base.grid(), 2, base.values().iter().map(|v| v * k).collect()).unwrap();
            let a = detect_vortices(&base, 0).unwrap();
            let b = detect_vortices(&scaled, 0).unwrap();
            prop_assert_eq!(a.total_winding, b.total_winding);
            prop_assert_eq!(a.vortices.iter().map(|v| v.charge).collect::<Vec<_>>(),
                            b.vortices.iter().map(|v| v.charge).collect::<Vec<_>>());
        }

        #[test]
        fn petals_ignore_global_constants(l in 1i32..=4, mag in 0.01f64..100.0, arg in -PI..PI) {
            let one = C64::new(1.0, 0.0);
            let base = grid_of(pair(l, one, -l, one), 128);
            let k = C64::from_polar(mag, arg);
            let scaled = FieldGrid::from_values(*base.grid(), 2, base.values().iter().map(|v| v * k).collect()).unwrap();
            let ring = (l as f64 / 2.0).sqrt();
            prop_assert_eq!(count_petals(&base, 0, ring).unwrap(), count_petals(&scaled, 0, ring).unwrap());
        }
    }
}
