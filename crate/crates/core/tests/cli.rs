use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use vortex_core::VortexReport;

fn vortex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vortex"))
        .args(args)
        .env("VORTEX_THREADS", "2")
        .output()
        .expect("spawn vortex")
}

fn scenario(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name).display().to_string()
}

fn final_intensities(csv: &str, n: usize) -> Vec<f64> {
    let lines: Vec<&str> = csv.lines().collect();
    lines[lines.len() - n..]
        .iter()
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect()
}

fn out_dir(tmp: &tempfile::TempDir, name: &str) -> PathBuf {
    tmp.path().join(name)
}

#[test]
fn run_fig2_ends_on_the_asymptote() {
    let tmp = tempfile::tempdir().unwrap();
    let out = out_dir(&tmp, "fig2");
    let result = vortex(&["run", &scenario("fig2.json"), "--out", out.to_str().unwrap(), "--strict"]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let csv = fs::read_to_string(out.join("zscan.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("z_over_Labs,field_index,intensity_normalized"));
    for v in final_intensities(&csv, 2) {
        assert!((v - 0.25).abs() <= 1e-6, "{v}");
    }
}

#[test]
fn run_fig4_ends_on_the_asymptote() {
    let tmp = tempfile::tempdir().unwrap();
    let out = out_dir(&tmp, "fig4");
    let result = vortex(&["run", &scenario("fig4.json"), "--out", out.to_str().unwrap()]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let got = final_intensities(&fs::read_to_string(out.join("zscan.csv")).unwrap(), 3);
    for (v, want) in got.iter().zip([0.25, 0.1666667, 0.0833333]) {
        assert!((v - want).abs() <= 1e-6, "{v} vs {want}");
    }
    // Both generated fields carry the entrance charge.
    for m in [2, 3] {
        let text = fs::read_to_string(out.join(format!("vortices_z0_field{m}.json"))).unwrap();
        let report: VortexReport = serde_json::from_str(&text).unwrap();
        assert_eq!(report.total_winding, 2);
        assert_eq!(report.vortices.iter().map(|v| v.charge).collect::<Vec<_>>(), vec![2]);
    }
}

#[test]
fn run_fig7a_reports_central_and_peripheral_vortices() {
    let tmp = tempfile::tempdir().unwrap();
    let out = out_dir(&tmp, "fig7a");
    let result = vortex(&["run", &scenario("fig7a.json"), "--out", out.to_str().unwrap(), "--strict"]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let report: VortexReport =
        serde_json::from_str(&fs::read_to_string(out.join("vortices_z0_field1.json")).unwrap()).unwrap();
    assert_eq!(report.central().unwrap().charge, 1);
    let peripheral: Vec<i32> = report.vortices.iter().filter(|v| v.x.hypot(v.y) > 0.25).map(|v| v.charge).collect();
    assert_eq!(peripheral, vec![-1; 4]);

    let validity: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("validity.json")).unwrap()).unwrap();
    assert!((validity["diffraction"]["value"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(validity["flags"], serde_json::json!([]));

    let csv = fs::read_to_string(out.join("fields_z0.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 256 * 256 * 2);
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("run.json")).unwrap()).unwrap();
    assert_eq!(meta["scenario"]["config"]["gamma"], serde_json::json!([1.0, 1.0]));
}

#[test]
fn strict_mode_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(scenario("fig2.json")).unwrap().replace("\"epsilon\": 0.1", "\"epsilon\": 1.0");
    let path = tmp.path().join("strong.json");
    fs::write(&path, text).unwrap();
    let out = out_dir(&tmp, "strong");
    let lenient = vortex(&["run", path.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(lenient.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&lenient.stderr).contains("first-order"));
    let strict = vortex(&["run", path.to_str().unwrap(), "--out", out.to_str().unwrap(), "--strict"]);
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn error_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.json");
    fs::write(&bad, r#"{"kind": "zscan", "config": {"n": 2, "c": [[1.0, 0.0], [1.0, 0.0]], "alpha": [1.0, 1.0]}, "beams": [null, null]}"#).unwrap();
    let out = out_dir(&tmp, "x");
    assert_eq!(vortex(&["run", bad.to_str().unwrap(), "--out", out.to_str().unwrap()]).status.code(), Some(1));
    let missing = tmp.path().join("missing.json");
    assert_eq!(vortex(&["run", missing.to_str().unwrap(), "--out", out.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(vortex(&["reproduce", "fig3", "--out", out.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(vortex(&["frobnicate"]).status.code(), Some(1));

    // Output path blocked by a regular file.
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "").unwrap();
    let blocked = blocker.join("sub");
    let result = vortex(&["run", &scenario("fig2.json"), "--out", blocked.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn reproduce_writes_one_bundle_per_case() {
    let tmp = tempfile::tempdir().unwrap();
    let out = out_dir(&tmp, "fig8");
    let result = vortex(&["reproduce", "fig8", "--out", out.to_str().unwrap()]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    for l in 1..=4 {
        let dir = out.join(format!("l1_{l}_l2_-{l}"));
        let report: VortexReport =
            serde_json::from_str(&fs::read_to_string(dir.join("vortices_z0_field1.json")).unwrap()).unwrap();
        assert_eq!(report.petal_count, Some(2 * l));
    }
}

#[test]
fn reproduce_is_byte_identical_across_thread_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let a = out_dir(&tmp, "a");
    let b = out_dir(&tmp, "b");
    assert!(vortex(&["reproduce", "fig2", "--out", a.to_str().unwrap()]).status.success());
    let single = Command::new(env!("CARGO_BIN_EXE_vortex"))
        .args(["reproduce", "fig2", "--out", b.to_str().unwrap()])
        .env("VORTEX_THREADS", "1")
        .output()
        .unwrap();
    assert!(single.status.success());
    for name in ["zscan.csv", "validity.json", "run.json"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn convergence_prints_csv() {
    let result = vortex(&["convergence", &scenario("convergence.json")]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    let text = String::from_utf8(result.stdout).unwrap();
    let rows: Vec<(usize, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (s, e) = l.split_once(',').unwrap();
            (s.parse().unwrap(), e.parse().unwrap())
        })
        .collect();
    assert_eq!(text.lines().next(), Some("steps,max_rel_error"));
    assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), vec![100, 200, 400, 800, 1600, 3200]);
    for w in rows.windows(2) {
        let order = (w[0].1 / w[1].1).log2();
        assert!((order - 4.0).abs() <= 0.3, "order {order}");
    }
}

#[test]
fn bad_thread_cap_is_rejected() {
    let result = Command::new(env!("CARGO_BIN_EXE_vortex"))
        .args(["convergence", &scenario("convergence.json")])
        .env("VORTEX_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(1));
}
