use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ucs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ucs")).args(args).output().expect("spawn ucs")
}

fn ok(args: &[&str]) -> String {
    let out = ucs(args);
    assert!(out.status.success(), "ucs {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn bench_into(dir: &Path) {
    ok(&[
        "bench", "--problem", "ncb", "--system", "adaptive", "--steps", "1500", "--trials", "2", "--seed", "7",
        "--no-timing", "--window", "500", "--out-dir", dir.to_str().unwrap(),
    ]);
}

#[test]
fn bench_writes_metrics_windows_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    bench_into(dir.path());
    let metrics = fs::read_to_string(dir.path().join("metrics.csv")).unwrap();
    let lines: Vec<&str> = metrics.lines().collect();
    assert_eq!(
        lines[0],
        "trial_seed,system,problem_or_fold,overall_acc_pct,convergence_acc_pct,macro_rules,micro_rules,steps,wall_ms"
    );
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("7,adaptive,ncb,"));
    assert!(lines[2].starts_with("8,adaptive,ncb,"));
    assert!(lines[1].ends_with(",1500,0"));
    assert!(dir.path().join("windows.csv").exists());
    assert!(dir.path().join("ncb_adaptive_seed7.rules").exists());
    assert!(dir.path().join("ncb_adaptive_seed8.rules").exists());
}

#[test]
fn bench_output_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    bench_into(a.path());
    bench_into(b.path());
    for name in ["metrics.csv", "windows.csv", "ncb_adaptive_seed7.rules"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# small run\nn = 120\nsteps = 400\nseed = 31\nrepresentation = trapezoid\n").unwrap();
    let out = dir.path().join("out");
    ok(&[
        "bench", "--problem", "cb", "--steps", "900", "--no-timing", "--config", cfg.to_str().unwrap(),
        "--out-dir", out.to_str().unwrap(),
    ]);
    let metrics = fs::read_to_string(out.join("metrics.csv")).unwrap();
    let row: Vec<&str> = metrics.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "31");
    assert_eq!(row[1], "trapezoid");
    assert_eq!(row[7], "900");
    assert!(row[6].parse::<usize>().unwrap() <= 120);
}

#[test]
fn render_classes_and_matching_from_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    bench_into(dir.path());
    let snap = dir.path().join("ncb_adaptive_seed7.rules");
    let classes = dir.path().join("classes.pgm");
    ok(&[
        "render", "--snapshot", snap.to_str().unwrap(), "--classes", "--resolution", "40", "--out",
        classes.to_str().unwrap(),
    ]);
    let bytes = fs::read(&classes).unwrap();
    let header = b"P5\n40 40\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    assert_eq!(bytes.len(), header.len() + 1600);
    assert!(bytes[header.len()..].iter().all(|&p| p == 0 || p == 255));

    let matching = dir.path().join("matching.pgm");
    ok(&[
        "render", "--snapshot", snap.to_str().unwrap(), "--matching", "0", "1", "--resolution", "30", "--out",
        matching.to_str().unwrap(),
    ]);
    assert_eq!(fs::read(&matching).unwrap().len(), b"P5\n30 30\n255\n".len() + 900);
}

#[test]
fn render_rejects_bad_requests() {
    let dir = tempfile::tempdir().unwrap();
    bench_into(dir.path());
    let snap = dir.path().join("ncb_adaptive_seed7.rules");
    let out = dir.path().join("x.pgm");
    assert!(!ucs(&["render", "--snapshot", snap.to_str().unwrap(), "--out", out.to_str().unwrap()]).status.success());
    let far = ucs(&[
        "render", "--snapshot", snap.to_str().unwrap(), "--matching", "999999", "--out", out.to_str().unwrap(),
    ]);
    assert!(!far.status.success());
    assert!(String::from_utf8_lossy(&far.stderr).contains("out of range"));
}

#[test]
fn cv_runs_on_a_small_file() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("blobs.csv");
    let mut text = String::from("x,y,class\n");
    for i in 0..30 {
        let f = i as f64 / 30.0;
        text.push_str(&format!("{:.3},{:.3},low\n", f * 0.4, 0.1 + f * 0.2));
        text.push_str(&format!("{:.3},{:.3},high\n", 0.6 + f * 0.4, 0.7 + f * 0.2));
    }
    fs::write(&data, text).unwrap();
    let out = dir.path().join("cv");
    let stdout = ok(&[
        "cv", "--data", data.to_str().unwrap(), "--system", "crisp", "--folds", "3", "--repeats", "2", "--epochs",
        "5", "--no-timing", "--out-dir", out.to_str().unwrap(),
    ]);
    assert!(stdout.contains("blobs crisp over 6 fold(s)"));
    let metrics = fs::read_to_string(out.join("metrics.csv")).unwrap();
    assert_eq!(metrics.lines().count(), 7);
    assert!(metrics.contains(",blobs/r0f0,"));
}

#[test]
fn unknown_system_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = ucs(&["bench", "--problem", "cb", "--system", "neural", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(!out.status.success());
}
