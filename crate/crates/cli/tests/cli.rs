//! End-to-end tests driving the `minkval` binary as a subprocess: output
//! formats, exit codes, determinism, and the config/flag precedence rules.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::atomic::{AtomicU32, Ordering};

use minkval::{polytope_from_json, polytope_to_json, zonotope_from_json, Polytope, Vector};

/// A throwaway directory for one test's input and output files.
struct Workspace {
    dir: PathBuf,
}

static NEXT_WORKSPACE: AtomicU32 = AtomicU32::new(0);

impl Workspace {
    fn new(tag: &str) -> Workspace {
        let dir = std::env::temp_dir().join(format!(
            "minkval-cli-{}-{}-{tag}",
            std::process::id(),
            NEXT_WORKSPACE.fetch_add(1, Ordering::Relaxed),
        ));
        std::fs::create_dir_all(&dir).expect("create test workspace");
        Workspace { dir }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).expect("write test input");
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }
}

impl Drop for Workspace {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

/// Runs the binary and returns (exit code, stdout, stderr).
fn minkval<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_minkval"))
        .args(args)
        .output()
        .expect("spawn minkval");
    (
        out.status.code().expect("exit code"),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    minkval(args)
}

fn arg(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

fn cube_json() -> String {
    polytope_to_json(&minkval::geom::unit_cube(3))
}

fn parse_f64(text: &str) -> f64 {
    text.trim().parse().expect("float output")
}

#[test]
fn hull_canonicalizes_points_and_round_trips() {
    let ws = Workspace::new("hull");
    // Duplicated vertices and an interior point must not survive the hull.
    let raw = ws.file(
        "raw.json",
        r#"{"dim":3,"vertices":[[0,0,0],[1,0,0],[0,1,0],[0,0,1],[1,1,0],[1,0,1],
            [0,1,1],[1,1,1],[1,1,1],[0.5,0.5,0.5]]}"#,
    );
    let (code, stdout, _) = run(&["hull", arg(&raw)]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim_end(), cube_json());

    // Hulling canonical output is the identity, byte for byte.
    let canon = ws.file("canon.json", stdout.trim_end());
    let (code, again, _) = run(&["hull", arg(&canon)]);
    assert_eq!(code, 0);
    assert_eq!(again, stdout);
}

#[test]
fn hull_round_trips_off_files() {
    let ws = Workspace::new("off");
    let cube = ws.file("cube.json", &cube_json());
    let off = ws.path("cube.off");
    let (code, _, _) = run(&["hull", arg(&cube), "-o", arg(&off)]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&off).unwrap();
    assert!(text.starts_with("OFF\n8 6 12\n"), "bad header: {text}");

    let (code, stdout, _) = run(&["hull", arg(&off)]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim_end(), cube_json());
}

#[test]
fn support_evaluates_directions() {
    let ws = Workspace::new("support");
    let cube = ws.file("cube.json", &cube_json());
    let (code, stdout, _) = run(&["support", arg(&cube), "-u", "1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(parse_f64(&stdout), 3.0);

    let (code, stdout, _) = run(&["support", arg(&cube), "-u=-1,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(parse_f64(&stdout), 0.0);

    let (code, _, stderr) = run(&["support", arg(&cube), "-u", "1,0"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("3-dimensional"), "stderr: {stderr}");

    let (code, _, _) = run(&["support", arg(&cube), "-u", "1,zero,0"]);
    assert_eq!(code, 3);
}

#[test]
fn project_body_emits_the_cube_zonotope() {
    let ws = Workspace::new("pibody");
    let cube = ws.file("cube.json", &cube_json());
    let (code, stdout, _) = run(&["project-body", arg(&cube)]);
    assert_eq!(code, 0);
    let z = zonotope_from_json(stdout.trim_end()).unwrap();
    assert_eq!(z.dim(), 3);
    assert_eq!(z.generators().len(), 3);
    assert_eq!(z.center().norm(), 0.0);
    for g in z.generators() {
        assert!((g.norm() - 1.0).abs() < 1e-12);
        let ones = g.coords().iter().filter(|c| c.abs() > 1e-12).count();
        assert_eq!(ones, 1, "generator {g:?} is not axis-aligned");
    }

    let (code, stdout, _) = run(&["project-body", arg(&cube), "--as-polytope"]);
    assert_eq!(code, 0);
    let p = polytope_from_json(stdout.trim_end()).unwrap();
    assert_eq!(p.vertices().len(), 8);
    let u = Vector::new(&[1.0, 1.0, 1.0]).unwrap();
    assert!((p.support(&u) - 3.0).abs() < 1e-12);
}

#[test]
fn steiner_prints_the_cube_center() {
    let ws = Workspace::new("steiner");
    let cube = ws.file("cube.json", &cube_json());
    let (code, stdout, _) = run(&["steiner", arg(&cube)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["dim"], 3);
    for c in v["point"].as_array().unwrap() {
        assert!((c.as_f64().unwrap() - 0.5).abs() < 1e-12);
    }

    let (code, stdout, _) = run(&["steiner", arg(&cube), "--grid", "12"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    for c in v["point"].as_array().unwrap() {
        assert!((c.as_f64().unwrap() - 0.5).abs() < 1e-3);
    }
}

#[test]
fn pi1_prints_values_and_tables_in_dimension_three() {
    let ws = Workspace::new("pi1");
    let cube = ws.file("cube.json", &cube_json());
    let (code, stdout, _) = run(&["pi1", arg(&cube), "-u", "0,0,1"]);
    assert_eq!(code, 0);
    let pinned = minkval::projection_body_order1_3d(
        &minkval::geom::unit_cube(3),
        &Vector::new(&[0.0, 0.0, 1.0]).unwrap(),
    )
    .unwrap();
    assert!((parse_f64(&stdout) - pinned).abs() < 1e-12);

    let (code, stdout, _) = run(&["pi1", arg(&cube), "--grid", "6"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["samples"].as_array().unwrap().len(), 6 * 12);

    let tesseract = ws.file(
        "tesseract.json",
        &polytope_to_json(&minkval::geom::unit_cube(4)),
    );
    let (code, _, stderr) = run(&["pi1", arg(&tesseract), "-u", "1,0,0,0"]);
    assert_eq!(code, 3);
    assert!(!stderr.trim_end().contains('\n'), "multi-line: {stderr}");
}

#[test]
fn bmh_projection_kernel_matches_the_projection_body() {
    let ws = Workspace::new("bmh");
    let cube = ws.file("cube.json", &cube_json());
    let proj = ws.file("proj.json", r#"{"name":"projection"}"#);
    let zero = ws.file("zero.json", r#"{"name":"zero"}"#);

    let (code, stdout, _) = run(&["bmh", "--kernel", arg(&proj), arg(&cube), "-u", "0.3,-0.4,0.5"]);
    assert_eq!(code, 0);
    let u = Vector::new(&[0.3, -0.4, 0.5]).unwrap();
    let pi = minkval::projection_body(&minkval::geom::unit_cube(3)).unwrap();
    assert!((parse_f64(&stdout) - pi.support(&u)).abs() < 1e-10);

    let (code, stdout, _) = run(&["bmh", "--kernel", arg(&zero), arg(&cube), "-u", "1,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(parse_f64(&stdout), 0.0);

    let garbage = ws.file("warp.json", r#"{"name":"warp"}"#);
    let (code, _, _) = run(&["bmh", "--kernel", arg(&garbage), arg(&cube), "-u", "1,0,0"]);
    assert_eq!(code, 3);
}

#[test]
fn minkowski_solve_round_trips_a_cube_measure() {
    let ws = Workspace::new("solve");
    let measure = minkval::surface_area_measure(&minkval::geom::unit_cube(3)).unwrap();
    let m = ws.file("m.json", &minkval::measure_to_json(&measure));
    let out = ws.path("report.json");
    let (code, _, _) = run(&["minkowski-solve", "--measure", arg(&m), "-o", arg(&out)]);
    assert_eq!(code, 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["converged"], true);
    let solved = polytope_from_json(&report["polytope"].to_string()).unwrap();
    assert_eq!(solved.vertices().len(), 8);
    assert!((solved.volume() - 1.0).abs() < 1e-6);
}

#[test]
fn minkowski_solve_rejects_condition_violations() {
    let ws = Workspace::new("badmeasure");
    // All four directions lie in a half-space, so the resultant is nonzero.
    let bad = ws.file(
        "bad.json",
        r#"{"dim":3,"atoms":[{"u":[1,0,0],"w":1},{"u":[0,1,0],"w":1},{"u":[0,0,1],"w":1},
            {"u":[0.5773502691896258,0.5773502691896258,0.5773502691896258],"w":1}]}"#,
    );
    let (code, stdout, stderr) = run(&["minkowski-solve", arg(&bad)]);
    assert_eq!(code, 3);
    assert!(stdout.is_empty());
    assert!(stderr.contains("violated"), "stderr: {stderr}");
    assert!(!stderr.trim_end().contains('\n'), "multi-line: {stderr}");
}

#[test]
fn blaschke_sum_of_two_cubes_is_a_wider_cube() {
    let ws = Workspace::new("blaschke");
    let cube = ws.file("cube.json", &cube_json());
    let (code, stdout, _) = run(&["blaschke-sum", arg(&cube), arg(&cube)]);
    assert_eq!(code, 0);
    let sum = polytope_from_json(stdout.trim_end()).unwrap();
    let side = 2.0f64.sqrt();
    assert!((sum.volume() - side.powi(3)).abs() < 1e-6);
    let e1 = Vector::new(&[1.0, 0.0, 0.0]).unwrap();
    assert!((sum.support(&e1) - side / 2.0).abs() < 1e-6);
}

#[test]
fn decompose_isolates_the_projection_body_degree() {
    let ws = Workspace::new("decompose");
    let cube = ws.file("cube.json", &cube_json());
    let (code, stdout, _) = run(&[
        "decompose",
        "--operator",
        "pi",
        "--body",
        arg(&cube),
        "--grid",
        "6",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["ambient"], 3);
    assert!(v["reconstruction_residual"].as_f64().unwrap() < 1e-10);
    for degree in ["0", "1", "2", "3"] {
        let entry = &v["degrees"][degree];
        assert_eq!(entry["sublinear"], true, "degree {degree}");
        assert_eq!(entry["homogeneous"], true, "degree {degree}");
        let norm = entry["norm"].as_f64().unwrap();
        if degree == "2" {
            assert!(norm > 1.0);
        } else {
            assert!(norm < 1e-7, "degree {degree} norm {norm}");
        }
    }

    let (code, _, _) = run(&["decompose", "--operator", "warp", "--body", arg(&cube)]);
    assert_eq!(code, 3);
}

#[test]
fn verify_runs_are_deterministic_across_thread_counts() {
    let ws = Workspace::new("verify");
    let small = [
        "--trials-valuation",
        "6",
        "--trials-translation",
        "4",
        "--trials-rotation",
        "4",
        "--trials-homogeneity",
        "4",
        "--trials-polytopal",
        "2",
    ];
    let out1 = ws.path("r1.json");
    let out2 = ws.path("r2.json");
    let mut args1: Vec<&str> = vec!["verify", "--suite", "quick", "--seed", "7"];
    args1.extend_from_slice(&small);
    args1.extend_from_slice(&["--threads", "1", "--json", arg(&out1)]);
    let mut args2: Vec<&str> = vec!["verify", "--suite", "quick", "--seed", "7"];
    args2.extend_from_slice(&small);
    args2.extend_from_slice(&["--threads", "4", "--json", arg(&out2)]);

    let (code, stdout, _) = run(&args1);
    assert_eq!(code, 0);
    assert!(stdout.contains("2/2 operators passed"), "stdout: {stdout}");
    let (code, _, _) = run(&args2);
    assert_eq!(code, 0);
    assert_eq!(
        std::fs::read(&out1).unwrap(),
        std::fs::read(&out2).unwrap(),
        "reports differ across thread counts"
    );
}

#[test]
fn verify_config_file_yields_to_flags() {
    let ws = Workspace::new("config");
    let cfg = ws.file(
        "cfg.toml",
        "threads = 2\n\n[verify]\nseed = 11\ntrials_valuation = 4\ntrials_translation = 2\n\
         trials_rotation = 2\ntrials_homogeneity = 2\ntrials_polytopal = 2\n",
    );
    let out = ws.path("r.json");
    let (code, _, _) = run(&[
        "verify",
        "--config",
        arg(&cfg),
        "--suite",
        "quick",
        "--json",
        arg(&out),
    ]);
    assert_eq!(code, 0);
    assert!(std::fs::read_to_string(&out).unwrap().contains("\"seed\":11"));

    let (code, _, _) = run(&[
        "verify",
        "--config",
        arg(&cfg),
        "--suite",
        "quick",
        "--seed",
        "13",
        "--json",
        arg(&out),
    ]);
    assert_eq!(code, 0);
    assert!(std::fs::read_to_string(&out).unwrap().contains("\"seed\":13"));

    let typo = ws.file("typo.toml", "[verify]\nseeed = 1\n");
    let (code, _, stderr) = run(&["verify", "--config", arg(&typo)]);
    assert_eq!(code, 3);
    assert!(!stderr.trim_end().contains('\n'), "multi-line: {stderr}");
}

#[test]
fn verify_broken_suite_reports_failures() {
    let ws = Workspace::new("broken");
    let out = ws.path("rb.json");
    let (code, stdout, stderr) = run(&[
        "verify",
        "--suite",
        "broken",
        "--seed",
        "3",
        "--trials-valuation",
        "4",
        "--trials-translation",
        "2",
        "--trials-rotation",
        "2",
        "--trials-homogeneity",
        "2",
        "--trials-polytopal",
        "2",
        "--json",
        arg(&out),
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL ball_volume"), "stdout: {stdout}");
    assert!(stdout.contains("FAIL volume_scaled"), "stdout: {stdout}");
    assert!(stdout.contains("FAIL no_recenter"), "stdout: {stdout}");
    assert!(stdout.contains("pass pi"), "stdout: {stdout}");
    assert!(stderr.contains("failing trials"), "stderr: {stderr}");
    let report = std::fs::read_to_string(&out).unwrap();
    assert!(report.contains("\"passed\":false"));
}

#[test]
fn usage_and_input_errors_use_the_documented_exit_codes() {
    let ws = Workspace::new("exitcodes");
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);

    let (code, _, _) = run(&["verify", "--suite", "bogus"]);
    assert_eq!(code, 2);

    let (code, _, stderr) = run(&["hull", arg(&ws.path("nosuch.json"))]);
    assert_eq!(code, 3);
    assert!(stderr.starts_with("error: "), "stderr: {stderr}");

    let garbage = ws.file("garbage.json", "not json at all");
    let (code, _, _) = run(&["hull", arg(&garbage)]);
    assert_eq!(code, 3);

    // Refusing to overwrite an input: the file must be left untouched.
    let cube = ws.file("cube.json", &cube_json());
    let before = std::fs::read_to_string(&cube).unwrap();
    let (code, _, stderr) = run(&["hull", arg(&cube), "-o", arg(&cube)]);
    assert_eq!(code, 3);
    assert!(stderr.contains("overwrite"), "stderr: {stderr}");
    assert_eq!(std::fs::read_to_string(&cube).unwrap(), before);

    let (code, _, _) = run(&["minkowski-solve"]);
    assert_eq!(code, 2);
}
