use polarkit::covering::{boost, covering_map, rotation, spinor_matrix, SpinorParams};
use polarkit::isotropic::isotropic_from_spinor;
use polarkit::stokes::{boost_stokes, BoostSpec, StokesVector};
use polarkit::{json, C64};
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polarkit"))
        .args(args)
        .env_remove("POLARKIT_TOL")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn tmp(name: &str, body: &str) -> String {
    let p: PathBuf = [env!("CARGO_TARGET_TMPDIR"), name].iter().collect();
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn reals(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(f).collect()
}

fn spinor(v: &Value) -> SpinorParams {
    SpinorParams::new(json::parse_complex_n::<4>(v).unwrap())
}

#[test]
fn factor_identity() {
    let v = ok(&["factor", "--order", "123", "--quaternion", "[1,0,0,0]"]);
    assert_eq!(reals(&v["angles"]), vec![0.0, 0.0, 0.0]);
    assert!(v["flag"].is_null());
}

#[test]
fn factor_roundtrip_all_labels() {
    let q = [0.5f64, 0.5, -0.5, 0.5];
    let qs = format!("[{},{},{},{}]", q[0], q[1], q[2], q[3]);
    for label in ["121", "131", "212", "232", "313", "323"] {
        let v = ok(&["factor2", "--scheme", label, "--quaternion", &qs]);
        assert!(f(&v["reconstruction_error"]) < 1e-12, "{label}");
    }
    for label in ["123", "132", "213", "231", "312", "321"] {
        let v = ok(&["factor3", "--order", label, "--quaternion", &qs]);
        assert!(f(&v["reconstruction_error"]) < 1e-12, "{label}");
    }
    assert_eq!(code(&["factor2", "--scheme", "123", "--quaternion", &qs]), 2);
}

#[test]
fn numbers_have_17_digits() {
    let out = run(&["boost", "--beta", "0.5", "--axis", "[0,0,1]", "--stokes", "[1,0,0,1]"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("6.0653065971263331e-1"), "{text}");
}

#[test]
fn boost_matches_library_and_batch() {
    let v = ok(&["boost", "--beta", "0.7", "--axis", "[1,2,2]", "--stokes", "[2,0.3,-0.4,1]"]);
    let b = BoostSpec::new(0.7, [1.0, 2.0, 2.0]).unwrap();
    let want = boost_stokes(&StokesVector::raw([2.0, 0.3, -0.4, 1.0]), &b);
    for (x, y) in reals(&v["stokes"]).iter().zip(want.s) {
        assert!((x - y).abs() < 1e-14);
    }
    let csv = tmp("boost.csv", "S0,S1,S2,S3\n# comment\n1,0,0,1\n2,0.3,-0.4,1\n");
    let v = ok(&["boost", "--beta", "0.7", "--axis", "[1,2,2]", "--csv", &csv]);
    let rows = v["stokes"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for (x, y) in reals(&rows[1]).iter().zip(want.s) {
        assert!((x - y).abs() < 1e-14);
    }
}

#[test]
fn rotate_keeps_intensity() {
    let v = ok(&["rotate", "--phi", "-1.2", "--axis", "[0,0,1]", "--stokes", "[1,0.6,0,0.2]"]);
    let s = reals(&v["stokes"]);
    assert!((s[0] - 1.0).abs() < 1e-15 && (s[3] - 0.2).abs() < 1e-15);
    assert!((s[1].hypot(s[2]) - 0.6).abs() < 1e-15);
}

#[test]
fn transit_pure_boost_from_csv() {
    let b = BoostSpec::new(0.9, [0.2, -0.5, 1.0]).unwrap();
    let mut body = String::from("# S0,S1,S2,S3,S0',S1',S2',S3'\n");
    let inputs = [[1.0, 0.2, 0.3, -0.4], [2.0, 0.0, 0.0, 1.0], [1.5, -0.7, 0.1, 0.2]];
    for s in inputs {
        let t = boost_stokes(&StokesVector::raw(s), &b);
        let row: Vec<String> = s.iter().chain(t.s.iter()).map(|x| format!("{x:.17e}")).collect();
        body.push_str(&row.join(","));
        body.push('\n');
    }
    let path = tmp("pairs.csv", &body);
    let v = ok(&["transit", "--pairs", &path, "--mode", "pure-boost"]);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for (row, s) in rows.iter().zip(inputs) {
        assert!(f(&row["map_residual"]) < 1e-12);
        assert!(f(&row["constraint_residual"]).abs() < 1e-12);
        let l = covering_map(&spinor(&row["k"])).unwrap();
        let t = polarkit::stokes::mueller_apply_real(&l, &StokesVector::raw(s));
        let want = boost_stokes(&StokesVector::raw(s), &b);
        for i in 0..4 {
            assert!((t.s[i] - want.s[i]).abs() < 1e-12);
        }
    }
}

#[test]
fn transit_modes_single_pair() {
    let s = "[1,0.6,0,0]";
    let v = ok(&["transit", "--from", s, "--to", "[1,0,0.6,0]", "--mode", "rotation", "--alpha", "0.3"]);
    assert!(f(&v["map_residual"]) < 1e-14);
    let t = "[1.2,0.8,0,0.4]";
    let base = ok(&["transit", "--from", s, "--to", t, "--mode", "boost-rotation"]);
    assert!(f(&base["map_residual"]) < 1e-12);
    let v = ok(&["transit", "--from", s, "--to", t, "--mode", "general", "--params", "[0.1,0.2,0.3,0.4]", "--project"]);
    assert!(f(&v["constraint_residual"]).abs() < 1e-10);
    assert!(f(&v["map_residual"]) < 1e-10);
}

#[test]
fn convert_isotropic_matches_bilinear_form() {
    let k = boost(0.4, [1.0, 0.0, 0.0]).unwrap().compose(&rotation(0.9, [0.3, 0.1, -1.0]).unwrap());
    let l = covering_map(&k).unwrap();
    let path = tmp("L.json", &serde_json::to_string(&json::matrix_r(&l)).unwrap());
    let v = ok(&["convert", "--basis", "isotropic", "--lorentz", &path, "--recover"]);
    let u = json::parse_matrix(&v["matrix"]).unwrap();
    let want = isotropic_from_spinor(&spinor_matrix(&k), 1e-10).unwrap();
    assert!((u - want).iter().all(|z| z.norm() < 1e-12));
    let back = ok(&["convert", "--basis", "real", "--isotropic", &serde_json::to_string(&v["matrix"]).unwrap()]);
    let lr = json::parse_matrix(&back["matrix"]).unwrap();
    assert!((0..16).all(|i| (lr[i] - C64::from(l[i])).norm() < 1e-12));
    let m = spinor_matrix(&k);
    let a = json::parse_c64(&v["spinor"]["a"]).unwrap();
    assert!((a - m.a).norm() < 1e-10 || (a + m.a).norm() < 1e-10);
}

#[test]
fn convert_from_spinor_reports_recovery() {
    let v = ok(&["convert", "--basis", "real", "--spinor", "[[1,0],[0,0.5],[0.3,0],[0,0]]"]);
    assert!(f(&v["recovery_error"]) < 1e-12);
    assert_eq!(v["matrix"][0].as_array().unwrap().len(), 4);
    assert!(v["matrix"][0][0].is_number());
}

#[test]
fn decompose_and_thomas() {
    let v = ok(&["decompose", "--k", "[[1.2,0],[0.1,0.3],[0,-0.2],[0.4,0]]"]);
    assert!(f(&v["rotation_first"]["reconstruction_error"]) < 1e-12);
    assert!(f(&v["boost_first"]["reconstruction_error"]) < 1e-12);
    let t = ok(&["thomas", "--beta1", "1", "--axis1", "[1,0,0]", "--beta2", "1", "--axis2", "[2,0,0]"]);
    assert!(f(&t["thomas_angle"]).abs() < 1e-14);
    let t = ok(&["thomas", "--beta1", "1", "--axis1", "[1,0,0]", "--beta2", "1", "--axis2", "[0,1,0]"]);
    assert!(f(&t["thomas_angle"]).abs() > 0.1);
    assert!((reals(&t["thomas_axis"])[2].abs() - 1.0).abs() < 1e-14);
}

#[test]
fn stationary_fixes_the_vector() {
    let v = ok(&["stationary", "--stokes", "[2,0.5,0.3,-0.1]", "--n", "[0.2,0.4,-0.1]"]);
    assert!(f(&v["residual"]) < 1e-13);
}

#[test]
fn jones_paths() {
    let v = ok(&["jones", "--stokes", "[1,0,0,1]"]);
    assert_eq!(v["flag"], "axis");
    let v = ok(&["jones", "--stokes", "[2,1,1,1.4142135623730951]"]);
    let psi = json::parse_complex_n::<2>(&v["spinor"]).unwrap();
    let w = ok(&["jones", "--spinor", &serde_json::to_string(&json::complex_array(&psi)).unwrap()]);
    let s = reals(&w["stokes"]);
    assert!((s[0] - 2.0).abs() < 1e-14 && (s[1] - 1.0).abs() < 1e-14);
    let inv = reals(&w["tensor"]["invariants"]);
    assert!(inv[0].abs() < 1e-13 && inv[1].abs() < 1e-13);
    let alt = ok(&["jones", "--stokes", "[2,1,1,1.4142135623730951]", "--model", "alt"]);
    let back = ok(&["jones", "--model", "alt", "--spinor", &serde_json::to_string(&alt["spinor"]).unwrap()]);
    assert!((reals(&back["stokes"])[3] - 2f64.sqrt()).abs() < 1e-14);
    let b = ok(&["jones", "--bispinor", r#"{"xi": [1, [0, 0.5]], "eta": [0.3, 0.8]}"#]);
    let [lo, hi] = [reals(&b["invariant_bounds"])[0], reals(&b["invariant_bounds"])[1]];
    let i = f(&b["invariant"]);
    assert!(lo - 1e-14 <= i && i <= hi + 1e-14);
}

#[test]
fn fit_recovers_a_boost() {
    let b = BoostSpec::new(0.6, [0.0, 1.0, 1.0]).unwrap();
    let mut body = String::new();
    for s in [[1.0, 0.2, 0.3, -0.4], [2.0, 0.0, 0.0, 1.0], [1.5, -0.7, 0.1, 0.2], [1.0, 0.0, 0.9, 0.0], [1.0, 0.0, 0.0, 0.0]] {
        let t = boost_stokes(&StokesVector::raw(s), &b);
        let row: Vec<String> = s.iter().chain(t.s.iter()).map(|x| format!("{x:.17e}")).collect();
        body.push_str(&(row.join(",") + "\n"));
    }
    let v = ok(&["fit", "--pairs", &tmp("fit.csv", &body)]);
    assert!(f(&v["lorentz_deviation"]) < 1e-10);
    assert!(f(&v["rms_residual"]) < 1e-12);
}

#[test]
fn exit_codes() {
    // parse failures
    assert_eq!(code(&["factor", "--order", "123", "--quaternion", "[1,0"]), 2);
    assert_eq!(code(&["factor", "--order", "999", "--quaternion", "[1,0,0,0]"]), 2);
    assert_eq!(code(&["boost", "--beta", "x", "--axis", "[0,0,1]", "--stokes", "[1,0,0,1]"]), 2);
    assert_eq!(code(&["--tol", "-1", "factor", "--order", "123", "--quaternion", "[1,0,0,0]"]), 2);
    assert_eq!(code(&["transit", "--pairs", "/nonexistent.csv"]), 2);
    // domain errors
    assert_eq!(code(&["factor", "--order", "123", "--quaternion", "[2,0,0,0]"]), 3);
    assert_eq!(code(&["boost", "--beta", "1", "--axis", "[0,0,0]", "--stokes", "[1,0,0,1]"]), 3);
    assert_eq!(code(&["jones", "--stokes", "[1,0,0,0.5]"]), 3);
    // constraint or degeneracy errors
    assert_eq!(code(&["transit", "--from", "[1,0,0,0]", "--to", "[2,0,0,0]"]), 4);
    assert_eq!(code(&["transit", "--from", "[1,0.5,0,0]", "--to", "[1,0,0.5,0]"]), 4);
    let two = tmp("two.csv", "1,0,0,0,1,0,0,0\n1,1,0,0,1,1,0,0\n");
    let out = run(&["fit", "--pairs", &two]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("null directions"));
}

#[test]
fn batch_with_a_bad_row_still_reports() {
    let path = tmp("mixed.csv", "1,0.2,0,0,1.2,0.2,0.1,0.6557438524302001\n1,0,0,0,2,0,0,0\n");
    let out = run(&["transit", "--pairs", &path]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["results"].as_array().unwrap();
    assert!(rows[0].get("k").is_some());
    assert!(rows[1].get("error").is_some());
}

#[test]
fn output_is_deterministic() {
    let args = ["selftest", "--seed", "11", "--samples", "40"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_polarkit"))
        .args(["factor", "--order", "123", "--quaternion", "[1,0,0,0.01]"])
        .env("POLARKIT_TOL", "1e-3")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(code(&["factor", "--order", "123", "--quaternion", "[1,0,0,0.01]"]), 3);
}

#[test]
fn table_format() {
    let out = run(&["--format", "table", "factor", "--order", "121", "--quaternion", "[1,0,0,0]"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("angles")));
    assert!(text.lines().any(|l| l.starts_with("scheme")));
}
