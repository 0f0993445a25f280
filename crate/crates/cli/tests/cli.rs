use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_str().unwrap().to_string()
}

fn bralg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bralg")).args(args).output().expect("run bralg")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn weyl_has_two_simple_modules_at_zero() {
    let out = bralg(&["classify", &data("weyl.br"), "--point", "z=0"]);
    assert!(out.status.success());
    let v = report(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["result"]["count"], 2);
    let d = &v["result"]["descriptors"];
    assert_eq!((d[0]["lower"][0].as_str(), d[0]["upper"][0].as_str()), (Some("-inf"), Some("0")));
    assert_eq!((d[1]["lower"][0].as_str(), d[1]["upper"][0].as_str()), (Some("0"), Some("inf")));
}

#[test]
fn laurent_example_is_simple() {
    let out = bralg(&["simplicity", &data("laurent_simple.br")]);
    assert!(out.status.success());
    assert_eq!(report(&out)["status"], "SIMPLE");
}

#[test]
fn weyl_is_simple() {
    let out = bralg(&["simplicity", &data("weyl.br")]);
    assert_eq!(report(&out)["status"], "SIMPLE");
}

#[test]
fn non_antisymmetric_p_fails_validation() {
    let out = bralg(&["validate", &data("bad_p.br")]);
    assert_eq!(out.status.code(), Some(1));
    let v = report(&out);
    assert_eq!(v["status"], "fail");
    let failed: Vec<&Value> = v["trail"].as_array().unwrap().iter().filter(|s| s["result"] == "fail").collect();
    assert!(failed.iter().any(|s| s["check"].as_str().unwrap().contains("antisymmetric")), "{failed:?}");
}

#[test]
fn valid_data_pass_validation() {
    for f in ["weyl.br", "laurent_simple.br", "two_breaks.br"] {
        let out = bralg(&["validate", &data(f)]);
        assert!(out.status.success(), "{f}");
        assert_eq!(report(&out)["status"], "pass", "{f}");
    }
}

#[test]
fn parse_errors_give_position_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.br");
    std::fs::write(&bad, "vars: z\nsigma1: {z: z + }\n").unwrap();
    let out = bralg(&["validate", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column"), "{err}");
    assert!(out.stdout.is_empty());

    std::fs::write(&bad, "vars: z\nsigma1: {z: z + 1}\nK1: z\n").unwrap();
    let err = String::from_utf8_lossy(&bralg(&["validate", path(&bad)]).stderr).to_string();
    assert!(err.contains("line 3, column 1: unknown key `K1`"), "{err}");
}

#[test]
fn missing_file_exits_2() {
    let out = bralg(&["validate", "/nonexistent/x.br"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = ["breaks", &data("two_breaks.br"), "--point", "x=0,y=0"];
    let a = bralg(&args);
    let b = bralg(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["simplicity", &data("laurent_simple.br")];
    assert_eq!(bralg(&args).stdout, bralg(&args).stdout);
}

#[test]
fn reports_pass_check_report() {
    let dir = tempfile::tempdir().unwrap();
    let (weyl, bad_p, two, laurent) = (data("weyl.br"), data("bad_p.br"), data("two_breaks.br"), data("laurent_simple.br"));
    let runs: Vec<Vec<&str>> = vec![
        vec!["validate", &weyl],
        vec!["validate", &bad_p],
        vec!["gkdim", &weyl],
        vec!["ideal", &two, "--degree", "1,-2"],
        vec!["tgwa", "to", &weyl],
        vec!["tgwa", "to", &laurent],
        vec!["simplicity", &weyl, "--timing"],
    ];
    for (k, args) in runs.iter().enumerate() {
        let file = dir.path().join(format!("r{k}.json"));
        let mut full = args.clone();
        full.extend(["--out", path(&file)]);
        let out = bralg(&full);
        assert_ne!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(std::fs::read(&file).unwrap(), out.stdout);
        let check = bralg(&["check-report", path(&file)]);
        assert!(check.status.success(), "{args:?}: {}", String::from_utf8_lossy(&check.stdout));
    }
}

#[test]
fn check_report_rejects_garbage() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.json");
    std::fs::write(&file, r#"{"status": "maybe"}"#).unwrap();
    let out = bralg(&["check-report", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn diagram_draws_two_break_lines_per_axis() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("d.svg");
    let tikz = dir.path().join("d.tex");
    let out = bralg(&[
        "diagram",
        &data("two_breaks.br"),
        "--point",
        "x=0,y=0",
        "--svg",
        path(&svg),
        "--tikz",
        path(&tikz),
    ]);
    assert!(out.status.success());
    let v = report(&out);
    assert_eq!(v["result"]["break_lines"], serde_json::json!([2, 2]));
    assert_eq!(v["result"]["shaded_regions"], 9);
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(svg.matches("<line").count(), 4);
    assert!(std::fs::read_to_string(&tikz).unwrap().contains("\\begin{tikzpicture}"));
}

#[test]
fn diagram_without_breaks_is_a_bare_lattice() {
    let dir = tempfile::tempdir().unwrap();
    let plain = dir.path().join("plain.br");
    std::fs::write(&plain, "vars: x, y\nsigma1: {x: x + 1}\nsigma2: {y: y + 1}\n").unwrap();
    let out = bralg(&["diagram", path(&plain), "--point", "x=0,y=0", "--window", "3"]);
    let v = report(&out);
    assert_eq!(v["result"]["break_lines"], serde_json::json!([0, 0]));
    assert_eq!(v["result"]["lattice_points"], 49);
}

#[test]
fn tgwa_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let tg = dir.path().join("w.tgwa");
    let back = dir.path().join("w.br");
    let out = bralg(&["tgwa", "to", &data("weyl.br"), "--datum-out", path(&tg)]);
    assert!(out.status.success());
    let out = bralg(&["tgwa", "from", path(&tg), "--datum-out", path(&back)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let out = bralg(&["classify", path(&back), "--point", "z=0"]);
    assert_eq!(report(&out)["result"]["count"], 2);
}

#[test]
fn tensor_of_weyl_algebras_has_gk_four() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.br");
    let w = data("weyl.br");
    let out = bralg(&["tensor", &w, &w, "--datum-out", path(&t)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = report(&bralg(&["gkdim", path(&t)]));
    assert_eq!(v["result"]["value"], 4);
}

#[test]
fn mul_in_weyl_algebra() {
    let out = bralg(&["mul", &data("weyl.br"), "[1]: z + 1", "[-1]: 1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = report(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["result"]["product"], serde_json::json!([[[0], "z + 1"]]));
    // The commutator of the two generators is 1.
    let out = bralg(&["mul", &data("weyl.br"), "[-1]: 1", "[1]: z + 1"]);
    assert_eq!(report(&out)["result"]["product"], serde_json::json!([[[0], "z"]]));
}
