use std::path::Path;
use std::process::{Command, Output};

use nncurv::convex::shapes::{cube, icosphere, regular_polygon};
use nncurv::io::body_to_json;
use serde_json::Value;

fn nncurv(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nncurv")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn workdir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ball.json"), body_to_json(&icosphere(1, 1.0))).unwrap();
    std::fs::write(dir.path().join("ball_1.1.json"), body_to_json(&icosphere(1, 1.1))).unwrap();
    std::fs::write(dir.path().join("shifted.json"), body_to_json(&cube(1.0).translate(&nncurv::Vec3::x()))).unwrap();
    std::fs::write(dir.path().join("disc.json"), body_to_json(&regular_polygon(64, 1.0))).unwrap();
    dir
}

#[test]
fn lemma_certificate() {
    let dir = workdir();
    let out = nncurv(&["approx", "3to3", "--a", "ball.json", "--b", "ball_1.1.json", "--sample-level", "1"], dir.path());
    let cert = stdout_json(&out);
    assert_eq!(cert["kind"], "3to3");
    assert!((cert["eps"].as_f64().unwrap() - 0.1).abs() < 1e-12);
    assert!((cert["nu"].as_f64().unwrap() - 2.52).abs() < 1e-12);
    assert_eq!(cert["holds"], true);
    assert_eq!(cert["equivariant"], true);
}

#[test]
fn classification_cells() {
    let dir = workdir();
    let v = stdout_json(&nncurv(&["classify", "--dim", "2", "--k", "1"], dir.path()));
    assert_eq!(v, serde_json::json!(["cylinder", "mobius"]));
    let table = nncurv(&["classify", "--format", "csv"], dir.path());
    let text = String::from_utf8(table.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert_eq!(text.lines().next(), Some("dim,k,space"));
}

#[test]
fn exit_statuses() {
    let dir = workdir();
    assert_eq!(nncurv(&["classify", "--dim", "1", "--k", "2"], dir.path()).status.code(), Some(2));
    assert_eq!(nncurv(&["nonsense"], dir.path()).status.code(), Some(2));
    assert_eq!(nncurv(&["body", "steiner", "missing.json"], dir.path()).status.code(), Some(2));
    std::fs::write(dir.path().join("bad.json"), "{\"vertices\": 3}").unwrap();
    assert_eq!(nncurv(&["body", "steiner", "bad.json"], dir.path()).status.code(), Some(2));
    let off = nncurv(&["approx", "3to3", "--a", "shifted.json", "--b", "shifted.json"], dir.path());
    assert_eq!(off.status.code(), Some(3), "{}", String::from_utf8_lossy(&off.stderr));
    let coarse = nncurv(&["verify", "--only", "1", "--mesh-level", "1", "--sample-level", "1"], dir.path());
    assert_eq!(coarse.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&coarse.stderr).contains("[FAIL] criterion  1"));
}

#[test]
fn verify_is_deterministic() {
    let dir = workdir();
    let run = |name: &str| {
        let out = nncurv(&["verify", "--seed", "7", "--only", "8,10,11,12", "--out", name], dir.path());
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(dir.path().join(name)).unwrap()
    };
    let (a, b) = (run("a.json"), run("b.json"));
    assert_eq!(a, b);
    let report: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["passed"], 4);
    assert_eq!(report["failed"], 0);
    assert_eq!(report["seed"], 7);
}

#[test]
fn plot_rows() {
    let dir = workdir();
    std::fs::write(dir.path().join("empty.json"), "[]").unwrap();
    let empty = nncurv(&["plotdata", "report", "empty.json"], dir.path());
    assert_eq!(String::from_utf8(empty.stdout).unwrap(), "parameter,measured,bound,allowance\n");

    let mesh = nncurv(&["plotdata", "mesh", "--from", "2", "--to", "4"], dir.path());
    let text = String::from_utf8(mesh.stdout).unwrap();
    let rows: Vec<Vec<f64>> =
        text.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    for r in &rows {
        assert_eq!(r[2], 4.0);
        assert!((r[1] - r[2]).abs() <= r[3]);
    }

    let flat = nncurv(&["plotdata", "flatten", "--h", "0.1", "--sample-level", "1"], dir.path());
    let text = String::from_utf8(flat.stdout).unwrap();
    let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(row[0], 0.1);
    assert!((row[2] - 1.0).abs() < 1e-12);
    assert!(row[1] <= row[2] + row[3]);
}

#[test]
fn metric_and_moduli_reports() {
    let dir = workdir();
    let sites = r#"[{"pos":[0,0,0],"sheet":"sheet1"},{"pos":[0,0,0],"sheet":"sheet2"}]"#;
    let s = stdout_json(&nncurv(&["metric", "double", "disc.json", "--sites", sites], dir.path()));
    let d = s["dist"][0][1].as_f64().unwrap();
    assert!((d - 2.0).abs() <= 0.01);
    assert_eq!(s["kind"], "double2d");

    std::fs::write(dir.path().join("klein.json"), r#"{"kind":"klein","a":1,"params":[-2,5]}"#).unwrap();
    let inv = stdout_json(&nncurv(&["moduli", "invariants", "klein.json"], dir.path()));
    assert_eq!(inv["invariants"], serde_json::json!([1.0, 2.0, 5.0]));

    let written = nncurv(&["moduli", "reduce", "--basis", "1,0,1,1", "--out", "lattice.json"], dir.path());
    assert!(written.status.success() && written.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("lattice.json")).unwrap()).unwrap();
    assert_eq!(v["v2"], serde_json::json!([0.0, 1.0]));

    let check = stdout_json(&nncurv(&["moduli", "density-check"], dir.path()));
    assert_eq!(check["t"]["sup_bound"], true);
    assert_eq!(check["t^2"]["concave"], false);
}
