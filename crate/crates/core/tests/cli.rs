use std::path::PathBuf;

use serde_json::{json, Value};
use tempfile::TempDir;

use hcyclic::cli::run;
use hcyclic::io::{matrix_value, partition_value};
use hcyclic::{samples, ComplexMatrix};

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture { dir: TempDir::new().unwrap() }
    }

    fn write(&self, name: &str, v: &Value) -> String {
        let path: PathBuf = self.dir.path().join(name);
        std::fs::write(&path, v.to_string()).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn write_raw(&self, name: &str, text: &str) -> String {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn six(&self) -> (String, String) {
        (
            self.write("a6.json", &matrix_value(&samples::six_by_six())),
            self.write("p6.json", &partition_value(&samples::six_by_six_partition())),
        )
    }

    fn twelve(&self) -> (String, String) {
        (
            self.write("a12.json", &matrix_value(&samples::twelve_by_twelve())),
            self.write("p12.json", &partition_value(&samples::twelve_by_twelve_partition())),
        )
    }
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["hcyclic"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok_json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn detect_six_by_six() {
    let f = Fixture::new();
    let (a, _) = f.six();
    let v = ok_json(&["detect", "--matrix", &a]);
    assert_eq!(v["cyclic_index"], 3);
    assert_eq!(v["partitions"]["3"], json!([[1], [2, 3, 4], [5, 6]]));
    assert_eq!(v["partitions"]["1"], json!([[1, 2, 3, 4, 5, 6]]));
    assert!(v["partitions"].get("2").is_none());
}

#[test]
fn partition_reports_null_when_infeasible() {
    let f = Fixture::new();
    let (a, _) = f.six();
    assert_eq!(ok_json(&["partition", "--matrix", &a, "--h", "2"])["partition"], Value::Null);
    assert_eq!(
        ok_json(&["partition", "--matrix", &a, "--h", "3"])["partition"],
        json!([[1], [2, 3, 4], [5, 6]])
    );
}

#[test]
fn spectrum_six_by_six() {
    let f = Fixture::new();
    let (a, p) = f.six();
    let v = ok_json(&["spectrum", "--matrix", &a, "--partition", &p, "--direct"]);
    assert_eq!(v["zero_count"], 3);
    let r = 4f64.cbrt();
    let orbit = v["orbits"][0].as_array().unwrap();
    assert_eq!(orbit.len(), 3);
    for (k, z) in orbit.iter().enumerate() {
        let (x, y) = complex(z);
        let t = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
        assert!((x - r * t.cos()).abs() <= 1e-9 && (y - r * t.sin()).abs() <= 1e-9);
    }
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 6);
    assert_eq!(v["direct"].as_array().unwrap().len(), 6);
}

#[test]
fn weyr_twelve_by_twelve_exact_output() {
    let f = Fixture::new();
    let (a, _) = f.twelve();
    let (code, out, _) = call(&["weyr", "--matrix", &a]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"weyr\":[5,3,1]}\n");
}

#[test]
fn blocks_and_power_twelve_by_twelve() {
    let f = Fixture::new();
    let (a, p) = f.twelve();
    let v = ok_json(&["blocks", "--matrix", &a, "--partition", &p, "--class", "1", "--length", "2"]);
    assert_eq!(v["h"], 3);
    assert_eq!(v["permutation"], Value::Null);
    assert_eq!(v["products"][0]["data"][0], json!([3.0, 0.0]));
    assert_eq!(v["partial_product"]["matrix"]["rows"], 4);
    let v = ok_json(&["power", "--matrix", &a, "--partition", &p]);
    assert_eq!(v["diagonal_blocks"].as_array().unwrap().len(), 3);
    assert!(v["diagonal_blocks"][1]["data"].as_array().unwrap().iter().all(|z| *z == json!([1.0, 0.0])));
}

#[test]
fn blocks_relabel_non_consecutive_partitions() {
    let f = Fixture::new();
    // same matrix with vertices 1 and 6 swapped
    let sigma = [6, 2, 3, 4, 5, 1];
    let shuffled = samples::six_by_six().permute_symmetric(&sigma).unwrap();
    let a2 = f.write("a2.json", &matrix_value(&shuffled));
    let p2 = f.write("p2.json", &json!({"h": 3, "classes": [[6], [2, 3, 4], [1, 5]]}));
    let v = ok_json(&["blocks", "--matrix", &a2, "--partition", &p2]);
    assert!(v["permutation"].is_array());
    assert_eq!(v["sizes"], json!([1, 3, 2]));
    assert_eq!(v["products"][0]["data"], json!([[4.0, 0.0]]));
}

#[test]
fn check_reports_structure_and_violations() {
    let f = Fixture::new();
    let b = f.write("b.json", &matrix_value(&samples::bipartite_remark()));
    let p = f.write("p.json", &json!({"h": 2, "classes": [[1, 2], [3, 4]]}));
    let v = ok_json(&["check", "--matrix", &b, "--partition", &p]);
    assert_eq!(v["h_cyclic"], true);
    assert_eq!(v["structure"]["singular"], true);
    assert_eq!(v["structure"]["sizes_equal"], true);
    let wrong = f.write("w.json", &json!({"h": 2, "classes": [[1, 3], [2, 4]]}));
    let v = ok_json(&["check", "--matrix", &b, "--partition", &wrong]);
    assert_eq!(v["h_cyclic"], false);
    assert!(v["violation"].is_array());
}

#[test]
fn circulant_modes() {
    let f = Fixture::new();
    let r = f.write("r.json", &json!([[0, 0], [1, 0], [0, 0]]));
    let v = ok_json(&["circulant", "--reference", &r]);
    let k3 = ComplexMatrix::from_real_rows(&[[0., 1., 0.], [0., 0., 1.], [1., 0., 0.]]).unwrap();
    assert_eq!(v["matrix"], matrix_value(&k3));
    let m = f.write("m.json", &matrix_value(&k3));
    assert_eq!(ok_json(&["circulant", "--matrix", &m])["circulant"], true);
    let v = ok_json(&["circulant", "--h", "5", "--k", "-2", "--ell", "3"]);
    for key in ["w_scaled_deviation", "w_shifted_deviation", "sum_identity_residual"] {
        assert!(v[key].as_f64().unwrap() <= 1e-12, "{key}");
    }
    assert_eq!(call(&["circulant"]).0, 2);
}

#[test]
fn rotate_chain_six_by_six() {
    let f = Fixture::new();
    let (a, p) = f.six();
    let c = f.write(
        "c.json",
        &json!({
            "eigenvalue": [0, 0],
            "orientation": "right",
            "vectors": [
                [[0, 0], [1, 0], [-1, 0], [0, 0], [0, 0], [0, 0]],
                [[0, 0], [0, 0], [0, 0], [0, 0], [1, 0], [-1, 0]]
            ]
        }),
    );
    let v = ok_json(&["rotate-chain", "--chain", &c, "--partition", &p, "--k", "1", "--matrix", &a]);
    assert_eq!(v["input_verified"], true);
    assert_eq!(v["verified"], true);
    let (x, y) = complex(&v["chain"]["vectors"][0][1]);
    assert!((x + 0.5).abs() < 1e-12 && (y - 3f64.sqrt() / 2.0).abs() < 1e-11);
}

#[test]
fn zero_chains_twelve_by_twelve() {
    let f = Fixture::new();
    let (a, p) = f.twelve();
    let v = ok_json(&["zero-chains", "--matrix", &a, "--partition", &p]);
    assert_eq!(v["weyr"], json!([5, 3, 1]));
    assert_eq!(v["block_sizes"], json!([3, 2, 2, 1, 1]));
    assert_eq!(v["classes"][1]["lengths"], json!([1, 1, 1]));
    let x = f.write("x.json", &json!([[-0.3333333333333333, 0], [0, 0], [0, 0], [1, 0]]));
    let v = ok_json(&["zero-chains", "--matrix", &a, "--partition", &p, "--class", "1", "--vector", &x]);
    assert_eq!(v["length"], 3);
    let bad = f.write("bad.json", &json!([[1, 0], [0, 0], [0, 0], [0, 0]]));
    let (code, _, err) = call(&["zero-chains", "--matrix", &a, "--partition", &p, "--class", "1", "--vector", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("null space"));
}

#[test]
fn reconstruct_bipartite_example() {
    let f = Fixture::new();
    let chains = f.write(
        "orbits.json",
        &json!([{
            "right": {"eigenvalue": [0, 0], "orientation": "right",
                      "vectors": [[[1, 0], [0, 0], [1, 0], [0, 0]], [[0, 0], [1, 0], [0, 0], [1, 0]]]},
            "left": {"eigenvalue": [0, 0], "orientation": "left",
                     "vectors": [[[0.5, 0], [0, 0], [0.5, 0], [0, 0]], [[0, 0], [0.5, 0], [0, 0], [0.5, 0]]]}
        }]),
    );
    let p = f.write("p.json", &json!({"h": 2, "classes": [[1, 2], [3, 4]]}));
    let v = ok_json(&["reconstruct", "--chains", &chains, "--partition", &p]);
    let expected = ComplexMatrix::from_real_rows(&[
        [0., 0., 0., 1.],
        [0., 0., 0., 0.],
        [0., 1., 0., 0.],
        [0., 0., 0., 0.],
    ])
    .unwrap();
    assert_eq!(v["matrix"], matrix_value(&expected));
}

#[test]
fn validation_errors_exit_two() {
    let f = Fixture::new();
    let (a, _) = f.six();
    let garbage = f.write_raw("g.json", "{ not json");
    assert_eq!(call(&["weyr", "--matrix", &garbage]).0, 2);
    let short = f.write("s.json", &json!({"h": 2, "classes": [[1], [2]]}));
    assert_eq!(call(&["check", "--matrix", &a, "--partition", &short]).0, 2);
    let p_bad = f.write("pb.json", &json!({"h": 2, "classes": [[1, 2, 3], [4, 5, 6]]}));
    let (code, _, err) = call(&["blocks", "--matrix", &a, "--partition", &p_bad]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    assert_eq!(call(&["spectrum", "--matrix", &a]).0, 2);
}

#[test]
fn output_is_byte_stable() {
    let f = Fixture::new();
    let (a, p) = f.twelve();
    for args in [
        vec!["zero-chains", "--matrix", &a, "--partition", &p],
        vec!["spectrum", "--matrix", &a, "--partition", &p, "--direct"],
        vec!["detect", "--matrix", &a],
    ] {
        let first = call(&args);
        let second = call(&args);
        assert_eq!(first.0, 0);
        assert_eq!(first.1, second.1);
    }
}
