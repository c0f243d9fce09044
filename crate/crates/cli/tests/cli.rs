use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lsa(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsa")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn gen(dir: &Path, id: &str, dim: &str, file: &str) {
    let o = lsa(dir, &["catalog-gen", id, "--dim", dim, "-o", file]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn generated_member_verifies() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "a3.1", "2", "a.json");
    let o = lsa(dir.path(), &["verify", "a.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "left-symmetric: true");
}

#[test]
fn lie24_fails_verification() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "lie24", "3", "lie.json");
    let o = lsa(dir.path(), &["verify", "lie.json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).trim(), "left-symmetric: false");
}

#[test]
fn exceptional_pair_is_isomorphic() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "a3.3:0", "2", "a.json");
    gen(dir.path(), "a7:1/2", "2", "b.json");
    let o = lsa(dir.path(), &["iso", "a.json", "b.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("isomorphic (witness verified)"));
}

#[test]
fn distinct_members_are_not_isomorphic() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "a2", "3", "a.json");
    gen(dir.path(), "a6", "3", "b.json");
    let o = lsa(dir.path(), &["--json", "iso", "a.json", "b.json"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "iso");
    assert_eq!(v["result"]["verdict"], "non-isomorphic");
}

#[test]
fn properties_of_a4_zero() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "a4:0", "4", "a.json");
    let o = lsa(dir.path(), &["properties", "a.json"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for line in ["transitive: true", "novikov: true", "interior-derivation: true", "associative: false"] {
        assert!(out.contains(line), "missing {line:?} in {out}");
    }
    let o = lsa(dir.path(), &["--json", "properties", "a.json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["transitive_mode"], "exact-grid");
}

#[test]
fn construct_and_identify_spec() {
    let dir = TempDir::new().unwrap();
    // h = e1*⊗e1, f = h(·, c) - 2e1*, c = e1: rank one with λ = 0.
    let spec = r#"{"dim": 3, "f": ["-1","0","0"], "g": ["0","0","0"],
        "h": [["1","0","0"],["0","0","0"],["0","0","0"]], "c": ["1","0","0"]}"#;
    std::fs::write(dir.path().join("s.json"), spec).unwrap();
    let o = lsa(dir.path(), &["classify", "s.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("case 4"), "{}", stdout(&o));
    let o = lsa(dir.path(), &["identify", "s.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("a4:0\n"), "{}", stdout(&o));
    let o = lsa(dir.path(), &["construct", "--spec", "s.json", "-o", "a.json"]);
    assert_eq!(code(&o), 0);
    let o = lsa(dir.path(), &["identify", "a.json"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("a4:0\n"), "{}", stdout(&o));
}

#[test]
fn construct_inner_product_and_pair() {
    let dir = TempDir::new().unwrap();
    let o = lsa(dir.path(), &["construct", "--inner-product", "1,0,0", "-o", "ip.json"]);
    assert_eq!(code(&o), 0);
    let o = lsa(dir.path(), &["identify", "ip.json"]);
    assert!(stdout(&o).starts_with("a3.1"), "{}", stdout(&o));
    let o = lsa(dir.path(), &["construct", "--pair", "1,0", "1,1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("left-symmetric: false"));
}

#[test]
fn r_matrix_on_lie24() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "lie24", "3", "lie.json");
    let o = lsa(dir.path(), &["rmatrix-verify", "lie.json", "--r", "3,0,0;0,0,0;0,0,0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "r-matrix: true");
    let o = lsa(dir.path(), &["--json", "rmatrix-lsa", "lie.json", "--r", "3,0,0;0,0,0;0,0,0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["catalog"], "a4:0");
    let o = lsa(dir.path(), &["rmatrix-verify", "lie.json", "--r", "1,0,0;0,1,0;0,0,1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn input_errors_exit_two_with_one_line() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("dup.json"), r#"{"dim": 2, "structure": [[1,1,1,"1"],[1,1,1,"1"]]}"#).unwrap();
    for args in [
        &["verify", "missing.json"][..],
        &["verify", "dup.json"],
        &["catalog-gen", "a9", "--dim", "2"],
        &["catalog-gen", "a4:2", "--dim", "2"],
        &["iso", "dup.json"],
        &["frobnicate"],
    ] {
        let o = lsa(dir.path(), args);
        assert_eq!(code(&o), 2, "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn burgers_writes_csv() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "a2", "2", "a.json");
    let ic = r#"[[{"type": "sin", "amplitude": 0.1, "wavenumber": 1}], [{"type": "const", "amplitude": 0.5}]]"#;
    std::fs::write(dir.path().join("ic.json"), ic).unwrap();
    let run = |dt: &str, extra: &[&str]| {
        let base = ["burgers", "a.json", "--ic", "ic.json", "--grid", "8", "--t-max", "0.004", "--stride", "2", "--dt", dt];
        lsa(dir.path(), &[&base[..], extra].concat())
    };
    let o = run("0.001", &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "t,x,u1,u2");
    // Samples at t = 0, 0.002, 0.004 on 8 points.
    assert_eq!(rows.len(), 1 + 3 * 8);
    assert!(rows[1].starts_with("0.0000000000000000e0,0.0000000000000000e0,"));

    // dx = 1/8, so the bound is 0.2/64 = 0.003125.
    let o = run("0.004", &[]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("stability bound"));

    let o = run("0.001", &["--complex", "-o", "u.csv"]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(dir.path().join("u.csv")).unwrap();
    assert!(csv.starts_with("t,x,u1_re,u1_im,u2_re,u2_im\n"));
}

#[test]
fn catalog_listing_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = stdout(&lsa(dir.path(), &["catalog-list", "--dim", "3"]));
    let b = stdout(&lsa(dir.path(), &["catalog-list", "--dim", "3"]));
    assert_eq!(a, b);
    assert!(a.lines().any(|l| l == "a3.3:1"));
    assert!(a.lines().any(|l| l == "lie24"));
}
