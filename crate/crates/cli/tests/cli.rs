use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn twodist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twodist"))
        .args(args)
        .env_remove("TWODIST_TOL")
        .env_remove("TWODIST_MAX_N")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON object")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

#[test]
fn analyze_square() {
    let v = json(&twodist(&["analyze", "C]"]));
    assert_eq!((v["dim_e"].as_u64(), v["dim_s"].as_u64(), v["dim_j"].as_u64()), (Some(2), Some(2), Some(2)));
    assert_eq!(v["tau1"], serde_json::json!([2.0, 2.0]));
    assert_eq!(v["mu"], 1);
    assert_eq!(v["r_squared"], "1/2");
    assert_eq!(v["beta_star"], "sqrt(2*tau1)");
}

#[test]
fn analyze_pentagon() {
    let v = json(&twodist(&["analyze", "Dhc"]));
    assert_eq!((v["dim_e"].as_u64(), v["dim_s"].as_u64(), v["dim_j"].as_u64()), (Some(2), Some(2), Some(4)));
    let r = v["r_squared"].as_array().unwrap();
    let target = (5.0 + 5f64.sqrt()) / 10.0;
    assert!(r[0].as_f64().unwrap() <= target && target <= r[1].as_f64().unwrap());
    let t = v["tau1"].as_array().unwrap();
    assert!(t[0].as_f64().unwrap() <= t[1].as_f64().unwrap());
}

#[test]
fn analyze_triangle() {
    let v = json(&twodist(&["analyze", "Bw"]));
    assert_eq!(v["dim_j"], Value::Null);
    assert_eq!(v["tau1"], "inf");
    assert_eq!((v["dim_e"].as_u64(), v["dim_s"].as_u64()), (Some(2), Some(2)));
}

#[test]
fn analyze_edge_list_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# a path\n3\n0 1\n1 2").unwrap();
    let path = f.path().to_str().unwrap();
    let v = json(&twodist(&["analyze", "--format", "edgelist", path]));
    assert_eq!(v["n"], 3);
    assert_eq!(v["tau1"], serde_json::json!([4.0, 4.0]));
}

#[test]
fn exit_codes() {
    assert_eq!(twodist(&["analyze", "G~"]).status.code(), Some(2));
    assert_eq!(twodist(&["analyze", "--max-n", "4", "Dhc"]).status.code(), Some(3));
    assert_eq!(twodist(&["embed", "A_", "--model", "jspherical"]).status.code(), Some(6));
    assert_eq!(twodist(&["embed", "Bg", "--b", "3"]).status.code(), Some(5));
    assert_eq!(twodist(&["catalog", "--max-n", "9"]).status.code(), Some(3));
    assert_eq!(twodist(&["batch", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn environment_sets_limit_and_flag_wins() {
    let run = |env: &str, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_twodist"));
        c.args(["analyze", "Dhc"]).args(extra).env("TWODIST_MAX_N", env);
        c.output().unwrap().status.code()
    };
    assert_eq!(run("4", &[]), Some(3));
    assert_eq!(run("4", &["--max-n", "5"]), Some(0));
}

fn dist(a: &Value, b: &Value) -> f64 {
    let (a, b) = (a.as_array().unwrap(), b.as_array().unwrap());
    a.iter().zip(b).map(|(x, y)| (x.as_f64().unwrap() - y.as_f64().unwrap()).powi(2)).sum::<f64>().sqrt()
}

#[test]
fn embed_octahedron() {
    let v = json(&twodist(&["embed", "E}lw", "--model", "jspherical"]));
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 6);
    assert_eq!(v["dimension"], 3);
    for p in pts {
        assert!((dist(p, &serde_json::json!([0.0, 0.0, 0.0])) - 1.0).abs() < 1e-9);
    }
    assert!((v["b"].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn embed_path_is_collinear() {
    let v = json(&twodist(&["embed", "Bg", "--model", "euclidean"]));
    assert_eq!(v["dimension"], 1);
    let pts = v["points"].as_array().unwrap();
    let d: Vec<f64> = [(0, 1), (1, 2), (0, 2)].iter().map(|&(i, j)| dist(&pts[i], &pts[j])).collect();
    assert!((d[0] + d[1] - d[2]).abs() < 1e-9 || (d[0] + d[2] - d[1]).abs() < 1e-9 || (d[1] + d[2] - d[0]).abs() < 1e-9);
}

#[test]
fn embed_pentagon_spherical() {
    let v = json(&twodist(&["embed", "Dhc", "--model", "spherical"]));
    assert_eq!(v["dimension"], 2);
    let r = v["radius"].as_f64().unwrap();
    assert!((r * r - (5.0 + 5f64.sqrt()) / 10.0).abs() < 1e-9);
}

#[test]
fn decompose_square() {
    let v = json(&twodist(&["decompose", "C]"]));
    assert_eq!(v["k"], 2);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
    assert_eq!(v["point_factorization"]["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn batch_keeps_order_and_reports_errors() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    let census: Vec<String> = {
        let out = twodist(&["catalog", "--min-n", "5", "--max-n", "5"]);
        lines(&out).iter().map(|v| v["input"].as_str().unwrap().to_string()).collect()
    };
    assert_eq!(census.len(), 34);
    let mut words = census.clone();
    words.reverse();
    words.insert(7, "not graph6".into());
    writeln!(f, "{}", words.join("\n")).unwrap();
    let path = f.path().to_str().unwrap();
    let a = twodist(&["batch", path, "--jobs", "3"]);
    let recs = lines(&a);
    assert_eq!(recs.len(), 35);
    assert_eq!(recs.iter().filter(|r| r.get("error").is_some()).count(), 1);
    let got: Vec<&str> = recs.iter().map(|r| r["input"].as_str().unwrap()).collect();
    assert_eq!(got, words.iter().map(String::as_str).collect::<Vec<_>>());
    let b = twodist(&["batch", path, "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn batch_csv_and_empty() {
    let f = tempfile::NamedTempFile::new().unwrap();
    let out = twodist(&["batch", f.path().to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let mut g = tempfile::NamedTempFile::new().unwrap();
    writeln!(g, "C]\nDhc").unwrap();
    let out = twodist(&["batch", g.path().to_str().unwrap(), "--output", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("input,n,dim_e,dim_s,dim_j,tau1,mu,r_squared,beta_star,factors,error"));
}

#[test]
fn catalog_filters() {
    let de2 = lines(&twodist(&["catalog", "--max-n", "5", "--filter", "dim_e=2"]));
    // Catalog words are canonical, so match the pentagon and the square by their invariants.
    let like = |w: &str| {
        let v = json(&twodist(&["analyze", w]));
        de2.iter().any(|r| ["n", "dim_s", "dim_j", "tau1", "r_squared", "factors"].iter().all(|k| r[k] == v[k]))
    };
    assert!(like("Dhc") && like("C]"));
    let cliques = lines(&twodist(&["catalog", "--min-n", "4", "--max-n", "4", "--filter", "dim_e=n-1"]));
    assert_eq!(cliques.len(), 5);
    let half = lines(&twodist(&["catalog", "--min-n", "6", "--max-n", "6", "--filter", "dim_j=n/2"]));
    assert_eq!(half.len(), 1);
    assert_eq!(half[0]["factors"].as_array().unwrap().len(), 3);
}

#[test]
fn catalog_counts() {
    let counts: Vec<usize> = (1..=6)
        .map(|n| lines(&twodist(&["catalog", "--min-n", &n.to_string(), "--max-n", &n.to_string()])).len())
        .collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
}

#[test]
fn verify_runs() {
    let out = twodist(&["verify", "Dhc"]);
    assert!(out.status.success());
    let rep = &lines(&out)[0];
    assert!(rep["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let out = twodist(&["verify", "--census", "4"]);
    assert!(out.status.success());
    assert_eq!(lines(&out).len(), 1 + 2 + 4 + 11);
}
