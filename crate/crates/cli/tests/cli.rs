use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qdrive(args: &[&str], root: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdrive"))
        .args(args)
        .env("QDRIVE_OUT_ROOT", root)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn summary(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

fn distances(v: &Value) -> Vec<(String, f64)> {
    v["distances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let worst = c["distance_to_hamiltonian"]
                .as_array()
                .unwrap()
                .iter()
                .map(|d| d.as_f64().unwrap())
                .fold(0.0, f64::max);
            (c["scheme"].as_str().unwrap().to_string(), worst)
        })
        .collect()
}

const SMALL: &str = r#"
schemes = ["hamiltonian", "S1", "S2"]
t_end = 1.0
samples = 5
[grid]
k_min = -12.0
k_max = 12.0
n = 256
"#;

#[test]
fn default_strict_run_writes_three_files() {
    let tmp = tempfile::tempdir().unwrap();
    let out = qdrive(&["--strict"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let dir = tmp.path().join("default");
    for f in ["densities.csv", "moments.csv", "summary.json"] {
        assert!(dir.join(f).is_file(), "missing {f}");
    }
    // the S3 compression forces a wider grid on the default range
    assert!(String::from_utf8_lossy(&out.stderr).contains("extended to"));
    let head = fs::read_to_string(dir.join("moments.csv")).unwrap();
    assert!(head.starts_with("t,scheme,mean_x,mean_v,sigma_x,sigma_v,norm"));
}

#[test]
fn free_particle_strict_run_collapses_all_schemes() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "free.toml", "[params]\nA = 0.0\n");
    let out = qdrive(&["--config", &cfg, "--strict"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = summary(&tmp.path().join("free"));
    for (scheme, d) in distances(&s) {
        assert!(d <= 1e-8, "{scheme}: {d:e}");
    }
}

#[test]
fn free_particle_strict_run_s1_s2() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "free.toml", &format!("{SMALL}\n[params]\nA = 0.0\n"));
    let out = qdrive(&["--config", &cfg, "--strict"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = summary(&tmp.path().join("free"));
    assert_eq!(s["passed"], Value::Bool(true));
    let d = distances(&s);
    assert_eq!(d.len(), 3);
    for (scheme, d) in d {
        assert!(d <= 1e-8, "{scheme}: {d:e}");
    }
}

#[test]
fn narrow_grid_for_s3_warns_or_aborts() {
    let tmp = tempfile::tempdir().unwrap();
    let body = "schemes = [\"hamiltonian\", \"S3\"]\nt_end = 1.0\nsamples = 3\n[grid]\nk_min = -4.0\nk_max = 4.0\nn = 128\n";
    let cfg = write(tmp.path(), "s3.toml", body);
    let out = qdrive(&["--config", &cfg], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: grid [-4, 4]"));

    let out = qdrive(&["--config", &cfg, "--no-auto-extend"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not hold"));
}

#[test]
fn bad_documents_name_the_offending_key() {
    let tmp = tempfile::tempdir().unwrap();
    let cases = [
        ("unknown.toml", "schemes = [\"S4\"]\n", "S4"),
        ("typo.toml", "[params]\nomgea = 1.0\n", "omgea"),
        ("neg.toml", "[packet]\nsigma_k = -1.0\n", "packet.sigma_k"),
        ("bad.json", "{\"samples\": 1}", "samples"),
    ];
    for (name, body, key) in cases {
        let cfg = write(tmp.path(), name, body);
        let out = qdrive(&["--config", &cfg], tmp.path());
        assert_eq!(out.status.code(), Some(2), "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(key), "{name}: {err}");
    }
    let out = qdrive(&["--scheme", "S4"], tmp.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("S4"));
}

#[test]
fn runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "small.toml", SMALL);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for dir in [&a, &b] {
        let out = qdrive(&["--config", &cfg, "--out-dir", dir.to_str().unwrap()], tmp.path());
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for f in ["densities.csv", "moments.csv", "summary.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn scheme_flag_overrides_the_document() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "small.toml", SMALL);
    let out = qdrive(&["--config", &cfg, "--scheme", "hamiltonian", "--scheme", "S1"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = summary(&tmp.path().join("small"));
    let names: Vec<String> = distances(&s).into_iter().map(|(n, _)| n).collect();
    assert_eq!(names, ["hamiltonian", "S1"]);
    let dens = fs::read_to_string(tmp.path().join("small/densities.csv")).unwrap();
    assert!(!dens.contains(",S2,"));
}

#[test]
fn audit_flag_prints_deviations() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "small.toml", SMALL);
    let out = qdrive(&["--config", &cfg, "--audit"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("S2/paper_printed"));
    assert!(stdout.contains("audit hamiltonian_endpoint_phase"));
}

#[test]
fn out_dir_from_document() {
    let tmp = tempfile::tempdir().unwrap();
    let target = tmp.path().join("chosen");
    let body = format!("output_dir = {:?}\n{SMALL}", target.to_str().unwrap());
    let cfg = write(tmp.path(), "small.toml", &body);
    let out = qdrive(&["--config", &cfg], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(target.join("summary.json").is_file());
    assert!(!tmp.path().join("small").exists());
}
