use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use sha2::{Digest, Sha256};

const BIN: &str = env!("CARGO_BIN_EXE_lefschetz");

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("LEFSCHETZ_WORKERS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let r = run(&full);
    let v = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}{}", r.stdout, r.stderr));
    (r.code, v)
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

fn validate(schema_name: &str, instance: &Value) {
    let text = std::fs::read_to_string(schema_dir().join(format!("{schema_name}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap_or_else(|e| panic!("{schema_name}: {e}"));
    let errors: Vec<String> = v
        .iter_errors(instance)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:#?}\n{instance:#}");
}

fn sha(s: &str) -> String {
    format!("{:x}", Sha256::digest(s.as_bytes()))
}

fn zeros(n: usize) -> String {
    vec!["0"; n].join(",")
}

/// One invocation per command with its expected exit code.
fn invocations() -> Vec<(&'static str, Vec<String>, i32)> {
    let k3 = zeros(22);
    let cases: Vec<(&str, Vec<&str>, i32)> = vec![
        ("manifold-check", vec!["manifold-check", "catalog:k3"], 0),
        (
            "gromov",
            vec![
                "gromov",
                "catalog:s2xs2",
                "--class",
                "0,0",
                "--h0",
                "1",
                "--h0-dual",
                "0",
            ],
            0,
        ),
        (
            "gromov",
            vec![
                "gromov",
                "catalog:k3",
                "--class",
                &k3,
                "--h0",
                "1",
                "--h0-dual",
                "1",
                "--r",
                "2",
            ],
            0,
        ),
        (
            "gromov",
            vec![
                "gromov",
                "catalog:t4",
                "--class",
                "0,0,0,0,0,0",
                "--h0",
                "1",
                "--h0-dual",
                "1",
            ],
            2,
        ),
        (
            "duality",
            vec!["duality", "catalog:k3", "--class", &k3, "--h0", "1", "--h0-dual", "1"],
            0,
        ),
        // h^2(K) = 1 < r + 1: outside the range where the identity holds
        (
            "duality",
            vec!["duality", "catalog:cp2", "--class", "0", "--h0", "1", "--h0-dual", "0"],
            1,
        ),
        ("pencil", vec!["pencil", "catalog:cp2", "--k", "7", "--class", "1"], 0),
        ("pencil", vec!["pencil", "catalog:k3", "--k", "2"], 0),
        ("count", vec!["count", "catalog:cp2", "--class", "1"], 0),
        ("count", vec!["count", "catalog:cp2", "--class", "-1"], 0),
        (
            "count",
            vec!["count", "catalog:k3", "--class", &k3, "--h0", "1", "--h0-dual", "1"],
            0,
        ),
        ("bn", vec!["bn", "--g", "6", "--r", "3", "--s", "1"], 0),
        ("aj-fibres", vec!["aj-fibres", "--g", "4", "--r", "6"], 0),
        (
            "hilb",
            vec![
                "hilb",
                "--r",
                "2",
                "--samples",
                "10",
                "--stratum",
                "b1zero",
                "--outcomes",
            ],
            0,
        ),
        (
            "hilb",
            vec!["hilb", "--r", "2", "--samples", "10", "--stratum", "absolute-cyclic"],
            0,
        ),
        ("classify", vec!["classify", "catalog:cp2_8"], 0),
        ("classify", vec!["classify", "catalog:k3x3"], 1),
    ];
    cases
        .into_iter()
        .map(|(c, a, code)| (c, a.into_iter().map(String::from).collect(), code))
        .collect()
}

#[test]
fn every_report_matches_its_schema() {
    for (schema, args, code) in invocations() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        if code == 2 {
            let r = run(&args);
            assert_eq!(r.code, 2, "{args:?}");
            assert!(r.stderr.starts_with("error:"), "{args:?}: {}", r.stderr);
            assert!(r.stdout.is_empty());
            continue;
        }
        let (got, v) = json(&args);
        assert_eq!(got, code, "{args:?}: {v:#}");
        assert_eq!(v["command"], schema);
        assert_eq!(v["schema_version"], 1);
        assert!(!v["citations"].as_array().unwrap().is_empty(), "{args:?} cites nothing");
        validate(schema, &v);
    }
}

#[test]
fn kernel_certification_example() {
    let (code, v) = json(&[
        "hilb",
        "--r",
        "3",
        "--samples",
        "50",
        "--seed",
        "7",
        "--stratum",
        "singular",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["expected_dim"], 10);
    assert_eq!(v["kernel_dims_observed"]["10"], 50);
}

#[test]
fn plane_count_from_catalog_and_from_file() {
    let (code, v) = json(&["count", "catalog:cp2", "--class", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["kind"], "PlusMinusOne");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp2.json");
    std::fs::copy(data_dir().join("cp2.json"), &path).unwrap();
    let (code, w) = json(&["count", path.to_str().unwrap(), "--class", "1"]);
    assert_eq!(code, 0);
    assert_eq!(w, v);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"label\": \"x\", \"Q\": [[1]").unwrap();
    let bad = bad.to_str().unwrap();
    let missing = dir.path().join("missing.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["manifold-check", bad],
        vec!["count", bad, "--class", "1"],
        vec!["manifold-check", missing.to_str().unwrap()],
        vec!["manifold-check", "catalog:nope"],
        vec!["count", "catalog:cp2", "--class", "1,0"],
        vec!["count", "catalog:cp2", "--class", "x"],
        vec!["pencil", "catalog:cp2", "--k", "0"],
        vec!["bn", "--g", "1", "--r", "2", "--s", "1"],
        vec!["hilb", "--r", "0"],
        vec!["hilb", "--r", "2", "--stratum", "singular:5,5"],
        vec!["hilb", "--r", "2", "--stratum", "warped"],
        vec!["frobnicate"],
        vec![],
    ];
    for args in cases {
        let r = run(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stdout);
        assert!(r.stdout.is_empty(), "{args:?}");
        assert!(!r.stderr.is_empty(), "{args:?}");
    }
    let r = run(&["frobnicate"]);
    assert!(r.stderr.contains("Usage"), "{}", r.stderr);
}

#[test]
fn invalid_lattice_is_a_check_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad_k.json");
    // K = 2h is not characteristic on the odd form <1>
    std::fs::write(
        &path,
        r#"{"label": "bad", "b1": 0, "Q": [[1]], "K": [2], "omega": [1], "minimal": true}"#,
    )
    .unwrap();
    let (code, v) = json(&["manifold-check", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["valid"], false);
    validate("manifold-check", &v);
}

#[test]
fn bundled_files_match_the_manifold_schema() {
    let text = std::fs::read_to_string(schema_dir().join("manifold.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let v = jsonschema::validator_for(&schema).unwrap();
    let mut n = 0;
    for entry in std::fs::read_dir(data_dir()).unwrap() {
        let path = entry.unwrap().path();
        let m: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(v.is_valid(&m), "{}", path.display());
        let (code, _) = json(&["manifold-check", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{}", path.display());
        n += 1;
    }
    assert!(n >= 10);
    let float_omega: Value =
        serde_json::json!({"label": "x", "b1": 0, "Q": [[1]], "K": [-3], "omega": [0.5], "minimal": true});
    assert!(!v.is_valid(&float_omega));
}

#[test]
fn repeated_runs_hash_identically() {
    for (_, args, code) in invocations() {
        if code == 2 {
            continue;
        }
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let mut full = vec!["--format", "json", "--seed", "99"];
        full.extend_from_slice(&args);
        let a = run(&full);
        let b = run(&full);
        assert_eq!(sha(&a.stdout), sha(&b.stdout), "{args:?}");
        let t = run(&args);
        let u = run(&args);
        assert_eq!(sha(&t.stdout), sha(&u.stdout), "{args:?}");
    }
}

#[test]
fn every_seed_certifies() {
    let base = [
        "--format",
        "json",
        "hilb",
        "--r",
        "2",
        "--samples",
        "8",
        "--stratum",
        "singular",
        "--outcomes",
    ];
    let a = run_env(&[&base[..], &["--seed", "1"]].concat(), &[]);
    let b = run_env(&[&base[..], &["--seed", "2"]].concat(), &[]);
    let a: Value = serde_json::from_str(&a.stdout).unwrap();
    let b: Value = serde_json::from_str(&b.stdout).unwrap();
    assert_eq!((a["seed"].clone(), b["seed"].clone()), (1.into(), 2.into()));
    assert_eq!(a["failures"], 0);
    assert_eq!(b["failures"], 0);
}

#[test]
fn worker_count_does_not_change_output() {
    let args = [
        "--format",
        "json",
        "hilb",
        "--r",
        "3",
        "--samples",
        "40",
        "--stratum",
        "singular",
        "--outcomes",
    ];
    let one = run_env(&args, &[("LEFSCHETZ_WORKERS", "1")]);
    let four = run_env(&args, &[("LEFSCHETZ_WORKERS", "4")]);
    let default = run_env(&args, &[]);
    assert_eq!(one.code, 0);
    assert_eq!(sha(&one.stdout), sha(&four.stdout));
    assert_eq!(sha(&one.stdout), sha(&default.stdout));
    let v: Value = serde_json::from_str(&one.stdout).unwrap();
    let idx: Vec<u64> = v["outcomes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["index"].as_u64().unwrap())
        .collect();
    assert_eq!(idx, (0..40).collect::<Vec<_>>());

    let bad = run_env(&args, &[("LEFSCHETZ_WORKERS", "many")]);
    assert_eq!(bad.code, 2);
}

#[test]
fn default_seed_is_used_and_reported() {
    let (_, v) = json(&["hilb", "--r", "1", "--samples", "2"]);
    assert_eq!(v["seed"], 1729);
    assert_eq!(v["stratum"], "smooth");
}

#[test]
fn text_output_renders_the_same_fields() {
    let r = run(&["count", "catalog:cp2", "--class", "1"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("kind: PlusMinusOne"), "{}", r.stdout);
    let (_, v) = json(&["count", "catalog:cp2", "--class", "1"]);
    for key in v.as_object().unwrap().keys() {
        assert!(r.stdout.contains(&format!("{key}:")), "{key} missing from text output");
    }
}

#[test]
fn classify_with_class_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("classes.json");
    std::fs::write(&path, "[[1], [-1], [3]]").unwrap();
    let (code, v) = json(&["classify", "catalog:cp2", "--classes", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    validate("classify", &v);
    let names: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["check_name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"count_decision(1)"));
    assert!(names.contains(&"count_decision(-1)"));
    assert!(names.contains(&"count_decision(3)"));

    std::fs::write(&path, "[[1, 2]]").unwrap();
    assert_eq!(
        run(&["classify", "catalog:cp2", "--classes", path.to_str().unwrap()]).code,
        2
    );
    std::fs::write(&path, "{}").unwrap();
    assert_eq!(
        run(&["classify", "catalog:cp2", "--classes", path.to_str().unwrap()]).code,
        2
    );
}

#[test]
fn triple_k3_minimality_failure_on_the_command_line() {
    let (code, v) = json(&["classify", "catalog:k3x3"]);
    assert_eq!(code, 1);
    let m = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check_name"] == "minimality_inequality")
        .unwrap();
    assert_eq!(m["verdict"], "fail");
    assert_eq!(m["numbers"]["two_e_plus_3sigma"], -8);
}

#[test]
fn duality_report_pairs_the_classes() {
    let k3 = zeros(22);
    let (code, v) = json(&[
        "duality",
        "catalog:k3",
        "--class",
        &k3,
        "--h0",
        "1",
        "--h0-dual",
        "1",
        "--r",
        "1",
    ]);
    assert_eq!(code, 0, "{v:#}");
    assert_eq!(v["holds"], true);
    assert_eq!(v["dual_class"], v["class"]);
    validate("duality", &v);
}

#[test]
fn schemas_reject_tampered_reports() {
    let (_, v) = json(&["count", "catalog:cp2", "--class", "1"]);
    let text = std::fs::read_to_string(schema_dir().join("count.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap();
    assert!(validator.is_valid(&v));

    let mut extra = v.clone();
    extra["surprise"] = true.into();
    let mut missing = v.clone();
    missing.as_object_mut().unwrap().remove("rule");
    let mut wrong_kind = v.clone();
    wrong_kind["verdict"]["kind"] = "Maybe".into();
    let mut float = v.clone();
    float["numbers"]["a_dot_omega"] = 1.5.into();
    for bad in [extra, missing, wrong_kind, float] {
        assert!(!validator.is_valid(&bad), "{bad:#}");
    }
}
