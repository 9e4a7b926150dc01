use cohstate::cli::run;

fn ok(args: &[&str]) -> String {
    let out = run(std::iter::once("cohstate").chain(args.iter().copied()));
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn glauber_vacuum_probability() {
    let csv = ok(&["coeffs", "--family", "glauber", "--alpha", "1+0i", "--nmax", "30", "--output", "csv"]);
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "0");
    let p0: f64 = row[3].parse().unwrap();
    assert!((p0 - (-1.0f64).exp()).abs() < 1e-15);
}

#[test]
fn spin_half_filling() {
    let csv = ok(&["coeffs", "--family", "spin", "--nj", "2", "--alpha", "1", "--output", "csv"]);
    let p: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
    for (a, b) in p.iter().zip([0.25, 0.5, 0.25]) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn exit_codes() {
    let domain = run(["cohstate", "coeffs", "--family", "su11", "--kappa", "1", "--alpha", "1.2"]);
    assert_eq!(domain.code, 2);
    let weight = run(["cohstate", "verify", "--suite", "gram", "--family", "qdeformed", "--q", "1.5"]);
    assert_eq!(weight.code, 2);
    assert!(weight.stderr.contains("unsupported"), "{}", weight.stderr);
    let trunc = run(["cohstate", "coeffs", "--family", "glauber", "--alpha", "6", "--nmax", "10"]);
    assert_eq!(trunc.code, 3);
    let parse = run(["cohstate", "coeffs", "--family", "nope", "--alpha", "1"]);
    assert_eq!(parse.code, 2);
}

#[test]
fn stats_classification() {
    let json = ok(&["stats", "--family", "su11", "--kappa", "0.5", "--alpha", "0.6", "--eta", "1"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let text = v.to_string();
    assert!(text.contains("super_poissonian"), "{text}");
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sample.csv");
    let args = ["sample", "--family", "glauber", "--alpha", "1.1", "--eta", "0.5", "--shots", "20000", "--seed", "3", "--output", "csv"];
    let stdout = ok(&args);
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    ok(&with_out);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
}

#[test]
fn seeds_change_samples() {
    let base = ["sample", "--family", "glauber", "--alpha", "1", "--eta", "1", "--shots", "5000"];
    let a = ok(&[&base[..], &["--seed", "1"]].concat());
    let b = ok(&[&base[..], &["--seed", "2"]].concat());
    assert_ne!(a, b);
    assert_eq!(a, ok(&[&base[..], &["--seed", "1"]].concat()));
}

#[test]
fn verify_suites_pass() {
    for suite in ["normalization", "moments", "gram", "quantizer"] {
        ok(&["verify", "--suite", suite, "--family", "barut-girardello", "--kappa", "1"]);
    }
}

#[test]
fn quantize_generators() {
    let json = ok(&["quantize", "--family", "spin", "--nj", "6", "--generators", "su2", "--alpha", "0.7+0.2i"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true), "{json}");
}
