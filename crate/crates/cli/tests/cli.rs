use fano_hilbert_cli::run;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn call(args: &[&str], stdin: &str) -> Out {
    let mut argv = vec!["fano-hilbert"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Out { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn json(args: &[&str], stdin: &str) -> serde_json::Value {
    let mut a = vec!["--format", "json"];
    a.extend_from_slice(args);
    let o = call(&a, stdin);
    assert_eq!(o.code, 0, "{}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

#[test]
fn del_pezzo_with_check_and_curve() {
    let o = call(&["family", "--kind", "delpezzo", "--n", "3", "--d", "7", "--check", "--curve", "--r", "1"], "");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("Delta = 4/7"));
    assert!(o.stdout.contains("totally reducible over Q: false"));
    assert!(o.stdout.contains("  y-2x+1=0\n"));
    let j = json(&["family", "--kind", "delpezzo", "--n", "3", "--d", "7", "--check", "--curve"], "");
    assert_eq!(j["values"][0]["value"], "4/7");
    assert_eq!(j["report"]["q_verdict"], false);
    assert_eq!(j["curve"]["q_lines"][0]["equation"], "y-2x+1=0");
    assert_eq!(j["structure"]["serre_symmetric"], true);
}

#[test]
fn from_h0_recovers_the_bundle_polynomial() {
    let j = json(&["from-h0", "--n", "3", "--iota", "2", "--h0", "1,9,31", "--check"], "");
    assert_eq!(j["polynomial"]["r_factor"], serde_json::json!(["1", "7/3", "7/6"]));
    assert_eq!(j["r_factored"], "(1/6)(7*z^2 + 14*z + 6)");
    assert_eq!(j["report"]["q_verdict"], false);
}

#[test]
fn scan_csv_rows() {
    let o = call(&["scan-bundles", "--min", "2", "--max", "10", "--format", "csv"], "");
    assert_eq!(o.code, 0);
    let rows: Vec<&str> = o.stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.split(',').nth(1) == Some("false")));
}

#[test]
fn scan_output_is_identical_across_worker_counts() {
    let a = call(&["scan-bundles", "--max", "12", "--workers", "1", "--format", "json"], "");
    let b = call(&["scan-bundles", "--max", "12", "--workers", "3", "--format", "json"], "");
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout.lines().count(), 11);
    let first: serde_json::Value = serde_json::from_str(a.stdout.lines().next().unwrap()).unwrap();
    assert_eq!(first["rational_roots_of_R"], serde_json::json!([]));
}

#[test]
fn scan_evidence_table() {
    let o = call(&["scan-bundles", "--max", "9", "--evidence"], "");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("no deviations"));
    assert!(o.stdout.contains("{-9/2}"));
}

#[test]
fn check_reads_stdin() {
    let j = json(&["check"], r#"{"n": 2, "iota": 3, "coeffs": ["1", "3/2", "1/2"]}"#);
    assert_eq!(j["report"]["q_verdict"], true);
    assert_eq!(j["structure"]["h0_round_trip"], true);
    let j = json(&["check"], r#"[2, 3, 1]"#);
    assert_eq!(j["distinct_real_roots"], 2);
    let o = call(&["check"], r#"{"n": 2, "iota": 3, "coeffs": ["2", "3/2", "1/2"]}"#);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("P(0)"));
    let o = call(&["check"], "not json");
    assert_eq!(o.code, 1);
}

#[test]
fn curve_points() {
    let o = call(&["curve", "--emit-points", "--samples", "3", "--x-min", "0", "--x-max", "1"], r#"{"n":2,"iota":2,"coeffs":[1,2,1]}"#);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "x,y,line\n0,-1,q1\n0.5,0,q1\n1,1,q1\n");
    let j = json(&["curve", "--r", "2"], r#"{"n":2,"iota":2,"coeffs":[1,2,1]}"#);
    assert_eq!(j["q_lines"][0]["equation"], "2y-2x+1=0");
    assert_eq!(j["q_lines"][0]["multiplicity"], 2);
    let family = call(&["--format", "json", "family", "--kind", "pn", "--n", "2"], "");
    let piped = json(&["curve"], &family.stdout);
    assert_eq!(piped["q_lines"].as_array().unwrap().len(), 2);
}

#[test]
fn catalog_report() {
    let o = call(&["catalog", "--dim", "4"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("fourfold/N.12"));
    assert!(o.stdout.contains("alpha=4 beta^2=1/25 beta=1/5 gamma^2=0 gamma=0"));
    let j = json(&["catalog", "--dim", "2"], "");
    assert_eq!(j["rows"].as_array().unwrap().len(), 4);
    let csv = call(&["catalog", "--dim", "3", "--format", "csv"], "");
    assert!(csv.stdout.lines().next().unwrap().starts_with("id,dim,iota"));
}

#[test]
fn catalog_from_file_flags_integrity_failures() {
    let dir = std::env::temp_dir().join(format!("fano-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.csv");
    std::fs::write(
        &path,
        "dim,id,description,b2,variant,v1,v2,expected_q,expected_r,provenance\n\
         2,x,claimed split,,surface,7,1,true,,made up\n",
    )
    .unwrap();
    let o = call(&["catalog", "--file", path.to_str().unwrap()], "");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("integrity"));
    let o = call(&["catalog", "--file", dir.join("missing.csv").to_str().unwrap()], "");
    assert_eq!(o.code, 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn strip_and_precision() {
    let j = json(&["family", "--kind", "qn", "--n", "3", "--strip", "--precision", "512"], "");
    let roots = j["strip"]["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 3);
    assert!(roots.iter().all(|r| r["status"] == "inside"));
    let o = call(&["family", "--kind", "pn", "--n", "2", "--strip", "--tol", "0"], "");
    assert_eq!(o.code, 1);
    let o = call(&["family", "--kind", "pn", "--n", "2", "--strip", "--tol", "abc"], "");
    assert_eq!(o.code, 2);
}

#[test]
fn family_kinds() {
    let cases: &[&[&str]] = &[
        &["--kind", "pn", "--n", "4"],
        &["--kind", "qn", "--n", "4"],
        &["--kind", "mukai", "--n", "5", "--genus", "10"],
        &["--kind", "surface", "--k2", "8", "--iota", "2"],
        &["--kind", "threefold", "--k3", "54", "--iota", "1"],
        &["--kind", "fourfold", "--k", "400", "--h", "196"],
        &["--kind", "bundle13", "--m", "3"],
        &["--kind", "bundle2", "--m", "3"],
    ];
    for c in cases {
        let mut a = vec!["family"];
        a.extend_from_slice(c);
        a.push("--check");
        let j = json(&a, "");
        assert_eq!(j["structure"]["p0_is_one"], true, "{c:?}");
    }
    let j = json(&["family", "--kind", "delpezzo", "--n", "3", "--d", "9"], "");
    assert!(j["warnings"][0].as_str().unwrap().contains("d ≤ 8"));
    let csv = call(&["family", "--kind", "pn", "--n", "2", "--check", "--format", "csv"], "");
    assert!(csv.stdout.contains("q_verdict,true"));
}

#[test]
fn exit_codes() {
    assert_eq!(call(&[], "").code, 2);
    assert_eq!(call(&["family", "--kind", "nope"], "").code, 2);
    assert_eq!(call(&["family", "--kind", "delpezzo", "--n", "3"], "").code, 2);
    assert_eq!(call(&["scan-bundles", "--min", "5", "--max", "3"], "").code, 2);
    assert_eq!(call(&["family", "--kind", "threefold", "--k3", "54", "--iota", "9"], "").code, 1);
    assert_eq!(call(&["family", "--kind", "fourfold", "--k", "-3", "--h", "1"], "").code, 1);
    let help = call(&["--help"], "");
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("scan-bundles"));
}

#[test]
fn json_is_stable_across_runs() {
    let args = ["family", "--kind", "mukai", "--n", "6", "--d", "16", "--check", "--curve"];
    let a = call(&[&["--format", "json"][..], &args[..]].concat(), "");
    let b = call(&[&["--format", "json"][..], &args[..]].concat(), "");
    assert_eq!(a.stdout, b.stdout);
    let j: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    let keys: Vec<&str> = j.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["kind", "polynomial", "degree_hn", "r_factored", "values", "warnings", "report", "structure", "curve", "strip"] {
        assert!(keys.contains(&k), "{k}");
    }
}
