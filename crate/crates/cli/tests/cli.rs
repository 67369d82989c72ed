use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperheat"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run_ok(args)).unwrap()
}

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "null" => v.is_null(),
        other => panic!("unknown schema type {other}"),
    }
}

/// Subset of JSON Schema: `type`, `const`, `enum`, `required`, `properties`, `items`.
fn validate(schema: &Value, v: &Value, at: &str) -> Result<(), String> {
    if let Some(t) = schema.get("type") {
        let ok = match t {
            Value::String(s) => type_matches(s, v),
            Value::Array(ts) => ts.iter().any(|s| type_matches(s.as_str().unwrap(), v)),
            _ => panic!("bad type at {at}"),
        };
        if !ok {
            return Err(format!("{at}: expected {t}, got {v}"));
        }
    }
    if let Some(c) = schema.get("const") {
        if c != v {
            return Err(format!("{at}: expected {c}, got {v}"));
        }
    }
    if let Some(Value::Array(opts)) = schema.get("enum") {
        if !opts.contains(v) {
            return Err(format!("{at}: {v} not in enum"));
        }
    }
    if let (Some(Value::Array(req)), Some(obj)) = (schema.get("required"), v.as_object()) {
        for k in req {
            let k = k.as_str().unwrap();
            if !obj.contains_key(k) {
                return Err(format!("{at}: missing {k}"));
            }
        }
    }
    if let (Some(Value::Object(props)), Some(obj)) = (schema.get("properties"), v.as_object()) {
        for (k, s) in props {
            if let Some(x) = obj.get(k) {
                validate(s, x, &format!("{at}.{k}"))?;
            }
        }
    }
    if let (Some(s), Some(items)) = (schema.get("items"), v.as_array()) {
        for (i, x) in items.iter().enumerate() {
            validate(s, x, &format!("{at}[{i}]"))?;
        }
    }
    Ok(())
}

fn schema(name: &str) -> Value {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn assert_valid(v: &Value) {
    let cmd = v["command"].as_str().unwrap();
    validate(&schema(cmd), v, "$").unwrap_or_else(|e| panic!("{cmd}: {e}"));
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn flow_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("flow.csv");
    let plot = dir.path().join("flow.gp");
    let h1 = fixture("h1.json");
    run_ok(&[
        "flow", "-i", path(&h1), "--u0", "0,1,0", "--t1", "4", "--steps", "40", "-o", path(&out), "--plot",
        path(&plot),
    ]);
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,u(v1),u(v2),u(v3)"));
    let mut rows = 0;
    for line in lines {
        let x: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let e = (-3.0 * x[0]).exp();
        let p = (1.0 - e) / 3.0;
        let expected = [p, (2.0 + e) / 3.0, -p];
        for (got, want) in x[1..].iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "t = {}: {got} vs {want}", x[0]);
        }
        rows += 1;
    }
    assert_eq!(rows, 41);
    let script = std::fs::read_to_string(&plot).unwrap();
    assert!(script.contains("using 1:4"));
}

#[test]
fn flow_rejects_bad_initial_data() {
    let h1 = fixture("h1.json");
    for u0 in ["1,2", "unit:zz", "a,b,c"] {
        let o = run(&["flow", "-i", path(&h1), "--u0", u0]);
        assert_eq!(o.status.code(), Some(2), "{u0}");
    }
    let o = run(&["flow", "-i", path(&h1), "--plot", "x.gp"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fano_base_is_neither_positive_nor_contractive() {
    let v = json(&["classify", "-i", path(&fixture("fano_base.csv"))]);
    assert_eq!(v["positive"]["value"], false);
    assert_eq!(v["inf_contractive"]["value"], false);
    assert!(v["positive"].get("witness").is_none());
    assert_valid(&v);
    let w = json(&["classify", "-i", path(&fixture("fano_base.csv")), "--witnesses"]);
    assert_eq!(w["positive"]["value"], false);
    assert_valid(&w);
}

#[test]
fn empty_hypergraph_has_zero_spectrum() {
    let v = json(&["spectrum", "-i", path(&fixture("empty.json"))]);
    let ev = v["eigenvalues"].as_array().unwrap();
    assert_eq!(ev.len(), 4);
    assert!(ev.iter().all(|x| x.as_f64() == Some(0.0)));
    assert_eq!(v["kernel_dim"], 4);
    assert_valid(&v);
}

#[test]
fn overlap_is_an_input_error_naming_the_hyperedge() {
    let o = run(&["laplacian", "-i", path(&fixture("overlap.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let diag: Value = serde_json::from_slice(&o.stderr).unwrap();
    validate(&schema("error"), &diag, "$").unwrap();
    assert_eq!(diag["error"]["kind"], "input");
    assert!(diag["error"]["message"].as_str().unwrap().contains("hyperedge 0"), "{diag}");
}

#[test]
fn missing_file_and_bad_options_exit_with_two() {
    assert_eq!(run(&["laplacian", "-i", "/nonexistent.json"]).status.code(), Some(2));
    let h1 = fixture("h1.json");
    assert_eq!(run(&["threshold", "-i", path(&h1), "--horizon", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["dirichlet", "-i", path(&h1), "--keep", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["hodge", "-i", path(&h1)]).status.code(), Some(2));
}

#[test]
fn incidence_csv_loads_fano_base() {
    let v = json(&["laplacian", "-i", path(&fixture("fano_base.csv"))]);
    let l = v["laplacian"].as_array().unwrap();
    assert_eq!(l.len(), 7);
    for (i, row) in l.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x.as_i64().unwrap(), if i == j { 3 } else { 1 });
        }
    }
    assert_valid(&v);
}

#[test]
fn every_report_matches_its_schema() {
    let h1 = fixture("h1.json");
    let p4 = fixture("p4.csv");
    let k = fixture("triangle_complex.json");
    let (h1, p4, k) = (path(&h1), path(&p4), path(&k));
    let cases: Vec<Vec<&str>> = vec![
        vec!["laplacian", "-i", h1],
        vec!["spectrum", "-i", h1],
        vec!["classify", "-i", p4],
        vec!["threshold", "-i", h1],
        vec!["threshold", "-i", p4, "--property", "inf-contractivity"],
        vec!["dual", "-i", h1],
        vec!["dirichlet", "-i", p4, "--keep", "v2,v3"],
        vec!["union-lemma", "-i", p4],
        vec!["union-lemma", "-i", p4, "--mode", "bipartite", "--sources", "v1,v3"],
        vec!["union-lemma", "-i", p4, "--mode", "equipotent"],
        vec!["hodge", "-i", k],
        vec!["hodge", "-i", k, "--degree", "0"],
        vec!["graph-dual", "-i", p4],
        vec!["bounds", "-i", h1],
        vec!["bounds", "-i", p4],
        vec!["dominate", "-i", p4, "--against", p4],
    ];
    for args in cases {
        assert_valid(&json(&args));
    }
}

#[test]
fn fano_enumeration_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("classes.csv");
    let v = json(&["fano", "enumerate", "--classify", "-o", path(&out)]);
    assert_eq!(v["distinct_laplacians"], 16384);
    assert_eq!(v["classes"], 112);
    assert_eq!(v["counts"]["positive"], 0);
    assert_eq!(v["counts"]["inf_contractive"], 0);
    assert_valid(&v);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 113);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let h1 = fixture("h1.json");
    let p4 = fixture("p4.csv");
    let (h1, p4) = (path(&h1), path(&p4));
    for args in [
        vec!["classify", "-i", p4, "--witnesses"],
        vec!["flow", "-i", h1, "--steps", "50"],
        vec!["spectrum", "-i", p4],
        vec!["fano", "enumerate"],
    ] {
        assert_eq!(run_ok(&args), run_ok(&args), "{args:?}");
    }
}

#[test]
fn spectrum_writes_eigenvector_csv() {
    let dir = tempfile::tempdir().unwrap();
    let vecs = dir.path().join("vecs.csv");
    let report = dir.path().join("report.json");
    let p4 = fixture("p4.csv");
    run_ok(&["spectrum", "-i", path(&p4), "--vectors", path(&vecs), "-o", path(&report)]);
    let text = std::fs::read_to_string(&vecs).unwrap();
    assert_eq!(text.lines().next(), Some("vertex,phi1,phi2,phi3,phi4"));
    assert_eq!(text.lines().count(), 5);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_valid(&v);
}
