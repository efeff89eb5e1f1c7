use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulerlab")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_values() {
    let cases = [
        (vec!["compute", "zeta", "3"], "1.202056903159594285399738161511"),
        (vec!["compute", "zetabar", "1"], "-0.693147180559945309417232121458"),
        (vec!["compute", "mzv", "1", "~2"], "0.150257112894949285674967270189"),
        (vec!["compute", "hsum", "--star", "0", "0"], "1.202056903159594285399738161511"),
        (vec!["compute", "hyp", "--upper", "1/2,1", "--lower", "3/2", "--arg", "-1"], "0.785398163397448309615660845820"),
        (vec!["compute", "zeta", "2", "--digits", "12"], "1.644934066848"),
    ];
    for (args, want) in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["compute", "mzv", "2", "1"]).status.code(), Some(3));
    assert_eq!(run(&["compute", "mzv", "1", "x"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "hyp", "--fast", "--slow"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "sumformulas", "--fast"]).status.code(), Some(0));
}

#[test]
fn divergent_index_reports_regularized_value() {
    let o = run(&["compute", "mzv", "2", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!stdout(&o).trim().is_empty() || !o.stderr.is_empty());
}

fn report_without_time(path: &std::path::Path) -> Value {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn verify_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for (p, jobs) in [(&p1, "1"), (&p2, "3")] {
        let o = run(&["verify", "shuffle", "--fast", "--jobs", jobs, "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (a, b) = (report_without_time(&p1), report_without_time(&p2));
    assert_eq!(a, b);
    assert_eq!(a["suite"], "shuffle");
    let cases = a["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    for c in cases {
        for key in ["id", "lhs", "rhs", "residual", "tolerance"] {
            assert!(c[key].is_string(), "{key}");
        }
        assert_eq!(c["pass"], true);
    }
}

#[test]
fn csv_round_trip_is_byte_identical() {
    let o = run(&["table", "doublesums", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(header.iter().collect::<Vec<_>>(), ["r", "s", "bar_r", "bar_s", "value", "route"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 16);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).unwrap();
    for r in &rows {
        w.write_record(r).unwrap();
    }
    assert_eq!(String::from_utf8(w.into_inner().unwrap()).unwrap(), text);
}

#[test]
fn hsums_json_entries() {
    let o = run(&["table", "hsums", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    // a + b <= 2, plain and star
    assert_eq!(rows.len(), 12);
    for r in rows {
        assert!(r["a"].as_u64().unwrap() + r["b"].as_u64().unwrap() <= 2);
        assert!(r["star"].is_boolean());
        assert_eq!(r["route"], "closed");
    }
    assert_eq!(rows[0]["value"], "1.20205690315959428539973816151e+00");
}

#[test]
fn table_rejects_out_of_range_weight() {
    assert_eq!(run(&["table", "doublesums", "1000"]).status.code(), Some(2));
}
