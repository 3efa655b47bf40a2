use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn cdspec(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cdspec"))
        .args(args)
        .env("CDSPEC_WORKERS", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON document per line"))
        .collect()
}

fn coefficients(v: &Value) -> Vec<i64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_i64().unwrap())
        .collect()
}

#[test]
fn poly_matches_known_quotients() {
    let cases: [(&[&str], &[i64]); 3] = [
        (
            &["--family", "H", "--s", "2", "--t", "2"],
            &[-20, -68, -53, -4, 1],
        ),
        (&["--family", "T", "--n", "7"], &[-12, -50, -38, -3, 1]),
        (
            &["--family", "L", "--p", "4", "--q", "4"],
            &[66, 101, -14, -40, -6, 1],
        ),
    ];
    for (args, expected) in cases {
        let mut full = vec!["poly"];
        full.extend_from_slice(args);
        let out = cdspec(&full, None);
        assert!(out.status.success(), "{args:?}");
        let r = &json_lines(&out)[0];
        assert_eq!(coefficients(&r["derived"]), expected);
        assert_eq!(r["roots_in_spectrum"], Value::Bool(true));
    }
}

#[test]
fn spectrum_of_a_family() {
    let out = cdspec(&["spectrum", "--family", "H", "--s", "2", "--t", "3"], None);
    assert!(out.status.success());
    let r = &json_lines(&out)[0];
    assert_eq!(r["diameter"], 3);
    assert_eq!(r["order"], 7);
    let values = r["spectrum"].as_array().unwrap();
    assert_eq!(values.len(), 7);
    let sum: f64 = values.iter().map(|v| v.as_f64().unwrap()).sum();
    assert!(sum.abs() < 1e-9);
}

#[test]
fn spectrum_from_stdin() {
    let out = cdspec(&["spectrum", "--stdin"], Some("EhCG\n\nDhc\n"));
    assert!(out.status.success());
    let rs = json_lines(&out);
    assert_eq!(rs.len(), 2);
    assert_eq!(rs[0]["graph6"], "EhCG");
    assert_eq!(rs[1]["order"], 5);
}

#[test]
fn bad_input_is_a_usage_error() {
    // K2 has an edgeless, disconnected complement
    let out = cdspec(&["spectrum", "--stdin"], Some("A_\n"));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let out = cdspec(&["spectrum", "--stdin"], Some("not graph6 at all\n"));
    assert_eq!(out.status.code(), Some(1));

    let out = cdspec(&["verify", "--claims", "9.99"], None);
    assert_eq!(out.status.code(), Some(1));

    let out = cdspec(&["verify", "--claims", "T2.8", "--n", "8"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn family_description() {
    let out = cdspec(&["family", "--family", "B1", "--p", "4", "--q", "3"], None);
    assert!(out.status.success());
    let r = &json_lines(&out)[0];
    assert_eq!(r["order"], 7);
    assert_eq!(r["diameter"], 3);
    assert_eq!(r["edges"], 11);
}

#[test]
fn verify_exit_codes() {
    let out = cdspec(&["verify", "--claims", "T2.8", "--n", "6"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["status"], "confirmed");

    let out = cdspec(
        &["verify", "--claims", "3.4", "--p", "4..8", "--q", "2..6"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));

    let out = cdspec(&["verify", "--claims", "2.5", "--n", "6"], None);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        json_lines(&out)[0]["status"],
        "confirmed-with-reversed-direction"
    );

    let out = cdspec(
        &["verify", "--claims", "3.12", "--p", "8..12", "--q", "2"],
        None,
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_writes_csv() {
    let dir = std::env::temp_dir().join(format!("cdspec-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.csv");
    let out = cdspec(
        &[
            "verify",
            "--claims",
            "T2.8,2.7",
            "--n",
            "6",
            "--csv",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("claim,scope,status,margin"));
    assert_eq!(lines.count(), 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_reads_a_graph_stream() {
    let out = cdspec(
        &["verify", "--claims", "T2.8", "--stdin"],
        Some("EhCG\nECZ?\nE~~w\n"),
    );
    let r = &json_lines(&out)[0];
    assert_eq!(r["n"], 6);
    // K6 minus an edge has diameter 2 and is skipped
    assert_eq!(r["counts"]["graphs"], 2);
    assert_eq!(r["unique"], true);
}
