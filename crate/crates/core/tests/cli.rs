use std::fs;
use std::process::{Command, Output};

use spclass::json::{descriptor_from_json, pair_from_json};
use tempfile::TempDir;

fn spclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spclass")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn count_examples() {
    for (p, m, n) in [("3", "1", "3"), ("7", "1", "7"), ("3", "2", "9"), ("5", "3", "125")] {
        let o = spclass(&["count", "--p", p, "--m", m]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), format!("{n}\n"));
    }
}

#[test]
fn classify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let d22 = write(&dir, "diag22.txt", "p 5\n2 2\n2 0\n0 2\n");
    let o = spclass(&["classify", "--p", "5", "--in", &d22]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains(r#""feasible":false"#));

    let odd = write(&dir, "odd.txt", "p 3\n4 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 2\n");
    let o = spclass(&["classify", "--p", "3", "--in", &odd]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains(r#"{"kind":"unit","sign":1,"n":3}"#));

    let jordan = write(&dir, "jordan.txt", "p 3\n2 2\n1 1\n0 1\n");
    assert_eq!(spclass(&["classify", "--p", "3", "--in", &jordan]).status.code(), Some(4));

    let j = write(&dir, "j.txt", "p 3\n2 2\n0 1\n2 0\n");
    let o = spclass(&["classify", "--p", "3", "--in", &j]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"descriptor\":{\"p\":3,\"entries\":[{\"kind\":\"self\",\"g\":[1,0,1],\"n\":1}]},\"form\":[[0,1],[2,0]],\"feasible\":true}\n"
    );
    // --p disagreeing with the file is a usage error
    assert_eq!(spclass(&["classify", "--p", "5", "--in", &j]).status.code(), Some(2));
    assert_eq!(spclass(&["classify", "--p", "3", "--in", "/nonexistent"]).status.code(), Some(2));
}

#[test]
fn rep_and_classify_round_trip() {
    let dir = TempDir::new().unwrap();
    let lines = stdout(&spclass(&["enumerate", "--p", "5", "--m", "2", "--full"]));
    assert_eq!(lines.lines().count(), 25);
    for line in lines.lines() {
        let pair = pair_from_json(line).unwrap();
        let x = write(&dir, "x.txt", &pair.x.to_text());
        let o = spclass(&["classify", "--p", "5", "--in", &x]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let d = descriptor_from_json(&v["descriptor"].to_string()).unwrap();
        assert_eq!(d, pair.descriptor);
    }
    let desc = write(&dir, "d.json", r#"{"p":5,"entries":[{"kind":"pair","g":[3,1],"n":1}]}"#);
    let o = spclass(&["rep", "--p", "5", "--descriptor", &desc]);
    assert_eq!(o.status.code(), Some(0));
    let pair = pair_from_json(stdout(&o).trim()).unwrap();
    assert_eq!(pair.x.rows(), 2);

    let bad = write(&dir, "bad.json", r#"{"p":3,"entries":[{"kind":"unit","sign":1,"n":3}]}"#);
    assert_eq!(spclass(&["rep", "--p", "3", "--descriptor", &bad]).status.code(), Some(3));
}

#[test]
fn out_flag_and_text_mode() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("count.txt");
    let o = spclass(&["count", "--p", "3", "--m", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), "27\n");

    let o = spclass(&["enumerate", "--p", "3", "--m", "1", "--text"]);
    assert_eq!(stdout(&o), "{unit(+1, 2)} over GF(3)\n{unit(-1, 2)} over GF(3)\n{self(t^2 + 1, 1)} over GF(3)\n");
    assert_eq!(spclass(&["count", "--p", "3", "--m", "1", "--json", "--text"]).status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let o = spclass(&["verify", "--p", "3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["group_order"], 51840);
    assert_eq!(v["oracle_class_count"], 9);
    assert_eq!(v["enumerated_count"], 9);
    assert_eq!(v["matched"], true);
    // Sp(4, 5) is past the oracle cap
    let o = spclass(&["verify", "--p", "5", "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}
