use std::process::{Command, Output};

fn z2lie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z2lie")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn catalog_emits_valid_json() {
    let out = z2lie(&["catalog", "H2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.is_object());
}

#[test]
fn unknown_catalog_name_is_usage_error() {
    assert_eq!(z2lie(&["catalog", "Q7"]).status.code(), Some(2));
}

#[test]
fn verify_associative_algebra_succeeds() {
    let out = z2lie(&["verify", "C-2", "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn verify_twisted_octonions_reports_failed_claim() {
    let out = z2lie(&["verify", "O-2", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("alternative"));
}

#[test]
fn verify_accepts_json_file_and_rejects_corrupt_one() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("c2.json");
    std::fs::write(&good, stdout(&z2lie(&["catalog", "C2"]))).unwrap();
    let out = z2lie(&["verify", good.to_str().unwrap(), "--trials", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"name\": \"broken\", \"parity\": [0, 2]}").unwrap();
    assert_eq!(z2lie(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bch.json");
    let out = z2lie(&["bch", "--degree", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["degree"], 3);
    assert_eq!(v["classical_specialization"], true);
}

#[test]
fn bch_text_shows_series_and_duplicate_resolution() {
    let out = z2lie(&["bch", "--degree", "3", "--text"]);
    let text = stdout(&out);
    assert!(text.starts_with("C(x, y, u, w) = "), "{text}");
    assert!(text.contains("1/12"));
}

#[test]
fn bch_degree_out_of_range_is_usage_error() {
    assert_eq!(z2lie(&["bch", "--degree", "9"]).status.code(), Some(2));
    assert_eq!(z2lie(&["bch", "--degree", "0"]).status.code(), Some(2));
}

#[test]
fn invert_even_element() {
    let out = z2lie(&["invert", "R2", "--element", "2,3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["inverse"], serde_json::json!(["1/2", "-3/4"]));
}

#[test]
fn invert_odd_element_is_not_invertible() {
    let out = z2lie(&["invert", "R2", "--element", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["invertible"], false);
}

#[test]
fn invert_wrong_length_is_usage_error() {
    assert_eq!(z2lie(&["invert", "R2", "--element", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn correspond_small_shape_succeeds() {
    let out = z2lie(&["correspond", "--shape", "1,1", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn correspond_bad_shape_is_usage_error() {
    assert_eq!(z2lie(&["correspond", "--shape", "0,2"]).status.code(), Some(2));
    assert_eq!(z2lie(&["correspond", "--shape", "2"]).status.code(), Some(2));
}
