use std::process::{Command, Output};

fn quiddity(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiddity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn ring_info_prints_parameters() {
    let o = quiddity(&["ring", "info", "Zmod:9"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("size: 9\n"));
    assert!(text.contains("omega: 12\n"));
}

#[test]
fn count_prints_a_csv_row() {
    let o = quiddity(&[
        "count", "roots", "--ring", "GF:2^4", "--n", "8", "--method", "dp",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "ring,n,kind,target,method,value,expected,status\nGF:2^4,8,roots,0,dp,252645135,,ok\n"
    );
}

#[test]
fn negative_targets_and_all_methods() {
    let o = quiddity(&[
        "count", "quiddity", "--ring", "Zmod:16", "--n", "8", "--target", "-1", "--method", "all",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(",formula,1376256,1376256,pass"));
    assert!(text.contains(",dp,1376256,1376256,pass"));
}

#[test]
fn errors_exit_with_two() {
    let nonunit = quiddity(&[
        "count", "quiddity", "--ring", "Zmod:8", "--n", "4", "--target", "2",
    ]);
    assert_eq!(nonunit.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&nonunit.stderr).contains("not a unit"));
    assert_eq!(quiddity(&["ring", "info", "GF:6^1"]).status.code(), Some(2));
    assert_eq!(
        quiddity(&["table", "--name", "missing"]).status.code(),
        Some(2)
    );
    assert_eq!(
        quiddity(&["count", "bogus", "--ring", "Zmod:4", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        quiddity(&["--budget-brute", "0.5", "ring", "info", "Zmod:4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn mismatches_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    std::fs::write(
        &cache,
        r#"{"GF:2^1|3|roots|0": {"method": "dp", "value": "4"}}"#,
    )
    .unwrap();
    let o = quiddity(&[
        "--cache",
        cache.to_str().unwrap(),
        "table",
        "--name",
        "roots-a",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("GF:2^1,3,roots,0,dp,4,3,mismatch"));
}

#[test]
fn table_formats_and_crosscheck() {
    let md = quiddity(&["table", "--name", "w-plus", "--format", "md"]);
    assert_eq!(md.status.code(), Some(0));
    assert!(stdout(&md).starts_with("| ring |"));
    let json = quiddity(&[
        "--workers",
        "2",
        "table",
        "--name",
        "w-minus",
        "--format",
        "json",
    ]);
    assert_eq!(json.status.code(), Some(0));
    assert!(stdout(&json).trim_start().starts_with('['));
    let cc = quiddity(&["crosscheck", "--ring", "Zmod:4", "--max-n", "4"]);
    assert_eq!(cc.status.code(), Some(0));
    assert!(!stdout(&cc).contains("FAIL"));
}
