use std::io::Write;
use std::process::{Command, Output};

fn mbx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn kron_sum_squares_prints_value_and_identity() {
    let o = mbx(&["kron", "s:3", "--sum-squares"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, vec!["11", "identity holds (lemma7_2)"]);
}

#[test]
fn sn_stats_reports_the_largest_fiber() {
    let o = mbx(&["sn", "stats", "--n", "13"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("f=6"), "got {:?}", out);
    assert!(out.contains("f_degree=429"), "got {:?}", out);
}

#[test]
fn verify_json_round_trips() {
    let o = mbx(&["verify", "--targets", "s:4", "--checks", "burnside", "--format", "json"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    let header: serde_json::Value =
        serde_json::from_str(lines.next().expect("header")).expect("header parses");
    assert_eq!(header["schema"], "mbx.check/1");
    assert!(header["digest"].as_str().map_or(false, |d| d.len() == 64));
    let row: serde_json::Value =
        serde_json::from_str(lines.next().expect("result row")).expect("row parses");
    assert_eq!(row["check_name"], "burnside");
    assert_eq!(row["target"], "s:4");
    assert_eq!(row["verdict"], "holds");
    let summary: serde_json::Value =
        serde_json::from_str(lines.next().expect("summary")).expect("summary parses");
    assert_eq!(summary["summary"]["holds"], 1);
}

#[test]
fn verify_is_deterministic_modulo_header_timing() {
    let args = ["verify", "--targets", "s:3,q8", "--format", "json"];
    let a = mbx(&args);
    let b = mbx(&args);
    let (a, b) = (stdout(&a), stdout(&b));
    let ha: serde_json::Value = serde_json::from_str(a.lines().next().unwrap()).unwrap();
    let hb: serde_json::Value = serde_json::from_str(b.lines().next().unwrap()).unwrap();
    assert_eq!(ha["digest"], hb["digest"]);
    let body_a: Vec<&str> = a.lines().skip(1).collect();
    let body_b: Vec<&str> = b.lines().skip(1).collect();
    assert_eq!(body_a, body_b);
}

#[test]
fn failing_check_exits_one() {
    let o = mbx(&["verify", "--targets", "q8", "--checks", "hls_gap"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn bad_target_exits_two() {
    let o = mbx(&["verify", "--targets", "nosuch:99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("ERROR"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mbx(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mbx(&["kron", "s:3", "--max", "--avg"]).status.code(), Some(2));
    assert_eq!(mbx(&["verify", "--battery", "extended"]).status.code(), Some(2));
}

#[test]
fn scan_surfaces_violations_but_exits_zero() {
    let o = mbx(&["scan", "--sweep", "prod(s:3,s:3)"]);
    assert!(o.status.success(), "scan should exit 0 on observations");
    let out = stdout(&o);
    assert!(out.contains("OBSERVATION"), "got {:?}", out);
    assert!(out.contains("factor(s:3)"));
}

#[test]
fn group_stats_prints_order() {
    let o = mbx(&["group", "s:3", "stats"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("order        6"));
    assert!(out.contains("epsilon      1/2"));
}

#[test]
fn table_file_feeds_kron() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.table");
    let o = mbx(&["table", "s:3", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let o = mbx(&["kron", path.to_str().unwrap(), "--sum-squares"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("11\n"));
}

#[test]
fn induce_accepts_generator_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.gens");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# s:3 inside s:4").unwrap();
    writeln!(f, "(1 2)").unwrap();
    writeln!(f, "(1 2 3)").unwrap();
    drop(f);
    let o = mbx(&[
        "induce",
        "--parent",
        "s:4",
        "--sub",
        path.to_str().unwrap(),
        "--sum-squares",
    ]);
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("7\n"), "got {:?}", out);
    assert!(out.contains("identity holds (lemma8_2)"));
}

#[test]
fn thread_override_is_accepted() {
    let o = Command::new(env!("CARGO_BIN_EXE_mbx"))
        .env("MBX_THREADS", "1")
        .args(["kron", "s:4", "--max"])
        .output()
        .expect("binary runs");
    assert!(o.status.success());
    assert!(stdout(&o).contains("K(s:4) = 1"));
}
