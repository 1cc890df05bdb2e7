use std::io::Write;
use std::process::Command;

use permband::amidakuji::Ladder;
use permband::cayley::DiameterReport;
use permband::cli::{execute, Outcome};
use permband::factorize::{verify, Factorization};
use serde_json::Value;

fn run(args: &[&str]) -> Outcome {
    execute(std::iter::once("permband").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn dist_example() {
    assert_eq!(run(&["dist", "--perm", "6 7 4 5 2 3 1", "--m", "2"]).stdout, "10\n");
    let doc = json(&["dist", "--perm", "6 7 4 5 2 3 1", "--m", "2"]);
    assert_eq!(doc["schema"], "permband/1");
    assert_eq!(doc["command"], "dist");
    assert_eq!(doc["codec_version"], "lehmer-lex/1");
    assert_eq!(doc["result"]["distance"], 10);
}

#[test]
fn cycle_notation_input() {
    let out = run(&["dist", "--perm", "(1 8)(2 7)(3 6)(4 5)", "--m", "2"]);
    assert_eq!(out.stdout, "14\n");
    let out = run(&["dist", "--perm", "(1 2)", "--n", "4", "--m", "1"]);
    assert_eq!(out.stdout, "1\n");
}

#[test]
fn diameter_example() {
    let out = run(&["diameter", "--n", "9", "--m", "3", "--farthest", "count"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "delta(9,3) = 11\nfarthest 770\n");

    let doc = json(&["diameter", "--n", "7", "--m", "2", "--farthest", "list"]);
    let report: DiameterReport = serde_json::from_value(doc["result"].clone()).unwrap();
    assert_eq!(report.delta, 10);
    assert_eq!(report.farthest.unwrap().len(), 4);
}

#[test]
fn table_matches_published_grid() {
    let out = run(&["table", "--n-max", "10"]);
    assert_eq!(out.code, 0);
    let rows: Vec<&str> = out.stdout.lines().collect();
    let row = |n: usize| rows.iter().find(|r| r.trim_start().starts_with(&format!("{n} |"))).unwrap();
    let cells = |n: usize| row(n).split('|').nth(1).unwrap().split_whitespace().collect::<Vec<_>>();
    assert_eq!(cells(6), ["15", "[7]", "6", "6", "5"]);
    assert_eq!(cells(8), ["28", "[14]", "[10]", "9", "8", "8", "7"]);
    assert_eq!(cells(10), ["45", "[19]", "[14]", "[12]", "11", "11", "10", "10", "9"]);
}

#[test]
fn table_marks_upper_bounds_beyond_search() {
    let out = run(&["table", "--n-max", "11", "--bfs-max", "8"]);
    assert_eq!(out.code, 0);
    let last = out.stdout.lines().last().unwrap();
    let cells: Vec<&str> = last.split('|').nth(1).unwrap().split_whitespace().collect();
    assert_eq!(cells[..4], ["55", "24?", "18?", "15?"]);
}

#[test]
fn histogram_csv() {
    let out = run(&["--format", "csv", "histogram", "--n", "3", "--m", "1"]);
    assert_eq!(out.stdout, "level,count\n0,1\n1,2\n2,2\n3,1\n");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = run(&["--threads", "1", "--format", "csv", "histogram", "--n", "8", "--m", "3"]);
    let b = run(&["--threads", "3", "--format", "csv", "histogram", "--n", "8", "--m", "3"]);
    assert_eq!(a, b);
    let strip = |mut v: Value| {
        v["elapsed_ms"] = Value::Null;
        v["result"]["wall_time_ms"] = Value::Null;
        v
    };
    let a = strip(json(&["--threads", "1", "diameter", "--n", "7", "--m", "3", "--farthest", "list"]));
    let b = strip(json(&["--threads", "2", "diameter", "--n", "7", "--m", "3", "--farthest", "list"]));
    assert_eq!(a, b);
}

#[test]
fn factor_methods_verify() {
    for (perm, m, method) in [
        ("8 7 6 5 4 3 2 1", "3", "auto"),
        ("8 7 6 5 4 3 2 1", "3", "recursive"),
        ("3 2 4 5 1", "1", "adjacent"),
        ("(1 7)(2 3 4 5 6)", "6", "unrestricted"),
        ("7 3 4 5 6 2 1", "4", "cycle-classes"),
        ("4 3 2 1", "2", "bfs"),
    ] {
        let doc = json(&["factor", "--perm", perm, "--m", m, "--method", method]);
        let f: Factorization = serde_json::from_value(doc["result"].clone()).unwrap();
        assert_eq!(verify(&f), Ok(()), "{method}");
        assert_eq!(doc["result"]["length"], f.len());
    }
}

#[test]
fn factor_prove_optimal() {
    let doc = json(&["factor", "--perm", "3 2 4 5 1", "--m", "1", "--prove-optimal"]);
    assert_eq!(doc["result"]["distance"], 5);
    assert_eq!(doc["result"]["optimal"], true);
    let text = run(&["factor", "--perm", "8 7 6 5 4 3 2 1", "--m", "3", "--prove-optimal"]).stdout;
    assert!(text.contains("distance 8"), "{text}");
}

#[test]
fn factor_rejects_inapplicable_methods() {
    assert_eq!(run(&["factor", "--perm", "4 3 2 1", "--m", "2", "--method", "unrestricted"]).code, 2);
    assert_eq!(run(&["factor", "--perm", "8 7 6 5 4 3 2 1", "--m", "2", "--method", "cycle-classes"]).code, 2);
}

#[test]
fn bounds_report() {
    let doc = json(&["bounds", "--n", "11"]);
    let uppers: Vec<u64> = doc["result"]["bounds"].as_array().unwrap().iter().map(|b| b["upper"].as_u64().unwrap()).collect();
    assert_eq!(uppers, [55, 24, 18, 15, 13, 12, 12, 11, 11, 10]);
    let text = run(&["bounds", "--n", "10", "--m", "3"]).stdout;
    assert!(text.starts_with("delta(10,3) = 14"), "{text}");
}

#[test]
fn extremal_gen_and_check() {
    let out = run(&["extremal", "gen", "--n", "7", "--m", "5"]);
    assert_eq!(out.code, 0);
    let listed: Vec<&str> = out.stdout.lines().collect();
    assert!(!listed.is_empty());
    for p in listed.iter().take(5) {
        let doc = json(&["extremal", "check", "--perm", p, "--m", "5"]);
        assert_ne!(doc["result"]["shape"], "none");
    }
    let doc = json(&["extremal", "check", "--perm", "1 2 3 4 5 6 7", "--m", "5"]);
    assert_eq!(doc["result"]["shape"], "none");

    let out = run(&["extremal", "check", "--n", "7", "--m", "4"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("consistent\n"));
    assert_eq!(run(&["extremal", "gen", "--n", "10", "--m", "2"]).code, 2);
}

#[test]
fn amida_round_trip_through_files() {
    let out = run(&["amida", "solve", "--perm", "3 2 4 5 1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("n=5\n"));
    let doc = json(&["amida", "solve", "--perm", "3 2 4 5 1"]);
    let ladder: Ladder = serde_json::from_value(doc["result"]["ladder"].clone()).unwrap();
    let file_text = format!("# solved\n{ladder}");
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(file_text.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();

    assert_eq!(run(&["amida", "check", path]).stdout, "ok\n");
    let doc = json(&["amida", "apply", path]);
    assert_eq!(doc["result"]["permutation"], serde_json::json!([3, 2, 4, 5, 1]));
    assert_eq!(doc["result"]["rungs"], 5);
}

#[test]
fn amida_check_reports_violation() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "n=3\n1 2").unwrap();
    let out = run(&["amida", "check", file.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("level 1"));
    assert_eq!(run(&["amida", "apply", file.path().to_str().unwrap()]).code, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dist", "--perm", "1 2 2", "--m", "1"]).code, 2);
    assert_eq!(run(&["diameter", "--n", "10", "--m", "3", "--memory-cap", "1MiB"]).code, 3);
    assert_eq!(run(&["nonsense"]).code, 2);
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn binary_reads_memory_cap_from_environment() {
    let bin = env!("CARGO_BIN_EXE_permband");
    let out = Command::new(bin)
        .args(["diameter", "--n", "9", "--m", "2"])
        .env("PERMBAND_MEMCAP", "4K")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(bin)
        .args(["dist", "--perm", "2 1", "--m", "1"])
        .env_remove("PERMBAND_MEMCAP")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1\n");
}
