use reslab::arith::enumerate_fundamental;
use reslab::verify::{Status, SuiteReport};
use reslab::{ResonatorSet, ScanReport, Signs};
use std::path::Path;
use std::process::{Command, Output};

fn reslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reslab"))
        .args(args)
        .env_remove("RESLAB_CONFIG")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn discriminants_round_trip() {
    let out = reslab(&["discriminants", "--lo", "4", "--hi", "9", "--signs", "both"]);
    assert_eq!(code(&out), 0);
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["d"]);
    let got: Vec<i64> = rdr
        .records()
        .map(|r| r.unwrap()[0].parse().unwrap())
        .collect();
    let want: Vec<i64> = enumerate_fundamental(4, 9, Signs::Both)
        .unwrap()
        .iter()
        .map(|d| d.get())
        .collect();
    assert_eq!(got, want);
    assert_eq!(got, vec![5, -7, 8, -8]);
}

#[test]
fn discriminants_edge_cases() {
    let empty = reslab(&[
        "discriminants",
        "--lo",
        "1",
        "--hi",
        "2",
        "--signs",
        "positive",
    ]);
    assert_eq!(code(&empty), 0);
    assert_eq!(stdout(&empty), "d\n");
    assert_eq!(
        code(&reslab(&["discriminants", "--lo", "9", "--hi", "4"])),
        1
    );
    assert_eq!(
        code(&reslab(&[
            "discriminants",
            "--lo",
            "4",
            "--hi",
            "9",
            "--signs",
            "sideways"
        ])),
        1
    );
    let big = reslab(&["discriminants", "--lo", "10^3", "--hi", "1e3"]);
    assert_eq!(code(&big), 1);
}

#[test]
fn lfun_modes_and_exit_codes() {
    let out = reslab(&["lfun", "--d", "5", "--alpha", "0.01", "--mode", "both"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let (afe, exact) = (v["afe"].as_f64().unwrap(), v["exact"].as_f64().unwrap());
    assert!(((afe - exact) / exact).abs() <= 1e-6);
    assert!(v["rel_diff"].as_f64().unwrap() <= 1e-6);
    let neg = reslab(&["lfun", "--d", "-4", "--mode", "exact"]);
    assert_eq!(code(&neg), 0);
    assert!(json(&neg)["afe"].is_null());
    assert_eq!(code(&reslab(&["lfun", "--d", "0"])), 1);
    assert_eq!(code(&reslab(&["lfun", "--d", "5", "--alpha", "0.6"])), 1);
    assert_eq!(
        code(&reslab(&["lfun", "--d", "12", "--mode", "sideways"])),
        1
    );
    // beyond the exact evaluator's modulus guard
    assert_eq!(
        code(&reslab(&["lfun", "--d", "1000001", "--mode", "exact"])),
        2
    );
}

#[test]
fn resonator_summary_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("m.csv");
    let summary = dir.path().join("summary.json");
    let out = reslab(&[
        "resonator",
        "--csv",
        table.to_str().unwrap(),
        "--json",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["N"], 1_000_000);
    assert_eq!(v["P_size"], 20);
    assert_eq!(v["M_size"], 1351);
    assert!(v["A_N"].as_f64().unwrap() > 1.0);
    assert_eq!(v["degenerate"], false);
    let on_disk: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(on_disk, v);
    let rows = ResonatorSet::read_csv_pairs(std::io::BufReader::new(
        std::fs::File::open(&table).unwrap(),
    ))
    .unwrap();
    assert_eq!(rows.len(), 1351);
    assert_eq!(rows[0], (1, 1.0));
}

#[test]
fn resonator_edge_cases() {
    let small = reslab(&["resonator", "--N", "100"]);
    assert_eq!(code(&small), 0);
    assert_eq!(json(&small)["degenerate"], true);
    assert_eq!(code(&reslab(&["resonator", "--gamma", "0.6"])), 1);
    assert_eq!(code(&reslab(&["resonator", "--N", "10"])), 1);
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("m.csv");
    // every subset of 20 primes: the members do not fit in u64
    let wide = reslab(&["resonator", "--A", "0", "--csv", table.to_str().unwrap()]);
    assert_eq!(code(&wide), 2);
    assert_eq!(code(&reslab(&["resonator", "--m-cap", "100"])), 2);
}

#[test]
fn verify_exit_codes() {
    let out = reslab(&["verify", "--suite", "u", "--level", "quick"]);
    assert_eq!(code(&out), 0);
    let report: SuiteReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report.entries.is_empty());
    assert!(report.all_pass());
    assert_eq!(code(&reslab(&["verify", "--suite", "bogus"])), 1);
    assert_eq!(code(&reslab(&["verify", "--level", "extreme"])), 1);
    let faulty = reslab(&["verify", "--suite", "props", "--perturb-f", "0.01"]);
    assert_eq!(code(&faulty), 3);
    let report: SuiteReport = serde_json::from_slice(&faulty.stdout).unwrap();
    assert_eq!(
        report.get("resonator.a_n_consistency").unwrap().status,
        Status::Fail
    );
}

fn search(extra: &[&str]) -> Output {
    let mut args = vec!["search", "--X", "10000", "--A", "1"];
    args.extend_from_slice(extra);
    reslab(&args)
}

#[test]
fn search_report_and_row() {
    let dir = tempfile::tempdir().unwrap();
    let row = dir.path().join("row.csv");
    let out = search(&["--strategy", "exhaustive", "--csv", row.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report: ScanReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.max_l >= report.ratio.unwrap() - 1e-6);
    assert!(report.theorem_baseline.is_some());
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("maxL") && err.contains("theorem_baseline"));
    let mut rdr = csv::Reader::from_path(&row).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_owned).collect();
    assert_eq!(header.join(","), ScanReport::csv_header());
    let records: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 1);
    let col = header.iter().position(|h| h == "maxL").unwrap();
    assert_eq!(records[0][col].parse::<f64>().unwrap(), report.max_l);

    let top = search(&["--strategy", "top_k", "--K", "10^9"]);
    assert_eq!(code(&top), 0);
    let top: ScanReport = serde_json::from_slice(&top.stdout).unwrap();
    assert_eq!(
        (top.max_l, top.argmax_d, top.s1, top.s2),
        (report.max_l, report.argmax_d, report.s1, report.s2)
    );
    assert!(top.max_is_exact);
}

#[test]
fn search_is_deterministic_across_workers() {
    let a: ScanReport = serde_json::from_slice(&search(&["--workers", "1"]).stdout).unwrap();
    let b: ScanReport = serde_json::from_slice(&search(&["--workers", "3"]).stdout).unwrap();
    assert_eq!(a.without_timing(), b.without_timing());
}

#[test]
fn search_usage_errors() {
    assert_eq!(code(&reslab(&["search", "--X", "100"])), 1);
    assert_eq!(code(&search(&["--strategy", "sideways"])), 1);
    assert_eq!(code(&search(&["--kernel", "box"])), 1);
    assert_eq!(code(&reslab(&["search", "--X", "20000", "--A", "-1"])), 1);
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    write(&cfg, r#"{"resonator": {"N": 100000}}"#);
    let out = reslab(&["resonator", "--config", cfg.to_str().unwrap()]);
    assert_eq!(json(&out)["P_size"], 13);
    let out = reslab(&["resonator", "--config", cfg.to_str().unwrap(), "--N", "1e6"]);
    assert_eq!(json(&out)["P_size"], 20);
    let via_env = Command::new(env!("CARGO_BIN_EXE_reslab"))
        .args(["resonator"])
        .env("RESLAB_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(json(&via_env)["P_size"], 13);
    write(&cfg, r#"{"resonator": {"N": 100000, "colour": 1}}"#);
    assert_eq!(
        code(&reslab(&["resonator", "--config", cfg.to_str().unwrap()])),
        1
    );
    write(&cfg, "not json");
    assert_eq!(
        code(&reslab(&["resonator", "--config", cfg.to_str().unwrap()])),
        1
    );
    let missing = dir.path().join("absent.json");
    assert_eq!(
        code(&reslab(&[
            "lfun",
            "--d",
            "5",
            "--config",
            missing.to_str().unwrap()
        ])),
        1
    );
}

#[test]
fn help_and_unknown_commands() {
    assert_eq!(code(&reslab(&["--help"])), 0);
    assert_eq!(code(&reslab(&["--version"])), 0);
    assert_eq!(code(&reslab(&["frobnicate"])), 1);
    assert_eq!(code(&reslab(&[])), 1);
}
