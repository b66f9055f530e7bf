use std::process::{Command, Output};

use pickands::studies::{parse_csv, Report, CSV_HEADER};

fn pickands(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pickands"))
        .args(args)
        .env_remove("PICKANDS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn closed_form_csv() {
    let out = pickands(&["closed-form", "--delta", "0.5", "--delta", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    assert_eq!(CSV_HEADER, "study,alpha,delta,T,reps,seed,stat,value,std_err");
    let rows = parse_csv(&text).unwrap();
    let h1: Vec<f64> = rows.iter().filter(|r| r.stat == "H_delta" && r.alpha == 1.0).map(|r| r.value).collect();
    assert_eq!(h1.len(), 2);
    assert!((h1[0] - 0.560_370_228_420_053_2).abs() < 1e-13);
    assert!(text.contains("closed-form,1,0.5,0,0,0,H_delta,0.56037022842005"));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("[PASS]"));
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let args = ["estimate", "--alpha", "1.5", "--delta", "0.25", "--T", "2", "--reps", "500", "--seed", "9"];
    let csv = stdout(&pickands(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json = stdout(&pickands(&json_args));
    let from_csv = parse_csv(&csv).unwrap();
    let report: Report = serde_json::from_str(&json).unwrap();
    assert_eq!(from_csv.len(), report.rows.len());
    for (a, b) in from_csv.iter().zip(&report.rows) {
        assert_eq!(a.stat, b.stat);
        assert_eq!(a.value.to_bits(), b.value.to_bits(), "{}", a.stat);
        assert_eq!(a.std_err.to_bits(), b.std_err.to_bits(), "{}", a.stat);
        assert_eq!((a.alpha, a.delta, a.horizon, a.reps, a.seed), (b.alpha, b.delta, b.horizon, b.reps, b.seed));
    }
}

#[test]
fn output_is_byte_reproducible_across_thread_counts() {
    let base =
        ["truncation", "--alpha", "1.5", "--delta", "0.5", "--T", "1", "--T", "2", "--reps", "1500", "--seed", "4"];
    let one = pickands(&[&base[..], &["--threads", "1"]].concat());
    let three = pickands(&[&base[..], &["--threads", "3"]].concat());
    let env = Command::new(env!("CARGO_BIN_EXE_pickands")).args(base).env("PICKANDS_THREADS", "2").output().unwrap();
    assert!(!one.stdout.is_empty());
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(one.stdout, env.stdout);
    assert_eq!(one.stdout, pickands(&base).stdout);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("pickands-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tail.csv");
    let args: Vec<&str> =
        "tail --alpha 0.5 --delta 0.25 --T 2 --threshold 1.5 --threshold 2 --reps 800".split(' ').collect();
    let to_file = pickands(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert!(to_file.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&pickands(&args)));
    let rows = parse_csv(&written).unwrap();
    assert!(rows.iter().any(|r| r.stat == "p_hat@x=1.5"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn every_subcommand_runs() {
    let cases: [&[&str]; 4] = [
        &["discretization", "--alpha", "0.5", "--delta", "0.5", "--delta", "0.25", "--T", "2", "--reps", "200"],
        &["discretization", "--alpha", "2"],
        &["variance-blowup", "--alpha", "1.5", "--delta", "0.5", "--T", "2", "--T", "4", "--reps", "200"],
        &["estimate", "--alpha", "2", "--delta", "0.5", "--T", "4", "--reps", "2000"],
    ];
    for args in cases {
        let out = pickands(args);
        assert_ne!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(parse_csv(&stdout(&out)).unwrap().iter().all(|r| r.study == args[0]));
    }
}

#[test]
fn exit_codes() {
    // Strong truncation bias at T=2 makes the closed-form cross-check fail.
    let failing = pickands(&["estimate", "--alpha", "1", "--delta", "0.5", "--T", "2", "--reps", "5000"]);
    assert_eq!(failing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&failing.stderr).contains("[FAIL]"));

    assert_eq!(pickands(&["estimate", "--alpha", "3"]).status.code(), Some(2));
    assert_eq!(pickands(&["estimate", "--reps", "1"]).status.code(), Some(2));
    assert_eq!(pickands(&["tail", "--threshold", "0.5", "--reps", "10"]).status.code(), Some(2));
    assert_eq!(pickands(&["estimate", "--bogus"]).status.code(), Some(2));
}
