use std::process::{Command, Output};

use clap::Parser;
use ffprng::bounds::{verify_family, CheckStatus, VerifyConfig};
use ffprng_cli::{build_family, collect_sequences, RunConfig};

fn ffprng(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffprng")).args(args).output().expect("run ffprng")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

const RATIONAL_SAMPLE: [&str; 13] = ["generate", "--construction", "rational", "--p", "2", "--e", "7", "--d", "2", "--mode", "sample:100", "--seed", "7"];

#[test]
fn generate_csv_is_deterministic() {
    let a = ffprng(&RATIONAL_SAMPLE);
    let b = ffprng(&RATIONAL_SAMPLE);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut reader = csv::Reader::from_reader(a.stdout.as_slice());
    let header = reader.headers().unwrap().clone();
    assert_eq!(&header[0], "construction");
    assert_eq!(&header[header.len() - 1], "s126");
    assert_eq!(reader.records().count(), 100);
}

#[test]
fn elliptic_generate_echoes_curve() {
    let out = ffprng(&["generate", "--construction", "elliptic", "--p", "2", "--e", "6", "--t", "0", "--d", "2", "--mode", "sample:5", "--seed", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], "ffprng-sequences/1");
    let seqs = doc["sequences"].as_array().unwrap();
    assert_eq!(seqs.len(), 5);
    assert!(seqs[0]["provenance"]["curve"].is_string());
    assert_eq!(seqs[0]["digits"].as_array().unwrap().len(), 65);
}

#[test]
fn bad_gcd_is_a_usage_error() {
    let out = ffprng(&["generate", "--construction", "rational", "--p", "2", "--e", "4", "--d", "3"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gcd"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(ffprng(&["generate", "--bogus"]).status.code(), Some(64));
    assert_eq!(ffprng(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_report_follows_schema() {
    let out = ffprng(&["verify", "--construction", "elliptic", "--p", "2", "--e", "6", "--t", "0", "--d", "2", "--mode", "sample:30", "--seed", "12", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], "ffprng-report/1");
    assert_eq!(doc["all_pass"], true);
    assert_eq!(doc["params"]["genus"], 1);
    assert_eq!(doc["run"]["family"]["construction"], "elliptic");
    for check in doc["checks"].as_array().unwrap() {
        for key in ["id", "measured", "bound", "pass", "flags"] {
            assert!(check.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn expsum_never_exceeds_bound() {
    let out = ffprng(&["expsum", "--p", "2", "--e", "3", "--samples", "50", "--seed", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], "ffprng-expsum/1");
    assert!(doc["rows"].as_array().unwrap().iter().all(|r| r["ratio"].as_f64().unwrap() <= 1.0 + 1e-9));
}

#[test]
fn corrupted_sequences_fail_verification() {
    let cfg = RunConfig::try_parse_from(["ffprng", "generate", "--construction", "rational", "--p", "2", "--e", "6", "--d", "2", "--mode", "sample:4", "--seed", "9"]).unwrap();
    let args = match &cfg.command {
        ffprng_cli::Command::Generate(g) => g.family.clone(),
        _ => unreachable!(),
    };
    let family = build_family(&args).unwrap();
    let mut seqs = collect_sequences(&family).unwrap();
    let vc = VerifyConfig { correlation_pairs: 0, pattern_sequences: 0, nl_sequences: 0, ..VerifyConfig::default() };
    assert!(verify_family(&seqs, &vc).unwrap().all_pass());

    let n = seqs[0].digits.len();
    seqs[0].digits = (0..n).map(|j| seqs[0].digits[j % 21]).collect();
    seqs[1].digits[0] ^= 1;
    let report = verify_family(&seqs, &vc).unwrap();
    assert!(!report.all_pass());
    let failed: Vec<&str> = report.checks.iter().filter(|c| c.status == CheckStatus::Fail).map(|c| c.id.as_str()).collect();
    assert!(failed.contains(&"period/0"));
}

#[test]
fn run_config_round_trips() {
    let cfg = RunConfig::try_parse_from(["ffprng", "verify", "--construction", "elliptic", "--p", "7", "--t", "-2", "--d", "2", "--mode", "sample:10", "--r", "1,3"]).unwrap();
    let text = serde_json::to_string(&cfg).unwrap();
    let back: RunConfig = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}
