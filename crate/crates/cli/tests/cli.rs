use std::path::Path;
use std::process::Command;

use num_rational::BigRational;
use padic_hyper::hyper::{pfq_terminating_exact, HypergeometricParams};
use padic_hyper::lfunc::lp_value;
use padic_hyper::theorem1::a_zeta;
use padic_hyper::{Padic, Precision};
use padic_hyper_cli::report::{PadicDigits, Report, Status};

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_padic-hyper"))
        .env_remove("PADIC_HYPER_CACHE")
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn report(args: &[&str]) -> (i32, Report) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = run(&full);
    (
        code,
        Report::from_json(&out).unwrap_or_else(|e| panic!("{e}: {out}")),
    )
}

fn cached(cache: &Path, args: &[&str]) -> Report {
    let mut full = vec!["--cache", cache.to_str().unwrap()];
    full.extend_from_slice(args);
    let (code, r) = report(&full);
    assert_eq!(code, 0, "{}", r.to_json());
    r
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("constants.jsonl");
    let args = ["lp", "--p", "3", "--s", "2", "--precision", "8"];
    let first = cached(&path, &args);
    let second = cached(&path, &args);
    assert_eq!(first.certificate.cached, Some(false));
    assert_eq!(second.certificate.cached, Some(true));
    assert_eq!(first.result, second.result);
    assert_eq!(first.result.digits.len(), 8);

    // a lower precision is served from the stored entry
    let short = cached(&path, &["lp", "--p", "3", "--s", "2", "--precision", "5"]);
    assert_eq!(short.certificate.cached, Some(true));
    assert_eq!(short.result.digits, first.result.digits[..5]);
}

#[test]
fn cached_values_match_fresh_computation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("constants.jsonl");
    let n = 10;
    let lp_args = [
        ("3", "2", "0"),
        ("3", "4", "0"),
        ("5", "3", "0"),
        ("5", "3", "2"),
        ("5", "2", "2"),
    ];
    for (p, s, j) in lp_args {
        let args = ["lp", "--p", p, "--s", s, "--branch", j, "--precision", "10"];
        cached(&path, &args);
        let hit = cached(&path, &args);
        assert_eq!(hit.certificate.cached, Some(true));
        let fresh = lp_value(
            p.parse().unwrap(),
            s.parse::<i64>().unwrap(),
            j.parse().unwrap(),
            &Precision::new(20),
        )
        .unwrap()
        .value;
        assert_eq!(
            hit.result.digits[..],
            PadicDigits::new(&fresh, n).digits[..],
            "L_{p}({s}, ω^{j})"
        );
        assert_eq!(hit.result.valuation, fresh.valuation());
    }

    let a_args = ["compute-a", "--p", "3", "--precision", "10"];
    cached(&path, &a_args);
    let hit = cached(&path, &a_args);
    assert_eq!(hit.certificate.cached, Some(true));
    let (a, _) = a_zeta(3, 9, &Precision::new(10)).unwrap();
    assert_eq!(hit.result.digits, PadicDigits::new(a.coeff(0), 10).digits);

    let bn_args = [
        "compute-bn",
        "--p",
        "3",
        "--n",
        "2",
        "--t",
        "-3",
        "--precision",
        "10",
    ];
    let fresh = cached(&path, &bn_args);
    let hit = cached(&path, &bn_args);
    assert_eq!(hit.certificate.cached, Some(true));
    assert_eq!(hit.result, fresh.result);
}

#[test]
fn verify_paper_is_deterministic() {
    let (c1, mut r1) = report(&["verify-paper"]);
    let (c2, mut r2) = report(&["verify-paper"]);
    assert_eq!((c1, c2), (0, 0));
    assert!(r1.elapsed_ms.is_some());
    r1.elapsed_ms = None;
    r2.elapsed_ms = None;
    // check details carry wall-clock timings
    for r in [&mut r1, &mut r2] {
        for row in &mut r.result.table {
            row["detail"] = serde_json::Value::Null;
        }
    }
    assert_eq!(r1, r2);
    assert_eq!(r1.result.table.len(), 13);
}

#[test]
fn monthly_table() {
    let (code, r) = report(&["verify-monthly", "--n-max", "100"]);
    assert_eq!(code, 0);
    assert_eq!(r.result.table.len(), 100);
    assert!(r.result.table.iter().all(|row| row["equal"] == true));
}

#[test]
fn exit_codes() {
    let (code, r) = report(&[
        "compute-a",
        "--p",
        "3",
        "--precision",
        "4",
        "--expect",
        "2,1,2,1",
    ]);
    assert_eq!((code, r.status), (1, Status::Mismatch));
    let (code, _) = report(&[
        "compute-a",
        "--p",
        "3",
        "--precision",
        "4",
        "--expect",
        "2,1,2,0",
    ]);
    assert_eq!(code, 0);
    let (code, r) = report(&["lp", "--p", "3", "--s", "1"]);
    assert_eq!((code, r.status), (2, Status::UsageError));
    let (code, _) = report(&["lp", "--p", "9", "--s", "2"]);
    assert_eq!(code, 2);
    let (code, _) = report(&["eval-hypergeometric", "--t", "1", "--x", "0", "--p", "3"]);
    assert_eq!(code, 2);
    // clap rejects a missing argument before any report exists
    let (code, _) = run(&["lp", "--p", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn human_output() {
    let (code, out) = run(&["compute-a", "--p", "3", "--precision", "10"]);
    assert_eq!(code, 0);
    assert!(out.contains("digits 2,1,2,0,0,0,2,1,2,2"), "{out}");
}

#[test]
fn other_subcommands() {
    let (code, r) = report(&["verify-series-identities", "--order", "12"]);
    assert_eq!(code, 0);
    assert_eq!(r.result.table.len(), 2);

    let (code, r) = report(&[
        "gamma-limit",
        "--p",
        "3",
        "--s-max",
        "4",
        "--precision",
        "8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.result.table.len(), 4);

    let (code, r) = report(&[
        "verify-theorem1",
        "--p",
        "5",
        "--r",
        "2",
        "--precision",
        "6",
    ]);
    assert_eq!(code, 0, "{}", r.to_json());
    assert_eq!(r.result.valuation, None);

    // at a non-negative integer x the Mahler series terminates
    let (code, r) = report(&[
        "eval-hypergeometric",
        "--alphas",
        "1/2",
        "--betas",
        "1",
        "--t",
        "3",
        "--x",
        "2",
        "--p",
        "3",
        "--precision",
        "6",
    ]);
    assert_eq!(code, 0, "{}", r.to_json());
    let params = HypergeometricParams::new(vec![q(1, 2)], vec![q(1, 1)], q(3, 1), 3).unwrap();
    let exact = Padic::from_rational(&pfq_terminating_exact(&params, 2).unwrap(), 3, 30);
    assert_eq!(r.result.digits, PadicDigits::new(&exact, 6).digits);
    assert_eq!(r.result.valuation, exact.valuation());
    assert_eq!(r.result.digits.len(), 6);
}
