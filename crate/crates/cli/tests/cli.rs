use std::process::Command;

use num_bigint::BigInt;
use pentaverify_cli::{run, run_with, Hooks, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use pentaverify_core::qseries::{pochhammer, series_inverse, series_mul, Identity, PochhammerLength, QMonomial};
use pentaverify_core::{CoeffSeries, Result};

fn call(args: &[&str]) -> (i32, String, String) {
    call_with(args, &Hooks::default())
}

fn call_with(args: &[&str], hooks: &Hooks) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pentaverify").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err, hooks);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn seq_examples() {
    let (code, out, _) = call(&["seq", "p", "--max", "10"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("n,value\n"));
    assert!(out.ends_with("10,42\n"));
    assert_eq!(out.lines().count(), 12);

    assert_eq!(call(&["seq", "pod", "--max", "0"]).1, "n,value\n0,1\n");
    assert_eq!(call(&["seq", "overp", "--max", "2"]).1, "n,value\n0,1\n1,2\n2,4\n");
}

#[test]
fn seq_json_mirrors_csv() {
    let (code, out, _) = call(&["seq", "overp", "--max", "3", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["config"]["command"], "seq");
    assert_eq!(v["config"]["family"], "overp");
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["rows"][3]["value"], "8");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["seq", "q", "--max", "3"]).0, EXIT_USAGE);
    assert_eq!(call(&["seq", "p"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "identities", "--kmax", "0"]).0, EXIT_USAGE);
    assert_eq!(call(&["ratio", "--family", "mk", "--n", "0", "--k", "1"]).0, EXIT_USAGE);
    assert_eq!(call(&["circle", "--n", "5", "--k", "1", "--tol", "-1"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn identities_hold() {
    let (code, out, err) = call(&["verify", "identities", "--kmax", "10", "--degree", "200"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().count(), 1 + 30);
    assert!(out.lines().skip(1).all(|l| l.contains(",true,")));

    let (code, out, _) = call(&["verify", "identities", "--kmax", "3", "--degree", "0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 1 + 9);
}

/// Closed form of 𝓜_k with the j = 1 pentagonal exponent shifted by one.
fn off_by_one_sides(id: Identity, k: usize, order: usize) -> Result<(CoeffSeries, CoeffSeries)> {
    let (_, rhs) = id.sides(k, order)?;
    if id != Identity::MkClosedVsPositive {
        return id.sides(k, order);
    }
    let mut num = vec![BigInt::from(0); order + 1];
    for j in 0..k {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let a = j * (3 * j + 1) / 2 + usize::from(j == 1);
        let b = (j + 1) * (3 * j + 2) / 2;
        if a <= order {
            num[a] += sign;
        }
        if b <= order {
            num[b] -= sign;
        }
    }
    let num = CoeffSeries::from_coeffs(num)?;
    let euler = pochhammer(QMonomial::q_pow(1), 1, PochhammerLength::Infinite, order)?;
    let closed = series_mul(&num, &series_inverse(&euler)?)?;
    let closed = if k % 2 == 1 { closed } else { closed.neg() };
    Ok((closed, rhs))
}

#[test]
fn injected_exponent_error_is_caught() {
    let hooks = Hooks {
        identity_sides: off_by_one_sides,
    };
    let (code, out, err) = call_with(&["verify", "identities", "--kmax", "3", "--degree", "50"], &hooks);
    assert_eq!(code, EXIT_FAILED);
    // k = 1 has no j = 1 term and still holds.
    assert!(out.contains("mk_closed_vs_positive,1,50,true,,,"));
    // The shifted term moves q² to q³, so q² is the first coefficient to differ.
    assert!(err.contains("identity mk_closed_vs_positive fails for k = 2: first bad exponent 2"), "{err}");
    assert!(out.contains("mk_closed_vs_positive,2,50,false,2,"));
}

#[test]
fn oracles_match_formulas() {
    let (code, out, err) = call(&["verify", "oracles", "--family", "mk", "--ncap", "40", "--kmax", "5"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().count(), 1 + 40 * 5);
    assert!(out.starts_with("family,n,k,formula,oracle,match\n"));

    let (code, _, err) = call(&["verify", "oracles", "--family", "mkbar", "--ncap", "25", "--kmax", "4"]);
    assert_eq!(code, EXIT_OK, "{err}");

    let (code, _, err) = call(&["verify", "oracles", "--family", "mk", "--ncap", "1000", "--kmax", "5"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cap"));
}

#[test]
fn ratio_examples() {
    let (code, out, err) = call(&["ratio", "--family", "mk", "--n", "100,400,1600,6400", "--k", "1", "--assert-converge"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.starts_with("family,n,k,ln_exact,ln_main,rel_dev,in_regime\n"));

    // Reversed order is diverging along the input.
    let (code, _, err) = call(&["ratio", "--family", "mk", "--n", "6400,100", "--k", "1", "--assert-converge"]);
    assert_eq!(code, EXIT_FAILED);
    assert!(err.contains("does not strictly decrease"));

    let (_, out, _) = call(&["ratio", "--family", "mk", "--n", "255,256", "--k", "2"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert!(rows[0].ends_with(",false") && rows[1].ends_with(",true"));

    let (code, out, _) = call(&["ratio", "--family", "mkbar", "--n", "10000", "--k", "1,2,3"]);
    assert_eq!(code, EXIT_OK);
    let ln_main: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(4).unwrap()).collect();
    assert_eq!(ln_main.len(), 3);
    assert!(ln_main.iter().all(|v| *v == ln_main[0]));
}

#[test]
fn ratio_zero_values_are_undefined() {
    let (code, out, _) = call(&["ratio", "--family", "mk", "--n", "2", "--k", "2", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][0]["rel_dev"], serde_json::Value::Null);
    assert_eq!(v["rows"][0]["ln_exact"], serde_json::Value::Null);
    let (_, csv, _) = call(&["ratio", "--family", "mk", "--n", "2", "--k", "2"]);
    assert!(csv.lines().nth(1).unwrap().contains(",-inf,") && csv.contains(",nan,"));
}

#[test]
fn circle_examples() {
    let (code, out, _) = call(&["circle", "--n", "10", "--k", "1"]);
    assert_eq!(code, EXIT_OK);
    let row = out.lines().nth(1).unwrap();
    assert!(row.starts_with("10,1,") && row.ends_with(",12,12,true"), "{row}");

    let (code, out, _) = call(&["circle", "--n", "7", "--k", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().nth(1).unwrap().ends_with(",1,1,true"));

    let (code, _, err) = call(&["circle", "--n", "200", "--k", "1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("outside the supported range"));
}

#[test]
fn lemma_examples() {
    let (code, out, err) = call(&["lemmas", "--n", "400,1600,6400", "--k", "1,2"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().count(), 1 + 12 + 1);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",true")));
    let eta = out.lines().last().unwrap();
    assert!(eta.starts_with("eta_tau_i,"));
    let defect: f64 = eta.split(',').nth(4).unwrap().parse().unwrap();
    assert!(defect < 1e-6);

    let (code, _, err) = call(&["lemmas", "--n", "400", "--k", "50"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("regime"));
    assert_eq!(call(&["lemmas", "--n", "400", "--k", "3", "--force", "--away-samples", "16"]).0, EXIT_OK);
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ratio.csv");
    let args = ["ratio", "--family", "mp", "--n", "100,1000", "--k", "1,2", "--out", path.to_str().unwrap()];
    let (code, out, _) = call(&args);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let first = std::fs::read(&path).unwrap();
    call(&args);
    assert_eq!(first, std::fs::read(&path).unwrap());
    let text = String::from_utf8(first).unwrap();
    let keys: Vec<String> = text.lines().skip(1).map(|l| l.split(',').take(3).collect::<Vec<_>>().join(",")).collect();
    assert_eq!(keys, ["mp,100,1", "mp,100,2", "mp,1000,1", "mp,1000,2"]);

    let bad = dir.path().join("missing").join("x.csv");
    assert_eq!(call(&["seq", "p", "--max", "3", "--out", bad.to_str().unwrap()]).0, EXIT_USAGE);
}

#[test]
fn run_matches_run_with_defaults() {
    let mut a = Vec::new();
    let mut e = Vec::new();
    assert_eq!(run(["pentaverify", "seq", "pod", "--max", "5"], &mut a, &mut e), EXIT_OK);
    assert_eq!(String::from_utf8(a).unwrap(), call(&["seq", "pod", "--max", "5"]).1);
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pentaverify"))
}

#[test]
fn binary_exit_codes_and_threads() {
    let out = binary().args(["seq", "p", "--max", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("10,42\n"));

    let one = binary()
        .env("PENTAVERIFY_THREADS", "1")
        .args(["verify", "oracles", "--family", "mp", "--ncap", "20", "--kmax", "3"])
        .output()
        .unwrap();
    let many = binary()
        .env("PENTAVERIFY_THREADS", "4")
        .args(["verify", "oracles", "--family", "mp", "--ncap", "20", "--kmax", "3"])
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);

    let bad = binary().env("PENTAVERIFY_THREADS", "zero").args(["seq", "p", "--max", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));

    let circle = binary().args(["circle", "--n", "200", "--k", "1"]).output().unwrap();
    assert_eq!(circle.status.code(), Some(2));
}
