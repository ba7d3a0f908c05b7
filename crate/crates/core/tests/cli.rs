use std::process::Command;

use mzv_core::cli::run;

fn mzv(args: &[&str]) -> mzv_core::cli::Outcome {
    run(std::iter::once("mzv").chain(args.iter().copied()))
}

#[test]
fn product_commands() {
    let out = mzv(&["product", "--type", "shuffle", "2", "3"]);
    assert_eq!(out.status, 0);
    assert_eq!(out.stdout, "1·(2,3)+3·(3,2)+6·(4,1)\n");
    let out = mzv(&["product", "--type", "stuffle", "2", "3"]);
    assert_eq!(out.stdout, "1·(5)+1·(2,3)+1·(3,2)\n");
    let out = mzv(&["product", "--type", "stuffle", "()", "2,1"]);
    assert_eq!(out.stdout, "1·(2,1)\n");
}

#[test]
fn regularize_and_rho() {
    assert_eq!(
        mzv(&["regularize", "--type", "stuffle", "()"]).stdout,
        "1\n"
    );
    assert_eq!(
        mzv(&["regularize", "--type", "stuffle", "1"]).stdout,
        "1·T\n"
    );
    assert_eq!(
        mzv(&["regularize", "--type", "stuffle", "1,2"]).stdout,
        "1·ζ(2)·T + (-1·ζ(3)-1·ζ(2,1))\n"
    );
    assert_eq!(
        mzv(&["regularize", "--type", "shuffle", "1,2"]).stdout,
        "1·ζ(2)·T + -2·ζ(2,1)\n"
    );
    assert_eq!(
        mzv(&["rho", "1,1"]).stdout,
        mzv(&["regularize", "--type", "shuffle", "1,1"]).stdout
    );
}

#[test]
fn bivariate_command() {
    let out = mzv(&["bivariate", "--type", "stuffle", "1"]);
    assert_eq!(out.stdout, "1·x·T + 1·y·T\n");
}

#[test]
fn eval_prints_exactly_the_requested_digits() {
    let out = mzv(&["eval", "2", "--digits", "30"]);
    assert_eq!(out.status, 0);
    assert_eq!(out.stdout, "1.644934066848226436472415166646\n");
    for d in [10, 25, 41] {
        let out = mzv(&["eval", "3,1", "--digits", &d.to_string()]);
        let (_, frac) = out.stdout.trim_end().split_once('.').unwrap();
        assert_eq!(frac.len(), d);
    }
}

#[test]
fn verify_ikz_weight_five() {
    let out = mzv(&[
        "verify",
        "--identity",
        "ikz",
        "--max-weight",
        "5",
        "--digits",
        "40",
        "--tol",
        "1e-30",
    ]);
    assert_eq!(out.status, 0, "{}", out.stdout);
    assert!(
        out.stdout.starts_with("PASS ikz: 31/31 passed"),
        "{}",
        out.stdout
    );
}

#[test]
fn verify_without_type_runs_both_products() {
    let out = mzv(&["verify", "--identity", "reg-coeff", "--max-weight", "4"]);
    assert_eq!(out.status, 0);
    assert_eq!(out.stdout.lines().count(), 2);
    assert!(out.stdout.contains("[stuffle]") && out.stdout.contains("[shuffle]"));
    let out = mzv(&[
        "verify",
        "--identity",
        "reg-coeff",
        "--max-weight",
        "4",
        "--type",
        "shuffle",
    ]);
    assert_eq!(out.stdout.lines().count(), 1);
}

#[test]
fn verify_reports_failures_with_status_one() {
    // a tolerance far below the working precision cannot be met
    let out = mzv(&[
        "verify",
        "--identity",
        "product-hom",
        "--max-weight",
        "4",
        "--type",
        "shuffle",
        "--digits",
        "10",
        "--tol",
        "1e-60",
    ]);
    assert_eq!(out.status, 1, "{}", out.stdout);
    assert!(
        out.stdout.starts_with("FAIL product-hom [shuffle]"),
        "{}",
        out.stdout
    );
}

#[test]
fn records_format_is_json_lines() {
    let out = mzv(&[
        "--format", "records", "product", "--type", "shuffle", "2", "3",
    ]);
    let lines: Vec<serde_json::Value> = out
        .stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["index"], "2,3");
    assert_eq!(lines[2]["coefficient"], "6");

    let out = mzv(&[
        "verify",
        "--identity",
        "ikz",
        "--max-weight",
        "3",
        "--format",
        "records",
    ]);
    let lines: Vec<serde_json::Value> = out
        .stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 7 + 1);
    assert_eq!(lines[7]["summary"], true);
    assert_eq!(lines[7]["checked"], 7);
    let one_two = lines.iter().find(|l| l["subject"] == "1,2").unwrap();
    assert_eq!(one_two["exact"], false);
    assert_eq!(one_two["passed"], true);
}

#[test]
fn outputs_are_reproducible() {
    let args = ["bivariate", "--type", "shuffle", "1,2,1"];
    assert_eq!(mzv(&args), mzv(&args));
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(mzv(&[]).status, 2);
    assert_eq!(
        mzv(&["verify", "--identity", "nope", "--max-weight", "3"]).status,
        2
    );
    assert_eq!(
        mzv(&[
            "verify",
            "--identity",
            "ikz",
            "--max-weight",
            "3",
            "--tol",
            "2e-5"
        ])
        .status,
        2
    );
    assert_eq!(mzv(&["eval", "2", "--digits", "9"]).status, 2);
    let out = mzv(&["product", "--type", "stuffle", "2,x", "3"]);
    assert_eq!(out.status, 1);
    assert!(out.stderr.contains("x"), "{}", out.stderr);
    assert_eq!(mzv(&["eval", "1", "--digits", "12"]).status, 1);
}

#[test]
fn cache_flag_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let from_env = dir.path().join("env.json");
    let from_flag = dir.path().join("flag.json");
    let bin = env!("CARGO_BIN_EXE_mzv");

    let out = Command::new(bin)
        .args(["eval", "3", "--digits", "20"])
        .env("MZV_CACHE", &from_env)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "1.20205690315959428540\n"
    );
    let cached: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&from_env).unwrap()).unwrap();
    assert!(cached.get("3@20").is_some(), "{cached}");

    let out = Command::new(bin)
        .args(["eval", "2", "--digits", "20", "--cache"])
        .arg(&from_flag)
        .env("MZV_CACHE", &from_env)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(from_flag.exists());
    let env_cache: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&from_env).unwrap()).unwrap();
    assert!(
        env_cache.get("2@20").is_none(),
        "flag must win over the environment"
    );

    let out = Command::new(bin)
        .args(["product", "--type", "both", "2", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
