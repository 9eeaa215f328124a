use clap::Parser;
use qell_cli::{Cli, Command, Format};
use std::process::{Command as Process, Output};

fn qell(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_qell")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn parses_documented_examples() {
    let c = Cli::try_parse_from(["qell", "beta-table", "--family", "q3", "--max-i", "64"]).unwrap();
    assert!(matches!(c.command, Command::BetaTable { max_i: 64, ref family, .. } if family == &["q3"]));
    let c = Cli::try_parse_from(["qell", "d1-table", "--ell", "5", "--max-weight", "24", "--format", "csv"]).unwrap();
    assert_eq!(c.format, Format::Csv);
    assert!(matches!(c.command, Command::D1Table { max_weight: 24, .. }));
    assert!(Cli::try_parse_from(["qell", "maps", "--ell", "x"]).is_err());
    assert!(Cli::try_parse_from(["qell", "beta-table"]).is_err());
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let o = qell(&["velu", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--bogus"));
}

#[test]
fn identities_report() {
    let o = qell(&["identities", "--ell", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "ell=5: t*f*=q*: OK; t*q*=f*psi: OK; t*t*=psi: OK\n");
}

#[test]
fn sphere_and_q3_tables_agree() {
    let o = qell(&["beta-table", "--family", "sphere", "--family", "q3", "--diff"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "sphere vs Q3: identical\n");
    let o = qell(&["beta-table", "--family", "sphere", "--family", "q5", "--diff", "--max-k", "1", "--format", "csv"]);
    assert!(stdout(&o).lines().any(|l| l == "Q5,a3^4/(2^1 v1^8),1,2,1,8"));
}

#[test]
fn output_is_reproducible() {
    let args = ["tate-normal-form", "--perturbations", "5", "--seed", "11", "--format", "json"];
    let (a, b) = (qell(&args), qell(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = qell(&["tate-normal-form", "--perturbations", "5", "--seed", "11", "--format", "csv"]);
    assert!(stdout(&other).starts_with("check,value,holds\nround_trip,50/50,true\n"));
}

#[test]
fn failed_verification_sets_exit_code() {
    let o = qell(&["verify-cocycle", "--element", r#"{"ell":3,"terms":[{"numerator":"x2","k":3,"j":2}]}"#]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("cocycle: FAIL\n"));
    let fixed = r#"{"ell":3,"terms":[{"numerator":"x2","k":3,"j":2},{"numerator":"x0^5","k":1,"j":5},{"numerator":"a3*(a4 + a2^2)^2","k":1,"j":1}]}"#;
    assert!(qell(&["verify-cocycle", "--element", fixed]).status.success());
    let o = qell(&["verify-cocycle", "--element", r#"{"ell":3,"bogus":1,"terms":[]}"#]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn svg_is_chart_only() {
    assert_eq!(qell(&["velu", "--format", "svg"]).status.code(), Some(2));
    let o = qell(&["chart", "--ell", "3", "--max-weight", "4", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "ell,weight,source_line,source_monomial,two_exponent,target_monomial\n3,2,1,v1^2,1,v1^2\n3,4,1,v1*v2,0,v1^4\n3,4,1,v1^4,4,v1*v2\n"
    );
    assert!(stdout(&qell(&["chart", "--ell", "3", "--max-weight", "4"])).starts_with("<svg"));
}

#[test]
fn d1_check_through_weight_12() {
    let o = qell(&["d1-table", "--ell", "3", "--max-weight", "12", "--check"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ell=3: 9/9 fixture rules reproduced; composite zero in every weight: OK"));
}

#[test]
fn maps_velu_bss_pass() {
    for args in [&["maps"][..], &["velu"], &["bss", "--ell", "5", "--max-n", "2"], &["tate-normal-form", "--b", "-1/2", "--perturbations", "3"]] {
        let o = qell(args);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
    }
    let o = qell(&["tate-normal-form", "--curve", "1,-1,-1,0,0", "--point", "0,0", "--format", "csv"]);
    assert!(stdout(&o).contains("b,1\n"));
}
