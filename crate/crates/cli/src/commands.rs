//! Implementations behind the `normalize`, `table` and `verify` subcommands.
//!
//! Verification suites run their cells sequentially in index order, so
//! reports merge deterministically and identical invocations produce
//! byte-identical output.

use crate::config::{check_guard, OutputFormat, RunConfig};
use crate::error::CliError;
use crate::parser::{evaluate, parse_expression};
use lamshift::exactnum::{MultiPoly, Var};
use lamshift::lamstirling::{
    cached_table, lambda_r_stirling1, unsigned_lambda_stirling1, verify_remark8_symmetry,
    verify_theorem4, verify_theorem5, verify_theorem7, StirlingKind,
};
use lamshift::ncalgebra::{
    normalize, normalize_with, CommutationRule, Letter, NcExpression, NormalForm,
    RewriteStrategy, Word,
};
use lamshift::oprep::{verify_commutator, verify_rep_consistency, verify_theorem6};
use lamshift::report::{EqualityCheck, VerificationReport};
use lamshift::series::{egf_lambda_r_stirling, egf_unsigned_lambda_stirling, verify_eq29};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

/// Seed for the randomized confluence suite when none is given.
pub const DEFAULT_CONFLUENCE_SEED: u64 = 1729;

/// JSON rendering of a normal form:
/// `{"rule": ..., "terms": [{"dag": j, "a": k, "coeff": [[L-deg, r-deg, num, den], ...]}]}`
/// with terms sorted by dag power descending, then a power descending.
/// Numerator and denominator are strings so arbitrary precision survives.
pub fn normal_form_to_json(nf: &NormalForm, rule_name: &str) -> serde_json::Value {
    let mut terms = Vec::new();
    let entries: Vec<_> = nf.terms().collect();
    for (&(dag_pow, a_pow), coeff) in entries.into_iter().rev() {
        let coeff_json: Vec<serde_json::Value> = coeff
            .canonical_terms()
            .into_iter()
            .map(|(exps, q)| {
                serde_json::json!([
                    exps.get(Var::Lambda),
                    exps.get(Var::R),
                    q.numer().to_string(),
                    q.denom().to_string()
                ])
            })
            .collect();
        terms.push(serde_json::json!({"dag": dag_pow, "a": a_pow, "coeff": coeff_json}));
    }
    serde_json::json!({"rule": rule_name, "terms": terms})
}

/// Parse, evaluate and normal-order an expression.
pub fn cmd_normalize(src: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let ast = parse_expression(src)?;
    let rule = cfg.rule.build()?;
    let nf = normalize(&evaluate(&ast), &rule);
    Ok(match cfg.output {
        OutputFormat::Plain => format!("{nf}\n"),
        OutputFormat::Json => format!("{}\n", normal_form_to_json(&nf, cfg.rule.name())),
        OutputFormat::Csv => {
            let mut out = String::new();
            let entries: Vec<_> = nf.terms().collect();
            for (&(dag_pow, a_pow), coeff) in entries.into_iter().rev() {
                writeln!(out, "{dag_pow},{a_pow},{coeff}").expect("string write");
            }
            out
        }
    })
}

/// Emit a Stirling triangle up to `max_n`.
pub fn cmd_table(kind: StirlingKind, max_n: u32, cfg: &RunConfig) -> Result<String, CliError> {
    check_guard("--max-n", max_n)?;
    let table = cached_table(kind, max_n);
    Ok(match cfg.output {
        OutputFormat::Plain => {
            let mut out = String::new();
            for n in 0..=max_n {
                for k in 0..=n {
                    writeln!(out, "[{n},{k}] {}", table.get(n, k)).expect("string write");
                }
            }
            out
        }
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => format!("{}\n", table.to_json()),
    })
}

/// The identity suites the CLI can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Thm4,
    Thm5,
    Thm6,
    Thm7,
    Remark8,
    Eq26,
    Eq27,
    Eq29,
    Confluence,
    Rep,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm4 => "thm4",
            Suite::Thm5 => "thm5",
            Suite::Thm6 => "thm6",
            Suite::Thm7 => "thm7",
            Suite::Remark8 => "remark8",
            Suite::Eq26 => "eq26",
            Suite::Eq27 => "eq27",
            Suite::Eq29 => "eq29",
            Suite::Confluence => "confluence",
            Suite::Rep => "rep",
        }
    }
}

/// Range parameters for `verify`; unset values take per-suite defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyParams {
    pub max_n: Option<u32>,
    pub max_m: Option<u32>,
    pub max_k: Option<u32>,
    pub order: Option<u32>,
    pub j: Option<u32>,
    pub count: Option<u32>,
    pub max_len: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub text: String,
    pub all_passed: bool,
}

pub fn cmd_verify(
    suite: Suite,
    params: &VerifyParams,
    cfg: &RunConfig,
) -> Result<SuiteOutcome, CliError> {
    let reports = run_suite(suite, params)?;
    Ok(summarize(suite, &reports, cfg.output))
}

/// Render a report list; `all_passed` decides the process exit status.
pub fn summarize(suite: Suite, reports: &[VerificationReport], output: OutputFormat) -> SuiteOutcome {
    let all_passed = reports.iter().all(|r| r.passed());
    let text = match output {
        OutputFormat::Plain => {
            let mut out = String::new();
            for report in reports {
                writeln!(out, "{report}").expect("string write");
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            writeln!(
                out,
                "suite {}: {passed}/{} cells passed",
                suite.name(),
                reports.len()
            )
            .expect("string write");
            out
        }
        OutputFormat::Json => {
            let cells: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "subject": r.subject,
                        "pass": r.passed(),
                        "checks": r.checks.iter().map(|c| serde_json::json!({
                            "label": c.label,
                            "lhs": c.lhs,
                            "rhs": c.rhs,
                            "pass": c.pass,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            format!(
                "{}\n",
                serde_json::json!({
                    "suite": suite.name(),
                    "pass": all_passed,
                    "cells": cells,
                })
            )
        }
        OutputFormat::Csv => {
            let mut out = String::new();
            for report in reports {
                for check in &report.checks {
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        report.subject, check.label, check.pass, check.lhs, check.rhs
                    )
                    .expect("string write");
                }
            }
            out
        }
    };
    SuiteOutcome { text, all_passed }
}

fn run_suite(suite: Suite, p: &VerifyParams) -> Result<Vec<VerificationReport>, CliError> {
    match suite {
        Suite::Thm4 => {
            let max_n = p.max_n.unwrap_or(12);
            check_guard("--max-n", max_n)?;
            if p.j == Some(0) {
                return Err(CliError::Usage(
                    "the recurrence suite is stated for j >= 1".into(),
                ));
            }
            let mut reports = Vec::new();
            for n in 0..=max_n {
                match p.j {
                    Some(j) if j > n + 1 => continue,
                    Some(j) => reports
                        .push(verify_theorem4(n, j).map_err(|e| CliError::Usage(e.to_string()))?),
                    None => {
                        for j in 1..=n + 1 {
                            reports.push(
                                verify_theorem4(n, j)
                                    .map_err(|e| CliError::Usage(e.to_string()))?,
                            );
                        }
                    }
                }
            }
            if reports.is_empty() {
                return Err(CliError::Usage(format!(
                    "--j {} is out of range for every n <= {max_n}",
                    p.j.expect("only the fixed-j path can end up empty")
                )));
            }
            Ok(reports)
        }
        Suite::Thm5 => {
            let max_n = p.max_n.unwrap_or(12);
            check_guard("--max-n", max_n)?;
            Ok((0..=max_n).map(verify_theorem5).collect())
        }
        Suite::Thm6 => {
            let max_n = p.max_n.unwrap_or(12);
            check_guard("--max-n", max_n)?;
            Ok((1..=max_n).map(verify_theorem6).collect())
        }
        Suite::Thm7 | Suite::Remark8 => {
            let max_m = p.max_m.unwrap_or(10);
            let max_n = p.max_n.unwrap_or(10);
            check_guard("--max-m", max_m)?;
            check_guard("--max-n", max_n)?;
            let mut reports = Vec::new();
            for m in 0..=max_m {
                for n in 0..=max_n {
                    reports.push(match suite {
                        Suite::Thm7 => verify_theorem7(m, n),
                        _ => verify_remark8_symmetry(m, n),
                    });
                }
            }
            Ok(reports)
        }
        Suite::Eq26 => egf_suite(p, "eq26", unsigned_lambda_stirling1, |k, order| {
            egf_unsigned_lambda_stirling(k, order)
        }),
        Suite::Eq27 => egf_suite(p, "eq27", lambda_r_stirling1, |k, order| {
            egf_lambda_r_stirling(k, order)
        }),
        Suite::Eq29 => {
            let max_n = p.max_n.unwrap_or(10);
            check_guard("--max-n", max_n)?;
            let mut reports = Vec::new();
            for n in 0..=max_n {
                for k in 0..=n {
                    reports.push(verify_eq29(n, k));
                }
            }
            Ok(reports)
        }
        Suite::Confluence => {
            let count = p.count.unwrap_or(500);
            let max_len = p.max_len.unwrap_or(10);
            check_guard("--max-len", max_len)?;
            Ok(confluence_cells(
                count,
                max_len,
                p.seed.unwrap_or(DEFAULT_CONFLUENCE_SEED),
            ))
        }
        Suite::Rep => {
            let max_n = p.max_n.unwrap_or(6);
            check_guard("--max-n", max_n)?;
            let mut reports = vec![verify_commutator(10)];
            reports.extend((0..=max_n).map(verify_rep_consistency));
            Ok(reports)
        }
    }
}

fn egf_suite(
    p: &VerifyParams,
    family: &str,
    expansion: impl Fn(u32, u32) -> MultiPoly,
    egf: impl Fn(u32, usize) -> Vec<MultiPoly>,
) -> Result<Vec<VerificationReport>, CliError> {
    let max_k = p.max_k.unwrap_or(6);
    let order = p.order.unwrap_or(12);
    check_guard("--max-k", max_k)?;
    check_guard("--order", order)?;
    if max_k > order {
        return Err(CliError::Usage(format!(
            "--max-k {max_k} must not exceed --order {order}"
        )));
    }
    let mut reports = Vec::new();
    for k in 0..=max_k {
        let entries = egf(k, order as usize);
        let mut report = VerificationReport::new(format!("{family} k={k} order={order}"));
        for n in 0..=order {
            report.push(EqualityCheck::compare(
                format!("n={n}"),
                &entries[n as usize],
                &expansion(n, k),
            ));
        }
        reports.push(report);
    }
    Ok(reports)
}

fn confluence_cells(count: u32, max_len: u32, seed: u64) -> Vec<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rules = [
        ("lambda-shift", CommutationRule::lambda_shift()),
        ("shift", CommutationRule::shift()),
        ("weyl", CommutationRule::weyl()),
    ];
    (0..count)
        .map(|i| {
            let len = rng.gen_range(0..=max_len as usize);
            let letters = (0..len)
                .map(|_| {
                    if rng.gen::<bool>() {
                        Letter::A
                    } else {
                        Letter::ADag
                    }
                })
                .collect();
            let word = Word::new(letters);
            let expr = NcExpression::from_word(word.clone());
            let mut report = VerificationReport::new(format!("word[{i}] = {word}"));
            for (name, rule) in &rules {
                let left = normalize_with(&expr, rule, RewriteStrategy::Leftmost);
                let right = normalize_with(&expr, rule, RewriteStrategy::Rightmost);
                report.push(EqualityCheck::compare(
                    format!("{name} strategies"),
                    &left,
                    &right,
                ));
            }
            report
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RuleChoice;

    fn cfg(output: OutputFormat) -> RunConfig {
        RunConfig {
            rule: RuleChoice::LambdaShift,
            output,
        }
    }

    #[test]
    fn normalize_plain_matches_known_displays() {
        let got = cmd_normalize("(ad a)^2", &cfg(OutputFormat::Plain)).unwrap();
        assert_eq!(got, "ad^2 a^2 + L ad a^2\n");

        let weyl = RunConfig {
            rule: RuleChoice::Weyl,
            output: OutputFormat::Plain,
        };
        assert_eq!(cmd_normalize("a ad", &weyl).unwrap(), "ad a + 1\n");

        let shift = RunConfig {
            rule: RuleChoice::Shift,
            output: OutputFormat::Plain,
        };
        assert_eq!(
            cmd_normalize("(ad a)^2", &shift).unwrap(),
            "ad^2 a^2 + ad a^2\n"
        );
    }

    #[test]
    fn normalize_json_schema() {
        let got = cmd_normalize("(ad a)^2", &cfg(OutputFormat::Json)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&got).unwrap();
        assert_eq!(
            value,
            serde_json::json!({
                "rule": "lambda-shift",
                "terms": [
                    {"dag": 2, "a": 2, "coeff": [[0, 0, "1", "1"]]},
                    {"dag": 1, "a": 2, "coeff": [[1, 0, "1", "1"]]},
                ]
            })
        );
    }

    #[test]
    fn normalize_csv_rows() {
        let got = cmd_normalize("(ad a)^2", &cfg(OutputFormat::Csv)).unwrap();
        assert_eq!(got, "2,2,1\n1,2,L\n");
    }

    #[test]
    fn table_guard_is_enforced() {
        let err = cmd_table(StirlingKind::UnsignedLambdaS1, 65, &cfg(OutputFormat::Csv))
            .unwrap_err();
        assert!(matches!(err, CliError::SizeGuard { .. }), "{err}");
    }

    #[test]
    fn table_csv_golden_rows() {
        let got = cmd_table(StirlingKind::UnsignedLambdaS1, 3, &cfg(OutputFormat::Csv)).unwrap();
        assert!(got.lines().any(|l| l == "3,1,2*L^2"), "{got}");
        let got = cmd_table(StirlingKind::LambdaRS1, 2, &cfg(OutputFormat::Csv)).unwrap();
        assert!(got.lines().any(|l| l == "2,1,2*r + L"), "{got}");
    }

    #[test]
    fn thm4_rejects_j_zero() {
        let params = VerifyParams {
            j: Some(0),
            ..VerifyParams::default()
        };
        let err = cmd_verify(Suite::Thm4, &params, &cfg(OutputFormat::Plain)).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)), "{err}");
    }

    #[test]
    fn egf_suite_rejects_k_beyond_order() {
        let params = VerifyParams {
            max_k: Some(5),
            order: Some(3),
            ..VerifyParams::default()
        };
        let err = cmd_verify(Suite::Eq26, &params, &cfg(OutputFormat::Plain)).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)), "{err}");
    }

    #[test]
    fn small_suites_pass_and_merge_in_order() {
        let params = VerifyParams {
            max_n: Some(4),
            max_m: Some(3),
            max_k: Some(2),
            order: Some(4),
            count: Some(20),
            ..VerifyParams::default()
        };
        for suite in [
            Suite::Thm4,
            Suite::Thm5,
            Suite::Thm6,
            Suite::Thm7,
            Suite::Remark8,
            Suite::Eq26,
            Suite::Eq27,
            Suite::Eq29,
            Suite::Confluence,
            Suite::Rep,
        ] {
            let outcome = cmd_verify(suite, &params, &cfg(OutputFormat::Plain)).unwrap();
            assert!(outcome.all_passed, "suite {}: {}", suite.name(), outcome.text);
            assert!(outcome.text.contains("cells passed"));
        }
    }

    #[test]
    fn failing_cells_drive_the_exit_status_and_are_listed() {
        let mut bad = VerificationReport::new("synthetic cell");
        bad.push(EqualityCheck {
            label: "forced".into(),
            lhs: "1".into(),
            rhs: "2".into(),
            pass: false,
        });
        let mut good = VerificationReport::new("fine cell");
        good.push(EqualityCheck::compare("trivial", &1, &1));

        let outcome = summarize(Suite::Thm4, &[good, bad], OutputFormat::Plain);
        assert!(!outcome.all_passed);
        assert!(outcome.text.contains("FAIL synthetic cell"));
        assert!(outcome.text.contains("forced: 1 != 2"));
        assert!(outcome.text.contains("1/2 cells passed"));

        let json = summarize(
            Suite::Thm4,
            &[VerificationReport::new("empty")],
            OutputFormat::Json,
        );
        let value: serde_json::Value = serde_json::from_str(&json.text).unwrap();
        assert_eq!(value["pass"], serde_json::json!(true));
    }

    #[test]
    fn confluence_is_deterministic_per_seed() {
        let a = confluence_cells(25, 10, 7);
        let b = confluence_cells(25, 10, 7);
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.passed()));
    }
}
