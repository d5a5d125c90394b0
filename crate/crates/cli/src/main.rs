//! `lamshift`: exact normal ordering in the λ-shift algebra, λ-Stirling
//! tables, and mechanical identity verification.

use clap::{Parser, Subcommand, ValueEnum};
use lamshift::lamstirling::StirlingKind;
use lamshift_cli::{
    cmd_normalize, cmd_table, cmd_verify, CliError, OutputFormat, RuleChoice, RunConfig, Suite,
    VerifyParams,
};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lamshift",
    version,
    about = "Normal ordering in the lambda-shift algebra a a† - a† a = L a, \
             lambda-Stirling tables, and identity verification suites",
    after_help = "Range parameters are capped by a size guard (default 64); \
                  set LAMSHIFT_MAX_N to override it."
)]
struct Cli {
    /// Commutation rule: a a† = a† a + alpha a + beta
    #[arg(long, global = true, value_enum, default_value_t = RuleName::LambdaShift)]
    rule: RuleName,

    /// alpha scalar for --rule custom, in the polynomial syntax over L and r
    #[arg(long, global = true, value_name = "POLY")]
    alpha: Option<String>,

    /// beta scalar for --rule custom
    #[arg(long, global = true, value_name = "POLY")]
    beta: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Output::Plain)]
    output: Output,

    /// Largest n in a table or verification grid
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<u32>,

    /// Series truncation order for the generating-function suites
    #[arg(long, global = true, value_name = "N")]
    order: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression in the letters a, ad and print its normal form
    Normalize {
        /// Expression, e.g. "(ad a)^3" or "((ad + r) a)^2"
        expr: String,
    },
    /// Print a Stirling triangle up to --max-n (default 8)
    Table {
        #[arg(value_enum)]
        kind: TableKind,
    },
    /// Run an identity verification suite; exits nonzero if any cell fails
    Verify {
        #[arg(value_enum)]
        suite: SuiteName,
        /// Largest m for the two-parameter suites (thm7, remark8)
        #[arg(long, value_name = "M")]
        max_m: Option<u32>,
        /// Largest k for the generating-function suites (eq26, eq27)
        #[arg(long, value_name = "K")]
        max_k: Option<u32>,
        /// Verify a single column j of the recurrence suite (thm4)
        #[arg(long, value_name = "J")]
        j: Option<u32>,
        /// Number of random words for the confluence suite
        #[arg(long, value_name = "COUNT")]
        count: Option<u32>,
        /// Largest random word length for the confluence suite
        #[arg(long, value_name = "LEN")]
        max_len: Option<u32>,
        /// Seed for the confluence suite
        #[arg(long, value_name = "SEED")]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RuleName {
    LambdaShift,
    Shift,
    Weyl,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    #[value(name = "unsigned-lambda-s1")]
    UnsignedLambdaS1,
    #[value(name = "signed-lambda-s1")]
    SignedLambdaS1,
    #[value(name = "lambda-r-s1")]
    LambdaRS1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteName {
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

fn rule_choice(cli: &Cli) -> Result<RuleChoice, CliError> {
    match cli.rule {
        RuleName::Custom => {
            let alpha = cli
                .alpha
                .clone()
                .ok_or_else(|| CliError::Usage("--rule custom requires --alpha".into()))?;
            let beta = cli
                .beta
                .clone()
                .ok_or_else(|| CliError::Usage("--rule custom requires --beta".into()))?;
            Ok(RuleChoice::Custom { alpha, beta })
        }
        _ if cli.alpha.is_some() || cli.beta.is_some() => Err(CliError::Usage(
            "--alpha and --beta only apply with --rule custom".into(),
        )),
        RuleName::LambdaShift => Ok(RuleChoice::LambdaShift),
        RuleName::Shift => Ok(RuleChoice::Shift),
        RuleName::Weyl => Ok(RuleChoice::Weyl),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let cfg = RunConfig {
        rule: rule_choice(&cli)?,
        output: match cli.output {
            Output::Plain => OutputFormat::Plain,
            Output::Json => OutputFormat::Json,
            Output::Csv => OutputFormat::Csv,
        },
    };
    match cli.command {
        Command::Normalize { expr } => {
            print!("{}", cmd_normalize(&expr, &cfg)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { kind } => {
            let kind = match kind {
                TableKind::UnsignedLambdaS1 => StirlingKind::UnsignedLambdaS1,
                TableKind::SignedLambdaS1 => StirlingKind::SignedLambdaS1,
                TableKind::LambdaRS1 => StirlingKind::LambdaRS1,
            };
            print!("{}", cmd_table(kind, cli.max_n.unwrap_or(8), &cfg)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            max_m,
            max_k,
            j,
            count,
            max_len,
            seed,
        } => {
            let suite = match suite {
                SuiteName::Thm4 => Suite::Thm4,
                SuiteName::Thm5 => Suite::Thm5,
                SuiteName::Thm6 => Suite::Thm6,
                SuiteName::Thm7 => Suite::Thm7,
                SuiteName::Remark8 => Suite::Remark8,
                SuiteName::Eq26 => Suite::Eq26,
                SuiteName::Eq27 => Suite::Eq27,
                SuiteName::Eq29 => Suite::Eq29,
                SuiteName::Confluence => Suite::Confluence,
                SuiteName::Rep => Suite::Rep,
            };
            let params = VerifyParams {
                max_n: cli.max_n,
                max_m,
                max_k,
                order: cli.order,
                j,
                count,
                max_len,
                seed,
            };
            let outcome = cmd_verify(suite, &params, &cfg)?;
            print!("{}", outcome.text);
            Ok(if outcome.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
