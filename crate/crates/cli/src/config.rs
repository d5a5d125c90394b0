//! Run configuration: commutation rule selection (including user-supplied
//! custom rules), output format, and the size guard on range parameters.

use crate::error::CliError;
use lamshift::exactnum::MultiPoly;
use lamshift::ncalgebra::CommutationRule;

/// Largest value accepted for any range parameter unless overridden.
pub const DEFAULT_SIZE_GUARD: u32 = 64;

/// Environment variable overriding the size guard.
pub const SIZE_GUARD_ENV: &str = "LAMSHIFT_MAX_N";

pub fn size_guard() -> Result<u32, CliError> {
    match std::env::var(SIZE_GUARD_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SIZE_GUARD),
        Err(other) => Err(CliError::GuardOverride(other.to_string())),
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError::GuardOverride(format!("expected an integer, got {text:?}"))),
    }
}

pub fn check_guard(name: &str, value: u32) -> Result<(), CliError> {
    let guard = size_guard()?;
    if value > guard {
        return Err(CliError::SizeGuard {
            name: name.into(),
            value,
            guard,
        });
    }
    Ok(())
}

/// Which commutation rule a command runs under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleChoice {
    LambdaShift,
    Shift,
    Weyl,
    /// Scalar texts in the canonical polynomial syntax over `{L, r}`.
    Custom { alpha: String, beta: String },
}

impl RuleChoice {
    pub fn name(&self) -> &'static str {
        match self {
            RuleChoice::LambdaShift => "lambda-shift",
            RuleChoice::Shift => "shift",
            RuleChoice::Weyl => "weyl",
            RuleChoice::Custom { .. } => "custom",
        }
    }

    pub fn build(&self) -> Result<CommutationRule, CliError> {
        match self {
            RuleChoice::LambdaShift => Ok(CommutationRule::lambda_shift()),
            RuleChoice::Shift => Ok(CommutationRule::shift()),
            RuleChoice::Weyl => Ok(CommutationRule::weyl()),
            RuleChoice::Custom { alpha, beta } => {
                let alpha: MultiPoly = alpha
                    .parse()
                    .map_err(|e| CliError::Rule(format!("--alpha: {e}")))?;
                let beta: MultiPoly = beta
                    .parse()
                    .map_err(|e| CliError::Rule(format!("--beta: {e}")))?;
                CommutationRule::new(alpha, beta).map_err(|e| CliError::Rule(e.to_string()))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub rule: RuleChoice,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            rule: RuleChoice::LambdaShift,
            output: OutputFormat::Plain,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_custom_rules_restricted_to_l_and_r() {
        let ok = RuleChoice::Custom {
            alpha: "2*L + r".into(),
            beta: "1".into(),
        };
        let rule = ok.build().unwrap();
        assert_eq!(rule.alpha(), &"2*L + r".parse::<MultiPoly>().unwrap());

        let bad_var = RuleChoice::Custom {
            alpha: "x".into(),
            beta: "0".into(),
        };
        assert!(matches!(bad_var.build(), Err(CliError::Rule(_))));

        let bad_syntax = RuleChoice::Custom {
            alpha: "2*".into(),
            beta: "0".into(),
        };
        assert!(matches!(bad_syntax.build(), Err(CliError::Rule(_))));
    }

    #[test]
    fn builtin_rules_build() {
        assert!(RuleChoice::LambdaShift.build().is_ok());
        assert!(RuleChoice::Shift.build().is_ok());
        assert!(RuleChoice::Weyl.build().is_ok());
    }
}
