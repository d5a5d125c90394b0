//! λ-Stirling numbers of the first kind (signed, unsigned and r-shifted),
//! λ-factorials, and the identity verifiers built on them.
//!
//! Every Stirling value here is obtained by coefficient extraction from an
//! exact polynomial expansion of a rising or falling factorial; closed forms
//! never enter the implementation, they are checked against it. The
//! classical (λ-free) Stirling numbers are provided as independent
//! recurrence oracles for limit tests.

use crate::exactnum::{binomial, BigInt, BigRational, MultiPoly, Var};
use crate::report::{EqualityCheck, VerificationReport};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

/// The product `base (base + L) ... (base + (n-1)L)`; the empty product for
/// `n = 0`.
pub fn rising_factorial_poly(n: u32, base: &MultiPoly) -> MultiPoly {
    let lam = MultiPoly::var(Var::Lambda);
    let mut acc = MultiPoly::one();
    for i in 0..n {
        let factor = base + &lam.scale(&BigRational::from_integer(BigInt::from(i)));
        acc = &acc * &factor;
    }
    acc
}

/// The product `base (base - L) ... (base - (n-1)L)`.
pub fn falling_factorial_poly(n: u32, base: &MultiPoly) -> MultiPoly {
    let lam = MultiPoly::var(Var::Lambda);
    let mut acc = MultiPoly::one();
    for i in 0..n {
        let factor = base - &lam.scale(&BigRational::from_integer(BigInt::from(i)));
        acc = &acc * &factor;
    }
    acc
}

/// Unsigned λ-Stirling number of the first kind: the coefficient of `x^k` in
/// the λ-rising factorial of `x`. A polynomial in `L` alone.
pub fn unsigned_lambda_stirling1(n: u32, k: u32) -> MultiPoly {
    rising_factorial_poly(n, &MultiPoly::var(Var::X)).coeff_of(Var::X, k)
}

/// Signed λ-Stirling number of the first kind, from the λ-falling factorial.
pub fn signed_lambda_stirling1(n: u32, k: u32) -> MultiPoly {
    falling_factorial_poly(n, &MultiPoly::var(Var::X)).coeff_of(Var::X, k)
}

/// λ-r-Stirling number of the first kind: the coefficient of `x^k` in the
/// λ-rising factorial of `x + r`. A polynomial in `{L, r}`.
pub fn lambda_r_stirling1(n: u32, k: u32) -> MultiPoly {
    let base = &MultiPoly::var(Var::X) + &MultiPoly::var(Var::R);
    rising_factorial_poly(n, &base).coeff_of(Var::X, k)
}

/// The λ-factorial: the λ-rising factorial of 1, which is also the row sum
/// of the unsigned λ-Stirling triangle.
pub fn lambda_factorial(n: u32) -> MultiPoly {
    rising_factorial_poly(n, &MultiPoly::one())
}

/// Classical unsigned Stirling numbers of the first kind by the recurrence
/// `c(n+1, k) = c(n, k-1) + n c(n, k)`. Oracle for λ→1 limits.
pub fn classical_stirling1_unsigned(n: u32, k: u32) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut row = vec![BigInt::one()];
    for i in 0..n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (j, v) in row.iter().enumerate() {
            next[j + 1] += v;
            next[j] += BigInt::from(i) * v;
        }
        row = next;
    }
    BigRational::from_integer(row[k as usize].clone())
}

/// Classical Stirling numbers of the second kind by the recurrence
/// `S(n+1, k) = S(n, k-1) + k S(n, k)`. Oracle for Weyl-mode ordering.
pub fn classical_stirling2(n: u32, k: u32) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (j, v) in row.iter().enumerate() {
            next[j + 1] += v;
            next[j] += BigInt::from(j) * v;
        }
        row = next;
    }
    BigRational::from_integer(row[k as usize].clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    UnsignedLambdaS1,
    SignedLambdaS1,
    LambdaRS1,
}

impl StirlingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StirlingKind::UnsignedLambdaS1 => "unsigned-lambda-s1",
            StirlingKind::SignedLambdaS1 => "signed-lambda-s1",
            StirlingKind::LambdaRS1 => "lambda-r-s1",
        }
    }
}

/// A fully materialized triangle of Stirling coefficients, built
/// row-incrementally from the factorial expansions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    max_n: u32,
    cells: BTreeMap<(u32, u32), MultiPoly>,
}

impl StirlingTable {
    pub fn build(kind: StirlingKind, max_n: u32) -> Self {
        let x = MultiPoly::var(Var::X);
        let base = match kind {
            StirlingKind::UnsignedLambdaS1 | StirlingKind::SignedLambdaS1 => x.clone(),
            StirlingKind::LambdaRS1 => &x + &MultiPoly::var(Var::R),
        };
        let lam = MultiPoly::var(Var::Lambda);
        let mut cells = BTreeMap::new();
        let mut poly = MultiPoly::one();
        for n in 0..=max_n {
            if n > 0 {
                let i = BigRational::from_integer(BigInt::from(n - 1));
                let step = match kind {
                    StirlingKind::SignedLambdaS1 => &base - &lam.scale(&i),
                    _ => &base + &lam.scale(&i),
                };
                poly = &poly * &step;
            }
            for k in 0..=n {
                cells.insert((n, k), poly.coeff_of(Var::X, k));
            }
        }
        StirlingTable { kind, max_n, cells }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    /// Cell value; zero outside the stored triangle (`k > n`).
    pub fn get(&self, n: u32, k: u32) -> MultiPoly {
        self.cells
            .get(&(n, k))
            .cloned()
            .unwrap_or_else(MultiPoly::zero)
    }

    /// CSV rows `n,k,<canonical polynomial>` over the whole triangle.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for n in 0..=self.max_n {
            for k in 0..=n {
                writeln!(out, "{n},{k},{}", self.get(n, k)).expect("string write");
            }
        }
        out
    }

    /// JSON export. Cells carry their coefficients as exact
    /// `[L-degree, numerator, denominator]` triples (with an extra r-degree
    /// column for the r-shifted kind); the integers are strings so that
    /// arbitrary precision survives.
    pub fn to_json(&self) -> serde_json::Value {
        let with_r = self.kind == StirlingKind::LambdaRS1;
        let mut cells = Vec::new();
        for n in 0..=self.max_n {
            for k in 0..=n {
                let coeff: Vec<serde_json::Value> = self
                    .get(n, k)
                    .canonical_terms()
                    .into_iter()
                    .map(|(exps, q)| {
                        let mut entry = vec![serde_json::json!(exps.get(Var::Lambda))];
                        if with_r {
                            entry.push(serde_json::json!(exps.get(Var::R)));
                        }
                        entry.push(serde_json::json!(q.numer().to_string()));
                        entry.push(serde_json::json!(q.denom().to_string()));
                        serde_json::Value::Array(entry)
                    })
                    .collect();
                cells.push(serde_json::json!({ "n": n, "k": k, "coeff": coeff }));
            }
        }
        serde_json::json!({
            "kind": self.kind.as_str(),
            "max_n": self.max_n,
            "cells": cells,
        })
    }
}

type TableCache = Mutex<HashMap<(StirlingKind, u32), Arc<StirlingTable>>>;

fn cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared, immutable table keyed by kind and size; verifiers sweeping a grid
/// reuse the same expansion work.
pub fn cached_table(kind: StirlingKind, max_n: u32) -> Arc<StirlingTable> {
    let mut map = cache().lock().expect("table cache poisoned");
    map.entry((kind, max_n))
        .or_insert_with(|| Arc::new(StirlingTable::build(kind, max_n)))
        .clone()
}

/// Out-of-range index for the recurrence verifier.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("the recurrence is stated for 1 <= j <= n+1; got n={n}, j={j}")]
pub struct RangeError {
    pub n: u32,
    pub j: u32,
}

/// Check the recurrence expressing row `n+1` of the unsigned triangle from
/// row `n`:
/// `[n+1, j] = sum_{k=j-1}^{n} [n, k] C(k, j-1) L^{k+1-j}`.
pub fn verify_theorem4(n: u32, j: u32) -> Result<VerificationReport, RangeError> {
    if j == 0 || j > n + 1 {
        return Err(RangeError { n, j });
    }
    let table = cached_table(StirlingKind::UnsignedLambdaS1, n + 1);
    let lam = MultiPoly::var(Var::Lambda);
    let lhs = table.get(n + 1, j);
    let mut rhs = MultiPoly::zero();
    for k in (j - 1)..=n {
        let term = table
            .get(n, k)
            .scale(&binomial(k as u64, (j - 1) as u64));
        rhs = &rhs + &(&term * &lam.pow(k + 1 - j));
    }
    let mut report = VerificationReport::new(format!("thm4 n={n} j={j}"));
    report.push(EqualityCheck::compare("recurrence", &lhs, &rhs));
    Ok(report)
}

/// Check the binomial decomposition of the λ-rising factorial of `1 + mL`,
/// as a polynomial identity in `{L, m}`:
/// `<1+mL>_n = sum_l C(n,l) <1>_l <mL>_{n-l}`.
pub fn verify_theorem5(n: u32) -> VerificationReport {
    let m_lam = &MultiPoly::var(Var::M) * &MultiPoly::var(Var::Lambda);
    let one_plus_m_lam = &MultiPoly::one() + &m_lam;
    let lhs = rising_factorial_poly(n, &one_plus_m_lam);
    let mut rhs = MultiPoly::zero();
    for l in 0..=n {
        let term = lambda_factorial(l)
            .scale(&binomial(n as u64, l as u64));
        rhs = &rhs + &(&term * &rising_factorial_poly(n - l, &m_lam));
    }
    let mut report = VerificationReport::new(format!("thm5 n={n}"));
    report.push(EqualityCheck::compare("binomial decomposition", &lhs, &rhs));
    report
}

fn m_lambda(m: u32) -> MultiPoly {
    MultiPoly::var(Var::Lambda).scale(&BigRational::from_integer(BigInt::from(m)))
}

fn factorial_single_sum(m: u32, n: u32) -> MultiPoly {
    let table = cached_table(StirlingKind::UnsignedLambdaS1, m);
    let rising = rising_factorial_poly(n, &(&MultiPoly::one() + &m_lambda(m)));
    let mut sum = MultiPoly::zero();
    for j in 0..=m {
        sum = &sum + &(&table.get(m, j) * &rising);
    }
    sum
}

fn factorial_double_sum(m: u32, n: u32) -> MultiPoly {
    let table = cached_table(StirlingKind::UnsignedLambdaS1, m);
    let mut sum = MultiPoly::zero();
    for j in 0..=m {
        for k in 0..=n {
            let term = &table.get(m, j).scale(&binomial(n as u64, k as u64))
                * &rising_factorial_poly(n - k, &m_lambda(m));
            sum = &sum + &(&term * &lambda_factorial(k));
        }
    }
    sum
}

/// Check both factorial decompositions of `(m+n)` against the λ-factorial:
/// the single sum over the unsigned triangle row `m`, and the double sum
/// obtained by expanding its rising factorial binomially.
pub fn verify_theorem7(m: u32, n: u32) -> VerificationReport {
    let fact = lambda_factorial(m + n);
    let mut report = VerificationReport::new(format!("thm7 m={m} n={n}"));
    report.push(EqualityCheck::compare(
        "single sum",
        &factorial_single_sum(m, n),
        &fact,
    ));
    report.push(EqualityCheck::compare(
        "double sum",
        &factorial_double_sum(m, n),
        &fact,
    ));
    report
}

/// Check that both factorial decompositions are symmetric under swapping
/// `m` and `n`.
pub fn verify_remark8_symmetry(m: u32, n: u32) -> VerificationReport {
    let mut report = VerificationReport::new(format!("remark8 m={m} n={n}"));
    report.push(EqualityCheck::compare(
        "single-sum symmetry",
        &factorial_single_sum(m, n),
        &factorial_single_sum(n, m),
    ));
    report.push(EqualityCheck::compare(
        "double-sum symmetry",
        &factorial_double_sum(m, n),
        &factorial_double_sum(n, m),
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rising_factorial_expansions() {
        let x = MultiPoly::var(Var::X);
        assert_eq!(
            rising_factorial_poly(3, &x).to_string(),
            "x^3 + 3*L*x^2 + 2*L^2*x"
        );
        assert_eq!(rising_factorial_poly(0, &x), MultiPoly::one());
        let x_plus_r = &x + &MultiPoly::var(Var::R);
        assert_eq!(
            rising_factorial_poly(2, &x_plus_r),
            poly("x^2 + 2*r*x + L*x + r^2 + L*r")
        );
    }

    #[test]
    fn falling_factorial_expansions() {
        let x = MultiPoly::var(Var::X);
        assert_eq!(falling_factorial_poly(2, &x), poly("x^2 - L*x"));
        assert_eq!(falling_factorial_poly(1, &x), x);
        let at_one = falling_factorial_poly(2, &x)
            .eval(&BTreeMap::from([(Var::Lambda, rat(1))]));
        assert_eq!(at_one, poly("x^2 - x"));
    }

    #[test]
    fn unsigned_values() {
        assert_eq!(unsigned_lambda_stirling1(2, 1), poly("L"));
        assert_eq!(unsigned_lambda_stirling1(3, 1), poly("2*L^2"));
        for n in 0..=8 {
            assert_eq!(unsigned_lambda_stirling1(n, n), MultiPoly::one());
        }
        for n in 1..=8 {
            assert!(unsigned_lambda_stirling1(n, 0).is_zero());
        }
    }

    #[test]
    fn signed_values() {
        assert_eq!(signed_lambda_stirling1(2, 1), poly("-L"));
        assert_eq!(signed_lambda_stirling1(3, 1), poly("2*L^2"));
        for n in 0..=8 {
            assert_eq!(signed_lambda_stirling1(n, n), MultiPoly::one());
        }
    }

    #[test]
    fn r_shifted_values() {
        assert_eq!(lambda_r_stirling1(2, 1), poly("2*r + L"));
        assert_eq!(lambda_r_stirling1(2, 0), poly("r^2 + L*r"));
        // r := 0 collapses to the unshifted family.
        for n in 0..=6u32 {
            for k in 0..=n {
                let collapsed = lambda_r_stirling1(n, k)
                    .eval(&BTreeMap::from([(Var::R, rat(0))]));
                assert_eq!(collapsed, unsigned_lambda_stirling1(n, k));
            }
        }
    }

    #[test]
    fn lambda_factorial_values() {
        assert_eq!(lambda_factorial(0), MultiPoly::one());
        assert_eq!(lambda_factorial(2), poly("L + 1"));
        assert_eq!(lambda_factorial(3), poly("2*L^2 + 3*L + 1"));
    }

    #[test]
    fn classical_oracles() {
        assert_eq!(classical_stirling1_unsigned(3, 1), rat(2));
        assert_eq!(classical_stirling1_unsigned(4, 2), rat(11));
        assert_eq!(classical_stirling2(2, 1), rat(1));
        assert_eq!(classical_stirling2(2, 2), rat(1));
        assert_eq!(classical_stirling2(5, 3), rat(25));
        for n in 0..=8 {
            assert_eq!(classical_stirling1_unsigned(n, n), rat(1));
            assert_eq!(classical_stirling2(n, n), rat(1));
        }
        assert_eq!(classical_stirling1_unsigned(4, 7), rat(0));
        assert_eq!(classical_stirling2(3, 0), rat(0));
    }

    #[test]
    fn theorem4_small_cases() {
        let report = verify_theorem4(2, 1).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks[0].lhs, "2*L^2");

        assert!(verify_theorem4(2, 3).unwrap().passed());
        assert!(verify_theorem4(3, 2).unwrap().passed());
    }

    #[test]
    fn theorem4_rejects_out_of_range_j() {
        assert_eq!(verify_theorem4(4, 0).unwrap_err(), RangeError { n: 4, j: 0 });
        assert_eq!(verify_theorem4(4, 6).unwrap_err(), RangeError { n: 4, j: 6 });
        assert!(verify_theorem4(4, 5).is_ok());
    }

    #[test]
    fn theorem5_small_cases() {
        for n in 0..=4 {
            let report = verify_theorem5(n);
            assert!(report.passed(), "{report}");
        }
        let one = verify_theorem5(1);
        assert_eq!(one.checks[0].lhs, "L*m + 1");
    }

    #[test]
    fn theorem7_small_cases() {
        for (m, n) in [(1, 1), (0, 2), (2, 3)] {
            let report = verify_theorem7(m, n);
            assert!(report.passed(), "{report}");
        }
        let report = verify_theorem7(1, 1);
        assert_eq!(report.checks[0].rhs, lambda_factorial(2).to_string());
    }

    #[test]
    fn remark8_small_cases() {
        for (m, n) in [(2, 2), (1, 2), (0, 3)] {
            let report = verify_remark8_symmetry(m, n);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn table_matches_pointwise_extraction() {
        for kind in [
            StirlingKind::UnsignedLambdaS1,
            StirlingKind::SignedLambdaS1,
            StirlingKind::LambdaRS1,
        ] {
            let table = StirlingTable::build(kind, 6);
            for n in 0..=6 {
                for k in 0..=n {
                    let want = match kind {
                        StirlingKind::UnsignedLambdaS1 => unsigned_lambda_stirling1(n, k),
                        StirlingKind::SignedLambdaS1 => signed_lambda_stirling1(n, k),
                        StirlingKind::LambdaRS1 => lambda_r_stirling1(n, k),
                    };
                    assert_eq!(table.get(n, k), want, "{kind:?} n={n} k={k}");
                }
                assert_eq!(table.get(n, n), MultiPoly::one());
            }
            assert!(table.get(2, 5).is_zero());
        }
    }

    #[test]
    fn csv_rows_match_contract() {
        let table = cached_table(StirlingKind::UnsignedLambdaS1, 3);
        let csv = table.to_csv();
        assert!(csv.lines().any(|l| l == "3,1,2*L^2"), "{csv}");
        assert!(csv.lines().any(|l| l == "0,0,1"));

        let r_table = cached_table(StirlingKind::LambdaRS1, 2);
        assert!(r_table.to_csv().lines().any(|l| l == "2,1,2*r + L"));
    }

    #[test]
    fn json_cells_are_exact_triples() {
        let table = StirlingTable::build(StirlingKind::UnsignedLambdaS1, 3);
        let value = table.to_json();
        let cells = value["cells"].as_array().unwrap();
        let cell = cells
            .iter()
            .find(|c| c["n"] == 3 && c["k"] == 1)
            .unwrap();
        assert_eq!(cell["coeff"], serde_json::json!([[2, "2", "1"]]));
    }
}
