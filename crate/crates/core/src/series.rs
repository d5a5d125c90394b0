//! Truncated formal power series in `t` over [`MultiPoly`] coefficients.
//!
//! These carry the exponential generating functions of the λ-Stirling
//! families. The fractional power `(1 - Lt)^(-r/L)` is never treated
//! numerically: it is defined as the formal exponential of `r` times the
//! λ-cancelled logarithm series, which keeps every coefficient in `Q[L, r]`.

use crate::exactnum::{factorial, BigInt, BigRational, MultiPoly, Var};
use crate::lamstirling::{lambda_factorial, lambda_r_stirling1, unsigned_lambda_stirling1};
use crate::report::{EqualityCheck, VerificationReport};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// A power series known exactly modulo `t^(order+1)`.
///
/// Operations on mismatched orders truncate to the smaller order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<MultiPoly>,
}

/// Rejected formal operation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    /// The formal exponential is undefined unless the constant term is zero.
    #[error("formal exponential requires a zero constant term")]
    NonzeroConstantTerm,
}

impl TruncatedSeries {
    /// The zero series to the given order.
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![MultiPoly::zero(); order + 1],
        }
    }

    /// The constant series 1 to the given order.
    pub fn one(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = MultiPoly::one();
        s
    }

    /// Build from explicit coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least t^0");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn mul(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                let prod = &self.coeffs[i] * &rhs.coeffs[j];
                coeffs[i + j] = &coeffs[i + j] + &prod;
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &MultiPoly) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|p| p * c).collect(),
        }
    }

    /// k-fold product; `k = 0` is the constant series 1.
    pub fn pow(&self, k: u32) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal exponential, exact to this order. Defined only when the
    /// constant term vanishes.
    pub fn exp(&self) -> Result<TruncatedSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        coeffs[0] = MultiPoly::one();
        // From E' = s'E: n*e_n = sum_{i=1..n} i * s_i * e_{n-i}.
        for n in 1..=order {
            let mut acc = MultiPoly::zero();
            for i in 1..=n {
                let weighted = self.coeffs[i]
                    .scale(&BigRational::from_integer(BigInt::from(i)));
                acc = &acc + &(&weighted * &coeffs[n - i]);
            }
            coeffs[n] = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
        }
        Ok(TruncatedSeries { coeffs })
    }
}

impl fmt::Display for TruncatedSeries {
    /// Renders as `c0 + c1*t + c2*t^2 + ...`, skipping zero coefficients;
    /// composite coefficients are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            wrote = true;
            let simple = coeff.is_monomial()
                && coeff
                    .terms()
                    .next()
                    .is_some_and(|(_, q)| q > &num_traits::Zero::zero());
            if n == 0 {
                if simple {
                    write!(f, "{coeff}")?;
                } else {
                    write!(f, "({coeff})")?;
                }
                continue;
            }
            let t_part = if n == 1 { "t".to_string() } else { format!("t^{n}") };
            if coeff.is_one() {
                f.write_str(&t_part)?;
            } else if simple {
                write!(f, "{coeff}*{t_part}")?;
            } else {
                write!(f, "({coeff})*{t_part}")?;
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// JSON export: the ordered coefficient array in canonical text.
pub fn series_to_json(series: &TruncatedSeries) -> serde_json::Value {
    serde_json::Value::Array(
        series
            .coeffs()
            .iter()
            .map(|c| serde_json::json!(c.to_string()))
            .collect(),
    )
}

/// The series `-log(1 - Lt)/L`, whose `t^n` coefficient is `L^(n-1)/n`.
///
/// Built from the formal logarithm expansion with the `1/L` cancellation
/// performed symbolically, so the coefficients stay polynomial in `L`.
pub fn neglog_over_lambda(order: usize) -> TruncatedSeries {
    let lam = MultiPoly::var(Var::Lambda);
    let mut coeffs = vec![MultiPoly::zero(); order + 1];
    for n in 1..=order {
        // -log(1 - Lt) has t^n coefficient L^n / n.
        coeffs[n] = lam
            .pow(n as u32)
            .scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
    }
    TruncatedSeries {
        coeffs: coeffs
            .into_iter()
            .enumerate()
            .map(|(n, c)| {
                if n == 0 {
                    c
                } else {
                    c.div_by_var(Var::Lambda)
                        .expect("every log coefficient carries a factor of L")
                }
            })
            .collect(),
    }
}

/// Coefficients of the unsigned family read off its exponential generating
/// function `(1/k!) (-log(1-Lt)/L)^k`: entry `n` is `n!` times the `t^n`
/// coefficient.
pub fn egf_unsigned_lambda_stirling(k: u32, order: usize) -> Vec<MultiPoly> {
    assert!((k as usize) <= order, "need k <= order");
    let series = neglog_over_lambda(order)
        .pow(k)
        .scale(&MultiPoly::constant(factorial(k as u64).recip()));
    (0..=order)
        .map(|n| series.coeff(n).scale(&factorial(n as u64)))
        .collect()
}

/// Coefficients of the r-shifted family read off
/// `(1/k!) (-log(1-Lt)/L)^k (1-Lt)^(-r/L)`, with the fractional power taken
/// as `exp(r * (-log(1-Lt)/L))`. Entries are polynomials in `{L, r}`.
pub fn egf_lambda_r_stirling(k: u32, order: usize) -> Vec<MultiPoly> {
    assert!((k as usize) <= order, "need k <= order");
    let base = neglog_over_lambda(order);
    let fractional_power = base
        .scale(&MultiPoly::var(Var::R))
        .exp()
        .expect("scaled log series has zero constant term");
    let series = base
        .pow(k)
        .scale(&MultiPoly::constant(factorial(k as u64).recip()))
        .mul(&fractional_power);
    (0..=order)
        .map(|n| series.coeff(n).scale(&factorial(n as u64)))
        .collect()
}

/// Check the convolution identity obtained by multiplying the two
/// generating functions at `r = 1`:
/// the r-shifted number at `r=1` equals
/// `sum_l C(n,l) <1>_l [n-l, k]` for `k <= n`.
pub fn verify_eq29(n: u32, k: u32) -> VerificationReport {
    assert!(k <= n, "need k <= n");
    let one = BigRational::one();
    let lhs = lambda_r_stirling1(n, k).eval(&BTreeMap::from([(Var::R, one)]));
    let mut rhs = MultiPoly::zero();
    for l in 0..=(n - k) {
        let term = lambda_factorial(l)
            .scale(&crate::exactnum::binomial(n as u64, l as u64));
        rhs = &rhs + &(&term * &unsigned_lambda_stirling1(n - l, k));
    }
    let mut report = VerificationReport::new(format!("eq29 n={n} k={k}"));
    report.push(EqualityCheck::compare("convolution", &lhs, &rhs));
    report
}
