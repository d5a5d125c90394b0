//! The concrete representation of the λ-shift algebra on functions of `x`:
//! `a†` acts as multiplication by `x` and `a` as the λ-shift operator
//! `δ_λ : f(x) ↦ f(x + λ)`.
//!
//! Exponentials are never expanded as series. The family `p(x)·e^(x + c·L)`
//! is closed under both generators, so everything here is an exact finite
//! computation: `δ_λ` substitutes `x ↦ x + λ` in `p` and bumps the counter
//! `c` by one.

use crate::exactnum::{BigRational, MultiPoly, Var};
use crate::lamstirling::{lambda_factorial, rising_factorial_poly};
use crate::ncalgebra::{
    power_normal, CommutationRule, Letter, NcExpression, NormalForm, Word,
};
use crate::report::{EqualityCheck, VerificationReport};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// A plain polynomial function of `x` (coefficients may involve `L`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFunc {
    poly: MultiPoly,
}

impl PolyFunc {
    pub fn new(poly: MultiPoly) -> Self {
        PolyFunc { poly }
    }

    pub fn x_pow(d: u32) -> Self {
        PolyFunc::new(MultiPoly::var(Var::X).pow(d))
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    /// `δ_λ^steps`: substitute `x ↦ x + steps·L`.
    pub fn shift(&self, steps: u32) -> Self {
        PolyFunc {
            poly: shift_poly(&self.poly, steps),
        }
    }

    /// Multiplication-by-`x`.
    pub fn mul_x(&self) -> Self {
        PolyFunc {
            poly: &self.poly * &MultiPoly::var(Var::X),
        }
    }
}

impl fmt::Display for PolyFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// The function `p(x)·e^(x + c·L)`. The shift count `c` records how many
/// times `δ_λ` has acted on the exponential factor; it never decreases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPoly {
    poly: MultiPoly,
    shift_count: u32,
}

impl ExpPoly {
    pub fn new(poly: MultiPoly, shift_count: u32) -> Self {
        ExpPoly { poly, shift_count }
    }

    /// The bare exponential `e^x`.
    pub fn exp_x() -> Self {
        ExpPoly::new(MultiPoly::one(), 0)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn shift_count(&self) -> u32 {
        self.shift_count
    }

    /// `δ_λ^steps`: substitute in the polynomial part and absorb the shift
    /// of the exponential into the counter.
    pub fn shift(&self, steps: u32) -> Self {
        ExpPoly {
            poly: shift_poly(&self.poly, steps),
            shift_count: self.shift_count + steps,
        }
    }

    pub fn mul_x(&self) -> Self {
        ExpPoly {
            poly: &self.poly * &MultiPoly::var(Var::X),
            shift_count: self.shift_count,
        }
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) * exp(x + {}*L)", self.poly, self.shift_count)
    }
}

fn shift_poly(poly: &MultiPoly, steps: u32) -> MultiPoly {
    let target = &MultiPoly::var(Var::X)
        + &MultiPoly::var(Var::Lambda).scale(&BigRational::from_integer(steps.into()));
    poly.substitute(Var::X, &target)
}

/// n-fold application of (multiplication-by-`x` after `δ_λ`).
pub fn apply_x_shift_power(n: u32, f: &ExpPoly) -> ExpPoly {
    let mut acc = f.clone();
    for _ in 0..n {
        acc = acc.shift(1).mul_x();
    }
    acc
}

/// Act with a word, rightmost letter first: `a` shifts, `a†` multiplies.
pub fn apply_word_poly(word: &Word, f: &PolyFunc) -> PolyFunc {
    let mut acc = f.clone();
    for letter in word.letters().iter().rev() {
        acc = match letter {
            Letter::A => acc.shift(1),
            Letter::ADag => acc.mul_x(),
        };
    }
    acc
}

/// Act with a word on an exponential-polynomial function.
pub fn apply_word_exp(word: &Word, f: &ExpPoly) -> ExpPoly {
    let mut acc = f.clone();
    for letter in word.letters().iter().rev() {
        acc = match letter {
            Letter::A => acc.shift(1),
            Letter::ADag => acc.mul_x(),
        };
    }
    acc
}

/// Act with a normal form term-by-term: each `(j, k)` entry contributes
/// `coeff · x^j · δ_λ^k`.
pub fn apply_normal_form_poly(nf: &NormalForm, f: &PolyFunc) -> PolyFunc {
    let x = MultiPoly::var(Var::X);
    let mut acc = MultiPoly::zero();
    for (&(dag_pow, a_pow), coeff) in nf.terms() {
        let shifted = f.shift(a_pow);
        acc = &acc + &(&(&shifted.poly * &x.pow(dag_pow)) * coeff);
    }
    PolyFunc { poly: acc }
}

/// Act with a normal form on an exponential-polynomial function. All terms
/// must shift the exponential equally (true for any normal form arising
/// under a β=0 rule from a single word, where every term has the same
/// `a`-power); mixed shifts panic.
pub fn apply_normal_form_exp(nf: &NormalForm, f: &ExpPoly) -> ExpPoly {
    let x = MultiPoly::var(Var::X);
    let mut result: Option<ExpPoly> = None;
    for (&(dag_pow, a_pow), coeff) in nf.terms() {
        let shifted = f.shift(a_pow);
        let term = &(&shifted.poly * &x.pow(dag_pow)) * coeff;
        match result.as_mut() {
            None => result = Some(ExpPoly::new(term, shifted.shift_count)),
            Some(acc) => {
                assert_eq!(
                    acc.shift_count, shifted.shift_count,
                    "normal form mixes exponential shift counts"
                );
                acc.poly = &acc.poly + &term;
            }
        }
    }
    result.unwrap_or_else(|| ExpPoly::new(MultiPoly::zero(), f.shift_count))
}

/// Check that n-fold `(x δ_λ)` applied to `e^x` produces the λ-rising
/// factorial of `x` in front of `e^(x + n·L)`, and that its value at `x = 1`
/// is the λ-factorial.
pub fn verify_theorem6(n: u32) -> VerificationReport {
    let result = apply_x_shift_power(n, &ExpPoly::exp_x());
    let expected = rising_factorial_poly(n, &MultiPoly::var(Var::X));
    let at_one = result
        .poly
        .eval(&BTreeMap::from([(Var::X, BigRational::one())]));
    let mut report = VerificationReport::new(format!("thm6 n={n}"));
    report.push(EqualityCheck::compare(
        "exponential shift count",
        &result.shift_count,
        &n,
    ));
    report.push(EqualityCheck::compare("polynomial part", &result.poly, &expected));
    report.push(EqualityCheck::compare(
        "value at x=1",
        &at_one,
        &lambda_factorial(n),
    ));
    report
}

/// Check the commutator `δ_λ x − x δ_λ = λ δ_λ` on every monomial `x^d` up
/// to the given degree.
pub fn verify_commutator(max_deg: u32) -> VerificationReport {
    let lam = MultiPoly::var(Var::Lambda);
    let mut report = VerificationReport::new(format!("commutator deg<={max_deg}"));
    for d in 0..=max_deg {
        let f = PolyFunc::x_pow(d);
        let lhs = &f.mul_x().shift(1).poly - &f.shift(1).mul_x().poly;
        let rhs = &lam * &f.shift(1).poly;
        report.push(EqualityCheck::compare(format!("x^{d}"), &lhs, &rhs));
    }
    report
}

/// Check that normal ordering commutes with the representation: applying the
/// normal form of `(a†a)^n` term-by-term agrees with applying the operator
/// `(x δ_λ)` n times directly, on monomials up to `x^4` and on `e^x`.
pub fn verify_rep_consistency(n: u32) -> VerificationReport {
    let number_word = NcExpression::from_word(Word::new(vec![Letter::ADag, Letter::A]));
    let nf = power_normal(&number_word, n, &CommutationRule::lambda_shift());
    let mut report = VerificationReport::new(format!("rep n={n}"));
    for d in 0..=4 {
        let f = PolyFunc::x_pow(d);
        let mut direct = f.clone();
        for _ in 0..n {
            direct = direct.shift(1).mul_x();
        }
        report.push(EqualityCheck::compare(
            format!("x^{d}"),
            &direct,
            &apply_normal_form_poly(&nf, &f),
        ));
    }
    let f = ExpPoly::exp_x();
    let mut direct = f.clone();
    for _ in 0..n {
        direct = direct.shift(1).mul_x();
    }
    report.push(EqualityCheck::compare(
        "exp(x)",
        &direct,
        &apply_normal_form_exp(&nf, &f),
    ));
    report
}
