//! Words and formal sums over the noncommuting letters `a`, `a†`, and the
//! rewriting engine that brings them to normal ordered form (every `a†` left
//! of every `a`) under a configurable commutation rule `aa† = a†a + αa + β`.
//!
//! The built-in rules are the λ-shift algebra (α=λ, β=0), the shift algebra
//! (α=1, β=0) and the Weyl algebra (α=0, β=1). Scalars commute with letters;
//! only the letters fail to commute with each other.

use crate::exactnum::{MultiPoly, Var};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

/// A generator of the algebra: the lowering letter `a` or the raising letter
/// `a†` (printed `ad`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    ADag,
}

/// A finite word in the two letters; the empty word is the algebra unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `a^m (a†)^n` style block words, with the `a` block first.
    pub fn a_pow_then_dag_pow(a_pow: u32, dag_pow: u32) -> Self {
        let mut letters = vec![Letter::A; a_pow as usize];
        letters.extend(std::iter::repeat(Letter::ADag).take(dag_pow as usize));
        Word(letters)
    }

    /// The normal-ordered block word `(a†)^j a^k`.
    pub fn dag_pow_then_a_pow(dag_pow: u32, a_pow: u32) -> Self {
        let mut letters = vec![Letter::ADag; dag_pow as usize];
        letters.extend(std::iter::repeat(Letter::A).take(a_pow as usize));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, letter: Letter) -> u32 {
        self.0.iter().filter(|&&l| l == letter).count() as u32
    }

    fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(match letter {
                Letter::A => "a",
                Letter::ADag => "ad",
            })?;
        }
        Ok(())
    }
}

/// A formal sum of scalar-weighted words. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NcExpression {
    terms: BTreeMap<Word, MultiPoly>,
}

impl NcExpression {
    pub fn zero() -> Self {
        NcExpression::default()
    }

    /// The algebra unit: the empty word with coefficient 1.
    pub fn unit() -> Self {
        NcExpression::from_word(Word::empty())
    }

    pub fn scalar(c: MultiPoly) -> Self {
        let mut e = NcExpression::default();
        e.add_term(Word::empty(), c);
        e
    }

    pub fn letter(letter: Letter) -> Self {
        NcExpression::from_word(Word::new(vec![letter]))
    }

    pub fn from_word(word: Word) -> Self {
        let mut e = NcExpression::default();
        e.add_term(word, MultiPoly::one());
        e
    }

    pub fn add_term(&mut self, word: Word, coeff: MultiPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = &*slot.get() + &coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &MultiPoly) -> NcExpression {
        let mut out = NcExpression::zero();
        for (word, coeff) in &self.terms {
            out.add_term(word.clone(), coeff * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> NcExpression {
        let mut acc = NcExpression::unit();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &NcExpression {
    type Output = NcExpression;

    fn add(self, rhs: &NcExpression) -> NcExpression {
        let mut out = self.clone();
        for (word, coeff) in &rhs.terms {
            out.add_term(word.clone(), coeff.clone());
        }
        out
    }
}

impl Mul for &NcExpression {
    type Output = NcExpression;

    fn mul(self, rhs: &NcExpression) -> NcExpression {
        let mut out = NcExpression::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

/// A commutation rule `aa† = a†a + α·a + β` with scalar polynomials α, β
/// restricted to the indeterminates `{L, r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationRule {
    alpha: MultiPoly,
    beta: MultiPoly,
}

/// Rejection of rule scalars that mention `x` or `m`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("commutation rule scalars may only use the indeterminates L and r; got {found}")]
pub struct RuleError {
    pub found: String,
}

impl CommutationRule {
    /// `aa† − a†a = λa`.
    pub fn lambda_shift() -> Self {
        CommutationRule {
            alpha: MultiPoly::var(Var::Lambda),
            beta: MultiPoly::zero(),
        }
    }

    /// `aa† − a†a = a`.
    pub fn shift() -> Self {
        CommutationRule {
            alpha: MultiPoly::one(),
            beta: MultiPoly::zero(),
        }
    }

    /// `aa† − a†a = 1`.
    pub fn weyl() -> Self {
        CommutationRule {
            alpha: MultiPoly::zero(),
            beta: MultiPoly::one(),
        }
    }

    pub fn new(alpha: MultiPoly, beta: MultiPoly) -> Result<Self, RuleError> {
        for (name, p) in [("alpha", &alpha), ("beta", &beta)] {
            if p.degree(Var::X) > 0 || p.degree(Var::M) > 0 {
                return Err(RuleError {
                    found: format!("{name} = {p}"),
                });
            }
        }
        Ok(CommutationRule { alpha, beta })
    }

    pub fn alpha(&self) -> &MultiPoly {
        &self.alpha
    }

    pub fn beta(&self) -> &MultiPoly {
        &self.beta
    }
}

/// Which adjacent `a a†` pair a rewrite step picks. The two strategies must
/// agree on every input; the test suite checks that instead of assuming it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
}

/// Canonical normal-ordered form: a map from `(dag_pow, a_pow)` to the
/// scalar coefficient of `(a†)^dag_pow a^a_pow`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    terms: BTreeMap<(u32, u32), MultiPoly>,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    pub fn unit() -> Self {
        let mut nf = NormalForm::default();
        nf.add_term(0, 0, MultiPoly::one());
        nf
    }

    pub fn add_term(&mut self, dag_pow: u32, a_pow: u32, coeff: MultiPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((dag_pow, a_pow)) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = &*slot.get() + &coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// Coefficient of `(a†)^dag_pow a^a_pow`; zero when absent.
    pub fn coeff(&self, dag_pow: u32, a_pow: u32) -> MultiPoly {
        self.terms
            .get(&(dag_pow, a_pow))
            .cloned()
            .unwrap_or_else(MultiPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &MultiPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-expand to a formal sum of block words `(a†)^j a^k`.
    pub fn to_expression(&self) -> NcExpression {
        let mut out = NcExpression::zero();
        for (&(dag_pow, a_pow), coeff) in &self.terms {
            out.add_term(Word::dag_pow_then_a_pow(dag_pow, a_pow), coeff.clone());
        }
        out
    }
}

impl fmt::Display for NormalForm {
    /// Canonical rendering: terms by `dag_pow` descending then `a_pow`
    /// descending, e.g. `ad^2 a^2 + L ad a^2`. Coefficients that are not a
    /// single positive monomial are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(dag_pow, a_pow), coeff)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut word = String::new();
            if dag_pow == 1 {
                word.push_str("ad");
            } else if dag_pow > 1 {
                word.push_str(&format!("ad^{dag_pow}"));
            }
            if a_pow > 0 {
                if !word.is_empty() {
                    word.push(' ');
                }
                if a_pow == 1 {
                    word.push('a');
                } else {
                    word.push_str(&format!("a^{a_pow}"));
                }
            }
            let simple = coeff.is_monomial()
                && coeff
                    .terms()
                    .next()
                    .is_some_and(|(_, q)| q > &num_traits::Zero::zero());
            if word.is_empty() {
                if simple {
                    write!(f, "{coeff}")?;
                } else {
                    write!(f, "({coeff})")?;
                }
            } else if coeff.is_one() {
                f.write_str(&word)?;
            } else if simple {
                write!(f, "{coeff} {word}")?;
            } else {
                write!(f, "({coeff}) {word}")?;
            }
        }
        Ok(())
    }
}

fn find_inversion(letters: &[Letter], strategy: RewriteStrategy) -> Option<usize> {
    let pairs = letters.windows(2).enumerate();
    let hit = |(_, w): &(usize, &[Letter])| w[0] == Letter::A && w[1] == Letter::ADag;
    match strategy {
        RewriteStrategy::Leftmost => pairs.filter(hit).map(|(i, _)| i).next(),
        RewriteStrategy::Rightmost => pairs.filter(hit).map(|(i, _)| i).last(),
    }
}

/// Normal-order an expression by rewriting the leftmost `a a†` pair until no
/// inversion remains.
pub fn normalize(expr: &NcExpression, rule: &CommutationRule) -> NormalForm {
    normalize_with(expr, rule, RewriteStrategy::Leftmost)
}

/// Normal-order with an explicit pair-selection strategy.
///
/// Each step replaces one adjacent `a a†` by `a† a`, `α·a` and `β·1` in
/// place. Every branch strictly decreases (word length, inversion count)
/// lexicographically, so the worklist terminates on any input.
pub fn normalize_with(
    expr: &NcExpression,
    rule: &CommutationRule,
    strategy: RewriteStrategy,
) -> NormalForm {
    let mut result = NormalForm::zero();
    let mut worklist: Vec<(Word, MultiPoly)> = expr
        .terms
        .iter()
        .map(|(w, c)| (w.clone(), c.clone()))
        .collect();

    while let Some((word, coeff)) = worklist.pop() {
        match find_inversion(word.letters(), strategy) {
            None => {
                // No a left of an a-dag: the word is (a†)^j a^k.
                result.add_term(word.count(Letter::ADag), word.count(Letter::A), coeff);
            }
            Some(i) => {
                let letters = word.letters();
                let mut swapped = letters.to_vec();
                swapped.swap(i, i + 1);
                worklist.push((Word(swapped), coeff.clone()));

                if !rule.alpha.is_zero() {
                    let mut dropped_dag = letters.to_vec();
                    dropped_dag.remove(i + 1);
                    worklist.push((Word(dropped_dag), &coeff * &rule.alpha));
                }
                if !rule.beta.is_zero() {
                    let mut dropped_pair = letters.to_vec();
                    dropped_pair.drain(i..=i + 1);
                    worklist.push((Word(dropped_pair), &coeff * &rule.beta));
                }
            }
        }
    }
    result
}

/// Normal form of `expr^n`, computed by normalizing after each factor so the
/// intermediate stays consolidated. Equals `normalize` of the n-fold product.
pub fn power_normal(expr: &NcExpression, n: u32, rule: &CommutationRule) -> NormalForm {
    let mut acc = NormalForm::unit();
    for _ in 0..n {
        let product = &acc.to_expression() * expr;
        acc = normalize(&product, rule);
    }
    acc
}

/// Normal form of `((a† + r) a)^n` under the λ-shift rule, with `r` kept as
/// an indeterminate in the coefficients.
pub fn shifted_power_normal(n: u32) -> NormalForm {
    let mut shifted = NcExpression::zero();
    shifted.add_term(Word::new(vec![Letter::ADag, Letter::A]), MultiPoly::one());
    shifted.add_term(Word::new(vec![Letter::A]), MultiPoly::var(Var::R));
    power_normal(&shifted, n, &CommutationRule::lambda_shift())
}

/// Normal form of the word `a^m (a†)^n` under the λ-shift rule; intended for
/// `m, n >= 1`.
pub fn push_a_through(m: u32, n: u32) -> NormalForm {
    let word = Word::a_pow_then_dag_pow(m, n);
    normalize(
        &NcExpression::from_word(word),
        &CommutationRule::lambda_shift(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{BigRational, binomial};

    fn lam() -> MultiPoly {
        MultiPoly::var(Var::Lambda)
    }

    fn a_dag_a() -> NcExpression {
        NcExpression::from_word(Word::new(vec![Letter::ADag, Letter::A]))
    }

    fn poly(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn single_inversion_lambda_shift() {
        // a ad  ->  ad a + L a
        let e = NcExpression::from_word(Word::new(vec![Letter::A, Letter::ADag]));
        let nf = normalize(&e, &CommutationRule::lambda_shift());
        assert_eq!(nf.num_terms(), 2);
        assert_eq!(nf.coeff(1, 1), MultiPoly::one());
        assert_eq!(nf.coeff(0, 1), lam());
    }

    #[test]
    fn squared_number_word_lambda_shift() {
        // ad a ad a  ->  ad^2 a^2 + L ad a^2
        let e = NcExpression::from_word(Word::new(vec![
            Letter::ADag,
            Letter::A,
            Letter::ADag,
            Letter::A,
        ]));
        let nf = normalize(&e, &CommutationRule::lambda_shift());
        assert_eq!(nf.coeff(2, 2), MultiPoly::one());
        assert_eq!(nf.coeff(1, 2), lam());
        assert_eq!(nf.num_terms(), 2);
    }

    #[test]
    fn single_inversion_weyl() {
        let e = NcExpression::from_word(Word::new(vec![Letter::A, Letter::ADag]));
        let nf = normalize(&e, &CommutationRule::weyl());
        assert_eq!(nf.coeff(1, 1), MultiPoly::one());
        assert_eq!(nf.coeff(0, 0), MultiPoly::one());
        assert_eq!(nf.num_terms(), 2);
    }

    #[test]
    fn already_normal_is_fixed_point() {
        let e = a_dag_a();
        for rule in [
            CommutationRule::lambda_shift(),
            CommutationRule::shift(),
            CommutationRule::weyl(),
        ] {
            let nf = normalize(&e, &rule);
            assert_eq!(nf.num_terms(), 1);
            assert_eq!(nf.coeff(1, 1), MultiPoly::one());
        }
    }

    #[test]
    fn cube_of_number_word() {
        // (ad a)^3 = ad^3 a^3 + 3L ad^2 a^3 + 2L^2 ad a^3
        let nf = power_normal(&a_dag_a(), 3, &CommutationRule::lambda_shift());
        assert_eq!(nf.coeff(3, 3), MultiPoly::one());
        assert_eq!(nf.coeff(2, 3), poly("3*L"));
        assert_eq!(nf.coeff(1, 3), poly("2*L^2"));
        assert_eq!(nf.num_terms(), 3);
    }

    #[test]
    fn square_of_number_word_weyl() {
        // Katriel: (ad a)^2 = ad^2 a^2 + ad a in the Weyl algebra.
        let nf = power_normal(&a_dag_a(), 2, &CommutationRule::weyl());
        assert_eq!(nf.coeff(2, 2), MultiPoly::one());
        assert_eq!(nf.coeff(1, 1), MultiPoly::one());
        assert_eq!(nf.num_terms(), 2);
    }

    #[test]
    fn zeroth_power_is_unit() {
        let nf = power_normal(&a_dag_a(), 0, &CommutationRule::weyl());
        assert_eq!(nf, NormalForm::unit());
    }

    #[test]
    fn power_normal_matches_expanded_word() {
        let rule = CommutationRule::lambda_shift();
        for n in 0..=5 {
            let direct = normalize(&a_dag_a().pow(n), &rule);
            assert_eq!(power_normal(&a_dag_a(), n, &rule), direct);
        }
    }

    #[test]
    fn shifted_square() {
        // ((ad + r) a)^2 = ad^2 a^2 + (2r + L) ad a^2 + (r^2 + Lr) a^2
        let nf = shifted_power_normal(2);
        assert_eq!(nf.coeff(2, 2), MultiPoly::one());
        assert_eq!(nf.coeff(1, 2), poly("2*r + L"));
        assert_eq!(nf.coeff(0, 2), poly("r^2 + L*r"));
    }

    #[test]
    fn shifted_first_power_needs_no_rewriting() {
        let nf = shifted_power_normal(1);
        assert_eq!(nf.coeff(1, 1), MultiPoly::one());
        assert_eq!(nf.coeff(0, 1), MultiPoly::var(Var::R));
        assert_eq!(nf.num_terms(), 2);
    }

    #[test]
    fn shifted_cube_constant_coefficient() {
        // r(r+L)(r+2L) = r^3 + 3Lr^2 + 2L^2 r
        let nf = shifted_power_normal(3);
        assert_eq!(nf.coeff(0, 3), poly("r^3 + 3*L*r^2 + 2*L^2*r"));
    }

    #[test]
    fn push_one_a_through_two_dags() {
        // a ad^2 = ad^2 a + 2L ad a + L^2 a
        let nf = push_a_through(1, 2);
        assert_eq!(nf.coeff(2, 1), MultiPoly::one());
        assert_eq!(nf.coeff(1, 1), poly("2*L"));
        assert_eq!(nf.coeff(0, 1), poly("L^2"));
    }

    #[test]
    fn push_two_as_through_one_dag() {
        // a^2 ad = ad a^2 + 2L a^2
        let nf = push_a_through(2, 1);
        assert_eq!(nf.coeff(1, 2), MultiPoly::one());
        assert_eq!(nf.coeff(0, 2), poly("2*L"));
        assert_eq!(nf.num_terms(), 2);
    }

    #[test]
    fn push_single_pair() {
        let nf = push_a_through(1, 1);
        assert_eq!(nf.coeff(1, 1), MultiPoly::one());
        assert_eq!(nf.coeff(0, 1), lam());
    }

    #[test]
    fn push_matches_binomial_expansion() {
        // a^m ad^n = sum_j C(n,j) (mL)^(n-j) ad^j a^m
        for m in 1..=4u32 {
            for n in 1..=4u32 {
                let nf = push_a_through(m, n);
                let m_lam = lam().scale(&BigRational::from_integer(m.into()));
                for j in 0..=n {
                    let want =
                        m_lam.pow(n - j).scale(&binomial(n as u64, j as u64));
                    assert_eq!(nf.coeff(j, m), want, "m={m} n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn rendering_matches_contract() {
        let nf = power_normal(&a_dag_a(), 2, &CommutationRule::lambda_shift());
        assert_eq!(nf.to_string(), "ad^2 a^2 + L ad a^2");

        let e = NcExpression::from_word(Word::new(vec![Letter::A, Letter::ADag]));
        let weyl = normalize(&e, &CommutationRule::weyl());
        assert_eq!(weyl.to_string(), "ad a + 1");

        assert_eq!(NormalForm::zero().to_string(), "0");
        assert_eq!(NormalForm::unit().to_string(), "1");
    }

    #[test]
    fn multi_term_coefficients_are_parenthesized() {
        let nf = shifted_power_normal(2);
        assert_eq!(
            nf.to_string(),
            "ad^2 a^2 + (2*r + L) ad a^2 + (r^2 + L*r) a^2"
        );
    }

    #[test]
    fn custom_rule_rejects_x_and_m() {
        assert!(CommutationRule::new(MultiPoly::var(Var::X), MultiPoly::zero()).is_err());
        assert!(CommutationRule::new(MultiPoly::zero(), MultiPoly::var(Var::M)).is_err());
        assert!(CommutationRule::new(poly("2*L + r"), MultiPoly::one()).is_ok());
    }

    #[test]
    fn strategies_agree_on_a_block_word() {
        let e = NcExpression::from_word(Word::a_pow_then_dag_pow(3, 3));
        for rule in [
            CommutationRule::lambda_shift(),
            CommutationRule::shift(),
            CommutationRule::weyl(),
        ] {
            let left = normalize_with(&e, &rule, RewriteStrategy::Leftmost);
            let right = normalize_with(&e, &rule, RewriteStrategy::Rightmost);
            assert_eq!(left, right);
        }
    }
}
