//! Exact coefficient arithmetic: arbitrary-precision rationals and sparse
//! multivariate polynomials in the fixed indeterminate set `{L, r, x, m}`,
//! where `L` denotes λ.
//!
//! Every operation is exact; zero coefficients are deleted eagerly so a
//! polynomial has exactly one stored representation and equality is
//! structural.

use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// The indeterminates, in the global ordering `L < r < x < m` used for
/// exponent vectors, term ordering and printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Lambda,
    R,
    X,
    M,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Lambda, Var::R, Var::X, Var::M];

    pub fn symbol(self) -> &'static str {
        match self {
            Var::Lambda => "L",
            Var::R => "r",
            Var::X => "x",
            Var::M => "m",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Var> {
        match s {
            "L" => Some(Var::Lambda),
            "r" => Some(Var::R),
            "x" => Some(Var::X),
            "m" => Some(Var::M),
            _ => None,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Exponent vector over the four indeterminates. The derived `Ord` is
/// lexicographic in the global indeterminate ordering.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents([u32; 4]);

impl Exponents {
    pub fn zero() -> Self {
        Exponents([0; 4])
    }

    pub fn of_var(var: Var, exp: u32) -> Self {
        let mut e = Exponents([0; 4]);
        e.0[var.index()] = exp;
        e
    }

    pub fn get(&self, var: Var) -> u32 {
        self.0[var.index()]
    }

    pub fn set(&mut self, var: Var, exp: u32) {
        self.0[var.index()] = exp;
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn product(&self, other: &Exponents) -> Exponents {
        let mut out = [0u32; 4];
        for i in 0..4 {
            out[i] = self.0[i]
                .checked_add(other.0[i])
                .expect("exponent overflow");
        }
        Exponents(out)
    }
}

/// Sparse multivariate polynomial over [`BigRational`] coefficients.
///
/// Stored terms never have a zero coefficient, so structural equality of the
/// term maps decides polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = MultiPoly::default();
        p.add_term(Exponents::zero(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        MultiPoly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(var: Var) -> Self {
        MultiPoly::monomial(Exponents::of_var(var, 1), BigRational::one())
    }

    pub fn monomial(exps: Exponents, coeff: BigRational) -> Self {
        let mut p = MultiPoly::default();
        p.add_term(exps, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Exponents::zero())
                .is_some_and(|c| c.is_one())
    }

    /// True when the polynomial is a single stored monomial.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of a single exponent vector; zero when absent.
    pub fn coeff(&self, exps: &Exponents) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Highest exponent of `var` across all terms; 0 for the zero polynomial.
    pub fn degree(&self, var: Var) -> u32 {
        self.terms.keys().map(|e| e.get(var)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.total_degree()).max().unwrap_or(0)
    }

    /// Terms in canonical print order: total degree descending, ties broken
    /// lexicographically in the global indeterminate ordering.
    pub fn canonical_terms(&self) -> Vec<(Exponents, BigRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        // Stable sort keeps the BTreeMap's lexicographic order within a degree.
        v.sort_by_key(|(e, _)| std::cmp::Reverse(e.total_degree()));
        v
    }

    fn add_term(&mut self, exps: Exponents, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut exp = n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial evaluation: substitute rational values for the bound
    /// indeterminates; unbound indeterminates survive.
    pub fn eval(&self, bindings: &BTreeMap<Var, BigRational>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (exps, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut rem = *exps;
            for (&var, value) in bindings {
                let e = exps.get(var);
                if e > 0 {
                    c *= num_traits::pow(value.clone(), e as usize);
                    rem.set(var, 0);
                }
            }
            out.add_term(rem, c);
        }
        out
    }

    /// Substitute a polynomial for one indeterminate.
    pub fn substitute(&self, var: Var, replacement: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (exps, coeff) in &self.terms {
            let e = exps.get(var);
            let mut rem = *exps;
            rem.set(var, 0);
            let term = MultiPoly::monomial(rem, coeff.clone());
            if e == 0 {
                out = &out + &term;
            } else {
                out = &out + &(&term * &replacement.pow(e));
            }
        }
        out
    }

    /// The coefficient of `var^k`, as a polynomial in the remaining
    /// indeterminates.
    pub fn coeff_of(&self, var: Var, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (exps, coeff) in &self.terms {
            if exps.get(var) == k {
                let mut rem = *exps;
                rem.set(var, 0);
                out.add_term(rem, coeff.clone());
            }
        }
        out
    }

    /// Exact division by `var`; `None` when some term lacks that factor.
    pub fn div_by_var(&self, var: Var) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero();
        for (exps, coeff) in &self.terms {
            let e = exps.get(var);
            if e == 0 {
                return None;
            }
            let mut rem = *exps;
            rem.set(var, e - 1);
            out.add_term(rem, coeff.clone());
        }
        Some(out)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, q)| (*e, q * c))
                .collect(),
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (exps, coeff) in &rhs.terms {
            out.add_term(*exps, coeff.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.product(e2), c1 * c2);
            }
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text rendering, the golden-file contract for every module
    /// above this one: terms by total degree descending, ties in the global
    /// indeterminate ordering, e.g. `x^3 + 3*L*x^2 + 2*L^2*x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exps, coeff)) in self.canonical_terms().into_iter().enumerate() {
            let negative = coeff.is_negative();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            write_monomial(f, &exps, &coeff.abs())?;
        }
        Ok(())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exps: &Exponents, mag: &BigRational) -> fmt::Result {
    if exps.total_degree() == 0 {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        write!(f, "{mag}*")?;
    }
    let mut first = true;
    for var in Var::ALL {
        let e = exps.get(var);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(var.symbol())?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Parse failure for the canonical polynomial syntax.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("polynomial syntax error at byte {offset}: {message}")]
pub struct PolyParseError {
    /// 1-based byte offset of the offending input.
    pub offset: usize,
    pub message: String,
}

impl FromStr for MultiPoly {
    type Err = PolyParseError;

    /// Parses the canonical rendering: a signed sum of `*`-separated factors,
    /// each a rational literal or an indeterminate with an optional `^` power.
    fn from_str(src: &str) -> Result<Self, Self::Err> {
        PolyParser { src, pos: 0 }.parse()
    }
}

struct PolyParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn error(&self, message: impl Into<String>) -> PolyParseError {
        PolyParseError {
            offset: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn parse(mut self) -> Result<MultiPoly, PolyParseError> {
        let mut acc = MultiPoly::zero();
        self.skip_ws();
        let mut negate = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        loop {
            let term = self.parse_term()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            self.skip_ws();
            match self.peek() {
                None => return Ok(acc),
                Some('+') => {
                    self.bump();
                    negate = false;
                }
                Some('-') => {
                    self.bump();
                    negate = true;
                }
                Some(c) => return Err(self.error(format!("found {c:?}, expected '+', '-', or end of input"))),
            }
            self.skip_ws();
        }
    }

    fn parse_term(&mut self) -> Result<MultiPoly, PolyParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
                acc = &acc * &self.parse_factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_factor(&mut self) -> Result<MultiPoly, PolyParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_uint_digits()?;
                let den = if self.peek() == Some('/') {
                    self.bump();
                    let start = self.pos;
                    let d = self.parse_uint_digits()?;
                    if d.is_zero() {
                        self.pos = start;
                        return Err(self.error("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(MultiPoly::constant(BigRational::new(num, den)))
            }
            Some(c) => match Var::from_symbol(&c.to_string()) {
                Some(var) => {
                    self.bump();
                    let exp = if self.peek() == Some('^') {
                        self.bump();
                        self.skip_ws();
                        self.parse_u32_exponent()?
                    } else {
                        1
                    };
                    Ok(MultiPoly::monomial(
                        Exponents::of_var(var, exp),
                        BigRational::one(),
                    ))
                }
                None => Err(self.error(format!(
                    "found {c:?}, expected a rational literal or one of 'L', 'r', 'x', 'm'"
                ))),
            },
            None => Err(self.error("unexpected end of input, expected a factor")),
        }
    }

    fn parse_uint_digits(&mut self) -> Result<BigInt, PolyParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits parse"))
    }

    fn parse_u32_exponent(&mut self) -> Result<u32, PolyParseError> {
        let start = self.pos;
        let n = self.parse_uint_digits()?;
        u32::try_from(n).map_err(|_| PolyParseError {
            offset: start + 1,
            message: "exponent overflow".into(),
        })
    }
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        // Each step divides exactly: the running product is C(n-k+i, i) * i!.
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    BigRational::from_integer(acc)
}

/// Exact factorial as a rational.
pub fn factorial(n: u64) -> BigRational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    BigRational::from_integer(acc)
}
