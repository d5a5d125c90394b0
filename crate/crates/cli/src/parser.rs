//! Recursive descent parser for algebra expressions over the letters `a` and
//! `ad` (a Unicode `a†` is accepted on input, never emitted).
//!
//! Grammar, LL(1) by construction:
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor+                       (juxtaposition is the product)
//! factor := atom ('^' uint)?
//! atom   := 'a' | 'ad' | rational | 'L' | 'r' | '(' expr ')'
//! ```
//!
//! There is no infix minus; negative rational literals such as `-1` take its
//! place, which keeps juxtaposition unambiguous.

use lamshift::exactnum::{BigRational, MultiPoly, Var};
use lamshift::ncalgebra::{Letter, NcExpression};
use num_traits::{Signed, ToPrimitive};
use std::fmt;

/// Abstract syntax for algebra expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Sum(Vec<Ast>),
    Product(Vec<Ast>),
    Power(Box<Ast>, u32),
    LetterA,
    LetterADag,
    Scalar(MultiPoly),
}

/// Syntax error with the 1-based byte offset of the offending input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

const EXPECTED_ATOM: &str = "'a', 'ad', 'L', 'r', a rational literal, or '('";

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Plus,
    Caret,
    LParen,
    RParen,
    LetterA,
    LetterADag,
    SymbolL,
    SymbolR,
    Number(BigRational),
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Plus => "'+'".into(),
            Token::Caret => "'^'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::LetterA => "'a'".into(),
            Token::LetterADag => "'ad'".into(),
            Token::SymbolL => "'L'".into(),
            Token::SymbolR => "'r'".into(),
            Token::Number(q) => format!("the rational {q}"),
            Token::Eof => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self,
            Token::LetterA
                | Token::LetterADag
                | Token::SymbolL
                | Token::SymbolR
                | Token::Number(_)
                | Token::LParen
        )
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn error_at(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: offset + 1,
            message: message.into(),
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

    fn tokenize(mut self) -> Result<Vec<(Token, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.peek().is_some_and(|c| c.is_whitespace()) {
                self.bump();
            }
            let start = self.pos;
            let Some(c) = self.peek() else {
                out.push((Token::Eof, start + 1));
                return Ok(out);
            };
            let token = match c {
                '+' => {
                    self.bump();
                    Token::Plus
                }
                '^' => {
                    self.bump();
                    Token::Caret
                }
                '(' => {
                    self.bump();
                    Token::LParen
                }
                ')' => {
                    self.bump();
                    Token::RParen
                }
                '-' => {
                    let mut rest = self.src[self.pos..].chars();
                    rest.next();
                    if rest.next().is_some_and(|d| d.is_ascii_digit()) {
                        self.bump();
                        self.number(start, true)?
                    } else {
                        return Err(self.error_at(
                            start,
                            "'-' is not in the grammar; write negative rational \
                             literals instead, e.g. \"a ad + -1 ad a\"",
                        ));
                    }
                }
                d if d.is_ascii_digit() => self.number(start, false)?,
                l if l.is_ascii_alphabetic() => self.ident(start)?,
                other => {
                    return Err(
                        self.error_at(start, format!("unexpected character {other:?}"))
                    );
                }
            };
            out.push((token, start + 1));
        }
    }

    fn digits(&mut self, what: &str) -> Result<BigRational, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error_at(start, format!("expected digits in {what}")));
        }
        let int: lamshift::exactnum::BigInt =
            self.src[start..self.pos].parse().expect("digits parse");
        Ok(BigRational::from_integer(int))
    }

    fn number(&mut self, start: usize, negative: bool) -> Result<Token, ParseError> {
        let mut value = self.digits("a rational literal")?;
        if self.peek() == Some('/') {
            self.bump();
            let denom_start = self.pos;
            let denom = self.digits("a rational denominator")?;
            if denom == BigRational::from_integer(0.into()) {
                return Err(self.error_at(denom_start, "zero denominator in rational literal"));
            }
            value /= denom;
        }
        if negative {
            value = -value;
        }
        let _ = start;
        Ok(Token::Number(value))
    }

    fn ident(&mut self, start: usize) -> Result<Token, ParseError> {
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.bump();
        }
        let name = &self.src[start..self.pos];
        match name {
            "a" => {
                // Accept the Unicode dagger as an alias for `ad`.
                if self.peek() == Some('\u{2020}') {
                    self.bump();
                    Ok(Token::LetterADag)
                } else {
                    Ok(Token::LetterA)
                }
            }
            "ad" => Ok(Token::LetterADag),
            "L" => Ok(Token::SymbolL),
            "r" => Ok(Token::SymbolR),
            other => Err(self.error_at(start, format!("unknown symbol '{other}'"))),
        }
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn advance(&mut self) -> (Token, usize) {
        let entry = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        entry
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut terms = vec![self.term()?];
        while *self.peek() == Token::Plus {
            self.advance();
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("nonempty")
        } else {
            Ast::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.peek().starts_atom() {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("nonempty")
        } else {
            Ast::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        let atom = self.atom()?;
        if *self.peek() == Token::Caret {
            self.advance();
            let exponent = self.exponent()?;
            return Ok(Ast::Power(Box::new(atom), exponent));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        match self.peek().clone() {
            Token::LetterA => {
                self.advance();
                Ok(Ast::LetterA)
            }
            Token::LetterADag => {
                self.advance();
                Ok(Ast::LetterADag)
            }
            Token::SymbolL => {
                self.advance();
                Ok(Ast::Scalar(MultiPoly::var(Var::Lambda)))
            }
            Token::SymbolR => {
                self.advance();
                Ok(Ast::Scalar(MultiPoly::var(Var::R)))
            }
            Token::Number(q) => {
                self.advance();
                Ok(Ast::Scalar(MultiPoly::constant(q)))
            }
            Token::LParen => {
                self.advance();
                let inner = self.expr()?;
                match self.peek() {
                    Token::RParen => {
                        self.advance();
                        Ok(inner)
                    }
                    other => Err(self.error(format!(
                        "found {}, expected one of: '+', {EXPECTED_ATOM}, or ')'",
                        other.describe()
                    ))),
                }
            }
            other => Err(self.error(format!(
                "found {}, expected one of: {EXPECTED_ATOM}",
                other.describe()
            ))),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Token::Number(q) if q.is_integer() && !q.is_negative() => {
                self.advance();
                q.to_integer().to_u32().ok_or(ParseError {
                    offset,
                    message: "exponent overflow: exponents must fit in 32 bits".into(),
                })
            }
            other => Err(ParseError {
                offset,
                message: format!(
                    "found {}, expected a nonnegative integer exponent",
                    other.describe()
                ),
            }),
        }
    }
}

/// Parse a source string into an [`Ast`].
pub fn parse_expression(src: &str) -> Result<Ast, ParseError> {
    let tokens = Lexer { src, pos: 0 }.tokenize()?;
    let mut parser = Parser { tokens, pos: 0 };
    let ast = parser.expr()?;
    match parser.peek() {
        Token::Eof => Ok(ast),
        other => Err(parser.error(format!(
            "found {}, expected one of: '+', {EXPECTED_ATOM}, or end of input",
            other.describe()
        ))),
    }
}

/// Render an AST back to source text that reparses to the same tree.
pub fn render_ast(ast: &Ast) -> String {
    fn wrap_composite(ast: &Ast) -> String {
        match ast {
            Ast::Sum(_) | Ast::Product(_) => format!("({})", render_ast(ast)),
            _ => render_ast(ast),
        }
    }
    match ast {
        Ast::Sum(terms) => terms
            .iter()
            .map(render_ast)
            .collect::<Vec<_>>()
            .join(" + "),
        Ast::Product(factors) => factors
            .iter()
            .map(wrap_composite)
            .collect::<Vec<_>>()
            .join(" "),
        Ast::Power(base, exponent) => format!("{}^{exponent}", wrap_composite(base)),
        Ast::LetterA => "a".into(),
        Ast::LetterADag => "ad".into(),
        Ast::Scalar(p) => render_scalar(p),
    }
}

fn render_scalar(p: &MultiPoly) -> String {
    if *p == MultiPoly::var(Var::Lambda) {
        return "L".into();
    }
    if *p == MultiPoly::var(Var::R) {
        return "r".into();
    }
    if p.total_degree() == 0 {
        return p.to_string();
    }
    // Not producible by the grammar; display form only.
    format!("({p})")
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_ast(self))
    }
}

/// Evaluate an AST into a formal sum of words with polynomial coefficients.
pub fn evaluate(ast: &Ast) -> NcExpression {
    match ast {
        Ast::LetterA => NcExpression::letter(Letter::A),
        Ast::LetterADag => NcExpression::letter(Letter::ADag),
        Ast::Scalar(p) => NcExpression::scalar(p.clone()),
        Ast::Sum(terms) => terms
            .iter()
            .fold(NcExpression::zero(), |acc, t| &acc + &evaluate(t)),
        Ast::Product(factors) => factors
            .iter()
            .fold(NcExpression::unit(), |acc, t| &acc * &evaluate(t)),
        Ast::Power(base, exponent) => evaluate(base).pow(*exponent),
    }
}
