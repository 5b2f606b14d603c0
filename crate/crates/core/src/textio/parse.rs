use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::fields::VectorField;
use crate::kernel::{CoordKind, Coordinate, Parity, Rational, Signature, SuperPolynomial};

/// Largest exponent accepted by the parser.
const MAX_EXPONENT: u32 = 4096;

/// Byte range `begin..end` in the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub begin: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(begin: usize, end: usize) -> Self {
        SourceSpan { begin, end }
    }

    fn join(self, other: SourceSpan) -> Self {
        SourceSpan::new(self.begin.min(other.begin), self.end.max(other.end))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
    pub expected: Vec<String>,
}

impl ParseError {
    fn new(message: impl Into<String>, span: SourceSpan) -> Self {
        ParseError {
            message: message.into(),
            span,
            expected: Vec::new(),
        }
    }

    fn expecting(mut self, expected: &[&str]) -> Self {
        self.expected = expected.iter().map(|s| s.to_string()).collect();
        self
    }

    /// The input with a caret line under the offending span.
    pub fn render(&self, input: &str) -> String {
        let begin = self.span.begin.min(input.len());
        let width = self.span.end.saturating_sub(self.span.begin).max(1);
        format!(
            "{self}\n  {input}\n  {}{}",
            " ".repeat(input[..begin].chars().count()),
            "^".repeat(width)
        )
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at bytes {}..{}",
            self.message, self.span.begin, self.span.end
        )?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("name `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self, Tok::Int(_) | Tok::Ident(_) | Tok::LParen)
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                return Err(ParseError::new(
                    format!(
                        "a number cannot be juxtaposed with a name; write `{}*{}`",
                        &src[start..i],
                        &src[i..j]
                    ),
                    SourceSpan::new(start, j),
                ));
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((Tok::Int(n), SourceSpan::new(start, i)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), SourceSpan::new(start, i)));
            continue;
        }
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = src[start..].chars().next().expect("non-empty");
                return Err(ParseError::new(
                    format!("unexpected character `{ch}`"),
                    SourceSpan::new(start, start + ch.len_utf8()),
                ));
            }
        };
        i += 1;
        out.push((tok, SourceSpan::new(start, i)));
    }
    out.push((Tok::Eof, SourceSpan::new(src.len(), src.len())));
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum AtomKind {
    Number,
    EvenVar,
    OddVar,
    Group,
}

enum Factor {
    Poly(SuperPolynomial, AtomKind),
    Derivation(Coordinate),
}

struct Parser<'a> {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    sig: &'a Arc<Signature>,
    allow_derivations: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &str, sig: &'a Arc<Signature>, allow_derivations: bool) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            sig,
            allow_derivations,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError::new(format!("unexpected {}", self.peek().describe()), self.span())
            .expecting(expected)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<SourceSpan, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&[what]))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected(&["`+`", "`-`", "`*`", "end of input"]))
        }
    }

    /// sum := ['+'|'-'] product (('+'|'-') product)*
    fn sum(&mut self) -> Result<SuperPolynomial, ParseError> {
        let mut negate = self.leading_sign();
        let mut acc = SuperPolynomial::zero(self.sig);
        loop {
            let start = self.span();
            let (p, d) = self.product()?;
            if let Some((_, span)) = d {
                return Err(ParseError::new(
                    "d(...) is not allowed inside a polynomial",
                    start.join(span),
                ));
            }
            acc = if negate { &acc - &p } else { &acc + &p };
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn leading_sign(&mut self) -> bool {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        }
    }

    /// product := power (['*'] power)*, with an optional trailing `d(var)`.
    #[allow(clippy::type_complexity)]
    fn product(
        &mut self,
    ) -> Result<(SuperPolynomial, Option<(Coordinate, SourceSpan)>), ParseError> {
        let mut acc = SuperPolynomial::one(self.sig);
        let mut derivation: Option<(Coordinate, SourceSpan)> = None;
        let mut first = true;
        loop {
            if !first {
                match self.peek() {
                    Tok::Star => {
                        self.bump();
                    }
                    t if t.starts_atom() => {}
                    _ => break,
                }
            }
            first = false;
            let start = self.span();
            if let Some((_, dspan)) = derivation {
                return Err(ParseError::new(
                    "d(...) must be the last factor of a term",
                    dspan.join(start),
                ));
            }
            match self.power()? {
                Factor::Poly(p, _) => acc = &acc * &p,
                Factor::Derivation(c) => {
                    let end = self.toks[self.pos.saturating_sub(1)].1;
                    derivation = Some((c, start.join(end)));
                }
            }
        }
        Ok((acc, derivation))
    }

    /// power := atom ['^' INT]
    fn power(&mut self) -> Result<Factor, ParseError> {
        let start = self.span();
        let factor = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(factor);
        }
        self.bump();
        let (exp_tok, exp_span) = self.bump();
        let whole = start.join(exp_span);
        let n = match exp_tok {
            Tok::Int(n) => n,
            _ => {
                return Err(ParseError::new(
                    "exponent must be a nonnegative integer",
                    exp_span,
                )
                .expecting(&["integer"]))
            }
        };
        let n = n
            .to_u32()
            .filter(|&n| n <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::new(format!("exponent exceeds {MAX_EXPONENT}"), exp_span))?;
        match factor {
            Factor::Derivation(_) => Err(ParseError::new("d(...) cannot be raised to a power", whole)),
            Factor::Poly(_, AtomKind::OddVar) => Err(ParseError::new(
                "odd variable cannot be raised to a power",
                whole,
            )),
            Factor::Poly(_, AtomKind::Number) => Err(ParseError::new(
                "exponents apply only to even variables and parenthesized even expressions",
                whole,
            )),
            Factor::Poly(p, AtomKind::Group) if p.parity() != Some(Parity::Even) => Err(
                ParseError::new("only even expressions can be raised to a power", whole),
            ),
            Factor::Poly(p, kind) => Ok(Factor::Poly(p.pow(n), kind)),
        }
    }

    /// atom := INT ['/' INT] | name | 'd' '(' name ')' | '(' sum ')'
    fn atom(&mut self) -> Result<Factor, ParseError> {
        let (tok, span) = self.bump();
        match tok {
            Tok::Int(n) => {
                let value = if *self.peek() == Tok::Slash {
                    self.bump();
                    let (den, dspan) = self.bump();
                    match den {
                        Tok::Int(d) if !d.is_zero() => Rational::new(n, d),
                        Tok::Int(_) => {
                            return Err(ParseError::new("zero denominator", span.join(dspan)))
                        }
                        _ => {
                            return Err(ParseError::new(
                                "expected a denominator after `/`",
                                dspan,
                            )
                            .expecting(&["integer"]))
                        }
                    }
                } else {
                    Rational::from_integer(n)
                };
                Ok(Factor::Poly(
                    SuperPolynomial::constant(self.sig, value),
                    AtomKind::Number,
                ))
            }
            Tok::Ident(name) if name == "d" && *self.peek() == Tok::LParen => {
                if !self.allow_derivations {
                    return Err(ParseError::new(
                        "d(...) is not allowed inside a polynomial",
                        span,
                    ));
                }
                self.bump();
                let (var, vspan) = self.bump();
                let c = match var {
                    Tok::Ident(v) => self.sig.lookup(&v).ok_or_else(|| {
                        ParseError::new(format!("unknown variable `{v}` in d(...)"), vspan)
                    })?,
                    other => {
                        return Err(ParseError::new(
                            format!("unexpected {} in d(...)", other.describe()),
                            vspan,
                        )
                        .expecting(&["variable name"]))
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(Factor::Derivation(c))
            }
            Tok::Ident(name) => {
                let c = self
                    .sig
                    .lookup(&name)
                    .ok_or_else(|| ParseError::new(format!("unknown variable `{name}`"), span))?;
                let kind = match c.kind {
                    CoordKind::Even => AtomKind::EvenVar,
                    CoordKind::Odd => AtomKind::OddVar,
                };
                Ok(Factor::Poly(
                    SuperPolynomial::var(self.sig, c).expect("looked-up coordinate"),
                    kind,
                ))
            }
            Tok::LParen => {
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Factor::Poly(inner, AtomKind::Group))
            }
            other => {
                self.pos -= usize::from(other != Tok::Eof);
                Err(ParseError::new(format!("unexpected {}", other.describe()), span)
                    .expecting(&["number", "variable", "`(`"]))
            }
        }
    }

    /// field := ['+'|'-'] term (('+'|'-') term)*, term := [product '*'] d(var)
    fn field(&mut self) -> Result<VectorField, ParseError> {
        let mut coeffs = vec![SuperPolynomial::zero(self.sig); self.sig.dim()];
        let mut negate = self.leading_sign();
        loop {
            let start = self.span();
            let (p, d) = self.product()?;
            match d {
                Some((c, _)) => {
                    let slot = self.sig.slot(c);
                    coeffs[slot] = if negate {
                        &coeffs[slot] - &p
                    } else {
                        &coeffs[slot] + &p
                    };
                }
                None if p.is_zero() => {}
                None => {
                    let end = self.toks[self.pos.saturating_sub(1)].1;
                    return Err(ParseError::new(
                        "expected a term of the form <poly>*d(<var>)",
                        start.join(end),
                    )
                    .expecting(&["d(<var>)"]));
                }
            }
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok(VectorField::from_coeffs(self.sig, coeffs).expect("coefficients share the signature"))
    }
}

/// Parses a polynomial; the result is in canonical (sign-normalized) form.
pub fn parse_poly(text: &str, sig: &Arc<Signature>) -> Result<SuperPolynomial, ParseError> {
    let mut p = Parser::new(text, sig, false)?;
    let out = p.sum()?;
    p.finish()?;
    Ok(out)
}

/// Parses a sum of `<poly>*d(<var>)` terms.
pub fn parse_field(text: &str, sig: &Arc<Signature>) -> Result<VectorField, ParseError> {
    let mut p = Parser::new(text, sig, true)?;
    let out = p.field()?;
    p.finish()?;
    Ok(out)
}

/// Parses a rational literal such as `3` or `-2/5`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let sig = Signature::standard(0, 0).expect("empty signature").shared();
    let whole = SourceSpan::new(0, text.len());
    parse_poly(text, &sig)?
        .as_constant()
        .ok_or_else(|| ParseError::new("expected a rational number", whole))
}
