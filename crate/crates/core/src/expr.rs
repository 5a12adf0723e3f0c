//! The expression DSL used by the command-line front end and the cache file
//! format.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expression := ['+'|'-'] term (('+'|'-') term)*
//! term       := coeff | [coeff ['*']] factor+
//! factor     := token ['^' integer]
//! coeff      := cfactor ('*' cfactor)*
//! cfactor    := rational | 'q' ['^' integer] | '(' cexpr ')'
//! ```
//!
//! Tokens depend on the declared context: `z1..z4`, `z1*..z4*` and the named
//! coinvariant generators `A`, `A*`, `B`, `B*`, `RR`, `An(n)`, `Bn(n)` live in
//! the P context; `a b c d` in the SU2 context; `r[k,m,n]` in the C context.
//! A context flag rather than inference: `b` would otherwise be ambiguous
//! between the SU2 generator and the coinvariant generator.

use crate::cmod::{CElement, CIndex};
use crate::coeff::LaurentCoeff;
use crate::galois::{self, PPElement};
use crate::s7::{self, PElement, PMonomial, ZLetter};
use crate::suq2::{self, Su2Element, Su2Letter};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

/// Which algebra an expression denotes elements of.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Context {
    P,
    Su2,
    C,
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::P => write!(f, "P"),
            Context::Su2 => write!(f, "SU2"),
            Context::C => write!(f, "C"),
        }
    }
}

impl std::str::FromStr for Context {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "P" => Ok(Context::P),
            "SU2" => Ok(Context::Su2),
            "C" => Ok(Context::C),
            other => Err(format!("unknown context `{}` (expected P, SU2 or C)", other)),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseErrorKind {
    UnknownToken(String),
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(String),
    NegativeExponent(String),
    ContextViolation { token: String, context: Context },
    InvalidBasisIndex(String),
    EmptyTerm,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.pos.line, self.pos.col)?;
        match &self.kind {
            ParseErrorKind::UnknownToken(t) => write!(f, "unknown token `{}`", t),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{}`", c),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::Expected(what) => write!(f, "expected {}", what),
            ParseErrorKind::NegativeExponent(t) => {
                write!(f, "negative exponent on generator `{}`", t)
            }
            ParseErrorKind::ContextViolation { token, context } => {
                write!(f, "token `{}` is not valid in context {}", token, context)
            }
            ParseErrorKind::InvalidBasisIndex(what) => write!(f, "invalid basis index: {}", what),
            ParseErrorKind::EmptyTerm => write!(f, "empty term"),
        }
    }
}

impl std::error::Error for ParseError {}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Ident(String),
    Number(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Tensor,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '+' | '-' | '*' | '^' | '/' | '(' | ')' | '[' | ']' | ',' | '⊗' => {
                chars.next();
                col += 1;
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    _ => Tok::Tensor,
                };
                out.push(Token { tok, pos });
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let n: BigInt = s.parse().expect("digits");
                out.push(Token {
                    tok: Tok::Number(n),
                    pos,
                });
            }
            c if c.is_ascii_alphabetic() => {
                // collect the alphanumeric run, then segment it into known
                // tokens so that whitespace between generators is optional
                let mut run = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() {
                        run.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let mut rest = run.as_str();
                let mut offset = 0usize;
                while !rest.is_empty() {
                    let tpos = Pos {
                        line,
                        col: pos.col + offset,
                    };
                    let bytes = rest.as_bytes();
                    if bytes[0].is_ascii_digit() {
                        let len = bytes.iter().take_while(|b| b.is_ascii_digit()).count();
                        let n: BigInt = rest[..len].parse().expect("digits");
                        out.push(Token {
                            tok: Tok::Number(n),
                            pos: tpos,
                        });
                        offset += len;
                        rest = &rest[len..];
                        continue;
                    }
                    let is_z_digit =
                        bytes[0] == b'z' && bytes.len() >= 2 && bytes[1].is_ascii_digit();
                    let take = if is_z_digit
                        || rest.starts_with("An")
                        || rest.starts_with("Bn")
                        || rest.starts_with("RR")
                    {
                        2
                    } else if matches!(bytes[0], b'a' | b'b' | b'c' | b'd' | b'q' | b'r' | b'A' | b'B')
                    {
                        1
                    } else {
                        rest.len()
                    };
                    out.push(Token {
                        tok: Tok::Ident(rest[..take].to_string()),
                        pos: tpos,
                    });
                    offset += take;
                    rest = &rest[take..];
                }
            }
            other => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

/// A generator token, context-free; context checking happens at elaboration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GenToken {
    /// z_i or z_i* (P context).
    Z { index: u8, starred: bool },
    /// a, b, c, d (SU2 context).
    Su2(Su2Letter),
    /// r[k,m,n] (C context).
    RBasis { k: i64, m: i64, n: i64 },
    /// Named coinvariant generators (P context).
    GenA { starred: bool },
    GenB { starred: bool },
    GenR,
    An(i64),
    Bn(i64),
}

impl GenToken {
    fn describe(&self) -> String {
        match self {
            GenToken::Z { index, starred } => {
                format!("z{}{}", index, if *starred { "*" } else { "" })
            }
            GenToken::Su2(l) => l.symbol().to_string(),
            GenToken::RBasis { k, m, n } => format!("r[{},{},{}]", k, m, n),
            GenToken::GenA { starred } => format!("A{}", if *starred { "*" } else { "" }),
            GenToken::GenB { starred } => format!("B{}", if *starred { "*" } else { "" }),
            GenToken::GenR => "RR".to_string(),
            GenToken::An(n) => format!("An({})", n),
            GenToken::Bn(n) => format!("Bn({})", n),
        }
    }
}

/// One additive term: an exact coefficient times a sequence of generator
/// powers.
#[derive(Clone, Debug)]
pub struct AstTerm {
    pub coeff: LaurentCoeff,
    pub factors: Vec<(GenToken, u32, Pos)>,
}

/// A parsed expression: a sum of terms.
#[derive(Clone, Debug)]
pub struct ExprAst {
    pub terms: Vec<AstTerm>,
}

/// An elaborated element in one of the three contexts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ElementValue {
    P(PElement),
    Su2(Su2Element),
    C(CElement),
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        let tokens = lex(src)?;
        let end = tokens
            .last()
            .map(|t| Pos {
                line: t.pos.line,
                col: t.pos.col + 1,
            })
            .unwrap_or(Pos { line: 1, col: 1 });
        Ok(Parser { tokens, at: 0, end })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.tokens.get(self.at + 1).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.tokens.get(self.at).map(|t| t.pos).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.at).map(|t| t.tok.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, want: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    fn expected(&self, what: &str) -> ParseError {
        ParseError {
            pos: self.pos(),
            kind: if self.peek().is_none() {
                ParseErrorKind::UnexpectedEnd
            } else {
                ParseErrorKind::Expected(what.to_string())
            },
        }
    }

    fn at_end(&self) -> bool {
        self.at >= self.tokens.len()
    }

    /// A signed integer literal.
    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            if self.peek() == Some(&Tok::Plus) {
                self.at += 1;
            }
            false
        };
        match self.bump() {
            Some(Tok::Number(n)) => {
                let v: i64 = n.to_string().parse().map_err(|_| ParseError {
                    pos: self.pos(),
                    kind: ParseErrorKind::InvalidBasisIndex("integer out of range".into()),
                })?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.expected("an integer")),
        }
    }

    fn starts_coeff(&self) -> bool {
        match self.peek() {
            Some(Tok::Number(_)) | Some(Tok::LParen) => true,
            Some(Tok::Ident(s)) => s == "q",
            _ => false,
        }
    }

    fn coeff_factor(&mut self) -> Result<LaurentCoeff, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Number(n)) => {
                self.at += 1;
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    match self.bump() {
                        Some(Tok::Number(d)) => Ok(LaurentCoeff::from_rational(BigRational::new(
                            n,
                            d,
                        ))),
                        _ => Err(self.expected("a denominator")),
                    }
                } else {
                    Ok(LaurentCoeff::from_rational(BigRational::from_integer(n)))
                }
            }
            Some(Tok::Ident(s)) if s == "q" => {
                self.at += 1;
                if self.peek() == Some(&Tok::Caret) {
                    self.at += 1;
                    let e = self.signed_int()?;
                    Ok(LaurentCoeff::q_pow(e))
                } else {
                    Ok(LaurentCoeff::q())
                }
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.coeff_expression()?;
                self.eat(&Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.expected("a coefficient")),
        }
    }

    fn coeff_term(&mut self) -> Result<LaurentCoeff, ParseError> {
        let mut acc = self.coeff_factor()?;
        while self.peek() == Some(&Tok::Star) {
            // inside a coefficient expression `*` always joins coefficient
            // factors; generator tokens never appear here
            let next_is_coeff = matches!(
                self.peek2(),
                Some(Tok::Number(_)) | Some(Tok::LParen)
            ) || matches!(self.peek2(), Some(Tok::Ident(s)) if s == "q");
            if !next_is_coeff {
                break;
            }
            self.at += 1;
            acc = &acc * &self.coeff_factor()?;
        }
        Ok(acc)
    }

    fn coeff_expression(&mut self) -> Result<LaurentCoeff, ParseError> {
        let mut sign = LaurentCoeff::one();
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            sign = -sign;
        } else if self.peek() == Some(&Tok::Plus) {
            self.at += 1;
        }
        let mut acc = &sign * &self.coeff_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    let t = self.coeff_term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    let t = self.coeff_term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// A generator token, or None if the next token cannot start one.
    fn gen_token(&mut self) -> Result<Option<(GenToken, Pos)>, ParseError> {
        let pos = self.pos();
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Ok(None);
        };
        // `q` is always a coefficient
        if name == "q" {
            return Ok(None);
        }
        self.at += 1;
        let star_suffix = |p: &mut Self| -> bool {
            if p.peek() == Some(&Tok::Star) {
                p.at += 1;
                true
            } else {
                false
            }
        };
        let tok = match name.as_str() {
            "z1" | "z2" | "z3" | "z4" => {
                let index = name.as_bytes()[1] - b'0';
                let starred = star_suffix(self);
                GenToken::Z { index, starred }
            }
            "a" => GenToken::Su2(Su2Letter::A),
            "b" => GenToken::Su2(Su2Letter::B),
            "c" => GenToken::Su2(Su2Letter::C),
            "d" => GenToken::Su2(Su2Letter::D),
            "A" => GenToken::GenA {
                starred: star_suffix(self),
            },
            "B" => GenToken::GenB {
                starred: star_suffix(self),
            },
            "RR" => GenToken::GenR,
            "An" | "Bn" => {
                self.eat(&Tok::LParen, "`(`")?;
                let n = self.signed_int()?;
                self.eat(&Tok::RParen, "`)`")?;
                if name == "An" {
                    GenToken::An(n)
                } else {
                    GenToken::Bn(n)
                }
            }
            "r" => {
                self.eat(&Tok::LBracket, "`[`")?;
                let k = self.signed_int()?;
                self.eat(&Tok::Comma, "`,`")?;
                let m = self.signed_int()?;
                self.eat(&Tok::Comma, "`,`")?;
                let n = self.signed_int()?;
                self.eat(&Tok::RBracket, "`]`")?;
                GenToken::RBasis { k, m, n }
            }
            other => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnknownToken(other.to_string()),
                })
            }
        };
        Ok(Some((tok, pos)))
    }

    fn term(&mut self) -> Result<AstTerm, ParseError> {
        let start = self.pos();
        let mut coeff = LaurentCoeff::one();
        let mut saw_coeff = false;
        // leading coefficient factors, separated by optional `*`
        while self.starts_coeff() {
            coeff = &coeff * &self.coeff_factor()?;
            saw_coeff = true;
            if self.peek() == Some(&Tok::Star) {
                self.at += 1;
            }
        }
        let mut factors = Vec::new();
        while let Some((tok, pos)) = self.gen_token()? {
            let exp = if self.peek() == Some(&Tok::Caret) {
                self.at += 1;
                let e = self.signed_int()?;
                if e < 0 {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::NegativeExponent(tok.describe()),
                    });
                }
                e as u32
            } else {
                1
            };
            factors.push((tok, exp, pos));
        }
        if !saw_coeff && factors.is_empty() {
            return Err(ParseError {
                pos: start,
                kind: ParseErrorKind::EmptyTerm,
            });
        }
        Ok(AstTerm { coeff, factors })
    }

    fn expression(&mut self) -> Result<ExprAst, ParseError> {
        let mut terms = Vec::new();
        let mut sign = LaurentCoeff::one();
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            sign = -sign;
        } else if self.peek() == Some(&Tok::Plus) {
            self.at += 1;
        }
        let mut t = self.term()?;
        t.coeff = &t.coeff * &sign;
        terms.push(t);
        while let Some(tok) = self.peek() {
            let neg = match tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Err(self.expected("`+`, `-` or end of expression")),
            };
            self.at += 1;
            let mut t = self.term()?;
            if neg {
                t.coeff = -&t.coeff;
            }
            terms.push(t);
        }
        Ok(ExprAst { terms })
    }
}

/// Parse a source string into an AST. Context is only needed at elaboration;
/// parsing itself is context-free.
pub fn parse(src: &str) -> Result<ExprAst, ParseError> {
    let mut p = Parser::new(src)?;
    if p.at_end() {
        return Err(ParseError {
            pos: Pos { line: 1, col: 1 },
            kind: ParseErrorKind::UnexpectedEnd,
        });
    }
    let ast = p.expression()?;
    if !p.at_end() {
        return Err(p.expected("end of expression"));
    }
    Ok(ast)
}

fn violation(tok: &GenToken, pos: Pos, ctx: Context) -> ParseError {
    ParseError {
        pos,
        kind: ParseErrorKind::ContextViolation {
            token: tok.describe(),
            context: ctx,
        },
    }
}

fn p_factor(tok: &GenToken, pos: Pos) -> Result<PElement, ParseError> {
    match tok {
        GenToken::Z { index, starred } => {
            let l = if *starred {
                ZLetter::zs(*index)
            } else {
                ZLetter::z(*index)
            };
            Ok(s7::nf_word(&[l]))
        }
        GenToken::GenA { starred } => Ok(if *starred {
            s7::star(&galois::gen_a())
        } else {
            galois::gen_a()
        }),
        GenToken::GenB { starred } => Ok(if *starred {
            s7::star(&galois::gen_b())
        } else {
            galois::gen_b()
        }),
        GenToken::GenR => Ok(galois::gen_r()),
        GenToken::An(n) => Ok(galois::a_n(*n)),
        GenToken::Bn(n) => Ok(galois::b_n(*n)),
        other => Err(violation(other, pos, Context::P)),
    }
}

fn pow_p(base: &PElement, e: u32) -> PElement {
    let mut acc = s7::one();
    for _ in 0..e {
        acc = s7::mul(&acc, base);
    }
    acc
}

/// Elaborate an AST in a declared context.
pub fn elaborate(ast: &ExprAst, ctx: Context) -> Result<ElementValue, ParseError> {
    match ctx {
        Context::P => {
            let mut acc = PElement::zero();
            for t in &ast.terms {
                let mut prod = s7::one();
                for (tok, exp, pos) in &t.factors {
                    let f = p_factor(tok, *pos)?;
                    prod = s7::mul(&prod, &pow_p(&f, *exp));
                }
                acc.add_scaled(&prod, &t.coeff);
            }
            Ok(ElementValue::P(acc))
        }
        Context::Su2 => {
            let mut acc = Su2Element::zero();
            for t in &ast.terms {
                let mut word = Vec::new();
                for (tok, exp, pos) in &t.factors {
                    match tok {
                        GenToken::Su2(l) => {
                            word.extend(std::iter::repeat(*l).take(*exp as usize));
                        }
                        other => return Err(violation(other, *pos, ctx)),
                    }
                }
                acc.add_scaled(&suq2::nf_word(&word), &t.coeff);
            }
            Ok(ElementValue::Su2(acc))
        }
        Context::C => {
            let mut acc = CElement::zero();
            for t in &ast.terms {
                if t.factors.len() != 1 {
                    let pos = t
                        .factors
                        .first()
                        .map(|(_, _, p)| *p)
                        .unwrap_or(Pos { line: 1, col: 1 });
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::InvalidBasisIndex(
                            "C is a coalgebra: each term must be a coefficient times a single r[k,m,n]"
                                .to_string(),
                        ),
                    });
                }
                let (tok, exp, pos) = &t.factors[0];
                match tok {
                    GenToken::RBasis { k, m, n } => {
                        if *exp != 1 {
                            return Err(ParseError {
                                pos: *pos,
                                kind: ParseErrorKind::InvalidBasisIndex(
                                    "powers of r[k,m,n] are not defined".to_string(),
                                ),
                            });
                        }
                        if *m < 0 || *n < 0 {
                            return Err(ParseError {
                                pos: *pos,
                                kind: ParseErrorKind::InvalidBasisIndex(
                                    "m and n must be nonnegative".to_string(),
                                ),
                            });
                        }
                        acc.add_term(CIndex::new(*k, *m as u32, *n as u32), t.coeff.clone());
                    }
                    other => return Err(violation(other, *pos, ctx)),
                }
            }
            Ok(ElementValue::C(acc))
        }
    }
}

/// Parse and elaborate in one step.
pub fn parse_element(src: &str, ctx: Context) -> Result<ElementValue, ParseError> {
    elaborate(&parse(src)?, ctx)
}

pub fn parse_p(src: &str) -> Result<PElement, ParseError> {
    match parse_element(src, Context::P)? {
        ElementValue::P(p) => Ok(p),
        _ => unreachable!(),
    }
}

// ---------------------------------------------------------------------------
// Tensor expressions (cache entries, tau output)
// ---------------------------------------------------------------------------

/// Parse a P (x) P tensor expression of the form produced by
/// [`galois::render_pp`]: a signed sum of `[coeff *] mono ⊗ mono` terms where
/// each side is a monomial word or `1`.
pub fn parse_pp(src: &str) -> Result<PPElement, ParseError> {
    let mut p = Parser::new(src)?;
    let mut out = PPElement::zero();
    let mut first = true;
    loop {
        let mut sign = LaurentCoeff::one();
        match p.peek() {
            None if first => {
                return Err(ParseError {
                    pos: Pos { line: 1, col: 1 },
                    kind: ParseErrorKind::UnexpectedEnd,
                })
            }
            None => break,
            Some(Tok::Plus) => {
                p.at += 1;
            }
            Some(Tok::Minus) => {
                p.at += 1;
                sign = -sign;
            }
            _ if first => {}
            _ => return Err(p.expected("`+` or `-` between tensor terms")),
        }
        first = false;
        let mut coeff = sign;
        while p.starts_coeff() {
            // a literal `1` directly before the tensor sign is the unit
            // monomial of the left leg, not a coefficient
            if matches!(p.peek(), Some(Tok::Number(n)) if n == &BigInt::from(1))
                && p.peek2() == Some(&Tok::Tensor)
            {
                break;
            }
            coeff = &coeff * &p.coeff_factor()?;
            if p.peek() == Some(&Tok::Star) {
                p.at += 1;
            }
        }
        let left = pp_monomial(&mut p)?;
        p.eat(&Tok::Tensor, "`⊗`")?;
        let right = pp_monomial(&mut p)?;
        out.add_term((left, right), coeff);
    }
    Ok(out)
}

fn pp_monomial(p: &mut Parser) -> Result<PMonomial, ParseError> {
    // `1` renders the unit monomial
    if let Some(Tok::Number(n)) = p.peek() {
        if n == &BigInt::from(1) {
            p.at += 1;
            return Ok(PMonomial::unit());
        }
    }
    let mut m = PMonomial::unit();
    let mut any = false;
    while let Some((tok, pos)) = p.gen_token()? {
        let exp = if p.peek() == Some(&Tok::Caret) {
            p.at += 1;
            let e = p.signed_int()?;
            if e < 0 {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::NegativeExponent(tok.describe()),
                });
            }
            e as u16
        } else {
            1
        };
        match tok {
            GenToken::Z { index, starred } => {
                if starred {
                    m.zs[(index - 1) as usize] += exp;
                } else {
                    m.z[(index - 1) as usize] += exp;
                }
                any = true;
            }
            other => return Err(violation(&other, pos, Context::P)),
        }
    }
    if !any {
        return Err(p.expected("a monomial"));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_coinvariant_generator_a() {
        // z1 z4* - z2 z3* is the generator a
        let got = parse_p("z1 z4* - z2 z3*").unwrap();
        assert_eq!(got, galois::gen_a());
        let named = parse_p("A").unwrap();
        assert_eq!(got, named);
    }

    #[test]
    fn parses_c_basis() {
        let got = parse_element("r[0,0,0]", Context::C).unwrap();
        assert_eq!(got, ElementValue::C(CElement::basis(CIndex::unit())));
        let got = parse_element("q^2*r[-1,2,0] - r[0,0,1]", Context::C).unwrap();
        let mut want = CElement::term(CIndex::new(-1, 2, 0), LaurentCoeff::q_pow(2));
        want.add_term(CIndex::new(0, 0, 1), -LaurentCoeff::one());
        assert_eq!(got, ElementValue::C(want));
    }

    #[test]
    fn rejects_unknown_token() {
        let err = parse_p("z5").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnknownToken(_)));
        assert_eq!(err.pos.col, 1);
    }

    #[test]
    fn rejects_context_violation() {
        let err = parse_element("a b", Context::P).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::ContextViolation { .. }));
        let err = parse_element("z1", Context::Su2).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::ContextViolation { .. }));
    }

    #[test]
    fn rejects_negative_generator_exponent() {
        let err = parse_p("z1^-2").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::NegativeExponent(_)));
    }

    #[test]
    fn parses_coefficients() {
        let got = parse_p("(1 - q^2)*z1 z1* + 3/2*q^-1*z2").unwrap();
        let mut want = PElement::zero();
        let z1z1s = s7::mul(&s7::nf_word(&[ZLetter::z(1)]), &s7::nf_word(&[ZLetter::zs(1)]));
        want.add_scaled(&z1z1s, &crate::coeff::one_minus_q2());
        want.add_scaled(
            &s7::nf_word(&[ZLetter::z(2)]),
            &LaurentCoeff::monomial(BigRational::new(3.into(), 2.into()), -1),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn whitespace_insensitive_and_normalizing() {
        // z2 z1 normalizes during elaboration
        let got = parse_p("z2z1").unwrap();
        let want = parse_p("q^-1 z1 z2").unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn round_trips_p_elements() {
        let samples = [
            "q^-1*z1 z2",
            "z1 z4* - z2 z3*",
            "1 - z1 z1* - z2 z2* - z3 z3*",
            "(1 - q^2)*z1^2 z3* + 2",
        ];
        for s in samples {
            let e = parse_p(s).unwrap();
            let rendered = s7::render_element(&e);
            let back = parse_p(&rendered).unwrap();
            assert_eq!(e, back, "round trip failed for `{}` -> `{}`", s, rendered);
        }
    }

    #[test]
    fn round_trips_pp_tensors() {
        let tt = galois::TauTable::new();
        for (k, m, n) in [(0i64, 0u32, 0u32), (1, 0, 0), (-1, 1, 0), (1, 1, 1)] {
            let t = tt.tau(k, m, n).unwrap();
            let rendered = galois::render_pp(&t);
            let back = parse_pp(&rendered).unwrap();
            assert_eq!(*t, back, "pp round trip failed at ({},{},{})", k, m, n);
        }
    }

    #[test]
    fn su2_context_parses() {
        let got = parse_element("a d - q b c", Context::Su2).unwrap();
        let ElementValue::Su2(e) = got else { panic!() };
        // ad - qbc = 1
        assert_eq!(e, suq2::one());
    }
}
