//! Expression parsing and canonical rendering.
//!
//! Grammar (ASCII, whitespace ignored):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := '-'? integer | '(' '-'? integer ')'
//! atom     := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers match `[a-z][a-z0-9]*`. Integer literals are reduced mod `p`.
//! Over `F_q` with `q ≠ p`, the descriptor's generator name denotes the
//! generator of `F_q`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::ParseError;
use crate::poly::Polynomial;
use crate::ratfunc::{FieldDescriptor, RationalFunction};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigUint),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse::<BigUint>().expect("digits");
                out.push((Token::Int(n), start));
                continue;
            }
            b'a'..=b'z' => {
                while i < bytes.len() && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit()) {
                    i += 1;
                }
                out.push((Token::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Token::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    at: usize,
    field: &'a FieldDescriptor,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> usize {
        self.tokens[self.at].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].0.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Token::Slash => {
                    self.bump();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(ParseError::ZeroDenominator);
                    }
                    acc = acc.checked_div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, ParseError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let parens = *self.peek() == Token::LParen;
        if parens {
            self.bump();
        }
        let negative = *self.peek() == Token::Minus;
        if negative {
            self.bump();
        }
        let Token::Int(e) = self.peek().clone() else {
            return Err(self.syntax("expected an integer exponent"));
        };
        self.bump();
        if parens {
            self.expect_rparen()?;
        }
        let base = if negative && !e.is_zero() {
            if base.is_zero() {
                return Err(ParseError::ZeroDenominator);
            }
            base.inv()?
        } else {
            base
        };
        Ok(base.pow_big(&e)?)
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if *self.peek() != Token::RParen {
            return Err(self.syntax("expected `)`"));
        }
        self.bump();
        Ok(())
    }

    fn atom(&mut self) -> Result<RationalFunction, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Token::Int(n) => Ok(self.field.constant(self.field.base.from_biguint(&n))),
            Token::Ident(name) => {
                if let Some(i) = self.field.var_index(&name) {
                    Ok(self.field.var(i))
                } else if self.field.base.degree() > 1 && name == self.field.generator_name {
                    Ok(self.field.constant(self.field.base.generator()))
                } else {
                    Err(ParseError::UnknownVariable { name, pos })
                }
            }
            Token::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Token::End => Err(ParseError::Syntax {
                pos,
                message: "unexpected end of input".to_string(),
            }),
            _ => Err(ParseError::Syntax {
                pos,
                message: "expected a number, variable or `(`".to_string(),
            }),
        }
    }
}

/// Parses `text` as an element of the field described by `field`.
pub fn rf_parse(text: &str, field: &FieldDescriptor) -> Result<RationalFunction, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        at: 0,
        field,
    };
    let value = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.syntax("unexpected trailing input"));
    }
    Ok(value)
}

/// Parses `text` and requires the result to be a polynomial.
pub fn poly_parse(text: &str, field: &FieldDescriptor) -> Result<Polynomial, ParseError> {
    rf_parse(text, field)?.as_polynomial().ok_or_else(|| ParseError::Syntax {
        pos: 0,
        message: "expected a polynomial".to_string(),
    })
}

/// Canonical rendering: terms sorted by decreasing lexicographic exponent
/// (first variable most significant), `*` between factors, `^` for powers.
pub fn render_polynomial(p: &Polynomial, names: &[String], generator_name: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let field = p.field();
    let mut parts: Vec<String> = Vec::with_capacity(p.len());
    for (m, c) in p.terms().rev() {
        let mut factors: Vec<String> = Vec::new();
        for (i, e) in m.exponents().iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
            if *e == BigUint::from(1u32) {
                factors.push(name);
            } else {
                factors.push(format!("{name}^{e}"));
            }
        }
        let coeff = field.render(*c, generator_name);
        let coeff = if coeff.contains(' ') { format!("({coeff})") } else { coeff };
        if factors.is_empty() {
            parts.push(coeff);
        } else if *c == crate::field::Fq::ONE {
            parts.push(factors.join("*"));
        } else {
            parts.push(format!("{coeff}*{}", factors.join("*")));
        }
    }
    parts.join(" + ")
}

/// Renders `num/den`, omitting a unit denominator.
pub fn render(f: &RationalFunction, field: &FieldDescriptor) -> String {
    let gen = field.generator_name.as_str();
    if let Some(p) = f.as_polynomial() {
        return render_polynomial(&p, &field.variables, gen);
    }
    let num = render_polynomial(f.numerator(), &field.variables, gen);
    let den = render_polynomial(f.denominator(), &field.variables, gen);
    let wrap = |s: String, multi: bool| if multi { format!("({s})") } else { s };
    let num_multi = f.numerator().len() > 1 || num.contains(' ');
    let den_multi = f.denominator().len() > 1 || den.contains(' ') || den.contains('*');
    format!("{}/{}", wrap(num, num_multi), wrap(den, den_multi))
}
