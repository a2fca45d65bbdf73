//! Canonical text form for tower scalars.
//!
//! num and den print as integer-coefficient polynomial strings in the fixed
//! variable order Q, S, T, z (extra symbols after), exponents increasing.
//! The same grammar parses back, so cache files round-trip bit-identically.

use super::poly::MPoly;
use super::tower::Params;
use super::Scalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

const CANONICAL_ORDER: [&str; 4] = ["Q", "S", "T", "z"];

fn var_rank(name: &str, tower_index: usize) -> (usize, usize) {
    match CANONICAL_ORDER.iter().position(|v| *v == name) {
        Some(r) => (r, 0),
        None => (CANONICAL_ORDER.len(), tower_index),
    }
}

/// Display order of the tower variables: canonical symbols first, extras in
/// tower order. Returns (level, name) pairs.
fn display_vars(params: &Params) -> Vec<(u8, String)> {
    let mut vars: Vec<(usize, usize, u8, String)> = params
        .tower()
        .vars()
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let (r0, r1) = var_rank(name, i);
            (r0, r1, (i + 1) as u8, name.clone())
        })
        .collect();
    vars.sort();
    vars.into_iter().map(|(_, _, l, n)| (l, n)).collect()
}

fn flatten_into(
    p: &MPoly,
    levels: &[u8],
    exps: &mut Vec<usize>,
    pos: usize,
    out: &mut BTreeMap<Vec<usize>, BigRational>,
) {
    if pos == levels.len() {
        let c = p.eval_rat(&[]);
        debug_assert!(p.level() == 0);
        if !c.is_zero() {
            let e = out.entry(exps.clone()).or_insert_with(BigRational::zero);
            *e += c;
        }
        return;
    }
    let level = levels[pos];
    for e in 0..=p.degree_in(level) {
        let c = p.coeff_of(level, e);
        if c.is_zero() {
            continue;
        }
        exps[pos] = e;
        flatten_into(&c, levels, exps, pos + 1, out);
    }
    exps[pos] = 0;
}

fn flatten(p: &MPoly, levels: &[u8]) -> BTreeMap<Vec<usize>, BigRational> {
    let mut out = BTreeMap::new();
    if p.is_zero() {
        return out;
    }
    // Flatten from the innermost display variable outwards so keys compare
    // in display order.
    let mut exps = vec![0usize; levels.len()];
    flatten_into(p, levels, &mut exps, 0, &mut out);
    out
}

fn poly_string(terms: &BTreeMap<Vec<usize>, BigInt>, names: &[String]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (exps, coef)) in terms.iter().enumerate() {
        let neg = coef.is_negative();
        let mag = coef.magnitude();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut parts: Vec<String> = Vec::new();
        if !mag.is_one() || exps.iter().all(|e| *e == 0) {
            parts.push(mag.to_string());
        }
        for (name, e) in names.iter().zip(exps.iter()) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        out.push_str(&parts.join("*"));
    }
    out
}

/// Canonical text serialization of a scalar under the given tower.
pub fn scalar_to_string(a: &Scalar, params: &Params) -> String {
    let vars = display_vars(params);
    let levels: Vec<u8> = vars.iter().map(|(l, _)| *l).collect();
    let names: Vec<String> = vars.iter().map(|(_, n)| n.clone()).collect();
    let num = flatten(a.num(), &levels);
    let den = flatten(a.den(), &levels);

    // Scale both polynomials by one positive rational so all coefficients
    // are integers with overall content 1.
    let mut lcm = BigInt::one();
    for c in num.values().chain(den.values()) {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let mut gcd = BigInt::zero();
    for c in num.values().chain(den.values()) {
        let scaled = c.numer() * (&lcm / c.denom());
        gcd = num_integer::gcd(gcd, scaled);
    }
    if gcd.is_zero() {
        gcd = BigInt::one();
    }
    let to_int = |m: &BTreeMap<Vec<usize>, BigRational>| -> BTreeMap<Vec<usize>, BigInt> {
        m.iter()
            .map(|(k, c)| (k.clone(), c.numer() * (&lcm / c.denom()) / &gcd))
            .collect()
    };
    let num_i = to_int(&num);
    let den_i = to_int(&den);
    let num_s = poly_string(&num_i, &names);
    let den_s = poly_string(&den_i, &names);
    if den_s == "1" {
        num_s
    } else {
        format!("({num_s})/({den_s})")
    }
}

struct Lexer<'a> {
    input: &'a [u8],
    pos: usize,
}

#[derive(Debug, PartialEq, Clone)]
enum Tok {
    Int(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer {
            input: input.as_bytes(),
            pos: 0,
        }
    }

    fn next_tok(&mut self) -> Result<Tok> {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.input.len() {
            return Ok(Tok::End);
        }
        let c = self.input[self.pos];
        self.pos += 1;
        Ok(match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let start = self.pos - 1;
                while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                Tok::Int(s.parse().map_err(|_| Error::Parse(s.to_string()))?)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos - 1;
                while self.pos < self.input.len()
                    && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Tok::Var(String::from_utf8(self.input[start..self.pos].to_vec()).unwrap())
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character '{}'",
                    other as char
                )))
            }
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    look: Tok,
    params: &'a Params,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, params: &'a Params) -> Result<Self> {
        let mut lexer = Lexer::new(input);
        let look = lexer.next_tok()?;
        Ok(Parser {
            lexer,
            look,
            params,
        })
    }

    fn advance(&mut self) -> Result<Tok> {
        let mut t = self.lexer.next_tok()?;
        std::mem::swap(&mut t, &mut self.look);
        Ok(t)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.look == t {
            self.advance()?;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {t:?}, found {:?}", self.look)))
        }
    }

    fn parse_sum(&mut self) -> Result<MPoly> {
        let mut negate = false;
        if self.look == Tok::Minus {
            negate = true;
            self.advance()?;
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.look {
                Tok::Plus => {
                    self.advance()?;
                    let t = self.parse_term()?;
                    acc = acc.add(&t);
                }
                Tok::Minus => {
                    self.advance()?;
                    let t = self.parse_term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<MPoly> {
        let mut acc = self.parse_factor()?;
        while self.look == Tok::Star {
            self.advance()?;
            let f = self.parse_factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<MPoly> {
        match self.advance()? {
            Tok::Int(n) => Ok(MPoly::from_rat(BigRational::from_integer(n))),
            Tok::Var(name) => {
                let level = self
                    .params
                    .level(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                let e = if self.look == Tok::Caret {
                    self.advance()?;
                    match self.advance()? {
                        Tok::Int(n) => n
                            .try_into()
                            .map_err(|_| Error::Parse("exponent too large".into()))?,
                        other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
                    }
                } else {
                    1u32
                };
                Ok(MPoly::var(level).pow(e))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse the canonical text form back into a scalar.
pub fn parse_scalar(input: &str, params: &Params) -> Result<Scalar> {
    let trimmed = input.trim();
    let mut p = Parser::new(trimmed, params)?;
    if p.look == Tok::LParen {
        p.advance()?;
        let num = p.parse_sum()?;
        p.expect(Tok::RParen)?;
        p.expect(Tok::Slash)?;
        p.expect(Tok::LParen)?;
        let den = p.parse_sum()?;
        p.expect(Tok::RParen)?;
        if p.look != Tok::End {
            return Err(Error::Parse("trailing input".into()));
        }
        Scalar::fraction(num, den)
    } else {
        let num = p.parse_sum()?;
        if p.look != Tok::End {
            return Err(Error::Parse("trailing input".into()));
        }
        Ok(Scalar::from_poly(num))
    }
}
