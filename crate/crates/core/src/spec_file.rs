//! Code specification files and the symbolic polynomial grammar.
//!
//! ```text
//! {"ring": {"p": 2, "a": 2, "m": 1},
//!  "f": {"form": "cyclic", "length": 4},
//!  "generators": ["(x-1)^3", "p*(x-1)", [1, 0, 3]]}
//! ```
//!
//! `f` is a coefficient list, a symbolic string, or a named form
//! (`cyclic`, `negacyclic`, `lambda-cyclic` with `lambda`).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ambient::AmbientRing;
use crate::code::PolycyclicCode;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::GaloisRing;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u64,
    pub a: u32,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AmbientSpec {
    Coeffs(Vec<Value>),
    Symbolic(String),
    Named {
        form: String,
        length: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<Value>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Coeffs(Vec<Value>),
    Symbolic(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeSpec {
    pub ring: RingSpec,
    pub f: AmbientSpec,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
}

impl CodeSpec {
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn ring(&self) -> Result<GaloisRing> {
        let r = &self.ring;
        GaloisRing::new(r.p, r.a, r.m, r.modulus.clone())
    }

    pub fn ambient(&self, ring: &GaloisRing) -> Result<AmbientRing> {
        match &self.f {
            AmbientSpec::Coeffs(c) => AmbientRing::new(ring, Poly::parse_json(ring, &Value::Array(c.clone()))?),
            AmbientSpec::Symbolic(s) => AmbientRing::new(ring, parse_poly(ring, s)?),
            AmbientSpec::Named { form, length, lambda } => {
                let lambda = match (form.as_str(), lambda) {
                    ("cyclic", _) => ring.one(),
                    ("negacyclic", _) => ring.from_int(-1),
                    ("lambda-cyclic" | "constacyclic", Some(v)) => ring.parse_json(v)?,
                    ("lambda-cyclic" | "constacyclic", None) => {
                        return Err(Error::Parse("lambda-cyclic ambient needs \"lambda\"".into()))
                    }
                    (other, _) => return Err(Error::Parse(format!("unknown ambient form {other:?}"))),
                };
                AmbientRing::constacyclic(ring, *length, &lambda)
            }
        }
    }

    pub fn generators(&self, ring: &GaloisRing) -> Result<Vec<Poly>> {
        self.generators
            .iter()
            .map(|g| match g {
                GeneratorSpec::Coeffs(c) => Poly::parse_json(ring, &Value::Array(c.clone())),
                GeneratorSpec::Symbolic(s) => parse_poly(ring, s),
            })
            .collect()
    }

    pub fn build(&self) -> Result<PolycyclicCode> {
        let ring = self.ring()?;
        let amb = self.ambient(&ring)?;
        let gens = self.generators(&ring)?;
        Ok(PolycyclicCode::new(&amb, &gens))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    X,
    P,
    Z,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        chars.next();
        let tok = match c {
            c if c.is_whitespace() => continue,
            '0'..='9' => {
                let mut n = c.to_digit(10).unwrap() as u64;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(d as u64))
                        .ok_or_else(|| Error::Parse("integer literal too large".into()))?;
                    chars.next();
                }
                Tok::Num(n)
            }
            'x' => Tok::X,
            'p' => Tok::P,
            'z' => Tok::Z,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
        };
        out.push(tok);
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a GaloisRing,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat(&Tok::Minus) {
            -&self.term()?
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.power()?;
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::X | Tok::P | Tok::Z | Tok::Open)) {
                // juxtaposition, e.g. `2x` or `(x+1)(x-1)`
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            match self.toks.get(self.pos) {
                Some(Tok::Num(e)) => {
                    let e = *e;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("exponent must be a non-negative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let r = self.ring;
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        Ok(match tok {
            Tok::Num(n) => Poly::constant(r, r.from_int((n % r.q()) as i64)),
            Tok::X => Poly::x(r),
            Tok::P => Poly::constant(r, r.from_int(r.p() as i64)),
            Tok::Z => Poly::constant(r, r.generator()),
            Tok::Minus => -&self.power()?,
            Tok::Open => {
                let e = self.expr()?;
                if !self.eat(&Tok::Close) {
                    return Err(Error::Parse("missing ')'".into()));
                }
                e
            }
            other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
        })
    }
}

/// Parses an expression in `x`, `p` (the prime), `z` (the ring generator)
/// and integers with `+ - * ^` and parentheses; juxtaposition multiplies.
pub fn parse_poly(ring: &GaloisRing, s: &str) -> Result<Poly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { ring, toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(out)
}
