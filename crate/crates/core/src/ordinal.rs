//! Ordinal notations below ε₀ in Cantor normal form.
//!
//! An ordinal is `ω^e₁·c₁ + … + ω^eₖ·cₖ` with `e₁ > … > eₖ` and every
//! `cᵢ ≥ 1`; the empty sum is `0`. Only comparison is provided.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    // (exponent, coefficient), exponents strictly decreasing
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::nat(1))
    }

    /// `ω^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal {
            terms: vec![(e, 1)],
        }
    }

    /// Builds a notation from `(exponent, coefficient)` pairs, checking normal form.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self> {
        for (i, (e, c)) in terms.iter().enumerate() {
            if *c == 0 {
                return Err(Error::NotNormalForm(format!("zero coefficient on ω^{e}")));
            }
            if i > 0 && terms[i - 1].0 <= *e {
                return Err(Error::NotNormalForm(format!(
                    "exponent {} does not exceed {}",
                    terms[i - 1].0,
                    e
                )));
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this ordinal is finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Nesting depth of exponents; `0` for naturals.
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .filter(|(e, _)| !e.is_zero())
            .map(|(e, _)| 1 + e.height())
            .max()
            .unwrap_or(0)
    }

    /// Printed form without spaces, as used inside term files.
    pub fn compact(&self) -> String {
        self.render("+")
    }

    fn render(&self, sep: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                if e.is_zero() {
                    return c.to_string();
                }
                let base = match e.as_nat() {
                    Some(1) => "w".to_string(),
                    Some(n) => format!("w^{n}"),
                    None if *e == Ordinal::omega() => "w^w".to_string(),
                    None => format!("w^({})", e.render(sep)),
                };
                if *c == 1 {
                    base
                } else {
                    format!("{base}*{c}")
                }
            })
            .collect();
        parts.join(sep)
    }
}

/// Lexicographic comparison of leading `(exponent, coefficient)` pairs.
pub fn ord_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    for ((ea, ca), (eb, cb)) in a.terms.iter().zip(&b.terms) {
        match ord_cmp(ea, eb).then(ca.cmp(cb)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        ord_cmp(self, other)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(" + "))
    }
}

impl std::str::FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ordinal(s)
    }
}

/// Parses `0`, naturals, `w`, `w^A`, `w^A*k`, `w*k` and `+`-sums thereof.
/// Compound exponents need parentheses: `w^(w+1)`.
pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    let mut p = OrdParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let o = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "trailing input after ordinal"));
    }
    Ok(o)
}

pub fn print_ordinal(o: &Ordinal) -> String {
    o.to_string()
}

struct OrdParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl OrdParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::parse(start, "natural number too large"))
    }

    fn sum(&mut self) -> Result<Ordinal> {
        let mut terms = Vec::new();
        loop {
            let start = self.pos;
            let (e, c) = self.term()?;
            if c == 0 {
                // a lone `0` is the zero ordinal; a zero summand is not normal
                if terms.is_empty() && e.is_zero() && self.peek() != Some(b'+') {
                    return Ok(Ordinal::zero());
                }
                return Err(Error::NotNormalForm(format!("zero summand at {start}")));
            }
            terms.push((e, c));
            if !self.eat(b'+') {
                break;
            }
        }
        Ordinal::from_terms(terms)
    }

    fn term(&mut self) -> Result<(Ordinal, u64)> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.eat(b'^') {
                    self.exponent()?
                } else {
                    Ordinal::nat(1)
                };
                let coeff = if self.eat(b'*') { self.nat()? } else { 1 };
                Ok((exp, coeff))
            }
            Some(c) if c.is_ascii_digit() => Ok((Ordinal::zero(), self.nat()?)),
            _ => Err(Error::parse(self.pos, "expected `w` or a natural number")),
        }
    }

    fn exponent(&mut self) -> Result<Ordinal> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                Ok(e)
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            _ => Err(Error::parse(self.pos, "expected exponent")),
        }
    }
}
