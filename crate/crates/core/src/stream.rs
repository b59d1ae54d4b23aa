//! Finite streams over `ω ∪ {pass}` and the mind-change codec.
//!
//! A finite stream stands for itself followed by infinitely many passes.
//! The mind-change code of `(Y, Z)` doubles every entry of `Y`, then marks the
//! switch with `2·Z(0)+1` and copies the rest of `Z` verbatim.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Pass,
    Nat(u64),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Pass => f.write_str("p"),
            Symbol::Nat(n) => write!(f, "{n}"),
        }
    }
}

pub type FinStream = Vec<Symbol>;

/// Parses `2,p,4,3,7`; the empty string is the empty stream.
pub fn parse_stream(text: &str) -> Result<FinStream> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut pos = 0;
    text.split(',')
        .map(|tok| {
            let at = pos;
            pos += tok.len() + 1;
            match tok.trim() {
                "p" => Ok(Symbol::Pass),
                t => u64::from_str(t)
                    .map(Symbol::Nat)
                    .map_err(|_| Error::parse(at, format!("bad stream token `{t}`"))),
            }
        })
        .collect()
}

pub fn format_stream(x: &[Symbol]) -> String {
    let parts: Vec<String> = x.iter().map(Symbol::to_string).collect();
    parts.join(",")
}

pub fn drop_passes(x: &[Symbol]) -> Vec<u64> {
    x.iter()
        .filter_map(|s| match s {
            Symbol::Nat(n) => Some(*n),
            Symbol::Pass => None,
        })
        .collect()
}

/// `Y → Z`: doubled `y`, then the marker `2·z(0)+1`, then `z(1..)` verbatim.
pub fn mc_encode(y: &[Symbol], z: &[Symbol]) -> Result<FinStream> {
    let mut out: FinStream = y
        .iter()
        .map(|s| match s {
            Symbol::Pass => Symbol::Pass,
            Symbol::Nat(n) => Symbol::Nat(2 * n),
        })
        .collect();
    if let Some((head, tail)) = z.split_first() {
        match head {
            Symbol::Nat(k) => out.push(Symbol::Nat(2 * k + 1)),
            Symbol::Pass => return Err(Error::BadHead),
        }
        out.extend_from_slice(tail);
    }
    Ok(out)
}

/// Splits a stream at its first odd entry into `(π₀, π₁)`.
pub fn mc_decode(x: &[Symbol]) -> (FinStream, FinStream) {
    let mut pi0 = Vec::new();
    for (i, s) in x.iter().enumerate() {
        match s {
            Symbol::Pass => pi0.push(Symbol::Pass),
            Symbol::Nat(n) if n % 2 == 0 => pi0.push(Symbol::Nat(n / 2)),
            Symbol::Nat(n) => {
                let mut pi1 = vec![Symbol::Nat(n / 2)];
                pi1.extend_from_slice(&x[i + 1..]);
                return (pi0, pi1);
            }
        }
    }
    (pi0, Vec::new())
}
