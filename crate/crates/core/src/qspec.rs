//! Finite quasi-orders `(Q, ≤_Q)` used as label sets.
//!
//! Every finite quasi-order is a better-quasi-order, so anything loaded here
//! is a legal label set for the forest order. Relations are stored as a dense
//! boolean matrix and closed under reflexivity and transitivity on
//! construction.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiOrder {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    // le[a * n + b] <=> a <= b
    le: Vec<bool>,
}

impl QuasiOrder {
    /// Builds the reflexive-transitive closure of `pairs` over `elements`.
    pub fn from_pairs<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let mut index = HashMap::new();
        let mut names = Vec::with_capacity(elements.len());
        for e in elements {
            let e = e.as_ref();
            if e.is_empty() {
                return Err(Error::parse(0, "empty element name"));
            }
            if index.insert(e.to_string(), names.len()).is_some() {
                return Err(Error::parse(0, format!("duplicate element `{e}`")));
            }
            names.push(e.to_string());
        }
        let n = names.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (a, b) in pairs {
            let a = lookup(&index, a.as_ref())?;
            let b = lookup(&index, b.as_ref())?;
            le[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if !le[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
        Ok(QuasiOrder {
            elements: names,
            index,
            le,
        })
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        lookup(&self.index, name)
    }

    pub fn le_idx(&self, a: usize, b: usize) -> bool {
        self.le[a * self.len() + b]
    }

    /// `a ≤_Q b`, by element name.
    pub fn q_le(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.le_idx(self.index_of(a)?, self.index_of(b)?))
    }
}

fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| Error::UnknownElement(name.to_string()))
}

/// Parses the line-oriented Q-file format.
///
/// ```text
/// # the partial-function order {⊥, 0, 1}
/// ELEMS: bot 0 1
/// LE: bot 0
/// LE: bot 1
/// ```
pub fn load_quasi_order(text: &str) -> Result<QuasiOrder> {
    let mut elements: Option<Vec<&str>> = None;
    let mut pairs = Vec::new();
    let mut offset = 0;
    for raw in text.lines() {
        let pos = offset;
        offset += raw.len() + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ELEMS:") {
            if elements.is_some() {
                return Err(Error::parse(pos, "ELEMS declared twice"));
            }
            elements = Some(rest.split_whitespace().collect());
        } else if let Some(rest) = line.strip_prefix("LE:") {
            if elements.is_none() {
                return Err(Error::parse(pos, "LE before ELEMS"));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::parse(pos, "LE expects exactly two elements"));
            }
            pairs.push((parts[0], parts[1]));
        } else {
            return Err(Error::parse(pos, format!("unrecognised line `{line}`")));
        }
    }
    let elements = elements.ok_or_else(|| Error::parse(0, "missing ELEMS line"))?;
    if elements.is_empty() {
        return Err(Error::parse(0, "ELEMS declares no elements"));
    }
    QuasiOrder::from_pairs(&elements, &pairs)
}

/// Named quasi-orders: `antichain:k`, `chain:k`, `flat3`, `diamond`.
///
/// `antichain:k` and `chain:k` use elements `"0"..="k-1"` (the chain ordered
/// numerically). `flat3` is `{bot, 0, 1}` with `bot` below both; `diamond` is
/// `{bot, 0, 1, top}`.
pub fn builtin(name: &str) -> Result<QuasiOrder> {
    let unknown = || Error::UnknownBuiltin(name.to_string());
    let numbered = |k: &str| -> Result<Vec<String>> {
        let k: usize = k.parse().map_err(|_| unknown())?;
        if k == 0 {
            return Err(unknown());
        }
        Ok((0..k).map(|i| i.to_string()).collect())
    };
    if let Some(k) = name.strip_prefix("antichain:") {
        let elems = numbered(k)?;
        return QuasiOrder::from_pairs(&elems, &[]);
    }
    if let Some(k) = name.strip_prefix("chain:") {
        let elems = numbered(k)?;
        let pairs: Vec<(String, String)> = elems
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        return QuasiOrder::from_pairs(&elems, &pairs);
    }
    match name {
        "flat3" => QuasiOrder::from_pairs(&["bot", "0", "1"], &[("bot", "0"), ("bot", "1")]),
        "diamond" => QuasiOrder::from_pairs(
            &["bot", "0", "1", "top"],
            &[("bot", "0"), ("bot", "1"), ("0", "top"), ("1", "top")],
        ),
        _ => Err(unknown()),
    }
}

/// Prints the closed relation in Q-file format (every non-reflexive pair).
impl fmt::Display for QuasiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ELEMS: {}", self.elements.join(" "))?;
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.le_idx(a, b) {
                    writeln!(f, "LE: {} {}", self.elements[a], self.elements[b])?;
                }
            }
        }
        Ok(())
    }
}
