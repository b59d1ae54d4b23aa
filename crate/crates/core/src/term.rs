//! Nested labeled forest terms.
//!
//! A single heterogeneous [`Term`] type covers every level: atoms are
//! elements of `Q`, `Jump(α, U)` is the label `⟨U⟩^{ω^α}`, `Cat(L, F)` is the
//! tree with root label `L` above the forest `F`, and `Sum` is a finite
//! disjoint union of trees.
//!
//! Concrete syntax:
//!
//! ```text
//! 0                        atom
//! (jump w+1 T)             jump label ⟨T⟩^{ω^(ω+1)}
//! <T>                      single-node tree labeled T, i.e. (cat (jump 0 T))
//! (cat L T1 ... Tk)        L → ⊔{T1..Tk}, k ≥ 0
//! (sum T1 ... Tk)          ⊔{T1..Tk}, k ≥ 1
//! A -> B -> C              right-associative single-child cat chain
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::ordinal::{parse_ordinal, Ordinal};
use crate::qspec::QuasiOrder;

/// A forest term. The derived `Ord` is the structural key used for sorting
/// siblings (constructor tag, then label, then children).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Atom(String),
    Jump(Ordinal, Box<Term>),
    Cat(Box<Term>, Vec<Term>),
    Sum(Vec<Term>),
}

impl Term {
    pub fn atom(q: impl Into<String>) -> Term {
        Term::Atom(q.into())
    }

    /// The single-node tree `Cat(q, [])`.
    pub fn leaf(q: impl Into<String>) -> Term {
        Term::Cat(Box::new(Term::atom(q)), Vec::new())
    }

    pub fn jump(alpha: Ordinal, body: Term) -> Term {
        Term::Jump(alpha, Box::new(body))
    }

    pub fn cat(label: Term, children: Vec<Term>) -> Term {
        Term::Cat(Box::new(label), children)
    }

    /// `⟨t⟩`, the single-node tree labeled by `t`.
    pub fn bracket(t: Term) -> Term {
        Term::cat(Term::jump(Ordinal::zero(), t), Vec::new())
    }

    pub fn is_sum(&self) -> bool {
        matches!(self, Term::Sum(_))
    }

    pub fn is_label(&self) -> bool {
        matches!(self, Term::Atom(_) | Term::Jump(..))
    }

    /// Root label and children of a tree. Atoms and bare jumps are their own
    /// label with no children. `None` for sums.
    pub fn tree_parts(&self) -> Option<(&Term, &[Term])> {
        match self {
            Term::Atom(_) | Term::Jump(..) => Some((self, &[])),
            Term::Cat(l, cs) => Some((l, cs)),
            Term::Sum(_) => None,
        }
    }

    /// Sum components, or the term itself as a one-element forest.
    pub fn components(&self) -> &[Term] {
        match self {
            Term::Sum(cs) => cs,
            other => std::slice::from_ref(other),
        }
    }

    /// Checks the structural invariants.
    pub fn validate(&self) -> Result<()> {
        match self {
            Term::Atom(q) => {
                if q.is_empty() {
                    return Err(Error::InvariantViolation("empty atom name".into()));
                }
            }
            Term::Jump(_, body) => {
                if body.is_sum() {
                    return Err(Error::InvariantViolation("jump applied to a sum".into()));
                }
                body.validate()?;
            }
            Term::Cat(label, children) => {
                if !label.is_label() {
                    return Err(Error::InvariantViolation(format!(
                        "cat label must be an atom or a jump, found {label}"
                    )));
                }
                label.validate()?;
                for c in children {
                    if c.is_sum() {
                        return Err(Error::InvariantViolation(
                            "cat child must be a tree, found a sum".into(),
                        ));
                    }
                    c.validate()?;
                }
            }
            Term::Sum(cs) => {
                if cs.is_empty() {
                    return Err(Error::InvariantViolation("empty sum".into()));
                }
                for c in cs {
                    if c.is_sum() {
                        return Err(Error::InvariantViolation("sum nested inside sum".into()));
                    }
                    c.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Visits every atom name, including those inside jump labels.
    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a str)) {
        match self {
            Term::Atom(q) => f(q),
            Term::Jump(_, body) => body.for_each_atom(f),
            Term::Cat(l, cs) => {
                l.for_each_atom(f);
                cs.iter().for_each(|c| c.for_each_atom(f));
            }
            Term::Sum(cs) => cs.iter().for_each(|c| c.for_each_atom(f)),
        }
    }

    /// Fails with `UnknownElement` on the first atom not in `q`.
    pub fn check_atoms(&self, q: &QuasiOrder) -> Result<()> {
        let mut bad = None;
        self.for_each_atom(&mut |a| {
            if bad.is_none() && !q.contains(a) {
                bad = Some(a.to_string());
            }
        });
        match bad {
            Some(a) => Err(Error::UnknownElement(a)),
            None => Ok(()),
        }
    }

    /// Renames every atom.
    pub fn relabel(&self, f: &impl Fn(&str) -> String) -> Term {
        match self {
            Term::Atom(q) => Term::Atom(f(q)),
            Term::Jump(a, body) => Term::jump(a.clone(), body.relabel(f)),
            Term::Cat(l, cs) => Term::cat(l.relabel(f), cs.iter().map(|c| c.relabel(f)).collect()),
            Term::Sum(cs) => Term::Sum(cs.iter().map(|c| c.relabel(f)).collect()),
        }
    }

    /// Node count: atoms and cat nodes, including those inside jump labels.
    pub fn nodes(&self) -> usize {
        match self {
            Term::Atom(_) => 1,
            Term::Jump(_, body) => body.nodes(),
            Term::Cat(l, cs) => {
                let label = match &**l {
                    Term::Atom(_) => 0,
                    other => other.nodes(),
                };
                1 + label + cs.iter().map(Term::nodes).sum::<usize>()
            }
            Term::Sum(cs) => cs.iter().map(Term::nodes).sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub nodes: usize,
    pub height: usize,
    pub jump_free: bool,
    /// `ω^α` for the largest jump exponent `α`; zero without jumps.
    pub max_jump_height: Ordinal,
}

pub fn stats(t: &Term) -> Stats {
    fn height(t: &Term) -> usize {
        match t {
            Term::Atom(_) | Term::Jump(..) => 1,
            Term::Cat(_, cs) => 1 + cs.iter().map(height).max().unwrap_or(0),
            Term::Sum(cs) => cs.iter().map(height).max().unwrap_or(0),
        }
    }
    fn jumps<'a>(t: &'a Term, out: &mut Vec<(&'a Ordinal, &'a Term)>) {
        match t {
            Term::Atom(_) => {}
            Term::Jump(a, body) => {
                out.push((a, body));
                jumps(body, out);
            }
            Term::Cat(l, cs) => {
                jumps(l, out);
                cs.iter().for_each(|c| jumps(c, out));
            }
            Term::Sum(cs) => cs.iter().for_each(|c| jumps(c, out)),
        }
    }
    let mut js = Vec::new();
    jumps(t, &mut js);
    let jump_free = js
        .iter()
        .all(|(a, body)| a.is_zero() && matches!(body, Term::Atom(_)));
    let max_jump_height = js
        .iter()
        .map(|(a, _)| *a)
        .max()
        .map(|a| Ordinal::omega_pow(a.clone()))
        .unwrap_or_default();
    Stats {
        nodes: t.nodes(),
        height: height(t),
        jump_free,
        max_jump_height,
    }
}

/// Replaces every atom `q` by `⟨q⟩^levels`; an atom in label position becomes
/// the label of that single-node tree.
pub fn iota(t: &Term, levels: usize) -> Term {
    fn wrap(q: &str, k: usize) -> Term {
        (0..k).fold(Term::atom(q), |acc, _| Term::bracket(acc))
    }
    match t {
        Term::Atom(q) => wrap(q, levels),
        Term::Jump(a, body) => Term::jump(a.clone(), iota(body, levels)),
        Term::Cat(l, cs) => {
            let label = match &**l {
                Term::Atom(q) if levels > 0 => Term::jump(Ordinal::zero(), wrap(q, levels - 1)),
                other => iota(other, levels),
            };
            Term::cat(label, cs.iter().map(|c| iota(c, levels)).collect())
        }
        Term::Sum(cs) => Term::Sum(cs.iter().map(|c| iota(c, levels)).collect()),
    }
}

/// The alternating chain `first -> other -> first -> …` of length `n` over
/// the two-element antichain `{0, 1}`.
pub fn chain(n: usize, first: &str) -> Result<Term> {
    let other = match first {
        "0" => "1",
        "1" => "0",
        _ => return Err(Error::UnknownElement(first.to_string())),
    };
    if n == 0 {
        return Err(Error::BadLength(n));
    }
    if n == 1 {
        return Ok(Term::atom(first));
    }
    let label = |i: usize| if i.is_multiple_of(2) { first } else { other };
    let mut t = Term::leaf(label(n - 1));
    for i in (0..n - 1).rev() {
        t = Term::cat(Term::atom(label(i)), vec![t]);
    }
    Ok(t)
}

/// Swaps atoms `0` and `1`, leaving other names alone.
pub fn swap01(t: &Term) -> Term {
    t.relabel(&|q| match q {
        "0" => "1".to_string(),
        "1" => "0".to_string(),
        other => other.to_string(),
    })
}

// ---------------------------------------------------------------------------
// printing

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

pub fn print_term(t: &Term) -> String {
    match t {
        Term::Atom(q) => q.clone(),
        Term::Jump(a, body) => format!("(jump {} {})", a.compact(), operand(body)),
        Term::Sum(cs) => {
            let parts: Vec<String> = cs.iter().map(operand).collect();
            format!("(sum {})", parts.join(" "))
        }
        Term::Cat(l, cs) => match cs.as_slice() {
            [] => match &**l {
                Term::Jump(a, body) if a.is_zero() => format!("<{}>", print_term(body)),
                other => format!("(cat {})", print_label(other)),
            },
            [c @ Term::Cat(..)] => format!("{} -> {}", print_label(l), arrow_child(c)),
            _ => {
                let parts: Vec<String> = cs.iter().map(operand).collect();
                format!("(cat {} {})", print_label(l), parts.join(" "))
            }
        },
    }
}

fn print_label(l: &Term) -> String {
    match l {
        Term::Jump(a, body) if a.is_zero() => format!("<{}>", print_term(body)),
        other => print_term(other),
    }
}

fn arrow_child(c: &Term) -> String {
    match c {
        Term::Cat(l, cs) if cs.is_empty() && matches!(&**l, Term::Atom(_)) => print_term(l),
        other => print_term(other),
    }
}

fn is_arrow(t: &Term) -> bool {
    matches!(t, Term::Cat(_, cs) if matches!(cs.as_slice(), [Term::Cat(..)]))
}

fn operand(t: &Term) -> String {
    if is_arrow(t) {
        format!("({})", print_term(t))
    } else {
        print_term(t)
    }
}

// ---------------------------------------------------------------------------
// parsing

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = TermParser { src: text, pos: 0 };
    let t = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(Error::parse(p.pos, "trailing input after term"));
    }
    t.validate()?;
    Ok(t)
}

impl std::str::FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

struct TermParser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_delim(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '<' | '>')
}

impl TermParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{tok}`")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        for (i, c) in self.rest().char_indices() {
            if is_delim(c) || self.rest()[i..].starts_with("->") {
                break;
            }
            end = start + i + c.len_utf8();
        }
        if end == start {
            return Err(Error::parse(start, "expected an identifier"));
        }
        self.pos = end;
        Ok(self.src[start..end].to_string())
    }

    /// An ordinal token inside `(jump …)`: no whitespace, balanced parens.
    fn ordinal(&mut self) -> Result<Ordinal> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0usize;
        let mut end = start;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => break,
                ')' => depth -= 1,
                c if c.is_whitespace() || c == '<' || c == '>' => break,
                _ => {}
            }
            end = start + i + c.len_utf8();
        }
        if end == start {
            return Err(Error::parse(start, "expected an ordinal"));
        }
        self.pos = end;
        parse_ordinal(&self.src[start..end]).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::parse(start + pos, msg),
            other => other,
        })
    }

    fn expr(&mut self) -> Result<Term> {
        let lhs = self.primary()?;
        if !self.eat("->") {
            return Ok(lhs);
        }
        let rhs = self.expr()?;
        let label = as_label(lhs)?;
        let children = match rhs {
            Term::Sum(cs) => cs,
            t @ (Term::Atom(_) | Term::Jump(..)) => vec![Term::cat(t, Vec::new())],
            t => vec![t],
        };
        Ok(Term::cat(label, children))
    }

    fn primary(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.eat("<") {
            let body = self.expr()?;
            self.expect(">")?;
            if body.is_sum() {
                return Err(Error::InvariantViolation("jump applied to a sum".into()));
            }
            return Ok(Term::bracket(body));
        }
        if self.eat("(") {
            let t = if self.keyword("jump") {
                let alpha = self.ordinal()?;
                let body = self.expr()?;
                if body.is_sum() {
                    return Err(Error::InvariantViolation("jump applied to a sum".into()));
                }
                Term::jump(alpha, body)
            } else if self.keyword("cat") {
                let label = as_label(self.expr()?)?;
                let children = self.list()?;
                Term::cat(label, children)
            } else if self.keyword("sum") {
                let cs = self.list()?;
                if cs.is_empty() {
                    return Err(Error::parse(self.pos, "sum needs at least one component"));
                }
                Term::Sum(cs)
            } else {
                self.expr()?
            };
            self.expect(")")?;
            return Ok(t);
        }
        if self.rest().is_empty() {
            return Err(Error::parse(self.pos, "unexpected end of input"));
        }
        Ok(Term::Atom(self.ident()?))
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let r = self.rest();
        if r.starts_with(kw) && r[kw.len()..].chars().next().is_none_or(is_delim) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn list(&mut self) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            if self.rest().starts_with(')') || self.rest().is_empty() {
                return Ok(out);
            }
            out.push(self.expr()?);
        }
    }
}

/// Accepts an atom, a jump, or a bare single-node tree `Cat(L, [])` as a label.
fn as_label(t: Term) -> Result<Term> {
    match t {
        Term::Atom(_) | Term::Jump(..) => Ok(t),
        Term::Cat(l, cs) if cs.is_empty() => Ok(*l),
        other => Err(Error::InvariantViolation(format!(
            "`{other}` cannot be used as a root label"
        ))),
    }
}
