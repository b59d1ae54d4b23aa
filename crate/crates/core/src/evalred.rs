//! Evaluation of the complete mind-change functions `Ω_T` for jump-free
//! terms, and synthesis of the continuous reductions `Ω_S ≤_w Ω_T`.
//!
//! A tree `q → T_0 ⊔ … ⊔ T_k` reads its input in *root mode*: passes and
//! even numbers keep the current value `q`, and the first odd number `2k+1`
//! hands the rest of the stream to child `k`. A sum reads a selector `i`
//! (after any leading passes) and hands the rest to component `i`.
//!
//! Labels that are jumps over a constant (such as `<1>`) denote constant
//! functions and are evaluated as such; any other jump label is rejected.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{label_leq_unchecked, leq_unchecked};
use crate::qspec::QuasiOrder;
use crate::stream::{FinStream, Symbol};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Determined(String),
    Undetermined,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Determined(q) => f.write_str(q),
            Value::Undetermined => f.write_str("undetermined"),
        }
    }
}

/// The constant value of a label, if it has one.
fn label_value(label: &Term) -> Option<&str> {
    match label {
        Term::Atom(q) => Some(q),
        Term::Jump(_, body) => constant_value(body),
        _ => None,
    }
}

/// The value of a tree that has no children, looking through jumps.
fn constant_value(t: &Term) -> Option<&str> {
    match t {
        Term::Atom(_) | Term::Jump(..) => label_value(t),
        Term::Cat(l, cs) if cs.is_empty() => label_value(l),
        _ => None,
    }
}

/// Fails unless every root label in `t` has a constant value.
pub fn check_evaluable(t: &Term) -> Result<()> {
    match t {
        Term::Sum(cs) => cs.iter().try_for_each(check_evaluable),
        _ => {
            let (label, children) = t.tree_parts().expect("tree");
            if label_value(label).is_none() {
                return Err(Error::JumpTermNotEvaluable(label.to_string()));
            }
            children.iter().try_for_each(check_evaluable)
        }
    }
}

/// `Ω_T(x)` where `x` is read as `x` followed by passes.
pub fn eval_omega(q: &QuasiOrder, t: &Term, x: &[Symbol]) -> Result<Value> {
    t.check_atoms(q)?;
    check_evaluable(t)?;
    eval_unchecked(t, x)
}

fn eval_unchecked(t: &Term, x: &[Symbol]) -> Result<Value> {
    match t {
        Term::Sum(cs) => {
            let Some(i) = x.iter().position(|s| *s != Symbol::Pass) else {
                return Ok(Value::Undetermined);
            };
            let Symbol::Nat(sel) = x[i] else {
                unreachable!()
            };
            let comp = select(cs, sel)?;
            eval_unchecked(comp, &x[i + 1..])
        }
        _ => {
            let (label, children) = t.tree_parts().expect("tree");
            let root = label_value(label).expect("checked evaluable");
            if children.is_empty() {
                return Ok(Value::Determined(root.to_string()));
            }
            for (i, s) in x.iter().enumerate() {
                if let Symbol::Nat(n) = s {
                    if n % 2 == 1 {
                        return eval_unchecked(select(children, n / 2)?, &x[i + 1..]);
                    }
                }
            }
            Ok(Value::Determined(root.to_string()))
        }
    }
}

fn select<T>(items: &[T], index: u64) -> Result<&T> {
    usize::try_from(index)
        .ok()
        .and_then(|i| items.get(i))
        .ok_or(Error::InvalidSelector {
            index,
            len: items.len(),
        })
}

/// A continuous, pass-monotone stream transformer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Plan {
    /// Emit a pass for every input symbol.
    ConstRoot,
    /// Emit passes while the input stays at its root; on marker `2k+1`
    /// continue with branch `k`.
    WaitRoot(Vec<Plan>),
    /// Emit the marker `2j+1` at once, then continue.
    EnterBranch(usize, Box<Plan>),
    /// Emit passes until the input's selector `i` arrives; continue with `i`.
    ReadSelector(Vec<Plan>),
    /// Emit the selector `j` at once, then continue.
    EmitSelector(usize, Box<Plan>),
}

impl Plan {
    fn write(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        let pad = " ".repeat(indent);
        match self {
            Plan::ConstRoot => writeln!(f, "{pad}const-root"),
            Plan::WaitRoot(branches) => {
                writeln!(f, "{pad}wait-root")?;
                for (k, b) in branches.iter().enumerate() {
                    writeln!(f, "{pad}  on marker {}:", 2 * k + 1)?;
                    b.write(f, indent + 4)?;
                }
                Ok(())
            }
            Plan::EnterBranch(j, next) => {
                writeln!(f, "{pad}enter-branch {j}")?;
                next.write(f, indent + 2)
            }
            Plan::ReadSelector(branches) => {
                writeln!(f, "{pad}read-selector")?;
                for (i, b) in branches.iter().enumerate() {
                    writeln!(f, "{pad}  on selector {i}:")?;
                    b.write(f, indent + 4)?;
                }
                Ok(())
            }
            Plan::EmitSelector(j, next) => {
                writeln!(f, "{pad}emit-selector {j}")?;
                next.write(f, indent + 2)
            }
        }
    }
}

/// Indented one-node-per-line rendering.
impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// Builds a plan witnessing `Ω_S ≤_w Ω_T`, choosing the smallest witness
/// index wherever the order offers a choice.
pub fn synth_reduction(q: &QuasiOrder, s: &Term, t: &Term) -> Result<Plan> {
    s.check_atoms(q)?;
    t.check_atoms(q)?;
    check_evaluable(s)?;
    check_evaluable(t)?;
    if !leq_unchecked(q, s, t) {
        return Err(Error::NotReducible);
    }
    Ok(synth_unchecked(q, s, t))
}

fn first_below(q: &QuasiOrder, s: &Term, ts: &[Term]) -> usize {
    ts.iter()
        .position(|t| leq_unchecked(q, s, t))
        .expect("leq guarantees a witness")
}

fn synth_unchecked(q: &QuasiOrder, s: &Term, t: &Term) -> Plan {
    match (s, t) {
        (Term::Sum(ss), _) => {
            Plan::ReadSelector(ss.iter().map(|c| synth_unchecked(q, c, t)).collect())
        }
        (_, Term::Sum(ts)) => {
            let j = first_below(q, s, ts);
            Plan::EmitSelector(j, Box::new(synth_unchecked(q, s, &ts[j])))
        }
        _ => {
            let (ls, ss) = s.tree_parts().expect("tree");
            let (lt, ts) = t.tree_parts().expect("tree");
            if label_leq_unchecked(q, ls, lt) {
                if ss.is_empty() {
                    Plan::ConstRoot
                } else {
                    Plan::WaitRoot(ss.iter().map(|c| synth_unchecked(q, c, t)).collect())
                }
            } else {
                let j = first_below(q, s, ts);
                Plan::EnterBranch(j, Box::new(synth_unchecked(q, s, &ts[j])))
            }
        }
    }
}

/// Runs `plan` on `x`. The output on `x` is always a prefix of the output on
/// any extension of `x`.
pub fn run_transducer(plan: &Plan, x: &[Symbol]) -> Result<FinStream> {
    let mut out = Vec::with_capacity(x.len() + 4);
    run_into(plan, x, &mut out)?;
    Ok(out)
}

fn run_into(plan: &Plan, x: &[Symbol], out: &mut FinStream) -> Result<()> {
    match plan {
        Plan::ConstRoot => {
            out.extend(std::iter::repeat_n(Symbol::Pass, x.len()));
            Ok(())
        }
        Plan::WaitRoot(branches) => {
            for (i, s) in x.iter().enumerate() {
                out.push(Symbol::Pass);
                if let Symbol::Nat(n) = s {
                    if n % 2 == 1 {
                        return run_into(select(branches, n / 2)?, &x[i + 1..], out);
                    }
                }
            }
            Ok(())
        }
        Plan::EnterBranch(j, next) => {
            out.push(Symbol::Nat(2 * *j as u64 + 1));
            run_into(next, x, out)
        }
        Plan::ReadSelector(branches) => {
            for (i, s) in x.iter().enumerate() {
                out.push(Symbol::Pass);
                if let Symbol::Nat(n) = s {
                    return run_into(select(branches, *n)?, &x[i + 1..], out);
                }
            }
            Ok(())
        }
        Plan::EmitSelector(j, next) => {
            out.push(Symbol::Nat(*j as u64));
            run_into(next, x, out)
        }
    }
}

/// Checks the reduction property on one input: if `Ω_S(x) = v` then
/// `Ω_T(plan(x)) = w` with `v ≤_Q w`. `Ok(None)` if `x` is not a valid input
/// for `S` (selector out of range).
pub fn soundness_holds(
    q: &QuasiOrder,
    s: &Term,
    t: &Term,
    plan: &Plan,
    x: &[Symbol],
) -> Result<Option<bool>> {
    let v = match eval_unchecked(s, x) {
        Ok(v) => v,
        Err(Error::InvalidSelector { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let Value::Determined(v) = v else {
        return Ok(Some(true));
    };
    let y = run_transducer(plan, x)?;
    Ok(Some(match eval_unchecked(t, &y)? {
        Value::Determined(w) => q.q_le(&v, &w)?,
        Value::Undetermined => false,
    }))
}

/// Symbols that exercise every branch of `t`: pass, one even data symbol,
/// each child marker, and each top-level selector.
pub fn input_alphabet(t: &Term) -> Vec<Symbol> {
    fn fanout(t: &Term) -> usize {
        match t {
            Term::Sum(cs) => cs.iter().map(fanout).max().unwrap_or(0),
            Term::Cat(_, cs) => cs.iter().map(fanout).max().unwrap_or(0).max(cs.len()),
            _ => 0,
        }
    }
    let mut out = vec![Symbol::Pass, Symbol::Nat(0)];
    out.extend((0..fanout(t) as u64).map(|k| Symbol::Nat(2 * k + 1)));
    if let Term::Sum(cs) = t {
        out.extend((0..cs.len() as u64).map(Symbol::Nat));
    }
    out.sort();
    out.dedup();
    out
}

/// All streams over `alphabet` of length at most `max_len`, shortest first.
pub fn streams_upto(alphabet: &[Symbol], max_len: usize) -> impl Iterator<Item = FinStream> + '_ {
    (0..=max_len).flat_map(move |len| {
        let total = alphabet.len().checked_pow(len as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut code| {
            let mut x = vec![Symbol::Pass; len];
            for slot in x.iter_mut().rev() {
                *slot = alphabet[code % alphabet.len()];
                code /= alphabet.len();
            }
            x
        })
    })
}
