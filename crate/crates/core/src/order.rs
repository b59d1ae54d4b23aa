//! The quasi-order `⊴` on forest terms, with equivalence, canonical
//! representatives and self-duality detection.
//!
//! `leq` follows the inductive definition directly:
//!
//! * a sum on the left is a supremum: every component must lie below;
//! * a sum on the right is reached through some component;
//! * for trees `L_S → S_•` and `L_T → T_•`: if `L_S ⊴ L_T` every child `S_i`
//!   must lie below the whole of `T`, otherwise `S` must lie below some child
//!   `T_j` of `T`.
//!
//! Labels are atoms (compared in `Q`) or jumps `⟨U⟩^{ω^α}`; two jumps are
//! compared by stripping the smaller-height side (see [`label_step`]).

use std::cmp::Ordering;
use std::fmt;

use crate::error::Result;
use crate::qspec::QuasiOrder;
use crate::term::Term;

/// What a label comparison reduces to. Shared by `leq` and the oracles so
/// that every decider uses the same label rules but its own search.
#[derive(Debug, Clone, Copy)]
pub enum LabelStep<'a> {
    /// Compare two elements of `Q`.
    Atoms(&'a str, &'a str),
    /// Compare two terms with the full order.
    Terms(&'a Term, &'a Term),
}

/// Reduces `s ⊴ t` for two labels (atoms or jumps).
///
/// * `⟨U⟩^{ω^α}` vs `⟨V⟩^{ω^β}`: `U ⊴ V` if `α = β`; `⟨U⟩^{ω^α} ⊴ V` if
///   `α > β`; `U ⊴ ⟨V⟩^{ω^β}` if `α < β`. A jump on the compared side is read
///   as the bare single-node tree it labels.
/// * `⟨U⟩^{ω^α}` vs atom `q`: `U ⊴ q`; atom `p` vs `⟨V⟩^{ω^β}`: `p ⊴ V`.
///
/// # Panics
/// If either argument is not a label.
pub fn label_step<'a>(s: &'a Term, t: &'a Term) -> LabelStep<'a> {
    match (s, t) {
        (Term::Atom(p), Term::Atom(q)) => LabelStep::Atoms(p, q),
        (Term::Jump(a, u), Term::Jump(b, v)) => match a.cmp(b) {
            Ordering::Equal => LabelStep::Terms(u, v),
            Ordering::Greater => LabelStep::Terms(s, v),
            Ordering::Less => LabelStep::Terms(u, t),
        },
        (Term::Jump(_, u), Term::Atom(_)) => LabelStep::Terms(u, t),
        (Term::Atom(_), Term::Jump(_, v)) => LabelStep::Terms(s, v),
        _ => panic!("label_step on non-label terms {s} / {t}"),
    }
}

/// `s ⊴ t`. Fails with `UnknownElement` if an atom is not in `q`.
pub fn leq(q: &QuasiOrder, s: &Term, t: &Term) -> Result<bool> {
    s.check_atoms(q)?;
    t.check_atoms(q)?;
    Ok(leq_unchecked(q, s, t))
}

/// `leq` without the atom check; unknown atoms compare as incomparable.
pub fn leq_unchecked(q: &QuasiOrder, s: &Term, t: &Term) -> bool {
    match (s, t) {
        (Term::Sum(ss), _) => ss.iter().all(|x| leq_unchecked(q, x, t)),
        (_, Term::Sum(ts)) => ts.iter().any(|y| leq_unchecked(q, s, y)),
        _ => {
            let (ls, ss) = s.tree_parts().expect("tree");
            let (lt, ts) = t.tree_parts().expect("tree");
            if label_leq_unchecked(q, ls, lt) {
                ss.iter().all(|c| leq_unchecked(q, c, t))
            } else {
                ts.iter().any(|d| leq_unchecked(q, s, d))
            }
        }
    }
}

pub fn label_leq_unchecked(q: &QuasiOrder, s: &Term, t: &Term) -> bool {
    match label_step(s, t) {
        LabelStep::Atoms(a, b) => q.q_le(a, b).unwrap_or(false),
        LabelStep::Terms(u, v) => leq_unchecked(q, u, v),
    }
}

pub fn equiv(q: &QuasiOrder, s: &Term, t: &Term) -> Result<bool> {
    Ok(leq(q, s, t)? && leq_unchecked(q, t, s))
}

/// Outcome of comparing two terms both ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Less,
    Greater,
    Equivalent,
    Incomparable,
}

impl Relation {
    pub fn from_flags(le: bool, ge: bool) -> Relation {
        match (le, ge) {
            (true, true) => Relation::Equivalent,
            (true, false) => Relation::Less,
            (false, true) => Relation::Greater,
            (false, false) => Relation::Incomparable,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::Greater => ">",
            Relation::Equivalent => "=",
            Relation::Incomparable => "||",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

pub fn compare(q: &QuasiOrder, s: &Term, t: &Term) -> Result<Relation> {
    let le = leq(q, s, t)?;
    Ok(Relation::from_flags(le, leq_unchecked(q, t, s)))
}

/// A canonical representative `T' ≡ T`: dominated siblings removed,
/// one-component sums collapsed, siblings sorted structurally.
pub fn canon(q: &QuasiOrder, t: &Term) -> Result<Term> {
    t.check_atoms(q)?;
    Ok(canon_unchecked(q, t))
}

pub fn canon_unchecked(q: &QuasiOrder, t: &Term) -> Term {
    match t {
        Term::Atom(_) => t.clone(),
        Term::Jump(a, body) => Term::jump(a.clone(), canon_unchecked(q, body)),
        Term::Cat(l, cs) => Term::cat(
            canon_unchecked(q, l),
            prune(q, cs.iter().map(|c| canon_unchecked(q, c)).collect()),
        ),
        Term::Sum(cs) => {
            let mut kept = prune(q, cs.iter().map(|c| canon_unchecked(q, c)).collect());
            if kept.len() == 1 {
                kept.pop().unwrap()
            } else {
                Term::Sum(kept)
            }
        }
    }
}

/// Keeps the ⊴-maximal members, one per equivalence class (the one with the
/// least `(nodes, structure)` key), sorted structurally.
fn prune(q: &QuasiOrder, items: Vec<Term>) -> Vec<Term> {
    let n = items.len();
    if n <= 1 {
        return items;
    }
    let le: Vec<Vec<bool>> = items
        .iter()
        .map(|a| items.iter().map(|b| leq_unchecked(q, a, b)).collect())
        .collect();
    let key = |i: usize| (items[i].nodes(), &items[i], i);
    let dominated = |i: usize| (0..n).any(|j| j != i && le[i][j] && (!le[j][i] || key(j) < key(i)));
    let keep: Vec<bool> = (0..n).map(|i| !dominated(i)).collect();
    let mut kept: Vec<Term> = items
        .into_iter()
        .zip(keep)
        .filter_map(|(t, k)| k.then_some(t))
        .collect();
    kept.sort();
    kept
}

/// True iff the degree named by `t` is σ-join-irreducible (equivalently
/// non-self-dual): `t` is a tree, or a sum lying below one of its components.
pub fn is_join_irreducible(q: &QuasiOrder, t: &Term) -> Result<bool> {
    t.check_atoms(q)?;
    Ok(is_join_irreducible_unchecked(q, t))
}

pub fn is_join_irreducible_unchecked(q: &QuasiOrder, t: &Term) -> bool {
    match t {
        Term::Sum(cs) => cs.iter().any(|c| leq_unchecked(q, t, c)),
        _ => true,
    }
}

pub fn is_non_self_dual(q: &QuasiOrder, t: &Term) -> Result<bool> {
    is_join_irreducible(q, t)
}
