//! Enumeration of small degrees, comparison tables, Hasse diagrams and
//! antichain reports.
//!
//! A degree is identified with its canonical representative term. Trees are
//! enumerated bottom-up by node count (children drawn from the already-known
//! smaller tree degrees); forests are then every antichain of two or more
//! tree degrees, so a node bound applies per tree, not to the whole sum.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::order::{canon_unchecked, is_join_irreducible_unchecked, leq_unchecked, Relation};
use crate::ordinal::Ordinal;
use crate::qspec::QuasiOrder;
use crate::term::Term;

#[derive(Debug, Clone)]
pub struct EnumConfig {
    pub max_nodes: usize,
    /// Jump heights `α` allowed in `(jump α U)` labels.
    pub jumps: Vec<Ordinal>,
    /// Cap on generated candidates (trees plus forests).
    pub max_candidates: usize,
    /// Optional bound on the total node count of a forest. Without it only
    /// each component is bounded by `max_nodes`.
    pub forest_nodes: Option<usize>,
}

impl EnumConfig {
    pub fn new(max_nodes: usize) -> Self {
        EnumConfig {
            max_nodes,
            jumps: Vec::new(),
            max_candidates: 2_000_000,
            forest_nodes: None,
        }
    }

    pub fn with_jumps(mut self, jumps: Vec<Ordinal>) -> Self {
        self.jumps = jumps;
        self
    }

    pub fn with_forest_nodes(mut self, total: usize) -> Self {
        self.forest_nodes = Some(total);
        self
    }
}

/// Single-node trees are written as atoms at the top level and inside jump
/// labels, and as `(cat q)` leaves below a root (matching the `a -> b` sugar).
fn top_form(t: &Term) -> Term {
    match t {
        Term::Cat(l, cs) if cs.is_empty() && matches!(&**l, Term::Atom(_)) => (**l).clone(),
        other => other.clone(),
    }
}

struct TreeClass {
    /// Child form.
    tree: Term,
    nodes: usize,
}

/// Every ≡-class of canonical terms whose trees have at most
/// `cfg.max_nodes` nodes, one representative each, sorted by
/// `(nodes, structure)`.
pub fn enum_terms(q: &QuasiOrder, cfg: &EnumConfig) -> Result<Vec<Term>> {
    if cfg.max_nodes == 0 {
        return Err(Error::BadLength(0));
    }
    let mut budget = cfg.max_candidates;
    let mut spend = |n: usize| -> Result<()> {
        budget = budget.checked_sub(n).ok_or_else(|| {
            Error::ResourceLimit(format!("more than {} candidates", cfg.max_candidates))
        })?;
        Ok(())
    };

    let mut classes: Vec<TreeClass> = Vec::new();
    // le[i][j] between classes
    let mut le: Vec<Vec<bool>> = Vec::new();

    for n in 1..=cfg.max_nodes {
        let mut labels: Vec<(Term, usize)> = q
            .elements()
            .iter()
            .map(|e| (Term::atom(e.clone()), 0))
            .collect();
        for alpha in &cfg.jumps {
            for c in classes.iter().filter(|c| c.nodes < n) {
                labels.push((Term::jump(alpha.clone(), top_form(&c.tree)), c.nodes));
            }
        }
        let known = classes.len();
        let mut fresh: Vec<Term> = Vec::new();
        for (label, cost) in labels {
            let rem = n - 1 - cost;
            let mut sets = Vec::new();
            antichains_with_weight(&classes[..known], &le, rem, &mut Vec::new(), 0, &mut sets);
            spend(sets.len())?;
            for set in sets {
                let children = set.iter().map(|&i| classes[i].tree.clone()).collect();
                fresh.push(canon_unchecked(q, &Term::cat(label.clone(), children)));
            }
        }
        fresh.sort();
        fresh.dedup();
        for cand in fresh {
            let row: Vec<bool> = classes
                .par_iter()
                .map(|c| leq_unchecked(q, &cand, &c.tree))
                .collect();
            let col: Vec<bool> = classes
                .par_iter()
                .map(|c| leq_unchecked(q, &c.tree, &cand))
                .collect();
            if row.iter().zip(&col).any(|(a, b)| *a && *b) {
                continue;
            }
            for (i, r) in le.iter_mut().enumerate() {
                r.push(col[i]);
            }
            let mut own = row;
            own.push(true);
            le.push(own);
            let nodes = cand.nodes();
            classes.push(TreeClass { tree: cand, nodes });
        }
    }

    let mut out: Vec<Term> = classes.iter().map(|c| top_form(&c.tree)).collect();
    let weights: Vec<usize> = classes.iter().map(|c| c.nodes).collect();
    let mut forests = Vec::new();
    let mut search = ForestSearch {
        weights: &weights,
        le: &le,
        room: cfg.forest_nodes.unwrap_or(usize::MAX),
        out: &mut forests,
    };
    search.run(&mut Vec::new(), 0, 0, &mut spend)?;
    for set in forests {
        let comps = set.iter().map(|&i| top_form(&classes[i].tree)).collect();
        out.push(canon_unchecked(q, &Term::Sum(comps)));
    }
    out.sort_by(|a, b| (a.nodes(), a).cmp(&(b.nodes(), b)));
    Ok(out)
}

fn incomparable(le: &[Vec<bool>], i: usize, j: usize) -> bool {
    !le[i][j] && !le[j][i]
}

/// Index sets of pairwise incomparable classes with total node count `rem`.
fn antichains_with_weight(
    classes: &[TreeClass],
    le: &[Vec<bool>],
    rem: usize,
    cur: &mut Vec<usize>,
    from: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if rem == 0 {
        out.push(cur.clone());
        return;
    }
    for i in from..classes.len() {
        if classes[i].nodes > rem || !cur.iter().all(|&j| incomparable(le, i, j)) {
            continue;
        }
        cur.push(i);
        antichains_with_weight(classes, le, rem - classes[i].nodes, cur, i + 1, out);
        cur.pop();
    }
}

/// Antichains of two or more classes whose weights sum to at most `room`.
struct ForestSearch<'a> {
    weights: &'a [usize],
    le: &'a [Vec<bool>],
    room: usize,
    out: &'a mut Vec<Vec<usize>>,
}

impl ForestSearch<'_> {
    fn run(
        &mut self,
        cur: &mut Vec<usize>,
        from: usize,
        used: usize,
        spend: &mut impl FnMut(usize) -> Result<()>,
    ) -> Result<()> {
        for i in from..self.weights.len() {
            let used = used.saturating_add(self.weights[i]);
            if used > self.room || !cur.iter().all(|&j| incomparable(self.le, i, j)) {
                continue;
            }
            cur.push(i);
            if cur.len() >= 2 {
                spend(1)?;
                self.out.push(cur.clone());
            }
            self.run(cur, i + 1, used, spend)?;
            cur.pop();
        }
        Ok(())
    }
}

/// `m[i][j] = terms[i] ⊴ terms[j]`, rows computed in parallel.
pub fn leq_matrix(q: &QuasiOrder, terms: &[Term]) -> Vec<Vec<bool>> {
    terms
        .par_iter()
        .map(|a| terms.iter().map(|b| leq_unchecked(q, a, b)).collect())
        .collect()
}

/// Covering pairs `(lower, upper)` of the strict order encoded in `le`.
pub fn covering_pairs(le: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = le.len();
    let lt = |a: usize, b: usize| le[a][b] && !le[b][a];
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz digraph of the covering relation, bottom to top. Self-dual
/// (join-reducible) degrees are drawn as boxes.
pub fn hasse(q: &QuasiOrder, terms: &[Term]) -> String {
    let le = leq_matrix(q, terms);
    let mut dot = String::from("digraph hasse {\n  rankdir=BT;\n");
    for (i, t) in terms.iter().enumerate() {
        let shape = if is_join_irreducible_unchecked(q, t) {
            "ellipse"
        } else {
            "box"
        };
        dot.push_str(&format!(
            "  n{i} [label=\"{}\", shape={shape}];\n",
            dot_escape(&t.to_string())
        ));
    }
    for (a, b) in covering_pairs(&le) {
        dot.push_str(&format!("  n{a} -> n{b};\n"));
    }
    dot.push_str("}\n");
    dot
}

/// One `S<TAB>T<TAB>rel` line per ordered pair.
pub fn comparison_tsv(q: &QuasiOrder, terms: &[Term]) -> String {
    let le = leq_matrix(q, terms);
    let mut out = String::new();
    for (i, s) in terms.iter().enumerate() {
        for (j, t) in terms.iter().enumerate() {
            let rel = Relation::from_flags(le[i][j], le[j][i]);
            out.push_str(&format!("{s}\t{t}\t{rel}\n"));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub max_antichain_among_irreducibles: usize,
    pub antichain_witness: Vec<Term>,
    /// Semi-linearly ordered: no antichain of irreducibles exceeds 2.
    pub sl_ordered: bool,
    /// Whether the antichain size is exact rather than a lower bound.
    pub exact: bool,
}

/// Above this many irreducible degrees the report refuses to run.
pub const REPORT_LIMIT: usize = 20_000;

/// Largest ⊴-antichain among the join-irreducible members of `terms`,
/// computed exactly as `n − (maximum matching)` on the strict order
/// (Dilworth/König).
pub fn structure_report(q: &QuasiOrder, terms: &[Term]) -> Result<StructureReport> {
    let mut irr: Vec<Term> = terms
        .iter()
        .filter(|t| is_join_irreducible_unchecked(q, t))
        .cloned()
        .collect();
    if irr.len() > REPORT_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "{} irreducible terms (limit {REPORT_LIMIT})",
            irr.len()
        )));
    }
    // one representative per class
    let mut reps: Vec<Term> = Vec::new();
    for t in irr.drain(..) {
        if !reps
            .iter()
            .any(|r| leq_unchecked(q, r, &t) && leq_unchecked(q, &t, r))
        {
            reps.push(t);
        }
    }
    let le = leq_matrix(q, &reps);
    let witness = max_antichain(&le);
    let size = witness.len();
    Ok(StructureReport {
        max_antichain_among_irreducibles: size,
        antichain_witness: witness.into_iter().map(|i| reps[i].clone()).collect(),
        sl_ordered: size <= 2,
        exact: true,
    })
}

/// A maximum antichain of the partial order `le` (no two distinct elements
/// mutually below each other).
pub fn max_antichain(le: &[Vec<bool>]) -> Vec<usize> {
    let n = le.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&b| a != b && le[a][b]).collect())
        .collect();
    // Kuhn's augmenting paths: left copy a, right copy b for a < b
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut match_left: Vec<Option<usize>> = vec![None; n];
    for a in 0..n {
        let mut seen = vec![false; n];
        augment(a, &adj, &mut seen, &mut match_left, &mut match_right);
    }
    // König: alternating reachability from unmatched left vertices
    let mut z_left = vec![false; n];
    let mut z_right = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&a| match_left[a].is_none()).collect();
    for &a in &stack {
        z_left[a] = true;
    }
    while let Some(a) = stack.pop() {
        for &b in &adj[a] {
            if z_right[b] || match_left[a] == Some(b) {
                continue;
            }
            z_right[b] = true;
            if let Some(a2) = match_right[b] {
                if !z_left[a2] {
                    z_left[a2] = true;
                    stack.push(a2);
                }
            }
        }
    }
    (0..n).filter(|&x| z_left[x] && !z_right[x]).collect()
}

fn augment(
    a: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &b in &adj[a] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        if match_right[b].is_none_or(|a2| augment(a2, adj, seen, match_left, match_right)) {
            match_right[b] = Some(a);
            match_left[a] = Some(b);
            return true;
        }
    }
    false
}
