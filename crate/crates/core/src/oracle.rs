//! Brute-force deciders for `⊴`, independent of the recursion in
//! [`crate::order`].
//!
//! * [`hom_leq`] searches for a label-increasing, ancestor-preserving map
//!   from the nodes of `S` to the nodes of `T` (collapsing allowed).
//! * [`game_leq`] solves a finite reachability game on the product of the
//!   two node sets by iterating to a least fixpoint.
//!
//! Both flatten the terms into node arenas; only the label rule table
//! ([`label_step`]) is shared with `order`.

use std::fmt;

use crate::error::Result;
use crate::order::{label_leq_unchecked, label_step, LabelStep};
use crate::qspec::QuasiOrder;
use crate::term::Term;

/// Node address: component index (for sums) followed by child indices.
pub type Path = Vec<usize>;

pub fn format_path(p: &[usize]) -> String {
    if p.is_empty() {
        return "/".to_string();
    }
    p.iter().map(|i| format!("/{i}")).collect()
}

struct Node<'a> {
    label: &'a Term,
    children: Vec<usize>,
    path: Path,
    /// Descendants including the node itself.
    below: Vec<usize>,
}

struct Arena<'a> {
    nodes: Vec<Node<'a>>,
    roots: Vec<usize>,
}

impl<'a> Arena<'a> {
    fn build(t: &'a Term) -> Arena<'a> {
        let mut arena = Arena {
            nodes: Vec::new(),
            roots: Vec::new(),
        };
        match t {
            Term::Sum(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    let r = arena.add(c, vec![i]);
                    arena.roots.push(r);
                }
            }
            _ => {
                let r = arena.add(t, Vec::new());
                arena.roots.push(r);
            }
        }
        arena
    }

    fn add(&mut self, t: &'a Term, path: Path) -> usize {
        let (label, kids) = t.tree_parts().expect("tree");
        let id = self.nodes.len();
        self.nodes.push(Node {
            label,
            children: Vec::new(),
            path: path.clone(),
            below: vec![id],
        });
        for (k, c) in kids.iter().enumerate() {
            let mut p = path.clone();
            p.push(k);
            let cid = self.add(c, p);
            let sub = self.nodes[cid].below.clone();
            self.nodes[id].children.push(cid);
            self.nodes[id].below.extend(sub);
        }
        id
    }
}

/// Label comparison with the shared rule table; term-level sub-questions are
/// answered by `decide`.
fn label_ok(
    q: &QuasiOrder,
    s: &Term,
    t: &Term,
    decide: fn(&QuasiOrder, &Term, &Term) -> bool,
) -> bool {
    match label_step(s, t) {
        LabelStep::Atoms(a, b) => q.q_le(a, b).unwrap_or(false),
        LabelStep::Terms(u, v) => decide(q, u, v),
    }
}

// ---------------------------------------------------------------------------
// homomorphism search

/// A witnessing map, as `(node of S, image in T)` path pairs in preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMap(pub Vec<(Path, Path)>);

impl fmt::Display for HomMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, t) in &self.0 {
            writeln!(f, "{} => {}", format_path(s), format_path(t))?;
        }
        Ok(())
    }
}

struct HomSearch<'a, 'q> {
    q: &'q QuasiOrder,
    s: Arena<'a>,
    t: Arena<'a>,
    memo: Vec<Option<bool>>,
}

impl HomSearch<'_, '_> {
    /// Can the subtree at `u` be mapped with `u ↦ v`?
    fn place(&mut self, u: usize, v: usize) -> bool {
        let key = u * self.t.nodes.len() + v;
        if let Some(b) = self.memo[key] {
            return b;
        }
        let ok = label_ok(
            self.q,
            self.s.nodes[u].label,
            self.t.nodes[v].label,
            hom_leq_unchecked,
        ) && (0..self.s.nodes[u].children.len()).all(|k| {
            let c = self.s.nodes[u].children[k];
            (0..self.t.nodes[v].below.len()).any(|i| {
                let w = self.t.nodes[v].below[i];
                self.place(c, w)
            })
        });
        self.memo[key] = Some(ok);
        ok
    }

    fn image_of_root(&mut self, r: usize) -> Option<usize> {
        (0..self.t.nodes.len()).find(|&v| self.place(r, v))
    }

    fn extract(&mut self, u: usize, v: usize, out: &mut Vec<(Path, Path)>) {
        out.push((self.s.nodes[u].path.clone(), self.t.nodes[v].path.clone()));
        for k in 0..self.s.nodes[u].children.len() {
            let c = self.s.nodes[u].children[k];
            let w = self.t.nodes[v]
                .below
                .clone()
                .into_iter()
                .find(|&w| self.place(c, w))
                .expect("placement succeeded");
            self.extract(c, w, out);
        }
    }
}

fn hom_search<'a, 'q>(q: &'q QuasiOrder, s: &'a Term, t: &'a Term) -> HomSearch<'a, 'q> {
    let s = Arena::build(s);
    let t = Arena::build(t);
    let memo = vec![None; s.nodes.len() * t.nodes.len()];
    HomSearch { q, s, t, memo }
}

pub fn hom_leq(q: &QuasiOrder, s: &Term, t: &Term) -> Result<bool> {
    s.check_atoms(q)?;
    t.check_atoms(q)?;
    Ok(hom_leq_unchecked(q, s, t))
}

pub fn hom_leq_unchecked(q: &QuasiOrder, s: &Term, t: &Term) -> bool {
    let mut search = hom_search(q, s, t);
    let roots = search.s.roots.clone();
    roots.into_iter().all(|r| search.image_of_root(r).is_some())
}

/// The map found by the search, or `None` if `S ⋬ T`.
pub fn hom_witness(q: &QuasiOrder, s: &Term, t: &Term) -> Result<Option<HomMap>> {
    s.check_atoms(q)?;
    t.check_atoms(q)?;
    let mut search = hom_search(q, s, t);
    let mut pairs = Vec::new();
    for r in search.s.roots.clone() {
        let Some(v) = search.image_of_root(r) else {
            return Ok(None);
        };
        search.extract(r, v, &mut pairs);
    }
    Ok(Some(HomMap(pairs)))
}

/// The node of `t` at `path` (a tree, as its `(label, children)` owner).
pub fn node_at<'a>(t: &'a Term, path: &[usize]) -> Option<&'a Term> {
    let (mut cur, rest) = match t {
        Term::Sum(cs) => (cs.get(*path.first()?)?, &path[1..]),
        _ => (t, path),
    };
    for &k in rest {
        cur = cur.tree_parts()?.1.get(k)?;
    }
    Some(cur)
}

/// Checks a claimed witness directly: total on the nodes of `S`,
/// ancestor-preserving, and label-increasing under `order`'s label rule.
pub fn verify_witness(q: &QuasiOrder, s: &Term, t: &Term, map: &HomMap) -> bool {
    let s_paths = Arena::build(s)
        .nodes
        .iter()
        .map(|n| n.path.clone())
        .collect::<Vec<_>>();
    if map.0.len() != s_paths.len() || !s_paths.iter().all(|p| map.0.iter().any(|(a, _)| a == p)) {
        return false;
    }
    let image = |p: &Path| &map.0.iter().find(|(a, _)| a == p).unwrap().1;
    for (sp, tp) in &map.0 {
        let (Some(sn), Some(tn)) = (node_at(s, sp), node_at(t, tp)) else {
            return false;
        };
        let ls = sn.tree_parts().unwrap().0;
        let lt = tn.tree_parts().unwrap().0;
        if !label_leq_unchecked(q, ls, lt) {
            return false;
        }
    }
    for a in &s_paths {
        for b in &s_paths {
            if b.starts_with(a) && !image(b).starts_with(image(a)) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// game

/// Flattened arena with a virtual start node 0 above every root.
struct GameBoard<'a> {
    labels: Vec<Option<&'a Term>>,
    children: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
}

impl<'a> GameBoard<'a> {
    fn build(t: &'a Term) -> GameBoard<'a> {
        let arena = Arena::build(t);
        let n = arena.nodes.len() + 1;
        let mut labels = vec![None];
        let mut children = vec![arena.roots.iter().map(|r| r + 1).collect()];
        let mut below = vec![(0..n).collect()];
        for node in &arena.nodes {
            labels.push(Some(node.label));
            children.push(node.children.iter().map(|c| c + 1).collect());
            below.push(node.below.iter().map(|c| c + 1).collect());
        }
        GameBoard {
            labels,
            children,
            below,
        }
    }

    fn len(&self) -> usize {
        self.labels.len()
    }
}

pub fn game_leq(q: &QuasiOrder, s: &Term, t: &Term) -> Result<bool> {
    s.check_atoms(q)?;
    t.check_atoms(q)?;
    Ok(game_leq_unchecked(q, s, t))
}

/// Player I walks down `S` one child per round; Player II answers anywhere at
/// or below her current node in `T` and must keep a label at least as large.
/// `win[u][v]` is the least fixpoint of "II survives from `(u, v)`".
pub fn game_leq_unchecked(q: &QuasiOrder, s: &Term, t: &Term) -> bool {
    let sb = GameBoard::build(s);
    let tb = GameBoard::build(t);
    let (ns, nt) = (sb.len(), tb.len());
    let label: Vec<bool> = (0..ns * nt)
        .map(|i| {
            let (u, v) = (i / nt, i % nt);
            match (sb.labels[u], tb.labels[v]) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(a), Some(b)) => label_ok(q, a, b, game_leq_unchecked),
            }
        })
        .collect();
    let mut win = vec![false; ns * nt];
    loop {
        let mut changed = false;
        for u in 0..ns {
            for v in 0..nt {
                if win[u * nt + v] || !label[u * nt + v] {
                    continue;
                }
                let survives = sb.children[u]
                    .iter()
                    .all(|&c| tb.below[v].iter().any(|&w| win[c * nt + w]));
                if survives {
                    win[u * nt + v] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    win[0]
}
