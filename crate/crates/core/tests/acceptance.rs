use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use wadge_core::evalred::{input_alphabet, soundness_holds, streams_upto, synth_reduction};
use wadge_core::explore::{enum_terms, structure_report, EnumConfig};
use wadge_core::oracle::{game_leq_unchecked, hom_leq_unchecked, hom_witness, verify_witness};
use wadge_core::order::{canon_unchecked, equiv, is_join_irreducible_unchecked, leq_unchecked};
use wadge_core::stream::{mc_decode, mc_encode, FinStream, Symbol};
use wadge_core::term::{chain, swap01};
use wadge_core::{builtin, ord_cmp, Ordinal, QuasiOrder, Term};

const CORPUS_QS: [&str; 4] = ["antichain:2", "antichain:3", "chain:2", "flat3"];

/// Jump-free degrees whose trees have at most five nodes. For antichain:3
/// the forests are additionally limited to seven nodes in total.
fn corpus(name: &str) -> (QuasiOrder, Vec<Term>) {
    let q = builtin(name).unwrap();
    let mut cfg = EnumConfig::new(5);
    if name == "antichain:3" {
        cfg = cfg.with_forest_nodes(7);
    }
    let terms = enum_terms(&q, &cfg).unwrap();
    (q, terms)
}

/// Degrees over antichain:2 with up to four nodes per tree and jump labels.
fn jump_corpus() -> (QuasiOrder, Vec<Term>) {
    let q = builtin("antichain:2").unwrap();
    let jumps = vec![Ordinal::zero(), Ordinal::nat(1), Ordinal::omega()];
    let terms = enum_terms(&q, &EnumConfig::new(4).with_jumps(jumps)).unwrap();
    (q, terms)
}

fn heights() -> Vec<Ordinal> {
    vec![
        Ordinal::zero(),
        Ordinal::nat(1),
        Ordinal::omega(),
        Ordinal::omega_pow(Ordinal::nat(2)),
    ]
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    names: &'a [String],
    jumps: bool,
}

impl Gen<'_> {
    fn atom(&mut self) -> Term {
        Term::atom(self.names.choose(&mut self.rng).unwrap().clone())
    }

    fn label(&mut self, depth: usize) -> Term {
        if self.jumps && depth > 0 && self.rng.gen_bool(0.25) {
            let h = heights().choose(&mut self.rng).unwrap().clone();
            let body = self.term(depth - 1);
            Term::jump(h, body)
        } else {
            self.atom()
        }
    }

    fn tree(&mut self, depth: usize) -> Term {
        let label = self.label(depth);
        let kids = if depth == 0 {
            0
        } else {
            self.rng.gen_range(0..=2)
        };
        let children = (0..kids).map(|_| self.tree(depth - 1)).collect();
        Term::cat(label, children)
    }

    fn term(&mut self, depth: usize) -> Term {
        if self.rng.gen_bool(0.3) {
            let k = self.rng.gen_range(2..=3);
            Term::Sum((0..k).map(|_| self.tree(depth)).collect())
        } else {
            self.tree(depth)
        }
    }
}

fn gen<'a>(seed: u64, names: &'a [String], jumps: bool) -> Gen<'a> {
    Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        names,
        jumps,
    }
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn oracle_agreement() -> Outcome {
    let mut pairs = 0usize;
    let mut sizes = Vec::new();
    for name in CORPUS_QS {
        let (q, terms) = corpus(name);
        sizes.push(format!("{name}:{}", terms.len()));
        let bad: Vec<String> = terms
            .par_iter()
            .flat_map_iter(|s| {
                let q = &q;
                terms.iter().filter_map(move |t| {
                    let a = leq_unchecked(q, s, t);
                    let b = hom_leq_unchecked(q, s, t);
                    let c = game_leq_unchecked(q, s, t);
                    let witness_ok = !a
                        || hom_witness(q, s, t)
                            .unwrap()
                            .is_some_and(|m| verify_witness(q, s, t, &m));
                    (a != b || a != c || !witness_ok)
                        .then(|| format!("{name}: {s} vs {t}: leq={a} hom={b} game={c}"))
                })
            })
            .collect();
        if let Some(first) = bad.first() {
            return Err(format!("{} disagreements, first {first}", bad.len()));
        }
        pairs += terms.len() * terms.len();
    }
    Ok(format!("{pairs} pairs agree (corpora {})", sizes.join(" ")))
}

const STREAM_LEN: usize = 6;

fn reduction_soundness() -> Outcome {
    let mut checks = 0usize;
    let mut pairs = 0usize;
    for name in CORPUS_QS {
        let (q, terms) = corpus(name);
        for s in &terms {
            let streams: Vec<FinStream> = streams_upto(&input_alphabet(s), STREAM_LEN).collect();
            let targets: Vec<&Term> = terms.iter().filter(|t| leq_unchecked(&q, s, t)).collect();
            pairs += targets.len();
            let results: Vec<Result<usize, String>> = targets
                .par_iter()
                .map(|t| {
                    let plan = synth_reduction(&q, s, t).map_err(|e| format!("{s} -> {t}: {e}"))?;
                    let mut n = 0;
                    for x in &streams {
                        match soundness_holds(&q, s, t, &plan, x) {
                            Ok(None) => {}
                            Ok(Some(true)) => n += 1,
                            Ok(Some(false)) => {
                                return Err(format!("{name}: {s} -> {t} unsound on {x:?}"))
                            }
                            Err(e) => return Err(format!("{name}: {s} -> {t}: {e}")),
                        }
                    }
                    Ok(n)
                })
                .collect();
            for r in results {
                checks += r?;
            }
        }
    }
    Ok(format!("{pairs} reducible pairs, {checks} stream checks"))
}

fn order_laws() -> Outcome {
    for (name, (q, terms)) in CORPUS_QS
        .iter()
        .map(|n| (*n, corpus(n)))
        .chain([("jumps", jump_corpus())])
    {
        if let Some(t) = terms.iter().find(|t| !leq_unchecked(&q, t, t)) {
            return Err(format!("{name}: {t} not reflexive"));
        }
    }
    let mut triples = 0usize;
    let mut live = 0usize;
    for (seed, name) in [(11, "antichain:2"), (12, "flat3"), (13, "chain:2")] {
        let q = builtin(name).unwrap();
        let mut g = gen(seed, q.elements(), true);
        let pool: Vec<Term> = (0..60).map(|_| g.term(2)).collect();
        let le: Vec<Vec<bool>> = pool
            .par_iter()
            .map(|a| pool.iter().map(|b| leq_unchecked(&q, a, b)).collect())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
        for _ in 0..4000 {
            let (a, b, c) = (
                rng.gen_range(0..pool.len()),
                rng.gen_range(0..pool.len()),
                rng.gen_range(0..pool.len()),
            );
            triples += 1;
            if le[a][b] && le[b][c] {
                live += 1;
                if !le[a][c] {
                    return Err(format!("{name}: {} ⊴ {} ⊴ {}", pool[a], pool[b], pool[c]));
                }
            }
        }
        // every chained pair in the pool, not only the sampled ones
        for a in 0..pool.len() {
            for b in 0..pool.len() {
                for c in 0..pool.len() {
                    if le[a][b] && le[b][c] && !le[a][c] {
                        return Err(format!("{name}: {} ⊴ {} ⊴ {}", pool[a], pool[b], pool[c]));
                    }
                }
            }
        }
    }
    Ok(format!(
        "reflexive on corpora; {triples} random triples, {live} non-vacuous"
    ))
}

fn supremum_laws() -> Outcome {
    let mut forests = 0;
    for (seed, name) in [(21, "antichain:2"), (22, "flat3"), (23, "antichain:3")] {
        let q = builtin(name).unwrap();
        let mut g = gen(seed, q.elements(), true);
        for _ in 0..400 {
            let k = g.rng.gen_range(2..=4);
            let parts: Vec<Term> = (0..k).map(|_| g.tree(2)).collect();
            let sum = Term::Sum(parts.clone());
            let t = g.term(2);
            if let Some(p) = parts.iter().find(|p| !leq_unchecked(&q, p, &sum)) {
                return Err(format!("{p} not below {sum}"));
            }
            let all = parts.iter().all(|p| leq_unchecked(&q, p, &t));
            if leq_unchecked(&q, &sum, &t) != all {
                return Err(format!("{sum} vs {t}"));
            }
            forests += 1;
        }
    }
    Ok(format!("{forests} forests"))
}

fn difference_hierarchy() -> Outcome {
    let q = builtin("antichain:2").unwrap();
    let c = |n: usize, a: &str| chain(n, a).unwrap();
    for a in ["0", "1"] {
        for m in 1..=8 {
            for n in 1..=8 {
                if leq_unchecked(&q, &c(m, a), &c(n, a)) != (m <= n) {
                    return Err(format!("chain({m},{a}) vs chain({n},{a})"));
                }
            }
        }
    }
    for n in 1..=8 {
        let (x, y) = (c(n, "0"), c(n, "1"));
        if leq_unchecked(&q, &x, &y) || leq_unchecked(&q, &y, &x) {
            return Err(format!("chain({n},0) and chain({n},1) comparable"));
        }
        if !leq_unchecked(&q, &x, &c(n + 1, "1")) {
            return Err(format!("chain({n},0) not below chain({},1)", n + 1));
        }
    }
    Ok("chains up to length 9 ordered as expected".into())
}

fn semi_linear() -> Outcome {
    let (q, terms) = corpus("antichain:2");
    let r = structure_report(&q, &terms).map_err(|e| e.to_string())?;
    if r.max_antichain_among_irreducibles != 2 || !r.exact {
        return Err(format!(
            "antichain:2 width {}",
            r.max_antichain_among_irreducibles
        ));
    }
    let (q3, terms3) = corpus("antichain:3");
    let r3 = structure_report(&q3, &terms3).map_err(|e| e.to_string())?;
    if r3.max_antichain_among_irreducibles < 3 {
        return Err(format!(
            "antichain:3 width {}",
            r3.max_antichain_among_irreducibles
        ));
    }
    let w: Vec<String> = r.antichain_witness.iter().map(Term::to_string).collect();
    Ok(format!(
        "antichain:2 width 2 {{{}}}, antichain:3 width {}",
        w.join(", "),
        r3.max_antichain_among_irreducibles
    ))
}

fn self_duality() -> Outcome {
    let (q, mut terms) = corpus("antichain:2");
    terms.extend(jump_corpus().1);
    for t in &terms {
        let swapped_equiv = equiv(&q, t, &swap01(t)).unwrap();
        if is_join_irreducible_unchecked(&q, t) == swapped_equiv {
            return Err(format!("{t}"));
        }
    }
    Ok(format!("{} terms", terms.len()))
}

fn atoms_of(t: &Term) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    t.for_each_atom(&mut |a| {
        out.insert(a.to_string());
    });
    out
}

fn jump_rules() -> Outcome {
    let few = [Ordinal::zero(), Ordinal::nat(1), Ordinal::omega()];
    let mut collapsed = 0;
    for name in CORPUS_QS {
        let (q, terms) = corpus(name);
        for t in terms.iter().filter(|t| atoms_of(t).len() == 1) {
            for a in &few {
                for b in &few {
                    let (x, y) = (
                        Term::jump(a.clone(), t.clone()),
                        Term::jump(b.clone(), t.clone()),
                    );
                    if !equiv(&q, &x, &y).unwrap() {
                        return Err(format!("{x} and {y} differ"));
                    }
                }
            }
            collapsed += 1;
        }
    }
    let mut table = 0;
    for (seed, name) in [
        (31, "antichain:2"),
        (32, "flat3"),
        (33, "chain:2"),
        (34, "diamond"),
    ] {
        let q = builtin(name).unwrap();
        let mut g = gen(seed, q.elements(), false);
        for _ in 0..250 {
            let u = g.term(2);
            let atoms = atoms_of(&u);
            let has_top = atoms
                .iter()
                .any(|r| atoms.iter().all(|a| q.q_le(a, r).unwrap()));
            for a in heights() {
                for b in heights() {
                    let expected = ord_cmp(&a, &b) != Ordering::Greater || has_top;
                    let got = leq_unchecked(
                        &q,
                        &Term::jump(a.clone(), u.clone()),
                        &Term::jump(b.clone(), u.clone()),
                    );
                    if got != expected {
                        return Err(format!("jump {a} vs {b} over {u}: got {got}"));
                    }
                    table += 1;
                }
            }
        }
    }
    Ok(format!(
        "{collapsed} single-label terms collapse, {table} table entries"
    ))
}

fn random_stream(rng: &mut ChaCha8Rng) -> FinStream {
    let len = rng.gen_range(0..10);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.3) {
                Symbol::Pass
            } else {
                Symbol::Nat(rng.gen_range(0..1000))
            }
        })
        .collect()
}

fn random_ordinal(rng: &mut ChaCha8Rng, depth: usize) -> Ordinal {
    let k = rng.gen_range(0..=3);
    let mut exps: Vec<Ordinal> = (0..k)
        .map(|_| {
            if depth == 0 {
                Ordinal::nat(rng.gen_range(0..4))
            } else {
                random_ordinal(rng, depth - 1)
            }
        })
        .collect();
    exps.sort_by(|a, b| ord_cmp(b, a));
    exps.dedup();
    let terms = exps.into_iter().map(|e| (e, rng.gen_range(1..4))).collect();
    Ordinal::from_terms(terms).unwrap()
}

fn codec_and_ordinals() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..10_000 {
        let y = random_stream(&mut rng);
        let z = if rng.gen_bool(0.2) {
            Vec::new()
        } else {
            let mut z = vec![Symbol::Nat(rng.gen_range(0..1000))];
            z.extend(random_stream(&mut rng));
            z
        };
        let x = mc_encode(&y, &z).map_err(|e| e.to_string())?;
        if mc_decode(&x) != (y.clone(), z.clone()) {
            return Err(format!("round trip {y:?} {z:?}"));
        }
    }
    for _ in 0..1000 {
        let (a, b, c) = (
            random_ordinal(&mut rng, 2),
            random_ordinal(&mut rng, 2),
            random_ordinal(&mut rng, 2),
        );
        if ord_cmp(&a, &b) != ord_cmp(&b, &a).reverse() || ord_cmp(&a, &a) != Ordering::Equal {
            return Err(format!("antisymmetry {a} {b}"));
        }
        if (ord_cmp(&a, &b) == Ordering::Equal) != (a == b) {
            return Err(format!("equality {a} {b}"));
        }
        let le = |x: &Ordinal, y: &Ordinal| ord_cmp(x, y) != Ordering::Greater;
        if le(&a, &b) && le(&b, &c) && !le(&a, &c) {
            return Err(format!("transitivity {a} {b} {c}"));
        }
    }
    let nats: Vec<Ordinal> = (0..=10_000u64).map(Ordinal::nat).collect();
    let bad = (0..nats.len())
        .into_par_iter()
        .find_any(|&i| (0..nats.len()).any(|j| ord_cmp(&nats[i], &nats[j]) != i.cmp(&j)));
    if let Some(i) = bad {
        return Err(format!("natural {i}"));
    }
    Ok("10000 codec pairs, 1000 ordinal triples, all naturals up to 10000".into())
}

fn canon_laws() -> Outcome {
    let mut n = 0;
    for (seed, name) in [
        (51, "antichain:2"),
        (52, "flat3"),
        (53, "antichain:3"),
        (54, "diamond"),
    ] {
        let q = builtin(name).unwrap();
        let mut g = gen(seed, q.elements(), true);
        let terms: Vec<Term> = (0..2500).map(|_| g.term(3)).collect();
        let bad = terms.par_iter().find_any(|t| {
            let c = canon_unchecked(&q, t);
            !(leq_unchecked(&q, t, &c) && leq_unchecked(&q, &c, t)) || canon_unchecked(&q, &c) != c
        });
        if let Some(t) = bad {
            return Err(format!("{name}: {t}"));
        }
        n += terms.len();
    }
    Ok(format!("{n} random terms"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle agreement", oracle_agreement),
        ("reduction soundness", reduction_soundness),
        ("quasi-order laws", order_laws),
        ("supremum laws", supremum_laws),
        ("difference hierarchy", difference_hierarchy),
        ("semi-linear ordering", semi_linear),
        ("self-duality", self_duality),
        ("jump collapse and stripping", jump_rules),
        ("codec and ordinals", codec_and_ordinals),
        ("canon", canon_laws),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
