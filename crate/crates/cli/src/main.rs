use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wadge_core::evalred::{
    eval_omega, input_alphabet, run_transducer, soundness_holds, streams_upto, synth_reduction,
};
use wadge_core::explore::{comparison_tsv, enum_terms, hasse, structure_report, EnumConfig};
use wadge_core::oracle::{game_leq, hom_leq, hom_witness};
use wadge_core::order::{canon, compare, is_join_irreducible, Relation};
use wadge_core::stream::{format_stream, parse_stream};
use wadge_core::{
    builtin, load_quasi_order, ord_cmp, parse_ordinal, parse_term, Error, QuasiOrder, Term,
};

#[derive(Parser)]
#[command(
    name = "wadge",
    version,
    about = "Compare, evaluate and reduce Q-labeled forest terms"
)]
struct Cli {
    /// Worker threads for enumeration and comparison tables.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleChoice {
    Hom,
    Game,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print `<`, `>`, `=` or `||`.
    Compare {
        s: String,
        t: String,
        #[arg(long)]
        q: String,
        /// Cross-check against a brute-force decider.
        #[arg(long, value_enum)]
        oracle: Option<OracleChoice>,
        /// Print a node map witnessing S ⊴ T.
        #[arg(long)]
        witness: bool,
    },
    /// Print the canonical representative.
    Canon {
        t: String,
        #[arg(long)]
        q: String,
    },
    /// Print `self-dual` or `non-self-dual`.
    Selfdual {
        t: String,
        #[arg(long)]
        q: String,
    },
    /// Evaluate on a finite stream such as `2,p,4,3`.
    Eval {
        t: String,
        #[arg(long)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
    },
    /// Build a transducer reducing S to T.
    Reduce {
        s: String,
        t: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        show_plan: bool,
        /// Check soundness on the first N valid inputs, shortest first.
        #[arg(long)]
        fuzz: Option<usize>,
    },
    /// List the degrees up to a node bound.
    Enum {
        #[arg(long)]
        q: String,
        #[arg(long)]
        max_nodes: usize,
        /// Comma-separated jump heights, e.g. `0,1,w`.
        #[arg(long)]
        jumps: Option<String>,
        /// Also bound the total node count of forests.
        #[arg(long)]
        forest_nodes: Option<usize>,
        #[arg(long)]
        dot: Option<String>,
        #[arg(long)]
        tsv: Option<String>,
        #[arg(long)]
        report: bool,
    },
    /// Compare two ordinals below ε₀.
    OrdCmp { a: String, b: String },
}

enum Failure {
    Negative(String),
    Usage(String),
    Bug(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotReducible | Error::ResourceLimit(_) => Failure::Negative(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;
type Decider = fn(&QuasiOrder, &Term, &Term) -> wadge_core::Result<bool>;

fn io_err(path: &str, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{path}: {e}"))
}

fn load_q(source: &str) -> Result<QuasiOrder, Failure> {
    match builtin(source) {
        Ok(q) => Ok(q),
        Err(Error::UnknownBuiltin(_)) if Path::new(source).is_file() => {
            let text = fs::read_to_string(source).map_err(|e| io_err(source, e))?;
            Ok(load_quasi_order(&text)?)
        }
        Err(e) => Err(e.into()),
    }
}

fn load_term(arg: &str, q: &QuasiOrder) -> Result<Term, Failure> {
    let text = if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| io_err(path, e))?
    } else if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(|e| io_err(arg, e))?
    } else {
        arg.to_string()
    };
    let t = parse_term(&text)?;
    t.check_atoms(q)?;
    Ok(t)
}

fn relation_via(q: &QuasiOrder, s: &Term, t: &Term, f: Decider) -> Result<Relation, Failure> {
    Ok(Relation::from_flags(f(q, s, t)?, f(q, t, s)?))
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Compare {
            s,
            t,
            q,
            oracle,
            witness,
        } => {
            let q = load_q(&q)?;
            let (s, t) = (load_term(&s, &q)?, load_term(&t, &q)?);
            let rel = compare(&q, &s, &t)?;
            println!("{}", rel.symbol());
            let checks: &[(&str, Decider)] = match oracle {
                None => &[],
                Some(OracleChoice::Hom) => &[("hom", hom_leq)],
                Some(OracleChoice::Game) => &[("game", game_leq)],
                Some(OracleChoice::All) => &[("hom", hom_leq), ("game", game_leq)],
            };
            for (name, f) in checks {
                let other = relation_via(&q, &s, &t, *f)?;
                if other != rel {
                    return Err(Failure::Bug(format!(
                        "oracle disagreement: {name} gives {}",
                        other.symbol()
                    )));
                }
                println!("{name}: agrees");
            }
            if witness {
                match hom_witness(&q, &s, &t)? {
                    Some(map) => print!("{map}"),
                    None => println!("no witness: S is not below T"),
                }
            }
        }
        Cmd::Canon { t, q } => {
            let q = load_q(&q)?;
            println!("{}", canon(&q, &load_term(&t, &q)?)?);
        }
        Cmd::Selfdual { t, q } => {
            let q = load_q(&q)?;
            let t = load_term(&t, &q)?;
            let word = if is_join_irreducible(&q, &t)? {
                "non-self-dual"
            } else {
                "self-dual"
            };
            println!("{word}");
        }
        Cmd::Eval { t, q, input } => {
            let q = load_q(&q)?;
            let t = load_term(&t, &q)?;
            println!("{}", eval_omega(&q, &t, &parse_stream(&input)?)?);
        }
        Cmd::Reduce {
            s,
            t,
            q,
            input,
            show_plan,
            fuzz,
        } => {
            let q = load_q(&q)?;
            let (s, t) = (load_term(&s, &q)?, load_term(&t, &q)?);
            let plan = synth_reduction(&q, &s, &t)?;
            if show_plan || fuzz.is_some() {
                print!("{plan}");
            }
            if let Some(input) = input {
                let x = parse_stream(&input)?;
                let y = run_transducer(&plan, &x)?;
                println!("output: {}", format_stream(&y));
                println!("S: {}", eval_omega(&q, &s, &x)?);
                println!("T: {}", eval_omega(&q, &t, &y)?);
            }
            if let Some(n) = fuzz {
                let alphabet = input_alphabet(&s);
                let mut tried = 0;
                let mut passed = 0;
                for x in streams_upto(&alphabet, usize::MAX) {
                    if tried == n {
                        break;
                    }
                    match soundness_holds(&q, &s, &t, &plan, &x)? {
                        None => continue,
                        Some(ok) => {
                            tried += 1;
                            if ok {
                                passed += 1;
                            } else if passed + 1 == tried {
                                eprintln!("unsound on input {}", format_stream(&x));
                            }
                        }
                    }
                }
                println!("soundness: {passed}/{tried}");
                if passed != tried {
                    return Err(Failure::Bug("reduction is unsound".into()));
                }
            }
        }
        Cmd::Enum {
            q,
            max_nodes,
            jumps,
            forest_nodes,
            dot,
            tsv,
            report,
        } => {
            let q = load_q(&q)?;
            let jumps = match jumps {
                Some(list) => list
                    .split(',')
                    .map(|a| parse_ordinal(a.trim()))
                    .collect::<wadge_core::Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            let mut cfg = EnumConfig::new(max_nodes).with_jumps(jumps);
            cfg.forest_nodes = forest_nodes;
            let terms = enum_terms(&q, &cfg)?;
            for t in &terms {
                println!("{t}");
            }
            if let Some(path) = dot {
                fs::write(&path, hasse(&q, &terms)).map_err(|e| io_err(&path, e))?;
            }
            if let Some(path) = tsv {
                fs::write(&path, comparison_tsv(&q, &terms)).map_err(|e| io_err(&path, e))?;
            }
            if report {
                let r = structure_report(&q, &terms)?;
                println!("degrees: {}", terms.len());
                println!(
                    "max antichain among irreducibles: {}{}",
                    r.max_antichain_among_irreducibles,
                    if r.exact { "" } else { " (lower bound)" }
                );
                let names: Vec<String> = r.antichain_witness.iter().map(Term::to_string).collect();
                println!("witness: {{{}}}", names.join(", "));
                println!("semi-linearly ordered: {}", r.sl_ordered);
            }
        }
        Cmd::OrdCmp { a, b } => {
            let (a, b) = (parse_ordinal(&a)?, parse_ordinal(&b)?);
            let sym = match ord_cmp(&a, &b) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            println!("{sym}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Bug(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
