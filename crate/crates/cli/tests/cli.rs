use std::fs;
use std::process::{Command, Output};

fn wadge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wadge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compare_incomparable() {
    let o = wadge(&["compare", "0 -> 1", "1 -> 0", "--q", "antichain:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "||\n");
}

#[test]
fn compare_with_oracles() {
    let o = wadge(&[
        "compare",
        "(sum 0 1)",
        "0 -> 1",
        "--q",
        "antichain:2",
        "--oracle",
        "all",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "<\nhom: agrees\ngame: agrees\n");
}

#[test]
fn compare_witness() {
    let o = wadge(&[
        "compare",
        "0 -> 1",
        "0 -> 1 -> 0",
        "--q",
        "antichain:2",
        "--witness",
    ]);
    let out = stdout(&o);
    assert!(out.starts_with("<\n"));
    assert!(out.contains("/ => /\n"));
    assert!(out.contains("/0 => /0\n"));
}

#[test]
fn eval_example() {
    let o = wadge(&["eval", "0 -> 1", "--q", "antichain:2", "--input", "1"]);
    assert_eq!(stdout(&o), "1\n");
    let o = wadge(&["eval", "0 -> 1", "--q", "antichain:2", "--input", "p,2"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn reduce_fuzz() {
    let o = wadge(&[
        "reduce",
        "<1>",
        "0 -> 1",
        "--q",
        "antichain:2",
        "--fuzz",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("soundness: 100/100\n"));
}

#[test]
fn reduce_runs_input() {
    let o = wadge(&[
        "reduce",
        "0 -> 1",
        "0 -> 1 -> 0",
        "--q",
        "antichain:2",
        "--input",
        "2,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("S: 1\n"));
    assert!(out.contains("T: 1\n"));
}

#[test]
fn reduce_not_reducible() {
    let o = wadge(&["reduce", "0 -> 1 -> 0", "0 -> 1", "--q", "antichain:2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors() {
    assert_eq!(
        wadge(&["compare", "x", "0", "--q", "antichain:2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wadge(&["compare", "(cat", "0", "--q", "antichain:2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wadge(&["canon", "0", "--q", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(wadge(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wadge(&["ord-cmp", "w + w^2", "1"]).status.code(), Some(2));
}

#[test]
fn canon_and_selfdual() {
    let o = wadge(&["canon", "0 -> (sum 1 (1 -> 0))", "--q", "antichain:2"]);
    assert_eq!(stdout(&o), "0 -> 1 -> 0\n");
    let o = wadge(&["selfdual", "(sum 0 1)", "--q", "antichain:2"]);
    assert_eq!(stdout(&o), "self-dual\n");
    let o = wadge(&["selfdual", "0 -> 1", "--q", "antichain:2"]);
    assert_eq!(stdout(&o), "non-self-dual\n");
}

#[test]
fn ord_cmp() {
    assert_eq!(stdout(&wadge(&["ord-cmp", "w^2", "w*5"])), ">\n");
    assert_eq!(stdout(&wadge(&["ord-cmp", "3", "w"])), "<\n");
    assert_eq!(stdout(&wadge(&["ord-cmp", "w^w", "w^w"])), "=\n");
}

#[test]
fn enum_outputs() {
    let dir = std::env::temp_dir().join(format!("wadge-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("h.dot");
    let tsv = dir.join("m.tsv");
    let o = wadge(&[
        "enum",
        "--q",
        "antichain:2",
        "--max-nodes",
        "1",
        "--dot",
        dot.to_str().unwrap(),
        "--tsv",
        tsv.to_str().unwrap(),
        "--report",
        "--jobs",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("0\n1\n(sum 0 1)\n"));
    assert!(out.contains("max antichain among irreducibles: 2\n"));
    let dot = fs::read_to_string(&dot).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("n0 -> n2;"));
    assert_eq!(fs::read_to_string(&tsv).unwrap().lines().count(), 9);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn files_and_at_prefix() {
    let dir = std::env::temp_dir().join(format!("wadge-files-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let qf = dir.join("two.q");
    fs::write(&qf, "# two incomparable values\nELEMS: a b\n").unwrap();
    let tf = dir.join("s.term");
    fs::write(&tf, "a -> b\n").unwrap();
    let q = qf.to_str().unwrap();
    let o = wadge(&["compare", tf.to_str().unwrap(), "b -> a", "--q", q]);
    assert_eq!(stdout(&o), "||\n");
    let at = format!("@{}", tf.display());
    let o = wadge(&["compare", &at, "a -> b", "--q", q]);
    assert_eq!(stdout(&o), "=\n");
    let o = wadge(&["compare", "@/nonexistent/x.term", "a", "--q", q]);
    assert_eq!(o.status.code(), Some(2));
    fs::remove_dir_all(&dir).unwrap();
}
