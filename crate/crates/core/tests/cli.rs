use std::fs;
use std::path::PathBuf;

use outforest::cli::run;
use outforest::io::{parse_digraph, parse_forest};
use outforest::{verify, ForestKind};

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("outforest-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn run_args(args: &[&str]) -> outforest::cli::CommandOutcome {
    run(std::iter::once("outforest").chain(args.iter().copied()))
}

const TWO_CYCLE: &str = "2 2\n0 1\n1 0\n";
const STAR_IN: &str = "4 3\n1 0\n2 0\n3 0\n";

#[test]
fn decide_weak_on_two_cycle() {
    let p = scratch("twocycle.dg", TWO_CYCLE);
    let out = run_args(&["decide", "--kind", "weak-perfect", p.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stdout.starts_with("weak-perfect out-forest found\n"));
}

#[test]
fn decide_even_on_inward_star() {
    let p = scratch("star_in.dg", STAR_IN);
    let out = run_args(&["decide", "--kind", "even", p.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_eq!(out.stdout, "no even out-forest\n");
}

#[test]
fn perfect_needs_oracle() {
    let p = scratch("twocycle_p.dg", TWO_CYCLE);
    let out = run_args(&["decide", "--kind", "perfect", p.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("perfect out-forest decision is NP-hard; rerun with --oracle"));
    let out = run_args(&["decide", "--kind", "perfect", "--oracle", p.to_str().unwrap()]);
    assert_eq!(out.code, 1, "{out:?}");
}

#[test]
fn construct_then_verify() {
    let text = "6 8\n0 1\n1 2\n2 0\n2 3\n3 4\n4 5\n5 3\n1 4\n";
    let dg = scratch("six.dg", text);
    for kind in ["almost-perfect", "weak-perfect", "even"] {
        let forest = dg.with_extension(format!("{kind}.forest"));
        let out = run_args(&["construct", "--kind", kind, "-o", forest.to_str().unwrap(), dg.to_str().unwrap()]);
        assert_eq!(out.code, 0, "{out:?}");
        let f = parse_forest(&fs::read_to_string(&forest).unwrap()).unwrap();
        let d = parse_digraph(text).unwrap();
        assert!(verify(&d, &f, kind.parse::<ForestKind>().unwrap()).passed());
        let out = run_args(&["verify", "--kind", kind, dg.to_str().unwrap(), forest.to_str().unwrap()]);
        assert_eq!(out.code, 0, "{out:?}");
        assert!(out.stdout.starts_with("pass"));
    }
}

#[test]
fn verify_reports_failures_as_json() {
    let dg = scratch("tc.dg", TWO_CYCLE);
    let f = scratch("tc.forest", "root 0\n1 0\n");
    let out = run_args(&["verify", "--kind", "perfect", "--json", dg.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], "outforest/v1");
    assert_eq!(v["report"]["verdict"], "fail");
    assert_eq!(v["report"]["violations"][0]["rule"], "tree-not-induced");
}

#[test]
fn classify_and_json() {
    let p = scratch("cls.dg", TWO_CYCLE);
    let out = run_args(&["classify", p.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "strongly-connected-even\n"));
    let out = run_args(&["classify", "--json", p.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["class"], "strongly-connected-even");
}

#[test]
fn gadget_match_and_undirected_forest() {
    let p = scratch("path4.dg", "4 3\n0 1\n1 2\n2 3\n");
    let corr = p.with_extension("corr");
    let out = run_args(&["gadget", "--correspondence", corr.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("12 13\n"));
    assert!(fs::read_to_string(&corr).unwrap().starts_with("block 0 0 3 0\n"));

    let g = scratch("gadget.ug", &out.stdout);
    let out = run_args(&["match", "--json", g.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["size"], 6);
    assert_eq!(v["perfect"], true);
    let out = run_args(&["oracle", "--matching", "--max-vertices", "12", g.to_str().unwrap()]);
    assert!(out.stdout.starts_with("matching size 6\n"), "{out:?}");

    let u = scratch("p4.ug", "4 3\n0 1\n1 2\n2 3\n");
    let out = run_args(&["scott", u.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "perfect forest with 2 edges\n0 1\n2 3\n");
    let u = scratch("p3.ug", "3 2\n0 1\n1 2\n");
    assert_eq!(run_args(&["scott", u.to_str().unwrap()]).code, 1);
}

#[test]
fn reduce_3dm_and_oracle() {
    let inst = scratch("i.3dm", "2 3\n0 0 0\n1 1 1\n0 1 0\n");
    let map = inst.with_extension("map");
    let out = run_args(&["reduce-3dm", "--map", map.to_str().unwrap(), inst.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stderr.is_empty());
    assert!(out.stdout.starts_with("10 30\n"));
    assert!(fs::read_to_string(&map).unwrap().contains("block X 0 1\n"));

    let dg = scratch("reduced.dg", &out.stdout);
    let out = run_args(&["oracle", "--kind", "perfect", dg.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{out:?}");
    let out = run_args(&["oracle", "--kind", "perfect", "--max-vertices", "8", dg.to_str().unwrap()]);
    assert_eq!(out.code, 2);

    let degenerate = scratch("d.3dm", "1 1\n0 0 0\n");
    let out = run_args(&["reduce-3dm", degenerate.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.starts_with("warning:"));
}

#[test]
fn dot_output() {
    let p = scratch("dot.dg", TWO_CYCLE);
    let out = run_args(&["decide", "--kind", "even", "--dot", p.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("digraph"));
    assert!(out.stdout.contains("style=bold"));
}

#[test]
fn usage_errors() {
    assert_eq!(run_args(&[]).code, 2);
    assert_eq!(run_args(&["frobnicate"]).code, 2);
    assert_eq!(run_args(&["classify", "/nonexistent/file.dg"]).code, 2);
    let bad = scratch("bad.dg", "2 2\n0 1\n0 1\n");
    let out = run_args(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3"));
    assert_eq!(run_args(&["--help"]).code, 0);
}

#[test]
fn disconnected_input_warns() {
    let p = scratch("disc.dg", "4 4\n0 1\n1 0\n2 3\n3 2\n");
    let out = run_args(&["decide", "--kind", "weak-perfect", p.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("not connected"));
}
