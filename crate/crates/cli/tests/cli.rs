use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conway-trees")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn generators() {
    assert_eq!(ok(&["gen-dm", "--m", "2"]), "+1*x[1,2]\n");
    assert_eq!(ok(&["gen-dm", "--m", "3"]), "+1*x[1,2]*x[1,3] +1*x[1,2]*x[2,3] +1*x[1,3]*x[2,3]\n");
    let p5 = ok(&["gen-pm", "--m", "5"]);
    assert_eq!(p5.split_whitespace().count(), 15);
    assert!(p5.contains("+1*y[1,2,3]*y[1,4,5]") && p5.contains("-1*y[1,2,4]*y[1,3,5]") && p5.contains("+1*y[1,2,5]*y[1,3,4]"));
    assert_eq!(ok(&["gen-pm", "--m", "4"]), "0\n");
}

#[test]
fn verifiers() {
    assert_eq!(ok(&["verify-mtt"]), "OK\n");
    assert_eq!(ok(&["verify-mtt", "--m", "4"]), "OK\n");
    assert_eq!(ok(&["verify-pmtt", "--m", "5"]), "OK\n");
    assert_eq!(ok(&["verify-pmtt", "--m", "7", "--random", "3", "--seed", "2"]), "OK tables=3\n");
    assert_eq!(code(&["verify-pmtt", "--m", "1"]), 2);
}

#[test]
fn weights_of_fixture_diagrams() {
    for (file, want) in [("wtree.diagram", "1"), ("two_y.diagram", "2"), ("h1122.diagram", "-2"), ("wtree_wheel.diagram", "-2"), ("reld.diagram", "0")] {
        for engine in ["oracle", "reduced"] {
            assert_eq!(ok(&["weight", "--diagram", &data(file), "--engine", engine]).trim(), want, "{file} {engine}");
        }
    }
    assert_eq!(ok(&["weight", "--diagram", &data("two_y.diagram")]), "2\n");
    assert_eq!(code(&["weight", "--diagram", &data("two_y.diagram"), "--engine", "fast"]), 2);
}

#[test]
fn decompositions() {
    let out = ok(&["decompose", "--graph", &data("p7_monomial.graph")]);
    assert!(out.ends_with("decompositions 6\nsigned-count 6\nautomorphisms 1\ncoefficient 6\n"), "{out}");
    let out = ok(&["decompose", "--graph", &data("y123_squared_245_345.graph"), "--m", "5"]);
    assert!(out.ends_with("decompositions 4\nsigned-count 4\nautomorphisms 2\ncoefficient 2\n"), "{out}");
    assert!(ok(&["decompose", "--graph", &data("y123_squared.graph")]).ends_with("coefficient 1\n"));
    assert_eq!(code(&["decompose", "--graph", &data("y123_squared.graph"), "--m", "5"]), 2);
}

#[test]
fn f_polynomials_and_evaluations() {
    assert_eq!(ok(&["fpoly", "--n", "2", "--m", "3"]), "+1*y[1,2,3]*y[1,2,3]\n");
    assert_eq!(ok(&["fpoly", "--n", "1", "--m", "3", "--engine", "oracle"]), ok(&["gen-dm", "--m", "3"]));
    assert_eq!(ok(&["feval", "--mu", &data("borromean.mu")]), "1\n");
    assert_eq!(ok(&["feval", "--mu", &data("chain.mu"), "--m", "3"]), "2\n");
    assert_eq!(ok(&["feval", "--xi", &data("y123.xi"), "--m", "3", "--engine", "oracle"]), "9\n");
    for method in ["weights", "phi"] {
        assert_eq!(ok(&["feval", "--xi", &data("tree3.xi"), "--m", "4", "--method", method]), "4\n");
    }
    assert_eq!(ok(&["geval", "--xi", &data("empty2.xi"), "--tau", &data("h1122.xi"), "--m", "2", "--engine", "oracle"]), "-2\n");
    assert_eq!(ok(&["geval", "--xi", &data("empty2.xi"), "--tau", &data("h1122.xi")]), "-2\n");
    assert_eq!(code(&["feval"]), 2);
    assert_eq!(code(&["feval", "--xi", &data("y123.xi"), "--mu", &data("borromean.mu")]), 2);
    assert_eq!(code(&["feval", "--xi", &data("borromean.mu")]), 2);
}

#[test]
fn braids() {
    assert_eq!(ok(&["conway", "--braid", "k=2;1 1"]), "+1*z\n");
    assert_eq!(ok(&["conway", "--braid", "k=3;1 -2 1 -2 1 -2"]), "+1*z^4\n");
    assert_eq!(ok(&["hoste-check", "--braid", "k=3; 1 -2 1 -2 1 -2"]), "components 3\nconway +1*z^4\nkirchhoff-at-linking 0\nOK\n");
    assert!(ok(&["hoste-check", "--braid", "k=2; 1 1 1 1"]).contains("kirchhoff-at-linking 2\n"));
    assert_eq!(code(&["conway", "--braid", "k=2; 2"]), 2);
    let out = ok(&["skein-suite", "--count", "25", "--seed", "4", "--max-strands", "3", "--max-length", "6"]);
    assert_eq!(out, "words 25 failures 0\nOK\n");
    assert_eq!(code(&["skein-suite", "--max-strands", "1"]), 2);
}

#[test]
fn scans_and_series() {
    let out = ok(&["vanish-scan", "--n", "2", "--m", "3", "--samples", "60", "--seed", "5"]);
    assert!(out.starts_with("samples 60\n") && out.ends_with("OK\n"), "{out}");
    assert_eq!(
        ok(&["renorm", "--poly", "1", "--order", "8"]),
        "+1 -1/24*z^2 +7/5760*z^4 -31/967680*z^6 +127/154828800*z^8 + O(z^9)\n"
    );
    assert!(ok(&["renorm", "--poly", "1 z2"]).starts_with("+1 +23/24*z^2 "));
    assert!(ok(&["renorm", "--poly", "-1/2z3 z", "--order", "4"]).starts_with("+1*z "));
    assert_eq!(code(&["renorm", "--poly", "1 q2"]), 2);
}

#[test]
fn suites_are_deterministic() {
    let out = ok(&["run-suite", "paper-examples"]);
    assert!(out.lines().last().unwrap().ends_with("failed=0"), "{out}");
    let a = ok(&["run-suite", "properties", "--seed", "7"]);
    assert_eq!(a, ok(&["run-suite", "properties", "--seed", "7"]));
    assert!(ok(&["run-suite", "properties", "--seed", "42"]).ends_with("failed=0\n"));
    assert_eq!(code(&["run-suite", "everything"]), 2);
}

#[test]
fn help_and_usage() {
    let help = ok(&["--help"]);
    for needle in ["circles 2", "1 2 3", "tree 2 1:[2,3] * 1", "mu 1 2 3 = 1", "k=3; 1 -2 1 -2 1 -2", "1 z2", "+1*y[1,2,3]*y[1,4,5]"] {
        assert!(help.contains(needle), "missing {needle}");
    }
    assert!(ok(&["weight", "--help"]).contains("Example:"));
    assert!(ok(&["--version"]).starts_with("conway-trees "));
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["gen-dm", "--m", "3", "--bogus"]), 2);
    assert_eq!(code(&["weight", "--diagram", "/nonexistent/file"]), 2);
}
