use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use conway_trees::conway::{conway, hoste_check, skein_suite, BraidWord};
use conway_trees::diagrams::{parse_diagram, vanishing_scan, weight, Engine};
use conway_trees::exactalg::{parse_z_poly, series_renormalize};
use conway_trees::kirchhoff::{kirchhoff_poly, mtt_check};
use conway_trees::milnor::{f_as_polynomial, f_eval, f_general, g_eval, parse_mu_table, parse_xi, XiElement};
use conway_trees::pfaffian_tree::{
    aut_factor, decomposition_coefficient, ordered_tree_decompositions, parse_three_graph, pfaffian_tree_poly, pmtt_check,
    pmtt_random_check,
};
use conway_trees::suite::{run_suite, SuiteName};
use conway_trees::Error;

const FORMATS: &str = "\
FORMATS
  polynomial   terms in canonical order, signed integer coefficients:
               +1*y[1,2,3]*y[1,4,5] -1*y[1,2,4]*y[1,3,5]
  diagram      circles 2 / circle 1: a b / circle 2: c d / triv u: e l r /
               triv v: e l r / edge u.e v.e / edge a u.l / edge c u.r /
               edge b v.r / edge d v.l   (one statement per line)
  3-graph      one triple per line, repeat a line for a double edge:  1 2 3
  xi element   tree <degree> <tree> * <rational>:  tree 2 1:[2,3] * 1
  mu table     mu <indices> = <integer>:  mu 1 2 3 = 1
  braid        k=<strands>; <letters>, -g for an inverse:  k=3; 1 -2 1 -2 1 -2
  z-poly       space-separated terms c, zK or czK:  1 z2

EXIT CODES
  0 success, 1 a verification found a violation, 2 bad input";

/// Spanning-tree formulas for Conway coefficients and Milnor numbers.
#[derive(Parser)]
#[command(name = "conway-trees", version, after_help = FORMATS)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Oracle,
    Reduced,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Oracle => Engine::Oracle,
            EngineArg::Reduced => Engine::Reduced,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Weights of lifted diagrams.
    Weights,
    /// Reduce every tree to degree 2 first.
    Phi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    PaperExamples,
    Properties,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Kirchhoff polynomial D_m.
    #[command(after_help = "Example: conway-trees gen-dm --m 3")]
    GenDm {
        #[arg(long)]
        m: u32,
    },
    /// Print the Pfaffian-tree polynomial P_m.
    #[command(after_help = "Example: conway-trees gen-pm --m 5")]
    GenPm {
        #[arg(long)]
        m: u32,
    },
    /// Check D_m against every reduced Laplacian determinant.
    #[command(after_help = "Example: conway-trees verify-mtt --m 4\nWithout --m, checks m = 2..=6.")]
    VerifyMtt {
        #[arg(long)]
        m: Option<u32>,
    },
    /// Check P_m^2 against the reduced skew matrix determinants, symbolically
    /// or on random integer tables.
    #[command(after_help = "Example: conway-trees verify-pmtt --m 7 --random 20 --seed 1")]
    VerifyPmtt {
        #[arg(long)]
        m: u32,
        /// Check this many random integer tables instead of the symbolic identity.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate the weight system on a diagram file.
    #[command(after_help = "Example: conway-trees weight --diagram data/two_y.diagram --engine oracle")]
    Weight {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Reduced)]
        engine: EngineArg,
    },
    /// List the ordered splittings of a 3-graph into two spanning trees.
    #[command(after_help = "Example: conway-trees decompose --graph data/p7_monomial.graph")]
    Decompose {
        #[arg(long)]
        graph: PathBuf,
        /// Vertex count; defaults to the largest vertex in the file.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Print F_m^(n) as a polynomial in x (n = 1) or y (n = 2) coordinates.
    #[command(after_help = "Example: conway-trees fpoly --n 2 --m 5")]
    Fpoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = EngineArg::Reduced)]
        engine: EngineArg,
    },
    /// Evaluate F on an element given as trees or as a table of Milnor numbers.
    #[command(after_help = "Example: conway-trees feval --mu data/borromean.mu --m 3")]
    Feval {
        #[arg(long, conflicts_with = "mu", required_unless_present = "mu")]
        xi: Option<PathBuf>,
        /// Table of linking numbers (`mu i j`) or triple numbers (`mu i j k`).
        #[arg(long)]
        mu: Option<PathBuf>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value_t = EngineArg::Reduced)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = Method::Weights)]
        method: Method,
    },
    /// Evaluate G on (xi, tau) with tau one degree above xi.
    #[command(after_help = "Example: conway-trees geval --xi data/empty2.xi --tau data/h1122.xi --m 2")]
    Geval {
        #[arg(long)]
        xi: PathBuf,
        #[arg(long)]
        tau: PathBuf,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value_t = EngineArg::Reduced)]
        engine: EngineArg,
    },
    /// Conway polynomial of a braid closure.
    #[command(after_help = "Example: conway-trees conway --braid \"k=3; 1 -2 1 -2 1 -2\"")]
    Conway {
        #[arg(long)]
        braid: String,
    },
    /// Check that the first Conway coefficients of a braid closure vanish and
    /// the next one is the Kirchhoff polynomial at the linking numbers.
    #[command(after_help = "Example: conway-trees hoste-check --braid \"k=2; 1 1 1 1\"")]
    HosteCheck {
        #[arg(long)]
        braid: String,
    },
    /// Check the skein relation on random braid words.
    #[command(after_help = "Example: conway-trees skein-suite --count 200 --seed 5 --max-strands 4 --max-length 12")]
    SkeinSuite {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_strands: usize,
        #[arg(long, default_value_t = 12)]
        max_length: usize,
    },
    /// Sample diagrams and check that the weight vanishes outside the
    /// exceptional shape and in the wrong parity.
    #[command(after_help = "Example: conway-trees vanish-scan --n 2 --m 3 --samples 1000 --seed 1")]
    VanishScan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Expand the renormalized series z/(e^(z/2) - e^(-z/2)) * nabla(e^(z/2) - e^(-z/2)).
    #[command(after_help = "Example: conway-trees renorm --poly \"1 z2\" --order 8")]
    Renorm {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Run a named batch of checks and print one line per check.
    #[command(after_help = "Example: conway-trees run-suite properties --seed 42")]
    RunSuite {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Verify(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Res = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn verdict(ok: bool, out: String) -> Res {
    if ok {
        Ok(out)
    } else {
        Err(Failure::Verify(out))
    }
}

fn braid(s: &str) -> Result<BraidWord, Failure> {
    Ok(s.parse()?)
}

fn load_xi(path: &Path, m: Option<u32>) -> Result<XiElement, Failure> {
    Ok(parse_xi(&read(path)?, m)?)
}

fn xi_from_mu(path: &Path, m: Option<u32>) -> Result<XiElement, Failure> {
    let table = parse_mu_table(&read(path)?)?;
    let m = m.unwrap_or_else(|| table.max_index());
    match table.index_len() {
        2 => Ok(XiElement::from_linking(|i, j| table.get(&[i, j]), m)),
        3 => Ok(XiElement::from_mu(&table.to_triples(m)?)),
        n => Err(Failure::Input(format!("tables with {n} indices are not supported here; give the element as trees with --xi"))),
    }
}

fn run(cmd: Cmd) -> Res {
    match cmd {
        Cmd::GenDm { m } => Ok(format!("{}\n", kirchhoff_poly(m)?)),
        Cmd::GenPm { m } => Ok(format!("{}\n", pfaffian_tree_poly(m)?)),
        Cmd::VerifyMtt { m } => {
            let range = m.map_or(2..=6, |m| m..=m);
            let bad: Vec<u32> = range.filter_map(|m| mtt_check(m).map(|ok| (!ok).then_some(m)).transpose()).collect::<Result<_, _>>()?;
            verdict(bad.is_empty(), if bad.is_empty() { "OK\n".into() } else { format!("FAIL m={bad:?}\n") })
        }
        Cmd::VerifyPmtt { m, random, seed } => match random {
            None => {
                let rep = pmtt_check(m)?;
                verdict(rep.ok, if rep.ok { "OK\n".into() } else { format!("FAIL signs={:?}\n", rep.signs) })
            }
            Some(count) => {
                let bad = pmtt_random_check(m, count, seed)?;
                verdict(bad == 0, if bad == 0 { format!("OK tables={count}\n") } else { format!("FAIL {bad} of {count} tables\n") })
            }
        },
        Cmd::Weight { diagram, engine } => {
            let d = parse_diagram(&read(&diagram)?)?;
            Ok(format!("{}\n", weight(&d, engine.into())))
        }
        Cmd::Decompose { graph, m } => {
            let g = parse_three_graph(&read(&graph)?, m)?;
            if g.edges().len() + 1 != g.vertices() as usize || g.vertices() % 2 == 0 {
                return Err(Failure::Input(format!("need an even number of triples on odd m = edges + 1, got {} triples on {}", g.edges().len(), g.vertices())));
            }
            let ds = ordered_tree_decompositions(&g);
            let edge = |i: &usize| {
                let [a, b, c] = g.edges()[*i];
                format!("[{a} {b} {c}]")
            };
            let mut out = String::new();
            let mut total = 0i64;
            for d in &ds {
                let first: Vec<String> = d.first.iter().map(edge).collect();
                let second: Vec<String> = d.second.iter().map(edge).collect();
                writeln!(out, "{:+} {} / {}", d.sign, first.join(" "), second.join(" ")).expect("write to string");
                total += i64::from(d.sign);
            }
            let (aut, coeff) = (aut_factor(&g), decomposition_coefficient(&g));
            writeln!(out, "decompositions {}\nsigned-count {total}\nautomorphisms {aut}\ncoefficient {coeff}", ds.len()).expect("write to string");
            Ok(out)
        }
        Cmd::Fpoly { n, m, engine } => Ok(format!("{}\n", f_as_polynomial(n, m, engine.into())?)),
        Cmd::Feval { xi, mu, m, engine, method } => {
            let x = match (xi, mu) {
                (Some(p), _) => load_xi(&p, m)?,
                (None, Some(p)) => xi_from_mu(&p, m)?,
                (None, None) => return Err(Failure::Input("give --xi or --mu".into())),
            };
            let m = m.unwrap_or(x.size());
            let v = match method {
                Method::Weights => f_eval(&x, m as usize, engine.into())?,
                Method::Phi => f_general(&x, m)?,
            };
            Ok(format!("{v}\n"))
        }
        Cmd::Geval { xi, tau, m, engine } => {
            let t = load_xi(&tau, m)?;
            let m = m.unwrap_or(t.size());
            let x = load_xi(&xi, Some(m))?;
            Ok(format!("{}\n", g_eval(&x, &t, m as usize, engine.into())?))
        }
        Cmd::Conway { braid: b } => Ok(format!("{}\n", conway(&braid(&b)?)?)),
        Cmd::HosteCheck { braid: b } => {
            let rep = hoste_check(&braid(&b)?)?;
            let out = format!(
                "components {}\nconway {}\nkirchhoff-at-linking {}\n{}\n",
                rep.components,
                rep.nabla,
                rep.kirchhoff_value,
                if rep.ok { "OK" } else { "FAIL" }
            );
            verdict(rep.ok, out)
        }
        Cmd::SkeinSuite { count, seed, max_strands, max_length } => {
            let rep = skein_suite(count, seed, max_strands, max_length)?;
            let mut out = format!("words {} failures {}\n", rep.words, rep.failures.len());
            for f in &rep.failures {
                writeln!(out, "fail {f}").expect("write to string");
            }
            out.push_str(if rep.ok() { "OK\n" } else { "FAIL\n" });
            verdict(rep.ok(), out)
        }
        Cmd::VanishScan { n, m, samples, seed } => {
            if n == 0 || m == 0 {
                return Err(Failure::Input("need n >= 1 and m >= 1".into()));
            }
            let rep = vanishing_scan(n, m, samples, seed);
            let mut out = format!(
                "samples {}\nexceptional {} nonzero {}\nparity-checked {}\nviolations {}\nparity-violations {}\n",
                rep.samples,
                rep.exceptional,
                rep.exceptional_nonzero,
                rep.parity_checked,
                rep.violations.len(),
                rep.parity_violations.len()
            );
            for v in rep.violations.iter().chain(&rep.parity_violations) {
                writeln!(out, "fail {}", v.replace('\n', "; ")).expect("write to string");
            }
            out.push_str(if rep.ok() { "OK\n" } else { "FAIL\n" });
            verdict(rep.ok(), out)
        }
        Cmd::Renorm { poly, order } => {
            let c = parse_z_poly(&poly)?;
            Ok(format!("{}\n", series_renormalize(&c, order)))
        }
        Cmd::RunSuite { suite, seed } => {
            let name = match suite {
                Suite::PaperExamples => SuiteName::PaperExamples,
                Suite::Properties => SuiteName::Properties,
            };
            let rep = run_suite(name, seed);
            verdict(rep.ok(), rep.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
