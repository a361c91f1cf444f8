//! Command-line front end. All results are JSON on standard output.
//!
//! Exit codes: 0 success, 1 invalid input (or an oracle budget overrun),
//! 2 failed internal self-check, 3 solver and oracle disagree under `verify`.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::digraph::Digraph;
use crate::error::{Error, ErrorKind};
use crate::io::{self, DigraphDoc, PlaneDoc, WeightDoc};
use crate::oracle::{self, OracleBudget};
use crate::plane::{self, PlaneBipartiteGraph};
use crate::sosi::{self, SoSiCertificate, WeightPair};
use crate::Rational;

#[derive(Debug, Parser)]
#[command(
    name = "sosi",
    version,
    about = "Maximum weighted source-sink pairs and Clar-Fries optima"
)]
pub struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum (w_o, w_i)-weight source-sink pair with its circular cover.
    SolveDigraph {
        input: PathBuf,
        /// Separate weight file; overrides weights in the digraph file.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Maximum-weight sink-stable set with a covering family of one-way circuits.
    SinkStable {
        input: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Maximum-weight resonant set with its circular cover.
    Resonant {
        input: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        /// JSON list of node names; maximizes the resonant subset of this set.
        #[arg(long)]
        within: Option<String>,
    },
    /// Clar number of a plane bipartite graph.
    Clar { input: PathBuf },
    /// Fries number of a plane bipartite graph.
    Fries { input: PathBuf },
    /// Double-weighted Clar-Fries optimum using the file's w1/w2 face weights.
    ClarFries { input: PathBuf },
    /// Compare the solvers against exhaustive enumeration.
    Verify {
        /// Digraph or plane-graph file.
        input: Option<PathBuf>,
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Check this many random digraphs instead of a file.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest arc count the oracle may enumerate.
        #[arg(long)]
        budget_arcs: Option<usize>,
    },
}

/// What the binary should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Error(Error),
    Disagree(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

macro_rules! impl_failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Error(e.into())
            }
        }
    )*};
}
impl_failure_from!(
    crate::digraph::DigraphError,
    crate::sosi::SosiError,
    crate::plane::PlaneError,
    crate::oracle::OracleError,
    serde_json::Error
);

fn internal(msg: impl Into<String>) -> Failure {
    Failure::Error(Error::Sosi(sosi::SosiError::Internal(msg.into())))
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: format!("{}\n", json!({ "error": rendered.trim(), "kind": "input" })),
                    stderr: rendered,
                }
            };
        }
    };
    let render = |v: &Value| {
        if cli.pretty {
            serde_json::to_string_pretty(v).expect("JSON values serialize")
        } else {
            v.to_string()
        }
    };
    match execute(&cli.command) {
        Ok(v) => Outcome {
            code: 0,
            stdout: render(&v) + "\n",
            stderr: String::new(),
        },
        Err(Failure::Disagree(v)) => Outcome {
            code: 3,
            stdout: render(&v) + "\n",
            stderr: "solver and oracle disagree\n".into(),
        },
        Err(Failure::Error(e)) => {
            let (code, kind) = match e.kind() {
                ErrorKind::Input => (1, "input"),
                ErrorKind::Budget => (1, "budget"),
                ErrorKind::Internal => (2, "internal"),
            };
            Outcome {
                code,
                stdout: render(&json!({ "error": e.to_string(), "kind": kind })) + "\n",
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn load_digraph(input: &Path, weights: Option<&PathBuf>) -> Result<(Digraph, WeightDoc), Failure> {
    let doc: DigraphDoc = serde_json::from_value(read_json(input)?)?;
    let d = doc.digraph()?;
    let w = match weights {
        Some(p) => serde_json::from_value(read_json(p)?)?,
        None => doc.weights(),
    };
    Ok((d, w))
}

fn load_plane(
    input: &Path,
) -> Result<(PlaneBipartiteGraph, Vec<Rational>, Vec<Rational>), Failure> {
    let doc: PlaneDoc = serde_json::from_value(read_json(input)?)?;
    let g = doc.graph()?;
    let (w1, w2) = doc.face_weights(&g)?;
    Ok((g, w1, w2))
}

fn ensure_checks(d: &Digraph, w: &WeightPair, cert: &SoSiCertificate) -> Result<(), Failure> {
    let checks = cert.check(d, w);
    if checks.all_pass(w.is_integral()) {
        Ok(())
    } else {
        Err(internal(format!(
            "certificate failed self-check: {checks:?}"
        )))
    }
}

fn execute(command: &Command) -> Result<Value, Failure> {
    match command {
        Command::SolveDigraph { input, weights } => {
            let (d, doc) = load_digraph(input, weights.as_ref())?;
            let w = doc.pair(d.names())?;
            let cert = sosi::max_so_si(&d, &w)?;
            ensure_checks(&d, &w, &cert)?;
            Ok(io::certificate_json(&d, &w, &cert))
        }
        Command::SinkStable { input, weights } => {
            let (d, doc) = load_digraph(input, weights.as_ref())?;
            let w = doc.single(d.names())?;
            let res = sosi::sink_stable_max(&d, &w)?;
            let pair = WeightPair::new(vec![Rational::from_integer(0); w.len()], w)
                .map_err(Error::from)?;
            ensure_checks(&d, &pair, &res.certificate)?;
            Ok(io::sink_stable_json(&d, &pair, &res))
        }
        Command::Resonant {
            input,
            weights,
            within,
        } => {
            let (d, doc) = load_digraph(input, weights.as_ref())?;
            let w = match within {
                Some(list) => {
                    let names: Vec<String> = serde_json::from_str(list)?;
                    let mut w = vec![Rational::from_integer(0); d.node_count()];
                    for name in &names {
                        let v = d.node_by_name(name).ok_or_else(|| {
                            Error::Input(format!("unknown node `{name}` in --within"))
                        })?;
                        w[v] = Rational::from_integer(1);
                    }
                    w
                }
                None => doc.single(d.names())?,
            };
            let cert = sosi::resonant_max(&d, &w)?;
            let pair = WeightPair::new(w.clone(), w).map_err(Error::from)?;
            ensure_checks(&d, &pair, &cert)?;
            Ok(io::resonant_json(&d, &pair, &cert))
        }
        Command::Clar { input } | Command::Fries { input } => {
            let (g, _, _) = load_plane(input)?;
            let inner = g.inner_indicator();
            let zero = vec![Rational::from_integer(0); g.face_count()];
            let (res, w2) = if matches!(command, Command::Clar { .. }) {
                (plane::clar_number(&g)?, zero)
            } else {
                (plane::fries_number(&g)?, inner.clone())
            };
            let dual_w = WeightPair::new(w2.clone(), inner.clone()).map_err(Error::from)?;
            ensure_checks(&res.detail.dual.digraph, &dual_w, &res.detail.certificate)?;
            Ok(io::face_number_json(&g, &inner, &w2, &res))
        }
        Command::ClarFries { input } => {
            let (g, w1, w2) = load_plane(input)?;
            let res = plane::solve_clar_fries(&g, &w1, &w2)?;
            let dual_w = WeightPair::new(w2.clone(), w1.clone()).map_err(Error::from)?;
            ensure_checks(&res.dual.digraph, &dual_w, &res.certificate)?;
            Ok(io::clar_fries_json(&g, &w1, &w2, &res))
        }
        Command::Verify {
            input,
            weights,
            random,
            seed,
            budget_arcs,
        } => {
            let mut budget = OracleBudget::default();
            if let Some(b) = budget_arcs {
                budget.max_arcs = *b;
            }
            let report = match (input, random) {
                (Some(path), None) => verify_file(path, weights.as_ref(), budget)?,
                (None, Some(count)) => verify_random(*count, *seed, budget)?,
                _ => {
                    return Err(Error::Input(
                        "verify needs either an input file or --random N".into(),
                    )
                    .into())
                }
            };
            if report["agree"] == json!(true) {
                Ok(report)
            } else {
                Err(Failure::Disagree(report))
            }
        }
    }
}

fn comparison(problem: &str, solver: &Rational, oracle: &Rational) -> Value {
    json!({
        "problem": problem,
        "solver": io::rational_json(solver),
        "oracle": io::rational_json(oracle),
        "agree": solver == oracle,
    })
}

fn summarize(checks: Vec<Value>) -> Value {
    let agree = checks.iter().all(|c| c["agree"] == json!(true));
    json!({ "agree": agree, "checks": checks })
}

fn verify_file(
    path: &Path,
    weights: Option<&PathBuf>,
    budget: OracleBudget,
) -> Result<Value, Failure> {
    let value = read_json(path)?;
    if value.get("S").is_some() {
        let (g, w1, w2) = load_plane(path)?;
        let inner = g.inner_indicator();
        let zero = vec![Rational::from_integer(0); g.face_count()];
        let mut checks = Vec::new();
        for (name, a, b) in [
            ("clar", &inner, &zero),
            ("fries", &inner, &inner),
            ("clar-fries", &w1, &w2),
        ] {
            let solved = plane::solve_clar_fries(&g, a, b)?;
            let brute = oracle::brute_clar_fries(&g, a, b, budget)?;
            checks.push(comparison(name, &solved.value, &brute.value));
        }
        Ok(summarize(checks))
    } else {
        let (d, doc) = load_digraph(path, weights)?;
        let w = doc.pair(d.names())?;
        let cert = sosi::max_so_si(&d, &w)?;
        ensure_checks(&d, &w, &cert)?;
        let brute = oracle::brute_max_so_si(&d, &w, budget)?;
        Ok(summarize(vec![comparison(
            "so-si",
            &cert.value,
            &brute.value,
        )]))
    }
}

fn verify_random(count: usize, seed: u64, budget: OracleBudget) -> Result<Value, Failure> {
    let mut rng = StdRng::seed_from_u64(seed);
    let max_arcs = budget.max_arcs.min(12);
    let mut failures = Vec::new();
    for k in 0..count {
        let n: usize = rng.gen_range(2..=7);
        let m = rng.gen_range(n - 1..=max_arcs.max(n - 1));
        let d = oracle::random_digraph(&mut rng, n, m);
        let w = oracle::random_weights(&mut rng, n, 3);
        let cert = sosi::max_so_si(&d, &w)?;
        ensure_checks(&d, &w, &cert)?;
        let brute = oracle::brute_max_so_si(&d, &w, budget)?;
        if cert.value != brute.value {
            failures.push(json!({
                "instance": k,
                "arcs": d.arcs(),
                "w_o": w.w_o.iter().map(io::rational_json).collect::<Vec<_>>(),
                "w_i": w.w_i.iter().map(io::rational_json).collect::<Vec<_>>(),
                "solver": io::rational_json(&cert.value),
                "oracle": io::rational_json(&brute.value),
            }));
        }
    }
    Ok(json!({
        "agree": failures.is_empty(),
        "instances": count,
        "seed": seed,
        "disagreements": failures,
    }))
}
