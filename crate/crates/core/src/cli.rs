//! The `starind` command line.
//!
//! Every subcommand writes one JSON object (or CSV) to stdout. Exit codes:
//! 0 on success, 1 on usage or domain errors, 2 when a verification suite
//! finds a violation.
//!
//! CSV output of `inducibility-table` has the fixed columns
//! `k,l,m,alpha,d,opt,inducibility,conjectural`; other commands emit a
//! header of their top-level keys followed by one row.

use crate::construction::{
    build_construction, optimal_params, predict_s, ConstructionMode, ConstructionParams,
};
use crate::density::{count_fast, monte_carlo_s, report_from_count};
use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, VertexSet};
use crate::opt::{solve_opt, taylor_approx};
use crate::rational::{to_decimal, to_f64, to_fraction, Rational};
use crate::search::{exhaustive_max, local_search_restarts, SearchResult};
use crate::star::StarSpec;
use crate::verifier::{
    arithmetic_sweeps, degree_bound_suite, lemma_suite, partition_stats, stability_report,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

const VERSION: &str = env!("CARGO_PKG_VERSION");
const DIGITS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    DegreeBound,
    Lemmas,
    Arithmetic,
    All,
}

/// Parsed command line.
#[derive(Debug, Clone, Parser)]
#[command(name = "starind", version, about = "Inducibility of oriented stars")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format (default: csv for inducibility-table, json otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "STARIND_WORKERS")]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct StarArgs {
    /// Out-leaves of the star.
    #[arg(long)]
    pub k: usize,
    /// In-leaves of the star.
    #[arg(long)]
    pub l: usize,
}

impl StarArgs {
    fn spec(&self) -> Result<StarSpec> {
        StarSpec::new(self.k, self.l)
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Maximize the inducibility objective.
    Opt {
        #[command(flatten)]
        star: StarArgs,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Asymptotic expansion of the optimum compared with the solver.
    Approx {
        #[command(flatten)]
        star: StarArgs,
    },
    /// Solver output for every 1 <= l <= k with m-min <= k + l <= m-max.
    InducibilityTable {
        #[arg(long, default_value_t = 6)]
        m_min: usize,
        #[arg(long)]
        m_max: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Count induced copies in a graph file.
    Density {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        star: StarArgs,
        /// Force Monte-Carlo estimation.
        #[arg(long, conflicts_with = "exact")]
        mc: bool,
        /// Force exact counting.
        #[arg(long)]
        exact: bool,
        /// Sampling switches on automatically above this order when m >= 6.
        #[arg(long, default_value_t = 400)]
        mc_threshold: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Monte-Carlo estimate of s(G).
    Mc {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        star: StarArgs,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Build a near-extremal construction.
    Construct {
        #[command(flatten)]
        star: StarArgs,
        #[arg(long)]
        n: usize,
        /// Share of X (default: the optimizer's value).
        #[arg(long, requires = "d")]
        alpha: Option<f64>,
        /// Out-neighbor share of X vertices (default: the optimizer's value).
        #[arg(long, requires = "alpha")]
        d: Option<f64>,
        /// Deterministic circulant orientation instead of coin flips.
        #[arg(long)]
        balanced: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Extremal search.
    Search {
        #[command(flatten)]
        star: StarArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "local", required_unless_present = "local")]
        exhaustive: bool,
        #[arg(long)]
        local: bool,
        #[arg(long, default_value_t = 1000)]
        moves: usize,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        /// Write the witness graph here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites; exits with 2 on any violation.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Random graphs for the degree-bound suite.
        #[arg(long, default_value_t = 1000)]
        graphs: usize,
        /// Sampled tuples per elementary inequality.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Partition parameters relative to the high-degree set.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        star: StarArgs,
    },
    /// Stability diagnostic.
    Stability {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        star: StarArgs,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
    },
}

fn rational(r: &Rational) -> Value {
    json!({ "decimal": to_decimal(r, DIGITS), "fraction": to_fraction(r) })
}

fn opt_rational(r: &Option<Rational>) -> Value {
    r.as_ref().map_or(Value::Null, rational)
}

fn ids(s: &VertexSet) -> Value {
    Value::from(s.iter().collect::<Vec<_>>())
}

fn spec_json(s: &StarSpec) -> Value {
    json!({ "out_leaves": s.out_leaves(), "in_leaves": s.in_leaves(), "k": s.k(), "l": s.l() })
}

/// Result of one subcommand before formatting.
struct Report {
    body: Value,
    /// Pre-rendered CSV, when the command defines its own layout.
    csv: Option<String>,
    failed: bool,
}

impl Report {
    fn ok(body: Value) -> Self {
        Report {
            body,
            csv: None,
            failed: false,
        }
    }
}

fn with_header(cfg: &RunConfig, name: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), name.into());
    map.insert("version".into(), VERSION.into());
    map.insert("seed".into(), cfg.seed.into());
    if let Value::Object(b) = body {
        map.extend(b);
    }
    Value::Object(map)
}

fn csv_cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn to_csv(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let header: Vec<String> = map.keys().cloned().collect();
            let row: Vec<String> = map.values().map(csv_cell).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
        other => format!("{}\n", csv_cell(other)),
    }
}

fn search_json(r: &SearchResult, spec: &StarSpec) -> Value {
    json!({
        "best_count": r.best_count.to_string(),
        "best_i": rational(&r.best_i),
        "explored": r.explored,
        "method": r.method,
        "n": r.witness.n(),
        "spec": spec_json(spec),
        "witness": r.witness.to_text(),
    })
}

fn dispatch(cfg: &RunConfig) -> Result<Report> {
    let seed = cfg.seed;
    match &cfg.command {
        Command::Opt { star, tol } => {
            let spec = star.spec()?;
            let r = solve_opt(&spec, *tol)?;
            Ok(Report::ok(with_header(
                cfg,
                "opt",
                json!({
                    "spec": spec_json(&spec),
                    "alpha": r.alpha_star,
                    "d": r.d_star,
                    "opt": r.opt_value,
                    "inducibility": r.inducibility,
                    "conjectural": r.conjectural,
                    "tol": r.tol,
                }),
            )))
        }
        Command::Approx { star } => {
            let spec = star.spec()?;
            let t = taylor_approx(&spec)?;
            let r = solve_opt(&spec, 1e-12)?;
            let d = r.d_star.expect("k > l");
            Ok(Report::ok(with_header(
                cfg,
                "approx",
                json!({
                    "spec": spec_json(&spec),
                    "alpha_hat": t.alpha_hat,
                    "d_hat": t.d_hat,
                    "value_hat": t.value_hat,
                    "alpha_star": r.alpha_star,
                    "d_star": d,
                    "opt": r.opt_value,
                    "alpha_delta": t.alpha_hat - r.alpha_star,
                    "d_delta": t.d_hat - d,
                    "value_delta": t.value_hat - r.opt_value,
                    "value_rel_error": (t.value_hat - r.opt_value).abs() / r.opt_value,
                }),
            )))
        }
        Command::InducibilityTable { m_min, m_max, tol } => {
            if m_min > m_max || *m_min < 2 {
                return Err(Error::Range {
                    lo: *m_min,
                    hi: *m_max,
                    min: 2,
                    max: usize::MAX,
                });
            }
            let mut rows = Vec::new();
            let mut csv = String::from("k,l,m,alpha,d,opt,inducibility,conjectural\n");
            for m in *m_min..=*m_max {
                for l in 1..=m / 2 {
                    let k = m - l;
                    if k == 1 {
                        continue;
                    }
                    let r = solve_opt(&StarSpec::new(k, l)?, *tol)?;
                    let d = r.d_star.map_or(String::new(), |d| d.to_string());
                    csv.push_str(&format!(
                        "{k},{l},{m},{},{d},{},{},{}\n",
                        r.alpha_star, r.opt_value, r.inducibility, r.conjectural
                    ));
                    rows.push(json!({
                        "k": k, "l": l, "m": m, "alpha": r.alpha_star, "d": r.d_star,
                        "opt": r.opt_value, "inducibility": r.inducibility, "conjectural": r.conjectural,
                    }));
                }
            }
            let body = with_header(cfg, "inducibility-table", json!({ "rows": rows }));
            Ok(Report {
                body,
                csv: Some(csv),
                failed: false,
            })
        }
        Command::Density {
            input,
            star,
            mc,
            exact,
            mc_threshold,
            samples,
        } => {
            let spec = star.spec()?;
            let g = OrientedGraph::read_file(input)?;
            let sample = *mc || (!*exact && g.n() > *mc_threshold && spec.m() >= 6);
            let body = if sample {
                let e = monte_carlo_s(&g, &spec, *samples, seed);
                json!({ "n": g.n(), "spec": spec_json(&spec), "method": "monte-carlo", "s": e.estimate,
                        "std_error": e.std_error, "samples": e.samples, "hits": e.hits })
            } else {
                let r = report_from_count(count_fast(&g, &spec), g.n(), &spec);
                json!({ "n": g.n(), "spec": spec_json(&spec), "method": "exact", "count": r.count.to_string(),
                        "i": rational(&r.i_density), "s": rational(&r.s_density) })
            };
            Ok(Report::ok(with_header(cfg, "density", body)))
        }
        Command::Mc {
            input,
            star,
            samples,
        } => {
            let spec = star.spec()?;
            let g = OrientedGraph::read_file(input)?;
            let e = monte_carlo_s(&g, &spec, *samples, seed);
            Ok(Report::ok(with_header(
                cfg,
                "mc",
                json!({ "n": g.n(), "spec": spec_json(&spec), "s": e.estimate, "std_error": e.std_error,
                        "samples": e.samples, "hits": e.hits }),
            )))
        }
        Command::Construct {
            star,
            n,
            alpha,
            d,
            balanced,
            out,
        } => {
            let spec = star.spec()?;
            let mode = if *balanced {
                ConstructionMode::Balanced
            } else {
                ConstructionMode::Random { seed }
            };
            let p = match (alpha, d) {
                (Some(a), Some(d)) => ConstructionParams::new(spec, *n, *a, *d, mode)?,
                _ => optimal_params(&spec, *n, mode)?,
            };
            let g = build_construction(&p)?;
            g.write_file(out)?;
            Ok(Report::ok(with_header(
                cfg,
                "construct",
                json!({
                    "spec": spec_json(&spec), "n": p.n, "alpha": p.alpha, "d": p.d,
                    "mode": if *balanced { "balanced" } else { "random" },
                    "x": p.x, "y1": p.y1, "y2": p.y2, "arcs": g.arc_count(),
                    "predicted_s": predict_s(&p)?, "out": out.display().to_string(),
                }),
            )))
        }
        Command::Search {
            star,
            n,
            exhaustive,
            moves,
            restarts,
            out,
            ..
        } => {
            let spec = star.spec()?;
            let body = if *exhaustive {
                let r = exhaustive_max(*n, &spec)?;
                if let Some(path) = out {
                    r.witness.write_file(path)?;
                }
                search_json(&r, &spec)
            } else {
                let (best, runs) = local_search_restarts(&spec, *n, seed, *moves, *restarts)?;
                if let Some(path) = out {
                    runs[best].witness.write_file(path)?;
                }
                let mut b = search_json(&runs[best], &spec);
                let per: Vec<Value> = runs
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        json!({ "seed": seed.wrapping_add(i as u64), "best_count": r.best_count.to_string(),
                                "best_i": rational(&r.best_i), "accepted_moves": r.trace.len() - 1 })
                    })
                    .collect();
                b["explored"] = runs.iter().map(|r| r.explored).sum::<u64>().into();
                b["restarts"] = per.into();
                b
            };
            Ok(Report::ok(with_header(cfg, "search", body)))
        }
        Command::Verify {
            suite,
            graphs,
            samples,
        } => {
            let mut body = Map::new();
            let mut failed = false;
            if matches!(suite, Suite::DegreeBound | Suite::All) {
                let r = degree_bound_suite(seed, *graphs);
                failed |= r.violations > 0;
                body.insert(
                    "degree_bound".into(),
                    serde_json::to_value(r).expect("serializable"),
                );
            }
            if matches!(suite, Suite::Lemmas | Suite::All) {
                let r = lemma_suite(seed, *samples);
                failed |= !r.passed();
                body.insert(
                    "lemmas".into(),
                    serde_json::to_value(r).expect("serializable"),
                );
            }
            if matches!(suite, Suite::Arithmetic | Suite::All) {
                let r = arithmetic_sweeps(6, 64)?;
                failed |= r.failures > 0;
                body.insert(
                    "arithmetic".into(),
                    json!({ "lo": r.lo, "hi": r.hi, "checks": r.checks.len(), "failures": r.failures,
                            "failed": r.checks.iter().filter(|c| !c.holds).collect::<Vec<_>>() }),
                );
            }
            body.insert("passed".into(), (!failed).into());
            Ok(Report {
                body: with_header(cfg, "verify", Value::Object(body)),
                csv: None,
                failed,
            })
        }
        Command::Stats { input, star } => {
            let spec = star.spec()?;
            let g = OrientedGraph::read_file(input)?;
            let s = partition_stats(&g, &spec, None, seed)?;
            Ok(Report::ok(with_header(
                cfg,
                "stats",
                json!({
                    "n": g.n(), "spec": spec_json(&spec), "x": ids(&s.x),
                    "alpha": rational(&s.alpha), "beta": opt_rational(&s.beta), "gamma": opt_rational(&s.gamma),
                    "D": opt_rational(&s.big_d), "S": rational(&s.big_s), "S_approximate": s.s_approximate,
                    "S_radius": s.s_radius, "S1": opt_rational(&s.s1), "S2": opt_rational(&s.s2),
                    "d": opt_rational(&s.d), "d_from_y": opt_rational(&s.d_from_y), "d0": rational(&s.d0),
                    "S_float": to_f64(&s.big_s),
                }),
            )))
        }
        Command::Stability { input, star, eps } => {
            let spec = star.spec()?;
            let g = OrientedGraph::read_file(input)?;
            let r = stability_report(&g, &spec, *eps)?;
            Ok(Report::ok(with_header(
                cfg,
                "stability",
                json!({
                    "n": g.n(), "spec": spec_json(&spec), "epsilon": r.epsilon,
                    "alpha_star": r.alpha_star, "d_star": r.d_star,
                    "x": ids(&r.x), "y1": ids(&r.y1), "y2": ids(&r.y2),
                    "condition_deltas": r.condition_deltas, "violating_counts": r.violating_counts,
                    "satisfied": r.satisfied,
                }),
            )))
        }
    }
}

/// Runs one parsed command, writing its report to `out`. Returns the exit
/// code.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let work = || dispatch(cfg);
    let result = match cfg.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(work),
            Err(_) => Err(Error::Domain {
                name: "workers",
                value: w as f64,
                domain: "a usable thread count",
            }),
        },
        None => work(),
    };
    match result {
        Ok(rep) => {
            let csv_default = matches!(cfg.command, Command::InducibilityTable { .. });
            let format = cfg.format.unwrap_or(if csv_default {
                Format::Csv
            } else {
                Format::Json
            });
            let text = match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&rep.body).expect("serializable")
                ),
                Format::Csv => rep.csv.unwrap_or_else(|| to_csv(&rep.body)),
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            if rep.failed {
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Parses `args` (program name first) and runs the command against the
/// process's stdout and stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(
            &cfg,
            &mut std::io::stdout().lock(),
            &mut std::io::stderr().lock(),
        ),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let cfg = RunConfig::try_parse_from(std::iter::once("starind").chain(args.iter().copied()))
            .unwrap();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&cfg, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn opt_json() {
        let (code, out) = run_args(&["opt", "--k", "2", "--l", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["inducibility"].as_f64().unwrap() - 0.2025).abs() < 1e-9);
        assert_eq!(v["seed"], 0);
        assert_eq!(v["version"], VERSION);
    }

    #[test]
    fn domain_errors_exit_one() {
        assert_eq!(run_args(&["opt", "--k", "1", "--l", "1"]).0, 1);
        assert_eq!(run_args(&["opt", "--k", "2", "--l", "0"]).0, 1);
        assert_eq!(main_with_args(["starind", "opt", "--k", "x"]), 1);
    }

    #[test]
    fn table_csv() {
        let (code, out) = run_args(&["inducibility-table", "--m-max", "10"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "k,l,m,alpha,d,opt,inducibility,conjectural");
        assert_eq!(lines.len() - 1, 3 + 3 + 4 + 4 + 5);
        assert!(lines[1..].iter().all(|l| l.ends_with(",false")));
    }
}
