//! Command-line front end. Results go to the output stream, diagnostics to
//! the log (stderr).
//!
//! Exit codes: 0 every requested check passed, 1 a check failed, 2 unreadable
//! or malformed input or flags, 3 disconnected graph, 4 any other failure.

use std::fmt::Write as _;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::experiments::{self, ExperimentConfig, Format, Mode};
use crate::jacobian::{Divisor, ReducedJacobian};
use crate::multigraph::{Multigraph, Probability};
use crate::theorems::{self, BoundReport, BoundStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISCONNECTED: i32 = 3;
pub const EXIT_OTHER: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "critgroup", version, about = "Jacobians of multigraphs and two-vertex generators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, invariant factors and cyclicity of Jac(G).
    Jac {
        #[command(flatten)]
        input: GraphInput,
        /// Vertex whose row and column are deleted (default: last).
        #[arg(long)]
        base: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// Order and index of the class of δ_xy.
    Order {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        base: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// Whether δ_xy generates Jac(G), by order and by the gcd criterion.
    Gen {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// Divisibility laws and deletion identity for removing k edges between
    /// x and y (negative k adds edges), plus the lower bounds on G.
    Check {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        pair: Pair,
        /// Default: 1 if x and y are adjacent, otherwise -1.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// Deletion-contraction recurrence and the D_x generator on G/e, for one
    /// edge or (without --x/--y) every edge.
    Contract {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, requires = "y")]
        x: Option<usize>,
        #[arg(long, requires = "x")]
        y: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// Lower bounds on the order of δ over an edge.
    Bounds {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// Monte Carlo estimate over G(n, p); one row per --n value.
    Experiment {
        #[arg(value_enum)]
        mode: ModeArg,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value = "1/2")]
        p: Probability,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
    /// Exhaustive search for a biconnected graph and vertex x with every
    /// |[δ_xy]| < n.
    ScanConjecture {
        #[arg(long, value_delimiter = ',', default_values_t = [3, 4, 5, 6])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
    },
}

#[derive(Args, Debug)]
pub struct GraphInput {
    /// Edge-list file, or '-' for stdin.
    pub graph: String,
}

#[derive(Args, Debug)]
pub struct Pair {
    #[arg(long)]
    pub x: usize,
    #[arg(long)]
    pub y: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    FixedDelta,
    ExistsDelta,
    OrderConjecture,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::FixedDelta => Mode::FixedDelta,
            ModeArg::ExistsDelta => Mode::ExistsDelta,
            ModeArg::OrderConjecture => Mode::OrderConjecture,
        }
    }
}

/// A finished command: its document and whether every check passed.
struct Outcome {
    doc: String,
    passed: bool,
}

impl Outcome {
    fn ok(doc: String) -> Self {
        Outcome { doc, passed: true }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Disconnected => EXIT_DISCONNECTED,
        Error::Parse { .. }
        | Error::VertexOutOfRange { .. }
        | Error::SameVertex(_)
        | Error::NegativeMultiplicity { .. }
        | Error::NoEdge(..)
        | Error::InvalidArgument(_)
        | Error::UnknownFormat(_) => EXIT_USAGE,
        Error::Inconsistent(_) => EXIT_CHECK_FAILED,
        _ => EXIT_OTHER,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, stdin) {
        Ok(outcome) => {
            if let Err(e) = out.write_all(outcome.doc.as_bytes()).and_then(|_| out.flush()) {
                log::error!("writing output: {e}");
                return EXIT_OTHER;
            }
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            log::error!("{e}");
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(std::env::args_os(), &mut io::stdin().lock(), &mut io::stdout().lock())
}

fn read_graph(input: &GraphInput, stdin: &mut dyn Read) -> crate::Result<Multigraph> {
    let mut text = String::new();
    let res = if input.graph == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(&input.graph).map(|t| text = t)
    };
    res.map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", input.graph) })?;
    let g: Multigraph = text.parse()?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(g)
}

fn check_vertex(g: &Multigraph, v: usize) -> crate::Result<()> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(())
}

fn check_pair(g: &Multigraph, pair: &Pair) -> crate::Result<()> {
    check_vertex(g, pair.x)?;
    check_vertex(g, pair.y)?;
    if pair.x == pair.y {
        return Err(Error::SameVertex(pair.x));
    }
    Ok(())
}

fn no_csv(format: OutFormat, cmd: &str) -> crate::Result<()> {
    if format == OutFormat::Csv {
        return Err(Error::UnknownFormat(format!("csv is not available for {cmd}")));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt_law(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "holds",
        Some(false) => "FAILS",
        None => "not asserted",
    }
}

fn execute(command: Command, stdin: &mut dyn Read) -> crate::Result<Outcome> {
    match command {
        Command::Jac { input, base, format } => {
            no_csv(format, "jac")?;
            let g = read_graph(&input, stdin)?;
            let base = base.unwrap_or(g.n().saturating_sub(1));
            check_vertex(&g, base)?;
            let s = ReducedJacobian::new(&g, base)?.structure();
            Ok(Outcome::ok(match format {
                OutFormat::Text => {
                    let factors: Vec<String> = s.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
                    format!(
                        "|Jac(G)| = {}\nJac(G) = {}\nrank {}  cyclic {}\n",
                        s.order,
                        if factors.is_empty() { "0".to_string() } else { factors.join(" x ") },
                        s.rank,
                        yes_no(s.cyclic)
                    )
                }
                _ => to_json(&s),
            }))
        }
        Command::Order { input, pair, base, format } => {
            no_csv(format, "order")?;
            let g = read_graph(&input, stdin)?;
            check_pair(&g, &pair)?;
            let base = base.unwrap_or(g.n() - 1);
            check_vertex(&g, base)?;
            let jac = ReducedJacobian::new(&g, base)?;
            let d = Divisor::delta(g.n(), pair.x, pair.y)?;
            let order = jac.order_of(&d)?;
            let index = jac.index_of(&d)?;
            Ok(Outcome::ok(match format {
                OutFormat::Text => format!("order {order}\nindex {index}\nm {}\n", jac.order()),
                _ => to_json(&json!({
                    "x": pair.x,
                    "y": pair.y,
                    "m": jac.order().to_string(),
                    "order": order.to_string(),
                    "index": index.to_string(),
                })),
            }))
        }
        Command::Gen { input, pair, format } => {
            no_csv(format, "gen")?;
            let g = read_graph(&input, stdin)?;
            check_pair(&g, &pair)?;
            let c = theorems::generator_check(&g, pair.x, pair.y)?;
            let passed = c.consistent();
            if !passed {
                log::error!("generator tests disagree on\n{}", g.to_edge_list());
            }
            let doc = match format {
                OutFormat::Text => format!(
                    "m {}  order {}\ngenerates {}\ngcd test with edge added: {}\ngcd test with edge removed: {}\n",
                    c.m,
                    c.order,
                    yes_no(c.by_order),
                    yes_no(c.by_addition),
                    c.by_removal.map_or("not applicable", yes_no)
                ),
                _ => {
                    let mut v = serde_json::to_value(&c).expect("serializable");
                    v["generates"] = json!(c.by_order);
                    v["consistent"] = json!(passed);
                    to_json(&v)
                }
            };
            Ok(Outcome { doc, passed })
        }
        Command::Check { input, pair, k, format } => {
            no_csv(format, "check")?;
            let g = read_graph(&input, stdin)?;
            check_pair(&g, &pair)?;
            let k = k.unwrap_or(if g.mult(pair.x, pair.y) > 0 { 1 } else { -1 });
            let g1 = g.modify_edges(pair.x, pair.y, k)?;
            let bounds = theorems::bound_report(&g)?;
            let (report, identity, skipped) = if g1.is_connected() {
                (
                    Some(theorems::divisibility_report(&g, pair.x, pair.y, k)?),
                    Some(theorems::deletion_identity(&g, pair.x, pair.y, k)?),
                    None,
                )
            } else {
                (None, None, Some(format!("removing {k} edge(s) between {} and {} disconnects G", pair.x, pair.y)))
            };
            let passed = report.as_ref().is_none_or(|r| r.all_hold())
                && identity.as_ref().is_none_or(|d| d.holds)
                && bounds.all_hold();
            let doc = match format {
                OutFormat::Text => {
                    let mut s = String::new();
                    match (&report, &identity) {
                        (Some(r), Some(d)) => {
                            writeln!(s, "m {}  m1 {}  k {}  C_yy {}", r.m, r.m1, r.k_xy, r.c_yy).unwrap();
                            writeln!(s, "index {}  index1 {}  gcd {}", r.index, r.index1, r.gcd_val).unwrap();
                            writeln!(s, "deletion identity: {}", if d.holds { "holds" } else { "FAILS" }).unwrap();
                            writeln!(s, "index | gcd: {}", opt_law(Some(r.law1_holds && r.law1_g1_holds))).unwrap();
                            writeln!(s, "gcd | index^2: {}", opt_law(r.law2_holds.zip(r.law2_g1_holds).map(|(a, b)| a && b)))
                                .unwrap();
                            writeln!(s, "index = 1 iff gcd = 1: {}", opt_law(r.iff_holds)).unwrap();
                            writeln!(s, "gcd(m, C_yy) = gcd(m, m1): {}", opt_law(r.cyy_gcd_equality)).unwrap();
                        }
                        _ => writeln!(s, "divisibility laws: inapplicable, {}", skipped.as_deref().unwrap_or("")).unwrap(),
                    }
                    s.push_str(&bounds_text(&bounds));
                    s
                }
                _ => to_json(&json!({
                    "divisibility": report,
                    "deletion_identity": identity.as_ref().map(|d| json!({
                        "det_l": d.det_l.to_string(),
                        "det_l1": d.det_l1.to_string(),
                        "k": d.k,
                        "c_yy": d.c_yy.to_string(),
                        "holds": d.holds,
                    })),
                    "inapplicable": skipped,
                    "bounds": bounds,
                    "passed": passed,
                })),
            };
            Ok(Outcome { doc, passed })
        }
        Command::Contract { input, x, y, format } => {
            no_csv(format, "contract")?;
            let g = read_graph(&input, stdin)?;
            let edges: Vec<(usize, usize)> = match (x, y) {
                (Some(x), Some(y)) => {
                    check_pair(&g, &Pair { x, y })?;
                    if g.mult(x, y) == 0 {
                        return Err(Error::NoEdge(x, y));
                    }
                    vec![(x, y)]
                }
                _ => g.edges().map(|(u, v, _)| (u, v)).collect(),
            };
            let mut records = Vec::new();
            let mut passed = true;
            for (x, y) in edges {
                let recurrence = if g.n() <= theorems::BRUTE_FORCE_LIMIT {
                    Some(theorems::contraction_recurrence_check(&g, x, y)?)
                } else {
                    log::warn!("n = {} exceeds {}; skipping spanning tree enumeration", g.n(), theorems::BRUTE_FORCE_LIMIT);
                    None
                };
                let generator = theorems::contraction_generator(&g, x, y)?;
                passed &= recurrence.as_ref().is_none_or(|r| r.holds) && generator.holds();
                records.push((x, y, recurrence, generator));
            }
            let doc = match format {
                OutFormat::Text => {
                    let mut s = String::from("   x    y  T(G)  T(G-e)  T(G/e)  recurrence  coprime  D_x generates\n");
                    for (x, y, r, c) in &records {
                        let (tg, td, tc, ok) = match r {
                            Some(r) => (r.t_graph.to_string(), r.t_deleted.to_string(), r.t_contracted.to_string(), opt_law(Some(r.holds))),
                            None => (c.m.to_string(), "-".into(), c.m_contracted.to_string(), "skipped"),
                        };
                        writeln!(
                            s,
                            "{x:>4} {y:>4}  {tg}  {td}  {tc}  {ok}  {}  {}",
                            yes_no(c.hypothesis),
                            yes_no(c.generates)
                        )
                        .unwrap();
                    }
                    s
                }
                _ => to_json(
                    &records
                        .iter()
                        .map(|(x, y, r, c)| json!({"x": x, "y": y, "recurrence": r, "generator": c}))
                        .collect::<Vec<_>>(),
                ),
            };
            Ok(Outcome { doc, passed })
        }
        Command::Bounds { input, format } => {
            let g = read_graph(&input, stdin)?;
            let report = theorems::bound_report(&g)?;
            let passed = report.all_hold();
            let doc = match format {
                OutFormat::Json => to_json(&report),
                OutFormat::Text => bounds_text(&report),
                OutFormat::Csv => {
                    let mut s = String::from("name,status,bound,x,y,order\n");
                    for c in &report.checks {
                        let (status, _) = status_words(&c.status);
                        let (wx, wy) = c.witness.map_or((String::new(), String::new()), |(a, b)| (a.to_string(), b.to_string()));
                        writeln!(
                            s,
                            "{},{},{},{},{},{}",
                            c.name,
                            status,
                            c.bound.as_deref().unwrap_or(""),
                            wx,
                            wy,
                            c.order.as_ref().map(ToString::to_string).unwrap_or_default()
                        )
                        .unwrap();
                    }
                    s
                }
            };
            Ok(Outcome { doc, passed })
        }
        Command::Experiment { mode, n, p, trials, seed, jobs, format } => {
            let configs: Vec<ExperimentConfig> = n
                .iter()
                .map(|&n| ExperimentConfig::new(mode.into(), n, trials, seed).with_p(p).with_jobs(jobs))
                .collect();
            for c in &configs {
                c.validate()?;
            }
            let results = configs.iter().map(experiments::run).collect::<crate::Result<Vec<_>>>()?;
            let passed = results.iter().all(|r| r.counterexamples.is_empty());
            let fmt = match format {
                OutFormat::Json => Format::Json,
                OutFormat::Csv => Format::Csv,
                OutFormat::Text => Format::Text,
            };
            Ok(Outcome { doc: experiments::emit_results(&results, fmt), passed })
        }
        Command::ScanConjecture { n, jobs, format } => {
            no_csv(format, "scan-conjecture")?;
            if let Some(&bad) = n.iter().find(|&&n| !(3..=7).contains(&n)) {
                return Err(Error::InvalidArgument(format!("scan supports 3 <= n <= 7, got {bad}")));
            }
            let scans = n
                .iter()
                .map(|&n| experiments::scan_order_conjecture(n, jobs))
                .collect::<crate::Result<Vec<_>>>()?;
            let passed = scans.iter().all(|s| s.counterexamples.is_empty());
            let doc = match format {
                OutFormat::Text => {
                    let mut s = String::from("   n    graphs    checks  counterexamples\n");
                    for r in &scans {
                        writeln!(s, "{:>4}  {:>8}  {:>8}  {}", r.n, r.graphs, r.checks, r.counterexamples.len()).unwrap();
                    }
                    for r in &scans {
                        for c in &r.counterexamples {
                            writeln!(s, "counterexample:\n{c}").unwrap();
                        }
                    }
                    s
                }
                _ => to_json(&scans),
            };
            Ok(Outcome { doc, passed })
        }
    }
}

fn status_words(s: &BoundStatus) -> (&'static str, Option<&str>) {
    match s {
        BoundStatus::Holds { attained: true } => ("attained", None),
        BoundStatus::Holds { attained: false } => ("holds", None),
        BoundStatus::Violated => ("VIOLATED", None),
        BoundStatus::Skipped { reason } => ("skipped", Some(reason)),
    }
}

fn bounds_text(r: &BoundReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let (status, reason) = status_words(&c.status);
        write!(s, "{:<24} {:<9}", c.name, status).unwrap();
        if let (Some(b), Some((x, y)), Some(o)) = (&c.bound, c.witness, &c.order) {
            write!(s, " bound {b}  edge ({x}, {y})  order {o}").unwrap();
        }
        if let Some(reason) = reason {
            write!(s, " {reason}").unwrap();
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(args.iter().copied(), &mut input.as_bytes(), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    const C6: &str = "n=6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";

    #[test]
    fn jac_and_order() {
        let (code, out) = run_str(&["critgroup", "jac", "-"], C6);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["m"], "6");
        assert_eq!(v["cyclic"], true);
        let (code, out) = run_str(&["critgroup", "order", "-", "--x", "5", "--y", "0"], C6);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!((v["order"].as_str(), v["index"].as_str()), (Some("6"), Some("1")));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["critgroup", "jac", "-"], "n=3\n0 1\n").0, EXIT_DISCONNECTED);
        assert_eq!(run_str(&["critgroup", "jac", "-"], "n=3\n0 7\n").0, EXIT_USAGE);
        assert_eq!(run_str(&["critgroup", "jac", "-", "--format", "csv"], C6).0, EXIT_USAGE);
        assert_eq!(run_str(&["critgroup", "order", "-", "--x", "1", "--y", "1"], C6).0, EXIT_USAGE);
        assert_eq!(run_str(&["critgroup", "bogus"], C6).0, EXIT_USAGE);
        assert_eq!(run_str(&["critgroup", "experiment", "fixed-delta", "--n", "5", "--trials", "0"], "").0, EXIT_USAGE);
    }

    #[test]
    fn check_with_bridge_reports_bound_failure() {
        // a triangle with a pendant vertex
        let g = "n=4\n0 1\n1 2\n2 0\n2 3\n";
        let (code, out) = run_str(&["critgroup", "check", "-", "--x", "0", "--y", "1"], g);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["divisibility"]["law1_holds"], true);
        assert_eq!(code, EXIT_CHECK_FAILED);
        // removing the bridge disconnects G
        let (_, out) = run_str(&["critgroup", "check", "-", "--x", "2", "--y", "3"], g);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["divisibility"].is_null());
        assert!(v["inapplicable"].is_string());
    }
}
