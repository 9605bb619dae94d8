//! The `tpconv` command line: parse a graph, run one operation, report.
//!
//! Every command prints a human-readable summary by default, or with
//! `--json` a single report object: `command`, `input`, `wall_ms`, `stats`
//! (`n`, `m`, `atoms`) and the command's result fields at top level.
//! Exit codes: 0 success, 1 invalid input, 2 oracle mismatch or failed
//! self-check, 64 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path as FsPath;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::convexity::{is_t_convex, t_convex_hull};
use crate::convexity_number::convexity_number_with;
use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::generate::GraphKind;
use crate::graph::{Format, Graph};
use crate::hull_number::hull_number;
use crate::prime::PrimeGraph;
use crate::vertex_set::VertexSet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "tpconv", version, about = "Triangle-path convexity on undirected graphs")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Read the graph from FILE (edge list, or DIMACS for .dimacs/.col/.clq).
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "generate")]
    graph: Option<String>,
    /// Graph file format: edge-list or dimacs. Overrides the extension.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// Generate the graph instead, e.g. cycle:5, bowtie, random_connected:100:0.05.
    #[arg(long, global = true, value_name = "KIND:PARAMS")]
    generate: Option<String>,
    /// Print one JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step (random graphs without an explicit seed).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel work (oracle comparisons).
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split the graph into atoms along clique minimal separators.
    Decompose,
    /// Check whether a vertex set is t-convex.
    ConvexTest(SetArg),
    /// Compute the t-convex hull of a vertex set.
    Hull(SetArg),
    /// List every t-convex set of a prime graph.
    EnumeratePrime {
        /// Confirm the graph is prime before enumerating.
        #[arg(long)]
        check_prime: bool,
    },
    /// Size of a largest proper t-convex set.
    ConvexityNumber,
    /// Size of a smallest t-hull set.
    HullNumber,
    /// Cross-validate the polynomial algorithms against brute force.
    OracleCompare {
        /// exhaustive:N (all connected labeled graphs on N vertices) or
        /// random:N:COUNT; repeatable. Without it the input graph is used.
        #[arg(long, value_name = "SPEC")]
        corpus: Vec<String>,
    },
    /// Time an algorithm on seeded random graphs and print CSV.
    Bench {
        /// decompose, convex-test, convex-hull, convexity-number or hull-number.
        #[arg(long)]
        algorithm: String,
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Edge probability of the random graphs.
        #[arg(long, default_value_t = 0.05)]
        p: f64,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        reps: u32,
    },
    /// Print the input graph in the chosen format.
    Generate,
}

#[derive(Args, Debug)]
struct SetArg {
    /// Vertex ids separated by commas or spaces; empty for the empty set.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
}

#[derive(Serialize)]
struct Stats {
    n: usize,
    m: usize,
    atoms: Option<usize>,
}

/// What a command produced before it is wrapped into a report.
struct Outcome {
    fields: Value,
    text: String,
    exit: i32,
}

impl Outcome {
    fn ok(fields: Value, text: String) -> Self {
        Outcome { fields, text, exit: EXIT_OK }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => EXIT_MISMATCH,
        _ => EXIT_INVALID,
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let g = &cli.global;
    let (outcome, input, stats, wall_ms) = match &cli.command {
        Command::OracleCompare { corpus } if !corpus.is_empty() => {
            let start = Instant::now();
            let outcome = oracle_compare_corpus(corpus, g.seed, g.threads as usize)?;
            (outcome, corpus.join(" "), None, elapsed_ms(start))
        }
        Command::Bench { algorithm, sizes, p, reps } => {
            let start = Instant::now();
            let csv = bench(algorithm, sizes, *p, *reps as usize, g.seed)?;
            if !g.json {
                write!(out, "{csv}").map_err(io_error)?;
                return Ok(EXIT_OK);
            }
            let rows = bench_rows(&csv);
            let outcome = Outcome::ok(json!({ "rows": rows }), String::new());
            (outcome, format!("bench:{algorithm}"), None, elapsed_ms(start))
        }
        command => {
            let (graph, input) = load_graph(g)?;
            if matches!(command, Command::Generate) && !g.json {
                let format = g.format.unwrap_or(Format::EdgeList);
                write!(out, "{}", graph.serialize(format)).map_err(io_error)?;
                return Ok(EXIT_OK);
            }
            let start = Instant::now();
            let outcome = run_on_graph(command, &graph)?;
            let wall_ms = elapsed_ms(start);
            let atoms = if graph.n() > 0 && graph.is_connected() {
                decompose(&graph).ok().map(|d| d.len())
            } else {
                None
            };
            (outcome, input, Some(Stats { n: graph.n(), m: graph.m(), atoms }), wall_ms)
        }
    };

    if g.json {
        let mut report = Map::new();
        report.insert("command".into(), json!(command_name(&cli.command)));
        report.insert("input".into(), json!(input));
        report.insert("wall_ms".into(), json!(wall_ms));
        report.insert("stats".into(), serde_json::to_value(&stats).expect("stats serialize"));
        if let Value::Object(fields) = outcome.fields {
            report.extend(fields);
        }
        let text = serde_json::to_string(&Value::Object(report)).expect("report serializes");
        writeln!(out, "{text}").map_err(io_error)?;
    } else {
        write!(out, "{}", outcome.text).map_err(io_error)?;
    }
    Ok(outcome.exit)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Decompose => "decompose",
        Command::ConvexTest(_) => "convex-test",
        Command::Hull(_) => "hull",
        Command::EnumeratePrime { .. } => "enumerate-prime",
        Command::ConvexityNumber => "convexity-number",
        Command::HullNumber => "hull-number",
        Command::OracleCompare { .. } => "oracle-compare",
        Command::Bench { .. } => "bench",
        Command::Generate => "generate",
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

fn io_error(e: std::io::Error) -> Error {
    Error::Validation(format!("cannot write output: {e}"))
}

fn sniff_format(path: &str) -> Format {
    match FsPath::new(path).extension().and_then(|e| e.to_str()) {
        Some("dimacs" | "col" | "clq") => Format::Dimacs,
        _ => Format::EdgeList,
    }
}

fn load_graph(g: &GlobalArgs) -> Result<(Graph, String)> {
    match (&g.graph, &g.generate) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Validation(format!("cannot read {path}: {e}")))?;
            let format = g.format.unwrap_or_else(|| sniff_format(path));
            Ok((Graph::parse(&text, format)?, path.clone()))
        }
        (None, Some(spec)) => {
            let kind = GraphKind::parse_seeded(spec, g.seed)?;
            Ok((kind.build()?, kind.to_string()))
        }
        (None, None) => {
            Err(Error::Validation("no input graph: pass --graph FILE or --generate KIND:PARAMS".into()))
        }
    }
}

fn parse_set(g: &Graph, text: &str) -> Result<VertexSet> {
    let mut s = VertexSet::new(g.n());
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| Error::Validation(format!("bad vertex id '{tok}'")))?;
        if v >= g.n() {
            return Err(Error::Validation(format!("vertex {v} out of range for n = {}", g.n())));
        }
        s.insert(v);
    }
    Ok(s)
}

fn fmt_set(s: &VertexSet) -> String {
    let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", ids.join(", "))
}

fn run_on_graph(command: &Command, graph: &Graph) -> Result<Outcome> {
    match command {
        Command::Decompose => {
            let dec = decompose(graph)?;
            let mut text = String::new();
            for (i, a) in dec.atoms().iter().enumerate() {
                let _ = write!(text, "atom {}: {}", i + 1, fmt_set(a));
                if i > 0 {
                    let _ = write!(text, "  R = {}", fmt_set(dec.r_set(i)));
                }
                text.push('\n');
            }
            Ok(Outcome::ok(serde_json::to_value(dec.to_json()).expect("serialize"), text))
        }
        Command::ConvexTest(arg) => {
            let s = parse_set(graph, &arg.set)?;
            let (convex, witness) = is_t_convex(graph, &s);
            let text = match &witness {
                crate::ConvexityWitness::None => format!("{} is t-convex\n", fmt_set(&s)),
                crate::ConvexityWitness::P3Violation { vertex } => {
                    format!("{} is not t-convex: vertex {vertex} has two neighbors in it\n", fmt_set(&s))
                }
                crate::ConvexityWitness::MonoViolation { pair, component } => format!(
                    "{} is not t-convex: {} and {} are joined through component {}\n",
                    fmt_set(&s),
                    pair.0,
                    pair.1,
                    fmt_set(component)
                ),
            };
            Ok(Outcome::ok(json!({ "convex": convex, "witness": witness.to_json() }), text))
        }
        Command::Hull(arg) => {
            let s = parse_set(graph, &arg.set)?;
            let hull = t_convex_hull(graph, &s);
            let text = format!("hull of {} = {}\n", fmt_set(&s), fmt_set(&hull));
            Ok(Outcome::ok(json!({ "hull": hull.to_vec() }), text))
        }
        Command::EnumeratePrime { check_prime } => {
            let prime = if *check_prime { PrimeGraph::checked(graph)? } else { PrimeGraph::assume(graph) };
            let family = prime.enumerate_convex_sets();
            let mut text = format!("{} t-convex sets\n", family.len());
            for s in family.iter() {
                let _ = writeln!(text, "{}", fmt_set(s));
            }
            Ok(Outcome::ok(json!({ "count": family.len(), "sets": family.to_json() }), text))
        }
        Command::ConvexityNumber => {
            if graph.n() < 2 {
                return Err(Error::Validation(
                    "a graph with one vertex has no nonempty proper convex set".into(),
                ));
            }
            let dec = decompose(graph)?;
            let r = convexity_number_with(graph, &dec)?;
            let text = format!("convexity number {}\nwitness {}\n", r.value, fmt_set(&r.witness));
            Ok(Outcome::ok(serde_json::to_value(r.to_json()).expect("serialize"), text))
        }
        Command::HullNumber => {
            let r = hull_number(graph)?;
            let text = format!("hull number {}\nhull set {}\n", r.value, fmt_set(&r.hull_set));
            Ok(Outcome::ok(serde_json::to_value(r.to_json(true)).expect("serialize"), text))
        }
        Command::OracleCompare { .. } => oracle_compare(vec![(String::from("input"), graph.clone())], 1),
        Command::Generate => {
            let edges: Vec<[usize; 2]> = graph.edges().map(|(u, v)| [u, v]).collect();
            Ok(Outcome::ok(json!({ "n": graph.n(), "edges": edges }), String::new()))
        }
        Command::Bench { .. } => unreachable!("bench does not read a graph"),
    }
}

/// Expands `exhaustive:N` and `random:N:COUNT` corpus specs.
pub fn corpus_graphs(specs: &[String], seed: u64) -> Result<Vec<(String, Graph)>> {
    let mut graphs = Vec::new();
    for spec in specs {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = || Error::Validation(format!("cannot parse corpus '{spec}'"));
        let num = |i: usize| parts.get(i).and_then(|t| t.parse::<usize>().ok()).ok_or_else(bad);
        match parts[0] {
            "exhaustive" if parts.len() == 2 => {
                let n = num(1)?;
                if !(1..=6).contains(&n) {
                    return Err(Error::Validation(format!("exhaustive corpus needs 1 <= N <= 6, got {n}")));
                }
                for (k, g) in crate::generate::connected_labeled_graphs(n).into_iter().enumerate() {
                    graphs.push((format!("exhaustive:{n}#{k}"), g));
                }
            }
            "random" if parts.len() == 3 => {
                for kind in crate::generate::random_corpus(num(1)?, num(2)?, seed) {
                    graphs.push((kind.to_string(), kind.build()?));
                }
            }
            _ => return Err(bad()),
        }
    }
    Ok(graphs)
}

fn oracle_compare_corpus(specs: &[String], seed: u64, threads: usize) -> Result<Outcome> {
    oracle_compare(corpus_graphs(specs, seed)?, threads)
}

#[cfg(not(feature = "oracle"))]
fn oracle_compare(_graphs: Vec<(String, Graph)>, _threads: usize) -> Result<Outcome> {
    Err(Error::Validation("this build has no oracle; rebuild with the `oracle` feature".into()))
}

#[cfg(feature = "oracle")]
fn oracle_compare(graphs: Vec<(String, Graph)>, threads: usize) -> Result<Outcome> {
    use crate::oracle::{cross_validate, CrossReport};

    let threads = threads.clamp(1, graphs.len().max(1));
    let chunk = graphs.len().div_ceil(threads).max(1);
    let results: Vec<Result<CrossReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = graphs
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|(_, g)| cross_validate(g)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("oracle worker panicked")).collect()
    });

    let mut total = CrossReport::default();
    let mut mismatches = Vec::new();
    for ((name, _), result) in graphs.iter().zip(results) {
        let rep = result.map_err(|e| Error::Validation(format!("{name}: {e}")))?;
        for m in &rep.mismatches {
            mismatches.push(json!({ "graph": name, "check": m.check.name(), "detail": m.detail }));
        }
        total.merge(rep);
    }
    let comparisons: Map<String, Value> =
        total.comparisons.iter().map(|(c, k)| (c.name().to_string(), json!(k))).collect();
    let clean = mismatches.is_empty();

    let mut text = format!("{} graphs\n", graphs.len());
    for (check, count) in &total.comparisons {
        let bad = total.mismatches.iter().filter(|m| m.check == *check).count();
        let _ = writeln!(text, "{:<20} {count:>9} comparisons, {bad} mismatches", check.name());
    }
    for m in &mismatches {
        let _ = writeln!(text, "MISMATCH {} [{}]: {}", m["graph"], m["check"], m["detail"]);
    }
    let _ = writeln!(text, "{}", if clean { "clean" } else { "MISMATCHES FOUND" });
    let fields = json!({
        "graphs": graphs.len(),
        "comparisons": comparisons,
        "mismatches": mismatches,
        "clean": clean,
    });
    Ok(Outcome { fields, text, exit: if clean { EXIT_OK } else { EXIT_MISMATCH } })
}

pub const BENCH_HEADER: &str = "algorithm,n,m,median_ms,reps";

/// Median wall time of `algorithm` over `reps` runs on
/// `random_connected(n, p, seed)` for each size, as CSV.
pub fn bench(algorithm: &str, sizes: &[usize], p: f64, reps: usize, seed: u64) -> Result<String> {
    let mut csv = format!("{BENCH_HEADER}\n");
    for &n in sizes {
        let g = GraphKind::random_connected(n, p, seed).build()?;
        let probe = bench_probe(&g, seed);
        let mut times = Vec::with_capacity(reps);
        for _ in 0..reps {
            let start = Instant::now();
            match algorithm {
                "decompose" => drop(decompose(&g)?),
                "convex-test" => drop(is_t_convex(&g, &probe)),
                "convex-hull" => drop(t_convex_hull(&g, &probe)),
                "convexity-number" => drop(crate::convexity_number::convexity_number(&g)?),
                "hull-number" => drop(hull_number(&g)?),
                other => return Err(Error::Validation(format!("unknown bench algorithm '{other}'"))),
            }
            times.push(elapsed_ms(start));
        }
        times.sort_by(f64::total_cmp);
        let median =
            if reps % 2 == 1 { times[reps / 2] } else { (times[reps / 2 - 1] + times[reps / 2]) / 2.0 };
        let _ = writeln!(csv, "{algorithm},{n},{},{median:.3},{reps}", g.m());
    }
    Ok(csv)
}

/// A seeded pair of distinct vertices, the input for the set-based benches.
fn bench_probe(g: &Graph, seed: u64) -> VertexSet {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut s = VertexSet::new(g.n());
    if g.n() >= 2 {
        while s.len() < 2 {
            s.insert(rng.gen_range(0..g.n()));
        }
    }
    s
}

fn bench_rows(csv: &str) -> Vec<Value> {
    csv.lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            json!({
                "algorithm": f[0],
                "n": f[1].parse::<usize>().unwrap_or_default(),
                "m": f[2].parse::<usize>().unwrap_or_default(),
                "median_ms": f[3].parse::<f64>().unwrap_or_default(),
                "reps": f[4].parse::<usize>().unwrap_or_default(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("tpconv").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn format_sniffing() {
        assert_eq!(sniff_format("g.dimacs"), Format::Dimacs);
        assert_eq!(sniff_format("g.col"), Format::Dimacs);
        assert_eq!(sniff_format("g.txt"), Format::EdgeList);
        assert_eq!(sniff_format("g"), Format::EdgeList);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["hull-number", "--generate", "cycle:5"]).0, EXIT_OK);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["hull-number", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
        assert_eq!(run_args(&["hull-number"]).0, EXIT_INVALID);
        assert_eq!(run_args(&["hull", "--generate", "cycle:5", "--set", "9"]).0, EXIT_INVALID);
        assert_eq!(run_args(&["enumerate-prime", "--check-prime", "--generate", "bowtie"]).0, EXIT_INVALID);
        assert_eq!(run_args(&["convexity-number", "--generate", "complete:1"]).0, EXIT_INVALID);
    }

    #[test]
    fn bench_shape() {
        let csv = bench("convexity-number", &[10, 20, 30], 0.3, 1, 0).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], BENCH_HEADER);
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("convexity-number,10,"));
        assert!(bench("nope", &[5], 0.5, 1, 0).is_err());
    }

    #[test]
    fn corpus_specs() {
        assert_eq!(corpus_graphs(&["exhaustive:4".into()], 0).unwrap().len(), 38);
        assert_eq!(corpus_graphs(&["random:6:7".into()], 0).unwrap().len(), 7);
        assert!(corpus_graphs(&["exhaustive:9".into()], 0).is_err());
        assert!(corpus_graphs(&["random:6".into()], 0).is_err());
    }
}
