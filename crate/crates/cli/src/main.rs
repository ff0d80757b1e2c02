use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use primebound::bound::{lower_bound_isolated, lower_bound_modular, prime_bound_with_report, BoundCase, PrimeBoundResult};
use primebound::construct::{CertificateRecord, Extender, ExtensionCertificate, VerifyPolicy};
use primebound::format::{emit_graph6, parse_edge_list, parse_graph6};
use primebound::mdtree::{CsKind, JsonNode, MdTree, StructureReport};
use primebound::modules::{is_prime, EXHAUSTIVE_CAP};
use primebound::oracle::{brute_force_prime_bound_capped, labeled_graph_sweep, SweepCheck, SEARCH_BITS_CAP};
use primebound::{Graph, VertexSet};

#[derive(Parser)]
#[command(name = "primebound", version, about = "Modular decomposition and minimal prime extensions of graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// How to read the input graph.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    input_format: InputFormat,
    /// Largest host order checked for primality when certifying.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    verify_cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// Edge list when the first line starts with "n ", graph6 otherwise.
    Auto,
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExtendMode {
    /// Exactly as many added vertices as the prime bound.
    Optimal,
    /// Added vertices forming a stable set.
    StableQ,
}

#[derive(Args)]
struct GraphInput {
    /// A graph6 string; read from stdin when absent or "-".
    graph: Option<String>,
    /// Read the graph from a file.
    #[arg(long, conflicts_with = "graph")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Structure report and prime bound.
    Analyze(GraphInput),
    /// Build a certified prime extension.
    Extend {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = ExtendMode::Optimal)]
        mode: ExtendMode,
    },
    /// Re-check a certificate produced by `extend --format json`.
    Verify {
        /// Certificate file; read from stdin when absent or "-".
        certificate: Option<PathBuf>,
    },
    /// Modular decomposition tree.
    Mdtree(GraphInput),
    /// Exhaustive search for the least prime extension.
    Oracle {
        #[command(flatten)]
        input: GraphInput,
        /// Largest number of added vertices to try.
        #[arg(long, default_value_t = 3)]
        p_cap: usize,
        /// Largest number of free adjacency bits per search level.
        #[arg(long, default_value_t = SEARCH_BITS_CAP)]
        search_bits: usize,
    },
    /// Run a named check over every labeled graph of one order.
    Sweep {
        /// Graph order, at most 6.
        #[arg(long)]
        order: usize,
        /// formula-vs-oracle, tree-vs-bruteforce, construction-certification,
        /// complement-symmetry or q-extension.
        #[arg(long)]
        check: SweepCheck,
        /// Worker threads.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
    },
}

/// Output text plus whether the requested checks passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, &outcome.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    if cli.format == Format::Dot && !matches!(cli.command, Command::Mdtree(_)) {
        bail!("dot output is only available for mdtree");
    }
    let policy = VerifyPolicy {
        closure_cap: cli.verify_cap as usize,
        exhaustive_cap: EXHAUSTIVE_CAP.min(cli.verify_cap as usize),
    };
    match &cli.command {
        Command::Analyze(input) => analyze(&read_graph(input, cli.input_format)?, cli.format),
        Command::Extend { input, mode } => extend(&read_graph(input, cli.input_format)?, *mode, policy, cli.format),
        Command::Verify { certificate } => verify(certificate.as_ref(), cli.format),
        Command::Mdtree(input) => mdtree(&read_graph(input, cli.input_format)?, cli.format),
        Command::Oracle { input, p_cap, search_bits } => {
            oracle(&read_graph(input, cli.input_format)?, *p_cap, *search_bits, cli.format)
        }
        Command::Sweep { order, check, jobs } => sweep(*order, *check, *jobs as usize, cli.format),
    }
}

fn read_stdin() -> Result<String> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text).context("cannot read stdin")?;
    Ok(text)
}

fn read_graph(input: &GraphInput, format: InputFormat) -> Result<Graph> {
    let text = match (&input.graph, &input.file) {
        (Some(g), _) if g != "-" => g.clone(),
        (_, Some(path)) => fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?,
        _ => read_stdin()?,
    };
    parse_graph_text(&text, format)
}

fn parse_graph_text(text: &str, format: InputFormat) -> Result<Graph> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let edge_list = match format {
        InputFormat::Auto => first.starts_with("n "),
        InputFormat::Graph6 => false,
        InputFormat::Edgelist => true,
    };
    if edge_list {
        Ok(parse_edge_list(text).context("invalid edge list")?)
    } else {
        Ok(parse_graph6(first).context("invalid graph6")?)
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn set_list(sets: impl IntoIterator<Item = VertexSet>) -> String {
    let parts: Vec<String> = sets.into_iter().map(|s| s.to_string()).collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(" ")
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    graph6: Option<String>,
    edges: usize,
    prime: bool,
    #[serde(flatten)]
    structure: StructureReport,
    prime_bound: PrimeBoundResult,
    out_of_scope: bool,
    lower_bound_modular: Option<usize>,
    lower_bound_isolated: Option<usize>,
}

fn analyze(g: &Graph, format: Format) -> Result<Outcome> {
    let structure = StructureReport::of(g);
    let bound = prime_bound_with_report(g, &structure);
    let report = AnalyzeReport {
        graph6: emit_graph6(g).ok(),
        edges: g.edge_count(),
        prime: is_prime(g),
        lower_bound_modular: lower_bound_modular(&structure).ok(),
        lower_bound_isolated: lower_bound_isolated(&structure).ok(),
        out_of_scope: bound.case.is_out_of_scope(),
        prime_bound: bound,
        structure,
    };
    if format == Format::Json {
        return Ok(Outcome::ok(to_json(&report)?));
    }
    let s = &report.structure;
    let cs = s.max_cs_modules.iter().map(|m| {
        let kind = if m.kind == CsKind::Clique { "clique" } else { "stable" };
        format!("{} ({kind})", m.vertices)
    });
    let cs: Vec<String> = cs.collect();
    let bound_line = match report.prime_bound.case {
        BoundCase::TinyGraph => format!("{} ({:?}, by convention)", report.prime_bound.value, report.prime_bound.case),
        case => format!("{} ({case:?})", report.prime_bound.value),
    };
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    let lines = [
        ("graph6", report.graph6.clone().unwrap_or_else(|| "-".into())),
        ("order", s.order.to_string()),
        ("edges", report.edges.to_string()),
        ("prime", report.prime.to_string()),
        ("alpha_M", s.alpha_m.to_string()),
        ("omega_M", s.omega_m.to_string()),
        ("iota", s.iota.to_string()),
        ("iota(co)", s.iota_complement.to_string()),
        ("M(G)", if cs.is_empty() { "-".into() } else { cs.join(" ") }),
        ("P(G)", set_list(s.prime_modules.iter().copied())),
        ("I(G)", s.residue.to_string()),
        ("p(G)", bound_line),
        ("lower bounds", format!("modular {}, isolated {}", opt(report.lower_bound_modular), opt(report.lower_bound_isolated))),
    ];
    Ok(Outcome::ok(lines.iter().map(|(k, v)| format!("{k:<13}{v}\n")).collect()))
}

fn certificate_text(cert: &ExtensionCertificate, format: Format) -> Result<String> {
    let record = cert.to_record()?;
    if format == Format::Json {
        return to_json(&record);
    }
    Ok(format!(
        "host         {}\nadded        {}\nconstruction {}\nverified     {}\nexhaustive   {}\nstable added {}\n",
        record.host,
        record.added_count,
        serde_json::to_value(record.construction_tag)?.as_str().unwrap_or_default(),
        record.verified_prime,
        record.exhaustive_checked,
        record.stable_added_set,
    ))
}

fn extend(g: &Graph, mode: ExtendMode, policy: VerifyPolicy, format: Format) -> Result<Outcome> {
    let extender = Extender::new(policy);
    let cert = match mode {
        ExtendMode::Optimal => extender.optimal_extension(g),
        ExtendMode::StableQ => extender.q_extension(g),
    }
    .context("construction failed")?;
    Ok(Outcome::ok(certificate_text(&cert, format)?))
}

fn verify(path: Option<&PathBuf>, format: Format) -> Result<Outcome> {
    let text = match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?,
        _ => read_stdin()?,
    };
    let record: CertificateRecord = serde_json::from_str(&text).context("invalid certificate JSON")?;
    let check = record.check()?;
    let passed = check.passed();
    let text = if format == Format::Json {
        to_json(&serde_json::json!({ "passed": passed, "checks": check }))?
    } else {
        format!(
            "extends base   {}\nadded count    {}\nstable flag    {}\nhost prime     {}\n{}\n",
            check.extends_base,
            check.added_count_matches,
            check.stable_flag_matches,
            check.host_prime,
            if passed { "certificate valid" } else { "certificate INVALID" }
        )
    };
    Ok(Outcome { text, passed })
}

fn tree_lines(node: &JsonNode, depth: usize, out: &mut String) {
    out.push_str(&format!("{}{} {}\n", "  ".repeat(depth), node.label.as_str(), node.vertices));
    for c in &node.children {
        tree_lines(c, depth + 1, out);
    }
}

fn mdtree(g: &Graph, format: Format) -> Result<Outcome> {
    let tree = MdTree::new(g)?;
    let text = match format {
        Format::Json => to_json(&tree.to_json())?,
        Format::Dot => tree.to_dot(),
        Format::Human => {
            let mut out = String::new();
            tree_lines(&tree.to_json(), 0, &mut out);
            out
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct OracleReport {
    p_value: Option<usize>,
    exceeds_cap: bool,
    p_cap: usize,
    search_space_size: u64,
    witness: Option<CertificateRecord>,
}

fn oracle(g: &Graph, p_cap: usize, search_bits: usize, format: Format) -> Result<Outcome> {
    let verdict = brute_force_prime_bound_capped(g, p_cap, search_bits)?;
    let report = OracleReport {
        p_value: verdict.p_value,
        exceeds_cap: verdict.p_value.is_none(),
        p_cap,
        search_space_size: verdict.search_space_size,
        witness: verdict.witness.as_ref().map(|w| w.to_record()).transpose()?,
    };
    if format == Format::Json {
        return Ok(Outcome::ok(to_json(&report)?));
    }
    let p = report.p_value.map_or_else(|| format!("exceeds cap {p_cap}"), |p| p.to_string());
    let witness = report.witness.as_ref().map_or("-", |w| w.host.as_str());
    Ok(Outcome::ok(format!("p            {p}\nsearched     {}\nwitness      {witness}\n", report.search_space_size)))
}

fn sweep(order: usize, check: SweepCheck, jobs: usize, format: Format) -> Result<Outcome> {
    let summary = labeled_graph_sweep(order, check, jobs)?;
    let passed = summary.failures.is_empty();
    let mut text = String::new();
    if format == Format::Json {
        for f in &summary.failures {
            text.push_str(&serde_json::to_string(f)?);
            text.push('\n');
        }
        let tail = serde_json::json!({
            "order": summary.order,
            "check": summary.check,
            "graphs": summary.graphs,
            "failures": summary.failures.len(),
        });
        text.push_str(&serde_json::to_string(&tail)?);
        text.push('\n');
    } else {
        for f in &summary.failures {
            text.push_str(&format!("FAIL {} expected {} got {}\n", f.graph6, f.expected, f.actual));
        }
        text.push_str(&format!("{} graphs, {} failures\n", summary.graphs, summary.failures.len()));
    }
    Ok(Outcome { text, passed })
}
