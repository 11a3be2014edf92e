//! `starfactor`: girth, star-factors and uniform-weighting membership from
//! the command line.
//!
//! Exit codes: 0 member / success, 1 usage or input error, 2 not a member,
//! 3 vacuous (isolated vertex, no star-factor), 4 star-factor cap exceeded,
//! 5 census disagreements.

use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use starfactor_core::census::{
    cross_validate, generate_connected_girth, generate_unlabeled, render, CensusConfig, ReportFormat,
    BUILTIN_MAX_ORDER,
};
use starfactor_core::report::{classification_report, oracle_report, Report};
use starfactor_core::{
    classify, edge_count_spectrum, enumerate_star_factors, girth, omega_oracle, parse_edge_list,
    parse_graph6_lines, ClassifyError, FactorError, Graph, Verdict, DEFAULT_CAP,
};

const EXIT_NOT_MEMBER: u8 = 2;
const EXIT_VACUOUS: u8 = 3;
const EXIT_CAP: u8 = 4;
const EXIT_DISAGREEMENT: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "starfactor", version, about = "Star-factors and equal-weight edge weightings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the girth (length of a shortest cycle, or "infinite").
    Girth(GraphArgs),
    /// Count star-factors; `--list` prints each one.
    Factors {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        list: bool,
    },
    /// Decide membership by enumerating star-factors and solving the exact LP.
    Oracle(GraphArgs),
    /// Decide membership structurally (girth >= 5), falling back to the oracle.
    Classify(GraphArgs),
    /// Like `classify`, but print only the weighting.
    Witness(GraphArgs),
    /// Cross-validate the classifier against the oracle over many graphs.
    Census(CensusArgs),
    /// Print connected graphs up to isomorphism as graph6, one per line.
    Generate {
        #[arg(short = 'n', value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, default_value_t = 5)]
        girth_min: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Edgelist,
    Graph6,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
    Tsv,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Input file, or '-' for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Input format; defaults to graph6 for .g6/.graph6 files, else edge list.
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
    /// Give up after this many star-factors.
    #[arg(long, env = "STARFACTOR_CAP", default_value_t = DEFAULT_CAP, value_parser = parse_cap)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Vertex counts, `N` or `MIN..MAX` (built-in enumeration covers 1..7).
    #[arg(short = 'n', value_parser = parse_range)]
    n: Option<RangeInclusive<usize>>,
    /// Skip graphs whose girth is below K (forests always kept).
    #[arg(long, default_value_t = 5)]
    girth_min: usize,
    /// Read graphs from a graph6 file instead of enumerating.
    #[arg(long)]
    graph6_file: Option<String>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, env = "STARFACTOR_CAP", default_value_t = DEFAULT_CAP, value_parser = parse_cap)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

fn parse_cap(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("cap must be at least 1".into()),
        Ok(c) => Ok(c),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let r = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => num(s)?..=num(s)?,
    };
    if r.is_empty() {
        return Err(format!("empty range {s}"));
    }
    Ok(r)
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }
}

/// A closed stdout (e.g. piped into `head`) ends the run quietly.
fn io_failure(e: io::Error) -> Failure {
    if e.kind() == io::ErrorKind::BrokenPipe {
        Failure { code: 0, message: String::new() }
    } else {
        Failure::usage(e.to_string())
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text).map_err(|e| Failure::usage(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn is_graph6_path(path: &str) -> bool {
    matches!(Path::new(path).extension().and_then(|e| e.to_str()), Some("g6" | "graph6"))
}

fn load_graph(args: &GraphArgs) -> Result<Graph, Failure> {
    let text = read_input(&args.input)?;
    let format = args.format.unwrap_or(if is_graph6_path(&args.input) {
        InputFormat::Graph6
    } else {
        InputFormat::Edgelist
    });
    match format {
        InputFormat::Edgelist => parse_edge_list(&text).map_err(|e| Failure::usage(format!("{}: {e}", args.input))),
        InputFormat::Graph6 => {
            let mut gs = parse_graph6_lines(&text).map_err(|e| Failure::usage(format!("{}: {e}", args.input)))?;
            match gs.len() {
                1 => Ok(gs.remove(0)),
                0 => Err(Failure::usage(format!("{}: no graph", args.input))),
                k => Err(Failure::usage(format!(
                    "{}: {k} graphs; use `census --graph6-file` for lists",
                    args.input
                ))),
            }
        }
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Member => 0,
        Verdict::NotMember => EXIT_NOT_MEMBER,
        Verdict::Vacuous => EXIT_VACUOUS,
    }
}

fn cap_failure(cap: usize) -> Failure {
    Failure { code: EXIT_CAP, message: format!("more than {cap} star-factors; raise --cap") }
}

fn print_json(out: &mut dyn Write, value: &serde_json::Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))
}

fn print_report_text(out: &mut dyn Write, r: &Report) -> io::Result<()> {
    writeln!(out, "{}", r.headline())?;
    writeln!(out, "  girth: {}", r.girth)?;
    if let Some(route) = r.route {
        writeln!(out, "  route: {route:?}")?;
    }
    if r.parts.len() > 1 {
        for p in &r.parts {
            writeln!(out, "  component {:?}: {:?} ({})", p.vertices, p.verdict, p.case_tag.as_str())?;
        }
    }
    for c in &r.components {
        write!(out, "  core {:?}: {:?} [{}]", c.vertices, c.kind, c.tag.as_str())?;
        match &c.violation {
            Some(v) => writeln!(out, " {v}")?,
            None => writeln!(out)?,
        }
    }
    if let Some(w) = &r.witness {
        writeln!(out, "  weights:")?;
        for e in w {
            writeln!(out, "    {} {} {}", e.u, e.v, weight_text(&e.weight))?;
        }
    }
    if let Some(f) = &r.refutation {
        writeln!(out, "  certificate (coefficients of x_(i+1) - x_1):")?;
        writeln!(out, "    {}", f.certificate.coeffs.join(" "))?;
        writeln!(out, "  forced-zero edges:")?;
        for (e, v) in f.edges.iter().zip(&f.certificate.forced_zero) {
            if v != "0" {
                writeln!(out, "    {} {} {}", e[0], e[1], v)?;
            }
        }
    }
    Ok(())
}

fn weight_text(w: &starfactor_core::report::WeightValue) -> String {
    match w {
        starfactor_core::report::WeightValue::Integer(n) => n.to_string(),
        starfactor_core::report::WeightValue::Rational(s) => s.clone(),
    }
}

fn emit_report(out: &mut dyn Write, r: &Report, output: Output) -> Result<u8, Failure> {
    let io = match output {
        Output::Json => writeln!(out, "{}", r.to_json()),
        Output::Text | Output::Tsv => print_report_text(out, r),
    };
    io.map_err(io_failure)?;
    Ok(verdict_code(r.verdict))
}

fn run_girth(args: &GraphArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let g = load_graph(args)?;
    let gi = girth(&g);
    let io = match args.output {
        Output::Json => print_json(out, &json!({ "girth": gi })),
        _ => writeln!(out, "{gi}"),
    };
    io.map_err(io_failure)?;
    Ok(0)
}

fn run_factors(args: &GraphArgs, list: bool, out: &mut dyn Write) -> Result<u8, Failure> {
    let g = load_graph(args)?;
    let fs = match enumerate_star_factors(&g, args.cap) {
        Ok(fs) => fs,
        Err(FactorError::CapExceeded { cap }) => return Err(cap_failure(cap)),
        Err(FactorError::Vacuous) => Vec::new(),
    };
    let pairs = |f: &starfactor_core::StarFactor| -> Vec<[usize; 2]> {
        f.edges.iter().map(|&e| {
            let (u, v) = g.edge(e);
            [u, v]
        }).collect()
    };
    let spectrum = edge_count_spectrum(&fs);
    let io = match args.output {
        Output::Json => {
            let mut value = json!({ "count": fs.len(), "edgeCounts": spectrum.0 });
            if list {
                value["factors"] = json!(fs.iter().map(pairs).collect::<Vec<_>>());
            }
            print_json(out, &value)
        }
        _ => (|| {
            writeln!(out, "{} star-factor{}", fs.len(), if fs.len() == 1 { "" } else { "s" })?;
            if !fs.is_empty() {
                let counts: Vec<String> = spectrum.0.iter().map(|(k, c)| format!("{k}:{c}")).collect();
                writeln!(out, "  edge counts (edges:factors): {}", counts.join(" "))?;
            }
            if list {
                for f in &fs {
                    let edges: Vec<String> = pairs(f).iter().map(|[u, v]| format!("{u}-{v}")).collect();
                    writeln!(out, "  {}", edges.join(" "))?;
                }
            }
            Ok(())
        })(),
    };
    io.map_err(io_failure)?;
    Ok(if fs.is_empty() { EXIT_VACUOUS } else { 0 })
}

fn run_oracle(args: &GraphArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let g = load_graph(args)?;
    let verdict = omega_oracle(&g, args.cap);
    let report = oracle_report(&g, &verdict).ok_or_else(|| cap_failure(args.cap))?;
    emit_report(out, &report, args.output)
}

fn classified(args: &GraphArgs) -> Result<(Graph, Report), Failure> {
    let g = load_graph(args)?;
    let c = classify(&g, args.cap).map_err(|e| match e {
        ClassifyError::CapExceeded { cap } => cap_failure(cap),
        other => Failure::usage(other.to_string()),
    })?;
    let report = classification_report(&g, &c);
    Ok((g, report))
}

fn run_classify(args: &GraphArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let (_, report) = classified(args)?;
    emit_report(out, &report, args.output)
}

fn run_witness(args: &GraphArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let (_, report) = classified(args)?;
    let Some(w) = &report.witness else {
        return Err(Failure { code: verdict_code(report.verdict), message: format!("no witness: {}", report.headline()) });
    };
    let io = match args.output {
        Output::Json => print_json(out, &json!(w)),
        _ => w.iter().try_for_each(|e| writeln!(out, "{} {} {}", e.u, e.v, weight_text(&e.weight))),
    };
    io.map_err(io_failure)?;
    Ok(0)
}

fn run_census(args: &CensusArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let cfg = CensusConfig {
        cap: args.cap,
        girth_min: args.girth_min,
        workers: args.workers.unwrap_or(CensusConfig::default().workers).max(1),
    };
    let census = match &args.graph6_file {
        Some(path) => {
            let text = read_input(path)?;
            let mut graphs = parse_graph6_lines(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
            if let Some(r) = &args.n {
                graphs.retain(|g| r.contains(&g.order()));
            }
            cross_validate(graphs, cfg)
        }
        None => {
            let r = args.n.clone().unwrap_or(1..=BUILTIN_MAX_ORDER);
            if *r.start() < 1 || *r.end() > BUILTIN_MAX_ORDER {
                return Err(Failure::usage(format!(
                    "built-in enumeration covers 1..{BUILTIN_MAX_ORDER}; use --graph6-file for larger graphs"
                )));
            }
            let mut graphs = Vec::new();
            for n in r {
                graphs.extend(generate_connected_girth(n, cfg.girth_min).map_err(|e| Failure::usage(e.to_string()))?);
            }
            cross_validate(graphs, cfg)
        }
    }
    .map_err(|e| Failure::usage(e.to_string()))?;
    let format = match args.output {
        Output::Text => ReportFormat::Text,
        Output::Json => ReportFormat::Json,
        Output::Tsv => ReportFormat::Tsv,
    };
    out.write_all(render(&census, format).as_bytes()).map_err(io_failure)?;
    Ok(if census.total_disagreements() > 0 { EXIT_DISAGREEMENT } else { 0 })
}

fn run_generate(n: &RangeInclusive<usize>, girth_min: usize, out: &mut dyn Write) -> Result<u8, Failure> {
    if *n.end() > 12 {
        return Err(Failure::usage("generation is exhaustive; orders above 12 are not supported"));
    }
    for k in n.clone() {
        for g in generate_unlabeled(k, girth_min) {
            writeln!(out, "{}", starfactor_core::to_graph6(&g)).map_err(io_failure)?;
        }
    }
    Ok(0)
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    match &cli.command {
        Command::Girth(a) => run_girth(a, out),
        Command::Factors { graph, list } => run_factors(graph, *list, out),
        Command::Oracle(a) => run_oracle(a, out),
        Command::Classify(a) => run_classify(a, out),
        Command::Witness(a) => run_witness(a, out),
        Command::Census(a) => run_census(a, out),
        Command::Generate { n, girth_min } => run_generate(n, *girth_min, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(f) => {
            let _ = out.flush();
            if !f.message.is_empty() {
                eprintln!("starfactor: {}", f.message);
            }
            f.code
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
