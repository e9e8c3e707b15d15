//! Command-line front end: compute rank sequences, classify unimodality,
//! enumerate merges, tabulate counts, export index-value files, and run
//! the cross-check suites.
//!
//! Exit codes are script-friendly: 0 for success (and unimodal verdicts),
//! 1 for non-unimodal verdicts or failed checks, 2 for invalid input or
//! refused cost bounds, 3 for an internal cross-check mismatch.

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::broom::{
    classify_closed, classify_direct, rank_closed, rank_convolution, BroomPair,
    UnimodalityVerdict,
};
use crate::enumeration::{
    b_closed, count_table, enumerate_quadruples, t_bruteforce, BoundError, CostBounds, CountTable,
};
use crate::oracle::{broom_tree, merge, subtree_polynomial};
use crate::seqcore::IntSeq;
use crate::verify::{self, Level};

/// Largest vertex count accepted by the closed-form sequence export; keeps
/// every emitted count well inside u64.
const MAX_CLOSED_EXPORT: u32 = 100_000;

#[derive(Parser)]
#[command(
    name = "broomrank",
    version,
    about = "Rank sequences of subtree posets of merged brooms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the rank sequence of a merged broom
    Rank(RankArgs),
    /// Decide whether the rank sequence is unimodal
    Classify(ClassifyArgs),
    /// List merged brooms with a given vertex count
    Enumerate(EnumerateArgs),
    /// Tabulate counts per vertex count, with cross-checks
    Count(CountArgs),
    /// Export a counting sequence as index-value lines
    Bfile(BfileArgs),
    /// Run the cross-check suites
    Verify(VerifyArgs),
}

/// The merged broom under discussion, spelled out flag by flag so the two
/// brooms cannot be transposed by accident.
#[derive(Args)]
struct PairArgs {
    /// Pendant leaves of the first broom
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
    m: u32,
    /// Handle length of the first broom
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=1_000_000))]
    p: u32,
    /// Pendant leaves of the second broom
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
    n: u32,
    /// Handle length of the second broom
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=1_000_000))]
    q: u32,
}

impl PairArgs {
    /// Builds the canonical pair and echoes it to stderr so any applied
    /// swap is visible.
    fn canonical_pair(&self) -> Result<BroomPair, String> {
        let pair = BroomPair::new(self.m, self.p, self.n, self.q).map_err(|e| e.to_string())?;
        eprintln!("pair: {pair}");
        Ok(pair)
    }
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Computation route
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    method: Method,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Vertex count of the merged trees
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=1_000_000))]
    i: u32,
    /// Keep only the trees whose rank sequence is not unimodal
    #[arg(long)]
    non_unimodal_only: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

#[derive(Args)]
struct CountArgs {
    /// Largest vertex count to tabulate
    #[arg(long, default_value_t = 22, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
    max_i: u32,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,
}

#[derive(Args)]
struct BfileArgs {
    /// Which counting sequence to export
    #[arg(long, value_enum)]
    sequence: SequenceKind,
    /// Largest index to emit
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
    max_i: u32,
    /// First index to emit
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
    from: u32,
}

#[derive(Args)]
struct VerifyArgs {
    /// Sweep depth
    #[arg(long, value_enum, default_value_t = VerifyLevel::Quick)]
    level: VerifyLevel,
    /// Worker threads for the pair sweeps
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=256))]
    jobs: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Piecewise binomial formula
    Closed,
    /// Convolution of the two broom sequences
    Conv,
    /// Subtree dynamic program on the explicit tree
    Oracle,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Conv => "conv",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Human-readable text
    Plain,
    /// One JSON document
    Json,
    /// Comma-separated values with a header row
    Csv,
    /// "index value" lines
    Bfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SequenceKind {
    /// Non-unimodal merges per vertex count (closed form)
    B,
    /// All merges per vertex count (enumeration)
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyLevel {
    Quick,
    Full,
}

#[derive(Serialize)]
struct PairDto {
    m: u32,
    p: u32,
    n: u32,
    q: u32,
}

impl From<&BroomPair> for PairDto {
    fn from(pair: &BroomPair) -> Self {
        Self {
            m: pair.m(),
            p: pair.p(),
            n: pair.n(),
            q: pair.q(),
        }
    }
}

#[derive(Serialize)]
struct RankDto {
    pair: PairDto,
    method: &'static str,
    offset: usize,
    values: Vec<String>,
}

#[derive(Serialize)]
struct ClassifyDto {
    pair: PairDto,
    unimodal: bool,
    condition: Option<&'static str>,
    condition_expr: Option<&'static str>,
    witness: Option<[usize; 3]>,
}

#[derive(Serialize)]
struct EnumerateDto {
    vertices: u32,
    non_unimodal_only: bool,
    pairs: Vec<PairDto>,
}

#[derive(Serialize)]
struct CountRowDto {
    i: u32,
    a: u64,
    b_closed: u64,
    b_brute: u64,
    t_brute: u64,
    b_agree: bool,
    t_reference: Option<u64>,
    t_agree: Option<bool>,
}

/// Parses arguments, dispatches, and maps outcomes to exit codes.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let bounds = match bounds_from_env() {
        Ok(bounds) => bounds,
        Err(message) => return usage_error(message),
    };
    match cli.command {
        Command::Rank(args) => cmd_rank(&args, &bounds),
        Command::Classify(args) => cmd_classify(&args),
        Command::Enumerate(args) => cmd_enumerate(&args, &bounds),
        Command::Count(args) => cmd_count(&args, &bounds),
        Command::Bfile(args) => cmd_bfile(&args, &bounds),
        Command::Verify(args) => cmd_verify(&args),
    }
}

/// Reads the BROOMRANK_MAX_I override for the tree-enumeration bound.
fn bounds_from_env() -> Result<CostBounds, String> {
    let mut bounds = CostBounds::default();
    match std::env::var("BROOMRANK_MAX_I") {
        Ok(raw) => {
            let parsed: u32 = raw
                .trim()
                .parse()
                .map_err(|_| format!("BROOMRANK_MAX_I must be a positive integer, got {raw:?}"))?;
            if parsed == 0 {
                return Err("BROOMRANK_MAX_I must be positive".to_string());
            }
            bounds.max_tree_vertices = parsed;
        }
        Err(std::env::VarError::NotPresent) => {}
        Err(std::env::VarError::NotUnicode(_)) => {
            return Err("BROOMRANK_MAX_I is not valid unicode".to_string());
        }
    }
    Ok(bounds)
}

fn usage_error(message: impl fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn print_json(dto: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string(dto).expect("output types serialize without error")
    );
}

fn cmd_rank(args: &RankArgs, bounds: &CostBounds) -> ExitCode {
    let pair = match args.pair.canonical_pair() {
        Ok(pair) => pair,
        Err(message) => return usage_error(message),
    };
    if args.method == Method::Oracle && pair.vertex_count() > bounds.max_tree_vertices {
        return usage_error(BoundError::TreeVertices {
            vertices: pair.vertex_count(),
            bound: bounds.max_tree_vertices,
        });
    }
    let rank = match args.method {
        Method::Closed => rank_closed(&pair),
        Method::Conv => rank_convolution(&pair),
        Method::Oracle => {
            let tree = merge(
                &broom_tree(pair.m(), pair.p()),
                &broom_tree(pair.n(), pair.q()),
            );
            subtree_polynomial(&tree)
        }
    };
    match args.format {
        OutputFormat::Plain => println!("{rank}"),
        OutputFormat::Json => print_json(&RankDto {
            pair: PairDto::from(&pair),
            method: args.method.name(),
            offset: 1,
            values: rank.values().iter().map(|v| v.to_string()).collect(),
        }),
        OutputFormat::Csv => println!("{}", render_indexed_csv("i,r", rank.as_seq())),
        OutputFormat::Bfile => println!("{}", render_indexed_bfile(rank.as_seq())),
    }
    ExitCode::SUCCESS
}

/// Runs both classifiers; a verdict disagreement is an internal error.
fn cross_checked_verdict(pair: &BroomPair) -> Result<UnimodalityVerdict, String> {
    let by_cases = classify_closed(pair);
    let by_sequence = classify_direct(pair);
    if by_cases.unimodal != by_sequence.unimodal {
        return Err(format!(
            "internal error: case criterion says unimodal={}, computed sequence says unimodal={} for {pair}",
            by_cases.unimodal, by_sequence.unimodal
        ));
    }
    Ok(UnimodalityVerdict {
        unimodal: by_cases.unimodal,
        witness: by_sequence.witness,
        matched_condition: by_cases.matched_condition,
    })
}

fn render_classify_plain(verdict: &UnimodalityVerdict) -> String {
    if verdict.unimodal {
        match verdict.matched_condition {
            Some(condition) => format!("unimodal condition={condition}"),
            None => "unimodal".to_string(),
        }
    } else {
        match verdict.witness {
            Some((i, j, l)) => format!("not-unimodal witness=({i},{j},{l})"),
            None => "not-unimodal".to_string(),
        }
    }
}

fn render_classify_csv(verdict: &UnimodalityVerdict) -> String {
    let condition = verdict
        .matched_condition
        .map_or("", |condition| condition.numeral());
    let (i, j, l) = match verdict.witness {
        Some((i, j, l)) => (i.to_string(), j.to_string(), l.to_string()),
        None => (String::new(), String::new(), String::new()),
    };
    format!(
        "unimodal,condition,witness_i,witness_j,witness_l\n{},{condition},{i},{j},{l}",
        verdict.unimodal
    )
}

fn cmd_classify(args: &ClassifyArgs) -> ExitCode {
    let pair = match args.pair.canonical_pair() {
        Ok(pair) => pair,
        Err(message) => return usage_error(message),
    };
    let verdict = match cross_checked_verdict(&pair) {
        Ok(verdict) => verdict,
        Err(message) => {
            eprintln!("{message}");
            return ExitCode::from(3);
        }
    };
    match args.format {
        OutputFormat::Plain => println!("{}", render_classify_plain(&verdict)),
        OutputFormat::Json => print_json(&ClassifyDto {
            pair: PairDto::from(&pair),
            unimodal: verdict.unimodal,
            condition: verdict.matched_condition.map(|c| c.numeral()),
            condition_expr: verdict.matched_condition.map(|c| c.expr()),
            witness: verdict.witness.map(|(i, j, l)| [i, j, l]),
        }),
        OutputFormat::Csv => println!("{}", render_classify_csv(&verdict)),
        OutputFormat::Bfile => {
            return usage_error("classify has no index-value rendering; use plain, json, or csv")
        }
    }
    if verdict.unimodal {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_enumerate(args: &EnumerateArgs, bounds: &CostBounds) -> ExitCode {
    if args.i > bounds.max_tree_vertices {
        return usage_error(BoundError::TreeVertices {
            vertices: args.i,
            bound: bounds.max_tree_vertices,
        });
    }
    let pairs = enumerate_quadruples(args.i, args.non_unimodal_only);
    match args.format {
        OutputFormat::Plain => {
            for pair in &pairs {
                println!("{pair}");
            }
        }
        OutputFormat::Json => print_json(&EnumerateDto {
            vertices: args.i,
            non_unimodal_only: args.non_unimodal_only,
            pairs: pairs.iter().map(PairDto::from).collect(),
        }),
        OutputFormat::Csv => {
            println!("m,p,n,q");
            for pair in &pairs {
                println!("{},{},{},{}", pair.m(), pair.p(), pair.n(), pair.q());
            }
        }
        OutputFormat::Bfile => {
            return usage_error("enumerate has no index-value rendering; use plain, json, or csv")
        }
    }
    ExitCode::SUCCESS
}

fn render_count_csv(table: &CountTable) -> String {
    let mut lines = vec!["i,a,b_closed,b_brute,t_brute,b_agree,t_reference,t_agree".to_string()];
    for row in &table.rows {
        lines.push(format!(
            "{},{},{},{},{},{},{},{}",
            row.vertices,
            row.a,
            row.b_closed,
            row.b_brute,
            row.t_brute,
            row.b_agree,
            row.t_reference.map_or(String::new(), |v| v.to_string()),
            row.t_agree.map_or(String::new(), |v| v.to_string()),
        ));
    }
    lines.join("\n")
}

fn render_count_plain(table: &CountTable) -> String {
    let mut lines = vec![format!(
        "{:>4} {:>6} {:>9} {:>8} {:>8} {:>8} {:>12} {:>8}",
        "i", "a", "b_closed", "b_brute", "t_brute", "b_agree", "t_reference", "t_agree"
    )];
    for row in &table.rows {
        lines.push(format!(
            "{:>4} {:>6} {:>9} {:>8} {:>8} {:>8} {:>12} {:>8}",
            row.vertices,
            row.a,
            row.b_closed,
            row.b_brute,
            row.t_brute,
            if row.b_agree { "yes" } else { "no" },
            row.t_reference
                .map_or("-".to_string(), |v| v.to_string()),
            row.t_agree
                .map_or("-", |agree| if agree { "yes" } else { "no" }),
        ));
    }
    for row in &table.rows {
        if !row.b_agree {
            lines.push(format!(
                "note: closed form gives {} at {} vertices, enumeration gives {}",
                row.b_closed, row.vertices, row.b_brute
            ));
        }
        if row.t_agree == Some(false) {
            lines.push(format!(
                "note: enumeration gives {} total trees at {} vertices; the bundled reference says {}",
                row.t_brute,
                row.vertices,
                row.t_reference.expect("t_agree implies a reference")
            ));
        }
    }
    lines.join("\n")
}

fn cmd_count(args: &CountArgs, bounds: &CostBounds) -> ExitCode {
    let table = match count_table(args.max_i, bounds) {
        Ok(table) => table,
        Err(error) => return usage_error(error),
    };
    match args.format {
        OutputFormat::Plain => println!("{}", render_count_plain(&table)),
        OutputFormat::Csv => println!("{}", render_count_csv(&table)),
        OutputFormat::Json => {
            let rows: Vec<CountRowDto> = table
                .rows
                .iter()
                .map(|row| CountRowDto {
                    i: row.vertices,
                    a: row.a,
                    b_closed: row.b_closed,
                    b_brute: row.b_brute,
                    t_brute: row.t_brute,
                    b_agree: row.b_agree,
                    t_reference: row.t_reference,
                    t_agree: row.t_agree,
                })
                .collect();
            print_json(&rows);
        }
        OutputFormat::Bfile => {
            return usage_error("count exports one sequence at a time; use the bfile subcommand")
        }
    }
    ExitCode::SUCCESS
}

fn cmd_bfile(args: &BfileArgs, bounds: &CostBounds) -> ExitCode {
    if args.from > args.max_i {
        return usage_error(format!(
            "empty range: --from {} is past --max-i {}",
            args.from, args.max_i
        ));
    }
    match args.sequence {
        SequenceKind::B => {
            if args.max_i > MAX_CLOSED_EXPORT {
                return usage_error(format!(
                    "index {} exceeds the export limit {MAX_CLOSED_EXPORT}",
                    args.max_i
                ));
            }
            for i in args.from..=args.max_i {
                println!("{i} {}", b_closed(i));
            }
        }
        SequenceKind::T => {
            if args.max_i > bounds.max_tree_vertices {
                return usage_error(BoundError::TreeVertices {
                    vertices: args.max_i,
                    bound: bounds.max_tree_vertices,
                });
            }
            for i in args.from..=args.max_i {
                let total = t_bruteforce(i, bounds).expect("bound checked above");
                println!("{i} {total}");
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let level = match args.level {
        VerifyLevel::Quick => Level::Quick,
        VerifyLevel::Full => Level::Full,
    };
    let report = verify::run(level, args.jobs as usize);
    for check in &report.checks {
        match &check.failure {
            None => println!(
                "PASS {} ({} cases, {} ms)",
                check.name, check.cases, check.elapsed_ms
            ),
            Some(counterexample) => println!(
                "FAIL {} ({} cases, {} ms): {counterexample}",
                check.name, check.cases, check.elapsed_ms
            ),
        }
        if let Some(note) = &check.note {
            println!("  note: {note}");
        }
    }
    let failed = report.checks.iter().filter(|c| !c.passed()).count();
    if failed == 0 {
        println!("{} checks passed", report.checks.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} checks failed", report.checks.len());
        ExitCode::from(1)
    }
}

fn render_indexed_csv(header: &str, seq: &IntSeq) -> String {
    let mut lines = vec![header.to_string()];
    for (index, value) in seq.iter() {
        lines.push(format!("{index},{value}"));
    }
    lines.join("\n")
}

fn render_indexed_bfile(seq: &IntSeq) -> String {
    let lines: Vec<String> = seq
        .iter()
        .map(|(index, value)| format!("{index} {value}"))
        .collect();
    lines.join("\n")
}
