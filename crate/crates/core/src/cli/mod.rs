//! The `compolab` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 brute-force size cap exceeded.

mod bfile;
mod cache;
mod output;
mod verify;

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::closedform::MemoStore;
use crate::enumerate::{Brute, DEFAULT_BRUTE_CAP};
use crate::graph::LabelledGraph;
use crate::Error;

pub use bfile::{parse_bfile, BfileEntry};
pub use cache::{load_cache, save_cache, CACHE_HEADER};
pub use output::{compute_value, render_records, render_table, table_records, OutputRecord, Table};

#[derive(Parser, Debug)]
#[command(
    name = "compolab",
    version,
    about = "Exact counts of graph compositions and minimax statistics"
)]
pub struct Cli {
    /// Persistent memo file for the recursive composition count.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Largest n accepted by exhaustive enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BRUTE_CAP)]
    pub max_brute_n: usize,
    /// Worker threads for enumeration (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Evaluate the printed closed forms verbatim (for `comp` and `minimax`).
    #[arg(long, global = true)]
    pub paper_literal: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a single value.
    Value(ValueArgs),
    /// Render a lower-triangular table.
    Table(TableArgs),
    /// Run an identity-checking suite.
    Verify(VerifyArgs),
    /// Stream the compositions of a graph file, one per line.
    Enumerate(EnumerateArgs),
    /// Emit a sequence as `index value` lines.
    ExportBfile(ExportArgs),
}

#[derive(Args, Debug)]
pub struct ValueArgs {
    pub kind: ValueKind,
    /// First parameter (number of vertices for graph counts).
    #[arg(long)]
    pub n: usize,
    /// Second parameter (`k` for binomial and stirling2).
    #[arg(long, alias = "k")]
    pub m: Option<usize>,
    /// Block size bound for `kj`.
    #[arg(long)]
    pub j: Option<usize>,
    /// Computation route; defaults to the fastest exact one.
    #[arg(long)]
    pub method: Option<Method>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    pub kind: TableKind,
    /// Largest row index.
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Computation route; defaults to the fastest exact one.
    #[arg(long)]
    pub method: Option<Method>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: Suite,
    /// Largest n checked.
    #[arg(long, alias = "max-n")]
    pub n_max: usize,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    pub graph_file: PathBuf,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    pub kind: SequenceKind,
    /// Inclusive index range `a..b` (empty when `a > b`).
    pub range: String,
    /// Reference b-file to diff against.
    #[arg(long)]
    pub compare: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueKind {
    Comp,
    Minimax,
    Maximin,
    K1,
    Kj,
    Bell,
    Stirling2,
    Binomial,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Comp,
    K1,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Rowsum,
    Threeway,
    Bijection,
    K1,
    Reflection,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    Rowsum,
    K1zero,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Recursive,
    Explicit,
    Brute,
    Formula,
    PaperLiteral,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Recursive => "recursive",
            Method::Explicit => "explicit",
            Method::Brute => "brute",
            Method::Formula => "formula",
            Method::PaperLiteral => "paper-literal",
        }
    }
}

impl ValueKind {
    pub fn name(self) -> &'static str {
        match self {
            ValueKind::Comp => "comp",
            ValueKind::Minimax => "minimax",
            ValueKind::Maximin => "maximin",
            ValueKind::K1 => "k1",
            ValueKind::Kj => "kj",
            ValueKind::Bell => "bell",
            ValueKind::Stirling2 => "stirling2",
            ValueKind::Binomial => "binomial",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug)]
pub enum CliError {
    Compute(Error),
    Usage(String),
    Io(io::Error),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Compute(Error::ResourceLimit { .. }) => 3,
            CliError::Compute(_) | CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Verification(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Per-invocation state shared by the subcommands.
pub struct Context {
    pub memo: MemoStore,
    pub brute: Brute,
    pub paper_literal: bool,
}

impl Context {
    pub fn new(brute: Brute, paper_literal: bool) -> Self {
        Context {
            memo: MemoStore::new(),
            brute,
            paper_literal,
        }
    }
}

/// Runs one parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let brute = Brute::new(cli.max_brute_n).with_workers(cli.workers);
    let mut ctx = Context::new(brute, cli.paper_literal);
    if let Some(path) = &cli.cache {
        ctx.memo = load_cache(path, err);
    }
    let loaded = ctx.memo.len();

    let result = dispatch(cli.command, &mut ctx, out, err);

    if let Some(path) = &cli.cache {
        if ctx.memo.len() != loaded {
            if let Err(e) = save_cache(path, &ctx.memo) {
                writeln!(
                    err,
                    "warning: could not write cache {}: {e}",
                    path.display()
                )?;
            }
        }
    }
    result
}

fn dispatch(
    command: Command,
    ctx: &mut Context,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Value(args) => {
            let has_literal = matches!(
                args.kind,
                ValueKind::Comp | ValueKind::Minimax | ValueKind::Maximin
            );
            let method = if ctx.paper_literal && has_literal {
                Some(Method::PaperLiteral)
            } else {
                args.method
            };
            let record = compute_value(ctx, args.kind, args.n, args.m, args.j, method)?;
            out.write_all(render_records(std::slice::from_ref(&record), args.format).as_bytes())?;
        }
        Command::Table(args) => {
            let method = if ctx.paper_literal && args.kind == TableKind::Comp {
                Some(Method::PaperLiteral)
            } else {
                args.method
            };
            let table = Table::build(ctx, args.kind, args.max_n, method)?;
            out.write_all(render_table(&table, args.format).as_bytes())?;
        }
        Command::Verify(args) => {
            let report = verify::run_suite(ctx, args.suite, args.n_max)?;
            for line in &report.lines {
                writeln!(out, "{line}")?;
            }
            writeln!(out, "{}", report.summary())?;
            if !report.passed() {
                return Err(CliError::Verification(report.summary()));
            }
        }
        Command::Enumerate(args) => {
            let text = std::fs::read_to_string(&args.graph_file).map_err(|e| {
                CliError::Usage(format!("cannot read {}: {e}", args.graph_file.display()))
            })?;
            let g = LabelledGraph::parse(&text)?;
            let mut buf = io::BufWriter::new(out);
            for c in ctx.brute.compositions(&g)? {
                writeln!(buf, "{c}")?;
            }
            buf.flush()?;
        }
        Command::ExportBfile(args) => {
            let (from, to) = bfile::parse_range(&args.range)?;
            let entries = bfile::sequence(ctx, args.kind, from, to)?;
            out.write_all(bfile::render(&entries).as_bytes())?;
            if let Some(path) = args.compare {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                let reference = parse_bfile(&text)?;
                let diffs = bfile::compare(&entries, &reference);
                for d in &diffs {
                    writeln!(err, "{d}")?;
                }
                if !diffs.is_empty() {
                    return Err(CliError::Verification(format!(
                        "{} term(s) differ from {}",
                        diffs.len(),
                        path.display()
                    )));
                }
                writeln!(
                    err,
                    "all {} term(s) match {}",
                    entries.len(),
                    path.display()
                )?;
            }
        }
    }
    Ok(())
}
