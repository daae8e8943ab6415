//! Command line: `convert`, `validate`, `query`, `stats` and `serve`.
//!
//! Exit codes: 0 success, 1 fatal error or bad usage, 2 finished with
//! skipped records or invalid samples.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use mcsbench_core::adapters::{detect_benchmark, Detection, MappingManifest};
use mcsbench_core::jsonld::JsonLdOptions;
use mcsbench_core::model::SplitKind;
use mcsbench_core::query::{evaluate, parse_query_with, substitute_task_iri};

use crate::corpus::{
    convert_split, convert_tree, labels_file_for, load_corpus_dir, load_raw_tree, read_corpus_dir, ConvertOptions,
    ConvertOutcome, LoadedCorpus, OutputFormat,
};
use crate::manifests;
use crate::output::{compute_stat, render_bindings, Format, StatKind};
use crate::server::{self, ServerConfig, DEFAULT_BIND};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FATAL: i32 = 1;
pub const EXIT_WARNINGS: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mcsbench",
    version,
    about = "Convert, validate, query and serve commonsense QA benchmarks as linked data"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert native benchmark files into JSON-LD and N-Triples.
    Convert(ConvertArgs),
    /// Check every document of a converted corpus.
    Validate(ValidateArgs),
    /// Run a SPARQL query over a corpus.
    Query(QueryArgs),
    /// Print corpus statistics.
    Stats(StatsArgs),
    /// Serve the JSON API.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
struct ConvertArgs {
    /// Manifest file or shipped manifest name; detected from the input when omitted.
    #[arg(long)]
    manifest: Option<String>,
    #[arg(long, default_value = "train")]
    split: String,
    /// Native samples file (JSON Lines).
    #[arg(long, conflicts_with = "raw", required_unless_present = "raw")]
    input: Option<PathBuf>,
    /// Labels file; defaults to `{split}-labels.*` next to the input.
    #[arg(long, requires = "input")]
    labels: Option<PathBuf>,
    /// Raw tree laid out as `{benchmark}/{split}.jsonl`.
    #[arg(long)]
    raw: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Jsonld)]
    format: OutputFormat,
    /// Overwrite existing files whose content differs.
    #[arg(long)]
    force: bool,
    /// Value written to each document's `@context`.
    #[arg(long)]
    context_url: Option<String>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long = "in", value_name = "DIR")]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Converted corpus directory.
    #[arg(long, env = "MCS_CORPUS", conflicts_with = "raw", required_unless_present = "raw")]
    corpus: Option<PathBuf>,
    /// Raw tree converted in memory with the shipped manifests.
    #[arg(long)]
    raw: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct QueryArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, conflicts_with = "stdin", required_unless_present = "stdin")]
    query: Option<PathBuf>,
    /// Read the query from standard input.
    #[arg(long)]
    stdin: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Benchmark whose task IRI replaces `<task_uri>`.
    #[arg(long)]
    task: Option<String>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Statistic to print; all of them when omitted.
    #[arg(long, value_enum)]
    stat: Option<StatKind>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, env = "MCS_BIND", default_value = DEFAULT_BIND)]
    bind: SocketAddr,
    /// Query time limit in seconds.
    #[arg(long, env = "MCS_QUERY_TIMEOUT", default_value_t = 10.0)]
    query_timeout: f64,
    /// Maximum query body size in bytes.
    #[arg(long, env = "MCS_MAX_BODY", default_value_t = 64 * 1024)]
    max_body: usize,
    /// Largest accepted `limit` for sample pages.
    #[arg(long, env = "MCS_PAGE_CAP", default_value_t = 200)]
    page_cap: usize,
    /// Directory of static files served outside `/api`.
    #[arg(long)]
    static_dir: Option<PathBuf>,
    /// Allowed CORS origin; repeatable. Any origin when omitted.
    #[arg(long = "cors-origin")]
    cors_origins: Vec<String>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_FATAL
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_FATAL
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Convert(a) => convert(a, out),
        Command::Validate(a) => validate(a, out),
        Command::Query(a) => query(a, out, err),
        Command::Stats(a) => stats(a, out),
        Command::Serve(a) => serve(a, err),
    }
}

fn detect(input: &Path) -> Result<MappingManifest> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let lines: Vec<&str> = text.lines().take(20).collect();
    let shipped = manifests::shipped();
    match detect_benchmark(&shipped, &lines) {
        Detection::Benchmark(id) => Ok(shipped.into_iter().find(|m| m.benchmark == id).expect("detected manifest")),
        Detection::Unknown => bail!("cannot tell which benchmark {} belongs to; pass --manifest", input.display()),
    }
}

fn report_outcome(o: &ConvertOutcome, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{} {}: {}", o.benchmark, o.split, o.report.to_string().trim_end())?;
    Ok(())
}

fn convert(a: ConvertArgs, out: &mut dyn Write) -> Result<i32> {
    let mut opts = ConvertOptions { format: a.format, force: a.force, jsonld: JsonLdOptions::default() };
    if let Some(url) = a.context_url {
        opts.jsonld.context_ref = url;
    }
    let outcomes = match (&a.raw, &a.input) {
        (Some(raw), _) => {
            if a.manifest.is_some() {
                bail!("--manifest cannot be combined with --raw; the tree's directory names select manifests");
            }
            convert_tree(raw, &a.out, &opts)?
        }
        (None, Some(input)) => {
            let split = SplitKind::parse(&a.split)
                .ok_or_else(|| anyhow!("unknown split {:?} (train, dev or test)", a.split))?;
            let manifest = match &a.manifest {
                Some(m) => manifests::resolve(m)?,
                None => detect(input)?,
            };
            let labels = a.labels.clone().or_else(|| {
                manifest
                    .expects_labels_file(split)
                    .filter(|&expected| expected)
                    .and_then(|_| labels_file_for(input.parent().unwrap_or(Path::new(".")), split))
            });
            vec![convert_split(&manifest, split, input, labels.as_deref(), &a.out, &opts)?]
        }
        (None, None) => unreachable!("clap requires --input or --raw"),
    };
    let mut skipped = 0;
    for o in &outcomes {
        report_outcome(o, out)?;
        skipped += o.report.records_skipped;
    }
    Ok(if skipped == 0 { EXIT_OK } else { EXIT_WARNINGS })
}

fn validate(a: ValidateArgs, out: &mut dyn Write) -> Result<i32> {
    let (loaded, issues) = read_corpus_dir(&a.input)?;
    for i in &issues {
        match &i.id {
            Some(id) => writeln!(out, "{}:{}: {id}: {}", i.file, i.line, i.message)?,
            None => writeln!(out, "{}:{}: {}", i.file, i.line, i.message)?,
        }
    }
    writeln!(
        out,
        "{} valid sample(s) in {} benchmark(s), {} problem(s)",
        loaded.corpus.samples().len(),
        loaded.corpus.benchmarks().count(),
        issues.len()
    )?;
    Ok(if issues.is_empty() { EXIT_OK } else { EXIT_WARNINGS })
}

fn load(a: &CorpusArgs) -> Result<LoadedCorpus> {
    match (&a.corpus, &a.raw) {
        (_, Some(raw)) => {
            let (loaded, issues) = load_raw_tree(raw, JsonLdOptions::default())?;
            if !issues.is_empty() {
                eprintln!("warning: {} record(s) skipped while reading {}", issues.len(), raw.display());
            }
            Ok(loaded)
        }
        (Some(dir), None) => load_corpus_dir(dir),
        (None, None) => unreachable!("clap requires --corpus or --raw"),
    }
}

fn query(a: QueryArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let text = match &a.query {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
            s
        }
    };
    let loaded = load(&a.corpus)?;
    let text = match &a.task {
        Some(name) => {
            let b = loaded.corpus.benchmark(name).ok_or_else(|| anyhow!("unknown benchmark {name:?} for --task"))?;
            substitute_task_iri(&text, &b.id.task_iri())
        }
        None => text,
    };
    let ast = match parse_query_with(&text, &loaded.options.vocab) {
        Ok(ast) => ast,
        Err(e) => {
            writeln!(err, "error: {} ({})", e, e.code())?;
            return Ok(EXIT_FATAL);
        }
    };
    let (store, _) = loaded.store()?;
    let table = evaluate(&ast, &store)?;
    out.write_all(render_bindings(&table, a.format)?.as_bytes())?;
    Ok(EXIT_OK)
}

fn stats(a: StatsArgs, out: &mut dyn Write) -> Result<i32> {
    let loaded = load(&a.corpus)?;
    match a.stat {
        Some(kind) => out.write_all(compute_stat(kind, &loaded).render(a.format)?.as_bytes())?,
        None if a.format == Format::Json => {
            let all: serde_json::Map<String, serde_json::Value> =
                StatKind::ALL.iter().map(|k| (k.name().to_string(), compute_stat(*k, &loaded).to_json())).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&all)?)?;
        }
        None => {
            for (i, kind) in StatKind::ALL.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                if a.format == Format::Table {
                    writeln!(out, "== {} ==", kind.name())?;
                }
                out.write_all(compute_stat(*kind, &loaded).render(a.format)?.as_bytes())?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn serve(a: ServeArgs, err: &mut dyn Write) -> Result<i32> {
    if !(a.query_timeout.is_finite() && a.query_timeout > 0.0) {
        bail!("--query-timeout must be a positive number of seconds");
    }
    if a.page_cap == 0 {
        bail!("--page-cap must be at least 1");
    }
    let loaded = load(&a.corpus)?;
    let config = ServerConfig {
        query_timeout: Duration::from_secs_f64(a.query_timeout),
        max_body: a.max_body,
        page_cap: a.page_cap,
        static_dir: a.static_dir,
        cors_origins: a.cors_origins,
    };
    let state = server::build_state(loaded, config)?;
    writeln!(err, "loaded {} sample(s), {} triple(s)", state.loaded.corpus.samples().len(), state.store.len())?;
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    runtime.block_on(server::serve(state, a.bind))?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("mcsbench").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one_and_help_exits_zero() {
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_FATAL);
        assert_eq!(run_args(&["convert", "--out", "x"]).0, EXIT_FATAL);
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("convert"));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
