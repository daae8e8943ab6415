//! Converted corpus directories.
//!
//! Layout:
//!
//! ```text
//! context.jsonld
//! {Benchmark}/benchmark.json     name, title, baseIri, questionTypes
//! {Benchmark}/{split}.jsonld     one compact sample document per line
//! {Benchmark}/{split}.nt         optional, sorted sample triples
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use mcsbench_core::adapters::{ingest, IngestionReport, MappingManifest, SplitSources};
use mcsbench_core::jsonld::{
    emit_context, expand_to_triples, from_jsonld, options_from_context, to_jsonld, JsonLdDoc, JsonLdOptions,
};
use mcsbench_core::model::{BenchmarkCorpus, BenchmarkId, CanonicalSample, QuestionType, SplitKind};
use mcsbench_core::ntriples;
use mcsbench_core::store::{LoadReport, TripleStore};
use serde::{Deserialize, Serialize};

use crate::manifests;

pub const CONTEXT_FILE: &str = "context.jsonld";
pub const META_FILE: &str = "benchmark.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchmarkMeta {
    pub name: String,
    pub title: String,
    pub base_iri: String,
    pub question_types: BTreeSet<QuestionType>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Jsonld,
    Ntriples,
    Both,
}

#[derive(Debug, Clone, Default)]
pub struct ConvertOptions {
    pub format: OutputFormat,
    pub force: bool,
    pub jsonld: JsonLdOptions,
}

#[derive(Debug, Clone)]
pub struct ConvertOutcome {
    pub benchmark: String,
    pub split: SplitKind,
    pub report: IngestionReport,
    pub written: Vec<PathBuf>,
}

/// Writes `bytes` unless the file exists with different content and
/// `force` is off. Identical content is left untouched.
pub fn write_output(path: &Path, bytes: &[u8], force: bool) -> Result<()> {
    if let Ok(existing) = fs::read(path) {
        if existing == bytes {
            return Ok(());
        }
        if !force {
            bail!("{} exists with different content; pass --force to overwrite", path.display());
        }
    }
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

pub fn context_bytes(opts: &JsonLdOptions) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(&emit_context(opts)).expect("context serialises");
    text.push('\n');
    text.into_bytes()
}

/// Serialises samples as JSON Lines of compact documents.
pub fn jsonld_lines(samples: &[CanonicalSample], opts: &JsonLdOptions) -> Result<String> {
    let mut out = String::new();
    for s in samples {
        let doc = to_jsonld(s, opts).with_context(|| format!("serialising {}", s.id))?;
        out.push_str(&doc.to_line());
        out.push('\n');
    }
    Ok(out)
}

/// Sorted N-Triples of the samples' own triples.
pub fn sample_ntriples(
    manifest: &MappingManifest,
    samples: &[CanonicalSample],
    opts: &JsonLdOptions,
) -> Result<String> {
    let mut corpus = BenchmarkCorpus::new();
    corpus.register_benchmark(manifest.benchmark.clone(), manifest.question_types.iter().copied())?;
    for s in samples {
        corpus.add_sample(s.clone())?;
    }
    let mut lines = Vec::new();
    for s in corpus.samples() {
        for [a, b, c] in expand_to_triples(s, &corpus, &opts.vocab)? {
            lines.push(ntriples::triple_line(&a, &b, &c));
        }
    }
    lines.sort_unstable();
    lines.dedup();
    Ok(lines.into_iter().map(|l| l + "\n").collect())
}

pub fn meta_of(manifest: &MappingManifest) -> BenchmarkMeta {
    BenchmarkMeta {
        name: manifest.benchmark.name().to_string(),
        title: manifest.title.clone(),
        base_iri: manifest.benchmark.base_iri().to_string(),
        question_types: manifest.question_types.clone(),
    }
}

/// Ingests one split and writes its files plus `context.jsonld` and the
/// benchmark metadata under `out`.
pub fn convert_split(
    manifest: &MappingManifest,
    split: SplitKind,
    samples_path: &Path,
    labels_path: Option<&Path>,
    out: &Path,
    opts: &ConvertOptions,
) -> Result<ConvertOutcome> {
    let samples = read(samples_path)?;
    let labels = labels_path.map(read).transpose()?;
    let ingestion =
        ingest(manifest, split, SplitSources { samples: &samples, labels: labels.as_deref() }, &opts.jsonld.vocab)
            .with_context(|| format!("ingesting {}", samples_path.display()))?;

    let dir = out.join(manifest.benchmark.name());
    let mut written = Vec::new();
    let mut emit = |path: PathBuf, bytes: Vec<u8>| -> Result<()> {
        write_output(&path, &bytes, opts.force)?;
        written.push(path);
        Ok(())
    };
    emit(out.join(CONTEXT_FILE), context_bytes(&opts.jsonld))?;
    let mut meta = serde_json::to_string_pretty(&meta_of(manifest))?;
    meta.push('\n');
    emit(dir.join(META_FILE), meta.into_bytes())?;
    if matches!(opts.format, OutputFormat::Jsonld | OutputFormat::Both) {
        emit(dir.join(format!("{split}.jsonld")), jsonld_lines(&ingestion.samples, &opts.jsonld)?.into_bytes())?;
    }
    if matches!(opts.format, OutputFormat::Ntriples | OutputFormat::Both) {
        emit(
            dir.join(format!("{split}.nt")),
            sample_ntriples(manifest, &ingestion.samples, &opts.jsonld)?.into_bytes(),
        )?;
    }
    Ok(ConvertOutcome { benchmark: manifest.benchmark.name().to_string(), split, report: ingestion.report, written })
}

/// Labels file next to `{split}.jsonl`: `{split}-labels.lst` or `.jsonl`.
pub fn labels_file_for(dir: &Path, split: SplitKind) -> Option<PathBuf> {
    ["lst", "jsonl", "txt"].iter().map(|ext| dir.join(format!("{split}-labels.{ext}"))).find(|p| p.is_file())
}

/// One `{stem}/{split}.jsonl` file of a raw tree.
#[derive(Debug, Clone)]
pub struct RawInput {
    pub manifest: MappingManifest,
    pub split: SplitKind,
    pub samples: PathBuf,
    pub labels: Option<PathBuf>,
}

/// Every `{stem}/{split}.jsonl` under `raw`, where stems are shipped
/// manifest names.
pub fn raw_tree_inputs(raw: &Path) -> Result<Vec<RawInput>> {
    if !raw.is_dir() {
        bail!("{} is not a directory", raw.display());
    }
    let mut inputs = Vec::new();
    for (stem, _) in manifests::SHIPPED {
        let dir = raw.join(stem);
        if !dir.is_dir() {
            continue;
        }
        let manifest = manifests::find_shipped(stem).expect("stem of a shipped manifest");
        for split in SplitKind::ALL {
            let samples = dir.join(format!("{split}.jsonl"));
            if samples.is_file() {
                inputs.push(RawInput {
                    manifest: manifest.clone(),
                    split,
                    samples,
                    labels: labels_file_for(&dir, split),
                });
            }
        }
    }
    if inputs.is_empty() {
        bail!("no {{benchmark}}/{{split}}.jsonl files under {}", raw.display());
    }
    Ok(inputs)
}

/// Converts a raw tree into a corpus directory.
pub fn convert_tree(raw: &Path, out: &Path, opts: &ConvertOptions) -> Result<Vec<ConvertOutcome>> {
    raw_tree_inputs(raw)?
        .into_iter()
        .map(|i| convert_split(&i.manifest, i.split, &i.samples, i.labels.as_deref(), out, opts))
        .collect()
}

/// Ingests a raw tree straight into memory. Skipped records are returned
/// as issues.
pub fn load_raw_tree(raw: &Path, options: JsonLdOptions) -> Result<(LoadedCorpus, Vec<CorpusIssue>)> {
    let mut loaded = LoadedCorpus { corpus: BenchmarkCorpus::new(), options, titles: BTreeMap::new() };
    let mut issues = Vec::new();
    for RawInput { manifest, split, samples: samples_path, labels: labels_path } in raw_tree_inputs(raw)? {
        let samples = read(&samples_path)?;
        let labels = labels_path.as_deref().map(read).transpose()?;
        let ingestion = ingest(
            &manifest,
            split,
            SplitSources { samples: &samples, labels: labels.as_deref() },
            &loaded.options.vocab,
        )
        .with_context(|| format!("ingesting {}", samples_path.display()))?;
        loaded.corpus.register_benchmark(manifest.benchmark.clone(), manifest.question_types.iter().copied())?;
        loaded.titles.insert(manifest.benchmark.name().to_string(), manifest.title.clone());
        for skipped in &ingestion.report.skipped {
            issues.push(CorpusIssue {
                file: samples_path.display().to_string(),
                line: skipped.line,
                id: None,
                message: skipped.reason.clone(),
            });
        }
        for s in ingestion.samples {
            loaded.corpus.add_sample(s)?;
        }
    }
    Ok((loaded, issues))
}

/// A converted corpus read back into memory.
#[derive(Debug, Clone)]
pub struct LoadedCorpus {
    pub corpus: BenchmarkCorpus,
    pub options: JsonLdOptions,
    pub titles: BTreeMap<String, String>,
}

impl LoadedCorpus {
    pub fn title<'a>(&'a self, benchmark: &'a str) -> &'a str {
        self.titles.get(benchmark).map_or(benchmark, String::as_str)
    }

    pub fn store(&self) -> Result<(TripleStore, LoadReport)> {
        let mut store = TripleStore::new(&self.options.vocab);
        let report = store.load_corpus(&self.corpus, &self.options.vocab)?;
        Ok((store, report))
    }
}

/// One problem found while reading a corpus directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusIssue {
    pub file: String,
    pub line: usize,
    pub id: Option<String>,
    pub message: String,
}

/// Reads every document, collecting per-line problems instead of stopping.
pub fn read_corpus_dir(dir: &Path) -> Result<(LoadedCorpus, Vec<CorpusIssue>)> {
    if !dir.is_dir() {
        bail!("corpus directory {} does not exist", dir.display());
    }
    let context_path = dir.join(CONTEXT_FILE);
    let context: serde_json::Value =
        serde_json::from_slice(&read(&context_path)?).with_context(|| format!("parsing {}", context_path.display()))?;
    let options = options_from_context(&context, JsonLdOptions::default().context_ref)
        .map_err(|e| anyhow!("{}: {e}", context_path.display()))?;

    let mut loaded = LoadedCorpus { corpus: BenchmarkCorpus::new(), options, titles: BTreeMap::new() };
    let mut issues = Vec::new();
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.join(META_FILE).is_file())
        .collect();
    entries.sort();
    for bench_dir in entries {
        let meta_path = bench_dir.join(META_FILE);
        let meta: BenchmarkMeta =
            serde_json::from_slice(&read(&meta_path)?).with_context(|| format!("parsing {}", meta_path.display()))?;
        let id = BenchmarkId::new(meta.name.clone(), meta.base_iri.clone())
            .with_context(|| format!("benchmark in {}", meta_path.display()))?;
        loaded.corpus.register_benchmark(id, meta.question_types.iter().copied())?;
        loaded.titles.insert(meta.name.clone(), meta.title.clone());
        for split in SplitKind::ALL {
            let path = bench_dir.join(format!("{split}.jsonld"));
            if !path.is_file() {
                continue;
            }
            let text = String::from_utf8(read(&path)?).with_context(|| format!("{} is not UTF-8", path.display()))?;
            let file = path.display().to_string();
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let issue =
                    |id: Option<String>, message: String| CorpusIssue { file: file.clone(), line: i + 1, id, message };
                let doc = match JsonLdDoc::parse(line) {
                    Ok(d) => d,
                    Err(e) => {
                        issues.push(issue(None, e.to_string()));
                        continue;
                    }
                };
                let sample = match from_jsonld(&doc, &loaded.options) {
                    Ok(s) => s,
                    Err(e) => {
                        issues.push(issue(Some(doc.id.clone()), format!("{}: {e}", e.code())));
                        continue;
                    }
                };
                if sample.benchmark.name() != meta.name || sample.split != split {
                    issues.push(issue(Some(doc.id.clone()), format!("sample belongs to {}", sample.dataset_iri())));
                    continue;
                }
                if let Err(e) = loaded.corpus.add_sample(sample) {
                    issues.push(issue(Some(doc.id.clone()), e.to_string()));
                }
            }
        }
    }
    Ok((loaded, issues))
}

/// Like [`read_corpus_dir`] but any problem is an error.
pub fn load_corpus_dir(dir: &Path) -> Result<LoadedCorpus> {
    let (loaded, issues) = read_corpus_dir(dir)?;
    if let Some(first) = issues.first() {
        bail!("{}:{}: {} ({} problem(s) in total)", first.file, first.line, first.message, issues.len());
    }
    Ok(loaded)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_output_respects_force() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a/b.txt");
        write_output(&path, b"one", false).unwrap();
        write_output(&path, b"one", false).unwrap();
        assert!(write_output(&path, b"two", false).is_err());
        write_output(&path, b"two", true).unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"two");
    }

    #[test]
    fn missing_directory_is_an_error() {
        assert!(load_corpus_dir(Path::new("/definitely/not/here")).is_err());
    }
}
