#![allow(dead_code)]

pub mod queries;
pub mod samples;

use std::fs;
use std::path::{Path, PathBuf};

use mcsbench_core::adapters::{ingest, load_manifest, MappingManifest, SplitSources};
use mcsbench_core::model::{BenchmarkCorpus, CanonicalSample, SplitKind};
use mcsbench_core::store::TripleStore;
use mcsbench_core::vocab::Vocab;

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(rel: &str) -> PathBuf {
    repo_root().join("fixtures").join(rel)
}

pub fn manifest(stem: &str) -> MappingManifest {
    let text = fs::read_to_string(repo_root().join("manifests").join(format!("{stem}.json"))).unwrap();
    load_manifest(&text).unwrap()
}

pub const MANIFEST_STEMS: [&str; 7] = ["anli", "commonsenseqa", "cosmosqa", "cycic", "hellaswag", "piqa", "socialiqa"];

fn labels_file(dir: &Path, split: SplitKind) -> Option<PathBuf> {
    ["lst", "jsonl"].iter().map(|ext| dir.join(format!("{}-labels.{ext}", split.as_str()))).find(|p| p.exists())
}

/// Samples of one split of one benchmark directory.
pub fn ingest_split(dir: &Path, stem: &str, split: SplitKind) -> Vec<CanonicalSample> {
    let m = manifest(stem);
    let samples = fs::read(dir.join(format!("{}.jsonl", split.as_str()))).unwrap();
    let labels = labels_file(dir, split).map(|p| fs::read(p).unwrap());
    let out =
        ingest(&m, split, SplitSources { samples: &samples, labels: labels.as_deref() }, &Vocab::default()).unwrap();
    assert!(out.report.skipped.is_empty(), "{}", out.report);
    out.samples
}

/// Every `{stem}/{split}.jsonl` under `root` ingested into one corpus.
pub fn corpus_from(root: &Path) -> BenchmarkCorpus {
    let mut corpus = BenchmarkCorpus::new();
    for stem in MANIFEST_STEMS {
        let dir = root.join(stem);
        if !dir.is_dir() {
            continue;
        }
        let m = manifest(stem);
        corpus.register_benchmark(m.benchmark.clone(), m.question_types.iter().copied()).unwrap();
        for split in SplitKind::ALL {
            if dir.join(format!("{}.jsonl", split.as_str())).exists() {
                for s in ingest_split(&dir, stem, split) {
                    corpus.add_sample(s).unwrap();
                }
            }
        }
    }
    corpus
}

pub fn store_of(corpus: &BenchmarkCorpus) -> TripleStore {
    let vocab = Vocab::default();
    let mut store = TripleStore::new(&vocab);
    store.load_corpus(corpus, &vocab).unwrap();
    store
}

/// A corpus holding only the SocialIQa-37 sample.
pub fn skylar_corpus() -> BenchmarkCorpus {
    let samples = ingest_split(&fixture("benchmarks/socialiqa"), "socialiqa", SplitKind::Train);
    let sample = samples.into_iter().find(|s| s.id.as_str().ends_with("/SocialIQa-37")).unwrap();
    let mut corpus = BenchmarkCorpus::new();
    let m = manifest("socialiqa");
    corpus.register_benchmark(m.benchmark, m.question_types).unwrap();
    corpus.add_sample(sample).unwrap();
    corpus
}

pub const INPUT_TYPES_QUERY: &str = "SELECT ?sample ?input ?inputType WHERE {
 <task_uri> schema:dataset ?train .
 ?train rdf:type mcs:BenchmarkTrainDataset .
 ?train mcs:sample ?sample .
 ?sample mcs:input/schema:text ?input .
 ?sample mcs:input/rdf:type/rdfs:label ?inputType .
}
";

pub const LOGICAL_REASONING_QUERY: &str = "SELECT ?sample ?question WHERE {
 ?sample rdf:type mcs:BenchmarkSample .
 ?sample mcs:input/rdf:type mcs:LogicalReasoning .
 ?sample mcs:input ?input .
 ?input rdf:type mcs:BenchmarkQuestion .
 ?input schema:text ?question .
}
";
