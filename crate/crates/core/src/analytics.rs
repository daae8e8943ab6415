//! Corpus statistics computed over canonical samples.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::Serialize;

use crate::model::{BenchmarkCorpus, ConstructKind, QuestionType, SplitKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructRow {
    pub benchmark: String,
    pub constructs: BTreeSet<ConstructKind>,
    pub question_types: BTreeSet<QuestionType>,
    pub has_categories: bool,
}

impl ConstructRow {
    /// Column labels in the published wording, e.g. "Answer choices".
    pub fn construct_labels(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = Vec::new();
        for c in &self.constructs {
            let label = construct_label(*c);
            if !out.contains(&label) {
                out.push(label);
            }
        }
        if self.has_categories {
            out.push("Categories");
        }
        out
    }

    pub fn question_type_labels(&self) -> Vec<&'static str> {
        self.question_types.iter().map(|q| question_type_label(*q)).collect()
    }
}

pub fn construct_label(kind: ConstructKind) -> &'static str {
    match kind {
        ConstructKind::Context => "Context",
        ConstructKind::Question => "Questions",
        ConstructKind::Observation => "Observations",
        ConstructKind::Goal => "Goals",
        ConstructKind::FillInTheBlank => "Fill in the blank",
        ConstructKind::Answer | ConstructKind::TruthValue => "Answer choices",
        ConstructKind::Ending => "Ending choices",
        ConstructKind::Solution => "Solution choices",
        ConstructKind::Hypothesis => "Hypothesis",
    }
}

pub fn question_type_label(q: QuestionType) -> &'static str {
    match q {
        QuestionType::MultipleChoice => "Multiple choice",
        QuestionType::TrueFalse => "True/false",
    }
}

/// One row per registered benchmark, keyed by benchmark name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ConstructMatrix {
    pub rows: BTreeMap<String, ConstructRow>,
}

impl ConstructMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, benchmark: &str) -> Option<&ConstructRow> {
        self.rows.get(benchmark)
    }

    /// Aligned three-column text table.
    pub fn render_table(&self) -> String {
        if self.rows.is_empty() {
            return "No benchmarks loaded.\n".to_string();
        }
        let cells: Vec<[String; 3]> = self
            .rows
            .values()
            .map(|r| [r.benchmark.clone(), r.construct_labels().join(", "), r.question_type_labels().join(", ")])
            .collect();
        let header = ["Benchmark".to_string(), "Constructs".to_string(), "Question type".to_string()];
        let mut widths = [0usize; 3];
        for row in core::iter::once(&header).chain(&cells) {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |row: &[String; 3]| {
            let text = format!("{:w0$}  {:w1$}  {}", row[0], row[1], row[2], w0 = widths[0], w1 = widths[1]);
            format!("{}\n", text.trim_end())
        };
        let mut out = line(&header);
        out.push_str(&format!("{}  {}  {}\n", "-".repeat(widths[0]), "-".repeat(widths[1]), "-".repeat(widths[2])));
        for row in &cells {
            out.push_str(&line(row));
        }
        out
    }
}

pub fn construct_matrix(corpus: &BenchmarkCorpus) -> ConstructMatrix {
    let mut rows: BTreeMap<String, ConstructRow> = corpus
        .benchmarks()
        .map(|b| {
            let row = ConstructRow {
                benchmark: b.id.name().to_string(),
                constructs: BTreeSet::new(),
                question_types: b.question_types.clone(),
                has_categories: false,
            };
            (b.id.name().to_string(), row)
        })
        .collect();
    for sample in corpus.samples() {
        if let Some(row) = rows.get_mut(sample.benchmark.name()) {
            row.constructs.extend(sample.constructs());
            row.has_categories |= !sample.categories.is_empty();
        }
    }
    ConstructMatrix { rows }
}

/// Counts by text key. `total` always equals the sum of `counts`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Distribution {
    pub counts: BTreeMap<String, u64>,
    pub total: u64,
}

impl Distribution {
    pub fn add(&mut self, key: impl Into<String>, n: u64) {
        *self.counts.entry(key.into()).or_insert(0) += n;
        self.total += n;
    }

    pub fn get(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// A distribution over the whole corpus plus one per benchmark.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Breakdown {
    pub overall: Distribution,
    pub per_benchmark: BTreeMap<String, Distribution>,
}

impl Breakdown {
    fn add(&mut self, benchmark: &str, key: &str, n: u64) {
        self.overall.add(key, n);
        self.per_benchmark.entry(benchmark.to_string()).or_default().add(key, n);
    }

    fn touch(&mut self, benchmark: &str, key: &str) {
        self.overall.counts.entry(key.to_string()).or_insert(0);
        self.per_benchmark.entry(benchmark.to_string()).or_default().counts.entry(key.to_string()).or_insert(0);
    }
}

/// Samples per split. Every registered benchmark reports all three splits.
pub fn split_counts(corpus: &BenchmarkCorpus) -> Breakdown {
    let mut out = Breakdown::default();
    for b in corpus.benchmarks() {
        for split in SplitKind::ALL {
            out.touch(b.id.name(), split.as_str());
        }
    }
    for s in corpus.samples() {
        out.add(s.benchmark.name(), s.split.as_str(), 1);
    }
    out
}

/// Samples per category label. A sample with several categories counts once
/// under each.
pub fn category_distribution(corpus: &BenchmarkCorpus) -> Breakdown {
    let mut out = Breakdown::default();
    for s in corpus.samples() {
        for c in &s.categories {
            out.add(s.benchmark.name(), &c.label, 1);
        }
    }
    out
}

/// Ordinal of the correct choice, over samples that have one.
pub fn answer_position_distribution(corpus: &BenchmarkCorpus) -> Breakdown {
    let mut out = Breakdown::default();
    for s in corpus.samples() {
        if let Some(ordinal) = s.correct_ordinal() {
            out.add(s.benchmark.name(), &ordinal.to_string(), 1);
        }
    }
    out
}

pub fn choice_count_histogram(corpus: &BenchmarkCorpus) -> Breakdown {
    let mut out = Breakdown::default();
    for s in corpus.samples() {
        out.add(s.benchmark.name(), &s.choices.len().to_string(), 1);
    }
    out
}
