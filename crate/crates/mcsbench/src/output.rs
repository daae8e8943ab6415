//! Text, JSON and CSV renderings of query results and statistics.

use std::fmt::Write as _;

use anyhow::Result;
use mcsbench_core::analytics::{
    answer_position_distribution, category_distribution, choice_count_histogram, construct_matrix, split_counts,
    Breakdown, ConstructMatrix,
};
use mcsbench_core::query::BindingTable;
use mcsbench_core::store::Term;
use serde_json::{json, Value};

use crate::corpus::LoadedCorpus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum StatKind {
    ConstructMatrix,
    Splits,
    Categories,
    AnswerPositions,
    ChoiceCounts,
}

impl StatKind {
    pub const ALL: [StatKind; 5] = [
        StatKind::ConstructMatrix,
        StatKind::Splits,
        StatKind::Categories,
        StatKind::AnswerPositions,
        StatKind::ChoiceCounts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StatKind::ConstructMatrix => "construct-matrix",
            StatKind::Splits => "splits",
            StatKind::Categories => "categories",
            StatKind::AnswerPositions => "answer-positions",
            StatKind::ChoiceCounts => "choice-counts",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// A computed statistic, ready for rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stat {
    Matrix(ConstructMatrix),
    Breakdown(&'static str, Breakdown),
}

/// Construct matrix with rows labelled by benchmark title.
pub fn titled_matrix(loaded: &LoadedCorpus) -> ConstructMatrix {
    let mut matrix = construct_matrix(&loaded.corpus);
    for (name, row) in matrix.rows.iter_mut() {
        row.benchmark = loaded.title(name).to_string();
    }
    matrix
}

pub fn compute_stat(kind: StatKind, loaded: &LoadedCorpus) -> Stat {
    let corpus = &loaded.corpus;
    match kind {
        StatKind::ConstructMatrix => Stat::Matrix(titled_matrix(loaded)),
        StatKind::Splits => Stat::Breakdown("split", split_counts(corpus)),
        StatKind::Categories => Stat::Breakdown("category", category_distribution(corpus)),
        StatKind::AnswerPositions => Stat::Breakdown("position", answer_position_distribution(corpus)),
        StatKind::ChoiceCounts => Stat::Breakdown("choices", choice_count_histogram(corpus)),
    }
}

impl Stat {
    pub fn to_json(&self) -> Value {
        match self {
            Stat::Matrix(m) => json!({
                "rows": m.rows.iter().map(|(name, row)| json!({
                    "benchmark": name,
                    "title": row.benchmark,
                    "constructs": row.construct_labels(),
                    "constructKinds": row.constructs,
                    "questionTypes": row.question_type_labels(),
                    "hasCategories": row.has_categories,
                })).collect::<Vec<_>>()
            }),
            Stat::Breakdown(_, b) => serde_json::to_value(b).expect("breakdowns serialise"),
        }
    }

    fn records(&self) -> (Vec<String>, Vec<Vec<String>>) {
        match self {
            Stat::Matrix(m) => (
                vec!["Benchmark".into(), "Constructs".into(), "Question type".into()],
                m.rows
                    .values()
                    .map(|r| {
                        vec![r.benchmark.clone(), r.construct_labels().join(", "), r.question_type_labels().join(", ")]
                    })
                    .collect(),
            ),
            Stat::Breakdown(key, b) => {
                let mut rows = Vec::new();
                for (bench, dist) in &b.per_benchmark {
                    for (k, n) in &dist.counts {
                        rows.push(vec![bench.clone(), k.clone(), n.to_string()]);
                    }
                }
                for (k, n) in &b.overall.counts {
                    rows.push(vec!["(all)".into(), k.clone(), n.to_string()]);
                }
                (vec!["benchmark".into(), (*key).into(), "count".into()], rows)
            }
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match (self, format) {
            (_, Format::Json) => Ok(pretty(&self.to_json())),
            (Stat::Matrix(m), Format::Table) => Ok(m.render_table()),
            (_, Format::Table) => {
                let (header, rows) = self.records();
                Ok(aligned(&header, &rows))
            }
            (_, Format::Csv) => {
                let (header, rows) = self.records();
                csv_text(&header, &rows)
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

fn aligned(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let mut text = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                text.push_str("  ");
            }
            let _ = write!(text, "{c:w$}");
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(header);
    line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
    for row in rows {
        line(row);
    }
    out
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn cell(term: &Term, format: Format) -> String {
    match format {
        Format::Csv => term.value().to_string(),
        _ => term.to_string(),
    }
}

pub fn render_bindings(table: &BindingTable, format: Format) -> Result<String> {
    let header: Vec<String> = table.vars.clone();
    let rows: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(|t| cell(t, format)).collect()).collect();
    match format {
        Format::Json => Ok(pretty(&table.to_results_json())),
        Format::Csv => csv_text(&header, &rows),
        Format::Table => {
            let header: Vec<String> = header.iter().map(|v| format!("?{v}")).collect();
            let mut out = aligned(&header, &rows);
            let _ = writeln!(out, "({} row{})", rows.len(), if rows.len() == 1 { "" } else { "s" });
            Ok(out)
        }
    }
}
