//! Manifest-driven ingestion of native benchmark files.
//!
//! A [`MappingManifest`] names, for one benchmark, which JSON fields of a
//! native JSON-Lines record become inputs, choices, categories and the label.
//! Field paths use dotted keys with `[n]` indexing and at most one `[*]`
//! wildcard, e.g. `question.choices[*].text`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::model::{
    category_to_class, mint_segment_id, mint_split_sample_id, validate_sample, BenchmarkId, CanonicalSample,
    ChoiceSegment, ConstructKind, InputSegment, ModelError, QuestionType, ReasoningCategory, SegmentKind, SplitKind,
};
use crate::vocab::Vocab;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ManifestError {
    #[error("manifest is not valid JSON for the manifest schema: {0}")]
    Schema(String),
    #[error("rule {index}: {message}")]
    Rule { index: usize, message: String },
    #[error("label rule: {0}")]
    Label(String),
    #[error("split {split:?}: {message}")]
    Layout { split: String, message: String },
    #[error("manifest needs at least one input rule")]
    NoInputRule,
    #[error("manifest needs at least two choice rules or one choice-list rule")]
    TooFewChoiceRules,
    #[error("manifest must declare at least one question type")]
    NoQuestionType,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error("split {0} is not declared by the manifest")]
    UndeclaredSplit(SplitKind),
    #[error("split {split} expects a labels file")]
    MissingLabels { split: SplitKind },
    #[error("split {split} does not take a labels file")]
    UnexpectedLabels { split: SplitKind },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum PathSegment {
    Key(String),
    Index(usize),
    Each,
}

/// A field path into a native record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldPath {
    source: String,
    segments: Vec<PathSegment>,
}

impl FieldPath {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut segments = Vec::new();
        if text.is_empty() {
            return Err("empty path".into());
        }
        for part in text.split('.') {
            let (key, mut rest) = match part.find('[') {
                Some(i) => (&part[..i], &part[i..]),
                None => (part, ""),
            };
            if key.is_empty() && segments.is_empty() {
                return Err(format!("path {text:?} must start with a key"));
            }
            if !key.is_empty() {
                segments.push(PathSegment::Key(key.to_string()));
            } else if rest.is_empty() {
                return Err(format!("empty segment in {text:?}"));
            }
            while !rest.is_empty() {
                let close = rest.find(']').ok_or_else(|| format!("unclosed '[' in {text:?}"))?;
                if !rest.starts_with('[') {
                    return Err(format!("unexpected text in {text:?}"));
                }
                let inner = &rest[1..close];
                if inner == "*" {
                    segments.push(PathSegment::Each);
                } else {
                    let n = inner.parse().map_err(|_| format!("bad index [{inner}] in {text:?}"))?;
                    segments.push(PathSegment::Index(n));
                }
                rest = &rest[close + 1..];
            }
        }
        if segments.iter().filter(|s| matches!(s, PathSegment::Each)).count() > 1 {
            return Err(format!("path {text:?} has more than one [*]"));
        }
        Ok(FieldPath { source: text.to_string(), segments })
    }

    pub fn as_str(&self) -> &str {
        &self.source
    }

    pub fn is_list(&self) -> bool {
        self.segments.contains(&PathSegment::Each)
    }

    /// All values reached by the path; `[*]` fans out over an array.
    pub fn resolve<'a>(&self, record: &'a Value) -> Vec<&'a Value> {
        let mut current = alloc::vec![record];
        for segment in &self.segments {
            let mut next = Vec::new();
            for value in current {
                match (segment, value) {
                    (PathSegment::Key(k), Value::Object(map)) => next.extend(map.get(k)),
                    (PathSegment::Index(i), Value::Array(items)) => next.extend(items.get(*i)),
                    (PathSegment::Each, Value::Array(items)) => next.extend(items.iter()),
                    _ => {}
                }
            }
            current = next;
        }
        current.retain(|v| !v.is_null());
        current
    }
}

impl fmt::Display for FieldPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleRole {
    Input,
    Choice,
    Category,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum LabelEncoding {
    OneBased,
    ZeroBased,
    Letter,
    ChoiceText,
    Boolean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileRole {
    Samples,
    Labels,
}

/// Rule applies only when the value at `path` equals (or differs from) a constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub path: FieldPath,
    pub equals: Option<Value>,
    pub not_equals: Option<Value>,
}

impl Condition {
    fn holds(&self, record: &Value) -> bool {
        let found = self.path.resolve(record).into_iter().next();
        if let Some(expected) = &self.equals {
            if found != Some(expected) {
                return false;
            }
        }
        if let Some(unexpected) = &self.not_equals {
            if found == Some(unexpected) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldRule {
    pub path: FieldPath,
    pub role: RuleRole,
    /// `None` only for category rules.
    pub construct: Option<ConstructKind>,
    pub optional: bool,
    pub when: Option<Condition>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelRule {
    pub path: FieldPath,
    pub encoding: LabelEncoding,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MappingManifest {
    pub benchmark: BenchmarkId,
    pub title: String,
    pub question_types: BTreeSet<QuestionType>,
    pub file_layout: BTreeMap<SplitKind, Vec<FileRole>>,
    pub id_field: Option<FieldPath>,
    pub fields: Vec<FieldRule>,
    pub label: LabelRule,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ManifestDoc {
    benchmark: String,
    #[serde(default)]
    title: Option<String>,
    base_iri: String,
    question_types: Vec<QuestionType>,
    splits: BTreeMap<String, Vec<FileRole>>,
    #[serde(default)]
    id_field: Option<String>,
    fields: Vec<Value>,
    label: Option<LabelDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    path: String,
    #[serde(default)]
    construct: Option<String>,
    role: String,
    #[serde(default)]
    optional: bool,
    #[serde(default)]
    when: Option<ConditionDoc>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ConditionDoc {
    path: String,
    #[serde(default)]
    equals: Option<Value>,
    #[serde(default)]
    not_equals: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelDoc {
    path: String,
    encoding: LabelEncoding,
}

/// Parses and checks a manifest document.
pub fn load_manifest(source: &str) -> Result<MappingManifest, ManifestError> {
    let doc: ManifestDoc = serde_json::from_str(source).map_err(|e| ManifestError::Schema(e.to_string()))?;
    let benchmark = BenchmarkId::new(doc.benchmark, doc.base_iri)?;
    if doc.question_types.is_empty() {
        return Err(ManifestError::NoQuestionType);
    }

    let mut file_layout = BTreeMap::new();
    for (name, roles) in doc.splits {
        let split = SplitKind::parse(&name)
            .ok_or_else(|| ManifestError::Layout { split: name.clone(), message: "unknown split".into() })?;
        let layout_err = |message: &str| ManifestError::Layout { split: name.clone(), message: message.into() };
        if roles.first() != Some(&FileRole::Samples) {
            return Err(layout_err("the first file must be the samples file"));
        }
        if roles.iter().filter(|r| **r == FileRole::Samples).count() != 1
            || roles.iter().filter(|r| **r == FileRole::Labels).count() > 1
        {
            return Err(layout_err("expected one samples file and at most one labels file"));
        }
        file_layout.insert(split, roles);
    }
    if file_layout.is_empty() {
        return Err(ManifestError::Layout { split: String::new(), message: "no splits declared".into() });
    }

    let mut fields = Vec::with_capacity(doc.fields.len());
    for (index, raw) in doc.fields.into_iter().enumerate() {
        let rule_err = |message: String| ManifestError::Rule { index, message };
        let rule: RuleDoc = serde_json::from_value(raw).map_err(|e| rule_err(e.to_string()))?;
        let path = FieldPath::parse(&rule.path).map_err(rule_err)?;
        let role = match rule.role.as_str() {
            "input" => RuleRole::Input,
            "choice" => RuleRole::Choice,
            "category" => RuleRole::Category,
            "label" => return Err(rule_err("label rules go in the top-level \"label\" key".into())),
            other => return Err(rule_err(format!("unknown role {other:?}"))),
        };
        let construct = match (&rule.construct, role) {
            (None, RuleRole::Category) => None,
            (Some(_), RuleRole::Category) => return Err(rule_err("category rules take no construct".into())),
            (None, _) => return Err(rule_err("missing construct".into())),
            (Some(name), _) => {
                let kind = ConstructKind::parse(name).ok_or_else(|| rule_err(format!("unknown construct {name:?}")))?;
                if (role == RuleRole::Input) != kind.is_input() {
                    return Err(rule_err(format!("construct {name} cannot have role {}", rule.role)));
                }
                Some(kind)
            }
        };
        let when = match rule.when {
            None => None,
            Some(c) => {
                if c.equals.is_none() && c.not_equals.is_none() {
                    return Err(rule_err("condition needs equals or notEquals".into()));
                }
                Some(Condition {
                    path: FieldPath::parse(&c.path).map_err(rule_err)?,
                    equals: c.equals,
                    not_equals: c.not_equals,
                })
            }
        };
        fields.push(FieldRule { path, role, construct, optional: rule.optional, when });
    }

    if !fields.iter().any(|r| r.role == RuleRole::Input) {
        return Err(ManifestError::NoInputRule);
    }
    let choice_rules = fields.iter().filter(|r| r.role == RuleRole::Choice).count();
    let has_list = fields.iter().any(|r| r.role == RuleRole::Choice && r.path.is_list());
    if choice_rules < 2 && !has_list {
        return Err(ManifestError::TooFewChoiceRules);
    }
    let label = doc.label.ok_or_else(|| ManifestError::Label("missing".into()))?;
    let label =
        LabelRule { path: FieldPath::parse(&label.path).map_err(ManifestError::Label)?, encoding: label.encoding };
    let id_field = doc
        .id_field
        .map(|p| FieldPath::parse(&p))
        .transpose()
        .map_err(|m| ManifestError::Schema(format!("idField: {m}")))?;

    Ok(MappingManifest {
        title: doc.title.unwrap_or_else(|| benchmark.name().to_string()),
        benchmark,
        question_types: doc.question_types.into_iter().collect(),
        file_layout,
        id_field,
        fields,
        label,
    })
}

impl MappingManifest {
    /// Every construct some rule can emit.
    pub fn declared_constructs(&self) -> BTreeSet<ConstructKind> {
        self.fields.iter().filter_map(|r| r.construct).collect()
    }

    pub fn rules(&self, role: RuleRole) -> impl Iterator<Item = &FieldRule> {
        self.fields.iter().filter(move |r| r.role == role)
    }

    /// Paths that every record of this benchmark carries.
    pub fn required_paths(&self) -> impl Iterator<Item = &FieldPath> {
        self.fields.iter().filter(|r| !r.optional && r.role != RuleRole::Category).map(|r| &r.path)
    }

    pub fn expects_labels_file(&self, split: SplitKind) -> Option<bool> {
        self.file_layout.get(&split).map(|roles| roles.contains(&FileRole::Labels))
    }
}

/// Raw inputs for one split.
#[derive(Debug, Clone, Copy, Default)]
pub struct SplitSources<'a> {
    pub samples: &'a [u8],
    pub labels: Option<&'a [u8]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedRecord {
    /// 1-based line number in the samples file.
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IngestionReport {
    pub records_read: usize,
    pub samples_emitted: usize,
    pub records_skipped: usize,
    pub skipped: Vec<SkippedRecord>,
    pub warnings: Vec<String>,
}

impl IngestionReport {
    fn skip(&mut self, line: usize, reason: String) {
        self.records_skipped += 1;
        self.skipped.push(SkippedRecord { line, reason });
    }
}

impl fmt::Display for IngestionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} records read, {} samples emitted, {} skipped",
            self.records_read, self.samples_emitted, self.records_skipped
        )?;
        for s in &self.skipped {
            writeln!(f, "  line {}: {}", s.line, s.reason)?;
        }
        for w in &self.warnings {
            writeln!(f, "  warning: {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ingestion {
    pub samples: Vec<CanonicalSample>,
    pub report: IngestionReport,
}

/// Physical lines without terminators; a final newline does not open a new line.
fn lines(bytes: &[u8]) -> impl Iterator<Item = &[u8]> {
    let body = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    let empty = bytes.is_empty();
    body.split(|&b| b == b'\n').map(|l| l.strip_suffix(b"\r").unwrap_or(l)).filter(move |_| !empty)
}

/// Converts one split of a benchmark into canonical samples, in file order.
/// Bad records are skipped and reported, never fatal.
pub fn ingest(
    manifest: &MappingManifest,
    split: SplitKind,
    sources: SplitSources<'_>,
    vocab: &Vocab,
) -> Result<Ingestion, IngestError> {
    let wants_labels = manifest.expects_labels_file(split).ok_or(IngestError::UndeclaredSplit(split))?;
    match (wants_labels, sources.labels.is_some()) {
        (true, false) => return Err(IngestError::MissingLabels { split }),
        (false, true) => return Err(IngestError::UnexpectedLabels { split }),
        _ => {}
    }
    let label_lines: Option<Vec<&[u8]>> = sources.labels.map(|l| lines(l).collect());

    let mut report = IngestionReport::default();
    let mut samples = Vec::new();
    let mut used_indices = BTreeSet::new();
    let mut line_count = 0;
    for (line_no, raw) in lines(sources.samples).enumerate() {
        line_count += 1;
        report.records_read += 1;
        let line = line_no + 1;
        let record = match parse_record(raw) {
            Ok(r) => r,
            Err(reason) => {
                report.skip(line, reason);
                continue;
            }
        };
        let label_value = match &label_lines {
            Some(all) => all.get(line_no).and_then(|l| label_from_line(l, &manifest.label.path)),
            None => manifest.label.path.resolve(&record).into_iter().next().cloned(),
        };
        match build_sample(manifest, split, &record, line_no as u64, label_value.as_ref(), vocab) {
            Ok(sample) => {
                if !used_indices.insert(sample.id.clone()) {
                    report.skip(line, format!("duplicate sample id {}", sample.id));
                    continue;
                }
                report.samples_emitted += 1;
                samples.push(sample);
            }
            Err(reason) => report.skip(line, reason),
        }
    }
    if let Some(all) = &label_lines {
        if all.len() != line_count {
            report.warnings.push(format!("labels file has {} lines, samples file has {}", all.len(), line_count));
        }
    }
    Ok(Ingestion { samples, report })
}

fn parse_record(raw: &[u8]) -> Result<Value, String> {
    let text = core::str::from_utf8(raw).map_err(|_| String::from("line is not valid UTF-8"))?;
    if text.trim().is_empty() {
        return Err("blank line".into());
    }
    match serde_json::from_str::<Value>(text) {
        Ok(v @ Value::Object(_)) => Ok(v),
        Ok(_) => Err("line is not a JSON object".into()),
        Err(e) => Err(format!("malformed JSON: {e}")),
    }
}

fn label_from_line(raw: &[u8], path: &FieldPath) -> Option<Value> {
    let text = core::str::from_utf8(raw).ok()?.trim();
    if text.is_empty() {
        return None;
    }
    match serde_json::from_str::<Value>(text) {
        Ok(v @ Value::Object(_)) => path.resolve(&v).into_iter().next().cloned(),
        Ok(Value::Null) => None,
        Ok(v) => Some(v),
        Err(_) => Some(Value::String(text.to_string())),
    }
}

fn as_index(value: &Value) -> Option<u64> {
    match value {
        Value::Number(n) => n.as_u64(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

fn build_sample(
    manifest: &MappingManifest,
    split: SplitKind,
    record: &Value,
    line_index: u64,
    label: Option<&Value>,
    vocab: &Vocab,
) -> Result<CanonicalSample, String> {
    let index = match &manifest.id_field {
        None => line_index,
        Some(path) => {
            let value = path.resolve(record).into_iter().next().ok_or_else(|| format!("missing id field {path}"))?;
            as_index(value).ok_or_else(|| format!("id field {path} is not a non-negative integer"))?
        }
    };
    let id = mint_split_sample_id(&manifest.benchmark, split, index);

    let mut input_parts: Vec<(ConstructKind, String)> = Vec::new();
    let mut choice_parts: Vec<(ConstructKind, String)> = Vec::new();
    let mut categories: BTreeSet<ReasoningCategory> = BTreeSet::new();
    for rule in &manifest.fields {
        if rule.when.as_ref().is_some_and(|c| !c.holds(record)) {
            continue;
        }
        let values = rule.path.resolve(record);
        if rule.role == RuleRole::Category {
            for value in values {
                let labels: Vec<&Value> = match value {
                    Value::Array(items) => items.iter().collect(),
                    other => alloc::vec![other],
                };
                for l in labels {
                    let text = l.as_str().ok_or_else(|| format!("category at {} is not text", rule.path))?;
                    let category = category_to_class(text, vocab).map_err(|e| format!("category {text:?}: {e}"))?;
                    categories.insert(category);
                }
            }
            continue;
        }
        let construct = rule.construct.expect("non-category rules carry a construct");
        let texts: Vec<&str> = values
            .iter()
            .map(|v| v.as_str().ok_or_else(|| format!("field {} is not text", rule.path)))
            .collect::<Result<_, _>>()?;
        let texts: Vec<&str> =
            if rule.optional { texts.into_iter().filter(|t| !t.trim().is_empty()).collect() } else { texts };
        if texts.is_empty() && !rule.optional {
            return Err(format!("missing field {}", rule.path));
        }
        if texts.iter().any(|t| t.trim().is_empty()) {
            return Err(format!("field {} has empty text", rule.path));
        }
        let target = if rule.role == RuleRole::Input { &mut input_parts } else { &mut choice_parts };
        target.extend(texts.into_iter().map(|t| (construct, t.to_string())));
    }

    let inputs: Vec<InputSegment> = input_parts
        .into_iter()
        .enumerate()
        .map(|(i, (construct, text))| InputSegment {
            id: mint_segment_id(&id, SegmentKind::Input, i as u32).expect("input positions are unrestricted"),
            construct,
            text,
            categories: categories.clone(),
        })
        .collect();
    let choices: Vec<ChoiceSegment> = choice_parts
        .into_iter()
        .enumerate()
        .map(|(j, (construct, text))| {
            let ordinal = j as u32 + 1;
            ChoiceSegment {
                id: mint_segment_id(&id, SegmentKind::Choice, ordinal).expect("ordinals start at 1"),
                construct,
                text,
                ordinal,
            }
        })
        .collect();

    let correct_choice = match label {
        None if split == SplitKind::Test => None,
        None if choices.is_empty() => None,
        None => return Err("missing label".into()),
        Some(value) => {
            let ordinal = decode_label(manifest.label.encoding, value, &choices)
                .ok_or_else(|| format!("label {value} does not decode with {:?}", manifest.label.encoding))?;
            let choice = choices
                .iter()
                .find(|c| c.ordinal == ordinal)
                .ok_or_else(|| format!("label {value} references missing choice {ordinal}"))?;
            Some(choice.id.clone())
        }
    };

    let sample = CanonicalSample {
        id,
        benchmark: manifest.benchmark.clone(),
        split,
        inputs,
        choices,
        correct_choice,
        categories,
    };
    let report = validate_sample(&sample);
    if !report.is_valid() {
        return Err(format!("invalid sample: {report}"));
    }
    Ok(sample)
}

/// Maps a native label onto a 1-based choice ordinal.
pub fn decode_label(encoding: LabelEncoding, value: &Value, choices: &[ChoiceSegment]) -> Option<u32> {
    match encoding {
        LabelEncoding::OneBased => as_index(value).and_then(|n| u32::try_from(n).ok()).filter(|&n| n >= 1),
        LabelEncoding::ZeroBased => as_index(value).and_then(|n| u32::try_from(n + 1).ok()),
        LabelEncoding::Letter => {
            let s = value.as_str()?.trim();
            let mut chars = s.chars();
            let c = chars.next()?.to_ascii_uppercase();
            (chars.next().is_none() && c.is_ascii_uppercase()).then(|| c as u32 - 'A' as u32 + 1)
        }
        LabelEncoding::ChoiceText => {
            let s = value.as_str()?.trim();
            choices.iter().find(|c| c.text.trim() == s).map(|c| c.ordinal)
        }
        LabelEncoding::Boolean => {
            let truth = match value {
                Value::Bool(b) => *b,
                Value::String(s) if s.trim().eq_ignore_ascii_case("true") => true,
                Value::String(s) if s.trim().eq_ignore_ascii_case("false") => false,
                _ => return None,
            };
            let wanted = if truth { "true" } else { "false" };
            choices.iter().find(|c| c.text.trim().eq_ignore_ascii_case(wanted)).map(|c| c.ordinal)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Detection {
    Benchmark(BenchmarkId),
    Unknown,
}

/// Picks the single manifest whose required paths occur in every parseable
/// sampled record. Zero or several matches give [`Detection::Unknown`].
pub fn detect_benchmark(manifests: &[MappingManifest], sample_lines: &[&str]) -> Detection {
    let records: Vec<Value> = sample_lines
        .iter()
        .filter_map(|l| serde_json::from_str::<Value>(l.trim()).ok())
        .filter(Value::is_object)
        .collect();
    if records.is_empty() {
        return Detection::Unknown;
    }
    let mut matches = manifests.iter().filter(|m| {
        let mut paths = m.required_paths().peekable();
        paths.peek().is_some() && m.required_paths().all(|p| records.iter().all(|r| !p.resolve(r).is_empty()))
    });
    match (matches.next(), matches.next()) {
        (Some(m), None) => Detection::Benchmark(m.benchmark.clone()),
        _ => Detection::Unknown,
    }
}
