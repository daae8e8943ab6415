//! Canonical benchmark model: benchmarks, datasets, samples, inputs and choices.
//!
//! Every entity carries a minted absolute IRI. Sample ids are
//! `{baseIri}{benchmark}-{index}`, input ids append `-input-{i}` (0-based) and
//! choice ids append `-choice-{j}` (1-based).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::vocab::Vocab;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid IRI {0:?}: {1}")]
    InvalidIri(String, &'static str),
    #[error("invalid benchmark name {0:?}: {1}")]
    InvalidBenchmarkName(String, &'static str),
    #[error("choice positions are 1-based; got 0")]
    ChoicePositionZero,
    #[error("category label is empty or has no alphanumeric characters")]
    EmptyCategoryLabel,
    #[error("duplicate sample id {0}")]
    DuplicateSampleId(String),
    #[error("benchmark {0:?} is not registered in the corpus")]
    UnknownBenchmark(String),
    #[error("benchmark {0:?} is already registered with a different base IRI")]
    ConflictingBenchmark(String),
    #[error("sample {id} is invalid: {report}")]
    InvalidSample { id: String, report: ValidationReport },
}

/// An absolute IRI.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Iri(String);

impl Iri {
    pub fn parse(text: impl Into<String>) -> Result<Self, ModelError> {
        let text = text.into();
        match check_absolute_iri(&text) {
            Ok(()) => Ok(Iri(text)),
            Err(why) => Err(ModelError::InvalidIri(text, why)),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Text after the last `#` or `/`.
    pub fn local_name(&self) -> &str {
        let cut = self.0.rfind(['#', '/']).map_or(0, |i| i + 1);
        &self.0[cut..]
    }
}

impl TryFrom<String> for Iri {
    type Error = ModelError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Iri::parse(value)
    }
}

impl From<Iri> for String {
    fn from(value: Iri) -> Self {
        value.0
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `scheme ":" rest`, no whitespace and none of the characters N-Triples
/// cannot carry unescaped inside `<...>`.
pub fn check_absolute_iri(text: &str) -> Result<(), &'static str> {
    let colon = text.find(':').ok_or("missing scheme")?;
    let scheme = &text[..colon];
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return Err("scheme must start with a letter"),
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')) {
        return Err("invalid scheme character");
    }
    if colon + 1 == text.len() {
        return Err("empty after scheme");
    }
    if text.chars().any(|c| {
        c.is_whitespace() || c.is_control() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
    }) {
        return Err("forbidden character");
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BenchmarkId {
    name: String,
    base_iri: Iri,
}

impl BenchmarkId {
    pub fn new(name: impl Into<String>, base_iri: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        if name.is_empty() {
            return Err(ModelError::InvalidBenchmarkName(name, "empty"));
        }
        if check_absolute_iri(&format!("x:{name}")).is_err() || name.contains(['/', '#', '?']) {
            return Err(ModelError::InvalidBenchmarkName(name, "whitespace or IRI-reserved character"));
        }
        if name.contains('-') {
            return Err(ModelError::InvalidBenchmarkName(name, "'-' separates the name from the sample index"));
        }
        let base_iri = Iri::parse(base_iri)?;
        if !base_iri.as_str().ends_with(['/', '#']) {
            return Err(ModelError::InvalidIri(base_iri.into_string(), "base IRI must end in '/' or '#'"));
        }
        Ok(BenchmarkId { name, base_iri })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base_iri(&self) -> &Iri {
        &self.base_iri
    }

    /// The task entity that links to the benchmark's datasets.
    pub fn task_iri(&self) -> Iri {
        Iri(format!("{}{}", self.base_iri, self.name))
    }

    /// `{base}{name}/{split}`.
    pub fn dataset_iri(&self, split: SplitKind) -> Iri {
        Iri(format!("{}{}/{}", self.base_iri, self.name, split.as_str()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitKind {
    Train,
    Dev,
    Test,
}

impl SplitKind {
    pub const ALL: [SplitKind; 3] = [SplitKind::Train, SplitKind::Dev, SplitKind::Test];

    pub fn as_str(self) -> &'static str {
        match self {
            SplitKind::Train => "train",
            SplitKind::Dev => "dev",
            SplitKind::Test => "test",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "train" => Some(SplitKind::Train),
            "dev" => Some(SplitKind::Dev),
            "test" => Some(SplitKind::Test),
            _ => None,
        }
    }

    pub fn dataset_class(self) -> &'static str {
        match self {
            SplitKind::Train => "BenchmarkTrainDataset",
            SplitKind::Dev => "BenchmarkDevDataset",
            SplitKind::Test => "BenchmarkTestDataset",
        }
    }
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuestionType {
    MultipleChoice,
    TrueFalse,
}

impl QuestionType {
    pub fn as_str(self) -> &'static str {
        match self {
            QuestionType::MultipleChoice => "MultipleChoice",
            QuestionType::TrueFalse => "TrueFalse",
        }
    }
}

/// Structural part of a sample. The first five are inputs, the rest choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConstructKind {
    Context,
    Question,
    Observation,
    Goal,
    FillInTheBlank,
    Answer,
    Ending,
    Solution,
    Hypothesis,
    TruthValue,
}

impl ConstructKind {
    pub const ALL: [ConstructKind; 10] = [
        ConstructKind::Context,
        ConstructKind::Question,
        ConstructKind::Observation,
        ConstructKind::Goal,
        ConstructKind::FillInTheBlank,
        ConstructKind::Answer,
        ConstructKind::Ending,
        ConstructKind::Solution,
        ConstructKind::Hypothesis,
        ConstructKind::TruthValue,
    ];

    pub fn is_input(self) -> bool {
        matches!(
            self,
            ConstructKind::Context
                | ConstructKind::Question
                | ConstructKind::Observation
                | ConstructKind::Goal
                | ConstructKind::FillInTheBlank
        )
    }

    pub fn is_choice(self) -> bool {
        !self.is_input()
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstructKind::Context => "Context",
            ConstructKind::Question => "Question",
            ConstructKind::Observation => "Observation",
            ConstructKind::Goal => "Goal",
            ConstructKind::FillInTheBlank => "FillInTheBlank",
            ConstructKind::Answer => "Answer",
            ConstructKind::Ending => "Ending",
            ConstructKind::Solution => "Solution",
            ConstructKind::Hypothesis => "Hypothesis",
            ConstructKind::TruthValue => "TruthValue",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        ConstructKind::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Ontology class local name, e.g. `BenchmarkContext`.
    pub fn class_name(self) -> &'static str {
        match self {
            ConstructKind::Context => "BenchmarkContext",
            ConstructKind::Question => "BenchmarkQuestion",
            ConstructKind::Observation => "BenchmarkObservation",
            ConstructKind::Goal => "BenchmarkGoal",
            ConstructKind::FillInTheBlank => "BenchmarkFillInTheBlank",
            ConstructKind::Answer => "BenchmarkAnswer",
            ConstructKind::Ending => "BenchmarkEnding",
            ConstructKind::Solution => "BenchmarkSolution",
            ConstructKind::Hypothesis => "BenchmarkHypothesis",
            ConstructKind::TruthValue => "BenchmarkTruthValue",
        }
    }

    pub fn from_class_name(name: &str) -> Option<Self> {
        ConstructKind::ALL.into_iter().find(|c| c.class_name() == name)
    }

    /// Human-readable `rdfs:label` of the class.
    pub fn class_label(self) -> &'static str {
        match self {
            ConstructKind::Context => "Benchmark Context",
            ConstructKind::Question => "Benchmark Question",
            ConstructKind::Observation => "Benchmark Observation",
            ConstructKind::Goal => "Benchmark Goal",
            ConstructKind::FillInTheBlank => "Benchmark Fill In The Blank",
            ConstructKind::Answer => "Benchmark Answer",
            ConstructKind::Ending => "Benchmark Ending",
            ConstructKind::Solution => "Benchmark Solution",
            ConstructKind::Hypothesis => "Benchmark Hypothesis",
            ConstructKind::TruthValue => "Benchmark Truth Value",
        }
    }

    pub fn superclass_name(self) -> &'static str {
        if self.is_input() {
            "BenchmarkInput"
        } else {
            "BenchmarkChoice"
        }
    }
}

impl fmt::Display for ConstructKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReasoningCategory {
    pub label: String,
    pub class_iri: Iri,
}

impl ReasoningCategory {
    /// Inverse of the class naming rule for labels in canonical form
    /// (lowercase words separated by single spaces).
    pub fn from_class_iri(class_iri: Iri) -> Self {
        let mut label = String::new();
        let mut prev_lower = false;
        for c in class_iri.local_name().chars() {
            if c.is_uppercase() && prev_lower {
                label.push(' ');
            }
            prev_lower = c.is_lowercase() || c.is_ascii_digit();
            label.extend(c.to_lowercase());
        }
        ReasoningCategory { label, class_iri }
    }
}

/// Maps a category label onto its ontology class: words (split on whitespace
/// and punctuation) are capitalised and concatenated under the mcs namespace.
pub fn category_to_class(label: &str, vocab: &Vocab) -> Result<ReasoningCategory, ModelError> {
    let mut local = String::new();
    for word in label.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()) {
        let mut chars = word.chars();
        if let Some(first) = chars.next() {
            local.extend(first.to_uppercase());
            local.push_str(chars.as_str());
        }
    }
    if local.is_empty() {
        return Err(ModelError::EmptyCategoryLabel);
    }
    Ok(ReasoningCategory { label: label.to_string(), class_iri: Iri::parse(format!("{}{}", vocab.mcs, local))? })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputSegment {
    pub id: Iri,
    pub construct: ConstructKind,
    pub text: String,
    pub categories: BTreeSet<ReasoningCategory>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceSegment {
    pub id: Iri,
    pub construct: ConstructKind,
    pub text: String,
    pub ordinal: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalSample {
    pub id: Iri,
    pub benchmark: BenchmarkId,
    pub split: SplitKind,
    pub inputs: Vec<InputSegment>,
    pub choices: Vec<ChoiceSegment>,
    pub correct_choice: Option<Iri>,
    pub categories: BTreeSet<ReasoningCategory>,
}

impl CanonicalSample {
    pub fn correct_segment(&self) -> Option<&ChoiceSegment> {
        let target = self.correct_choice.as_ref()?;
        self.choices.iter().find(|c| &c.id == target)
    }

    pub fn correct_ordinal(&self) -> Option<u32> {
        self.correct_segment().map(|c| c.ordinal)
    }

    pub fn dataset_iri(&self) -> Iri {
        self.benchmark.dataset_iri(self.split)
    }

    pub fn constructs(&self) -> impl Iterator<Item = ConstructKind> + '_ {
        self.inputs.iter().map(|i| i.construct).chain(self.choices.iter().map(|c| c.construct))
    }
}

/// Local name `{benchmark}-{index}` resolved against the benchmark's base IRI.
pub fn mint_sample_id(benchmark: &BenchmarkId, index: u64) -> Iri {
    Iri(format!("{}{}-{}", benchmark.base_iri, benchmark.name, index))
}

/// Sample id for a record of `split`: training samples use
/// [`mint_sample_id`] unchanged, dev and test samples are qualified as
/// `{benchmark}-dev-{index}` and `{benchmark}-test-{index}`.
pub fn mint_split_sample_id(benchmark: &BenchmarkId, split: SplitKind, index: u64) -> Iri {
    match split {
        SplitKind::Train => mint_sample_id(benchmark, index),
        other => Iri(format!("{}{}-{}-{}", benchmark.base_iri, benchmark.name, other.as_str(), index)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    Input,
    Choice,
}

/// Inputs are numbered from 0, choices from 1.
pub fn mint_segment_id(sample_id: &Iri, kind: SegmentKind, position: u32) -> Result<Iri, ModelError> {
    match kind {
        SegmentKind::Input => Ok(Iri(format!("{sample_id}-input-{position}"))),
        SegmentKind::Choice if position == 0 => Err(ModelError::ChoicePositionZero),
        SegmentKind::Choice => Ok(Iri(format!("{sample_id}-choice-{position}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    NoInput,
    EmptyInputText,
    EmptyChoiceText,
    InputConstructMismatch,
    ChoiceConstructMismatch,
    SingleChoice,
    OrdinalSequence,
    DanglingCorrectChoice,
    MissingCorrectChoice,
    DuplicateSegmentId,
    SegmentIdPrefix,
    CategoryMismatch,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::NoInput => "NO_INPUT",
            ViolationCode::EmptyInputText => "EMPTY_INPUT_TEXT",
            ViolationCode::EmptyChoiceText => "EMPTY_CHOICE_TEXT",
            ViolationCode::InputConstructMismatch => "INPUT_CONSTRUCT_MISMATCH",
            ViolationCode::ChoiceConstructMismatch => "CHOICE_CONSTRUCT_MISMATCH",
            ViolationCode::SingleChoice => "SINGLE_CHOICE",
            ViolationCode::OrdinalSequence => "ORDINAL_SEQUENCE",
            ViolationCode::DanglingCorrectChoice => "DANGLING_CORRECT_CHOICE",
            ViolationCode::MissingCorrectChoice => "MISSING_CORRECT_CHOICE",
            ViolationCode::DuplicateSegmentId => "DUPLICATE_SEGMENT_ID",
            ViolationCode::SegmentIdPrefix => "SEGMENT_ID_PREFIX",
            ViolationCode::CategoryMismatch => "CATEGORY_MISMATCH",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn codes(&self) -> BTreeSet<ViolationCode> {
        self.violations.iter().map(|v| v.code).collect()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    fn push(&mut self, code: ViolationCode, detail: String) {
        self.violations.push(Violation { code, detail });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", v.code, v.detail)?;
        }
        Ok(())
    }
}

/// Lists every violated sample invariant. An empty report means valid.
pub fn validate_sample(sample: &CanonicalSample) -> ValidationReport {
    use ViolationCode::*;
    let mut report = ValidationReport::default();

    if sample.inputs.is_empty() {
        report.push(NoInput, String::from("sample has no inputs"));
    }
    let prefix = format!("{}-", sample.id);
    let mut seen = BTreeSet::new();
    for input in &sample.inputs {
        if input.text.trim().is_empty() {
            report.push(EmptyInputText, format!("{} has empty text", input.id));
        }
        if !input.construct.is_input() {
            report.push(InputConstructMismatch, format!("{} carries choice construct {}", input.id, input.construct));
        }
    }
    for choice in &sample.choices {
        if choice.text.trim().is_empty() {
            report.push(EmptyChoiceText, format!("{} has empty text", choice.id));
        }
        if !choice.construct.is_choice() {
            report.push(ChoiceConstructMismatch, format!("{} carries input construct {}", choice.id, choice.construct));
        }
    }
    for id in sample.inputs.iter().map(|i| &i.id).chain(sample.choices.iter().map(|c| &c.id)) {
        if !seen.insert(id) {
            report.push(DuplicateSegmentId, format!("{id} occurs more than once"));
        }
        if !id.as_str().starts_with(&prefix) {
            report.push(SegmentIdPrefix, format!("{id} is not prefixed by {}", sample.id));
        }
    }

    if sample.choices.len() == 1 {
        report.push(SingleChoice, String::from("exactly one choice; multiple choice needs at least two"));
    }
    let mut ordinals: Vec<u32> = sample.choices.iter().map(|c| c.ordinal).collect();
    ordinals.sort_unstable();
    if ordinals.iter().enumerate().any(|(i, &o)| o as usize != i + 1) {
        report.push(OrdinalSequence, format!("choice ordinals {ordinals:?} are not 1..={}", ordinals.len()));
    }

    match &sample.correct_choice {
        Some(target) if !sample.choices.iter().any(|c| &c.id == target) => {
            report.push(DanglingCorrectChoice, format!("correct choice {target} is not among the choices"));
        }
        None if !sample.choices.is_empty() && sample.split != SplitKind::Test => {
            report.push(MissingCorrectChoice, format!("{} sample without correct choice", sample.split));
        }
        _ => {}
    }

    if !sample.inputs.is_empty() {
        let union: BTreeSet<&ReasoningCategory> = sample.inputs.iter().flat_map(|i| i.categories.iter()).collect();
        let own: BTreeSet<&ReasoningCategory> = sample.categories.iter().collect();
        if union != own {
            report.push(CategoryMismatch, String::from("sample categories differ from the union of input categories"));
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchmarkEntry {
    pub id: BenchmarkId,
    pub question_types: BTreeSet<QuestionType>,
}

/// Benchmarks, their datasets and all samples. Sample ids are unique.
#[derive(Debug, Clone, Default)]
pub struct BenchmarkCorpus {
    benchmarks: BTreeMap<String, BenchmarkEntry>,
    datasets: BTreeMap<(String, SplitKind), Iri>,
    samples: Vec<CanonicalSample>,
    by_id: BTreeMap<Iri, usize>,
}

impl BenchmarkCorpus {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a benchmark; re-registering merges question types.
    pub fn register_benchmark(
        &mut self,
        id: BenchmarkId,
        question_types: impl IntoIterator<Item = QuestionType>,
    ) -> Result<(), ModelError> {
        match self.benchmarks.get_mut(id.name()) {
            Some(entry) if entry.id != id => Err(ModelError::ConflictingBenchmark(id.name().to_string())),
            Some(entry) => {
                entry.question_types.extend(question_types);
                Ok(())
            }
            None => {
                let entry = BenchmarkEntry { id: id.clone(), question_types: question_types.into_iter().collect() };
                self.benchmarks.insert(id.name().to_string(), entry);
                Ok(())
            }
        }
    }

    pub fn register_dataset(&mut self, benchmark: &str, split: SplitKind) -> Result<Iri, ModelError> {
        let entry =
            self.benchmarks.get(benchmark).ok_or_else(|| ModelError::UnknownBenchmark(benchmark.to_string()))?;
        let iri = entry.id.dataset_iri(split);
        self.datasets.insert((benchmark.to_string(), split), iri.clone());
        Ok(iri)
    }

    /// Adds a valid sample, registering its dataset if needed.
    pub fn add_sample(&mut self, sample: CanonicalSample) -> Result<(), ModelError> {
        match self.benchmarks.get(sample.benchmark.name()) {
            None => return Err(ModelError::UnknownBenchmark(sample.benchmark.name().to_string())),
            Some(entry) if entry.id != sample.benchmark => {
                return Err(ModelError::ConflictingBenchmark(sample.benchmark.name().to_string()))
            }
            Some(_) => {}
        }
        if self.by_id.contains_key(&sample.id) {
            return Err(ModelError::DuplicateSampleId(sample.id.to_string()));
        }
        let report = validate_sample(&sample);
        if !report.is_valid() {
            return Err(ModelError::InvalidSample { id: sample.id.to_string(), report });
        }
        self.register_dataset(sample.benchmark.name(), sample.split)?;
        self.by_id.insert(sample.id.clone(), self.samples.len());
        self.samples.push(sample);
        Ok(())
    }

    pub fn benchmarks(&self) -> impl Iterator<Item = &BenchmarkEntry> {
        self.benchmarks.values()
    }

    pub fn benchmark(&self, name: &str) -> Option<&BenchmarkEntry> {
        self.benchmarks.get(name)
    }

    pub fn datasets(&self) -> impl Iterator<Item = (&str, SplitKind, &Iri)> {
        self.datasets.iter().map(|((b, s), iri)| (b.as_str(), *s, iri))
    }

    pub fn dataset_iri(&self, benchmark: &str, split: SplitKind) -> Option<&Iri> {
        self.datasets.get(&(benchmark.to_string(), split))
    }

    pub fn samples(&self) -> &[CanonicalSample] {
        &self.samples
    }

    pub fn sample(&self, id: &Iri) -> Option<&CanonicalSample> {
        self.by_id.get(id).map(|&i| &self.samples[i])
    }

    pub fn contains_sample(&self, sample: &CanonicalSample) -> bool {
        self.sample(&sample.id).is_some_and(|s| s == sample)
    }

    pub fn is_empty(&self) -> bool {
        self.benchmarks.is_empty() && self.samples.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn social() -> BenchmarkId {
        BenchmarkId::new("SocialIQa", "https://w3id.org/mcs/data/").unwrap()
    }

    fn local(iri: &Iri) -> &str {
        iri.as_str().strip_prefix("https://w3id.org/mcs/data/").unwrap()
    }

    fn skylar_sample() -> CanonicalSample {
        let b = social();
        let id = mint_sample_id(&b, 37);
        let input = |i: u32, construct, text: &str| InputSegment {
            id: mint_segment_id(&id, SegmentKind::Input, i).unwrap(),
            construct,
            text: text.into(),
            categories: BTreeSet::new(),
        };
        let choice = |j: u32, text: &str| ChoiceSegment {
            id: mint_segment_id(&id, SegmentKind::Choice, j).unwrap(),
            construct: ConstructKind::Answer,
            text: text.into(),
            ordinal: j,
        };
        CanonicalSample {
            inputs: vec![
                input(
                    0,
                    ConstructKind::Context,
                    "Skylar returned early in the evening after a night and day of partying.",
                ),
                input(1, ConstructKind::Question, "How would you describe Skylar?"),
            ],
            choices: vec![choice(1, "a party girl"), choice(2, "very shy"), choice(3, "exhausted")],
            correct_choice: Some(mint_segment_id(&id, SegmentKind::Choice, 1).unwrap()),
            categories: BTreeSet::new(),
            id,
            benchmark: b,
            split: SplitKind::Train,
        }
    }

    #[test]
    fn sample_ids_follow_split_scheme() {
        let b = social();
        assert_eq!(local(&mint_sample_id(&b, 37)), "SocialIQa-37");
        assert_eq!(local(&mint_sample_id(&b, 0)), "SocialIQa-0");
        let cyc = BenchmarkId::new("CycIC", "https://w3id.org/mcs/data/").unwrap();
        assert_eq!(local(&mint_sample_id(&cyc, 1024)), "CycIC-1024");
    }

    #[test]
    fn sample_ids_are_injective_across_benchmarks() {
        let a = social();
        let b = BenchmarkId::new("CycIC", "https://w3id.org/mcs/data/").unwrap();
        let mut seen = BTreeSet::new();
        for bench in [&a, &b] {
            for i in 0..=2000 {
                assert!(seen.insert(mint_sample_id(bench, i)));
            }
        }
        assert_eq!(seen.len(), 4002);
    }

    #[test]
    fn split_ids_are_injective() {
        let b = social();
        assert_eq!(local(&mint_split_sample_id(&b, SplitKind::Train, 37)), "SocialIQa-37");
        assert_eq!(local(&mint_split_sample_id(&b, SplitKind::Dev, 0)), "SocialIQa-dev-0");
        let mut seen = BTreeSet::new();
        for split in SplitKind::ALL {
            for i in 0..=500 {
                assert!(seen.insert(mint_split_sample_id(&b, split, i)));
            }
        }
        assert!(BenchmarkId::new("Social-IQa", "https://w3id.org/mcs/data/").is_err());
    }

    #[test]
    fn segment_ids() {
        let id = mint_sample_id(&social(), 37);
        let input = mint_segment_id(&id, SegmentKind::Input, 0).unwrap();
        assert_eq!(local(&input), "SocialIQa-37-input-0");
        let choice = mint_segment_id(&id, SegmentKind::Choice, 1).unwrap();
        assert_eq!(local(&choice), "SocialIQa-37-choice-1");
        assert_eq!(mint_segment_id(&id, SegmentKind::Choice, 0), Err(ModelError::ChoicePositionZero));
    }

    #[test]
    fn benchmark_id_rules() {
        assert!(BenchmarkId::new("", "https://x.org/").is_err());
        assert!(BenchmarkId::new("Social IQa", "https://x.org/").is_err());
        assert!(BenchmarkId::new("SocialIQa", "https://x.org").is_err());
        assert!(BenchmarkId::new("SocialIQa", "not an iri/").is_err());
        assert!(BenchmarkId::new("SocialIQa", "https://x.org/ns#").is_ok());
    }

    #[test]
    fn skylar_sample_is_valid() {
        assert_eq!(validate_sample(&skylar_sample()), ValidationReport::default());
    }

    #[test]
    fn zero_inputs_reported() {
        let mut s = skylar_sample();
        s.inputs.clear();
        assert_eq!(validate_sample(&s).codes(), [ViolationCode::NoInput].into_iter().collect());
    }

    #[test]
    fn dangling_correct_choice_reported() {
        let mut s = skylar_sample();
        s.correct_choice = Some(mint_segment_id(&s.id, SegmentKind::Choice, 9).unwrap());
        assert_eq!(validate_sample(&s).codes(), [ViolationCode::DanglingCorrectChoice].into_iter().collect());
    }

    #[test]
    fn test_split_may_omit_label() {
        let mut s = skylar_sample();
        s.correct_choice = None;
        assert!(validate_sample(&s).has(ViolationCode::MissingCorrectChoice));
        s.split = SplitKind::Test;
        assert!(validate_sample(&s).is_valid());
    }

    #[test]
    fn category_classes() {
        let v = Vocab::default();
        assert_eq!(
            category_to_class("logical reasoning", &v).unwrap().class_iri.as_str(),
            "https://w3id.org/mcs#LogicalReasoning"
        );
        assert_eq!(
            category_to_class("LogicalReasoning", &v).unwrap().class_iri.as_str(),
            "https://w3id.org/mcs#LogicalReasoning"
        );
        assert_eq!(category_to_class("norms", &v).unwrap().class_iri.as_str(), "https://w3id.org/mcs#Norms");
        assert_eq!(category_to_class("", &v), Err(ModelError::EmptyCategoryLabel));
        assert_eq!(category_to_class(" - ", &v), Err(ModelError::EmptyCategoryLabel));
    }

    #[test]
    fn category_label_recovered_from_class() {
        let v = Vocab::default();
        let c = category_to_class("logical reasoning", &v).unwrap();
        assert_eq!(ReasoningCategory::from_class_iri(c.class_iri.clone()), c);
    }

    #[test]
    fn corpus_rejects_duplicates_and_unknown_benchmarks() {
        let mut corpus = BenchmarkCorpus::new();
        assert!(matches!(corpus.add_sample(skylar_sample()), Err(ModelError::UnknownBenchmark(_))));
        corpus.register_benchmark(social(), [QuestionType::MultipleChoice]).unwrap();
        corpus.add_sample(skylar_sample()).unwrap();
        assert!(matches!(corpus.add_sample(skylar_sample()), Err(ModelError::DuplicateSampleId(_))));
        assert_eq!(
            corpus.dataset_iri("SocialIQa", SplitKind::Train).map(Iri::as_str),
            Some("https://w3id.org/mcs/data/SocialIQa/train")
        );
    }
}
