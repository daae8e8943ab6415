//! Compact JSON-LD for samples, its inverse, and RDF expansion.
//!
//! Documents carry unprefixed keys (`input`, `choice`, ...). The context
//! produced by [`emit_context`] supplies `@vocab` (the ontology namespace),
//! `@base` (the entity base IRI) and `@id` coercion for reference-valued
//! properties. [`expand_document`] is a small context-driven JSON-LD to RDF
//! expander that knows nothing about the sample model; [`expand_to_triples`]
//! builds the same triples directly from the model.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::model::{
    check_absolute_iri, validate_sample, BenchmarkCorpus, BenchmarkId, CanonicalSample, ChoiceSegment, ConstructKind,
    InputSegment, Iri, ModelError, ReasoningCategory, SplitKind, ValidationReport,
};
use crate::store::Term;
use crate::vocab::{
    Vocab, DEFAULT_BASE_IRI, RDFS_LABEL, RDFS_NS, RDFS_SUBCLASS_OF, RDF_NS, RDF_TYPE, SCHEMA_DATASET, SCHEMA_NS,
    SCHEMA_TEXT,
};

pub type RdfTriple = [Term; 3];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonLdError {
    #[error("malformed document: {0}")]
    Syntax(String),
    #[error("document has no input")]
    NoInput,
    #[error("unknown @type {0:?}")]
    UnknownType(String),
    #[error("correctChoice {0} is not among the choices")]
    DanglingCorrectChoice(String),
    #[error("includedInDataset {0:?} is not a {{benchmark}}/{{train|dev|test}} dataset IRI")]
    BadDataset(String),
    #[error("invalid sample: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl JsonLdError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            JsonLdError::Syntax(_) => "SYNTAX",
            JsonLdError::NoInput => "NO_INPUT",
            JsonLdError::UnknownType(_) => "UNKNOWN_TYPE",
            JsonLdError::DanglingCorrectChoice(_) => "DANGLING_CORRECT_CHOICE",
            JsonLdError::BadDataset(_) => "BAD_DATASET",
            JsonLdError::Invalid(_) => "INVALID_SAMPLE",
            JsonLdError::Model(_) => "INVALID_IRI",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpandError {
    #[error("sample {0} is not registered in the corpus")]
    Unregistered(String),
    #[error("node without @id; blank nodes are not supported")]
    BlankNode,
    #[error("unsupported JSON-LD construct: {0}")]
    Unsupported(String),
    #[error("{0:?} does not expand to an absolute IRI")]
    NotAnIri(String),
    #[error("context: {0}")]
    Context(String),
}

/// Settings shared by compaction and its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonLdOptions {
    /// Value written to `@context`.
    pub context_ref: String,
    /// `@base` used to shorten entity IRIs.
    pub base: String,
    pub vocab: Vocab,
}

impl Default for JsonLdOptions {
    fn default() -> Self {
        JsonLdOptions {
            context_ref: String::from("https://w3id.org/mcs/context.jsonld"),
            base: DEFAULT_BASE_IRI.to_string(),
            vocab: Vocab::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TypeValue {
    One(String),
    Many(Vec<String>),
}

impl TypeValue {
    pub fn names(&self) -> &[String] {
        match self {
            TypeValue::One(t) => core::slice::from_ref(t),
            TypeValue::Many(ts) => ts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    #[serde(rename = "@id")]
    pub id: String,
    #[serde(rename = "@type")]
    pub node_type: TypeValue,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdRef {
    #[serde(rename = "@id")]
    pub id: String,
}

/// One sample in compact form. Field order is the serialised key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonLdDoc {
    #[serde(rename = "@context")]
    pub context: Value,
    #[serde(rename = "@id")]
    pub id: String,
    #[serde(rename = "@type")]
    pub node_type: String,
    #[serde(rename = "includedInDataset")]
    pub included_in_dataset: String,
    #[serde(default)]
    pub input: Vec<NodeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub choice: Vec<NodeDoc>,
    #[serde(rename = "correctChoice", default, skip_serializing_if = "Option::is_none")]
    pub correct_choice: Option<IdRef>,
}

impl JsonLdDoc {
    pub fn parse(text: &str) -> Result<Self, JsonLdError> {
        serde_json::from_str(text).map_err(|e| JsonLdError::Syntax(e.to_string()))
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("documents serialise")
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialise")
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("documents serialise")
    }
}

fn compact_id(iri: &Iri, base: &str) -> String {
    match iri.as_str().strip_prefix(base) {
        Some(rest) if !rest.is_empty() && check_absolute_iri(rest).is_err() => rest.to_string(),
        _ => iri.to_string(),
    }
}

fn compact_type(iri: &Iri, vocab: &Vocab) -> String {
    match iri.as_str().strip_prefix(vocab.mcs.as_str()) {
        Some(rest) if !rest.is_empty() && check_absolute_iri(rest).is_err() => rest.to_string(),
        _ => iri.to_string(),
    }
}

fn resolve_id(text: &str, base: &str) -> Result<Iri, ModelError> {
    if check_absolute_iri(text).is_ok() {
        Iri::parse(text)
    } else {
        Iri::parse(format!("{base}{text}"))
    }
}

/// Compact document for a valid sample.
pub fn to_jsonld(sample: &CanonicalSample, opts: &JsonLdOptions) -> Result<JsonLdDoc, JsonLdError> {
    let report = validate_sample(sample);
    if !report.is_valid() {
        return Err(JsonLdError::Invalid(report));
    }
    let base = opts.base.as_str();
    let input = sample
        .inputs
        .iter()
        .map(|i| {
            let class = i.construct.class_name().to_string();
            let node_type = if i.categories.is_empty() {
                TypeValue::One(class)
            } else {
                let mut types = alloc::vec![class];
                types.extend(i.categories.iter().map(|c| compact_type(&c.class_iri, &opts.vocab)));
                TypeValue::Many(types)
            };
            NodeDoc { id: compact_id(&i.id, base), node_type, text: i.text.clone() }
        })
        .collect();
    let choice = sample
        .choices
        .iter()
        .map(|c| NodeDoc {
            id: compact_id(&c.id, base),
            node_type: TypeValue::One(c.construct.class_name().to_string()),
            text: c.text.clone(),
        })
        .collect();
    Ok(JsonLdDoc {
        context: Value::String(opts.context_ref.clone()),
        id: compact_id(&sample.id, base),
        node_type: String::from("BenchmarkSample"),
        included_in_dataset: compact_id(&sample.dataset_iri(), base),
        input,
        choice,
        correct_choice: sample.correct_choice.as_ref().map(|c| IdRef { id: compact_id(c, base) }),
    })
}

/// Splits `{base}{benchmark}/{split}` into its benchmark and split.
pub fn parse_dataset_iri(iri: &Iri) -> Option<(BenchmarkId, SplitKind)> {
    let text = iri.as_str();
    let slash = text.rfind('/')?;
    let split = SplitKind::parse(&text[slash + 1..])?;
    let head = &text[..slash];
    let cut = head.rfind(['/', '#'])? + 1;
    let benchmark = BenchmarkId::new(&head[cut..], &head[..cut]).ok()?;
    Some((benchmark, split))
}

fn category_from_type(name: &str, vocab: &Vocab) -> Result<ReasoningCategory, JsonLdError> {
    let iri = if check_absolute_iri(name).is_ok() {
        if !name.starts_with(vocab.mcs.as_str()) {
            return Err(JsonLdError::UnknownType(name.to_string()));
        }
        Iri::parse(name)?
    } else {
        Iri::parse(format!("{}{}", vocab.mcs, name))?
    };
    Ok(ReasoningCategory::from_class_iri(iri))
}

/// Inverse of [`to_jsonld`].
pub fn from_jsonld(doc: &JsonLdDoc, opts: &JsonLdOptions) -> Result<CanonicalSample, JsonLdError> {
    let base = opts.base.as_str();
    if doc.node_type != "BenchmarkSample" {
        return Err(JsonLdError::UnknownType(doc.node_type.clone()));
    }
    if doc.input.is_empty() {
        return Err(JsonLdError::NoInput);
    }
    let id = resolve_id(&doc.id, base)?;
    let dataset = resolve_id(&doc.included_in_dataset, base)?;
    let (benchmark, split) =
        parse_dataset_iri(&dataset).ok_or_else(|| JsonLdError::BadDataset(doc.included_in_dataset.clone()))?;

    let mut inputs = Vec::with_capacity(doc.input.len());
    let mut categories = BTreeSet::new();
    for node in &doc.input {
        let mut construct = None;
        let mut node_categories = BTreeSet::new();
        for name in node.node_type.names() {
            match ConstructKind::from_class_name(name) {
                Some(kind) if kind.is_input() && construct.is_none() => construct = Some(kind),
                Some(_) => return Err(JsonLdError::UnknownType(name.clone())),
                None => {
                    node_categories.insert(category_from_type(name, &opts.vocab)?);
                }
            }
        }
        let construct = construct.ok_or_else(|| JsonLdError::UnknownType(node.node_type.names().join(",")))?;
        categories.extend(node_categories.iter().cloned());
        inputs.push(InputSegment {
            id: resolve_id(&node.id, base)?,
            construct,
            text: node.text.clone(),
            categories: node_categories,
        });
    }
    let mut choices = Vec::with_capacity(doc.choice.len());
    for (j, node) in doc.choice.iter().enumerate() {
        let construct = match node.node_type.names() {
            [name] => ConstructKind::from_class_name(name)
                .filter(|k| k.is_choice())
                .ok_or_else(|| JsonLdError::UnknownType(name.clone()))?,
            names => return Err(JsonLdError::UnknownType(names.join(","))),
        };
        choices.push(ChoiceSegment {
            id: resolve_id(&node.id, base)?,
            construct,
            text: node.text.clone(),
            ordinal: j as u32 + 1,
        });
    }
    let correct_choice = match &doc.correct_choice {
        None => None,
        Some(r) => {
            let target = resolve_id(&r.id, base)?;
            if !choices.iter().any(|c| c.id == target) {
                return Err(JsonLdError::DanglingCorrectChoice(r.id.clone()));
            }
            Some(target)
        }
    };
    let sample = CanonicalSample { id, benchmark, split, inputs, choices, correct_choice, categories };
    let report = validate_sample(&sample);
    if !report.is_valid() {
        return Err(JsonLdError::Invalid(report));
    }
    Ok(sample)
}

/// The `@context` document used by every emitted sample.
pub fn emit_context(opts: &JsonLdOptions) -> Value {
    let reference = |id: &str| {
        let mut m = Map::new();
        m.insert("@id".into(), Value::String(id.into()));
        m.insert("@type".into(), Value::String("@id".into()));
        Value::Object(m)
    };
    let mut ctx = Map::new();
    ctx.insert("@vocab".into(), Value::String(opts.vocab.mcs.clone()));
    ctx.insert("@base".into(), Value::String(opts.base.clone()));
    ctx.insert("mcs".into(), Value::String(opts.vocab.mcs.clone()));
    ctx.insert("schema".into(), Value::String(SCHEMA_NS.into()));
    ctx.insert("rdf".into(), Value::String(RDF_NS.into()));
    ctx.insert("rdfs".into(), Value::String(RDFS_NS.into()));
    ctx.insert("text".into(), Value::String("schema:text".into()));
    ctx.insert("input".into(), reference("mcs:input"));
    ctx.insert("choice".into(), reference("mcs:choice"));
    ctx.insert("correctChoice".into(), reference("mcs:correctChoice"));
    ctx.insert("includedInDataset".into(), reference("mcs:includedInDataset"));
    ctx.insert("sample".into(), reference("mcs:sample"));
    ctx.insert("dataset".into(), reference("schema:dataset"));
    let mut doc = Map::new();
    doc.insert("@context".into(), Value::Object(ctx));
    Value::Object(doc)
}

/// Reads `@base` and `@vocab` back out of a context document.
pub fn options_from_context(context: &Value, context_ref: impl Into<String>) -> Result<JsonLdOptions, ExpandError> {
    let parsed = ParsedContext::new(context)?;
    Ok(JsonLdOptions {
        context_ref: context_ref.into(),
        base: parsed.base.unwrap_or_else(|| DEFAULT_BASE_IRI.to_string()),
        vocab: Vocab::with_namespace(parsed.vocab.ok_or_else(|| ExpandError::Context("missing @vocab".into()))?),
    })
}

struct TermDef {
    iri: String,
    id_coerced: bool,
}

struct ParsedContext {
    vocab: Option<String>,
    base: Option<String>,
    terms: BTreeMap<String, TermDef>,
}

impl ParsedContext {
    fn new(context: &Value) -> Result<Self, ExpandError> {
        let body = match context {
            Value::Object(m) if m.contains_key("@context") => &m["@context"],
            other => other,
        };
        let body = body.as_object().ok_or_else(|| ExpandError::Context("expected an object".into()))?;
        let text = |v: &Value, what: &str| {
            v.as_str().map(str::to_string).ok_or_else(|| ExpandError::Context(format!("{what} must be a string")))
        };
        let mut parsed = ParsedContext { vocab: None, base: None, terms: BTreeMap::new() };
        let mut raw: Vec<(&String, String, bool)> = Vec::new();
        for (key, value) in body {
            match key.as_str() {
                "@vocab" => parsed.vocab = Some(text(value, "@vocab")?),
                "@base" => parsed.base = Some(text(value, "@base")?),
                k if k.starts_with('@') => return Err(ExpandError::Unsupported(format!("context keyword {k}"))),
                _ => match value {
                    Value::String(s) => raw.push((key, s.clone(), false)),
                    Value::Object(def) => {
                        let id = text(def.get("@id").unwrap_or(&Value::Null), "@id")?;
                        let coerced = match def.get("@type") {
                            None => false,
                            Some(Value::String(t)) if t == "@id" => true,
                            Some(other) => return Err(ExpandError::Unsupported(format!("term type {other}"))),
                        };
                        raw.push((key, id, coerced));
                    }
                    _ => return Err(ExpandError::Context(format!("bad definition for {key}"))),
                },
            }
        }
        for (key, value, coerced) in raw {
            parsed.terms.insert(key.clone(), TermDef { iri: value, id_coerced: coerced });
        }
        // Resolve `prefix:local` definitions.
        let resolved: Vec<(String, String)> =
            parsed.terms.iter().map(|(k, d)| (k.clone(), parsed.expand_compact(&d.iri))).collect();
        for (k, iri) in resolved {
            parsed.terms.get_mut(&k).expect("present").iri = iri;
        }
        Ok(parsed)
    }

    /// `prefix:local` through a term definition; otherwise unchanged.
    fn expand_compact(&self, text: &str) -> String {
        if let Some((prefix, local)) = text.split_once(':') {
            if !local.starts_with("//") {
                if let Some(def) = self.terms.get(prefix) {
                    return format!("{}{}", def.iri, local);
                }
            }
        }
        text.to_string()
    }

    /// Vocabulary-relative expansion for keys and `@type` values.
    fn expand_vocab(&self, text: &str) -> Result<Iri, ExpandError> {
        if let Some(def) = self.terms.get(text) {
            return Iri::parse(def.iri.clone()).map_err(|_| ExpandError::NotAnIri(text.to_string()));
        }
        let expanded = self.expand_compact(text);
        if check_absolute_iri(&expanded).is_ok() {
            return Iri::parse(expanded).map_err(|_| ExpandError::NotAnIri(text.to_string()));
        }
        match &self.vocab {
            Some(v) => Iri::parse(format!("{v}{text}")).map_err(|_| ExpandError::NotAnIri(text.to_string())),
            None => Err(ExpandError::NotAnIri(text.to_string())),
        }
    }

    /// Document-relative expansion for `@id` values.
    fn expand_id(&self, text: &str) -> Result<Iri, ExpandError> {
        let expanded = self.expand_compact(text);
        if check_absolute_iri(&expanded).is_ok() {
            return Iri::parse(expanded).map_err(|_| ExpandError::NotAnIri(text.to_string()));
        }
        match &self.base {
            Some(b) => Iri::parse(format!("{b}{text}")).map_err(|_| ExpandError::NotAnIri(text.to_string())),
            None => Err(ExpandError::NotAnIri(text.to_string())),
        }
    }
}

/// Converts a compact document to RDF triples using only `context`.
/// Handles nested node objects, `@type` arrays, `@id` coercion and plain
/// string literals; anything else is reported as unsupported.
pub fn expand_document(doc: &Value, context: &Value) -> Result<Vec<RdfTriple>, ExpandError> {
    let ctx = ParsedContext::new(context)?;
    let mut out = Vec::new();
    expand_node(doc, &ctx, &mut out)?;
    Ok(out)
}

fn expand_node(node: &Value, ctx: &ParsedContext, out: &mut Vec<RdfTriple>) -> Result<Iri, ExpandError> {
    let map = node.as_object().ok_or_else(|| ExpandError::Unsupported("node is not an object".into()))?;
    let id = match map.get("@id") {
        Some(Value::String(s)) => ctx.expand_id(s)?,
        _ => return Err(ExpandError::BlankNode),
    };
    let subject = Term::Iri(id.clone());
    for (key, value) in map {
        match key.as_str() {
            "@id" | "@context" => {}
            "@type" => {
                let names: Vec<&Value> = match value {
                    Value::Array(items) => items.iter().collect(),
                    other => alloc::vec![other],
                };
                for name in names {
                    let name = name.as_str().ok_or_else(|| ExpandError::Unsupported("non-string @type".into()))?;
                    out.push([subject.clone(), Term::known_iri(RDF_TYPE), Term::Iri(ctx.expand_vocab(name)?)]);
                }
            }
            k if k.starts_with('@') => return Err(ExpandError::Unsupported(format!("keyword {k}"))),
            _ => {
                let predicate = Term::Iri(ctx.expand_vocab(key)?);
                let coerced = ctx.terms.get(key.as_str()).is_some_and(|d| d.id_coerced);
                let values: Vec<&Value> = match value {
                    Value::Array(items) => items.iter().collect(),
                    other => alloc::vec![other],
                };
                for v in values {
                    let object = match v {
                        Value::Object(_) => Term::Iri(expand_node_or_ref(v, ctx, out)?),
                        Value::String(s) if coerced => Term::Iri(ctx.expand_id(s)?),
                        Value::String(s) => Term::literal(s.clone()),
                        other => return Err(ExpandError::Unsupported(format!("value {other}"))),
                    };
                    out.push([subject.clone(), predicate.clone(), object]);
                }
            }
        }
    }
    Ok(id)
}

fn expand_node_or_ref(v: &Value, ctx: &ParsedContext, out: &mut Vec<RdfTriple>) -> Result<Iri, ExpandError> {
    match v.as_object() {
        Some(m) if m.len() == 1 => match m.get("@id") {
            Some(Value::String(s)) => ctx.expand_id(s),
            _ => expand_node(v, ctx, out),
        },
        _ => expand_node(v, ctx, out),
    }
}

fn iri_term(iri: &Iri) -> Term {
    Term::Iri(iri.clone())
}

/// Sample-local triples of a registered sample, including the inverse
/// `dataset mcs:sample sample` link.
pub fn expand_to_triples(
    sample: &CanonicalSample,
    corpus: &BenchmarkCorpus,
    vocab: &Vocab,
) -> Result<Vec<RdfTriple>, ExpandError> {
    if !corpus.contains_sample(sample) {
        return Err(ExpandError::Unregistered(sample.id.to_string()));
    }
    let mcs = |local: &str| Term::known_iri(vocab.term(local));
    let rdf_type = Term::known_iri(RDF_TYPE);
    let text = Term::known_iri(SCHEMA_TEXT);
    let s = iri_term(&sample.id);
    let dataset = iri_term(&sample.dataset_iri());

    let mut out = Vec::with_capacity(4 + 4 * sample.inputs.len() + 3 * sample.choices.len());
    out.push([s.clone(), rdf_type.clone(), mcs("BenchmarkSample")]);
    out.push([s.clone(), mcs("includedInDataset"), dataset.clone()]);
    out.push([dataset, mcs("sample"), s.clone()]);
    for input in &sample.inputs {
        let i = iri_term(&input.id);
        out.push([s.clone(), mcs("input"), i.clone()]);
        out.push([i.clone(), rdf_type.clone(), mcs(input.construct.class_name())]);
        for category in &input.categories {
            out.push([i.clone(), rdf_type.clone(), iri_term(&category.class_iri)]);
        }
        out.push([i, text.clone(), Term::literal(input.text.clone())]);
    }
    for choice in &sample.choices {
        let c = iri_term(&choice.id);
        out.push([s.clone(), mcs("choice"), c.clone()]);
        out.push([c.clone(), rdf_type.clone(), mcs(choice.construct.class_name())]);
        out.push([c, text.clone(), Term::literal(choice.text.clone())]);
    }
    if let Some(correct) = &sample.correct_choice {
        out.push([s, mcs("correctChoice"), iri_term(correct)]);
    }
    Ok(out)
}

/// `1 + 2 + Σ(3 + |categories|) + 3·|choices| + [labelled]`.
pub fn sample_triple_count(sample: &CanonicalSample) -> usize {
    3 + sample.inputs.iter().map(|i| 3 + i.categories.len()).sum::<usize>()
        + 3 * sample.choices.len()
        + usize::from(sample.correct_choice.is_some())
}

fn class_label(local: &str) -> String {
    let mut label = String::new();
    for (i, c) in local.char_indices() {
        if i > 0 && c.is_uppercase() {
            label.push(' ');
        }
        label.push(c);
    }
    label
}

/// Dataset, task and class triples: per benchmark `task rdf:type mcs:Benchmark`
/// and `rdfs:label`; per dataset its class and `task schema:dataset D`; per
/// class used in the corpus an `rdfs:label`, plus `rdfs:subClassOf` for
/// construct classes.
pub fn scaffolding_triples(corpus: &BenchmarkCorpus, vocab: &Vocab) -> Vec<RdfTriple> {
    let mcs = |local: &str| Term::known_iri(vocab.term(local));
    let rdf_type = Term::known_iri(RDF_TYPE);
    let label = Term::known_iri(RDFS_LABEL);
    let mut out = Vec::new();
    let mut classes: BTreeMap<Iri, String> = BTreeMap::new();
    let mut constructs: BTreeSet<ConstructKind> = BTreeSet::new();
    let class_iri = |local: &str| Iri::parse(vocab.term(local)).expect("vocabulary IRI");

    for entry in corpus.benchmarks() {
        let task = iri_term(&entry.id.task_iri());
        out.push([task.clone(), rdf_type.clone(), mcs("Benchmark")]);
        out.push([task, label.clone(), Term::literal(entry.id.name())]);
        classes.insert(class_iri("Benchmark"), class_label("Benchmark"));
    }
    for (benchmark, split, dataset) in corpus.datasets() {
        let entry = corpus.benchmark(benchmark).expect("datasets belong to registered benchmarks");
        out.push([iri_term(dataset), rdf_type.clone(), mcs(split.dataset_class())]);
        out.push([iri_term(&entry.id.task_iri()), Term::known_iri(SCHEMA_DATASET), iri_term(dataset)]);
        classes.insert(class_iri(split.dataset_class()), class_label(split.dataset_class()));
    }
    for sample in corpus.samples() {
        classes.entry(class_iri("BenchmarkSample")).or_insert_with(|| class_label("BenchmarkSample"));
        constructs.extend(sample.constructs());
        for category in &sample.categories {
            classes.entry(category.class_iri.clone()).or_insert_with(|| category.label.clone());
        }
    }
    for kind in &constructs {
        classes.insert(class_iri(kind.class_name()), kind.class_label().to_string());
    }
    for (class, text) in &classes {
        out.push([iri_term(class), label.clone(), Term::literal(text.clone())]);
    }
    for kind in constructs {
        out.push([mcs(kind.class_name()), Term::known_iri(RDFS_SUBCLASS_OF), mcs(kind.superclass_name())]);
    }
    out
}
