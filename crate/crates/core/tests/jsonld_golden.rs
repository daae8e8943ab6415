mod common;

use std::collections::BTreeSet;
use std::fs;

use mcsbench_core::jsonld::{
    emit_context, expand_document, expand_to_triples, from_jsonld, options_from_context, scaffolding_triples,
    to_jsonld, JsonLdDoc, JsonLdOptions,
};
use mcsbench_core::model::{ConstructKind, SplitKind};
use mcsbench_core::ntriples;
use mcsbench_core::store::Term;
use mcsbench_core::vocab::Vocab;
use serde_json::Value;

use common::*;

fn skylar_opts() -> JsonLdOptions {
    JsonLdOptions { context_ref: "https://.../context.jsonld".into(), ..JsonLdOptions::default() }
}

fn golden_text() -> String {
    fs::read_to_string(fixture("oracle/skylar.jsonld")).unwrap()
}

fn oracle_lines(name: &str) -> BTreeSet<String> {
    fs::read_to_string(fixture(name)).unwrap().lines().map(str::to_string).collect()
}

fn lines_of(triples: &[[Term; 3]]) -> BTreeSet<String> {
    triples.iter().map(|[s, p, o]| ntriples::triple_line(s, p, o)).collect()
}

#[test]
fn skylar_sample_matches_golden_byte_for_byte() {
    let corpus = skylar_corpus();
    let sample = &corpus.samples()[0];
    let doc = to_jsonld(sample, &skylar_opts()).unwrap();
    assert_eq!(doc.to_pretty() + "\n", golden_text());
}

#[test]
fn skylar_sample_matches_golden_structurally() {
    let corpus = skylar_corpus();
    let doc = to_jsonld(&corpus.samples()[0], &skylar_opts()).unwrap();
    let golden: Value = serde_json::from_str(&golden_text()).unwrap();
    assert_eq!(doc.to_value(), golden);

    let s = &corpus.samples()[0];
    assert_eq!(s.split, SplitKind::Train);
    assert_eq!(
        s.inputs.iter().map(|i| i.construct).collect::<Vec<_>>(),
        [ConstructKind::Context, ConstructKind::Question]
    );
    assert_eq!(s.correct_ordinal(), Some(1));
    assert_eq!(s.correct_segment().unwrap().text, "a party girl");
}

#[test]
fn golden_parses_back_into_the_sample() {
    let corpus = skylar_corpus();
    let doc = JsonLdDoc::parse(&golden_text()).unwrap();
    assert_eq!(from_jsonld(&doc, &skylar_opts()).unwrap(), corpus.samples()[0]);
}

#[test]
fn compact_line_is_a_single_line() {
    let corpus = skylar_corpus();
    let line = to_jsonld(&corpus.samples()[0], &JsonLdOptions::default()).unwrap().to_line();
    assert!(!line.contains('\n'));
    assert!(line.starts_with(r#"{"@context":"https://w3id.org/mcs/context.jsonld","@id":"SocialIQa-37","#));
}

#[test]
fn context_matches_reference_context() {
    let ours = emit_context(&JsonLdOptions::default());
    let reference: Value =
        serde_json::from_str(&fs::read_to_string(fixture("oracle/context.jsonld")).unwrap()).unwrap();
    assert_eq!(ours, reference);
    let opts = options_from_context(&ours, "x").unwrap();
    assert_eq!(opts.base, JsonLdOptions::default().base);
    assert_eq!(opts.vocab, Vocab::default());
}

#[test]
fn expansion_agrees_with_reference_processor() {
    let context = emit_context(&JsonLdOptions::default());
    let golden: Value = serde_json::from_str(&golden_text()).unwrap();
    let expanded = expand_document(&golden, &context).unwrap();
    assert_eq!(expanded.len(), 18);
    assert_eq!(lines_of(&expanded), oracle_lines("oracle/skylar.nt"));
}

#[test]
fn category_types_expand_like_reference_processor() {
    let doc: Value =
        serde_json::from_str(&fs::read_to_string(fixture("oracle/skylar-category.jsonld")).unwrap()).unwrap();
    let context = doc["@context"].clone();
    let expanded = expand_document(&doc, &serde_json::json!({ "@context": context })).unwrap();
    assert_eq!(lines_of(&expanded), oracle_lines("oracle/skylar-category.nt"));

    let parsed: JsonLdDoc = JsonLdDoc::parse(&doc.to_string().replace(&context.to_string(), "\"x\"")).unwrap();
    let sample = from_jsonld(&parsed, &JsonLdOptions::default()).unwrap();
    let labels: Vec<_> = sample.categories.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(labels, ["logical reasoning"]);
}

#[test]
fn model_expansion_adds_only_the_inverse_link() {
    let corpus = skylar_corpus();
    let sample = &corpus.samples()[0];
    let ours = lines_of(&expand_to_triples(sample, &corpus, &Vocab::default()).unwrap());
    assert_eq!(ours.len(), 19);
    let mut expected = oracle_lines("oracle/skylar.nt");
    expected.insert(
        "<https://w3id.org/mcs/data/SocialIQa/train> <https://w3id.org/mcs#sample> <https://w3id.org/mcs/data/SocialIQa-37> ."
            .to_string(),
    );
    assert_eq!(ours, expected);
}

#[test]
fn scaffolding_of_skylar_corpus() {
    let corpus = skylar_corpus();
    let lines = lines_of(&scaffolding_triples(&corpus, &Vocab::default()));
    let mcs = |l: &str| format!("<https://w3id.org/mcs#{l}>");
    let task = "<https://w3id.org/mcs/data/SocialIQa>";
    let train = "<https://w3id.org/mcs/data/SocialIQa/train>";
    let rdf_type = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type>";
    let label = "<http://www.w3.org/2000/01/rdf-schema#label>";
    let sub = "<http://www.w3.org/2000/01/rdf-schema#subClassOf>";
    let expected: BTreeSet<String> = [
        format!("{task} {rdf_type} {} .", mcs("Benchmark")),
        format!("{task} {label} \"SocialIQa\" ."),
        format!("{train} {rdf_type} {} .", mcs("BenchmarkTrainDataset")),
        format!("{task} <http://schema.org/dataset> {train} ."),
        format!("{} {label} \"Benchmark\" .", mcs("Benchmark")),
        format!("{} {label} \"Benchmark Train Dataset\" .", mcs("BenchmarkTrainDataset")),
        format!("{} {label} \"Benchmark Sample\" .", mcs("BenchmarkSample")),
        format!("{} {label} \"Benchmark Context\" .", mcs("BenchmarkContext")),
        format!("{} {label} \"Benchmark Question\" .", mcs("BenchmarkQuestion")),
        format!("{} {label} \"Benchmark Answer\" .", mcs("BenchmarkAnswer")),
        format!("{} {sub} {} .", mcs("BenchmarkContext"), mcs("BenchmarkInput")),
        format!("{} {sub} {} .", mcs("BenchmarkQuestion"), mcs("BenchmarkInput")),
        format!("{} {sub} {} .", mcs("BenchmarkAnswer"), mcs("BenchmarkChoice")),
    ]
    .into_iter()
    .collect();
    assert_eq!(lines, expected);

    let store = store_of(&corpus);
    assert_eq!(store.len(), 19 + 13);
}
