//! Random valid samples and the serialisation properties they must satisfy.

use std::collections::BTreeSet;

use mcsbench_core::jsonld::{
    emit_context, expand_document, expand_to_triples, from_jsonld, sample_triple_count, to_jsonld, JsonLdDoc,
    JsonLdOptions,
};
use mcsbench_core::model::{
    category_to_class, mint_sample_id, mint_segment_id, validate_sample, BenchmarkCorpus, BenchmarkId, CanonicalSample,
    ChoiceSegment, ConstructKind, InputSegment, QuestionType, SegmentKind, SplitKind,
};
use mcsbench_core::ntriples;
use mcsbench_core::vocab::Vocab;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

const INPUTS: [ConstructKind; 5] = [
    ConstructKind::Context,
    ConstructKind::Question,
    ConstructKind::Observation,
    ConstructKind::Goal,
    ConstructKind::FillInTheBlank,
];
const CHOICES: [ConstructKind; 5] = [
    ConstructKind::Answer,
    ConstructKind::Ending,
    ConstructKind::Solution,
    ConstructKind::Hypothesis,
    ConstructKind::TruthValue,
];

fn text() -> impl Strategy<Value = String> {
    "[ -~äöü€\u{4e00}\"\\\\\n\t]{0,30}".prop_filter("non-blank", |s| !s.trim().is_empty())
}

/// Lowercase alphabetic words of two or more letters joined by single spaces.
fn category_label() -> impl Strategy<Value = String> {
    prop::collection::vec("[a-z]{2,8}", 1..4).prop_map(|w| w.join(" "))
}

prop_compose! {
    pub fn benchmark()(name in "[A-Z][A-Za-z0-9]{0,10}", base in prop::sample::select(vec![
        "https://w3id.org/mcs/data/", "http://example.org/b/", "urn:x:bench#",
    ])) -> BenchmarkId {
        BenchmarkId::new(name, base).unwrap()
    }
}

prop_compose! {
    pub fn sample()(
        bench in benchmark(),
        index in any::<u32>(),
        split in prop::sample::select(SplitKind::ALL.to_vec()),
        inputs in prop::collection::vec((prop::sample::select(INPUTS.to_vec()), text(),
            prop::collection::btree_set(category_label(), 0..3)), 1..4),
        choice_kind in prop::sample::select(CHOICES.to_vec()),
        choice_texts in prop::collection::vec(text(), 2..6),
        correct in any::<prop::sample::Index>(),
        labelled in any::<bool>(),
    ) -> CanonicalSample {
        let vocab = Vocab::default();
        let id = mint_sample_id(&bench, index as u64);
        let inputs: Vec<InputSegment> = inputs.into_iter().enumerate().map(|(i, (construct, text, cats))| InputSegment {
            id: mint_segment_id(&id, SegmentKind::Input, i as u32).unwrap(),
            construct,
            text,
            categories: cats.iter().map(|c| category_to_class(c, &vocab).unwrap()).collect(),
        }).collect();
        let choices: Vec<ChoiceSegment> = choice_texts.into_iter().enumerate().map(|(j, text)| ChoiceSegment {
            id: mint_segment_id(&id, SegmentKind::Choice, j as u32 + 1).unwrap(),
            construct: choice_kind,
            text,
            ordinal: j as u32 + 1,
        }).collect();
        let correct_choice = (labelled || split != SplitKind::Test).then(|| choices[correct.index(choices.len())].id.clone());
        let categories = inputs.iter().flat_map(|i| i.categories.iter().cloned()).collect();
        CanonicalSample { id, benchmark: bench, split, inputs, choices, correct_choice, categories }
    }
}

pub fn corpus_with(sample: &CanonicalSample) -> BenchmarkCorpus {
    let mut corpus = BenchmarkCorpus::new();
    corpus.register_benchmark(sample.benchmark.clone(), [QuestionType::MultipleChoice]).unwrap();
    corpus.add_sample(sample.clone()).unwrap();
    corpus
}

pub fn opts_for(sample: &CanonicalSample) -> JsonLdOptions {
    JsonLdOptions { base: sample.benchmark.base_iri().as_str().to_string(), ..JsonLdOptions::default() }
}

/// Round trip through the compact document plus the triple-count formula.
pub fn check_round_trip(s: &CanonicalSample) -> Result<(), TestCaseError> {
    prop_assert!(validate_sample(s).is_valid());
    let opts = opts_for(s);
    let doc = to_jsonld(s, &opts).unwrap();
    let reparsed = JsonLdDoc::parse(&doc.to_line()).unwrap();
    prop_assert_eq!(&reparsed, &doc);
    prop_assert_eq!(&from_jsonld(&reparsed, &opts).unwrap(), s);

    let corpus = corpus_with(s);
    let triples = expand_to_triples(s, &corpus, &Vocab::default()).unwrap();
    let expected = 3
        + s.inputs.iter().map(|i| 3 + i.categories.len()).sum::<usize>()
        + 3 * s.choices.len()
        + usize::from(s.correct_choice.is_some());
    prop_assert_eq!(triples.len(), expected);
    prop_assert_eq!(sample_triple_count(s), expected);
    let distinct: BTreeSet<String> = triples.iter().map(|[a, b, c]| ntriples::triple_line(a, b, c)).collect();
    prop_assert_eq!(distinct.len(), expected);

    let mut value = doc.to_value();
    value["@context"] = emit_context(&opts)["@context"].clone();
    let generic: BTreeSet<String> = expand_document(&value, &emit_context(&opts))
        .unwrap()
        .iter()
        .map(|[a, b, c]| ntriples::triple_line(a, b, c))
        .collect();
    prop_assert_eq!(generic.len(), expected - 1);
    prop_assert!(generic.is_subset(&distinct));
    Ok(())
}
