mod common;

use std::collections::BTreeMap;

use mcsbench_core::query::{
    brute_force_evaluate, evaluate, parse_query, rewrite_paths, substitute_task_iri, PredicatePattern, QueryError,
};
use mcsbench_core::store::{IndexKind, Pattern, Term, TermId, TripleStore};
use proptest::prelude::*;

use common::queries::*;
use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evaluator_matches_brute_force(inst in instance()) {
        check_oracle(inst)?;
    }

    #[test]
    fn every_index_answers_every_pattern(g in graph(), s in any::<Option<prop::sample::Index>>(),
        p in any::<Option<prop::sample::Index>>(), o in any::<Option<prop::sample::Index>>()) {
        let store = store_from(&g);
        prop_assume!(!store.dictionary().is_empty());
        let n = store.dictionary().len();
        let pick = |i: Option<prop::sample::Index>| i.map(|i| TermId(i.index(n) as u32));
        let pattern = Pattern { s: pick(s), p: pick(p), o: pick(o) };
        let mut expected: Vec<_> = store.iter().filter(|t| {
            pattern.s.is_none_or(|x| x == t.s) && pattern.p.is_none_or(|x| x == t.p) && pattern.o.is_none_or(|x| x == t.o)
        }).collect();
        expected.sort();
        for kind in [IndexKind::Spo, IndexKind::Pos, IndexKind::Osp] {
            let mut got: Vec<_> = store.match_with_index(kind, pattern).collect();
            got.sort();
            prop_assert_eq!(&got, &expected);
        }
        let mut chosen: Vec<_> = store.match_pattern(pattern).collect();
        chosen.sort();
        prop_assert_eq!(chosen, expected);
    }
}

#[test]
fn index_choice_follows_bound_positions() {
    let id = Some(TermId(0));
    assert_eq!(TripleStore::index_for(Pattern { s: id, p: None, o: None }), IndexKind::Spo);
    assert_eq!(TripleStore::index_for(Pattern { s: id, p: id, o: id }), IndexKind::Spo);
    assert_eq!(TripleStore::index_for(Pattern { s: None, p: id, o: None }), IndexKind::Pos);
    assert_eq!(TripleStore::index_for(Pattern { s: None, p: id, o: id }), IndexKind::Pos);
    assert_eq!(TripleStore::index_for(Pattern { s: None, p: None, o: id }), IndexKind::Osp);
}

fn input_types_query_for(corpus: &mcsbench_core::model::BenchmarkCorpus, benchmark: &str) -> String {
    substitute_task_iri(INPUT_TYPES_QUERY, &corpus.benchmark(benchmark).unwrap().id.task_iri())
}

#[test]
fn input_types_query_parses_and_rewrites() {
    let ast = parse_query(&input_types_query_for(&skylar_corpus(), "SocialIQa")).unwrap();
    assert_eq!(ast.projection.len(), 3);
    assert_eq!(ast.patterns.len(), 5);
    let lens: Vec<_> = ast.patterns.iter().map(|p| p.predicate.path_len()).collect();
    assert_eq!(lens, [1, 1, 1, 2, 3]);
    let plain = rewrite_paths(&ast);
    assert_eq!(plain.patterns.len(), 8);
    assert!(plain.patterns.iter().all(|p| p.predicate.path_len() == 1));
    assert!(plain.variables().iter().filter(|v| v.is_fresh()).count() == 3);
    assert!(matches!(plain.patterns[3].predicate, PredicatePattern::Path(_)));
}

/// The two path patterns of the query are independent, so every input text
/// pairs with every input-type label of the sample.
#[test]
fn input_types_query_over_single_sample_corpus() {
    let corpus = skylar_corpus();
    let store = store_of(&corpus);
    let ast = parse_query(&input_types_query_for(&corpus, "SocialIQa")).unwrap();
    let table = evaluate(&ast, &store).unwrap();
    assert_eq!(table, brute_force_evaluate(&ast, &store).unwrap());

    let context = "Skylar returned early in the evening after a night and day of partying.";
    let question = "How would you describe Skylar?";
    let rows: Vec<(String, String, String)> = table
        .rows
        .iter()
        .map(|r| (r[0].value().to_string(), r[1].value().to_string(), r[2].value().to_string()))
        .collect();
    let sample = "https://w3id.org/mcs/data/SocialIQa-37".to_string();
    let expected: Vec<(String, String, String)> = [
        (question, "Benchmark Context"),
        (question, "Benchmark Question"),
        (context, "Benchmark Context"),
        (context, "Benchmark Question"),
    ]
    .iter()
    .map(|(t, l)| (sample.clone(), t.to_string(), l.to_string()))
    .collect();
    assert_eq!(rows, expected);
}

/// Sharing the input node between the two paths yields one row per input.
#[test]
fn input_types_query_with_shared_input_node() {
    let corpus = skylar_corpus();
    let store = store_of(&corpus);
    let query = input_types_query_for(&corpus, "SocialIQa")
        .replace("?sample mcs:input/schema:text ?input .", "?sample mcs:input ?in .\n ?in schema:text ?input .")
        .replace("?sample mcs:input/rdf:type/rdfs:label ?inputType .", "?in rdf:type/rdfs:label ?inputType .");
    let table = evaluate(&parse_query(&query).unwrap(), &store).unwrap();
    let pairs: Vec<(&str, &str)> = table.rows.iter().map(|r| (r[1].value(), r[2].value())).collect();
    assert_eq!(
        pairs,
        [
            ("How would you describe Skylar?", "Benchmark Question"),
            ("Skylar returned early in the evening after a night and day of partying.", "Benchmark Context"),
        ]
    );
}

#[test]
fn logical_reasoning_query_over_mixed_fixture() {
    let corpus = corpus_from(&fixture("mixed"));
    assert_eq!(corpus.samples().len(), 5);
    let store = store_of(&corpus);
    let ast = parse_query(LOGICAL_REASONING_QUERY).unwrap();
    let table = evaluate(&ast, &store).unwrap();
    assert_eq!(table, brute_force_evaluate(&ast, &store).unwrap());
    let questions: Vec<&str> = table.column("question").unwrap().map(Term::value).collect();
    assert_eq!(
        questions,
        [
            "All dogs are mammals. Rex is a dog. What is Rex?",
            "If every bottle on the shelf is empty, then some bottle on the shelf contains water.",
            "Tom is taller than Ann and Ann is taller than Bo. Who is shortest?",
        ]
    );
    assert!(table.column("sample").unwrap().all(|s| s.value().contains("/CycIC-")));
}

#[test]
fn unknown_constant_gives_no_rows_and_aborts_are_reported() {
    let store = store_of(&skylar_corpus());
    let ast = parse_query("SELECT ?s WHERE { ?s mcs:nothing ?o . }").unwrap();
    assert!(evaluate(&ast, &store).unwrap().is_empty());

    let all = parse_query("SELECT * WHERE { ?a ?b ?c . ?d ?e ?f . ?g ?h ?i . }").unwrap();
    let err = mcsbench_core::query::evaluate_with(&all, &store, &|| true).unwrap_err();
    assert_eq!(err, QueryError::Aborted);
}

#[test]
fn results_json_shape() {
    let corpus = skylar_corpus();
    let store = store_of(&corpus);
    let table = evaluate(&parse_query(&input_types_query_for(&corpus, "SocialIQa")).unwrap(), &store).unwrap();
    let json = table.to_results_json();
    assert_eq!(json["head"]["vars"], serde_json::json!(["sample", "input", "inputType"]));
    let first = &json["results"]["bindings"][0];
    assert_eq!(first["sample"]["type"], "uri");
    assert_eq!(first["input"]["type"], "literal");
    let _: BTreeMap<String, serde_json::Value> = serde_json::from_value(first.clone()).unwrap();
}
