//! Random small graphs and basic graph pattern queries with property paths.

use mcsbench_core::model::Iri;
use mcsbench_core::query::{brute_force_evaluate, evaluate, parse_query};
use mcsbench_core::store::{Term, TripleStore};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Instance = (Vec<(usize, usize, Obj)>, Vec<String>, bool, u8, u64);

pub const NODES: [&str; 5] = ["a", "b", "c", "d", "e"];
pub const PREDICATES: [&str; 3] = ["p", "q", "r"];
pub const LITERALS: [&str; 2] = ["x", "y"];
pub const VARS: [&str; 4] = ["s", "o", "m", "n"];

#[derive(Debug, Clone)]
pub enum Obj {
    Node(usize),
    Lit(usize),
}

pub fn graph() -> impl Strategy<Value = Vec<(usize, usize, Obj)>> {
    let obj = prop_oneof![3 => (0..NODES.len()).prop_map(Obj::Node), 1 => (0..LITERALS.len()).prop_map(Obj::Lit)];
    prop::collection::vec((0..NODES.len(), 0..PREDICATES.len(), obj), 0..=30)
}

pub fn store_from(triples: &[(usize, usize, Obj)]) -> TripleStore {
    let mut store = TripleStore::default();
    let ex = |l: &str| Term::iri(&Iri::parse(format!("http://ex.org/{l}")).unwrap());
    for (s, p, o) in triples {
        let o = match o {
            Obj::Node(n) => ex(NODES[*n]),
            Obj::Lit(l) => Term::literal(LITERALS[*l]),
        };
        store.insert_terms(&ex(NODES[*s]), &ex(PREDICATES[*p]), &o).unwrap();
    }
    store
}

pub fn node_text() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => prop::sample::select(VARS.to_vec()).prop_map(|v| format!("?{v}")),
        1 => prop::sample::select(NODES.to_vec()).prop_map(|n| format!("ex:{n}")),
        1 => Just("ex:zz".to_string()),
    ]
}

pub fn object_text() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => node_text(),
        1 => prop::sample::select(LITERALS.to_vec()).prop_map(|l| format!("\"{l}\"")),
    ]
}

pub fn predicate_text() -> impl Strategy<Value = String> {
    prop_oneof![
        1 => prop::sample::select(VARS.to_vec()).prop_map(|v| format!("?{v}")),
        3 => prop::collection::vec(prop::sample::select(PREDICATES.to_vec()), 1..=3)
            .prop_map(|ps| ps.iter().map(|p| format!("ex:{p}")).collect::<Vec<_>>().join("/")),
    ]
}

pub fn patterns() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(
        (node_text(), predicate_text(), object_text()).prop_map(|(s, p, o)| format!("{s} {p} {o} .")),
        1..=4,
    )
}

pub fn used_vars(patterns: &[String]) -> Vec<&'static str> {
    VARS.iter().copied().filter(|v| patterns.iter().any(|p| p.contains(&format!("?{v}")))).collect()
}

pub fn query_text(patterns: &[String], projection: &[&str], distinct: bool) -> String {
    let head = if projection.is_empty() {
        "*".to_string()
    } else {
        projection.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join(" ")
    };
    format!(
        "PREFIX ex: <http://ex.org/>\nSELECT {}{head} WHERE {{\n{}\n}}",
        if distinct { "DISTINCT " } else { "" },
        patterns.join("\n")
    )
}

prop_compose! {
    pub fn instance()(g in graph(), ps in patterns(), distinct in any::<bool>(), mask in any::<u8>(), shuffle in any::<u64>())
        -> Instance {
        (g, ps, distinct, mask, shuffle)
    }
}

pub fn projection_for(ps: &[String], mask: u8) -> Vec<&'static str> {
    let vars = used_vars(ps);
    let chosen: Vec<_> = vars.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, v)| *v).collect();
    if chosen.is_empty() && !vars.is_empty() {
        vars
    } else {
        chosen
    }
}

/// The evaluator agrees with the brute-force oracle and ignores pattern order.
pub fn check_oracle(inst: Instance) -> Result<(), TestCaseError> {
    let (g, ps, distinct, mask, shuffle) = inst;
    let store = store_from(&g);
    let projection = projection_for(&ps, mask);
    let ast = parse_query(&query_text(&ps, &projection, distinct)).unwrap();
    let fast = evaluate(&ast, &store).unwrap();
    let slow = brute_force_evaluate(&ast, &store).unwrap();
    prop_assert_eq!(&fast, &slow);

    let mut permuted = ps.clone();
    let mut state = shuffle;
    for i in (1..permuted.len()).rev() {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        permuted.swap(i, (state >> 33) as usize % (i + 1));
    }
    let ast2 = parse_query(&query_text(&permuted, &projection, distinct)).unwrap();
    prop_assert_eq!(&evaluate(&ast2, &store).unwrap(), &fast);
    Ok(())
}
