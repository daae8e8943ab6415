use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{BindingTable, PathExpr, PredicatePattern, QueryAst, QueryError, TermPattern, TriplePattern, Variable};
use crate::store::{Pattern, Term, TermId, TripleStore};

/// Replaces every length-k path with k plain patterns chained through k−1
/// fresh variables. Fresh names start with `#` and are never projected.
pub fn rewrite_paths(ast: &QueryAst) -> QueryAst {
    let mut fresh = 0usize;
    let mut patterns = Vec::with_capacity(ast.patterns.len());
    for pattern in &ast.patterns {
        let steps = match &pattern.predicate {
            PredicatePattern::Path(PathExpr(steps)) if steps.len() > 1 => steps,
            _ => {
                patterns.push(pattern.clone());
                continue;
            }
        };
        let mut subject = pattern.subject.clone();
        for (i, step) in steps.iter().enumerate() {
            let object = if i + 1 == steps.len() {
                pattern.object.clone()
            } else {
                let v = TermPattern::Var(Variable::new(format!("#v{fresh}")));
                fresh += 1;
                v
            };
            patterns.push(TriplePattern {
                subject: subject.clone(),
                predicate: PredicatePattern::Path(PathExpr(alloc::vec![step.clone()])),
                object: object.clone(),
            });
            subject = object;
        }
    }
    QueryAst { prefixes: ast.prefixes.clone(), projection: ast.projection.clone(), distinct: ast.distinct, patterns }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Var(usize),
    Const(TermId),
}

/// A pattern constant absent from the store: the query has no solutions.
struct NoMatch;

fn resolve_term(
    term: &TermPattern,
    store: &TripleStore,
    ast: &QueryAst,
    slots: &mut BTreeMap<Variable, usize>,
) -> Result<Result<Slot, NoMatch>, QueryError> {
    let term = match term {
        TermPattern::Var(v) => {
            let next = slots.len();
            return Ok(Ok(Slot::Var(*slots.entry(v.clone()).or_insert(next))));
        }
        TermPattern::Iri(i) => Term::Iri(i.resolve(&ast.prefixes)?),
        TermPattern::Literal(l) => l.clone(),
    };
    Ok(store.term_id(&term).map(Slot::Const).ok_or(NoMatch))
}

fn bound_count(pattern: &[Slot; 3], bound: &[bool]) -> usize {
    pattern
        .iter()
        .filter(|s| match s {
            Slot::Const(_) => true,
            Slot::Var(v) => bound[*v],
        })
        .count()
}

/// Greedy most-bound-first order; ties keep the written order.
fn join_order(patterns: &[[Slot; 3]], vars: usize) -> Vec<usize> {
    let mut bound = alloc::vec![false; vars];
    let mut remaining: Vec<usize> = (0..patterns.len()).collect();
    let mut order = Vec::with_capacity(patterns.len());
    while !remaining.is_empty() {
        let (pos, _) = remaining
            .iter()
            .enumerate()
            .max_by_key(|(pos, &i)| (bound_count(&patterns[i], &bound), core::cmp::Reverse(*pos)))
            .expect("non-empty");
        let chosen = remaining.remove(pos);
        for slot in &patterns[chosen] {
            if let Slot::Var(v) = slot {
                bound[*v] = true;
            }
        }
        order.push(chosen);
    }
    order
}

/// Evaluates with bag semantics (set semantics under `DISTINCT`).
pub fn evaluate(ast: &QueryAst, store: &TripleStore) -> Result<BindingTable, QueryError> {
    evaluate_with(ast, store, &|| false)
}

/// Like [`evaluate`], polling `should_abort` periodically.
pub fn evaluate_with(
    ast: &QueryAst,
    store: &TripleStore,
    should_abort: &dyn Fn() -> bool,
) -> Result<BindingTable, QueryError> {
    let plain = if ast.has_paths() { rewrite_paths(ast) } else { ast.clone() };
    let header: Vec<_> = ast.projection.iter().map(|v| v.name().to_string()).collect();

    let mut slots: BTreeMap<Variable, usize> = BTreeMap::new();
    let mut compiled = Vec::with_capacity(plain.patterns.len());
    let mut unsatisfiable = false;
    for p in &plain.patterns {
        let predicate = match &p.predicate {
            PredicatePattern::Var(v) => TermPattern::Var(v.clone()),
            PredicatePattern::Path(PathExpr(steps)) => TermPattern::Iri(steps[0].clone()),
        };
        let s = resolve_term(&p.subject, store, &plain, &mut slots)?;
        let pr = resolve_term(&predicate, store, &plain, &mut slots)?;
        let o = resolve_term(&p.object, store, &plain, &mut slots)?;
        match (s, pr, o) {
            (Ok(s), Ok(p), Ok(o)) => compiled.push([s, p, o]),
            _ => unsatisfiable = true,
        }
    }
    let projection: Vec<usize> = ast
        .projection
        .iter()
        .map(|v| slots.get(v).copied().ok_or_else(|| QueryError::UnknownProjection(v.name().to_string())))
        .collect::<Result<_, _>>()?;
    if unsatisfiable {
        return Ok(BindingTable { vars: header, rows: Vec::new() });
    }

    let order = join_order(&compiled, slots.len());
    let ordered: Vec<[Slot; 3]> = order.iter().map(|&i| compiled[i]).collect();
    let mut state = Join {
        store,
        patterns: &ordered,
        binding: alloc::vec![None; slots.len()],
        projection: &projection,
        out: Vec::new(),
        steps: 0,
        should_abort,
    };
    state.run(0)?;

    let mut id_rows = state.out;
    if ast.distinct {
        let unique: BTreeSet<Vec<TermId>> = id_rows.into_iter().collect();
        id_rows = unique.into_iter().collect();
    }
    // Order by N-Triples form, rendering each distinct term once.
    let term = |id: TermId| store.term(id).expect("bound ids are interned");
    let mut ranked: Vec<TermId> = id_rows.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    ranked.sort_by_cached_key(|&id| term(id).to_string());
    let rank: BTreeMap<TermId, u32> = ranked.iter().enumerate().map(|(i, &id)| (id, i as u32)).collect();
    let mut rank_rows: Vec<Vec<u32>> = id_rows.iter().map(|r| r.iter().map(|id| rank[id]).collect()).collect();
    rank_rows.sort_unstable();
    let rows =
        rank_rows.into_iter().map(|r| r.into_iter().map(|k| term(ranked[k as usize]).clone()).collect()).collect();
    Ok(BindingTable { vars: header, rows })
}

struct Join<'a> {
    store: &'a TripleStore,
    patterns: &'a [[Slot; 3]],
    binding: Vec<Option<TermId>>,
    projection: &'a [usize],
    out: Vec<Vec<TermId>>,
    steps: usize,
    should_abort: &'a dyn Fn() -> bool,
}

impl Join<'_> {
    fn value(&self, slot: Slot) -> Option<TermId> {
        match slot {
            Slot::Const(id) => Some(id),
            Slot::Var(v) => self.binding[v],
        }
    }

    fn run(&mut self, depth: usize) -> Result<(), QueryError> {
        self.steps += 1;
        if self.steps.is_multiple_of(4096) && (self.should_abort)() {
            return Err(QueryError::Aborted);
        }
        let Some(&pattern) = self.patterns.get(depth) else {
            let row = self.projection.iter().map(|&v| self.binding[v].expect("all variables bound")).collect();
            self.out.push(row);
            return Ok(());
        };
        let query = Pattern { s: self.value(pattern[0]), p: self.value(pattern[1]), o: self.value(pattern[2]) };
        let matches: Vec<_> = self.store.match_pattern(query).collect();
        for triple in matches {
            let mut newly = [usize::MAX; 3];
            let mut consistent = true;
            for (k, (slot, id)) in pattern.iter().zip([triple.s, triple.p, triple.o]).enumerate() {
                if let Slot::Var(v) = *slot {
                    match self.binding[v] {
                        None => {
                            self.binding[v] = Some(id);
                            newly[k] = v;
                        }
                        Some(existing) if existing != id => {
                            consistent = false;
                            break;
                        }
                        Some(_) => {}
                    }
                }
            }
            let result = if consistent { self.run(depth + 1) } else { Ok(()) };
            for v in newly.into_iter().filter(|&v| v != usize::MAX) {
                self.binding[v] = None;
            }
            result?;
        }
        Ok(())
    }
}
