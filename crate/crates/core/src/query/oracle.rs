//! Reference evaluator: enumerates every assignment of the query variables
//! over the store's terms and checks the patterns directly against a flat
//! triple list. Exponential, only meant for small test graphs.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{sort_rows, BindingTable, PredicatePattern, QueryAst, QueryError, TermPattern, Variable};
use crate::model::Iri;
use crate::store::{Term, TripleStore};

enum Node {
    Var(usize),
    Const(Term),
}

enum Pred {
    Var(usize),
    Path(Vec<Iri>),
}

struct Compiled {
    s: Node,
    p: Pred,
    o: Node,
    vars: Vec<usize>,
}

pub fn brute_force_evaluate(ast: &QueryAst, store: &TripleStore) -> Result<BindingTable, QueryError> {
    let triples: Vec<[Term; 3]> = store
        .iter()
        .map(|t| {
            let (s, p, o) = store.decode(t);
            [s.clone(), p.clone(), o.clone()]
        })
        .collect();
    let mut domain: Vec<Term> = Vec::new();
    let mut seen = BTreeSet::new();
    for t in triples.iter().flatten() {
        if seen.insert(t.to_string()) {
            domain.push(t.clone());
        }
    }

    let vars = ast.variables();
    let index_of = |v: &Variable| vars.iter().position(|w| w == v).expect("collected from the same patterns");
    let node = |t: &TermPattern| -> Result<Node, QueryError> {
        Ok(match t {
            TermPattern::Var(v) => Node::Var(index_of(v)),
            TermPattern::Iri(i) => Node::Const(Term::Iri(i.resolve(&ast.prefixes)?)),
            TermPattern::Literal(l) => Node::Const(l.clone()),
        })
    };
    let mut patterns = Vec::new();
    for p in &ast.patterns {
        let pred = match &p.predicate {
            PredicatePattern::Var(v) => Pred::Var(index_of(v)),
            PredicatePattern::Path(path) => {
                Pred::Path(path.0.iter().map(|i| i.resolve(&ast.prefixes)).collect::<Result<_, _>>()?)
            }
        };
        let vars: Vec<usize> = p.variables().map(index_of).collect();
        patterns.push(Compiled { s: node(&p.subject)?, p: pred, o: node(&p.object)?, vars });
    }
    let projection: Vec<usize> = ast
        .projection
        .iter()
        .map(|v| vars.iter().position(|w| w == v).ok_or_else(|| QueryError::UnknownProjection(v.name().to_string())))
        .collect::<Result<_, _>>()?;

    let mut search =
        Search { triples: &triples, domain: &domain, patterns: &patterns, assignment: Vec::new(), rows: Vec::new() };
    search.assign(vars.len(), &projection);

    let mut rows = search.rows;
    if ast.distinct {
        let mut keyed: Vec<(Vec<alloc::string::String>, Vec<Term>)> =
            rows.into_iter().map(|r| (r.iter().map(|t| t.to_string()).collect(), r)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        rows = keyed.into_iter().map(|(_, r)| r).collect();
    }
    sort_rows(&mut rows);
    Ok(BindingTable { vars: ast.projection.iter().map(|v| v.name().to_string()).collect(), rows })
}

struct Search<'a> {
    triples: &'a [[Term; 3]],
    domain: &'a [Term],
    patterns: &'a [Compiled],
    assignment: Vec<usize>,
    rows: Vec<Vec<Term>>,
}

impl Search<'_> {
    fn value<'t>(&'t self, n: &'t Node) -> &'t Term {
        match n {
            Node::Var(v) => &self.domain[self.assignment[*v]],
            Node::Const(t) => t,
        }
    }

    /// Number of ways the pattern holds under the current assignment.
    fn count(&self, p: &Compiled) -> usize {
        let s = self.value(&p.s);
        let o = self.value(&p.o);
        match &p.p {
            Pred::Var(v) => {
                let pred = &self.domain[self.assignment[*v]];
                usize::from(self.triples.iter().any(|t| &t[0] == s && &t[1] == pred && &t[2] == o))
            }
            Pred::Path(steps) => self.chains(s, steps, o),
        }
    }

    fn chains(&self, from: &Term, steps: &[Iri], to: &Term) -> usize {
        let Some((first, rest)) = steps.split_first() else {
            return usize::from(from == to);
        };
        self.triples
            .iter()
            .filter(|t| &t[0] == from && t[1].as_iri() == Some(first))
            .map(|t| self.chains(&t[2], rest, to))
            .sum()
    }

    fn assign(&mut self, total: usize, projection: &[usize]) {
        let k = self.assignment.len();
        if k == total {
            let multiplicity: usize = self.patterns.iter().map(|p| self.count(p)).product();
            for _ in 0..multiplicity {
                self.rows.push(projection.iter().map(|&v| self.domain[self.assignment[v]].clone()).collect());
            }
            return;
        }
        for candidate in 0..self.domain.len() {
            self.assignment.push(candidate);
            let prune = self
                .patterns
                .iter()
                .filter(|p| p.vars.contains(&k) && p.vars.iter().all(|&v| v <= k))
                .any(|p| self.count(p) == 0);
            if !prune {
                self.assign(total, projection);
            }
            self.assignment.pop();
        }
    }
}
