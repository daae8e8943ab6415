//! SPARQL subset: `PREFIX`, `SELECT [DISTINCT]`, basic graph patterns and
//! sequence property paths (`p1/p2/.../pk`).
//!
//! Queries that omit `PREFIX` declarations get `mcs`, `schema`, `rdf` and
//! `rdfs` bound by default. Rows are sorted by the N-Triples form of the
//! projected terms.

mod eval;
mod oracle;
mod parser;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde_json::{json, Map, Value};

use crate::model::Iri;
use crate::store::Term;

pub use eval::{evaluate, evaluate_with, rewrite_paths};
pub use oracle::brute_force_evaluate;
pub use parser::{parse_query, parse_query_with};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported feature {feature} at line {line}, column {column}")]
    Unsupported { feature: String, line: usize, column: usize },
    #[error("unbound prefix {prefix:?}")]
    UnboundPrefix { prefix: String, line: usize, column: usize },
    #[error("projected variable ?{0} does not occur in the pattern")]
    UnknownProjection(String),
    #[error("query evaluation was aborted")]
    Aborted,
}

impl QueryError {
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            QueryError::Syntax { line, column, .. }
            | QueryError::Unsupported { line, column, .. }
            | QueryError::UnboundPrefix { line, column, .. } => Some((*line, *column)),
            _ => None,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            QueryError::Syntax { .. } => "SYNTAX",
            QueryError::Unsupported { .. } => "UNSUPPORTED_FEATURE",
            QueryError::UnboundPrefix { .. } => "UNBOUND_PREFIX",
            QueryError::UnknownProjection(_) => "UNKNOWN_PROJECTION",
            QueryError::Aborted => "ABORTED",
        }
    }
}

/// Variable name without the leading `?`. Names produced by path rewriting
/// start with `#` and so cannot collide with parsed names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(pub String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Self {
        Variable(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_fresh(&self) -> bool {
        self.0.starts_with('#')
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IriRef {
    Full(Iri),
    Prefixed { prefix: String, local: String },
}

impl IriRef {
    pub fn resolve(&self, prefixes: &BTreeMap<String, String>) -> Result<Iri, QueryError> {
        match self {
            IriRef::Full(i) => Ok(i.clone()),
            IriRef::Prefixed { prefix, local } => {
                let ns = prefixes.get(prefix).ok_or_else(|| QueryError::UnboundPrefix {
                    prefix: prefix.clone(),
                    line: 0,
                    column: 0,
                })?;
                Iri::parse(format!("{ns}{local}")).map_err(|e| QueryError::Syntax {
                    line: 0,
                    column: 0,
                    message: e.to_string(),
                })
            }
        }
    }
}

impl fmt::Display for IriRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IriRef::Full(i) => write!(f, "<{i}>"),
            IriRef::Prefixed { prefix, local } => write!(f, "{prefix}:{local}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermPattern {
    Var(Variable),
    Iri(IriRef),
    Literal(Term),
}

/// `p1/p2/.../pk`, k ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathExpr(pub Vec<IriRef>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicatePattern {
    Var(Variable),
    Path(PathExpr),
}

impl PredicatePattern {
    pub fn path_len(&self) -> usize {
        match self {
            PredicatePattern::Var(_) => 1,
            PredicatePattern::Path(p) => p.0.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: TermPattern,
    pub predicate: PredicatePattern,
    pub object: TermPattern,
}

impl TriplePattern {
    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        let s = match &self.subject {
            TermPattern::Var(v) => Some(v),
            _ => None,
        };
        let p = match &self.predicate {
            PredicatePattern::Var(v) => Some(v),
            _ => None,
        };
        let o = match &self.object {
            TermPattern::Var(v) => Some(v),
            _ => None,
        };
        s.into_iter().chain(p).chain(o)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryAst {
    pub prefixes: BTreeMap<String, String>,
    pub projection: Vec<Variable>,
    pub distinct: bool,
    pub patterns: Vec<TriplePattern>,
}

impl QueryAst {
    /// User variables in order of first occurrence.
    pub fn variables(&self) -> Vec<Variable> {
        let mut out: Vec<Variable> = Vec::new();
        for v in self.patterns.iter().flat_map(TriplePattern::variables) {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn has_paths(&self) -> bool {
        self.patterns.iter().any(|p| p.predicate.path_len() > 1)
    }
}

/// Projected variables plus a bag of rows, each binding every header variable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BindingTable {
    pub vars: Vec<String>,
    pub rows: Vec<Vec<Term>>,
}

impl BindingTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, var: &str) -> Option<impl Iterator<Item = &Term>> {
        let i = self.vars.iter().position(|v| v == var)?;
        Some(self.rows.iter().map(move |r| &r[i]))
    }

    /// SPARQL-results-style JSON: `head.vars` and `results.bindings`.
    pub fn to_results_json(&self) -> Value {
        let bindings: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (var, term) in self.vars.iter().zip(row) {
                    let cell = match term {
                        Term::Iri(i) => json!({"type": "uri", "value": i.as_str()}),
                        Term::Literal { value, language: Some(lang) } => {
                            json!({"type": "literal", "value": value, "xml:lang": lang})
                        }
                        Term::Literal { value, language: None } => json!({"type": "literal", "value": value}),
                    };
                    m.insert(var.clone(), cell);
                }
                Value::Object(m)
            })
            .collect();
        json!({"head": {"vars": self.vars}, "results": {"bindings": bindings}})
    }
}

/// Replaces the `<task_uri>` placeholder with a concrete task IRI.
pub fn substitute_task_iri(query: &str, task: &Iri) -> String {
    query.replace("<task_uri>", &format!("<{task}>"))
}

/// Sorts rows by the N-Triples rendering of their terms.
pub(crate) fn sort_rows(rows: &mut [Vec<Term>]) {
    rows.sort_by_cached_key(|row| row.iter().map(|t| t.to_string()).collect::<Vec<_>>());
}
