//! Dictionary-encoded in-memory triple store with SPO, POS and OSP indices.
//!
//! All entities share one default graph. Blank nodes are not supported.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use serde::Serialize;

use crate::jsonld::{expand_to_triples, scaffolding_triples, ExpandError};
use crate::model::{BenchmarkCorpus, Iri, SplitKind};
use crate::vocab::Vocab;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Literal { value: String, language: Option<String> },
}

impl Term {
    pub fn iri(iri: &Iri) -> Self {
        Term::Iri(iri.clone())
    }

    /// Panics on a malformed IRI; for namespace constants.
    pub(crate) fn known_iri(text: impl Into<String>) -> Self {
        Term::Iri(Iri::parse(text).expect("well-known IRI"))
    }

    pub fn literal(value: impl Into<String>) -> Self {
        Term::Literal { value: value.into(), language: None }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            Term::Literal { .. } => None,
        }
    }

    /// Lexical value: the IRI text or the literal's value.
    pub fn value(&self) -> &str {
        match self {
            Term::Iri(i) => i.as_str(),
            Term::Literal { value, .. } => value,
        }
    }
}

impl fmt::Display for Term {
    /// N-Triples form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(i) => write!(f, "<{i}>"),
            Term::Literal { value, language } => {
                f.write_str("\"")?;
                crate::ntriples::write_escaped(f, value)?;
                f.write_str("\"")?;
                if let Some(lang) = language {
                    write!(f, "@{lang}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub s: TermId,
    pub p: TermId,
    pub o: TermId,
}

#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    terms: Vec<Term>,
    ids: BTreeMap<Term, TermId>,
}

impl Dictionary {
    pub fn intern(&mut self, term: &Term) -> TermId {
        if let Some(&id) = self.ids.get(term) {
            return id;
        }
        let id = TermId(u32::try_from(self.terms.len()).expect("more than u32::MAX terms"));
        self.terms.push(term.clone());
        self.ids.insert(term.clone(), id);
        id
    }

    pub fn get(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    pub fn lookup(&self, id: TermId) -> Option<&Term> {
        self.terms.get(id.0 as usize)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (TermId, &Term)> {
        self.terms.iter().enumerate().map(|(i, t)| (TermId(i as u32), t))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StoreError {
    #[error("term id {0} is not in the dictionary")]
    UnknownTermId(u32),
    #[error("{slot} must be an IRI, found {term}")]
    LiteralInIriSlot { slot: &'static str, term: String },
    #[error("while loading sample {sample}: {source}")]
    Expand { sample: String, source: ExpandError },
}

/// A triple pattern: `None` is a wildcard.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Pattern {
    pub s: Option<TermId>,
    pub p: Option<TermId>,
    pub o: Option<TermId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    Spo,
    Pos,
    Osp,
}

impl IndexKind {
    fn pack(self, t: Triple) -> [u32; 3] {
        match self {
            IndexKind::Spo => [t.s.0, t.p.0, t.o.0],
            IndexKind::Pos => [t.p.0, t.o.0, t.s.0],
            IndexKind::Osp => [t.o.0, t.s.0, t.p.0],
        }
    }

    fn unpack(self, k: [u32; 3]) -> Triple {
        let (s, p, o) = match self {
            IndexKind::Spo => (k[0], k[1], k[2]),
            IndexKind::Pos => (k[2], k[0], k[1]),
            IndexKind::Osp => (k[1], k[2], k[0]),
        };
        Triple { s: TermId(s), p: TermId(p), o: TermId(o) }
    }

    /// Pattern slots in this index's key order.
    fn order(self, p: Pattern) -> [Option<TermId>; 3] {
        match self {
            IndexKind::Spo => [p.s, p.p, p.o],
            IndexKind::Pos => [p.p, p.o, p.s],
            IndexKind::Osp => [p.o, p.s, p.p],
        }
    }
}

/// Key range covering the longest bound prefix of `slots`.
fn prefix_range(slots: [Option<TermId>; 3]) -> RangeInclusive<[u32; 3]> {
    let mut lo = [0; 3];
    let mut hi = [u32::MAX; 3];
    for (i, slot) in slots.iter().enumerate() {
        match slot {
            Some(id) => {
                lo[i] = id.0;
                hi[i] = id.0;
            }
            None => break,
        }
    }
    lo..=hi
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    /// Store size after loading.
    pub triples: usize,
    /// Triples that were not already present.
    pub inserted: usize,
    /// Sample-local triples generated per `benchmark/split`.
    pub per_dataset: BTreeMap<String, usize>,
    pub scaffolding: usize,
}

#[derive(Debug, Clone)]
pub struct TripleStore {
    dict: Dictionary,
    spo: BTreeSet<[u32; 3]>,
    pos: BTreeSet<[u32; 3]>,
    osp: BTreeSet<[u32; 3]>,
    prefixes: BTreeMap<String, String>,
}

impl Default for TripleStore {
    fn default() -> Self {
        TripleStore::new(&Vocab::default())
    }
}

impl TripleStore {
    pub fn new(vocab: &Vocab) -> Self {
        TripleStore {
            dict: Dictionary::default(),
            spo: BTreeSet::new(),
            pos: BTreeSet::new(),
            osp: BTreeSet::new(),
            prefixes: vocab.default_prefixes(),
        }
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dict
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    pub fn intern(&mut self, term: &Term) -> TermId {
        self.dict.intern(term)
    }

    pub fn term_id(&self, term: &Term) -> Option<TermId> {
        self.dict.get(term)
    }

    pub fn term(&self, id: TermId) -> Option<&Term> {
        self.dict.lookup(id)
    }

    /// Returns whether the triple was new.
    pub fn insert(&mut self, triple: Triple) -> Result<bool, StoreError> {
        for (slot, id) in [("subject", triple.s), ("predicate", triple.p), ("object", triple.o)] {
            let term = self.dict.lookup(id).ok_or(StoreError::UnknownTermId(id.0))?;
            if slot != "object" && !term.is_iri() {
                return Err(StoreError::LiteralInIriSlot { slot, term: term.to_string() });
            }
        }
        if !self.spo.insert(IndexKind::Spo.pack(triple)) {
            return Ok(false);
        }
        self.pos.insert(IndexKind::Pos.pack(triple));
        self.osp.insert(IndexKind::Osp.pack(triple));
        Ok(true)
    }

    pub fn insert_terms(&mut self, s: &Term, p: &Term, o: &Term) -> Result<bool, StoreError> {
        if !s.is_iri() {
            return Err(StoreError::LiteralInIriSlot { slot: "subject", term: s.to_string() });
        }
        if !p.is_iri() {
            return Err(StoreError::LiteralInIriSlot { slot: "predicate", term: p.to_string() });
        }
        let triple = Triple { s: self.intern(s), p: self.intern(p), o: self.intern(o) };
        self.insert(triple)
    }

    fn index(&self, kind: IndexKind) -> &BTreeSet<[u32; 3]> {
        match kind {
            IndexKind::Spo => &self.spo,
            IndexKind::Pos => &self.pos,
            IndexKind::Osp => &self.osp,
        }
    }

    /// Index serving a pattern: subject bound → SPO, predicate bound → POS,
    /// object only → OSP.
    pub fn index_for(pattern: Pattern) -> IndexKind {
        if pattern.s.is_some() {
            IndexKind::Spo
        } else if pattern.p.is_some() {
            IndexKind::Pos
        } else if pattern.o.is_some() {
            IndexKind::Osp
        } else {
            IndexKind::Spo
        }
    }

    /// Triples matching every bound slot, in ascending order of the chosen index.
    pub fn match_pattern(&self, pattern: Pattern) -> Box<dyn Iterator<Item = Triple> + '_> {
        self.match_with_index(Self::index_for(pattern), pattern)
    }

    /// Same as [`Self::match_pattern`] but forced through one index.
    pub fn match_with_index(&self, kind: IndexKind, pattern: Pattern) -> Box<dyn Iterator<Item = Triple> + '_> {
        let range = prefix_range(kind.order(pattern));
        Box::new(self.index(kind).range(range).map(move |&k| kind.unpack(k)).filter(move |t| {
            pattern.s.is_none_or(|s| s == t.s)
                && pattern.p.is_none_or(|p| p == t.p)
                && pattern.o.is_none_or(|o| o == t.o)
        }))
    }

    pub fn contains(&self, triple: Triple) -> bool {
        self.spo.contains(&IndexKind::Spo.pack(triple))
    }

    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().map(|&k| IndexKind::Spo.unpack(k))
    }

    pub fn decode(&self, triple: Triple) -> (&Term, &Term, &Term) {
        let get = |id: TermId| self.dict.lookup(id).expect("triples only reference interned terms");
        (get(triple.s), get(triple.p), get(triple.o))
    }

    /// Inserts the expansion of every sample plus dataset, task and class
    /// scaffolding. Loading the same corpus again adds nothing.
    pub fn load_corpus(&mut self, corpus: &BenchmarkCorpus, vocab: &Vocab) -> Result<LoadReport, StoreError> {
        let mut report = LoadReport::default();
        for sample in corpus.samples() {
            let triples = expand_to_triples(sample, corpus, vocab)
                .map_err(|source| StoreError::Expand { sample: sample.id.to_string(), source })?;
            *report.per_dataset.entry(dataset_key(sample.benchmark.name(), sample.split)).or_default() += triples.len();
            for [s, p, o] in &triples {
                report.inserted += usize::from(self.insert_terms(s, p, o)?);
            }
        }
        let scaffolding = scaffolding_triples(corpus, vocab);
        report.scaffolding = scaffolding.len();
        for [s, p, o] in &scaffolding {
            report.inserted += usize::from(self.insert_terms(s, p, o)?);
        }
        report.triples = self.len();
        Ok(report)
    }
}

fn dataset_key(benchmark: &str, split: SplitKind) -> String {
    let mut key = benchmark.to_string();
    key.push('/');
    key.push_str(split.as_str());
    key
}
