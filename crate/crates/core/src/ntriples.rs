//! N-Triples reading and writing.
//!
//! Export is canonical: one triple per line, lines sorted bytewise, so equal
//! stores always serialise to identical bytes.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::model::Iri;
use crate::store::{StoreError, Term, TripleStore};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct NTriplesError {
    pub line: usize,
    pub message: String,
}

pub(crate) fn write_escaped(out: &mut impl Write, value: &str) -> fmt::Result {
    for c in value.chars() {
        match c {
            '"' => out.write_str("\\\"")?,
            '\\' => out.write_str("\\\\")?,
            '\n' => out.write_str("\\n")?,
            '\r' => out.write_str("\\r")?,
            '\t' => out.write_str("\\t")?,
            c if (c as u32) < 0x20 || c as u32 == 0x7f => write!(out, "\\u{:04X}", c as u32)?,
            c => out.write_char(c)?,
        }
    }
    Ok(())
}

pub fn triple_line(s: &Term, p: &Term, o: &Term) -> String {
    format!("{s} {p} {o} .")
}

/// Sorted N-Triples document of the whole store.
pub fn export(store: &TripleStore) -> String {
    let mut lines: Vec<String> = store
        .iter()
        .map(|t| {
            let (s, p, o) = store.decode(t);
            triple_line(s, p, o)
        })
        .collect();
    lines.sort_unstable();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parses a document; blank lines and `#` comments are ignored.
pub fn parse(text: &str) -> Result<Vec<[Term; 3]>, NTriplesError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| NTriplesError { line: i + 1, message };
        let mut cursor = Cursor { rest: line };
        let s = cursor.term().map_err(err)?;
        let p = cursor.term().map_err(err)?;
        let o = cursor.term().map_err(err)?;
        cursor.skip_ws();
        if cursor.rest.strip_prefix('.').map(str::trim_start) != Some("") {
            return Err(err(format!("expected '.' at end of triple, found {:?}", cursor.rest)));
        }
        if !s.is_iri() || !p.is_iri() {
            return Err(err("subject and predicate must be IRIs".to_string()));
        }
        out.push([s, p, o]);
    }
    Ok(out)
}

/// Parses and inserts; returns how many triples were new.
pub fn import(store: &mut TripleStore, text: &str) -> Result<usize, ImportError> {
    let triples = parse(text)?;
    let mut added = 0;
    for [s, p, o] in &triples {
        added += usize::from(store.insert_terms(s, p, o)?);
    }
    Ok(added)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ImportError {
    #[error(transparent)]
    Syntax(#[from] NTriplesError),
    #[error(transparent)]
    Store(#[from] StoreError),
}

struct Cursor<'a> {
    rest: &'a str,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start_matches([' ', '\t']);
    }

    fn term(&mut self) -> Result<Term, String> {
        self.skip_ws();
        if let Some(after) = self.rest.strip_prefix('<') {
            let end = after.find('>').ok_or("unterminated IRI")?;
            let iri = Iri::parse(&after[..end]).map_err(|e| e.to_string())?;
            self.rest = &after[end + 1..];
            return Ok(Term::Iri(iri));
        }
        if let Some(after) = self.rest.strip_prefix('"') {
            let mut value = String::new();
            let mut chars = after.char_indices();
            let close = loop {
                let (i, c) = chars.next().ok_or("unterminated literal")?;
                match c {
                    '"' => break i,
                    '\\' => {
                        let (_, e) = chars.next().ok_or("dangling escape")?;
                        match e {
                            't' => value.push('\t'),
                            'b' => value.push('\u{8}'),
                            'n' => value.push('\n'),
                            'r' => value.push('\r'),
                            'f' => value.push('\u{c}'),
                            '"' => value.push('"'),
                            '\'' => value.push('\''),
                            '\\' => value.push('\\'),
                            'u' | 'U' => {
                                let width = if e == 'u' { 4 } else { 8 };
                                let hex: String = (0..width).filter_map(|_| chars.next().map(|(_, h)| h)).collect();
                                let code = u32::from_str_radix(&hex, 16).map_err(|_| format!("bad \\{e} escape"))?;
                                value.push(char::from_u32(code).ok_or("escape is not a scalar value")?);
                            }
                            other => return Err(format!("unknown escape \\{other}")),
                        }
                    }
                    c => value.push(c),
                }
            };
            self.rest = &after[close + 1..];
            let mut language = None;
            if let Some(tag) = self.rest.strip_prefix('@') {
                let end = tag.find(|c: char| !(c.is_ascii_alphanumeric() || c == '-')).unwrap_or(tag.len());
                if end == 0 {
                    return Err("empty language tag".into());
                }
                language = Some(tag[..end].to_string());
                self.rest = &tag[end..];
            } else if self.rest.starts_with("^^") {
                return Err("typed literals are not supported".into());
            }
            return Ok(Term::Literal { value, language });
        }
        if self.rest.starts_with("_:") {
            return Err("blank nodes are not supported".into());
        }
        Err(format!("expected a term at {:?}", self.rest))
    }
}
