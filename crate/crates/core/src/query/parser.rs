use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{IriRef, PathExpr, PredicatePattern, QueryAst, QueryError, TermPattern, TriplePattern, Variable};
use crate::model::Iri;
use crate::store::Term;
use crate::vocab::{Vocab, RDF_TYPE};

const UNSUPPORTED_KEYWORDS: &[&str] = &[
    "OPTIONAL",
    "FILTER",
    "UNION",
    "MINUS",
    "BIND",
    "VALUES",
    "GRAPH",
    "SERVICE",
    "ORDER",
    "GROUP",
    "HAVING",
    "LIMIT",
    "OFFSET",
    "CONSTRUCT",
    "ASK",
    "DESCRIBE",
    "BASE",
    "FROM",
    "INSERT",
    "DELETE",
    "LOAD",
    "CLEAR",
];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Var(String),
    Iri(String),
    PName { prefix: String, local: String },
    Str { value: String, lang: Option<String>, typed: bool },
    Number,
    Punct(char),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

fn lex(text: &str) -> Result<Vec<Token>, QueryError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let syntax = |line, column, message: String| QueryError::Syntax { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c == '?' || c == '$' {
            let mut j = i + 1;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            if j == i + 1 {
                advance(1, &mut i, &mut col);
                Tok::Punct(c)
            } else {
                let name: String = chars[i + 1..j].iter().collect();
                advance(j - i, &mut i, &mut col);
                Tok::Var(name)
            }
        } else if c == '<' {
            let mut j = i + 1;
            while j < chars.len() && chars[j] != '>' {
                if chars[j] == '\n' || chars[j] == ' ' {
                    return Err(syntax(start_line, start_col, "unterminated IRI".into()));
                }
                j += 1;
            }
            if j == chars.len() {
                return Err(syntax(start_line, start_col, "unterminated IRI".into()));
            }
            let iri: String = chars[i + 1..j].iter().collect();
            advance(j + 1 - i, &mut i, &mut col);
            Tok::Iri(iri)
        } else if c == '"' || c == '\'' {
            let mut value = String::new();
            let mut j = i + 1;
            loop {
                match chars.get(j) {
                    None | Some('\n') => return Err(syntax(start_line, start_col, "unterminated string".into())),
                    Some(&q) if q == c => break,
                    Some('\\') => {
                        let e = chars.get(j + 1).copied().unwrap_or(' ');
                        value.push(match e {
                            't' => '\t',
                            'n' => '\n',
                            'r' => '\r',
                            'b' => '\u{8}',
                            'f' => '\u{c}',
                            '"' | '\'' | '\\' => e,
                            _ => return Err(syntax(line, col + j - i, format!("unknown escape \\{e}"))),
                        });
                        j += 2;
                    }
                    Some(&other) => {
                        value.push(other);
                        j += 1;
                    }
                }
            }
            j += 1;
            let mut lang = None;
            let mut typed = false;
            if chars.get(j) == Some(&'@') {
                let mut k = j + 1;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '-') {
                    k += 1;
                }
                lang = Some(chars[j + 1..k].iter().collect());
                j = k;
            } else if chars.get(j) == Some(&'^') && chars.get(j + 1) == Some(&'^') {
                typed = true;
                j += 2;
            }
            advance(j - i, &mut i, &mut col);
            Tok::Str { value, lang, typed }
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len()
                && (chars[j].is_ascii_digit() || chars[j] == '.' && chars.get(j + 1).is_some_and(char::is_ascii_digit))
            {
                j += 1;
            }
            advance(j - i, &mut i, &mut col);
            Tok::Number
        } else if is_name_char(c) || c == ':' {
            let mut j = i;
            while j < chars.len() && is_name_char(chars[j]) {
                j += 1;
            }
            let head: String = chars[i..j].iter().collect();
            if chars.get(j) == Some(&':') {
                let mut k = j + 1;
                while k < chars.len() && (is_name_char(chars[k]) || chars[k] == '.') {
                    k += 1;
                }
                while k > j + 1 && chars[k - 1] == '.' {
                    k -= 1;
                }
                let local: String = chars[j + 1..k].iter().collect();
                advance(k - i, &mut i, &mut col);
                Tok::PName { prefix: head, local }
            } else {
                advance(j - i, &mut i, &mut col);
                Tok::Word(head)
            }
        } else {
            advance(1, &mut i, &mut col);
            Tok::Punct(c)
        };
        out.push(Token { tok, line: start_line, column: start_col });
    }
    out.push(Token { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: BTreeMap<String, String>,
}

/// Parses with the default `mcs`/`schema`/`rdf`/`rdfs` prefixes.
pub fn parse_query(text: &str) -> Result<QueryAst, QueryError> {
    parse_query_with(text, &Vocab::default())
}

/// Parses with default prefixes taken from `vocab`; explicit `PREFIX`
/// declarations override them.
pub fn parse_query_with(text: &str, vocab: &Vocab) -> Result<QueryAst, QueryError> {
    let mut parser = Parser { tokens: lex(text)?, pos: 0, prefixes: vocab.default_prefixes() };
    parser.query()
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, t: &Token, message: impl Into<String>) -> QueryError {
        QueryError::Syntax { line: t.line, column: t.column, message: message.into() }
    }

    fn unsupported(&self, t: &Token, feature: impl Into<String>) -> QueryError {
        QueryError::Unsupported { feature: feature.into(), line: t.line, column: t.column }
    }

    fn keyword(t: &Token) -> Option<String> {
        match &t.tok {
            Tok::Word(w) => Some(w.to_ascii_uppercase()),
            _ => None,
        }
    }

    fn check_unsupported(&self, t: &Token) -> Result<(), QueryError> {
        if let Some(k) = Self::keyword(t) {
            if UNSUPPORTED_KEYWORDS.contains(&k.as_str()) {
                return Err(self.unsupported(t, k));
            }
        }
        Ok(())
    }

    fn expect_punct(&mut self, c: char) -> Result<Token, QueryError> {
        let t = self.next();
        if t.tok == Tok::Punct(c) {
            Ok(t)
        } else {
            self.check_unsupported(&t)?;
            Err(self.error(&t, format!("expected '{c}'")))
        }
    }

    fn query(&mut self) -> Result<QueryAst, QueryError> {
        loop {
            let t = self.peek().clone();
            match Self::keyword(&t).as_deref() {
                Some("PREFIX") => {
                    self.next();
                    let name = self.next();
                    let prefix = match name.tok {
                        Tok::PName { prefix, local } if local.is_empty() => prefix,
                        _ => return Err(self.error(&name, "expected a prefix name such as 'mcs:'")),
                    };
                    let iri = self.next();
                    match &iri.tok {
                        Tok::Iri(text) => {
                            Iri::parse(text.as_str()).map_err(|e| self.error(&iri, e.to_string()))?;
                            self.prefixes.insert(prefix, text.clone());
                        }
                        _ => return Err(self.error(&iri, "expected <namespace IRI>")),
                    }
                }
                Some("SELECT") => {
                    self.next();
                    break;
                }
                _ => {
                    self.check_unsupported(&t)?;
                    return Err(self.error(&t, "expected PREFIX or SELECT"));
                }
            }
        }

        let mut distinct = false;
        if Self::keyword(self.peek()).as_deref() == Some("DISTINCT") {
            self.next();
            distinct = true;
        }
        let mut projection = Vec::new();
        let mut select_all = false;
        let star_or_first = self.peek().clone();
        if star_or_first.tok == Tok::Punct('*') {
            self.next();
            select_all = true;
        } else {
            while let Tok::Var(name) = &self.peek().tok {
                projection.push(Variable::new(name.clone()));
                self.next();
            }
            if projection.is_empty() {
                if star_or_first.tok == Tok::Punct('(') {
                    return Err(self.unsupported(&star_or_first, "projection expression"));
                }
                return Err(self.error(&star_or_first, "expected projected variables or '*'"));
            }
            if self.peek().tok == Tok::Punct('(') {
                let t = self.peek().clone();
                return Err(self.unsupported(&t, "projection expression"));
            }
        }
        if Self::keyword(self.peek()).as_deref() == Some("WHERE") {
            self.next();
        }
        self.expect_punct('{')?;
        let patterns = self.group()?;
        let end = self.next();
        if end.tok != Tok::Eof {
            self.check_unsupported(&end)?;
            return Err(self.error(&end, "unexpected text after the query"));
        }

        let mut ast = QueryAst { prefixes: self.prefixes.clone(), projection, distinct, patterns };
        let vars = ast.variables();
        if select_all {
            ast.projection = vars;
        } else if let Some(missing) = ast.projection.iter().find(|v| !vars.contains(v)) {
            return Err(QueryError::UnknownProjection(missing.name().to_string()));
        }
        Ok(ast)
    }

    fn group(&mut self) -> Result<Vec<TriplePattern>, QueryError> {
        let mut patterns = Vec::new();
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Punct('}') => {
                    self.next();
                    return Ok(patterns);
                }
                Tok::Punct('.') if !patterns.is_empty() => {
                    self.next();
                }
                Tok::Punct('{') => return Err(self.unsupported(&t, "nested group")),
                Tok::Eof => return Err(self.error(&t, "expected '}'")),
                _ => {
                    self.check_unsupported(&t)?;
                    let subject = self.term(true)?;
                    self.predicate_objects(subject, &mut patterns)?;
                    let after = self.peek().clone();
                    match after.tok {
                        Tok::Punct('.') | Tok::Punct('}') => {}
                        _ => {
                            self.check_unsupported(&after)?;
                            return Err(self.error(&after, "expected '.' or '}'"));
                        }
                    }
                }
            }
        }
    }

    fn predicate_objects(&mut self, subject: TermPattern, out: &mut Vec<TriplePattern>) -> Result<(), QueryError> {
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.term(false)?;
                out.push(TriplePattern { subject: subject.clone(), predicate: predicate.clone(), object });
                if self.peek().tok == Tok::Punct(',') {
                    self.next();
                } else {
                    break;
                }
            }
            if self.peek().tok != Tok::Punct(';') {
                return Ok(());
            }
            while self.peek().tok == Tok::Punct(';') {
                self.next();
            }
            if matches!(self.peek().tok, Tok::Punct('.') | Tok::Punct('}')) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<PredicatePattern, QueryError> {
        let t = self.peek().clone();
        if let Tok::Var(name) = &t.tok {
            self.next();
            self.reject_path_modifier()?;
            if self.peek().tok == Tok::Punct('/') {
                let s = self.peek().clone();
                return Err(self.unsupported(&s, "variable in property path"));
            }
            return Ok(PredicatePattern::Var(Variable::new(name.clone())));
        }
        let mut steps = Vec::new();
        loop {
            steps.push(self.path_step()?);
            self.reject_path_modifier()?;
            if self.peek().tok == Tok::Punct('/') {
                self.next();
            } else {
                break;
            }
        }
        Ok(PredicatePattern::Path(PathExpr(steps)))
    }

    fn reject_path_modifier(&self) -> Result<(), QueryError> {
        let t = self.peek();
        let feature = match t.tok {
            Tok::Punct('|') => "alternative property path",
            Tok::Punct('*') => "zero-or-more property path",
            Tok::Punct('+') => "one-or-more property path",
            Tok::Punct('?') => "zero-or-one property path",
            _ => return Ok(()),
        };
        Err(self.unsupported(t, feature))
    }

    fn path_step(&mut self) -> Result<IriRef, QueryError> {
        let t = self.next();
        match &t.tok {
            Tok::Word(w) if w == "a" => Ok(IriRef::Full(Iri::parse(RDF_TYPE).expect("rdf:type"))),
            Tok::Iri(_) | Tok::PName { .. } => self.iri_ref(&t),
            Tok::Punct('^') => Err(self.unsupported(&t, "inverse property path")),
            Tok::Punct('!') => Err(self.unsupported(&t, "negated property set")),
            Tok::Punct('(') => Err(self.unsupported(&t, "grouped property path")),
            Tok::Var(_) => Err(self.unsupported(&t, "variable in property path")),
            _ => {
                self.check_unsupported(&t)?;
                Err(self.error(&t, "expected a predicate"))
            }
        }
    }

    fn iri_ref(&self, t: &Token) -> Result<IriRef, QueryError> {
        match &t.tok {
            Tok::Iri(text) => Iri::parse(text.clone())
                .map(IriRef::Full)
                .map_err(|_| self.error(t, format!("<{text}> is not an absolute IRI"))),
            Tok::PName { prefix, local } => {
                if !self.prefixes.contains_key(prefix) {
                    return Err(QueryError::UnboundPrefix { prefix: prefix.clone(), line: t.line, column: t.column });
                }
                Ok(IriRef::Prefixed { prefix: prefix.clone(), local: local.clone() })
            }
            _ => Err(self.error(t, "expected an IRI")),
        }
    }

    fn term(&mut self, subject: bool) -> Result<TermPattern, QueryError> {
        let t = self.next();
        match &t.tok {
            Tok::Var(name) => Ok(TermPattern::Var(Variable::new(name.clone()))),
            Tok::Iri(_) | Tok::PName { .. } => self.iri_ref(&t).map(TermPattern::Iri),
            Tok::Str { typed: true, .. } => Err(self.unsupported(&t, "typed literal")),
            Tok::Str { value, lang, .. } => {
                Ok(TermPattern::Literal(Term::Literal { value: value.clone(), language: lang.clone() }))
            }
            Tok::Number => Err(self.unsupported(&t, "numeric literal")),
            Tok::Punct('[') => Err(self.unsupported(&t, "blank node")),
            Tok::Punct('(') => Err(self.unsupported(&t, "collection")),
            Tok::Word(w) if w == "true" || w == "false" => Err(self.unsupported(&t, "boolean literal")),
            Tok::Word(w) if w == "a" && !subject => Err(self.error(&t, "'a' is only valid as a predicate")),
            _ => {
                self.check_unsupported(&t)?;
                Err(self.error(&t, if subject { "expected a subject" } else { "expected an object" }))
            }
        }
    }
}
