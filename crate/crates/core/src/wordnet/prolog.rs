//! Reader for the Prolog release of the WordNet database: `s/6` synset
//! clauses, `hyp/2` hypernym clauses and `g/2` gloss clauses, one per line.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;

use thiserror::Error;

use super::SynsetRecord;
use crate::Warning;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Synsets,
    Hypernyms,
    Glosses,
}

impl fmt::Display for Stream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stream::Synsets => "synset stream",
            Stream::Hypernyms => "hypernym stream",
            Stream::Glosses => "gloss stream",
        })
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PrologError {
    #[error("{stream}, line {line}: {message}: {text:?}")]
    Parse {
        stream: Stream,
        line: usize,
        text: String,
        message: String,
    },
    #[error("{stream}: I/O error: {message}")]
    Io { stream: Stream, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Int(i64),
    Atom(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub functor: String,
    pub args: Vec<Term>,
}

/// Parses one fact such as `s(100001740,1,'entity',n,1,11).`
pub fn parse_clause(text: &str) -> Result<Clause, String> {
    let mut chars = text.trim().char_indices().peekable();
    let src = text.trim();

    let functor = read_name(src, &mut chars).ok_or("expected a functor")?;
    expect(&mut chars, '(')?;
    let mut args = Vec::new();
    loop {
        skip_ws(&mut chars);
        let term = match chars.peek() {
            Some(&(_, '\'')) => {
                chars.next();
                let mut atom = String::new();
                loop {
                    match chars.next() {
                        Some((_, '\'')) => {
                            if matches!(chars.peek(), Some(&(_, '\''))) {
                                chars.next();
                                atom.push('\'');
                            } else {
                                break;
                            }
                        }
                        Some((_, c)) => atom.push(c),
                        None => return Err("unterminated quoted atom".into()),
                    }
                }
                Term::Atom(atom)
            }
            Some(&(_, c)) if c.is_ascii_digit() || c == '-' => {
                let start = chars.next().map(|(i, _)| i).unwrap_or_default();
                let mut end = start + c.len_utf8();
                while let Some(&(i, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = i + 1;
                    chars.next();
                }
                let digits = &src[start..end];
                Term::Int(
                    digits
                        .parse()
                        .map_err(|_| format!("bad integer {digits:?}"))?,
                )
            }
            Some(&(_, c)) if c.is_ascii_lowercase() => {
                Term::Atom(read_name(src, &mut chars).expect("peeked a letter"))
            }
            Some(&(_, c)) => return Err(format!("unexpected character {c:?}")),
            None => return Err("unexpected end of clause".into()),
        };
        args.push(term);
        skip_ws(&mut chars);
        match chars.next() {
            Some((_, ',')) => continue,
            Some((_, ')')) => break,
            Some((_, c)) => return Err(format!("expected ',' or ')' but found {c:?}")),
            None => return Err("unexpected end of clause".into()),
        }
    }
    expect(&mut chars, '.')?;
    skip_ws(&mut chars);
    if let Some((_, c)) = chars.next() {
        return Err(format!("trailing input after '.': {c:?}"));
    }
    Ok(Clause { functor, args })
}

type Chars<'a> = std::iter::Peekable<std::str::CharIndices<'a>>;

fn skip_ws(chars: &mut Chars<'_>) {
    while chars.peek().is_some_and(|&(_, c)| c.is_whitespace()) {
        chars.next();
    }
}

fn expect(chars: &mut Chars<'_>, want: char) -> Result<(), String> {
    skip_ws(chars);
    match chars.next() {
        Some((_, c)) if c == want => Ok(()),
        Some((_, c)) => Err(format!("expected {want:?} but found {c:?}")),
        None => Err(format!("expected {want:?} at end of clause")),
    }
}

fn read_name(src: &str, chars: &mut Chars<'_>) -> Option<String> {
    let &(start, first) = chars.peek()?;
    if !first.is_ascii_lowercase() {
        return None;
    }
    let mut end = start;
    while let Some(&(i, c)) = chars.peek() {
        if !(c.is_ascii_alphanumeric() || c == '_') {
            break;
        }
        end = i + c.len_utf8();
        chars.next();
    }
    Some(src[start..end].to_owned())
}

/// Synset records and hypernym pairs read from the three streams.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrologDb {
    /// In order of first appearance in the synset stream.
    pub records: Vec<SynsetRecord>,
    /// `(hyponym id, hypernym id)` pairs between retained synsets.
    pub hypernyms: Vec<(u64, u64)>,
    pub warnings: Vec<Warning>,
}

fn clauses<R: BufRead>(
    reader: R,
    stream: Stream,
    functor: &str,
    mut visit: impl FnMut(usize, &str, Vec<Term>) -> Result<(), String>,
) -> Result<(), PrologError> {
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| PrologError::Io {
            stream,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let err = |message: String| PrologError::Parse {
            stream,
            line: lineno,
            text: line.clone(),
            message,
        };
        let clause = parse_clause(trimmed).map_err(err)?;
        if clause.functor != functor {
            return Err(err(format!("expected a {functor}/_ clause, found {}", clause.functor)));
        }
        visit(lineno, &line, clause.args).map_err(err)?;
    }
    Ok(())
}

fn synset_id(term: &Term) -> Result<u64, String> {
    match term {
        Term::Int(n) if *n >= 0 => Ok(*n as u64),
        other => Err(format!("expected a synset id, found {other:?}")),
    }
}

/// Reads the three streams. Only noun synsets (type `n`) are retained;
/// hypernym pairs touching anything else become warnings.
pub fn parse_prolog_db<S, H, G>(synsets: S, hypernyms: H, glosses: G) -> Result<PrologDb, PrologError>
where
    S: BufRead,
    H: BufRead,
    G: BufRead,
{
    let mut db = PrologDb::default();
    // (id, w_num, word) in stream order
    let mut words: Vec<(u64, i64, String)> = Vec::new();
    let mut order: Vec<u64> = Vec::new();
    let mut seen: HashMap<u64, usize> = HashMap::new();

    clauses(synsets, Stream::Synsets, "s", |_, _, args| {
        if args.len() < 4 {
            return Err(format!("s/{} has too few arguments", args.len()));
        }
        let id = synset_id(&args[0])?;
        let w_num = match &args[1] {
            Term::Int(n) => *n,
            other => return Err(format!("expected a word number, found {other:?}")),
        };
        let word = match &args[2] {
            Term::Atom(a) => a.clone(),
            Term::Int(n) => n.to_string(),
        };
        let is_noun = matches!(&args[3], Term::Atom(t) if t == "n");
        if is_noun {
            if let Entry::Vacant(e) = seen.entry(id) {
                e.insert(order.len());
                order.push(id);
            }
            words.push((id, w_num, word));
        }
        Ok(())
    })?;

    let mut lemmas: Vec<Vec<(i64, String)>> = vec![Vec::new(); order.len()];
    for (id, w_num, word) in words {
        lemmas[seen[&id]].push((w_num, word));
    }

    let mut gloss_of: HashMap<u64, String> = HashMap::new();
    clauses(glosses, Stream::Glosses, "g", |_, _, args| {
        match args.as_slice() {
            [id, Term::Atom(gloss)] => {
                let id = synset_id(id)?;
                if seen.contains_key(&id) {
                    gloss_of.insert(id, gloss.clone());
                }
                Ok(())
            }
            _ => Err("expected g(Id,'gloss')".into()),
        }
    })?;

    let mut dangling = Vec::new();
    clauses(hypernyms, Stream::Hypernyms, "hyp", |lineno, _, args| {
        match args.as_slice() {
            [child, parent] => {
                let (child, parent) = (synset_id(child)?, synset_id(parent)?);
                if seen.contains_key(&child) && seen.contains_key(&parent) {
                    db.hypernyms.push((child, parent));
                } else {
                    dangling.push(Warning::at(
                        lineno,
                        format!("dangling hypernym pair hyp({child},{parent}) skipped"),
                    ));
                }
                Ok(())
            }
            _ => Err("expected hyp(Id1,Id2)".into()),
        }
    })?;
    db.warnings = dangling;

    db.records = order
        .into_iter()
        .zip(lemmas)
        .map(|(id, mut words)| {
            words.sort_by_key(|(w_num, _)| *w_num);
            SynsetRecord {
                synset_id: id,
                lemmas: words.into_iter().map(|(_, w)| w).collect(),
                gloss: gloss_of.remove(&id),
                topic: None,
            }
        })
        .collect();
    Ok(db)
}
