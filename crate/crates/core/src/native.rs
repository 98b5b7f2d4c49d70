//! Native tab-separated taxonomy format.
//!
//! One record per line, fields separated by tabs:
//!
//! ```text
//! # comment
//! C  name  lemma|lemma  gloss  topic  external_id
//! E  child  parent  ISA|INST
//! ```
//!
//! Concepts are created in file order before any edge is added, so edges may
//! name concepts defined further down. Backslash, tab, newline and carriage
//! return are escaped as `\\`, `\t`, `\n`, `\r` in every field, and `|` as
//! `\|` inside lemmas.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::taxonomy::{Concept, EdgeKind, Taxonomy, TaxonomyError};

#[derive(Debug, Error)]
pub enum NativeError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Taxonomy {
        line: usize,
        #[source]
        source: TaxonomyError,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn escape(field: &str, lemma: bool) -> String {
    let mut out = String::with_capacity(field.len());
    for c in field.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '|' if lemma => out.push_str("\\|"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(field: &str) -> Result<String, String> {
    let mut out = String::with_capacity(field.len());
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some('|') => out.push('|'),
            Some(other) => return Err(format!("unknown escape \\{other}")),
            None => return Err("dangling backslash".into()),
        }
    }
    Ok(out)
}

/// Splits the lemma field on unescaped `|`.
fn split_lemmas(field: &str) -> Result<Vec<String>, String> {
    let mut lemmas = Vec::new();
    let mut current = String::new();
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => {
                current.push('\\');
                current.push(chars.next().ok_or("dangling backslash")?);
            }
            '|' => lemmas.push(unescape(&std::mem::take(&mut current))?),
            c => current.push(c),
        }
    }
    lemmas.push(unescape(&current)?);
    if lemmas.iter().any(String::is_empty) {
        return Err("empty lemma".into());
    }
    Ok(lemmas)
}

fn optional(field: Option<&str>) -> Result<Option<String>, String> {
    match field {
        None | Some("") => Ok(None),
        Some(f) => unescape(f).map(Some),
    }
}

/// Reads a taxonomy in the native format.
pub fn read_native<R: BufRead>(reader: R) -> Result<Taxonomy, NativeError> {
    let mut taxonomy = Taxonomy::new();
    let mut edges: Vec<(usize, String, String, EdgeKind)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |message: String| NativeError::Parse {
            line: lineno,
            message,
        };
        let fields: Vec<&str> = line.split('\t').collect();
        match fields[0] {
            "C" => {
                if !(3..=6).contains(&fields.len()) {
                    return Err(perr(format!("C line has {} fields, expected 3 to 6", fields.len())));
                }
                let name = unescape(fields[1]).map_err(perr)?;
                let lemmas = split_lemmas(fields[2]).map_err(|m| perr(format!("{name}: {m}")))?;
                let mut concept = Concept::new(name, lemmas);
                concept.gloss = optional(fields.get(3).copied()).map_err(perr)?;
                concept.topic = optional(fields.get(4).copied()).map_err(perr)?;
                concept.external_id = optional(fields.get(5).copied()).map_err(perr)?;
                taxonomy
                    .add_concept(concept)
                    .map_err(|source| NativeError::Taxonomy { line: lineno, source })?;
            }
            "E" => {
                if fields.len() != 4 {
                    return Err(perr(format!("E line has {} fields, expected 4", fields.len())));
                }
                let kind = EdgeKind::from_tag(fields[3])
                    .ok_or_else(|| perr(format!("unknown edge kind {:?}", fields[3])))?;
                edges.push((
                    lineno,
                    unescape(fields[1]).map_err(perr)?,
                    unescape(fields[2]).map_err(perr)?,
                    kind,
                ));
            }
            other => return Err(perr(format!("unknown record type {other:?}"))),
        }
    }
    for (line, child, parent, kind) in edges {
        let wrap = |source| NativeError::Taxonomy { line, source };
        let c = taxonomy.require(&child).map_err(wrap)?;
        let p = taxonomy.require(&parent).map_err(wrap)?;
        taxonomy.add_edge(c, p, kind).map_err(wrap)?;
    }
    Ok(taxonomy)
}

/// Writes concepts in insertion order, then edges in canonical order.
pub fn write_native<W: Write>(taxonomy: &Taxonomy, mut out: W) -> io::Result<()> {
    for id in taxonomy.ids() {
        let c = taxonomy.concept(id);
        let lemmas: Vec<String> = c.lemmas.iter().map(|l| escape(l, true)).collect();
        let opt = |f: &Option<String>| f.as_deref().map(|s| escape(s, false)).unwrap_or_default();
        writeln!(
            out,
            "C\t{}\t{}\t{}\t{}\t{}",
            escape(&c.name, false),
            lemmas.join("|"),
            opt(&c.gloss),
            opt(&c.topic),
            opt(&c.external_id),
        )?;
    }
    for edge in taxonomy.edges() {
        writeln!(
            out,
            "E\t{}\t{}\t{}",
            escape(taxonomy.name(edge.child), false),
            escape(taxonomy.name(edge.parent), false),
            edge.kind.tag()
        )?;
    }
    Ok(())
}
