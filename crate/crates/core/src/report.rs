//! Text and JSON-lines renderings of checker, statistics, suggestion and
//! mapping results.
//!
//! A text violation line has the form
//!
//! ```text
//! KIND SUBJECT OBJECT REPAIR path: NAME NAME... -- EXPLANATION
//! ```
//!
//! where OBJECT is `-` when absent; see [`VIOLATION_LINE`]. Lines starting
//! with `#` are summaries and may be ignored by consumers.

use std::io::{self, Write};
use std::str::FromStr;

use serde::Serialize;

use crate::check::{CheckReport, Violation, ViolationKind};
use crate::meta::catalog::CategoryKind;
use crate::meta::Suggestion;
use crate::restructure::{MappingReport, MappingRow};
use crate::taxonomy::{ConceptId, EdgeKind, Taxonomy};
use crate::wordnet::CorpusStats;

/// Regular grammar of a text violation line.
pub const VIOLATION_LINE: &str =
    r"^([A-Z_]+) (\S+) (\S+) ([A-Z_]+) path:((?: \S+)+) -- (.*)$";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Text,
    JsonLines,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "jsonl" => Ok(ReportFormat::JsonLines),
            other => Err(format!("unknown report format {other:?} (expected text or jsonl)")),
        }
    }
}

fn json_line<W: Write, T: Serialize>(out: &mut W, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

pub fn violation_line(v: &Violation) -> String {
    format!(
        "{} {} {} {} path: {} -- {}",
        v.kind,
        v.subject,
        v.object.as_deref().unwrap_or("-"),
        v.suggested_repair,
        v.path.join(" "),
        v.explanation
    )
}

pub fn write_check_report<W: Write>(report: &CheckReport, format: ReportFormat, mut out: W) -> io::Result<()> {
    match format {
        ReportFormat::JsonLines => {
            for v in &report.violations {
                json_line(&mut out, v)?;
            }
        }
        ReportFormat::Text => {
            for v in &report.violations {
                writeln!(out, "{}", violation_line(v))?;
            }
            let counts: Vec<String> = ViolationKind::ALL
                .iter()
                .filter(|k| report.count(**k) > 0)
                .map(|k| format!("{k}={}", report.count(*k)))
                .collect();
            writeln!(
                out,
                "# {} violations{}{}",
                report.violations.len(),
                if counts.is_empty() { "" } else { ": " },
                counts.join(" ")
            )?;
            writeln!(
                out,
                "# {} ancestor pairs checked, {} undecidable, {} rule evaluations suppressed by unknown slots",
                report.pairs_checked, report.skipped, report.suppressed_rules
            )?;
        }
    }
    Ok(())
}

pub fn write_stats<W: Write>(stats: &CorpusStats, format: ReportFormat, mut out: W) -> io::Result<()> {
    match format {
        ReportFormat::JsonLines => json_line(&mut out, stats),
        ReportFormat::Text => {
            let rows = [
                ("noun_entries", stats.noun_entries),
                ("noun_synsets", stats.noun_synsets),
                ("nouns", stats.nouns),
                ("monosemous_nouns", stats.monosemous_nouns),
                ("polysemous_nouns", stats.polysemous_nouns),
                ("one_word_nouns", stats.one_word_nouns),
                ("noun_phrases", stats.noun_phrases),
            ];
            for (key, value) in rows {
                writeln!(out, "{key}\t{value}")?;
            }
            if let Some(classes) = stats.equivalence_classes {
                writeln!(out, "equivalence_classes\t{classes}")?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SuggestionRecord<'a> {
    concept: &'a str,
    forbidden: String,
    #[serde(flatten)]
    suggestion: &'a Suggestion,
}

pub fn write_suggestions<W: Write>(
    concept: &str,
    suggestions: &[Suggestion],
    format: ReportFormat,
    mut out: W,
) -> io::Result<()> {
    for s in suggestions {
        match format {
            ReportFormat::Text => writeln!(out, "{concept} {s}")?,
            ReportFormat::JsonLines => json_line(
                &mut out,
                &SuggestionRecord {
                    concept,
                    forbidden: s.forbidden_glyph(),
                    suggestion: s,
                },
            )?,
        }
    }
    if format == ReportFormat::Text && suggestions.is_empty() {
        writeln!(out, "# no constraints from descendants of {concept}")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Rejected<'a> {
    concept: &'a str,
    reason: &'a str,
}

#[derive(Serialize)]
struct Imported<'a> {
    concept: &'a str,
    from: Option<&'a str>,
}

#[derive(Serialize)]
struct RowRecord<'a> {
    target: String,
    covered: &'a [String],
    rejected: Vec<Rejected<'a>>,
    imported: Vec<Imported<'a>>,
    untouched: &'a [String],
    incompatible: &'a [Violation],
}

impl<'a> RowRecord<'a> {
    fn new(target: String, row: &'a MappingRow) -> Self {
        RowRecord {
            target,
            covered: &row.covered,
            rejected: row
                .rejected
                .iter()
                .map(|(concept, reason)| Rejected { concept, reason })
                .collect(),
            imported: row
                .imported
                .iter()
                .map(|(concept, from)| Imported {
                    concept,
                    from: from.as_deref(),
                })
                .collect(),
            untouched: &row.untouched,
            incompatible: &row.incompatible,
        }
    }
}

/// Writes one block (text) or one object (JSON lines) per mapping row.
pub fn write_mapping_report<W: Write>(report: &MappingReport, format: ReportFormat, mut out: W) -> io::Result<()> {
    for (target, row) in &report.rows {
        if format == ReportFormat::JsonLines {
            json_line(&mut out, &RowRecord::new(target.to_string(), row))?;
            continue;
        }
        writeln!(out, "{target}")?;
        if !row.covered.is_empty() {
            writeln!(out, "  covered: {}", row.covered.join(" "))?;
        }
        for (name, reason) in &row.rejected {
            writeln!(out, "  rejected: {name} -- {reason}")?;
        }
        for (name, from) in &row.imported {
            writeln!(out, "  imported: {name} from {}", from.as_deref().unwrap_or("-"))?;
        }
        if !row.untouched.is_empty() {
            writeln!(out, "  untouched: {}", row.untouched.join(" "))?;
        }
        for v in &row.incompatible {
            writeln!(out, "  {}", violation_line(v))?;
        }
    }
    if format == ReportFormat::Text {
        let incompatible = report.incompatibilities().count();
        writeln!(out, "# {} rows, {incompatible} incompatible placements", report.rows.len())?;
    }
    Ok(())
}

/// Indented tree of a cleaned taxonomy: catalog categories in catalog order,
/// children by name. A concept with several parents is printed under each;
/// individuals are marked with `@`.
pub fn write_tree<W: Write>(taxonomy: &Taxonomy, mut out: W) -> io::Result<()> {
    let mut roots: Vec<ConceptId> = CategoryKind::ALL
        .iter()
        .filter_map(|c| taxonomy.id_of(c.concept_name()))
        .filter(|&id| taxonomy.parents(id).is_empty())
        .collect();
    for id in taxonomy.roots() {
        if !roots.contains(&id) {
            roots.push(id);
        }
    }
    let mut stack: Vec<(ConceptId, usize, EdgeKind)> =
        roots.into_iter().rev().map(|r| (r, 0, EdgeKind::IsA)).collect();
    while let Some((node, depth, kind)) = stack.pop() {
        let marker = if kind == EdgeKind::InstanceOf { "@" } else { "" };
        writeln!(out, "{}{marker}{}", "  ".repeat(depth), taxonomy.name(node))?;
        for &(child, kind) in taxonomy.children(node).iter().rev() {
            stack.push((child, depth + 1, kind));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::Repair;

    fn violation(object: Option<&str>) -> Violation {
        Violation {
            kind: ViolationKind::RoleOverType,
            subject: "Person".into(),
            object: object.map(str::to_owned),
            path: vec!["Person".into(), "Causal_Agent".into()],
            suggested_repair: Repair::DropEdge,
            explanation: "a role cannot subsume a type".into(),
        }
    }

    #[test]
    fn text_line_layout() {
        assert_eq!(
            violation_line(&violation(Some("Causal_Agent"))),
            "ROLE_OVER_TYPE Person Causal_Agent DROP_EDGE path: Person Causal_Agent -- a role cannot subsume a type"
        );
        assert!(violation_line(&violation(None)).starts_with("ROLE_OVER_TYPE Person - DROP_EDGE"));
    }

    #[test]
    fn json_fields_mirror_the_violation() {
        let mut buf = Vec::new();
        let report = CheckReport {
            violations: vec![violation(Some("Causal_Agent"))],
            ..CheckReport::default()
        };
        write_check_report(&report, ReportFormat::JsonLines, &mut buf).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 6);
        for key in ["kind", "subject", "object", "path", "suggested_repair", "explanation"] {
            assert!(keys.contains(&key), "{key}");
        }
        assert_eq!(value["kind"], "ROLE_OVER_TYPE");
        assert_eq!(value["suggested_repair"], "DROP_EDGE");
    }

    #[test]
    fn stats_text() {
        let mut buf = Vec::new();
        write_stats(&CorpusStats::default(), ReportFormat::Text, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 7);
        assert!(text.lines().all(|l| l.ends_with("\t0")));
    }

    #[test]
    fn format_names() {
        assert_eq!("jsonl".parse(), Ok(ReportFormat::JsonLines));
        assert!("json".parse::<ReportFormat>().is_err());
    }
}
