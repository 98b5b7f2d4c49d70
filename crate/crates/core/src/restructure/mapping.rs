//! Directive-driven re-mapping of a taxonomy under the catalog categories.
//!
//! Directives are grouped into rows by target. In each row:
//!
//! * `COVER X` makes X equivalent to the target node: X's lemmas become
//!   aliases of the node and X's children are placed under it.
//! * `IMPORT X` places X itself, with its subtree, under the target node.
//! * `REJECT X` keeps X and its subtree out of that row's placements.
//!
//! Concepts covered or imported anywhere are placed only by their own
//! directives, never as part of another concept's subtree.

use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use crate::check::{check_all, check_category_assignment, Violation};
use crate::meta::annotations::{AnnotationSet, Directive, MappingTarget};
use crate::meta::catalog::CategoryKind;
use crate::meta::{classify_meta_category, effective_profile};
use crate::taxonomy::{Concept, ConceptId, EdgeKind, Taxonomy, TaxonomyError};
use crate::Warning;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MappingError {
    #[error("mapping directive names unknown concept {0}")]
    UnknownDirectiveTarget(String),
    #[error("node name {name} is used twice in the cleaned taxonomy ({first} and {second})")]
    NameClash {
        name: String,
        first: String,
        second: String,
    },
    #[error(transparent)]
    Taxonomy(#[from] TaxonomyError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MappingRow {
    pub covered: Vec<String>,
    /// `(concept, reason)`.
    pub rejected: Vec<(String, String)>,
    /// `(concept, original parent)`.
    pub imported: Vec<(String, Option<String>)>,
    /// Concepts given contradicting directives in this row; left unplaced.
    pub untouched: Vec<String>,
    /// Placed concepts whose profile conflicts with the row's category.
    pub incompatible: Vec<Violation>,
}

impl MappingRow {
    /// Every concept named in the row, in bucket order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.covered
            .iter()
            .map(String::as_str)
            .chain(self.rejected.iter().map(|(n, _)| n.as_str()))
            .chain(self.imported.iter().map(|(n, _)| n.as_str()))
            .chain(self.untouched.iter().map(String::as_str))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MappingReport {
    pub rows: BTreeMap<MappingTarget, MappingRow>,
}

impl MappingReport {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, target: &MappingTarget) -> Option<&MappingRow> {
        self.rows.get(target)
    }

    /// No concept sits in two buckets of the same row.
    pub fn is_partition(&self) -> bool {
        self.rows.values().all(|row| {
            let mut seen = HashSet::new();
            row.names().all(|n| seen.insert(n))
        })
    }

    pub fn incompatibilities(&self) -> impl Iterator<Item = &Violation> {
        self.rows.values().flat_map(|r| &r.incompatible)
    }
}

#[derive(Debug, Clone)]
pub struct Mapping {
    pub taxonomy: Taxonomy,
    /// Source annotations of the placed concepts plus the category profile
    /// of every synthetic node.
    pub annotations: AnnotationSet,
    pub report: MappingReport,
    pub warnings: Vec<Warning>,
}

#[derive(Default)]
struct RowPlan {
    covered: Vec<ConceptId>,
    rejected: Vec<ConceptId>,
    imported: Vec<ConceptId>,
    untouched: Vec<ConceptId>,
}

fn node_lemma(name: &str) -> String {
    name.replace('_', " ").to_lowercase()
}

fn describe(category: CategoryKind, path: &[String]) -> String {
    MappingTarget {
        category,
        path: path.to_vec(),
    }
    .to_string()
}

fn plan_rows(
    taxonomy: &Taxonomy,
    annotations: &AnnotationSet,
    warnings: &mut Vec<Warning>,
) -> Result<BTreeMap<MappingTarget, RowPlan>, MappingError> {
    let mut grouped: BTreeMap<MappingTarget, Vec<(ConceptId, Directive)>> = BTreeMap::new();
    for d in annotations.mapping_directives() {
        let id = taxonomy
            .id_of(&d.concept)
            .ok_or_else(|| MappingError::UnknownDirectiveTarget(d.concept.clone()))?;
        grouped.entry(d.target.clone()).or_default().push((id, d.directive));
    }

    let mut rows = BTreeMap::new();
    for (target, entries) in grouped {
        let mut order = Vec::new();
        let mut kinds: HashMap<ConceptId, Vec<Directive>> = HashMap::new();
        for (id, directive) in entries {
            let seen = kinds.entry(id).or_default();
            if seen.is_empty() {
                order.push(id);
            }
            if !seen.contains(&directive) {
                seen.push(directive);
            }
        }
        let mut plan = RowPlan::default();
        for id in order {
            match kinds[&id].as_slice() {
                [Directive::Cover] => plan.covered.push(id),
                [Directive::Reject] => plan.rejected.push(id),
                [Directive::Import] => plan.imported.push(id),
                _ => {
                    warnings.push(Warning::new(format!(
                        "{} has contradicting directives for {target}; left untouched",
                        taxonomy.name(id)
                    )));
                    plan.untouched.push(id);
                }
            }
        }
        rows.insert(target, plan);
    }
    Ok(rows)
}

struct Builder<'a> {
    source: &'a Taxonomy,
    out: Taxonomy,
    /// Output name to a description of where it came from, for clash reports.
    origin: HashMap<String, String>,
    copies: HashMap<ConceptId, ConceptId>,
}

impl Builder<'_> {
    fn add(&mut self, concept: Concept, origin: String) -> Result<ConceptId, MappingError> {
        if let Some(first) = self.origin.get(&concept.name) {
            return Err(MappingError::NameClash {
                name: concept.name,
                first: first.clone(),
                second: origin,
            });
        }
        self.origin.insert(concept.name.clone(), origin);
        Ok(self.out.add_concept(concept)?)
    }

    fn copy(&mut self, id: ConceptId) -> Result<(ConceptId, bool), MappingError> {
        if let Some(&copy) = self.copies.get(&id) {
            return Ok((copy, false));
        }
        let concept = self.source.concept(id).clone();
        let copy = self.add(concept, format!("source concept {}", self.source.name(id)))?;
        self.copies.insert(id, copy);
        Ok((copy, true))
    }

    /// Copies `root` and its descendants, skipping `skip` concepts together
    /// with everything only reachable through them.
    fn copy_subtree(&mut self, root: ConceptId, skip: &dyn Fn(ConceptId) -> bool) -> Result<ConceptId, MappingError> {
        let (root_copy, _) = self.copy(root)?;
        let mut visited = HashSet::from([root]);
        let mut stack = vec![root];
        while let Some(node) = stack.pop() {
            let parent_copy = self.copies[&node];
            for &(child, kind) in self.source.children(node) {
                if skip(child) {
                    continue;
                }
                let (child_copy, _) = self.copy(child)?;
                self.out.add_edge(child_copy, parent_copy, kind)?;
                if visited.insert(child) {
                    stack.push(child);
                }
            }
        }
        Ok(root_copy)
    }
}

/// Builds the cleaned taxonomy described by the mapping directives of
/// `annotations`. The source taxonomy is not modified.
pub fn apply_mapping(taxonomy: &Taxonomy, annotations: &AnnotationSet) -> Result<Mapping, MappingError> {
    let mut warnings = Vec::new();
    let rows = plan_rows(taxonomy, annotations, &mut warnings)?;

    // lemmas of covered concepts become aliases of their target node
    let mut aliases: HashMap<String, Vec<String>> = HashMap::new();
    for (target, plan) in &rows {
        let lemmas = aliases.entry(target.node_name().to_owned()).or_default();
        for &id in &plan.covered {
            for lemma in &taxonomy.concept(id).lemmas {
                if !lemmas.contains(lemma) {
                    lemmas.push(lemma.clone());
                }
            }
        }
    }
    let node_concept = |name: &str| {
        let mut lemmas = vec![node_lemma(name)];
        for alias in aliases.get(name).into_iter().flatten() {
            if !lemmas.contains(alias) {
                lemmas.push(alias.clone());
            }
        }
        Concept::new(name, lemmas)
    };

    let mut b = Builder {
        source: taxonomy,
        out: Taxonomy::new(),
        origin: HashMap::new(),
        copies: HashMap::new(),
    };
    let mut out_annotations = AnnotationSet::new();
    let mut nodes: HashMap<(CategoryKind, Vec<String>), ConceptId> = HashMap::new();
    for category in CategoryKind::ALL {
        let id = b.add(node_concept(category.concept_name()), describe(category, &[]))?;
        out_annotations
            .set_profile(category.concept_name(), category.profile().profile.clone())
            .expect("fresh annotation set");
        nodes.insert((category, Vec::new()), id);
    }
    for target in rows.keys() {
        for depth in 1..=target.path.len() {
            let key = (target.category, target.path[..depth].to_vec());
            if nodes.contains_key(&key) {
                continue;
            }
            let name = &target.path[depth - 1];
            let id = b.add(node_concept(name), describe(target.category, &key.1))?;
            let parent = nodes[&(target.category, target.path[..depth - 1].to_vec())];
            b.out.add_edge(id, parent, EdgeKind::IsA)?;
            out_annotations
                .set_profile(name.clone(), target.category.profile().profile.clone())
                .expect("synthetic nodes are never individuals");
            nodes.insert(key, id);
        }
    }

    let placed: HashSet<ConceptId> = rows
        .values()
        .flat_map(|p| p.covered.iter().chain(&p.imported))
        .copied()
        .collect();
    for (target, plan) in &rows {
        let node = nodes[&(target.category, target.path.clone())];
        let rejected: HashSet<ConceptId> = plan.rejected.iter().copied().collect();
        let skip = |id: ConceptId| rejected.contains(&id) || placed.contains(&id);
        for &covered in &plan.covered {
            for &(child, kind) in taxonomy.children(covered) {
                if skip(child) {
                    continue;
                }
                let copy = b.copy_subtree(child, &skip)?;
                b.out.add_edge(copy, node, kind)?;
            }
        }
        for &imported in &plan.imported {
            let copy = b.copy_subtree(imported, &skip)?;
            let kind = if taxonomy.is_individual(imported) {
                EdgeKind::InstanceOf
            } else {
                EdgeKind::IsA
            };
            b.out.add_edge(copy, node, kind)?;
        }
    }

    let mut copied: Vec<ConceptId> = b.copies.keys().copied().collect();
    copied.sort();
    for id in copied {
        let name = taxonomy.name(id);
        if let Some(profile) = annotations.profile(name) {
            out_annotations
                .set_profile(name, profile.clone())
                .expect("consistent in the source");
        }
        if annotations.is_individual(name) {
            out_annotations
                .declare_individual(name)
                .expect("consistent in the source");
        }
    }

    let report = build_report(taxonomy, annotations, &rows);
    Ok(Mapping {
        taxonomy: b.out,
        annotations: out_annotations,
        report,
        warnings,
    })
}

fn build_report(
    taxonomy: &Taxonomy,
    annotations: &AnnotationSet,
    rows: &BTreeMap<MappingTarget, RowPlan>,
) -> MappingReport {
    let any_rejected = rows.values().any(|p| !p.rejected.is_empty());
    let violations = if any_rejected {
        check_all(taxonomy, annotations).violations
    } else {
        Vec::new()
    };
    let reason = |id: ConceptId| -> String {
        let name = taxonomy.name(id);
        if let Some(v) = violations.iter().find(|v| v.subject == name) {
            return format!("{}: {}", v.kind.token(), v.explanation);
        }
        let profile = effective_profile(id, taxonomy, annotations).expect("valid id");
        let category = classify_meta_category(&profile);
        if category.is_role() {
            format!("{category} ({profile})")
        } else {
            "rejected by directive".to_owned()
        }
    };

    let mut report = MappingReport::default();
    for (target, plan) in rows {
        let names = |ids: &[ConceptId]| ids.iter().map(|&i| taxonomy.name(i).to_owned()).collect();
        let mut row = MappingRow {
            covered: names(&plan.covered),
            rejected: plan.rejected.iter().map(|&i| (taxonomy.name(i).to_owned(), reason(i))).collect(),
            imported: plan
                .imported
                .iter()
                .map(|&i| {
                    let parent = taxonomy.parents(i).first().map(|&(p, _)| taxonomy.name(p).to_owned());
                    (taxonomy.name(i).to_owned(), parent)
                })
                .collect(),
            untouched: names(&plan.untouched),
            incompatible: Vec::new(),
        };
        for &id in plan.covered.iter().chain(&plan.imported) {
            row.incompatible
                .extend(check_category_assignment(id, target.category, taxonomy, annotations).violations);
        }
        report.rows.insert(target.clone(), row);
    }
    report
}
