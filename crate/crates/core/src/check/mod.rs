//! Detection of taxonomic defects over an annotated taxonomy.

mod category;
mod pair;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::meta::annotations::AnnotationSet;
use crate::meta::profile::MetaProfile;
use crate::meta::{classify_meta_category, effective_profiles};
use crate::taxonomy::{ConceptId, Taxonomy};

pub use category::{check_category_assignment, CategoryCheck};
pub use pair::{check_pair, PairCheck};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    Rigidity,
    Unity,
    Extensionality,
    Concreteness,
    RoleOverType,
    InstanceMixing,
    MetaLevelMixing,
    CategoryIncompatible,
}

impl ViolationKind {
    pub const ALL: [ViolationKind; 8] = [
        ViolationKind::Rigidity,
        ViolationKind::Unity,
        ViolationKind::Extensionality,
        ViolationKind::Concreteness,
        ViolationKind::RoleOverType,
        ViolationKind::InstanceMixing,
        ViolationKind::MetaLevelMixing,
        ViolationKind::CategoryIncompatible,
    ];

    pub fn token(self) -> &'static str {
        match self {
            ViolationKind::Rigidity => "RIGIDITY",
            ViolationKind::Unity => "UNITY",
            ViolationKind::Extensionality => "EXTENSIONALITY",
            ViolationKind::Concreteness => "CONCRETENESS",
            ViolationKind::RoleOverType => "ROLE_OVER_TYPE",
            ViolationKind::InstanceMixing => "INSTANCE_MIXING",
            ViolationKind::MetaLevelMixing => "META_LEVEL_MIXING",
            ViolationKind::CategoryIncompatible => "CATEGORY_INCOMPATIBLE",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Repair {
    DropEdge,
    Reannotate,
    ConvertToInstanceOf,
    MoveConcept,
}

impl Repair {
    pub fn token(self) -> &'static str {
        match self {
            Repair::DropEdge => "DROP_EDGE",
            Repair::Reannotate => "REANNOTATE",
            Repair::ConvertToInstanceOf => "CONVERT_TO_INSTANCE_OF",
            Repair::MoveConcept => "MOVE_CONCEPT",
        }
    }
}

impl fmt::Display for Repair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// One detected defect. The derived ordering is the canonical report order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub subject: String,
    pub object: Option<String>,
    /// IS_A chain from `subject` up to `object`, both included.
    pub path: Vec<String>,
    pub suggested_repair: Repair,
    pub explanation: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
    /// Ancestor pairs where no subsumption rule could be decided.
    pub skipped: usize,
    /// Individual rule evaluations suppressed by unknown slots.
    pub suppressed_rules: usize,
    /// Ancestor pairs examined.
    pub pairs_checked: usize,
    pub stats: BTreeMap<ViolationKind, usize>,
}

impl CheckReport {
    /// Adds violations and restores canonical order and per-kind counts.
    pub fn extend(&mut self, violations: impl IntoIterator<Item = Violation>) {
        self.violations.extend(violations);
        self.violations.sort();
        self.stats.clear();
        for v in &self.violations {
            *self.stats.entry(v.kind).or_default() += 1;
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.stats.get(&kind).copied().unwrap_or(0)
    }
}

fn names(taxonomy: &Taxonomy, ids: &[ConceptId]) -> Vec<String> {
    ids.iter().map(|&id| taxonomy.name(id).to_owned()).collect()
}

fn pair_violation(
    kind: ViolationKind,
    lower: &MetaProfile,
    upper: &MetaProfile,
    path: Vec<String>,
) -> Violation {
    let subject = path.first().cloned().unwrap_or_default();
    let object = path.last().cloned().unwrap_or_default();
    let (explanation, repair) = match kind {
        ViolationKind::Rigidity => (
            format!("anti-rigid {object} (~R) subsumes rigid {subject} (+R)"),
            Repair::DropEdge,
        ),
        ViolationKind::Unity => (
            format!("anti-unity {object} (~U) subsumes {subject} carrying unity ({})", lower.unity),
            Repair::Reannotate,
        ),
        ViolationKind::Extensionality => (
            format!("anti-extensional {object} (~E) subsumes extensional {subject} (+E)"),
            Repair::Reannotate,
        ),
        ViolationKind::Concreteness => (
            format!(
                "non-concrete {object} (~C) subsumes concrete {subject} (+C) [extension: concreteness rule]"
            ),
            Repair::Reannotate,
        ),
        ViolationKind::RoleOverType => (
            format!(
                "{object} is a {} and cannot subsume the type {subject}",
                classify_meta_category(upper)
            ),
            Repair::DropEdge,
        ),
        other => unreachable!("{other} is not a subsumption rule"),
    };
    Violation {
        kind,
        object: Some(object),
        subject,
        path,
        suggested_repair: repair,
        explanation,
    }
}

/// Checks every (descendant, ancestor) pair of the IS_A closure with
/// [`check_pair`] on effective profiles. Each violation carries the shortest
/// witnessing path, ties broken by name.
pub fn check_taxonomy(taxonomy: &Taxonomy, annotations: &AnnotationSet) -> CheckReport {
    let profiles = effective_profiles(taxonomy, annotations);

    struct Partial {
        violations: Vec<Violation>,
        skipped: usize,
        suppressed: usize,
        pairs: usize,
    }

    let partials: Vec<Partial> = taxonomy
        .ids()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|concept| {
            let walk = taxonomy
                .upward_walk(concept)
                .expect("ids come from the taxonomy");
            let lower = &profiles[concept.index()];
            let mut part = Partial {
                violations: Vec::new(),
                skipped: 0,
                suppressed: 0,
                pairs: walk.ancestors().len(),
            };
            for &ancestor in walk.ancestors() {
                let upper = &profiles[ancestor.index()];
                let outcome = check_pair(lower, upper);
                part.suppressed += outcome.suppressed.len();
                if outcome.all_suppressed() {
                    part.skipped += 1;
                }
                if outcome.violations.is_empty() {
                    continue;
                }
                let path = names(taxonomy, &walk.path_to(ancestor).expect("walked"));
                for kind in outcome.violations {
                    part.violations
                        .push(pair_violation(kind, lower, upper, path.clone()));
                }
            }
            part
        })
        .collect();

    let mut report = CheckReport::default();
    let mut violations = Vec::new();
    for part in partials {
        report.skipped += part.skipped;
        report.suppressed_rules += part.suppressed;
        report.pairs_checked += part.pairs;
        violations.extend(part.violations);
    }
    report.extend(violations);
    report
}

/// Declared individuals placed through IS_A, or subsuming classes.
pub fn check_instances(taxonomy: &Taxonomy, annotations: &AnnotationSet) -> Vec<Violation> {
    let mut out = Vec::new();
    for name in annotations.individuals() {
        let Some(id) = taxonomy.id_of(name) else {
            continue;
        };
        for parent in taxonomy.is_a_parents(id) {
            let parent = taxonomy.name(parent);
            out.push(Violation {
                kind: ViolationKind::InstanceMixing,
                subject: name.clone(),
                object: Some(parent.to_owned()),
                path: vec![name.clone(), parent.to_owned()],
                suggested_repair: Repair::ConvertToInstanceOf,
                explanation: format!(
                    "individual {name} is subsumed by {parent}; it should be an instance of it"
                ),
            });
        }
        let children: Vec<&str> = taxonomy.is_a_children(id).map(|c| taxonomy.name(c)).collect();
        if !children.is_empty() {
            out.push(Violation {
                kind: ViolationKind::InstanceMixing,
                subject: name.clone(),
                object: None,
                path: vec![name.clone()],
                suggested_repair: Repair::Reannotate,
                explanation: format!(
                    "individual {name} subsumes {}; an individual cannot subsume",
                    children.join(", ")
                ),
            });
        }
    }
    out.sort();
    out
}

/// IS_A closure pairs where exactly one side is flagged meta-level.
pub fn check_meta_levels(taxonomy: &Taxonomy, annotations: &AnnotationSet) -> Vec<Violation> {
    let meta: Vec<bool> = taxonomy
        .ids()
        .map(|id| {
            annotations
                .profile(taxonomy.name(id))
                .is_some_and(|p| p.meta_level)
        })
        .collect();
    if !meta.iter().any(|&m| m) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for concept in taxonomy.ids() {
        let walk = taxonomy.upward_walk(concept).expect("ids come from the taxonomy");
        for &ancestor in walk.ancestors() {
            if meta[concept.index()] == meta[ancestor.index()] {
                continue;
            }
            let path = names(taxonomy, &walk.path_to(ancestor).expect("walked"));
            let (subject, object) = (taxonomy.name(concept), taxonomy.name(ancestor));
            let explanation = if meta[concept.index()] {
                format!("meta-level concept {subject} is subsumed by object-level {object}")
            } else {
                format!("object-level concept {subject} is subsumed by meta-level {object}")
            };
            out.push(Violation {
                kind: ViolationKind::MetaLevelMixing,
                subject: subject.to_owned(),
                object: Some(object.to_owned()),
                path,
                suggested_repair: Repair::MoveConcept,
                explanation,
            });
        }
    }
    out.sort();
    out
}

/// Everything the `check` command reports: subsumption rules over the
/// closure, instance mixing, level mixing and category assignments.
pub fn check_all(taxonomy: &Taxonomy, annotations: &AnnotationSet) -> CheckReport {
    let mut report = check_taxonomy(taxonomy, annotations);
    let mut extra = check_instances(taxonomy, annotations);
    extra.extend(check_meta_levels(taxonomy, annotations));
    for (name, &category) in annotations.category_assignments() {
        if let Some(id) = taxonomy.id_of(name) {
            extra.extend(check_category_assignment(id, category, taxonomy, annotations).violations);
        }
    }
    report.extend(extra);
    report
}
