use crate::meta::annotations::AnnotationSet;
use crate::meta::catalog::CategoryKind;
use crate::meta::effective_profile;
use crate::meta::profile::*;
use crate::taxonomy::{ConceptId, Taxonomy};

use super::{Repair, Violation, ViolationKind};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryCheck {
    pub violations: Vec<Violation>,
    /// Slots known on both sides.
    pub compared_slots: usize,
    /// Slots the category fixes but the concept leaves unknown.
    pub skipped_slots: usize,
}

impl CategoryCheck {
    pub fn is_compatible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Result of comparing one slot: `None` when either side is unknown.
fn slot<T: PartialEq + Copy>(
    concept: T,
    category: T,
    known: fn(T) -> bool,
    conflict: impl Fn(T, T) -> bool,
) -> Option<bool> {
    (known(concept) && known(category)).then(|| conflict(concept, category))
}

/// Compares a concept's effective profile slot by slot with a catalog
/// category's signature. Unknown slots never conflict.
pub fn check_category_assignment(
    concept: ConceptId,
    category: CategoryKind,
    taxonomy: &Taxonomy,
    annotations: &AnnotationSet,
) -> CategoryCheck {
    let profile = effective_profile(concept, taxonomy, annotations)
        .expect("concept id comes from the taxonomy");
    compare_with_category(taxonomy.name(concept), &profile, category)
}

pub(crate) fn compare_with_category(
    name: &str,
    profile: &MetaProfile,
    category: CategoryKind,
) -> CategoryCheck {
    let signature = &category.profile().profile;
    let slots: [(&str, Option<bool>, bool); 5] = [
        (
            "rigidity",
            slot(profile.rigidity, signature.rigidity, Rigidity::is_known, |c, k| {
                k == Rigidity::AntiRigid && c == Rigidity::Rigid
            }),
            signature.rigidity.is_known(),
        ),
        (
            "dependence",
            slot(profile.dependence, signature.dependence, Dependence::is_known, |c, k| c != k),
            signature.dependence.is_known(),
        ),
        (
            "unity",
            slot(profile.unity, signature.unity, Unity::is_known, unity_conflict),
            signature.unity.is_known(),
        ),
        (
            "extensionality",
            slot(
                profile.extensionality,
                signature.extensionality,
                Extensionality::is_known,
                |c, k| c != k,
            ),
            signature.extensionality.is_known(),
        ),
        (
            "concreteness",
            slot(profile.concreteness, signature.concreteness, Concreteness::is_known, |c, k| c != k),
            signature.concreteness.is_known(),
        ),
    ];

    let mut out = CategoryCheck::default();
    for (slot_name, outcome, category_fixes) in slots {
        match outcome {
            Some(conflict) => {
                out.compared_slots += 1;
                if conflict {
                    out.violations.push(Violation {
                        kind: ViolationKind::CategoryIncompatible,
                        subject: name.to_owned(),
                        object: Some(category.concept_name().to_owned()),
                        path: vec![name.to_owned(), category.concept_name().to_owned()],
                        suggested_repair: Repair::MoveConcept,
                        explanation: format!(
                            "{name} ({}) conflicts with category {} ({}) on {slot_name}",
                            profile_slot(profile, slot_name),
                            category.concept_name(),
                            profile_slot(signature, slot_name),
                        ),
                    });
                }
            }
            None if category_fixes => out.skipped_slots += 1,
            None => {}
        }
    }
    out
}

/// Anti-unity is incompatible with any kind of essential wholeness, and a
/// common unifying relation on the category rules out `*U` below it.
fn unity_conflict(concept: Unity, category: Unity) -> bool {
    use Unity as U;
    matches!(
        (concept, category),
        (U::AntiUnity, U::Unity | U::WholeNoCommonRelation)
            | (U::Unity | U::WholeNoCommonRelation, U::AntiUnity)
            | (U::WholeNoCommonRelation, U::Unity)
    )
}

fn profile_slot(profile: &MetaProfile, slot: &str) -> String {
    match slot {
        "rigidity" => profile.rigidity.to_string(),
        "dependence" => profile.dependence.to_string(),
        "unity" => profile.unity.to_string(),
        "extensionality" => profile.extensionality.to_string(),
        _ => profile.concreteness.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cognition_fits_abstraction() {
        let p = MetaProfile::new().concreteness(Concreteness::NonConcrete);
        let got = compare_with_category("Cognition", &p, CategoryKind::Abstraction);
        assert!(got.is_compatible());
        assert_eq!(got.compared_slots, 1);
        // rigidity is fixed by the category but not annotated
        assert_eq!(got.skipped_slots, 1);
    }

    #[test]
    fn independent_concept_under_event() {
        let p = MetaProfile::new().dependence(Dependence::Independent);
        let got = compare_with_category("X", &p, CategoryKind::Event);
        assert_eq!(got.violations.len(), 1);
        assert!(got.violations[0].explanation.contains("dependence"));
        assert_eq!(got.violations[0].suggested_repair, Repair::MoveConcept);
    }

    #[test]
    fn anti_unity_under_quality() {
        let p = MetaProfile::new().unity(Unity::AntiUnity);
        assert!(!compare_with_category("X", &p, CategoryKind::Quality).is_compatible());
    }

    #[test]
    fn blank_profile_is_compatible_everywhere_with_zero_confidence() {
        for category in CategoryKind::ALL {
            let got = compare_with_category("X", &MetaProfile::default(), category);
            assert!(got.is_compatible());
            assert_eq!(got.compared_slots, 0);
            let fixed = category.profile().profile.to_string().split(' ').count();
            // identity and notional dependence are never part of a signature
            assert_eq!(got.skipped_slots, fixed);
        }
    }

    #[test]
    fn anti_rigid_concept_may_sit_under_rigid_category() {
        let p = MetaProfile::new().rigidity(Rigidity::AntiRigid);
        assert!(compare_with_category("Student", &p, CategoryKind::Object).is_compatible());
    }

    #[test]
    fn unity_conflict_table() {
        use Unity::{AntiUnity as A, Unity as P, WholeNoCommonRelation as W};
        let expected = [
            (P, P, false),
            (P, A, true),
            (P, W, false),
            (A, P, true),
            (A, A, false),
            (A, W, true),
            (W, P, true),
            (W, A, true),
            (W, W, false),
        ];
        for (concept, category, conflict) in expected {
            assert_eq!(unity_conflict(concept, category), conflict, "{concept:?} {category:?}");
        }
    }
}
