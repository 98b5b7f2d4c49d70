use crate::meta::profile::*;
use crate::meta::{classification_decidable, classify_meta_category};

use super::ViolationKind;

/// Outcome of comparing a subsumed profile with a subsuming one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairCheck {
    pub violations: Vec<ViolationKind>,
    /// Rules not evaluated because one of their deciding slots is unknown.
    pub suppressed: Vec<ViolationKind>,
}

impl PairCheck {
    pub const RULES: usize = 5;

    pub fn all_suppressed(&self) -> bool {
        self.suppressed.len() == Self::RULES
    }
}

/// Applies the "anti-F cannot subsume F" rules for rigidity, unity,
/// extensionality and concreteness, plus the role-over-type rule.
pub fn check_pair(lower: &MetaProfile, upper: &MetaProfile) -> PairCheck {
    let mut out = PairCheck::default();
    let mut rule = |kind, decidable: bool, violated: bool| {
        if !decidable {
            out.suppressed.push(kind);
        } else if violated {
            out.violations.push(kind);
        }
    };

    rule(
        ViolationKind::Rigidity,
        lower.rigidity.is_known() && upper.rigidity.is_known(),
        upper.rigidity == Rigidity::AntiRigid && lower.rigidity == Rigidity::Rigid,
    );
    rule(
        ViolationKind::Unity,
        lower.unity.is_known() && upper.unity.is_known(),
        upper.unity == Unity::AntiUnity
            && matches!(lower.unity, Unity::Unity | Unity::WholeNoCommonRelation),
    );
    rule(
        ViolationKind::Extensionality,
        lower.extensionality.is_known() && upper.extensionality.is_known(),
        upper.extensionality == Extensionality::AntiExtensional
            && lower.extensionality == Extensionality::Extensional,
    );
    rule(
        ViolationKind::Concreteness,
        lower.concreteness.is_known() && upper.concreteness.is_known(),
        upper.concreteness == Concreteness::NonConcrete
            && lower.concreteness == Concreteness::Concrete,
    );
    rule(
        ViolationKind::RoleOverType,
        classification_decidable(lower) && classification_decidable(upper),
        classify_meta_category(upper).is_role()
            && classify_meta_category(lower) == crate::meta::MetaCategory::Type,
    );
    out
}
