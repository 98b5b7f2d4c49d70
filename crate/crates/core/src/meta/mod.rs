//! Meta-property profiles, their derivation over a taxonomy, and the
//! top-level category catalog.

pub mod annotations;
pub mod catalog;
pub mod profile;

use std::fmt;

use serde::Serialize;

use crate::taxonomy::{ConceptId, Taxonomy, TaxonomyError};
use annotations::AnnotationSet;
use profile::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MetaCategory {
    Type,
    MaterialRole,
    FormalRole,
    Unclassified,
}

impl MetaCategory {
    pub fn is_role(self) -> bool {
        matches!(self, MetaCategory::MaterialRole | MetaCategory::FormalRole)
    }
}

impl fmt::Display for MetaCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetaCategory::Type => "type",
            MetaCategory::MaterialRole => "material role",
            MetaCategory::FormalRole => "formal role",
            MetaCategory::Unclassified => "unclassified",
        })
    }
}

/// Types are rigid, supply identity and are not notionally dependent. Roles
/// are anti-rigid and notionally dependent; material roles carry an inherited
/// identity criterion, formal roles carry none.
pub fn classify_meta_category(profile: &MetaProfile) -> MetaCategory {
    use NotionalDependence as Nd;
    match (profile.rigidity, profile.identity, profile.notional_dependence) {
        (Rigidity::Rigid, Identity::Supplies, Nd::Independent) => MetaCategory::Type,
        (Rigidity::AntiRigid, Identity::Carries, Nd::Dependent) => MetaCategory::MaterialRole,
        (Rigidity::AntiRigid, Identity::NoCriterion, Nd::Dependent) => MetaCategory::FormalRole,
        _ => MetaCategory::Unclassified,
    }
}

/// The slots [`classify_meta_category`] reads are all known.
pub fn classification_decidable(profile: &MetaProfile) -> bool {
    profile.rigidity.is_known()
        && profile.identity.is_known()
        && profile.notional_dependence.is_known()
}

fn own_profile(taxonomy: &Taxonomy, annotations: &AnnotationSet, id: ConceptId) -> MetaProfile {
    annotations
        .profile(taxonomy.name(id))
        .cloned()
        .unwrap_or_default()
}

fn supplies(taxonomy: &Taxonomy, annotations: &AnnotationSet, id: ConceptId) -> bool {
    annotations
        .profile(taxonomy.name(id))
        .is_some_and(|p| p.identity == Identity::Supplies)
}

/// A concept's own annotation, with identity upgraded to "carries" when some
/// IS_A ancestor supplies an identity criterion. Nothing else is inherited.
pub fn effective_profile(
    concept: ConceptId,
    taxonomy: &Taxonomy,
    annotations: &AnnotationSet,
) -> Result<MetaProfile, TaxonomyError> {
    let ancestors = taxonomy.ancestors(concept)?;
    let mut profile = own_profile(taxonomy, annotations, concept);
    let upgradable = matches!(profile.identity, Identity::NoCriterion | Identity::Unknown);
    if upgradable && ancestors.iter().any(|&a| supplies(taxonomy, annotations, a)) {
        profile.identity = Identity::Carries;
    }
    Ok(profile)
}

/// [`effective_profile`] for every concept at once, indexed by
/// [`ConceptId::index`].
pub fn effective_profiles(taxonomy: &Taxonomy, annotations: &AnnotationSet) -> Vec<MetaProfile> {
    // supplier_above[n]: some strict ancestor of n supplies an identity criterion
    let n = taxonomy.len();
    let mut supplier_above: Vec<Option<bool>> = vec![None; n];
    for start in taxonomy.ids() {
        let mut stack = vec![(start, false)];
        while let Some((node, expanded)) = stack.pop() {
            if supplier_above[node.index()].is_some() {
                continue;
            }
            if expanded {
                let found = taxonomy.is_a_parents(node).any(|p| {
                    supplies(taxonomy, annotations, p) || supplier_above[p.index()] == Some(true)
                });
                supplier_above[node.index()] = Some(found);
            } else {
                stack.push((node, true));
                stack.extend(
                    taxonomy
                        .is_a_parents(node)
                        .filter(|p| supplier_above[p.index()].is_none())
                        .map(|p| (p, false)),
                );
            }
        }
    }
    taxonomy
        .ids()
        .map(|id| {
            let mut profile = own_profile(taxonomy, annotations, id);
            let upgradable = matches!(profile.identity, Identity::NoCriterion | Identity::Unknown);
            if upgradable && supplier_above[id.index()] == Some(true) {
                profile.identity = Identity::Carries;
            }
            profile
        })
        .collect()
}

/// Meta-properties with a positive and an anti polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FormalProperty {
    Rigidity,
    Unity,
    Extensionality,
    Concreteness,
}

impl FormalProperty {
    pub const ALL: [FormalProperty; 4] = [
        FormalProperty::Rigidity,
        FormalProperty::Unity,
        FormalProperty::Extensionality,
        FormalProperty::Concreteness,
    ];

    fn letter(self) -> char {
        match self {
            FormalProperty::Rigidity => 'R',
            FormalProperty::Unity => 'U',
            FormalProperty::Extensionality => 'E',
            FormalProperty::Concreteness => 'C',
        }
    }

    /// Polarity of `profile` for this property, if it has one. `*U` counts as
    /// positive unity; `-R` has no polarity.
    pub fn polarity(self, profile: &MetaProfile) -> Option<Polarity> {
        match self {
            FormalProperty::Rigidity => match profile.rigidity {
                Rigidity::Rigid => Some(Polarity::Positive),
                Rigidity::AntiRigid => Some(Polarity::Anti),
                _ => None,
            },
            FormalProperty::Unity => match profile.unity {
                Unity::Unity | Unity::WholeNoCommonRelation => Some(Polarity::Positive),
                Unity::AntiUnity => Some(Polarity::Anti),
                Unity::Unknown => None,
            },
            FormalProperty::Extensionality => match profile.extensionality {
                Extensionality::Extensional => Some(Polarity::Positive),
                Extensionality::AntiExtensional => Some(Polarity::Anti),
                Extensionality::Unknown => None,
            },
            FormalProperty::Concreteness => match profile.concreteness {
                Concreteness::Concrete => Some(Polarity::Positive),
                Concreteness::NonConcrete => Some(Polarity::Anti),
                Concreteness::Unknown => None,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Polarity {
    Anti,
    Positive,
}

impl Polarity {
    pub fn opposite(self) -> Polarity {
        match self {
            Polarity::Anti => Polarity::Positive,
            Polarity::Positive => Polarity::Anti,
        }
    }
}

/// "This concept cannot be annotated `forbidden` for `property`", justified by
/// descendants with the opposite polarity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Suggestion {
    pub property: FormalProperty,
    pub forbidden: Polarity,
    pub witnesses: Vec<String>,
}

impl Suggestion {
    pub fn forbidden_glyph(&self) -> String {
        let sign = match self.forbidden {
            Polarity::Anti => '~',
            Polarity::Positive => '+',
        };
        format!("{sign}{}", self.property.letter())
    }
}

impl fmt::Display for Suggestion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = if self.witnesses.len() == 1 { "witness" } else { "witnesses" };
        write!(
            f,
            "cannot be {} ({label}: {})",
            self.forbidden_glyph(),
            self.witnesses.join(", ")
        )
    }
}

/// Looks at every IS_A descendant of `concept`: a `+F` descendant rules out
/// annotating the concept `~F`, and a `~F` descendant rules out `+F`.
pub fn suggest_from_children(
    concept: ConceptId,
    taxonomy: &Taxonomy,
    annotations: &AnnotationSet,
) -> Result<Vec<Suggestion>, TaxonomyError> {
    let descendants = taxonomy.descendants(concept)?;
    let profiles: Vec<(ConceptId, MetaProfile)> = descendants
        .into_iter()
        .map(|d| effective_profile(d, taxonomy, annotations).map(|p| (d, p)))
        .collect::<Result<_, _>>()?;

    let mut suggestions = Vec::new();
    for property in FormalProperty::ALL {
        for witness_polarity in [Polarity::Positive, Polarity::Anti] {
            let witnesses: Vec<String> = profiles
                .iter()
                .filter(|(_, p)| property.polarity(p) == Some(witness_polarity))
                .map(|(d, _)| taxonomy.name(*d).to_owned())
                .collect();
            if !witnesses.is_empty() {
                suggestions.push(Suggestion {
                    property,
                    forbidden: witness_polarity.opposite(),
                    witnesses,
                });
            }
        }
    }
    Ok(suggestions)
}
