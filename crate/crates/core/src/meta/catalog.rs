//! The fixed catalog of top-level categories and their meta-property
//! signatures. Every category is rigid.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use super::profile::{Concreteness, Dependence, Extensionality, MetaProfile, Rigidity, Unity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CategoryKind {
    Aggregate,
    AmountOfMatter,
    Plurality,
    Object,
    PhysicalBody,
    OrdinaryObject,
    Event,
    Feature,
    Quality,
    Abstraction,
}

impl CategoryKind {
    pub const ALL: [CategoryKind; 10] = [
        CategoryKind::Aggregate,
        CategoryKind::AmountOfMatter,
        CategoryKind::Plurality,
        CategoryKind::Object,
        CategoryKind::PhysicalBody,
        CategoryKind::OrdinaryObject,
        CategoryKind::Event,
        CategoryKind::Feature,
        CategoryKind::Quality,
        CategoryKind::Abstraction,
    ];

    /// Concept name used for the category's root in a cleaned taxonomy.
    pub fn concept_name(self) -> &'static str {
        match self {
            CategoryKind::Aggregate => "Aggregate",
            CategoryKind::AmountOfMatter => "Amount_of_Matter",
            CategoryKind::Plurality => "Plurality",
            CategoryKind::Object => "Object",
            CategoryKind::PhysicalBody => "Physical_Body",
            CategoryKind::OrdinaryObject => "Ordinary_Object",
            CategoryKind::Event => "Event",
            CategoryKind::Feature => "Feature",
            CategoryKind::Quality => "Quality",
            CategoryKind::Abstraction => "Abstraction",
        }
    }

    /// Token used in annotation files.
    pub fn token(self) -> &'static str {
        match self {
            CategoryKind::Aggregate => "AGGREGATE",
            CategoryKind::AmountOfMatter => "AMOUNT_OF_MATTER",
            CategoryKind::Plurality => "PLURALITY",
            CategoryKind::Object => "OBJECT",
            CategoryKind::PhysicalBody => "PHYSICAL_BODY",
            CategoryKind::OrdinaryObject => "ORDINARY_OBJECT",
            CategoryKind::Event => "EVENT",
            CategoryKind::Feature => "FEATURE",
            CategoryKind::Quality => "QUALITY",
            CategoryKind::Abstraction => "ABSTRACTION",
        }
    }

    pub fn profile(self) -> &'static CategoryProfile {
        &catalog()[self as usize]
    }
}

impl fmt::Display for CategoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("unknown category {0:?}")]
pub struct UnknownCategory(pub String);

impl FromStr for CategoryKind {
    type Err = UnknownCategory;

    /// Accepts the upper-case token or the concept name, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CategoryKind::ALL
            .into_iter()
            .find(|c| c.token().eq_ignore_ascii_case(s) || c.concept_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownCategory(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CategoryProfile {
    pub category: CategoryKind,
    pub profile: MetaProfile,
    /// Qualities have no proper parts. Recorded, never checked.
    pub no_proper_parts: bool,
    pub description: &'static str,
}

/// The ten catalog categories, in [`CategoryKind::ALL`] order.
pub fn catalog() -> &'static [CategoryProfile] {
    static CATALOG: OnceLock<Vec<CategoryProfile>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        use Concreteness::*;
        use Dependence::*;
        use Extensionality::*;
        use Unity::{AntiUnity, WholeNoCommonRelation};

        let rigid = || MetaProfile::new().rigidity(Rigidity::Rigid);
        let entry = |category, profile, description| CategoryProfile {
            category,
            profile,
            no_proper_parts: false,
            description,
        };
        vec![
            entry(
                CategoryKind::Aggregate,
                rigid().dependence(Independent).unity(AntiUnity),
                "independent entities none of which is an essential whole",
            ),
            entry(
                CategoryKind::AmountOfMatter,
                rigid()
                    .dependence(Independent)
                    .unity(AntiUnity)
                    .extensionality(Extensional),
                "aggregates that change identity when they change parts",
            ),
            entry(
                CategoryKind::Plurality,
                rigid().dependence(Independent).unity(AntiUnity),
                "mere sums of wholes that are not themselves essential wholes",
            ),
            entry(
                CategoryKind::Object,
                rigid().dependence(Independent).unity(WholeNoCommonRelation),
                "independent essential wholes without a common unity criterion",
            ),
            entry(
                CategoryKind::PhysicalBody,
                rigid()
                    .dependence(Independent)
                    .unity(WholeNoCommonRelation)
                    .extensionality(Extensional),
                "extensional objects",
            ),
            entry(
                CategoryKind::OrdinaryObject,
                rigid()
                    .dependence(Independent)
                    .unity(WholeNoCommonRelation)
                    .extensionality(AntiExtensional),
                "objects that may change parts while keeping their identity",
            ),
            entry(
                CategoryKind::Event,
                rigid().dependence(Dependent).extensionality(Extensional),
                "temporal occurrences dependent on their participants",
            ),
            entry(
                CategoryKind::Feature,
                rigid()
                    .dependence(Dependent)
                    .extensionality(AntiExtensional)
                    .unity(WholeNoCommonRelation),
                "parasitic entities that exist insofar as their host exists",
            ),
            CategoryProfile {
                no_proper_parts: true,
                ..entry(
                    CategoryKind::Quality,
                    rigid().dependence(Dependent).extensionality(Extensional).unity(Unity::Unity),
                    "dependent entities located in conceptual spaces",
                )
            },
            entry(
                CategoryKind::Abstraction,
                rigid().concreteness(NonConcrete),
                "entities without a physical location",
            ),
        ]
    })
}
