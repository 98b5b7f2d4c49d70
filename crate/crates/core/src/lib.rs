//! Meta-property based validation of lexical noun taxonomies.
//!
//! The crate ingests WordNet-style noun hierarchies, attaches rigidity,
//! identity, dependence, unity, extensionality and concreteness annotations
//! to concepts, and reports taxonomic defects: anti-F properties subsuming
//! F properties, roles subsuming types, individuals placed as classes and
//! meta-level concepts mixed with object-level ones. It can also extract the
//! rigid backbone of a taxonomy and re-map it under a fixed catalog of
//! top-level categories.
//!
//! ```
//! use ontoclean::{AnnotationSet, Concept, EdgeKind, Taxonomy};
//!
//! let mut taxonomy = Taxonomy::new();
//! let person = taxonomy.add_concept(Concept::new("Person", vec!["person".into()])).unwrap();
//! let agent = taxonomy.add_concept(Concept::new("Causal_Agent", vec!["causal agent".into()])).unwrap();
//! taxonomy.add_edge(person, agent, EdgeKind::IsA).unwrap();
//!
//! let (annotations, _) = AnnotationSet::parse(
//!     "P Person +R +I:supplies -ND\nP Causal_Agent ~R -I +ND\n".as_bytes(),
//! )
//! .unwrap();
//! let report = ontoclean::check::check_taxonomy(&taxonomy, &annotations);
//! assert_eq!(report.violations.len(), 2);
//! ```

pub mod check;
pub mod meta;
pub mod native;
pub mod report;
pub mod restructure;
pub mod taxonomy;
pub mod wordnet;

use std::fmt;

pub use check::{CheckReport, Repair, Violation, ViolationKind};
pub use meta::annotations::{AnnotationError, AnnotationSet, Directive, MappingDirective, MappingTarget};
pub use meta::catalog::{catalog, CategoryKind, CategoryProfile};
pub use meta::profile::{
    Concreteness, Dependence, Extensionality, Identity, MetaProfile, NotionalDependence, Rigidity,
    Unity,
};
pub use meta::{classify_meta_category, effective_profile, MetaCategory};
pub use taxonomy::{Concept, ConceptId, Edge, EdgeKind, Taxonomy, TaxonomyError};
pub use wordnet::CorpusStats;

/// Non-fatal diagnostic collected while reading or transforming inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub line: Option<usize>,
    pub message: String,
}

impl Warning {
    pub fn new(message: impl Into<String>) -> Self {
        Warning {
            line: None,
            message: message.into(),
        }
    }

    pub fn at(line: usize, message: impl Into<String>) -> Self {
        Warning {
            line: Some(line),
            message: message.into(),
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}
