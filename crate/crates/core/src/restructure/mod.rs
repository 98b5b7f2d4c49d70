//! Rigid backbone extraction and mapping onto the top-level catalog.

pub mod backbone;
pub mod mapping;

pub use backbone::{extract_backbone, Backbone, RemovedConcept};
pub use mapping::{apply_mapping, Mapping, MappingError, MappingReport, MappingRow};
