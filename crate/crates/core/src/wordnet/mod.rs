//! WordNet noun ingestion: Prolog database reader, synset naming and corpus
//! statistics.

pub mod names;
pub mod prolog;

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::taxonomy::{Concept, EdgeKind, Taxonomy, TaxonomyError};
use crate::Warning;

pub use names::{normalize_names, NormalizedNames};
pub use prolog::{parse_prolog_db, PrologDb, PrologError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynsetRecord {
    pub synset_id: u64,
    pub lemmas: Vec<String>,
    pub gloss: Option<String>,
    pub topic: Option<String>,
}

/// Counts over a noun corpus. Lemmas are compared case-insensitively.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    /// (lemma, synset) sense pairs.
    pub noun_entries: usize,
    /// Only available with a quasi-synonym source; never computed here.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence_classes: Option<usize>,
    pub noun_synsets: usize,
    pub nouns: usize,
    pub monosemous_nouns: usize,
    pub polysemous_nouns: usize,
    pub one_word_nouns: usize,
    pub noun_phrases: usize,
}

impl CorpusStats {
    /// Statistics of a corpus given as the lemma list of each synset.
    pub fn from_synsets<'a, I, L>(synsets: I) -> Self
    where
        I: IntoIterator<Item = L>,
        L: IntoIterator<Item = &'a String>,
    {
        let mut stats = CorpusStats::default();
        let mut senses: HashMap<String, usize> = HashMap::new();
        for lemmas in synsets {
            stats.noun_synsets += 1;
            let mut keys: Vec<String> = lemmas.into_iter().map(|l| names::lemma_key(l)).collect();
            stats.noun_entries += keys.len();
            keys.sort();
            keys.dedup();
            for key in keys {
                *senses.entry(key).or_default() += 1;
            }
        }
        stats.nouns = senses.len();
        for (lemma, count) in &senses {
            if *count == 1 {
                stats.monosemous_nouns += 1;
            } else {
                stats.polysemous_nouns += 1;
            }
            if lemma.contains(char::is_whitespace) {
                stats.noun_phrases += 1;
            } else {
                stats.one_word_nouns += 1;
            }
        }
        stats
    }

    pub fn from_taxonomy(taxonomy: &Taxonomy) -> Self {
        Self::from_synsets(taxonomy.ids().map(|id| &taxonomy.concept(id).lemmas))
    }
}

#[derive(Debug, Clone)]
pub struct BuiltTaxonomy {
    pub taxonomy: Taxonomy,
    pub stats: CorpusStats,
    pub warnings: Vec<Warning>,
}

/// One concept per record (in record order) and one IS_A edge per hypernym
/// pair. Pairs that would close a cycle are dropped with a warning.
pub fn build_taxonomy(
    records: &[SynsetRecord],
    hypernyms: &[(u64, u64)],
    names: &NormalizedNames,
) -> Result<BuiltTaxonomy, TaxonomyError> {
    let mut taxonomy = Taxonomy::new();
    let mut ids = HashMap::new();
    for record in records {
        let name = names
            .get(record.synset_id)
            .ok_or_else(|| TaxonomyError::UnknownConcept(record.synset_id.to_string()))?;
        let mut concept = Concept::new(name, record.lemmas.clone())
            .with_external_id(record.synset_id.to_string());
        concept.gloss = record.gloss.clone();
        concept.topic = record.topic.clone();
        ids.insert(record.synset_id, taxonomy.add_concept(concept)?);
    }

    let mut warnings = Vec::new();
    let mut seen = HashSet::new();
    for &(child, parent) in hypernyms {
        if !seen.insert((child, parent)) {
            continue;
        }
        let (Some(&c), Some(&p)) = (ids.get(&child), ids.get(&parent)) else {
            warnings.push(Warning::new(format!(
                "hypernym pair ({child}, {parent}) references an unknown synset"
            )));
            continue;
        };
        match taxonomy.add_edge(c, p, EdgeKind::IsA) {
            Ok(()) => {}
            Err(e @ (TaxonomyError::Cycle { .. } | TaxonomyError::SelfLoop(_))) => {
                warnings.push(Warning::new(format!("dropped hypernym pair: {e}")));
            }
            Err(e) => return Err(e),
        }
    }

    let stats = CorpusStats::from_synsets(records.iter().map(|r| &r.lemmas));
    Ok(BuiltTaxonomy {
        taxonomy,
        stats,
        warnings,
    })
}
