//! One unique concept name per synset.
//!
//! Each lemma is capitalized word by word with spaces turned into
//! underscores. Synonymous lemmas are joined with `$`. A synset with a single
//! polysemous lemma gets `_N`, its 1-based position in source order among the
//! synsets containing that lemma; a single monosemous lemma is used bare.

use std::collections::{HashMap, HashSet};

use super::SynsetRecord;
use crate::Warning;

/// Case-folded key under which lemmas are compared for polysemy.
pub fn lemma_key(lemma: &str) -> String {
    lemma.trim().replace('_', " ").to_lowercase()
}

/// `"Equus caballus"` becomes `"Equus_Caballus"`; letters following a space,
/// underscore or hyphen are upper-cased, all others are kept.
pub fn normalize_lemma(lemma: &str) -> String {
    let mut out = String::with_capacity(lemma.len());
    let mut at_word_start = true;
    for c in lemma.trim().chars() {
        match c {
            ' ' | '_' => {
                out.push('_');
                at_word_start = true;
            }
            '-' => {
                out.push('-');
                at_word_start = true;
            }
            c if at_word_start => {
                out.extend(c.to_uppercase());
                at_word_start = false;
            }
            c => out.push(c),
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizedNames {
    /// `(synset id, name)` in record order.
    pub names: Vec<(u64, String)>,
    index: HashMap<u64, usize>,
    pub warnings: Vec<Warning>,
}

impl NormalizedNames {
    pub fn get(&self, synset_id: u64) -> Option<&str> {
        self.index
            .get(&synset_id)
            .map(|&i| self.names[i].1.as_str())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Assigns names to a complete corpus. Names that still collide after the
/// rules are disambiguated with a further `_k` suffix and reported.
pub fn normalize_names(records: &[SynsetRecord]) -> NormalizedNames {
    let mut synsets_of: HashMap<String, Vec<usize>> = HashMap::new();
    for (i, record) in records.iter().enumerate() {
        let mut keys: Vec<String> = record.lemmas.iter().map(|l| lemma_key(l)).collect();
        keys.sort();
        keys.dedup();
        for key in keys {
            synsets_of.entry(key).or_default().push(i);
        }
    }

    let mut out = NormalizedNames::default();
    let mut taken: HashSet<String> = HashSet::new();
    for (i, record) in records.iter().enumerate() {
        let base = match record.lemmas.as_slice() {
            [single] => {
                let holders = &synsets_of[&lemma_key(single)];
                let name = normalize_lemma(single);
                if holders.len() >= 2 {
                    let position = holders.iter().position(|&h| h == i).expect("indexed") + 1;
                    format!("{name}_{position}")
                } else {
                    name
                }
            }
            lemmas => lemmas
                .iter()
                .map(|l| normalize_lemma(l))
                .collect::<Vec<_>>()
                .join("$"),
        };
        let mut name = base.clone();
        let mut k = 2;
        while taken.contains(&name) {
            name = format!("{base}_{k}");
            k += 1;
        }
        if name != base {
            out.warnings.push(Warning::new(format!(
                "name {base} of synset {} already taken; using {name}",
                record.synset_id
            )));
        }
        taken.insert(name.clone());
        out.index.insert(record.synset_id, out.names.len());
        out.names.push((record.synset_id, name));
    }
    out
}
