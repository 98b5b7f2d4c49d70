use std::collections::HashMap;

use crate::meta::annotations::AnnotationSet;
use crate::meta::effective_profiles;
use crate::meta::profile::Rigidity;
use crate::taxonomy::{ConceptId, Taxonomy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovedConcept {
    pub name: String,
    pub rigidity: Rigidity,
}

#[derive(Debug, Clone)]
pub struct Backbone {
    pub taxonomy: Taxonomy,
    /// Dropped concepts, sorted by name.
    pub removed: Vec<RemovedConcept>,
}

/// Keeps the rigid concepts (and, with `keep_unknown`, those whose rigidity
/// is not annotated). A dropped concept's children are linked to each of its
/// nearest kept ancestors with the kind of the edge they had to it, so
/// ancestry among kept concepts is unchanged.
pub fn extract_backbone(taxonomy: &Taxonomy, annotations: &AnnotationSet, keep_unknown: bool) -> Backbone {
    let profiles = effective_profiles(taxonomy, annotations);
    let kept: Vec<bool> = profiles
        .iter()
        .map(|p| match p.rigidity {
            Rigidity::Rigid => true,
            Rigidity::Unknown => keep_unknown,
            Rigidity::NonRigid | Rigidity::AntiRigid => false,
        })
        .collect();

    let mut out = Taxonomy::new();
    let mut new_id = HashMap::new();
    for id in taxonomy.ids().filter(|id| kept[id.index()]) {
        let copy = out
            .add_concept(taxonomy.concept(id).clone())
            .expect("names are unique in the source");
        new_id.insert(id, copy);
    }

    let mut nearest: HashMap<ConceptId, Vec<ConceptId>> = HashMap::new();
    for id in taxonomy.ids().filter(|id| kept[id.index()]) {
        for &(parent, kind) in taxonomy.parents(id) {
            let targets = if kept[parent.index()] {
                vec![parent]
            } else {
                nearest_kept(taxonomy, &kept, parent, &mut nearest).to_vec()
            };
            for target in targets {
                out.add_edge(new_id[&id], new_id[&target], kind)
                    .expect("edges follow the source ancestry");
            }
        }
    }

    let mut removed: Vec<RemovedConcept> = taxonomy
        .ids()
        .filter(|id| !kept[id.index()])
        .map(|id| RemovedConcept {
            name: taxonomy.name(id).to_owned(),
            rigidity: profiles[id.index()].rigidity,
        })
        .collect();
    removed.sort_by(|a, b| a.name.cmp(&b.name));
    Backbone {
        taxonomy: out,
        removed,
    }
}

/// Kept concepts reachable from the dropped concept `id` through dropped
/// concepts only.
fn nearest_kept<'a>(
    taxonomy: &Taxonomy,
    kept: &[bool],
    id: ConceptId,
    memo: &'a mut HashMap<ConceptId, Vec<ConceptId>>,
) -> &'a [ConceptId] {
    if !memo.contains_key(&id) {
        // iterative post-order over the dropped region above `id`
        let mut stack = vec![(id, false)];
        while let Some((node, expanded)) = stack.pop() {
            if memo.contains_key(&node) {
                continue;
            }
            let dropped_parents: Vec<ConceptId> = taxonomy
                .is_a_parents(node)
                .filter(|p| !kept[p.index()])
                .collect();
            if expanded {
                let mut found: Vec<ConceptId> =
                    taxonomy.is_a_parents(node).filter(|p| kept[p.index()]).collect();
                for p in dropped_parents {
                    found.extend_from_slice(&memo[&p]);
                }
                found.sort();
                found.dedup();
                memo.insert(node, found);
            } else {
                stack.push((node, true));
                stack.extend(
                    dropped_parents
                        .into_iter()
                        .filter(|p| !memo.contains_key(p))
                        .map(|p| (p, false)),
                );
            }
        }
    }
    &memo[&id]
}
