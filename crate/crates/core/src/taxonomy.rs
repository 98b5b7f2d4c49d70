//! Directed acyclic taxonomy of named concepts joined by IS_A and INSTANCE_OF
//! edges.
//!
//! Adjacency lists are kept sorted by concept name, so every traversal and
//! every set-valued query comes out in canonical (lexicographic) order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Opaque handle of a concept inside one [`Taxonomy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConceptId(u32);

impl ConceptId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EdgeKind {
    IsA,
    InstanceOf,
}

impl EdgeKind {
    /// Tag used by the native tabular format.
    pub fn tag(self) -> &'static str {
        match self {
            EdgeKind::IsA => "ISA",
            EdgeKind::InstanceOf => "INST",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "ISA" => Some(EdgeKind::IsA),
            "INST" => Some(EdgeKind::InstanceOf),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    pub name: String,
    pub lemmas: Vec<String>,
    pub gloss: Option<String>,
    pub topic: Option<String>,
    pub external_id: Option<String>,
}

impl Concept {
    pub fn new(name: impl Into<String>, lemmas: Vec<String>) -> Self {
        Concept {
            name: name.into(),
            lemmas,
            gloss: None,
            topic: None,
            external_id: None,
        }
    }

    pub fn with_gloss(mut self, gloss: impl Into<String>) -> Self {
        self.gloss = Some(gloss.into());
        self
    }

    pub fn with_topic(mut self, topic: impl Into<String>) -> Self {
        self.topic = Some(topic.into());
        self
    }

    pub fn with_external_id(mut self, id: impl Into<String>) -> Self {
        self.external_id = Some(id.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub child: ConceptId,
    pub parent: ConceptId,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TaxonomyError {
    #[error("invalid concept name {0:?}: names must be non-empty and free of whitespace")]
    InvalidName(String),
    #[error("concept {0} has no lemmas")]
    NoLemmas(String),
    #[error("duplicate concept name {0}")]
    DuplicateName(String),
    #[error("unknown concept {0}")]
    UnknownConcept(String),
    #[error("edge from {0} to itself")]
    SelfLoop(String),
    #[error("IS_A edge {child} -> {parent} would create a cycle")]
    Cycle { child: String, parent: String },
    #[error("{individual} is an individual; edge {child} -> {parent} would treat it as a class")]
    InstanceAsClass {
        individual: String,
        child: String,
        parent: String,
    },
}

/// One adjacency entry: the neighbour and the kind of the edge to it.
type Link = (ConceptId, EdgeKind);

#[derive(Debug, Clone, Default)]
pub struct Taxonomy {
    concepts: Vec<Concept>,
    by_name: HashMap<String, ConceptId>,
    parents: Vec<Vec<Link>>,
    children: Vec<Vec<Link>>,
}

impl Taxonomy {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn add_concept(&mut self, concept: Concept) -> Result<ConceptId, TaxonomyError> {
        if concept.name.is_empty()
            || concept
                .name
                .chars()
                .any(|c| c.is_whitespace() || c.is_control())
        {
            return Err(TaxonomyError::InvalidName(concept.name));
        }
        if concept.lemmas.is_empty() {
            return Err(TaxonomyError::NoLemmas(concept.name));
        }
        if self.by_name.contains_key(&concept.name) {
            return Err(TaxonomyError::DuplicateName(concept.name));
        }
        let id = ConceptId(self.concepts.len() as u32);
        self.by_name.insert(concept.name.clone(), id);
        self.concepts.push(concept);
        self.parents.push(Vec::new());
        self.children.push(Vec::new());
        Ok(id)
    }

    pub fn add_edge(
        &mut self,
        child: ConceptId,
        parent: ConceptId,
        kind: EdgeKind,
    ) -> Result<(), TaxonomyError> {
        self.check_id(child)?;
        self.check_id(parent)?;
        if child == parent {
            return Err(TaxonomyError::SelfLoop(self.name(child).to_owned()));
        }
        if self.parents[child.index()].contains(&(parent, kind)) {
            return Ok(());
        }

        let instance_error = |individual: ConceptId| TaxonomyError::InstanceAsClass {
            individual: self.name(individual).to_owned(),
            child: self.name(child).to_owned(),
            parent: self.name(parent).to_owned(),
        };
        if self.is_individual(parent) {
            return Err(instance_error(parent));
        }
        match kind {
            EdgeKind::IsA => {
                if self.is_individual(child) {
                    return Err(instance_error(child));
                }
                if self.reaches_up(parent, child) {
                    return Err(TaxonomyError::Cycle {
                        child: self.name(child).to_owned(),
                        parent: self.name(parent).to_owned(),
                    });
                }
            }
            EdgeKind::InstanceOf => {
                let has_class_parent = self.parents[child.index()]
                    .iter()
                    .any(|&(_, k)| k == EdgeKind::IsA);
                if has_class_parent || !self.children[child.index()].is_empty() {
                    return Err(instance_error(child));
                }
            }
        }

        self.insert_link(child, parent, kind);
        Ok(())
    }

    fn insert_link(&mut self, child: ConceptId, parent: ConceptId, kind: EdgeKind) {
        let up = &self.parents[child.index()];
        let pos = up.partition_point(|&(p, k)| {
            (self.concepts[p.index()].name.as_str(), k) < (self.name(parent), kind)
        });
        self.parents[child.index()].insert(pos, (parent, kind));

        let down = &self.children[parent.index()];
        let pos = down.partition_point(|&(c, k)| {
            (self.concepts[c.index()].name.as_str(), k) < (self.name(child), kind)
        });
        self.children[parent.index()].insert(pos, (child, kind));
    }

    /// True when `target` is `from` or one of its IS_A ancestors.
    fn reaches_up(&self, from: ConceptId, target: ConceptId) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![from];
        while let Some(node) = stack.pop() {
            if node == target {
                return true;
            }
            if std::mem::replace(&mut seen[node.index()], true) {
                continue;
            }
            stack.extend(self.is_a_parents(node));
        }
        false
    }

    fn check_id(&self, id: ConceptId) -> Result<(), TaxonomyError> {
        if id.index() < self.concepts.len() {
            Ok(())
        } else {
            Err(TaxonomyError::UnknownConcept(id.to_string()))
        }
    }

    pub fn concept(&self, id: ConceptId) -> &Concept {
        &self.concepts[id.index()]
    }

    pub fn name(&self, id: ConceptId) -> &str {
        &self.concepts[id.index()].name
    }

    pub fn id_of(&self, name: &str) -> Option<ConceptId> {
        self.by_name.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<ConceptId, TaxonomyError> {
        self.id_of(name)
            .ok_or_else(|| TaxonomyError::UnknownConcept(name.to_owned()))
    }

    /// All concept ids in insertion order.
    pub fn ids(&self) -> impl ExactSizeIterator<Item = ConceptId> + '_ {
        (0..self.concepts.len() as u32).map(ConceptId)
    }

    /// All concept ids sorted by name.
    pub fn ids_by_name(&self) -> Vec<ConceptId> {
        let mut ids: Vec<_> = self.ids().collect();
        self.sort_by_name(&mut ids);
        ids
    }

    pub fn sort_by_name(&self, ids: &mut [ConceptId]) {
        ids.sort_by(|a, b| self.name(*a).cmp(self.name(*b)));
    }

    pub fn parents(&self, id: ConceptId) -> &[(ConceptId, EdgeKind)] {
        &self.parents[id.index()]
    }

    pub fn children(&self, id: ConceptId) -> &[(ConceptId, EdgeKind)] {
        &self.children[id.index()]
    }

    pub fn is_a_parents(&self, id: ConceptId) -> impl Iterator<Item = ConceptId> + '_ {
        self.parents[id.index()]
            .iter()
            .filter(|&&(_, k)| k == EdgeKind::IsA)
            .map(|&(p, _)| p)
    }

    pub fn is_a_children(&self, id: ConceptId) -> impl Iterator<Item = ConceptId> + '_ {
        self.children[id.index()]
            .iter()
            .filter(|&&(_, k)| k == EdgeKind::IsA)
            .map(|&(c, _)| c)
    }

    pub fn has_edge(&self, child: ConceptId, parent: ConceptId, kind: EdgeKind) -> bool {
        self.parents[child.index()].contains(&(parent, kind))
    }

    /// A concept attached to some parent through INSTANCE_OF.
    pub fn is_individual(&self, id: ConceptId) -> bool {
        self.parents[id.index()]
            .iter()
            .any(|&(_, k)| k == EdgeKind::InstanceOf)
    }

    /// Concepts with no parents of either kind, sorted by name.
    pub fn roots(&self) -> Vec<ConceptId> {
        let mut roots: Vec<_> = self
            .ids()
            .filter(|id| self.parents[id.index()].is_empty())
            .collect();
        self.sort_by_name(&mut roots);
        roots
    }

    /// Every edge, ordered by (child name, parent name, kind).
    pub fn edges(&self) -> Vec<Edge> {
        let mut edges = Vec::new();
        for child in self.ids_by_name() {
            for &(parent, kind) in &self.parents[child.index()] {
                edges.push(Edge {
                    child,
                    parent,
                    kind,
                });
            }
        }
        edges
    }

    pub fn edge_count(&self) -> usize {
        self.parents.iter().map(Vec::len).sum()
    }

    /// Concepts reachable through one or more IS_A edges, sorted by name.
    pub fn ancestors(&self, id: ConceptId) -> Result<Vec<ConceptId>, TaxonomyError> {
        self.check_id(id)?;
        let mut found = self.reach(id, |t, n| t.is_a_parents(n).collect());
        self.sort_by_name(&mut found);
        Ok(found)
    }

    /// Concepts from which `id` is reachable through IS_A edges, sorted by name.
    pub fn descendants(&self, id: ConceptId) -> Result<Vec<ConceptId>, TaxonomyError> {
        self.check_id(id)?;
        let mut found = self.reach(id, |t, n| t.is_a_children(n).collect());
        self.sort_by_name(&mut found);
        Ok(found)
    }

    fn reach<F>(&self, start: ConceptId, next: F) -> Vec<ConceptId>
    where
        F: Fn(&Self, ConceptId) -> Vec<ConceptId>,
    {
        let mut seen = HashSet::new();
        let mut stack = next(self, start);
        let mut found = Vec::new();
        while let Some(node) = stack.pop() {
            if seen.insert(node) {
                found.push(node);
                stack.extend(next(self, node));
            }
        }
        found
    }

    /// Breadth-first walk up the IS_A edges from `id`, recording for every
    /// ancestor the lexicographically smallest among its shortest paths.
    pub fn upward_walk(&self, id: ConceptId) -> Result<AncestorWalk, TaxonomyError> {
        self.check_id(id)?;
        let mut walk = AncestorWalk {
            source: id,
            order: Vec::new(),
            predecessor: HashMap::new(),
        };
        let mut queue = VecDeque::from([id]);
        while let Some(node) = queue.pop_front() {
            for parent in self.is_a_parents(node) {
                if parent != id && !walk.predecessor.contains_key(&parent) {
                    walk.predecessor.insert(parent, node);
                    walk.order.push(parent);
                    queue.push_back(parent);
                }
            }
        }
        Ok(walk)
    }
}

/// Result of [`Taxonomy::upward_walk`].
#[derive(Debug, Clone)]
pub struct AncestorWalk {
    source: ConceptId,
    order: Vec<ConceptId>,
    predecessor: HashMap<ConceptId, ConceptId>,
}

impl AncestorWalk {
    /// Ancestors in breadth-first discovery order.
    pub fn ancestors(&self) -> &[ConceptId] {
        &self.order
    }

    pub fn contains(&self, id: ConceptId) -> bool {
        self.predecessor.contains_key(&id)
    }

    /// Chain of concepts from the walk's source up to `ancestor`, both ends
    /// included. `None` if `ancestor` was not reached.
    pub fn path_to(&self, ancestor: ConceptId) -> Option<Vec<ConceptId>> {
        if !self.contains(ancestor) {
            return None;
        }
        let mut path = vec![ancestor];
        let mut cur = ancestor;
        while cur != self.source {
            cur = self.predecessor[&cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}
