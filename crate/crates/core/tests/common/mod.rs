//! Random annotated DAGs and brute-force reference implementations.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use ontoclean::{AnnotationSet, Concept, EdgeKind, Taxonomy};
use rand::seq::SliceRandom;
use rand::Rng;

pub const RIGIDITY: [Option<&str>; 4] = [Some("+R"), Some("-R"), Some("~R"), None];
pub const IDENTITY: [Option<&str>; 4] = [Some("+I:supplies"), Some("+I:carries"), Some("-I"), None];
pub const DEPENDENCE: [Option<&str>; 3] = [Some("+D"), Some("-D"), None];
pub const NOTIONAL: [Option<&str>; 3] = [Some("+ND"), Some("-ND"), None];
pub const UNITY: [Option<&str>; 4] = [Some("+U"), Some("~U"), Some("*U"), None];
pub const EXTENSIONALITY: [Option<&str>; 3] = [Some("+E"), Some("~E"), None];
pub const CONCRETENESS: [Option<&str>; 3] = [Some("+C"), Some("~C"), None];

/// Annotation tokens of one concept; `None` is an unannotated slot.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Slots {
    pub r: Option<&'static str>,
    pub i: Option<&'static str>,
    pub d: Option<&'static str>,
    pub nd: Option<&'static str>,
    pub u: Option<&'static str>,
    pub e: Option<&'static str>,
    pub c: Option<&'static str>,
    pub meta: bool,
}

impl Slots {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        Slots {
            r: *RIGIDITY.choose(rng).unwrap(),
            i: *IDENTITY.choose(rng).unwrap(),
            d: *DEPENDENCE.choose(rng).unwrap(),
            nd: *NOTIONAL.choose(rng).unwrap(),
            u: *UNITY.choose(rng).unwrap(),
            e: *EXTENSIONALITY.choose(rng).unwrap(),
            c: *CONCRETENESS.choose(rng).unwrap(),
            meta: rng.gen_bool(0.1),
        }
    }

    pub fn line(&self, name: &str) -> Option<String> {
        let mut tokens: Vec<&str> = [self.r, self.i, self.d, self.nd, self.u, self.e, self.c]
            .into_iter()
            .flatten()
            .collect();
        if self.meta {
            tokens.push("META");
        }
        (!tokens.is_empty()).then(|| format!("P {name} {}\n", tokens.join(" ")))
    }
}

pub struct Case {
    pub names: Vec<String>,
    /// `(child, parent)` index pairs, all IS_A.
    pub edges: Vec<(usize, usize)>,
    pub slots: Vec<Slots>,
    pub taxonomy: Taxonomy,
    pub annotations: AnnotationSet,
}

/// A DAG with up to `max_nodes` concepts and `max_edges` IS_A edges whose
/// name order is unrelated to its topological order. Edges are inserted in
/// random order.
pub fn random_case<R: Rng>(rng: &mut R, max_nodes: usize, max_edges: usize) -> Case {
    let n = rng.gen_range(1..=max_nodes);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let names: Vec<String> = labels.iter().map(|l| format!("c{l:03}")).collect();

    let mut edges = BTreeSet::new();
    if n > 1 {
        let target = rng.gen_range(0..=max_edges);
        for _ in 0..target * 2 {
            if edges.len() >= target {
                break;
            }
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                // the higher index is the child
                edges.insert((a.max(b), a.min(b)));
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
    edges.shuffle(rng);

    let slots: Vec<Slots> = (0..n)
        .map(|_| if rng.gen_bool(0.15) { Slots::default() } else { Slots::random(rng) })
        .collect();
    let (taxonomy, annotations) = materialize(&names, &edges, &slots);
    Case {
        names,
        edges,
        slots,
        taxonomy,
        annotations,
    }
}

pub fn materialize(names: &[String], edges: &[(usize, usize)], slots: &[Slots]) -> (Taxonomy, AnnotationSet) {
    let mut taxonomy = Taxonomy::new();
    for name in names {
        taxonomy.add_concept(Concept::new(name.clone(), vec![name.clone()])).unwrap();
    }
    for &(c, p) in edges {
        let c = taxonomy.id_of(&names[c]).unwrap();
        let p = taxonomy.id_of(&names[p]).unwrap();
        taxonomy.add_edge(c, p, EdgeKind::IsA).unwrap();
    }
    let text: String = names
        .iter()
        .zip(slots)
        .filter_map(|(n, s)| s.line(n))
        .collect();
    let (annotations, warnings) = AnnotationSet::parse(text.as_bytes()).unwrap();
    assert!(warnings.is_empty());
    (taxonomy, annotations)
}

/// Index-based adjacency.
pub struct Graph {
    pub parents: Vec<Vec<usize>>,
    pub children: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for &(c, p) in edges {
            parents[c].push(p);
            children[p].push(c);
        }
        Graph { parents, children }
    }

    /// Plain depth-first search over parent links.
    pub fn reachable_up(&self, from: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = self.parents[from].clone();
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                stack.extend(&self.parents[x]);
            }
        }
        seen
    }

    pub fn reachable_down(&self, from: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = self.children[from].clone();
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                stack.extend(&self.children[x]);
            }
        }
        seen
    }

    /// Number of parent steps from `from` to every node (None if unreachable).
    fn distances_up(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.parents.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            for &p in &self.parents[x] {
                if dist[p].is_none() {
                    dist[p] = Some(dist[x].unwrap() + 1);
                    queue.push_back(p);
                }
            }
        }
        dist
    }

    /// Among the shortest upward paths from `from` to `to`, the one whose
    /// sequence of names is smallest. Built greedily from the `from` end,
    /// stepping only to parents that stay on a shortest path.
    pub fn min_shortest_path(&self, from: usize, to: usize, names: &[String]) -> Vec<usize> {
        let total = self.distances_up(from)[to].expect("reachable");
        let mut path = vec![from];
        let mut cur = from;
        for step in 1..=total {
            let remaining = total - step;
            let next = self.parents[cur]
                .iter()
                .copied()
                .filter(|&p| self.distances_up(p)[to] == Some(remaining))
                .min_by(|&a, &b| names[a].cmp(&names[b]))
                .expect("some parent stays on a shortest path");
            path.push(next);
            cur = next;
        }
        path
    }
}

/// Reference subsumption check, written directly from the rule statements
/// over annotation tokens. Returns `(kind, subject, object, path)` tuples.
pub fn oracle_violations(case: &Case) -> Vec<(String, String, String, Vec<String>)> {
    let n = case.names.len();
    let g = Graph::new(n, &case.edges);
    let ups: Vec<BTreeSet<usize>> = (0..n).map(|i| g.reachable_up(i)).collect();

    let identity: Vec<Option<&str>> = (0..n)
        .map(|i| {
            let own = case.slots[i].i;
            let inherits = matches!(own, None | Some("-I"))
                && ups[i].iter().any(|&a| case.slots[a].i == Some("+I:supplies"));
            if inherits {
                Some("+I:carries")
            } else {
                own
            }
        })
        .collect();
    let is_type = |x: usize| {
        case.slots[x].r == Some("+R") && identity[x] == Some("+I:supplies") && case.slots[x].nd == Some("-ND")
    };
    let is_role = |x: usize| {
        case.slots[x].r == Some("~R")
            && case.slots[x].nd == Some("+ND")
            && matches!(identity[x], Some("+I:carries") | Some("-I"))
    };

    let mut out = Vec::new();
    for (lower, up) in ups.iter().enumerate() {
        for &upper in up {
            let (l, u) = (&case.slots[lower], &case.slots[upper]);
            let mut kinds = Vec::new();
            if u.r == Some("~R") && l.r == Some("+R") {
                kinds.push("RIGIDITY");
            }
            if u.u == Some("~U") && matches!(l.u, Some("+U") | Some("*U")) {
                kinds.push("UNITY");
            }
            if u.e == Some("~E") && l.e == Some("+E") {
                kinds.push("EXTENSIONALITY");
            }
            if u.c == Some("~C") && l.c == Some("+C") {
                kinds.push("CONCRETENESS");
            }
            if is_role(upper) && is_type(lower) {
                kinds.push("ROLE_OVER_TYPE");
            }
            if kinds.is_empty() {
                continue;
            }
            let path: Vec<String> = g
                .min_shortest_path(lower, upper, &case.names)
                .into_iter()
                .map(|i| case.names[i].clone())
                .collect();
            for kind in kinds {
                out.push((
                    kind.to_owned(),
                    case.names[lower].clone(),
                    case.names[upper].clone(),
                    path.clone(),
                ));
            }
        }
    }
    out.sort();
    out
}

/// Index pairs `(descendant, ancestor)` of the closure.
pub fn closure_pairs(g: &Graph) -> BTreeSet<(usize, usize)> {
    (0..g.parents.len())
        .flat_map(|i| g.reachable_up(i).into_iter().map(move |a| (i, a)))
        .collect()
}
