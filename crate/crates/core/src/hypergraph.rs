//! Hypergraph and instance model shared by every reduction rule.
//!
//! Vertices are dense indices `0..n`. An [`Edge`] is a strictly increasing
//! vertex list and doubles as a *subedge* (a nonempty vertex set contained in
//! some hyperedge); context decides which one is meant. Edge sets have set
//! semantics, so duplicate edges collapse on construction.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Smallest edge-size bound the engine accepts.
pub const MIN_D: usize = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vec<VertexId>);

impl Edge {
    /// Sorts and deduplicates.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut v: Vec<VertexId> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Edge(v)
    }

    /// The unhittable edge. Only ever used as an infeasibility witness.
    pub fn empty() -> Self {
        Edge(Vec::new())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Edge) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn intersection_len(&self, other: &Edge) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    pub fn intersects(&self, other: &Edge) -> bool {
        self.intersection_len(other) > 0
    }

    pub fn without(&self, v: VertexId) -> Edge {
        Edge(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: VertexId) -> Edge {
        Edge::new(self.0.iter().copied().chain(std::iter::once(v)))
    }

    /// `self ∖ other`.
    pub fn difference(&self, other: &Edge) -> Edge {
        Edge(self.0.iter().copied().filter(|&v| !other.contains(v)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl FromIterator<VertexId> for Edge {
    fn from_iter<T: IntoIterator<Item = VertexId>>(iter: T) -> Self {
        Edge::new(iter)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    d: usize,
    edges: BTreeSet<Edge>,
}

impl Hypergraph {
    pub fn new(n: usize, d: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        for e in &edges {
            if e.len() > d {
                return Err(Error::format(None, format!("edge {e} has more than d={d} vertices")));
            }
            if let Some(&v) = e.vertices().last() {
                if v >= n {
                    return Err(Error::format(None, format!("edge {e} references vertex {v} >= n={n}")));
                }
            }
        }
        Ok(Hypergraph { n, d, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn has_empty_edge(&self) -> bool {
        self.edges.first().is_some_and(Edge::is_empty)
    }

    /// `E(s)`: the edges containing every vertex of `s`.
    pub fn incident_edges(&self, s: &Edge) -> Vec<&Edge> {
        self.edges.iter().filter(|e| s.is_subset_of(e)).collect()
    }

    /// `E(v)` for a single vertex.
    pub fn edges_of(&self, v: VertexId) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.contains(v)).collect()
    }

    /// For every vertex, the indices (in canonical edge order) of the edges
    /// containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for v in e.iter() {
                inc[v].push(i);
            }
        }
        inc
    }

    /// True iff every edge holds at most one vertex of `set`.
    pub fn is_independent(&self, set: &BTreeSet<VertexId>) -> bool {
        self.edges
            .iter()
            .all(|e| e.iter().filter(|v| set.contains(v)).count() <= 1)
    }

    /// Vertices that appear in at least one edge.
    pub fn covered_vertices(&self) -> BTreeSet<VertexId> {
        self.edges.iter().flat_map(Edge::iter).collect()
    }
}

/// All size-`i` vertex sets contained in at least one edge of `edges`.
pub fn subedges_of<'a>(edges: impl IntoIterator<Item = &'a Edge>, i: usize) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    if i == 0 {
        return out;
    }
    for e in edges {
        if e.len() < i {
            continue;
        }
        for combo in e.vertices().iter().copied().combinations(i) {
            // combinations of a sorted slice stay sorted
            out.insert(Edge(combo));
        }
    }
    out
}

/// Size bookkeeping for one instance transformation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Delta {
    pub vertices_removed: usize,
    pub edges_removed: usize,
    pub edges_added: usize,
    pub k_delta: i64,
}

/// A hypergraph together with the budget `k`.
///
/// `labels[v]` is the external name of vertex `v`. `comments` carries
/// provenance lines from the source file (without the leading `c`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: Hypergraph,
    k: i64,
    labels: Vec<String>,
    comments: Vec<String>,
}

impl Instance {
    /// Builds an instance over vertices `0..n` labelled `1..=n`.
    pub fn from_edges(n: usize, d: usize, k: i64, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        check_d(d)?;
        let graph = Hypergraph::new(n, d, edges)?;
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Ok(Instance {
            graph,
            k,
            labels,
            comments: Vec::new(),
        })
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn d(&self) -> usize {
        self.graph.d()
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        self.graph.edges()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn with_comments(mut self, comments: Vec<String>) -> Self {
        self.comments = comments;
        self
    }

    pub fn with_k(mut self, k: i64) -> Self {
        self.k = k;
        self
    }

    /// Σ |e| over all edges.
    pub fn total_edge_size(&self) -> usize {
        self.edges().iter().map(Edge::len).sum()
    }

    /// Produces the successor instance: drops `removed` from the vertex set,
    /// replaces the edge set by `edges` (given in this instance's ids) and
    /// shifts `k`. Surviving vertices are renumbered densely, keeping their
    /// relative order and labels.
    pub fn transform(
        &self,
        removed: &BTreeSet<VertexId>,
        edges: BTreeSet<Edge>,
        k_delta: i64,
    ) -> Result<(Instance, Delta)> {
        let old = self.edges();
        let delta = Delta {
            vertices_removed: removed.len(),
            edges_removed: old.difference(&edges).count(),
            edges_added: edges.difference(old).count(),
            k_delta,
        };
        let mut remap = vec![usize::MAX; self.n()];
        let mut labels = Vec::with_capacity(self.n() - removed.len());
        for (v, slot) in remap.iter_mut().enumerate() {
            if !removed.contains(&v) {
                *slot = labels.len();
                labels.push(self.labels[v].clone());
            }
        }
        let mut mapped = BTreeSet::new();
        for e in edges {
            let mut vs = Vec::with_capacity(e.len());
            for v in e.iter() {
                let w = remap[v];
                if w == usize::MAX {
                    return Err(Error::Internal(format!("edge {e} keeps removed vertex {v}")));
                }
                vs.push(w);
            }
            mapped.insert(Edge(vs));
        }
        let graph = Hypergraph::new(labels.len(), self.d(), mapped)?;
        Ok((
            Instance {
                graph,
                k: self.k + k_delta,
                labels,
                comments: self.comments.clone(),
            },
            delta,
        ))
    }
}

fn check_d(d: usize) -> Result<()> {
    if d < MIN_D {
        return Err(Error::UnsupportedParameter(format!(
            "d={d}; the kernelizer requires d >= {MIN_D}"
        )));
    }
    Ok(())
}

/// Builds a canonical instance from externally named vertices.
///
/// Ids follow first appearance: first the explicit `labels` list, then any
/// further name met while scanning `edges`. Vertex lists are sorted and
/// deduplicated, duplicate edges collapse. An empty raw edge is kept as the
/// unhittable witness, which the controller answers with "no".
pub fn normalize<S: AsRef<str>>(labels: &[S], edges: &[Vec<S>], d: usize, k: i64) -> Result<Instance> {
    check_d(d)?;
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut intern = |name: &str, ids: &mut HashMap<String, VertexId>| -> VertexId {
        if let Some(&id) = ids.get(name) {
            return id;
        }
        let id = names.len();
        names.push(name.to_owned());
        ids.insert(name.to_owned(), id);
        id
    };
    for l in labels {
        intern(l.as_ref(), &mut ids);
    }
    let mut set = BTreeSet::new();
    for (i, raw) in edges.iter().enumerate() {
        let e = Edge::new(raw.iter().map(|l| intern(l.as_ref(), &mut ids)));
        if e.len() > d {
            return Err(Error::format(
                None,
                format!("edge #{} has {} distinct vertices, more than d={d}", i + 1, e.len()),
            ));
        }
        set.insert(e);
    }
    let graph = Hypergraph::new(names.len(), d, set)?;
    Ok(Instance {
        graph,
        k,
        labels: names,
        comments: Vec::new(),
    })
}

/// Edges in external vocabulary; handy for reporting and re-normalizing.
pub fn labelled_edges(inst: &Instance) -> Vec<Vec<String>> {
    inst.edges()
        .iter()
        .map(|e| e.iter().map(|v| inst.label(v).to_owned()).collect())
        .collect()
}

/// Degree of each vertex.
pub fn degrees(g: &Hypergraph) -> BTreeMap<VertexId, usize> {
    let mut deg = BTreeMap::new();
    for e in g.edges() {
        for v in e.iter() {
            *deg.entry(v).or_insert(0) += 1;
        }
    }
    deg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> Hypergraph {
        crate::samples::small_crown_instance(1).graph().clone()
    }

    #[test]
    fn normalize_dedups_and_sorts() {
        let inst = normalize(
            &["a", "b", "c"],
            &[vec!["a", "b"], vec!["b", "a"], vec!["b", "c"]],
            3,
            1,
        )
        .unwrap();
        assert_eq!(inst.n(), 3);
        let edges: Vec<_> = inst.edges().iter().cloned().collect();
        assert_eq!(edges, vec![Edge::new([0, 1]), Edge::new([1, 2])]);
        assert_eq!(inst.labels(), ["a", "b", "c"]);
    }

    #[test]
    fn normalize_empty_and_errors() {
        let inst = normalize::<&str>(&[], &[], 3, 0).unwrap();
        assert_eq!((inst.n(), inst.m()), (0, 0));

        let err = normalize(&["a"], &[vec!["a", "b", "c", "d2"]], 3, 1).unwrap_err();
        assert!(matches!(err, Error::Format { .. }));

        let err = normalize(&["a"], &[vec!["a", "b"]], 2, 1).unwrap_err();
        assert!(matches!(err, Error::UnsupportedParameter(_)));
    }

    #[test]
    fn normalize_keeps_empty_edge_as_witness() {
        let inst = normalize(&["a"], &[vec![]], 3, 1).unwrap();
        assert!(inst.graph().has_empty_edge());
    }

    #[test]
    fn normalize_first_appearance_order() {
        let inst = normalize::<&str>(&[], &[vec!["z", "y"], vec!["x", "y"]], 3, 1).unwrap();
        assert_eq!(inst.labels(), ["z", "y", "x"]);
        assert!(inst.edges().contains(&Edge::new([0, 1])));
        assert!(inst.edges().contains(&Edge::new([1, 2])));
    }

    #[test]
    fn incident_edges_small_crown() {
        let h = fig1();
        assert_eq!(h.incident_edges(&Edge::new([1])).len(), 4);
        let e12: Vec<Edge> = h.incident_edges(&Edge::new([0, 1])).into_iter().cloned().collect();
        assert_eq!(e12, vec![Edge::new([0, 1, 3]), Edge::new([0, 1, 4])]);
        let h2 = Hypergraph::new(6, 3, h.edges().iter().cloned()).unwrap();
        assert!(h2.incident_edges(&Edge::new([5])).is_empty());
    }

    #[test]
    fn independence_small_crown() {
        let h = fig1();
        assert!(h.is_independent(&BTreeSet::from([3, 4])));
        assert!(!h.is_independent(&BTreeSet::from([1, 3])));
        assert!(h.is_independent(&BTreeSet::new()));
    }

    #[test]
    fn subedges() {
        let w = [Edge::new([1, 2, 3])];
        let s: Vec<_> = subedges_of(&w, 2).into_iter().collect();
        assert_eq!(s, vec![Edge::new([1, 2]), Edge::new([1, 3]), Edge::new([2, 3])]);
        let w = [Edge::new([1, 2]), Edge::new([2, 3])];
        let s: Vec<_> = subedges_of(&w, 1).into_iter().collect();
        assert_eq!(s, vec![Edge::new([1]), Edge::new([2]), Edge::new([3])]);
        assert!(subedges_of(&[] as &[Edge], 2).is_empty());
    }

    #[test]
    fn edge_set_ops() {
        let a = Edge::new([1, 3]);
        let b = Edge::new([0, 1, 2, 3]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert!(!Edge::new([1, 4]).is_subset_of(&b));
        assert!(Edge::empty().is_subset_of(&a));
        assert_eq!(a.intersection_len(&b), 2);
        assert_eq!(b.difference(&a), Edge::new([0, 2]));
        assert_eq!(a.with(0), Edge::new([0, 1, 3]));
        assert_eq!(b.without(2), Edge::new([0, 1, 3]));
    }

    #[test]
    fn transform_renumbers() {
        let inst = Instance::from_edges(5, 3, 2, fig1().edges().iter().cloned()).unwrap();
        let removed = BTreeSet::from([3, 4]);
        let edges = BTreeSet::from([Edge::new([0, 1]), Edge::new([1, 2])]);
        let (out, delta) = inst.transform(&removed, edges, 0).unwrap();
        assert_eq!(out.n(), 3);
        assert_eq!(out.labels(), ["1", "2", "3"]);
        assert_eq!(delta.edges_removed, 4);
        assert_eq!(delta.edges_added, 2);
        assert_eq!(delta.vertices_removed, 2);
    }
}
