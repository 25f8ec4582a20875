//! HS crown decompositions.
//!
//! An HS crown `(I, J)` of `H = (V, E)` consists of an independent set `I`,
//! the subedge set `J = {Y : Y ∪ {x} ∈ E for some x ∈ I}` and an injective
//! map `M: J → I` with `Y ∪ {M(Y)} ∈ E`. Replacing `E(I)` by `J` and dropping
//! `I` keeps `(H, k)` equivalent. The crown is *strict* when `|I| ≥ |J| + 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergraph::{Delta, Edge, Hypergraph, Instance, VertexId};
use crate::matching::{find_bipartite_crown, BipartiteGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsCrown {
    pub independent: BTreeSet<VertexId>,
    pub subedges: BTreeSet<Edge>,
    /// `Y -> M(Y)`.
    pub mapping: BTreeMap<Edge, VertexId>,
}

impl HsCrown {
    pub fn is_strict(&self) -> bool {
        self.independent.len() > self.subedges.len()
    }

    /// `I=[..] J=[..] M=[Y->x, ..]`, using the instance's labels.
    pub fn render(&self, inst: &Instance) -> String {
        let name = |v: VertexId| inst.labels().get(v).cloned().unwrap_or_else(|| format!("#{v}"));
        let edge = |e: &Edge| format!("{{{}}}", e.iter().map(name).join(","));
        format!(
            "I=[{}] J=[{}] M=[{}]",
            self.independent.iter().map(|&v| name(v)).join(","),
            self.subedges.iter().map(edge).join(","),
            self.mapping
                .iter()
                .map(|(y, &x)| format!("{}->{}", edge(y), name(x)))
                .join(",")
        )
    }
}

/// `J` induced by `set`: every `e ∖ {x}` with `x ∈ set ∩ e`.
pub fn induced_subedges(h: &Hypergraph, set: &BTreeSet<VertexId>) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for e in h.edges() {
        for x in e.iter().filter(|x| set.contains(x)) {
            out.insert(e.without(x));
        }
    }
    out
}

/// Per-condition result of [`validate_hs_crown`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrownVerdict {
    pub independent: bool,
    pub subedges_exact: bool,
    pub matching: bool,
    pub strict: bool,
    pub failures: Vec<String>,
}

impl CrownVerdict {
    pub fn is_valid(&self) -> bool {
        self.independent && self.subedges_exact && self.matching
    }
}

impl fmt::Display for CrownVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            write!(f, "valid{}", if self.strict { " (strict)" } else { "" })
        } else {
            write!(f, "{}", self.failures.join("; "))
        }
    }
}

pub fn validate_hs_crown(h: &Hypergraph, c: &HsCrown) -> CrownVerdict {
    let mut failures = Vec::new();

    if let Some(v) = c.independent.iter().find(|&&v| v >= h.n()) {
        failures.push(format!("vertex {v} out of range"));
    }
    let independent = h.is_independent(&c.independent);
    if !independent {
        failures.push("I is not independent".to_owned());
    }

    let induced = induced_subedges(h, &c.independent);
    let subedges_exact = induced == c.subedges;
    if !subedges_exact {
        let missing = induced.difference(&c.subedges).count();
        let extra = c.subedges.difference(&induced).count();
        failures.push(format!(
            "J differs from the induced subedge set ({missing} missing, {extra} extra)"
        ));
    }

    let mut matching = true;
    if c.mapping.keys().ne(c.subedges.iter()) {
        matching = false;
        failures.push("M is not defined on exactly J".to_owned());
    }
    let mut used = BTreeSet::new();
    for (y, &x) in &c.mapping {
        if !c.independent.contains(&x) {
            matching = false;
            failures.push(format!("M({y}) = {x} lies outside I"));
        } else if y.contains(x) || !h.contains_edge(&y.with(x)) {
            matching = false;
            failures.push(format!("{y} + {x} is not an edge"));
        }
        if !used.insert(x) {
            matching = false;
            failures.push(format!("M is not injective at {x}"));
        }
    }

    CrownVerdict {
        independent,
        subedges_exact,
        matching,
        strict: c.is_strict(),
        failures,
    }
}

/// Removes `I` and `E(I)`, inserts `J`; `k` is unchanged.
pub fn apply_hs_crown(inst: &Instance, c: &HsCrown) -> Result<Instance> {
    apply_with_delta(inst, c).map(|(out, _)| out)
}

pub(crate) fn apply_with_delta(inst: &Instance, c: &HsCrown) -> Result<(Instance, Delta)> {
    let verdict = validate_hs_crown(inst.graph(), c);
    if !verdict.is_valid() {
        return Err(Error::InvalidCrown(verdict));
    }
    let edges: BTreeSet<Edge> = inst
        .edges()
        .iter()
        .filter(|e| !e.iter().any(|v| c.independent.contains(&v)))
        .cloned()
        .chain(c.subedges.iter().cloned())
        .collect();
    inst.transform(&c.independent, edges, 0)
}

/// Runs the bipartite crown finder on "vertex `a` + subedge `b` is an edge"
/// and lifts the result back to the hypergraph.
pub(crate) fn crown_from_candidates(
    h: &Hypergraph,
    vertices: &BTreeSet<VertexId>,
    subedges: &BTreeSet<Edge>,
) -> Result<Option<HsCrown>> {
    let left: Vec<VertexId> = vertices.iter().copied().collect();
    let right: Vec<&Edge> = subedges.iter().collect();
    let index: BTreeMap<&Edge, usize> = right.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut adj = Vec::new();
    for (a, &x) in left.iter().enumerate() {
        for e in h.edges().iter().filter(|e| e.contains(x)) {
            if let Some(&b) = index.get(&e.without(x)) {
                adj.push((a, b));
            }
        }
    }
    let g = BipartiteGraph::new(left.len(), right.len(), adj)?;
    Ok(find_bipartite_crown(&g).map(|bc| HsCrown {
        independent: bc.left.iter().map(|&a| left[a]).collect(),
        subedges: bc.right.iter().map(|&b| right[b].clone()).collect(),
        mapping: bc.mapping.iter().map(|(&b, &a)| (right[b].clone(), left[a])).collect(),
    }))
}

/// Strict crown inside a given independent set.
///
/// Requires every edge to have at least two vertices and `set` to be a
/// nonempty independent set. Returns `None` when a maximum matching of the
/// auxiliary bipartite graph saturates `set`.
pub fn find_strict_crown_from_independent_set(h: &Hypergraph, set: &BTreeSet<VertexId>) -> Result<Option<HsCrown>> {
    if let Some(e) = h.edges().iter().find(|e| e.len() < 2) {
        return Err(Error::Contract(format!("edge {e} has fewer than two vertices")));
    }
    if set.is_empty() {
        return Err(Error::Contract("independent set is empty".into()));
    }
    if let Some(v) = set.iter().find(|&&v| v >= h.n()) {
        return Err(Error::Contract(format!("vertex {v} out of range")));
    }
    if !h.is_independent(set) {
        return Err(Error::Contract("vertex set is not independent".into()));
    }
    let subedges = induced_subedges(h, set);
    crown_from_candidates(h, set, &subedges)
}
