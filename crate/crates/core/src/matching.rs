//! Maximum matchings in bipartite and general graphs, plus the
//! alternating-path crown finder built on top of them.
//!
//! All routines are deterministic: vertices are scanned in increasing index
//! order and adjacency lists are kept sorted.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// Bipartite graph with sides `A = 0..left` and `B = 0..right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); left];
        for (a, b) in edges {
            if a >= left || b >= right {
                return Err(Error::Contract(format!(
                    "bipartite edge ({a},{b}) outside {left}x{right}"
                )));
            }
            adj[a].push(b);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(BipartiteGraph { left, right, adj })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }
}

/// A matching of a [`BipartiteGraph`], stored as mate arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    left_mate: Vec<Option<usize>>,
    right_mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left_mate.iter().flatten().count()
    }

    pub fn mate_of_left(&self, a: usize) -> Option<usize> {
        self.left_mate[a]
    }

    pub fn mate_of_right(&self, b: usize) -> Option<usize> {
        self.right_mate[b]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left_mate
            .iter()
            .enumerate()
            .filter_map(|(a, m)| m.map(|b| (a, b)))
            .collect()
    }
}

/// Maximum bipartite matching (Hopcroft–Karp).
pub fn hopcroft_karp(g: &BipartiteGraph) -> Matching {
    let mut left_mate = vec![NONE; g.left];
    let mut right_mate = vec![NONE; g.right];
    let mut dist = vec![0usize; g.left];

    loop {
        // BFS layering from every free A-vertex.
        let mut queue = VecDeque::new();
        for a in 0..g.left {
            if left_mate[a] == NONE {
                dist[a] = 0;
                queue.push_back(a);
            } else {
                dist[a] = NONE;
            }
        }
        let mut found = false;
        while let Some(a) = queue.pop_front() {
            for &b in &g.adj[a] {
                let next = right_mate[b];
                if next == NONE {
                    found = true;
                } else if dist[next] == NONE {
                    dist[next] = dist[a] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut augmented = false;
        for a in 0..g.left {
            if left_mate[a] == NONE && augment(g, a, &mut left_mate, &mut right_mate, &mut dist) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }

    let wrap = |v: Vec<usize>| v.into_iter().map(|x| (x != NONE).then_some(x)).collect();
    Matching {
        left_mate: wrap(left_mate),
        right_mate: wrap(right_mate),
    }
}

fn augment(
    g: &BipartiteGraph,
    a: usize,
    left_mate: &mut [usize],
    right_mate: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &b in &g.adj[a] {
        let next = right_mate[b];
        let ok = if next == NONE {
            true
        } else {
            dist[next] == dist[a] + 1 && augment(g, next, left_mate, right_mate, dist)
        };
        if ok {
            left_mate[a] = b;
            right_mate[b] = a;
            return true;
        }
    }
    dist[a] = NONE;
    false
}

/// Undirected simple graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Self-loops are rejected; parallel edges collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Contract(format!("edge ({u},{v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Contract(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(SimpleGraph { adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

/// Matching of a [`SimpleGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralMatching {
    mate: Vec<Option<usize>>,
}

impl GeneralMatching {
    pub fn size(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    /// Pairs `(u, v)` with `u < v`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }
}

/// Maximum matching of a general graph (Edmonds' blossom algorithm).
pub fn blossom_max_matching(g: &SimpleGraph) -> GeneralMatching {
    blossom_capped(g, usize::MAX)
}

/// Like [`blossom_max_matching`], but stops as soon as the matching has
/// `cap` edges.
pub fn blossom_capped(g: &SimpleGraph, cap: usize) -> GeneralMatching {
    let n = g.vertex_count();
    let mut state = Blossom {
        g,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    let mut size = 0;
    for root in 0..n {
        if size >= cap {
            break;
        }
        if state.mate[root] != NONE {
            continue;
        }
        if let Some(end) = state.find_path(root) {
            state.augment(end);
            size += 1;
        }
    }
    GeneralMatching {
        mate: state.mate.into_iter().map(|x| (x != NONE).then_some(x)).collect(),
    }
}

struct Blossom<'a> {
    g: &'a SimpleGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS over the alternating forest rooted at `root`; returns the free
    /// endpoint of an augmenting path.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.mate.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.adj[v].len() {
                let to = self.g.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// Crown `(I, J)` in a bipartite graph: `I ⊆ A` nonempty, `N(I) = J`, and
/// `mapping` matches every `b ∈ J` into `I`. Always `|I| ≥ |J| + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteCrown {
    pub left: BTreeSet<usize>,
    pub right: BTreeSet<usize>,
    /// `b -> M(b)`.
    pub mapping: BTreeMap<usize, usize>,
}

/// Hall-deficient crown via maximum matching and alternating reachability.
///
/// Returns `None` exactly when a maximum matching saturates `A`.
pub fn find_bipartite_crown(g: &BipartiteGraph) -> Option<BipartiteCrown> {
    let matching = hopcroft_karp(g);
    let mut seen_left = vec![false; g.left];
    let mut seen_right = vec![false; g.right];
    let mut queue: VecDeque<usize> = (0..g.left).filter(|&a| matching.mate_of_left(a).is_none()).collect();
    if queue.is_empty() {
        return None;
    }
    for &a in &queue {
        seen_left[a] = true;
    }
    while let Some(a) = queue.pop_front() {
        for &b in &g.adj[a] {
            if seen_right[b] || matching.mate_of_left(a) == Some(b) {
                continue;
            }
            seen_right[b] = true;
            // A maximum matching leaves no free B-vertex reachable here.
            let next = matching
                .mate_of_right(b)
                .expect("alternating path ended at a free vertex: matching not maximum");
            if !seen_left[next] {
                seen_left[next] = true;
                queue.push_back(next);
            }
        }
    }
    let left: BTreeSet<usize> = (0..g.left).filter(|&a| seen_left[a]).collect();
    let right: BTreeSet<usize> = (0..g.right).filter(|&b| seen_right[b]).collect();
    let mapping = right
        .iter()
        .map(|&b| (b, matching.mate_of_right(b).expect("J is saturated")))
        .collect();
    Some(BipartiteCrown { left, right, mapping })
}

/// Largest number of edges through a subedge `e` whose pairwise intersection
/// is exactly `e`, given the one-vertex extensions (`singletons`) and the
/// two-vertex extensions (`pairs`, as a graph on extension vertices).
///
/// Assumes no pair touches a singleton vertex, which holds once superset
/// edges have been removed.
pub fn packing_exactly_e(singletons: usize, pairs: &SimpleGraph) -> usize {
    singletons + blossom_max_matching(pairs).size()
}

/// `packing_exactly_e(singletons, pairs) > k`, stopping the matching early.
pub fn packing_exceeds(singletons: usize, pairs: &SimpleGraph, k: usize) -> bool {
    if singletons > k {
        return true;
    }
    let need = k + 1 - singletons;
    blossom_capped(pairs, need).size() >= need
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bip(left: usize, right: usize, edges: &[(usize, usize)]) -> BipartiteGraph {
        BipartiteGraph::new(left, right, edges.iter().copied()).unwrap()
    }

    #[test]
    fn hopcroft_karp_small() {
        let k22 = bip(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(hopcroft_karp(&k22).size(), 2);
        let star = bip(2, 1, &[(0, 0), (1, 0)]);
        let m = hopcroft_karp(&star);
        assert_eq!(m.size(), 1);
        assert_eq!(m.mate_of_right(0), Some(0));
        assert_eq!(hopcroft_karp(&bip(3, 3, &[])).size(), 0);
    }

    #[test]
    fn hopcroft_karp_needs_augmenting_path() {
        // greedy would match 0-0 and block 1
        let g = bip(2, 2, &[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(hopcroft_karp(&g).size(), 2);
    }

    #[test]
    fn blossom_small() {
        let tri = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(blossom_max_matching(&tri).size(), 1);
        let c5 = SimpleGraph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(blossom_max_matching(&c5).size(), 2);
        let petersen = SimpleGraph::new(
            10,
            (0..5)
                .map(|i| (i, (i + 1) % 5))
                .chain((0..5).map(|i| (i, i + 5)))
                .chain((0..5).map(|i| (5 + i, 5 + (i + 2) % 5))),
        )
        .unwrap();
        assert_eq!(blossom_max_matching(&petersen).size(), 5);
    }

    #[test]
    fn blossom_odd_cycle_with_stem() {
        // triangle 1-2-3 with pendant 0-1 and 3-4: matching 2 needs the blossom
        let g = SimpleGraph::new(5, [(0, 1), (1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        assert_eq!(blossom_max_matching(&g).size(), 2);
        let g = SimpleGraph::new(6, [(0, 1), (1, 2), (2, 3), (1, 3), (3, 4), (2, 5)]).unwrap();
        assert_eq!(blossom_max_matching(&g).size(), 3);
    }

    #[test]
    fn blossom_cap() {
        let g = SimpleGraph::new(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(blossom_capped(&g, 2).size(), 2);
        assert_eq!(blossom_capped(&g, 10).size(), 3);
    }

    #[test]
    fn simple_graph_rejects_loops() {
        assert!(SimpleGraph::new(2, [(1, 1)]).is_err());
        assert!(SimpleGraph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn crown_star() {
        let c = find_bipartite_crown(&bip(2, 1, &[(0, 0), (1, 0)])).unwrap();
        assert_eq!(c.left, BTreeSet::from([0, 1]));
        assert_eq!(c.right, BTreeSet::from([0]));
        assert_eq!(c.mapping, BTreeMap::from([(0, 0)]));
    }

    #[test]
    fn crown_absent_when_saturated() {
        assert!(find_bipartite_crown(&bip(1, 1, &[(0, 0)])).is_none());
        let k22 = bip(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert!(find_bipartite_crown(&k22).is_none());
    }

    #[test]
    fn crown_isolated_vertex() {
        let c = find_bipartite_crown(&bip(2, 1, &[(0, 0)])).unwrap();
        assert_eq!(c.left, BTreeSet::from([1]));
        assert!(c.right.is_empty());
    }

    #[test]
    fn packing() {
        let three = SimpleGraph::new(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(packing_exactly_e(0, &three), 3);
        let tri = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(packing_exactly_e(1, &tri), 2);
        assert_eq!(packing_exactly_e(0, &SimpleGraph::new(0, []).unwrap()), 0);
        assert!(packing_exceeds(1, &tri, 1));
        assert!(!packing_exceeds(1, &tri, 2));
        assert!(packing_exceeds(3, &tri, 2));
    }
}
