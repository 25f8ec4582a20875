//! The six reduction rules and the `reduce` controller.
//!
//! Each rule is a pure function from an [`Instance`] to a [`RuleOutcome`]. A
//! rule assumes every lower-numbered rule is inapplicable; [`reduce`] enforces
//! that order and answers the trivial cases (empty edge, negative budget, no
//! edges left) itself.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::crown::{apply_with_delta, crown_from_candidates, validate_hs_crown, HsCrown};
use crate::error::{Error, Result};
use crate::hypergraph::{subedges_of, Delta, Edge, Instance};
use crate::lp::{build_shs_lp, extract_crown_candidates, solve_exact, ExactLpSolution};
use crate::matching::{blossom_max_matching, packing_exceeds, SimpleGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    VertexDomination = 1,
    EdgeDomination = 2,
    UnitEdge = 3,
    HighDegreeSubedge = 4,
    WeaklyRelated = 5,
    LpCrown = 6,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::VertexDomination,
        Rule::EdgeDomination,
        Rule::UnitEdge,
        Rule::HighDegreeSubedge,
        Rule::WeaklyRelated,
        Rule::LpCrown,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::VertexDomination => "vertex domination",
            Rule::EdgeDomination => "edge domination",
            Rule::UnitEdge => "unit edge",
            Rule::HighDegreeSubedge => "high-degree subedge",
            Rule::WeaklyRelated => "weakly related counting",
            Rule::LpCrown => "LP crown",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} ({})", self.number(), self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Size {
    pub n: usize,
    pub m: usize,
    pub k: i64,
}

impl Size {
    pub fn of(inst: &Instance) -> Self {
        Size {
            n: inst.n(),
            m: inst.m(),
            k: inst.k(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub vertices_removed: usize,
    pub edges_removed: usize,
    pub edges_added: usize,
    pub k_delta: i64,
    /// False only for a weakly-related pass that left the instance as is.
    pub changed: bool,
    pub before: Size,
    pub after: Size,
    /// The crown applied by the LP rule, in the ids of the instance before.
    pub crown: Option<HsCrown>,
    /// The LP solution the LP rule worked from.
    pub lp: Option<ExactLpSolution>,
}

impl TraceStep {
    fn new(rule: Rule, before: &Instance, after: Option<&Instance>, delta: Delta) -> Self {
        TraceStep {
            rule,
            vertices_removed: delta.vertices_removed,
            edges_removed: delta.edges_removed,
            edges_added: delta.edges_added,
            k_delta: delta.k_delta,
            changed: delta != Delta::default(),
            before: Size::of(before),
            after: after.map(Size::of).unwrap_or(Size::of(before)),
            crown: None,
            lp: None,
        }
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: n {}->{}, m {}->{}, k {}->{} (-{}v, -{}e, +{}e)",
            self.rule,
            self.before.n,
            self.after.n,
            self.before.m,
            self.after.m,
            self.before.k,
            self.after.k,
            self.vertices_removed,
            self.edges_removed,
            self.edges_added
        )?;
        if !self.changed {
            write!(f, " no-op")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Undecided,
    Yes,
    No,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub verdict: Verdict,
}

impl ReductionTrace {
    pub fn count(&self, rule: Rule) -> usize {
        self.steps.iter().filter(|s| s.rule == rule).count()
    }
}

#[derive(Clone, Debug)]
pub enum RuleOutcome {
    NotApplicable,
    Applied {
        instance: Instance,
        step: TraceStep,
    },
    /// The rule proved the instance is a no-instance.
    No {
        step: TraceStep,
    },
}

impl RuleOutcome {
    pub fn is_applicable(&self) -> bool {
        !matches!(self, RuleOutcome::NotApplicable)
    }
}

fn applied(rule: Rule, before: &Instance, (instance, delta): (Instance, Delta)) -> RuleOutcome {
    let step = TraceStep::new(rule, before, Some(&instance), delta);
    RuleOutcome::Applied { instance, step }
}

/// `(2d − 2)·k^{d−1} + k`, saturating; zero for negative `k`.
pub fn kernel_bound(d: usize, k: i64) -> u128 {
    if k < 0 {
        return 0;
    }
    let k = k as u128;
    let pow = (0..d.saturating_sub(1)).try_fold(1u128, |acc, _| acc.checked_mul(k));
    pow.and_then(|p| p.checked_mul(2 * d as u128 - 2))
        .and_then(|x| x.checked_add(k))
        .unwrap_or(u128::MAX)
}

/// Vertex `x` with `E(x) ⊆ E(y)` for some `y ≠ x` is deleted from the vertex
/// set and from every edge containing it.
///
/// Deleting `E(x)` outright would be unsound: with edges `{x,y} {z,w}` and
/// `k = 1`, `x` is dominated by `y`, yet dropping `{x,y}` leaves a yes-instance
/// behind a no-instance. Shrinking the edges instead is the classical
/// domination argument (any solution using `x` may use `y`).
pub fn rule1_vertex_domination(inst: &Instance) -> RuleOutcome {
    let g = inst.graph();
    let edges: Vec<&Edge> = g.edges().iter().collect();
    let inc = g.incidence();
    for x in 0..g.n() {
        let dominator = if inc[x].is_empty() {
            (0..g.n()).find(|&y| y != x)
        } else {
            // y must lie in every edge through x
            let first = edges[inc[x][0]];
            first
                .iter()
                .filter(|&y| y != x)
                .find(|&y| inc[x].iter().all(|&i| edges[i].contains(y)))
        };
        if dominator.is_some() {
            let new_edges = g
                .edges()
                .iter()
                .map(|e| if e.contains(x) { e.without(x) } else { e.clone() })
                .collect();
            let result = inst
                .transform(&BTreeSet::from([x]), new_edges, 0)
                .expect("shrinking edges keeps the instance well formed");
            return applied(Rule::VertexDomination, inst, result);
        }
    }
    RuleOutcome::NotApplicable
}

/// Drops an edge that strictly contains another edge.
pub fn rule2_edge_domination(inst: &Instance) -> RuleOutcome {
    let edges = inst.edges();
    for e in edges {
        let has_subset =
            (1..e.len()).any(|size| subedges_of(std::iter::once(e), size).iter().any(|s| edges.contains(s)));
        if has_subset {
            let mut rest = edges.clone();
            rest.remove(e);
            let result = inst
                .transform(&BTreeSet::new(), rest, 0)
                .expect("removing an edge keeps the instance well formed");
            return applied(Rule::EdgeDomination, inst, result);
        }
    }
    RuleOutcome::NotApplicable
}

/// A one-vertex edge `{v}` forces `v`: remove `v` with every edge through it
/// and decrement `k`.
pub fn rule3_unit_edge(inst: &Instance) -> RuleOutcome {
    let Some(unit) = inst.edges().iter().find(|e| e.len() == 1) else {
        return RuleOutcome::NotApplicable;
    };
    let v = unit.vertices()[0];
    let rest = inst.edges().iter().filter(|e| !e.contains(v)).cloned().collect();
    let result = inst
        .transform(&BTreeSet::from([v]), rest, -1)
        .expect("removing a vertex with its edges keeps the instance well formed");
    applied(Rule::UnitEdge, inst, result)
}

/// A `(d−2)`-subedge `e` that is the pairwise intersection of more than `k`
/// edges must be hit; replace `E(e)` by the single edge `e`.
pub fn rule4_high_degree_subedge(inst: &Instance) -> RuleOutcome {
    let d = inst.d();
    let k = inst.k().max(0) as usize;
    let edges = inst.edges();
    for e in subedges_of(edges, d - 2) {
        if packing_through(inst, &e) > k {
            let mut rest: BTreeSet<Edge> = edges.iter().filter(|f| !e.is_subset_of(f)).cloned().collect();
            rest.insert(e);
            let result = inst
                .transform(&BTreeSet::new(), rest, 0)
                .expect("replacing edges by a subedge keeps the instance well formed");
            return applied(Rule::HighDegreeSubedge, inst, result);
        }
    }
    RuleOutcome::NotApplicable
}

/// Largest number of edges through `e` that pairwise intersect in exactly `e`,
/// capped just above `k`.
fn packing_through(inst: &Instance, e: &Edge) -> usize {
    let k = inst.k().max(0) as usize;
    let mut itself = 0;
    let mut singles: BTreeSet<usize> = BTreeSet::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for f in inst.edges().iter().filter(|f| e.is_subset_of(f)) {
        let ext = f.difference(e);
        match ext.len() {
            0 => itself = 1,
            1 => {
                singles.insert(ext.vertices()[0]);
            }
            _ => pairs.push((ext.vertices()[0], ext.vertices()[1])),
        }
    }
    let mut local: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in &pairs {
        for v in [a, b] {
            let next = local.len();
            local.entry(v).or_insert(next);
        }
    }
    let touching = singles.iter().any(|v| local.contains_key(v));
    if !touching {
        let g = SimpleGraph::new(local.len(), pairs.iter().map(|(a, b)| (local[a], local[b])))
            .expect("extensions are proper pairs");
        let base = itself + singles.len();
        return if packing_exceeds(base, &g, k) {
            k + 1
        } else {
            base + blossom_max_matching(&g).size()
        };
    }
    // A singleton that meets a pair becomes an edge to a private dummy vertex,
    // so disjoint families are exactly matchings again.
    for &v in &singles {
        let next = local.len();
        local.entry(v).or_insert(next);
    }
    let mut graph_edges: Vec<(usize, usize)> = pairs.iter().map(|(a, b)| (local[a], local[b])).collect();
    let mut extra = local.len();
    for &v in &singles {
        graph_edges.push((local[&v], extra));
        extra += 1;
    }
    let g = SimpleGraph::new(extra, graph_edges).expect("valid auxiliary graph");
    itself + blossom_max_matching(&g).size()
}

/// Greedy maximal family of pairwise weakly related edges (`|e₁ ∩ e₂| ≤ d−2`)
/// in canonical edge order.
pub fn weakly_related_family(inst: &Instance) -> Vec<Edge> {
    let d = inst.d();
    let mut family: Vec<Edge> = Vec::new();
    for e in inst.edges() {
        if family.iter().all(|f| e.intersection_len(f) + 2 <= d) {
            family.push(e.clone());
        }
    }
    family
}

/// Counting rule over a greedy maximal weakly related family `W`.
///
/// For `i = d−2` down to `1`, every `i`-subedge `e` of `W` with
/// `|W(e)| > k^{d−1−i}` is forced: all edges containing it are replaced by
/// `e`. Deleted edges leave `W`; the inserted subedge does not join it.
///
/// The rule is skipped when `last` is a pass of this rule that changed
/// nothing; a pass that did change the instance is followed by a fresh one.
pub fn rule5_weakly_related_counting(inst: &Instance, last: Option<&TraceStep>) -> RuleOutcome {
    if last.is_some_and(|s| s.rule == Rule::WeaklyRelated && !s.changed) {
        return RuleOutcome::NotApplicable;
    }
    let d = inst.d();
    let k = inst.k().max(0) as u128;
    let mut family: BTreeSet<Edge> = weakly_related_family(inst).into_iter().collect();
    let mut edges = inst.edges().clone();
    for i in (1..=d - 2).rev() {
        let threshold = (0..d - 1 - i).fold(1u128, |acc, _| acc.saturating_mul(k));
        for e in subedges_of(&family, i) {
            let count = family.iter().filter(|f| e.is_subset_of(f)).count() as u128;
            if count > threshold {
                edges.retain(|f| !e.is_subset_of(f));
                family.retain(|f| !e.is_subset_of(f));
                edges.insert(e);
            }
        }
    }
    let result = inst
        .transform(&BTreeSet::new(), edges, 0)
        .expect("replacing edges by subedges keeps the instance well formed");
    applied(Rule::WeaklyRelated, inst, result)
}

/// LP-guided crown reduction for instances above the kernel bound.
///
/// Solves the crown-seeking LP exactly, collects the zero-valued vertices
/// `A` and the subedges `B` completing them to edges, and looks for a crown in
/// the bipartite graph `A × B`. A crown is applied; its absence proves the
/// instance is a no-instance.
pub fn rule6_lp_crown(inst: &Instance) -> Result<RuleOutcome> {
    if (inst.n() as u128) <= kernel_bound(inst.d(), inst.k()) {
        return Ok(RuleOutcome::NotApplicable);
    }
    if inst.k() < 0 {
        return Err(Error::Contract("LP crown rule needs k >= 0".into()));
    }
    if let Some(e) = inst.edges().iter().find(|e| e.len() < 2) {
        return Err(Error::Contract(format!(
            "LP crown rule needs edges of size >= 2, found {e}"
        )));
    }
    let g = inst.graph();
    let solution = solve_exact(&build_shs_lp(g))?;
    let candidates = extract_crown_candidates(g, &solution)?;
    if !g.is_independent(&candidates.zero) {
        return Err(Error::Internal("zero-valued LP vertices are not independent".into()));
    }
    let Some(crown) = crown_from_candidates(g, &candidates.zero, &candidates.subedges)? else {
        let mut step = TraceStep::new(Rule::LpCrown, inst, None, Delta::default());
        step.lp = Some(solution);
        return Ok(RuleOutcome::No { step });
    };
    let verdict = validate_hs_crown(g, &crown);
    if !verdict.is_valid() || !verdict.strict || crown.independent.is_empty() {
        return Err(Error::Internal(format!("LP crown failed validation: {verdict}")));
    }
    let (instance, delta) = apply_with_delta(inst, &crown)?;
    let mut step = TraceStep::new(Rule::LpCrown, inst, Some(&instance), delta);
    step.crown = Some(crown);
    step.lp = Some(solution);
    Ok(RuleOutcome::Applied { instance, step })
}

/// Runs one rule in isolation (no ordering assumptions are checked).
pub fn apply_rule(rule: Rule, inst: &Instance, last: Option<&TraceStep>) -> Result<RuleOutcome> {
    Ok(match rule {
        Rule::VertexDomination => rule1_vertex_domination(inst),
        Rule::EdgeDomination => rule2_edge_domination(inst),
        Rule::UnitEdge => rule3_unit_edge(inst),
        Rule::HighDegreeSubedge => rule4_high_degree_subedge(inst),
        Rule::WeaklyRelated => rule5_weakly_related_counting(inst, last),
        Rule::LpCrown => rule6_lp_crown(inst)?,
    })
}

/// Answers the cases no rule needs to look at.
pub fn quick_verdict(inst: &Instance) -> Option<Verdict> {
    if inst.k() < 0 || inst.graph().has_empty_edge() || (inst.m() > 0 && inst.k() <= 0) {
        Some(Verdict::No)
    } else if inst.m() == 0 {
        Some(Verdict::Yes)
    } else {
        None
    }
}

/// Observer payload for [`reduce_with`].
pub struct StepEvent<'a> {
    pub before: &'a Instance,
    /// `None` when the step ended in a "no" verdict.
    pub after: Option<&'a Instance>,
    pub step: &'a TraceStep,
}

#[derive(Clone, Debug)]
pub struct Reduced {
    /// The kernel when `trace.verdict` is `Undecided`, otherwise the instance
    /// the verdict was reached on.
    pub instance: Instance,
    pub trace: ReductionTrace,
}

/// Pass ceiling derived from the per-rule application counts.
pub fn iteration_ceiling(inst: &Instance) -> usize {
    let (n, m) = (inst.n(), inst.m());
    2 * (n + m) + n + 2 * m + 4
}

pub fn reduce(inst: Instance) -> Result<Reduced> {
    reduce_with(inst, |_| {})
}

/// Applies the lowest-numbered applicable rule until a verdict is reached or
/// nothing applies. On a kernel exit `|V| ≤ (2d−2)k^{d−1} + k`.
pub fn reduce_with(inst: Instance, mut observe: impl FnMut(&StepEvent<'_>)) -> Result<Reduced> {
    let ceiling = iteration_ceiling(&inst);
    let mut current = inst;
    let mut steps: Vec<TraceStep> = Vec::new();
    loop {
        if let Some(verdict) = quick_verdict(&current) {
            return Ok(Reduced {
                instance: current,
                trace: ReductionTrace { steps, verdict },
            });
        }
        if steps.len() >= ceiling {
            return Err(Error::Internal(format!("no verdict after {ceiling} rule applications")));
        }
        let mut next = None;
        for rule in Rule::ALL {
            let outcome = apply_rule(rule, &current, steps.last())?;
            if outcome.is_applicable() {
                next = Some(outcome);
                break;
            }
        }
        match next {
            Some(RuleOutcome::Applied { instance, step }) => {
                observe(&StepEvent {
                    before: &current,
                    after: Some(&instance),
                    step: &step,
                });
                steps.push(step);
                current = instance;
            }
            Some(RuleOutcome::No { step }) => {
                observe(&StepEvent {
                    before: &current,
                    after: None,
                    step: &step,
                });
                steps.push(step);
                return Ok(Reduced {
                    instance: current,
                    trace: ReductionTrace {
                        steps,
                        verdict: Verdict::No,
                    },
                });
            }
            Some(RuleOutcome::NotApplicable) | None => {
                let bound = kernel_bound(current.d(), current.k());
                if current.n() as u128 > bound {
                    return Err(Error::Internal(format!(
                        "kernel has {} vertices, bound is {bound}",
                        current.n()
                    )));
                }
                return Ok(Reduced {
                    instance: current,
                    trace: ReductionTrace {
                        steps,
                        verdict: Verdict::Undecided,
                    },
                });
            }
        }
    }
}
