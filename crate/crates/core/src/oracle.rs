//! Ground truth for differential testing: an exact branching solver, a seeded
//! instance generator and an equivalence check.
//!
//! The generator draws from ChaCha8 seeded with `seed` (via
//! `SeedableRng::seed_from_u64`), so a seed reproduces the same instance on
//! every platform and build.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Instance, VertexId};

pub const DEFAULT_CEILING: usize = 25;

/// Environment variable overriding the oracle's vertex ceiling.
pub const CEILING_ENV: &str = "HSK_ORACLE_CEILING";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub ceiling: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            ceiling: DEFAULT_CEILING,
        }
    }
}

impl Oracle {
    pub fn new(ceiling: usize) -> Self {
        Oracle { ceiling }
    }

    /// Reads [`CEILING_ENV`], falling back to [`DEFAULT_CEILING`].
    pub fn from_env() -> Self {
        std::env::var(CEILING_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Oracle::new)
            .unwrap_or_default()
    }

    fn admit(&self, inst: &Instance) -> Result<()> {
        if inst.n() > self.ceiling {
            return Err(Error::OracleCeiling {
                n: inst.n(),
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    /// Is there a hitting set of size at most `k`?
    pub fn decide(&self, inst: &Instance) -> Result<bool> {
        self.admit(inst)?;
        if inst.k() < 0 {
            return Ok(false);
        }
        let edges: Vec<&Edge> = inst.edges().iter().collect();
        let mut chosen = Vec::new();
        Ok(branch(&edges, inst.k() as usize, &mut chosen))
    }

    /// Minimum hitting set (ignoring `k`); `None` when an empty edge makes the
    /// instance unhittable.
    pub fn min_hitting_set(&self, inst: &Instance) -> Result<Option<Vec<VertexId>>> {
        self.admit(inst)?;
        if inst.graph().has_empty_edge() {
            return Ok(None);
        }
        let edges: Vec<&Edge> = inst.edges().iter().collect();
        for budget in 0..=inst.n() {
            let mut chosen = Vec::new();
            if branch(&edges, budget, &mut chosen) {
                chosen.sort_unstable();
                return Ok(Some(chosen));
            }
        }
        unreachable!("the full vertex set hits every nonempty edge")
    }

    pub fn check_equivalence(&self, a: &Instance, b: &Instance) -> Result<bool> {
        Ok(self.decide(a)? == self.decide(b)?)
    }
}

/// Branch on the vertices of the first edge `chosen` does not hit.
fn branch(edges: &[&Edge], budget: usize, chosen: &mut Vec<VertexId>) -> bool {
    let Some(unhit) = edges.iter().find(|e| !e.iter().any(|v| chosen.contains(&v))) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for v in unhit.iter() {
        chosen.push(v);
        if branch(edges, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

pub fn decide_brute_force(inst: &Instance) -> Result<bool> {
    Oracle::from_env().decide(inst)
}

pub fn min_hitting_set(inst: &Instance) -> Result<Option<Vec<VertexId>>> {
    Oracle::from_env().min_hitting_set(inst)
}

pub fn check_equivalence(a: &Instance, b: &Instance) -> Result<bool> {
    Oracle::from_env().check_equivalence(a, b)
}

/// Parameters of a generated instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub k: i64,
    /// Plant a hitting set of this size so the instance is a yes-instance
    /// for every `k` at least this large.
    pub planted: Option<usize>,
}

impl GenSpec {
    pub fn header_comment(&self) -> String {
        let plant = self.planted.map(|p| p.to_string()).unwrap_or_else(|| "none".into());
        format!(
            "generated seed={} n={} m={} d={} k={} plant={plant}",
            self.seed, self.n, self.m, self.d, self.k
        )
    }
}

/// Draws `m` distinct edges with sizes uniform in `2..=d`.
pub fn generate(spec: &GenSpec) -> Result<Instance> {
    let GenSpec { n, m, d, .. } = *spec;
    if d < crate::hypergraph::MIN_D {
        return Err(Error::UnsupportedParameter(format!("d={d}; generator requires d >= 3")));
    }
    if n < 2 && m > 0 {
        return Err(Error::Generator(format!("n={n} is too small for edges of size >= 2")));
    }
    if spec.k < 0 {
        return Err(Error::Generator("k must be nonnegative".into()));
    }
    let max_size = d.min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let vertices: Vec<VertexId> = (0..n).collect();
    let planted: Vec<VertexId> = match spec.planted {
        Some(0) if m > 0 => return Err(Error::Generator("cannot plant an empty hitting set".into())),
        Some(p) if p > n => return Err(Error::Generator(format!("planted size {p} exceeds n={n}"))),
        Some(p) => vertices.choose_multiple(&mut rng, p).copied().collect(),
        None => Vec::new(),
    };

    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let max_attempts = 100 * m.max(1);
    let mut attempts = 0;
    while edges.len() < m {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::Generator(format!(
                "could not draw {m} distinct edges (got {}) from n={n}, d={d}",
                edges.len()
            )));
        }
        let size = rng.gen_range(2..=max_size);
        let edge = if planted.is_empty() {
            Edge::new(vertices.choose_multiple(&mut rng, size).copied())
        } else {
            let anchor = planted[rng.gen_range(0..planted.len())];
            let others: Vec<VertexId> = vertices.iter().copied().filter(|&v| v != anchor).collect();
            Edge::new(
                others
                    .choose_multiple(&mut rng, size - 1)
                    .copied()
                    .chain(std::iter::once(anchor)),
            )
        };
        edges.insert(edge);
    }
    Ok(Instance::from_edges(n, d, spec.k, edges)?.with_comments(vec![spec.header_comment()]))
}

/// Parameters of [`generate_crown_rich`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrownRichSpec {
    pub seed: u64,
    /// Total vertex count, at least `2d + 2`.
    pub n: usize,
    pub d: usize,
    pub k: i64,
}

/// Instances shaped to survive the cheap rules and reach the LP crown rule.
///
/// A small core carries a few templates: a `d`-set `T` together with some of
/// its `(d−1)`-subsets. Every remaining "petal" vertex `x` picks a template and
/// gets the edges `x ∪ Y` for the template's subsets. Petals sharing a
/// template form a crown over the template's subsets. Random core edges and
/// occasional complete `d`-uniform blocks on `d+1` vertices (which force
/// fractional LP values) add noise.
pub fn generate_crown_rich(spec: &CrownRichSpec) -> Result<Instance> {
    let CrownRichSpec { n, d, k, .. } = *spec;
    if d < crate::hypergraph::MIN_D {
        return Err(Error::UnsupportedParameter(format!("d={d}; generator requires d >= 3")));
    }
    if n < 2 * d + 2 {
        return Err(Error::Generator(format!("n={n} is below 2d+2={}", 2 * d + 2)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let mut next = 0usize;
    let complete_on = |vs: &[VertexId]| -> Vec<Edge> {
        (0..vs.len())
            .map(|skip| {
                vs.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect()
    };

    // Each block costs two hitting vertices, so blocks beyond k/2 make
    // no-instances that only the LP sees through.
    let max_blocks = (k.max(0) as usize / 2 + 1).min(2);
    for _ in 0..rng.gen_range(0..=max_blocks) {
        if n - next < 3 * d + 3 {
            break;
        }
        let block: Vec<VertexId> = (next..next + d + 1).collect();
        edges.extend(complete_on(&block));
        next += d + 1;
    }

    // Disjoint templates, so no core vertex sits in many weakly related edges.
    let room = (n - next) / 2;
    let template_count = rng.gen_range(1..=3usize).min(room / d).max(1);
    let core_size = template_count * d + rng.gen_range(0..=2usize).min(room - template_count * d);
    let mut core: Vec<VertexId> = (next..next + core_size).collect();
    next += core_size;
    core.shuffle(&mut rng);
    let mut templates: Vec<Vec<Edge>> = Vec::new();
    for t in core.chunks_exact(d).take(template_count) {
        let mut subsets = complete_on(t);
        if rng.gen_bool(0.2) {
            subsets.remove(rng.gen_range(0..subsets.len()));
        }
        templates.push(subsets);
    }
    for x in next..n {
        let template = &templates[rng.gen_range(0..templates.len())];
        for y in template {
            edges.insert(y.with(x));
        }
    }
    for _ in 0..rng.gen_range(0..=2usize) {
        let size = rng.gen_range(2..=d);
        edges.insert(core.choose_multiple(&mut rng, size).copied().collect());
    }
    let comment = format!("crown-rich seed={} n={n} d={d} k={k}", spec.seed);
    Ok(Instance::from_edges(n, d, k, edges)?.with_comments(vec![comment]))
}

/// SplitMix64 step; derives independent per-trial seeds from one base seed.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
