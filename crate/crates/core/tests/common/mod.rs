//! Reference implementations the integration suites check the library
//! against. Each is deliberately naive and shares no code with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use hsk_core::lp::LpProblem;
use hsk_core::{Edge, ExactLpSolution, Hypergraph, Instance, Rational};

pub type Q = Ratio<i128>;

/// Decides by trying every vertex subset of size at most `k`.
pub fn decide_by_subsets(inst: &Instance) -> bool {
    assert!(inst.n() <= 24, "subset oracle is for small instances");
    if inst.k() < 0 {
        return false;
    }
    let masks: Vec<u32> = inst
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u32, |m, v| m | 1 << v))
        .collect();
    let k = inst.k() as u32;
    (0u32..1 << inst.n())
        .filter(|s| s.count_ones() <= k)
        .any(|s| masks.iter().all(|&e| e & s != 0))
}

/// Maximum matching size by branching on the lowest free vertex.
pub fn max_matching_exhaustive(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    fn go(adj: &[u32], free: u32) -> usize {
        if free == 0 {
            return 0;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut best = go(adj, rest);
        let mut cand = adj[v] & rest;
        while cand != 0 {
            let u = cand.trailing_zeros();
            cand &= cand - 1;
            best = best.max(1 + go(adj, rest & !(1 << u)));
        }
        best
    }
    go(&adj, if n == 32 { u32::MAX } else { (1u32 << n) - 1 })
}

/// Random simple graph on `n` vertices with each pair present with
/// probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().filter(|_| rng.gen_bool(p)).collect()
}

pub fn petersen() -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    e
}

/// Minimum of `Σx` over the LP polytope, by enumerating every basic
/// solution: choose `n` constraints (covering rows and box faces), solve them
/// as equalities, keep the feasible points.
pub fn lp_min_by_vertices(p: &LpProblem) -> Q {
    let n = p.variables;
    // Rows `a·x ≥ b`.
    let mut rows: Vec<(Vec<Q>, Q)> = Vec::new();
    for c in &p.constraints {
        let mut a = vec![Q::zero(); n];
        for &v in &c.vars {
            a[v] += Q::one();
        }
        rows.push((a, Q::from_integer(c.lower as i128)));
    }
    for v in 0..n {
        let mut lo = vec![Q::zero(); n];
        lo[v] = Q::one();
        rows.push((lo, Q::zero()));
        let mut hi = vec![Q::zero(); n];
        hi[v] = -Q::one();
        rows.push((hi, -Q::one()));
    }
    let feasible = |x: &[Q]| {
        rows.iter()
            .all(|(a, b)| a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<Q>() >= *b)
    };
    let mut best: Option<Q> = None;
    for chosen in (0..rows.len()).combinations(n) {
        let Some(x) = solve_square(chosen.iter().map(|&i| &rows[i]).collect()) else {
            continue;
        };
        if feasible(&x) {
            let obj: Q = x.iter().sum();
            if best.as_ref().is_none_or(|b| obj < *b) {
                best = Some(obj);
            }
        }
    }
    best.expect("the all-ones point is a vertex of a nonempty polytope")
}

/// Gaussian elimination on `a·x = b`; `None` when singular.
fn solve_square(rows: Vec<&(Vec<Q>, Q)>) -> Option<Vec<Q>> {
    let n = rows.len();
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|(a, b)| a.iter().cloned().chain(std::iter::once(*b)).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col];
        for x in &mut m[col][col..] {
            *x /= p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            let f = row[col];
            if r != col && !f.is_zero() {
                for (x, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= pv * f;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

pub fn to_q(x: &Rational) -> Q {
    Q::new(x.numer().to_i128().unwrap(), x.denom().to_i128().unwrap())
}

/// Checks the exactness properties of an LP optimum for `h`: feasibility,
/// per-edge deficit at most one, the forcing property, and that the
/// objective is the sum of the values.
pub fn audit_lp(h: &Hypergraph, sol: &ExactLpSolution) -> Result<(), String> {
    let one = Rational::one();
    let zero = Rational::zero();
    if sol.values.len() != h.n() {
        return Err(format!("{} values for {} vertices", sol.values.len(), h.n()));
    }
    if let Some((v, x)) = sol.values.iter().enumerate().find(|(_, x)| **x < zero || **x > one) {
        return Err(format!("x{v}={x} outside [0,1]"));
    }
    for e in h.edges() {
        let deficit: Rational = e.iter().map(|v| &one - &sol.values[v]).sum();
        if deficit > one {
            return Err(format!("edge {e} has deficit {deficit}"));
        }
        for v in e.iter().filter(|&v| sol.values[v].is_zero()) {
            if let Some(w) = e.iter().find(|&w| w != v && sol.values[w] != one) {
                return Err(format!("x{v}=0 on edge {e} but x{w}={}", sol.values[w]));
            }
        }
    }
    let sum: Rational = sol.values.iter().sum();
    if sum != sol.objective {
        return Err(format!("objective {} but values sum to {sum}", sol.objective));
    }
    Ok(())
}

/// Random hypergraph with `m` distinct edges of size `lo..=hi` over `n`
/// vertices.
pub fn random_edges(rng: &mut impl Rng, n: usize, m: usize, lo: usize, hi: usize) -> BTreeSet<Edge> {
    let vertices: Vec<usize> = (0..n).collect();
    let mut edges = BTreeSet::new();
    for _ in 0..20 * m {
        if edges.len() == m {
            break;
        }
        let size = rng.gen_range(lo..=hi.min(n));
        edges.insert(Edge::new(vertices.choose_multiple(rng, size).copied()));
    }
    edges
}
