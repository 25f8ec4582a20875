//! The crown-seeking LP and an exact rational simplex for it.
//!
//! ```text
//! minimize   Σ_v x_v
//! subject to Σ_{v∈e} x_v ≥ |e| − 1   for every edge e
//!            0 ≤ x_v ≤ 1
//! ```
//!
//! The solver works on the complemented variables `y_v = 1 − x_v`, which turns
//! the model into the packing LP `max Σ y` with `Σ_{v∈e} y_v ≤ 1` and
//! `y_v ≤ 1`. The origin is then a feasible basis, so no phase-one problem is
//! needed. Arithmetic is exact; zero and one are compared with `==`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, VertexId};

pub type Rational = BigRational;

/// `Σ_{v∈vars} x_v ≥ lower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpConstraint {
    pub vars: Vec<usize>,
    pub lower: i64,
}

/// Minimize `Σ x` over the box `[0,1]^n` subject to covering constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub variables: usize,
    pub constraints: Vec<LpConstraint>,
}

pub fn build_shs_lp(h: &Hypergraph) -> LpProblem {
    LpProblem {
        variables: h.n(),
        constraints: h
            .edges()
            .iter()
            .map(|e| LpConstraint {
                vars: e.vertices().to_vec(),
                lower: e.len() as i64 - 1,
            })
            .collect(),
    }
}

impl LpProblem {
    /// Human-readable listing, one constraint per line.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        let all: Vec<String> = (0..self.variables).map(|v| format!("x{v}")).collect();
        out.push_str(&format!(
            "minimize: {}\n",
            if all.is_empty() { "0".into() } else { all.join(" + ") }
        ));
        for (i, c) in self.constraints.iter().enumerate() {
            let lhs: Vec<String> = c.vars.iter().map(|v| format!("x{v}")).collect();
            let lhs = if lhs.is_empty() {
                "0".to_owned()
            } else {
                lhs.join(" + ")
            };
            out.push_str(&format!("c{i}: {lhs} >= {}\n", c.lower));
        }
        out.push_str(&format!("bounds: 0 <= x <= 1 ({} variables)\n", self.variables));
        out
    }

    /// Exact feasibility check of an assignment.
    pub fn is_feasible(&self, values: &[Rational]) -> bool {
        values.len() == self.variables
            && values.iter().all(|x| !x.is_negative() && *x <= Rational::one())
            && self.constraints.iter().all(|c| {
                let sum: Rational = c.vars.iter().map(|&v| values[v].clone()).sum();
                sum >= Rational::from_integer(c.lower.into())
            })
    }
}

/// A basic variable of the final simplex tableau.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicVar {
    /// Complemented vertex variable `y_v = 1 − x_v`.
    Vertex(usize),
    /// Slack of tableau row `r`.
    Slack(usize),
}

impl fmt::Display for BasicVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicVar::Vertex(v) => write!(f, "y{v}"),
            BasicVar::Slack(r) => write!(f, "s{r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactLpSolution {
    pub values: Vec<Rational>,
    pub objective: Rational,
    /// Final basis, one entry per tableau row. At termination every reduced
    /// cost is nonpositive in the complemented maximization, which
    /// certifies optimality.
    pub basis: Vec<BasicVar>,
    pub pivots: usize,
}

impl ExactLpSolution {
    pub fn value(&self, v: VertexId) -> &Rational {
        &self.values[v]
    }
}

/// Solver backend boundary.
pub trait LpBackend {
    fn solve(&self, problem: &LpProblem) -> Result<ExactLpSolution>;
}

/// Dense-tableau primal simplex with Bland's rule.
#[derive(Clone, Copy, Debug, Default)]
pub struct DenseSimplex;

pub fn solve_exact(problem: &LpProblem) -> Result<ExactLpSolution> {
    DenseSimplex.solve(problem)
}

impl LpBackend for DenseSimplex {
    fn solve(&self, p: &LpProblem) -> Result<ExactLpSolution> {
        let n = p.variables;
        let one = Rational::one();

        // Rows: Σ_{v∈c} y_v ≤ |c| − lower, then y_v ≤ 1 where no row implies it.
        let mut rows: Vec<(Vec<usize>, Rational)> = Vec::new();
        let mut bounded = vec![false; n];
        for c in &p.constraints {
            let mut vars = c.vars.clone();
            vars.sort_unstable();
            vars.dedup();
            if let Some(&v) = vars.iter().find(|&&v| v >= n) {
                return Err(Error::Contract(format!("constraint uses variable {v} >= {n}")));
            }
            let rhs = vars.len() as i64 - c.lower;
            if rhs < 0 {
                return Err(Error::Internal(format!(
                    "constraint {vars:?} >= {} is infeasible",
                    c.lower
                )));
            }
            if rhs <= 1 {
                for &v in &vars {
                    bounded[v] = true;
                }
            }
            rows.push((vars, Rational::from_integer(BigInt::from(rhs))));
        }
        for v in (0..n).filter(|&v| !bounded[v]) {
            rows.push((vec![v], one.clone()));
        }

        let r_count = rows.len();
        let cols = n + r_count;
        let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(r_count);
        let mut rhs: Vec<Rational> = Vec::with_capacity(r_count);
        for (r, (vars, b)) in rows.into_iter().enumerate() {
            let mut row = vec![Rational::zero(); cols];
            for v in vars {
                row[v] = one.clone();
            }
            row[n + r] = one.clone();
            tab.push(row);
            rhs.push(b);
        }
        let mut basis: Vec<usize> = (n..n + r_count).collect();
        let mut reduced: Vec<Rational> = (0..cols)
            .map(|j| if j < n { one.clone() } else { Rational::zero() })
            .collect();
        let mut pivots = 0usize;

        // Bland: lowest-index improving column.
        while let Some(q) = reduced.iter().position(|c| c.is_positive()) {
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..r_count {
                let a = &tab[r][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &rhs[r] / a;
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::Internal("complemented LP is unbounded".into()));
            };
            pivot(&mut tab, &mut rhs, &mut reduced, r, q);
            basis[r] = q;
            pivots += 1;
        }

        let mut y = vec![Rational::zero(); n];
        for (r, &b) in basis.iter().enumerate() {
            if b < n {
                y[b] = rhs[r].clone();
            }
        }
        let values: Vec<Rational> = y.into_iter().map(|yv| &one - yv).collect();
        let objective: Rational = values.iter().cloned().sum();
        if !p.is_feasible(&values) {
            return Err(Error::Internal("simplex returned an infeasible point".into()));
        }
        Ok(ExactLpSolution {
            values,
            objective,
            basis: basis
                .into_iter()
                .map(|b| {
                    if b < n {
                        BasicVar::Vertex(b)
                    } else {
                        BasicVar::Slack(b - n)
                    }
                })
                .collect(),
            pivots,
        })
    }
}

fn pivot(tab: &mut [Vec<Rational>], rhs: &mut [Rational], reduced: &mut [Rational], r: usize, q: usize) {
    let inv = tab[r][q].recip();
    for x in tab[r].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    rhs[r] *= &inv;
    let support: Vec<usize> = tab[r]
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, _)| j)
        .collect();
    let (before, rest) = tab.split_at_mut(r);
    let (prow, after) = rest.split_first_mut().expect("pivot row exists");
    let prhs = rhs[r].clone();
    for (i, row) in before
        .iter_mut()
        .enumerate()
        .chain(after.iter_mut().enumerate().map(|(i, row)| (i + r + 1, row)))
    {
        if row[q].is_zero() {
            continue;
        }
        let f = row[q].clone();
        for &j in &support {
            let delta = &f * &prow[j];
            row[j] -= delta;
        }
        rhs[i] -= &f * &prhs;
    }
    if !reduced[q].is_zero() {
        let f = reduced[q].clone();
        for &j in &support {
            let delta = &f * &prow[j];
            reduced[j] -= delta;
        }
    }
}

/// Vertices the LP pins to zero and one, and the subedges completing the
/// zero-valued vertices to edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrownCandidates {
    /// `A = {v : x_v = 0}`.
    pub zero: BTreeSet<VertexId>,
    /// `V_B = {v : x_v = 1}`.
    pub one: BTreeSet<VertexId>,
    /// `B = {e ∖ {x} : e ∈ E, x ∈ e ∩ A}`.
    pub subedges: BTreeSet<Edge>,
}

pub fn extract_crown_candidates(h: &Hypergraph, sol: &ExactLpSolution) -> Result<CrownCandidates> {
    if sol.values.len() != h.n() {
        return Err(Error::Contract(format!(
            "solution has {} values for {} vertices",
            sol.values.len(),
            h.n()
        )));
    }
    let zero: BTreeSet<VertexId> = (0..h.n()).filter(|&v| sol.values[v].is_zero()).collect();
    let one: BTreeSet<VertexId> = (0..h.n()).filter(|&v| sol.values[v].is_one()).collect();
    let mut subedges = BTreeSet::new();
    for e in h.edges() {
        for x in e.iter().filter(|x| zero.contains(x)) {
            let rest = e.without(x);
            if let Some(u) = rest.iter().find(|u| !one.contains(u)) {
                return Err(Error::Internal(format!(
                    "edge {e}: x{x} = 0 but x{u} = {} != 1",
                    sol.values[u]
                )));
            }
            subedges.insert(rest);
        }
    }
    Ok(CrownCandidates { zero, one, subedges })
}
