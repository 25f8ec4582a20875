//! Kernelization for d-Hitting Set.
//!
//! Given a hypergraph whose edges have at most `d ≥ 3` vertices and a budget
//! `k`, [`reduce`] applies six reduction rules until it either decides the
//! instance or leaves a kernel with at most `(2d−2)k^{d−1} + k` vertices. The
//! last rule finds crown decompositions from an exact LP optimum.
//!
//! ```
//! use hsk_core::{reduce, samples::small_crown_instance, Verdict};
//!
//! let reduced = reduce(small_crown_instance(1)).unwrap();
//! assert_eq!(reduced.trace.verdict, Verdict::Yes);
//! ```

pub mod cli;
pub mod crown;
pub mod error;
pub mod hypergraph;
pub mod lp;
pub mod matching;
pub mod oracle;
pub mod reductions;
pub mod samples;

pub use crown::{apply_hs_crown, find_strict_crown_from_independent_set, validate_hs_crown, CrownVerdict, HsCrown};
pub use error::{Error, Result};
pub use hypergraph::{normalize, subedges_of, Edge, Hypergraph, Instance, VertexId};
pub use lp::{
    build_shs_lp, extract_crown_candidates, solve_exact, CrownCandidates, ExactLpSolution, LpProblem, Rational,
};
pub use oracle::{
    check_equivalence, decide_brute_force, generate, generate_crown_rich, min_hitting_set, CrownRichSpec, GenSpec,
    Oracle,
};
pub use reductions::{
    kernel_bound, reduce, reduce_with, Reduced, ReductionTrace, Rule, RuleOutcome, TraceStep, Verdict,
};
