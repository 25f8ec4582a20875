use serde::Serialize;

use crate::hypergraph::Instance;
use crate::reductions::{kernel_bound, Reduced, Rule, Verdict};

/// Summary of one `kernelize` run, written as a single flat JSON object.
///
/// Keys are stable: `verdict` is `"kernel"`, `"yes"` or `"no"`; `bound` is
/// `(2d−2)k^{d−1}+k` for the final `k`; `rule1`..`rule6` count applications.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelReport {
    pub verdict: &'static str,
    pub original_n: usize,
    pub original_m: usize,
    pub original_k: i64,
    pub k_override: Option<i64>,
    pub d: usize,
    pub final_n: usize,
    pub final_m: usize,
    pub final_k: i64,
    pub bound: u128,
    pub rule1: usize,
    pub rule2: usize,
    pub rule3: usize,
    pub rule4: usize,
    pub rule5: usize,
    pub rule6: usize,
    pub steps: usize,
    pub wall_time_ms: f64,
    /// External names of the kernel's vertices, in kernel id order.
    pub kernel_labels: Vec<String>,
}

impl KernelReport {
    pub fn new(original: &Instance, k_override: Option<i64>, reduced: &Reduced, wall_time_ms: f64) -> Self {
        let fin = &reduced.instance;
        let trace = &reduced.trace;
        let verdict = match trace.verdict {
            Verdict::Undecided => "kernel",
            Verdict::Yes => "yes",
            Verdict::No => "no",
        };
        KernelReport {
            verdict,
            original_n: original.n(),
            original_m: original.m(),
            original_k: original.k(),
            k_override,
            d: original.d(),
            final_n: fin.n(),
            final_m: fin.m(),
            final_k: fin.k(),
            bound: kernel_bound(fin.d(), fin.k()),
            rule1: trace.count(Rule::VertexDomination),
            rule2: trace.count(Rule::EdgeDomination),
            rule3: trace.count(Rule::UnitEdge),
            rule4: trace.count(Rule::HighDegreeSubedge),
            rule5: trace.count(Rule::WeaklyRelated),
            rule6: trace.count(Rule::LpCrown),
            steps: trace.steps.len(),
            wall_time_ms,
            kernel_labels: if trace.verdict == Verdict::Undecided {
                fin.labels().to_vec()
            } else {
                Vec::new()
            },
        }
    }
}
