//! Small fixed instances used in docs, tests and the bindings.

use std::collections::{BTreeMap, BTreeSet};

use crate::crown::HsCrown;
use crate::hypergraph::{normalize, Edge, Instance};

/// Five vertices `v1..v5` (ids 0..4) and the four 3-edges
/// `{v1,v2,v4} {v1,v2,v5} {v2,v3,v4} {v2,v3,v5}`.
pub fn small_crown_instance(k: i64) -> Instance {
    normalize(
        &["v1", "v2", "v3", "v4", "v5"],
        &[
            vec!["v1", "v2", "v4"],
            vec!["v1", "v2", "v5"],
            vec!["v2", "v3", "v4"],
            vec!["v2", "v3", "v5"],
        ],
        3,
        k,
    )
    .expect("fixed instance is well formed")
}

/// The crown `I = {v4, v5}`, `J = {{v1,v2}, {v2,v3}}` of
/// [`small_crown_instance`], with `{v1,v2} -> v4` and `{v2,v3} -> v5`.
pub fn small_crown() -> HsCrown {
    let j1 = Edge::new([0, 1]);
    let j2 = Edge::new([1, 2]);
    HsCrown {
        independent: BTreeSet::from([3, 4]),
        subedges: BTreeSet::from([j1.clone(), j2.clone()]),
        mapping: BTreeMap::from([(j1, 3), (j2, 4)]),
    }
}
