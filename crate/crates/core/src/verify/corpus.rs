//! Small random instances on which the colouring is always defined.

use proptest::prelude::*;

use crate::generators::{random_tetrahedra, random_threegraph, tetrahedral_core};
use crate::hypergraph::ThreeGraph;

pub(crate) fn k4_union(n: usize, quads: &[[usize; 4]]) -> ThreeGraph {
    let mut b = ThreeGraph::builder(n).unwrap();
    for &[a, bb, c, d] in quads {
        for t in [[a, bb, c], [a, bb, d], [a, c, d], [bb, c, d]] {
            b.insert(t).unwrap();
        }
    }
    b.build().into()
}

pub(crate) fn arb_colourable(max_n: usize) -> impl Strategy<Value = ThreeGraph> {
    prop_oneof![
        (5usize..=max_n, 1usize..8, any::<u64>()).prop_map(|(n, k, s)| random_tetrahedra(n, k, s).unwrap()),
        (5usize..=max_n, 0.3f64..0.95, any::<u64>())
            .prop_map(|(n, p, s)| tetrahedral_core(&random_threegraph(n, p, s).unwrap())),
    ]
}
