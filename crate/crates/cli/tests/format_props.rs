//! Property tests for the text graph format.

use proptest::prelude::*;

use homkit_cli::fmt::{parse_graph, serialize_graph};
use homkit_core::Graph;

fn graphs() -> impl Strategy<Value = Graph> {
    (1u32..8).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 0..=(n as usize * n as usize))
            .prop_map(move |arcs| Graph::new(n, arcs.into_iter().collect()).unwrap())
    })
}

proptest! {
    #[test]
    fn parse_inverts_serialize(g in graphs()) {
        let text = serialize_graph(&g);
        prop_assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn serialization_is_a_fixed_point(g in graphs()) {
        let once = serialize_graph(&g);
        let twice = serialize_graph(&parse_graph(&once).unwrap());
        prop_assert_eq!(once, twice);
    }
}
