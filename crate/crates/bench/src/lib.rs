//! Fixed inputs shared by the benchmarks.

use std::sync::Arc;

use flipcount::generators::{gen_convex, gen_double_chain, gen_random};
use flipcount::PointSet;

/// Named point sets of increasing difficulty for the enumeration benchmarks.
pub fn fixtures() -> Vec<(String, Arc<PointSet>)> {
    vec![
        ("convex-8".into(), Arc::new(gen_convex(8).unwrap())),
        ("double-chain-8".into(), Arc::new(gen_double_chain(4).unwrap())),
        ("random-8".into(), Arc::new(gen_random(8, 42).unwrap())),
    ]
}
