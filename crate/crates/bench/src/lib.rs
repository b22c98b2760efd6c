//! Shared inputs for the criterion benchmarks.

use graph_coupling::bench::default_suite;
use graph_coupling::Graph;

/// Default-suite graphs with `graph_id`, filtered by vertex count.
pub fn suite_graphs(keep: impl Fn(usize) -> bool) -> Vec<(String, Graph)> {
    default_suite()
        .into_iter()
        .filter(|inst| keep(inst.n))
        .map(|inst| {
            let g = inst.graph().expect("suite instances generate");
            (inst.graph_id, g)
        })
        .collect()
}
