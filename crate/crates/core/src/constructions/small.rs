//! Exact recognition of graphs with `gc ≤ 2`.

use crate::decomposition::{int, rat, Decomposition};
use crate::graph::Graph;
use crate::signrow::SignRow;

/// Returns an optimal decomposition when `gc(g) ≤ 2`, otherwise `None`.
///
/// * edgeless: 0 rows
/// * complete: the all-ones row with weight 1
/// * `K_a ∪ K_b`: `½·r_{K_a} + ½·1`
/// * `K_{a,b}`: `−½·r_{side} + ½·1`
pub fn detect_small_gc(g: &Graph) -> Option<Decomposition> {
    let n = g.n();
    if g.is_edgeless() {
        return Some(Decomposition::empty(n));
    }
    if g.is_complete() {
        return Some(Decomposition::from_bicliques(n, &[(&[], int(1))]));
    }
    let two = |side: Vec<usize>, w| {
        let mut d = Decomposition::empty(n);
        d.push(SignRow::negative_on(n, &side).canonical(), w);
        d.push(SignRow::all_ones(n), rat(1, 2));
        d
    };
    let comps = g.components();
    if comps.len() == 2 && comps.iter().all(|c| g.is_clique(c)) {
        return Some(two(comps[1].clone(), rat(1, 2)));
    }
    complete_bipartition(g).map(|side| two(side, rat(-1, 2)))
}

/// The side not containing vertex 0 when `g` is a spanning `K_{a,b}`.
fn complete_bipartition(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let other: Vec<usize> = g.neighbors(0).collect();
    let mut in_other = vec![false; n];
    for &v in &other {
        in_other[v] = true;
    }
    if other.is_empty() {
        return None;
    }
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(i, j) != (in_other[i] != in_other[j]) {
                return None;
            }
        }
    }
    Some(other)
}

/// Lower bound from the spectral bound and the exact characterisation of
/// `gc ∈ {0, 1, 2}` together with the fact that no graph has `gc = 3`.
pub fn structural_lower_bound(g: &Graph, spectral: usize) -> usize {
    if g.is_edgeless() {
        return 0;
    }
    let structural = if g.is_complete() {
        1
    } else if detect_small_gc(g).is_some() {
        2
    } else {
        4
    };
    structural.max(spectral)
}
