//! The star primitive and the greedy Union of Stars.

use crate::decomposition::{rat, simplify, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::term;

/// `¼·[−SB({c}) − SB(L) + SB({c} ∪ L) + K_n]`, the star with center `c` and
/// leaves `L`: three star-specific rows plus the all-ones row.
pub fn star_decomposition(center: usize, leaves: &VertexSet, n: usize) -> Result<Decomposition> {
    if center >= n {
        return Err(Error::PreconditionViolation(format!(
            "center {} outside 1..={n}",
            center + 1
        )));
    }
    leaves
        .check_within(n)
        .map_err(|e| Error::PreconditionViolation(e.to_string()))?;
    if leaves.is_empty() || leaves.contains(center) {
        return Err(Error::PreconditionViolation(
            "leaves must be nonempty and exclude the center".into(),
        ));
    }
    let with_center: Vec<usize> = std::iter::once(center)
        .chain(leaves.indices().iter().copied())
        .collect();
    let rows = vec![
        term(n, &[center], rat(-1, 4)),
        term(n, leaves.indices(), rat(-1, 4)),
        term(n, &with_center, rat(1, 4)),
        term(n, &[], rat(1, 4)),
    ];
    Decomposition::new(n, rows)
}

/// Stars chosen greedily by largest residual degree (ties: lowest label),
/// concatenated without simplification.
pub fn union_of_stars_raw(g: &Graph) -> Decomposition {
    let n = g.n();
    let mut residual: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(i, j)).collect())
        .collect();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut rows = Vec::new();
    while let Some(center) = (0..n)
        .filter(|&v| degree[v] > 0)
        .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)))
    {
        let leaves: Vec<usize> = (0..n).filter(|&u| residual[center][u]).collect();
        for &u in &leaves {
            residual[center][u] = false;
            residual[u][center] = false;
            degree[u] -= 1;
        }
        degree[center] = 0;
        let leaves = VertexSet::from_indices(leaves).expect("distinct");
        let star = star_decomposition(center, &leaves, n).expect("valid star");
        rows.extend_from_slice(star.rows());
    }
    Decomposition::new(n, rows).expect("rows have length n")
}

/// Union of Stars, simplified: at most `3n − 2` rows.
pub fn union_of_stars(g: &Graph) -> Decomposition {
    simplify(&union_of_stars_raw(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::clique_decomposition;
    use crate::decomposition::{gram, verify};
    use crate::graph::{generate_family, Family};

    fn star_graph(center: usize, leaves: &[usize], n: usize) -> Graph {
        let edges: Vec<_> = leaves.iter().map(|&l| (center, l)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn star_examples() {
        let leaves = VertexSet::from_indices([1, 2, 3]).unwrap();
        let d = star_decomposition(0, &leaves, 4).unwrap();
        assert!(verify(&star_graph(0, &[1, 2, 3], 4), &d).unwrap().feasible);

        let all = VertexSet::from_indices(1..6).unwrap();
        let d = star_decomposition(0, &all, 6).unwrap();
        assert!(
            verify(&star_graph(0, &[1, 2, 3, 4, 5], 6), &d)
                .unwrap()
                .feasible
        );

        assert!(star_decomposition(0, &VertexSet::empty(), 3).is_err());
        assert!(star_decomposition(1, &VertexSet::from_indices([1]).unwrap(), 3).is_err());
    }

    #[test]
    fn single_leaf_star_agrees_with_single_edge_clique() {
        for n in 2..=7 {
            let g = star_graph(0, &[1], n);
            let star = simplify(
                &star_decomposition(0, &VertexSet::from_indices([1]).unwrap(), n).unwrap(),
            );
            let clique = simplify(
                &clique_decomposition(&g, &VertexSet::from_indices([0, 1]).unwrap()).unwrap(),
            );
            assert!(verify(&g, &star).unwrap().feasible);
            let (a, b) = (gram(&star), gram(&clique));
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        assert_eq!(a[i][j], b[i][j]);
                    }
                }
            }
        }
    }

    #[test]
    fn every_star_shape_verifies() {
        for n in 2..=7usize {
            for center in 0..n {
                for bits in 1u32..(1 << n) {
                    if bits >> center & 1 == 1 {
                        continue;
                    }
                    let leaves: Vec<usize> = (0..n).filter(|v| bits >> v & 1 == 1).collect();
                    let d = star_decomposition(
                        center,
                        &VertexSet::from_indices(leaves.clone()).unwrap(),
                        n,
                    )
                    .unwrap();
                    assert!(
                        verify(&star_graph(center, &leaves, n), &d)
                            .unwrap()
                            .feasible
                    );
                }
            }
        }
    }

    #[test]
    fn union_of_stars_examples() {
        assert!(union_of_stars(&Graph::edgeless(5).unwrap()).is_empty());
        let k13 = star_graph(0, &[1, 2, 3], 4);
        assert_eq!(union_of_stars_raw(&k13).len(), 4);
        // On a spanning star SB(L) = SB({c}) and SB({c} ∪ L) = K_n, so
        // simplification merges the four rows into two.
        assert_eq!(union_of_stars(&k13).len(), 2);
        assert!(verify(&k13, &union_of_stars(&k13)).unwrap().feasible);
    }

    #[test]
    fn union_of_stars_bound_on_random_graphs() {
        for seed in 0..60u64 {
            let n = 2 + (seed % 19) as usize;
            let g = generate_family(&Family::ErdosRenyi { n, p: 0.5, seed }).unwrap();
            let d = union_of_stars(&g);
            assert!(verify(&g, &d).unwrap().feasible);
            assert!(d.len() <= 3 * n - 2);
            assert!(d.is_canonical());
        }
    }
}
