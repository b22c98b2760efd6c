//! Double stars and the greedy Union of Double-Stars.
//!
//! A double star has two non-adjacent centers `v1`, `v2`; `v1` is joined to
//! `V3 ∪ V4` and `v2` to `V4 ∪ V5`. Its six-row decomposition expands the
//! prototype on six vertices by column classes: every vertex of `V_i` gets
//! column `i` of the prototype's `P`. The weights sum to zero, so vertices in
//! the same class stay uncoupled.

use crate::decomposition::{rat, simplify, Decomposition, Rational};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::signrow::SignRow;

use super::families::clique_decomposition_min;
use super::stars::star_decomposition;

/// Rows of the prototype's `P`; column `c` belongs to class `c` (v1, v2,
/// V3, V4, V5, V6).
const PROTOTYPE_P: [[i8; 6]; 6] = [
    [1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, -1, -1],
    [1, 1, 1, -1, -1, 1],
    [1, 1, -1, -1, -1, -1],
    [1, -1, 1, -1, -1, 1],
    [1, -1, -1, -1, 1, 1],
];

const PROTOTYPE_W: [i64; 6] = [1, 1, -1, -1, 1, -1];

fn prototype_weight(r: usize) -> Rational {
    rat(PROTOTYPE_W[r], 4)
}

/// The prototype graph (edges 1–3, 1–4, 2–4, 2–5; vertex 6 isolated) and its
/// optimal six-row decomposition.
pub fn prototype() -> (Graph, Decomposition) {
    let g = Graph::from_edges(6, &[(0, 2), (0, 3), (1, 3), (1, 4)]).expect("valid edges");
    let rows = PROTOTYPE_P
        .iter()
        .enumerate()
        .map(|(r, p)| (SignRow::from_signs(p).expect("±1"), prototype_weight(r)))
        .collect();
    (g, Decomposition::new(6, rows).expect("length 6"))
}

/// Partition of the vertex set induced by a center pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleStarClasses {
    pub n: usize,
    pub v1: usize,
    pub v2: usize,
    /// Neighbors of `v1` only.
    pub v3: VertexSet,
    /// Common neighbors.
    pub v4: VertexSet,
    /// Neighbors of `v2` only.
    pub v5: VertexSet,
    /// Everything else.
    pub v6: VertexSet,
}

impl DoubleStarClasses {
    /// Classes of the double star of `g` centered at non-adjacent `v1`, `v2`.
    pub fn from_graph(g: &Graph, v1: usize, v2: usize) -> Result<Self> {
        let n = g.n();
        if v1 >= n || v2 >= n || v1 == v2 || g.has_edge(v1, v2) {
            return Err(Error::PreconditionViolation(
                "centers must be two distinct non-adjacent vertices".into(),
            ));
        }
        let (mut v3, mut v4, mut v5, mut v6) = (vec![], vec![], vec![], vec![]);
        for u in (0..n).filter(|&u| u != v1 && u != v2) {
            match (g.has_edge(v1, u), g.has_edge(v2, u)) {
                (true, false) => v3.push(u),
                (true, true) => v4.push(u),
                (false, true) => v5.push(u),
                (false, false) => v6.push(u),
            }
        }
        let set = |v| VertexSet::from_indices(v).expect("distinct");
        Ok(Self {
            n,
            v1,
            v2,
            v3: set(v3),
            v4: set(v4),
            v5: set(v5),
            v6: set(v6),
        })
    }

    /// Prototype column (0..6) of every vertex.
    fn column_of(&self) -> Result<Vec<usize>> {
        let mut col = vec![usize::MAX; self.n];
        let mut assign = |v: usize, c: usize| -> Result<()> {
            if v >= self.n || col[v] != usize::MAX {
                return Err(Error::PreconditionViolation(format!(
                    "vertex {} is out of range or in two classes",
                    v + 1
                )));
            }
            col[v] = c;
            Ok(())
        };
        assign(self.v1, 0)?;
        assign(self.v2, 1)?;
        for (c, set) in [&self.v3, &self.v4, &self.v5, &self.v6]
            .into_iter()
            .enumerate()
        {
            for &v in set.indices() {
                assign(v, c + 2)?;
            }
        }
        if let Some(v) = col.iter().position(|&c| c == usize::MAX) {
            return Err(Error::PreconditionViolation(format!(
                "vertex {} is in no class",
                v + 1
            )));
        }
        Ok(col)
    }

    /// Edges of the double star, 0-indexed with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let ord = |a: usize, b: usize| (a.min(b), a.max(b));
        let mut e: Vec<_> = self.v3.indices().iter().map(|&u| ord(self.v1, u)).collect();
        for &u in self.v4.indices() {
            e.push(ord(self.v1, u));
            e.push(ord(self.v2, u));
        }
        e.extend(self.v5.indices().iter().map(|&u| ord(self.v2, u)));
        e.sort_unstable();
        e
    }
}

/// Six rows implementing the double star described by `classes`.
pub fn double_star_decomposition(classes: &DoubleStarClasses) -> Result<Decomposition> {
    let col = classes.column_of()?;
    let rows = PROTOTYPE_P
        .iter()
        .enumerate()
        .map(|(r, p)| {
            let signs: Vec<i8> = col.iter().map(|&c| p[c]).collect();
            (
                SignRow::from_signs(&signs).expect("±1"),
                prototype_weight(r),
            )
        })
        .collect();
    Decomposition::new(classes.n, rows)
}

/// Union of Double-Stars, simplified: at most `2.5n + 2` rows.
///
/// While the candidate set `S` holds a non-adjacent pair, the pair removing
/// the most residual edges (ties: lexicographically smallest) becomes a
/// double star; its edges leave the residual graph and both centers leave
/// `S`. A pair with one idle center is emitted as a plain star. The loop
/// stops early once no residual edge is left; otherwise the residual graph
/// ends as a clique on `S`, handled by [`clique_decomposition_min`].
pub fn union_of_double_stars(g: &Graph) -> Decomposition {
    let n = g.n();
    let mut residual = g.clone();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut in_s = vec![true; n];
    let mut rows = Vec::new();
    let mut remaining = g.edge_count();
    while remaining > 0 {
        let mut best: Option<(usize, usize, usize)> = None;
        for a in (0..n).filter(|&a| in_s[a]) {
            for b in (a + 1..n).filter(|&b| in_s[b] && !residual.has_edge(a, b)) {
                let score = degree[a] + degree[b];
                if best.is_none_or(|(s, _, _)| score > s) {
                    best = Some((score, a, b));
                }
            }
        }
        let Some((_, v1, v2)) = best else { break };
        let classes =
            DoubleStarClasses::from_graph(&residual, v1, v2).expect("non-adjacent centers");
        let template =
            || double_star_decomposition(&classes).expect("classes partition the vertices");
        // With one center idle the double star is a plain star. The star
        // primitive and the template then cover the same edges; keep
        // whichever merges into fewer rows with those emitted so far.
        let candidates = match (degree[v1], degree[v2]) {
            (0, 0) => vec![],
            (0, _) => vec![
                star_decomposition(v2, &classes.v5, n).expect("v2 has leaves"),
                template(),
            ],
            (_, 0) => vec![
                star_decomposition(v1, &classes.v3, n).expect("v1 has leaves"),
                template(),
            ],
            _ => vec![template()],
        };
        let merged_len = |d: &Decomposition| {
            let all: Vec<_> = rows.iter().chain(d.rows()).cloned().collect();
            simplify(&Decomposition::new(n, all).expect("rows have length n")).len()
        };
        if let Some(pick) = candidates.into_iter().min_by_key(merged_len) {
            rows.extend_from_slice(pick.rows());
        }
        let removed = classes.edges();
        remaining -= removed.len();
        for &(u, v) in &removed {
            degree[u] -= 1;
            degree[v] -= 1;
        }
        residual = Graph::from_fn(n, |i, j| {
            residual.has_edge(i, j) && removed.binary_search(&(i, j)).is_err()
        })
        .expect("n is positive");
        in_s[v1] = false;
        in_s[v2] = false;
    }
    let s = VertexSet::from_indices((0..n).filter(|&v| in_s[v])).expect("distinct");
    if remaining > 0 {
        let clique = clique_decomposition_min(&residual, &s).expect("residual is a clique on S");
        rows.extend_from_slice(clique.rows());
    }
    simplify(&Decomposition::new(n, rows).expect("rows have length n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{gram, verify};
    use crate::graph::{generate_family, Family};
    use num_traits::Zero;

    #[test]
    fn prototype_is_feasible_with_zero_trace() {
        let (g, d) = prototype();
        assert!(verify(&g, &d).unwrap().feasible);
        assert!(d.trace().is_zero());
        let m = gram(&d);
        assert!((0..6).all(|i| m[i][i].is_zero()));
    }

    #[test]
    fn prototype_expansion_is_the_prototype() {
        let (g, d) = prototype();
        let classes = DoubleStarClasses::from_graph(&g, 0, 1).unwrap();
        assert_eq!(double_star_decomposition(&classes).unwrap(), d);
        assert_eq!(classes.edges(), vec![(0, 2), (0, 3), (1, 3), (1, 4)]);
    }

    #[test]
    fn degenerate_class_shapes() {
        // V4 = V6 = ∅: two disjoint stars.
        let g = Graph::from_edges(6, &[(0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let c = DoubleStarClasses::from_graph(&g, 0, 1).unwrap();
        assert!(c.v4.is_empty() && c.v6.is_empty());
        assert!(
            verify(&g, &double_star_decomposition(&c).unwrap())
                .unwrap()
                .feasible
        );
        // V3 = V5 = ∅: all leaves shared.
        let g = Graph::from_edges(5, &[(0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        let c = DoubleStarClasses::from_graph(&g, 0, 1).unwrap();
        assert!(c.v3.is_empty() && c.v5.is_empty());
        assert!(
            verify(&g, &double_star_decomposition(&c).unwrap())
                .unwrap()
                .feasible
        );
        // Adjacent centers are rejected.
        assert!(DoubleStarClasses::from_graph(&g, 0, 2).is_err());
    }

    #[test]
    fn every_double_star_on_six_vertices_verifies() {
        // Each non-center vertex picks one of the four classes.
        for code in 0..4usize.pow(4) {
            let mut edges = Vec::new();
            for u in 2..6 {
                match code / 4usize.pow(u as u32 - 2) % 4 {
                    0 => edges.push((0, u)),
                    1 => edges.extend([(0, u), (1, u)]),
                    2 => edges.push((1, u)),
                    _ => {}
                }
            }
            let g = Graph::from_edges(6, &edges).unwrap();
            let c = DoubleStarClasses::from_graph(&g, 0, 1).unwrap();
            assert!(
                verify(&g, &double_star_decomposition(&c).unwrap())
                    .unwrap()
                    .feasible
            );
        }
    }

    #[test]
    fn union_examples() {
        assert!(union_of_double_stars(&Graph::edgeless(4).unwrap()).is_empty());
        let (g, _) = prototype();
        let d = union_of_double_stars(&g);
        assert!(verify(&g, &d).unwrap().feasible);
        assert_eq!(d.len(), 6);
        let k6 = generate_family(&Family::Complete { q: 6, n: 6 }).unwrap();
        assert_eq!(union_of_double_stars(&k6).len(), 1);
    }

    #[test]
    fn union_bounds_on_random_graphs() {
        for seed in 0..80u64 {
            let n = 2 + (seed % 19) as usize;
            let p = (seed % 9) as f64 / 8.0;
            let g = generate_family(&Family::ErdosRenyi { n, p, seed }).unwrap();
            let d = union_of_double_stars(&g);
            assert!(verify(&g, &d).unwrap().feasible, "seed {seed}");
            assert!(2 * d.len() <= 5 * n + 4, "seed {seed}: {} rows", d.len());
        }
    }

    #[test]
    fn lone_star_costs_no_more_than_the_star_primitive() {
        // K_{1,3} plus isolated vertices: the only pair with a positive score
        // has one idle center.
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let d = union_of_double_stars(&g);
        assert!(verify(&g, &d).unwrap().feasible);
        assert!(d.len() <= crate::constructions::union_of_stars(&g).len());
        // A lone edge next to a triangle leaves a residual clique behind.
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(verify(&g, &union_of_double_stars(&g)).unwrap().feasible);
    }
}
