//! Closed-form decompositions for cliques, disjoint cliques, perfect
//! matchings, cycles and paths.

use crate::decomposition::{int, rat, restrict, simplify, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::signrow::SignRow;

use super::hadamard::hadamard;
use super::term;

/// `−¼·Σ_{i∈Q} SB({i}) + ¼·SB(Q) + ((q−1)/4)·K_n`: the clique on `q_set`
/// with every other vertex isolated, in `q + 2` rows (not simplified).
pub fn clique_decomposition(g: &Graph, q_set: &VertexSet) -> Result<Decomposition> {
    let n = g.n();
    check_clique(g, q_set)?;
    let mut rows: Vec<_> = q_set
        .indices()
        .iter()
        .map(|&i| term(n, &[i], rat(-1, 4)))
        .collect();
    rows.push(term(n, q_set.indices(), rat(1, 4)));
    rows.push(term(n, &[], rat(q_set.len() as i64 - 1, 4)));
    Decomposition::new(n, rows)
}

/// Same graph as [`clique_decomposition`] in `min(q, n − q) + 2` rows. When
/// `q > n/2` the rows come from the complement `T = V \ Q`:
/// `¼·Σ_{i∈T} SB({i}) + ¼·SB(Q) + (½ − (|T|−1)/4)·K_n`. Not simplified.
pub fn clique_decomposition_min(g: &Graph, q_set: &VertexSet) -> Result<Decomposition> {
    let n = g.n();
    check_clique(g, q_set)?;
    if 2 * q_set.len() <= n {
        return clique_decomposition(g, q_set);
    }
    let t = q_set.complement(n);
    let mut rows: Vec<_> = t
        .indices()
        .iter()
        .map(|&i| term(n, &[i], rat(1, 4)))
        .collect();
    rows.push(term(n, q_set.indices(), rat(1, 4)));
    rows.push(term(n, &[], rat(2, 4) - rat(t.len() as i64 - 1, 4)));
    Decomposition::new(n, rows)
}

fn check_clique(g: &Graph, q_set: &VertexSet) -> Result<()> {
    q_set.check_within(g.n())?;
    let q = q_set.len();
    if g.edge_count() != q * q.saturating_sub(1) / 2 || !g.is_clique(q_set.indices()) {
        return Err(Error::PreconditionViolation(format!(
            "graph is not a clique on {q_set:?} plus isolated vertices"
        )));
    }
    Ok(())
}

/// `(1 − q/4)·K_n + ¼·Σ SB(S_i)` for a partition of `[n]` into `q` cliques
/// (`q + 1` rows, not simplified).
pub fn disjoint_cliques_decomposition(partition: &[VertexSet], n: usize) -> Result<Decomposition> {
    let mut seen = vec![false; n];
    for part in partition {
        part.check_within(n)
            .map_err(|e| Error::PreconditionViolation(e.to_string()))?;
        for &v in part.indices() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::PreconditionViolation(format!(
                    "vertex {} is in two parts",
                    v + 1
                )));
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::PreconditionViolation(format!(
            "vertex {} is in no part",
            v + 1
        )));
    }
    let q = partition.len() as i64;
    let mut rows = vec![term(n, &[], int(1) - rat(q, 4))];
    rows.extend(partition.iter().map(|s| term(n, s.indices(), rat(1, 4))));
    Decomposition::new(n, rows)
}

fn pairs(n: usize, offset: usize) -> Vec<VertexSet> {
    (0..n / 2)
        .map(|k| {
            VertexSet::from_indices([(2 * k + offset) % n, (2 * k + 1 + offset) % n])
                .expect("distinct")
        })
        .collect()
}

/// `C_n` with edges `{i, i+1}` and `{n, 1}`; at most `n + 1` rows, simplified.
///
/// Even `n` combines the two alternating perfect matchings. Odd `n` uses
/// `(2 − n/4)·K_n + ¼·Σ_e SB(e)` over the `n` cycle edges.
pub fn cycle_decomposition(n: usize) -> Result<Decomposition> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    if n.is_multiple_of(2) {
        let a = disjoint_cliques_decomposition(&pairs(n, 0), n)?;
        let b = disjoint_cliques_decomposition(&pairs(n, 1), n)?;
        let mut rows = a.rows().to_vec();
        rows.extend_from_slice(b.rows());
        return Ok(simplify(&Decomposition::new(n, rows)?));
    }
    let mut rows = vec![term(n, &[], int(2) - rat(n as i64, 4))];
    rows.extend((0..n).map(|i| term(n, &[i, (i + 1) % n], rat(1, 4))));
    Ok(simplify(&Decomposition::new(n, rows)?))
}

/// `P_n` as the first `n` vertices of `C_{n+1}`; at most `n + 2` rows.
pub fn path_decomposition(n: usize) -> Result<Decomposition> {
    match n {
        0 => Err(Error::InvalidParameter("path needs n >= 1".into())),
        1 => Ok(Decomposition::empty(1)),
        _ => {
            let c = cycle_decomposition(n + 1)?;
            Ok(simplify(&restrict(&c, &VertexSet::all(n))?))
        }
    }
}

/// `PM_q` on `2q` vertices with edges `{2k, 2k+1}` (0-indexed).
///
/// When a Hadamard matrix of order `q` is available, its columns are each
/// duplicated in place and every row gets weight `1/q` (`q` rows). Otherwise
/// the disjoint-cliques construction gives `q + 1` rows. Simplified.
pub fn perfect_matching_decomposition(q: usize) -> Result<Decomposition> {
    if q == 0 {
        return Err(Error::InvalidParameter(
            "perfect matching needs q >= 1".into(),
        ));
    }
    let n = 2 * q;
    let Some(h) = hadamard(q) else {
        return Ok(simplify(&disjoint_cliques_decomposition(&pairs(n, 0), n)?));
    };
    let rows = h
        .entries()
        .iter()
        .map(|hr| {
            let signs: Vec<i8> = hr.iter().flat_map(|&s| [s, s]).collect();
            (
                SignRow::from_signs(&signs).expect("±1 entries"),
                rat(1, q as i64),
            )
        })
        .collect();
    Ok(simplify(&Decomposition::new(n, rows)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::verify;
    use crate::graph::{generate_family, Family};

    fn check(g: &Graph, d: &Decomposition) -> usize {
        let r = verify(g, d).unwrap();
        assert!(
            r.feasible,
            "violation {} at {:?}",
            r.worst_violation, r.offending_pair
        );
        d.len()
    }

    fn clique(q: usize, n: usize) -> (Graph, Decomposition) {
        let g = generate_family(&Family::Complete { q, n }).unwrap();
        let d = clique_decomposition(&g, &VertexSet::all(q)).unwrap();
        (g, d)
    }

    #[test]
    fn clique_examples() {
        let (g, d) = clique(3, 5);
        assert_eq!(check(&g, &d), 5);
        let (g, d) = clique(1, 4);
        check(&g, &d);
        assert!(simplify(&d).is_empty());
        let (g, d) = clique(2, 3);
        assert_eq!(check(&g, &d), 4);
        let p4 = generate_family(&Family::Path { n: 4 }).unwrap();
        assert!(clique_decomposition(&p4, &VertexSet::all(4)).is_err());
    }

    #[test]
    fn clique_row_count_uses_smaller_side() {
        for n in 1..=20 {
            for q in 1..=n {
                let (g, d) = clique(q, n);
                check(&g, &d);
                let d = clique_decomposition_min(&g, &VertexSet::all(q)).unwrap();
                assert!(check(&g, &simplify(&d)) <= q.min(n - q) + 2, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn disjoint_cliques_examples() {
        let pm3 = generate_family(&Family::PerfectMatching { q: 3 }).unwrap();
        let d = disjoint_cliques_decomposition(&pairs(6, 0), 6).unwrap();
        assert_eq!(check(&pm3, &d), 4);

        let k5 = generate_family(&Family::Complete { q: 5, n: 5 }).unwrap();
        let d = disjoint_cliques_decomposition(&[VertexSet::all(5)], 5).unwrap();
        check(&k5, &d);
        let s = simplify(&d);
        assert_eq!(s.len(), 1);
        assert_eq!(s.rows()[0].1, int(1));

        let singles: Vec<VertexSet> = (0..5)
            .map(|v| VertexSet::from_indices([v]).unwrap())
            .collect();
        let d = disjoint_cliques_decomposition(&singles, 5).unwrap();
        check(&Graph::edgeless(5).unwrap(), &d);

        let overlap = [
            VertexSet::from_indices([0, 1]).unwrap(),
            VertexSet::from_indices([1, 2]).unwrap(),
        ];
        assert!(disjoint_cliques_decomposition(&overlap, 3).is_err());
        assert!(disjoint_cliques_decomposition(&overlap[..1], 3).is_err());
    }

    #[test]
    fn cycles_and_paths() {
        for n in 3..=50 {
            let c = generate_family(&Family::Cycle { n }).unwrap();
            assert!(check(&c, &cycle_decomposition(n).unwrap()) <= n + 1);
        }
        assert_eq!(
            check(
                &generate_family(&Family::Cycle { n: 5 }).unwrap(),
                &cycle_decomposition(5).unwrap()
            ),
            6
        );
        for n in 1..=50 {
            let p = generate_family(&Family::Path { n }).unwrap();
            assert!(check(&p, &path_decomposition(n).unwrap()) <= n + 2);
        }
        assert!(cycle_decomposition(2).is_err());
    }

    #[test]
    fn perfect_matchings() {
        for q in 1..=25 {
            let g = generate_family(&Family::PerfectMatching { q }).unwrap();
            let d = perfect_matching_decomposition(q).unwrap();
            let rows = check(&g, &d);
            if hadamard(q).is_some() {
                assert_eq!(rows, q, "q={q}");
                for (row, w) in d.rows() {
                    assert_eq!(*w, rat(1, q as i64));
                    assert!((0..q).all(|c| row.is_negative(2 * c) == row.is_negative(2 * c + 1)));
                }
            } else {
                assert!(rows <= q + 1);
            }
        }
        assert_eq!(perfect_matching_decomposition(3).unwrap().len(), 4);
    }
}
