//! Simple undirected graphs, family generators and text formats.
//!
//! Vertices are 0-indexed in memory. Every text format and every
//! user-facing [`VertexSet`] rendering uses 1-indexed labels.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{malformed, Error, Result};

/// A simple, undirected, unweighted graph on `n ≥ 1` vertices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    /// Row-major `n × n` edge indicator.
    adj: Vec<bool>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "graph needs at least one vertex".into(),
            ));
        }
        Ok(Self {
            n,
            adj: vec![false; n * n],
        })
    }

    /// Builds a graph from 0-indexed edges. Loops, duplicates and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({}, {}) out of range for n = {n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {}", u + 1)));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge ({}, {})",
                    u.min(v) + 1,
                    u.max(v) + 1
                )));
            }
            g.set(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from a 0/1 matrix, checking symmetry and the zero diagonal.
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::edgeless(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 if i == j => {
                        return Err(Error::InvalidParameter(format!("loop at vertex {}", i + 1)))
                    }
                    1 => g.adj[i * n + j] = true,
                    _ => {
                        return Err(Error::InvalidParameter(format!(
                            "entry ({}, {}) is {x}, expected 0 or 1",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if g.adj[i * n + j] != g.adj[j * n + i] {
                    return Err(Error::InvalidParameter(format!(
                        "matrix is not symmetric at ({}, {})",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Builds a graph from an edge predicate evaluated on every pair `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Self::edgeless(n)?;
        for i in 0..n {
            for j in i + 1..n {
                if f(i, j) {
                    g.set(i, j, true);
                }
            }
        }
        Ok(g)
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        self.adj[u * self.n + v] = on;
        self.adj[v * self.n + u] = on;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Adjacency entry as an integer (0 or 1).
    #[inline]
    pub fn a(&self, u: usize, v: usize) -> i64 {
        self.has_edge(u, v) as i64
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v * self.n..(v + 1) * self.n]
            .iter()
            .enumerate()
            .filter_map(|(j, &b)| b.then_some(j))
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            (i + 1..self.n).filter_map(move |j| self.has_edge(i, j).then_some((i, j)))
        })
    }

    pub fn is_edgeless(&self) -> bool {
        !self.adj.iter().any(|&b| b)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    /// Adjacency matrix as nested integer rows.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.a(i, j)).collect())
            .collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True when every pair inside `set` is adjacent.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &u)| set[a + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        let m = s.indices();
        let mut count = 0;
        for (a, &u) in m.iter().enumerate() {
            for &v in &m[a + 1..] {
                count += self.has_edge(u, v) as usize;
            }
        }
        count
    }

    /// Same graph with vertex `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let mut g = Self::edgeless(self.n)?;
        for (u, v) in self.edges() {
            g.set(perm[u], perm[v], true);
        }
        Ok(g)
    }

    /// Parses the edge-list format: a header `n m`, then `m` lines `u v` with
    /// `1 ≤ u < v ≤ n`. Blank lines and `#` comments are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| malformed(1, "empty document"))?;
        let [n, m] = parse_ints::<2>(hline, header)?;
        if n == 0 {
            return Err(malformed(hline, "vertex count must be positive"));
        }
        let mut g = Self::edgeless(n)?;
        let mut count = 0;
        for (ln, line) in lines {
            let [u, v] = parse_ints::<2>(ln, line)?;
            if u == v {
                return Err(malformed(ln, format!("loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(malformed(ln, format!("label out of range 1..={n}")));
            }
            if u > v {
                return Err(malformed(ln, format!("expected u < v, got {u} {v}")));
            }
            if g.has_edge(u - 1, v - 1) {
                return Err(malformed(ln, format!("duplicate edge {u} {v}")));
            }
            g.set(u - 1, v - 1, true);
            count += 1;
        }
        if count != m {
            return Err(malformed(
                hline,
                format!("header announces {m} edges, found {count}"),
            ));
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }

    /// Parses `n` lines of `n` space-separated 0/1 entries.
    pub fn parse_matrix(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|_| malformed(i + 1, format!("bad entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_matrix(&rows).map_err(|e| malformed(0, e.to_string()))
    }

    pub fn to_matrix_text(&self) -> String {
        let mut s = String::with_capacity(self.n * self.n * 2);
        for i in 0..self.n {
            let row: Vec<&str> = (0..self.n)
                .map(|j| if self.has_edge(i, j) { "1" } else { "0" })
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Accepts either text format: a first line with exactly two tokens is
    /// read as an edge list, anything else as a matrix.
    pub fn parse_any(text: &str) -> Result<Self> {
        let first = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .unwrap_or("");
        let tokens = first.split_whitespace().count();
        // A 2x2 matrix also has two tokens per line; its entries are 0/1 and
        // the second line then also has two tokens.
        let looks_like_matrix = tokens >= 1
            && first.split_whitespace().all(|t| t == "0" || t == "1")
            && text.lines().filter(|l| !l.trim().is_empty()).count() == tokens;
        if tokens == 2 && !looks_like_matrix {
            Self::parse_edge_list(text)
        } else {
            Self::parse_matrix(text)
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
            .collect();
        write!(f, "Graph(n={}, [{}])", self.n, edges.join(" "))
    }
}

fn parse_ints<const K: usize>(line: usize, text: &str) -> Result<[usize; K]> {
    let mut out = [0usize; K];
    let mut tokens = text.split_whitespace();
    for slot in out.iter_mut() {
        let t = tokens
            .next()
            .ok_or_else(|| malformed(line, format!("expected {K} integers")))?;
        *slot = t
            .parse()
            .map_err(|_| malformed(line, format!("bad token `{t}`")))?;
    }
    if let Some(t) = tokens.next() {
        return Err(malformed(line, format!("unexpected token `{t}`")));
    }
    Ok(out)
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParameter("not a permutation".into()));
        }
    }
    Ok(())
}

/// A set of vertices, stored sorted and 0-indexed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// From 0-indexed vertices; duplicates are rejected.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("vertex set has duplicates".into()));
        }
        Ok(Self(v))
    }

    /// From 1-indexed labels.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.contains(&0) {
            return Err(Error::InvalidParameter("vertex labels start at 1".into()));
        }
        Self::from_indices(labels.iter().map(|&l| l - 1))
    }

    /// `{0, 1, …, n-1}`.
    pub fn all(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Checks `self ⊆ [n]`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&m) if m >= n => Err(Error::InvalidParameter(format!(
                "vertex {} outside 1..={n}",
                m + 1
            ))),
            _ => Ok(()),
        }
    }

    /// `[n] \ self`.
    pub fn complement(&self, n: usize) -> Self {
        Self((0..n).filter(|v| !self.contains(*v)).collect())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, l) in self.labels().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// Graph families with closed-form constructions, plus seeded random graphs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Family {
    /// `K_q` on vertices `1..=q` plus `n - q` isolated vertices.
    Complete {
        q: usize,
        n: usize,
    },
    /// `q` disjoint edges `{1,2}, {3,4}, …` on `2q` vertices.
    PerfectMatching {
        q: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    /// `K_{a,b}` with sides `1..=a` and `a+1..=a+b`.
    Biclique {
        a: usize,
        b: usize,
    },
    /// Consecutive blocks of the given sizes, each a clique.
    DisjointCliques {
        sizes: Vec<usize>,
    },
    /// `G(n, p)`: each pair `i < j`, visited in lexicographic order, is an
    /// edge when the next `f64` drawn from `ChaCha8Rng::seed_from_u64(seed)`
    /// is `< p`.
    ErdosRenyi {
        n: usize,
        p: f64,
        seed: u64,
    },
}

/// Generates a family member. Output is deterministic in the parameters.
pub fn generate_family(kind: &Family) -> Result<Graph> {
    let positive = |x: usize, what: &str| {
        if x == 0 {
            Err(Error::InvalidParameter(format!("{what} must be positive")))
        } else {
            Ok(())
        }
    };
    match *kind {
        Family::Complete { q, n } => {
            positive(n, "n")?;
            positive(q, "q")?;
            if q > n {
                return Err(Error::InvalidParameter(format!(
                    "clique size {q} exceeds n = {n}"
                )));
            }
            Graph::from_fn(n, |i, j| i < q && j < q)
        }
        Family::PerfectMatching { q } => {
            positive(q, "q")?;
            Graph::from_fn(2 * q, |i, j| j == i + 1 && i % 2 == 0)
        }
        Family::Path { n } => {
            positive(n, "n")?;
            Graph::from_fn(n, |i, j| j == i + 1)
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::InvalidParameter(format!(
                    "cycle needs n >= 3, got {n}"
                )));
            }
            Graph::from_fn(n, |i, j| j == i + 1 || (i == 0 && j == n - 1))
        }
        Family::Biclique { a, b } => {
            positive(a, "a")?;
            positive(b, "b")?;
            Graph::from_fn(a + b, |i, j| i < a && j >= a)
        }
        Family::DisjointCliques { ref sizes } => {
            if sizes.is_empty() {
                return Err(Error::InvalidParameter("no clique sizes given".into()));
            }
            let mut block = Vec::new();
            for (b, &s) in sizes.iter().enumerate() {
                positive(s, "clique size")?;
                block.extend(std::iter::repeat_n(b, s));
            }
            Graph::from_fn(block.len(), |i, j| block[i] == block[j])
        }
        Family::ErdosRenyi { n, p, seed } => {
            positive(n, "n")?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Graph::from_fn(n, |_, _| rng.random::<f64>() < p)
        }
    }
}

/// `adj' = 1 - adj` off the diagonal.
pub fn complement(g: &Graph) -> Graph {
    Graph::from_fn(g.n(), |i, j| !g.has_edge(i, j)).expect("n is positive")
}

/// Subgraph induced by `s`, relabelled in increasing order of original labels.
pub fn induced(g: &Graph, s: &VertexSet) -> Result<Graph> {
    if s.is_empty() {
        return Err(Error::InvalidParameter(
            "induced subgraph of the empty set".into(),
        ));
    }
    s.check_within(g.n())?;
    let idx = s.indices();
    Graph::from_fn(idx.len(), |a, b| g.has_edge(idx[a], idx[b]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges_1(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().map(|(u, v)| (u + 1, v + 1)).collect()
    }

    #[test]
    fn parse_examples() {
        let p4 = Graph::parse_edge_list("4 3\n1 2\n2 3\n3 4").unwrap();
        assert_eq!(p4, generate_family(&Family::Path { n: 4 }).unwrap());
        let e2 = Graph::parse_edge_list("2 0").unwrap();
        assert!(e2.is_edgeless() && e2.n() == 2);
        let k3 = Graph::parse_edge_list("3 3\n1 2\n2 3\n1 3").unwrap();
        assert!(k3.is_complete());
    }

    #[test]
    fn parse_rejects_bad_input() {
        for bad in [
            "3 1\n1 1",
            "3 2\n1 2\n1 2",
            "3 1\n1 4",
            "3 1\n2 1",
            "3 1\n1 x",
            "3 2\n1 2",
            "",
            "0 0",
        ] {
            assert!(
                matches!(
                    Graph::parse_edge_list(bad),
                    Err(Error::MalformedInput { .. })
                ),
                "accepted {bad:?}"
            );
        }
    }

    #[test]
    fn family_examples() {
        let c4 = generate_family(&Family::Cycle { n: 4 }).unwrap();
        assert_eq!(edges_1(&c4), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
        let pm3 = generate_family(&Family::PerfectMatching { q: 3 }).unwrap();
        assert_eq!(pm3.n(), 6);
        assert_eq!(edges_1(&pm3), vec![(1, 2), (3, 4), (5, 6)]);
        let er = generate_family(&Family::ErdosRenyi {
            n: 5,
            p: 0.0,
            seed: 7,
        })
        .unwrap();
        assert!(er.is_edgeless());
        let full = generate_family(&Family::ErdosRenyi {
            n: 5,
            p: 1.0,
            seed: 7,
        })
        .unwrap();
        assert!(full.is_complete());
        let kab = generate_family(&Family::Biclique { a: 2, b: 3 }).unwrap();
        assert_eq!(kab.edge_count(), 6);
        let dc = generate_family(&Family::DisjointCliques { sizes: vec![2, 3] }).unwrap();
        assert_eq!(dc.edge_count(), 4);
        let k3 = generate_family(&Family::Complete { q: 3, n: 5 }).unwrap();
        assert_eq!(edges_1(&k3), vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn family_parameter_errors() {
        assert!(generate_family(&Family::Cycle { n: 2 }).is_err());
        assert!(generate_family(&Family::Complete { q: 4, n: 3 }).is_err());
        assert!(generate_family(&Family::ErdosRenyi {
            n: 3,
            p: 1.5,
            seed: 0
        })
        .is_err());
        assert!(generate_family(&Family::PerfectMatching { q: 0 }).is_err());
    }

    #[test]
    fn erdos_renyi_is_reproducible() {
        let a = generate_family(&Family::ErdosRenyi {
            n: 12,
            p: 0.4,
            seed: 99,
        })
        .unwrap();
        let b = generate_family(&Family::ErdosRenyi {
            n: 12,
            p: 0.4,
            seed: 99,
        })
        .unwrap();
        let c = generate_family(&Family::ErdosRenyi {
            n: 12,
            p: 0.4,
            seed: 100,
        })
        .unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn complement_examples() {
        let k3 = generate_family(&Family::Complete { q: 3, n: 3 }).unwrap();
        assert!(complement(&k3).is_edgeless());
        let c5 = generate_family(&Family::Cycle { n: 5 }).unwrap();
        let c5c = complement(&c5);
        // C_5's complement is the pentagram 1-3-5-2-4-1.
        let perm = [0, 2, 4, 1, 3];
        assert_eq!(c5.relabel(&perm).unwrap(), c5c);
    }

    #[test]
    fn induced_examples() {
        let c5 = generate_family(&Family::Cycle { n: 5 }).unwrap();
        let s = VertexSet::from_labels(&[1, 2, 3, 4]).unwrap();
        assert_eq!(
            induced(&c5, &s).unwrap(),
            generate_family(&Family::Path { n: 4 }).unwrap()
        );
        assert_eq!(induced(&c5, &VertexSet::all(5)).unwrap(), c5);
        let k4 = generate_family(&Family::Complete { q: 4, n: 4 }).unwrap();
        let k2 = induced(&k4, &VertexSet::from_labels(&[1, 3]).unwrap()).unwrap();
        assert!(k2.is_complete() && k2.n() == 2);
        assert!(induced(&c5, &VertexSet::empty()).is_err());
    }

    #[test]
    fn matrix_format_round_trip() {
        let g = generate_family(&Family::ErdosRenyi {
            n: 7,
            p: 0.5,
            seed: 3,
        })
        .unwrap();
        assert_eq!(Graph::parse_matrix(&g.to_matrix_text()).unwrap(), g);
        assert_eq!(Graph::parse_any(&g.to_matrix_text()).unwrap(), g);
        assert_eq!(Graph::parse_any(&g.to_edge_list()).unwrap(), g);
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(Graph::parse_any(&k2.to_matrix_text()).unwrap(), k2);
        assert!(Graph::parse_matrix("0 1\n0 0").is_err());
        assert!(Graph::parse_matrix("1 0\n0 0").is_err());
    }

    #[test]
    fn vertex_set_checks() {
        assert!(VertexSet::from_labels(&[1, 1]).is_err());
        assert!(VertexSet::from_labels(&[0]).is_err());
        let s = VertexSet::from_labels(&[3, 1]).unwrap();
        assert_eq!(s.indices(), &[0, 2]);
        assert!(s.check_within(2).is_err());
        assert_eq!(s.complement(4).labels(), vec![2, 4]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = Graph> {
            (1usize..10, any::<u64>(), 0.0f64..=1.0).prop_map(|(n, seed, p)| {
                generate_family(&Family::ErdosRenyi { n, p, seed }).unwrap()
            })
        }

        proptest! {
            #[test]
            fn complement_is_involution(g in arb_graph()) {
                prop_assert_eq!(complement(&complement(&g)), g);
            }

            #[test]
            fn induced_edge_count(g in arb_graph(), mask in any::<u16>()) {
                let s = VertexSet::from_indices((0..g.n()).filter(|i| mask >> i & 1 == 1)).unwrap();
                prop_assume!(!s.is_empty());
                let h = induced(&g, &s).unwrap();
                prop_assert_eq!(h.edge_count(), g.edges_within(&s));
            }

            #[test]
            fn edge_list_round_trip(g in arb_graph()) {
                prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
            }
        }
    }
}
