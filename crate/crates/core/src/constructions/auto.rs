//! Method selection: run every applicable construction, keep the shortest.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{spectral_lower_bound, BoundMode};
use crate::decomposition::{combine, int, simplify, verify, CombineSign, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{complement, Graph, VertexSet};

use super::{
    clique_decomposition_min, cycle_decomposition, detect_small_gc, disjoint_cliques_decomposition,
    path_decomposition, perfect_matching_decomposition, structural_lower_bound,
    union_of_double_stars, union_of_stars,
};

/// Construction labels, in tie-breaking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Detector,
    Clique,
    DisjointCliques,
    PmHadamard,
    Cycle,
    Path,
    Stars,
    DoubleStars,
    Complement,
    /// Imported from an external MIP solver's solution listing.
    Mip,
}

impl Method {
    /// The constructions `compile_auto` chooses between ([`Method::Mip`] is
    /// not one of them).
    pub const ALL: [Method; 9] = [
        Method::Detector,
        Method::Clique,
        Method::DisjointCliques,
        Method::PmHadamard,
        Method::Cycle,
        Method::Path,
        Method::Stars,
        Method::DoubleStars,
        Method::Complement,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Method::Detector => "detector",
            Method::Clique => "clique",
            Method::DisjointCliques => "disjoint-cliques",
            Method::PmHadamard => "pm-hadamard",
            Method::Cycle => "cycle",
            Method::Path => "path",
            Method::Stars => "stars",
            Method::DoubleStars => "double-stars",
            Method::Complement => "complement",
            Method::Mip => "mip",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .chain([Method::Mip])
            .find(|m| m.label() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct CompileResult {
    /// Canonical, verified decomposition.
    pub decomposition: Decomposition,
    pub method: Method,
    pub rows: usize,
    /// Spectral lower bound, when computed.
    pub lower_bound: Option<usize>,
    pub verified: bool,
    /// Row count equals a proven lower bound (spectral, or the `gc ≤ 2`
    /// characterisation together with `gc ≠ 3`).
    pub optimal: bool,
    /// False when the weights only passed a floating-point check.
    pub exact: bool,
}

/// Connected graph in which every vertex has degree ≤ 2: vertex order along
/// the path or cycle, starting from the lowest endpoint (or vertex 0).
fn walk(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if (0..n).any(|v| g.degree(v) > 2) || g.components().len() != 1 {
        return None;
    }
    let start = (0..n).find(|&v| g.degree(v) <= 1).unwrap_or(0);
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < n {
        let next = g
            .neighbors(cur)
            .find(|&w| w != prev && !order.contains(&w))?;
        order.push(next);
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// Maps a decomposition of the standard family member onto `g`: standard
/// vertex `i` becomes vertex `order[i]` of `g`.
fn relabel(d: &Decomposition, order: &[usize]) -> Decomposition {
    d.permute(order).expect("order is a permutation")
}

/// Decomposition for `g` when it belongs to a family with a closed-form
/// construction, tagged with that family's method.
fn family_candidates(g: &Graph) -> Vec<(Method, Decomposition)> {
    let n = g.n();
    let mut out = Vec::new();
    let comps = g.components();
    if comps.iter().all(|c| g.is_clique(c)) {
        let nontrivial: Vec<&Vec<usize>> = comps.iter().filter(|c| c.len() > 1).collect();
        if nontrivial.len() == 1 {
            let q = VertexSet::from_indices(nontrivial[0].iter().copied()).expect("distinct");
            if let Ok(d) = clique_decomposition_min(g, &q) {
                out.push((Method::Clique, d));
            }
        }
        let parts: Vec<VertexSet> = comps
            .iter()
            .map(|c| VertexSet::from_indices(c.iter().copied()).expect("distinct"))
            .collect();
        if let Ok(d) = disjoint_cliques_decomposition(&parts, n) {
            out.push((Method::DisjointCliques, d));
        }
        if n.is_multiple_of(2) && comps.iter().all(|c| c.len() == 2) {
            let order: Vec<usize> = comps.iter().flatten().copied().collect();
            if let Ok(d) = perfect_matching_decomposition(n / 2) {
                out.push((Method::PmHadamard, relabel(&d, &order)));
            }
        }
    }
    if let Some(order) = walk(g) {
        let m = g.edge_count();
        if m == n && n >= 3 {
            if let Ok(d) = cycle_decomposition(n) {
                out.push((Method::Cycle, relabel(&d, &order)));
            }
        } else if m + 1 == n {
            if let Ok(d) = path_decomposition(n) {
                out.push((Method::Path, relabel(&d, &order)));
            }
        }
    }
    out
}

/// Every candidate produced without the complement route.
fn direct_candidates(g: &Graph) -> Vec<(Method, Decomposition)> {
    let mut out = Vec::new();
    if let Some(d) = detect_small_gc(g) {
        out.push((Method::Detector, d));
    }
    out.extend(family_candidates(g));
    out.push((Method::Stars, union_of_stars(g)));
    out.push((Method::DoubleStars, union_of_double_stars(g)));
    out
}

fn shortest(cands: Vec<(Method, Decomposition)>) -> Option<(Method, Decomposition)> {
    cands
        .into_iter()
        .map(|(m, d)| (m, simplify(&d)))
        .min_by_key(|(m, d)| (d.len(), *m))
}

/// `K_n − decomposition(complement(g))`.
fn complement_candidate(g: &Graph) -> Option<Decomposition> {
    let gc = complement(g);
    let (_, dc) = shortest(direct_candidates(&gc))?;
    let kn = Decomposition::from_bicliques(g.n(), &[(&[], int(1))]);
    Some(simplify(&combine(&kn, &dc, CombineSign::Minus).ok()?))
}

fn finish(g: &Graph, method: Method, d: Decomposition) -> Result<CompileResult> {
    let d = simplify(&d);
    let report = verify(g, &d)?;
    if !report.feasible {
        return Err(Error::UnverifiedInput(format!(
            "{method} produced a decomposition with violation {}",
            report.worst_violation
        )));
    }
    annotate(g, method, d, true)
}

/// Wraps an already verified decomposition, attaching the spectral bound.
pub(crate) fn annotate(
    g: &Graph,
    method: Method,
    d: Decomposition,
    exact: bool,
) -> Result<CompileResult> {
    let lb = spectral_lower_bound(g, BoundMode::Auto)?.lower_bound;
    if exact {
        assert!(
            lb <= d.len(),
            "spectral bound {lb} exceeds {} rows",
            d.len()
        );
    }
    let rows = d.len();
    Ok(CompileResult {
        decomposition: d,
        method,
        rows,
        lower_bound: Some(lb),
        verified: true,
        optimal: exact && rows == structural_lower_bound(g, lb),
        exact,
    })
}

/// Runs the detector, family recognition, both greedy unions and (when the
/// complement has fewer edges) the complement route; returns the verified
/// decomposition with the fewest rows. Ties go to the earlier [`Method`].
pub fn compile_auto(g: &Graph) -> CompileResult {
    let mut cands = direct_candidates(g);
    if complement(g).edge_count() < g.edge_count() {
        if let Some(d) = complement_candidate(g) {
            cands.push((Method::Complement, d));
        }
    }
    let (method, d) = shortest(cands).expect("stars always apply");
    finish(g, method, d).expect("every construction verifies")
}

/// A single named construction. Family methods fail with
/// `PreconditionViolation` when `g` is not a member of the family.
pub fn compile_with(g: &Graph, method: Method) -> Result<CompileResult> {
    let d = match method {
        Method::Stars => union_of_stars(g),
        Method::DoubleStars => union_of_double_stars(g),
        Method::Detector => detect_small_gc(g)
            .ok_or_else(|| Error::PreconditionViolation("graph does not have gc <= 2".into()))?,
        Method::Complement => complement_candidate(g)
            .ok_or_else(|| Error::PreconditionViolation("complement route failed".into()))?,
        Method::Mip => {
            return Err(Error::InvalidParameter(
                "`mip` results come from an external solver; see milp::ingest_solution".into(),
            ))
        }
        family => family_candidates(g)
            .into_iter()
            .find(|(m, _)| *m == family)
            .map(|(_, d)| d)
            .ok_or_else(|| {
                Error::PreconditionViolation(format!("graph is not recognised for `{family}`"))
            })?,
    };
    finish(g, method, d)
}
