//! Spectral lower bound `gc(G) ≥ n − max_λ mult(λ)`.
//!
//! `A + αI = PᵀWP − (tr(W) − α)I` has rank at most `k` when `α = tr(W)`, and
//! the smallest rank of `A + αI` over all `α` is `n` minus the largest
//! eigenvalue multiplicity of `A` (attained at `α = −λ`).

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly;

/// Largest `n` for which [`BoundMode::Auto`] uses exact arithmetic.
pub const EXACT_AUTO_LIMIT: usize = 32;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// Exact for `n ≤ 32`, numeric above.
    #[default]
    Auto,
    Numeric,
    Exact,
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMode::Auto => "auto",
            BoundMode::Numeric => "numeric",
            BoundMode::Exact => "exact",
        })
    }
}

impl std::str::FromStr for BoundMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "numeric" => Ok(Self::Numeric),
            "exact" => Ok(Self::Exact),
            _ => Err(Error::InvalidParameter(format!("unknown bound mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lower_bound: usize,
    pub max_multiplicity: usize,
    /// An eigenvalue attaining the maximum multiplicity (floating point).
    pub witness_eigenvalue: f64,
    /// Exact mode only: squarefree polynomial whose roots are the eigenvalues
    /// of maximum multiplicity.
    pub witness_polynomial: Option<String>,
    /// The mode actually used (never `Auto`).
    pub method: BoundMode,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lb={} mult={} lambda≈{:.6} method={}",
            self.lower_bound, self.max_multiplicity, self.witness_eigenvalue, self.method
        )
    }
}

/// Eigenvalues of the adjacency matrix, ascending.
pub fn eigenvalues(g: &Graph) -> Result<Vec<f64>> {
    let n = g.n();
    let m = DMatrix::from_fn(n, n, |i, j| g.a(i, j) as f64);
    let eig = SymmetricEigen::try_new(m, 1e-14, 10_000)
        .ok_or_else(|| Error::NumericalFailure("symmetric eigensolver did not converge".into()))?;
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

fn cluster_tolerance(ev: &[f64]) -> f64 {
    let radius = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    1e-8 * radius.max(1.0)
}

fn numeric_bound(g: &Graph) -> Result<BoundReport> {
    let ev = eigenvalues(g)?;
    let tol = cluster_tolerance(&ev);
    let (mut best, mut best_start) = (0, 0);
    let mut start = 0;
    for i in 0..ev.len() {
        if i > 0 && ev[i] - ev[i - 1] > tol {
            start = i;
        }
        let len = i - start + 1;
        if len > best {
            best = len;
            best_start = start;
        }
    }
    let cluster = &ev[best_start..best_start + best];
    Ok(BoundReport {
        lower_bound: g.n() - best,
        max_multiplicity: best,
        witness_eigenvalue: cluster.iter().sum::<f64>() / best as f64,
        witness_polynomial: None,
        method: BoundMode::Numeric,
    })
}

fn exact_bound(g: &Graph) -> Result<BoundReport> {
    let f = poly::to_rational(&poly::char_poly(g));
    let (mult, h) = poly::max_root_multiplicity(&f);
    // Pick the numeric eigenvalue closest to a root of h as the witness.
    let witness = match eigenvalues(g) {
        Ok(ev) => ev
            .into_iter()
            .min_by(|a, b| {
                poly::eval_f64(&h, *a)
                    .abs()
                    .total_cmp(&poly::eval_f64(&h, *b).abs())
            })
            .unwrap_or(f64::NAN),
        Err(_) => f64::NAN,
    };
    Ok(BoundReport {
        lower_bound: g.n() - mult,
        max_multiplicity: mult,
        witness_eigenvalue: witness,
        witness_polynomial: Some(poly::format_poly(&h)),
        method: BoundMode::Exact,
    })
}

/// `n − max multiplicity` of the adjacency spectrum.
///
/// Numeric mode clusters eigenvalues with absolute tolerance
/// `1e-8 · max(1, spectral radius)`; exact mode uses the integer
/// characteristic polynomial. `Auto` falls back to exact when the numeric
/// solver fails.
pub fn spectral_lower_bound(g: &Graph, mode: BoundMode) -> Result<BoundReport> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    match mode {
        BoundMode::Exact => exact_bound(g),
        BoundMode::Numeric => numeric_bound(g),
        BoundMode::Auto if g.n() <= EXACT_AUTO_LIMIT => exact_bound(g),
        BoundMode::Auto => numeric_bound(g).or_else(|e| {
            log::warn!("{e}; falling back to the exact bound");
            exact_bound(g)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family};

    fn lb(kind: Family, mode: BoundMode) -> BoundReport {
        spectral_lower_bound(&generate_family(&kind).unwrap(), mode).unwrap()
    }

    #[test]
    fn family_examples() {
        for mode in [BoundMode::Exact, BoundMode::Numeric] {
            assert_eq!(lb(Family::Path { n: 10 }, mode).lower_bound, 9);
            let k5 = lb(Family::Complete { q: 5, n: 5 }, mode);
            assert_eq!(k5.lower_bound, 1);
            assert_eq!(k5.max_multiplicity, 4);
            assert!((k5.witness_eigenvalue + 1.0).abs() < 1e-9);
            assert_eq!(lb(Family::PerfectMatching { q: 4 }, mode).lower_bound, 4);
        }
    }

    #[test]
    fn edgeless_has_bound_zero() {
        let g = Graph::edgeless(4).unwrap();
        let r = spectral_lower_bound(&g, BoundMode::Exact).unwrap();
        assert_eq!((r.lower_bound, r.max_multiplicity), (0, 4));
        assert_eq!(r.witness_polynomial.as_deref(), Some("x"));
    }

    #[test]
    fn modes_agree_on_random_graphs() {
        for seed in 0..200u64 {
            let n = 2 + (seed % 11) as usize;
            let p = (seed % 7) as f64 / 6.0;
            let g = generate_family(&Family::ErdosRenyi { n, p, seed }).unwrap();
            let a = spectral_lower_bound(&g, BoundMode::Exact).unwrap();
            let b = spectral_lower_bound(&g, BoundMode::Numeric).unwrap();
            assert_eq!(a.lower_bound, b.lower_bound, "seed {seed}");
        }
    }

    #[test]
    fn report_rendering() {
        let r = lb(Family::Complete { q: 3, n: 3 }, BoundMode::Exact);
        assert_eq!(r.to_string(), "lb=1 mult=2 lambda≈-1.000000 method=exact");
    }
}
