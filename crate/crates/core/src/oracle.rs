//! Exhaustive exact solver for `gc(G)` on small graphs.
//!
//! For `k = k_start, k_start + 1, …` every set of `k` distinct canonical sign
//! rows (first sign `+1`) is tried in ascending row-number order; the first
//! set whose pair system `B w = c` is consistent is returned with its exact
//! weights. `B` has one row per vertex pair `i < j` with entries
//! `p_r[i]·p_r[j]`, and `c` holds `A[i][j]`.
//!
//! The search extends row sets one row at a time and keeps the span of the
//! chosen columns in echelon form modulo `p = 2^61 − 1`. For `±1` matrices
//! with at most 23 columns (together with the 0/1 column `c`) every minor is
//! below the Hadamard bound `23^11.5 < p`, so ranks modulo `p` equal ranks
//! over the rationals and the consistency test is exact. A set whose newest
//! column is dependent on the previous ones is skipped: dropping that row
//! would give a solution with fewer rows, which the earlier levels have
//! already ruled out. Weights of the winning set are recomputed with
//! fraction-free elimination over the integers.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::bounds::{spectral_lower_bound, BoundMode};
use crate::decomposition::{verify, Decomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::solve_integer_system;
use crate::signrow::SignRow;

const P: u64 = (1 << 61) - 1;
/// Largest column count for which the modular rank test is exact.
const EXACT_COLUMN_LIMIT: usize = 22;

#[inline]
fn mulmod(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let s = lo + hi;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
fn submod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, P - 2)
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// First row count to try. Defaults to `max(1, spectral bound)`; levels
    /// below it are taken as infeasible without enumeration.
    pub k_start: Option<usize>,
    /// Last row count to try; defaults to `⌈2.5n + 2⌉`.
    pub k_max: Option<usize>,
    /// Start at `k = 1` regardless of the spectral bound.
    pub paper_faithful: bool,
    /// Largest accepted vertex count.
    pub max_n: usize,
    /// Give up with `ResourceLimit` after this instant.
    pub deadline: Option<Instant>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            k_start: None,
            k_max: None,
            paper_faithful: false,
            max_n: 8,
            deadline: None,
        }
    }
}

pub fn default_k_max(n: usize) -> usize {
    (5 * n + 4).div_ceil(2)
}

/// Canonical rows in ascending row-number order and their pair columns.
struct Search<'a> {
    rows: Vec<SignRow>,
    cols: Vec<Vec<u64>>,
    c: Vec<u64>,
    deadline: Option<Instant>,
    expired: &'a AtomicBool,
    nodes: &'a AtomicU64,
}

/// Echelon basis of the span of the chosen columns, plus the residual of `c`.
#[derive(Clone)]
struct Span {
    basis: Vec<(usize, Vec<u64>)>,
    residual: Vec<u64>,
}

impl Span {
    fn new(c: &[u64]) -> Self {
        Self {
            basis: Vec::new(),
            residual: c.to_vec(),
        }
    }

    /// Adds `v`; `None` when `v` is already in the span.
    fn extend(&self, v: &[u64]) -> Option<Self> {
        let mut v = v.to_vec();
        for (piv, b) in &self.basis {
            let f = v[*piv];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = submod(*x, mulmod(f, y));
                }
            }
        }
        let piv = v.iter().position(|&x| x != 0)?;
        let inv = invmod(v[piv]);
        for x in v.iter_mut() {
            *x = mulmod(*x, inv);
        }
        let mut residual = self.residual.clone();
        let f = residual[piv];
        if f != 0 {
            for (x, &y) in residual.iter_mut().zip(&v) {
                *x = submod(*x, mulmod(f, y));
            }
        }
        let mut basis = self.basis.clone();
        basis.push((piv, v));
        Some(Self { basis, residual })
    }

    fn contains_c(&self) -> bool {
        self.residual.iter().all(|&x| x == 0)
    }
}

impl<'a> Search<'a> {
    fn new(
        g: &Graph,
        deadline: Option<Instant>,
        expired: &'a AtomicBool,
        nodes: &'a AtomicU64,
    ) -> Self {
        let n = g.n();
        let mut rows: Vec<SignRow> = (0..1u64 << n.saturating_sub(1))
            .map(|m| SignRow::from_mask(n, m << 1))
            .collect();
        rows.sort();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let cols = rows
            .iter()
            .map(|r| {
                pairs
                    .iter()
                    .map(|&(i, j)| {
                        if r.is_negative(i) == r.is_negative(j) {
                            1
                        } else {
                            P - 1
                        }
                    })
                    .collect()
            })
            .collect();
        let c = pairs.iter().map(|&(i, j)| g.a(i, j) as u64).collect();
        Self {
            rows,
            cols,
            c,
            deadline,
            expired,
            nodes,
        }
    }

    fn tick(&self) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return false;
        }
        if self
            .nodes
            .fetch_add(1, Ordering::Relaxed)
            .is_multiple_of(4096)
        {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.expired.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        true
    }

    /// Lexicographically first independent extension of `chosen` to exactly
    /// `k` rows whose span contains `c`.
    fn exact(&self, span: &Span, chosen: &mut Vec<usize>, next: usize, k: usize) -> bool {
        if chosen.len() == k {
            return span.contains_c();
        }
        let need = k - chosen.len();
        for r in next..=self.rows.len().saturating_sub(need) {
            if !self.tick() {
                return false;
            }
            if let Some(s) = span.extend(&self.cols[r]) {
                chosen.push(r);
                if self.exact(&s, chosen, r + 1, k) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// Any independent set of at most `k` rows whose span contains `c`.
    fn at_most(&self, span: &Span, depth: usize, next: usize, k: usize) -> bool {
        if span.contains_c() {
            return true;
        }
        if depth == k {
            return false;
        }
        (next..self.rows.len()).any(|r| {
            self.tick()
                && span
                    .extend(&self.cols[r])
                    .is_some_and(|s| self.at_most(&s, depth + 1, r + 1, k))
        })
    }

    /// First row set of size `k` (parallel over the leading row).
    fn level(&self, k: usize) -> Option<Vec<usize>> {
        let root = Span::new(&self.c);
        (0..self.rows.len().saturating_sub(k - 1))
            .into_par_iter()
            .find_map_first(|first| {
                let span = root.extend(&self.cols[first])?;
                let mut chosen = vec![first];
                self.exact(&span, &mut chosen, first + 1, k)
                    .then_some(chosen)
            })
    }
}

fn check_caps(g: &Graph, k: usize, opts: &OracleOptions) -> Result<()> {
    if g.n() > opts.max_n {
        return Err(Error::ResourceLimit(format!(
            "exhaustive search is capped at n = {} (got {})",
            opts.max_n,
            g.n()
        )));
    }
    if k > EXACT_COLUMN_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "row count {k} exceeds the exact search limit {EXACT_COLUMN_LIMIT}"
        )));
    }
    Ok(())
}

fn decomposition_for(g: &Graph, s: &Search<'_>, chosen: &[usize]) -> Decomposition {
    let b: Vec<Vec<i64>> = (0..s.c.len())
        .map(|p| {
            chosen
                .iter()
                .map(|&r| if s.cols[r][p] == 1 { 1 } else { -1 })
                .collect()
        })
        .collect();
    let c: Vec<i64> = s.c.iter().map(|&x| x as i64).collect();
    let w = solve_integer_system(&b, &c).expect("modular test found a consistent system");
    let rows = chosen.iter().map(|&r| s.rows[r].clone()).zip(w).collect();
    Decomposition::new(g.n(), rows).expect("rows have length n")
}

/// `gc(g)` and a certificate decomposition, found by exhaustive search.
pub fn brute_force_gc(g: &Graph, opts: &OracleOptions) -> Result<(usize, Decomposition)> {
    let n = g.n();
    check_caps(g, 0, opts)?;
    if g.is_edgeless() {
        return Ok((0, Decomposition::empty(n)));
    }
    let k_start = match (opts.k_start, opts.paper_faithful) {
        (Some(k), _) => k.max(1),
        (None, true) => 1,
        (None, false) => spectral_lower_bound(g, BoundMode::Auto)?.lower_bound.max(1),
    };
    let k_max = opts.k_max.unwrap_or_else(|| default_k_max(n));
    let expired = AtomicBool::new(false);
    let nodes = AtomicU64::new(0);
    let search = Search::new(g, opts.deadline, &expired, &nodes);
    for k in k_start..=k_max.min(search.rows.len()) {
        check_caps(g, k, opts)?;
        let found = search.level(k);
        if expired.load(Ordering::Relaxed) {
            return Err(Error::ResourceLimit(format!(
                "deadline reached while searching k = {k}"
            )));
        }
        if let Some(chosen) = found {
            log::debug!("gc = {k} after {} nodes", nodes.load(Ordering::Relaxed));
            let d = decomposition_for(g, &search, &chosen);
            debug_assert!(verify(g, &d).map(|r| r.feasible).unwrap_or(false));
            return Ok((k, d));
        }
    }
    Err(Error::ResourceLimit(format!(
        "no solution with at most {k_max} rows"
    )))
}

/// True iff no decomposition with `k` rows exists (zero weights allowed).
pub fn certify_infeasible_k(g: &Graph, k: usize, opts: &OracleOptions) -> Result<bool> {
    check_caps(g, k, opts)?;
    let expired = AtomicBool::new(false);
    let nodes = AtomicU64::new(0);
    let search = Search::new(g, opts.deadline, &expired, &nodes);
    let root = Span::new(&search.c);
    if root.contains_c() {
        return Ok(false);
    }
    let found = k > 0
        && (0..search.rows.len()).into_par_iter().any(|first| {
            root.extend(&search.cols[first])
                .is_some_and(|s| search.at_most(&s, 1, first + 1, k))
        });
    if expired.load(Ordering::Relaxed) {
        return Err(Error::ResourceLimit(
            "deadline reached during certification".into(),
        ));
    }
    Ok(!found)
}
