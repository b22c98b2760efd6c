//! Import of external solver solutions.

use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;

use crate::constructions::{annotate, CompileResult, Method};
use crate::decomposition::{rat, verify, Decomposition, Rational};
use crate::error::{parse_err, Error, Result};
use crate::graph::Graph;
use crate::signrow::SignRow;

use super::build::{b, p, w};
use super::MipModel;

const MAX_SNAP_DENOMINATOR: i64 = 64;
const FLOAT_TOLERANCE: f64 = 1e-6;

/// Nearest rational with denominator at most 64 (ties: smaller denominator).
pub fn snap_weight(x: f64) -> Rational {
    let mut best = (f64::INFINITY, 0i64, 1i64);
    for den in 1..=MAX_SNAP_DENOMINATOR {
        let num = (x * den as f64).round() as i64;
        let err = (x - num as f64 / den as f64).abs();
        if err < best.0 {
            best = (err, num, den);
        }
    }
    rat(best.1, best.2)
}

/// Values of model variables in a solver listing. Accepts `name value` and
/// `index name value ...` lines; skips blank lines and lines starting with
/// `#` or `\`; names that are not model variables are ignored with a warning.
pub fn parse_solution_listing(text: &str, m: &MipModel) -> Result<BTreeMap<String, f64>> {
    let known: HashSet<&str> = m.variables.iter().map(|v| v.name.as_str()).collect();
    let mut values = BTreeMap::new();
    let mut unknown = 0usize;
    for (k, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('\\') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        let at = match toks.iter().position(|tok| known.contains(tok)) {
            Some(at) if at <= 1 => at,
            _ => {
                unknown += 1;
                log::warn!(
                    "solution line {}: no model variable in `{t}`, ignored",
                    k + 1
                );
                continue;
            }
        };
        let name = toks[at];
        let value: f64 = toks
            .get(at + 1)
            .and_then(|v| v.parse().ok())
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| parse_err(k + 1, format!("`{name}` has no numeric value")))?;
        values.insert(name.to_string(), value);
    }
    if values.is_empty() {
        return Err(parse_err(0, "listing assigns no model variable"));
    }
    if unknown > 0 {
        log::warn!("{unknown} solution lines ignored");
    }
    Ok(values)
}

/// Rebuilds a decomposition from a solver listing for `m` (built for `g`).
///
/// Binaries are thresholded at 0.5 and variables absent from the listing
/// count as 0. Rows with `b_r = 0` are dropped, weights are snapped with
/// [`snap_weight`] and verified exactly. If that fails, the raw weights are
/// checked in floating point with tolerance `1e-6`; a pass returns the raw
/// weights (as exact binary fractions) with `exact = false`.
pub fn ingest_solution(text: &str, g: &Graph, m: &MipModel) -> Result<CompileResult> {
    let n = g.n();
    if m.meta.n != n {
        return Err(Error::DimensionMismatch {
            expected: m.meta.n,
            found: n,
        });
    }
    let values = parse_solution_listing(text, m)?;
    let get = |name: &str| values.get(name).copied().unwrap_or(0.0);
    let mut rows: Vec<(SignRow, f64)> = Vec::new();
    for r in 1..=m.meta.rows {
        if get(&b(r)) < 0.5 {
            continue;
        }
        let signs: Vec<i8> = (1..=n)
            .map(|i| if get(&p(r, i)) >= 0.5 { 1 } else { -1 })
            .collect();
        rows.push((SignRow::from_signs(&signs)?, get(&w(r))));
    }

    let snapped: Vec<(SignRow, Rational)> = rows
        .iter()
        .map(|(row, x)| (row.clone(), snap_weight(*x)))
        .filter(|(_, x)| !x.is_zero())
        .collect();
    let d = Decomposition::new(n, snapped)?;
    if verify(g, &d)?.feasible {
        return annotate(g, Method::Mip, d, true);
    }

    let worst = float_violation(g, &rows);
    if worst <= FLOAT_TOLERANCE {
        log::warn!("solution verifies only numerically (max violation {worst:e})");
        let raw: Vec<(SignRow, Rational)> = rows
            .iter()
            .filter(|(_, x)| *x != 0.0)
            .map(|(row, x)| (row.clone(), Rational::from_float(*x).expect("finite")))
            .collect();
        return annotate(g, Method::Mip, Decomposition::new(n, raw)?, false);
    }
    Err(Error::InfeasibleSolution(format!(
        "snapped weights fail exact verification and raw weights miss by {worst:e}"
    )))
}

fn float_violation(g: &Graph, rows: &[(SignRow, f64)]) -> f64 {
    let n = g.n();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let s: f64 = rows
                .iter()
                .map(|(r, x)| x * (r.sign(i) * r.sign(j)) as f64)
                .sum();
            let target = g.has_edge(i, j) as u8 as f64;
            worst = worst.max((s - target).abs());
        }
    }
    worst
}
