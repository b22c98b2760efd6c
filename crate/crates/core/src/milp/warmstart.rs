//! Warm starts from known decompositions, and the two equivalent forms of
//! the feasibility identity.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::decomposition::{gram, int, Decomposition, Rational};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::signrow::SignRow;

use super::build::{b, f, p, rn, t, w, z};
use super::lp::render_decimal;
use super::{evaluate, MipModel};

/// A complete assignment to the variables of one model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WarmStart {
    pub assignments: BTreeMap<String, Rational>,
}

impl WarmStart {
    /// `name value` lines in the model's variable order.
    pub fn to_text(&self, m: &MipModel) -> String {
        let mut out = String::new();
        for v in &m.variables {
            if let Some(x) = self.assignments.get(&v.name) {
                out.push_str(&v.name);
                out.push(' ');
                out.push_str(&render_decimal(x).0);
                out.push('\n');
            }
        }
        out
    }
}

/// `need` distinct canonical rows not in `used`, fewest negative entries
/// first (so the all-ones row is taken whenever it is free).
fn padding_rows(n: usize, used: &BTreeSet<SignRow>, need: usize) -> Vec<SignRow> {
    let mut out = Vec::new();
    let push = |row: SignRow, out: &mut Vec<SignRow>| {
        if out.len() < need && !used.contains(&row) && !out.contains(&row) {
            out.push(row);
        }
    };
    push(SignRow::all_ones(n), &mut out);
    for i in 1..n {
        push(SignRow::negative_on(n, &[i]), &mut out);
    }
    'outer: for i in 1..n {
        for j in i + 1..n {
            if out.len() >= need {
                break 'outer;
            }
            push(SignRow::negative_on(n, &[i, j]), &mut out);
        }
    }
    out
}

/// The assignment encoding `d`: rows sorted by `rn`, `P' = (P + 1) / 2`, and
/// `z`, `t`, `tr`, `b`, `rn` (or the first-difference flags) derived from
/// them. A decomposition with fewer than `R` rows is padded with unused
/// canonical rows of weight 0. The assignment is evaluated against `m` before
/// it is returned.
pub fn emit_warmstart(d: &Decomposition, m: &MipModel) -> Result<WarmStart> {
    let n = m.meta.n;
    if d.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.n(),
        });
    }
    if d.rows().iter().any(|(r, _)| !r.is_canonical()) {
        return Err(Error::PreconditionViolation(
            "warm start needs canonical rows (first sign +1)".into(),
        ));
    }
    let used: BTreeSet<SignRow> = d.rows().iter().map(|(r, _)| r.clone()).collect();
    if used.len() != d.len() {
        return Err(Error::PreconditionViolation(
            "warm start rows must be distinct".into(),
        ));
    }
    if d.len() > m.meta.rows {
        return Err(Error::PreconditionViolation(format!(
            "decomposition has {} rows but the model allows {}",
            d.len(),
            m.meta.rows
        )));
    }
    let mut rows: Vec<(SignRow, Rational)> = d.rows().to_vec();
    let pad = padding_rows(n, &used, m.meta.rows - d.len());
    if pad.len() < m.meta.rows - d.len() {
        return Err(Error::PreconditionViolation(format!(
            "cannot pad {} rows to R = {}",
            d.len(),
            m.meta.rows
        )));
    }
    rows.extend(pad.into_iter().map(|r| (r, Rational::zero())));
    rows.sort_by(|a, b| a.0.cmp(&b.0));

    let mut a = BTreeMap::new();
    let bit = |row: &SignRow, i: usize| int(row.binary(i - 1) as i64);
    let mut tr = Rational::zero();
    for (k, (row, weight)) in rows.iter().enumerate() {
        let r = k + 1;
        for i in 1..=n {
            a.insert(p(r, i), bit(row, i));
            for j in i..=n {
                let prod = bit(row, i) * bit(row, j);
                if i < j {
                    a.insert(z(i, j, r), prod.clone());
                }
                a.insert(t(i, j, r), weight * prod);
            }
        }
        a.insert(w(r), weight.clone());
        a.insert(b(r), int(!weight.is_zero() as i64));
        tr += weight;
        if m.meta.lex {
            if let Some((next, _)) = rows.get(k + 1) {
                let top = (2..=n)
                    .rev()
                    .find(|&i| row.binary(i - 1) != next.binary(i - 1));
                for i in 2..=n {
                    a.insert(f(r, i), int((Some(i) == top) as i64));
                }
            }
        } else {
            let mut value = BigInt::zero();
            for i in (0..n).rev() {
                value = (value << 1) + row.binary(i);
            }
            a.insert(rn(r), Rational::from_integer(value));
        }
    }
    a.insert("tr".to_string(), tr);

    let ev = evaluate(m, &a)?;
    if !ev.feasible() {
        return Err(Error::InconsistentWarmStart(ev.to_string()));
    }
    Ok(WarmStart { assignments: a })
}

/// `A + tr·I = Pᵀ W P` as full matrices.
pub fn sign_form_holds(g: &Graph, d: &Decomposition) -> Result<bool> {
    let n = g.n();
    if d.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.n(),
        });
    }
    let m = gram(d);
    let tr = d.trace();
    Ok((0..n).all(|i| {
        (0..n).all(|j| {
            let target =
                int(g.has_edge(i, j) as i64) + if i == j { tr.clone() } else { Rational::zero() };
            m[i][j] == target
        })
    }))
}

/// `4 P'ᵀ W P' = A + tr·M + a₁ 1ᵀ + 1 a₁ᵀ` for rows whose first sign is +1.
pub fn binary_form_holds(g: &Graph, d: &Decomposition) -> Result<bool> {
    let n = g.n();
    if d.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.n(),
        });
    }
    if d.rows().iter().any(|(r, _)| r.is_negative(0)) {
        return Err(Error::PreconditionViolation(
            "binary form needs P'_{r,1} = 1".into(),
        ));
    }
    let tr = d.trace();
    let a = |i: usize, j: usize| int(g.has_edge(i, j) as i64);
    for i in 0..n {
        for j in 0..n {
            let mut lhs = Rational::zero();
            for (row, weight) in d.rows() {
                if row.binary(i) == 1 && row.binary(j) == 1 {
                    lhs += weight;
                }
            }
            lhs *= int(4);
            let mult = match (i, j) {
                (0, 0) => 4,
                _ if i == 0 || j == 0 || i == j => 2,
                _ => 1,
            };
            let rhs = a(i, j) + &tr * int(mult) + a(0, j) + a(0, i);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
