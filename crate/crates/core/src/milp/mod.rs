//! The compact MIP for the graph coupling number, its LP-format text form,
//! warm starts and solution import.
//!
//! Variables use the binary image `P' = (P + 1) / 2` of the sign matrix, so
//! every product of two signs becomes a product of binaries linearised by
//! `z_{i,j,r} = P'_{r,i} · P'_{r,j}` and every weighted product by
//! `t_{i,j,r} = W_r · z_{i,j,r}` (big-M). With the first column fixed to 1,
//! the sign-form identity `A + tr·I = Pᵀ W P` is equivalent to
//!
//! ```text
//! 4 P'ᵀ W P' = A + tr·M + a₁ 1ᵀ + 1 a₁ᵀ
//! ```
//!
//! where `M` has 4 at (1,1), 2 on the rest of the first row, first column and
//! diagonal, and 1 elsewhere, and `a₁` is the first row of `A`.
//!
//! Names are 1-indexed: `p_r_i`, `z_i_j_r` (`i < j`), `t_i_j_r` (`i ≤ j`),
//! `w_r`, `b_r`, `tr`, `rn_r`, and `f_r_i` for the first-difference ordering
//! used above [`MipOptions::lex_threshold`] vertices. Constraint rows are
//! named `c<tag>_<indices>`, where the tag is the constraint number in the
//! model listing (2 to 18) or `ones` for the optional all-ones row.

mod build;
mod ingest;
mod lp;
mod warmstart;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::decomposition::Rational;
use crate::error::{Error, Result};

pub use build::{build_cmipgc, model_size, sound_big_m, MipOptions, ModelSize};
pub use ingest::{ingest_solution, parse_solution_listing, snap_weight};
pub use lp::{emit_model, parse_model, render_decimal, EmittedModel};
pub use warmstart::{binary_form_holds, emit_warmstart, sign_form_holds, WarmStart};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Binary,
    Integer,
    Continuous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MipVariable {
    pub name: String,
    pub kind: VarKind,
    /// `None` is unbounded.
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MipConstraint {
    pub name: String,
    /// Constraint number (`"2"` to `"18"`) or `"ones"`.
    pub tag: String,
    pub terms: Vec<(Rational, String)>,
    pub sense: Sense,
    pub rhs: Rational,
}

/// Parameters the model was built with; stored in the LP file header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MipMeta {
    pub n: usize,
    /// Row budget `R`.
    pub rows: usize,
    pub big_m: Rational,
    pub padberg: bool,
    pub padberg_budget: Option<usize>,
    pub drop_tautologies: bool,
    /// Right-hand side of the spectral cut, when present.
    pub lb_cut: Option<usize>,
    pub all_ones_row: bool,
    /// Row ordering uses the first-difference encoding instead of `rn_r`.
    pub lex: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MipModel {
    pub meta: MipMeta,
    pub variables: Vec<MipVariable>,
    pub constraints: Vec<MipConstraint>,
    /// Minimised; references only `b_r`.
    pub objective: Vec<(Rational, String)>,
}

impl MipModel {
    pub fn variable(&self, name: &str) -> Option<&MipVariable> {
        self.variables.iter().find(|v| v.name == name)
    }

    pub fn constraint_count(&self, tag: &str) -> usize {
        self.constraints.iter().filter(|c| c.tag == tag).count()
    }
}

/// Result of [`evaluate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    #[serde(with = "crate::decomposition::rational_str")]
    pub max_violation: Rational,
    /// Names of violated rows, plus `bounds:<var>` / `integrality:<var>`.
    pub violated: Vec<String>,
    /// Tags of violated rows, plus `bounds` / `integrality`.
    pub violated_tags: BTreeSet<String>,
    #[serde(with = "crate::decomposition::rational_str")]
    pub objective: Rational,
}

impl Evaluation {
    pub fn feasible(&self) -> bool {
        self.max_violation.is_zero()
    }
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "objective={} max_violation={}",
            crate::decomposition::format_rational(&self.objective),
            crate::decomposition::format_rational(&self.max_violation)
        )?;
        if !self.violated_tags.is_empty() {
            let tags: Vec<&str> = self.violated_tags.iter().map(String::as_str).collect();
            write!(f, " violated={}", tags.join(","))?;
        }
        Ok(())
    }
}

/// Exact evaluation of every bound, integrality requirement and constraint.
pub fn evaluate(m: &MipModel, a: &BTreeMap<String, Rational>) -> Result<Evaluation> {
    let get = |name: &str| {
        a.get(name)
            .ok_or_else(|| Error::MissingVariable(name.to_string()))
    };
    let mut max_violation = Rational::zero();
    let mut violated = Vec::new();
    let mut violated_tags = BTreeSet::new();
    let mut record = |amount: Rational, name: String, tag: &str| {
        if amount.is_positive() {
            if amount > max_violation {
                max_violation = amount;
            }
            violated.push(name);
            violated_tags.insert(tag.to_string());
        }
    };
    for v in &m.variables {
        let x = get(&v.name)?;
        let below = v
            .lower
            .as_ref()
            .map(|lo| lo - x)
            .unwrap_or_else(Rational::zero);
        let above = v
            .upper
            .as_ref()
            .map(|hi| x - hi)
            .unwrap_or_else(Rational::zero);
        record(below.max(above), format!("bounds:{}", v.name), "bounds");
        if v.kind != VarKind::Continuous {
            let frac = (x - x.round()).abs();
            record(frac, format!("integrality:{}", v.name), "integrality");
        }
    }
    for c in &m.constraints {
        let mut lhs = Rational::zero();
        for (coef, name) in &c.terms {
            lhs += coef * get(name)?;
        }
        let gap = match c.sense {
            Sense::Le => &lhs - &c.rhs,
            Sense::Ge => &c.rhs - &lhs,
            Sense::Eq => (&lhs - &c.rhs).abs(),
        };
        record(gap, c.name.clone(), &c.tag);
    }
    let mut objective = Rational::zero();
    for (coef, name) in &m.objective {
        objective += coef * get(name)?;
    }
    Ok(Evaluation {
        max_violation,
        violated,
        violated_tags,
        objective,
    })
}
