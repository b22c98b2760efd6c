//! Upper-bound constructions.
//!
//! Every function here returns a [`Decomposition`] that implements its target
//! graph exactly; the tests check each one with
//! [`verify`](crate::decomposition::verify).

mod auto;
mod double_stars;
mod families;
mod hadamard;
mod small;
mod stars;

pub(crate) use auto::annotate;
pub use auto::{compile_auto, compile_with, CompileResult, Method};
pub use double_stars::{
    double_star_decomposition, prototype, union_of_double_stars, DoubleStarClasses,
};
pub use families::{
    clique_decomposition, clique_decomposition_min, cycle_decomposition,
    disjoint_cliques_decomposition, path_decomposition, perfect_matching_decomposition,
};
pub use hadamard::{hadamard, HadamardMatrix};
pub use small::{detect_small_gc, structural_lower_bound};
pub use stars::{star_decomposition, union_of_stars, union_of_stars_raw};

use crate::decomposition::Rational;
use crate::signrow::SignRow;

/// Row `r_S` paired with its weight.
fn term(n: usize, s: &[usize], w: Rational) -> (SignRow, Rational) {
    (SignRow::negative_on(n, s), w)
}
