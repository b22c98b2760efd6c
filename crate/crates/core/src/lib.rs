//! Compilation of Max-Cut QAOA cost Hamiltonians into global coupling layers.
//!
//! Given a simple graph `G` with adjacency matrix `A`, the toolkit looks for a
//! short list of sign rows `p_r ∈ {±1}^n` and rational weights `w_r` with
//!
//! ```text
//! A[i][j] = Σ_r w_r · p_r[i] · p_r[j]     for all i < j
//! ```
//!
//! Each `(p_r, w_r)` pair is one global ZZ layer of strength `w_r`, conjugated
//! by bit flips on the qubits where `p_r` is negative. The minimum number of
//! rows is the graph coupling number `gc(G)`.
//!
//! | module | contents |
//! |--------|----------|
//! | [`graph`] | graph type, family generators, parsers, complement / induced subgraph |
//! | [`decomposition`] | `(P, W)` data model, exact verification, canonical form |
//! | [`bounds`] | spectral lower bound `n - max mult(λ)` |
//! | [`constructions`] | detectors, family constructions, Hadamard, stars, double stars |
//! | [`oracle`] | exhaustive exact solver on small graphs |
//! | [`milp`] | compact MIP model, LP-format writer, warm starts, solution import |
//! | [`circuits`] | pulse-program emission and diagonal-phase equivalence check |
//! | [`bench`] | seeded benchmark suite and CSV reports |

#![allow(clippy::needless_range_loop)]

pub mod bench;
pub mod bounds;
pub mod circuits;
pub mod constructions;
pub mod decomposition;
mod error;
pub mod graph;
pub mod linalg;
pub mod milp;
pub mod oracle;
pub mod poly;
pub mod signrow;

pub use bounds::{spectral_lower_bound, BoundMode, BoundReport};
pub use circuits::{GateCounts, PulseProgram};
pub use constructions::{compile_auto, CompileResult, Method};
pub use decomposition::{Decomposition, Rational, SpinBiclique, VerifyReport};
pub use error::{Error, Result};
pub use graph::{complement, generate_family, induced, Family, Graph, VertexSet};
pub use oracle::{brute_force_gc, certify_infeasible_k, OracleOptions};
pub use signrow::SignRow;
