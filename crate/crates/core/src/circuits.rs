//! Pulse programs: global MS layers separated by bit-flip masks.
//!
//! Row `p` of a decomposition becomes one global ZZ layer of strength `w_p`
//! applied while the qubits where `p_p` is negative are flipped. Consecutive
//! flips are merged, so between layers `p` and `p+1` exactly the qubits in
//! the symmetric difference of the two rows' negative sets are flipped. The
//! QAOA angle multiplies every weight and stays symbolic.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomposition::{format_rational, parse_rational, verify, Decomposition, Rational};
use crate::error::{parse_err, Error, Result};
use crate::graph::Graph;
use crate::signrow::SignRow;

/// Largest `n` accepted by [`phase_equivalence_check`].
pub const PHASE_CHECK_MAX_N: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PulseProgram {
    pub n: usize,
    /// Qubits flipped before the first layer.
    pub prologue_flips: SignRow,
    /// `(ms_weight, post_flips)` per layer.
    pub layers: Vec<(Rational, SignRow)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub ms_layers: usize,
    pub bit_flips: usize,
    pub baseline_cnots: usize,
    pub baseline_rzs: usize,
}

impl PulseProgram {
    /// Bit flips over all masks.
    pub fn bit_flips(&self) -> usize {
        self.prologue_flips.negatives()
            + self
                .layers
                .iter()
                .map(|(_, m)| m.negatives())
                .sum::<usize>()
    }

    /// XOR of the prologue and every post-layer mask; empty for a well-formed
    /// program.
    pub fn net_flips(&self) -> SignRow {
        self.layers
            .iter()
            .fold(self.prologue_flips.clone(), |acc, (_, m)| acc.xor(m))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "N {}", self.n);
        let flips = |s: &mut String, m: &SignRow| {
            let q: Vec<String> = (0..self.n)
                .filter(|&i| m.is_negative(i))
                .map(|i| (i + 1).to_string())
                .collect();
            if !q.is_empty() {
                let _ = writeln!(s, "X {}", q.join(" "));
            }
        };
        flips(&mut s, &self.prologue_flips);
        for (w, m) in &self.layers {
            let _ = writeln!(s, "MS {}", format_rational(w));
            flips(&mut s, m);
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty program"))?;
        let n: usize = header
            .strip_prefix("N ")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| parse_err(hl, "expected `N <n>`"))?;
        let mut prologue = SignRow::all_ones(n);
        let mut layers: Vec<(Rational, SignRow)> = Vec::new();
        for (ln, line) in lines {
            let (op, rest) = line.split_once(' ').unwrap_or((line, ""));
            match op {
                "MS" => {
                    let w = parse_rational(rest)
                        .ok_or_else(|| parse_err(ln, format!("bad weight `{rest}`")))?;
                    layers.push((w, SignRow::all_ones(n)));
                }
                "X" => {
                    let mut q = Vec::new();
                    for t in rest.split_whitespace() {
                        match t.parse::<usize>() {
                            Ok(v) if (1..=n).contains(&v) => q.push(v - 1),
                            _ => return Err(parse_err(ln, format!("bad qubit `{t}`"))),
                        }
                    }
                    let m = SignRow::negative_on(n, &q);
                    let target = match layers.last_mut() {
                        Some((_, post)) => post,
                        None => &mut prologue,
                    };
                    *target = target.xor(&m);
                }
                _ => return Err(parse_err(ln, format!("unknown instruction `{op}`"))),
            }
        }
        Ok(Self {
            n,
            prologue_flips: prologue,
            layers,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let qubits = |m: &SignRow| -> Vec<usize> {
            (0..self.n)
                .filter(|&i| m.is_negative(i))
                .map(|i| i + 1)
                .collect()
        };
        serde_json::json!({
            "n": self.n,
            "scale": "gamma",
            "prologue_flips": qubits(&self.prologue_flips),
            "layers": self.layers.iter().map(|(w, m)| serde_json::json!({
                "ms_weight": format_rational(w),
                "post_flips": qubits(m),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Layers in decomposition row order with merged flips.
pub fn emit_pulse_program(d: &Decomposition) -> PulseProgram {
    program_for_order(d, &(0..d.len()).collect::<Vec<_>>())
}

/// As [`emit_pulse_program`], with rows visited greedily: start from the row
/// with the fewest negative entries, then always move to the unvisited row at
/// the smallest Hamming distance (ties: earliest row).
pub fn emit_pulse_program_reordered(d: &Decomposition) -> PulseProgram {
    let rows = d.rows();
    let mut order = Vec::with_capacity(rows.len());
    let mut left: Vec<usize> = (0..rows.len()).collect();
    let mut cur: Option<usize> = None;
    while !left.is_empty() {
        let pick = (0..left.len())
            .min_by_key(|&k| match cur {
                None => rows[left[k]].0.negatives(),
                Some(c) => rows[left[k]].0.hamming(&rows[c].0),
            })
            .expect("nonempty");
        let r = left.remove(pick);
        order.push(r);
        cur = Some(r);
    }
    program_for_order(d, &order)
}

fn program_for_order(d: &Decomposition, order: &[usize]) -> PulseProgram {
    let n = d.n();
    let rows = d.rows();
    let prologue = order
        .first()
        .map_or_else(|| SignRow::all_ones(n), |&r| rows[r].0.clone());
    let layers = order
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            let post = match order.get(k + 1) {
                Some(&next) => rows[r].0.xor(&rows[next].0),
                None => rows[r].0.clone(),
            };
            (rows[r].1.clone(), post)
        })
        .collect();
    PulseProgram {
        n,
        prologue_flips: prologue,
        layers,
    }
}

/// Verifies `d` against `g` before emitting.
pub fn emit_verified(g: &Graph, d: &Decomposition) -> Result<PulseProgram> {
    let r = verify(g, d)?;
    if !r.feasible {
        return Err(Error::UnverifiedInput(format!(
            "worst violation {} at {:?}",
            r.worst_violation, r.offending_pair
        )));
    }
    Ok(emit_pulse_program(d))
}

/// Exhaustive check over all `2^n` basis states that the program's diagonal
/// phase equals `Σ_{i<j} A_ij (−1)^{x_i + x_j}`, using only the program's
/// masks and weights. Also requires every flip to be undone.
pub fn phase_equivalence_check(p: &PulseProgram, g: &Graph) -> Result<bool> {
    let n = p.n;
    if n != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: n,
        });
    }
    if n > PHASE_CHECK_MAX_N {
        return Err(Error::ResourceLimit(format!(
            "phase check enumerates 2^n states; n = {n} exceeds {PHASE_CHECK_MAX_N}"
        )));
    }
    if p.net_flips().negatives() != 0 {
        return Ok(false);
    }
    // Integer weights over the common denominator.
    let den = p
        .layers
        .iter()
        .fold(BigInt::one(), |acc, (w, _)| acc.lcm(w.denom()));
    let Some(weights) = p
        .layers
        .iter()
        .map(|(w, _)| (w.numer() * (&den / w.denom())).to_i128())
        .collect::<Option<Vec<i128>>>()
    else {
        return Err(Error::ResourceLimit(
            "weights too large for the phase check".into(),
        ));
    };
    let Some(den) = den.to_i128() else {
        return Err(Error::ResourceLimit(
            "weights too large for the phase check".into(),
        ));
    };
    assert!(n <= 64);
    // Flip frame active during each layer.
    let mut frames = Vec::with_capacity(p.layers.len());
    let mut frame = p.prologue_flips.mask();
    for (_, post) in &p.layers {
        frames.push(frame);
        frame ^= post.mask();
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let spin_sum = |bits: u64| n as i128 - 2 * bits.count_ones() as i128;
    let ok = (0u64..1 << n).into_par_iter().all(|x| {
        let target: i128 = edges
            .iter()
            .map(|&(i, j)| if (x >> i ^ x >> j) & 1 == 0 { 1 } else { -1 })
            .sum();
        let phase2: i128 = frames
            .iter()
            .zip(&weights)
            .map(|(&f, &w)| {
                let s = spin_sum(x ^ f);
                w * (s * s - n as i128)
            })
            .sum();
        phase2 == 2 * den * target
    });
    Ok(ok)
}

pub fn gate_counts(d: &Decomposition, g: &Graph) -> GateCounts {
    let m = g.edge_count();
    GateCounts {
        ms_layers: d.len(),
        bit_flips: emit_pulse_program(d).bit_flips(),
        baseline_cnots: 2 * m,
        baseline_rzs: m,
    }
}

/// Flips needed without merging: each layer flips its negative qubits in and
/// back out.
pub fn unmerged_bit_flips(d: &Decomposition) -> usize {
    d.rows().iter().map(|(r, _)| 2 * r.negatives()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        compile_auto, perfect_matching_decomposition, prototype, union_of_double_stars,
        union_of_stars_raw,
    };
    use crate::decomposition::{int, rat};
    use crate::graph::{generate_family, Family};

    #[test]
    fn complete_graph_program() {
        let d = Decomposition::from_bicliques(3, &[(&[], int(1))]);
        let p = emit_pulse_program(&d);
        assert_eq!(p.prologue_flips.negatives(), 0);
        assert_eq!(p.layers.len(), 1);
        assert_eq!(p.bit_flips(), 0);
        let k3 = generate_family(&Family::Complete { q: 3, n: 3 }).unwrap();
        assert!(phase_equivalence_check(&p, &k3).unwrap());
        assert_eq!(p.to_text(), "N 3\nMS 1\n");
    }

    #[test]
    fn star_program() {
        let k13 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let d = union_of_stars_raw(&k13);
        let p = emit_pulse_program(&d);
        assert_eq!(p.layers.len(), 4);
        assert!(phase_equivalence_check(&p, &k13).unwrap());
        assert!(p.bit_flips() <= unmerged_bit_flips(&d));
    }

    #[test]
    fn prototype_flips_are_merged() {
        let (g, d) = prototype();
        let p = emit_pulse_program(&d);
        assert_eq!(p.layers.len(), 6);
        assert!(p.bit_flips() < unmerged_bit_flips(&d));
        assert!(phase_equivalence_check(&p, &g).unwrap());
        let r = emit_pulse_program_reordered(&d);
        assert!(r.bit_flips() <= p.bit_flips());
        assert!(phase_equivalence_check(&r, &g).unwrap());
    }

    #[test]
    fn perturbed_weight_is_detected() {
        let g = generate_family(&Family::ErdosRenyi {
            n: 10,
            p: 0.5,
            seed: 10,
        })
        .unwrap();
        let d = union_of_double_stars(&g);
        let mut p = emit_pulse_program(&d);
        assert!(phase_equivalence_check(&p, &g).unwrap());
        p.layers[0].0 += rat(1, 8);
        assert!(!phase_equivalence_check(&p, &g).unwrap());
    }

    #[test]
    fn unbalanced_flips_are_rejected() {
        let d = Decomposition::from_bicliques(3, &[(&[], int(1))]);
        let mut p = emit_pulse_program(&d);
        p.layers[0].1 = SignRow::negative_on(3, &[1]);
        let k3 = generate_family(&Family::Complete { q: 3, n: 3 }).unwrap();
        assert!(!phase_equivalence_check(&p, &k3).unwrap());
    }

    #[test]
    fn text_round_trip_and_masks() {
        let g = generate_family(&Family::ErdosRenyi {
            n: 9,
            p: 0.4,
            seed: 3,
        })
        .unwrap();
        let d = compile_auto(&g).decomposition;
        let p = emit_pulse_program(&d);
        assert_eq!(PulseProgram::parse_text(&p.to_text()).unwrap(), p);
        assert_eq!(p.net_flips().negatives(), 0);
        for k in 0..d.len().saturating_sub(1) {
            assert_eq!(p.layers[k].1, d.rows()[k].0.xor(&d.rows()[k + 1].0));
        }
        assert!(PulseProgram::parse_text("N 2\nX 3\n").is_err());
    }

    #[test]
    fn gate_count_examples() {
        let k5 = generate_family(&Family::Complete { q: 5, n: 5 }).unwrap();
        let c = gate_counts(&compile_auto(&k5).decomposition, &k5);
        assert_eq!((c.ms_layers, c.baseline_cnots, c.baseline_rzs), (1, 20, 10));
        let pm4 = generate_family(&Family::PerfectMatching { q: 4 }).unwrap();
        let c = gate_counts(&perfect_matching_decomposition(4).unwrap(), &pm4);
        assert_eq!((c.ms_layers, c.baseline_cnots), (4, 8));
    }

    #[test]
    fn size_limits() {
        let g = Graph::edgeless(15).unwrap();
        let p = emit_pulse_program(&Decomposition::empty(15));
        assert!(matches!(
            phase_equivalence_check(&p, &g),
            Err(Error::ResourceLimit(_))
        ));
        let k3 = generate_family(&Family::Complete { q: 3, n: 3 }).unwrap();
        let bad = Decomposition::from_bicliques(3, &[(&[], int(2))]);
        assert!(matches!(
            emit_verified(&k3, &bad),
            Err(Error::UnverifiedInput(_))
        ));
    }
}
