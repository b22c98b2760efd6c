//! Hadamard matrices: Sylvester doubling, Paley type I and Kronecker products.

use std::fmt;

/// A `±1` matrix with `H·Hᵀ = order·I`.
#[derive(Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<Vec<i8>>,
}

impl HadamardMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[Vec<i8>] {
        &self.entries
    }

    /// Exact integer check of `H·Hᵀ = order·I`.
    pub fn is_valid(&self) -> bool {
        let q = self.order;
        self.entries.len() == q
            && self
                .entries
                .iter()
                .all(|r| r.len() == q && r.iter().all(|&v| v == 1 || v == -1))
            && (0..q).all(|i| {
                (0..q).all(|j| {
                    let dot: i64 = (0..q)
                        .map(|k| (self.entries[i][k] * self.entries[j][k]) as i64)
                        .sum();
                    dot == if i == j { q as i64 } else { 0 }
                })
            })
    }

    fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.order, other.order);
        let entries = (0..a * b)
            .map(|i| {
                (0..a * b)
                    .map(|j| self.entries[i / b][j / b] * other.entries[i % b][j % b])
                    .collect()
            })
            .collect();
        Self {
            order: a * b,
            entries,
        }
    }
}

impl fmt::Debug for HadamardMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let s: String = row.iter().map(|&v| if v > 0 { '+' } else { '-' }).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Paley type I: order `p + 1` for a prime `p ≡ 3 (mod 4)`.
fn paley1(p: usize) -> HadamardMatrix {
    let mut is_square = vec![false; p];
    for x in 1..p {
        is_square[x * x % p] = true;
    }
    let chi = |x: usize| -> i8 {
        match x % p {
            0 => 0,
            r if is_square[r] => 1,
            _ => -1,
        }
    };
    // H = I + S with S = [[0, 1ᵀ], [−1, Q]] and Q the Jacobsthal matrix.
    let q = p + 1;
    let entries = (0..q)
        .map(|i| {
            (0..q)
                .map(|j| {
                    let s = match (i, j) {
                        (0, 0) => 0,
                        (0, _) => 1,
                        (_, 0) => -1,
                        _ => chi(j + p - i),
                    };
                    s + (i == j) as i8
                })
                .collect()
        })
        .collect();
    HadamardMatrix { order: q, entries }
}

/// A Hadamard matrix of the given order when one of the supported
/// constructions applies; `None` otherwise (including every order that is
/// not 1, 2 or a multiple of 4).
pub fn hadamard(order: usize) -> Option<HadamardMatrix> {
    match order {
        0 => return None,
        1 => {
            return Some(HadamardMatrix {
                order: 1,
                entries: vec![vec![1]],
            })
        }
        2 => {
            return Some(HadamardMatrix {
                order: 2,
                entries: vec![vec![1, 1], vec![1, -1]],
            })
        }
        _ if !order.is_multiple_of(4) => return None,
        _ => {}
    }
    if order.is_power_of_two() {
        let h2 = hadamard(2)?;
        return Some(h2.kron(&hadamard(order / 2)?));
    }
    if is_prime(order - 1) && (order - 1) % 4 == 3 {
        return Some(paley1(order - 1));
    }
    (2..order)
        .filter(|d| order.is_multiple_of(*d) && d * d <= order)
        .find_map(|d| Some(hadamard(d)?.kron(&hadamard(order / d)?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(hadamard(2).unwrap().entries(), &[vec![1, 1], vec![1, -1]]);
        let h4 = hadamard(4).unwrap();
        assert!(h4.is_valid());
        assert_eq!(
            h4.entries(),
            &[
                vec![1, 1, 1, 1],
                vec![1, -1, 1, -1],
                vec![1, 1, -1, -1],
                vec![1, -1, -1, 1]
            ]
        );
        for q in [3, 5, 6, 10, 14, 18] {
            assert!(hadamard(q).is_none(), "order {q}");
        }
    }

    #[test]
    fn every_produced_matrix_is_valid() {
        let mut covered = Vec::new();
        for q in 1..=100 {
            if let Some(h) = hadamard(q) {
                assert_eq!(h.order(), q);
                assert!(h.is_valid(), "order {q}");
                covered.push(q);
            }
        }
        for q in [1, 2, 4, 8, 12, 16, 20, 24, 32, 44, 48, 64, 80, 96] {
            assert!(covered.contains(&q), "order {q} should be constructible");
        }
    }

    #[test]
    fn validity_check_rejects_non_hadamard() {
        let bad = HadamardMatrix {
            order: 2,
            entries: vec![vec![1, 1], vec![1, 1]],
        };
        assert!(!bad.is_valid());
    }
}
