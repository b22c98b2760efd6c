//! Exact linear systems over the rationals via fraction-free elimination.
//!
//! Bareiss elimination keeps every intermediate entry an integer minor of the
//! input, so integer systems stay in integers. The fast path runs on `i128`
//! with checked arithmetic and restarts on `BigInt` when a product overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::decomposition::Rational;
use crate::error::{Error, Result};

/// Integer ring used by the elimination.
pub(crate) trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `(a·b − c·d) / p`, where the division is known to be exact.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self> {
        let x = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
        debug_assert_eq!(x % p, 0);
        Some(x / p)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, p: &Self) -> Option<Self> {
        Some((a * b - c * d) / p)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Row echelon form produced by [`bareiss`].
pub(crate) struct Echelon<T> {
    /// Augmented rows; the first `rank` rows carry the pivots.
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
    pub consistent: bool,
}

/// Fraction-free forward elimination of the augmented matrix `[B | c]`
/// (last column is `c`). Returns `None` only when `T` overflows.
pub(crate) fn bareiss<T: Scalar>(mut rows: Vec<Vec<T>>, k: usize) -> Option<Echelon<T>> {
    let m = rows.len();
    let mut prev = T::one();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        if rank == m {
            break;
        }
        let Some(pr) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let piv_row = &top[rank];
        let piv = piv_row[col].clone();
        for row in rest.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..=k {
                row[j] = T::cross_div(&piv, &row[j], &f, &piv_row[j], &prev)?;
            }
            row[col] = T::zero();
        }
        prev = piv;
        pivots.push(col);
        rank += 1;
    }
    let consistent = rows[rank..].iter().all(|r| r[k].is_zero());
    Some(Echelon {
        rows,
        pivots,
        consistent,
    })
}

/// Back substitution on an echelon form; free variables are set to zero.
fn back_substitute<T: Scalar>(e: &Echelon<T>, k: usize) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); k];
    for (r, &col) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[r];
        let mut acc = Rational::from_integer(row[k].to_big());
        for j in col + 1..k {
            if !row[j].is_zero() {
                acc -= Rational::from_integer(row[j].to_big()) * &x[j];
            }
        }
        x[col] = acc / Rational::from_integer(row[col].to_big());
    }
    x
}

/// Consistency test and solution of an integer system `B w = c`.
pub fn solve_integer_system(b: &[Vec<i64>], c: &[i64]) -> Option<Vec<Rational>> {
    let k = b.first().map_or(0, Vec::len);
    let small: Vec<Vec<i128>> = b
        .iter()
        .zip(c)
        .map(|(row, &ci)| row.iter().map(|&v| v as i128).chain([ci as i128]).collect())
        .collect();
    if let Some(e) = bareiss(small, k) {
        return e.consistent.then(|| back_substitute(&e, k));
    }
    let big: Vec<Vec<BigInt>> = b
        .iter()
        .zip(c)
        .map(|(row, &ci)| {
            row.iter()
                .map(|&v| BigInt::from(v))
                .chain([BigInt::from(ci)])
                .collect()
        })
        .collect();
    let e = bareiss(big, k).expect("BigInt elimination cannot overflow");
    e.consistent.then(|| back_substitute(&e, k))
}

/// A rational linear system `B w = c`, one row per equation.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    pub b: Vec<Vec<Rational>>,
    pub c: Vec<Rational>,
}

impl LinearSystem {
    pub fn new(b: Vec<Vec<Rational>>, c: Vec<Rational>) -> Result<Self> {
        if b.len() != c.len() {
            return Err(Error::DimensionMismatch {
                expected: b.len(),
                found: c.len(),
            });
        }
        let k = b.first().map_or(0, Vec::len);
        if let Some(row) = b.iter().find(|r| r.len() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: row.len(),
            });
        }
        Ok(Self { b, c })
    }

    pub fn unknowns(&self) -> usize {
        self.b.first().map_or(0, Vec::len)
    }
}

/// Any exact solution of `B w = c`, or `None` if the system is inconsistent.
pub fn solve_rational_system(sys: &LinearSystem) -> Option<Vec<Rational>> {
    let k = sys.unknowns();
    // Clear denominators row by row so elimination runs over the integers.
    let rows: Vec<Vec<BigInt>> = sys
        .b
        .iter()
        .zip(&sys.c)
        .map(|(row, ci)| {
            let l = row
                .iter()
                .chain([ci])
                .fold(<BigInt as One>::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .chain([ci])
                .map(|v| v.numer() * (&l / v.denom()))
                .collect()
        })
        .collect();
    if rows
        .iter()
        .all(|r| r.iter().all(|v| v.abs() < BigInt::from(1u64 << 60)))
    {
        let small: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| i128::try_from(v).expect("bounded"))
                    .collect()
            })
            .collect();
        if let Some(e) = bareiss(small, k) {
            return e.consistent.then(|| back_substitute(&e, k));
        }
    }
    let e = bareiss(rows, k).expect("BigInt elimination cannot overflow");
    e.consistent.then(|| back_substitute(&e, k))
}
