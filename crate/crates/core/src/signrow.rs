//! Sign rows `p ∈ {±1}^n` stored as bit masks (bit set ⇔ `-1`).

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::graph::VertexSet;

type Words = SmallVec<[u64; 1]>;

/// A row of `P`: one sign per vertex. Bit `i` is set when vertex `i+1` has
/// sign `-1`. Rows up to 64 vertices live in a single inline word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignRow {
    n: usize,
    words: Words,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl SignRow {
    /// The all-ones row (`SB(∅)`, the complete graph).
    pub fn all_ones(n: usize) -> Self {
        Self {
            n,
            words: smallvec::smallvec![0; word_count(n)],
        }
    }

    /// Row with `-1` exactly on `s` (the row `r_S`).
    pub fn negative_on(n: usize, s: &[usize]) -> Self {
        let mut r = Self::all_ones(n);
        for &i in s {
            assert!(i < n, "vertex {i} out of range");
            r.words[i / 64] |= 1 << (i % 64);
        }
        r
    }

    /// From a single-word mask, `n ≤ 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "from_mask needs n <= 64");
        let valid = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        assert_eq!(mask & !valid, 0, "mask has bits beyond n");
        Self {
            n,
            words: smallvec::smallvec![mask],
        }
    }

    /// From explicit signs; every entry must be `±1`.
    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        let mut r = Self::all_ones(signs.len());
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => r.words[i / 64] |= 1 << (i % 64),
                _ => return Err(Error::InvalidParameter(format!("sign {s} is not ±1"))),
            }
        }
        Ok(r)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_negative(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn sign(&self, i: usize) -> i64 {
        if self.is_negative(i) {
            -1
        } else {
            1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.n).map(|i| self.sign(i) as i8).collect()
    }

    /// Bit of the binary image `P' = (P + 1) / 2`.
    #[inline]
    pub fn binary(&self, i: usize) -> u8 {
        (!self.is_negative(i)) as u8
    }

    /// Single-word mask; panics for `n > 64`.
    pub fn mask(&self) -> u64 {
        assert!(self.n <= 64, "mask() needs n <= 64");
        self.words[0]
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Number of `-1` entries.
    pub fn negatives(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn negated(&self) -> Self {
        let mut r = self.clone();
        let full = self.n / 64;
        for w in r.words.iter_mut().take(full) {
            *w = !*w;
        }
        if !self.n.is_multiple_of(64) {
            r.words[full] ^= (1u64 << (self.n % 64)) - 1;
        }
        r
    }

    /// Canonical representative of `{p, -p}`: first sign `+1`.
    pub fn canonical(&self) -> Self {
        if self.n > 0 && self.is_negative(0) {
            self.negated()
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.n == 0 || !self.is_negative(0)
    }

    /// Positions (0-indexed) where the two rows differ.
    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Self { n: self.n, words }
    }

    pub fn hamming(&self, other: &Self) -> usize {
        self.xor(other).negatives()
    }

    /// Keeps the columns listed in `s`, in order.
    pub fn restrict(&self, s: &VertexSet) -> Self {
        let idx = s.indices();
        let mut r = Self::all_ones(idx.len());
        for (k, &i) in idx.iter().enumerate() {
            if self.is_negative(i) {
                r.words[k / 64] |= 1 << (k % 64);
            }
        }
        r
    }

    /// Column `i` of the result is column `perm⁻¹(i)` of `self`, i.e. vertex
    /// `v` moves to position `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut r = Self::all_ones(self.n);
        for (v, &p) in perm.iter().enumerate() {
            if self.is_negative(v) {
                r.words[p / 64] |= 1 << (p % 64);
            }
        }
        r
    }

    /// `rn = Σ 2^(i-1) · P'_i` as a big-endian hex string of the binary image.
    pub fn row_number_hex(&self) -> String {
        self.negated().to_hex()
    }

    /// Mask as lowercase hex without prefix, most significant word first.
    pub fn to_hex(&self) -> String {
        let mut s = String::new();
        for (k, w) in self.words.iter().rev().enumerate() {
            if k == 0 {
                s.push_str(&format!("{w:x}"));
            } else {
                s.push_str(&format!("{w:016x}"));
            }
        }
        s
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        let hex = hex.trim_start_matches("0x");
        if hex.is_empty() || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::InvalidParameter(format!("bad hex mask `{hex}`")));
        }
        let mut r = Self::all_ones(n);
        let digits: Vec<u8> = hex
            .bytes()
            .rev()
            .map(|b| (b as char).to_digit(16).unwrap() as u8)
            .collect();
        for (d, &v) in digits.iter().enumerate() {
            for b in 0..4 {
                if v >> b & 1 == 1 {
                    let bit = 4 * d + b;
                    if bit >= n {
                        return Err(Error::InvalidParameter(format!(
                            "mask `{hex}` has bits beyond n = {n}"
                        )));
                    }
                    r.words[bit / 64] |= 1 << (bit % 64);
                }
            }
        }
        Ok(r)
    }
}

/// Ordered by `n`, then by the row number `rn` of the binary image (ascending).
impl Ord for SignRow {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            // rn is the bitwise complement of the mask, so rn order is the
            // reverse of mask order, compared from the most significant word.
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match b.cmp(a) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for SignRow {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SignRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.n)
            .map(|i| if self.is_negative(i) { '-' } else { '+' })
            .collect();
        write!(f, "[{s}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_access_and_negation() {
        let r = SignRow::from_signs(&[1, -1, -1, 1, 1]).unwrap();
        assert_eq!(r.mask(), 0b00110);
        assert_eq!(r.negated().signs(), vec![-1, 1, 1, -1, -1]);
        assert_eq!(r.negated().negated(), r);
        assert!(r.is_canonical());
        assert_eq!(r.negated().canonical(), r);
        assert_eq!(r.binary(1), 0);
        assert_eq!(r.binary(0), 1);
        assert!(SignRow::from_signs(&[1, 0]).is_err());
    }

    #[test]
    fn multiword_rows() {
        let r = SignRow::negative_on(130, &[0, 64, 129]);
        assert_eq!(r.words().len(), 3);
        assert_eq!(r.negatives(), 3);
        assert_eq!(r.negated().negatives(), 127);
        assert_eq!(SignRow::from_hex(130, &r.to_hex()).unwrap(), r);
        assert!(r.canonical().is_canonical());
    }

    #[test]
    fn ordering_follows_row_number() {
        // rn(all ones) = 2^n - 1 is the largest.
        let n = 4;
        let mut rows: Vec<SignRow> = (0..16u64).map(|m| SignRow::from_mask(n, m)).collect();
        rows.sort();
        let rn: Vec<u64> = rows.iter().map(|r| !r.mask() & 0xf).collect();
        assert!(rn.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(rows.last().unwrap(), &SignRow::all_ones(4));
        assert_eq!(SignRow::from_mask(4, 0b0110).row_number_hex(), "9");
    }

    #[test]
    fn restrict_and_permute() {
        let r = SignRow::from_signs(&[1, -1, 1, -1]).unwrap();
        let s = VertexSet::from_indices([1, 2]).unwrap();
        assert_eq!(r.restrict(&s).signs(), vec![-1, 1]);
        assert_eq!(r.permute(&[3, 2, 1, 0]).signs(), vec![-1, 1, -1, 1]);
    }

    #[test]
    fn hex_rejects_overflow() {
        assert!(SignRow::from_hex(3, "8").is_err());
        assert!(SignRow::from_hex(3, "zz").is_err());
        assert_eq!(SignRow::from_hex(3, "5").unwrap().signs(), vec![-1, 1, -1]);
    }
}
