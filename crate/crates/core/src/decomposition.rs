//! `(P, W)` pairs: sign rows with exact rational weights.
//!
//! A decomposition implements a graph when, for every pair `i < j`,
//! `Σ_r w_r · p_r[i] · p_r[j] = A[i][j]`. The diagonal of `PᵀWP` is always
//! `tr(W)` and is never compared against `A`.
//!
//! Each row `p` corresponds to the spin biclique `SB(S)` with `S` the set of
//! negative positions; `p` and `-p` give the same biclique, so the canonical
//! form keeps the first sign `+1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::graph::{check_permutation, Graph, VertexSet};
use crate::signrow::SignRow;

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num/den`, or just `num` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => {
            if let Ok(n) = s.parse::<BigInt>() {
                return Some(Rational::from_integer(n));
            }
            parse_decimal(s)
        }
    }
}

/// Exact value of a plain decimal literal such as `-0.25` or `1e-3`.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let scale = exp - frac_part.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut v = Rational::from_integer(digits);
    if scale >= 0 {
        v *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        v /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -v } else { v })
}

/// Weights rescaled to integers over their least common denominator.
pub(crate) struct ScaledWeights {
    pub denom: BigInt,
    pub small: Option<Vec<i128>>,
    pub big: Vec<BigInt>,
}

impl ScaledWeights {
    pub fn new<'a>(weights: impl IntoIterator<Item = &'a Rational>) -> Self {
        let weights: Vec<&Rational> = weights.into_iter().collect();
        let denom = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let big: Vec<BigInt> = weights
            .iter()
            .map(|w| w.numer() * (&denom / w.denom()))
            .collect();
        // Keep enough headroom for sums over thousands of rows.
        let small = big
            .iter()
            .map(|b| b.to_i128().filter(|v| v.unsigned_abs() < 1u128 << 100))
            .collect::<Option<Vec<_>>>()
            .filter(|_| denom.to_i128().is_some_and(|d| d < 1i128 << 100));
        Self { denom, small, big }
    }
}

/// A spin biclique `SB(S, V \ S)`: weight `-1` on the cut, `+1` elsewhere.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpinBiclique {
    pub cut_set: VertexSet,
}

impl SpinBiclique {
    pub fn new(cut_set: VertexSet) -> Self {
        Self { cut_set }
    }

    /// The same biclique named by the side not containing vertex 1.
    pub fn canonical(&self, n: usize) -> Self {
        if self.cut_set.contains(0) {
            Self::new(self.cut_set.complement(n))
        } else {
            self.clone()
        }
    }

    /// Edge signs `z(e)` as an `n × n` matrix with zero diagonal.
    pub fn adjacency(&self, n: usize) -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(
                        |j| match (i == j, self.cut_set.contains(i) != self.cut_set.contains(j)) {
                            (true, _) => 0,
                            (false, true) => -1,
                            (false, false) => 1,
                        },
                    )
                    .collect()
            })
            .collect()
    }
}

/// `r_S`: `-1` on the members of `S`, `+1` elsewhere.
pub fn biclique_row(s: &SpinBiclique, n: usize) -> Result<SignRow> {
    s.cut_set.check_within(n)?;
    Ok(SignRow::negative_on(n, s.cut_set.indices()))
}

/// Outcome of [`verify`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub feasible: bool,
    #[serde(with = "rational_str")]
    pub worst_violation: Rational,
    /// First pair (0-indexed, `i < j`) attaining the worst violation.
    pub offending_pair: Option<(usize, usize)>,
}

/// An ordered list of `(row, weight)` pairs over `n` vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    n: usize,
    rows: Vec<(SignRow, Rational)>,
}

impl Decomposition {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
        }
    }

    pub fn new(n: usize, rows: Vec<(SignRow, Rational)>) -> Result<Self> {
        if let Some((r, _)) = rows.iter().find(|(r, _)| r.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.n(),
            });
        }
        Ok(Self { n, rows })
    }

    /// Sum of `w · SB(S)` terms, each given by its cut set.
    pub fn from_bicliques(n: usize, terms: &[(&[usize], Rational)]) -> Self {
        Self {
            n,
            rows: terms
                .iter()
                .map(|(s, w)| (SignRow::negative_on(n, s), w.clone()))
                .collect(),
        }
    }

    pub fn push(&mut self, row: SignRow, weight: Rational) {
        assert_eq!(row.n(), self.n, "row length must equal n");
        self.rows.push((row, weight));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[(SignRow, Rational)] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `tr(W)`.
    pub fn trace(&self) -> Rational {
        self.rows.iter().map(|(_, w)| w).sum()
    }

    /// Whether the rows satisfy the canonical-form invariants.
    pub fn is_canonical(&self) -> bool {
        self.rows
            .iter()
            .all(|(r, w)| r.is_canonical() && !w.is_zero())
            && self.rows.windows(2).all(|p| p[0].0 < p[1].0)
    }

    /// Vertex `v` moves to position `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        Ok(Self {
            n: self.n,
            rows: self
                .rows
                .iter()
                .map(|(r, w)| (r.permute(perm), w.clone()))
                .collect(),
        })
    }

    /// Text document: `n k tr`, then `k` lines `num/den mask_hex`.
    pub fn to_document(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} {} {}",
            self.n,
            self.len(),
            format_rational(&self.trace())
        );
        for (row, w) in &self.rows {
            let _ = writeln!(s, "{}/{} {}", w.numer(), w.denom(), row.to_hex());
        }
        s
    }

    pub fn parse_document(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty document"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let [n, k, tr] = parts[..] else {
            return Err(parse_err(hl, "header must be `n k tr`"));
        };
        let n: usize = n
            .parse()
            .map_err(|_| parse_err(hl, format!("bad n `{n}`")))?;
        let k: usize = k
            .parse()
            .map_err(|_| parse_err(hl, format!("bad k `{k}`")))?;
        let tr = parse_rational(tr).ok_or_else(|| parse_err(hl, format!("bad trace `{tr}`")))?;
        let mut d = Self::empty(n);
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [w, mask] = parts[..] else {
                return Err(parse_err(ln, "row must be `weight mask_hex`"));
            };
            let w = parse_rational(w).ok_or_else(|| parse_err(ln, format!("bad weight `{w}`")))?;
            let row = SignRow::from_hex(n, mask).map_err(|e| parse_err(ln, e.to_string()))?;
            d.rows.push((row, w));
        }
        if d.len() != k {
            return Err(parse_err(
                hl,
                format!("header announces {k} rows, found {}", d.len()),
            ));
        }
        if d.trace() != tr {
            return Err(parse_err(hl, "trace in header does not match the weights"));
        }
        Ok(d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DecompositionDoc::from(self)).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc: DecompositionDoc =
            serde_json::from_value(v.clone()).map_err(|e| parse_err(0, e.to_string()))?;
        doc.try_into()
    }
}

/// Structured export with the same fields as the text document.
#[derive(Serialize, Deserialize)]
struct DecompositionDoc {
    n: usize,
    k: usize,
    trace: String,
    rows: Vec<RowDoc>,
}

#[derive(Serialize, Deserialize)]
struct RowDoc {
    weight: String,
    mask: String,
    signs: Vec<i8>,
}

impl From<&Decomposition> for DecompositionDoc {
    fn from(d: &Decomposition) -> Self {
        Self {
            n: d.n,
            k: d.len(),
            trace: format_rational(&d.trace()),
            rows: d
                .rows
                .iter()
                .map(|(r, w)| RowDoc {
                    weight: format_rational(w),
                    mask: r.to_hex(),
                    signs: r.signs(),
                })
                .collect(),
        }
    }
}

impl TryFrom<DecompositionDoc> for Decomposition {
    type Error = Error;

    fn try_from(doc: DecompositionDoc) -> Result<Self> {
        let mut d = Decomposition::empty(doc.n);
        for r in doc.rows {
            let w = parse_rational(&r.weight)
                .ok_or_else(|| parse_err(0, format!("bad weight `{}`", r.weight)))?;
            let row = SignRow::from_hex(doc.n, &r.mask)?;
            if row.signs() != r.signs {
                return Err(parse_err(
                    0,
                    format!("mask {} disagrees with its signs", r.mask),
                ));
            }
            d.rows.push((row, w));
        }
        if d.len() != doc.k {
            return Err(parse_err(0, "row count disagrees with k"));
        }
        Ok(d)
    }
}

pub(crate) mod rational_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}

/// Exact check of `Σ_r w_r p_r[i] p_r[j] = A[i][j]` for all `i < j`.
pub fn verify(g: &Graph, d: &Decomposition) -> Result<VerifyReport> {
    if g.n() != d.n {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: d.n,
        });
    }
    let n = d.n;
    let scaled = ScaledWeights::new(d.rows.iter().map(|(_, w)| w));
    let mut worst = BigInt::zero();
    let mut pair = None;
    let mut consider = |diff: BigInt, i: usize, j: usize| {
        let diff = diff.abs();
        if diff > worst {
            worst = diff;
            pair = Some((i, j));
        }
    };
    if let Some(small) = &scaled.small {
        let den = scaled.denom.to_i128().expect("checked in ScaledWeights");
        for i in 0..n {
            for j in i + 1..n {
                let mut lhs = 0i128;
                for ((row, _), &w) in d.rows.iter().zip(small) {
                    if row.is_negative(i) == row.is_negative(j) {
                        lhs += w;
                    } else {
                        lhs -= w;
                    }
                }
                let diff = lhs - g.a(i, j) as i128 * den;
                if diff != 0 {
                    consider(BigInt::from(diff), i, j);
                }
            }
        }
    } else {
        for i in 0..n {
            for j in i + 1..n {
                let mut lhs = BigInt::zero();
                for ((row, _), w) in d.rows.iter().zip(&scaled.big) {
                    if row.is_negative(i) == row.is_negative(j) {
                        lhs += w;
                    } else {
                        lhs -= w;
                    }
                }
                let diff = lhs - BigInt::from(g.a(i, j)) * &scaled.denom;
                if !diff.is_zero() {
                    consider(diff, i, j);
                }
            }
        }
    }
    let worst_violation = Rational::new(worst, scaled.denom);
    Ok(VerifyReport {
        feasible: worst_violation.is_zero(),
        worst_violation,
        offending_pair: pair,
    })
}

/// Convenience wrapper: `verify(g, d)` is feasible.
pub fn implements(g: &Graph, d: &Decomposition) -> bool {
    verify(g, d).map(|r| r.feasible).unwrap_or(false)
}

/// `PᵀWP` exactly; every diagonal entry equals `tr(W)`.
pub fn gram(d: &Decomposition) -> Vec<Vec<Rational>> {
    let n = d.n;
    let mut m = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut s = Rational::zero();
            for (row, w) in &d.rows {
                if row.is_negative(i) == row.is_negative(j) {
                    s += w;
                } else {
                    s -= w;
                }
            }
            m[j][i] = s.clone();
            m[i][j] = s;
        }
    }
    m
}

/// Canonical form: flip rows to first sign `+1`, merge equal rows, drop zero
/// weights, sort by row number.
pub fn simplify(d: &Decomposition) -> Decomposition {
    let mut merged: BTreeMap<SignRow, Rational> = BTreeMap::new();
    for (row, w) in &d.rows {
        *merged.entry(row.canonical()).or_insert_with(Rational::zero) += w;
    }
    Decomposition {
        n: d.n,
        rows: merged.into_iter().filter(|(_, w)| !w.is_zero()).collect(),
    }
}

/// Keeps the columns in `s` (relabelled in increasing order); weights unchanged.
pub fn restrict(d: &Decomposition, s: &VertexSet) -> Result<Decomposition> {
    if s.is_empty() {
        return Err(Error::InvalidParameter(
            "cannot restrict to the empty set".into(),
        ));
    }
    s.check_within(d.n)?;
    Ok(Decomposition {
        n: s.len(),
        rows: d
            .rows
            .iter()
            .map(|(r, w)| (r.restrict(s), w.clone()))
            .collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineSign {
    Plus,
    Minus,
}

/// Row concatenation; with [`CombineSign::Minus`] the second operand's weights
/// are negated, so the result implements `G1 - G2`.
pub fn combine(d1: &Decomposition, d2: &Decomposition, sign: CombineSign) -> Result<Decomposition> {
    if d1.n != d2.n {
        return Err(Error::DimensionMismatch {
            expected: d1.n,
            found: d2.n,
        });
    }
    let mut rows = d1.rows.clone();
    rows.extend(d2.rows.iter().map(|(r, w)| {
        let w = match sign {
            CombineSign::Plus => w.clone(),
            CombineSign::Minus => -w,
        };
        (r.clone(), w)
    }));
    Ok(Decomposition { n: d1.n, rows })
}

/// Graph implemented by a decomposition, if its off-diagonal is 0/1.
pub fn implemented_graph(d: &Decomposition) -> Option<Graph> {
    let m = gram(d);
    let mut ok = true;
    let g = Graph::from_fn(d.n.max(1), |i, j| {
        if m[i][j].is_one() {
            true
        } else {
            ok &= m[i][j].is_zero();
            false
        }
    })
    .ok()?;
    ok.then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, induced, Family};

    pub(crate) fn prototype() -> (Graph, Decomposition) {
        let g = Graph::from_edges(6, &[(0, 2), (0, 3), (1, 3), (1, 4)]).unwrap();
        let p: [[i8; 6]; 6] = [
            [1, 1, 1, 1, 1, 1],
            [1, 1, 1, 1, -1, -1],
            [1, 1, 1, -1, -1, 1],
            [1, 1, -1, -1, -1, -1],
            [1, -1, 1, -1, -1, 1],
            [1, -1, -1, -1, 1, 1],
        ];
        let w = [
            rat(1, 4),
            rat(1, 4),
            rat(-1, 4),
            rat(-1, 4),
            rat(1, 4),
            rat(-1, 4),
        ];
        let rows = p
            .iter()
            .zip(w)
            .map(|(r, w)| (SignRow::from_signs(r).unwrap(), w))
            .collect();
        (g, Decomposition::new(6, rows).unwrap())
    }

    #[test]
    fn biclique_row_examples() {
        let e = SpinBiclique::new(VertexSet::empty());
        assert_eq!(biclique_row(&e, 3).unwrap().signs(), vec![1, 1, 1]);
        let s = SpinBiclique::new(VertexSet::from_labels(&[1, 2, 3]).unwrap());
        assert_eq!(biclique_row(&s, 5).unwrap().signs(), vec![-1, -1, -1, 1, 1]);
        let s = SpinBiclique::new(VertexSet::from_labels(&[1, 4, 6]).unwrap());
        assert_eq!(
            biclique_row(&s, 7).unwrap().signs(),
            vec![-1, 1, 1, -1, 1, -1, 1]
        );
        let bad = SpinBiclique::new(VertexSet::from_labels(&[4]).unwrap());
        assert!(biclique_row(&bad, 3).is_err());
    }

    #[test]
    fn biclique_row_reproduces_adjacency_exhaustively() {
        for n in 1..=8usize {
            for bits in 0u64..(1 << n) {
                let s = VertexSet::from_indices((0..n).filter(|i| bits >> i & 1 == 1)).unwrap();
                let sb = SpinBiclique::new(s);
                let p = biclique_row(&sb, n).unwrap();
                let outer: Vec<Vec<i64>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| if i == j { 0 } else { p.sign(i) * p.sign(j) })
                            .collect()
                    })
                    .collect();
                assert_eq!(outer, sb.adjacency(n));
                // p and -p are the two preimages.
                let q = biclique_row(&sb.canonical(n), n).unwrap();
                assert!(q == p || q == p.negated());
                assert!(q.is_canonical());
            }
        }
    }

    #[test]
    fn verify_examples() {
        let k5 = generate_family(&Family::Complete { q: 5, n: 5 }).unwrap();
        let one = Decomposition::from_bicliques(5, &[(&[], int(1))]);
        assert!(verify(&k5, &one).unwrap().feasible);

        let (g, d) = prototype();
        let rep = verify(&g, &d).unwrap();
        assert!(rep.feasible);
        assert!(rep.worst_violation.is_zero());

        let k3 = generate_family(&Family::Complete { q: 3, n: 3 }).unwrap();
        let two = Decomposition::from_bicliques(3, &[(&[], int(2))]);
        let rep = verify(&k3, &two).unwrap();
        assert!(!rep.feasible);
        assert_eq!(rep.worst_violation, int(1));
        assert_eq!(rep.offending_pair, Some((0, 1)));

        assert!(matches!(
            verify(&k3, &one),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gram_examples() {
        let d = Decomposition::from_bicliques(2, &[(&[], int(1))]);
        assert_eq!(gram(&d), vec![vec![int(1), int(1)], vec![int(1), int(1)]]);
        let (g, d) = prototype();
        assert!(d.trace().is_zero());
        let m = gram(&d);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(m[i][j], int(g.a(i, j)));
                assert_eq!(m[i][j], m[j][i]);
            }
        }
    }

    #[test]
    fn simplify_examples() {
        let d = Decomposition::from_bicliques(3, &[(&[1], rat(1, 4)), (&[1], rat(1, 4))]);
        let s = simplify(&d);
        assert_eq!(s.len(), 1);
        assert_eq!(s.rows()[0].1, rat(1, 2));

        let p = SignRow::from_signs(&[1, -1, 1]).unwrap();
        let d =
            Decomposition::new(3, vec![(p.clone(), rat(1, 2)), (p.negated(), rat(-1, 2))]).unwrap();
        assert!(simplify(&d).is_empty());

        let (_, proto) = prototype();
        let canon = simplify(&proto);
        assert!(canon.is_canonical());
        assert_eq!(simplify(&canon), canon);
    }

    #[test]
    fn restrict_examples() {
        let (g, d) = prototype();
        assert_eq!(restrict(&d, &VertexSet::all(6)).unwrap(), d);
        let s = VertexSet::from_labels(&[1, 3, 4, 6]).unwrap();
        let r = restrict(&d, &s).unwrap();
        assert!(verify(&induced(&g, &s).unwrap(), &r).unwrap().feasible);
        let ones = Decomposition::from_bicliques(5, &[(&[], int(1))]);
        let r = restrict(&ones, &VertexSet::from_labels(&[2, 5]).unwrap()).unwrap();
        assert_eq!(r.rows()[0].0, SignRow::all_ones(2));
        assert!(restrict(&d, &VertexSet::empty()).is_err());
    }

    #[test]
    fn combine_examples() {
        // Edge {1,2} plus edge {3,4} via single-edge clique decompositions.
        let e12 = Decomposition::from_bicliques(
            4,
            &[
                (&[0], rat(-1, 4)),
                (&[1], rat(-1, 4)),
                (&[0, 1], rat(1, 4)),
                (&[], rat(1, 4)),
            ],
        );
        let e34 = Decomposition::from_bicliques(
            4,
            &[
                (&[2], rat(-1, 4)),
                (&[3], rat(-1, 4)),
                (&[2, 3], rat(1, 4)),
                (&[], rat(1, 4)),
            ],
        );
        let pm2 = generate_family(&Family::PerfectMatching { q: 2 }).unwrap();
        let sum = combine(&e12, &e34, CombineSign::Plus).unwrap();
        assert!(verify(&pm2, &sum).unwrap().feasible);
        let diff = combine(&sum, &e34, CombineSign::Minus).unwrap();
        let only12 = Graph::from_edges(4, &[(0, 1)]).unwrap();
        assert!(verify(&only12, &diff).unwrap().feasible);
        assert_eq!(
            combine(&e12, &Decomposition::empty(4), CombineSign::Plus).unwrap(),
            e12
        );
        assert!(combine(&e12, &Decomposition::empty(3), CombineSign::Plus).is_err());
    }

    #[test]
    fn document_round_trip() {
        let (_, d) = prototype();
        let text = d.to_document();
        assert!(text.starts_with("6 6 0\n1/4 0\n"));
        assert_eq!(Decomposition::parse_document(&text).unwrap(), d);
        assert_eq!(Decomposition::from_json(&d.to_json()).unwrap(), d);
        assert!(Decomposition::parse_document("3 1 1\n1/2 0").is_err());
        assert!(Decomposition::parse_document("3 2 1\n1 0").is_err());
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_decimal("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_decimal("2.5E1").unwrap(), int(25));
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert!(parse_decimal("1.2.3").is_none());
        assert!(parse_rational("1/0").is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_decomposition() -> impl Strategy<Value = Decomposition> {
            (2usize..8).prop_flat_map(|n| {
                prop::collection::vec((0u64..(1 << n), -8i64..=8, 1i64..=4), 0..8).prop_map(
                    move |rows| {
                        let rows = rows
                            .into_iter()
                            .map(|(m, a, b)| (SignRow::from_mask(n, m), rat(a, b)))
                            .collect();
                        Decomposition::new(n, rows).unwrap()
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn simplify_preserves_off_diagonal(d in arb_decomposition()) {
                let s = simplify(&d);
                prop_assert!(s.len() <= d.len());
                prop_assert!(s.is_canonical());
                let (a, b) = (gram(&d), gram(&s));
                for i in 0..d.n() {
                    for j in 0..d.n() {
                        if i != j {
                            prop_assert_eq!(&a[i][j], &b[i][j]);
                        }
                    }
                }
                prop_assert_eq!(simplify(&s), s);
            }

            #[test]
            fn gram_is_symmetric_with_trace_diagonal(d in arb_decomposition()) {
                let m = gram(&d);
                let tr = d.trace();
                for i in 0..d.n() {
                    prop_assert_eq!(&m[i][i], &tr);
                    for j in 0..d.n() {
                        prop_assert_eq!(&m[i][j], &m[j][i]);
                    }
                }
            }

            #[test]
            fn identical_columns_commute_with_gram(d in arb_decomposition(), a in 0usize..8, b in 0usize..8) {
                let n = d.n();
                let (a, b) = (a % n, b % n);
                // Force columns a and b equal, then swap them.
                let rows = d.rows().iter().map(|(r, w)| {
                    let mut s = r.signs();
                    s[b] = s[a];
                    (SignRow::from_signs(&s).unwrap(), w.clone())
                }).collect();
                let d = Decomposition::new(n, rows).unwrap();
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(a, b);
                let swapped = d.permute(&perm).unwrap();
                prop_assert_eq!(gram(&d), gram(&swapped));
            }

            #[test]
            fn document_round_trips(d in arb_decomposition()) {
                prop_assert_eq!(Decomposition::parse_document(&d.to_document()).unwrap(), d);
            }
        }
    }
}
