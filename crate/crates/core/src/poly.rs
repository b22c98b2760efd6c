//! Dense univariate polynomials over the integers and rationals.
//!
//! Coefficients are stored lowest degree first; the zero polynomial is the
//! empty vector.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::decomposition::Rational;
use crate::graph::Graph;

pub type IntPoly = Vec<BigInt>;
pub type RatPoly = Vec<Rational>;

/// `det(xI − A)`, computed with the Faddeev–LeVerrier recurrence in exact
/// integer arithmetic (every division by `k` is exact).
pub fn char_poly(g: &Graph) -> IntPoly {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // M_1 = I; c_{n-k} = −tr(A·M_k)/k; M_{k+1} = A·M_k + c_{n-k}·I.
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 1..=n {
        let am: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| adj[i].iter().fold(BigInt::zero(), |acc, &l| acc + &m[l][j]))
                    .collect()
            })
            .collect();
        let tr: BigInt = (0..n).map(|i| &am[i][i]).sum();
        let c = -tr / BigInt::from(k);
        coeffs[n - k] = c.clone();
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    coeffs
}

pub fn to_rational(p: &[BigInt]) -> RatPoly {
    trim(
        p.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    )
}

fn trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(p: &[Rational]) -> RatPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn monic(p: RatPoly) -> RatPoly {
    match p.last() {
        Some(lead) => {
            let lead = lead.clone();
            p.into_iter().map(|c| c / &lead).collect()
        }
        None => p,
    }
}

/// Remainder of `a` divided by `b` (`b` nonzero).
pub fn rem(a: &[Rational], b: &[Rational]) -> RatPoly {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &b[db];
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            let t = &f * bc;
            r[dr - db + i] -= t;
        }
        r = trim(r);
    }
    r
}

/// Monic greatest common divisor.
pub fn gcd(a: &[Rational], b: &[Rational]) -> RatPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = monic(r);
    }
    monic(a)
}

/// Largest root multiplicity of `f` (degree ≥ 1) and a squarefree polynomial
/// whose roots are exactly the roots attaining it.
///
/// Uses the tower `f₀ = f`, `f_{t+1} = gcd(f_t, f_t')`: a root of multiplicity
/// `m` in `f_t` has multiplicity `m − 1` in `f_{t+1}`.
pub fn max_root_multiplicity(f: &[Rational]) -> (usize, RatPoly) {
    let mut cur = monic(trim(f.to_vec()));
    assert!(
        degree(&cur).unwrap_or(0) >= 1,
        "polynomial must be nonconstant"
    );
    let mut t = 0;
    loop {
        let next = gcd(&cur, &derivative(&cur));
        t += 1;
        if degree(&next) == Some(0) {
            return (t, cur);
        }
        cur = next;
    }
}

pub fn eval_f64(p: &[Rational], x: f64) -> f64 {
    p.iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
}

/// Human-readable form such as `x^4 - 4x^2`.
pub fn format_poly(p: &[Rational]) -> String {
    let mut s = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let coef = crate::decomposition::format_rational(&a);
        if i == 0 || !a.is_one() {
            s.push_str(&coef);
        }
        match i {
            0 => {}
            1 => s.push('x'),
            _ => s.push_str(&format!("x^{i}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
