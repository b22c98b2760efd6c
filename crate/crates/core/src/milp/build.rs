//! Construction of the compact MIP.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::bounds::{spectral_lower_bound, BoundMode};
use crate::decomposition::{int, Rational};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{MipConstraint, MipMeta, MipModel, MipVariable, Sense, VarKind};

#[derive(Clone, Debug)]
pub struct MipOptions {
    /// Row budget `R`.
    pub rows: usize,
    /// Big-M; 10 works well in practice but is not a proven bound, see
    /// [`sound_big_m`].
    pub big_m: Rational,
    /// Triangle inequalities on the products `z`.
    pub padberg: bool,
    /// Generate Padberg rows only for the first `budget` triples `i<j<k` in
    /// lexicographic order.
    pub padberg_budget: Option<usize>,
    /// Omit the trace row of the identity and its first-row family, which the
    /// remaining rows imply once `P'_{r,1} = 1`.
    pub drop_tautologies: bool,
    /// `Σ b_r ≥` the spectral lower bound.
    pub lb_cut: bool,
    /// Force the last row (largest `rn`) to be all ones.
    pub all_ones_row: bool,
    /// Above this many vertices the row order uses the first-difference
    /// encoding, since `rn_r` would need coefficients up to `2^{n−1}`.
    pub lex_threshold: usize,
}

impl MipOptions {
    pub fn new(rows: usize) -> Self {
        Self {
            rows,
            big_m: int(10),
            padberg: true,
            padberg_budget: None,
            drop_tautologies: true,
            lb_cut: true,
            all_ones_row: false,
            lex_threshold: 40,
        }
    }
}

/// `(3n − 2)^⌈(3n − 1)/2⌉`, a weight bound that never excludes an optimum.
pub fn sound_big_m(n: usize) -> BigInt {
    let base = BigInt::from(3 * n as u64 - 2);
    Pow::pow(base, (3 * n as u32 - 1).div_ceil(2))
}

/// Variable and constraint counts of a model, computed in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelSize {
    pub variables: usize,
    pub binaries: usize,
    pub constraints: usize,
}

fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed-form size of `build_cmipgc(g, opts)` for a graph on `n` vertices.
pub fn model_size(n: usize, opts: &MipOptions) -> ModelSize {
    let r = opts.rows;
    let pairs = choose(n, 2);
    let lex = n > opts.lex_threshold;
    let f_vars = if lex { (r - 1) * (n - 1) } else { 0 };
    let binaries = n * r + pairs * r + r + f_vars;
    let variables = binaries + r * (pairs + n) + r + 1 + if lex { 0 } else { r };
    let triples = opts
        .padberg_budget
        .map_or(choose(n, 3), |b| b.min(choose(n, 3)));
    let mut constraints = 2 * r + 3 * pairs * r + 4 * r * (pairs + n) + 1;
    if !opts.drop_tautologies {
        constraints += 1 + (n - 1);
    }
    constraints += (n - 1) + choose(n - 1, 2) + r;
    constraints += if lex {
        // Σf = 1, two rows per position, two equality rows per position ≥ 3.
        (r - 1) * (1 + 2 * (n - 1) + 2 * n.saturating_sub(2))
    } else {
        r + (r - 1)
    };
    constraints += r - 1;
    if opts.padberg {
        constraints += triples * r;
    }
    if opts.lb_cut {
        constraints += 1;
    }
    if opts.all_ones_row {
        constraints += n;
    }
    ModelSize {
        variables,
        binaries,
        constraints,
    }
}

struct Builder {
    variables: Vec<MipVariable>,
    constraints: Vec<MipConstraint>,
}

impl Builder {
    fn var(
        &mut self,
        name: String,
        kind: VarKind,
        lower: Option<Rational>,
        upper: Option<Rational>,
    ) {
        self.variables.push(MipVariable {
            name,
            kind,
            lower,
            upper,
        });
    }

    fn binary(&mut self, name: String) {
        self.var(name, VarKind::Binary, Some(int(0)), Some(int(1)));
    }

    fn row(
        &mut self,
        tag: &str,
        idx: &[&dyn ToString],
        terms: Vec<(Rational, String)>,
        sense: Sense,
        rhs: Rational,
    ) {
        let mut name = format!("c{tag}");
        for i in idx {
            name.push('_');
            name.push_str(&i.to_string());
        }
        let terms = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        self.constraints.push(MipConstraint {
            name,
            tag: tag.to_string(),
            terms,
            sense,
            rhs,
        });
    }
}

pub(crate) fn p(r: usize, i: usize) -> String {
    format!("p_{r}_{i}")
}

/// `z_{i,j,r}` for `i < j`; the diagonal product is `P'_{r,i}` itself.
pub(crate) fn z(i: usize, j: usize, r: usize) -> String {
    if i == j {
        p(r, i)
    } else {
        format!("z_{i}_{j}_{r}")
    }
}

pub(crate) fn t(i: usize, j: usize, r: usize) -> String {
    format!("t_{i}_{j}_{r}")
}

pub(crate) fn w(r: usize) -> String {
    format!("w_{r}")
}

pub(crate) fn b(r: usize) -> String {
    format!("b_{r}")
}

pub(crate) fn rn(r: usize) -> String {
    format!("rn_{r}")
}

pub(crate) fn f(r: usize, i: usize) -> String {
    format!("f_{r}_{i}")
}

/// Builds the model for `g` with `opts.rows` rows.
pub fn build_cmipgc(g: &Graph, opts: &MipOptions) -> Result<MipModel> {
    let n = g.n();
    let rr = opts.rows;
    if rr == 0 {
        return Err(Error::InvalidParameter(
            "row budget R must be at least 1".into(),
        ));
    }
    if !opts.big_m.is_positive() {
        return Err(Error::InvalidParameter("big-M must be positive".into()));
    }
    let m = opts.big_m.clone();
    let lex = n > opts.lex_threshold;
    let one = int(1);
    let a = |i: usize, j: usize| -> i64 { (i != j && g.has_edge(i - 1, j - 1)) as i64 };
    let mut bld = Builder {
        variables: Vec::new(),
        constraints: Vec::new(),
    };

    // Variables, grouped by family.
    for r in 1..=rr {
        for i in 1..=n {
            bld.binary(p(r, i));
        }
    }
    for r in 1..=rr {
        for i in 1..=n {
            for j in i + 1..=n {
                bld.binary(z(i, j, r));
            }
        }
    }
    for r in 1..=rr {
        for i in 1..=n {
            for j in i..=n {
                bld.var(t(i, j, r), VarKind::Continuous, Some(-&m), Some(m.clone()));
            }
        }
    }
    for r in 1..=rr {
        bld.var(w(r), VarKind::Continuous, Some(-&m), Some(m.clone()));
    }
    for r in 1..=rr {
        bld.binary(b(r));
    }
    bld.var("tr".into(), VarKind::Continuous, None, None);
    if lex {
        for r in 1..rr {
            for i in 2..=n {
                bld.binary(f(r, i));
            }
        }
    } else {
        let top = Rational::from_integer((BigInt::one() << n) - 1);
        for r in 1..=rr {
            bld.var(
                rn(r),
                VarKind::Integer,
                Some(one.clone()),
                Some(top.clone()),
            );
        }
    }

    // (2) −M b_r ≤ W_r ≤ M b_r.
    for r in 1..=rr {
        bld.row(
            "2",
            &[&r, &"lo"],
            vec![(int(1), w(r)), (m.clone(), b(r))],
            Sense::Ge,
            int(0),
        );
        bld.row(
            "2",
            &[&r, &"hi"],
            vec![(int(1), w(r)), (-&m, b(r))],
            Sense::Le,
            int(0),
        );
    }
    // (3)–(5) z = P'_i · P'_j.
    for r in 1..=rr {
        for i in 1..=n {
            for j in i + 1..=n {
                bld.row(
                    "3",
                    &[&i, &j, &r],
                    vec![(int(1), z(i, j, r)), (int(-1), p(r, i))],
                    Sense::Le,
                    int(0),
                );
                bld.row(
                    "4",
                    &[&i, &j, &r],
                    vec![(int(1), z(i, j, r)), (int(-1), p(r, j))],
                    Sense::Le,
                    int(0),
                );
                bld.row(
                    "5",
                    &[&i, &j, &r],
                    vec![(int(1), z(i, j, r)), (int(-1), p(r, i)), (int(-1), p(r, j))],
                    Sense::Ge,
                    int(-1),
                );
            }
        }
    }
    // (6)–(7) t = W · z.
    for r in 1..=rr {
        for i in 1..=n {
            for j in i..=n {
                let (tv, zv) = (t(i, j, r), z(i, j, r));
                bld.row(
                    "6",
                    &[&i, &j, &r, &"lo"],
                    vec![(int(1), tv.clone()), (m.clone(), zv.clone())],
                    Sense::Ge,
                    int(0),
                );
                bld.row(
                    "6",
                    &[&i, &j, &r, &"hi"],
                    vec![(int(1), tv.clone()), (-&m, zv.clone())],
                    Sense::Le,
                    int(0),
                );
                bld.row(
                    "7",
                    &[&i, &j, &r, &"lo"],
                    vec![(int(1), tv.clone()), (int(-1), w(r)), (-&m, zv.clone())],
                    Sense::Ge,
                    -&m,
                );
                bld.row(
                    "7",
                    &[&i, &j, &r, &"hi"],
                    vec![(int(1), tv), (int(-1), w(r)), (m.clone(), zv)],
                    Sense::Le,
                    m.clone(),
                );
            }
        }
    }
    // (8) tr = Σ W.
    let mut terms = vec![(int(1), "tr".to_string())];
    terms.extend((1..=rr).map(|r| (int(-1), w(r))));
    bld.row("8", &[], terms, Sense::Eq, int(0));
    // (9)–(12) the binary-form identity, entry by entry.
    let sum_t = |i: usize, j: usize, extra: (i64, &str)| -> Vec<(Rational, String)> {
        let mut v: Vec<(Rational, String)> = (1..=rr).map(|r| (int(4), t(i, j, r))).collect();
        v.push((int(extra.0), extra.1.to_string()));
        v
    };
    if !opts.drop_tautologies {
        bld.row("9", &[], sum_t(1, 1, (-4, "tr")), Sense::Eq, int(0));
        for j in 2..=n {
            bld.row(
                "10",
                &[&j],
                sum_t(1, j, (-2, "tr")),
                Sense::Eq,
                int(2 * a(1, j)),
            );
        }
    }
    for i in 2..=n {
        bld.row(
            "11",
            &[&i],
            sum_t(i, i, (-2, "tr")),
            Sense::Eq,
            int(2 * a(1, i)),
        );
    }
    for i in 2..=n {
        for j in i + 1..=n {
            bld.row(
                "12",
                &[&i, &j],
                sum_t(i, j, (-1, "tr")),
                Sense::Eq,
                int(a(i, j) + a(1, i) + a(1, j)),
            );
        }
    }
    // (13) first column fixed.
    for r in 1..=rr {
        bld.row("13", &[&r], vec![(int(1), p(r, 1))], Sense::Eq, int(1));
    }
    // (14)–(15) strictly increasing rows.
    if lex {
        lex_order_rows(&mut bld, n, rr);
    } else {
        for r in 1..=rr {
            let mut terms = vec![(int(1), rn(r))];
            let mut pow2 = BigInt::one();
            for i in 1..=n {
                terms.push((Rational::from_integer(-pow2.clone()), p(r, i)));
                pow2 <<= 1;
            }
            bld.row("14", &[&r], terms, Sense::Eq, int(0));
        }
        for r in 1..rr {
            bld.row(
                "15",
                &[&r],
                vec![(int(1), rn(r)), (int(-1), rn(r + 1))],
                Sense::Le,
                int(-2),
            );
        }
    }
    // (16) only the first row may have a single positive entry.
    for r in 2..=rr {
        bld.row(
            "16",
            &[&r],
            (1..=n).map(|i| (int(1), p(r, i))).collect(),
            Sense::Ge,
            int(2),
        );
    }
    // (17) Padberg triangle inequalities.
    if opts.padberg {
        let budget = opts.padberg_budget.unwrap_or(usize::MAX);
        let triples: Vec<(usize, usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).flat_map(move |j| (j + 1..=n).map(move |k| (i, j, k))))
            .take(budget)
            .collect();
        for r in 1..=rr {
            for &(i, j, k) in &triples {
                bld.row(
                    "17",
                    &[&i, &j, &k, &r],
                    vec![
                        (int(1), p(r, i)),
                        (int(1), p(r, j)),
                        (int(1), p(r, k)),
                        (int(-1), z(i, j, r)),
                        (int(-1), z(i, k, r)),
                        (int(-1), z(j, k, r)),
                    ],
                    Sense::Le,
                    int(1),
                );
            }
        }
    }
    // (18) spectral cut.
    let lb_cut = if opts.lb_cut {
        let lb = spectral_lower_bound(g, BoundMode::Auto)?.lower_bound;
        bld.row(
            "18",
            &[],
            (1..=rr).map(|r| (int(1), b(r))).collect(),
            Sense::Ge,
            int(lb as i64),
        );
        Some(lb)
    } else {
        None
    };
    if opts.all_ones_row {
        for i in 1..=n {
            bld.row("ones", &[&i], vec![(int(1), p(rr, i))], Sense::Eq, int(1));
        }
    }

    Ok(MipModel {
        meta: MipMeta {
            n,
            rows: rr,
            big_m: m,
            padberg: opts.padberg,
            padberg_budget: opts.padberg_budget,
            drop_tautologies: opts.drop_tautologies,
            lb_cut,
            all_ones_row: opts.all_ones_row,
            lex,
        },
        variables: bld.variables,
        constraints: bld.constraints,
        objective: (1..=rr).map(|r| (int(1), b(r))).collect(),
    })
}

/// Row `r+1` is larger than row `r` in `rn` order: some position `i ≥ 2`
/// (`f_{r,i} = 1`) has `P'_{r,i} = 0`, `P'_{r+1,i} = 1`, and the rows agree
/// at every position above `i`. Column 1 is 1 in both rows.
fn lex_order_rows(bld: &mut Builder, n: usize, rr: usize) {
    for r in 1..rr {
        let s = r + 1;
        bld.row(
            "15",
            &[&r, &"f"],
            (2..=n).map(|i| (int(1), f(r, i))).collect(),
            Sense::Eq,
            int(1),
        );
        for i in 2..=n {
            bld.row(
                "15",
                &[&r, &i, &"up"],
                vec![(int(1), p(s, i)), (int(-1), f(r, i))],
                Sense::Ge,
                int(0),
            );
            bld.row(
                "15",
                &[&r, &i, &"dn"],
                vec![(int(1), p(r, i)), (int(1), f(r, i))],
                Sense::Le,
                int(1),
            );
        }
        for hi in 3..=n {
            let below = || (2..hi).map(|i| (int(1), f(r, i)));
            let mut ea = vec![(int(1), p(r, hi)), (int(-1), p(s, hi))];
            ea.extend(below());
            bld.row("15", &[&r, &hi, &"ea"], ea, Sense::Le, int(1));
            let mut eb = vec![(int(1), p(s, hi)), (int(-1), p(r, hi))];
            eb.extend(below());
            bld.row("15", &[&r, &hi, &"eb"], eb, Sense::Le, int(1));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family};

    #[test]
    fn sound_big_m_values() {
        // n = 1: 1^1; n = 2: 4^3 (exponent ⌈5/2⌉); n = 3: 7^4.
        assert_eq!(sound_big_m(1), BigInt::from(1));
        assert_eq!(sound_big_m(2), BigInt::from(64));
        assert_eq!(sound_big_m(3), BigInt::from(2401));
    }

    #[test]
    fn sizes_match_closed_form() {
        for n in 1..=9 {
            let g = generate_family(&Family::ErdosRenyi {
                n,
                p: 0.5,
                seed: n as u64,
            })
            .unwrap();
            for rows in [1, 3, 7] {
                for (padberg, drop, lb, ones) in
                    [(true, true, true, false), (false, false, false, true)]
                {
                    let mut o = MipOptions::new(rows);
                    o.padberg = padberg;
                    o.drop_tautologies = drop;
                    o.lb_cut = lb;
                    o.all_ones_row = ones;
                    let m = build_cmipgc(&g, &o).unwrap();
                    let size = model_size(n, &o);
                    assert_eq!(m.variables.len(), size.variables, "n={n} R={rows}");
                    assert_eq!(
                        m.variables
                            .iter()
                            .filter(|v| v.kind == VarKind::Binary)
                            .count(),
                        size.binaries
                    );
                    assert_eq!(
                        m.constraints.len(),
                        size.constraints,
                        "n={n} R={rows} {padberg} {drop}"
                    );
                }
            }
        }
    }

    #[test]
    fn lex_mode_size_matches() {
        let g = generate_family(&Family::Cycle { n: 7 }).unwrap();
        let mut o = MipOptions::new(4);
        o.lex_threshold = 5;
        let m = build_cmipgc(&g, &o).unwrap();
        assert!(m.meta.lex);
        assert_eq!(m.constraints.len(), model_size(7, &o).constraints);
        assert_eq!(m.variables.len(), model_size(7, &o).variables);
        assert!(m.variable("rn_1").is_none() && m.variable("f_1_2").is_some());
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = Graph::edgeless(3).unwrap();
        assert!(build_cmipgc(&g, &MipOptions::new(0)).is_err());
        let mut o = MipOptions::new(2);
        o.big_m = int(0);
        assert!(build_cmipgc(&g, &o).is_err());
    }

    #[test]
    fn row_names_and_tags() {
        let g = generate_family(&Family::Complete { q: 3, n: 3 }).unwrap();
        let mut o = MipOptions::new(2);
        o.drop_tautologies = false;
        let m = build_cmipgc(&g, &o).unwrap();
        for c in &m.constraints {
            assert!(c.name.starts_with(&format!("c{}", c.tag)));
            let rest = &c.name[1 + c.tag.len()..];
            assert!(rest.is_empty() || rest.starts_with('_'), "{}", c.name);
        }
        for tag in [
            "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16", "17",
            "18",
        ] {
            assert!(m.constraint_count(tag) > 0, "tag {tag}");
        }
        assert!(m.objective.iter().all(|(_, v)| v.starts_with("b_")));
    }
}
