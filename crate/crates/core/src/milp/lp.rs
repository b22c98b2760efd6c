//! CPLEX LP text format: writer and a parser for the files it writes.
//!
//! Coefficients, right-hand sides and bounds are printed as exact decimals
//! when their denominator has no prime factor other than 2 and 5. Anything
//! else is printed with 17 significant digits and recorded exactly in the
//! sidecar as `key num/den`, where the key is `row:var`, `row:rhs`,
//! `obj:var`, `var:lb` or `var:ub`. The parser applies the sidecar when one
//! is given, so a model survives a round trip unchanged.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::decomposition::{format_rational, parse_decimal, parse_rational, Rational};
use crate::error::{parse_err, Result};

use super::{MipConstraint, MipMeta, MipModel, MipVariable, Sense, VarKind};

const MAX_LINE: usize = 200;

/// Decimal text of `r`, and whether it is exact.
pub fn render_decimal(r: &Rational) -> (String, bool) {
    let mut den = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        let x = r.to_f64().unwrap_or(f64::NAN);
        return (format!("{x:.16e}"), false);
    }
    let places = twos.max(fives);
    if places == 0 {
        return (r.numer().to_string(), true);
    }
    let scaled = r * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (ip, fp) = digits.split_at(digits.len() - places);
    let sign = if r.is_negative() { "-" } else { "" };
    (format!("{sign}{ip}.{fp}"), true)
}

/// Model text and its exact-rationals sidecar (empty when every number is a
/// terminating decimal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmittedModel {
    pub lp: String,
    pub sidecar: String,
}

struct Writer {
    out: String,
    line_len: usize,
    sidecar: String,
}

impl Writer {
    fn token(&mut self, tok: &str) {
        if self.line_len + tok.len() + 1 > MAX_LINE && self.line_len > 0 {
            self.out.push_str("\n   ");
            self.line_len = 3;
        }
        self.out.push(' ');
        self.out.push_str(tok);
        self.line_len += tok.len() + 1;
    }

    fn end_line(&mut self) {
        self.out.push('\n');
        self.line_len = 0;
    }

    fn number(&mut self, key: impl FnOnce() -> String, r: &Rational) -> String {
        let (text, exact) = render_decimal(r);
        if !exact {
            let _ = writeln!(self.sidecar, "{} {}", key(), format_rational(r));
        }
        text
    }

    fn terms(&mut self, row: &str, terms: &[(Rational, String)]) {
        if terms.is_empty() {
            self.token("0");
        }
        for (k, (c, v)) in terms.iter().enumerate() {
            let mag = c.abs();
            if k > 0 || c.is_negative() {
                self.token(if c.is_negative() { "-" } else { "+" });
            }
            if !mag.is_one() {
                let text = self.number(|| format!("{row}:{v}"), &mag);
                self.token(&text);
            }
            self.token(v);
        }
    }
}

fn meta_line(m: &MipMeta) -> String {
    format!(
        "\\ cmipgc n={} rows={} big_m={} padberg={} padberg_budget={} drop_tautologies={} lb_cut={} all_ones_row={} lex={}",
        m.n,
        m.rows,
        format_rational(&m.big_m),
        m.padberg as u8,
        m.padberg_budget.map_or("none".to_string(), |b| b.to_string()),
        m.drop_tautologies as u8,
        m.lb_cut.map_or("none".to_string(), |b| b.to_string()),
        m.all_ones_row as u8,
        m.lex as u8,
    )
}

/// Deterministic LP-format text of `m`. Every variable appears in the
/// `Bounds` section, in model order.
pub fn emit_model(m: &MipModel) -> EmittedModel {
    let mut w = Writer {
        out: String::new(),
        line_len: 0,
        sidecar: String::new(),
    };
    w.out.push_str(&meta_line(&m.meta));
    w.out.push_str("\nMinimize\n");
    w.token("obj:");
    w.terms("obj", &m.objective);
    w.end_line();
    w.out.push_str("Subject To\n");
    for c in &m.constraints {
        w.token(&format!("{}:", c.name));
        w.terms(&c.name, &c.terms);
        w.token(c.sense.symbol());
        let rhs = w.number(|| format!("{}:rhs", c.name), &c.rhs);
        w.token(&rhs);
        w.end_line();
    }
    w.out.push_str("Bounds\n");
    for v in &m.variables {
        match (&v.lower, &v.upper) {
            (None, None) => {
                w.token(&v.name);
                w.token("free");
            }
            (lo, hi) => {
                let lo = match lo {
                    Some(lo) => w.number(|| format!("{}:lb", v.name), lo),
                    None => "-inf".to_string(),
                };
                w.token(&lo);
                w.token("<=");
                w.token(&v.name);
                if let Some(hi) = hi {
                    w.token("<=");
                    let hi = w.number(|| format!("{}:ub", v.name), hi);
                    w.token(&hi);
                }
            }
        }
        w.end_line();
    }
    for (header, kind) in [
        ("Binaries", VarKind::Binary),
        ("Generals", VarKind::Integer),
    ] {
        let names: Vec<&str> = m
            .variables
            .iter()
            .filter(|v| v.kind == kind)
            .map(|v| v.name.as_str())
            .collect();
        if names.is_empty() {
            continue;
        }
        w.out.push_str(header);
        w.out.push('\n');
        for name in names {
            w.token(name);
        }
        w.end_line();
    }
    w.out.push_str("End\n");
    EmittedModel {
        lp: w.out,
        sidecar: w.sidecar,
    }
}

fn tag_of(name: &str) -> String {
    name[1..].split('_').next().unwrap_or("").to_string()
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum Section {
    Objective,
    Constraints,
    Bounds,
    Binaries,
    Generals,
}

fn parse_meta(line: &str, lineno: usize) -> Result<MipMeta> {
    let fields: HashMap<&str, &str> = line
        .trim_start_matches('\\')
        .split_whitespace()
        .filter_map(|kv| kv.split_once('='))
        .collect();
    let get = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| parse_err(lineno, format!("header lacks `{k}`")))
    };
    let num = |k: &str| -> Result<usize> {
        get(k)?
            .parse()
            .map_err(|_| parse_err(lineno, format!("bad `{k}`")))
    };
    let flag = |k: &str| -> Result<bool> { Ok(num(k)? != 0) };
    let opt = |k: &str| -> Result<Option<usize>> {
        match get(k)? {
            "none" => Ok(None),
            s => s
                .parse()
                .map(Some)
                .map_err(|_| parse_err(lineno, format!("bad `{k}`"))),
        }
    };
    Ok(MipMeta {
        n: num("n")?,
        rows: num("rows")?,
        big_m: parse_rational(get("big_m")?).ok_or_else(|| parse_err(lineno, "bad big_m"))?,
        padberg: flag("padberg")?,
        padberg_budget: opt("padberg_budget")?,
        drop_tautologies: flag("drop_tautologies")?,
        lb_cut: opt("lb_cut")?,
        all_ones_row: flag("all_ones_row")?,
        lex: flag("lex")?,
    })
}

struct Parser<'a> {
    exact: &'a BTreeMap<String, Rational>,
}

impl Parser<'_> {
    fn number(&self, key: String, tok: &str, line: usize) -> Result<Rational> {
        if let Some(v) = self.exact.get(&key) {
            return Ok(v.clone());
        }
        parse_decimal(tok).ok_or_else(|| parse_err(line, format!("`{tok}` is not a number")))
    }

    /// Linear expression `[-] [c] x (+|-) [c] y ...` up to a sense token.
    fn terms(&self, row: &str, toks: &[(&str, usize)]) -> Result<Vec<(Rational, String)>> {
        if let [("0", _)] = toks {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut k = 0;
        let mut first = true;
        while k < toks.len() {
            let mut neg = false;
            let (tok, line) = toks[k];
            if tok == "+" || tok == "-" {
                neg = tok == "-";
                k += 1;
            } else if !first {
                return Err(parse_err(line, format!("expected + or -, found `{tok}`")));
            }
            first = false;
            let (tok, line) = *toks
                .get(k)
                .ok_or_else(|| parse_err(line, "dangling sign"))?;
            let starts_number = tok.starts_with(|c: char| c.is_ascii_digit() || c == '.');
            let (coef, var) = if starts_number {
                let (var, _) = *toks
                    .get(k + 1)
                    .ok_or_else(|| parse_err(line, "coefficient without variable"))?;
                k += 2;
                (self.number(format!("{row}:{var}"), tok, line)?, var)
            } else {
                k += 1;
                (Rational::one(), tok)
            };
            out.push((if neg { -coef } else { coef }, var.to_string()));
        }
        Ok(out)
    }
}

/// Parses text written by [`emit_model`], applying the sidecar (if any).
pub fn parse_model(lp: &str, sidecar: Option<&str>) -> Result<MipModel> {
    let mut exact = BTreeMap::new();
    for (k, line) in sidecar.unwrap_or("").lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(' ')
            .ok_or_else(|| parse_err(k + 1, "sidecar lines are `key num/den`"))?;
        let v = parse_rational(value)
            .ok_or_else(|| parse_err(k + 1, format!("bad rational `{value}`")))?;
        exact.insert(key.to_string(), v);
    }
    let parser = Parser { exact: &exact };

    let mut meta = None;
    let mut section = None;
    // Tokens of each section, with line numbers.
    let mut toks: Vec<(Section, &str, usize)> = Vec::new();
    for (k, line) in lp.lines().enumerate() {
        let lineno = k + 1;
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix('\\') {
            if rest.trim_start().starts_with("cmipgc") {
                meta = Some(parse_meta(rest, lineno)?);
            }
            continue;
        }
        let header = match trimmed.to_ascii_lowercase().as_str() {
            "minimize" | "minimum" | "min" => Some(Section::Objective),
            "subject to" | "such that" | "st" | "s.t." => Some(Section::Constraints),
            "bounds" | "bound" => Some(Section::Bounds),
            "binaries" | "binary" | "bin" => Some(Section::Binaries),
            "generals" | "general" | "gen" => Some(Section::Generals),
            "end" => break,
            _ => None,
        };
        if let Some(h) = header {
            section = Some(h);
            continue;
        }
        let Some(s) = section else {
            if trimmed.is_empty() {
                continue;
            }
            return Err(parse_err(lineno, "content before the objective section"));
        };
        toks.extend(trimmed.split_whitespace().map(|t| (s, t, lineno)));
    }
    let meta = meta.ok_or_else(|| parse_err(1, "missing `\\ cmipgc` header"))?;
    let of = |s: Section| -> Vec<(&str, usize)> {
        toks.iter()
            .filter(|t| t.0 == s)
            .map(|t| (t.1, t.2))
            .collect()
    };

    let obj = of(Section::Objective);
    let objective = match obj.split_first() {
        Some(((label, _), rest)) if label.ends_with(':') => parser.terms("obj", rest)?,
        Some(_) => parser.terms("obj", &obj)?,
        None => Vec::new(),
    };

    let mut constraints = Vec::new();
    let cons = of(Section::Constraints);
    let mut k = 0;
    while k < cons.len() {
        let (label, line) = cons[k];
        let name = label
            .strip_suffix(':')
            .ok_or_else(|| parse_err(line, format!("expected `name:`, found `{label}`")))?
            .to_string();
        let start = k + 1;
        let sense_at = (start..cons.len())
            .find(|&i| matches!(cons[i].0, "<=" | ">=" | "=" | "=<" | "=>" | "<" | ">"))
            .ok_or_else(|| parse_err(line, format!("row `{name}` has no sense")))?;
        let sense = match cons[sense_at].0 {
            "<=" | "=<" | "<" => Sense::Le,
            ">=" | "=>" | ">" => Sense::Ge,
            _ => Sense::Eq,
        };
        let (rhs_tok, rhs_line) = *cons
            .get(sense_at + 1)
            .ok_or_else(|| parse_err(line, format!("row `{name}` has no right-hand side")))?;
        let rhs = parser.number(format!("{name}:rhs"), rhs_tok, rhs_line)?;
        let terms = parser.terms(&name, &cons[start..sense_at])?;
        constraints.push(MipConstraint {
            tag: tag_of(&name),
            name,
            terms,
            sense,
            rhs,
        });
        k = sense_at + 2;
    }

    let mut variables: Vec<MipVariable> = Vec::new();
    let bounds = of(Section::Bounds);
    let mut k = 0;
    while k < bounds.len() {
        let (tok, line) = bounds[k];
        if bounds
            .get(k + 1)
            .is_some_and(|t| t.0.eq_ignore_ascii_case("free"))
        {
            variables.push(MipVariable {
                name: tok.to_string(),
                kind: VarKind::Continuous,
                lower: None,
                upper: None,
            });
            k += 2;
            continue;
        }
        let name = match (bounds.get(k + 1), bounds.get(k + 2)) {
            (Some(("<=", _)), Some((name, _))) => *name,
            _ => {
                return Err(parse_err(
                    line,
                    "bounds lines are `lo <= x [<= hi]` or `x free`",
                ))
            }
        };
        let lower = match tok {
            "-inf" | "-infinity" => None,
            _ => Some(parser.number(format!("{name}:lb"), tok, line)?),
        };
        k += 3;
        let mut upper = None;
        if bounds.get(k).is_some_and(|t| t.0 == "<=") {
            let (hi, hl) = *bounds
                .get(k + 1)
                .ok_or_else(|| parse_err(line, "missing upper bound"))?;
            upper = Some(parser.number(format!("{name}:ub"), hi, hl)?);
            k += 2;
        }
        variables.push(MipVariable {
            name: name.to_string(),
            kind: VarKind::Continuous,
            lower,
            upper,
        });
    }
    let index: HashMap<String, usize> = variables
        .iter()
        .enumerate()
        .map(|(i, v)| (v.name.clone(), i))
        .collect();
    for (section, kind) in [
        (Section::Binaries, VarKind::Binary),
        (Section::Generals, VarKind::Integer),
    ] {
        for (name, line) in of(section) {
            let &i = index
                .get(name)
                .ok_or_else(|| parse_err(line, format!("`{name}` has no bounds entry")))?;
            variables[i].kind = kind;
        }
    }
    for c in &constraints {
        for (_, v) in &c.terms {
            if !index.contains_key(v) {
                return Err(parse_err(
                    0,
                    format!("row `{}` references unknown variable `{v}`", c.name),
                ));
            }
        }
    }
    Ok(MipModel {
        meta,
        variables,
        constraints,
        objective,
    })
}
