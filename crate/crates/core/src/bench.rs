//! Seeded Erdős–Rényi benchmark suite and CSV reports.
//!
//! The default suite has two graphs for each `n = 4..=20`. Instance `n-k`
//! uses seed `100·n + k`. Its edge probability is the first uniform draw of
//! ChaCha8 with that seed on stream 1; the graph is generated from the same
//! seed on the default stream 0. Edgeless draws are skipped.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{spectral_lower_bound, BoundMode};
use crate::constructions::{compile_auto, union_of_double_stars, union_of_stars};
use crate::decomposition::{verify, Decomposition};
use crate::error::{malformed, Error, Result};
use crate::graph::{generate_family, Family, Graph};
use crate::oracle::{brute_force_gc, OracleOptions};

pub const CSV_HEADER: &str =
    "graph_id,n,m,lb,rows_stars,rows_double,rows_best,oracle_gc,t_stars_ms,t_double_ms,t_oracle_ms";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteInstance {
    pub graph_id: String,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl SuiteInstance {
    pub fn graph(&self) -> Result<Graph> {
        generate_family(&Family::ErdosRenyi {
            n: self.n,
            p: self.p,
            seed: self.seed,
        })
    }
}

/// Edge probability drawn for `seed`.
pub fn suite_probability(seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng.random::<f64>()
}

/// Two instances per `n` in `4..=20`, edgeless draws removed.
pub fn default_suite() -> Vec<SuiteInstance> {
    (4..=20usize)
        .flat_map(|n| (1..=2u64).map(move |k| (n, k)))
        .map(|(n, k)| {
            let seed = 100 * n as u64 + k;
            SuiteInstance {
                graph_id: format!("{n}-{k}"),
                n,
                p: suite_probability(seed),
                seed,
            }
        })
        .filter(|inst| inst.graph().is_ok_and(|g| !g.is_edgeless()))
        .collect()
}

/// `graph_id n p seed m` per line; `#` starts a comment.
pub fn to_manifest(instances: &[SuiteInstance]) -> Result<String> {
    let mut out = String::from("# graph_id n p seed m\n");
    for inst in instances {
        let m = inst.graph()?.edge_count();
        let _ = writeln!(
            out,
            "{} {} {} {} {}",
            inst.graph_id, inst.n, inst.p, inst.seed, m
        );
    }
    Ok(out)
}

/// Reads a manifest. The edge count column is optional; when present it must
/// match the generated graph.
pub fn parse_manifest(text: &str) -> Result<Vec<SuiteInstance>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if !(4..=5).contains(&f.len()) {
            return Err(malformed(k + 1, "expected `graph_id n p seed [m]`"));
        }
        let bad = |what: &str| malformed(k + 1, format!("bad {what} `{line}`"));
        let inst = SuiteInstance {
            graph_id: f[0].to_string(),
            n: f[1].parse().map_err(|_| bad("n"))?,
            p: f[2].parse().map_err(|_| bad("p"))?,
            seed: f[3].parse().map_err(|_| bad("seed"))?,
        };
        let g = inst.graph().map_err(|e| malformed(k + 1, e.to_string()))?;
        if let Some(m) = f.get(4) {
            let m: usize = m.parse().map_err(|_| bad("m"))?;
            if m != g.edge_count() {
                return Err(malformed(
                    k + 1,
                    format!(
                        "{} has {} edges, manifest says {m}",
                        inst.graph_id,
                        g.edge_count()
                    ),
                ));
            }
        }
        out.push(inst);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub lower_bound: usize,
    pub rows_stars: usize,
    pub rows_double: usize,
    pub rows_best: usize,
    /// Oracle value; `None` when the oracle was skipped or timed out.
    pub oracle_gc: Option<usize>,
    pub oracle_timed_out: bool,
    pub t_stars_ms: f64,
    pub t_double_ms: f64,
    pub t_oracle_ms: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    /// Run the oracle on instances with at most this many vertices.
    pub oracle_max_n: usize,
    pub oracle_timeout: Duration,
    /// Worker threads; `None` uses all logical cores.
    pub threads: Option<usize>,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            oracle_max_n: 6,
            oracle_timeout: Duration::from_secs(300),
            threads: None,
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

fn ladder_error(id: &str, msg: String) -> Error {
    Error::PreconditionViolation(format!("instance {id}: {msg}"))
}

fn check_verifies(id: &str, what: &str, g: &Graph, d: &Decomposition) -> Result<()> {
    if verify(g, d)?.feasible {
        Ok(())
    } else {
        Err(ladder_error(id, format!("{what} output does not verify")))
    }
}

/// Runs stars, double stars, auto, the spectral bound and (small `n`) the
/// oracle on one instance, and checks the bound ladder.
pub fn run_instance(inst: &SuiteInstance, opts: &BenchOptions) -> Result<BenchRecord> {
    let g = inst.graph()?;
    let (n, id) = (g.n(), inst.graph_id.as_str());
    let (stars, t_stars_ms) = timed(|| union_of_stars(&g));
    let (double, t_double_ms) = timed(|| union_of_double_stars(&g));
    let best = compile_auto(&g);
    let lb = spectral_lower_bound(&g, BoundMode::Auto)?.lower_bound;
    check_verifies(id, "stars", &g, &stars)?;
    check_verifies(id, "double-stars", &g, &double)?;
    check_verifies(id, "auto", &g, &best.decomposition)?;
    if stars.len() + 2 > 3 * n {
        return Err(ladder_error(
            id,
            format!("stars used {} rows > 3n-2", stars.len()),
        ));
    }
    if 2 * double.len() > 5 * n + 4 {
        return Err(ladder_error(
            id,
            format!("double stars used {} rows > 2.5n+2", double.len()),
        ));
    }
    if lb > best.rows || best.rows > stars.len().min(double.len()) {
        return Err(ladder_error(
            id,
            format!(
                "lb {lb}, best {}, stars {}, double {}",
                best.rows,
                stars.len(),
                double.len()
            ),
        ));
    }
    let (mut oracle_gc, mut oracle_timed_out, mut t_oracle_ms) = (None, false, None);
    if n <= opts.oracle_max_n {
        let oo = OracleOptions {
            deadline: Some(Instant::now() + opts.oracle_timeout),
            ..OracleOptions::default()
        };
        let (res, ms) = timed(|| brute_force_gc(&g, &oo));
        t_oracle_ms = Some(ms);
        match res {
            Ok((gc, cert)) => {
                check_verifies(id, "oracle", &g, &cert)?;
                if gc < lb || gc > best.rows {
                    return Err(ladder_error(
                        id,
                        format!("oracle gc {gc} outside [{lb}, {}]", best.rows),
                    ));
                }
                oracle_gc = Some(gc);
            }
            Err(Error::ResourceLimit(msg)) => {
                log::warn!("instance {id}: oracle gave up ({msg})");
                oracle_timed_out = true;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(BenchRecord {
        graph_id: inst.graph_id.clone(),
        n,
        m: g.edge_count(),
        lower_bound: lb,
        rows_stars: stars.len(),
        rows_double: double.len(),
        rows_best: best.rows,
        oracle_gc,
        oracle_timed_out,
        t_stars_ms,
        t_double_ms,
        t_oracle_ms,
    })
}

/// Runs every instance on a worker pool; records come back in input order.
pub fn run_suite(instances: &[SuiteInstance], opts: &BenchOptions) -> Result<Vec<BenchRecord>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = opts.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| {
        instances
            .par_iter()
            .map(|inst| run_instance(inst, opts))
            .collect()
    })
}

/// CSV with [`CSV_HEADER`]. Without timings the time columns are left empty,
/// which makes the output byte-reproducible.
pub fn to_csv(records: &[BenchRecord], timings: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    let ms = |x: f64| {
        if timings {
            format!("{x:.3}")
        } else {
            String::new()
        }
    };
    for r in records {
        let oracle = match (r.oracle_gc, r.oracle_timed_out) {
            (Some(gc), _) => gc.to_string(),
            (None, true) => "timeout".to_string(),
            (None, false) => String::new(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.graph_id,
            r.n,
            r.m,
            r.lower_bound,
            r.rows_stars,
            r.rows_double,
            r.rows_best,
            oracle,
            ms(r.t_stars_ms),
            ms(r.t_double_ms),
            r.t_oracle_ms.map(ms).unwrap_or_default(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_shape() {
        let suite = default_suite();
        assert!(suite.len() >= 30 && suite.len() <= 34);
        for n in 4..=20 {
            assert!(suite.iter().filter(|i| i.n == n).count() <= 2);
        }
        assert!(suite.iter().all(|i| (0.0..1.0).contains(&i.p)));
        assert_eq!(default_suite(), suite);
    }

    #[test]
    fn manifest_round_trip() {
        let suite = default_suite();
        let text = to_manifest(&suite).unwrap();
        assert_eq!(parse_manifest(&text).unwrap(), suite);
        assert!(parse_manifest("a 4 0.5").is_err());
        assert!(parse_manifest("a 4 0.5 1 99").is_err());
    }

    #[test]
    fn small_instances_and_csv() {
        let suite: Vec<_> = default_suite().into_iter().filter(|i| i.n <= 7).collect();
        let opts = BenchOptions {
            threads: Some(2),
            ..BenchOptions::default()
        };
        let records = run_suite(&suite, &opts).unwrap();
        assert_eq!(records.len(), suite.len());
        for r in &records {
            if r.n <= 6 {
                let gc = r.oracle_gc.unwrap();
                assert!(r.lower_bound <= gc && gc <= r.rows_best);
            } else {
                assert!(r.oracle_gc.is_none() && r.t_oracle_ms.is_none());
            }
        }
        let a = to_csv(&records, false);
        let b = to_csv(&run_suite(&suite, &opts).unwrap(), false);
        assert_eq!(a, b);
        assert!(a.starts_with(CSV_HEADER));
        assert_eq!(a.lines().count(), records.len() + 1);
    }
}
