//! `gcoupling`: command-line front end for the graph-coupling toolkit.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use graph_coupling::bench::{
    default_suite, parse_manifest, run_suite, to_csv, to_manifest, BenchOptions,
};
use graph_coupling::circuits::{
    emit_pulse_program, emit_pulse_program_reordered, gate_counts, phase_equivalence_check,
    PHASE_CHECK_MAX_N,
};
use graph_coupling::constructions::{compile_with, union_of_double_stars, union_of_stars};
use graph_coupling::decomposition::{parse_rational, simplify, verify};
use graph_coupling::milp::{
    build_cmipgc, emit_model, emit_warmstart, evaluate, ingest_solution, parse_model, sound_big_m,
    MipOptions,
};
use graph_coupling::oracle::default_k_max;
use graph_coupling::{
    brute_force_gc, compile_auto, generate_family, spectral_lower_bound, BoundMode, Decomposition,
    Error, Family, Graph, Method, OracleOptions, Rational,
};

/// Exit status for a result that was computed but failed verification.
const EXIT_UNVERIFIED: u8 = 1;
/// Exit status for bad flags, unreadable files and malformed input.
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "gcoupling",
    version,
    about = "Compile Max-Cut QAOA cost layers into global coupling rows"
)]
#[command(args_override_self = true)]
struct Cli {
    /// `key=value` file supplying defaults for the subcommand's long flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a family member or a seeded random graph.
    Gen(GenArgs),
    /// Compile a graph into a verified decomposition.
    Compile(CompileArgs),
    /// Verify a decomposition against a graph.
    Verify(VerifyArgs),
    /// Spectral lower bound.
    Bound(BoundArgs),
    /// Exact coupling number by exhaustive search (small graphs).
    Brute(BruteArgs),
    /// Write the compact MIP in LP format plus a warm start.
    MipExport(MipExportArgs),
    /// Evaluate a `name value` assignment against an LP model.
    MipCheck(MipCheckArgs),
    /// Turn a solver solution listing into a verified decomposition.
    MipImport(MipImportArgs),
    /// Emit the pulse program of a decomposition.
    EmitCircuit(EmitCircuitArgs),
    /// Run the benchmark suite and write a CSV report.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyKind {
    Complete,
    PerfectMatching,
    Path,
    Cycle,
    Biclique,
    DisjointCliques,
    ErdosRenyi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Edges,
    Matrix,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long)]
    n: Option<usize>,
    /// Clique size or number of matching edges.
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    /// Comma-separated clique sizes.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
    format: GraphFormat,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompileArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    input: PathBuf,
    /// `auto` or a construction label (detector, clique, disjoint-cliques,
    /// pm-hadamard, cycle, path, stars, double-stars, complement).
    #[arg(long, default_value = "auto")]
    method: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a JSON summary instead of a text line.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    input: PathBuf,
    #[arg(long = "dec", value_name = "DECOMPOSITION")]
    decomposition: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    input: PathBuf,
    #[arg(long, default_value = "auto")]
    mode: BoundMode,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BruteArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    input: PathBuf,
    /// Certificate path; defaults to `<input stem>.gc.dec`.
    #[arg(long)]
    cert: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    timeout_secs: Option<u64>,
    /// Enumerate rows exactly as the reference search does (slower).
    #[arg(long)]
    paper_faithful: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WarmSource {
    Stars,
    DoubleStars,
    Auto,
}

#[derive(Args, Debug)]
struct MipExportArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    input: PathBuf,
    /// Model path; the warm start goes to `<out>.mst` and non-terminating
    /// coefficients to `<out>.exact`.
    #[arg(long)]
    out: PathBuf,
    /// Row budget; defaults to the warm start's row count. A smaller value
    /// omits the warm start.
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long, value_enum, default_value_t = WarmSource::Stars)]
    warm_start: WarmSource,
    /// Big-M value, or `sound` for (3n−2)^⌈(3n−1)/2⌉.
    #[arg(long, default_value = "10")]
    big_m: String,
    #[arg(long)]
    no_padberg: bool,
    #[arg(long)]
    padberg_budget: Option<usize>,
    #[arg(long)]
    keep_tautologies: bool,
    #[arg(long)]
    no_lb_cut: bool,
    #[arg(long)]
    all_ones_row: bool,
}

#[derive(Args, Debug)]
struct MipCheckArgs {
    #[arg(long)]
    model: PathBuf,
    /// Exact-rationals sidecar; `<model>.exact` is used when it exists.
    #[arg(long)]
    sidecar: Option<PathBuf>,
    #[arg(long)]
    assignment: PathBuf,
}

#[derive(Args, Debug)]
struct MipImportArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    input: PathBuf,
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    sidecar: Option<PathBuf>,
    #[arg(long)]
    solution: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CircuitFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct EmitCircuitArgs {
    #[arg(long = "in", value_name = "GRAPH")]
    input: PathBuf,
    /// Decomposition file; compiled with `auto` when omitted.
    #[arg(long = "dec")]
    decomposition: Option<PathBuf>,
    /// Order layers greedily to reduce bit flips.
    #[arg(long)]
    reorder: bool,
    #[arg(long, value_enum, default_value_t = CircuitFormat::Text)]
    format: CircuitFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// `default` or a manifest file (`graph_id n p seed [m]` lines).
    #[arg(long, default_value = "default")]
    suite: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 6)]
    oracle_max_n: usize,
    #[arg(long, default_value_t = 300)]
    oracle_timeout_secs: u64,
    /// Leave the timing columns empty (byte-reproducible CSV).
    #[arg(long)]
    no_timings: bool,
    /// Also write the suite manifest here.
    #[arg(long)]
    write_manifest: Option<PathBuf>,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(
                Error::UnverifiedInput(_)
                | Error::InfeasibleSolution(_)
                | Error::InconsistentWarmStart(_),
            ) => EXIT_UNVERIFIED,
            _ => EXIT_USAGE,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        anyhow::Error::from(err).into()
    }
}

fn unverified(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_UNVERIFIED,
        err: anyhow!(msg.into()),
    }
}

type CmdResult = Result<(), Failure>;

/// Relative output paths land in `GCOUPLING_OUT_DIR` when it is set.
fn out_path(p: &Path) -> PathBuf {
    match std::env::var_os("GCOUPLING_OUT_DIR") {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn write_out(path: &Path, text: &str) -> anyhow::Result<PathBuf> {
    let path = out_path(path);
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => {
            write_out(p, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    Graph::parse_any(&read(path)?).with_context(|| format!("parsing graph {}", path.display()))
}

fn read_decomposition(path: &Path) -> anyhow::Result<Decomposition> {
    Decomposition::parse_document(&read(path)?)
        .with_context(|| format!("parsing decomposition {}", path.display()))
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> anyhow::Result<T> {
    v.ok_or_else(|| anyhow!("--{flag} is required for --family {family}"))
}

fn gen(a: GenArgs) -> CmdResult {
    let fam = match a.family {
        FamilyKind::Complete => {
            let q = need(a.q, "q", "complete")?;
            Family::Complete {
                q,
                n: a.n.unwrap_or(q),
            }
        }
        FamilyKind::PerfectMatching => Family::PerfectMatching {
            q: need(a.q, "q", "perfect-matching")?,
        },
        FamilyKind::Path => Family::Path {
            n: need(a.n, "n", "path")?,
        },
        FamilyKind::Cycle => Family::Cycle {
            n: need(a.n, "n", "cycle")?,
        },
        FamilyKind::Biclique => Family::Biclique {
            a: need(a.a, "a", "biclique")?,
            b: need(a.b, "b", "biclique")?,
        },
        FamilyKind::DisjointCliques => {
            if a.sizes.is_empty() {
                return Err(anyhow!("--sizes is required for --family disjoint-cliques").into());
            }
            Family::DisjointCliques { sizes: a.sizes }
        }
        FamilyKind::ErdosRenyi => Family::ErdosRenyi {
            n: need(a.n, "n", "erdos-renyi")?,
            p: need(a.p, "p", "erdos-renyi")?,
            seed: a.seed,
        },
    };
    let g = generate_family(&fam)?;
    let text = match a.format {
        GraphFormat::Edges => g.to_edge_list(),
        GraphFormat::Matrix => g.to_matrix_text(),
    };
    emit(a.out.as_deref(), &text)?;
    Ok(())
}

fn compile(a: CompileArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let r = if a.method == "auto" {
        compile_auto(&g)
    } else {
        let m: Method = a
            .method
            .parse()
            .map_err(|e: Error| anyhow!("--method: {e}"))?;
        compile_with(&g, m)?
    };
    // Written files must reload to a decomposition that still verifies.
    let doc = r.decomposition.to_document();
    let reloaded = Decomposition::parse_document(&doc)?;
    if !verify(&g, &reloaded)?.feasible {
        return Err(unverified(
            "decomposition does not survive a document round trip",
        ));
    }
    if let Some(out) = &a.out {
        write_out(out, &doc)?;
    }
    if a.json {
        let v = serde_json::json!({
            "method": r.method.label(),
            "rows": r.rows,
            "lower_bound": r.lower_bound,
            "optimal": r.optimal,
            "verified": r.verified,
            "decomposition": r.decomposition.to_json(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&v).map_err(anyhow::Error::from)?
        );
    } else {
        println!(
            "method={} rows={} lb={} optimal={}",
            r.method,
            r.rows,
            r.lower_bound.map_or("-".into(), |l| l.to_string()),
            r.optimal
        );
        if a.out.is_none() {
            print!("{doc}");
        }
    }
    Ok(())
}

fn verify_cmd(a: VerifyArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let d = read_decomposition(&a.decomposition)?;
    let report = verify(&g, &d)?;
    if a.json {
        println!(
            "{}",
            serde_json::to_string(&report).map_err(anyhow::Error::from)?
        );
    } else {
        println!(
            "feasible={} rows={} worst_violation={}{}",
            report.feasible,
            d.len(),
            report.worst_violation,
            report
                .offending_pair
                .map_or(String::new(), |(i, j)| format!(" pair={},{}", i + 1, j + 1))
        );
    }
    if report.feasible {
        Ok(())
    } else {
        Err(unverified("decomposition does not implement the graph"))
    }
}

fn bound(a: BoundArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let r = spectral_lower_bound(&g, a.mode)?;
    if a.json {
        println!(
            "{}",
            serde_json::to_string(&r).map_err(anyhow::Error::from)?
        );
    } else {
        println!("{r}");
    }
    Ok(())
}

fn brute(a: BruteArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let opts = OracleOptions {
        k_max: a.k_max,
        paper_faithful: a.paper_faithful,
        max_n: a.max_n,
        deadline: a
            .timeout_secs
            .map(|s| Instant::now() + Duration::from_secs(s)),
        ..OracleOptions::default()
    };
    let (gc, cert) = brute_force_gc(&g, &opts)?;
    if !verify(&g, &cert)?.feasible {
        return Err(unverified("oracle certificate does not verify"));
    }
    let cert_path = a.cert.unwrap_or_else(|| {
        let stem = a
            .input
            .file_stem()
            .map_or("graph".into(), |s| s.to_string_lossy().into_owned());
        PathBuf::from(format!("{stem}.gc.dec"))
    });
    let written = write_out(&cert_path, &cert.to_document())?;
    println!("gc={gc}");
    println!("certificate={}", written.display());
    log::info!(
        "searched up to k_max = {}",
        a.k_max.unwrap_or(default_k_max(g.n()))
    );
    Ok(())
}

fn with_suffix(p: &Path, suffix: &str) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn mip_export(a: MipExportArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let warm = simplify(&match a.warm_start {
        WarmSource::Stars => union_of_stars(&g),
        WarmSource::DoubleStars => union_of_double_stars(&g),
        WarmSource::Auto => compile_auto(&g).decomposition,
    });
    let rows = a.rows.unwrap_or(warm.len().max(1));
    let big_m: Rational = if a.big_m == "sound" {
        Rational::from_integer(sound_big_m(g.n()))
    } else {
        parse_rational(&a.big_m).ok_or_else(|| anyhow!("--big-m: `{}` is not a number", a.big_m))?
    };
    let opts = MipOptions {
        big_m,
        padberg: !a.no_padberg,
        padberg_budget: a.padberg_budget,
        drop_tautologies: !a.keep_tautologies,
        lb_cut: !a.no_lb_cut,
        all_ones_row: a.all_ones_row,
        ..MipOptions::new(rows)
    };
    let m = build_cmipgc(&g, &opts)?;
    let e = emit_model(&m);
    let lp = write_out(&a.out, &e.lp)?;
    println!(
        "model={} rows={} variables={} constraints={}",
        lp.display(),
        rows,
        m.variables.len(),
        m.constraints.len()
    );
    if !e.sidecar.is_empty() {
        let p = write_out(&with_suffix(&a.out, ".exact"), &e.sidecar)?;
        println!("sidecar={}", p.display());
    }
    if warm.len() <= rows {
        let ws = emit_warmstart(&warm, &m)?;
        let p = write_out(&with_suffix(&a.out, ".mst"), &ws.to_text(&m))?;
        println!("warm_start={} objective={}", p.display(), warm.len());
    } else {
        println!(
            "warm_start=none (R = {rows} is below the {} warm-start rows)",
            warm.len()
        );
    }
    Ok(())
}

fn load_model(
    model: &Path,
    sidecar: Option<&Path>,
) -> anyhow::Result<graph_coupling::milp::MipModel> {
    let default = with_suffix(model, ".exact");
    let side = match sidecar {
        Some(p) => Some(read(p)?),
        None if default.exists() => Some(read(&default)?),
        None => None,
    };
    parse_model(&read(model)?, side.as_deref())
        .with_context(|| format!("parsing model {}", model.display()))
}

fn mip_check(a: MipCheckArgs) -> CmdResult {
    let m = load_model(&a.model, a.sidecar.as_deref())?;
    let mut values = std::collections::BTreeMap::new();
    for (k, line) in read(&a.assignment)?.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (name, value) = t
            .split_once(char::is_whitespace)
            .ok_or_else(|| anyhow!("assignment line {}: expected `name value`", k + 1))?;
        let v = parse_rational(value.trim()).ok_or_else(|| {
            anyhow!(
                "assignment line {}: `{}` is not a number",
                k + 1,
                value.trim()
            )
        })?;
        values.insert(name.to_string(), v);
    }
    let ev = evaluate(&m, &values)?;
    println!("{ev}");
    if ev.feasible() {
        Ok(())
    } else {
        Err(unverified(format!(
            "{} violated rows or bounds",
            ev.violated.len()
        )))
    }
}

fn mip_import(a: MipImportArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let m = load_model(&a.model, a.sidecar.as_deref())?;
    let r = ingest_solution(&read(&a.solution)?, &g, &m)?;
    println!(
        "rows={} lb={} exact={} optimal={}",
        r.rows,
        r.lower_bound.map_or("-".into(), |l| l.to_string()),
        r.exact,
        r.optimal
    );
    emit(a.out.as_deref(), &r.decomposition.to_document())?;
    Ok(())
}

fn emit_circuit(a: EmitCircuitArgs) -> CmdResult {
    let g = read_graph(&a.input)?;
    let d = match &a.decomposition {
        Some(p) => read_decomposition(p)?,
        None => compile_auto(&g).decomposition,
    };
    if !verify(&g, &d)?.feasible {
        return Err(unverified("decomposition does not implement the graph"));
    }
    let p = if a.reorder {
        emit_pulse_program_reordered(&d)
    } else {
        emit_pulse_program(&d)
    };
    if g.n() <= PHASE_CHECK_MAX_N && !phase_equivalence_check(&p, &g)? {
        return Err(unverified(
            "pulse program fails the phase equivalence check",
        ));
    }
    let text = match a.format {
        CircuitFormat::Text => p.to_text(),
        CircuitFormat::Json => {
            let mut v = p.to_json();
            v["gate_counts"] =
                serde_json::to_value(gate_counts(&d, &g)).map_err(anyhow::Error::from)?;
            format!(
                "{}\n",
                serde_json::to_string_pretty(&v).map_err(anyhow::Error::from)?
            )
        }
    };
    emit(a.out.as_deref(), &text)?;
    let c = gate_counts(&d, &g);
    eprintln!(
        "ms_layers={} bit_flips={} baseline_cnots={} baseline_rzs={}",
        c.ms_layers,
        p.bit_flips(),
        c.baseline_cnots,
        c.baseline_rzs
    );
    Ok(())
}

fn bench(a: BenchArgs) -> CmdResult {
    let suite = if a.suite == "default" {
        default_suite()
    } else {
        parse_manifest(&read(Path::new(&a.suite))?)?
    };
    if let Some(p) = &a.write_manifest {
        write_out(p, &to_manifest(&suite)?)?;
    }
    let opts = BenchOptions {
        oracle_max_n: a.oracle_max_n,
        oracle_timeout: Duration::from_secs(a.oracle_timeout_secs),
        threads: a.threads,
    };
    let records = run_suite(&suite, &opts)?;
    emit(a.out.as_deref(), &to_csv(&records, !a.no_timings))?;
    if a.out.is_some() {
        let worse = records
            .iter()
            .filter(|r| r.rows_double > r.rows_stars)
            .count();
        eprintln!(
            "{} instances; double stars beat or tie stars on {}",
            records.len(),
            records.len() - worse
        );
    }
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Compile(a) => compile(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Bound(a) => bound(a),
        Command::Brute(a) => brute(a),
        Command::MipExport(a) => mip_export(a),
        Command::MipCheck(a) => mip_check(a),
        Command::MipImport(a) => mip_import(a),
        Command::EmitCircuit(a) => emit_circuit(a),
        Command::Bench(a) => bench(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let argv = match config::expand_args(std::env::args_os().collect()) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
