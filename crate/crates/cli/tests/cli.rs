use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcoupling"))
        .current_dir(dir)
        .env_remove("GCOUPLING_OUT_DIR")
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    run(dir, args).status.code().expect("exit code")
}

fn field<'a>(line: &'a str, key: &str) -> &'a str {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no `{key}` in `{line}`"))
}

#[test]
fn compile_verify_round_trip() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    ok(
        dir,
        &[
            "gen",
            "--family",
            "erdos-renyi",
            "--n",
            "9",
            "--p",
            "0.4",
            "--seed",
            "3",
            "--out",
            "g.txt",
        ],
    );
    for method in ["auto", "stars", "double-stars"] {
        let line = ok(
            dir,
            &[
                "compile", "--in", "g.txt", "--method", method, "--out", "d.dec",
            ],
        );
        let rows: usize = field(&line, "rows").parse().unwrap();
        let check = ok(dir, &["verify", "--in", "g.txt", "--dec", "d.dec"]);
        assert_eq!(field(&check, "feasible"), "true");
        assert_eq!(field(&check, "rows").parse::<usize>().unwrap(), rows);
    }
}

#[test]
fn brute_on_the_path() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    ok(
        dir,
        &["gen", "--family", "path", "--n", "4", "--out", "p4.txt"],
    );
    let out = ok(dir, &["brute", "--in", "p4.txt"]);
    assert!(out.lines().any(|l| l == "gc=5"), "{out}");
    assert!(dir.join("p4.gc.dec").exists());
    let check = ok(dir, &["verify", "--in", "p4.txt", "--dec", "p4.gc.dec"]);
    assert_eq!(field(&check, "rows"), "5");
}

#[test]
fn bench_csv_is_reproducible_without_timings() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    fs::write(
        dir.join("suite.txt"),
        "# small\n5-2 5 0.6 502\n7-a 7 0.3 11\n",
    )
    .unwrap();
    let args = [
        "bench",
        "--suite",
        "suite.txt",
        "--no-timings",
        "--threads",
        "2",
    ];
    let a = ok(dir, &args);
    let b = ok(dir, &args);
    assert_eq!(a, b);
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(
        lines[0],
        "graph_id,n,m,lb,rows_stars,rows_double,rows_best,oracle_gc,t_stars_ms,t_double_ms,t_oracle_ms"
    );
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("5-2,5,") && lines[1].ends_with(",,,"));
    assert!(lines[2].starts_with("7-a,7,"));
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    assert_eq!(code(dir, &["gen", "--family", "no-such-family"]), 2);
    assert_eq!(code(dir, &["compile", "--in", "missing.txt"]), 2);
    ok(
        dir,
        &["gen", "--family", "path", "--n", "5", "--out", "p5.txt"],
    );
    ok(
        dir,
        &["gen", "--family", "cycle", "--n", "5", "--out", "c5.txt"],
    );
    ok(dir, &["compile", "--in", "p5.txt", "--out", "p5.dec"]);
    assert_eq!(
        code(dir, &["verify", "--in", "p5.txt", "--dec", "p5.dec"]),
        0
    );
    assert_eq!(
        code(dir, &["verify", "--in", "c5.txt", "--dec", "p5.dec"]),
        1
    );
    assert_eq!(
        code(dir, &["emit-circuit", "--in", "c5.txt", "--dec", "p5.dec"]),
        1
    );
}

#[test]
fn config_file_and_explicit_flags() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    ok(
        dir,
        &[
            "gen",
            "--family",
            "erdos-renyi",
            "--n",
            "10",
            "--p",
            "0.5",
            "--seed",
            "7",
            "--out",
            "g.txt",
        ],
    );
    fs::write(
        dir.join("c.cfg"),
        "# compile settings\nmethod = stars\njson = false\n",
    )
    .unwrap();
    let stars = ok(dir, &["compile", "--in", "g.txt", "--method", "stars"]);
    let from_config = ok(dir, &["--config", "c.cfg", "compile", "--in", "g.txt"]);
    assert_eq!(field(&from_config, "method"), "stars");
    assert_eq!(stars, from_config);
    let explicit = ok(
        dir,
        &[
            "compile",
            "--config",
            "c.cfg",
            "--in",
            "g.txt",
            "--method",
            "double-stars",
        ],
    );
    assert_eq!(field(&explicit, "method"), "double-stars");
}

#[test]
fn output_directory_variable() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    let out = Command::new(env!("CARGO_BIN_EXE_gcoupling"))
        .current_dir(dir)
        .env("GCOUPLING_OUT_DIR", "results")
        .args([
            "gen", "--family", "complete", "--q", "3", "--n", "4", "--out", "k3.txt",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        fs::read_to_string(dir.join("results/k3.txt")).unwrap(),
        "4 3\n1 2\n1 3\n2 3\n"
    );
}

#[test]
fn mip_export_check_import() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    ok(
        dir,
        &[
            "gen",
            "--family",
            "erdos-renyi",
            "--n",
            "6",
            "--p",
            "0.5",
            "--seed",
            "2",
            "--out",
            "g.txt",
        ],
    );
    let export = ok(dir, &["mip-export", "--in", "g.txt", "--out", "m.lp"]);
    let objective: usize = field(export.lines().last().unwrap(), "objective")
        .parse()
        .unwrap();
    let lp = fs::read_to_string(dir.join("m.lp")).unwrap();
    assert!(lp.starts_with("\\ cmipgc n=6 "));
    assert!(lp.contains("Subject To") && lp.trim_end().ends_with("End"));

    let check = ok(
        dir,
        &["mip-check", "--model", "m.lp", "--assignment", "m.lp.mst"],
    );
    assert_eq!(field(&check, "objective"), objective.to_string());
    assert_eq!(field(&check, "max_violation"), "0");

    let import = ok(
        dir,
        &[
            "mip-import",
            "--in",
            "g.txt",
            "--model",
            "m.lp",
            "--solution",
            "m.lp.mst",
            "--out",
            "s.dec",
        ],
    );
    assert_eq!(field(&import, "exact"), "true");
    assert_eq!(field(&import, "rows").parse::<usize>().unwrap(), objective);
    assert_eq!(
        field(
            &ok(dir, &["verify", "--in", "g.txt", "--dec", "s.dec"]),
            "feasible"
        ),
        "true"
    );

    // Break one weight: the listing no longer satisfies the model.
    let mst = fs::read_to_string(dir.join("m.lp.mst")).unwrap();
    let broken: String = mst
        .lines()
        .map(|l| {
            if l.starts_with("w_1 ") {
                "w_1 7".to_string()
            } else {
                l.to_string()
            }
        })
        .map(|l| l + "\n")
        .collect();
    fs::write(dir.join("bad.mst"), broken).unwrap();
    assert_eq!(
        code(
            dir,
            &["mip-check", "--model", "m.lp", "--assignment", "bad.mst"]
        ),
        1
    );
}
