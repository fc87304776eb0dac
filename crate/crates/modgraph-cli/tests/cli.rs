//! End-to-end tests of the binary's interfaces.

use std::fs;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_modgraph"))
}

fn tempdir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("modgraph-cli-{name}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn decompose_p4_gives_prime_root_tree() {
    let dir = tempdir("decompose");
    let input = dir.join("p4.txt");
    fs::write(&input, "4\n1 2\n2 3\n3 4\n").unwrap();
    let out = bin().arg("decompose").arg(&input).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        stdout.trim(),
        r#"{"dec":{"prime":"4\n1 2\n2 3\n3 4\n"},"children":[{"leaf":1},{"leaf":2},{"leaf":3},{"leaf":4}]}"#
    );
    // the output parses back to the same decomposition
    let tree = modgraph::io::tree_from_json(stdout.trim()).unwrap();
    assert_eq!(
        tree,
        modgraph::modular_decomposition(&modgraph::LabeledGraph::path(4))
    );
}

#[test]
fn decompose_single_vertex_is_a_leaf() {
    let dir = tempdir("leaf");
    let input = dir.join("one.txt");
    fs::write(&input, "1\n").unwrap();
    let out = bin().arg("decompose").arg(&input).output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"leaf":1}"#
    );
}

#[test]
fn decompose_rejects_self_loop_with_line_number() {
    let dir = tempdir("loop");
    let input = dir.join("bad.txt");
    fs::write(&input, "3\n1 2\n2 2\n").unwrap();
    let out = bin().arg("decompose").arg(&input).output().unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 3"), "{stderr}");
    assert!(stderr.contains("self-loop"), "{stderr}");
}

#[test]
fn counts_table_has_expected_prefix() {
    let out = bin().args(["counts", "--order", "6"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let first: Vec<&str> = stdout
        .lines()
        .map(|l| l.split('\t').nth(1).unwrap())
        .collect();
    assert_eq!(first, ["1", "2", "8", "52", "472", "5504"]);
    // ratio column drifts toward 1
    let ratios: Vec<f64> = stdout
        .lines()
        .map(|l| l.split('\t').nth(3).unwrap().parse().unwrap())
        .collect();
    assert!(ratios.last().unwrap() < &ratios[1]);
}

#[test]
fn constants_table_lists_all_keys() {
    let out = bin()
        .args(["--class", "builtin:paths", "constants"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    for key in ["kappa", "R", "K", "mu", "C", "p"] {
        assert!(
            stdout.lines().any(|l| l.starts_with(&format!("{key}\t"))),
            "missing {key} in {stdout}"
        );
    }
    let p: f64 = stdout
        .lines()
        .find(|l| l.starts_with("p\t"))
        .unwrap()
        .split('\t')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((p - 0.410077807).abs() < 1e-8);
}

#[test]
fn sample_stream_is_deterministic_and_in_class() {
    let args = [
        "--class",
        "builtin:paths",
        "--seed",
        "7",
        "sample",
        "-n",
        "30",
        "--count",
        "3",
    ];
    let out1 = bin().args(args).output().unwrap();
    let out2 = bin().args(args).output().unwrap();
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout);
    let text = String::from_utf8(out1.stdout).unwrap();
    // stream splits at blank lines into individually parseable graphs
    let chunks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(chunks.len(), 3);
    let class = modgraph::PrimeClass::paths();
    for chunk in chunks {
        let g = modgraph::io::graph_from_text(chunk).unwrap();
        assert_eq!(g.size(), 30);
        assert!(modgraph::is_in_class(&g, &class));
    }
}

#[test]
fn sample_writes_one_file_per_sample_into_directory() {
    let dir = tempdir("samples");
    let out = bin()
        .args(["sample", "-n", "5", "--count", "2", "--seed", "3", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("sample_00000.txt").exists());
    assert!(dir.join("sample_00001.txt").exists());
}

#[test]
fn class_file_round_trip_through_cli() {
    let dir = tempdir("class");
    let path = dir.join("c.json");
    fs::write(
        &path,
        r#"{"kind":"finite","graphs":["4\n1 2\n2 3\n3 4\n"]}"#,
    )
    .unwrap();
    let out = bin()
        .args(["--class", path.to_str().unwrap(), "counts", "--order", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let counts: Vec<&str> = stdout
        .lines()
        .map(|l| l.split('\t').nth(1).unwrap())
        .collect();
    assert_eq!(counts, ["1", "2", "8", "64"]);
    // missing class file is a usage error
    let out = bin()
        .args(["--class", "/nonexistent.json", "counts"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn density_report_is_deterministic_across_job_counts() {
    let args_base = [
        "--class",
        "builtin:empty",
        "--seed",
        "5",
        "density",
        "--sizes",
        "40,60",
        "--samples",
        "12",
        "--injections",
        "200",
        "--marks",
        "3",
        "--subtree-injections",
        "40",
    ];
    let out1 = bin()
        .args(["--jobs", "1"])
        .args(args_base)
        .output()
        .unwrap();
    let out4 = bin()
        .args(["--jobs", "4"])
        .args(args_base)
        .output()
        .unwrap();
    assert!(
        out1.status.success(),
        "{}",
        String::from_utf8_lossy(&out1.stderr)
    );
    assert_eq!(
        out1.stdout, out4.stdout,
        "reports must not depend on the worker count"
    );
    let csv = String::from_utf8(out1.stdout).unwrap();
    assert!(csv.starts_with("size,statistic,empirical,stderr,predicted,ratio,flag"));
    // the edge row exists with a sane prediction of 1/2
    let edge = csv.lines().find(|l| l.contains("occ_density[K2]")).unwrap();
    assert!(edge.contains(",0.5,"), "{edge}");
}

#[test]
fn scaling_report_runs_on_a_toy_configuration() {
    let dir = tempdir("scaling");
    let pat = dir.join("p4.txt");
    fs::write(&pat, "4\n1 2\n2 3\n3 4\n").unwrap();
    let out = bin()
        .args([
            "--class",
            "builtin:paths",
            "--seed",
            "2",
            "scaling",
            "--pattern",
        ])
        .arg(&pat)
        .args([
            "--sizes",
            "30,60",
            "--samples",
            "10",
            "--injections",
            "4000",
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 3, "{csv}");
    assert!(csv.contains("occ_scaling[p4]"));
}

#[test]
fn occ_subcommand_outputs_both_conventions() {
    let dir = tempdir("occ");
    let pat = dir.join("k2.txt");
    let host = dir.join("p4.txt");
    fs::write(&pat, "2\n1 2\n").unwrap();
    fs::write(&host, "4\n1 2\n2 3\n3 4\n").unwrap();
    let out = bin()
        .args(["occ", "--pattern"])
        .arg(&pat)
        .arg("--graph")
        .arg(&host)
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("occ_iso\t6"));
    assert!(stdout.contains("occ_exact\t6"));
}
