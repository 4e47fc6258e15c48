use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic-zeta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn count_examples() {
    let o = run(&["count", "abelian-3", "--prime", "2", "--imax", "6", "--kind", "lattice"]);
    assert!(o.status.success());
    let rows: Vec<String> = stdout(&o).lines().map(|l| l.split(':').nth(1).unwrap().trim().to_string()).collect();
    assert_eq!(rows, ["1", "7", "35", "155", "651", "2667", "10795"]);
    assert_eq!(stdout(&run(&["count", "heisenberg", "--prime", "2", "--imax", "2"])), "0: 1\n1: 3\n2: 19\n");
    assert_eq!(stdout(&run(&["count", "heisenberg", "--imax", "0"])), "0: 1\n");
}

#[test]
fn output_is_independent_of_worker_count() {
    let args = ["count", "filiform-4", "--prime", "3", "--imax", "3", "--kind", "all", "--strata", "--format", "jsonl"];
    let one = run(&[&args[..], &["--workers", "1"]].concat());
    let many = run(&[&args[..], &["--workers", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn verify_passes_and_refuses() {
    let o = run(&["verify", "theorem-a", "heisenberg"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("suite theorem-a: PASS"));
    let o = run(&["verify", "bruhat-equivalence", "heisenberg"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "theorem-a", "zp2-componentwise", "--prime", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("REFUSED"));
    let o = run(&["verify", "limit", "heisenberg", "--prime", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!run(&["verify", "no-such-suite"]).status.success());
}

#[test]
fn algebra_spec_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec = "name: heis\ndim: 3\nprime: 2\nweights: 1 1 2\nlie: true\nnilpotent_class: 2\n1 2 3 1\n2 1 3 -1\n";
    let path = write(dir.path(), "heis.txt", spec);
    assert_eq!(stdout(&run(&["count", &path, "--imax", "3"])), "0: 1\n1: 3\n2: 19\n3: 43\n");
    assert_eq!(stdout(&run(&["count", &path, "--imax", "1", "--prime", "3"])), "0: 1\n1: 4\n");
    let bad = write(dir.path(), "bad.txt", &spec.replace("nilpotent_class: 2", "nilpotent_class: 3"));
    let o = run(&["count", &bad, "--imax", "1"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("nilpotent_class"));
}

#[test]
fn fit_recovers_heisenberg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.txt");
    let o = run(&["count", "heisenberg", "--prime", "2", "--imax", "10", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let o = run(&["fit", out.to_str().unwrap(), "--prime", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("product form: (1-8t^3) / (1-t)*(1-2t)*(1-4t^2)*(1-8t^2)"));
    let short = write(dir.path(), "s.txt", "0: 1\n1: 3\n");
    assert!(!run(&["fit", &short, "--prime", "2"]).status.success());
}

#[test]
fn config_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.toml", "i_max = 1\nformat = \"jsonl\"\n");
    let o = run(&["count", "heisenberg", "--imax", "5", "--config", &cfg]);
    assert_eq!(stdout(&o).lines().count(), 2);
    assert!(stdout(&o).starts_with("{"));
    let bad = write(dir.path(), "bad.toml", "imax = 1\n");
    assert!(!run(&["count", "heisenberg", "--config", &bad]).status.success());
}

#[test]
fn igusa_commands() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.poly", "n=1 p=7\nx^2 - 2\n");
    let o = run(&["igusa", "hensel", &h, "--point", "3", "--precision", "2"]);
    assert_eq!(stdout(&o), "root mod 7^2: 10\n");
    assert!(!run(&["igusa", "hensel", &h, "--point", "0", "--precision", "2"]).status.success());

    let q = write(dir.path(), "q.poly", "n=2 p=3\nx^2 + y^2\n");
    let o = run(&["igusa", "count", &q, "--imax", "4", "--naive"]);
    assert_eq!(stdout(&o), "0: 1\n1: 1\n2: 9\n3: 9\n4: 81\n");
    let o = run(&["igusa", "homog", &q, "--imax", "6"]);
    assert!(stdout(&o).starts_with("holds: true"));

    let x2 = write(dir.path(), "x2.poly", "n=1 p=2\nx^2\n");
    let o = run(&["igusa", "reverse-hensel", &x2, "--lambda", "1", "--precision", "6", "--imax", "10"]);
    let s = stdout(&o);
    assert!(s.contains("hypothesis holds mod 2^6: true"));
    assert!(s.contains("Re(s_0) >= -1/2"));
    assert!(s.contains("slope check at even i <= 10: true"));
    let o = run(&["igusa", "slopes", &x2, "--imax", "4", "--format", "jsonl"]);
    assert_eq!(stdout(&o).lines().count(), 5);
}
