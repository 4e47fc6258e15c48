use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use padic_zeta::Rational as BigRational;
use padic_zeta::algebra::{catalog, catalog_names, CatalogEntry};
use padic_zeta::counting::{c_series, count_levels, CountOptions, CountTable, Kind};
use padic_zeta::exactmath::{fit_product_form, fit_rational, FitOptions};
use padic_zeta::igusa::{count_lifting, count_naive, hensel_lift, homogeneous_bound_check, reverse_hensel_check, slope_report, PolySystem};
use padic_zeta::io::{parse_algebra_spec, parse_series, structure_properties};
use padic_zeta::par::Workers;
use padic_zeta::suites::{run_suite, SuiteConfig, SuiteError, SUITE_NAMES};
use padic_zeta::Series;
use serde::Deserialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exit code when a verification suite fails.
const EXIT_FAIL: u8 = 1;
/// Exit code when a suite refuses its input.
const EXIT_REFUSED: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "padic-zeta", version, about = "Exact subalgebra counting and p-adic zeta diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunFlags,
}

/// Flags shared by every command. A TOML file given with --config
/// overrides these.
#[derive(clap::Args, Debug, Clone, Default)]
struct RunFlags {
    #[arg(long, global = true)]
    prime: Option<u64>,
    #[arg(long, global = true)]
    imax: Option<u32>,
    #[arg(long, global = true)]
    kmax: Option<u32>,
    /// Type budget sum iota*r_iota for the Bruhat sweep.
    #[arg(long, global = true)]
    budget: Option<u32>,
    /// Igusa precision K.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    prime: Option<u64>,
    i_max: Option<u32>,
    k_max: Option<u32>,
    budget: Option<u32>,
    precision: Option<u32>,
    workers: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Text,
    Jsonl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Lattice,
    Subalgebra,
    Ideal,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the catalog algebras.
    List,
    /// Count lattices, subalgebras or ideals of index p^i for i <= imax.
    Count {
        /// Catalog name or algebra spec file.
        algebra: String,
        #[arg(long, value_enum, default_value = "subalgebra")]
        kind: KindArg,
        /// Include weight and type strata of primitive lattices.
        #[arg(long)]
        strata: bool,
    },
    /// Run a verification suite.
    Verify {
        /// One of the suite names; `all` runs every suite.
        suite: String,
        /// Catalog name or spec file for algebra-parametric suites.
        algebra: Option<String>,
    },
    /// Fit a rational function in product form to a series file of `i: value` rows.
    Fit {
        series: PathBuf,
        #[arg(long, default_value_t = 4)]
        amax: u32,
        #[arg(long, default_value_t = 3)]
        bmax: u32,
        #[arg(long, default_value_t = 2)]
        multiplicity: u32,
    },
    /// Polynomial congruence counting.
    Igusa {
        #[command(subcommand)]
        op: IgusaOp,
    },
}

#[derive(Subcommand, Debug)]
enum IgusaOp {
    /// M_i for i <= imax, with a naive cross-check when --naive is set.
    Count {
        poly: PathBuf,
        #[arg(long)]
        naive: bool,
    },
    /// Valuations and slopes v_p(M_i)/i.
    Slopes { poly: PathBuf },
    /// Newton lift of a point to a root mod p^precision.
    Hensel {
        poly: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Reverse-Hensel hypothesis sweep mod p^precision and the slope cross-check.
    ReverseHensel {
        poly: PathBuf,
        /// Comma-separated lambda_j in [0, 1], e.g. 1,1/2.
        #[arg(long)]
        lambda: String,
    },
    /// Homogeneous lower bound on v_p(M_i).
    Homog { poly: PathBuf },
}

/// Effective settings after applying the config file.
struct Settings {
    prime: Option<u64>,
    i_max: Option<u32>,
    k_max: Option<u32>,
    budget: Option<u32>,
    precision: Option<u32>,
    out: Option<PathBuf>,
    format: Format,
}

impl Settings {
    fn resolve(flags: &RunFlags) -> Result<(Self, usize)> {
        let cfg = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                toml::from_str::<ConfigFile>(&text).with_context(|| format!("parsing {}", path.display()))?
            }
            None => ConfigFile::default(),
        };
        let s = Settings {
            prime: cfg.prime.or(flags.prime),
            i_max: cfg.i_max.or(flags.imax),
            k_max: cfg.k_max.or(flags.kmax),
            budget: cfg.budget.or(flags.budget),
            precision: cfg.precision.or(flags.precision),
            out: cfg.out.or_else(|| flags.out.clone()),
            format: cfg.format.or(flags.format).unwrap_or_default(),
        };
        for (name, v) in [("budget", s.budget), ("precision", s.precision), ("k_max", s.k_max)] {
            if v == Some(0) {
                bail!("{name} must be positive");
            }
        }
        if s.prime.is_some_and(|p| p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0)) {
            bail!("--prime must be a prime");
        }
        Ok((s, cfg.workers.or(flags.workers).unwrap_or(0)))
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn load_algebra(spec: &str, prime: Option<u64>) -> Result<CatalogEntry> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let mut entry = parse_algebra_spec(&text).with_context(|| format!("loading {spec}"))?;
        if let Some(p) = prime.filter(|&p| p != entry.algebra.p()) {
            entry.algebra = entry.algebra.with_prime(p);
            let (class, resid) = structure_properties(&entry.algebra)?;
            entry.nilpotent_class = class;
            entry.residually_nilpotent = resid;
        }
        return Ok(entry);
    }
    catalog(spec, prime.unwrap_or(2)).ok_or_else(|| anyhow!("{spec} is neither a file nor a catalog name (see `padic-zeta list`)"))
}

fn load_poly(path: &Path, prime: Option<u64>) -> Result<PolySystem> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let sys = PolySystem::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(match prime {
        Some(p) => sys.with_prime(p),
        None => sys,
    })
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',').map(|x| x.trim().parse::<T>().map_err(|_| anyhow!("bad list entry {x}"))).collect()
}

fn json_line(v: serde_json::Value) -> String {
    format!("{v}\n")
}

fn cmd_count(s: &Settings, workers: Workers, algebra: &str, kind: KindArg, strata: bool) -> Result<String> {
    let entry = load_algebra(algebra, s.prime)?;
    let alg = &entry.algebra;
    let i_max = s.i_max.unwrap_or(4);
    let levels_max = s.k_max.map_or(i_max, |k| k.max(i_max));
    let opts = CountOptions { subalgebras: true, ideals: true, strata: strata || s.k_max.is_some(), workers };
    let levels = count_levels(alg, levels_max, &opts);
    let shown = &levels[..=i_max as usize];
    let kinds = match kind {
        KindArg::Lattice => vec![Kind::Lattice],
        KindArg::Subalgebra => vec![Kind::Subalgebra],
        KindArg::Ideal => vec![Kind::Ideal],
        KindArg::All => vec![Kind::Lattice, Kind::Subalgebra, Kind::Ideal],
    };
    let mut out = String::new();
    for (idx, &k) in kinds.iter().enumerate() {
        let mut t = CountTable::from_levels(alg.name(), alg.p(), k, shown);
        if !strata || idx + 1 < kinds.len() {
            t.weight_strata.clear();
            t.type_strata.clear();
        }
        match s.format {
            Format::Text => {
                if kinds.len() > 1 {
                    writeln!(out, "# {k}")?;
                }
                out.push_str(&t.to_text());
            }
            Format::Jsonl => out.push_str(&t.to_jsonl()),
        }
    }
    if let Some(k_max) = s.k_max {
        let c = c_series(alg, &levels, k_max)?;
        match s.format {
            Format::Text => {
                writeln!(out, "\n# c_k")?;
                for (k, v) in c.iter().enumerate() {
                    writeln!(out, "c {k}: {v}")?;
                }
            }
            Format::Jsonl => {
                for (k, v) in c.iter().enumerate() {
                    out.push_str(&json_line(serde_json::json!({"algebra": alg.name(), "p": alg.p(), "k": k, "c": v})));
                }
            }
        }
    }
    Ok(out)
}

fn cmd_fit(s: &Settings, path: &Path, amax: u32, bmax: u32, mult: u32) -> Result<String> {
    let p = s.prime.ok_or_else(|| anyhow!("fit needs --prime"))?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let coeffs = parse_series(&text)?;
    let series = Series::new(p, coeffs);
    let opts = FitOptions::grid(amax, bmax, mult);
    let product = fit_product_form(&series, &opts);
    let reduced = fit_rational(&series, &opts);
    let mut out = String::new();
    match s.format {
        Format::Text => {
            writeln!(out, "coefficients: {}", series.order() + 1)?;
            writeln!(out, "grid: a <= {amax}, b <= {bmax}, multiplicity <= {mult}")?;
            match &product {
                Some(f) => writeln!(out, "product form: {f} (verified through t^{})", f.fit.verified_through)?,
                None => writeln!(out, "product form: none")?,
            }
            match &reduced {
                Some(f) => writeln!(out, "reduced: {f} (verified through t^{})", f.verified_through)?,
                None => writeln!(out, "reduced: none")?,
            }
        }
        Format::Jsonl => {
            out.push_str(&json_line(serde_json::json!({
                "prime": p,
                "coefficients": series.order() + 1,
                "product_form": product.as_ref().map(|f| f.to_string()),
                "reduced": reduced.as_ref().map(|f| f.to_string()),
            })));
        }
    }
    if product.is_none() && reduced.is_none() {
        bail!("{out}no rational function on the grid matches the series");
    }
    Ok(out)
}

fn cmd_igusa(s: &Settings, op: &IgusaOp) -> Result<String> {
    let mut out = String::new();
    let i_max = s.i_max.unwrap_or(8);
    let budget = 1u64 << 24;
    match op {
        IgusaOp::Count { poly, naive } => {
            let sys = load_poly(poly, s.prime)?;
            let m = count_lifting(&sys, i_max, budget)?;
            for (i, mi) in m.iter().enumerate() {
                let check = if *naive { Some(count_naive(&sys, i as u32, budget)?) } else { None };
                if let Some(c) = check {
                    if c != *mi {
                        bail!("naive count {c} disagrees with lifting count {mi} at i = {i}");
                    }
                }
                match s.format {
                    Format::Text => writeln!(out, "{i}: {mi}")?,
                    Format::Jsonl => out.push_str(&json_line(serde_json::json!({"i": i, "M": mi.to_string(), "naive_checked": naive}))),
                }
            }
        }
        IgusaOp::Slopes { poly } => {
            let sys = load_poly(poly, s.prime)?;
            let r = slope_report(&sys, i_max)?;
            let show = |x: &Option<BigRational>| x.as_ref().map_or("-".to_string(), |v| v.to_string());
            match s.format {
                Format::Text => {
                    writeln!(out, "{:>4} {:>16} {:>6} {:>8} {:>10}", "i", "M_i", "v_p", "slope", "tail_min")?;
                    for i in 0..r.m.len() {
                        writeln!(out, "{i:>4} {:>16} {:>6} {:>8} {:>10}", r.m[i], r.valuations[i].to_string(), show(&r.slopes[i]), show(&r.running_min[i]))?;
                    }
                    writeln!(out, "liminf estimate (window only): {}", show(&r.liminf_estimate()))?;
                    writeln!(out, "invariants M_0 = 1 and M_(i+1) <= p^n M_i: {}", r.invariants_hold())?;
                }
                Format::Jsonl => {
                    for i in 0..r.m.len() {
                        out.push_str(&json_line(serde_json::json!({
                            "i": i, "M": r.m[i].to_string(), "v": r.valuations[i].to_string(),
                            "slope": show(&r.slopes[i]), "tail_min": show(&r.running_min[i]),
                        })));
                    }
                }
            }
        }
        IgusaOp::Hensel { poly, point } => {
            let sys = load_poly(poly, s.prime)?;
            let a: Vec<i128> = parse_list(point)?;
            let k = s.precision.unwrap_or(4);
            let b = hensel_lift(&sys, &a, k)?;
            let bs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            match s.format {
                Format::Text => writeln!(out, "root mod {}^{k}: {}", sys.p, bs.join(", "))?,
                Format::Jsonl => out.push_str(&json_line(serde_json::json!({"p": sys.p, "precision": k, "root": bs}))),
            }
        }
        IgusaOp::ReverseHensel { poly, lambda } => {
            let sys = load_poly(poly, s.prime)?;
            let lam: Vec<BigRational> = parse_list(lambda)?;
            let k = s.precision.unwrap_or(6);
            let r = reverse_hensel_check(&sys, &lam, k, i_max)?;
            match s.format {
                Format::Text => {
                    writeln!(out, "hypothesis holds mod {}^{k}: {}", sys.p, r.holds)?;
                    if let Some((a, j, nd, nf)) = &r.counterexample {
                        writeln!(out, "counterexample: a = {a:?}, j = {j}, nu(delta_j) = {nd}, nu(f) = {nf}")?;
                    }
                    writeln!(out, "pole bound: Re(s_0) >= {}", r.bound)?;
                    writeln!(out, "slope check at even i <= {i_max}: {}", r.slope_check())?;
                    if !r.slope_check() {
                        writeln!(out, "violations at i = {:?}", r.slope_violations)?;
                    }
                }
                Format::Jsonl => out.push_str(&json_line(serde_json::json!({
                    "precision": k, "holds": r.holds, "counterexample": r.counterexample.as_ref().map(|c| format!("{c:?}")),
                    "bound": r.bound, "slope_check": r.slope_check(), "slope_violations": r.slope_violations,
                }))),
            }
        }
        IgusaOp::Homog { poly } => {
            let sys = load_poly(poly, s.prime)?;
            let r = homogeneous_bound_check(&sys, i_max)?;
            let margins: Vec<String> = r.margins.iter().map(|m| m.map_or("inf".to_string(), |v| v.to_string())).collect();
            match s.format {
                Format::Text => {
                    writeln!(out, "holds: {}", r.holds)?;
                    writeln!(out, "minimal degree: {}", r.degree.map_or("-".to_string(), |d| d.to_string()))?;
                    writeln!(out, "bound rate {} against target {}", r.bound_rate, r.target_rate)?;
                    writeln!(out, "margins v_p(M_i) - B(i): {}", margins.join(", "))?;
                }
                Format::Jsonl => out.push_str(&json_line(serde_json::json!({
                    "holds": r.holds, "degree": r.degree, "bound_rate": r.bound_rate, "target_rate": r.target_rate, "margins": margins,
                }))),
            }
        }
    }
    Ok(out)
}

fn cmd_verify(s: &Settings, workers: Workers, suite: &str, algebra: Option<&str>) -> Result<(String, u8)> {
    let entry = algebra.map(|a| load_algebra(a, s.prime)).transpose()?;
    let cfg = SuiteConfig {
        workers,
        i_max: s.i_max,
        k_max: s.k_max,
        budget: s.budget,
        primes: if entry.is_none() { s.prime.map(|p| vec![p]) } else { None },
    };
    let names: Vec<&str> = if suite == "all" { SUITE_NAMES.to_vec() } else { vec![suite] };
    let mut out = String::new();
    let mut code = 0u8;
    for name in names {
        match run_suite(name, entry.as_ref(), &cfg) {
            Ok(r) => {
                out.push_str(&match s.format {
                    Format::Text => r.to_text(),
                    Format::Jsonl => r.to_jsonl(),
                });
                if !r.passed() {
                    code = code.max(EXIT_FAIL);
                }
            }
            Err(SuiteError::Refused(why)) => {
                match s.format {
                    Format::Text => writeln!(out, "suite {name}: REFUSED ({why})")?,
                    Format::Jsonl => out.push_str(&json_line(serde_json::json!({"suite": name, "refused": why}))),
                }
                code = code.max(EXIT_REFUSED);
            }
            Err(e) => bail!("{e}; suites: {}, all", SUITE_NAMES.join(", ")),
        }
    }
    Ok((out, code))
}

fn run(cli: Cli) -> Result<u8> {
    let (s, workers) = Settings::resolve(&cli.run)?;
    let workers = Workers(workers);
    let mut code = 0;
    let text = match &cli.command {
        Command::List => catalog_names().join("\n") + "\n",
        Command::Count { algebra, kind, strata } => cmd_count(&s, workers, algebra, *kind, *strata)?,
        Command::Verify { suite, algebra } => {
            let (text, c) = cmd_verify(&s, workers, suite, algebra.as_deref())?;
            code = c;
            text
        }
        Command::Fit { series, amax, bmax, multiplicity } => cmd_fit(&s, series, *amax, *bmax, *multiplicity)?,
        Command::Igusa { op } => cmd_igusa(&s, op)?,
    };
    s.emit(&text)?;
    Ok(code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
