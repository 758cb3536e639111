use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use symorb::dictionary::chern_generating;
use symorb::fock::{symbolic, CoordVector, FockSpace, PartitionFunction};
use symorb::jucys::{epsilon_class, eta_class, p_class, Classes};
use symorb::orbiring::product_invariant;
use symorb::report::Report;
use symorb::scalar::Scalar;
use symorb::stablering::{StableRing, TableJson, TableStore};
use symorb::suites::{self, load_algebra, Deform, SuiteConfig};
use symorb::{AlgebraElement, FrobeniusAlgebra, OrbElement, ProductRule, Q};

/// `println!` that exits quietly when the reader has gone away (`| head`).
macro_rules! out {
    ($($arg:tt)*) => {
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    };
}

#[derive(Parser)]
#[command(name = "symorb", version, about = "Exact orbifold cohomology of symmetric products")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Algebra definitions.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Product of p_rho(n) and p_sigma(n), as Fock monomials at level n.
    Product {
        #[arg(long, default_value = "P2")]
        algebra: String,
        #[arg(long)]
        n: usize,
        /// Monomial such as "x:2 1:1" (class:part, parts separated by '.').
        #[arg(long)]
        rho: String,
        #[arg(long)]
        sigma: String,
        /// `s=<rational>` for t = s^6, or `t=-1`.
        #[arg(long)]
        deform: Option<String>,
    },
    /// Heisenberg operators on the Fock space.
    Fock {
        #[command(subcommand)]
        cmd: FockCmd,
    },
    /// Coordinates of a distinguished class in the Fock monomials at level n.
    Class {
        #[arg(value_enum)]
        kind: ClassKind,
        #[arg(long, default_value = "P2")]
        algebra: String,
        #[arg(long)]
        n: usize,
        /// Basis label of the class argument (defaults to the unit).
        #[arg(long)]
        class: Option<String>,
        /// k for O^k, i for P_i.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Run a verification suite; exit code 0 iff every case passes.
    Verify(VerifyArgs),
    /// Stable structure constants.
    Stable {
        #[command(subcommand)]
        cmd: StableCmd,
    },
    /// Coefficients of the tautological Chern generating function.
    Chern {
        #[arg(long, default_value = "P2")]
        algebra: String,
        /// Basis label of the line bundle class L.
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 4)]
        z_order: usize,
        #[arg(long, default_value_t = 3)]
        hbar_order: usize,
    },
    /// Re-export a report or table artifact as canonical JSON or CSV.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Check every invariant and print the derived Euler class.
    Validate { algebra: String },
    /// List the built-in algebras.
    List,
}

#[derive(Subcommand)]
enum FockCmd {
    /// Apply p_m(class) to a monomial state.
    Apply {
        #[arg(long, default_value = "P2")]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        mode: i64,
        #[arg(long)]
        class: String,
        /// Monomial state; empty for the vacuum.
        #[arg(long, default_value = "")]
        state: String,
    },
}

#[derive(Subcommand)]
enum StableCmd {
    /// Tabulate d^nu_{rho sigma} for ||rho|| + ||sigma|| <= max-norm.
    Tabulate {
        #[arg(long, default_value = "P2")]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        max_norm: usize,
        /// Window width beyond the stability bound.
        #[arg(long, default_value_t = 2)]
        extra: usize,
        /// Write the table here: `.csv` for CSV, anything else for JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-entry store directory, reused across runs.
        #[arg(long)]
        store: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassKind {
    #[value(name = "O")]
    O,
    #[value(name = "eta")]
    Eta,
    #[value(name = "epsilon")]
    Epsilon,
    #[value(name = "P")]
    P,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: heisenberg, jucys, goulden, comm, eta, zeromode, walg,
    /// universality, stability, generators, deform, dictionary, chern.
    suite: String,
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long, alias = "n")]
    max_n: Option<usize>,
    #[arg(long)]
    max_k: Option<usize>,
    #[arg(long)]
    max_m: Option<i64>,
    #[arg(long)]
    max_pq: Option<usize>,
    /// `s=<rational>` for t = s^6, or `t=-1`; default runs t in {1, -1, 64}.
    #[arg(long, allow_hyphen_values = true)]
    deform: Option<String>,
    /// Shape-check reading for `universality`: literal or euler-twice.
    #[arg(long)]
    reading: Option<String>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Lift the level caps (runs can take hours).
    #[arg(long)]
    unsafe_caps: bool,
    /// TOML file with the same keys; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl VerifyArgs {
    fn config(&self) -> Result<SuiteConfig> {
        let mut cfg = match &self.config {
            Some(p) => toml::from_str::<SuiteConfig>(&fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)
                .with_context(|| format!("parsing {}", p.display()))?,
            None => SuiteConfig::default(),
        };
        cfg.suite = self.suite.clone();
        if let Some(a) = &self.algebra {
            cfg.algebra = a.clone();
        }
        if cfg.algebra.is_empty() {
            cfg.algebra = "P2".into();
        }
        cfg.max_n = self.max_n.or(cfg.max_n);
        cfg.max_k = self.max_k.or(cfg.max_k);
        cfg.max_m = self.max_m.or(cfg.max_m);
        cfg.max_pq = self.max_pq.or(cfg.max_pq);
        if let Some(d) = &self.deform {
            cfg.deform = Some(d.parse()?);
        }
        cfg.reading = self.reading.clone().or(cfg.reading);
        cfg.output = self.out.as_ref().map(|p| p.display().to_string()).or(cfg.output);
        cfg.threads = self.threads.or(cfg.threads);
        cfg.unsafe_caps |= self.unsafe_caps;
        Ok(cfg)
    }
}

fn label_index(alg: &FrobeniusAlgebra, label: &str) -> Result<usize> {
    match alg.index_of(label) {
        Some(i) => Ok(i),
        None => bail!("no basis class `{label}` in {} (labels: {})", alg.name, (0..alg.dim()).map(|i| alg.label(i)).collect::<Vec<_>>().join(", ")),
    }
}

fn class_arg(alg: &FrobeniusAlgebra, label: Option<&str>) -> Result<AlgebraElement<Q>> {
    Ok(match label {
        Some(l) => alg.element(label_index(alg, l)?),
        None => alg.unit_element(),
    })
}

fn print_coords<S: Scalar>(alg: &FrobeniusAlgebra, v: &CoordVector<S>) {
    if v.terms.is_empty() {
        out!("0");
    }
    for (p, c) in &v.terms {
        let m = p.display(alg);
        out!("{}\t{}", c.exact_repr(), if m.is_empty() { "|0>".to_string() } else { m });
    }
}

fn coords_of(fs: &FockSpace<Q>, x: &OrbElement<Q>) -> Result<CoordVector<Q>> {
    if x.is_zero() {
        return Ok(CoordVector::zero());
    }
    Ok(fs.coordinates(x, true)?)
}

fn write_or_print(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            out!("{}", body.trim_end_matches('\n'));
            Ok(())
        }
    }
}

fn report_csv(r: &Report) -> String {
    let field = |s: &str| if s.contains([',', '"', '\n']) { format!("\"{}\"", s.replace('"', "\"\"")) } else { s.to_string() };
    let mut cases = r.cases.clone();
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    let mut out = String::from("id,pass,residual\n");
    for c in cases {
        out.push_str(&format!("{},{},{}\n", field(&c.id), c.pass, field(c.residual.as_deref().unwrap_or(""))));
    }
    out
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Algebra { cmd: AlgebraCmd::List } => {
            for n in FrobeniusAlgebra::builtin_names() {
                out!("{n}");
            }
        }
        Cmd::Algebra { cmd: AlgebraCmd::Validate { algebra } } => {
            let alg = load_algebra(&algebra)?;
            let e: Vec<String> = alg.euler().support().map(|(i, c)| format!("{}*{}", c.exact_repr(), alg.label(i))).collect();
            out!("{}: valid, d = {}, dim = {}", alg.name, alg.d, alg.dim());
            out!("euler class: {}", if e.is_empty() { "0".into() } else { e.join(" + ") });
            out!("integral of euler class: {}", alg.integral(alg.euler()).exact_repr());
            out!("content hash: {}", alg.content_hash());
        }
        Cmd::Product { algebra, n, rho, sigma, deform } => {
            let alg = load_algebra(&algebra)?;
            let rule = match deform {
                Some(d) => d.parse::<Deform>()?.param()?.rule(),
                None => ProductRule::standard(),
            };
            let fs = FockSpace::<Q>::new(&alg);
            let (r, s) = (PartitionFunction::parse(&alg, &rho)?, PartitionFunction::parse(&alg, &sigma)?);
            if r.norm() > n || s.norm() > n {
                bail!("monomials must have norm <= n = {n}");
            }
            let z = product_invariant(&alg, &fs.p_rho(&r, n), &fs.p_rho(&s, n), &rule)?;
            print_coords(&alg, &coords_of(&fs, &z)?);
        }
        Cmd::Fock { cmd: FockCmd::Apply { algebra, mode, class, state } } => {
            let alg = load_algebra(&algebra)?;
            if mode == 0 {
                bail!("p_0 is not defined");
            }
            let a = alg.element(label_index(&alg, &class)?);
            let v = CoordVector::single(PartitionFunction::parse(&alg, &state)?, Q::from_integer(1.into()));
            print_coords(&alg, &symbolic::mode(&alg, mode, &a, &v));
        }
        Cmd::Class { kind, algebra, n, class, k } => {
            let alg = load_algebra(&algebra)?;
            let fs = FockSpace::<Q>::new(&alg);
            let g = class_arg(&alg, class.as_deref())?;
            let x = match kind {
                ClassKind::O => (*Classes::<Q>::new(&alg, ProductRule::standard()).o_class(k, &g, n)).clone(),
                ClassKind::Eta => eta_class(&g, n),
                ClassKind::Epsilon => epsilon_class(&g, n),
                ClassKind::P => p_class(&alg, k, &g, n)?,
            };
            print_coords(&alg, &coords_of(&fs, &x)?);
        }
        Cmd::Verify(args) => {
            let cfg = args.config()?;
            let report = suites::run_suite(&cfg)?;
            let failed: Vec<_> = report.failures().collect();
            out!("{} [{}]: {}", report.suite, report.algebra, report.header);
            out!("{} cases, {} failed", report.cases.len(), failed.len());
            for c in failed.iter().take(20) {
                out!("FAIL {}: {}", c.id, c.residual.as_deref().unwrap_or(""));
            }
            for n in &report.notes {
                out!("note: {n}");
            }
            if let Some(out) = &cfg.output {
                fs::write(out, report.to_json() + "\n").with_context(|| format!("writing {out}"))?;
            }
            return Ok(report.passed());
        }
        Cmd::Stable { cmd: StableCmd::Tabulate { algebra, max_norm, extra, out, store } } => {
            let alg = load_algebra(&algebra)?;
            let ring = StableRing::with_window(&alg, ProductRule::standard(), extra);
            let table = ring.tabulate(max_norm)?;
            if let Some(dir) = store {
                let st = TableStore::open(dir)?;
                for e in &table.entries {
                    st.put(&alg, e)?;
                }
            }
            let unstable = table.entries.iter().filter(|e| !e.stable).count();
            let json = TableJson::from_table(&alg, &table);
            match out {
                Some(p) if p.extension().is_some_and(|e| e == "csv") => write_or_print(Some(&p), &json.to_csv())?,
                Some(p) => write_or_print(Some(&p), &json.to_json())?,
                None => write_or_print(None, &json.to_csv())?,
            }
            eprintln!("{} entries, {unstable} unstable", table.entries.len());
            return Ok(unstable == 0);
        }
        Cmd::Chern { algebra, class, z_order, hbar_order } => {
            let alg = load_algebra(&algebra)?;
            let l = alg.element(label_index(&alg, &class)?);
            for (n, level) in chern_generating(&alg, &l, hbar_order, z_order).iter().enumerate() {
                for (k, v) in level.iter().enumerate() {
                    out!("# z^{n} hbar^{k}");
                    print_coords(&alg, v);
                }
            }
        }
        Cmd::Export { input, format, out } => {
            let src = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let v: serde_json::Value = serde_json::from_str(&src).with_context(|| format!("{} is not JSON", input.display()))?;
            let body = if v.get("suite").is_some() {
                let r = report_from_value(v)?;
                match format {
                    Format::Json => r.to_json() + "\n",
                    Format::Csv => report_csv(&r),
                }
            } else if v.get("entries").is_some() {
                let t: TableJson = serde_json::from_value(v).context("malformed table")?;
                match format {
                    Format::Json => t.to_json(),
                    Format::Csv => t.to_csv(),
                }
            } else {
                bail!("{} is neither a report nor a stable table", input.display());
            };
            write_or_print(out.as_deref(), &body)?;
        }
    }
    Ok(true)
}

fn report_from_value(v: serde_json::Value) -> Result<Report> {
    let get = |k: &str| v.get(k).and_then(|x| x.as_str()).unwrap_or_default().to_string();
    let mut r = Report::new(&get("suite"), &get("header"), &get("algebra"));
    for c in v.get("cases").and_then(|c| c.as_array()).context("report has no cases")? {
        r.cases.push(symorb::report::Case {
            id: c.get("id").and_then(|x| x.as_str()).context("case without id")?.to_string(),
            pass: c.get("pass").and_then(|x| x.as_bool()).context("case without pass")?,
            residual: c.get("residual").and_then(|x| x.as_str()).map(str::to_string),
        });
    }
    r.notes = v.get("notes").and_then(|n| n.as_array()).map(|a| a.iter().filter_map(|x| x.as_str().map(str::to_string)).collect()).unwrap_or_default();
    Ok(r)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
