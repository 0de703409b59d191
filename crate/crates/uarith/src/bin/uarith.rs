//! Command-line front end: builds cached tables, computes norms, runs the
//! convolution and series operations, and drives the scan and verify
//! suites. All output for a fixed seed and N is byte-identical across
//! runs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use uarith::cache;
use uarith::characters::character_group;
use uarith::functions::{build_classical, Kind};
use uarith::norms::{truncation_error, u_norm_hybrid, u_norm_log, NormKind};
use uarith::operators::{convolution_constant_scan, convolve};
use uarith::series::{
    inv_zeta, l_function, mertens_scan, neg_zeta_log_deriv, psi_scan, zeta, SeriesEvaluation,
};
use uarith::table::GrowthBound;
use uarith::verify::{identities, norm_axioms, operator_bounds, product, SuiteReport, Tolerances};
use uarith::{Error, FunctionTable};

#[derive(Parser)]
#[command(name = "uarith", version, about = "Arithmetic function tables, norms, operators and Dirichlet series")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    config: Config,
}

#[derive(Args)]
struct Config {
    /// Table length (accepts scientific notation, e.g. 1e6)
    #[arg(long = "N", global = true, default_value = "1e6", value_parser = parse_count)]
    n: usize,

    /// Directory for binary table caches
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for random batteries
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Named tolerance overrides, e.g. --tol product-rel=1e-9
    #[arg(long = "tol", global = true, value_parser = parse_tolerance)]
    tolerances: Vec<(String, f64)>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Hybrid,
    Logsup,
}

impl From<NormArg> for NormKind {
    fn from(a: NormArg) -> NormKind {
        match a {
            NormArg::Hybrid => NormKind::HybridU,
            NormArg::Logsup => NormKind::LogSup,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a function table and store it in the cache directory
    Build {
        /// Function name (see `norm --help` for the list)
        kind: String,
    },
    /// Compute a norm of a built-in function
    Norm {
        function: String,
        #[arg(value_enum)]
        kind: NormArg,
    },
    /// Dirichlet convolution of two built-in functions
    Conv { f: String, g: String },
    /// Evaluate a Dirichlet series with a certified tail
    Series {
        /// zeta | invzeta | lambda-logderiv | L
        expr: String,
        /// Complex point as RE+IMi, e.g. 2+3i
        #[arg(long, value_parser = parse_complex)]
        s: Complex64,
        /// Character modulus (L only)
        #[arg(long, default_value_t = 1)]
        q: usize,
        /// Character index (L only)
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Run one of the desk-scale scans
    Scan {
        /// conv-constant | mertens | psi
        which: String,
        /// Scan limit (defaults to --N)
        #[arg(long, value_parser = parse_count)]
        x: Option<usize>,
        /// Mertens exponent theta
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
    },
    /// List the Dirichlet character group mod q
    Characters {
        #[arg(long)]
        q: usize,
    },
    /// Truncation-error curve for a built-in function
    Approx {
        function: String,
        #[arg(value_enum, default_value_t = NormArg::Logsup)]
        kind: NormArg,
    },
    /// Run a verification suite
    Verify {
        /// identities | norm-axioms | operator-bounds | product
        suite: String,
    },
}

fn parse_count(s: &str) -> Result<usize, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if !v.is_finite() || v < 0.0 || v.fract() != 0.0 || v > u64::MAX as f64 {
        return Err(format!("not a nonnegative integer: {s}"));
    }
    Ok(v as usize)
}

fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, val) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got {s}"))?;
    let v: f64 = val.parse().map_err(|_| format!("bad value in {s}"))?;
    Ok((name.to_string(), v))
}

/// Parse "RE+IMi" (also plain "RE", or "RE-IMi").
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let err = || format!("malformed complex number {s:?}: expected RE+IMi, e.g. 2+3i");
    let t = s.trim();
    if let Some(body) = t.strip_suffix('i') {
        // find the sign splitting RE and IM (not leading, not part of an exponent)
        let bytes = body.as_bytes();
        let mut split = None;
        for (i, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
            }
        }
        match split {
            Some(i) => {
                let re: f64 = body[..i].parse().map_err(|_| err())?;
                let im: f64 = match &body[i..] {
                    "+" => 1.0,
                    "-" => -1.0,
                    rest => rest.parse().map_err(|_| err())?,
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() { 1.0 } else { body.parse().map_err(|_| err())? };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = t.parse().map_err(|_| err())?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn parse_kind(name: &str) -> Result<Kind, Error> {
    Kind::from_name(name).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "unknown function {name:?}; known: {}",
            Kind::all_names().join(", ")
        ))
    })
}

/// Growth bounds known a priori for the built-ins that admit one.
fn default_bound(kind: Kind) -> Option<GrowthBound> {
    match kind {
        Kind::One | Kind::Epsilon | Kind::Mobius | Kind::Liouville => {
            Some(GrowthBound::new(1.0, 0.0, 0))
        }
        Kind::VonMangoldt => Some(GrowthBound::new(1.0, 0.0, 1)),
        Kind::LogPow(k) => Some(GrowthBound::new(1.0, 0.0, k)),
        _ => None,
    }
}

fn build_table(cfg: &Config, kind: Kind) -> Result<FunctionTable, Error> {
    cache::load_or_build(cfg.cache_dir.as_deref(), kind, cfg.n)
}

fn print_json<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable report"));
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let cfg = &cli.config;
    if cfg.n == 0 {
        return Err(Error::InvalidParameter("N must be >= 1".into()));
    }
    let mut tol = Tolerances::default();
    for (name, v) in &cfg.tolerances {
        if !tol.set(name, *v) {
            return Err(Error::InvalidParameter(format!(
                "unknown tolerance {name:?}; known: triangle-slack, homogeneity-rel, product-rel"
            )));
        }
    }

    match &cli.command {
        Command::Build { kind } => {
            let kind = parse_kind(kind)?;
            let dir = cfg
                .cache_dir
                .clone()
                .unwrap_or_else(|| PathBuf::from("uarf-cache"));
            let path = dir.join(cache::file_name(kind, cfg.n));
            let table = build_classical(kind, cfg.n)?;
            let verified = if path.exists() {
                let (k, existing) = cache::read_table(&path)?;
                if k != kind || existing != table {
                    return Err(Error::Format(format!(
                        "cache file {} does not match a fresh rebuild",
                        path.display()
                    )));
                }
                true
            } else {
                std::fs::create_dir_all(&dir)?;
                cache::write_table(&path, kind, &table)?;
                false
            };
            match cfg.format {
                Format::Json => print_json(&serde_json::json!({
                    "kind": kind.label(),
                    "N": cfg.n,
                    "path": path.display().to_string(),
                    "verified_existing": verified,
                })),
                _ => println!(
                    "{} N={} -> {} ({})",
                    kind.label(),
                    cfg.n,
                    path.display(),
                    if verified { "verified existing cache" } else { "written" }
                ),
            }
            Ok(0)
        }

        Command::Norm { function, kind } => {
            let fk = parse_kind(function)?;
            let table = build_table(cfg, fk)?;
            let bound = default_bound(fk);
            let report = match NormKind::from(*kind) {
                NormKind::HybridU => u_norm_hybrid(&table, bound, table.len(), None)?,
                NormKind::LogSup => u_norm_log(&table, bound)?,
            };
            match cfg.format {
                Format::Json | Format::Csv => print_json(&report),
                Format::Text => {
                    println!(
                        "{} norm of {}: {} (argmax {:?}, scan limit {}, certified upper {:?})",
                        match report.kind {
                            NormKind::HybridU => "hybrid",
                            NormKind::LogSup => "log-sup",
                        },
                        table.label(),
                        report.value,
                        report.argmax,
                        report.scan_limit,
                        report.certified_upper
                    );
                    if let (Some(h), Some(l)) = (report.hilbert_part, report.log_average_part) {
                        println!("  hilbert part {h}, log-average part {l}");
                    }
                }
            }
            Ok(0)
        }

        Command::Conv { f, g } => {
            let fk = parse_kind(f)?;
            let gk = parse_kind(g)?;
            let ft = build_table(cfg, fk)?;
            let gt = build_table(cfg, gk)?;
            let out = convolve(&ft, &gt)?;
            let head: Vec<[f64; 2]> = (1..=out.len().min(10))
                .map(|m| [out.get(m).re, out.get(m).im])
                .collect();
            match cfg.format {
                Format::Json => print_json(&serde_json::json!({
                    "label": out.label(),
                    "N": out.len(),
                    "head": head,
                })),
                Format::Csv => {
                    println!("n,re,im");
                    for m in 1..=out.len() {
                        let z = out.get(m);
                        println!("{m},{},{}", z.re, z.im);
                    }
                }
                Format::Text => {
                    println!("{} over n <= {}", out.label(), out.len());
                    println!("  first values: {head:?}");
                }
            }
            Ok(0)
        }

        Command::Series { expr, s, q, index } => {
            let eval: SeriesEvaluation = match expr.as_str() {
                "zeta" => zeta(*s, cfg.n)?,
                "invzeta" => inv_zeta(*s, cfg.n)?,
                "lambda-logderiv" => neg_zeta_log_deriv(*s, cfg.n)?,
                "L" => {
                    let group = character_group(*q)?;
                    let chi = group.get(*index).ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "character index {index} out of range; phi({q}) = {}",
                            group.len()
                        ))
                    })?;
                    l_function(chi, *s, cfg.n)?
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown series {other:?}; known: zeta, invzeta, lambda-logderiv, L"
                    )))
                }
            };
            match cfg.format {
                Format::Json | Format::Csv => print_json(&eval),
                Format::Text => println!(
                    "{expr} at s = {}+{}i over N = {}: {} + {}i, tail radius {}, certified {}",
                    eval.s.re, eval.s.im, eval.n, eval.partial.re, eval.partial.im,
                    eval.tail_radius, eval.certified
                ),
            }
            Ok(0)
        }

        Command::Scan { which, x, theta } => {
            let limit = x.unwrap_or(cfg.n);
            match which.as_str() {
                "conv-constant" => {
                    let rep = convolution_constant_scan(limit)?;
                    match cfg.format {
                        Format::Csv => print!("{}", rep.trajectory_csv()),
                        _ => print_json(&rep),
                    }
                }
                "mertens" => {
                    let rep = mertens_scan(limit, *theta)?;
                    match cfg.format {
                        Format::Csv => print!("{}", rep.checkpoints_csv()),
                        _ => print_json(&rep),
                    }
                }
                "psi" => {
                    let rep = psi_scan(limit)?;
                    match cfg.format {
                        Format::Csv => print!("{}", rep.checkpoints_csv()),
                        _ => print_json(&rep),
                    }
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown scan {other:?}; known: conv-constant, mertens, psi"
                    )))
                }
            }
            Ok(0)
        }

        Command::Characters { q } => {
            let group = character_group(*q)?;
            match cfg.format {
                Format::Csv => {
                    println!("index,r,re,im,order,principal");
                    for chi in &group {
                        for r in 0..*q {
                            let z = chi.value(r);
                            println!(
                                "{},{},{},{},{},{}",
                                chi.index(),
                                r,
                                z.re,
                                z.im,
                                chi.order(),
                                chi.is_principal()
                            );
                        }
                    }
                }
                _ => {
                    let rows: Vec<serde_json::Value> = group
                        .iter()
                        .map(|chi| {
                            serde_json::json!({
                                "modulus": chi.modulus(),
                                "index": chi.index(),
                                "order": chi.order(),
                                "principal": chi.is_principal(),
                                "values": (0..*q)
                                    .map(|r| {
                                        let z = chi.value(r);
                                        [z.re, z.im]
                                    })
                                    .collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    print_json(&rows);
                }
            }
            Ok(0)
        }

        Command::Approx { function, kind } => {
            let fk = parse_kind(function)?;
            let table = build_table(cfg, fk)?;
            let norm_kind = NormKind::from(*kind);
            // 1-2-5 grid of truncation points below N
            let mut points = Vec::new();
            let mut base = 1usize;
            while base < table.len() {
                for mult in [1usize, 2, 5] {
                    let m = base.saturating_mul(mult);
                    if m < table.len() {
                        points.push(m);
                    }
                }
                base = base.saturating_mul(10);
            }
            let curve: Vec<(usize, f64)> = points
                .into_iter()
                .map(|m| truncation_error(&table, m, norm_kind).map(|e| (m, e)))
                .collect::<Result<_, _>>()?;
            match cfg.format {
                Format::Csv => {
                    println!("M,error");
                    for (m, e) in &curve {
                        println!("{m},{e}");
                    }
                }
                _ => print_json(&serde_json::json!({
                    "function": table.label(),
                    "norm": match norm_kind {
                        NormKind::HybridU => "hybrid_u",
                        NormKind::LogSup => "log_sup",
                    },
                    "curve": curve,
                })),
            }
            Ok(0)
        }

        Command::Verify { suite } => {
            let rep: SuiteReport = match suite.as_str() {
                "identities" => identities(cfg.n)?,
                "norm-axioms" => norm_axioms(cfg.seed, 500, &tol)?,
                "operator-bounds" => operator_bounds(cfg.seed)?,
                "product" => product(cfg.seed, 100, &tol)?,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown suite {other:?}; known: identities, norm-axioms, operator-bounds, product"
                    )))
                }
            };
            match cfg.format {
                Format::Json | Format::Csv => print_json(&rep),
                Format::Text => {
                    println!(
                        "suite {}: {} passed, {} failed, {} falsification findings",
                        rep.suite, rep.passed, rep.failed, rep.falsified
                    );
                    for d in &rep.details {
                        println!("  [{}] {}: {}", if d.ok { "ok" } else { "FAIL" }, d.name, d.info);
                    }
                }
            }
            Ok(if rep.all_passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
