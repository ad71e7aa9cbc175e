//! `korbits`: analyze nilpotent K_C-orbits from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use korbits::analysis::{analyze_cached, list_fixtures, verify_speh, AnalysisConfig, OrbitReport, ReportCache};
use korbits::error::ErrorKind;
use korbits::ktypes::to_rational;
use korbits::roots::WeightVector;
use korbits::Error;

#[derive(Parser)]
#[command(name = "korbits", version, about = "Nilpotent orbits, invariants and K-type lattices")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in fixtures.
    Fixtures,
    /// Run the full pipeline on one orbit.
    Analyze {
        #[command(flatten)]
        source: Source,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the sl(4,R) Speh orbit end to end.
    VerifySpeh {
        #[command(flatten)]
        params: Params,
    },
    /// Multiplicities and lattice enumeration.
    Ktypes {
        #[command(flatten)]
        source: Source,
        /// Weight to query, comma separated; repeatable.
        #[arg(long = "weight", allow_hyphen_values = true)]
        weights: Vec<String>,
        /// Enumerate the shifted lattice from this dominant weight instead.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
    },
    /// The asymptotic cone and membership queries.
    Cone {
        #[command(flatten)]
        source: Source,
        /// Point to test, comma separated; repeatable.
        #[arg(long = "point", allow_hyphen_values = true)]
        points: Vec<String>,
    },
}

#[derive(Args, Clone)]
struct Params {
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    bound: Option<i64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args, Clone)]
struct Source {
    /// JSON or TOML configuration file.
    #[arg(long, conflicts_with_all = ["fixture", "report"])]
    config: Option<PathBuf>,
    /// Built-in fixture name.
    #[arg(long, conflicts_with = "report")]
    fixture: Option<String>,
    /// Previously saved JSON report.
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    params: Params,
    /// Reuse and store reports in this directory.
    #[arg(long, default_value = ".orbit-cache")]
    cache_dir: PathBuf,
    /// Always recompute and do not write the cache.
    #[arg(long)]
    no_cache: bool,
}

enum Failure {
    Verification(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn parse_weight(s: &str) -> Result<WeightVector, Error> {
    s.split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad weight {s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()
        .map(WeightVector)
}

fn config_from(source: &Source) -> Result<AnalysisConfig, Error> {
    let mut config = match (&source.config, &source.fixture) {
        (Some(path), _) => AnalysisConfig::load(path)?,
        (None, Some(name)) => AnalysisConfig::for_fixture(name)?,
        (None, None) => return Err(Error::Descriptor("one of --config, --fixture or --report is required".into())),
    };
    let p = &source.params;
    if let Some(v) = p.max_degree {
        config.max_degree = v;
    }
    if let Some(v) = p.bound {
        config.bound = v;
    }
    if let Some(v) = p.seed {
        config.seed = v;
    }
    if let Some(v) = p.samples {
        config.samples = v;
    }
    config.validate()?;
    Ok(config)
}

fn report_from(source: &Source) -> Result<(OrbitReport, Option<PathBuf>), Error> {
    if let Some(path) = &source.report {
        let text = std::fs::read_to_string(path)?;
        let report = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        return Ok((report, None));
    }
    let config = config_from(source)?;
    let cache = (!source.no_cache).then(|| ReportCache::new(&source.cache_dir));
    Ok((analyze_cached(&config, cache.as_ref())?, config.output.clone()))
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn write_report(path: &PathBuf, report: &OrbitReport) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(report).map_err(|e| Error::Parse(e.to_string()))?;
    std::fs::write(path, text)?;
    Ok(())
}

fn print_report_table(r: &OrbitReport) {
    let f = &r.flags;
    println!("algebra      {}", r.algebra);
    println!("orbit        {}", r.orbit);
    println!("status       {}", r.status);
    println!("height       {}", f.height);
    println!("small        {}", f.small);
    println!("spherical    {} ({})", f.spherical, serde_json::to_value(f.certainty).unwrap().as_str().unwrap_or(""));
    println!("dim orbit    {} (borel {})", f.dim_orbit, f.dim_borel);
    println!("rank         {}", f.rank_r);
    println!("gy condition {}", r.gy_condition);
    println!("commutative  {}", r.commutative);
    if let Some(inv) = &r.invariants {
        println!("generators");
        for (g, w) in inv.generators.iter().zip(&inv.weights.gamma) {
            println!("  degree {}  weight {}", g.degree, w);
        }
    }
    if let Some(sd) = r.self_dual {
        println!("self-dual    {sd}");
    }
    if let Some(cone) = &r.cone {
        println!("cone         {:?}", cone.inequalities);
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Fixtures => {
            let fixtures = list_fixtures();
            if json {
                print_json(&fixtures);
            } else {
                for f in fixtures {
                    println!(
                        "{:<16} {:<12} {:<22} {}",
                        f.name,
                        f.algebra.to_string(),
                        f.orbit.to_string(),
                        f.description
                    );
                }
            }
        }
        Command::Analyze { source, out } => {
            let (report, cfg_out) = report_from(&source)?;
            if let Some(path) = out.or(cfg_out) {
                write_report(&path, &report)?;
            }
            if json {
                print_json(&report);
            } else {
                print_report_table(&report);
            }
        }
        Command::VerifySpeh { params } => {
            let v = verify_speh(
                params.max_degree.unwrap_or(6),
                params.bound.unwrap_or(12),
                params.seed.unwrap_or(0),
                params.samples.unwrap_or(8),
            );
            if json {
                print_json(&v);
            } else {
                for c in &v.checks {
                    println!("{} {:<18} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                }
            }
            if !v.passed {
                let failed: Vec<_> = v.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
                return Err(Failure::Verification(format!("failed: {}", failed.join(", "))));
            }
        }
        Command::Ktypes { source, weights, shift } => {
            let (report, _) = report_from(&source)?;
            let lattice =
                report.lattice()?.ok_or_else(|| Error::Precondition(format!("no lattice: {}", report.status)))?;
            let bound = source.params.bound.unwrap_or(report.bound);
            let rd = report.root_datum()?;
            let conv = rd.convention();
            if let Some(s) = shift {
                let mu = conv.normalize(&parse_weight(&s)?);
                let pts = lattice.shifted_lattice(&rd, &mu, bound)?;
                if json {
                    print_json(&pts);
                } else {
                    pts.iter().for_each(|p| println!("{p}"));
                }
            } else if weights.is_empty() {
                let pts = lattice.enumerate(bound);
                if json {
                    let v: Vec<_> =
                        pts.iter().map(|(w, m)| serde_json::json!({"weight": w, "multiplicity": m})).collect();
                    print_json(&v);
                } else {
                    pts.iter().for_each(|(w, m)| println!("{w}  {m}"));
                }
            } else {
                let mut out = Vec::new();
                for w in &weights {
                    let w = conv.normalize(&parse_weight(w)?);
                    let m = lattice.multiplicity(&w)?;
                    out.push(serde_json::json!({"weight": w, "multiplicity": m}));
                    if !json {
                        println!("{w}  {m}");
                    }
                }
                if json {
                    print_json(&out);
                }
            }
        }
        Command::Cone { source, points } => {
            let (report, _) = report_from(&source)?;
            let cone = report.cone.clone().ok_or_else(|| Error::Precondition(format!("no cone: {}", report.status)))?;
            let conv = report.root_datum()?.convention();
            if points.is_empty() {
                if json {
                    print_json(&cone);
                } else {
                    println!("generators         {:?}", cone.rays.iter().map(|r| r.0.clone()).collect::<Vec<_>>());
                    println!("cone_inequalities  {:?}", cone.inequalities);
                }
            } else {
                let mut out = Vec::new();
                for p in &points {
                    let w = conv.normalize(&parse_weight(p)?);
                    let inside = cone.contains(&to_rational(&w.0), report.weight_len())?;
                    out.push(serde_json::json!({"point": w, "inside": inside}));
                    if !json {
                        println!("{w}  {}", if inside { "inside" } else { "outside" });
                    }
                }
                if json {
                    print_json(&out);
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            match e.kind() {
                ErrorKind::Input => ExitCode::from(2),
                ErrorKind::Consistency => ExitCode::from(3),
            }
        }
    }
}
