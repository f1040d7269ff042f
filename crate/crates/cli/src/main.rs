use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hyperflex::report::{self, render};
use hyperflex::specialize::{default_library, measure_library};
use hyperflex::svg::{skeleton_svg, subdivision_svg, tropical_svg};
use hyperflex::sweep::{DEFAULT_EPS0, DEFAULT_MAX_HALVINGS};
use hyperflex::{
    analyze, build_skeleton, compatibility_check, elliptic_inflection, lower_bound_instances,
    regeneration_check, run_sweep, specialize_inflection, tropicalize, EllipticSeries, ErrorKind, PatchworkFamily,
    SeriesBasis, Toolkit,
};
use hyperflex_exact::{format_scalar, parse_scalar, ratio, Scalar};
use serde_json::{json, Value};

/// Exact inflection points of real hyperelliptic curves and their patchworked
/// degenerations.
///
/// Exit codes: 0 success, 2 usage or malformed input, 3 input that fails a
/// mathematical precondition, 4 computation failure, 5 file system error.
#[derive(Parser, Debug)]
#[command(name = "hyperflex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug, Clone)]
struct Options {
    /// Multiple of the divisor D = 2·∞ defining the series.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    /// Starting ε of the sweep, as a rational.
    #[arg(long, global = true)]
    eps0: Option<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_HALVINGS)]
    max_halvings: usize,
    /// Write the JSON report into the output directory.
    #[arg(long, global = true)]
    json: bool,
    /// Write the ε trajectory as CSV into the output directory.
    #[arg(long, global = true)]
    csv: bool,
    /// Write SVG figures into the output directory.
    #[arg(long, global = true)]
    svg: bool,
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    #[arg(long, global = true, default_value = "block")]
    wronskian: String,
    #[arg(long, global = true, default_value = "descartes")]
    roots: String,
    /// Progress and timing on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inflection divisor of the complete series |kD| on a curve.
    Inflect { curve: PathBuf },
    /// Validate a family and draw its subdivision, tropical curve and skeleton.
    Patchwork { family: PathBuf },
    /// Tropical curve and skeleton of a family.
    Tropicalize { family: PathBuf },
    /// Specialization of the inflection divisor to the skeleton, with the
    /// elliptic pieces and their compatibility.
    Specialize { family: PathBuf },
    /// Compare the smooth fiber's real inflection count with the pieces.
    Regenerate { family: PathBuf },
    /// Real inflection data along ε₀/2^h.
    Sweep { family: PathBuf },
    /// Lower bound families built from the shipped piece library.
    Bounds {
        #[arg(long)]
        genus: usize,
        /// Number of real components of the target curve.
        #[arg(long)]
        n: usize,
        /// s_ℝ targets for the conjugate and real piece types, as "s1,s2".
        /// Defaults to the largest slot-independent values in the library.
        #[arg(long)]
        targets: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: malformed JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] hyperflex::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Json { .. } => 2,
            CliError::Io { .. } => 5,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Validation => 3,
                ErrorKind::Computation => 4,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Run {
    opts: Options,
    tools: Toolkit,
    eps0: Scalar,
    start: Instant,
}

impl Run {
    fn log(&self, msg: &str) {
        if self.opts.verbose {
            eprintln!("[{:>8.2}s] {msg}", self.start.elapsed().as_secs_f64());
        }
    }

    fn emits(&self) -> bool {
        self.opts.json || self.opts.csv || self.opts.svg
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

fn prepare_out(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
    let probe = tempfile::NamedTempFile::new_in(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
    drop(probe);
    Ok(())
}

fn write_atomic(dir: &Path, name: &str, body: &str) -> Result<()> {
    let path = dir.join(name);
    let io = |source| CliError::Io { path: path.clone(), source };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(body.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(&path).map_err(|e| io(e.error))?;
    Ok(())
}

fn load_family(path: &Path) -> Result<PatchworkFamily> {
    Ok(report::parse_family(&read_json(path)?)?)
}

fn parse_targets(s: &str) -> Result<(i64, i64)> {
    let bad = || CliError::Usage(format!("--targets expects two integers \"s1,s2\", got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Report JSON plus named side files.
struct Output {
    name: &'static str,
    report: Value,
    files: Vec<(String, String)>,
}

fn execute(cmd: &Command, run: &Run) -> Result<Output> {
    let k = run.opts.k as usize;
    let o = &run.opts;
    let mut files = Vec::new();
    let (name, report) = match cmd {
        Command::Inflect { curve } => {
            let curve = report::parse_curve(&read_json(curve)?)?;
            run.log(&format!("curve of genus {} read", curve.genus()));
            let r = analyze(&curve, &SeriesBasis::canonical(curve.genus(), k), &run.tools, true)?;
            ("inflect", report::inflection_report(&curve, &r))
        }
        Command::Patchwork { family } => {
            let fam = load_family(family)?;
            let sub = fam.subdivision()?;
            let trop = tropicalize(&fam)?;
            let skel = build_skeleton(&fam)?;
            if o.svg {
                files.push(("subdivision.svg".into(), subdivision_svg(&fam, &sub)));
                files.push(("tropical.svg".into(), tropical_svg(&trop)));
                files.push(("skeleton.svg".into(), skeleton_svg(&skel)));
            }
            let mut v = report::patchwork_json(&fam, &sub);
            v["skeleton"] = report::skeleton_json(&skel);
            ("patchwork", v)
        }
        Command::Tropicalize { family } => {
            let fam = load_family(family)?;
            let trop = tropicalize(&fam)?;
            let skel = build_skeleton(&fam)?;
            if o.svg {
                files.push(("tropical.svg".into(), tropical_svg(&trop)));
                files.push(("skeleton.svg".into(), skeleton_svg(&skel)));
            }
            ("tropicalize", json!({ "tropical_curve": report::tropical_json(&trop), "skeleton": report::skeleton_json(&skel) }))
        }
        Command::Specialize { family } => {
            let fam = load_family(family)?;
            let spec = specialize_inflection(&fam, k)?;
            run.log("specialization done");
            let series = EllipticSeries::of_family(&fam, k)?;
            let pieces = series.iter().map(|es| elliptic_inflection(es, &run.tools)).collect::<hyperflex::Result<Vec<_>>>()?;
            let compat = compatibility_check(&series)?;
            (
                "specialize",
                json!({
                    "family": report::family_json(&fam),
                    "k": k,
                    "specialization": report::specialization_json(&spec),
                    "pieces": pieces.iter().map(report::elliptic_json).collect::<Vec<_>>(),
                    "compatibility": report::compatibility_json(&compat),
                }),
            )
        }
        Command::Regenerate { family } => {
            let fam = load_family(family)?;
            let r = regeneration_check(&fam, k, &run.eps0, o.max_halvings, &run.tools)?;
            run.log(&format!("sweep ran {} samples", r.sweep.samples.len()));
            if o.csv {
                files.push(("sweep.csv".into(), r.sweep.to_csv()));
            }
            ("regenerate", report::regeneration_json(&fam, &r))
        }
        Command::Sweep { family } => {
            let fam = load_family(family)?;
            let s = run_sweep(&fam, k, &run.eps0, o.max_halvings, &run.tools)?;
            run.log(&format!("sweep ran {} samples", s.samples.len()));
            if o.csv {
                files.push(("sweep.csv".into(), s.to_csv()));
            }
            ("sweep", json!({ "family": report::family_json(&fam), "sweep": report::sweep_json(&s) }))
        }
        Command::Bounds { genus, n, targets } => {
            if *genus == 0 {
                return Err(CliError::Usage("--genus must be at least 1".into()));
            }
            let targets = targets.as_deref().map(parse_targets).transpose()?;
            let library = measure_library(&default_library(), *genus, k, &run.tools)?;
            run.log(&format!("measured {} library pieces", library.len()));
            let best = |real: bool| {
                library.iter().filter(|e| e.real_type == real).filter_map(|e| e.uniform()).max()
            };
            let targets = match targets {
                Some(t) => t,
                None => (
                    best(false).ok_or(hyperflex::Error::NoPieceFound(-1))?,
                    best(true).ok_or(hyperflex::Error::NoPieceFound(-1))?,
                ),
            };
            let b = lower_bound_instances(*genus, k, *n, targets, &library, &run.eps0, o.max_halvings, &run.tools)?;
            if o.csv {
                files.push(("sweep.csv".into(), b.sweep.to_csv()));
            }
            let mut v = report::lower_bound_json(*genus, k, &b);
            v["library"] = report::library_json(&library);
            ("bounds", v)
        }
    };
    Ok(Output { name, report, files })
}

fn main_inner() -> Result<()> {
    let cli = Cli::parse();
    let start = Instant::now();
    if let Ok(n) = std::env::var("HYPERFLEX_THREADS") {
        let n: usize = n
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("HYPERFLEX_THREADS must be a positive integer, got {n:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let tools = Toolkit::from_names(&cli.opts.wronskian, &cli.opts.roots)?;
    let eps0 = match &cli.opts.eps0 {
        Some(s) => parse_scalar(s).map_err(hyperflex::Error::from)?,
        None => ratio(DEFAULT_EPS0.0, DEFAULT_EPS0.1),
    };
    let run = Run { opts: cli.opts.clone(), tools, eps0, start };
    if run.emits() {
        prepare_out(&run.opts.out)?;
    }
    run.log(&format!("ε₀ = {}, {:?}", format_scalar(&run.eps0), run.tools));
    let out = execute(&cli.command, &run)?;
    let text = render(&out.report);
    if run.opts.json {
        write_atomic(&run.opts.out, &format!("{}.json", out.name), &text)?;
    }
    for (name, body) in &out.files {
        write_atomic(&run.opts.out, name, body)?;
        run.log(&format!("wrote {}", run.opts.out.join(name).display()));
    }
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
    Ok(())
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
