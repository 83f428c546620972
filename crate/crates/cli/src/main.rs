//! `growthbound` command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid flags or
//! input, 3 node budget exhausted, 4 method failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use growthbound::bounds::{self, BoundError, BoundResult};
use growthbound::enumerator::{build_weight_sum, budget_from_env, EnumError, RunOptions, WeightSum};
use growthbound::formats::{bipoly_to_json, bound_report, parse_animal, to_pretty};
use growthbound::oracle::count_fixed;
use growthbound::twig::{decode, encode, sequence_weight, TwigSet};
use growthbound::twigs2d::{canonical_twigs_2d, decode_eden, encode_eden};
use growthbound::twigs3d::canonical_twigs_3d;
use growthbound::verify::{printed_polynomial_bounds, run_suite, Status, Suite, VerifyConfig, WeightCache};

#[derive(Parser)]
#[command(name = "growthbound", version, about = "Twig-based upper bounds on lattice-animal growth constants")]
struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundMethod {
    Eden,
    Closed2d,
    Multinomial,
    General,
    Iterate,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeFormat {
    Twigs,
    Eden,
}

#[derive(clap::Args, Clone)]
struct Common {
    /// Worker threads for the enumeration.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Directory for output files and the run manifest; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute an upper bound on the growth constant.
    Bound {
        #[arg(long, value_enum)]
        method: BoundMethod,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Level (dead cells per twig); only with `--method iterate`.
        #[arg(long)]
        i: Option<usize>,
        /// Printed decimals.
        #[arg(long, default_value_t = 9)]
        precision: usize,
        /// Include wall time in the report (breaks byte-stability).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Build W_i and report |C_i|.
    Weights {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute a published table and diff it against the bundled fixture.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Highest level to recompute (defaults: 12 in 2D, 5 in 3D).
        #[arg(long)]
        max_i: Option<usize>,
        /// Also bound the printed polynomials beyond enumeration range.
        #[arg(long)]
        extended: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Encode an animal file ("x y [z]" per line) as a twig sequence or Eden code.
    Encode {
        #[arg(long)]
        d: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = CodeFormat::Twigs)]
        format: CodeFormat,
    },
    /// Decode a twig sequence (space-separated names) or an Eden bit string.
    Decode {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = CodeFormat::Twigs)]
        format: CodeFormat,
        code: String,
    },
    /// Count fixed animals by brute force, as CSV.
    Count {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| format!("unknown suite {s:?}; one of table1, table3, appendixB, appendixA, oracle"))
}

enum Failure {
    Usage(String),
    Budget(String),
    Method(String),
    Mismatch,
    Io(String),
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::Budget(_) => Failure::Budget(e.to_string()),
            EnumError::BadLevel => Failure::Usage(e.to_string()),
        }
    }
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Self {
        match e {
            BoundError::Dimension(_) | BoundError::Precondition(_) => Failure::Usage(e.to_string()),
            _ => Failure::Method(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Files produced by a command, in emission order.
struct Outputs {
    files: Vec<(String, String)>,
}

impl Outputs {
    fn new() -> Self {
        Outputs { files: Vec::new() }
    }

    fn add(&mut self, name: &str, body: String) {
        self.files.push((name.to_string(), body));
    }

    /// Writes into `dir` (plus a manifest), or prints to stdout.
    fn emit(self, dir: Option<&Path>, manifest: Map<String, Value>) -> Result<(), Failure> {
        let mut digests = Map::new();
        for (name, body) in &self.files {
            digests.insert(name.clone(), json!(hex::encode(Sha256::digest(body.as_bytes()))));
        }
        let mut manifest = manifest;
        manifest.insert("outputs".into(), Value::Object(digests));
        let manifest = to_pretty(&Value::Object(manifest));
        match dir {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                for (name, body) in &self.files {
                    fs::write(dir.join(name), body)?;
                }
                fs::write(dir.join("manifest.json"), manifest)?;
            }
            None => {
                for (_, body) in &self.files {
                    print!("{body}");
                }
                log::info!("manifest: {manifest}");
            }
        }
        Ok(())
    }
}

fn manifest(command: &str, params: Value, workers: usize, budget: Option<u64>, start: Instant) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("format".into(), json!(1));
    m.insert("command".into(), json!(command));
    m.insert("parameters".into(), params);
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("workers".into(), json!(workers));
    m.insert("budget".into(), budget.map_or(Value::Null, |b| json!(b)));
    m.insert("wall_ms".into(), json!(start.elapsed().as_millis() as u64));
    m
}

fn run_options(workers: usize) -> Result<RunOptions, Failure> {
    if workers == 0 {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    Ok(RunOptions { workers, budget: budget_from_env(), ..RunOptions::default() })
}

fn weights(d: usize, i: usize, opts: &RunOptions) -> Result<WeightSum, Failure> {
    match d {
        2 => Ok(build_weight_sum(&canonical_twigs_2d(), i, opts)?),
        3 => Ok(build_weight_sum(&canonical_twigs_3d(), i, opts)?),
        _ => Err(Failure::Usage(format!("twig sets exist for d = 2 and d = 3, not {d}"))),
    }
}

fn weights_json(w: &WeightSum) -> String {
    let mut v = bipoly_to_json(&w.poly);
    let obj = v.as_object_mut().unwrap();
    obj.insert("d".into(), json!(w.d));
    obj.insert("i".into(), json!(w.i));
    obj.insert("count".into(), json!(w.count.to_string()));
    to_pretty(&v)
}

fn cmd_bound(method: BoundMethod, d: usize, i: Option<usize>, precision: usize, timings: bool, common: &Common) -> Result<(), Failure> {
    let start = Instant::now();
    if i.is_some() != matches!(method, BoundMethod::Iterate) {
        return Err(Failure::Usage("--i is required with, and only allowed with, --method iterate".into()));
    }
    let opts = run_options(common.workers)?;
    let mut out = Outputs::new();
    let result: BoundResult = match method {
        BoundMethod::Eden => bounds::eden_bound(d)?,
        BoundMethod::Closed2d => {
            if d != 2 {
                return Err(Failure::Usage("closed2d is the planar closed form; use --d 2".into()));
            }
            bounds::closed_form_2d()
        }
        BoundMethod::Multinomial => bounds::multinomial_bound(d)?,
        BoundMethod::General => bounds::general_bound(d)?,
        BoundMethod::Iterate => {
            let i = i.unwrap();
            let w = weights(d, i, &opts)?;
            let r = bounds::diagonal_radius_bound(&w.poly, d, Some(i), precision as u32 + 3)?;
            out.add("weights.json", weights_json(&w));
            r
        }
    };
    let runtime = timings.then(|| start.elapsed().as_millis());
    let report = to_pretty(&bound_report(&result, precision, runtime));
    out.files.insert(0, ("bound.json".into(), report));
    if common.out.is_none() {
        // stdout gets the report only
        out.files.truncate(1);
    }
    let params = json!({"method": bound_name(method), "d": d, "i": i, "precision": precision});
    out.emit(common.out.as_deref(), manifest("bound", params, opts.workers, Some(opts.budget), start))
}

fn bound_name(m: BoundMethod) -> &'static str {
    match m {
        BoundMethod::Eden => "eden",
        BoundMethod::Closed2d => "closed2d",
        BoundMethod::Multinomial => "multinomial",
        BoundMethod::General => "general",
        BoundMethod::Iterate => "iterate",
    }
}

fn cmd_weights(d: usize, i: usize, common: &Common) -> Result<(), Failure> {
    let start = Instant::now();
    let opts = run_options(common.workers)?;
    let w = weights(d, i, &opts)?;
    eprintln!("|C_{i}| = {} ({} placements tried)", w.count, w.nodes);
    let mut out = Outputs::new();
    out.add("weights.json", weights_json(&w));
    let mut m = manifest("weights", json!({"d": d, "i": i}), opts.workers, Some(opts.budget), start);
    m.insert("count".into(), json!(w.count.to_string()));
    m.insert("nodes".into(), json!(w.nodes));
    out.emit(common.out.as_deref(), m)
}

fn cmd_verify(suite: Suite, max_i: Option<usize>, extended: bool, workers: usize) -> Result<(), Failure> {
    let mut cfg = VerifyConfig { run: run_options(workers)?, ..VerifyConfig::default() };
    if let Some(m) = max_i {
        cfg.max_i_2d = m;
        cfg.max_i_3d = m;
    }
    let mut cache = WeightCache::default();
    let report = run_suite(suite, &cfg, &mut cache).map_err(|e| match e {
        growthbound::verify::VerifyError::Enum(e) => Failure::from(e),
        other => Failure::Method(other.to_string()),
    })?;
    print!("{report}");
    let mut ok = report.all_passed();
    if extended {
        for c in printed_polynomial_bounds().map_err(|e| Failure::Method(e.to_string()))? {
            println!("[extended] {c}");
            ok &= c.status == Status::Pass;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn print_sequence<const D: usize>(set: &TwigSet<D>, text: &str) -> Result<(), Failure> {
    let animal = parse_animal::<D>(text).map_err(|e| Failure::Usage(e.to_string()))?;
    let seq = encode(set, &animal).map_err(|e| Failure::Method(e.to_string()))?;
    let w = sequence_weight(set, &seq);
    println!("{}", set.names(&seq).join(" "));
    println!("weight x^{} y^{}", w.a, w.b);
    Ok(())
}

fn cmd_encode(d: usize, input: &Path, format: CodeFormat) -> Result<(), Failure> {
    let text = read_input(input)?;
    match (d, format) {
        (2, CodeFormat::Twigs) => print_sequence(&canonical_twigs_2d(), &text),
        (3, CodeFormat::Twigs) => print_sequence(&canonical_twigs_3d(), &text),
        (2, CodeFormat::Eden) => {
            let a = parse_animal::<2>(&text).map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{}", encode_eden(&a));
            Ok(())
        }
        (3, CodeFormat::Eden) => Err(Failure::Usage("the Eden code is implemented for d = 2 only".into())),
        _ => Err(Failure::Usage(format!("d must be 2 or 3, not {d}"))),
    }
}

fn decode_sequence<const D: usize>(set: &TwigSet<D>, code: &str) -> Result<String, Failure> {
    let names: Vec<&str> = code.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
    let seq = set.parse_sequence(&names).ok_or_else(|| Failure::Usage(format!("unknown twig name in {code:?}")))?;
    let a = decode(set, &seq).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(growthbound::formats::write_animal(&a))
}

fn cmd_decode(d: usize, format: CodeFormat, code: &str) -> Result<(), Failure> {
    let text = match (d, format) {
        (2, CodeFormat::Twigs) => decode_sequence(&canonical_twigs_2d(), code)?,
        (3, CodeFormat::Twigs) => decode_sequence(&canonical_twigs_3d(), code)?,
        (2, CodeFormat::Eden) => growthbound::formats::write_animal(&decode_eden(code).map_err(|e| Failure::Usage(e.to_string()))?),
        (3, CodeFormat::Eden) => return Err(Failure::Usage("the Eden code is implemented for d = 2 only".into())),
        _ => return Err(Failure::Usage(format!("d must be 2 or 3, not {d}"))),
    };
    print!("{text}");
    Ok(())
}

fn cmd_count(d: usize, n: usize, out: Option<&Path>) -> Result<(), Failure> {
    let start = Instant::now();
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let t = count_fixed(d, n).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut o = Outputs::new();
    o.add(&format!("counts_{d}d.csv"), t.to_csv());
    o.emit(out, manifest("count", json!({"d": d, "n": n}), 1, None, start))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();

    let r = match &cli.cmd {
        Cmd::Bound { method, d, i, precision, timings, common } => cmd_bound(*method, *d, *i, *precision, *timings, common),
        Cmd::Weights { d, i, common } => cmd_weights(*d, *i, common),
        Cmd::Verify { suite, max_i, extended, workers } => cmd_verify(*suite, *max_i, *extended, *workers),
        Cmd::Encode { d, input, format } => cmd_encode(*d, input, *format),
        Cmd::Decode { d, format, code } => cmd_decode(*d, *format, code),
        Cmd::Count { d, n, out } => cmd_count(*d, *n, out.as_deref()),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Method(m)) | Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(4)
        }
    }
}
