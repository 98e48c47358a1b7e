use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gaped::harness::{self, InstanceKind, RunReport, TrialSpec};
use gaped::solver::{self, GapDecision, Preset, SolverConfig};
use gaped::{child_seed, exact, Error, Sym};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gaped", version, about = "Gap edit distance at sublinear query cost")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// RNG seed; falls back to $GAPED_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Scale all trial budgets.
    #[arg(long)]
    budget_multiplier: Option<f64>,
    /// Use the uncalibrated source constants.
    #[arg(long)]
    paper_constants: bool,
    /// Print exact distances alongside verdicts (reads everything).
    #[arg(long)]
    debug_oracle: bool,
}

#[derive(Args)]
struct InputPair {
    /// First string, inline or @path.
    x: String,
    /// Second string, inline or @path ("-" reads stdin, two lines).
    y: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide GapED(k, K) on a pair of strings.
    GapEd {
        #[command(flatten)]
        input: InputPair,
        #[arg(short)]
        k: usize,
        #[arg(short = 'K', long = "big-k")]
        big_k: Option<u64>,
        /// Named parameter regime instead of an explicit K.
        #[arg(long, value_parser = parse_preset)]
        preset: Option<Preset>,
        /// Branching parameter; default derived from n and K.
        #[arg(long)]
        delta: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact edit distance (reference, reads everything).
    ExactEd {
        #[command(flatten)]
        input: InputPair,
    },
    /// Exact count of p-periodicity breakpoints.
    BpEstimate {
        x: String,
        #[arg(short)]
        p: usize,
    },
    /// Shortest period of a string.
    Period { x: String },
    /// Show the sampled break cuts for a pair.
    Split {
        #[command(flatten)]
        input: InputPair,
        #[arg(short)]
        k: usize,
        #[arg(short = 'K', long = "big-k")]
        big_k: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Seeded trial batches with query accounting.
    Bench {
        #[arg(long, default_value_t = 4096)]
        n: usize,
        #[arg(short, default_value_t = 8)]
        k: usize,
        #[arg(short = 'K', long = "big-k")]
        big_k: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// planted:<edits> | independent | periodic:<p>:<edits>
        #[arg(long, default_value = "planted:4")]
        kind: String,
        #[arg(long, default_value_t = 4)]
        sigma: u32,
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Quick end-to-end sanity run on generated instances.
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    match s {
        "subpoly" => Ok(Preset::Subpoly),
        "polylog" => Ok(Preset::Polylog { eps: 0.5 }),
        _ => {
            if let Some(rest) = s.strip_prefix("polylog:") {
                let eps: f64 = rest.parse().map_err(|e| format!("bad eps: {e}"))?;
                return Ok(Preset::Polylog { eps });
            }
            if let Some(rest) = s.strip_prefix("poly:") {
                let big_k: u64 = rest.parse().map_err(|e| format!("bad K: {e}"))?;
                return Ok(Preset::Poly { big_k });
            }
            Err("expected subpoly | polylog[:eps] | poly:K".into())
        }
    }
}

fn load_string(arg: &str) -> Result<Vec<Sym>> {
    if let Some(path) = arg.strip_prefix('@') {
        let bytes = std::fs::read(PathBuf::from(path)).with_context(|| format!("read {path}"))?;
        return Ok(bytes.iter().map(|&b| b as Sym).collect());
    }
    Ok(arg.bytes().map(|b| b as Sym).collect())
}

fn load_pair(input: &InputPair) -> Result<(Vec<Sym>, Vec<Sym>)> {
    match input.y.as_deref() {
        Some("-") | None if input.x == "-" || input.y.is_none() => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            let mut lines = buf.lines();
            let x = lines.next().unwrap_or("");
            let y = lines.next().unwrap_or("");
            Ok((
                x.bytes().map(|b| b as Sym).collect(),
                y.bytes().map(|b| b as Sym).collect(),
            ))
        }
        Some(y) => Ok((load_string(&input.x)?, load_string(y)?)),
        None => bail!("need two strings (or '-' for stdin)"),
    }
}

fn build_cfg(common: &Common) -> SolverConfig {
    let mut cfg = if common.paper_constants {
        SolverConfig::paper()
    } else {
        SolverConfig::desk()
    };
    if let Some(m) = common.budget_multiplier {
        cfg.budget_multiplier = m;
    }
    cfg
}

fn seed_of(common: &Common) -> u64 {
    common.seed.or_else(|| {
        std::env::var("GAPED_SEED").ok().and_then(|s| s.parse().ok())
    }).unwrap_or(0)
}

fn parse_kind(s: &str, n: usize, sigma: u32) -> Result<InstanceKind> {
    let parts: Vec<&str> = s.split(':').collect();
    Ok(match parts.as_slice() {
        ["planted", e] => InstanceKind::Planted { n, edits: e.parse()?, sigma },
        ["subbed", e] => InstanceKind::Subbed { n, edits: e.parse()?, sigma },
        ["independent"] => InstanceKind::Independent { n, sigma },
        ["periodic", p, e] => {
            InstanceKind::Periodic { n, p: p.parse()?, edits: e.parse()?, sigma }
        }
        ["blocks", p, b, e] => InstanceKind::BlockPeriodic {
            n,
            p: p.parse()?,
            blocks: b.parse()?,
            edits: e.parse()?,
            sigma,
        },
        _ => bail!("unknown instance kind {s:?}"),
    })
}

fn emit_reports(reports: &[RunReport], format: Format) {
    match format {
        Format::Json => {
            for r in reports {
                println!("{}", serde_json::to_string(r).unwrap());
            }
        }
        Format::Csv => {
            println!("{}", RunReport::csv_header());
            for r in reports {
                println!("{}", r.to_csv());
            }
        }
        Format::Text => {
            for r in reports {
                let v = match (r.refused, r.verdict) {
                    (true, _) => "refused",
                    (_, Some(GapDecision::Close)) => "close",
                    (_, Some(GapDecision::Far)) => "far",
                    _ => "error",
                };
                let grade = match r.correct {
                    Some(true) => " ok",
                    Some(false) => " WRONG",
                    None => "",
                };
                println!(
                    "seed={} n={} k={} K={} -> {v} queries={} ({} us){grade}",
                    r.seed, r.n, r.k, r.big_k, r.queries, r.micros
                );
            }
        }
    }
}

// exit codes: 0 verdict delivered, 1 error, 2 refusal
fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::GapEd { input, k, big_k, preset, delta, common } => {
            let (x, y) = load_pair(&input)?;
            let cfg = build_cfg(&common);
            let seed = seed_of(&common);
            let mut rng = ChaCha8Rng::seed_from_u64(child_seed(seed, "cli", 0));
            let (fx, fy, ctx) = harness::charged_pair(&x, &y);
            let res = match (preset, big_k) {
                (Some(p), _) => {
                    solver::gap_ed_preset(&fx, &fy, k, p, &cfg, &mut rng).map(|(v, _)| v)
                }
                (None, Some(bk)) => solver::gap_ed(&fx, &fy, k, bk, delta, &cfg, &mut rng),
                (None, None) => bail!("need -K or --preset"),
            };
            let oracle = common
                .debug_oracle
                .then(|| exact::ed_lv(&x, &y));
            match res {
                Ok(v) => {
                    let name = if v == GapDecision::Close { "close" } else { "far" };
                    match common.format {
                        Format::Json => println!(
                            "{}",
                            serde_json::json!({
                                "verdict": name,
                                "queries": ctx.queries(),
                                "ed": oracle,
                            })
                        ),
                        _ => {
                            print!("{name} queries={}", ctx.queries());
                            if let Some(ed) = oracle {
                                print!(" ed={ed}");
                            }
                            println!();
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::Refusal(msg)) => {
                    eprintln!("refused: {msg}");
                    Ok(ExitCode::from(2))
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::ExactEd { input } => {
            let (x, y) = load_pair(&input)?;
            println!("{}", exact::ed_lv(&x, &y));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::BpEstimate { x, p } => {
            let x = load_string(&x)?;
            println!("{}", exact::bp_exact(&x, p));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Period { x } => {
            let x = load_string(&x)?;
            println!("{}", exact::period(&x));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Split { input, k, big_k, common } => {
            let (x, y) = load_pair(&input)?;
            let seed = seed_of(&common);
            let mut rng = ChaCha8Rng::seed_from_u64(child_seed(seed, "split", 0));
            let (fx, fy, ctx) = harness::charged_pair(&x, &y);
            let cfg = build_cfg(&common);
            let pieces = solver::split(&fx, &fy, k, big_k, cfg.split_delta, &mut rng)
                .map_err(|_| anyhow::anyhow!("budget exhausted"))?;
            for (i, (px, py)) in pieces.iter().enumerate() {
                println!(
                    "piece {i}: x[{}..{}) y[{}..{})",
                    px.offset(),
                    px.offset() + px.len(),
                    py.offset(),
                    py.offset() + py.len()
                );
            }
            println!("queries={}", ctx.queries());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bench { n, k, big_k, trials, kind, sigma, certify, common } => {
            let cfg = build_cfg(&common);
            let spec = TrialSpec {
                kind: parse_kind(&kind, n, sigma)?,
                k,
                big_k,
                delta_cap: None,
                trials,
                seed: seed_of(&common),
                certify,
            };
            let reports = harness::run_trials(&spec, &cfg);
            emit_reports(&reports, common.format);
            let med = harness::median_queries(&reports);
            eprintln!("median queries: {med} (n = {n})");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Selftest { common } => {
            let cfg = build_cfg(&common);
            let seed = seed_of(&common);
            let mut failures = 0;
            for (name, kind, k, big_k, want) in [
                (
                    "close-planted",
                    InstanceKind::Planted { n: 4096, edits: 4, sigma: 4 },
                    8usize,
                    256u64,
                    GapDecision::Close,
                ),
                (
                    "far-independent",
                    InstanceKind::Independent { n: 4096, sigma: 4 },
                    8,
                    256,
                    GapDecision::Far,
                ),
                (
                    "close-periodic",
                    InstanceKind::PeriodicSubs { n: 4096, p: 5, edits: 3, sigma: 4 },
                    8,
                    256,
                    GapDecision::Close,
                ),
            ] {
                let spec = TrialSpec {
                    kind,
                    k,
                    big_k,
                    delta_cap: None,
                    trials: 5,
                    seed: child_seed(seed, name, 0),
                    certify: false,
                };
                let reports = harness::run_trials(&spec, &cfg);
                let good = reports
                    .iter()
                    .filter(|r| r.verdict == Some(want))
                    .count();
                let ok = 2 * good > reports.len();
                if !ok {
                    failures += 1;
                }
                println!(
                    "{name}: {good}/{} {} (median queries {})",
                    reports.len(),
                    if ok { "ok" } else { "FAIL" },
                    harness::median_queries(&reports)
                );
            }
            Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
