//! Instance generation, trial running, and reporting.
//!
//! Generators build `(x, y)` pairs with known ground truth; `certify`
//! recomputes the truth from the raw symbols with the exact machinery.
//! `run_trials` executes a batch of seeded solver runs — data-parallel over
//! trials when the `parallel` feature is on, plain sequential otherwise —
//! and records per-run query counts for the bench suite.

use crate::access::{Fragment, QueriedString, RunCtx};
use crate::child_seed;
use crate::error::Error;
use crate::exact;
use crate::solver::{self, GapDecision, SolverConfig};
use crate::Sym;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum InstanceKind {
    /// y = x with exactly `edits` random edits applied.
    Planted { n: usize, edits: usize, sigma: u32 },
    /// x and y drawn independently and uniformly.
    Independent { n: usize, sigma: u32 },
    /// y = x with exactly `edits` substitutions at distinct positions, so
    /// lengths agree and ED <= edits with near-certain equality.
    Subbed { n: usize, edits: usize, sigma: u32 },
    /// Periodic x, y corrupted by substitutions only.
    PeriodicSubs { n: usize, p: usize, edits: usize, sigma: u32 },
    /// x periodic with root length `p`; y gets `edits` random edits.
    Periodic { n: usize, p: usize, edits: usize, sigma: u32 },
    /// Alternating periodic blocks with distinct roots, then edits.
    BlockPeriodic { n: usize, p: usize, blocks: usize, edits: usize, sigma: u32 },
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub x: Vec<Sym>,
    pub y: Vec<Sym>,
    pub kind: InstanceKind,
    pub seed: u64,
}

pub fn random_string<R: Rng + ?Sized>(n: usize, sigma: u32, rng: &mut R) -> Vec<Sym> {
    (0..n).map(|_| rng.gen_range(0..sigma.max(2))).collect()
}

/// Apply exactly `edits` random single-character edits (insert / delete /
/// substitute, with substitutions guaranteed to change the symbol).
pub fn apply_edits<R: Rng + ?Sized>(
    s: &[Sym],
    edits: usize,
    sigma: u32,
    rng: &mut R,
) -> Vec<Sym> {
    let sigma = sigma.max(2);
    let mut v = s.to_vec();
    for _ in 0..edits {
        match rng.gen_range(0..3u8) {
            0 if !v.is_empty() => {
                let i = rng.gen_range(0..v.len());
                let old = v[i];
                let mut c = rng.gen_range(0..sigma);
                if c == old {
                    c = (c + 1) % sigma;
                }
                v[i] = c;
            }
            1 if !v.is_empty() => {
                v.remove(rng.gen_range(0..v.len()));
            }
            _ => {
                let i = rng.gen_range(0..=v.len());
                v.insert(i, rng.gen_range(0..sigma));
            }
        }
    }
    v
}

/// Exactly `edits` substitutions at distinct positions.
pub fn apply_subs<R: Rng + ?Sized>(
    s: &[Sym],
    edits: usize,
    sigma: u32,
    rng: &mut R,
) -> Vec<Sym> {
    let sigma = sigma.max(2);
    let mut v = s.to_vec();
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.shuffle(rng);
    for &i in idx.iter().take(edits.min(v.len())) {
        let mut c = rng.gen_range(0..sigma);
        if c == v[i] {
            c = (c + 1) % sigma;
        }
        v[i] = c;
    }
    v
}

pub fn generate(kind: InstanceKind, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (x, y) = match &kind {
        InstanceKind::Planted { n, edits, sigma } => {
            let x = random_string(*n, *sigma, &mut rng);
            let y = apply_edits(&x, *edits, *sigma, &mut rng);
            (x, y)
        }
        InstanceKind::Independent { n, sigma } => {
            let x = random_string(*n, *sigma, &mut rng);
            let y = random_string(*n, *sigma, &mut rng);
            (x, y)
        }
        InstanceKind::Subbed { n, edits, sigma } => {
            let x = random_string(*n, *sigma, &mut rng);
            let y = apply_subs(&x, *edits, *sigma, &mut rng);
            (x, y)
        }
        InstanceKind::PeriodicSubs { n, p, edits, sigma } => {
            let root = random_string((*p).max(1), *sigma, &mut rng);
            let x: Vec<Sym> = root.iter().cycle().take(*n).copied().collect();
            let y = apply_subs(&x, *edits, *sigma, &mut rng);
            (x, y)
        }
        InstanceKind::Periodic { n, p, edits, sigma } => {
            let root = random_string((*p).max(1), *sigma, &mut rng);
            let x: Vec<Sym> = root.iter().cycle().take(*n).copied().collect();
            let y = apply_edits(&x, *edits, *sigma, &mut rng);
            (x, y)
        }
        InstanceKind::BlockPeriodic { n, p, blocks, edits, sigma } => {
            let b = (*blocks).max(1);
            let mut roots: Vec<Vec<Sym>> =
                (0..b).map(|_| random_string((*p).max(1), *sigma, &mut rng)).collect();
            roots.shuffle(&mut rng);
            let bsize = n.div_ceil(b).max(1);
            let mut x = Vec::with_capacity(*n);
            for i in 0..b {
                let take = bsize.min(n.saturating_sub(x.len()));
                x.extend(roots[i % roots.len()].iter().cycle().take(take));
            }
            let y = apply_edits(&x, *edits, *sigma, &mut rng);
            (x, y)
        }
    };
    Instance { x, y, kind, seed }
}

/// Ground truth for a generated instance, from the raw symbols.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Certificate {
    pub ed: u64,
    /// Which side of a (k, K) gap the instance sits on, if either.
    pub truth_close: bool,
    pub truth_far: bool,
}

pub fn certify(inst: &Instance, k: usize, big_k: u64) -> Certificate {
    let ed = exact::ed_lv(&inst.x, &inst.y);
    Certificate { ed, truth_close: ed <= k as u64, truth_far: ed >= big_k }
}

pub const REPORT_SCHEMA: u32 = 1;

/// One solver run, serialization-stable for the JSON-lines / CSV outputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub big_k: u64,
    pub verdict: Option<GapDecision>,
    pub refused: bool,
    pub queries: u64,
    pub ops: u64,
    pub micros: u64,
    pub ed: Option<u64>,
    pub correct: Option<bool>,
}

impl RunReport {
    pub fn csv_header() -> &'static str {
        "schema,seed,n,k,K,verdict,refused,queries,ops,micros,ed,correct"
    }

    pub fn to_csv(&self) -> String {
        let v = match self.verdict {
            Some(GapDecision::Close) => "close",
            Some(GapDecision::Far) => "far",
            None => "",
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.schema,
            self.seed,
            self.n,
            self.k,
            self.big_k,
            v,
            self.refused,
            self.queries,
            self.ops,
            self.micros,
            self.ed.map_or(String::new(), |e| e.to_string()),
            self.correct.map_or(String::new(), |c| c.to_string()),
        )
    }
}

/// Run the solver once on raw symbol vectors under a fresh charged context.
pub fn run_once(
    x: &[Sym],
    y: &[Sym],
    k: usize,
    big_k: u64,
    delta_cap: Option<u64>,
    cfg: &SolverConfig,
    seed: u64,
) -> (Result<GapDecision, Error>, u64, u64) {
    let ctx = RunCtx::new();
    let xs = QueriedString::new(x.to_vec(), ctx.clone());
    let ys = QueriedString::new(y.to_vec(), ctx.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let res = solver::gap_ed(&xs.whole(), &ys.whole(), k, big_k, delta_cap, cfg, &mut rng);
    (res, ctx.queries(), ctx.ops())
}

#[derive(Debug, Clone)]
pub struct TrialSpec {
    pub kind: InstanceKind,
    pub k: usize,
    pub big_k: u64,
    pub delta_cap: Option<u64>,
    pub trials: usize,
    pub seed: u64,
    /// Recompute the exact distance for each instance and grade verdicts.
    pub certify: bool,
}

fn one_trial(spec: &TrialSpec, cfg: &SolverConfig, idx: u64) -> RunReport {
    let gseed = child_seed(spec.seed, "gen", idx);
    let sseed = child_seed(spec.seed, "solve", idx);
    let inst = generate(spec.kind.clone(), gseed);
    let start = std::time::Instant::now();
    let (res, queries, ops) =
        run_once(&inst.x, &inst.y, spec.k, spec.big_k, spec.delta_cap, cfg, sseed);
    let micros = start.elapsed().as_micros() as u64;
    let (verdict, refused) = match res {
        Ok(v) => (Some(v), false),
        Err(Error::Refusal(_)) => (None, true),
        Err(_) => (None, false),
    };
    let (ed, correct) = if spec.certify {
        let cert = certify(&inst, spec.k, spec.big_k);
        let correct = verdict.map(|v| match v {
            GapDecision::Close => !cert.truth_far,
            GapDecision::Far => !cert.truth_close,
        });
        (Some(cert.ed), correct)
    } else {
        (None, None)
    };
    RunReport {
        schema: REPORT_SCHEMA,
        seed: sseed,
        n: inst.x.len(),
        k: spec.k,
        big_k: spec.big_k,
        verdict,
        refused,
        queries,
        ops,
        micros,
        ed,
        correct,
    }
}

/// Batch runner. Trials are independent (seeded per index), so the parallel
/// and sequential paths produce identical reports up to ordering; we sort
/// by seed index implicitly by collecting in index order.
pub fn run_trials(spec: &TrialSpec, cfg: &SolverConfig) -> Vec<RunReport> {
    #[cfg(feature = "parallel")]
    {
        (0..spec.trials as u64)
            .into_par_iter()
            .map(|i| one_trial(spec, cfg, i))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..spec.trials as u64).map(|i| one_trial(spec, cfg, i)).collect()
    }
}

/// Force the sequential path regardless of features; the bench suite
/// compares this against [`run_trials`].
pub fn run_trials_sequential(spec: &TrialSpec, cfg: &SolverConfig) -> Vec<RunReport> {
    (0..spec.trials as u64).map(|i| one_trial(spec, cfg, i)).collect()
}

pub fn median_queries(reports: &[RunReport]) -> u64 {
    if reports.is_empty() {
        return 0;
    }
    let mut qs: Vec<u64> = reports.iter().map(|r| r.queries).collect();
    qs.sort_unstable();
    qs[qs.len() / 2]
}

/// Fragments over a fresh context, for tests and the CLI.
pub fn charged_pair(x: &[Sym], y: &[Sym]) -> (Fragment, Fragment, RunCtx) {
    let ctx = RunCtx::new();
    let xs = QueriedString::new(x.to_vec(), ctx.clone());
    let ys = QueriedString::new(y.to_vec(), ctx.clone());
    (xs.whole(), ys.whole(), ctx)
}
