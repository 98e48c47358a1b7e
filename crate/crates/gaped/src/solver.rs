//! The gap edit distance solver: splitting along sampled breaks, the
//! doubling distance ladder, boosted repetition with budget interrupts, and
//! the preset entry points.
//!
//! All tunable constants live in [`SolverConfig`]. `SolverConfig::paper()`
//! carries the source constants of the asymptotic analysis; those saturate
//! every sampling rate at the instance sizes this crate targets (their
//! polylog factors exceed any desk-scale `K`), so the default configuration
//! is `SolverConfig::desk()`, the calibrated profile used by the presets and
//! the acceptance gates. The control flow is identical in both profiles.

use crate::access::{Fragment, RunCtx};
use crate::error::{Error, Interrupted};
use crate::exact;
use crate::periodicity;
use crate::testers::{self, EqVerdict};
use crate::tree;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GapDecision {
    Close,
    Far,
}

/// Every frozen constant of the solver in one record.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Failure parameter handed to the splitter.
    pub split_delta: f64,
    /// Equality-test delta on the k = 0 rung.
    pub eq_delta_k0: f64,
    /// Piece sampling rate coefficient of the distance ladder
    /// (`q_d = min(1, c * d * ln K * ln(1/delta') / K)`).
    pub ladder_coeff: f64,
    /// Fixed ladder delta'; `None` derives `0.01 / ln K`.
    pub ladder_delta: Option<f64>,
    /// Far declaration: threshold `max(min_count, q_d * K / (c * d * ln K))`.
    pub far_count_coeff: f64,
    pub far_count_min: f64,
    /// Sub-call gap shrink: `k' = d * (k/K) * c * ln K`.
    pub rec_k_coeff: f64,
    /// Sub-call periodicity scale: `p' = min(n', c * k * ln K)`.
    pub rec_p_coeff: f64,
    /// Repetitions per boosted rung; `None` derives
    /// `ceil(8 * ln(max(2, log2 k) / delta))`.
    pub boost_reps: Option<u32>,
    /// Root sampling rate of the partition tree: `c * gamma^2 / K`.
    pub root_rate_coeff: f64,
    /// Tester rate multiplier (rate `3 r_v` in the tree).
    pub tester_rate_mult: f64,
    pub tester_delta: f64,
    /// Divide tester delta by the node length (the union-bound profile).
    pub tester_delta_over_n: bool,
    /// Precision sampling (eps, delta); `None` derives `1/(2 ln n)` and
    /// `0.01/(k n)`.
    pub ps_eps: Option<f64>,
    pub ps_delta: Option<f64>,
    /// Close threshold `c * K / gamma` on the root estimate.
    pub close_coeff: f64,
    /// Fixed partition-tree branching factor; `None` derives it from n.
    pub ell_override: Option<usize>,
    /// Cap on expected survivor-validation reads per tree node; `None`
    /// validates at the full escalated rate.
    pub tester_read_cap: Option<f64>,
    /// Node length at or below which a failed match is retried as a local
    /// capped exact evaluation before descending; `None` always descends.
    pub exact_cutoff: Option<usize>,
    /// End the boosted ladder on the first fully-computed Far at a rung
    /// >= 1 (the estimate barely depends on the rung, so higher rungs would
    /// repeat it).
    pub early_far_exit: bool,
    /// Use the flattened desk budget `mult * ((n/K) Delta + (k~+1) Delta ln n)`
    /// instead of the source expression, whose polylog factors never bind at
    /// desk sizes.
    pub budget_desk: bool,
    /// Realized approximation factor of the periodic shift tables
    /// (3 with the exact all-shifts oracle).
    pub gamma: f64,
    /// Branching exponent coefficient for the partition tree.
    pub ell_coeff: f64,
    /// Budget exponents and scale.
    pub budget_alpha: f64,
    pub budget_p_coeff: f64,
    pub budget_multiplier: f64,
    /// Floor coefficient for Delta: `Delta >= (c * ln K)^2`.
    pub delta_floor_coeff: f64,
    /// Refusal threshold coefficient: require
    /// `K/k >= (ln n)^(c * log_Delta n)`.
    pub gap_threshold_coeff: f64,
    /// Degenerate-randomness mode: u = 1, exhaustive testers, exact
    /// recovery, no periodic pruning. Reduces the tree solver to the exact
    /// tree distance.
    pub degenerate: bool,
}

impl SolverConfig {
    /// Source constants. Documented for reference; at desk-scale sizes the
    /// sampling rates all saturate and the ladder separation degenerates.
    pub fn paper() -> Self {
        Self {
            split_delta: 0.01,
            eq_delta_k0: 0.001,
            ladder_coeff: 108.0,
            ladder_delta: None,
            far_count_coeff: 16.0,
            far_count_min: 1.0,
            rec_k_coeff: 64.0,
            rec_p_coeff: 256.0,
            boost_reps: None,
            root_rate_coeff: 10000.0,
            tester_rate_mult: 3.0,
            tester_delta: 0.01,
            tester_delta_over_n: true,
            ps_eps: None,
            ps_delta: None,
            close_coeff: 0.099,
            ell_override: None,
            tester_read_cap: None,
            exact_cutoff: None,
            early_far_exit: false,
            budget_desk: false,
            gamma: 3.0,
            ell_coeff: 1.0,
            budget_alpha: 1.0,
            budget_p_coeff: 14.0,
            budget_multiplier: 10.0,
            delta_floor_coeff: 256.0,
            gap_threshold_coeff: 1.0,
            degenerate: false,
        }
    }

    /// Calibrated profile for instance sizes up to a few hundred thousand
    /// symbols. Same structure, smaller polylog coefficients.
    pub fn desk() -> Self {
        Self {
            split_delta: 0.01,
            eq_delta_k0: 0.001,
            ladder_coeff: 0.05,
            ladder_delta: Some(0.1),
            far_count_coeff: 16.0,
            far_count_min: 5.0,
            rec_k_coeff: 1.0,
            rec_p_coeff: 1.0,
            boost_reps: Some(1),
            root_rate_coeff: 1.0,
            tester_rate_mult: 3.0,
            tester_delta: 0.01,
            tester_delta_over_n: false,
            ps_eps: Some(1.0),
            ps_delta: Some(0.5),
            close_coeff: 0.099,
            ell_override: Some(2),
            tester_read_cap: Some(24.0),
            exact_cutoff: Some(64),
            early_far_exit: true,
            budget_desk: true,
            gamma: 3.0,
            ell_coeff: 1.0,
            budget_alpha: 1.0,
            budget_p_coeff: 2.0,
            budget_multiplier: 10.0,
            delta_floor_coeff: 1.0,
            gap_threshold_coeff: 0.6,
            degenerate: false,
        }
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::desk()
    }
}

/// One cut produced by the splitter: a piece of X and its Y counterpart.
pub type Piece = (Fragment, Fragment);

/// Split `(x, y)` along sampled k-breaks. Each multiple of `k` in
/// `[0, n-3k]` is sampled with probability `min(1, ln(n/delta) / K)`; a
/// sampled break is matched exactly in `y` within a `k/2` radius (unique if
/// present, because a break is not k-periodic) and both strings are cut
/// there. Concatenating the pieces always reproduces the inputs, and for
/// close instances the piece distances sum to `ED(x, y)` with the
/// advertised probability.
pub fn split<R: Rng + ?Sized>(
    x: &Fragment,
    y: &Fragment,
    k: usize,
    big_k: u64,
    delta: f64,
    rng: &mut R,
) -> Result<Vec<Piece>, Interrupted> {
    assert!(k >= 1);
    let n = x.len();
    let rate = ((n.max(2) as f64 / delta).ln() / big_k as f64).min(1.0);
    let mut cuts: Vec<(usize, usize)> = Vec::new();
    let half = k / 2;
    for i in periodicity::break_candidates(n, k) {
        if !rng.gen_bool(rate) {
            continue;
        }
        let w = x.sub(i as isize, (i + 3 * k) as isize).materialize()?;
        if exact::period(&w) <= k {
            continue;
        }
        // search Y[i - k/2 .. i + 3k + k/2) for the unique occurrence
        let ylo = i as isize - half as isize;
        let ywin = y.sub(ylo, (i + 3 * k + half) as isize);
        let base = ylo.max(0) as usize;
        let ymat = ywin.materialize()?;
        let z = exact::find_occurrences(&w, &ymat)
            .first()
            .map(|&off| base + off)
            .unwrap_or(i);
        if let Some(&(px, py)) = cuts.last() {
            if i <= px || z <= py {
                continue;
            }
        }
        if i == 0 || z == 0 {
            continue;
        }
        cuts.push((i, z));
    }
    let mut pieces = Vec::with_capacity(cuts.len() + 1);
    let (mut cx, mut cy) = (0usize, 0usize);
    for &(ix, iy) in cuts.iter().chain(std::iter::once(&(n, y.len()))) {
        pieces.push((x.sub(cx as isize, ix as isize), y.sub(cy as isize, iy as isize)));
        (cx, cy) = (ix, iy);
    }
    Ok(pieces)
}

fn ladder(top: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d < top {
        out.push(d);
        d *= 2;
    }
    out.push(top);
    out
}

fn ln_pos(v: f64) -> f64 {
    v.max(2.0).ln()
}

/// Temporarily impose an operation budget on top of whatever the context
/// already carries, run `f`, then restore the outer budget net of the
/// operations consumed.
fn with_budget<T>(
    ctx: &RunCtx,
    limit: u64,
    f: impl FnOnce() -> Result<T, Interrupted>,
) -> Result<T, Interrupted> {
    let outer = ctx.budget_remaining();
    let inner = outer.map_or(limit, |o| o.min(limit));
    ctx.set_budget(Some(inner));
    let ops_before = ctx.ops();
    let res = f();
    let consumed = ctx.ops() - ops_before;
    let outer_left = outer.map(|o| o.saturating_sub(consumed));
    ctx.set_budget(outer_left);
    match res {
        Err(Interrupted) if outer_left != Some(0) => {
            // Inner budget fired; the outer one (if any) survives.
            Err(Interrupted)
        }
        other => other,
    }
}

/// Main recursion: decide GapED(k, K) given `BP_p(x) <= (K/k) p`.
#[allow(clippy::too_many_arguments)]
pub fn alg_main<R: Rng + ?Sized>(
    x: &Fragment,
    y: &Fragment,
    k: usize,
    shift_cap: usize,
    big_k: u64,
    p: usize,
    delta_cap: u64,
    cfg: &SolverConfig,
    rng: &mut R,
) -> Result<GapDecision, Interrupted> {
    let ctx = x.ctx().clone();
    ctx.charge_ops(8)?;
    let n = x.len();
    if big_k as u128 > (x.len() + y.len()) as u128 {
        return Ok(GapDecision::Close);
    }
    if k == 0 {
        if x.len() != y.len() {
            return Ok(GapDecision::Far);
        }
        let r = 1.0 / big_k as f64;
        return Ok(match testers::equality_test(x, y, r, cfg.eq_delta_k0, rng)? {
            EqVerdict::Close => GapDecision::Close,
            EqVerdict::Far { .. } => GapDecision::Far,
        });
    }
    if p <= k * delta_cap as usize {
        // The shift-table width tracks the drift of the outer close
        // hypothesis, not the rung index; the verdict threshold is
        // rung-independent either way.
        return tree::alg_small_bp(
            x,
            y,
            shift_cap.max(1),
            big_k,
            k * delta_cap as usize,
            big_k * delta_cap,
            delta_cap,
            cfg,
            rng,
        );
    }
    if n < 4 {
        let xs = x.materialize()?;
        let ys = y.materialize()?;
        let ed = exact::ed_dp(&xs, &ys);
        return Ok(if ed <= k as u64 { GapDecision::Close } else { GapDecision::Far });
    }

    let pieces = split(x, y, k, big_k, cfg.split_delta, rng)?;
    let ln_k = ln_pos(big_k as f64);
    d_ladder(pieces.len(), k, big_k, cfg, rng, |idx, d, k_sub, rng| {
        ctx.charge_ops(1)?;
        let (px, py) = &pieces[idx];
        let n_i = px.len().max(1);
        // Judge short pieces at a rung they can actually fail: a piece with
        // |X_i| + |Y_i| < d is unconditionally Close at gap d, which would
        // let far mass hide in small pieces.
        let sum = (px.len() + py.len()).max(2) as u64;
        let (d, k_sub) = if d > sum {
            let d_eff = (1u64 << (63 - sum.leading_zeros())).max(2);
            let k_eff = ((d_eff as f64 * (k as f64 / big_k as f64)
                * cfg.rec_k_coeff
                * ln_k) as u64)
                .min(d_eff - 1) as usize;
            (d_eff, k_eff)
        } else {
            (d, k_sub)
        };
        let mut p_sub = n_i.min((cfg.rec_p_coeff * k as f64 * ln_k).ceil() as usize).max(1);
        // recursion invariant: p' <= p / sqrt(Delta)
        let p_shrink = ((p as f64) / (delta_cap as f64).sqrt()).floor().max(1.0) as usize;
        p_sub = p_sub.min(p_shrink);
        debug_assert!((p_sub as f64) * (delta_cap as f64).sqrt() <= p as f64 + 1.0);
        alg_boosted(
            px,
            py,
            k_sub,
            k,
            d,
            p_sub,
            0.01 / (n.max(2) as f64 * n.max(2) as f64),
            delta_cap,
            cfg,
            rng,
        )
    })
}

/// The distance ladder over split pieces: for each doubling rung `d`, sample
/// pieces at rate `q_d` and count Far answers of the rung's judge; a count
/// at or above the rung threshold decides Far. The final rung always runs at
/// rate 1. A rung whose sample cannot reach its threshold is skipped
/// outright. The judge receives `(piece index, d, k'_d)`.
pub fn d_ladder<R: Rng + ?Sized, F>(
    num_pieces: usize,
    k: usize,
    big_k: u64,
    cfg: &SolverConfig,
    rng: &mut R,
    mut judge: F,
) -> Result<GapDecision, Interrupted>
where
    F: FnMut(usize, u64, usize, &mut R) -> Result<GapDecision, Interrupted>,
{
    let ln_k = ln_pos(big_k as f64);
    let dl = cfg.ladder_delta.unwrap_or(0.01 / ln_k).clamp(1e-9, 0.5);
    let ln_dl = (1.0 / dl).ln();
    for d in ladder(big_k) {
        let q = if d == big_k {
            1.0
        } else {
            (cfg.ladder_coeff * d as f64 * ln_k * ln_dl / big_k as f64).min(1.0)
        };
        // Intermediate rungs keep the full count floor: with few pieces their
        // gap thresholds sit below ordinary estimator slack, so only the final
        // rung may relax the floor down to the piece count.
        let floor = if d == big_k {
            cfg.far_count_min.min(num_pieces as f64)
        } else {
            cfg.far_count_min
        };
        let threshold =
            (q * big_k as f64 / (cfg.far_count_coeff * d as f64 * ln_k)).max(floor);
        let k_sub = ((d as f64 * (k as f64 / big_k as f64) * cfg.rec_k_coeff * ln_k) as u64)
            .min(d.saturating_sub(1)) as usize;
        let sampled: Vec<usize> = (0..num_pieces).filter(|_| rng.gen_bool(q)).collect();
        if (sampled.len() as f64) < threshold {
            // even all-Far answers could not reach the threshold
            continue;
        }
        let mut far_count = 0u64;
        for idx in sampled {
            if judge(idx, d, k_sub, rng)? == GapDecision::Far {
                far_count += 1;
            }
        }
        if far_count as f64 >= threshold {
            return Ok(GapDecision::Far);
        }
    }
    Ok(GapDecision::Close)
}

/// Success amplification over a doubling ladder of close thresholds. Each
/// rung runs repeated budgeted trials of [`alg_main`]; a trial that exhausts
/// its budget is recorded as Far. A rung with a Close majority ends the
/// ladder; if no rung closes, the answer is Far.
#[allow(clippy::too_many_arguments)]
pub fn alg_boosted<R: Rng + ?Sized>(
    x: &Fragment,
    y: &Fragment,
    k: usize,
    shift_cap: usize,
    big_k: u64,
    p: usize,
    delta: f64,
    delta_cap: u64,
    cfg: &SolverConfig,
    rng: &mut R,
) -> Result<GapDecision, Interrupted> {
    let ctx = x.ctx().clone();
    let n = x.len().max(2);
    let reps = cfg.boost_reps.unwrap_or_else(|| {
        let base = (k.max(2) as f64).log2().max(2.0);
        (8.0 * (base / delta.max(1e-12)).ln()).ceil() as u32
    });
    let d = delta_cap.max(2) as f64;
    let ln_n = (n as f64).ln();
    let log_d_n = ln_n / d.ln();
    let log_d_p = (p.max(2) as f64).ln() / d.ln();
    let mut rung = 0usize; // k-tilde: 0, 1, 2, 4, ...
    loop {
        let kt = rung;
        let budget = if cfg.budget_desk {
            cfg.budget_multiplier * ((n as f64 / big_k as f64) * d + (kt + 1) as f64 * d * ln_n)
        } else {
            cfg.budget_multiplier
                * ((n as f64 / big_k as f64) * d + kt as f64 * big_k as f64 * d.powi(3))
                * ln_n.powf(cfg.budget_alpha * log_d_n)
                * ln_n.powf(cfg.budget_p_coeff * log_d_p)
        }
        .min(1e18) as u64;
        let mut close_votes = 0u32;
        let mut computed_far = 0u32;
        for _ in 0..reps.max(1) {
            let res = with_budget(&ctx, budget.max(1), || {
                alg_main(x, y, kt, shift_cap, big_k, p, delta_cap, cfg, rng)
            });
            match res {
                Ok(GapDecision::Close) => close_votes += 1,
                Ok(GapDecision::Far) => computed_far += 1,
                Err(Interrupted) => {
                    if ctx.budget_remaining() == Some(0) {
                        return Err(Interrupted);
                    }
                    // own budget fired: store a Far answer
                }
            }
        }
        if 2 * close_votes > reps.max(1) {
            return Ok(GapDecision::Close);
        }
        // A fully computed Far at a positive rung would only repeat at the
        // higher rungs: the underlying estimate does not depend on k~.
        if cfg.early_far_exit && kt >= 1 && 2 * computed_far > reps.max(1) {
            return Ok(GapDecision::Far);
        }
        if kt >= k {
            return Ok(GapDecision::Far);
        }
        rung = if kt == 0 { 1 } else { (kt * 2).min(k) };
    }
}

/// Top-level entry: decide GapED(k, K) on whole strings. `delta_cap` is the
/// branching parameter Delta; `None` picks the smallest admissible value.
pub fn gap_ed<R: Rng + ?Sized>(
    x: &Fragment,
    y: &Fragment,
    k: usize,
    big_k: u64,
    delta_cap: Option<u64>,
    cfg: &SolverConfig,
    rng: &mut R,
) -> Result<GapDecision, Error> {
    if big_k <= k as u64 {
        return Err(Error::Input(format!("need K > k, got k={k} K={big_k}")));
    }
    let n = x.len().max(2);
    let ln_k = ln_pos(big_k as f64);
    // Delta floor: the analysis wants (c ln K)^2 <= Delta, and sub-calls
    // must route to the bounded-BP solver rather than re-splitting, which
    // needs Delta >= p' = c_p k ln K.
    let floor = ((cfg.delta_floor_coeff * ln_k).powi(2))
        .max(cfg.rec_p_coeff * k.max(1) as f64 * ln_k)
        .ceil() as u64;
    let delta_cap = delta_cap.unwrap_or(2).max(floor).max(2).min(n as u64);
    let ln_n = (n as f64).ln();
    let gap_needed = ln_n.powf(cfg.gap_threshold_coeff * ln_n / (delta_cap as f64).ln());
    if k > 0 && (big_k as f64 / k as f64) < gap_needed {
        return Err(Error::Refusal(format!(
            "gap K/k = {:.1} below machinery threshold {:.1} (n={n}, Delta={delta_cap})",
            big_k as f64 / k as f64,
            gap_needed
        )));
    }
    match alg_main(x, y, k, k, big_k, x.len().max(1), delta_cap, cfg, rng) {
        Ok(v) => Ok(v),
        // a global budget interrupt is reported as Far, like any trial
        Err(Interrupted) => Ok(GapDecision::Far),
    }
}

/// Parameter presets named after the gap regimes they target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Preset {
    /// `K = k * 2^(mu sqrt(log k log log k))`.
    Subpoly,
    /// `K = k * polylog(k)` with exponent `1/eps`.
    Polylog { eps: f64 },
    /// Explicit polynomial `K`; small `K` routes to the exact solver.
    Poly { big_k: u64 },
}

/// Resolved parameters for a preset run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresetParams {
    pub k: usize,
    pub big_k: u64,
    pub delta_cap: u64,
    pub route: &'static str,
}

pub fn resolve_preset(preset: Preset, k: usize, n: usize) -> PresetParams {
    let lk = (k.max(2) as f64).log2();
    let llk = lk.max(2.0).log2();
    match preset {
        Preset::Subpoly => {
            let base = (lk * llk).sqrt();
            let big_k = ((k.max(1) as u64) << ((2.5 * base).round() as u32).min(40)).max(2);
            let delta = 1u64 << (base.ceil() as u32).min(30);
            let route = if k > 0 && (k as u128).pow(6) < n as u128 {
                "small-k-verifier"
            } else {
                "main"
            };
            PresetParams { k, big_k, delta_cap: delta.max(2), route }
        }
        Preset::Polylog { eps } => {
            let eps = eps.clamp(0.05, 1.0);
            let delta = ((k.max(2) as f64).powf(eps / 3.0).round() as u64).max(2);
            let big_k =
                (k.max(1) as f64 * (k.max(2) as f64).ln().powf(1.0 / eps)).round() as u64;
            PresetParams { k, big_k: big_k.max(k as u64 + 1), delta_cap: delta, route: "main" }
        }
        Preset::Poly { big_k } => {
            let ln2 = (n.max(2) as f64).log2();
            let exact_cut = 2f64.powf(ln2.powf(2.0 / 3.0));
            if (big_k as f64) < exact_cut {
                return PresetParams { k, big_k, delta_cap: 2, route: "exact" };
            }
            let lln = ln2.max(2.0).log2();
            let delta = 1u64 << (((ln2 * lln).sqrt()).ceil() as u32).min(30);
            let scale = (n as f64 / k.max(1) as f64).sqrt();
            let big_k_eff = (big_k as f64).min(scale.max(k as f64 * delta as f64)) as u64;
            PresetParams {
                k,
                big_k: big_k_eff.max(k as u64 + 1),
                delta_cap: delta.max(2),
                route: "main",
            }
        }
    }
}

/// Preset-driven solve. Routes to the exact solver or the sampling verifier
/// where the preset calls for it.
pub fn gap_ed_preset<R: Rng + ?Sized>(
    x: &Fragment,
    y: &Fragment,
    k: usize,
    preset: Preset,
    cfg: &SolverConfig,
    rng: &mut R,
) -> Result<(GapDecision, PresetParams), Error> {
    let params = resolve_preset(preset, k, x.len());
    let verdict = match params.route {
        "exact" => {
            let xs = x.materialize().map_err(|_| budget_err())?;
            let ys = y.materialize().map_err(|_| budget_err())?;
            match exact::ed_landau_vishkin(&xs, &ys, k as u64) {
                Some(_) => GapDecision::Close,
                None => GapDecision::Far,
            }
        }
        "small-k-verifier" => small_k_verifier(x, y, k, params.big_k, cfg, rng)
            .unwrap_or(GapDecision::Far),
        _ => gap_ed(x, y, k, params.big_k, Some(params.delta_cap), cfg, rng)?,
    };
    Ok((verdict, params))
}

fn budget_err() -> Error {
    Error::Input("budget exhausted while materializing input".into())
}

/// Block verifier for tiny k (`k^6 < n`): 2k blocks, each checked for an
/// exact match at some shift within `[-k, k]` and validated by sampling.
/// Close instances leave at most k blocks unmatched; the Far threshold is
/// therefore `> k` bad blocks. Query cost is O((n/K) k log) rather than
/// O(n). Stands in for the dedicated small-k machinery, whose guarantees
/// against adversarially clustered edit mass it does not reproduce.
pub fn small_k_verifier<R: Rng + ?Sized>(
    x: &Fragment,
    y: &Fragment,
    k: usize,
    big_k: u64,
    cfg: &SolverConfig,
    rng: &mut R,
) -> Result<GapDecision, Interrupted> {
    let n = x.len();
    if n == 0 {
        return Ok(GapDecision::Close);
    }
    let k = k.max(1);
    let blocks = 2 * k;
    let bsize = n.div_ceil(blocks).max(1);
    let r = (blocks as f64 / big_k as f64).min(1.0);
    let mut bad = 0usize;
    let mut lo = 0usize;
    while lo < n {
        let hi = (lo + bsize).min(n);
        let xb = x.sub(lo as isize, hi as isize);
        let yb = y.sub(lo as isize - k as isize, hi as isize + k as isize);
        match testers::matching_test(&xb, &yb, k, r, cfg.tester_delta, rng)? {
            testers::MatchVerdict::Close { .. } => {}
            testers::MatchVerdict::Far => bad += 1,
        }
        lo = hi;
    }
    Ok(if bad > k { GapDecision::Far } else { GapDecision::Close })
}
