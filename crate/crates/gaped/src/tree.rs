//! The partition tree: shift-restricted tree distance, its exact reference
//! evaluation, and the sampled solver for inputs with bounded block
//! periodicity.

use crate::access::Fragment;
use crate::error::Interrupted;
use crate::exact;
use crate::periodic;
use crate::precision::PrecisionDist;
use crate::solver::{GapDecision, SolverConfig};
use crate::testers::{self, MatchVerdict, PeriodVerdict};
use crate::Sym;
use rand::Rng;

/// `out[s] = min_{s'} (a[s'] + 2 * |s - s'|)` by two slope-2 sweeps, O(len).
pub fn range_min_plus(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut out = a.to_vec();
    for i in 1..n {
        out[i] = out[i].min(out[i - 1] + 2.0);
    }
    for i in (0..n.saturating_sub(1)).rev() {
        out[i] = out[i].min(out[i + 1] + 2.0);
    }
    out
}

/// Integer variant, bit-exact.
pub fn range_min_plus_u64(a: &[u64]) -> Vec<u64> {
    let n = a.len();
    let mut out = a.to_vec();
    for i in 1..n {
        out[i] = out[i].min(out[i - 1].saturating_add(2));
    }
    for i in (0..n.saturating_sub(1)).rev() {
        out[i] = out[i].min(out[i + 1].saturating_add(2));
    }
    out
}

/// Exact shift-restricted tree distance with branching `ell` and shift
/// radius `big_l`, evaluated over the whole tree. Returns the root value at
/// shift 0. Provided `ED(x, y) <= big_l`, it satisfies
/// `ED <= TD <= (2 (ell-1) h + 1) * ED` with `h` the tree height.
pub fn tree_distance_exact(x: &[Sym], y: &[Sym], ell: usize, big_l: usize) -> u64 {
    assert!(ell >= 2);
    assert!(!x.is_empty());
    let table = td_table(x, y, 0, x.len(), ell, big_l);
    // Leaf windows cover only |x| positions of y; an excess tail of y is
    // unseen by every window and must be charged as deletions.
    table[big_l] + y.len().saturating_sub(x.len()) as u64
}

/// Height of the partition tree used by [`tree_distance_exact`].
pub fn tree_height(n: usize, ell: usize) -> usize {
    let mut h = 0;
    let mut len = n;
    while len > 1 {
        len = len.div_ceil(ell);
        h += 1;
    }
    h
}

fn td_table(
    x: &[Sym],
    y: &[Sym],
    lo: usize,
    hi: usize,
    ell: usize,
    big_l: usize,
) -> Vec<u64> {
    let width = 2 * big_l + 1;
    if hi - lo == 1 {
        return (0..width)
            .map(|slot| {
                let s = slot as isize - big_l as isize;
                leaf_ed_slice(x, y, lo, hi, s)
            })
            .collect();
    }
    let mut total = vec![0u64; width];
    for (clo, chi) in child_spans(lo, hi, ell) {
        let child = td_table(x, y, clo, chi, ell, big_l);
        let folded = range_min_plus_u64(&child);
        for s in 0..width {
            total[s] = total[s].saturating_add(folded[s]);
        }
    }
    total
}

/// Children spans: `hi - lo` split into at most `ell` near-equal parts.
pub fn child_spans(lo: usize, hi: usize, ell: usize) -> Vec<(usize, usize)> {
    let len = hi - lo;
    let step = len.div_ceil(ell);
    let mut out = Vec::new();
    let mut cur = lo;
    while cur < hi {
        let end = (cur + step).min(hi);
        out.push((cur, end));
        cur = end;
    }
    out
}

fn leaf_ed_slice(x: &[Sym], y: &[Sym], lo: usize, hi: usize, s: isize) -> u64 {
    let n = y.len() as isize;
    let a = (lo as isize + s).clamp(0, n) as usize;
    let b = (hi as isize + s).clamp(0, n) as usize;
    let b = b.max(a);
    exact::ed_dp(&x[lo..hi], &y[a..b])
}

/// Branching factor for a tree over `n` leaves:
/// `clamp(ceil((ln n)^(c * log_Delta n)), 2, 64)`, additionally capped by n.
pub fn branching(n: usize, delta_cap: u64, cfg: &SolverConfig) -> usize {
    if let Some(ell) = cfg.ell_override {
        return ell.max(2);
    }
    if n < 4 {
        return 2;
    }
    let ln_n = (n as f64).ln();
    let log_d_n = ln_n / (delta_cap.max(2) as f64).ln();
    let raw = ln_n.powf(cfg.ell_coeff * log_d_n).ceil();
    let raw = if raw.is_finite() { raw as usize } else { 64 };
    raw.clamp(2, 64).min(n)
}

/// Sampled solver for GapED(k, K) under a block-periodicity promise
/// `BP_p(x) <= b_cap`. Runs the partition tree with rate-based testers and
/// precision-sampled recovery under an operation budget; budget exhaustion
/// means Far. `Err(Interrupted)` is only the caller's own budget.
#[allow(clippy::too_many_arguments)]
pub fn alg_small_bp<R: Rng + ?Sized>(
    x: &Fragment,
    y: &Fragment,
    k: usize,
    big_k: u64,
    p: usize,
    b_cap: u64,
    delta_cap: u64,
    cfg: &SolverConfig,
    rng: &mut R,
) -> Result<GapDecision, Interrupted> {
    let n = x.len().max(1);
    assert!(p >= 1 && big_k >= 1);
    let gamma = cfg.gamma;
    let ln_n = (n as f64).ln().max(1.0);
    let log_d_n = ln_n / (delta_cap.max(2) as f64).ln();
    let own_budget = (cfg.budget_multiplier
        * ((n as f64 / big_k as f64) * delta_cap as f64
            + (p as f64) * (b_cap as f64) * delta_cap as f64)
        * ln_n.powf(cfg.budget_alpha * log_d_n))
    .min(1e18) as u64;
    let ctx = x.ctx().clone();
    let eta = match tree_estimate(x, y, k, big_k, p, own_budget, delta_cap, cfg, rng) {
        Ok(t) => t,
        Err(Interrupted) => {
            // Distinguish our own budget from the caller's.
            if ctx.budget_remaining() == Some(0) {
                return Err(Interrupted);
            }
            return Ok(GapDecision::Far);
        }
    };
    let eta0 = eta[k] + y.len().saturating_sub(x.len()) as f64;
    if eta0 <= cfg.close_coeff * big_k as f64 / gamma {
        Ok(GapDecision::Close)
    } else {
        Ok(GapDecision::Far)
    }
}

/// Runs the partition-tree estimator and returns the root shift table
/// (index `s` holds the estimate for shift `s - k`). `budget` bounds the
/// operations this call may spend before giving up with `Interrupted`.
#[allow(clippy::too_many_arguments)]
pub fn tree_estimate<R: Rng + ?Sized>(
    x: &Fragment,
    y: &Fragment,
    k: usize,
    big_k: u64,
    p: usize,
    budget: u64,
    delta_cap: u64,
    cfg: &SolverConfig,
    rng: &mut R,
) -> Result<Vec<f64>, Interrupted> {
    let n = x.len().max(1);
    assert!(p >= 1 && big_k >= 1);
    let gamma = cfg.gamma;
    let root_rate = (cfg.root_rate_coeff * gamma * gamma / big_k as f64).min(1.0);
    let ln_n = (n as f64).ln().max(1.0);
    let ctx = x.ctx().clone();
    let eps = cfg.ps_eps.unwrap_or(1.0 / (2.0 * ln_n));
    let delta = cfg.ps_delta.unwrap_or(0.01 / (k.max(1) as f64 * n as f64));
    let mut solver = SmallBp {
        x,
        y,
        k,
        p,
        ell: branching(n, delta_cap, cfg),
        cfg,
        dist: PrecisionDist::new(eps.clamp(1e-3, 1.0), delta.clamp(1e-12, 0.5)),
        n,
        ops_start: ctx.ops(),
        own_budget: budget,
        rng,
    };
    solver.visit(0, x.len(), root_rate)
}

struct SmallBp<'a, R: Rng + ?Sized> {
    x: &'a Fragment,
    y: &'a Fragment,
    k: usize,
    p: usize,
    ell: usize,
    cfg: &'a SolverConfig,
    dist: PrecisionDist,
    n: usize,
    ops_start: u64,
    own_budget: u64,
    rng: &'a mut R,
}

impl<R: Rng + ?Sized> SmallBp<'_, R> {
    fn width(&self) -> usize {
        2 * self.k + 1
    }

    fn tester_delta(&self) -> f64 {
        if self.cfg.tester_delta_over_n {
            self.cfg.tester_delta / self.n as f64
        } else {
            self.cfg.tester_delta
        }
    }

    fn check_budget(&self) -> Result<(), Interrupted> {
        let ctx = self.x.ctx();
        if ctx.ops() - self.ops_start > self.own_budget {
            return Err(Interrupted);
        }
        Ok(())
    }

    /// Shift table for the node spanning `x[lo..hi)`.
    fn visit(&mut self, lo: usize, hi: usize, rate: f64) -> Result<Vec<f64>, Interrupted> {
        self.check_budget()?;
        let len = hi - lo;
        self.x.ctx().charge_ops(1 + self.width() as u64)?;
        if len == 1 {
            return self.leaf(lo);
        }
        let k = self.k as isize;
        let y_node = self.y.sub(lo as isize - k, hi as isize + k);
        let x_node = self.x.sub(lo as isize, hi as isize);
        if !self.cfg.degenerate {
            // Survivor validation is rate-based; cap its planned reads so a
            // rate escalated to 1 cannot full-scan a large node. The missed
            // mass is covered by the matching beta allowance below.
            let td = self.tester_delta();
            let r_test = match self.cfg.tester_read_cap {
                Some(cap) => (self.cfg.tester_rate_mult * rate)
                    .min(cap / (len as f64 * (1.0 / td).ln().max(1.0))),
                None => self.cfg.tester_rate_mult * rate,
            }
            .clamp(f64::MIN_POSITIVE, 1.0);
            let m_res =
                testers::matching_test(&x_node, &y_node, self.k, r_test, td, self.rng)?;
            if let MatchVerdict::Close { shift } = m_res {
                // Periodicity pays off for mid-sized nodes with genuinely
                // short periods: the root check reads 2p characters, so only
                // attempt it where that beats descending.
                let p_affordable = self
                    .cfg
                    .tester_read_cap
                    .is_none_or(|c| 2.0 * self.p as f64 <= c);
                if p_affordable && len > self.p && len <= 8 * self.p {
                    let p_res =
                        testers::periodicity_test(&y_node, self.p, r_test, td, self.rng)?;
                    if let PeriodVerdict::Close { root } = p_res {
                        if !root.is_empty() {
                            let tab = periodic::fast_shifts_ed(
                                &root,
                                shift,
                                self.k,
                                x_node.len(),
                                y_node.len().max(x_node.len()),
                                self.p,
                            );
                            return Ok(tab.into_iter().map(|v| v as f64).collect());
                        }
                    }
                }
                // Matched fallback: an exact occurrence at shift s bounds
                // the window distance at slot t by 2|t - s| (slide there by
                // indels), and never from below.
                return Ok((0..self.width())
                    .map(|slot| {
                        let t = slot as isize - self.k as isize;
                        2.0 * (t - shift).abs() as f64
                    })
                    .collect());
            }
            // Small failed node: try a local capped exact evaluation before
            // paying for a full descent. A hit at shift s with value v bounds
            // every slot by v + 2|t - s| (slide by indels).
            if let Some(cut) = self.cfg.exact_cutoff {
                if len <= cut {
                    if let Some(tab) = self.local_exact(lo, hi)? {
                        return Ok(tab);
                    }
                }
            }
        }
        // recurse
        let spans = child_spans(lo, hi, self.ell);
        let mut folded: Vec<Vec<f64>> = Vec::with_capacity(spans.len());
        let mut precisions = Vec::with_capacity(spans.len());
        for (clo, chi) in spans {
            let u = if self.cfg.degenerate {
                1.0
            } else {
                self.dist.sample_truncated(self.n, self.rng)
            };
            let child = self.visit(clo, chi, (rate / u).min(1.0))?;
            folded.push(range_min_plus(&child));
            precisions.push(u);
        }
        // additive allowance tracks the tester sampling rate: HD up to 1/r
        // per matched node can go unseen
        let r_eff = match self.cfg.tester_read_cap {
            Some(cap) => {
                rate.min(cap / (len as f64 * (1.0 / self.tester_delta()).ln().max(1.0)))
            }
            None => rate,
        };
        let beta = if r_eff > 0.0 { self.cfg.gamma / r_eff } else { 0.0 };
        let table = (0..self.width())
            .map(|slot| {
                let ests: Vec<f64> = folded.iter().map(|f| f[slot]).collect();
                if self.cfg.degenerate {
                    ests.iter().sum()
                } else {
                    self.dist.recover(&ests, &precisions, beta)
                }
            })
            .collect();
        Ok(table)
    }

    /// Read the node and its y-window once, then probe shifts outward from 0
    /// with a capped Landau-Vishkin run. First shift whose window distance
    /// fits the cap wins; every other slot gets the slope-2 bound. `None`
    /// means nothing fit and the caller should descend.
    fn local_exact(&mut self, lo: usize, hi: usize) -> Result<Option<Vec<f64>>, Interrupted> {
        let len = hi - lo;
        let k = self.k as isize;
        let ylen = self.y.len() as isize;
        const OOB: Sym = Sym::MAX;
        let mut xb = Vec::with_capacity(len);
        for i in lo..hi {
            xb.push(self.x.read(i)?);
        }
        let mut yw = Vec::with_capacity(len + 2 * self.k);
        for j in (lo as isize - k)..(hi as isize + k) {
            yw.push(if j < 0 || j >= ylen {
                OOB
            } else {
                self.y.read(j as usize)?
            });
        }
        let cap = 8u64.min(len.saturating_sub(1).max(1) as u64);
        for off in 0..=self.k as isize {
            for t in [off, -off] {
                let slot = (t + k) as usize;
                self.x
                    .ctx()
                    .charge_ops(2 * cap * cap + len as u64 / 4 + 1)?;
                if let Some(v) = exact::ed_landau_vishkin(&xb, &yw[slot..slot + len], cap) {
                    let tab = (0..self.width())
                        .map(|s| v as f64 + 2.0 * (s as isize - self.k as isize - t).abs() as f64)
                        .collect();
                    return Ok(Some(tab));
                }
                if off == 0 {
                    break;
                }
            }
        }
        Ok(None)
    }

    fn leaf(&mut self, lo: usize) -> Result<Vec<f64>, Interrupted> {
        let c = self.x.read(lo)?;
        let ylen = self.y.len() as isize;
        let mut out = Vec::with_capacity(self.width());
        for slot in 0..self.width() {
            let s = slot as isize - self.k as isize;
            let j = lo as isize + s;
            let v = if j < 0 || j >= ylen {
                1.0
            } else {
                f64::from(self.y.read(j as usize)? != c)
            };
            out.push(v);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn range_min_plus_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..2000 {
            let w = rng.gen_range(1..40);
            let a: Vec<u64> = (0..w).map(|_| rng.gen_range(0..100)).collect();
            let got = range_min_plus_u64(&a);
            let brute: Vec<u64> = (0..w)
                .map(|s| {
                    (0..w)
                        .map(|t| a[t] + 2 * (s as i64 - t as i64).unsigned_abs())
                        .min()
                        .unwrap()
                })
                .collect();
            assert_eq!(got, brute);
        }
    }

    #[test]
    fn tree_distance_equals_ed_on_identical_strings() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..50 {
            let n = rng.gen_range(1..40);
            let x: Vec<Sym> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            assert_eq!(tree_distance_exact(&x, &x, 2, 3), 0);
        }
    }

    #[test]
    fn tree_distance_sandwich_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..200 {
            let n = rng.gen_range(2..48);
            let ell = rng.gen_range(2..4usize);
            let x: Vec<Sym> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let mut y = x.clone();
            for _ in 0..rng.gen_range(0..4) {
                let i = rng.gen_range(0..y.len().max(1));
                match rng.gen_range(0..3) {
                    0 => y[i] = rng.gen_range(0..4),
                    1 => {
                        y.insert(i, rng.gen_range(0..4));
                    }
                    _ => {
                        if y.len() > 1 {
                            y.remove(i);
                        }
                    }
                }
            }
            let ed = exact::ed_dp(&x, &y);
            let big_l = (ed as usize).max(1) + 2;
            let td = tree_distance_exact(&x, &y, ell, big_l);
            let h = tree_height(n, ell) as u64;
            assert!(td >= ed, "td={td} ed={ed}");
            assert!(
                td <= (2 * (ell as u64 - 1) * h + 1) * ed.max(0) || ed == 0 && td == 0,
                "td={td} ed={ed} bound={}",
                (2 * (ell as u64 - 1) * h + 1) * ed
            );
        }
    }
}
