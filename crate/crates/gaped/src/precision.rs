//! Precision sampling: estimate a sum from per-item estimates whose
//! permitted error scales with a per-item precision `u_i` drawn ahead of
//! time, at total additive cost `beta` instead of `beta * l`.
//!
//! The distribution takes `u` as the minimum of `m` uniform draws from
//! (0, 1], with `m = ceil(8 * eps^-2 * ln(2/delta))`. Recovery is a
//! Horvitz-Thompson sum over the items whose priority `a_i / u_i` clears a
//! threshold `4 * beta / eps`; inclusion probabilities are computed from the
//! known CDF `P(u < x) = 1 - (1-x)^m`. Pure-noise items (value <= beta * u_i)
//! have priority at most `beta` and never clear the threshold, while an
//! included item has `u_i < a_i / t`, so its absolute noise is at most
//! `beta * a_i / t`: summed over any inclusion set this stays below
//! `eps * sum(a) / 4`.

use rand::Rng;

#[derive(Debug, Clone, Copy)]
pub struct PrecisionDist {
    pub eps: f64,
    pub delta: f64,
    /// Internal repetition count baked into the distribution.
    pub m: u32,
}

impl PrecisionDist {
    pub fn new(eps: f64, delta: f64) -> Self {
        assert!(eps > 0.0 && eps <= 1.0, "eps out of range: {eps}");
        assert!(delta > 0.0 && delta < 1.0, "delta out of range: {delta}");
        let m = (8.0 * eps.powi(-2) * (2.0 / delta).ln()).ceil();
        assert!(m.is_finite() && m >= 1.0 && m <= u32::MAX as f64);
        Self { eps, delta, m: m as u32 }
    }

    /// Draw a precision `u` in (0, 1]: the minimum of `m` uniforms, sampled
    /// in one shot through the inverse CDF `u = 1 - (1 - U)^(1/m)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let v: f64 = rng.gen(); // [0, 1)
        let u = 1.0 - (1.0 - v).powf(1.0 / self.m as f64);
        u.max(f64::MIN_POSITIVE)
    }

    /// Draw truncated away from the extreme lower tail: values below the
    /// 1/(200n) quantile are clamped up to it, so that 1/u stays integrable
    /// (efficiency clause) without disturbing the bulk of the distribution.
    pub fn sample_truncated<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> f64 {
        let u = self.sample(rng);
        u.max(self.lower_quantile(n))
    }

    /// The 1/(200n) lower quantile of the distribution.
    pub fn lower_quantile(&self, n: usize) -> f64 {
        let q = 1.0 / (200.0 * n.max(1) as f64);
        1.0 - (1.0 - q).powf(1.0 / self.m as f64)
    }

    /// P(u < x) for this distribution.
    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x >= 1.0 {
            1.0
        } else {
            1.0 - (1.0 - x).powi(self.m as i32)
        }
    }

    /// Recover an estimate of `sum(a_i)` from noisy per-item estimates.
    ///
    /// Accuracy contract, each with probability >= 1 - delta over the draw
    /// of the precisions:
    /// - if `est_i >= a_i / alpha - beta * u_i` for all i, the result is at
    ///   least `sum(a_i) / ((1 + eps) * alpha) - beta`;
    /// - if `est_i <= alpha * a_i + beta * u_i` for all i, the result is at
    ///   most `(1 + eps) * alpha * sum(a_i) + beta`.
    ///
    /// The result is monotone in each `est_i` and scale-equivariant when
    /// `beta = 0` (where it degenerates to the plain sum).
    pub fn recover(&self, estimates: &[f64], precisions: &[f64], beta: f64) -> f64 {
        assert_eq!(estimates.len(), precisions.len());
        assert!(beta >= 0.0);
        let t = 4.0 * beta / self.eps;
        let mut total = 0.0f64;
        for (&est, &u) in estimates.iter().zip(precisions) {
            assert!(u > 0.0 && u <= 1.0, "precision out of range: {u}");
            let a = est.max(0.0);
            if t == 0.0 {
                total += a;
                continue;
            }
            if a / u > t {
                let pi = self.cdf((a / t).min(1.0));
                debug_assert!(pi > 0.0);
                total += a / pi;
            }
        }
        total
    }
}

/// Free-function form of the sampler.
pub fn sample_precision<R: Rng + ?Sized>(eps: f64, delta: f64, rng: &mut R) -> f64 {
    PrecisionDist::new(eps, delta).sample(rng)
}

/// Free-function form of the recovery routine.
pub fn recover(
    estimates: &[f64],
    precisions: &[f64],
    eps: f64,
    delta: f64,
    _alpha: f64,
    beta: f64,
) -> f64 {
    PrecisionDist::new(eps, delta).recover(estimates, precisions, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_item_exact_estimate_is_recovered() {
        let d = PrecisionDist::new(0.3, 0.05);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let u = d.sample(&mut rng);
            let a = rng.gen_range(0.0..100.0);
            let r = d.recover(&[a], &[u], 0.0);
            assert!((r - a).abs() < 1e-9, "r={r} a={a}");
        }
    }

    #[test]
    fn beta_zero_is_scale_equivariant_sum() {
        let d = PrecisionDist::new(0.2, 0.02);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let us: Vec<f64> = (0..20).map(|_| d.sample(&mut rng)).collect();
        let a: Vec<f64> = (0..20).map(|_| rng.gen_range(0.0..10.0)).collect();
        let r1 = d.recover(&a, &us, 0.0);
        let scaled: Vec<f64> = a.iter().map(|x| 7.5 * x).collect();
        let r2 = d.recover(&scaled, &us, 0.0);
        assert!((r2 - 7.5 * r1).abs() < 1e-6);
        assert!((r1 - a.iter().sum::<f64>()).abs() < 1e-9);
    }

    #[test]
    fn recover_is_monotone_in_each_estimate() {
        let d = PrecisionDist::new(0.25, 0.05);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let l = rng.gen_range(1..12);
            let us: Vec<f64> = (0..l).map(|_| d.sample(&mut rng)).collect();
            let mut a: Vec<f64> = (0..l).map(|_| rng.gen_range(0.0..20.0)).collect();
            let beta = rng.gen_range(0.0..3.0);
            let base = d.recover(&a, &us, beta);
            let i = rng.gen_range(0..l);
            a[i] += rng.gen_range(0.0..5.0);
            let bumped = d.recover(&a, &us, beta);
            assert!(
                bumped >= base - 1e-9,
                "bumped={bumped} base={base} a={a:?} us={us:?} beta={beta}"
            );
        }
    }

    /// Monte-Carlo check of both accuracy clauses at the adversarial
    /// boundary. This is the module-level version of the acceptance test;
    /// thresholds carry the documented +0.05 slack.
    #[test]
    fn boundary_failure_rates_within_tolerance() {
        for (eps, delta) in [(0.3f64, 0.05f64), (0.5, 0.02)] {
            let d = PrecisionDist::new(eps, delta);
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            let trials = 1500;
            let mut upper_fail = 0;
            let mut lower_fail = 0;
            for _ in 0..trials {
                let l = rng.gen_range(1..40);
                let alpha = 1.0 + rng.gen_range(0.0..1.0f64);
                let beta = rng.gen_range(0.0..4.0f64);
                let a: Vec<f64> = (0..l)
                    .map(|_| {
                        if rng.gen_bool(0.3) {
                            0.0
                        } else {
                            rng.gen_range(0..30) as f64
                        }
                    })
                    .collect();
                let s: f64 = a.iter().sum();
                let us: Vec<f64> = (0..l).map(|_| d.sample(&mut rng)).collect();
                let hi: Vec<f64> =
                    a.iter().zip(&us).map(|(x, u)| alpha * x + beta * u).collect();
                let lo: Vec<f64> = a
                    .iter()
                    .zip(&us)
                    .map(|(x, u)| (x / alpha - beta * u).max(0.0))
                    .collect();
                if d.recover(&hi, &us, beta) > (1.0 + eps) * alpha * s + beta + 1e-9 {
                    upper_fail += 1;
                }
                if d.recover(&lo, &us, beta) < s / ((1.0 + eps) * alpha) - beta - 1e-9 {
                    lower_fail += 1;
                }
            }
            let tol = delta + 0.05;
            let up = upper_fail as f64 / trials as f64;
            let lo = lower_fail as f64 / trials as f64;
            assert!(up <= tol, "upper clause failure rate {up} > {tol} at eps={eps}");
            assert!(lo <= tol, "lower clause failure rate {lo} > {tol} at eps={eps}");
        }
    }

    #[test]
    fn truncated_inverse_precision_has_bounded_mean() {
        // Efficiency clause: E[1/u] under truncation is O(eps^-2 polylog).
        let d = PrecisionDist::new(0.5, 0.05);
        let n = 4096;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let trials = 20000;
        let mean_inv: f64 = (0..trials)
            .map(|_| 1.0 / d.sample_truncated(n, &mut rng))
            .sum::<f64>()
            / trials as f64;
        // m * (1 + ln(200 n m)) is the analytic truncated-mean bound.
        let m = d.m as f64;
        let bound = m * (1.0 + (200.0 * n as f64 * m).ln());
        assert!(mean_inv <= bound, "mean 1/u = {mean_inv} exceeds bound {bound}");
        assert!(mean_inv >= m / 4.0, "mean 1/u = {mean_inv} suspiciously small");
    }
}
