//! Property testers over charged fragments.
//!
//! All three testers are one-sided in the same direction: a Far answer is
//! backed by a witnessed mismatch and is therefore certain, while Close is
//! a whp statement bounding the surviving Hamming error by `1/r`.

use crate::access::Fragment;
use crate::error::Interrupted;
use crate::exact;
use crate::Sym;
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqVerdict {
    /// No mismatch sampled; HD <= 1/r with probability >= 1 - delta.
    Close,
    /// Certain: a mismatch was observed at this index.
    Far { witness: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchVerdict {
    /// `x` matches `y` at window offset `k + shift` up to HD <= 1/r (whp).
    Close { shift: isize },
    /// Certain: every candidate shift has a witnessed mismatch.
    Far,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodVerdict {
    /// `x` is within HD <= 1/r (whp) of the infinite extension of `root`;
    /// `root` is primitive and `|root| <= p`.
    Close { root: Vec<Sym> },
    /// Certain: `x` is not p-periodic.
    Far,
}

fn sample_count(n: usize, r: f64, delta: f64) -> usize {
    if n == 0 {
        return 0;
    }
    let raw = r * n as f64 * (1.0 / delta).ln();
    raw.ceil().max(1.0) as usize
}

/// Equality test at rate `r`: Far is certain, Close bounds HD(x, y) by 1/r
/// with probability >= 1 - delta. Falls back to a deterministic full scan
/// when the sample budget covers the string anyway.
pub fn equality_test<R: Rng + ?Sized>(
    x: &Fragment,
    y: &Fragment,
    r: f64,
    delta: f64,
    rng: &mut R,
) -> Result<EqVerdict, Interrupted> {
    assert_eq!(x.len(), y.len(), "equality test on unequal lengths");
    let n = x.len();
    if n == 0 {
        return Ok(EqVerdict::Close);
    }
    let planned = sample_count(n, r, delta);
    if planned >= n {
        for i in 0..n {
            if x.read(i)? != y.read(i)? {
                return Ok(EqVerdict::Far { witness: i });
            }
        }
        return Ok(EqVerdict::Close);
    }
    for _ in 0..planned {
        let i = rng.gen_range(0..n);
        if x.read(i)? != y.read(i)? {
            return Ok(EqVerdict::Far { witness: i });
        }
    }
    Ok(EqVerdict::Close)
}

/// Equality of `x` against the infinite periodic extension of `root`.
/// Only the `x` side is charged.
pub fn equality_vs_extension<R: Rng + ?Sized>(
    x: &Fragment,
    root: &[Sym],
    r: f64,
    delta: f64,
    rng: &mut R,
) -> Result<EqVerdict, Interrupted> {
    assert!(!root.is_empty());
    let n = x.len();
    if n == 0 {
        return Ok(EqVerdict::Close);
    }
    let planned = sample_count(n, r, delta);
    if planned >= n {
        for i in 0..n {
            if x.read(i)? != root[i % root.len()] {
                return Ok(EqVerdict::Far { witness: i });
            }
        }
        return Ok(EqVerdict::Close);
    }
    for _ in 0..planned {
        let i = rng.gen_range(0..n);
        if x.read(i)? != root[i % root.len()] {
            return Ok(EqVerdict::Far { witness: i });
        }
    }
    Ok(EqVerdict::Close)
}

/// Matching test: find a shift `s` with `|s| <= k` such that `x` matches the
/// window of `y` at offset `k + s` (out-of-range offsets are dropped when
/// `y` is clamped short). Anchor sampling eliminates inconsistent shifts
/// with certainty; the surviving candidate is validated at rate `r`.
/// Ties prefer the smallest `|s|`, negative first.
pub fn matching_test<R: Rng + ?Sized>(
    x: &Fragment,
    y: &Fragment,
    k: usize,
    r: f64,
    delta: f64,
    rng: &mut R,
) -> Result<MatchVerdict, Interrupted> {
    let n = x.len();
    if y.len() < n {
        // A clamped-away window can never contain x exactly.
        return Ok(MatchVerdict::Far);
    }
    if n == 0 {
        return Ok(MatchVerdict::Close { shift: 0 });
    }
    let max_off = y.len() - n;
    // Candidate offsets ordered by |shift| with negative shifts first.
    let mut offsets: Vec<usize> = (0..=max_off).collect();
    offsets.sort_by_key(|&o| {
        let s = o as isize - k as isize;
        (s.abs(), s.signum())
    });
    let mut alive = vec![true; offsets.len()];
    let rounds = 3 * (usize::BITS - n.leading_zeros()) as usize + 3;
    for _ in 0..rounds {
        if alive.iter().filter(|a| **a).count() <= 1 {
            break;
        }
        let i = rng.gen_range(0..n);
        let c = x.read(i)?;
        for (slot, &o) in offsets.iter().enumerate() {
            if alive[slot] && y.read(o + i)? != c {
                alive[slot] = false;
            }
        }
    }
    for (slot, &o) in offsets.iter().enumerate() {
        if !alive[slot] {
            continue;
        }
        let win = y.sub(o as isize, (o + n) as isize);
        match equality_test(x, &win, r, delta, rng)? {
            EqVerdict::Close => {
                return Ok(MatchVerdict::Close { shift: o as isize - k as isize })
            }
            EqVerdict::Far { .. } => {}
        }
    }
    Ok(MatchVerdict::Far)
}

/// Periodicity test: decide whether `x` is close to p-periodic. The
/// candidate period is taken from the prefix `x[0..2p)` (any true period of
/// `x` induces the same primitive root there), then validated at rate `r`.
pub fn periodicity_test<R: Rng + ?Sized>(
    x: &Fragment,
    p: usize,
    r: f64,
    delta: f64,
    rng: &mut R,
) -> Result<PeriodVerdict, Interrupted> {
    assert!(p >= 1, "periodicity test needs p >= 1");
    let n = x.len();
    if n <= p {
        // Trivially p-periodic; the primitive root is read off directly.
        let w = x.materialize()?;
        if w.is_empty() {
            return Ok(PeriodVerdict::Close { root: Vec::new() });
        }
        let q = exact::period(&w);
        return Ok(PeriodVerdict::Close { root: w[..q].to_vec() });
    }
    let w = x.sub(0, (2 * p).min(n) as isize).materialize()?;
    let q = exact::period(&w);
    if q > p {
        return Ok(PeriodVerdict::Far);
    }
    let root = w[..q].to_vec();
    match equality_vs_extension(x, &root, r, delta, rng)? {
        EqVerdict::Close => Ok(PeriodVerdict::Close { root }),
        EqVerdict::Far { .. } => Ok(PeriodVerdict::Far),
    }
}
