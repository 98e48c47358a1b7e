//! Breaks and block periodicity.
//!
//! A position `i` is a `k`-break of `X` when the window `X[i..i+3k)` has
//! smallest period greater than `k`. Break counts at multiples of `k`
//! sandwich the exact block periodicity `BP_k`, which is what lets the
//! splitter certify piece structure from a sparse sample.

use crate::access::Fragment;
use crate::error::Interrupted;
use crate::exact;
use crate::Sym;

/// Charged break test: reads the `3k` window at `i` and checks its period.
/// Requires `i + 3k <= |x|`.
pub fn is_break(x: &Fragment, i: usize, k: usize) -> Result<bool, Interrupted> {
    assert!(k >= 1, "is_break needs k >= 1");
    assert!(
        i + 3 * k <= x.len(),
        "break window [{i}, {}) exceeds |x| = {}",
        i + 3 * k,
        x.len()
    );
    let w = x.sub(i as isize, (i + 3 * k) as isize).materialize()?;
    Ok(exact::period(&w) > k)
}

/// Uncharged oracle: number of `k`-breaks among multiples of `k` in
/// `[0, n - 3k]`.
pub fn count_breaks_exact(x: &[Sym], k: usize) -> u64 {
    assert!(k >= 1);
    if x.len() < 3 * k {
        return 0;
    }
    (0..=x.len() - 3 * k)
        .step_by(k)
        .filter(|&i| exact::period(&x[i..i + 3 * k]) > k)
        .count() as u64
}

/// Positions (multiples of `k`) eligible for break sampling.
pub fn break_candidates(n: usize, k: usize) -> impl Iterator<Item = usize> {
    let hi = n.checked_sub(3 * k);
    (0..).map(move |j| j * k).take_while(move |&i| hi.is_some_and(|h| i <= h))
}
