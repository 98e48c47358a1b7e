//! Exact string routines on plain slices.
//!
//! These are the uncharged oracles: test harnesses and the periodic-distance
//! path use them directly, and the charged algorithms call them only on
//! windows that were already read (and therefore paid for).

use crate::Sym;

/// Full dynamic-programming edit distance, two-row, O(|x| * |y|).
pub fn ed_dp(x: &[Sym], y: &[Sym]) -> u64 {
    let (n, m) = (x.len(), y.len());
    if n == 0 {
        return m as u64;
    }
    let mut prev: Vec<u64> = (0..=m as u64).collect();
    let mut cur = vec![0u64; m + 1];
    for i in 1..=n {
        cur[0] = i as u64;
        for j in 1..=m {
            let sub = prev[j - 1] + u64::from(x[i - 1] != y[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

/// Landau-Vishkin bounded edit distance: `Some(ed)` if `ed <= cap`, else
/// `None`. O((|x| + |y|) * cap) time via furthest-reach diagonals.
pub fn ed_landau_vishkin(x: &[Sym], y: &[Sym], cap: u64) -> Option<u64> {
    let n = x.len() as isize;
    let m = y.len() as isize;
    if (n - m).unsigned_abs() as u64 > cap {
        return None;
    }
    let cap = cap.min((n + m) as u64) as isize;
    // reach[d] = furthest row i with x[..i] matched to y[..i+d] using e edits.
    let width = (2 * cap + 1) as usize;
    let off = cap;
    let idx = |d: isize| (d + off) as usize;
    let mut reach = vec![-1isize; width];
    let slide = |mut i: isize, d: isize| {
        while i < n && i + d < m && x[i as usize] == y[(i + d) as usize] {
            i += 1;
        }
        i
    };
    let start = slide(0, 0);
    if start == n && start == m {
        return Some(0);
    }
    reach[idx(0)] = start;
    for e in 1..=cap {
        let mut next = vec![-1isize; width];
        for d in -e..=e {
            if (d - 0).abs() > e {
                continue;
            }
            let mut best = -1isize;
            // substitution
            if reach[idx(d)] >= 0 {
                best = best.max(reach[idx(d)] + 1);
            }
            // deletion from x (move down a row, same column): diagonal d+1
            if d + 1 <= cap && reach[idx(d + 1)] >= 0 {
                best = best.max(reach[idx(d + 1)] + 1);
            }
            // insertion into x: diagonal d-1, row unchanged
            if d - 1 >= -cap && reach[idx(d - 1)] >= 0 {
                best = best.max(reach[idx(d - 1)]);
            }
            if best < 0 {
                continue;
            }
            let best = slide(best.min(n), d);
            next[idx(d)] = next[idx(d)].max(best.min(n));
            if best >= n && n + d >= m && d == m - n {
                return Some(e as u64);
            }
        }
        reach = next;
        if reach[idx(m - n)] >= n {
            return Some(e as u64);
        }
    }
    None
}

/// Exact edit distance via Landau-Vishkin with doubling cap.
pub fn ed_lv(x: &[Sym], y: &[Sym]) -> u64 {
    if x == y {
        return 0;
    }
    let mut cap = 1u64;
    loop {
        if let Some(ed) = ed_landau_vishkin(x, y, cap) {
            return ed;
        }
        cap = (cap * 2).min((x.len() + y.len()) as u64);
    }
}

/// Hamming distance of equal-length slices.
pub fn hamming(x: &[Sym], y: &[Sym]) -> u64 {
    assert_eq!(x.len(), y.len(), "hamming on unequal lengths");
    x.iter().zip(y).filter(|(a, b)| a != b).count() as u64
}

/// Smallest period of `x`: the least `q >= 1` with `x[i] = x[i+q]` for all
/// valid `i`. Computed from the KMP failure function. `per(empty) = 0`.
pub fn period(x: &[Sym]) -> usize {
    if x.is_empty() {
        return 0;
    }
    let f = failure_function(x);
    x.len() - f[x.len()]
}

/// Does `x` admit `p` as a period (`x[i] == x[i+p]` for all `i < |x|-p`)?
pub fn has_period(x: &[Sym], p: usize) -> bool {
    if p == 0 {
        return x.is_empty();
    }
    (p..x.len()).all(|i| x[i] == x[i - p])
}

fn failure_function(x: &[Sym]) -> Vec<usize> {
    let n = x.len();
    let mut f = vec![0usize; n + 1];
    let mut k = 0usize;
    for i in 1..n {
        while k > 0 && x[i] != x[k] {
            k = f[k];
        }
        if x[i] == x[k] {
            k += 1;
        }
        f[i + 1] = k;
    }
    f
}

/// All start positions of `pattern` in `text` (KMP, overlaps included).
pub fn find_occurrences(pattern: &[Sym], text: &[Sym]) -> Vec<usize> {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return Vec::new();
    }
    let f = failure_function(pattern);
    let mut out = Vec::new();
    let mut k = 0usize;
    for (i, &c) in text.iter().enumerate() {
        while k > 0 && c != pattern[k] {
            k = f[k];
        }
        if c == pattern[k] {
            k += 1;
        }
        if k == m {
            out.push(i + 1 - m);
            k = f[k];
        }
    }
    out
}

/// Length of the longest prefix of `x` whose smallest period is at most `p`.
/// Any string of length <= p qualifies trivially.
pub fn longest_periodic_prefix(x: &[Sym], p: usize) -> usize {
    assert!(p >= 1);
    let n = x.len();
    if n <= p {
        return n;
    }
    let mut best = p;
    for q in 1..=p {
        let mut len = q.min(n);
        while len < n && x[len] == x[len - q] {
            len += 1;
        }
        best = best.max(len);
    }
    best
}

/// Exact block periodicity BP_p(x): the minimum number of consecutive
/// substrings covering `x`, each with period at most `p`. Greedy longest
/// p-periodic prefix is optimal (any feasible partition's first block is a
/// prefix of the greedy block, so greedy dominates block by block).
pub fn bp_exact(x: &[Sym], p: usize) -> u64 {
    assert!(p >= 1, "bp_exact needs p >= 1");
    let mut rest = x;
    let mut blocks = 0u64;
    while !rest.is_empty() {
        let take = longest_periodic_prefix(rest, p);
        debug_assert!(take >= 1);
        rest = &rest[take..];
        blocks += 1;
    }
    blocks
}
