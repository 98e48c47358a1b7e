//! Edit distance between periodic strings, for all shifts at once.
//!
//! Once a node of the partition tree is known (whp) to match a shift of a
//! p-periodic string, its whole shift table can be filled in from two small
//! all-shifts oracle calls on the period plus a shortest-path computation,
//! at zero additional charged queries: everything here operates on
//! materialized period roots, never on the input strings.

use crate::exact;
use crate::Sym;
use std::collections::BinaryHeap;

/// Exact all-shifts oracle: `out[i] = ED(pat, txt[i..i+|pat|))` for every
/// valid `i`. Landau-Vishkin with doubling per shift; the stand-in for the
/// dynamic-ED data structure this path would use at scale (approximation
/// factor 1).
pub fn ed_all_shifts_oracle(pat: &[Sym], txt: &[Sym]) -> Vec<u64> {
    let m = pat.len();
    if txt.len() < m {
        return Vec::new();
    }
    (0..=txt.len() - m).map(|i| exact::ed_lv(pat, &txt[i..i + m])).collect()
}

fn ring_dist(i: usize, j: usize, p: usize) -> u64 {
    let d = i.abs_diff(j);
    d.min(p - d) as u64
}

/// Direct O(p^2) evaluation of the shift-table recurrence:
/// `g[i] = f[i] + min_j (d * e[j] + 2 * ringdist(i, j))`.
pub fn shift_table_direct(e: &[u64], f: &[u64], d: u64) -> Vec<u64> {
    let p = e.len();
    assert_eq!(f.len(), p);
    (0..p)
        .map(|i| {
            f[i] + (0..p).map(|j| d * e[j] + 2 * ring_dist(i, j, p)).min().unwrap()
        })
        .collect()
}

/// Same table via Dijkstra on the ring graph: source `u` with edges
/// `u -> v_j` of weight `d * e[j]`, ring edges `v_i <-> v_{i+1 mod p}` of
/// weight 2, and pendant edges `v_i -> w_i` of weight `f[i]`. Distances to
/// the `w_i` reproduce the direct formula bit for bit.
pub fn shift_table_dijkstra(e: &[u64], f: &[u64], d: u64) -> Vec<u64> {
    let p = e.len();
    assert_eq!(f.len(), p);
    // dist over v-nodes only; w distances are dist[v_i] + f[i].
    let mut dist = vec![u64::MAX; p];
    let mut heap: BinaryHeap<std::cmp::Reverse<(u64, usize)>> = BinaryHeap::new();
    for j in 0..p {
        let w = d * e[j];
        if w < dist[j] {
            dist[j] = w;
            heap.push(std::cmp::Reverse((w, j)));
        }
    }
    while let Some(std::cmp::Reverse((du, v))) = heap.pop() {
        if du > dist[v] {
            continue;
        }
        for nb in [(v + 1) % p, (v + p - 1) % p] {
            let nd = du + 2;
            if nd < dist[nb] {
                dist[nb] = nd;
                heap.push(std::cmp::Reverse((nd, nb)));
            }
        }
    }
    (0..p).map(|i| dist[i] + f[i]).collect()
}

/// Periodic pattern matching with edits, all shifts.
///
/// Both `pat` and `txt` must admit `p` as a period. Returns
/// `out[i] ~ ED(pat, txt[i..i+|pat|))` for `i in [0, |txt| - |pat|]`, each
/// within a factor 3 of the true distance (exact oracle; a c-approximate
/// oracle would degrade this to 3c^2).
pub fn periodic_all_shifts(pat: &[Sym], txt: &[Sym], p: usize) -> Vec<u64> {
    assert!(p >= 1, "periodic_all_shifts needs p >= 1");
    assert!(exact::has_period(pat, p), "pattern does not have period {p}");
    assert!(exact::has_period(txt, p), "text does not have period {p}");
    let m = pat.len();
    let n = txt.len();
    if n < m {
        return Vec::new();
    }
    let shifts = n - m;
    // Normalize the text to length m + p - 1; shifts repeat modulo p beyond
    // that because the text is exactly p-periodic.
    let norm_len = m + p - 1;
    let txt_ext: Vec<Sym> = if n >= norm_len {
        txt[..norm_len].to_vec()
    } else {
        let mut v = txt.to_vec();
        while v.len() < norm_len {
            let i = v.len();
            // extension by periodicity; for txt shorter than p repeat the
            // available suffix pattern
            let step = p.min(i.max(1));
            v.push(v[i - step]);
        }
        v
    };
    let base: Vec<u64> = if m < p {
        // Degenerate: the pattern is shorter than one period; answer every
        // residue directly.
        ed_all_shifts_oracle(pat, &txt_ext)
    } else {
        let d = (m / p) as u64;
        let r = m % p;
        let e = ed_all_shifts_oracle(&pat[..p], &txt_ext[..2 * p - 1]);
        debug_assert_eq!(e.len(), p);
        let f: Vec<u64> = if r == 0 {
            vec![0; p]
        } else {
            let fr = ed_all_shifts_oracle(&pat[..r], &txt_ext[..p + r - 1]);
            debug_assert_eq!(fr.len(), p);
            fr
        };
        shift_table_dijkstra(&e, &f, d)
    };
    (0..=shifts).map(|i| base[i % base.len()]).collect()
}

/// The three-point sandwich for same-length p-periodic strings:
/// returns `mid = ED(P[0..r], Q[0..r]) + min_{|s|<p} (d * ED(P, rot(Q, s)) + 2|s|)`
/// with `P = x[0..p)`, `Q = y[0..p)`, `d = floor(n/p)`, `r = n mod p`,
/// satisfying `ED(x, y) <= mid <= 3 * ED(x, y)`.
pub fn periodic_ed_sandwich(x: &[Sym], y: &[Sym], p: usize) -> u64 {
    assert_eq!(x.len(), y.len());
    assert!(p >= 1 && p <= x.len());
    assert!(exact::has_period(x, p) && exact::has_period(y, p));
    let n = x.len();
    let d = (n / p) as u64;
    let r = n % p;
    let pp = &x[..p];
    let qq = &y[..p];
    let head = exact::ed_dp(&pp[..r], &qq[..r]);
    let mut best = u64::MAX;
    for s in -(p as i64 - 1)..=(p as i64 - 1) {
        let rot: Vec<Sym> = (0..p)
            .map(|i| qq[((i as i64 + s).rem_euclid(p as i64)) as usize])
            .collect();
        let cost = d * exact::ed_dp(pp, &rot) + 2 * s.unsigned_abs();
        best = best.min(cost);
    }
    head + best
}

/// Shift table for a matched, periodic tree node, computed purely from the
/// certified period root `q_root`: the idealized node content is
/// `T = root^*[0..len_y)` and `S = T[o..o+len_x)` with `o = k + s_star`.
/// Entry `s` (for `s in [-k, k]`) approximates `ED(S, T[k+s .. k+s+len_x))`.
/// No charged queries are issued.
pub fn fast_shifts_ed(
    q_root: &[Sym],
    s_star: isize,
    k: usize,
    len_x: usize,
    len_y: usize,
    p: usize,
) -> Vec<u64> {
    assert!(!q_root.is_empty());
    assert!(len_y >= len_x);
    let width = 2 * k + 1;
    if len_x == 0 {
        return vec![0; width];
    }
    let t: Vec<Sym> = (0..len_y).map(|i| q_root[i % q_root.len()]).collect();
    let max_off = len_y - len_x;
    let o_star = (k as isize + s_star).clamp(0, max_off as isize) as usize;
    let s: Vec<Sym> = t[o_star..o_star + len_x].to_vec();
    // common exact period: the smallest multiple of |root| that is >= p
    let p0 = q_root.len() * p.div_ceil(q_root.len()).max(1);
    let g = periodic_all_shifts(&s, &t, p0);
    debug_assert_eq!(g.len(), max_off + 1);
    (0..width)
        .map(|slot| {
            let sh = slot as isize - k as isize;
            let o = (k as isize + sh).clamp(0, max_off as isize) as usize;
            g[o]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dijkstra_matches_direct_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..500 {
            let p = rng.gen_range(1..40);
            let d = rng.gen_range(0..6);
            let e: Vec<u64> = (0..p).map(|_| rng.gen_range(0..20)).collect();
            let f: Vec<u64> = (0..p).map(|_| rng.gen_range(0..20)).collect();
            assert_eq!(shift_table_dijkstra(&e, &f, d), shift_table_direct(&e, &f, d));
        }
    }

    #[test]
    fn all_shifts_sandwich_exhaustive_small() {
        // exhaustive over binary period roots, p <= 3, pattern lengths <= 9,
        // text length <= 12
        for p in 1usize..=3 {
            for root_a in 0..(1u32 << p) {
                for root_b in 0..(1u32 << p) {
                    let ra: Vec<Sym> = (0..p).map(|i| (root_a >> i) & 1).collect();
                    let rb: Vec<Sym> = (0..p).map(|i| (root_b >> i) & 1).collect();
                    for m in 1..=9usize {
                        for n in m..=12usize {
                            let pat: Vec<Sym> =
                                (0..m).map(|i| ra[i % p]).collect();
                            let txt: Vec<Sym> =
                                (0..n).map(|i| rb[i % p]).collect();
                            let got = periodic_all_shifts(&pat, &txt, p);
                            for (i, &g) in got.iter().enumerate() {
                                let ed = exact::ed_dp(&pat, &txt[i..i + m]);
                                assert!(
                                    g >= ed && g <= 3 * ed,
                                    "g={g} ed={ed} p={p} pat={pat:?} txt={txt:?} i={i}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn all_shifts_repeat_modulo_p_on_long_texts() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let p = rng.gen_range(1..5);
            let root: Vec<Sym> = (0..p).map(|_| rng.gen_range(0..2)).collect();
            let m = rng.gen_range(p..4 * p + 1);
            let n = rng.gen_range(m + p..m + 4 * p);
            let pat: Vec<Sym> = (0..m).map(|i| root[i % p]).collect();
            let txt: Vec<Sym> = (0..n).map(|i| root[i % p]).collect();
            let g = periodic_all_shifts(&pat, &txt, p);
            for i in 0..g.len() {
                assert_eq!(g[i], g[i % p], "i={i} p={p}");
            }
        }
    }

    #[test]
    fn sandwich_bounds_hold_exhaustively() {
        // all binary (x, y) built from roots of equal p <= 4, n <= 16
        for p in 1usize..=4 {
            for n in p..=16usize {
                for a in 0..(1u32 << p) {
                    for b in 0..(1u32 << p) {
                        let x: Vec<Sym> = (0..n).map(|i| (a >> (i % p)) & 1).collect();
                        let y: Vec<Sym> = (0..n).map(|i| (b >> (i % p)) & 1).collect();
                        let mid = periodic_ed_sandwich(&x, &y, p);
                        let ed = exact::ed_dp(&x, &y);
                        assert!(mid >= ed, "mid={mid} ed={ed} x={x:?} y={y:?} p={p}");
                        assert!(mid <= 3 * ed, "mid={mid} ed={ed} x={x:?} y={y:?} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn fast_shifts_zero_at_true_offset() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..200 {
            let q: Vec<Sym> = {
                let l = rng.gen_range(1..5);
                (0..l).map(|_| rng.gen_range(0..3)).collect()
            };
            let k = rng.gen_range(0..5usize);
            let len_x = rng.gen_range(1..30);
            let len_y = len_x + 2 * k;
            let s_star = rng.gen_range(-(k as isize)..=k as isize);
            let tab = fast_shifts_ed(&q, s_star, k, len_x, len_y, q.len());
            assert_eq!(tab.len(), 2 * k + 1);
            let slot = (s_star + k as isize) as usize;
            assert_eq!(tab[slot], 0, "table {tab:?} s*={s_star}");
        }
    }
}
