//! Gap edit distance at sublinear query cost.
//!
//! The solver answers GapED(k, K): given query access to two strings, return
//! `Close` when the edit distance is at most `k` and `Far` when it exceeds
//! `K`; in between either answer is allowed. Every character read is charged
//! against a shared query tally, so "sublinear" is measured in queries, not
//! wall clock. The exact routines in [`exact`] double as uncharged test
//! oracles.

pub mod access;
pub mod error;
pub mod exact;
pub mod harness;
pub mod periodic;
pub mod periodicity;
pub mod precision;
pub mod solver;
pub mod testers;
pub mod tree;

pub use access::{Fragment, QueriedString, RunCtx};
pub use error::{Error, Interrupted};
pub use solver::{gap_ed, GapDecision, Preset, SolverConfig};

/// Symbol type: wide enough for any byte alphabet plus sentinel-free growth.
pub type Sym = u32;

/// Deterministic seed derivation: one root seed, children keyed by
/// `(purpose, index)`. splitmix64-style mixing, stable across platforms.
pub fn child_seed(root: u64, purpose: &str, index: u64) -> u64 {
    let mut h: u64 = root ^ 0x9e37_79b9_7f4a_7c15;
    for &b in purpose.as_bytes() {
        h = mix64(h ^ b as u64);
    }
    mix64(h ^ index)
}

fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
