//! Charged string access.
//!
//! Every read of an input character bumps a shared tally; reading the same
//! position twice charges twice. All sublinear-side routines go through
//! [`Fragment::read`]. Materialized scratch strings (period roots, DP tables)
//! are plain slices and cost nothing beyond the reads that built them.

use crate::error::Interrupted;
use crate::Sym;
use std::cell::Cell;
use std::rc::Rc;

/// Shared per-run counters: charged queries, abstract operation units and an
/// optional operation budget. One instance per solver run; cloned handles
/// share the same cells.
#[derive(Clone, Default)]
pub struct RunCtx {
    inner: Rc<CtxInner>,
}

#[derive(Default)]
struct CtxInner {
    queries: Cell<u64>,
    ops: Cell<u64>,
    budget: Cell<Option<u64>>,
}

impl RunCtx {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn queries(&self) -> u64 {
        self.inner.queries.get()
    }

    pub fn ops(&self) -> u64 {
        self.inner.ops.get()
    }

    /// Remaining budget, if a limit is set.
    pub fn budget_remaining(&self) -> Option<u64> {
        self.inner.budget.get()
    }

    pub fn set_budget(&self, limit: Option<u64>) {
        self.inner.budget.set(limit);
    }

    /// Charge `units` operation units (queries charge separately on top).
    pub fn charge_ops(&self, units: u64) -> Result<(), Interrupted> {
        self.inner.ops.set(self.inner.ops.get() + units);
        match self.inner.budget.get() {
            Some(left) if left <= units => {
                self.inner.budget.set(Some(0));
                Err(Interrupted)
            }
            Some(left) => {
                self.inner.budget.set(Some(left - units));
                Ok(())
            }
            None => Ok(()),
        }
    }

    fn charge_query(&self) -> Result<(), Interrupted> {
        self.inner.queries.set(self.inner.queries.get() + 1);
        self.charge_ops(1)
    }
}

/// An input string behind the charged-query interface.
#[derive(Clone)]
pub struct QueriedString {
    data: Rc<[Sym]>,
    ctx: RunCtx,
}

impl QueriedString {
    pub fn new(data: Vec<Sym>, ctx: RunCtx) -> Self {
        Self { data: data.into(), ctx }
    }

    pub fn from_bytes(bytes: &[u8], ctx: RunCtx) -> Self {
        Self::new(bytes.iter().map(|&b| b as Sym).collect(), ctx)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn ctx(&self) -> &RunCtx {
        &self.ctx
    }

    /// Charged read. Panics on out-of-range index (contract violation).
    pub fn read(&self, i: usize) -> Result<Sym, Interrupted> {
        self.ctx.charge_query()?;
        Ok(self.data[i])
    }

    /// Uncharged view of the raw data, for oracles and test assertions only.
    pub fn raw(&self) -> &[Sym] {
        &self.data
    }

    pub fn fragment(&self, start: isize, end: isize) -> Fragment {
        Fragment::new(self.clone(), start, end)
    }

    pub fn whole(&self) -> Fragment {
        self.fragment(0, self.len() as isize)
    }
}

/// A half-open window `[start, end)` of a queried string, clamped to the
/// string bounds. Fragments are cheap to clone and re-slice; reads are
/// charged against the parent string's tally.
#[derive(Clone)]
pub struct Fragment {
    src: QueriedString,
    start: usize,
    end: usize,
}

impl Fragment {
    /// Out-of-range endpoints clamp to `[0, |src|]`; an inverted range
    /// becomes the empty fragment at the clamped start.
    pub fn new(src: QueriedString, start: isize, end: isize) -> Self {
        let n = src.len() as isize;
        let s = start.clamp(0, n) as usize;
        let e = end.clamp(0, n) as usize;
        let e = e.max(s);
        Self { src, start: s, end: e }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    /// Absolute start offset in the parent string.
    pub fn offset(&self) -> usize {
        self.start
    }

    pub fn ctx(&self) -> &RunCtx {
        self.src.ctx()
    }

    pub fn source(&self) -> &QueriedString {
        &self.src
    }

    /// Charged read of local index `i`.
    pub fn read(&self, i: usize) -> Result<Sym, Interrupted> {
        assert!(i < self.len(), "fragment read out of range: {i} >= {}", self.len());
        self.src.read(self.start + i)
    }

    /// Charged read at local index `i + shift`, clamped into the fragment.
    /// Mirrors the clamped-window convention used by the partition tree.
    pub fn rotation_read(&self, shift: isize, i: usize) -> Result<Sym, Interrupted> {
        let n = self.len() as isize;
        debug_assert!(n > 0);
        let j = (i as isize + shift).clamp(0, n - 1) as usize;
        self.read(j)
    }

    /// Sub-fragment with endpoints relative to this fragment, clamped.
    pub fn sub(&self, start: isize, end: isize) -> Fragment {
        let s = self.start as isize;
        Fragment::new(self.src.clone(), s + start, s + end)
    }

    /// Charged read of the whole window into an owned vector.
    pub fn materialize(&self) -> Result<Vec<Sym>, Interrupted> {
        (0..self.len()).map(|i| self.read(i)).collect()
    }

    /// Uncharged view, for oracles and tests only.
    pub fn raw(&self) -> &[Sym] {
        &self.src.raw()[self.start..self.end]
    }
}
