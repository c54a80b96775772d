//! Exact h-super edge-connectivity.
//!
//! A minimum h-edge-cut is always the edge boundary of some bipartition
//! `(X, V \ X)` in which both sides induce minimum degree at least `h`: if
//! `F` is an h-edge-cut and `X` a component of `G - F`, then the boundary of
//! `X` is contained in `F` and is itself an h-edge-cut. The solvers below
//! search bipartitions directly.
//!
//! Vertex 0 is the anchor and always sits on the complement side, so each
//! bipartition is visited once. Among minimum cuts the witness side with the
//! smallest bitmask wins, which makes every method and every thread count
//! return the same witness.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::builder::HlGraph;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, VertexSet};

/// Default largest order accepted by the exhaustive searches.
pub const DEFAULT_GATE: usize = 32;
/// Bitmask width; no override goes past this.
pub const HARD_GATE: usize = 64;

const CHUNK: u64 = 1 << 12;
const DEADLINE_POLL: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    BranchAndBound,
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub method: Method,
    /// Wall-clock limit; exceeding it yields [`Error::Incomplete`].
    pub budget: Option<Duration>,
    /// Worker threads for exhaustive enumeration. Branch-and-bound runs on
    /// one thread regardless.
    pub threads: usize,
    pub gate: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            method: Method::Exhaustive,
            budget: None,
            threads: 1,
            gate: DEFAULT_GATE,
        }
    }
}

impl SolverOptions {
    pub fn with_method(method: Method) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }
}

/// A minimum h-edge-cut together with the side that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutReport {
    pub h: usize,
    pub value: usize,
    pub witness_cut: EdgeSet,
    pub witness_side: VertexSet,
    pub method: Method,
    /// Bipartitions scanned (exhaustive) or search nodes expanded
    /// (branch-and-bound).
    pub subsets_examined: u64,
    pub elapsed: Duration,
}

/// Search statistics for an instance with no h-edge-cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoCut {
    pub h: usize,
    pub method: Method,
    pub subsets_examined: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LambdaOutcome {
    Exists(CutReport),
    Nonexistent(NoCut),
}

impl LambdaOutcome {
    pub fn h(&self) -> usize {
        match self {
            Self::Exists(r) => r.h,
            Self::Nonexistent(n) => n.h,
        }
    }

    pub fn value(&self) -> Option<usize> {
        self.report().map(|r| r.value)
    }

    pub fn report(&self) -> Option<&CutReport> {
        match self {
            Self::Exists(r) => Some(r),
            Self::Nonexistent(_) => None,
        }
    }

    /// The same outcome with `elapsed` zeroed, for byte-level comparisons.
    pub fn without_timing(&self) -> Self {
        let mut out = self.clone();
        match &mut out {
            Self::Exists(r) => r.elapsed = Duration::ZERO,
            Self::Nonexistent(n) => n.elapsed = Duration::ZERO,
        }
        out
    }

    /// Serialized `(h, value, witness)` only; identical across methods.
    pub fn result_json(&self) -> String {
        #[derive(Serialize)]
        struct Key<'a> {
            h: usize,
            value: Option<usize>,
            witness_cut: Option<&'a EdgeSet>,
            witness_side: Option<&'a VertexSet>,
        }
        let r = self.report();
        serde_json::to_string(&Key {
            h: self.h(),
            value: self.value(),
            witness_cut: r.map(|r| &r.witness_cut),
            witness_side: r.map(|r| &r.witness_side),
        })
        .expect("serializable")
    }
}

/// Whether `G - f` is disconnected with minimum degree at least `h`.
pub fn is_h_edge_cut(g: &Graph, f: &EdgeSet, h: usize) -> Result<bool> {
    if g.is_connected(f)? {
        return Ok(false);
    }
    let mut lost = vec![0usize; g.order()];
    for e in f {
        lost[e.u()] += 1;
        lost[e.v()] += 1;
    }
    Ok((0..g.order()).all(|v| g.neighbors(v).len() - lost[v] >= h))
}

/// All edges between the embedded `G_h` block and the rest of the graph.
pub fn canonical_cut(hl: &HlGraph, h: usize) -> Result<EdgeSet> {
    let n = hl.dimension();
    if h >= n {
        return Err(Error::LevelOutOfRange {
            h,
            min: 0,
            max: n.saturating_sub(1),
        });
    }
    Ok(hl.graph().edge_boundary(&hl.block_vertices(h)?))
}

/// `2^h (n - h)`.
pub fn theorem_value(n: usize, h: usize) -> usize {
    (1usize << h) * (n - h)
}

/// Exact minimum h-edge-cut of a connected graph, or `Nonexistent` when no
/// bipartition has minimum degree `h` on both sides.
pub fn lambda_sh_exact(g: &Graph, h: usize, opts: &SolverOptions) -> Result<LambdaOutcome> {
    let order = g.order();
    let gate = opts.gate.min(HARD_GATE);
    if order > gate {
        return Err(Error::GateExceeded { order, gate });
    }
    if !g.is_connected(&EdgeSet::new())? {
        return Err(Error::Disconnected);
    }
    let start = Instant::now();
    let adj = g.masks().expect("order within the bitmask gate");
    let deadline = opts.budget.map(|b| start + b);

    let (best, examined, complete) = match opts.method {
        Method::Exhaustive => exhaustive(&adj, h, opts.threads, deadline)?,
        Method::BranchAndBound => BranchAndBound::run(&adj, h, deadline),
    };
    let elapsed = start.elapsed();
    let report = |(value, mask): (u32, u64)| {
        let side = VertexSet::from_mask(mask);
        CutReport {
            h,
            value: value as usize,
            witness_cut: g.edge_boundary(&side),
            witness_side: side,
            method: opts.method,
            subsets_examined: examined,
            elapsed,
        }
    };
    if !complete {
        return Err(Error::Incomplete {
            budget: opts.budget.unwrap_or_default(),
            elapsed,
            best: best.map(|b| Box::new(report(b))),
        });
    }
    Ok(match best {
        Some(b) => LambdaOutcome::Exists(report(b)),
        None => LambdaOutcome::Nonexistent(NoCut {
            h,
            method: opts.method,
            subsets_examined: examined,
            elapsed,
        }),
    })
}

type Best = Option<(u32, u64)>;

fn better(a: Best, b: Best) -> Best {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Boundary size of `x` if both sides have induced minimum degree `>= h`.
#[inline]
fn bipartition_cut(adj: &[u64], all: u64, x: u64, h: u32) -> Option<u32> {
    let y = all & !x;
    let mut cut = 0;
    let mut rest = x;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (adj[v] & x).count_ones() < h {
            return None;
        }
        cut += (adj[v] & y).count_ones();
    }
    if h > 0 {
        let mut rest = y;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (adj[v] & y).count_ones() < h {
                return None;
            }
        }
    }
    Some(cut)
}

fn exhaustive(adj: &[u64], h: usize, threads: usize, deadline: Option<Instant>) -> Result<(Best, u64, bool)> {
    let n = adj.len();
    if n < 2 {
        return Ok((None, 0, true));
    }
    let h = u32::try_from(h).unwrap_or(u32::MAX);
    let all = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    // X ranges over nonempty subsets of {1..n}, encoded as m << 1.
    let total = (1u64 << (n - 1)) - 1;
    let chunks = total.div_ceil(CHUNK);
    let timed_out = AtomicBool::new(false);

    let scan = |c: u64| -> Best {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            timed_out.store(true, Ordering::Relaxed);
            return None;
        }
        let lo = 1 + c * CHUNK;
        let hi = (lo + CHUNK).min(total + 1);
        let mut best: Best = None;
        for m in lo..hi {
            let x = m << 1;
            if let Some(cut) = bipartition_cut(adj, all, x, h) {
                best = better(best, Some((cut, x)));
            }
        }
        best
    };

    let best = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
        pool.install(|| (0..chunks).into_par_iter().map(scan).reduce(|| None, better))
    } else {
        (0..chunks).map(scan).fold(None, better)
    };
    Ok((best, total, !timed_out.load(Ordering::Relaxed)))
}

/// Depth-first assignment of vertices to X or Y.
///
/// Vertices are taken in descending degree order, ties by index. A partial
/// assignment is abandoned when its cut edges plus the edges each
/// unassigned vertex must cut on either side exceed the incumbent, or when
/// an assigned vertex can no longer reach degree `h` on its own side.
struct BranchAndBound<'a> {
    adj: &'a [u64],
    h: u32,
    seq: Vec<usize>,
    best: Best,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl<'a> BranchAndBound<'a> {
    fn run(adj: &'a [u64], h: usize, deadline: Option<Instant>) -> (Best, u64, bool) {
        let n = adj.len();
        if n < 2 {
            return (None, 0, true);
        }
        let mut seq: Vec<usize> = (1..n).collect();
        seq.sort_by_key(|&v| (std::cmp::Reverse(adj[v].count_ones()), v));
        let mut s = BranchAndBound {
            adj,
            h: u32::try_from(h).unwrap_or(u32::MAX),
            seq,
            best: None,
            nodes: 0,
            deadline,
            timed_out: false,
        };
        let all = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        if adj[0].count_ones() >= s.h {
            s.search(0, 0, 1, all & !1, 0);
        }
        (s.best, s.nodes, !s.timed_out)
    }

    fn prunable(&self, bound: u32, x: u64) -> bool {
        match self.best {
            Some((bv, bm)) => bound > bv || (bound == bv && x >= bm),
            None => false,
        }
    }

    /// Whether every vertex of `side` still has `h` potential neighbors in
    /// `side | free`.
    fn feasible(&self, vertices: u64, side: u64, free: u64) -> bool {
        let mut rest = vertices;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[v] & (side | free)).count_ones() < self.h {
                return false;
            }
        }
        true
    }

    fn search(&mut self, idx: usize, x: u64, y: u64, free: u64, cut: u32) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(DEADLINE_POLL) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
            return;
        }
        let mut forced = 0;
        let mut rest = free;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            forced += (self.adj[u] & x).count_ones().min((self.adj[u] & y).count_ones());
        }
        if self.prunable(cut + forced, x) {
            return;
        }
        let Some(&v) = self.seq.get(idx) else {
            if x != 0 {
                self.best = better(self.best, Some((cut, x)));
            }
            return;
        };
        let bit = 1u64 << v;
        let free = free & !bit;
        let nb = self.adj[v];

        // v -> Y first: keeps X small, which favors the smaller witness mask.
        let y2 = y | bit;
        if self.feasible(bit, y2, free) && self.feasible(nb & x, x, free) {
            self.search(idx + 1, x, y2, free, cut + (nb & x).count_ones());
        }
        let x2 = x | bit;
        if self.feasible(bit, x2, free) && self.feasible(nb & y, y, free) {
            self.search(idx + 1, x2, y, free, cut + (nb & y).count_ones());
        }
    }
}
