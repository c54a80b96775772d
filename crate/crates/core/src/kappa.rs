//! The vertex analogue: smallest vertex set whose removal disconnects the
//! graph while every remaining vertex keeps degree at least `h`.
//!
//! Existence is decided by brute force. Subsets are scanned by increasing
//! size and, within a size, by increasing bitmask, so the first hit is the
//! minimum and the scan reports nonexistence only after visiting all of
//! them.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::solver::HARD_GATE;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum KappaOutcome {
    Exists { value: usize, witness: VertexSet },
    Nonexistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaReport {
    pub h: usize,
    #[serde(flatten)]
    pub outcome: KappaOutcome,
    pub subsets_checked: u64,
    pub elapsed: Duration,
}

impl KappaReport {
    pub fn value(&self) -> Option<usize> {
        match self.outcome {
            KappaOutcome::Exists { value, .. } => Some(value),
            KappaOutcome::Nonexistent => None,
        }
    }
}

/// Whether `G - S` is disconnected with minimum degree at least `h`.
pub fn is_h_vertex_cut(g: &Graph, s: &VertexSet, h: usize) -> Result<bool> {
    if let Some(v) = s.last() {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: g.order(),
            });
        }
    }
    let rest = s.complement(g.order());
    if rest.len() < 2 {
        return Err(Error::TooFewRemaining(rest.len()));
    }
    let sub = g.induced_subgraph(&rest)?;
    Ok(sub.min_degree() >= h && !sub.is_connected(&Default::default())?)
}

#[inline]
fn is_cut_mask(adj: &[u64], rest: u64, h: u32) -> bool {
    let mut bits = rest;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if (adj[v] & rest).count_ones() < h {
            return false;
        }
    }
    let mut seen = rest & rest.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & rest & !seen;
        seen |= frontier;
    }
    seen != rest
}

/// Exhaustive size-major search for the minimum h-vertex-cut.
pub fn kappa_sh_exact(g: &Graph, h: usize, gate: usize) -> Result<KappaReport> {
    let gate = gate.min(HARD_GATE);
    let n = g.order();
    if n > gate {
        return Err(Error::GateExceeded { order: n, gate });
    }
    let start = Instant::now();
    let adj = g.masks().expect("order within the bitmask gate");
    let all: u128 = (1u128 << n) - 1;
    let hh = u32::try_from(h).unwrap_or(u32::MAX);
    let mut checked = 0u64;
    for k in 0..n.saturating_sub(1) {
        // k-subsets in ascending order (Gosper's hack)
        let mut s: u128 = (1u128 << k) - 1;
        while s <= all {
            checked += 1;
            if is_cut_mask(&adj, (all & !s) as u64, hh) {
                return Ok(KappaReport {
                    h,
                    outcome: KappaOutcome::Exists {
                        value: k,
                        witness: VertexSet::from_mask(s as u64),
                    },
                    subsets_checked: checked,
                    elapsed: start.elapsed(),
                });
            }
            if s == 0 {
                break;
            }
            let low = s & s.wrapping_neg();
            let ripple = s + low;
            s = (((ripple ^ s) >> 2) / low) | ripple;
        }
    }
    Ok(KappaReport {
        h,
        outcome: KappaOutcome::Nonexistent,
        subsets_checked: checked,
        elapsed: start.elapsed(),
    })
}
