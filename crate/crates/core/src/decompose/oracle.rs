//! Brute-force enumeration used as an independent oracle.

use std::collections::BTreeSet;

use super::{is_increasing, DecomposeError, OrderedFn};
use crate::order::{apply_chain, ConvexPartition, EquivChain, LinOrder};

/// Default cap on carrier size for exhaustive enumeration.
pub const DEFAULT_ORACLE_BOUND: usize = 8;

/// Lazily yields every strictly increasing chain of convex partitions of an
/// order that starts at the discrete partition.
///
/// A convex partition of an `n`-chain is determined by the set of gaps it cuts
/// (a bitmask over `n - 1` gaps); coarsening removes cuts. The iterator walks
/// the tree of strictly decreasing cut sets depth first.
pub struct ChainIter {
    order: LinOrder,
    // Current chain of cut masks plus, per level, the next submask to try.
    masks: Vec<u64>,
    next_sub: Vec<Option<u64>>,
    started: bool,
}

fn first_proper_submask(mask: u64) -> Option<u64> {
    (mask != 0).then(|| (mask - 1) & mask)
}

fn next_proper_submask(mask: u64, sub: u64) -> Option<u64> {
    (sub != 0).then(|| (sub - 1) & mask)
}

impl ChainIter {
    fn partition(&self, mask: u64) -> ConvexPartition {
        let n = self.order.len();
        let mut ranges = Vec::new();
        let mut start = 0;
        for gap in 0..n.saturating_sub(1) {
            if mask >> gap & 1 == 1 {
                ranges.push(start..gap + 1);
                start = gap + 1;
            }
        }
        if n > 0 {
            ranges.push(start..n);
        }
        ConvexPartition::from_ranges(&self.order, ranges)
    }

    fn current(&self) -> EquivChain {
        let levels = self.masks.iter().map(|&m| self.partition(m)).collect();
        EquivChain::new(levels).expect("cut sets strictly decrease")
    }
}

impl Iterator for ChainIter {
    type Item = EquivChain;

    fn next(&mut self) -> Option<EquivChain> {
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        while let Some(slot) = self.next_sub.last_mut() {
            let top = *self.masks.last().unwrap();
            match *slot {
                Some(sub) => {
                    *slot = next_proper_submask(top, sub);
                    self.masks.push(sub);
                    self.next_sub.push(first_proper_submask(sub));
                    return Some(self.current());
                }
                None => {
                    self.masks.pop();
                    self.next_sub.pop();
                }
            }
        }
        None
    }
}

/// Every strictly increasing chain of convex partitions of `order` starting
/// at the discrete partition, each exactly once.
pub fn enumerate_chains(order: &LinOrder, bound: usize) -> Result<ChainIter, DecomposeError> {
    if order.len() > bound || order.len() > 64 {
        return Err(DecomposeError::OracleBoundExceeded {
            size: order.len(),
            bound,
        });
    }
    let gaps = order.len().saturating_sub(1);
    let full = if gaps == 64 { u64::MAX } else { (1u64 << gaps) - 1 };
    Ok(ChainIter {
        order: order.clone(),
        masks: vec![full],
        next_sub: vec![first_proper_submask(full)],
        started: false,
    })
}

fn piece_is_weakly_monotone(f: &OrderedFn, piece: &[String], bound: usize) -> Result<bool, DecomposeError> {
    let g = f.restrict(piece.iter().map(String::as_str))?;
    for chain in enumerate_chains(g.domain(), bound)? {
        let reordered = apply_chain(g.domain(), chain.levels())?;
        if is_increasing(&reordered, g.codomain(), &g) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Fewest convex pieces such that on each piece `f` is `(<_{vec E}, ◁)`
/// increasing for some chain `vec E`, found by exhaustive search.
pub fn minimal_piece_count_bruteforce(f: &OrderedFn, bound: usize) -> Result<usize, DecomposeError> {
    let ids = f.domain().ranking();
    let n = ids.len();
    if n > bound {
        return Err(DecomposeError::OracleBoundExceeded { size: n, bound });
    }
    // best[i] = fewest pieces covering the first i elements.
    let mut best = vec![usize::MAX; n + 1];
    best[0] = 0;
    let mut good = BTreeSet::new();
    for start in 0..n {
        for end in start + 1..=n {
            if piece_is_weakly_monotone(f, &ids[start..end], bound)? {
                good.insert((start, end));
            }
        }
    }
    for end in 1..=n {
        for start in 0..end {
            if best[start] != usize::MAX && good.contains(&(start, end)) {
                best[end] = best[end].min(best[start] + 1);
            }
        }
    }
    Ok(best[n])
}
