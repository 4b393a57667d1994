//! Recovering the chain of convex equivalences that relates two orders, and
//! the monotonicity decompositions of functions built on top of it.
//!
//! Given a base order `<` and a target order `◁` on the same carrier, the
//! engine looks for the strictly increasing chain `id = E_0 ⊊ E_1 ⊊ … ⊊ E_n`
//! of `<`-convex equivalences with `◁ = <_{E_0,…,E_n}`. The top level is read
//! off the target directly: for each `a`, the elements above `a` split into
//! alternating runs according to whether they sit `◁`-above or `◁`-below `a`;
//! dropping the final `◁`-above run leaves a set `C(a)`, and `E_n` is the
//! equivalence generated by `x ∈ C(y)`. Reversing `◁` inside the `E_n`-classes
//! and repeating yields the lower levels. When `E_n` would be the one-block
//! relation the orders have opposite orientation, and the procedure runs on
//! the reverse of `◁` with the one-block relation appended on top.
//!
//! On arbitrary finite orders no chain need exist; every candidate is replayed
//! against the target before it is returned.

mod function;
mod oracle;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::{ConvexPartition, EquivChain, LinOrder, OrderError};

pub use function::{
    is_increasing, local_monotonicity, monotone_decompose_codomain, monotone_decompose_domain,
    piecewise_decompose, pushforward_chain, upper_monotonicity, Direction, OrderedFn,
    PiecewiseResult, UpperMonotonicity,
};
pub use oracle::{
    enumerate_chains, minimal_piece_count_bruteforce, ChainIter, DEFAULT_ORACLE_BOUND,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("orders do not share a carrier")]
    CarrierMismatch,
    #[error("no chain of convex equivalences relates the orders: {0}")]
    Failure(String),
    #[error("relation is not a total preorder: {0}")]
    NotTotalPreorder(String),
    #[error("kernel class containing `{0}` is not convex")]
    NonConvexKernel(String),
    #[error("function is constant")]
    ConstantFunction,
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("carrier of size {size} exceeds the oracle bound {bound}")]
    OracleBoundExceeded { size: usize, bound: usize },
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Same,
    Opposite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub chain: EquivChain,
    pub orientation: Orientation,
}

impl DecompositionResult {
    fn from_chain(chain: EquivChain) -> Self {
        let orientation = if chain.ends_with_one_block() {
            Orientation::Opposite
        } else {
            Orientation::Same
        };
        DecompositionResult { chain, orientation }
    }
}

/// A total preorder `≼`, stored as a numeric key per element
/// (`x ≼ y` iff `key(x) <= key(y)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalPreorder {
    key: HashMap<String, usize>,
}

impl TotalPreorder {
    pub fn from_keys<S: Into<String>>(keys: impl IntoIterator<Item = (S, usize)>) -> Self {
        TotalPreorder {
            key: keys.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    /// Ordered tiers: members of one tier are equivalent, earlier tiers are
    /// strictly below later ones.
    pub fn from_tiers<S: Into<String>, T: IntoIterator<Item = S>>(
        tiers: impl IntoIterator<Item = T>,
    ) -> Self {
        let mut key = HashMap::new();
        for (i, tier) in tiers.into_iter().enumerate() {
            for id in tier {
                key.insert(id.into(), i);
            }
        }
        TotalPreorder { key }
    }

    /// Validates an arbitrary relation on `carrier` and converts it.
    pub fn from_relation(
        carrier: &[String],
        leq: impl Fn(&str, &str) -> bool,
    ) -> Result<Self, DecomposeError> {
        for a in carrier {
            for b in carrier {
                if !leq(a, b) && !leq(b, a) {
                    return Err(DecomposeError::NotTotalPreorder(format!(
                        "`{a}` and `{b}` are incomparable"
                    )));
                }
                if !leq(a, b) {
                    continue;
                }
                for c in carrier {
                    if leq(b, c) && !leq(a, c) {
                        return Err(DecomposeError::NotTotalPreorder(format!(
                            "`{a}` ≼ `{b}` ≼ `{c}` but not `{a}` ≼ `{c}`"
                        )));
                    }
                }
            }
        }
        let key = carrier
            .iter()
            .map(|x| {
                let below = carrier.iter().filter(|y| leq(y, x) && !leq(x, y)).count();
                (x.clone(), below)
            })
            .collect();
        Ok(TotalPreorder { key })
    }

    pub fn key(&self, id: &str) -> Option<usize> {
        self.key.get(id).copied()
    }

    pub fn leq(&self, a: &str, b: &str) -> bool {
        matches!((self.key(a), self.key(b)), (Some(x), Some(y)) if x <= y)
    }

    pub fn equivalent(&self, a: &str, b: &str) -> bool {
        matches!((self.key(a), self.key(b)), (Some(x), Some(y)) if x == y)
    }
}

/// Runs of elements above `a` (in base positions) that alternately lie
/// `◁`-above and `◁`-below `a`. Each run is reported with `true` when its
/// members satisfy `a ◁ x`.
fn upper_components(tpos: &[usize], a: usize) -> Vec<(Range<usize>, bool)> {
    let mut runs: Vec<(Range<usize>, bool)> = Vec::new();
    for x in a + 1..tpos.len() {
        let above = tpos[a] < tpos[x];
        match runs.last_mut() {
            Some((run, side)) if *side == above => run.end = x + 1,
            _ => runs.push((x..x + 1, above)),
        }
    }
    runs
}

/// Greatest base position reached by `{a} ∪ C(a)`, where `C(a)` is everything
/// above `a` except the final run lying `◁`-above `a`.
fn reach(tpos: &[usize], a: usize) -> usize {
    let runs = upper_components(tpos, a);
    match runs.last() {
        None => a,
        Some((_, false)) => tpos.len() - 1,
        Some((last, true)) => last.start - 1,
    }
}

/// The equivalence generated by `x ∈ C(y)`, as consecutive base ranges.
/// Two elements are related iff the sets `{x} ∪ C(x)` and `{y} ∪ C(y)` chain
/// together by overlaps, which is the same as sharing a supremum.
fn top_level(tpos: &[usize]) -> Vec<Range<usize>> {
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut end = 0;
    for a in 0..tpos.len() {
        end = end.max(reach(tpos, a));
        if end == a {
            blocks.push(start..a + 1);
            start = a + 1;
            end = a + 1;
        }
    }
    blocks
}

/// Reverses the current order inside each block. Blocks must be convex in the
/// current order; returns `None` otherwise.
fn reverse_blocks(tpos: &mut [usize], blocks: &[Range<usize>]) -> Option<()> {
    for b in blocks.iter().filter(|b| b.len() > 1) {
        let lo = tpos[b.clone()].iter().min().copied()?;
        let hi = tpos[b.clone()].iter().max().copied()?;
        if hi + 1 - lo != b.len() {
            return None;
        }
        for p in &mut tpos[b.clone()] {
            *p = lo + hi - *p;
        }
    }
    Some(())
}

fn is_identity(tpos: &[usize]) -> bool {
    tpos.iter().enumerate().all(|(i, &p)| i == p)
}

/// Chain levels (bottom-up, discrete level omitted) relating the identity on
/// base positions to the order whose position map is `tpos`.
pub(crate) fn decompose_positions(tpos: &[usize]) -> Result<Vec<Vec<Range<usize>>>, String> {
    let n = tpos.len();
    let mut cur = tpos.to_vec();
    let mut top_down: Vec<Vec<Range<usize>>> = Vec::new();
    let mut parent: Option<Vec<Range<usize>>> = None;

    if n > 1 {
        let first = top_level(&cur);
        if first.len() == 1 {
            // Opposite orientation: work with the reverse and put 1 on top.
            for p in &mut cur {
                *p = n - 1 - *p;
            }
            top_down.push(first.clone());
            parent = Some(first);
        }
    }

    while !is_identity(&cur) {
        let level = top_level(&cur);
        if let Some(parent) = &parent {
            // Each class of the level above must break into smaller classes.
            if let Some(stuck) = parent
                .iter()
                .find(|b| b.len() > 1 && level.iter().any(|l| l == *b))
            {
                return Err(format!(
                    "positions {}..{} cannot be split further (interleaving pattern)",
                    stuck.start, stuck.end
                ));
            }
        } else if level.len() == 1 {
            return Err("target is neither a direct nor a reversed block sum".into());
        }
        reverse_blocks(&mut cur, &level).ok_or("non-convex level")?;
        top_down.push(level.clone());
        parent = Some(level);
    }

    let levels: Vec<Vec<Range<usize>>> = top_down.into_iter().rev().collect();
    let mut replay: Vec<usize> = (0..n).collect();
    for level in &levels {
        reverse_blocks(&mut replay, level).ok_or("replay met a non-convex level")?;
    }
    if replay != tpos {
        return Err("candidate chain does not reproduce the target".into());
    }
    Ok(levels)
}

/// Recovers the unique reduced chain `id ⊊ E_1 ⊊ … ⊊ E_n` with
/// `apply_chain(base, chain) == target`.
pub fn decompose_order(
    base: &LinOrder,
    target: &LinOrder,
) -> Result<DecompositionResult, DecomposeError> {
    if !base.same_carrier(target) {
        return Err(DecomposeError::CarrierMismatch);
    }
    let tpos: Vec<usize> = base
        .ranking()
        .iter()
        .map(|id| target.rank(id).expect("same carrier"))
        .collect();
    let levels = decompose_positions(&tpos).map_err(DecomposeError::Failure)?;
    let mut chain = vec![ConvexPartition::discrete(base)];
    chain.extend(
        levels
            .into_iter()
            .map(|l| ConvexPartition::from_ranges(base, l)),
    );
    Ok(DecompositionResult::from_chain(EquivChain::new(chain)?))
}

/// Decomposes a total preorder: returns the kernel `E_0` and the chain
/// `E_0 ⊊ … ⊊ E_n` with `x ≼ y ⇔ E_0(x,y) ∨ x <_{E_0,…,E_n} y`.
pub fn decompose_preorder(
    base: &LinOrder,
    preorder: &TotalPreorder,
) -> Result<(ConvexPartition, EquivChain), DecomposeError> {
    let mut keys = Vec::with_capacity(base.len());
    for id in base.ranking() {
        keys.push(preorder.key(id).ok_or(DecomposeError::CarrierMismatch)?);
    }
    if preorder.key.len() != base.len() {
        return Err(DecomposeError::CarrierMismatch);
    }

    // Kernel classes as base ranges; a key that reappears after a gap breaks
    // convexity.
    let mut kernel: Vec<Range<usize>> = Vec::new();
    let mut closed = BTreeSet::new();
    for (i, &k) in keys.iter().enumerate() {
        match kernel.last_mut() {
            Some(r) if keys[r.start] == k => r.end = i + 1,
            _ => {
                if !closed.insert(k) {
                    return Err(DecomposeError::NonConvexKernel(base.at(i).to_string()));
                }
                kernel.push(i..i + 1);
            }
        }
    }

    // Quotient target: kernel classes ranked by key.
    let distinct: BTreeMap<usize, usize> = kernel
        .iter()
        .map(|r| keys[r.start])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let tpos: Vec<usize> = kernel.iter().map(|r| distinct[&keys[r.start]]).collect();
    let levels = decompose_positions(&tpos).map_err(DecomposeError::Failure)?;

    let e0 = ConvexPartition::from_ranges(base, kernel.iter().cloned());
    let mut chain = vec![e0.clone()];
    for level in levels {
        let lifted = level
            .into_iter()
            .map(|q| kernel[q.start].start..kernel[q.end - 1].end);
        chain.push(ConvexPartition::from_ranges(base, lifted));
    }
    let chain = EquivChain::new(chain)?;

    let replay = crate::order::apply_chain(base, chain.levels())?;
    for x in base.ranking() {
        for y in base.ranking() {
            let lhs = preorder.leq(x, y);
            let rhs = e0.related(x, y) || replay.less(x, y)?;
            if lhs != rhs {
                return Err(DecomposeError::Failure(format!(
                    "replay disagrees on `{x}`, `{y}`"
                )));
            }
        }
    }
    Ok((e0, chain))
}

/// The reduced chain equivalent to `chain` over `order`.
///
/// Blocks reversed an even number of times cancel out; the remaining blocks
/// form a laminar family, and each is placed on the level given by its depth
/// counted from the top. The result starts at the discrete partition and
/// produces the same order as `chain`.
pub fn normalize_chain(
    order: &LinOrder,
    chain: &[ConvexPartition],
) -> Result<EquivChain, DecomposeError> {
    for (i, p) in chain.iter().enumerate() {
        p.check_carrier(order)?;
        if let Some(b) = p.first_non_convex_block(order) {
            return Err(OrderError::NonConvexPartition(b).into());
        }
        for (j, q) in chain.iter().enumerate().skip(i + 1) {
            if !p.comparable(q) {
                return Err(OrderError::IncomparablePartitions(i, j).into());
            }
        }
    }
    let mut parity: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for level in chain {
        for block in level.blocks().iter().filter(|b| b.len() > 1) {
            let lo = block.iter().map(|id| order.rank(id).unwrap()).min().unwrap();
            let odd = parity.entry((lo, lo + block.len())).or_insert(false);
            *odd = !*odd;
        }
    }
    let family: Vec<Range<usize>> = parity
        .into_iter()
        .filter(|(_, odd)| *odd)
        .map(|((s, e), _)| s..e)
        .collect();
    let depth = |r: &Range<usize>| {
        family
            .iter()
            .filter(|o| *o != r && o.start <= r.start && r.end <= o.end)
            .count()
    };
    let depths: Vec<usize> = family.iter().map(depth).collect();
    let height = depths.iter().map(|d| d + 1).max().unwrap_or(0);

    let mut levels = vec![ConvexPartition::discrete(order)];
    for k in (0..height).rev() {
        let mut ranges = Vec::new();
        let mut pos = 0;
        let mut members: Vec<&Range<usize>> = family
            .iter()
            .zip(&depths)
            .filter(|(_, d)| **d == k)
            .map(|(r, _)| r)
            .collect();
        members.sort_by_key(|r| r.start);
        for r in members {
            ranges.extend((pos..r.start).map(|i| i..i + 1));
            ranges.push(r.clone());
            pos = r.end;
        }
        ranges.extend((pos..order.len()).map(|i| i..i + 1));
        levels.push(ConvexPartition::from_ranges(order, ranges));
    }
    Ok(EquivChain::new(levels)?)
}
