//! Convex components of subsets of a finite linear order.

use std::collections::BTreeSet;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::order::{LinOrder, OrderError};

/// Shape of a subset relative to an order.
///
/// The empty subset counts as convex, initial, final and bounded.
/// Boundedness is strict: some carrier element lies strictly below every
/// member and some lies strictly above.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionReport {
    pub components: Vec<Vec<String>>,
    pub is_convex: bool,
    pub is_initial: bool,
    pub is_final: bool,
    pub is_bounded: bool,
}

/// Maximal runs of consecutive values in a sorted, duplicate-free rank list.
pub fn rank_runs(sorted_ranks: &[usize]) -> Vec<Range<usize>> {
    let mut runs: Vec<Range<usize>> = Vec::new();
    for &r in sorted_ranks {
        match runs.last_mut() {
            Some(run) if run.end == r => run.end = r + 1,
            _ => runs.push(r..r + 1),
        }
    }
    runs
}

fn sorted_ranks<'a>(
    order: &LinOrder,
    subset: impl IntoIterator<Item = &'a str>,
) -> Result<Vec<usize>, OrderError> {
    let mut ranks = BTreeSet::new();
    for id in subset {
        ranks.insert(order.rank_of(id)?);
    }
    Ok(ranks.into_iter().collect())
}

/// Number of convex components of a subset given by ranks (any order, no
/// duplicates).
pub fn component_count(ranks: &mut [usize]) -> usize {
    ranks.sort_unstable();
    let mut count = 0;
    for (i, &r) in ranks.iter().enumerate() {
        if i == 0 || ranks[i - 1] + 1 != r {
            count += 1;
        }
    }
    count
}

/// The maximal convex pieces of `subset`, in increasing order.
pub fn convex_components<'a>(
    order: &LinOrder,
    subset: impl IntoIterator<Item = &'a str>,
) -> Result<Vec<Vec<String>>, OrderError> {
    let ranks = sorted_ranks(order, subset)?;
    Ok(rank_runs(&ranks)
        .into_iter()
        .map(|run| order.ranking()[run].to_vec())
        .collect())
}

pub fn region_classify<'a>(
    order: &LinOrder,
    subset: impl IntoIterator<Item = &'a str>,
) -> Result<RegionReport, OrderError> {
    let ranks = sorted_ranks(order, subset)?;
    let runs = rank_runs(&ranks);
    let n = order.len();
    let (is_initial, is_final, is_bounded) = match (ranks.first(), ranks.last()) {
        (Some(&lo), Some(&hi)) => {
            let k = ranks.len();
            (hi + 1 == k, lo == n - k, lo > 0 && hi + 1 < n)
        }
        _ => (true, true, true),
    };
    Ok(RegionReport {
        is_convex: runs.len() <= 1,
        components: runs
            .into_iter()
            .map(|run| order.ranking()[run].to_vec())
            .collect(),
        is_initial,
        is_final,
        is_bounded,
    })
}
