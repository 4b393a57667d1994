//! Seeded generators for random instances.
//!
//! Everything is driven by [`ChaCha8Rng`], so a seed reproduces the same
//! instances on every platform.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decompose::OrderedFn;
use crate::generic_order::{BlockOrder, ElementRecord, WeightedChain};
use crate::helly::SetFamily;
use crate::order::{ConvexPartition, EquivChain, LinOrder};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Ids `{prefix}0 … {prefix}{n-1}` in natural order.
pub fn natural_order(prefix: &str, n: usize) -> LinOrder {
    LinOrder::from_ranking((0..n).map(|i| format!("{prefix}{i}"))).expect("distinct ids")
}

/// The carrier of `natural_order("x", n)` ranked by a uniform permutation.
pub fn random_order<R: Rng>(rng: &mut R, n: usize) -> LinOrder {
    let ids: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut ranking = ids.clone();
    ranking.shuffle(rng);
    LinOrder::new(ids, ranking).expect("permutation")
}

/// Convex partition of `order` cutting exactly the gaps in `cuts`
/// (bit `g` cuts between ranks `g` and `g + 1`).
pub fn partition_from_cuts(order: &LinOrder, cuts: u64) -> ConvexPartition {
    let n = order.len();
    let mut blocks = Vec::new();
    let mut start = 0;
    for gap in 0..n.saturating_sub(1) {
        if cuts >> gap & 1 == 1 {
            blocks.push(order.ranking()[start..=gap].to_vec());
            start = gap + 1;
        }
    }
    if n > 0 {
        blocks.push(order.ranking()[start..].to_vec());
    }
    ConvexPartition::new(blocks).expect("disjoint runs")
}

fn full_cuts(n: usize) -> u64 {
    match n.saturating_sub(1) {
        64.. => u64::MAX,
        g => (1u64 << g) - 1,
    }
}

/// A strictly increasing chain starting at the discrete partition, with at
/// most `max_extra` levels above it.
pub fn random_chain<R: Rng>(rng: &mut R, order: &LinOrder, max_extra: usize) -> EquivChain {
    let mut cuts = full_cuts(order.len());
    let mut levels = vec![partition_from_cuts(order, cuts)];
    let extra = rng.gen_range(0..=max_extra);
    for _ in 0..extra {
        if cuts == 0 {
            break;
        }
        // Drop a random nonempty subset of the remaining cuts.
        let mut drop = 0;
        while drop == 0 {
            drop = cuts & rng.gen::<u64>();
            if rng.gen_bool(0.3) {
                let set: Vec<u32> = (0..64).filter(|b| cuts >> b & 1 == 1).collect();
                drop = 1 << set[rng.gen_range(0..set.len())];
            }
        }
        cuts &= !drop;
        levels.push(partition_from_cuts(order, cuts));
    }
    EquivChain::new(levels).expect("cuts strictly decrease")
}

/// Function from `natural_order("d", n)` to `natural_order("c", m)`.
pub fn random_function<R: Rng>(rng: &mut R, n: usize, m: usize) -> OrderedFn {
    let domain = natural_order("d", n);
    let codomain = natural_order("c", m);
    // Mix of arbitrary maps and maps built from a few monotone runs.
    let values: Vec<usize> = if rng.gen_bool(0.5) {
        (0..n).map(|_| rng.gen_range(0..m)).collect()
    } else {
        let mut v = Vec::with_capacity(n);
        let mut cur = rng.gen_range(0..m);
        let mut step: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        for _ in 0..n {
            v.push(cur);
            if rng.gen_bool(0.25) {
                step = -step;
            }
            let next = cur as i64 + step * rng.gen_range(0..=1);
            cur = next.clamp(0, m as i64 - 1) as usize;
        }
        v
    };
    let map: Vec<(String, String)> = domain
        .ranking()
        .iter()
        .zip(values)
        .map(|(x, v)| (x.clone(), codomain.at(v).to_string()))
        .collect();
    OrderedFn::new(domain, codomain, map).expect("total map into codomain")
}

/// Random set of at most `max_components` convex runs of `0..carrier`.
pub fn random_rank_set<R: Rng>(rng: &mut R, carrier: usize, max_components: usize) -> Vec<usize> {
    let k = rng.gen_range(1..=max_components.max(1));
    let mut ranks = Vec::new();
    for _ in 0..k {
        let lo = rng.gen_range(0..carrier);
        let len = rng.gen_range(1..=(carrier - lo).min(1 + carrier / 3));
        ranks.extend(lo..lo + len);
    }
    ranks.sort_unstable();
    ranks.dedup();
    while crate::convexity::rank_runs(&ranks).len() > max_components {
        ranks.pop();
    }
    ranks
}

/// A pairwise intersecting family of up to `size` sets, each with at most
/// `max_components` components, on `natural_order("p", carrier)`.
pub fn random_intersecting_family<R: Rng>(
    rng: &mut R,
    carrier: usize,
    size: usize,
    max_components: usize,
) -> SetFamily {
    let order = natural_order("p", carrier);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut attempts = 0;
    while sets.len() < size && attempts < 200 * size {
        attempts += 1;
        let s = random_rank_set(rng, carrier, max_components);
        if sets.iter().all(|t| t.iter().any(|r| s.binary_search(r).is_ok())) {
            sets.push(s);
        }
    }
    let named = sets
        .iter()
        .map(|s| s.iter().map(|&r| order.at(r).to_string()).collect::<Vec<_>>());
    SetFamily::with_bound(order.clone(), named, max_components).expect("bounded by construction")
}

/// Up to `max_elements` records over at most `max_tags` tags in random blocks
/// with random rational indices.
pub fn random_block_order<R: Rng>(rng: &mut R, max_elements: usize, max_tags: u32) -> BlockOrder {
    let n = rng.gen_range(1..=max_elements.max(1));
    let block_count = rng.gen_range(1..=n);
    let mut indices: Vec<BigRational> = Vec::new();
    while indices.len() < block_count {
        let q = BigRational::new(
            BigInt::from(rng.gen_range(-50i64..50)),
            BigInt::from(rng.gen_range(1i64..8)),
        );
        if !indices.contains(&q) {
            indices.push(q);
        }
    }
    let mut blocks: Vec<Vec<ElementRecord>> = vec![Vec::new(); block_count];
    for i in 0..n {
        let b = if i < block_count { i } else { rng.gen_range(0..block_count) };
        let tag = rng.gen_range(0..max_tags.max(1));
        let mut rank = rng.gen_range(-20i64..20);
        while blocks[b].iter().any(|e| e.tag == tag && e.rank == rank) {
            rank += 1;
        }
        blocks[b].push(ElementRecord::new(format!("g{i}"), tag, rank));
    }
    BlockOrder::new(indices.into_iter().zip(blocks)).expect("valid by construction")
}

/// A weighted chain over `natural_order("w", n)` with random rational
/// weights.
pub fn random_weighted_chain<R: Rng>(rng: &mut R, n: usize) -> WeightedChain {
    let order = natural_order("w", n.max(1));
    let chain = random_chain(rng, &order, 5);
    let slots = if chain.ends_with_one_block() {
        chain.len()
    } else {
        chain.len() + 1
    };
    let denom = 1000i64;
    let mut inner: Vec<i64> = Vec::new();
    while inner.len() < slots - 2 {
        let v = rng.gen_range(1..denom);
        if !inner.contains(&v) {
            inner.push(v);
        }
    }
    inner.sort_unstable();
    let mut weights = vec![BigRational::from_integer(BigInt::from(0))];
    weights.extend(inner.into_iter().map(|v| BigRational::new(v.into(), denom.into())));
    weights.push(BigRational::from_integer(BigInt::from(1)));
    WeightedChain::new(chain, weights).expect("weights strictly increasing")
}
