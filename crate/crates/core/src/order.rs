//! Finite linear orders, convex equivalence relations and the block-reversal
//! algebra.
//!
//! A [`LinOrder`] is a carrier of opaque string ids together with a rank
//! assignment. A [`ConvexPartition`] is a partition of such a carrier; it is a
//! *convex* equivalence relation with respect to an order when every block is
//! a run of consecutive ranks. Reversing an order inside the blocks of a convex
//! partition ([`reverse_within`]) and folding that operation over a chain of
//! pairwise comparable partitions ([`apply_chain`]) is the basic move of the
//! whole crate.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("ranking is not a permutation of the elements")]
    RankingMismatch,
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("not a partition of the carrier: {0}")]
    NotAPartition(String),
    #[error("block {0} is not convex in the order")]
    NonConvexPartition(usize),
    #[error("partitions {0} and {1} are not comparable under refinement")]
    IncomparablePartitions(usize, usize),
    #[error("chain is not strictly increasing at level {0}")]
    NotStrictlyIncreasing(usize),
    #[error("orders or partitions live on different carriers")]
    CarrierMismatch,
}

/// A finite linear order on string ids.
///
/// `ranking` lists the carrier from least to greatest; `rank` is its inverse.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "LinOrderRepr", into = "LinOrderRepr")]
pub struct LinOrder {
    elements: Vec<String>,
    ranking: Vec<String>,
    rank: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct LinOrderRepr {
    elements: Vec<String>,
    ranking: Vec<String>,
}

impl TryFrom<LinOrderRepr> for LinOrder {
    type Error = OrderError;

    fn try_from(repr: LinOrderRepr) -> Result<Self, Self::Error> {
        LinOrder::new(repr.elements, repr.ranking)
    }
}

impl From<LinOrder> for LinOrderRepr {
    fn from(order: LinOrder) -> Self {
        LinOrderRepr {
            elements: order.elements,
            ranking: order.ranking,
        }
    }
}

impl LinOrder {
    /// Builds the order whose rank is the position in `ranking`.
    pub fn new<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        ranking: impl IntoIterator<Item = S>,
    ) -> Result<Self, OrderError> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let ranking: Vec<String> = ranking.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(OrderError::DuplicateElement(e.clone()));
            }
        }
        if ranking.len() != elements.len() {
            return Err(OrderError::RankingMismatch);
        }
        let mut rank = HashMap::with_capacity(ranking.len());
        for (i, e) in ranking.iter().enumerate() {
            if !seen.contains(e.as_str()) || rank.insert(e.clone(), i).is_some() {
                return Err(OrderError::RankingMismatch);
            }
        }
        Ok(LinOrder {
            elements,
            ranking,
            rank,
        })
    }

    /// Order in which the carrier listing is also the ranking.
    pub fn from_ranking<S: Into<String>>(
        ranking: impl IntoIterator<Item = S>,
    ) -> Result<Self, OrderError> {
        let ranking: Vec<String> = ranking.into_iter().map(Into::into).collect();
        LinOrder::new(ranking.clone(), ranking)
    }

    /// Keeps the carrier listing of `self` and replaces the ranking.
    pub(crate) fn with_ranking(&self, ranking: Vec<String>) -> LinOrder {
        debug_assert_eq!(ranking.len(), self.ranking.len());
        let rank = ranking
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        LinOrder {
            elements: self.elements.clone(),
            ranking,
            rank,
        }
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// The carrier as originally listed.
    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    /// The carrier from least to greatest.
    pub fn ranking(&self) -> &[String] {
        &self.ranking
    }

    pub fn rank(&self, id: &str) -> Option<usize> {
        self.rank.get(id).copied()
    }

    pub fn rank_of(&self, id: &str) -> Result<usize, OrderError> {
        self.rank(id)
            .ok_or_else(|| OrderError::UnknownElement(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.rank.contains_key(id)
    }

    pub fn at(&self, position: usize) -> &str {
        &self.ranking[position]
    }

    /// `a < b`; both ids must belong to the carrier.
    pub fn less(&self, a: &str, b: &str) -> Result<bool, OrderError> {
        Ok(self.rank_of(a)? < self.rank_of(b)?)
    }

    pub fn same_carrier(&self, other: &LinOrder) -> bool {
        self.len() == other.len() && self.ranking.iter().all(|e| other.contains(e))
    }

    /// The opposite order.
    pub fn reversed(&self) -> LinOrder {
        self.with_ranking(self.ranking.iter().rev().cloned().collect())
    }

    /// The induced order on `subset`, listed in this order's ranking.
    pub fn restrict<'a>(
        &self,
        subset: impl IntoIterator<Item = &'a str>,
    ) -> Result<LinOrder, OrderError> {
        let mut ranks = Vec::new();
        for id in subset {
            ranks.push(self.rank_of(id)?);
        }
        ranks.sort_unstable();
        if ranks.windows(2).any(|w| w[0] == w[1]) {
            return Err(OrderError::DuplicateElement(
                self.ranking[ranks.windows(2).find(|w| w[0] == w[1]).unwrap()[0]].clone(),
            ));
        }
        LinOrder::from_ranking(ranks.into_iter().map(|r| self.ranking[r].clone()))
    }
}

impl PartialEq for LinOrder {
    fn eq(&self, other: &Self) -> bool {
        self.ranking == other.ranking
    }
}

impl Eq for LinOrder {}

impl fmt::Debug for LinOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ranking.join("<"))
    }
}

/// A partition of a carrier into nonempty disjoint blocks.
///
/// Equality is equality of the underlying equivalence relations; the order in
/// which blocks (or ids inside a block) are listed does not matter.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct ConvexPartition {
    blocks: Vec<Vec<String>>,
    block_of: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    blocks: Vec<Vec<String>>,
}

impl TryFrom<PartitionRepr> for ConvexPartition {
    type Error = OrderError;

    fn try_from(repr: PartitionRepr) -> Result<Self, Self::Error> {
        ConvexPartition::new(repr.blocks)
    }
}

impl From<ConvexPartition> for PartitionRepr {
    fn from(p: ConvexPartition) -> Self {
        PartitionRepr { blocks: p.blocks }
    }
}

impl ConvexPartition {
    pub fn new<S: Into<String>, B: IntoIterator<Item = S>>(
        blocks: impl IntoIterator<Item = B>,
    ) -> Result<Self, OrderError> {
        let blocks: Vec<Vec<String>> = blocks
            .into_iter()
            .map(|b| b.into_iter().map(Into::into).collect())
            .collect();
        let mut block_of = HashMap::new();
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(OrderError::NotAPartition(format!("block {i} is empty")));
            }
            for id in block {
                if block_of.insert(id.clone(), i).is_some() {
                    return Err(OrderError::NotAPartition(format!(
                        "`{id}` occurs in more than one place"
                    )));
                }
            }
        }
        Ok(ConvexPartition { blocks, block_of })
    }

    /// Completes `blocks` with singletons for every element of `order` they
    /// do not mention, then lists the blocks along `order`.
    pub fn with_singletons<S: AsRef<str>, B: IntoIterator<Item = S>>(
        order: &LinOrder,
        blocks: impl IntoIterator<Item = B>,
    ) -> Result<Self, OrderError> {
        let mut listed: Vec<Vec<String>> = Vec::new();
        for b in blocks {
            let mut block = Vec::new();
            for id in b {
                let id = id.as_ref();
                order.rank_of(id)?;
                block.push(id.to_string());
            }
            listed.push(block);
        }
        let mut p = ConvexPartition::new(listed)?;
        for id in order.ranking() {
            if !p.block_of.contains_key(id) {
                p.block_of.insert(id.clone(), p.blocks.len());
                p.blocks.push(vec![id.clone()]);
            }
        }
        p.sorted_by(order)
    }

    pub fn discrete(order: &LinOrder) -> Self {
        Self::from_ranges(order, (0..order.len()).map(|i| i..i + 1))
    }

    pub fn one_block(order: &LinOrder) -> Self {
        if order.is_empty() {
            return Self::from_ranges(order, std::iter::empty());
        }
        Self::from_ranges(order, std::iter::once(0..order.len()))
    }

    /// Builds a partition from consecutive rank ranges of `order`.
    pub(crate) fn from_ranges(
        order: &LinOrder,
        ranges: impl IntoIterator<Item = std::ops::Range<usize>>,
    ) -> Self {
        let mut blocks = Vec::new();
        let mut block_of = HashMap::with_capacity(order.len());
        for (i, r) in ranges.into_iter().enumerate() {
            let block: Vec<String> = order.ranking()[r].to_vec();
            for id in &block {
                block_of.insert(id.clone(), i);
            }
            blocks.push(block);
        }
        ConvexPartition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn carrier_len(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_index(&self, id: &str) -> Option<usize> {
        self.block_of.get(id).copied()
    }

    pub fn block_containing(&self, id: &str) -> Option<&[String]> {
        self.block_index(id).map(|i| self.blocks[i].as_slice())
    }

    pub fn related(&self, a: &str, b: &str) -> bool {
        match (self.block_of.get(a), self.block_of.get(b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn is_one_block(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Checks that the blocks cover exactly the carrier of `order`.
    pub fn check_carrier(&self, order: &LinOrder) -> Result<(), OrderError> {
        if self.block_of.len() != order.len() {
            return Err(OrderError::NotAPartition(format!(
                "partition covers {} elements, order has {}",
                self.block_of.len(),
                order.len()
            )));
        }
        for id in self.block_of.keys() {
            if !order.contains(id) {
                return Err(OrderError::NotAPartition(format!(
                    "`{id}` is not in the carrier"
                )));
            }
        }
        Ok(())
    }

    /// First block that is not a rank interval of `order`, if any.
    pub fn first_non_convex_block(&self, order: &LinOrder) -> Option<usize> {
        self.blocks.iter().position(|block| {
            let ranks = block.iter().filter_map(|id| order.rank(id));
            let (lo, hi) = ranks.fold((usize::MAX, 0), |(lo, hi), r| (lo.min(r), hi.max(r)));
            hi + 1 - lo != block.len()
        })
    }

    /// Same relation, blocks listed along `order` and each block sorted by it.
    pub fn sorted_by(&self, order: &LinOrder) -> Result<Self, OrderError> {
        self.check_carrier(order)?;
        let mut blocks: Vec<Vec<String>> = self.blocks.clone();
        for block in &mut blocks {
            block.sort_by_key(|id| order.rank(id).unwrap_or(usize::MAX));
        }
        blocks.sort_by_key(|b| order.rank(&b[0]).unwrap_or(usize::MAX));
        ConvexPartition::new(blocks)
    }

    /// Every block of `self` lies inside a block of `other` (`self ⊆ other`).
    pub fn refines(&self, other: &ConvexPartition) -> bool {
        self.block_of.len() == other.block_of.len()
            && self.blocks.iter().all(|block| {
                let target = other.block_of.get(&block[0]);
                target.is_some() && block.iter().all(|id| other.block_of.get(id) == target)
            })
    }

    pub fn comparable(&self, other: &ConvexPartition) -> bool {
        self.refines(other) || other.refines(self)
    }

    /// Restriction to a subset of the carrier (blocks that become empty vanish).
    pub fn restrict(&self, subset: &BTreeSet<&str>) -> ConvexPartition {
        let blocks: Vec<Vec<String>> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .filter(|id| subset.contains(id.as_str()))
                    .cloned()
                    .collect::<Vec<_>>()
            })
            .filter(|b| !b.is_empty())
            .collect();
        ConvexPartition::new(blocks).expect("restriction of a partition")
    }

    fn canonical(&self) -> BTreeSet<BTreeSet<&str>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(String::as_str).collect())
            .collect()
    }
}

impl PartialEq for ConvexPartition {
    fn eq(&self, other: &Self) -> bool {
        self.blocks.len() == other.blocks.len() && self.canonical() == other.canonical()
    }
}

impl Eq for ConvexPartition {}

impl fmt::Debug for ConvexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.join(",")).collect();
        write!(f, "{{{}}}", parts.join("|"))
    }
}

/// A strictly increasing (under refinement) sequence of partitions.
///
/// Chains produced by order decompositions start at the discrete partition;
/// chains produced by function decompositions start at the kernel. The empty
/// chain is allowed and acts as the identity.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChainRepr", into = "ChainRepr")]
pub struct EquivChain {
    levels: Vec<ConvexPartition>,
}

#[derive(Serialize, Deserialize)]
struct ChainRepr {
    levels: Vec<ConvexPartition>,
}

impl TryFrom<ChainRepr> for EquivChain {
    type Error = OrderError;

    fn try_from(repr: ChainRepr) -> Result<Self, Self::Error> {
        EquivChain::new(repr.levels)
    }
}

impl From<EquivChain> for ChainRepr {
    fn from(c: EquivChain) -> Self {
        ChainRepr { levels: c.levels }
    }
}

impl EquivChain {
    pub fn new(levels: Vec<ConvexPartition>) -> Result<Self, OrderError> {
        for (i, w) in levels.windows(2).enumerate() {
            if w[0].carrier_len() != w[1].carrier_len() {
                return Err(OrderError::CarrierMismatch);
            }
            if !w[0].refines(&w[1]) || w[0] == w[1] {
                return Err(OrderError::NotStrictlyIncreasing(i + 1));
            }
        }
        Ok(EquivChain { levels })
    }

    /// Prepends the discrete partition of `order` unless level 0 already is
    /// discrete, then validates.
    pub fn normalized(order: &LinOrder, levels: Vec<ConvexPartition>) -> Result<Self, OrderError> {
        for level in &levels {
            level.check_carrier(order)?;
        }
        let mut all = Vec::with_capacity(levels.len() + 1);
        if levels.first().is_none_or(|l| !l.is_discrete()) {
            all.push(ConvexPartition::discrete(order));
        }
        all.extend(levels);
        EquivChain::new(all)
    }

    pub fn empty() -> Self {
        EquivChain { levels: Vec::new() }
    }

    pub fn levels(&self) -> &[ConvexPartition] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn last(&self) -> Option<&ConvexPartition> {
        self.levels.last()
    }

    /// True when the chain contains the one-block relation above level 0.
    pub fn ends_with_one_block(&self) -> bool {
        self.levels.len() > 1 && self.levels.last().is_some_and(ConvexPartition::is_one_block)
    }

    /// Every block with at least two elements occurs in exactly one level.
    pub fn is_reduced(&self) -> bool {
        let mut seen = BTreeSet::new();
        for level in &self.levels {
            for block in level.blocks().iter().filter(|b| b.len() > 1) {
                let key: BTreeSet<&str> = block.iter().map(String::as_str).collect();
                if !seen.insert(key) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for EquivChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.levels).finish()
    }
}

/// The order `<_E`: reversed inside each block of `partition`, unchanged
/// between blocks.
pub fn reverse_within(order: &LinOrder, partition: &ConvexPartition) -> Result<LinOrder, OrderError> {
    partition.check_carrier(order)?;
    if let Some(bad) = partition.first_non_convex_block(order) {
        return Err(OrderError::NonConvexPartition(bad));
    }
    let mut ranking = Vec::with_capacity(order.len());
    let ids = order.ranking();
    let mut start = 0;
    while start < ids.len() {
        let block = partition.block_index(&ids[start]);
        let mut end = start + 1;
        while end < ids.len() && partition.block_index(&ids[end]) == block {
            end += 1;
        }
        ranking.extend(ids[start..end].iter().rev().cloned());
        start = end;
    }
    Ok(order.with_ranking(ranking))
}

/// The order `(…(<_{E_1})_{E_2}…)_{E_n}`.
///
/// The partitions must be pairwise comparable under refinement; they need not
/// be sorted.
pub fn apply_chain(order: &LinOrder, chain: &[ConvexPartition]) -> Result<LinOrder, OrderError> {
    for (i, p) in chain.iter().enumerate() {
        p.check_carrier(order)?;
        for (j, q) in chain.iter().enumerate().skip(i + 1) {
            if !p.comparable(q) {
                return Err(OrderError::IncomparablePartitions(i, j));
            }
        }
    }
    let mut current = order.clone();
    for p in chain {
        current = reverse_within(&current, p)?;
    }
    Ok(current)
}

/// The quotient order on blocks, each block represented by its least element.
pub fn quotient(order: &LinOrder, partition: &ConvexPartition) -> Result<LinOrder, OrderError> {
    partition.check_carrier(order)?;
    if let Some(bad) = partition.first_non_convex_block(order) {
        return Err(OrderError::NonConvexPartition(bad));
    }
    let mut reps = Vec::with_capacity(partition.len());
    let mut last_block = None;
    for id in order.ranking() {
        let b = partition.block_index(id);
        if b != last_block {
            reps.push(id.clone());
            last_block = b;
        }
    }
    LinOrder::from_ranking(reps)
}

/// Whether every block of `partition` is a rank interval of `order`.
pub fn is_convex_equiv(order: &LinOrder, partition: &ConvexPartition) -> Result<bool, OrderError> {
    partition.check_carrier(order)?;
    Ok(partition.first_non_convex_block(order).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abcd() -> LinOrder {
        LinOrder::from_ranking(["a", "b", "c", "d"]).unwrap()
    }

    fn part(order: &LinOrder, blocks: &[&[&str]]) -> ConvexPartition {
        ConvexPartition::with_singletons(order, blocks.iter().map(|b| b.iter().copied())).unwrap()
    }

    #[test]
    fn make_order_examples() {
        let o = LinOrder::new(["a", "b", "c"], ["a", "b", "c"]).unwrap();
        assert_eq!(o.ranking(), ["a", "b", "c"]);
        let o = LinOrder::new(["a", "b", "c"], ["c", "a", "b"]).unwrap();
        assert_eq!(o.ranking(), ["c", "a", "b"]);
        assert!(o.less("c", "a").unwrap());
        assert_eq!(
            LinOrder::new(["a", "b"], ["a", "a"]),
            Err(OrderError::RankingMismatch)
        );
        assert_eq!(
            LinOrder::new(["a", "a"], ["a", "a"]),
            Err(OrderError::DuplicateElement("a".into()))
        );
        assert_eq!(
            LinOrder::new(["a", "b"], ["a", "c"]),
            Err(OrderError::RankingMismatch)
        );
    }

    #[test]
    fn reverse_within_examples() {
        let o = abcd();
        let e = part(&o, &[&["a", "b"], &["c", "d"]]);
        assert_eq!(reverse_within(&o, &e).unwrap().ranking(), ["b", "a", "d", "c"]);
        let disc = ConvexPartition::discrete(&o);
        assert_eq!(reverse_within(&o, &disc).unwrap(), o);
        let one = ConvexPartition::one_block(&o);
        assert_eq!(reverse_within(&o, &one).unwrap().ranking(), ["d", "c", "b", "a"]);
        let bad = part(&o, &[&["a", "c"]]);
        assert_eq!(reverse_within(&o, &bad), Err(OrderError::NonConvexPartition(0)));
    }

    #[test]
    fn apply_chain_examples() {
        let o = abcd();
        let ab = part(&o, &[&["a", "b"]]);
        let abc = part(&o, &[&["a", "b", "c"]]);
        let fwd = apply_chain(&o, &[ab.clone(), abc.clone()]).unwrap();
        assert_eq!(fwd.ranking(), ["c", "a", "b", "d"]);
        assert_eq!(apply_chain(&o, &[]).unwrap(), o);
        let bwd = apply_chain(&o, &[abc, ab]).unwrap();
        assert_eq!(bwd, fwd);
        let cd = part(&o, &[&["c", "d"]]);
        let bc = part(&o, &[&["b", "c"]]);
        assert_eq!(
            apply_chain(&o, &[cd, bc]),
            Err(OrderError::IncomparablePartitions(0, 1))
        );
    }

    #[test]
    fn quotient_examples() {
        let o = LinOrder::new(["a", "b", "c", "d"], ["b", "a", "d", "c"]).unwrap();
        let e = part(&o, &[&["a", "b"], &["c", "d"]]);
        let q = quotient(&o, &e).unwrap();
        assert_eq!(q.ranking(), ["b", "d"]);
        let ab = LinOrder::from_ranking(["a", "b"]).unwrap();
        assert_eq!(quotient(&ab, &ConvexPartition::discrete(&ab)).unwrap(), ab);
        let abc = LinOrder::from_ranking(["a", "b", "c"]).unwrap();
        assert_eq!(quotient(&abc, &ConvexPartition::one_block(&abc)).unwrap().len(), 1);
    }

    #[test]
    fn convexity_examples() {
        let o = abcd();
        let p = ConvexPartition::new([vec!["a", "c"], vec!["b"], vec!["d"]]).unwrap();
        assert!(!is_convex_equiv(&o, &p).unwrap());
        assert!(is_convex_equiv(&o, &part(&o, &[&["a", "b"], &["c", "d"]])).unwrap());
        assert!(is_convex_equiv(&o, &ConvexPartition::discrete(&o)).unwrap());
        let partial = ConvexPartition::new([vec!["a", "b"]]).unwrap();
        assert!(matches!(
            is_convex_equiv(&o, &partial),
            Err(OrderError::NotAPartition(_))
        ));
    }

    #[test]
    fn chain_validation() {
        let o = abcd();
        let ab = part(&o, &[&["a", "b"]]);
        let abc = part(&o, &[&["a", "b", "c"]]);
        assert!(EquivChain::new(vec![ab.clone(), abc.clone()]).is_ok());
        assert_eq!(
            EquivChain::new(vec![abc.clone(), ab.clone()]),
            Err(OrderError::NotStrictlyIncreasing(1))
        );
        assert_eq!(
            EquivChain::new(vec![ab.clone(), ab.clone()]),
            Err(OrderError::NotStrictlyIncreasing(1))
        );
        let c = EquivChain::normalized(&o, vec![ab]).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.levels()[0].is_discrete());
    }

    #[test]
    fn unreduced_chains_can_collide() {
        // Finite carriers allow a block to persist across levels; the repeated
        // reversal cancels and two different chains reach the same order.
        let o = abcd();
        let long = [part(&o, &[&["a", "b"]]), part(&o, &[&["a", "b"], &["c", "d"]])];
        let short = [part(&o, &[&["c", "d"]])];
        let x = apply_chain(&o, &long).unwrap();
        assert_eq!(x, apply_chain(&o, &short).unwrap());
        assert_eq!(x.ranking(), ["a", "b", "d", "c"]);
        assert!(!EquivChain::new(long.to_vec()).unwrap().is_reduced());
        assert!(EquivChain::new(short.to_vec()).unwrap().is_reduced());
    }

    #[test]
    fn partition_equality_ignores_listing() {
        let p = ConvexPartition::new([vec!["b", "a"], vec!["c"]]).unwrap();
        let q = ConvexPartition::new([vec!["c"], vec!["a", "b"]]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn json_shapes() {
        let o: LinOrder =
            serde_json::from_str(r#"{"elements": ["a","b"], "ranking": ["b","a"]}"#).unwrap();
        assert_eq!(o.ranking(), ["b", "a"]);
        let p: ConvexPartition = serde_json::from_str(r#"{"blocks": [["a","b"],["c"]]}"#).unwrap();
        assert_eq!(p.len(), 2);
        let c: EquivChain = serde_json::from_str(
            r#"{"levels": [{"blocks": [["a"],["b"]]}, {"blocks": [["a","b"]]}]}"#,
        )
        .unwrap();
        assert_eq!(c.len(), 2);
        assert!(serde_json::from_str::<LinOrder>(r#"{"elements": ["a"], "ranking": ["b"]}"#).is_err());
    }
}
