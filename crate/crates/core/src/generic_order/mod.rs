//! Rational-indexed block orders.
//!
//! Elements live in blocks indexed by rationals. Two elements are dependent
//! when they share a block, and otherwise the one in the lower block is
//! generic to the right of the other. The linearization sorts by block, then
//! by `(tag, rank)` inside a block.

mod ultrametric;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::order::{ConvexPartition, LinOrder, OrderError};

pub use ultrametric::{ultrametric, WeightedChain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenericError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("duplicate block index {0}")]
    DuplicateIndex(String),
    #[error("block {0} is empty")]
    EmptyBlock(String),
    #[error("block {index} repeats tag {tag} with rank {rank}")]
    DuplicateTagRank { index: String, tag: u32, rank: i64 },
    #[error("bad interval: {0}")]
    BadInterval(String),
    #[error("replacement at position {position} moves `{from}` to another block via `{to}`")]
    CrossBlockReplacement {
        position: usize,
        from: String,
        to: String,
    },
    #[error("position {0} is outside the sequence")]
    BadPosition(usize),
    #[error("invalid rational `{0}`")]
    BadRational(String),
    #[error("invalid weights: {0}")]
    BadWeights(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or an integer `p`.
pub fn parse_rational(s: &str) -> Result<BigRational, GenericError> {
    let bad = || GenericError::BadRational(s.to_string());
    let t = s.trim();
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Serde adapter for a single rational.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for a list of rationals.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(qs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(qs.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementRecord {
    pub id: String,
    pub tag: u32,
    pub rank: i64,
}

impl ElementRecord {
    pub fn new(id: impl Into<String>, tag: u32, rank: i64) -> Self {
        ElementRecord {
            id: id.into(),
            tag,
            rank,
        }
    }

    fn key(&self) -> (u32, i64) {
        (self.tag, self.rank)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Genericity {
    RightGeneric,
    LeftGeneric,
    Dependent,
}

/// Blocks of element records keyed by rational index.
///
/// Values are persistent: operations return new orders that share block
/// storage with the original.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockOrder {
    // Each block is kept sorted by (tag, rank).
    blocks: BTreeMap<BigRational, Arc<Vec<ElementRecord>>>,
    block_of: Arc<BTreeMap<String, BigRational>>,
}

#[derive(Serialize, Deserialize)]
struct BlockRepr {
    #[serde(with = "rational_str")]
    index: BigRational,
    elements: Vec<ElementRecord>,
}

#[derive(Serialize, Deserialize)]
struct BlockOrderRepr {
    blocks: Vec<BlockRepr>,
}

impl Serialize for BlockOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BlockOrderRepr {
            blocks: self
                .blocks
                .iter()
                .map(|(index, els)| BlockRepr {
                    index: index.clone(),
                    elements: els.to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BlockOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = BlockOrderRepr::deserialize(d)?;
        BlockOrder::new(repr.blocks.into_iter().map(|b| (b.index, b.elements)))
            .map_err(D::Error::custom)
    }
}

impl fmt::Debug for BlockOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (q, els) in &self.blocks {
            let ids: Vec<&str> = els.iter().map(|e| e.id.as_str()).collect();
            m.entry(&format_rational(q), &ids);
        }
        m.finish()
    }
}

impl Default for BlockOrder {
    fn default() -> Self {
        BlockOrder::empty()
    }
}

fn sorted_block(index: &BigRational, mut elements: Vec<ElementRecord>) -> Result<Vec<ElementRecord>, GenericError> {
    if elements.is_empty() {
        return Err(GenericError::EmptyBlock(format_rational(index)));
    }
    elements.sort_by_key(|a| a.key());
    for w in elements.windows(2) {
        if w[0].key() == w[1].key() {
            return Err(GenericError::DuplicateTagRank {
                index: format_rational(index),
                tag: w[0].tag,
                rank: w[0].rank,
            });
        }
    }
    Ok(elements)
}

impl BlockOrder {
    pub fn empty() -> Self {
        BlockOrder {
            blocks: BTreeMap::new(),
            block_of: Arc::new(BTreeMap::new()),
        }
    }

    pub fn new(
        blocks: impl IntoIterator<Item = (BigRational, Vec<ElementRecord>)>,
    ) -> Result<Self, GenericError> {
        let mut map = BTreeMap::new();
        let mut block_of = BTreeMap::new();
        for (index, elements) in blocks {
            if map.contains_key(&index) {
                return Err(GenericError::DuplicateIndex(format_rational(&index)));
            }
            let elements = sorted_block(&index, elements)?;
            for e in &elements {
                if block_of.insert(e.id.clone(), index.clone()).is_some() {
                    return Err(GenericError::DuplicateElement(e.id.clone()));
                }
            }
            map.insert(index, Arc::new(elements));
        }
        Ok(BlockOrder {
            blocks: map,
            block_of: Arc::new(block_of),
        })
    }

    /// Blocks at indices `0, 1, 2, …`.
    pub fn from_blocks(blocks: impl IntoIterator<Item = Vec<ElementRecord>>) -> Result<Self, GenericError> {
        BlockOrder::new(
            blocks
                .into_iter()
                .enumerate()
                .map(|(i, b)| (BigRational::from_integer(BigInt::from(i)), b)),
        )
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn indices(&self) -> impl Iterator<Item = &BigRational> {
        self.blocks.keys()
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&BigRational, &[ElementRecord])> {
        self.blocks.iter().map(|(q, b)| (q, b.as_slice()))
    }

    pub fn block(&self, index: &BigRational) -> Option<&[ElementRecord]> {
        self.blocks.get(index).map(|b| b.as_slice())
    }

    /// All element ids, sorted.
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.block_of.keys().map(String::as_str)
    }

    pub fn record(&self, id: &str) -> Option<&ElementRecord> {
        let q = self.block_of.get(id)?;
        self.blocks.get(q)?.iter().find(|e| e.id == id)
    }

    pub fn block_index(&self, id: &str) -> Result<&BigRational, GenericError> {
        self.block_of
            .get(id)
            .ok_or_else(|| GenericError::UnknownElement(id.to_string()))
    }

    pub fn rel_generic(&self, a: &str, b: &str) -> Result<Genericity, GenericError> {
        let (qa, qb) = (self.block_index(a)?, self.block_index(b)?);
        Ok(match qa.cmp(qb) {
            std::cmp::Ordering::Less => Genericity::RightGeneric,
            std::cmp::Ordering::Equal => Genericity::Dependent,
            std::cmp::Ordering::Greater => Genericity::LeftGeneric,
        })
    }

    pub fn right_generic(&self, a: &str, b: &str) -> Result<bool, GenericError> {
        Ok(self.rel_generic(a, b)? == Genericity::RightGeneric)
    }

    /// Adds a block strictly between two adjacent indices, or beyond the end
    /// of the order when one side is open.
    ///
    /// The new index is the midpoint, or one past the extreme index at an
    /// open end (zero for an empty order).
    pub fn insert_block_between(
        &self,
        lo: Option<&BigRational>,
        hi: Option<&BigRational>,
        elements: Vec<ElementRecord>,
    ) -> Result<(BlockOrder, BigRational), GenericError> {
        let missing = |q: &BigRational| {
            GenericError::BadInterval(format!("{} is not a block index", format_rational(q)))
        };
        let index = match (lo, hi) {
            (Some(l), Some(h)) => {
                if l >= h {
                    return Err(GenericError::BadInterval(format!(
                        "{} is not below {}",
                        format_rational(l),
                        format_rational(h)
                    )));
                }
                if !self.blocks.contains_key(l) {
                    return Err(missing(l));
                }
                if !self.blocks.contains_key(h) {
                    return Err(missing(h));
                }
                if self.blocks.range(l..h).nth(1).is_some() {
                    return Err(GenericError::BadInterval(format!(
                        "{} and {} are not adjacent",
                        format_rational(l),
                        format_rational(h)
                    )));
                }
                (l + h) / BigRational::from_integer(BigInt::from(2))
            }
            (Some(l), None) => match self.blocks.keys().next_back() {
                Some(top) if top == l => l + BigRational::one(),
                _ => return Err(GenericError::BadInterval(format!("{} is not the greatest index", format_rational(l)))),
            },
            (None, Some(h)) => match self.blocks.keys().next() {
                Some(bottom) if bottom == h => h - BigRational::one(),
                _ => return Err(GenericError::BadInterval(format!("{} is not the least index", format_rational(h)))),
            },
            (None, None) => {
                if !self.blocks.is_empty() {
                    return Err(GenericError::BadInterval("both ends open on a nonempty order".into()));
                }
                BigRational::zero()
            }
        };
        let elements = sorted_block(&index, elements)?;
        let mut block_of = (*self.block_of).clone();
        for e in &elements {
            if block_of.insert(e.id.clone(), index.clone()).is_some() {
                return Err(GenericError::DuplicateElement(e.id.clone()));
            }
        }
        let mut blocks = self.blocks.clone();
        blocks.insert(index.clone(), Arc::new(elements));
        Ok((
            BlockOrder {
                blocks,
                block_of: Arc::new(block_of),
            },
            index,
        ))
    }

    fn indices_of<'a, S: AsRef<str>>(&'a self, seq: &'a [S]) -> Result<Vec<&'a BigRational>, GenericError> {
        seq.iter().map(|id| self.block_index(id.as_ref())).collect()
    }

    /// Block indices strictly increase along `seq`.
    pub fn is_morley<S: AsRef<str>>(&self, seq: &[S]) -> Result<bool, GenericError> {
        let idx = self.indices_of(seq)?;
        Ok(idx.windows(2).all(|w| w[0] < w[1]))
    }

    /// Swaps sequence entries for other members of the same blocks.
    pub fn replace_in_blocks<S: AsRef<str>>(
        &self,
        seq: &[S],
        replacements: &BTreeMap<usize, String>,
    ) -> Result<Vec<String>, GenericError> {
        let mut out: Vec<String> = seq.iter().map(|s| s.as_ref().to_string()).collect();
        for (&position, to) in replacements {
            let from = out.get(position).ok_or(GenericError::BadPosition(position))?;
            if self.block_index(from)? != self.block_index(to)? {
                return Err(GenericError::CrossBlockReplacement {
                    position,
                    from: from.clone(),
                    to: to.clone(),
                });
            }
            out[position] = to.clone();
        }
        debug_assert_eq!(self.is_morley(&out)?, self.is_morley(seq)?);
        Ok(out)
    }

    /// Inserts `id` into a Morley sequence at the place its block dictates.
    ///
    /// If the block is already represented, that occupant is removed and
    /// returned so the result stays Morley.
    pub fn insert_into_morley<S: AsRef<str>>(
        &self,
        seq: &[S],
        id: &str,
    ) -> Result<(Vec<String>, Option<String>), GenericError> {
        if !self.is_morley(seq)? {
            return Err(GenericError::Invalid("sequence is not Morley".into()));
        }
        let q = self.block_index(id)?;
        let mut out = Vec::with_capacity(seq.len() + 1);
        let mut removed = None;
        let mut placed = false;
        for s in seq {
            let s = s.as_ref();
            let qs = self.block_index(s)?;
            if !placed && qs >= q {
                out.push(id.to_string());
                placed = true;
            }
            if qs == q {
                removed = Some(s.to_string());
            } else {
                out.push(s.to_string());
            }
        }
        if !placed {
            out.push(id.to_string());
        }
        Ok((out, removed))
    }

    /// Records in linearization order: by block, then `(tag, rank)`.
    pub fn linear_records(&self) -> impl Iterator<Item = &ElementRecord> {
        self.blocks.values().flat_map(|b| b.iter())
    }

    pub fn linearize_family(&self) -> LinOrder {
        LinOrder::from_ranking(self.linear_records().map(|e| e.id.clone()))
            .expect("element ids are unique")
    }

    /// Ids carrying `tag`, in linearization order.
    pub fn tag_ids(&self, tag: u32) -> Vec<String> {
        self.linear_records()
            .filter(|e| e.tag == tag)
            .map(|e| e.id.clone())
            .collect()
    }

    pub fn tags(&self) -> BTreeSet<u32> {
        self.linear_records().map(|e| e.tag).collect()
    }

    /// The dependence classes as a partition of `order`'s carrier.
    pub fn dependence_partition(&self, order: &LinOrder) -> Result<ConvexPartition, GenericError> {
        let mut classes: BTreeMap<&BigRational, Vec<&str>> = BTreeMap::new();
        for id in order.ranking() {
            classes.entry(self.block_index(id)?).or_default().push(id);
        }
        Ok(ConvexPartition::with_singletons(order, classes.into_values())?)
    }

    /// Merges consecutive blocks; each group starts at one of `starts`
    /// (the least index always starts a group).
    pub fn coarsen(&self, starts: &[BigRational]) -> Result<Coarsening, GenericError> {
        for q in starts {
            if !self.blocks.contains_key(q) {
                return Err(GenericError::Invalid(format!(
                    "{} is not a block index",
                    format_rational(q)
                )));
            }
        }
        let starts: BTreeSet<&BigRational> = starts.iter().collect();
        let mut group_of = BTreeMap::new();
        let mut group = 0usize;
        for (i, (q, els)) in self.blocks.iter().enumerate() {
            if i > 0 && starts.contains(q) {
                group += 1;
            }
            for e in els.iter() {
                group_of.insert(e.id.clone(), group);
            }
        }
        Ok(Coarsening { group_of })
    }

    /// Checks the structural axioms; a well-formed order yields no
    /// violations.
    pub fn verify_block_structure(&self) -> BlockReport {
        let order = self.linearize_family();
        let ids = order.ranking();
        let n = ids.len();
        let mut report = BlockReport::default();

        let mut membership = Vec::new();
        for (q, els) in &self.blocks {
            for e in els.iter() {
                if self.block_of.get(&e.id) != Some(q) {
                    membership.push(format!("`{}` listed in block {} but mapped elsewhere", e.id, format_rational(q)));
                }
            }
        }
        if self.block_of.len() != n {
            membership.push(format!("{} mapped ids for {} records", self.block_of.len(), n));
        }
        report.push("block_membership", membership);

        // Relations over carrier positions; lookups through block_of.
        let rel = |i: usize, j: usize| self.rel_generic(&ids[i], &ids[j]).ok();
        let mut table = vec![vec![None; n]; n];
        let mut lookup = Vec::new();
        for i in 0..n {
            for j in 0..n {
                table[i][j] = rel(i, j);
                if table[i][j].is_none() {
                    lookup.push(format!("`{}` or `{}` has no block", ids[i], ids[j]));
                }
            }
        }
        let right = |i: usize, j: usize| table[i][j] == Some(Genericity::RightGeneric);
        let dep = |i: usize, j: usize| table[i][j] == Some(Genericity::Dependent);

        let mut spo = Vec::new();
        for i in 0..n {
            if right(i, i) {
                spo.push(format!("`{}` is right generic over itself", ids[i]));
            }
            for j in 0..n {
                if right(i, j) && right(j, i) {
                    spo.push(format!("`{}` and `{}` are mutually right generic", ids[i], ids[j]));
                }
                if !right(i, j) {
                    continue;
                }
                for k in 0..n {
                    if right(j, k) && !right(i, k) {
                        spo.push(format!("transitivity fails on `{}`, `{}`, `{}`", ids[i], ids[j], ids[k]));
                    }
                }
            }
        }
        spo.extend(lookup);
        report.push("strict_partial_order", spo);

        let mut incomparability = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let incomparable = !right(i, j) && !right(j, i);
                if incomparable != dep(i, j) {
                    incomparability.push(format!("`{}`, `{}`: incomparable = {incomparable}", ids[i], ids[j]));
                }
            }
        }
        report.push("incomparability_is_dependence", incomparability);

        let mut equivalence = Vec::new();
        for i in 0..n {
            if !dep(i, i) {
                equivalence.push(format!("`{}` not dependent on itself", ids[i]));
            }
            for j in 0..n {
                if dep(i, j) != dep(j, i) {
                    equivalence.push(format!("dependence of `{}`, `{}` is not symmetric", ids[i], ids[j]));
                }
                if !dep(i, j) {
                    continue;
                }
                for k in 0..n {
                    if dep(j, k) && !dep(i, k) {
                        equivalence.push(format!("dependence not transitive on `{}`, `{}`, `{}`", ids[i], ids[j], ids[k]));
                    }
                }
            }
        }
        report.push("dependence_equivalence", equivalence);

        // Each dependence class occupies a run of consecutive positions.
        let mut convexity = Vec::new();
        for i in 0..n {
            for k in i + 2..n {
                if dep(i, k) {
                    for j in i + 1..k {
                        if !dep(i, j) {
                            convexity.push(format!("`{}` splits the class of `{}` and `{}`", ids[j], ids[i], ids[k]));
                        }
                    }
                }
            }
        }
        report.push("dependence_classes_convex", convexity);

        let mut extension = Vec::new();
        for i in 0..n {
            for j in 0..i {
                if right(i, j) {
                    extension.push(format!("`{}` right generic over `{}` but placed after it", ids[i], ids[j]));
                }
            }
        }
        report.push("linear_extension", extension);

        let mut density = Vec::new();
        let keys: Vec<&BigRational> = self.blocks.keys().collect();
        for w in keys.windows(2) {
            let fresh = ElementRecord::new(fresh_id(self), 0, 0);
            match self.insert_block_between(Some(w[0]), Some(w[1]), vec![fresh.clone()]) {
                Ok((bigger, q)) => {
                    let below = self.blocks[w[0]][0].id.as_str();
                    let above = self.blocks[w[1]][0].id.as_str();
                    let between = bigger.right_generic(below, &fresh.id).unwrap_or(false)
                        && bigger.right_generic(&fresh.id, above).unwrap_or(false);
                    if !(w[0] < &q && &q < w[1]) || !between {
                        density.push(format!(
                            "insertion between {} and {} does not interleave",
                            format_rational(w[0]),
                            format_rational(w[1])
                        ));
                    }
                }
                Err(e) => density.push(format!(
                    "insertion between {} and {} failed: {e}",
                    format_rational(w[0]),
                    format_rational(w[1])
                )),
            }
        }
        report.push("density", density);

        let mut tie_break = Vec::new();
        for w in ids.windows(2) {
            let (a, b) = (self.record(&w[0]), self.record(&w[1]));
            if let (Some(a), Some(b)) = (a, b) {
                let same = self.block_of.get(&a.id) == self.block_of.get(&b.id);
                if same && a.key() >= b.key() {
                    tie_break.push(format!("`{}` precedes `{}` against (tag, rank)", a.id, b.id));
                }
            }
        }
        report.push("tie_break", tie_break);

        let mut per_tag = Vec::new();
        for tag in self.tags() {
            let seq = self.tag_ids(tag);
            for w in seq.windows(2) {
                let key = |id: &str| self.block_of.get(id).cloned().zip(self.record(id).map(|r| r.rank));
                if key(&w[0]) >= key(&w[1]) {
                    per_tag.push(format!("tag {tag}: `{}` and `{}` out of block-then-rank order", w[0], w[1]));
                }
            }
        }
        report.push("tag_restriction", per_tag);

        report
    }

    /// Test hook: reassigns `id` to another block index in the lookup map
    /// only, leaving the block contents untouched.
    #[cfg(test)]
    fn corrupt_block_of(&self, id: &str, index: BigRational) -> BlockOrder {
        let mut block_of = (*self.block_of).clone();
        block_of.insert(id.to_string(), index);
        BlockOrder {
            blocks: self.blocks.clone(),
            block_of: Arc::new(block_of),
        }
    }
}

fn fresh_id(b: &BlockOrder) -> String {
    let mut id = String::from("_fresh");
    while b.block_of.contains_key(&id) {
        id.push('_');
    }
    id
}

/// A grouping of consecutive blocks into coarser classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coarsening {
    group_of: BTreeMap<String, usize>,
}

impl Coarsening {
    pub fn group(&self, id: &str) -> Result<usize, GenericError> {
        self.group_of
            .get(id)
            .copied()
            .ok_or_else(|| GenericError::UnknownElement(id.to_string()))
    }

    pub fn rel_generic(&self, a: &str, b: &str) -> Result<Genericity, GenericError> {
        Ok(match self.group(a)?.cmp(&self.group(b)?) {
            std::cmp::Ordering::Less => Genericity::RightGeneric,
            std::cmp::Ordering::Equal => Genericity::Dependent,
            std::cmp::Ordering::Greater => Genericity::LeftGeneric,
        })
    }

    /// The coarse classes restricted to `order`'s carrier.
    pub fn partition(&self, order: &LinOrder) -> Result<ConvexPartition, GenericError> {
        let mut classes: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
        for id in order.ranking() {
            classes.entry(self.group(id)?).or_default().push(id);
        }
        Ok(ConvexPartition::with_singletons(order, classes.into_values())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub checks: Vec<Check>,
}

impl BlockReport {
    fn push(&mut self, name: &str, violations: Vec<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: violations.is_empty(),
            violations,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
