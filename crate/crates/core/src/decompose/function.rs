//! Monotonicity decompositions of functions between finite orders.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{decompose_preorder, DecomposeError, DecompositionResult, TotalPreorder};
use crate::order::{apply_chain, ConvexPartition, EquivChain, LinOrder};

/// A total map from a domain order into a codomain order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FnRepr", into = "FnRepr")]
pub struct OrderedFn {
    domain: LinOrder,
    codomain: LinOrder,
    map: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct FnRepr {
    map: BTreeMap<String, String>,
    domain: LinOrder,
    codomain: LinOrder,
}

impl TryFrom<FnRepr> for OrderedFn {
    type Error = DecomposeError;

    fn try_from(r: FnRepr) -> Result<Self, Self::Error> {
        OrderedFn::new(r.domain, r.codomain, r.map)
    }
}

impl From<OrderedFn> for FnRepr {
    fn from(f: OrderedFn) -> Self {
        FnRepr {
            map: f.map,
            domain: f.domain,
            codomain: f.codomain,
        }
    }
}

impl OrderedFn {
    pub fn new<K: Into<String>, V: Into<String>>(
        domain: LinOrder,
        codomain: LinOrder,
        map: impl IntoIterator<Item = (K, V)>,
    ) -> Result<Self, DecomposeError> {
        let map: BTreeMap<String, String> =
            map.into_iter().map(|(k, v)| (k.into(), v.into())).collect();
        for x in domain.ranking() {
            match map.get(x) {
                None => {
                    return Err(DecomposeError::InvalidFunction(format!(
                        "no value for `{x}`"
                    )))
                }
                Some(y) if !codomain.contains(y) => {
                    return Err(DecomposeError::InvalidFunction(format!(
                        "value `{y}` of `{x}` is not in the codomain"
                    )))
                }
                Some(_) => {}
            }
        }
        if map.len() != domain.len() {
            let stray = map.keys().find(|k| !domain.contains(k)).unwrap();
            return Err(DecomposeError::InvalidFunction(format!(
                "`{stray}` is not in the domain"
            )));
        }
        Ok(OrderedFn {
            domain,
            codomain,
            map,
        })
    }

    pub fn domain(&self) -> &LinOrder {
        &self.domain
    }

    pub fn codomain(&self) -> &LinOrder {
        &self.codomain
    }

    pub fn map(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    pub fn apply(&self, x: &str) -> Option<&str> {
        self.map.get(x).map(String::as_str)
    }

    fn value_rank(&self, x: &str) -> usize {
        self.codomain.rank(&self.map[x]).expect("validated image")
    }

    pub fn image(&self) -> BTreeSet<&str> {
        self.map.values().map(String::as_str).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.image().len() <= 1
    }

    /// The pulled-back preorder `x ≼ y ⇔ f(x) ⊴ f(y)`.
    pub fn preorder(&self) -> TotalPreorder {
        TotalPreorder::from_keys(
            self.domain
                .ranking()
                .iter()
                .map(|x| (x.clone(), self.value_rank(x))),
        )
    }

    /// Fibres of the map, listed along the domain order by first member.
    pub fn kernel(&self) -> ConvexPartition {
        let mut fibres: Vec<Vec<String>> = Vec::new();
        let mut index: HashMap<&str, usize> = HashMap::new();
        for x in self.domain.ranking() {
            let y = self.map[x].as_str();
            match index.get(y) {
                Some(&i) => fibres[i].push(x.clone()),
                None => {
                    index.insert(y, fibres.len());
                    fibres.push(vec![x.clone()]);
                }
            }
        }
        ConvexPartition::new(fibres).expect("fibres partition the domain")
    }

    /// The restriction to `subset` of the domain (domain order induced).
    pub fn restrict<'a>(
        &self,
        subset: impl IntoIterator<Item = &'a str>,
    ) -> Result<OrderedFn, DecomposeError> {
        let domain = self.domain.restrict(subset)?;
        let map: Vec<(String, String)> = domain
            .ranking()
            .iter()
            .map(|x| (x.clone(), self.map[x].clone()))
            .collect();
        OrderedFn::new(domain, self.codomain.clone(), map)
    }

    /// Same map with the domain reordered (carrier must match).
    pub fn with_domain_order(&self, domain: LinOrder) -> Result<OrderedFn, DecomposeError> {
        OrderedFn::new(domain, self.codomain.clone(), self.map.clone())
    }
}

/// `x < x'` in `domain` implies `f(x) ⊴ f(x')` in `codomain`.
pub fn is_increasing(domain: &LinOrder, codomain: &LinOrder, f: &OrderedFn) -> bool {
    domain.ranking().windows(2).all(|w| {
        let (a, b) = (&f.map[&w[0]], &f.map[&w[1]]);
        codomain.rank(a) <= codomain.rank(b)
    })
}

fn is_strictly_monotone(domain: &LinOrder, codomain: &LinOrder, f: &OrderedFn) -> bool {
    let ranks: Vec<usize> = domain
        .ranking()
        .iter()
        .map(|x| codomain.rank(&f.map[x]).expect("validated image"))
        .collect();
    ranks.windows(2).all(|w| w[0] < w[1]) || ranks.windows(2).all(|w| w[0] > w[1])
}

/// Chain `Ker f = E_0 ⊊ … ⊊ E_n` such that `f` is `(<_{vec E}, ◁)`-increasing.
pub fn monotone_decompose_domain(f: &OrderedFn) -> Result<DecompositionResult, DecomposeError> {
    if f.is_constant() {
        return Err(DecomposeError::ConstantFunction);
    }
    let (_, chain) = decompose_preorder(&f.domain, &f.preorder())?;
    Ok(DecompositionResult::from_chain(chain))
}

/// Pushes the levels of a domain chain (above the kernel) forward to the
/// codomain.
///
/// On the image, `f(x)` and `f(y)` share a block iff `x` and `y` do. A
/// codomain point outside the image but inside its convex hull joins the
/// block of the nearest image point on its left; points below or above the
/// whole image stay singletons.
pub fn pushforward_chain(
    f: &OrderedFn,
    chain: &EquivChain,
) -> Result<Vec<ConvexPartition>, DecomposeError> {
    let image = f.image();
    let image_ranks: BTreeSet<usize> = image
        .iter()
        .map(|y| f.codomain.rank(y).expect("validated image"))
        .collect();
    let (lo, hi) = match (image_ranks.first(), image_ranks.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Ok(Vec::new()),
    };
    let kernel = f.kernel();
    let mut out = Vec::new();
    for level in chain.levels() {
        if !kernel.refines(level) {
            return Err(DecomposeError::Failure(
                "chain level does not contain the kernel".into(),
            ));
        }
        if level == &kernel {
            continue;
        }
        let mut label: HashMap<&str, usize> = HashMap::new();
        for x in f.domain.ranking() {
            label.insert(f.map[x].as_str(), level.block_index(x).expect("carrier"));
        }
        let mut tags: Vec<Option<usize>> = Vec::with_capacity(f.codomain.len());
        let mut blocks: Vec<Vec<String>> = Vec::new();
        for (r, y) in f.codomain.ranking().iter().enumerate() {
            let tag = if r < lo || r > hi {
                None
            } else if let Some(&b) = label.get(y.as_str()) {
                Some(b)
            } else {
                tags[r - 1]
            };
            if tag.is_some() && r > 0 && tags[r - 1] == tag {
                blocks.last_mut().unwrap().push(y.clone());
            } else {
                blocks.push(vec![y.clone()]);
            }
            tags.push(tag);
        }
        let partition = ConvexPartition::new(blocks)?;
        if let Some(b) = partition.first_non_convex_block(&f.codomain) {
            return Err(DecomposeError::Failure(format!(
                "pushforward block {b} is not convex"
            )));
        }
        out.push(partition);
    }
    Ok(out)
}

/// Codomain chain `vec F` with `f` `(<, ◁_{vec F})`-increasing.
pub fn monotone_decompose_codomain(f: &OrderedFn) -> Result<Vec<ConvexPartition>, DecomposeError> {
    let domain = monotone_decompose_domain(f)?;
    let levels = pushforward_chain(f, &domain.chain)?;
    let reordered = apply_chain(&f.codomain, &levels)?;
    if !is_increasing(&f.domain, &reordered, f) {
        return Err(DecomposeError::Failure(
            "pushforward chain does not make f increasing".into(),
        ));
    }
    Ok(levels)
}

/// A nontrivial convex equivalence on whose classes `f` is constant or
/// strictly monotone.
pub fn local_monotonicity(f: &OrderedFn) -> Result<ConvexPartition, DecomposeError> {
    if f.is_constant() {
        return Err(DecomposeError::ConstantFunction);
    }
    let kernel = f.kernel();
    if !kernel.is_discrete() {
        if let Some(b) = kernel.first_non_convex_block(&f.domain) {
            return Err(DecomposeError::NonConvexKernel(kernel.blocks()[b][0].clone()));
        }
        return kernel.sorted_by(&f.domain).map_err(Into::into);
    }
    if is_strictly_monotone(&f.domain, &f.codomain, f) {
        return Ok(ConvexPartition::one_block(&f.domain));
    }
    let chain = monotone_decompose_domain(f)?.chain;
    Ok(chain.levels()[1].clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperMonotonicity {
    pub partition: ConvexPartition,
    pub direction: Direction,
}

/// A convex equivalence `E ≠ 1` across whose classes `f` is strictly
/// increasing or strictly decreasing.
pub fn upper_monotonicity(f: &OrderedFn) -> Result<UpperMonotonicity, DecomposeError> {
    let chain = monotone_decompose_domain(f)?.chain;
    let levels = chain.levels();
    let top = levels.last().expect("nonempty chain");
    if !top.is_one_block() {
        return Ok(UpperMonotonicity {
            partition: top.clone(),
            direction: Direction::Increasing,
        });
    }
    match levels.len() {
        0 | 1 => Err(DecomposeError::Failure("no level below the one-block relation".into())),
        n => Ok(UpperMonotonicity {
            partition: levels[n - 2].clone(),
            direction: Direction::Decreasing,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseResult {
    pub pieces: ConvexPartition,
    pub chain: EquivChain,
}

impl PiecewiseResult {
    /// Number of pieces.
    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }
}

fn piece_decomposes(f: &OrderedFn, piece: &[String]) -> bool {
    let Ok(g) = f.restrict(piece.iter().map(String::as_str)) else {
        return false;
    };
    decompose_preorder(&g.domain, &g.preorder()).is_ok()
}

/// Greedy left-to-right split of the domain into convex pieces on which `f`
/// admits a weak monotonicity chain, with the per-piece chains merged into a
/// single chain on the whole domain.
pub fn piecewise_decompose(f: &OrderedFn) -> PiecewiseResult {
    let ids = f.domain.ranking();
    let mut pieces: Vec<std::ops::Range<usize>> = Vec::new();
    let mut start = 0;
    while start < ids.len() {
        let mut end = start + 1;
        while end < ids.len() && piece_decomposes(f, &ids[start..=end]) {
            end += 1;
        }
        pieces.push(start..end);
        start = end;
    }

    // Per-piece chains; constant pieces contribute the empty chain.
    let mut piece_chains: Vec<Vec<ConvexPartition>> = Vec::new();
    for piece in &pieces {
        let g = f
            .restrict(ids[piece.clone()].iter().map(String::as_str))
            .expect("piece of the domain");
        let levels = if g.is_constant() {
            Vec::new()
        } else {
            monotone_decompose_domain(&g)
                .expect("piece decomposes")
                .chain
                .levels()
                .to_vec()
        };
        piece_chains.push(levels);
    }
    let height = piece_chains.iter().map(Vec::len).max().unwrap_or(0);

    // Pad at the bottom with discrete levels, then unite blockwise.
    let mut levels = Vec::with_capacity(height);
    for j in 0..height {
        let mut blocks: Vec<Vec<String>> = Vec::new();
        for (piece, chain) in pieces.iter().zip(&piece_chains) {
            let pad = height - chain.len();
            if j < pad {
                blocks.extend(ids[piece.clone()].iter().map(|x| vec![x.clone()]));
            } else {
                let piece_order = f.domain.restrict(ids[piece.clone()].iter().map(String::as_str)).unwrap();
                let level = chain[j - pad].sorted_by(&piece_order).unwrap();
                blocks.extend(level.blocks().iter().cloned());
            }
        }
        levels.push(ConvexPartition::new(blocks).expect("pieces are disjoint"));
    }
    let pieces = ConvexPartition::from_ranges(&f.domain, pieces);
    let chain = EquivChain::new(levels).expect("padded union of strict chains is strict");
    PiecewiseResult { pieces, chain }
}
