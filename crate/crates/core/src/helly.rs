//! Helly-type extraction of subfamilies with a common point.
//!
//! For convex sets of a linear order, pairwise intersection already forces a
//! common point (the largest left endpoint). For sets with at most `N` convex
//! components, pairs are coloured by the first pair of components that meet;
//! within a monochromatic subfamily either the chosen components are
//! themselves pairwise intersecting intervals, or they are nested in a way
//! that makes one middle component lie inside all later sets.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convexity::rank_runs;
use crate::order::{LinOrder, OrderError};

/// Largest family size for which monochromatic subsets are searched
/// exhaustively.
pub const EXHAUSTIVE_CLIQUE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HellyError {
    #[error("set {0} is empty")]
    EmptySet(usize),
    #[error("set {index} has {components} convex components, bound is {bound}")]
    ComponentBoundExceeded {
        index: usize,
        components: usize,
        bound: usize,
    },
    #[error("set {0} is not convex")]
    NonConvexSet(usize),
    #[error("sets {0} and {1} are disjoint")]
    TwoIntersectionViolated(usize, usize),
    #[error("no common point: {0}")]
    Failure(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// An indexed family of nonempty subsets of an ordered carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct SetFamily {
    order: LinOrder,
    // Each set as a sorted, duplicate-free list of ranks.
    sets: Vec<Vec<usize>>,
    component_bound: usize,
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    order: LinOrder,
    sets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    component_bound: Option<usize>,
}

impl TryFrom<FamilyRepr> for SetFamily {
    type Error = HellyError;

    fn try_from(r: FamilyRepr) -> Result<Self, Self::Error> {
        match r.component_bound {
            Some(bound) => SetFamily::with_bound(r.order, r.sets, bound),
            None => SetFamily::new(r.order, r.sets),
        }
    }
}

impl From<SetFamily> for FamilyRepr {
    fn from(f: SetFamily) -> Self {
        let sets = (0..f.sets.len()).map(|i| f.set(i)).collect();
        FamilyRepr {
            order: f.order,
            sets,
            component_bound: Some(f.component_bound),
        }
    }
}

impl SetFamily {
    /// Family whose bound is the largest component count present.
    pub fn new<S: AsRef<str>, T: IntoIterator<Item = S>>(
        order: LinOrder,
        sets: impl IntoIterator<Item = T>,
    ) -> Result<Self, HellyError> {
        let mut ranked = Vec::new();
        for (i, set) in sets.into_iter().enumerate() {
            let mut ranks = Vec::new();
            for id in set {
                ranks.push(order.rank_of(id.as_ref())?);
            }
            ranks.sort_unstable();
            ranks.dedup();
            if ranks.is_empty() {
                return Err(HellyError::EmptySet(i));
            }
            ranked.push(ranks);
        }
        let component_bound = ranked.iter().map(|s| rank_runs(s).len()).max().unwrap_or(0);
        Ok(SetFamily {
            order,
            sets: ranked,
            component_bound,
        })
    }

    pub fn with_bound<S: AsRef<str>, T: IntoIterator<Item = S>>(
        order: LinOrder,
        sets: impl IntoIterator<Item = T>,
        bound: usize,
    ) -> Result<Self, HellyError> {
        let mut family = SetFamily::new(order, sets)?;
        for (index, s) in family.sets.iter().enumerate() {
            let components = rank_runs(s).len();
            if components > bound {
                return Err(HellyError::ComponentBoundExceeded {
                    index,
                    components,
                    bound,
                });
            }
        }
        family.component_bound = bound;
        Ok(family)
    }

    pub fn order(&self) -> &LinOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn component_bound(&self) -> usize {
        self.component_bound
    }

    /// Members of set `i`, in increasing order.
    pub fn set(&self, i: usize) -> Vec<String> {
        self.sets[i]
            .iter()
            .map(|&r| self.order.at(r).to_string())
            .collect()
    }

    pub fn contains(&self, i: usize, id: &str) -> bool {
        self.order
            .rank(id)
            .is_some_and(|r| self.sets[i].binary_search(&r).is_ok())
    }

    fn components(&self, i: usize) -> Vec<Range<usize>> {
        rank_runs(&self.sets[i])
    }

    fn intersects(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.sets[i], &self.sets[j]);
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// First disjoint pair `(i, j)`, `i < j`, in lexicographic order.
    pub fn first_disjoint_pair(&self) -> Option<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| (i + 1..self.len()).map(move |j| (i, j)))
            .find(|&(i, j)| !self.intersects(i, j))
    }
}

/// One-dimensional Helly on closed rank intervals `[lo, hi]`.
///
/// Returns the least common point when the intervals pairwise intersect,
/// otherwise the lexicographically first disjoint pair.
pub fn interval_helly(intervals: &[(usize, usize)]) -> Result<usize, (usize, usize)> {
    for i in 0..intervals.len() {
        for j in i + 1..intervals.len() {
            let (a, b) = (intervals[i], intervals[j]);
            if a.1 < b.0 || b.1 < a.0 {
                return Err((i, j));
            }
        }
    }
    Ok(intervals.iter().map(|iv| iv.0).max().unwrap_or(0))
}

/// Common point of a pairwise intersecting family of convex sets.
pub fn convex_helly_core(family: &SetFamily) -> Result<String, HellyError> {
    let mut intervals = Vec::with_capacity(family.len());
    for (i, s) in family.sets.iter().enumerate() {
        let (lo, hi) = (s[0], s[s.len() - 1]);
        if hi + 1 - lo != s.len() {
            return Err(HellyError::NonConvexSet(i));
        }
        intervals.push((lo, hi));
    }
    if intervals.is_empty() {
        return Err(HellyError::Failure("empty family".into()));
    }
    match interval_helly(&intervals) {
        Ok(r) => Ok(family.order.at(r).to_string()),
        Err((i, j)) => Err(HellyError::Failure(format!("sets {i} and {j} are disjoint"))),
    }
}

/// How the returned subfamily was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtractionMode {
    /// Colour `(i, i)`: the `i`-th components pairwise meet, Helly applies.
    SameComponent { component: usize },
    /// Colour `(i, j)`, `i ≠ j`: a middle component lies in every later set.
    Containment {
        first: usize,
        second: usize,
        middle_set: usize,
    },
    /// Colour class too small; the largest point stabber was used instead.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CliqueSearch {
    Exhaustive,
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub indices: Vec<usize>,
    pub witness: String,
    pub mode: ExtractionMode,
    pub clique_search: CliqueSearch,
    /// Pair colouring rule; always `"lexicographic"` (minimal `i`, then `j`).
    pub coloring: String,
}

/// Colour of the pair `n < m`: the lexicographically least `(i, j)` (1-based
/// component indices) with `C_n^i ∩ C_m^j ≠ ∅`.
fn pair_color(comps: &[Vec<Range<usize>>], n: usize, m: usize) -> Option<(usize, usize)> {
    for (i, a) in comps[n].iter().enumerate() {
        for (j, b) in comps[m].iter().enumerate() {
            if a.start < b.end && b.start < a.end {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

/// Largest clique (lexicographically least among ties) in a graph given by
/// adjacency bitmasks.
fn max_clique_exhaustive(adj: &[u32]) -> Vec<usize> {
    let k = adj.len();
    let mut best: u32 = if k > 0 { 1 } else { 0 };
    let mut best_key = (best.count_ones(), best.reverse_bits());
    for mask in 1u32..(1u32 << k) {
        if mask.count_ones() < best_key.0 {
            continue;
        }
        let is_clique = (0..k)
            .filter(|v| mask >> v & 1 == 1)
            .all(|v| mask & !(1 << v) & !adj[v] == 0);
        if is_clique {
            let key = (mask.count_ones(), mask.reverse_bits());
            if key > best_key {
                best = mask;
                best_key = key;
            }
        }
    }
    (0..k).filter(|v| best >> v & 1 == 1).collect()
}

fn max_clique_greedy(adj: &[Vec<bool>]) -> Vec<usize> {
    let k = adj.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].iter().filter(|&&e| e).count()));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| adj[u][v]) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

/// Finds at least `target_size` sets with a common point.
///
/// The family must be pairwise intersecting. Pairs are coloured, the largest
/// monochromatic subfamily of each colour is located, and the colour's case
/// (equal components or containment) produces a subfamily with a verified
/// witness. If no colour class is large enough, the point lying in the most
/// sets is used, which is the exact maximum.
pub fn extract_consistent_subfamily(
    family: &SetFamily,
    target_size: usize,
) -> Result<Extraction, HellyError> {
    if let Some((i, j)) = family.first_disjoint_pair() {
        return Err(HellyError::TwoIntersectionViolated(i, j));
    }
    let k = family.len();
    let target = target_size.max(1);
    if target > k {
        return Err(HellyError::Failure(format!(
            "family has only {k} sets, {target} requested"
        )));
    }
    let comps: Vec<Vec<Range<usize>>> = (0..k).map(|i| family.components(i)).collect();

    let mut classes: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for n in 0..k {
        for m in n + 1..k {
            let color = pair_color(&comps, n, m).expect("pairwise intersecting");
            classes.entry(color).or_default().push((n, m));
        }
    }
    let clique_search = if k <= EXHAUSTIVE_CLIQUE_LIMIT {
        CliqueSearch::Exhaustive
    } else {
        CliqueSearch::Greedy
    };

    let mut best: Option<Extraction> = None;
    for (&(i, j), edges) in &classes {
        let clique = match clique_search {
            CliqueSearch::Exhaustive => {
                let mut adj = vec![0u32; k];
                for &(n, m) in edges {
                    adj[n] |= 1 << m;
                    adj[m] |= 1 << n;
                }
                max_clique_exhaustive(&adj)
            }
            CliqueSearch::Greedy => {
                let mut adj = vec![vec![false; k]; k];
                for &(n, m) in edges {
                    adj[n][m] = true;
                    adj[m][n] = true;
                }
                max_clique_greedy(&adj)
            }
        };
        if let Some(found) = monochromatic_case(family, &comps, &clique, i, j) {
            let better = best
                .as_ref()
                .is_none_or(|b| found.indices.len() > b.indices.len());
            if better {
                best = Some(Extraction {
                    clique_search,
                    ..found
                });
            }
        }
    }
    if let Some(b) = best.filter(|b| b.indices.len() >= target) {
        return Ok(b);
    }

    // Largest stabbed subfamily: a common point lies in every chosen set.
    let mut best_point: Option<(usize, Vec<usize>)> = None;
    for r in 0..family.order.len() {
        let members: Vec<usize> = (0..k)
            .filter(|&s| family.sets[s].binary_search(&r).is_ok())
            .collect();
        if best_point.as_ref().is_none_or(|(_, m)| members.len() > m.len()) {
            best_point = Some((r, members));
        }
    }
    match best_point {
        Some((r, members)) if members.len() >= target => Ok(Extraction {
            indices: members,
            witness: family.order.at(r).to_string(),
            mode: ExtractionMode::Exhaustive,
            clique_search,
            coloring: "lexicographic".into(),
        }),
        _ => Err(HellyError::Failure(format!(
            "no {target} sets share a point"
        ))),
    }
}

fn monochromatic_case(
    family: &SetFamily,
    comps: &[Vec<Range<usize>>],
    clique: &[usize],
    i: usize,
    j: usize,
) -> Option<Extraction> {
    let extraction = |indices: Vec<usize>, witness: usize, mode| Extraction {
        indices,
        witness: family.order.at(witness).to_string(),
        mode,
        clique_search: CliqueSearch::Exhaustive,
        coloring: "lexicographic".into(),
    };
    if clique.is_empty() {
        return None;
    }
    if i == j {
        let intervals: Vec<(usize, usize)> = clique
            .iter()
            .map(|&n| {
                let c = &comps[n][i - 1];
                (c.start, c.end - 1)
            })
            .collect();
        let w = interval_helly(&intervals).ok()?;
        return Some(extraction(
            clique.to_vec(),
            w,
            ExtractionMode::SameComponent { component: i },
        ));
    }
    if clique.len() < 4 {
        // Too short for the nesting argument; any pair shares a point.
        let n = clique[0];
        let sub: Vec<usize> = clique.iter().copied().take(2).collect();
        let w = if sub.len() == 2 {
            *family.sets[n]
                .iter()
                .find(|r| family.sets[sub[1]].binary_search(r).is_ok())?
        } else {
            family.sets[n][0]
        };
        return Some(extraction(sub, w, ExtractionMode::Exhaustive));
    }
    // i < j: the i-th components decrease along the clique, so the j-th
    // component of every set from the fourth on meets the third and first
    // sets' i-th components and covers the second's. i > j mirrors this
    // from the other end.
    let len = clique.len();
    let (middle_set, middle, mut indices): (usize, Range<usize>, Vec<usize>) = if i < j {
        let n = clique[1];
        (n, comps[n][i - 1].clone(), clique[3..].to_vec())
    } else {
        let n = clique[len - 2];
        (n, comps[n][j - 1].clone(), clique[..len - 3].to_vec())
    };
    indices.push(middle_set);
    indices.sort_unstable();
    let contained = indices
        .iter()
        .all(|&s| middle.clone().all(|r| family.sets[s].binary_search(&r).is_ok()));
    if !contained {
        return None;
    }
    Some(extraction(
        indices,
        middle.start,
        ExtractionMode::Containment {
            first: i,
            second: j,
            middle_set,
        },
    ))
}
