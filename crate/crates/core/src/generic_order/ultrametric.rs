use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, rational_vec, GenericError};
use crate::order::{ConvexPartition, EquivChain};

/// A chain of partitions with a weight per level.
///
/// Level 0 is the discrete partition with weight 0. The one-block relation
/// carries weight 1; when the chain does not end with it, it is implicit and
/// its weight is the final entry of `weights`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WeightedRepr", into = "WeightedRepr")]
pub struct WeightedChain {
    chain: EquivChain,
    weights: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct WeightedRepr {
    chain: EquivChain,
    #[serde(with = "rational_vec")]
    weights: Vec<BigRational>,
}

impl TryFrom<WeightedRepr> for WeightedChain {
    type Error = GenericError;

    fn try_from(r: WeightedRepr) -> Result<Self, GenericError> {
        WeightedChain::new(r.chain, r.weights)
    }
}

impl From<WeightedChain> for WeightedRepr {
    fn from(w: WeightedChain) -> Self {
        WeightedRepr {
            chain: w.chain,
            weights: w.weights,
        }
    }
}

impl WeightedChain {
    pub fn new(chain: EquivChain, weights: Vec<BigRational>) -> Result<Self, GenericError> {
        let bad = |m: String| Err(GenericError::BadWeights(m));
        match chain.levels().first() {
            Some(l) if l.is_discrete() => {}
            _ => return bad("level 0 must be the discrete partition".into()),
        }
        let expected = if chain.ends_with_one_block() {
            chain.len()
        } else {
            chain.len() + 1
        };
        if weights.len() != expected {
            return bad(format!("expected {expected} weights, got {}", weights.len()));
        }
        if !weights[0].is_zero() {
            return bad(format!("discrete level has weight {}", format_rational(&weights[0])));
        }
        if !weights[expected - 1].is_one() {
            return bad(format!(
                "one-block relation has weight {}",
                format_rational(&weights[expected - 1])
            ));
        }
        if let Some(i) = weights.windows(2).position(|w| w[0] >= w[1]) {
            return bad(format!("weights not strictly increasing at {}", i + 1));
        }
        Ok(WeightedChain { chain, weights })
    }

    pub fn chain(&self) -> &EquivChain {
        &self.chain
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    fn carrier_contains(&self, id: &str) -> bool {
        self.chain.levels()[0].block_index(id).is_some()
    }

    /// Ids of the carrier, in the order of the discrete level.
    pub fn carrier(&self) -> Vec<&str> {
        self.chain.levels()[0]
            .blocks()
            .iter()
            .flatten()
            .map(String::as_str)
            .collect()
    }
}

/// Least weight of a level relating `x` and `y`; zero when they coincide.
pub fn ultrametric(w: &WeightedChain, x: &str, y: &str) -> Result<BigRational, GenericError> {
    for id in [x, y] {
        if !w.carrier_contains(id) {
            return Err(GenericError::UnknownElement(id.to_string()));
        }
    }
    if x == y {
        return Ok(BigRational::zero());
    }
    let level = w
        .chain
        .levels()
        .iter()
        .position(|l: &ConvexPartition| l.related(x, y))
        .unwrap_or(w.weights.len() - 1);
    Ok(w.weights[level].clone())
}
