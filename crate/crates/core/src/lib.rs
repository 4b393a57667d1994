//! Finite combinatorics of nested convex block reversals.
//!
//! * [`order`]: linear orders, convex partitions and the reversal algebra.
//! * [`convexity`]: convex components of subsets.
//! * [`decompose`]: chains relating two orders and monotone decompositions of
//!   functions.
//! * [`helly`]: Helly-type extraction of consistent subfamilies.
//! * [`generic_order`]: rational-indexed block orders and ultrametrics.
//! * [`random`]: seeded instance generators.

pub mod convexity;
pub mod decompose;
pub mod generic_order;
pub mod helly;
pub mod order;
pub mod random;

pub use order::{apply_chain, is_convex_equiv, quotient, reverse_within, ConvexPartition, EquivChain, LinOrder, OrderError};
