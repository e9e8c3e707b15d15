//! Rank sequences of subtree posets for merged brooms.
//!
//! A broom `B(m, k)` is a path of `k` edges ending in a vertex with `m`
//! pendant leaves, rooted at the far end of the path. Merging two brooms
//! identifies their roots. The poset of rooted, vertex-induced subtrees of
//! such a tree is graded by vertex count, and its rank sequence
//! `r_1, ..., r_v` counts the subtrees of each size.
//!
//! This crate computes those rank sequences three independent ways (closed
//! formula, convolution of the per-broom sequences, and a generic subtree
//! dynamic program over the actual tree), decides rank unimodality both by a
//! constant-time closed criterion and by direct inspection, and counts the
//! trees with non-unimodal rank sequences per vertex count, again by both a
//! closed formula and exhaustive enumeration.
//!
//! All arithmetic is exact: values are `num_bigint::BigInt`, so no sweep is
//! capped by machine-word overflow.
//!
//! Module map:
//! - [`seqcore`]: integer sequences, binomials, convolution, unimodality.
//! - [`broom`]: broom pairs, rank sequences, differences, classifiers.
//! - [`oracle`]: explicit rooted trees, subtree counting, canonical forms.
//! - [`enumeration`]: counting sequences, matrix correspondence, brute force.
//! - [`verify`]: cross-check sweeps shared by the CLI and the test suite.
//! - [`cli`]: the `broomrank` command-line tool.

pub mod broom;
pub mod cli;
pub mod enumeration;
pub mod oracle;
pub mod seqcore;
pub mod verify;

pub use num_bigint::BigInt;

pub use broom::{BroomPair, InvalidPair, RankSequence, UnimodalityCondition, UnimodalityVerdict};
pub use seqcore::IntSeq;
