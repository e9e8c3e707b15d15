//! Broom pairs and their rank sequences.
//!
//! Key items:
//! - [`BroomPair`]: a canonicalized merge of two brooms `B(m, p) * B(n, q)`.
//! - [`broom_rank`]: rank sequence of a single broom.
//! - [`rank_convolution`] / [`rank_closed`]: the merged rank sequence by
//!   convolution and by the five-case closed formula; they agree exactly.
//! - [`first_differences`] / [`diff_closed`]: consecutive differences of the
//!   rank sequence, computed from the sequence and in closed form.
//! - [`classify_closed`] / [`classify_direct`]: the constant-time unimodality
//!   criterion and the direct sequence scan.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::seqcore::{binomial, binomial_row, convolve, is_unimodal, IntSeq};

/// Both brooms of a pair need at least one pendant vertex.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("a broom needs at least one pendant vertex, got m={m}, n={n}")]
pub struct InvalidPair {
    pub m: u32,
    pub n: u32,
}

/// Two brooms `B(m, p)` and `B(n, q)` merged at their roots.
///
/// `m`, `n` are pendant-leaf counts (at least 1) and `p`, `q` handle lengths
/// (edge counts, possibly 0). Construction canonicalizes so that `m > n`, or
/// `m = n` and `p <= q`; swapping the brooms does not change the merged tree,
/// so all derived quantities are invariant under the normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BroomPair {
    m: u32,
    p: u32,
    n: u32,
    q: u32,
}

impl BroomPair {
    pub fn new(m: u32, p: u32, n: u32, q: u32) -> Result<Self, InvalidPair> {
        if m == 0 || n == 0 {
            return Err(InvalidPair { m, n });
        }
        Ok(if n > m || (n == m && q < p) {
            Self { m: n, p: q, n: m, q: p }
        } else {
            Self { m, p, n, q }
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Vertices of the merged tree: `m + n + p + q + 1`.
    pub fn vertex_count(&self) -> u32 {
        self.m + self.n + self.p + self.q + 1
    }
}

impl fmt::Display for BroomPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} p={} n={} q={}", self.m, self.p, self.n, self.q)
    }
}

/// The rank sequence of a graded subtree poset: entry `i` counts the rooted
/// subtrees with `i` vertices. Always 1-indexed with nonnegative entries;
/// for a tree on `v` vertices the first and last of the `v` entries are 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSequence(IntSeq);

impl RankSequence {
    pub fn new(seq: IntSeq) -> Self {
        assert_eq!(seq.offset(), 1, "rank sequences are 1-indexed");
        Self(seq)
    }

    pub fn as_seq(&self) -> &IntSeq {
        &self.0
    }

    pub fn into_seq(self) -> IntSeq {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[BigInt] {
        self.0.values()
    }

    /// Value at a 1-based rank, zero outside the stored range.
    pub fn value(&self, index: usize) -> BigInt {
        self.0.value(index)
    }

    /// Total number of rooted subtrees.
    pub fn total(&self) -> BigInt {
        self.0.sum()
    }
}

impl fmt::Display for RankSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which closed unimodality condition a pair satisfies, in the order the
/// classifier checks them. The conditions assume the canonical `m >= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnimodalityCondition {
    /// `m > q`: the larger pendant count exceeds the opposite handle.
    FirstPendantsExceedSecondHandle,
    /// `n > p`: the smaller pendant count exceeds the opposite handle.
    SecondPendantsExceedFirstHandle,
    /// `m = n = 2`: both brooms carry exactly two pendants.
    BothPendantsTwo,
    /// `n = 1`: the second broom is a bare path.
    SecondPendantsOne,
}

impl UnimodalityCondition {
    /// Stable short label used by the CLI (`condition=i` .. `condition=iv`).
    pub fn numeral(self) -> &'static str {
        match self {
            Self::FirstPendantsExceedSecondHandle => "i",
            Self::SecondPendantsExceedFirstHandle => "ii",
            Self::BothPendantsTwo => "iii",
            Self::SecondPendantsOne => "iv",
        }
    }

    /// The condition as an inequality over the pair parameters.
    pub fn expr(self) -> &'static str {
        match self {
            Self::FirstPendantsExceedSecondHandle => "m>q",
            Self::SecondPendantsExceedFirstHandle => "n>p",
            Self::BothPendantsTwo => "m=n=2",
            Self::SecondPendantsOne => "n=1",
        }
    }
}

impl fmt::Display for UnimodalityCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.numeral())
    }
}

/// Outcome of a unimodality decision.
///
/// `witness` is the lexicographically smallest violating triple `(i, j, l)`
/// and is populated whenever the verdict came from inspecting an actual
/// sequence; the closed classifier decides without computing a sequence and
/// leaves it empty. `matched_condition` is populated only by the closed
/// classifier, and only for unimodal verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodalityVerdict {
    pub unimodal: bool,
    pub witness: Option<(usize, usize, usize)>,
    pub matched_condition: Option<UnimodalityCondition>,
}

/// Rank sequence of the single broom `B(m, p)`: `p` ones followed by the
/// binomial row `C(m, 0), ..., C(m, m)`, 1-indexed, length `m + p + 1`.
///
/// Needs `m >= 1`; a broom has at least one pendant vertex.
pub fn broom_rank(m: u32, p: u32) -> RankSequence {
    assert!(m >= 1, "a broom needs at least one pendant vertex");
    let mut values = vec![BigInt::one(); p as usize];
    values.extend(binomial_row(m));
    RankSequence::new(IntSeq::new(1, values))
}

/// Merged rank sequence as the convolution of the two broom sequences.
pub fn rank_convolution(pair: &BroomPair) -> RankSequence {
    let s = broom_rank(pair.m(), pair.p());
    let t = broom_rank(pair.n(), pair.q());
    RankSequence::new(convolve(s.as_seq(), t.as_seq()))
}

/// Orients a pair so the first broom carries the shorter handle, which is
/// the coupling the closed formulas are stated in. Returns `(m, p, n, q)`
/// with `p <= q`; independent of the canonical `m >= n` order.
fn orient_by_handle(pair: &BroomPair) -> (u32, u32, u32, u32) {
    if pair.p() <= pair.q() {
        (pair.m(), pair.p(), pair.n(), pair.q())
    } else {
        (pair.n(), pair.q(), pair.m(), pair.p())
    }
}

/// Prefix sums of a binomial row: `pre[t] = sum of row[0..t]`.
fn prefix_sums(row: &[BigInt]) -> Vec<BigInt> {
    let mut pre = Vec::with_capacity(row.len() + 1);
    pre.push(BigInt::zero());
    for v in row {
        pre.push(pre.last().unwrap() + v);
    }
    pre
}

/// `sum of row[lo..hi]` against precomputed prefix sums, clamped to the row.
fn range_sum(pre: &[BigInt], lo: i64, hi: i64) -> BigInt {
    let top = pre.len() as i64 - 1;
    let lo = lo.clamp(0, top) as usize;
    let hi = hi.clamp(0, top) as usize;
    if hi <= lo {
        return BigInt::zero();
    }
    &pre[hi] - &pre[lo]
}

/// Merged rank sequence in closed form, by cases over the rank `i`
/// (stated here for `p <= q`; the other orientation swaps the brooms):
///
/// - `i <= p`: `r_i = i`.
/// - `p < i <= q`: `r_i = p + sum(C(m, j), j = 0 .. i-p-1)`.
/// - `q < i <= q+p`: `r_i = sum(C(n, j), j = 0 .. i-q-1) + (q + p - i)
///   + sum(C(m, j), j = 0 .. i-p-1)`.
/// - `q+p < i <= q+p+m+n+1`: `r_i = sum(C(n, i-q-1-j), j = 0 .. p-1)
///   + C(m+n, i-q-p-1) + sum(C(m, i-p-1-j), j = 0 .. q-1)`.
///
/// Agrees with [`rank_convolution`] exactly, for every valid pair.
pub fn rank_closed(pair: &BroomPair) -> RankSequence {
    let (m, p, n, q) = orient_by_handle(pair);
    let row_m = binomial_row(m);
    let row_n = binomial_row(n);
    let row_mn = binomial_row(m + n);
    let pre_m = prefix_sums(&row_m);
    let pre_n = prefix_sums(&row_n);
    let pre_mn = prefix_sums(&row_mn);
    let (m, p, n, q) = (m as i64, p as i64, n as i64, q as i64);
    let len = m + n + p + q + 1;
    let mut values = Vec::with_capacity(len as usize);
    for i in 1..=len {
        let r = if i <= p {
            BigInt::from(i)
        } else if i <= q {
            BigInt::from(p) + range_sum(&pre_m, 0, i - p)
        } else if i <= q + p {
            range_sum(&pre_n, 0, i - q) + BigInt::from(q + p - i) + range_sum(&pre_m, 0, i - p)
        } else {
            // Windows of length p (resp. q) ending at the top index.
            range_sum(&pre_n, i - q - p, i - q)
                + range_sum(&pre_mn, i - q - p - 1, i - q - p)
                + range_sum(&pre_m, i - p - q, i - p)
        };
        values.push(r);
    }
    RankSequence::new(IntSeq::new(1, values))
}

/// Consecutive differences `d_i = r_i - r_(i-1)` of a nonempty rank
/// sequence, indexed from 2 through the last stored rank.
pub fn first_differences(rank: &RankSequence) -> IntSeq {
    assert!(!rank.is_empty(), "difference of an empty rank sequence");
    let diffs = rank
        .values()
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .collect();
    IntSeq::new(2, diffs)
}

/// Closed form for a single difference `d_i = r_i - r_(i-1)`, `i >= 2`
/// (stated for `p <= q`; the other orientation swaps the brooms):
///
/// - `i <= p`: `1`.
/// - `p < i <= q`: `C(m, i-p-1)`.
/// - `q < i <= q+p`: `C(n, i-q-1) - 1 + C(m, i-p-1)`.
/// - `i > q+p`, with `j = i-p-q-1`: `C(n, j+p) - C(n, j) + C(m+n, j)
///   - C(m+n, j-1) + C(m, j+q) - C(m, j)`.
///
/// The last case extends past the sequence: it yields `-1` at
/// `i = m+n+p+q+2` and `0` beyond, the differences of the zero-extended
/// sequence.
pub fn diff_closed(pair: &BroomPair, index: usize) -> BigInt {
    assert!(index >= 2, "differences are indexed from 2");
    let (m, p, n, q) = orient_by_handle(pair);
    let i = index as i64;
    let (p, q) = (p as i64, q as i64);
    if i <= p {
        BigInt::one()
    } else if i <= q {
        binomial(m, i - p - 1)
    } else if i <= q + p {
        binomial(n, i - q - 1) - BigInt::one() + binomial(m, i - p - 1)
    } else {
        let j = i - p - q - 1;
        binomial(n, j + p) - binomial(n, j) + binomial(m + n, j) - binomial(m + n, j - 1)
            + binomial(m, j + q)
            - binomial(m, j)
    }
}

/// Constant-time unimodality criterion: the rank sequence of `pair` is
/// unimodal exactly when `m > q`, `n > p`, `m = n = 2`, or `n = 1` (in
/// canonical `m >= n` order). Reports the first condition that holds; a
/// non-unimodal verdict carries no witness because no sequence is built.
pub fn classify_closed(pair: &BroomPair) -> UnimodalityVerdict {
    use UnimodalityCondition::*;
    let cond = if pair.m() > pair.q() {
        Some(FirstPendantsExceedSecondHandle)
    } else if pair.n() > pair.p() {
        Some(SecondPendantsExceedFirstHandle)
    } else if pair.m() == 2 && pair.n() == 2 {
        Some(BothPendantsTwo)
    } else if pair.n() == 1 {
        Some(SecondPendantsOne)
    } else {
        None
    };
    UnimodalityVerdict {
        unimodal: cond.is_some(),
        witness: None,
        matched_condition: cond,
    }
}

/// Direct unimodality check: builds the closed-form rank sequence and scans
/// it. Non-unimodal verdicts carry the minimal violation witness.
pub fn classify_direct(pair: &BroomPair) -> UnimodalityVerdict {
    is_unimodal(rank_closed(pair).as_seq())
}
