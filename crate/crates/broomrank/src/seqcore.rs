//! Exact integer-sequence primitives.
//!
//! Key items:
//! - [`IntSeq`]: a finite run of `BigInt` values anchored at a fixed first
//!   index, read as zero outside the stored range.
//! - [`binomial`] / [`binomial_row`]: exact binomial coefficients.
//! - [`convolve`]: the product rule for 1-indexed rank sequences.
//! - [`is_unimodal`]: unimodality verdict with a minimal violation witness.
//! - [`binomial_diff_row`] / [`merged_diff_row`]: half-row difference
//!   sequences used by the unimodality analysis.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::broom::UnimodalityVerdict;

/// A finite integer sequence with an explicit first index.
///
/// `offset` is the index of the first stored value. Indices below the offset
/// or past the last stored value read as zero. Rank sequences use offset 1,
/// first-difference sequences offset 2, and half-row difference sequences
/// offset 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeq {
    offset: usize,
    values: Vec<BigInt>,
}

impl IntSeq {
    pub fn new(offset: usize, values: Vec<BigInt>) -> Self {
        Self { offset, values }
    }

    /// Convenience constructor for literals in tests and small tables.
    pub fn from_i64s(offset: usize, values: &[i64]) -> Self {
        Self::new(offset, values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the last stored value, or `None` for an empty sequence.
    pub fn last_index(&self) -> Option<usize> {
        (!self.is_empty()).then(|| self.offset + self.len() - 1)
    }

    /// Stored value at an absolute index, if the index is in range.
    pub fn get(&self, index: usize) -> Option<&BigInt> {
        index
            .checked_sub(self.offset)
            .and_then(|k| self.values.get(k))
    }

    /// Value at an absolute index, reading zero outside the stored range.
    pub fn value(&self, index: usize) -> BigInt {
        self.get(index).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Iterates `(absolute index, value)` pairs over the stored range.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.values.iter().enumerate().map(|(k, v)| (self.offset + k, v))
    }

    pub fn sum(&self) -> BigInt {
        self.values.iter().sum()
    }
}

impl fmt::Display for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Exact binomial coefficient `C(n, k)`.
///
/// `k` may be any integer; values outside `0..=n` give zero, which lets the
/// difference formulas index freely past their boundaries.
pub fn binomial(n: u32, k: i64) -> BigInt {
    if k < 0 || k > n as i64 {
        return BigInt::zero();
    }
    let k = (k as u32).min(n - k as u32);
    let mut acc = BigInt::one();
    for t in 0..k {
        // Exact at every step: the partial product is C(n, t+1) * (t+1)!/(t+1)!.
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// The full row `C(n, 0), C(n, 1), ..., C(n, n)`.
pub fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(c.clone());
    }
    row
}

/// Convolution of two 1-indexed sequences:
/// `r_i = sum over j of s_j * t_(i+1-j)`.
///
/// This is the rank-sequence product rule for merging two rooted trees at
/// their roots: a merged subtree with `i` vertices splits into root-containing
/// parts with `j` and `i+1-j` vertices. The result is 1-indexed with length
/// `len(s) + len(t) - 1`; an empty input yields an empty output.
pub fn convolve(s: &IntSeq, t: &IntSeq) -> IntSeq {
    assert_eq!(s.offset(), 1, "convolution operands are 1-indexed");
    assert_eq!(t.offset(), 1, "convolution operands are 1-indexed");
    if s.is_empty() || t.is_empty() {
        return IntSeq::new(1, Vec::new());
    }
    let (a, b) = (s.values(), t.values());
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    IntSeq::new(1, out)
}

/// Decides whether a sequence is unimodal: scanning strict changes between
/// consecutive entries (equal neighbours are ignored), no strict rise may
/// follow a strict fall. Empty and single-entry sequences are unimodal.
///
/// A non-unimodal verdict carries the lexicographically smallest witness
/// `(i, j, l)` with `i < j < l`, `s_i > s_j`, and `s_j < s_l`, in the
/// sequence's own (absolute) indexing.
pub fn is_unimodal(seq: &IntSeq) -> UnimodalityVerdict {
    let vals = seq.values();
    let mut seen_fall = false;
    let mut broken = false;
    for w in vals.windows(2) {
        match w[1].cmp(&w[0]) {
            Ordering::Less => seen_fall = true,
            Ordering::Greater if seen_fall => {
                broken = true;
                break;
            }
            _ => {}
        }
    }
    if !broken {
        return UnimodalityVerdict {
            unimodal: true,
            witness: None,
            matched_condition: None,
        };
    }
    let witness = lex_min_witness(seq).expect("a broken scan implies a violation witness");
    UnimodalityVerdict {
        unimodal: false,
        witness: Some(witness),
        matched_condition: None,
    }
}

/// Smallest `(i, j, l)` in lexicographic order with `s_i > s_j < s_l`.
fn lex_min_witness(seq: &IntSeq) -> Option<(usize, usize, usize)> {
    let v = seq.values();
    let n = v.len();
    if n < 3 {
        return None;
    }
    // suffix_max[j] = max of v[j+1..]; only positions with a nonempty suffix matter.
    let mut suffix_max: Vec<BigInt> = vec![BigInt::zero(); n - 1];
    let mut best = v[n - 1].clone();
    for j in (0..n - 1).rev() {
        suffix_max[j] = best.clone();
        if v[j] > best {
            best = v[j].clone();
        }
    }
    for i in 0..n {
        for j in i + 1..n - 1 {
            if v[j] < v[i] && suffix_max[j] > v[j] {
                let l = (j + 1..n).find(|&l| v[l] > v[j]).expect("suffix max exceeds v[j]");
                let off = seq.offset();
                return Some((off + i, off + j, off + l));
            }
        }
    }
    None
}

/// Half-row of consecutive binomial differences:
/// `C(m, j) - C(m, j-1)` for `j = 0 ..= floor(m/2)`, 0-indexed.
///
/// Every entry is nonnegative on this range and the row is unimodal.
pub fn binomial_diff_row(m: u32) -> IntSeq {
    let top = m as i64 / 2;
    let values = (0..=top)
        .map(|j| binomial(m, j) - binomial(m, j - 1))
        .collect();
    IntSeq::new(0, values)
}

/// Half-row of the tail first differences of a merge with handle lengths 0
/// and `q`: `C(m+n, j) - C(m+n, j-1) + C(m, j+q) - C(m, j)` for
/// `j = 0 ..= floor((m+n)/2)`, 0-indexed.
///
/// With `q = 0` the `m`-terms cancel and this reduces to
/// `binomial_diff_row(m + n)`.
pub fn merged_diff_row(m: u32, n: u32, q: u32) -> IntSeq {
    let top = (m + n) as i64 / 2;
    let values = (0..=top)
        .map(|j| {
            binomial(m + n, j) - binomial(m + n, j - 1) + binomial(m, j + q as i64)
                - binomial(m, j)
        })
        .collect();
    IntSeq::new(0, values)
}
