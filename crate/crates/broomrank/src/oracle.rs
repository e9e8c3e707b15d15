//! Explicit rooted trees and brute-force subtree counting.
//!
//! These routines never consult the closed formulas: they operate on an
//! actual tree, so they serve as independent ground truth for the algebraic
//! routes in [`crate::broom`].
//!
//! Key items:
//! - [`RootedTree`]: adjacency-list rooted tree, node 0 is the root.
//! - [`broom_tree`] / [`merge`]: build brooms and merge trees at the root.
//! - [`subtree_polynomial`]: rank sequence by a product dynamic program.
//! - [`subtree_counts_exhaustive`]: rank sequence by enumerating every
//!   root-containing vertex subset (second-level oracle, exponential).
//! - [`ahu_canonical`]: canonical string, equal iff trees are isomorphic.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::broom::RankSequence;
use crate::seqcore::IntSeq;

/// A rooted tree as per-node child lists. Node 0 is the root; child order
/// carries no semantic meaning (canonical forms sort it away).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub const ROOT: usize = 0;

    /// The one-vertex tree.
    pub fn single() -> Self {
        Self {
            children: vec![Vec::new()],
        }
    }

    pub fn node_count(&self) -> usize {
        self.children.len()
    }

    pub fn children_of(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Appends a fresh leaf under `parent` and returns its id.
    pub fn add_child(&mut self, parent: usize) -> usize {
        let id = self.children.len();
        assert!(parent < id, "parent {parent} does not exist yet");
        self.children.push(Vec::new());
        self.children[parent].push(id);
        id
    }

    /// Parent of every node (`None` for the root).
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.node_count()];
        for (v, kids) in self.children.iter().enumerate() {
            for &c in kids {
                parent[c] = Some(v);
            }
        }
        parent
    }

    /// Node order with every child before its parent (reversed preorder).
    fn bottom_up(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![Self::ROOT];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend_from_slice(&self.children[v]);
        }
        order.reverse();
        order
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&ahu_canonical(self))
    }
}

/// The broom `B(m, k)`: a path of `k` edges from the root into a vertex
/// carrying `m` pendant leaves. `m + k + 1` vertices; needs `m >= 1`.
pub fn broom_tree(m: u32, k: u32) -> RootedTree {
    assert!(m >= 1, "a broom needs at least one pendant vertex");
    let mut t = RootedTree::single();
    let mut tip = RootedTree::ROOT;
    for _ in 0..k {
        tip = t.add_child(tip);
    }
    for _ in 0..m {
        t.add_child(tip);
    }
    t
}

/// Merges two rooted trees by identifying their roots. Children of `b`'s
/// root become additional children of `a`'s root; merging with the
/// one-vertex tree is the identity.
pub fn merge(a: &RootedTree, b: &RootedTree) -> RootedTree {
    let mut t = a.clone();
    let base = a.node_count();
    // b's node v != 0 becomes base + v - 1; ids are pushed in that order.
    let map = |v: usize| if v == 0 { 0 } else { base + v - 1 };
    for v in 0..b.node_count() {
        let kids: Vec<usize> = b.children_of(v).iter().map(|&c| map(c)).collect();
        if v == RootedTree::ROOT {
            t.children[RootedTree::ROOT].extend(kids);
        } else {
            t.children.push(kids);
        }
    }
    t
}

/// Rank sequence of the rooted-subtree poset by dynamic programming.
///
/// For each node the generating polynomial of its root-containing subtrees
/// is `P_v(x) = x * product over children c of (1 + P_c(x))`; the returned
/// sequence lists the coefficients of `P_root`, so entry `i` counts the
/// rooted subtrees with `i` vertices.
pub fn subtree_polynomial(tree: &RootedTree) -> RankSequence {
    // g_v = 1 + P_v as plain coefficient vectors, folded bottom-up.
    let mut g: Vec<Vec<BigInt>> = vec![Vec::new(); tree.node_count()];
    let mut root_product = vec![BigInt::one()];
    for v in tree.bottom_up() {
        let mut prod = vec![BigInt::one()];
        for &c in tree.children_of(v) {
            let gc = std::mem::take(&mut g[c]);
            prod = poly_mul(&prod, &gc);
        }
        if v == RootedTree::ROOT {
            root_product = prod;
        } else {
            let mut gv = Vec::with_capacity(prod.len() + 1);
            gv.push(BigInt::one());
            gv.extend(prod);
            g[v] = gv;
        }
    }
    // P_root = x * root_product: coefficient of x^i is root_product[i - 1].
    RankSequence::new(IntSeq::new(1, root_product))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Rank sequence by enumerating all vertex subsets that contain the root and
/// induce a connected subgraph (in a tree: every chosen vertex's parent is
/// chosen). Exponential; capped at 20 nodes, intended as a cross-check for
/// the polynomial route on small trees.
pub fn subtree_counts_exhaustive(tree: &RootedTree) -> RankSequence {
    let n = tree.node_count();
    assert!(n <= 20, "exhaustive subset enumeration is exponential; {n} nodes is too many");
    let parent = tree.parents();
    let mut counts = vec![BigInt::zero(); n];
    for mask in 0u32..1 << (n - 1) {
        // Non-root node v is in the subset iff bit v - 1 is set.
        let chosen = |v: usize| v == RootedTree::ROOT || mask >> (v - 1) & 1 == 1;
        let mut size = 1usize;
        let mut connected = true;
        for v in 1..n {
            if chosen(v) {
                size += 1;
                if !chosen(parent[v].expect("non-root has a parent")) {
                    connected = false;
                    break;
                }
            }
        }
        if connected {
            counts[size - 1] += 1;
        }
    }
    RankSequence::new(IntSeq::new(1, counts))
}

/// Canonical string of a rooted tree: each node renders as `(...)` around
/// its children's canonical strings in sorted order. Two trees get the same
/// string exactly when they are isomorphic as rooted trees, so the string
/// doubles as a serialization for deduplication and debug dumps.
pub fn ahu_canonical(tree: &RootedTree) -> String {
    let mut enc: Vec<String> = vec![String::new(); tree.node_count()];
    for v in tree.bottom_up() {
        let mut kids: Vec<String> = tree
            .children_of(v)
            .iter()
            .map(|&c| std::mem::take(&mut enc[c]))
            .collect();
        kids.sort();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in &kids {
            s.push_str(k);
        }
        s.push(')');
        enc[v] = s;
    }
    std::mem::take(&mut enc[RootedTree::ROOT])
}
