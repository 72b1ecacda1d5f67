//! FO^s-preserving kernels for bounded-depth colored rooted trees.
//!
//! Children of each vertex are reduced first and grouped by the isomorphism
//! class of their reduced subtrees; at most `s` children per class survive.
//! Children are ordered by class and then by vertex id, so smaller budgets
//! keep subsets of what larger budgets keep.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use rustc_hash::FxHashMap;

use crate::error::Result;
use crate::graph::{RootedColoredTree, Vertex};
use crate::pebble::fo_s_equivalent;

/// Bit length above which the size bound is reported only as a lower bound.
pub const G_BOUND_MAX_BITS: u64 = 1 << 20;

/// Value of the kernel size bound `g(s, k, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GBound {
    Exact(BigUint),
    /// The value is at least `2^bits`; it was too large to materialize.
    AtLeastPow2(u64),
}

impl GBound {
    /// Whether a kernel with `m` vertices fits under the bound.
    pub fn admits(&self, m: usize) -> bool {
        match self {
            GBound::Exact(v) => BigUint::from(m) <= *v,
            GBound::AtLeastPow2(bits) => *bits >= 64 || (m as u128) <= (1u128 << bits),
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            GBound::Exact(v) => Some(v),
            GBound::AtLeastPow2(_) => None,
        }
    }
}

impl fmt::Display for GBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GBound::Exact(v) => write!(f, "{v}"),
            GBound::AtLeastPow2(bits) => write!(f, ">=2^{bits}"),
        }
    }
}

/// `g(s, 0, c) = 1` and `g(s, k, c) = 1 + s * p * h` where
/// `h = g(s, k-1, c+1)` and `p = (2 c h)^h`.
pub fn g_bound(s: u32, k: u32, c: u32) -> GBound {
    if k == 0 {
        return GBound::Exact(BigUint::from(1u32));
    }
    let h = match g_bound(s, k - 1, c + 1) {
        GBound::Exact(h) => h,
        GBound::AtLeastPow2(bits) => return GBound::AtLeastPow2(bits),
    };
    let base = BigUint::from(2u64 * u64::from(c)) * &h;
    let base_bits = base.bits();
    let exponent = match u32::try_from(&h) {
        Ok(e) if (e as u64).saturating_mul(base_bits) <= G_BOUND_MAX_BITS => e,
        _ => return GBound::AtLeastPow2(G_BOUND_MAX_BITS),
    };
    let p = base.pow(exponent);
    GBound::Exact(BigUint::from(1u32) + BigUint::from(s) * p * h)
}

/// Marks the root with the unique color `2c+1` and shifts its children to
/// `c + color`; every other color is kept.
pub fn recolor_root(t: &RootedColoredTree) -> RootedColoredTree {
    let c = t.num_colors();
    let mut colors = t.graph().colors().to_vec();
    colors[t.root()] = 2 * c + 1;
    for &ch in t.children(t.root()) {
        colors[ch] += c;
    }
    t.recolored(colors, 2 * c + 1).expect("colors stay within 1..=2c+1")
}

/// Canonical byte encoding: equal iff the rooted colored trees are isomorphic.
pub fn canonical_code(t: &RootedColoredTree) -> Vec<u8> {
    let order = post_order(t);
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); t.n()];
    for &u in &order {
        let mut kids: Vec<Vec<u8>> = t.children(u).iter().map(|&c| std::mem::take(&mut codes[c])).collect();
        kids.sort();
        let mut code = Vec::with_capacity(6 + kids.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        code.extend_from_slice(&t.color(u).to_be_bytes());
        for k in kids {
            code.extend(k);
        }
        code.push(b')');
        codes[u] = code;
    }
    std::mem::take(&mut codes[t.root()])
}

/// Vertices with every child before its parent.
fn post_order(t: &RootedColoredTree) -> Vec<Vertex> {
    let mut pre = Vec::with_capacity(t.n());
    let mut stack = vec![t.root()];
    while let Some(u) = stack.pop() {
        pre.push(u);
        stack.extend_from_slice(t.children(u));
    }
    pre.reverse();
    pre
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelStats {
    /// Distinct reduced-subtree classes among the vertices of each depth.
    pub classes_per_level: Vec<usize>,
    pub removed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelResult {
    /// Restriction of the input to `kept`; kernel vertex `i` is `kept[i]`.
    pub kernel: RootedColoredTree,
    /// Kept input vertices in ascending order.
    pub kept: Vec<Vertex>,
    pub bound: GBound,
    pub stats: KernelStats,
}

pub fn reduce_tree(t: &RootedColoredTree, s: usize) -> KernelResult {
    assert!(s >= 1, "kernels need a pebble budget of at least 1");
    let n = t.n();
    let mut class = vec![0u32; n];
    let mut kept_children: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut intern: FxHashMap<(u32, Vec<u32>), u32> = FxHashMap::default();
    for u in post_order(t) {
        let mut kids: Vec<Vertex> = t.children(u).to_vec();
        kids.sort_by_key(|&c| (class[c], c));
        let mut chosen = Vec::new();
        let mut run = 0;
        for (i, &c) in kids.iter().enumerate() {
            run = if i > 0 && class[kids[i - 1]] == class[c] { run + 1 } else { 0 };
            if run < s {
                chosen.push(c);
            }
        }
        let mut key: Vec<u32> = chosen.iter().map(|&c| class[c]).collect();
        key.sort_unstable();
        let fresh = intern.len() as u32;
        class[u] = *intern.entry((t.color(u), key)).or_insert(fresh);
        kept_children[u] = chosen;
    }

    let mut keep = BTreeSet::new();
    let mut stack = vec![t.root()];
    while let Some(u) = stack.pop() {
        keep.insert(u);
        stack.extend_from_slice(&kept_children[u]);
    }
    let (kernel, kept) = t.restrict(&keep).expect("kept set contains the root and is parent-closed");

    let mut levels: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); t.depth() + 1];
    for v in 0..n {
        levels[t.depth_of(v)].insert(class[v]);
    }
    KernelResult {
        bound: g_bound(s as u32, t.depth() as u32, t.num_colors()),
        stats: KernelStats {
            classes_per_level: levels.iter().map(BTreeSet::len).collect(),
            removed: n - kept.len(),
        },
        kernel,
        kept,
    }
}

/// Structural checks of a kernel followed by the pebble-game equivalence test.
pub fn verify_kernel(t: &RootedColoredTree, result: &KernelResult, s: usize) -> Result<bool> {
    let keep: BTreeSet<Vertex> = result.kept.iter().copied().collect();
    let structural = keep.len() == result.kept.len()
        && keep.contains(&t.root())
        && result.bound.admits(result.kept.len())
        && t.restrict(&keep).ok().is_some_and(|(k, _)| k == result.kernel)
        && reduce_tree(&result.kernel, s).kept.len() == result.kernel.n();
    if !structural {
        return Ok(false);
    }
    fo_s_equivalent(t.graph(), result.kernel.graph(), s)
}
