//! Bi-leveled trees: a planar binary tree together with an admissible upper
//! order ideal of its node poset.
//!
//! The ideal is stored as a bitmask over in-order node positions (bit `i-1`
//! for node `i`). Admissible means: closed under taking parents, contains
//! node 1 (the leftmost node), and contains no descendant of node 1.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::trees::{leaf_multisets, parse_tree_at, PlanarTree};

pub(crate) type Mask = u64;

/// Largest tree size a bi-leveled tree can carry.
pub const MAX_NODES: usize = Mask::BITS as usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiLeveledTree {
    tree: PlanarTree,
    ideal: Mask,
}

fn bit(i: usize) -> Mask {
    1 << (i - 1)
}

fn mask_positions(mask: Mask) -> impl Iterator<Item = usize> {
    (0..Mask::BITS as usize)
        .filter(move |i| mask >> i & 1 == 1)
        .map(|i| i + 1)
}

fn range_mask(lo: usize, hi: usize) -> Mask {
    // positions lo+1..=hi
    (lo + 1..=hi).fold(0, |m, i| m | bit(i))
}

impl BiLeveledTree {
    pub fn new(tree: PlanarTree, ideal: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = tree.nodes();
        if n > MAX_NODES {
            return Err(Error::SizeCap { n, cap: MAX_NODES });
        }
        let mut mask = 0;
        for i in ideal {
            if i == 0 || i > n {
                return Err(Error::InvalidIdeal(format!("position {i} outside 1..={n}")));
            }
            mask |= bit(i);
        }
        Self::from_mask(tree, mask)
    }

    pub(crate) fn from_mask(tree: PlanarTree, ideal: Mask) -> Result<Self> {
        validate(&tree, ideal)?;
        Ok(BiLeveledTree { tree, ideal })
    }

    pub(crate) fn from_mask_unchecked(tree: PlanarTree, ideal: Mask) -> Self {
        debug_assert!(validate(&tree, ideal).is_ok(), "{tree} {ideal:b}");
        BiLeveledTree { tree, ideal }
    }

    /// The unique element of degree 0.
    pub fn empty() -> Self {
        BiLeveledTree {
            tree: PlanarTree::Leaf,
            ideal: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_leaf()
    }

    pub fn tree(&self) -> &PlanarTree {
        &self.tree
    }

    pub fn nodes(&self) -> usize {
        self.tree.nodes()
    }

    pub(crate) fn mask(&self) -> Mask {
        self.ideal
    }

    pub fn ideal(&self) -> Vec<usize> {
        mask_positions(self.ideal).collect()
    }

    pub fn ideal_len(&self) -> usize {
        self.ideal.count_ones() as usize
    }

    pub fn in_ideal(&self, i: usize) -> bool {
        i >= 1 && i <= self.nodes() && self.ideal & bit(i) != 0
    }

    /// Indecomposable: the ideal contains the rightmost node.
    pub fn is_indecomposable(&self) -> bool {
        !self.is_empty() && self.in_ideal(self.nodes())
    }

    /// The pruned representation `(t₀, (t₁,…,t_r))` where `r = |T|`.
    pub fn forest_form(&self) -> (PlanarTree, Vec<PlanarTree>) {
        if self.is_empty() {
            return (PlanarTree::Leaf, Vec::new());
        }
        let mut forest = Vec::new();
        fn prune(t: &PlanarTree, offset: usize, ideal: Mask, forest: &mut Vec<PlanarTree>) -> PlanarTree {
            match t {
                PlanarTree::Leaf => {
                    forest.push(PlanarTree::Leaf);
                    PlanarTree::Leaf
                }
                PlanarTree::Node(l, r) => {
                    let me = offset + l.nodes() + 1;
                    if ideal & bit(me) == 0 {
                        forest.push(t.clone());
                        return PlanarTree::Leaf;
                    }
                    let l = prune(l, offset, ideal, forest);
                    let r = prune(r, me, ideal, forest);
                    PlanarTree::vee(l, r)
                }
            }
        }
        let top = prune(&self.tree, 0, self.ideal, &mut forest);
        // the leftmost leaf of the pruned tree is the (empty) left child of node 1
        debug_assert!(forest[0].is_leaf());
        forest.remove(0);
        (remove_leftmost_node(&top), forest)
    }

    /// Inverse of [`forest_form`](Self::forest_form).
    pub fn from_forest_form(t0: &PlanarTree, forest: &[PlanarTree]) -> Result<Self> {
        if t0.is_leaf() && forest.is_empty() {
            return Ok(Self::empty());
        }
        if forest.len() != t0.nodes() + 1 {
            return Err(Error::Arity {
                expected: t0.nodes() + 1,
                found: forest.len(),
            });
        }
        let top = add_leftmost_node(t0);
        let mut full = Vec::with_capacity(forest.len() + 1);
        full.push(PlanarTree::Leaf);
        full.extend_from_slice(forest);
        let tree = PlanarTree::graft(&full, &top)?;
        let sizes: Vec<usize> = full.iter().map(PlanarTree::nodes).collect();
        let ideal = base_positions(&sizes).into_iter().fold(0, |m, p| m | bit(p));
        Self::from_mask(tree, ideal)
    }

    /// Splittings of the underlying tree along multisets of `m` leaves, with
    /// the ideal carried along node by node.
    pub fn splittings(&self, m: usize) -> Vec<DecoratedForest> {
        leaf_multisets(self.nodes(), m)
            .iter()
            .map(|cuts| self.split_multi(cuts))
            .collect()
    }

    /// Splittings whose first part is nonempty.
    pub fn restricted_splittings(&self, m: usize) -> Result<Vec<DecoratedForest>> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        Ok(leaf_multisets(self.nodes(), m)
            .iter()
            .filter(|cuts| cuts.first().is_none_or(|&c| c > 0))
            .map(|cuts| self.split_multi(cuts))
            .collect())
    }

    pub fn split_multi(&self, cuts: &[usize]) -> DecoratedForest {
        let trees = self.tree.split_multi(cuts);
        let mut bounds = Vec::with_capacity(cuts.len() + 2);
        bounds.push(0);
        bounds.extend_from_slice(cuts);
        bounds.push(self.nodes());
        let parts = trees
            .into_iter()
            .zip(bounds.windows(2))
            .map(|(tree, w)| {
                let marked = (self.ideal & range_mask(w[0], w[1])) >> w[0];
                (tree, marked)
            })
            .collect();
        DecoratedForest { parts }
    }

    /// `self \ s`: graft `s` onto the rightmost leaf, keeping the ideal.
    pub fn backslash(&self, s: &PlanarTree) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::Empty);
        }
        Ok(BiLeveledTree::from_mask_unchecked(
            self.tree.backslash(s),
            self.ideal,
        ))
    }

    /// Every `self = c \ s` with `c` nonempty, ordered by `|c|`.
    pub fn right_decompositions(&self) -> Vec<(BiLeveledTree, PlanarTree)> {
        if self.is_empty() {
            return Vec::new();
        }
        let top = mask_positions(self.ideal).max().unwrap_or(0);
        self.tree
            .right_decompositions()
            .into_iter()
            .filter(|(r, _)| r.nodes() >= top)
            .map(|(r, s)| (BiLeveledTree::from_mask_unchecked(r, self.ideal), s))
            .collect()
    }

    /// The unique `self = b \ s` with `b` indecomposable.
    pub fn indecomposable_split(&self) -> Result<(BiLeveledTree, PlanarTree)> {
        self.right_decompositions().into_iter().next().ok_or(Error::Empty)
    }

    /// All bi-leveled trees with `n` nodes, in canonical order.
    pub fn enumerate(n: usize) -> Vec<BiLeveledTree> {
        let mut out = Vec::new();
        for tree in PlanarTree::enumerate(n) {
            for ideal in admissible_ideals(&tree) {
                out.push(BiLeveledTree {
                    tree: tree.clone(),
                    ideal,
                });
            }
        }
        out.sort();
        out
    }
}

/// A tree split off from a bi-leveled tree: each part keeps the ideal
/// membership of its nodes. Only the first part is guaranteed to be a
/// bi-leveled tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedForest {
    pub parts: Vec<(PlanarTree, u64)>,
}

impl DecoratedForest {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn first(&self) -> BiLeveledTree {
        let (t, m) = &self.parts[0];
        BiLeveledTree::from_mask_unchecked(t.clone(), *m)
    }

    pub fn trees(&self) -> Vec<PlanarTree> {
        self.parts.iter().map(|(t, _)| t.clone()).collect()
    }

    fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|(t, _)| t.nodes()).collect()
    }

    /// `(b₀,…,b_m)/c`. The ideal is that of `c` when `b₀` is empty, and
    /// otherwise the marked forest nodes together with every node of `c`.
    pub fn graft(&self, base: &BiLeveledTree) -> Result<BiLeveledTree> {
        let tree = PlanarTree::graft(&self.trees(), &base.tree)?;
        let sizes = self.sizes();
        let base_pos = base_positions(&sizes);
        let ideal = if self.parts[0].0.is_leaf() {
            mask_positions(base.ideal).fold(0, |m, j| m | bit(base_pos[j - 1]))
        } else {
            self.forest_mask(&sizes) | base_pos.iter().fold(0, |m, &p| m | bit(p))
        };
        Ok(BiLeveledTree::from_mask_unchecked(tree, ideal))
    }

    /// `(b₀,…,b_m)/t` for the action on the positive part: the ideal always
    /// absorbs the nodes of `t`.
    pub fn graft_plus(&self, base: &PlanarTree) -> Result<BiLeveledTree> {
        if self.parts[0].0.is_leaf() {
            return Err(Error::Empty);
        }
        let tree = PlanarTree::graft(&self.trees(), base)?;
        let sizes = self.sizes();
        let ideal = self.forest_mask(&sizes) | base_positions(&sizes).iter().fold(0, |m, &p| m | bit(p));
        Ok(BiLeveledTree::from_mask_unchecked(tree, ideal))
    }

    fn forest_mask(&self, sizes: &[usize]) -> Mask {
        let mut offset = 0;
        let mut mask = 0;
        for (k, (_, m)) in self.parts.iter().enumerate() {
            mask |= m << offset;
            offset += sizes[k] + 1;
        }
        mask
    }
}

/// In-order positions taken by the base nodes after grafting a forest with
/// the given part sizes: base node `j` sits after parts `0..j`.
fn base_positions(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len().saturating_sub(1));
    let mut pos = 0;
    for &s in &sizes[..sizes.len() - 1] {
        pos += s + 1;
        out.push(pos);
    }
    out
}

fn remove_leftmost_node(t: &PlanarTree) -> PlanarTree {
    match t {
        PlanarTree::Leaf => PlanarTree::Leaf,
        PlanarTree::Node(l, r) if l.is_leaf() => {
            debug_assert!(r.is_leaf());
            PlanarTree::Leaf
        }
        PlanarTree::Node(l, r) => PlanarTree::vee(remove_leftmost_node(l), (**r).clone()),
    }
}

fn add_leftmost_node(t: &PlanarTree) -> PlanarTree {
    match t {
        PlanarTree::Leaf => PlanarTree::vee(PlanarTree::Leaf, PlanarTree::Leaf),
        PlanarTree::Node(l, r) => PlanarTree::vee(add_leftmost_node(l), (**r).clone()),
    }
}

fn validate(tree: &PlanarTree, ideal: Mask) -> Result<()> {
    let n = tree.nodes();
    if n > MAX_NODES {
        return Err(Error::SizeCap { n, cap: MAX_NODES });
    }
    if n < MAX_NODES && ideal >> n != 0 {
        return Err(Error::InvalidIdeal("ideal has positions beyond the tree".into()));
    }
    if n == 0 {
        return Ok(());
    }
    if ideal & 1 == 0 {
        return Err(Error::InvalidIdeal("ideal must contain the leftmost node".into()));
    }
    let parents = tree.parents();
    for i in mask_positions(ideal) {
        if let Some(p) = parents[i] {
            if ideal & bit(p) == 0 {
                return Err(Error::InvalidIdeal(format!(
                    "node {i} is in the ideal but its parent {p} is not"
                )));
            }
        }
    }
    // descendants of node 1 are exactly the nodes below it; walk up from each
    for i in mask_positions(ideal).filter(|&i| i != 1) {
        let mut cur = parents[i];
        while let Some(p) = cur {
            if p == 1 {
                return Err(Error::InvalidIdeal(format!(
                    "node {i} lies below the leftmost node"
                )));
            }
            cur = parents[p];
        }
    }
    Ok(())
}

/// Every admissible ideal of `tree`, as masks.
fn admissible_ideals(tree: &PlanarTree) -> Vec<Mask> {
    // Ideals closed under parents are "top subtrees": empty below a node or
    // containing it together with top subtrees of both children.
    fn rec(t: &PlanarTree, offset: usize, on_left_branch: bool, below_first: bool) -> Vec<Mask> {
        match t {
            PlanarTree::Leaf => vec![0],
            PlanarTree::Node(l, r) => {
                let me = offset + l.nodes() + 1;
                let mut out = Vec::new();
                if !on_left_branch || below_first {
                    out.push(0);
                }
                if !below_first {
                    let ls = rec(l, offset, on_left_branch, false);
                    // the right subtree of node 1 lies below it
                    let rs = rec(r, me, false, on_left_branch && l.is_leaf());
                    for a in &ls {
                        for b in &rs {
                            out.push(a | b | bit(me));
                        }
                    }
                }
                out
            }
        }
    }
    if tree.is_leaf() {
        return vec![0];
    }
    rec(tree, 0, true, false)
}

// Canonical order: by tree (encoding order), then by the sorted list of ideal
// positions.
impl Ord for BiLeveledTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tree
            .cmp(&other.tree)
            .then_with(|| mask_positions(self.ideal).cmp(mask_positions(other.ideal)))
    }
}

impl PartialOrd for BiLeveledTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BiLeveledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{{", self.tree)?;
        for (k, i) in mask_positions(self.ideal).enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for BiLeveledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BiLeveledTree {
    type Err = Error;

    /// `TREE;{i,…}`, e.g. `(.(..));{1}`.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let tree = parse_tree_at(bytes, &mut pos)?;
        let rest = &s[pos..];
        let Some(body) = rest.strip_prefix(";{").and_then(|r| r.strip_suffix('}')) else {
            return Err(parse_err(pos, "expected ';{…}' after the tree"));
        };
        let mut ideal = Vec::new();
        if !body.trim().is_empty() {
            let mut offset = pos + 2;
            for piece in body.split(',') {
                let i: usize = piece
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(offset, format!("bad node index {piece:?}")))?;
                ideal.push(i);
                offset += piece.len() + 1;
            }
        }
        BiLeveledTree::new(tree, ideal)
    }
}
