//! Rooted planar binary trees.
//!
//! Trees are written with the grammar `Tree := "." | "(" Tree Tree ")"`, so
//! `.` is the tree with no internal nodes and `(..)` the tree with one. Nodes
//! are numbered `1..=n` in in-order, which is the same as numbering the gaps
//! between consecutive leaves from left to right. Leaves are numbered
//! `0..=n`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PlanarTree {
    Leaf,
    Node(Box<PlanarTree>, Box<PlanarTree>),
}

impl PlanarTree {
    pub fn leaf() -> Self {
        PlanarTree::Leaf
    }

    /// `l ∨ r`: a new root whose left and right subtrees are `l` and `r`.
    pub fn vee(l: PlanarTree, r: PlanarTree) -> Self {
        PlanarTree::Node(Box::new(l), Box::new(r))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, PlanarTree::Leaf)
    }

    pub fn nodes(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(l, r) => 1 + l.nodes() + r.nodes(),
        }
    }

    pub fn leaves(&self) -> usize {
        self.nodes() + 1
    }

    pub fn children(&self) -> Option<(&PlanarTree, &PlanarTree)> {
        match self {
            PlanarTree::Leaf => None,
            PlanarTree::Node(l, r) => Some((l, r)),
        }
    }

    /// Left comb `((..).)`-style tree with `n` nodes.
    pub fn left_comb(n: usize) -> Self {
        (0..n).fold(PlanarTree::Leaf, |t, _| PlanarTree::vee(t, PlanarTree::Leaf))
    }

    /// Right comb `(.(..))`-style tree with `n` nodes.
    pub fn right_comb(n: usize) -> Self {
        (0..n).fold(PlanarTree::Leaf, |t, _| PlanarTree::vee(PlanarTree::Leaf, t))
    }

    /// `self \ other`: graft the root of `other` onto the rightmost leaf of `self`.
    pub fn backslash(&self, other: &PlanarTree) -> PlanarTree {
        match self {
            PlanarTree::Leaf => other.clone(),
            PlanarTree::Node(l, r) => PlanarTree::vee((**l).clone(), r.backslash(other)),
        }
    }

    /// The unique factorization `t = t₁\⋯\t_m` into indecomposable trees.
    pub fn indecomposables(&self) -> Vec<PlanarTree> {
        let mut out = Vec::new();
        let mut cur = self;
        while let PlanarTree::Node(l, r) = cur {
            out.push(PlanarTree::vee((**l).clone(), PlanarTree::Leaf));
            cur = r;
        }
        out
    }

    /// A tree is indecomposable when its root is its rightmost node.
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, PlanarTree::Node(_, r) if r.is_leaf())
    }

    /// Every way of writing `self = r \ s`, trivial ones included, ordered by
    /// the size of `r`.
    pub fn right_decompositions(&self) -> Vec<(PlanarTree, PlanarTree)> {
        let parts = self.indecomposables();
        (0..=parts.len())
            .map(|k| (refold(&parts[..k]), refold(&parts[k..])))
            .collect()
    }

    /// Parent of each node in in-order numbering; index 0 is unused and the
    /// root maps to `None`.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut parents = vec![None; self.nodes() + 1];
        fn walk(t: &PlanarTree, offset: usize, parent: Option<usize>, out: &mut [Option<usize>]) {
            if let PlanarTree::Node(l, r) = t {
                let me = offset + l.nodes() + 1;
                out[me] = parent;
                walk(l, offset, Some(me), out);
                walk(r, me, Some(me), out);
            }
        }
        walk(self, 0, None, &mut parents);
        parents
    }

    /// In-order position of the root, or 0 for the leaf.
    pub fn root_position(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(l, _) => l.nodes() + 1,
        }
    }

    /// Split along a single leaf, returning the pieces left and right of the
    /// path from that leaf to the root.
    pub fn split_at(&self, leaf: usize) -> (PlanarTree, PlanarTree) {
        match self {
            PlanarTree::Leaf => {
                debug_assert_eq!(leaf, 0);
                (PlanarTree::Leaf, PlanarTree::Leaf)
            }
            PlanarTree::Node(l, r) => {
                let ln = l.nodes();
                if leaf <= ln {
                    let (l0, l1) = l.split_at(leaf);
                    (l0, PlanarTree::vee(l1, (**r).clone()))
                } else {
                    let (r0, r1) = r.split_at(leaf - ln - 1);
                    (PlanarTree::vee((**l).clone(), r0), r1)
                }
            }
        }
    }

    /// Split along a nondecreasing sequence of leaves. Piece `k` holds the
    /// nodes with in-order positions in `(cuts[k-1], cuts[k]]`.
    pub fn split_multi(&self, cuts: &[usize]) -> Vec<PlanarTree> {
        let mut out = Vec::with_capacity(cuts.len() + 1);
        let mut rest = self.clone();
        let mut consumed = 0;
        for &c in cuts {
            let (a, b) = rest.split_at(c - consumed);
            out.push(a);
            rest = b;
            consumed = c;
        }
        out.push(rest);
        out
    }

    /// All splittings along multisets of `m` leaves, in lexicographic order
    /// of the leaf multisets.
    pub fn splittings(&self, m: usize) -> Vec<Vec<PlanarTree>> {
        leaf_multisets(self.nodes(), m)
            .iter()
            .map(|cuts| self.split_multi(cuts))
            .collect()
    }

    /// `(t₀,…,t_m)/self`: graft `forest[i]` onto leaf `i` of `self`.
    pub fn graft(forest: &[PlanarTree], base: &PlanarTree) -> Result<PlanarTree> {
        if forest.len() != base.leaves() {
            return Err(Error::Arity {
                expected: base.leaves(),
                found: forest.len(),
            });
        }
        fn go<'a>(base: &PlanarTree, it: &mut impl Iterator<Item = &'a PlanarTree>) -> PlanarTree {
            match base {
                PlanarTree::Leaf => it.next().expect("arity checked").clone(),
                PlanarTree::Node(l, r) => {
                    let l = go(l, it);
                    let r = go(r, it);
                    PlanarTree::vee(l, r)
                }
            }
        }
        Ok(go(base, &mut forest.iter()))
    }

    /// Tamari covers: every single rotation `(A B) C → A (B C)`.
    pub fn rotations(&self) -> Vec<PlanarTree> {
        let mut out = Vec::new();
        if let PlanarTree::Node(l, r) = self {
            if let PlanarTree::Node(a, b) = &**l {
                out.push(PlanarTree::vee(
                    (**a).clone(),
                    PlanarTree::vee((**b).clone(), (**r).clone()),
                ));
            }
            for l2 in l.rotations() {
                out.push(PlanarTree::vee(l2, (**r).clone()));
            }
            for r2 in r.rotations() {
                out.push(PlanarTree::vee((**l).clone(), r2));
            }
        }
        out
    }

    /// All trees with `n` nodes in canonical order.
    pub fn enumerate(n: usize) -> Vec<PlanarTree> {
        let mut table: Vec<Vec<PlanarTree>> = vec![vec![PlanarTree::Leaf]];
        for k in 1..=n {
            let mut level = Vec::new();
            for i in 0..k {
                for l in &table[i] {
                    for r in &table[k - 1 - i] {
                        level.push(PlanarTree::vee(l.clone(), r.clone()));
                    }
                }
            }
            level.sort();
            table.push(level);
        }
        table.swap_remove(n)
    }
}

fn refold(parts: &[PlanarTree]) -> PlanarTree {
    parts
        .iter()
        .rev()
        .fold(PlanarTree::Leaf, |acc, p| p.backslash(&acc))
}

/// Nondecreasing sequences of length `m` drawn from `0..=nodes`, in
/// lexicographic order. There are `C(nodes + m, m)` of them.
pub fn leaf_multisets(nodes: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, nodes: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..=nodes {
            cur.push(i);
            rec(i, nodes, m, cur, out);
            cur.pop();
        }
    }
    rec(0, nodes, m, &mut cur, &mut out);
    out
}

// Lexicographic order on the canonical encodings. Since '(' < '.', nodes
// sort before leaves, and the encoding is prefix-free so subtrees compare
// left first.
impl Ord for PlanarTree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PlanarTree::Leaf, PlanarTree::Leaf) => Ordering::Equal,
            (PlanarTree::Node(..), PlanarTree::Leaf) => Ordering::Less,
            (PlanarTree::Leaf, PlanarTree::Node(..)) => Ordering::Greater,
            (PlanarTree::Node(a, b), PlanarTree::Node(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
        }
    }
}

impl PartialOrd for PlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf => f.write_str("."),
            PlanarTree::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PlanarTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let t = parse_tree_at(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(parse_err(pos, "trailing input after tree"));
        }
        Ok(t)
    }
}

pub(crate) fn parse_tree_at(bytes: &[u8], pos: &mut usize) -> Result<PlanarTree> {
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(PlanarTree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let l = parse_tree_at(bytes, pos)?;
            let r = parse_tree_at(bytes, pos)?;
            match bytes.get(*pos) {
                Some(b')') => {
                    *pos += 1;
                    Ok(PlanarTree::vee(l, r))
                }
                Some(_) => Err(parse_err(*pos, "expected ')'")),
                None => Err(parse_err(*pos, "unexpected end of input, expected ')'")),
            }
        }
        Some(_) => Err(parse_err(*pos, "expected '.' or '('")),
        None => Err(parse_err(*pos, "unexpected end of input")),
    }
}

pub fn parse_tree(text: &str) -> Result<PlanarTree> {
    text.parse()
}

pub fn format_tree(t: &PlanarTree) -> String {
    t.to_string()
}
