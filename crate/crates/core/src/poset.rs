//! Finite posets with bitset closures, memoized Möbius functions and chain
//! sums.

use std::collections::HashMap;
use std::fmt::{self, Display, Write};
use std::hash::Hash;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A finite poset on a fixed list of elements.
///
/// Element indices follow the order of the list handed to the constructor.
/// The up-set and down-set of every element are stored as bitsets, so `leq`
/// is a single bit test once the poset is built.
pub struct FinitePoset<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    // a linear extension, and each element's place in it
    linear: Vec<usize>,
    place: Vec<usize>,
    mobius: Vec<OnceLock<Vec<(usize, i64)>>>,
}

impl<E: Clone + Eq + Hash> FinitePoset<E> {
    /// Builds the poset generated by a cover relation. `covers(x)` may return
    /// any set of elements above `x` whose transitive closure is the order.
    pub fn from_upper_covers(elements: Vec<E>, mut covers: impl FnMut(&E) -> Vec<E>) -> Result<Self> {
        let index = index_of(&elements);
        let n = elements.len();
        let mut succ = Vec::with_capacity(n);
        for e in &elements {
            let mut s = Vec::new();
            for c in covers(e) {
                let j = *index
                    .get(&c)
                    .ok_or_else(|| Error::Unsupported("cover outside the element set".into()))?;
                s.push(j);
            }
            succ.push(s);
        }
        let linear = kahn(&succ)?;
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in linear.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x);
            for &y in &succ[x] {
                set.union_with(&up[y]);
            }
            up[x] = set;
        }
        Ok(Self::assemble(elements, index, up, linear))
    }

    /// Builds the poset from a comparison predicate, which must be a partial
    /// order; this is checked.
    pub fn from_leq(elements: Vec<E>, mut leq: impl FnMut(&E, &E) -> bool) -> Result<Self> {
        let index = index_of(&elements);
        let n = elements.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                if leq(x, y) {
                    up[i].insert(j);
                }
            }
        }
        let mut linear: Vec<usize> = (0..n).collect();
        // x < y implies down(x) ⊊ down(y), so sorting by down-set size is a
        // linear extension once the relation is known to be an order.
        let below: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| up[i].contains(j)).count())
            .collect();
        linear.sort_by_key(|&i| below[i]);
        let poset = Self::assemble(elements, index, up, linear);
        poset.check_axioms()?;
        Ok(poset)
    }

    fn assemble(
        elements: Vec<E>,
        index: HashMap<E, usize>,
        up: Vec<FixedBitSet>,
        linear: Vec<usize>,
    ) -> Self {
        let n = elements.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, set) in up.iter().enumerate() {
            for y in set.ones() {
                down[y].insert(x);
            }
        }
        let mut place = vec![0; n];
        for (k, &x) in linear.iter().enumerate() {
            place[x] = k;
        }
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for x in 0..n {
            // y covers x iff y > x and nothing strictly between
            let mut strict = up[x].clone();
            strict.set(x, false);
            let mut above_strict = FixedBitSet::with_capacity(n);
            for z in strict.ones() {
                let mut s = up[z].clone();
                s.set(z, false);
                above_strict.union_with(&s);
            }
            strict.difference_with(&above_strict);
            for y in strict.ones() {
                upper_covers[x].push(y);
                lower_covers[y].push(x);
            }
        }
        FinitePoset {
            elements,
            index,
            up,
            down,
            upper_covers,
            lower_covers,
            linear,
            place,
            mobius: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Reflexivity, antisymmetry and transitivity of the stored relation.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            if !self.up[x].contains(x) {
                return Err(Error::Unsupported(format!("relation is not reflexive at {x}")));
            }
            for y in self.up[x].ones() {
                if y != x && self.up[y].contains(x) {
                    return Err(Error::Unsupported(format!(
                        "relation is not antisymmetric at {x},{y}"
                    )));
                }
                if !self.up[y].is_subset(&self.up[x]) {
                    return Err(Error::Unsupported(format!(
                        "relation is not transitive at {x},{y}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub(crate) fn require(&self, e: &E) -> Result<usize>
    where
        E: Display,
    {
        self.index_of(e).ok_or_else(|| Error::NotMember(e.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// All cover pairs `(x, y)` with `x ⋖ y`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.upper_covers[x].iter().map(move |&y| (x, y)))
            .collect()
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    /// The closed interval `[i, j]` (empty when `i ≰ j`).
    pub fn interval(&self, i: usize, j: usize) -> FixedBitSet {
        let mut s = self.up[i].clone();
        s.intersect_with(&self.down[j]);
        s
    }

    /// The least and greatest elements of `subset`, if both exist.
    pub fn bounds(&self, subset: &FixedBitSet) -> Option<(usize, usize)> {
        let lo = subset.ones().find(|&x| subset.is_subset(&self.up[x]))?;
        let hi = subset.ones().find(|&x| subset.is_subset(&self.down[x]))?;
        Some((lo, hi))
    }

    /// `Some((lo, hi))` when `subset` is exactly the interval `[lo, hi]`.
    pub fn is_interval(&self, subset: &FixedBitSet) -> Option<(usize, usize)> {
        let (lo, hi) = self.bounds(subset)?;
        (self.interval(lo, hi) == *subset).then_some((lo, hi))
    }

    /// The Möbius function, computed a row at a time from
    /// `µ(x,y) = −Σ_{x≤z<y} µ(x,z)` and memoized.
    pub fn mobius(&self, i: usize, j: usize) -> i64 {
        let row = self.mobius_row(i);
        match row.binary_search_by_key(&j, |&(k, _)| k) {
            Ok(p) => row[p].1,
            Err(_) => 0,
        }
    }

    /// Nonzero values `µ(i, ·)`, sorted by element index.
    pub fn mobius_row(&self, i: usize) -> &[(usize, i64)] {
        self.mobius[i].get_or_init(|| {
            let n = self.len();
            let mut mu = vec![0i64; n];
            let mut above: Vec<usize> = self.up[i].ones().collect();
            above.sort_by_key(|&y| self.place[y]);
            for &y in &above {
                if y == i {
                    mu[y] = 1;
                    continue;
                }
                let mut s = 0;
                for z in self.up[i].intersection(&self.down[y]) {
                    if z != y {
                        s += mu[z];
                    }
                }
                mu[y] = -s;
            }
            let mut row: Vec<(usize, i64)> = above
                .into_iter()
                .filter(|&y| mu[y] != 0)
                .map(|y| (y, mu[y]))
                .collect();
            row.sort_unstable();
            row
        })
    }

    /// `µ(i, j)` by Hall's formula: the signed count of chains from `i` to `j`.
    /// The chains are enumerated one by one, so this is only for small
    /// intervals.
    pub fn hall_mobius(&self, i: usize, j: usize) -> i64 {
        if !self.leq(i, j) {
            return 0;
        }
        fn walk<E: Clone + Eq + Hash>(
            p: &FinitePoset<E>,
            x: usize,
            target: usize,
            len: usize,
            total: &mut i64,
        ) {
            if x == target {
                *total += if len.is_multiple_of(2) { 1 } else { -1 };
                return;
            }
            for y in p.up[x].ones() {
                if y != x && p.leq(y, target) {
                    walk(p, y, target, len + 1, total);
                }
            }
        }
        let mut total = 0;
        walk(self, i, j, 0, &mut total);
        total
    }

    /// `Σ (−1)^ℓ(C)` over the nonempty chains `C` of the subposet `subset`.
    pub fn chain_sum(&self, subset: &FixedBitSet) -> i64 {
        self.monotone_chain_sum(std::slice::from_ref(subset))
    }

    /// `Σ (−1)^ℓ(C)` over chains of `⋃ blocks` that meet every block, for a
    /// monotone partition: `x < y` with `x ∈ K_i`, `y ∈ K_j` forces `i ≤ j`.
    pub fn monotone_chain_sum(&self, blocks: &[FixedBitSet]) -> i64 {
        let n = self.len();
        let mut block = vec![usize::MAX; n];
        for (b, set) in blocks.iter().enumerate() {
            for x in set.ones() {
                block[x] = b;
            }
        }
        let last = blocks.len().saturating_sub(1);
        // g[x]: signed count of chains ending at x that met blocks 0..=block[x]
        let mut g = vec![0i64; n];
        let mut total = 0;
        for &x in &self.linear {
            let bx = block[x];
            if bx == usize::MAX {
                continue;
            }
            let mut v = i64::from(bx == 0);
            for z in self.down[x].ones() {
                let bz = block[z];
                if z != x && bz != usize::MAX && (bz == bx || bz + 1 == bx) {
                    v -= g[z];
                }
            }
            g[x] = v;
            if bx == last {
                total += v;
            }
        }
        total
    }
}

impl<E: Display> FinitePoset<E> {
    /// The Hasse diagram as a DOT digraph with edges pointing up.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{name}\" {{");
        out.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&e.to_string()));
        }
        for (x, ys) in self.upper_covers.iter().enumerate() {
            for y in ys {
                let _ = writeln!(out, "  n{x} -> n{y};");
            }
        }
        out.push_str("}\n");
        out
    }
}

impl<E: fmt::Debug> fmt::Debug for FinitePoset<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("len", &self.elements.len())
            .field("covers", &self.upper_covers.iter().map(Vec::len).sum::<usize>())
            .finish()
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn index_of<E: Clone + Eq + Hash>(elements: &[E]) -> HashMap<E, usize> {
    elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect()
}

/// Topological order of a DAG given by successor lists.
fn kahn(succ: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &y in s {
            indeg[y] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                stack.push(y);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Unsupported("cover relation has a cycle".into()));
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisors(n: u32) -> FinitePoset<u32> {
        let elems: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        FinitePoset::from_leq(elems, |a, b| b % a == 0).unwrap()
    }

    fn number_theoretic_mobius(mut n: u32) -> i64 {
        let mut mu = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                mu = -mu;
            }
            p += 1;
        }
        if n > 1 {
            mu = -mu;
        }
        mu
    }

    #[test]
    fn divisor_lattice_mobius() {
        let p = divisors(360);
        for i in 0..p.len() {
            for j in 0..p.len() {
                let (a, b) = (*p.element(i), *p.element(j));
                let expect = if b % a == 0 {
                    number_theoretic_mobius(b / a)
                } else {
                    0
                };
                assert_eq!(p.mobius(i, j), expect, "{a} {b}");
            }
        }
    }

    #[test]
    fn hall_agrees_with_recursion() {
        let p = divisors(72);
        for i in 0..p.len() {
            for j in 0..p.len() {
                assert_eq!(p.hall_mobius(i, j), p.mobius(i, j));
            }
        }
    }

    #[test]
    fn covers_from_cover_function_are_reduced() {
        // give a redundant relation; the stored covers must be the Hasse diagram
        let p = FinitePoset::from_upper_covers(vec![0u8, 1, 2], |&x| match x {
            0 => vec![1, 2],
            1 => vec![2],
            _ => vec![],
        })
        .unwrap();
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
        assert!(p.check_axioms().is_ok());
    }

    #[test]
    fn cycles_and_non_orders_are_rejected() {
        assert!(FinitePoset::from_upper_covers(vec![0u8, 1], |&x| vec![1 - x]).is_err());
        assert!(FinitePoset::from_leq(vec![0u8, 1], |_, _| true).is_err());
    }

    #[test]
    fn chain_sums() {
        let p = divisors(12);
        let mut all = FixedBitSet::with_capacity(p.len());
        all.insert_range(..);
        assert_eq!(p.chain_sum(&all), 1);
        let mut single = FixedBitSet::with_capacity(p.len());
        single.insert(0);
        assert_eq!(p.chain_sum(&single), 1);
        // an antichain of two elements
        let mut anti = FixedBitSet::with_capacity(p.len());
        anti.insert(p.index_of(&3).unwrap());
        anti.insert(p.index_of(&4).unwrap());
        assert_eq!(p.chain_sum(&anti), 2);
        // {1,2} ⊔ {3,4,6,12}... split a chain 1 | 2 | 4 | 12 into blocks
        let blocks: Vec<FixedBitSet> = [1u32, 2, 4, 12]
            .iter()
            .map(|d| {
                let mut s = FixedBitSet::with_capacity(p.len());
                s.insert(p.index_of(d).unwrap());
                s
            })
            .collect();
        assert_eq!(p.monotone_chain_sum(&blocks), -1);
    }

    #[test]
    fn intervals_and_dot() {
        let p = divisors(12);
        let iv = p.interval(p.index_of(&2).unwrap(), p.index_of(&12).unwrap());
        assert_eq!(iv.count_ones(..), 4);
        assert!(p.is_interval(&iv).is_some());
        let dot = p.to_dot("D12");
        assert!(dot.starts_with("digraph \"D12\""));
        assert_eq!(dot.matches("->").count(), 7);
    }
}
