//! Permutations in one-line notation, read as ordered trees.
//!
//! The word `w(1)…w(n)` labels the nodes (gaps) of `τ(w)` from left to
//! right; larger labels sit closer to the root.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for (i, &x) in word.iter().enumerate() {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return Err(Error::NotMember(format!(
                    "word with letter {x} at position {} (not a permutation of 1..={n})",
                    i + 1
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation(word))
    }

    pub(crate) fn from_word_unchecked(word: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation(word)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    /// The top of the weak order, `n⋯21`.
    pub fn reversal(n: usize) -> Self {
        Permutation((1..=n as u8).rev().collect())
    }

    /// The pattern of a word of distinct letters: `4726 ↦ 2413`.
    pub fn standardize(letters: &[u8]) -> Self {
        let mut sorted: Vec<u8> = letters.to_vec();
        sorted.sort_unstable();
        let word = letters
            .iter()
            .map(|x| sorted.binary_search(x).expect("letter present") as u8 + 1)
            .collect();
        Permutation(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn word(&self) -> &[u8] {
        &self.0
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    /// Number of position pairs `i < j` with `w(i) > w(j)`.
    pub fn inversion_count(&self) -> usize {
        let w = &self.0;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Positions of each value; `positions()[v]` is the 0-based position of `v`.
    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len() + 1];
        for (i, &x) in self.0.iter().enumerate() {
            pos[x as usize] = i;
        }
        pos
    }

    /// Left weak order via containment of inversion sets, where an inversion
    /// is a pair of positions `i < j` with `w(i) > w(j)`.
    pub fn weak_leq(&self, other: &Permutation) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let (u, v) = (&self.0, &other.0);
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                if u[i] > u[j] && v[i] < v[j] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Upper covers `(k,k+1)w` for each `k` preceding `k+1` in `w`.
    pub fn weak_covers(&self) -> Vec<Permutation> {
        let pos = self.positions();
        (1..self.len())
            .filter(|&k| pos[k] < pos[k + 1])
            .map(|k| self.swap_values(k))
            .collect()
    }

    /// `(k,k+1)w`: exchange the values `k` and `k+1`.
    pub fn swap_values(&self, k: usize) -> Permutation {
        let word = self
            .0
            .iter()
            .map(|&x| match x as usize {
                v if v == k => (k + 1) as u8,
                v if v == k + 1 => k as u8,
                _ => x,
            })
            .collect();
        Permutation(word)
    }

    /// `u \ v`: the letters of `u` shifted above those of `v`, then `v`.
    pub fn backslash(&self, other: &Permutation) -> Permutation {
        let shift = other.len() as u8;
        let mut word: Vec<u8> = self.0.iter().map(|&x| x + shift).collect();
        word.extend_from_slice(&other.0);
        Permutation(word)
    }

    /// Cut points `k` with `w = st(w[..k]) \ st(w[k..])`, including `0` and `n`.
    fn cut_points(&self) -> Vec<usize> {
        let n = self.len();
        let mut prefix_min = vec![u8::MAX; n + 1];
        for i in 0..n {
            prefix_min[i + 1] = prefix_min[i].min(self.0[i]);
        }
        let mut suffix_max = vec![0u8; n + 1];
        for i in (0..n).rev() {
            suffix_max[i] = suffix_max[i + 1].max(self.0[i]);
        }
        (0..=n).filter(|&k| prefix_min[k] > suffix_max[k]).collect()
    }

    /// Every `w = u \ v`, trivial ones included, ordered by `|u|`.
    pub fn right_decompositions(&self) -> Vec<(Permutation, Permutation)> {
        self.cut_points()
            .into_iter()
            .map(|k| {
                (
                    Permutation::standardize(&self.0[..k]),
                    Permutation::standardize(&self.0[k..]),
                )
            })
            .collect()
    }

    /// The unique factorization into indecomposable permutations.
    pub fn indecomposables(&self) -> Vec<Permutation> {
        self.cut_points()
            .windows(2)
            .map(|w| Permutation::standardize(&self.0[w[0]..w[1]]))
            .collect()
    }

    pub fn is_indecomposable(&self) -> bool {
        !self.is_empty() && self.cut_points().len() == 2
    }

    /// Split along a single leaf (between positions `k` and `k+1`),
    /// standardizing both pieces.
    pub fn split_at(&self, k: usize) -> (Permutation, Permutation) {
        (
            Permutation::standardize(&self.0[..k]),
            Permutation::standardize(&self.0[k..]),
        )
    }

    /// All splittings along multisets of `m` leaves. Pieces keep their
    /// original labels, so relative order across the whole forest survives.
    pub fn splittings(&self, m: usize) -> Vec<OrderedForest> {
        crate::trees::leaf_multisets(self.len(), m)
            .into_iter()
            .map(|cuts| self.split_multi(&cuts))
            .collect()
    }

    pub fn split_multi(&self, cuts: &[usize]) -> OrderedForest {
        let mut parts = Vec::with_capacity(cuts.len() + 1);
        let mut start = 0;
        for &c in cuts {
            parts.push(self.0[start..c].to_vec());
            start = c;
        }
        parts.push(self.0[start..].to_vec());
        OrderedForest { parts }
    }

    /// Whether `pattern` occurs as a subsequence with the same relative order.
    pub fn contains_pattern(&self, pattern: &[u8]) -> bool {
        extend_match(&self.0, pattern, 0, &mut Vec::new())
    }

    pub fn avoids(&self, pattern: &[u8]) -> bool {
        !self.contains_pattern(pattern)
    }

    /// Whether `pattern` occurs with its first letter matched by `w(1)`
    /// (a pinned pattern such as `2̲031`).
    pub fn contains_pinned(&self, pattern: &[u8]) -> bool {
        match (self.0.first(), pattern.is_empty()) {
            (_, true) => true,
            (None, false) => false,
            (Some(&first), false) => extend_match(&self.0, pattern, 1, &mut vec![first]),
        }
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn enumerate(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut word: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Permutation(word.clone()));
            // next lexicographic permutation
            let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else {
                break;
            };
            let j = (i..word.len()).rev().find(|&j| word[j] > word[i - 1]).unwrap();
            word.swap(i - 1, j);
            word[i..].reverse();
        }
        out
    }
}

fn extend_match(w: &[u8], pattern: &[u8], start: usize, chosen: &mut Vec<u8>) -> bool {
    if chosen.len() == pattern.len() {
        return true;
    }
    let k = chosen.len();
    for i in start..w.len() {
        if (0..k).all(|j| (pattern[j] < pattern[k]) == (chosen[j] < w[i])) {
            chosen.push(w[i]);
            if extend_match(w, pattern, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// A forest produced by splitting a permutation: consecutive factors of the
/// word, each keeping its original letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedForest {
    pub parts: Vec<Vec<u8>>,
}

impl OrderedForest {
    pub fn standardized(&self) -> Vec<Permutation> {
        self.parts.iter().map(|p| Permutation::standardize(p)).collect()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    /// `(w₀,…,w_m)/v`: part `i` grafted onto leaf `i` of `v`, with the
    /// letters of `v` placed above every letter of the forest.
    pub fn graft(&self, base: &Permutation) -> Result<Permutation> {
        if self.parts.len() != base.len() + 1 {
            return Err(Error::Arity {
                expected: base.len() + 1,
                found: self.parts.len(),
            });
        }
        let shift = self.size() as u8;
        let mut word = Vec::with_capacity(self.size() + base.len());
        for (i, part) in self.parts.iter().enumerate() {
            word.extend_from_slice(part);
            if i < base.len() {
                word.push(base.0[i] + shift);
            }
        }
        Ok(Permutation(word))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("()");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `3,4,2,1`, the digit shorthand `3421` (for `n ≤ 9`), and `()`
    /// or `∅` for the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" || s == "∅" {
            return Ok(Permutation::empty());
        }
        let mut word = Vec::new();
        if s.contains(',') {
            let mut offset = 0;
            for piece in s.split(',') {
                let v: u8 = piece
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(offset, format!("bad letter {piece:?}")))?;
                word.push(v);
                offset += piece.len() + 1;
            }
        } else {
            for (i, c) in s.char_indices() {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| parse_err(i, format!("unexpected character {c:?}")))?;
                word.push(d as u8);
            }
        }
        Permutation::new(word).map_err(|e| parse_err(0, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(p("3421"), p("3,4,2,1"));
        assert_eq!(p("3421").to_string(), "3,4,2,1");
        assert_eq!(p("()"), Permutation::empty());
        assert!("3321".parse::<Permutation>().is_err());
        assert!("3a21".parse::<Permutation>().is_err());
        assert_eq!(p("1,10,2,3,4,5,6,7,8,9").len(), 10);
    }

    #[test]
    fn standardize_example() {
        assert_eq!(Permutation::standardize(&[4, 7, 2, 6]), p("2413"));
    }

    #[test]
    fn weak_order_basics() {
        assert!(p("1234").weak_leq(&p("4321")).unwrap());
        assert!(!p("4321").weak_leq(&p("1234")).unwrap());
        let mut covers = p("1234").weak_covers();
        covers.sort();
        assert_eq!(covers, vec![p("1243"), p("1324"), p("2134")]);
        assert!(p("12").weak_leq(&p("123")).is_err());
    }

    #[test]
    fn weak_covers_raise_inversions_by_one() {
        for w in Permutation::enumerate(5) {
            for c in w.weak_covers() {
                assert_eq!(c.inversion_count(), w.inversion_count() + 1);
                assert!(w.weak_leq(&c).unwrap());
            }
        }
    }

    #[test]
    fn backslash_and_decompositions() {
        // u = 1432, v = 132 gives 4765132
        assert_eq!(p("1432").backslash(&p("132")), p("4765132"));
        let w = p("4765132");
        assert_eq!(
            w.right_decompositions(),
            vec![
                (Permutation::empty(), w.clone()),
                (p("1432"), p("132")),
                (w.clone(), Permutation::empty())
            ]
        );
        assert_eq!(w.indecomposables(), vec![p("1432"), p("132")]);
        assert!(p("1432").is_indecomposable());
        assert!(!p("21").is_indecomposable());
    }

    #[test]
    fn splitting_counts() {
        for n in 0..=4 {
            for w in Permutation::enumerate(n) {
                assert_eq!(w.splittings(1).len(), n + 1);
            }
        }
        assert_eq!(p("12").splittings(2).len(), 6);
    }

    #[test]
    fn shuffle_graft() {
        let w = p("12");
        let v = p("21");
        let mut products: Vec<Permutation> = w
            .splittings(v.len())
            .iter()
            .map(|f| f.graft(&v).unwrap())
            .collect();
        products.sort();
        let expected: Vec<Permutation> = ["1243", "1423", "1432", "4123", "4132", "4312"]
            .iter()
            .map(|s| p(s))
            .collect();
        assert_eq!(products, expected);
    }

    #[test]
    fn patterns() {
        assert!(p("132").contains_pattern(&[1, 3, 2]));
        assert!(p("25143").contains_pattern(&[2, 3, 1]));
        assert!(p("4321").avoids(&[1, 3, 2]));
        // 2̲031 in one-line notation on 1..4 is 3142 with the 3 pinned
        assert!(p("3142").contains_pinned(&[3, 1, 4, 2]));
        assert!(p("41532").contains_pinned(&[3, 1, 4, 2]));
        assert!(!p("1342").contains_pinned(&[3, 1, 4, 2]));
    }

    #[test]
    fn enumerate_is_sorted_and_complete() {
        let all = Permutation::enumerate(4);
        assert_eq!(all.len(), 24);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(Permutation::enumerate(0), vec![Permutation::empty()]);
    }
}
