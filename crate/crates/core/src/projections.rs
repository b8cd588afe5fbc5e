//! The maps `τ = φ ∘ β : 𝔖 → ℳ → 𝒴`, the sections `Min`, `Max` and `ι`, and
//! fibers.

use crate::bileveled::BiLeveledTree;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::trees::PlanarTree;

/// The planar binary tree underlying an ordered tree: split at the largest
/// letter and recurse.
pub fn tau(w: &Permutation) -> PlanarTree {
    fn rec(word: &[u8]) -> PlanarTree {
        match word.iter().enumerate().max_by_key(|&(_, &x)| x) {
            None => PlanarTree::Leaf,
            Some((j, _)) => PlanarTree::vee(rec(&word[..j]), rec(&word[j + 1..])),
        }
    }
    rec(w.word())
}

/// `T(w) = {i | w(i) ≥ w(1)}`, as 1-based positions.
pub fn t_set(w: &Permutation) -> Result<Vec<usize>> {
    let first = *w.word().first().ok_or(Error::Empty)?;
    Ok(w.word()
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x >= first)
        .map(|(i, _)| i + 1)
        .collect())
}

pub fn beta(w: &Permutation) -> BiLeveledTree {
    match t_set(w) {
        Err(_) => BiLeveledTree::empty(),
        Ok(ideal) => BiLeveledTree::new(tau(w), ideal).expect("T(w) is an admissible ideal"),
    }
}

pub fn phi(b: &BiLeveledTree) -> PlanarTree {
    b.tree().clone()
}

/// The weak-order minimum of `τ⁻¹(t)`, the unique 231-avoiding permutation.
pub fn min_perm(t: &PlanarTree) -> Permutation {
    fn rec(t: &PlanarTree, base: u8, out: &mut Vec<u8>) {
        if let PlanarTree::Node(l, r) = t {
            let a = l.nodes() as u8;
            rec(l, base, out);
            out.push(base + t.nodes() as u8);
            rec(r, base + a, out);
        }
    }
    let mut out = Vec::with_capacity(t.nodes());
    rec(t, 0, &mut out);
    Permutation::from_word_unchecked(out)
}

/// The weak-order maximum of `τ⁻¹(t)`, the unique 132-avoiding permutation.
pub fn max_perm(t: &PlanarTree) -> Permutation {
    fn rec(t: &PlanarTree, base: u8, out: &mut Vec<u8>) {
        if let PlanarTree::Node(l, r) = t {
            let b = r.nodes() as u8;
            rec(l, base + b, out);
            out.push(base + t.nodes() as u8);
            rec(r, base, out);
        }
    }
    let mut out = Vec::with_capacity(t.nodes());
    rec(t, 0, &mut out);
    Permutation::from_word_unchecked(out)
}

/// All linear extensions of the node poset of `t`, i.e. `τ⁻¹(t)`, sorted.
pub fn tau_fiber(t: &PlanarTree) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = tau_fiber_words(t)
        .into_iter()
        .map(Permutation::from_word_unchecked)
        .collect();
    out.sort();
    out
}

fn tau_fiber_words(t: &PlanarTree) -> Vec<Vec<u8>> {
    let PlanarTree::Node(l, r) = t else {
        return vec![Vec::new()];
    };
    let n = t.nodes();
    let a = l.nodes();
    let (left, right) = (tau_fiber_words(l), tau_fiber_words(r));
    let mut out = Vec::new();
    for chosen in subsets(n - 1, a) {
        let rest: Vec<u8> = (1..n as u8).filter(|x| !chosen.contains(x)).collect();
        for lw in &left {
            for rw in &right {
                let mut w: Vec<u8> = lw.iter().map(|&x| chosen[x as usize - 1]).collect();
                w.push(n as u8);
                w.extend(rw.iter().map(|&x| rest[x as usize - 1]));
                out.push(w);
            }
        }
    }
    out
}

/// Increasing `k`-subsets of `1..=n`, lexicographically.
fn subsets(n: usize, k: usize) -> Vec<Vec<u8>> {
    fn rec(start: u8, n: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if (n - x) as usize + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n as u8, k, &mut Vec::new(), &mut out);
    out
}

/// `w = u₁v¹u₂⋯u_r v^r` where `u` is the restriction of `w` to `T(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiLeveledFactorization {
    pub u: Vec<u8>,
    pub v: Vec<Vec<u8>>,
}

impl BiLeveledFactorization {
    pub fn reassemble(&self) -> Permutation {
        let mut word = Vec::new();
        for (u, v) in self.u.iter().zip(&self.v) {
            word.push(*u);
            word.extend_from_slice(v);
        }
        Permutation::from_word_unchecked(word)
    }

    /// The forest form `(t₀, (t₁,…,t_r))` of `β(w)`.
    pub fn forest_form(&self) -> (PlanarTree, Vec<PlanarTree>) {
        let t0 = tau(&Permutation::standardize(&self.u[1..]));
        let forest = self.v.iter().map(|v| tau(&Permutation::standardize(v))).collect();
        (t0, forest)
    }
}

pub fn bileveled_factorization(w: &Permutation) -> Result<BiLeveledFactorization> {
    let first = *w.word().first().ok_or(Error::Empty)?;
    let mut u = Vec::new();
    let mut v: Vec<Vec<u8>> = Vec::new();
    for &x in w.word() {
        if x >= first {
            u.push(x);
            v.push(Vec::new());
        } else {
            v.last_mut().expect("w(1) opens the first block").push(x);
        }
    }
    Ok(BiLeveledFactorization { u, v })
}

/// The section `ι`: `u` is `Min₀(b)` and `(v¹,…,v^r)` is the maximal sequence,
/// with `v^i` 132-avoiding and its letters above those of later blocks.
pub fn iota(b: &BiLeveledTree) -> Permutation {
    if b.is_empty() {
        return Permutation::empty();
    }
    let (t0, forest) = b.forest_form();
    let n = b.nodes();
    let r = forest.len();
    let head = (n + 1 - r) as u8;
    let mut u = vec![head];
    u.extend(min_perm(&t0).word().iter().map(|&x| x + head));
    let mut v = Vec::with_capacity(r);
    let mut below: usize = forest.iter().map(PlanarTree::nodes).sum();
    for t in &forest {
        below -= t.nodes();
        v.push(max_perm(t).word().iter().map(|&x| x + below as u8).collect());
    }
    BiLeveledFactorization { u, v }.reassemble()
}

/// `Min₀`/`Max₀` and the minimal/maximal block sequences combined: the least
/// and greatest elements of `β⁻¹(b)`.
pub fn beta_fiber_bounds(b: &BiLeveledTree) -> (Permutation, Permutation) {
    if b.is_empty() {
        return (Permutation::empty(), Permutation::empty());
    }
    let (t0, forest) = b.forest_form();
    let n = b.nodes();
    let r = forest.len();
    let head = (n + 1 - r) as u8;
    let u_of = |p: Permutation| -> Vec<u8> {
        let mut u = vec![head];
        u.extend(p.word().iter().map(|&x| x + head));
        u
    };
    let mut v_min = Vec::with_capacity(r);
    let mut v_max = Vec::with_capacity(r);
    let mut before = 0;
    let mut after: usize = forest.iter().map(PlanarTree::nodes).sum();
    for t in &forest {
        after -= t.nodes();
        v_min.push(min_perm(t).word().iter().map(|&x| x + before as u8).collect());
        v_max.push(max_perm(t).word().iter().map(|&x| x + after as u8).collect());
        before += t.nodes();
    }
    let lo = BiLeveledFactorization {
        u: u_of(min_perm(&t0)),
        v: v_min,
    }
    .reassemble();
    let hi = BiLeveledFactorization {
        u: u_of(max_perm(&t0)),
        v: v_max,
    }
    .reassemble();
    (lo, hi)
}

/// Fibers up to this size are found by scanning `𝔖ₙ`.
pub const FIBER_SCAN_LIMIT: usize = 7;

/// `β⁻¹(b)`, sorted.
pub fn beta_fiber(b: &BiLeveledTree) -> Vec<Permutation> {
    if b.nodes() <= FIBER_SCAN_LIMIT {
        beta_fiber_by_scan(b)
    } else {
        beta_fiber_by_product(b)
    }
}

pub fn beta_fiber_by_scan(b: &BiLeveledTree) -> Vec<Permutation> {
    Permutation::enumerate(b.nodes())
        .into_iter()
        .filter(|w| beta(w) == *b)
        .collect()
}

/// `β⁻¹(b)` as the product `τ⁻¹(t₀) × (distributions of 1..n−r) × Π τ⁻¹(tᵢ)`.
pub fn beta_fiber_by_product(b: &BiLeveledTree) -> Vec<Permutation> {
    if b.is_empty() {
        return vec![Permutation::empty()];
    }
    let (t0, forest) = b.forest_form();
    let n = b.nodes();
    let r = forest.len();
    let head = (n + 1 - r) as u8;
    let heads: Vec<Vec<u8>> = tau_fiber_words(&t0)
        .into_iter()
        .map(|p| {
            let mut u = vec![head];
            u.extend(p.iter().map(|&x| x + head));
            u
        })
        .collect();
    let block_fibers: Vec<Vec<Vec<u8>>> = forest.iter().map(tau_fiber_words).collect();
    let sizes: Vec<usize> = forest.iter().map(PlanarTree::nodes).collect();

    let mut tails: Vec<Vec<Vec<u8>>> = Vec::new();
    let letters: Vec<u8> = (1..=(n - r) as u8).collect();
    distribute(&letters, &sizes, &block_fibers, &mut Vec::new(), &mut tails);

    let mut out = Vec::with_capacity(heads.len() * tails.len());
    for u in &heads {
        for v in &tails {
            out.push(
                BiLeveledFactorization {
                    u: u.clone(),
                    v: v.clone(),
                }
                .reassemble(),
            );
        }
    }
    out.sort();
    out
}

// Chooses the letters of each block in turn and arranges them by the block's
// fiber.
fn distribute(
    letters: &[u8],
    sizes: &[usize],
    fibers: &[Vec<Vec<u8>>],
    acc: &mut Vec<Vec<u8>>,
    out: &mut Vec<Vec<Vec<u8>>>,
) {
    let i = acc.len();
    if i == sizes.len() {
        out.push(acc.clone());
        return;
    }
    for chosen in subsets(letters.len(), sizes[i]) {
        let picked: Vec<u8> = chosen.iter().map(|&k| letters[k as usize - 1]).collect();
        let rest: Vec<u8> = letters.iter().copied().filter(|x| !picked.contains(x)).collect();
        for arrangement in &fibers[i] {
            acc.push(arrangement.iter().map(|&x| picked[x as usize - 1]).collect());
            distribute(&rest, sizes, fibers, acc, out);
            acc.pop();
        }
    }
}

/// The pinned patterns `2̲031`, `0̲231`, `3̲021` in one-based form, first
/// letter pinned.
pub const IOTA_PINNED_PATTERNS: [[u8; 4]; 3] = [[3, 1, 4, 2], [1, 3, 4, 2], [4, 1, 3, 2]];

pub fn avoids_iota_patterns(w: &Permutation) -> bool {
    IOTA_PINNED_PATTERNS.iter().all(|p| !w.contains_pinned(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn t(s: &str) -> PlanarTree {
        s.parse().unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&p("")), t("."));
        assert_eq!(tau(&p("12")), t("((..).)"));
        assert_eq!(tau(&p("21")), t("(.(..))"));
        assert_eq!(tau(&p("3421")), t("((..)(.(..)))"));
    }

    #[test]
    fn t_set_examples() {
        assert_eq!(t_set(&p("12")).unwrap(), vec![1, 2]);
        assert_eq!(t_set(&p("21")).unwrap(), vec![1]);
        assert_eq!(t_set(&p("654789132")).unwrap(), vec![1, 4, 5, 6]);
        assert_eq!(t_set(&p("")), Err(Error::Empty));
    }

    #[test]
    fn beta_of_21() {
        assert_eq!(beta(&p("21")).to_string(), "(.(..));{1}");
    }

    #[test]
    fn factorization_example() {
        let f = bileveled_factorization(&p("654789132")).unwrap();
        assert_eq!(f.u, vec![6, 7, 8, 9]);
        assert_eq!(f.v, vec![vec![5, 4], vec![], vec![], vec![1, 3, 2]]);
        assert_eq!(f.reassemble(), p("654789132"));
    }

    #[test]
    fn factorization_describes_beta() {
        for n in 1..=6 {
            for w in Permutation::enumerate(n) {
                let f = bileveled_factorization(&w).unwrap();
                assert_eq!(f.reassemble(), w);
                let (t0, forest) = f.forest_form();
                assert_eq!(BiLeveledTree::from_forest_form(&t0, &forest).unwrap(), beta(&w));
            }
        }
    }

    #[test]
    fn min_and_max_are_fiber_extremes() {
        for n in 0..=5 {
            for s in PlanarTree::enumerate(n) {
                let fiber = tau_fiber(&s);
                let brute: Vec<Permutation> = Permutation::enumerate(n)
                    .into_iter()
                    .filter(|w| tau(w) == s)
                    .collect();
                assert_eq!(fiber, brute);
                let (lo, hi) = (min_perm(&s), max_perm(&s));
                assert!(lo.avoids(&[2, 3, 1]));
                assert!(hi.avoids(&[1, 3, 2]));
                for w in &fiber {
                    assert!(lo.weak_leq(w).unwrap() && w.weak_leq(&hi).unwrap());
                }
            }
        }
    }

    #[test]
    fn iota_example() {
        let w = p("7,8,6,11,4,5,9,10,2,3,1");
        let b = beta(&w);
        assert_eq!(iota(&b), w);
        assert!(avoids_iota_patterns(&w));
        assert_eq!(iota(&beta(&p("21"))), p("21"));
    }

    #[test]
    fn figure_fiber() {
        let b = beta(&p("3471526"));
        let expect: Vec<Permutation> = ["3471526", "3571426", "3671425", "3472516", "3572416", "3672415"]
            .iter()
            .map(|s| p(s))
            .collect();
        let mut expect_sorted = expect.clone();
        expect_sorted.sort();
        assert_eq!(beta_fiber(&b), expect_sorted);
        assert_eq!(beta_fiber_by_product(&b), expect_sorted);
    }

    #[test]
    fn product_construction_matches_scan() {
        for n in 0..=6 {
            for b in BiLeveledTree::enumerate(n) {
                let fiber = beta_fiber_by_scan(&b);
                assert_eq!(beta_fiber_by_product(&b), fiber);
                let (lo, hi) = beta_fiber_bounds(&b);
                assert_eq!(fiber.first(), Some(&lo));
                for w in &fiber {
                    assert!(lo.weak_leq(w).unwrap() && w.weak_leq(&hi).unwrap());
                }
                let iota_b = iota(&b);
                assert_eq!(beta(&iota_b), b);
                let avoiders: Vec<&Permutation> = fiber.iter().filter(|w| avoids_iota_patterns(w)).collect();
                assert_eq!(avoiders, vec![&iota_b]);
            }
        }
    }
}
