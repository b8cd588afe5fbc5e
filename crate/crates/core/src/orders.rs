//! The weak order on `𝔖ₙ`, the Tamari order on `𝒴ₙ` and the order on `ℳₙ`,
//! with per-size caches, together with the verifications that relate them.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;

use crate::bileveled::BiLeveledTree;
use crate::error::{Error, Result};
use crate::linear::Family;
use crate::perm::Permutation;
use crate::poset::FinitePoset;
use crate::projections::{beta, beta_fiber_bounds, iota, max_perm, min_perm, phi, tau};
use crate::trees::PlanarTree;
use crate::verify::Report;

type Cache<E> = OnceLock<Mutex<HashMap<usize, Arc<FinitePoset<E>>>>>;

// The lock is held while a missing poset is built, so each one is built
// exactly once; afterwards it is shared read-only.
fn cached<E>(
    cache: &'static Cache<E>,
    n: usize,
    build: impl FnOnce() -> FinitePoset<E>,
) -> Arc<FinitePoset<E>> {
    let map = cache.get_or_init(Default::default);
    let mut guard = map.lock().unwrap_or_else(|e| e.into_inner());
    guard.entry(n).or_insert_with(|| Arc::new(build())).clone()
}

pub fn weak_order(n: usize) -> Arc<FinitePoset<Permutation>> {
    static CACHE: Cache<Permutation> = OnceLock::new();
    cached(&CACHE, n, || {
        FinitePoset::from_upper_covers(Permutation::enumerate(n), Permutation::weak_covers)
            .expect("weak covers form a DAG on 𝔖ₙ")
    })
}

pub fn tamari_order(n: usize) -> Arc<FinitePoset<PlanarTree>> {
    static CACHE: Cache<PlanarTree> = OnceLock::new();
    cached(&CACHE, n, || {
        FinitePoset::from_upper_covers(PlanarTree::enumerate(n), PlanarTree::rotations)
            .expect("rotations form a DAG on 𝒴ₙ")
    })
}

pub fn multiplihedron_order(n: usize) -> Arc<FinitePoset<BiLeveledTree>> {
    static CACHE: Cache<BiLeveledTree> = OnceLock::new();
    cached(&CACHE, n, || {
        let tamari = tamari_order(n);
        FinitePoset::from_leq(BiLeveledTree::enumerate(n), |b, c| {
            let (s, t) = (tamari.index_of(b.tree()), tamari.index_of(c.tree()));
            let below = tamari.leq(s.expect("tree of size n"), t.expect("tree of size n"));
            below && b.mask() & c.mask() == c.mask()
        })
        .expect("the componentwise order on ℳₙ is a partial order")
    })
}

fn same_size(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::SizeMismatch { left, right })
    }
}

pub fn tamari_leq(s: &PlanarTree, t: &PlanarTree) -> Result<bool> {
    same_size(s.nodes(), t.nodes())?;
    let p = tamari_order(s.nodes());
    Ok(p.leq(p.require(s)?, p.require(t)?))
}

pub fn tamari_covers(t: &PlanarTree) -> Vec<PlanarTree> {
    t.rotations()
}

/// `(s;S) ≤ (t;T)` iff `s ≤ t` and `S ⊇ T`.
pub fn m_leq(b: &BiLeveledTree, c: &BiLeveledTree) -> Result<bool> {
    same_size(b.nodes(), c.nodes())?;
    Ok(b.mask() & c.mask() == c.mask() && tamari_leq(b.tree(), c.tree())?)
}

/// Upper covers of `b`: the minimal elements strictly above it.
pub fn m_covers(b: &BiLeveledTree) -> Result<Vec<BiLeveledTree>> {
    let p = multiplihedron_order(b.nodes());
    let i = p.require(b)?;
    Ok(p.upper_covers(i).iter().map(|&j| p.element(j).clone()).collect())
}

/// The node poset of `t` on gap indices `1..=n`, with the root maximal.
pub fn node_poset(t: &PlanarTree) -> FinitePoset<usize> {
    let parents = t.parents();
    FinitePoset::from_upper_covers((1..=t.nodes()).collect(), |&i| parents[i].into_iter().collect())
        .expect("a tree is acyclic")
}

/// `µ(x, y)` in the poset of the given family, for encoded elements.
pub fn mobius(family: Family, x: &str, y: &str) -> Result<i64> {
    fn on<E: Clone + Eq + std::hash::Hash + std::fmt::Display>(
        p: &FinitePoset<E>,
        x: &E,
        y: &E,
    ) -> Result<i64> {
        Ok(p.mobius(p.require(x)?, p.require(y)?))
    }
    match family {
        Family::S => {
            let (a, b): (Permutation, Permutation) = (x.parse()?, y.parse()?);
            same_size(a.len(), b.len())?;
            on(&weak_order(a.len()), &a, &b)
        }
        Family::Y => {
            let (a, b): (PlanarTree, PlanarTree) = (x.parse()?, y.parse()?);
            same_size(a.nodes(), b.nodes())?;
            on(&tamari_order(a.nodes()), &a, &b)
        }
        Family::M => {
            let (a, b): (BiLeveledTree, BiLeveledTree) = (x.parse()?, y.parse()?);
            same_size(a.nodes(), b.nodes())?;
            on(&multiplihedron_order(a.nodes()), &a, &b)
        }
    }
}

/// The three kinds of covers in `ℳₙ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverType {
    /// Same ideal; one tree of the forest form moves up by a rotation.
    Forest,
    /// The leftmost node rotates across its parent and leaves the ideal.
    Leftmost,
    /// Same tree; one ideal node `T_j` with `j > 2` leaves the ideal.
    Ideal,
}

/// Every cover type that describes the pair `b ⋖ c`.
pub fn classify_cover(b: &BiLeveledTree, c: &BiLeveledTree) -> Vec<CoverType> {
    let mut out = Vec::new();
    let ideal = b.ideal();
    let rotated = b.tree().rotations().contains(c.tree());
    if rotated && b.mask() == c.mask() {
        let ((s0, s), (t0, t)) = (b.forest_form(), c.forest_form());
        let moved: Vec<usize> = std::iter::once((s0, t0))
            .chain(s.into_iter().zip(t))
            .enumerate()
            .filter(|(_, (x, y))| x != y)
            .map(|(i, (x, y))| if x.rotations().contains(&y) { i } else { usize::MAX })
            .collect();
        if moved.len() == 1 && moved[0] != usize::MAX {
            out.push(CoverType::Forest);
        }
    }
    if ideal.len() >= 2 {
        let parents = b.tree().parents();
        let parent = parents[1];
        let without = |j: usize| {
            let mut rest = ideal.clone();
            rest.remove(j);
            rest
        };
        // the parent of node 1 must have no other child in the ideal
        let lone = parent.is_some_and(|p| {
            parents
                .iter()
                .enumerate()
                .all(|(k, q)| k == 1 || *q != Some(p) || !ideal.contains(&k))
        });
        if rotated && lone && c.ideal() == without(1) {
            out.push(CoverType::Leftmost);
        }
        if b.tree() == c.tree() && (2..ideal.len()).any(|j| c.ideal() == without(j)) {
            out.push(CoverType::Ideal);
        }
    }
    out
}

/// Images `β(w) ⋖ β(w′)` of weak covers `w ⋖ w′` that do not collapse.
pub fn cover_images(n: usize) -> BTreeSet<(BiLeveledTree, BiLeveledTree)> {
    let mut out = BTreeSet::new();
    for w in Permutation::enumerate(n) {
        let b = beta(&w);
        for w2 in w.weak_covers() {
            let c = beta(&w2);
            if b != c {
                out.insert((b.clone(), c));
            }
        }
    }
    out
}

/// The covers of `ℳₙ` are exactly the non-collapsing images of weak covers,
/// and each is of exactly one of the three types.
pub fn covers_verify(n: usize) -> Report {
    let mut report = Report::new(format!("covers n={n}"));
    let p = multiplihedron_order(n);
    let hasse: BTreeSet<(BiLeveledTree, BiLeveledTree)> = p
        .cover_pairs()
        .into_iter()
        .map(|(x, y)| (p.element(x).clone(), p.element(y).clone()))
        .collect();
    let images = cover_images(n);
    report.check(hasse == images, || {
        let extra = hasse.symmetric_difference(&images).next();
        format!("Hasse diagram differs from cover images at {extra:?}")
    });
    for (b, c) in &hasse {
        let types = classify_cover(b, c);
        report.check(types.len() == 1, || format!("{b} ⋖ {c} has types {types:?}"));
    }
    report
}

/// Fibers of `β` are intervals with the predicted ends, `ι` is a section and
/// is order-preserving, and the maps `τ, β, φ, Min, Max, ι` preserve order.
pub fn interval_retract_verify(n: usize) -> Report {
    let mut report = Report::new(format!("interval-retract n={n}"));
    let weak = weak_order(n);
    let mult = multiplihedron_order(n);
    let tamari = tamari_order(n);

    let mut fibers = vec![FixedBitSet::with_capacity(weak.len()); mult.len()];
    for (i, w) in weak.elements().iter().enumerate() {
        fibers[mult.index_of(&beta(w)).expect("β lands in ℳₙ")].insert(i);
    }
    for (k, b) in mult.elements().iter().enumerate() {
        let fiber = &fibers[k];
        let bounds = weak.is_interval(fiber);
        report.check(bounds.is_some(), || format!("fiber of {b} is not an interval"));
        if let Some((lo, hi)) = bounds {
            let (lo2, hi2) = beta_fiber_bounds(b);
            report.check(*weak.element(lo) == lo2 && *weak.element(hi) == hi2, || {
                format!(
                    "fiber of {b} has ends {}..{}, predicted {lo2}..{hi2}",
                    weak.element(lo),
                    weak.element(hi)
                )
            });
        }
        let w = iota(b);
        report.check(beta(&w) == *b, || format!("β(ι({b})) = {} ≠ {b}", beta(&w)));
    }
    for (x, y) in mult.cover_pairs() {
        let (b, c) = (mult.element(x), mult.element(y));
        let (u, v) = (iota(b), iota(c));
        report.check(u.weak_leq(&v).unwrap_or(false), || {
            format!("ι not monotone on {b} ⋖ {c}: {u} ≰ {v}")
        });
        report.check(
            tamari.leq(
                tamari.index_of(&phi(b)).unwrap(),
                tamari.index_of(&phi(c)).unwrap(),
            ),
            || format!("φ not monotone on {b} ⋖ {c}"),
        );
    }
    for (x, y) in weak.cover_pairs() {
        let (w, v) = (weak.element(x), weak.element(y));
        let (b, c) = (beta(w), beta(v));
        report.check(
            mult.leq(mult.index_of(&b).unwrap(), mult.index_of(&c).unwrap()),
            || format!("β not monotone on {w} ⋖ {v}"),
        );
        report.check(phi(&b) == tau(w), || format!("φ(β({w})) ≠ τ({w})"));
        report.check(
            tamari.leq(
                tamari.index_of(&tau(w)).unwrap(),
                tamari.index_of(&tau(v)).unwrap(),
            ),
            || format!("τ not monotone on {w} ⋖ {v}"),
        );
    }
    for (x, y) in tamari.cover_pairs() {
        let (s, t) = (tamari.element(x), tamari.element(y));
        report.check(min_perm(s).weak_leq(&min_perm(t)).unwrap_or(false), || {
            format!("Min not monotone on {s} ⋖ {t}")
        });
        report.check(max_perm(s).weak_leq(&max_perm(t)).unwrap_or(false), || {
            format!("Max not monotone on {s} ⋖ {t}")
        });
    }
    report
}

/// For a cover `b ⋖ c` that drops an ideal node `T_j` (`j > 2`), a chain
/// `ι(b) ≤ w′ ⋖ (k,k+1)w′ ≤ ι(c)` with `w′ ∈ β⁻¹(b)`, `(k,k+1)w′ ∈ β⁻¹(c)`.
pub fn ideal_cover_witness(b: &BiLeveledTree, c: &BiLeveledTree) -> Option<(Permutation, Permutation)> {
    let k = b.nodes() + 1 - b.ideal_len();
    let (lo, hi) = (iota(b), iota(c));
    crate::projections::beta_fiber(b).into_iter().find_map(|w| {
        let w2 = w.swap_values(k);
        let ok = lo.weak_leq(&w).ok()?
            && w.weak_covers().contains(&w2)
            && beta(&w2) == *c
            && w2.weak_leq(&hi).ok()?;
        ok.then_some((w, w2))
    })
}

/// Möbius functions of `𝔖ₙ` and `ℳₙ` related through the fibers of `β`:
/// `µ_ℳ(x,y) = Σ_{β(a)=x, β(b)=y} µ_𝔖(a,b)` for every pair.
pub fn subgalois_verify(n: usize) -> Report {
    let mut report = Report::new(format!("subgalois n={n}"));
    let weak = weak_order(n);
    let mult = multiplihedron_order(n);
    let m = mult.len();
    let image: Vec<usize> = weak
        .elements()
        .iter()
        .map(|w| mult.index_of(&beta(w)).expect("β lands in ℳₙ"))
        .collect();
    let mut sums = vec![0i64; m * m];
    for a in 0..weak.len() {
        for &(b, mu) in weak.mobius_row(a) {
            sums[image[a] * m + image[b]] += mu;
        }
    }
    for x in 0..m {
        for y in 0..m {
            let lhs = mult.mobius(x, y);
            let rhs = sums[x * m + y];
            report.check(lhs == rhs, || {
                format!(
                    "µ({}, {}) = {lhs} but the fiber sum is {rhs}",
                    mult.element(x),
                    mult.element(y)
                )
            });
        }
    }
    report
}

/// The chain identity behind the Möbius relation: for `x < y` in `ℳₙ` and
/// each chain `D` from `x` to `y`, the preimage poset `P|_D` splits
/// monotonically into `K_i = β⁻¹(q_i) ∩ P|_D`, every union of blocks has a
/// least and a greatest element, and the chains meeting all blocks sum to `(−1)^ℓ(D)`.
pub fn monotone_partition_verify(n: usize) -> Report {
    let mut report = Report::new(format!("monotone-partition n={n}"));
    let weak = weak_order(n);
    let mult = multiplihedron_order(n);
    let image: Vec<usize> = weak
        .elements()
        .iter()
        .map(|w| mult.index_of(&beta(w)).unwrap())
        .collect();
    let mut fibers = vec![FixedBitSet::with_capacity(weak.len()); mult.len()];
    for (i, &b) in image.iter().enumerate() {
        fibers[b].insert(i);
    }
    for x in 0..mult.len() {
        for y in mult.up_set(x).ones() {
            for chain in chains_between(&mult, x, y) {
                let blocks = restricted_blocks(&weak, &fibers, &chain);
                let r = chain.len() - 1;
                let sum = weak.monotone_chain_sum(&blocks);
                let expected = if r % 2 == 0 { 1 } else { -1 };
                report.check(sum == expected, || {
                    format!("chain {chain:?} in ℳ{n}: signed chain count {sum}, expected {expected}")
                });
                for mask in 1u32..(1 << blocks.len()) {
                    let mut union = FixedBitSet::with_capacity(weak.len());
                    for (i, blk) in blocks.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            union.union_with(blk);
                        }
                    }
                    report.check(weak.bounds(&union).is_some(), || {
                        format!("block union {mask:b} over chain {chain:?} lacks a least or greatest element")
                    });
                }
            }
        }
    }
    report
}

fn chains_between<E: Clone + Eq + std::hash::Hash>(
    p: &FinitePoset<E>,
    x: usize,
    y: usize,
) -> Vec<Vec<usize>> {
    fn walk<E: Clone + Eq + std::hash::Hash>(
        p: &FinitePoset<E>,
        cur: &mut Vec<usize>,
        y: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let x = *cur.last().unwrap();
        if x == y {
            out.push(cur.clone());
            return;
        }
        for z in p.up_set(x).ones() {
            if z != x && p.leq(z, y) {
                cur.push(z);
                walk(p, cur, y, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(p, &mut vec![x], y, &mut out);
    out
}

// K_i: elements of β⁻¹(q_i) lying on some chain a₀ < ⋯ < a_r with β(a_j) = q_j.
fn restricted_blocks(
    weak: &FinitePoset<Permutation>,
    fibers: &[FixedBitSet],
    chain: &[usize],
) -> Vec<FixedBitSet> {
    let r = chain.len();
    let reach = |order: &mut dyn Iterator<Item = usize>, forward: bool| -> Vec<FixedBitSet> {
        let mut sets: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(weak.len()); r];
        let mut prev: Option<usize> = None;
        for i in order {
            let mut s = fibers[chain[i]].clone();
            if let Some(j) = prev {
                let mut near = FixedBitSet::with_capacity(weak.len());
                for z in sets[j].ones() {
                    near.union_with(if forward { weak.up_set(z) } else { weak.down_set(z) });
                }
                s.intersect_with(&near);
            }
            sets[i] = s;
            prev = Some(i);
        }
        sets
    };
    let from_below = reach(&mut (0..r), true);
    let from_above = reach(&mut (0..r).rev(), false);
    from_below
        .into_iter()
        .zip(from_above)
        .map(|(mut a, b)| {
            a.intersect_with(&b);
            a
        })
        .collect()
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
    fn sizes_and_edges() {
        assert_eq!(weak_order(4).len(), 24);
        assert_eq!(tamari_order(4).len(), 14);
        assert_eq!(multiplihedron_order(4).len(), 21);
        // permutahedron: n!·(n−1)/2 edges; associahedron 𝒴₄: 21 edges
        assert_eq!(weak_order(4).cover_pairs().len(), 36);
        assert_eq!(tamari_order(4).cover_pairs().len(), 21);
    }

    #[test]
    fn weak_order_two_ways() {
        for n in 0..=5 {
            let poset = weak_order(n);
            for (i, u) in poset.elements().iter().enumerate() {
                for (j, v) in poset.elements().iter().enumerate() {
                    assert_eq!(poset.leq(i, j), u.weak_leq(v).unwrap());
                }
            }
        }
    }

    #[test]
    fn tamari_chain_and_extremes() {
        let chain = ["(((..).).)", "((.(..)).)", "(.((..).))", "(.(.(..)))"];
        for w in chain.windows(2) {
            assert!(tamari_covers(&t(w[0])).contains(&t(w[1])));
        }
        for s in PlanarTree::enumerate(5) {
            assert!(tamari_leq(&s, &s).unwrap());
            assert!(tamari_leq(&PlanarTree::left_comb(5), &s).unwrap());
            assert!(tamari_leq(&s, &PlanarTree::right_comb(5)).unwrap());
        }
        assert!(tamari_leq(&t("(..)"), &t(".")).is_err());
    }

    #[test]
    fn m_order_is_reflexive_and_componentwise() {
        for b in BiLeveledTree::enumerate(4) {
            assert!(m_leq(&b, &b).unwrap());
            for c in m_covers(&b).unwrap() {
                assert!(m_leq(&b, &c).unwrap() && !m_leq(&c, &b).unwrap());
            }
        }
    }

    #[test]
    fn mobius_small_values() {
        assert_eq!(mobius(Family::S, "12", "21").unwrap(), -1);
        assert_eq!(mobius(Family::S, "123", "123").unwrap(), 1);
        assert_eq!(mobius(Family::S, "123", "321").unwrap(), 1);
        assert_eq!(mobius(Family::S, "1234", "4321").unwrap(), -1);
        assert_eq!(mobius(Family::S, "21", "12").unwrap(), 0);
        assert!(mobius(Family::S, "12", "321").is_err());
    }

    #[test]
    fn hall_formula_agrees_on_small_families() {
        fn check<E: Clone + Eq + std::hash::Hash>(p: &FinitePoset<E>) {
            for i in 0..p.len() {
                for j in p.up_set(i).ones() {
                    assert_eq!(p.hall_mobius(i, j), p.mobius(i, j));
                }
            }
        }
        check(&weak_order(4));
        check(&tamari_order(4));
        check(&multiplihedron_order(4));
    }

    #[test]
    fn node_poset_of_small_trees() {
        let np = node_poset(&t("((..)(..))"));
        assert_eq!(np.len(), 3);
        assert_eq!(np.upper_covers(0), &[1]);
        assert_eq!(np.upper_covers(2), &[1]);
        let extensions = Permutation::enumerate(3)
            .into_iter()
            .filter(|w| np.cover_pairs().iter().all(|&(a, b)| w.at(a + 1) < w.at(b + 1)))
            .count();
        assert_eq!(extensions, 2);
    }

    #[test]
    fn chain_sum_on_weak_intervals() {
        let weak = weak_order(4);
        for i in 0..weak.len() {
            for j in weak.up_set(i).ones() {
                assert_eq!(weak.chain_sum(&weak.interval(i, j)), 1);
            }
        }
    }

    #[test]
    fn covers_by_construction() {
        for n in 0..=5 {
            let r = covers_verify(n);
            assert!(r.is_ok(), "{r}");
        }
    }

    #[test]
    fn retract_and_subgalois() {
        for n in 0..=5 {
            let r = interval_retract_verify(n);
            assert!(r.is_ok(), "{r}");
            let r = subgalois_verify(n);
            assert!(r.is_ok(), "{r}");
        }
        for n in 0..=4 {
            let r = monotone_partition_verify(n);
            assert!(r.is_ok(), "{r}");
        }
    }

    #[test]
    fn ideal_cover_chain() {
        let b = beta(&p("4357126"));
        let c = beta(&p("5467123"));
        assert_eq!(iota(&b), p("4357126"));
        assert_eq!(iota(&c), p("5467123"));
        assert_eq!(classify_cover(&b, &c), vec![CoverType::Ideal]);
        let (w, w2) = ideal_cover_witness(&b, &c).unwrap();
        assert_eq!((w, w2), (p("4367125"), p("5367124")));
        for n in 0..=5 {
            let mult = multiplihedron_order(n);
            for (x, y) in mult.cover_pairs() {
                let (b, c) = (mult.element(x), mult.element(y));
                if classify_cover(b, c) == [CoverType::Ideal] {
                    assert!(ideal_cover_witness(b, c).is_some(), "{b} ⋖ {c}");
                }
            }
        }
    }

    #[test]
    fn fiber_extremes_are_not_monotone() {
        let (b, c) = (beta(&p("2143")), beta(&p("1243")));
        assert!(m_leq(&c, &b).unwrap() && b != c);
        let (hi_b, hi_c) = (beta_fiber_bounds(&b).1, beta_fiber_bounds(&c).1);
        assert_eq!((&hi_b, &hi_c), (&p("2143"), &p("1342")));
        assert!(!hi_b.weak_leq(&hi_c).unwrap() && !hi_c.weak_leq(&hi_b).unwrap());

        let (b, c) = (beta(&p("3241")), beta(&p("2341")));
        assert!(m_leq(&c, &b).unwrap() && b != c);
        let (lo_b, lo_c) = (beta_fiber_bounds(&b).0, beta_fiber_bounds(&c).0);
        assert_eq!((&lo_b, &lo_c), (&p("3142"), &p("2341")));
        assert!(!lo_b.weak_leq(&lo_c).unwrap() && !lo_c.weak_leq(&lo_b).unwrap());
    }
}
