//! Randomized invariants over small degrees.

use multiplihedra::hopf::{self, comul, counit, rho, to_f, to_m, Graded};
use multiplihedra::hopf_modules::{bbslash, bbslash_decompose, in_b_prime, in_s, kappa, kappa_inverse};
use multiplihedra::orders::{m_leq, multiplihedron_order, tamari_leq, weak_order};
use multiplihedra::projections::{beta, iota, max_perm, min_perm, phi, tau, tau_fiber};
use multiplihedra::series::TruncatedSeries;
use multiplihedra::{BiLeveledTree, Element, Flavor, LinComb, Permutation, PlanarTree};
use num_bigint::BigInt;
use proptest::prelude::*;

fn perm(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max)
        .prop_flat_map(|n| Just((1..=n as u8).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).expect("a shuffle of 1..n"))
}

fn tree(max: usize) -> impl Strategy<Value = PlanarTree> {
    perm(max).prop_map(|w| tau(&w))
}

fn bileveled(max: usize) -> impl Strategy<Value = BiLeveledTree> {
    perm(max).prop_map(|w| beta(&w))
}

fn f<K: multiplihedra::linear::Key>(k: &K) -> LinComb<K> {
    LinComb::basis(Flavor::F, k.clone())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encodings_round_trip(w in perm(9), t in tree(7), b in bileveled(7)) {
        prop_assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w.clone());
        prop_assert_eq!(t.to_string().parse::<PlanarTree>().unwrap(), t.clone());
        prop_assert_eq!(b.to_string().parse::<BiLeveledTree>().unwrap(), b.clone());
        for e in [Element::S(w), Element::Y(t), Element::M(b)] {
            prop_assert_eq!(e.to_string().parse::<Element>().unwrap(), e);
        }
    }

    #[test]
    fn vee_and_backslash(l in tree(4), r in tree(4)) {
        let v = PlanarTree::vee(l.clone(), r.clone());
        prop_assert_eq!(v.nodes(), l.nodes() + r.nodes() + 1);
        prop_assert_eq!(l.backslash(&PlanarTree::leaf()), l);
    }

    #[test]
    fn splitting_counts(w in perm(5), m in 0usize..4) {
        prop_assert_eq!(w.splittings(m).len(), binomial(w.len() + m, m));
    }

    #[test]
    fn projections_compose(w in perm(7)) {
        let b = beta(&w);
        prop_assert_eq!(phi(&b), tau(&w));
        prop_assert_eq!(beta(&iota(&b)), b);
        let t = tau(&w);
        prop_assert_eq!(tau(&min_perm(&t)), t.clone());
        prop_assert_eq!(tau(&max_perm(&t)), t.clone());
        prop_assert!(min_perm(&t).weak_leq(&w).unwrap() && w.weak_leq(&max_perm(&t)).unwrap());
    }

    #[test]
    fn projections_are_monotone_on_covers(w in perm(6)) {
        for v in w.weak_covers() {
            prop_assert!(tamari_leq(&tau(&w), &tau(&v)).unwrap());
            prop_assert!(m_leq(&beta(&w), &beta(&v)).unwrap());
        }
    }

    #[test]
    fn iota_is_monotone_on_covers(b in bileveled(5)) {
        let order = multiplihedron_order(b.nodes());
        let i = order.index_of(&b).unwrap();
        for &j in order.upper_covers(i) {
            prop_assert!(iota(&b).weak_leq(&iota(order.element(j))).unwrap());
        }
    }

    #[test]
    fn tau_fibers_are_exact(t in tree(5)) {
        for w in tau_fiber(&t) {
            prop_assert_eq!(tau(&w), t.clone());
        }
    }

    #[test]
    fn weak_leq_matches_closure(x in perm(5), seed in any::<u64>()) {
        let n = x.len();
        let order = weak_order(n);
        let y = order.element(seed as usize % order.len()).clone();
        let (i, j) = (order.index_of(&x).unwrap(), order.index_of(&y).unwrap());
        prop_assert_eq!(order.leq(i, j), x.weak_leq(&y).unwrap());
        prop_assert_eq!(order.mobius(i, j), order.hall_mobius(i, j));
    }

    #[test]
    fn products_are_associative(a in perm(2), b in perm(2), c in perm(2)) {
        let assoc = |x: &Permutation, y: &Permutation, z: &Permutation| {
            hopf::mul(&x.product_f(y), &f(z)).unwrap() == hopf::mul(&f(x), &y.product_f(z)).unwrap()
        };
        prop_assert!(assoc(&a, &b, &c));
        let (ta, tb, tc) = (tau(&a), tau(&b), tau(&c));
        prop_assert_eq!(
            hopf::mul(&ta.product_f(&tb), &f(&tc)).unwrap(),
            hopf::mul(&f(&ta), &tb.product_f(&tc)).unwrap()
        );
        let (ba, bb, bc) = (beta(&a), beta(&b), beta(&c));
        prop_assert_eq!(
            hopf::mul(&ba.product_f(&bb), &f(&bc)).unwrap(),
            hopf::mul(&f(&ba), &bb.product_f(&bc)).unwrap()
        );
    }

    #[test]
    fn term_counts(w in perm(5), v in perm(3)) {
        prop_assert_eq!(comul(&f(&w)).len(), w.len() + 1);
        prop_assert_eq!(rho(&f(&beta(&w))).len(), w.len() + 1);
        let sum = w.product_f(&v).coefficient_sum();
        prop_assert_eq!(sum, BigInt::from(binomial(w.len() + v.len(), v.len())));
    }

    #[test]
    fn bialgebra_law(w in perm(3), v in perm(3)) {
        let mul = |a: &Permutation, b: &Permutation| a.product_f(b);
        let left = comul(&w.product_f(&v));
        let right = comul(&f(&w)).tensor_mul(&comul(&f(&v)), mul, mul);
        prop_assert_eq!(left, right);
        prop_assert_eq!(counit(&w.product_f(&v)), counit(&f(&w)) * counit(&f(&v)));
    }

    #[test]
    fn basis_change_is_invertible(w in perm(5), b in bileveled(5), t in tree(5)) {
        prop_assert_eq!(to_f(&to_m(&f(&w)).unwrap()).unwrap(), f(&w));
        prop_assert_eq!(to_f(&to_m(&f(&b)).unwrap()).unwrap(), f(&b));
        prop_assert_eq!(to_m(&to_f(&LinComb::basis(Flavor::M, t.clone())).unwrap()).unwrap(),
                        LinComb::basis(Flavor::M, t));
    }

    #[test]
    fn bbslash_decomposition_is_inverse(c in bileveled(7)) {
        let (b, t) = bbslash_decompose(&c);
        prop_assert!(b.is_empty() || in_b_prime(&b));
        prop_assert_eq!(bbslash(&b, &t).unwrap(), c);
    }

    #[test]
    fn kappa_round_trip(u in perm(7)) {
        if in_s(&u) {
            let (b, v) = kappa_inverse(&u).unwrap();
            prop_assert_eq!(kappa(&b, &v).unwrap(), u);
        } else {
            prop_assert!(kappa_inverse(&u).is_err());
        }
    }

    #[test]
    fn series_division_inverts_multiplication(
        a in proptest::collection::vec(-5i64..5, 8),
        mut b in proptest::collection::vec(-5i64..5, 8),
    ) {
        b[0] = 1;
        let (a, b) = (TruncatedSeries::from_i64(&a), TruncatedSeries::from_i64(&b));
        let q = a.div(&b).unwrap();
        prop_assert_eq!(&q * &b, a);
    }
}
