//! Products, coproducts and coactions on 𝔖Sym, 𝒴Sym and ℳSym.
//!
//! Everything is computed on basis elements of the fundamental basis and
//! extended linearly. Inputs in the monomial basis are converted to `F`,
//! processed, and converted back, so every operation accepts either flavor
//! and returns the flavor it was given. The closed forms for the monomial
//! basis live alongside as independent computations.

use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bileveled::BiLeveledTree;
use crate::error::{Error, Result};
use crate::linear::{Family, Flavor, Key, LinComb};
use crate::orders::{multiplihedron_order, tamari_order, weak_order};
use crate::perm::Permutation;
use crate::poset::FinitePoset;
use crate::projections::{beta, iota, max_perm, phi, tau};
use crate::trees::PlanarTree;

/// A graded family of basis elements with an F-basis product.
pub trait Graded: Key + Hash + Eq + 'static {
    const FAMILY: Family;

    /// The poset on the degree-`n` elements whose Möbius function defines
    /// the monomial basis.
    fn order(n: usize) -> Arc<FinitePoset<Self>>;

    /// The degree-zero element.
    fn unit() -> Self;

    /// Every element of degree `n`, in canonical order.
    fn all(n: usize) -> Vec<Self>;

    /// `F_self · F_other`.
    fn product_f(&self, other: &Self) -> LinComb<Self>;
}

/// Families that are also coalgebras.
pub trait Coalgebra: Graded {
    /// `Δ F_self`.
    fn coproduct_f(&self) -> LinComb<(Self, Self)>;

    /// Every `self = u \ v`, trivial ones included.
    fn backslash_splits(&self) -> Vec<(Self, Self)>;
}

impl Graded for Permutation {
    const FAMILY: Family = Family::S;

    fn order(n: usize) -> Arc<FinitePoset<Self>> {
        weak_order(n)
    }

    fn unit() -> Self {
        Permutation::empty()
    }

    fn all(n: usize) -> Vec<Self> {
        Permutation::enumerate(n)
    }

    fn product_f(&self, other: &Self) -> LinComb<Self> {
        let terms = self
            .splittings(other.len())
            .into_iter()
            .map(|forest| forest.graft(other).expect("splitting has the base's arity"));
        LinComb::from_keys(Flavor::F, terms)
    }
}

impl Coalgebra for Permutation {
    fn coproduct_f(&self) -> LinComb<(Self, Self)> {
        LinComb::from_keys(Flavor::F, (0..=self.len()).map(|k| self.split_at(k)))
    }

    fn backslash_splits(&self) -> Vec<(Self, Self)> {
        self.right_decompositions()
    }
}

impl Graded for PlanarTree {
    const FAMILY: Family = Family::Y;

    fn order(n: usize) -> Arc<FinitePoset<Self>> {
        tamari_order(n)
    }

    fn unit() -> Self {
        PlanarTree::leaf()
    }

    fn all(n: usize) -> Vec<Self> {
        PlanarTree::enumerate(n)
    }

    fn product_f(&self, other: &Self) -> LinComb<Self> {
        let terms = self
            .splittings(other.nodes())
            .into_iter()
            .map(|forest| PlanarTree::graft(&forest, other).expect("splitting has the base's arity"));
        LinComb::from_keys(Flavor::F, terms)
    }
}

impl Coalgebra for PlanarTree {
    fn coproduct_f(&self) -> LinComb<(Self, Self)> {
        LinComb::from_keys(Flavor::F, (0..=self.nodes()).map(|k| self.split_at(k)))
    }

    fn backslash_splits(&self) -> Vec<(Self, Self)> {
        self.right_decompositions()
    }
}

impl Graded for BiLeveledTree {
    const FAMILY: Family = Family::M;

    fn order(n: usize) -> Arc<FinitePoset<Self>> {
        multiplihedron_order(n)
    }

    fn unit() -> Self {
        BiLeveledTree::empty()
    }

    fn all(n: usize) -> Vec<Self> {
        BiLeveledTree::enumerate(n)
    }

    fn product_f(&self, other: &Self) -> LinComb<Self> {
        let terms = self
            .splittings(other.nodes())
            .into_iter()
            .map(|forest| forest.graft(other).expect("splitting has the base's arity"));
        LinComb::from_keys(Flavor::F, terms)
    }
}

/// Keys that can move between the fundamental and monomial bases: single
/// elements and tensors of them.
pub trait Basis: Key {
    /// `F_self` written in the monomial basis.
    fn f_to_m(&self) -> LinComb<Self>;

    /// `M_self` written in the fundamental basis.
    fn m_to_f(&self) -> LinComb<Self>;
}

macro_rules! element_basis {
    ($ty:ty) => {
        impl Basis for $ty {
            fn f_to_m(&self) -> LinComb<Self> {
                let order = <$ty as Graded>::order(self.degree());
                let i = order.index_of(self).expect("element of its own degree");
                LinComb::from_keys(
                    Flavor::M,
                    order.up_set(i).ones().map(|j| order.element(j).clone()),
                )
            }

            fn m_to_f(&self) -> LinComb<Self> {
                let order = <$ty as Graded>::order(self.degree());
                let i = order.index_of(self).expect("element of its own degree");
                LinComb::from_terms(
                    Flavor::F,
                    order
                        .mobius_row(i)
                        .iter()
                        .map(|&(j, mu)| (order.element(j).clone(), BigInt::from(mu))),
                )
            }
        }
    };
}

element_basis!(Permutation);
element_basis!(PlanarTree);
element_basis!(BiLeveledTree);

impl<A: Basis, B: Basis> Basis for (A, B) {
    fn f_to_m(&self) -> LinComb<Self> {
        self.0.f_to_m().tensor(&self.1.f_to_m())
    }

    fn m_to_f(&self) -> LinComb<Self> {
        self.0.m_to_f().tensor(&self.1.m_to_f())
    }
}

impl<A: Basis, B: Basis, C: Basis> Basis for (A, B, C) {
    fn f_to_m(&self) -> LinComb<Self> {
        let (a, b, c) = self;
        a.f_to_m()
            .tensor(&b.f_to_m())
            .tensor(&c.f_to_m())
            .map_keys(|((x, y), z)| (x.clone(), y.clone(), z.clone()))
    }

    fn m_to_f(&self) -> LinComb<Self> {
        let (a, b, c) = self;
        a.m_to_f()
            .tensor(&b.m_to_f())
            .tensor(&c.m_to_f())
            .map_keys(|((x, y), z)| (x.clone(), y.clone(), z.clone()))
    }
}

/// Rewrites an F-basis combination in the M basis, using `F_x = Σ_{x≤y} M_y`.
pub fn to_m<K: Basis>(a: &LinComb<K>) -> Result<LinComb<K>> {
    a.check_flavor(Flavor::F)?;
    Ok(a.linear_map(Flavor::M, K::f_to_m))
}

/// Rewrites an M-basis combination in the F basis, using `M_x = Σ_{x≤y} µ(x,y) F_y`.
pub fn to_f<K: Basis>(a: &LinComb<K>) -> Result<LinComb<K>> {
    a.check_flavor(Flavor::M)?;
    Ok(a.linear_map(Flavor::F, K::m_to_f))
}

/// Applies an F-basis linear map to `a` in whichever flavor `a` is written.
fn through_f<K: Basis, L: Basis>(a: &LinComb<K>, f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
    match a.flavor() {
        Flavor::F => a.linear_map(Flavor::F, f),
        Flavor::M => {
            let image = a.linear_map(Flavor::F, K::m_to_f).linear_map(Flavor::F, f);
            image.linear_map(Flavor::M, L::f_to_m)
        }
    }
}

fn basis_f<K: Key>(key: K) -> LinComb<K> {
    LinComb::basis(Flavor::F, key)
}

/// The product, in the flavor shared by both operands.
pub fn mul<E: Graded + Basis>(a: &LinComb<E>, b: &LinComb<E>) -> Result<LinComb<E>> {
    if a.flavor() != b.flavor() {
        return Err(Error::FlavorMismatch {
            expected: a.flavor(),
            found: b.flavor(),
        });
    }
    Ok(match a.flavor() {
        Flavor::F => a.bilinear(b, E::product_f),
        Flavor::M => {
            let p = to_f(a)?.bilinear(&to_f(b)?, E::product_f);
            to_m(&p)?
        }
    })
}

/// The unit `1` in the given flavor (`F_∅ = M_∅`).
pub fn one<E: Graded>(flavor: Flavor) -> LinComb<E> {
    LinComb::basis(flavor, E::unit())
}

/// The counit: the coefficient of the degree-zero element.
pub fn counit<K: Key>(a: &LinComb<K>) -> BigInt {
    a.iter()
        .filter(|(k, _)| k.degree() == 0)
        .map(|(_, c)| c.clone())
        .fold(BigInt::zero(), |s, c| s + c)
}

/// The coproduct of 𝔖Sym or 𝒴Sym.
pub fn comul<E: Coalgebra + Basis>(a: &LinComb<E>) -> LinComb<(E, E)> {
    through_f(a, E::coproduct_f)
}

/// `Δ M_x = Σ_{x=u\v} M_u ⊗ M_v`.
pub fn comul_m_closed<E: Coalgebra>(x: &E) -> LinComb<(E, E)> {
    LinComb::from_keys(Flavor::M, x.backslash_splits())
}

/// `ρ(F_b) = Σ F_{b₀} ⊗ F_{φ(b₁)}` over splittings of `b` at one leaf.
pub fn rho_basis(b: &BiLeveledTree) -> LinComb<(BiLeveledTree, PlanarTree)> {
    let terms = (0..=b.nodes()).map(|k| {
        let split = b.split_multi(&[k]);
        (split.first(), split.parts[1].0.clone())
    });
    LinComb::from_keys(Flavor::F, terms)
}

/// The right 𝒴Sym-coaction on ℳSym.
pub fn rho(a: &LinComb<BiLeveledTree>) -> LinComb<(BiLeveledTree, PlanarTree)> {
    through_f(a, rho_basis)
}

/// Whether `b = β(Max t)` for its underlying tree `t`.
pub fn is_beta_max(b: &BiLeveledTree) -> bool {
    beta(&max_perm(b.tree())) == *b
}

/// `ρ(M_b) = Σ_{b=c\s} M_c ⊗ M_s`, plus `1 ⊗ M_t` when `b = β(Max t)`.
pub fn rho_m_closed(b: &BiLeveledTree) -> LinComb<(BiLeveledTree, PlanarTree)> {
    let mut out = LinComb::from_keys(Flavor::M, b.right_decompositions());
    if is_beta_max(b) {
        out.add_term((BiLeveledTree::empty(), b.tree().clone()), BigInt::from(1));
    }
    out
}

/// The right 𝔖Sym-comodule map `F_b ↦ Σ F_{β(w₀)} ⊗ F_{w₁}` over splittings
/// of `ι(b)`.
pub fn ssym_coaction(a: &LinComb<BiLeveledTree>) -> LinComb<(BiLeveledTree, Permutation)> {
    through_f(a, |b| {
        let w = iota(b);
        LinComb::from_keys(
            Flavor::F,
            (0..=w.len()).map(|k| {
                let (w0, w1) = w.split_at(k);
                (beta(&w0), w1)
            }),
        )
    })
}

/// The Hopf algebra map 𝔖Sym → 𝒴Sym.
pub fn lin_tau(a: &LinComb<Permutation>) -> LinComb<PlanarTree> {
    through_f(a, |w| basis_f(tau(w)))
}

/// The algebra map 𝔖Sym → ℳSym.
pub fn lin_beta(a: &LinComb<Permutation>) -> LinComb<BiLeveledTree> {
    through_f(a, |w| basis_f(beta(w)))
}

/// ℳSym → 𝒴Sym, forgetting the ideal.
pub fn lin_phi(a: &LinComb<BiLeveledTree>) -> LinComb<PlanarTree> {
    through_f(a, |b| basis_f(phi(b)))
}

/// `τ(M_w) = M_{τ(w)}` if `w = Max τ(w)`, and `0` otherwise.
pub fn tau_m_closed(w: &Permutation) -> LinComb<PlanarTree> {
    let t = tau(w);
    if max_perm(&t) == *w {
        LinComb::basis(Flavor::M, t)
    } else {
        LinComb::zero(Flavor::M)
    }
}

/// The ℳSym product computed as `β(F_w · F_v)` for chosen preimages.
pub fn mul_by_pushforward(w: &Permutation, v: &Permutation) -> LinComb<BiLeveledTree> {
    lin_beta(&w.product_f(v))
}

/// `Σ_{β(w)=b} M_w`, an element of 𝔖Sym whose image under β is `M_b`.
pub fn beta_fiber_m_sum(b: &BiLeveledTree) -> LinComb<Permutation> {
    LinComb::from_keys(Flavor::M, crate::projections::beta_fiber(b))
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

    fn bp(s: &str) -> BiLeveledTree {
        beta(&p(s))
    }

    fn binom(n: usize, k: usize) -> BigInt {
        (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn grafting_display_from_splitting() {
        let w = p("3275164");
        let forest = w.split_multi(&[2, 2, 5, 6]);
        assert_eq!(forest.graft(&p("1432")).unwrap(), p("3,2,8,11,7,5,1,10,6,9,4"));
    }

    #[test]
    fn msym_product_display() {
        let lhs = mul(&basis_f(bp("12")), &basis_f(bp("21"))).unwrap();
        let words = ["1243", "1423", "1432", "4123", "4231", "4312"];
        let rhs = LinComb::from_keys(Flavor::F, words.iter().map(|w| bp(w)));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 6);
    }

    #[test]
    fn units_and_term_counts() {
        for n in 0..=3 {
            for m in 0..=3 {
                for w in Permutation::enumerate(n) {
                    for v in Permutation::enumerate(m) {
                        let prod = w.product_f(&v);
                        assert_eq!(prod.coefficient_sum(), binom(n + m, m));
                        let b = beta(&w);
                        let c = beta(&v);
                        assert_eq!(b.product_f(&c).coefficient_sum(), binom(n + m, m));
                    }
                }
            }
        }
        let w = basis_f(p("2413"));
        assert_eq!(mul(&one(Flavor::F), &w).unwrap(), w);
        assert_eq!(mul(&w, &one(Flavor::F)).unwrap(), w);
    }

    #[test]
    fn msym_product_matches_pushforward_of_every_preimage() {
        for n in 0..=3 {
            for m in 0..=(5 - n).min(3) {
                for w in Permutation::enumerate(n) {
                    for v in Permutation::enumerate(m) {
                        let direct = beta(&w).product_f(&beta(&v));
                        assert_eq!(direct, mul_by_pushforward(&w, &v), "{w} · {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn coproduct_of_small_elements() {
        let d = comul(&basis_f(p("1")));
        assert_eq!(d.to_string(), "1 ⊗ F[1] + F[1] ⊗ 1");
        let d0 = comul(&one::<PlanarTree>(Flavor::F));
        assert_eq!(d0.to_string(), "1 ⊗ 1");
        assert_eq!(comul(&basis_f(p("3142"))).len(), 5);
    }

    #[test]
    fn coaction_example() {
        let r = rho(&basis_f(bp("2431")));
        assert_eq!(r.len(), 5);
        assert_eq!(r.coeff(&(bp("2431"), t("."))), BigInt::from(1));
        assert_eq!(r.coeff(&(bp("12"), t("(.(..))"))), BigInt::from(1));
        assert_eq!(
            r.coeff(&(BiLeveledTree::empty(), tau(&p("3421")))),
            BigInt::from(1)
        );
        assert_eq!(rho(&one(Flavor::F)).to_string(), "1 ⊗ 1");
    }

    #[test]
    fn coaction_in_monomial_basis_examples() {
        let one_term = rho_m_closed(&bp("1432"));
        assert_eq!(one_term.len(), 1);
        let two = rho_m_closed(&bp("2431"));
        assert_eq!(two.len(), 2);
        assert_eq!(two.coeff(&(bp("132"), t("(..)"))), BigInt::from(1));
        let four = rho_m_closed(&bp("3421"));
        assert_eq!(four.len(), 4);
        assert_eq!(four.coeff(&(bp("12"), tau(&p("21")))), BigInt::from(1));
        assert_eq!(
            four.coeff(&(BiLeveledTree::empty(), tau(&p("3421")))),
            BigInt::from(1)
        );
        for w in ["1432", "2431", "3421"] {
            let b = bp(w);
            assert_eq!(
                rho(&LinComb::basis(Flavor::M, b.clone())),
                rho_m_closed(&b),
                "{w}"
            );
        }
    }

    #[test]
    fn basis_change_round_trip() {
        for w in Permutation::enumerate(4) {
            let f = basis_f(w.clone());
            assert_eq!(to_f(&to_m(&f).unwrap()).unwrap(), f);
        }
        let top = basis_f(Permutation::reversal(4));
        assert_eq!(to_m(&top).unwrap(), top.clone().with_flavor(Flavor::M));
        assert!(to_m(&to_m(&top).unwrap()).is_err());
    }

    #[test]
    fn tau_of_monomials() {
        for w in Permutation::enumerate(4) {
            let lhs = lin_tau(&LinComb::basis(Flavor::M, w.clone()));
            assert_eq!(lhs, tau_m_closed(&w), "{w}");
        }
    }

    #[test]
    fn monomial_coproduct_closed_form() {
        for w in Permutation::enumerate(4) {
            assert_eq!(comul(&LinComb::basis(Flavor::M, w.clone())), comul_m_closed(&w));
            let primitive = comul_m_closed(&w).len() == 2;
            assert_eq!(primitive, w.is_indecomposable(), "{w}");
        }
        for s in PlanarTree::enumerate(4) {
            assert_eq!(comul(&LinComb::basis(Flavor::M, s.clone())), comul_m_closed(&s));
        }
    }

    #[test]
    fn beta_of_fiber_sums() {
        for b in BiLeveledTree::enumerate(4) {
            assert_eq!(
                lin_beta(&beta_fiber_m_sum(&b)),
                LinComb::basis(Flavor::M, b.clone())
            );
        }
    }

    #[test]
    fn mixed_flavors_are_rejected() {
        let a = basis_f(p("12"));
        let b = LinComb::basis(Flavor::M, p("21"));
        assert!(mul(&a, &b).is_err());
    }

    #[test]
    fn ssym_coaction_first_legs_come_from_sections() {
        for n in 0..=5 {
            for b in BiLeveledTree::enumerate(n) {
                let w = iota(&b);
                for k in 0..=n {
                    let (w0, _) = w.split_at(k);
                    assert_eq!(iota(&beta(&w0)), w0, "{b} at {k}");
                }
            }
        }
        let unit = ssym_coaction(&one(Flavor::F));
        assert_eq!(unit.to_string(), "1 ⊗ 1");
    }
}
