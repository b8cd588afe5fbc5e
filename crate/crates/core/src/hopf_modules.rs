//! The two 𝒴Sym–Hopf module structures: the positive part ℳSym₊ with
//! restricted splittings, and ℳSym itself with the `⫶` decomposition.
//! Also the coinvariant bases and the bijection `κ : ℬ′ × 𝒮′ → 𝒮`.

use num_bigint::BigInt;
use num_traits::One;

use crate::bileveled::BiLeveledTree;
use crate::error::{Error, Result};
use crate::hopf::{self, is_beta_max, to_f, to_m};
use crate::linalg::{primitive_integer_vector, Matrix};
use crate::linear::{Flavor, LinComb};
use crate::perm::Permutation;
use crate::projections::{beta, iota, max_perm};
use crate::trees::PlanarTree;

type MTerm = LinComb<BiLeveledTree>;
type MYTensor = LinComb<(BiLeveledTree, PlanarTree)>;

/// `F_b · F_t = Σ F_{(b₀,…,b_m)/t}` over restricted splittings of `b`.
pub fn plus_action(b: &BiLeveledTree, t: &PlanarTree) -> Result<MTerm> {
    let mut out = LinComb::zero(Flavor::F);
    for forest in b.restricted_splittings(t.nodes())? {
        out.add_term(forest.graft_plus(t)?, BigInt::one());
    }
    Ok(out)
}

/// `ρ₊(F_b) = Σ F_{b₀} ⊗ F_{φ(b₁)}` over restricted splittings at one leaf.
pub fn plus_coaction(b: &BiLeveledTree) -> Result<MYTensor> {
    let mut out = LinComb::zero(Flavor::F);
    for split in b.restricted_splittings(1)? {
        out.add_term((split.first(), split.parts[1].0.clone()), BigInt::one());
    }
    Ok(out)
}

/// `ρ₊(M_b) = Σ_{b=c\s} M_c ⊗ M_s`.
pub fn plus_coaction_m_closed(b: &BiLeveledTree) -> Result<MYTensor> {
    if b.is_empty() {
        return Err(Error::Empty);
    }
    Ok(LinComb::from_keys(Flavor::M, b.right_decompositions()))
}

fn reject_empty(a: &MTerm) -> Result<()> {
    if a.keys().any(BiLeveledTree::is_empty) {
        return Err(Error::Empty);
    }
    Ok(())
}

/// The right action of 𝒴Sym on ℳSym₊, extended linearly. Both operands
/// must share a flavor.
pub fn plus_mul(a: &MTerm, h: &LinComb<PlanarTree>) -> Result<MTerm> {
    reject_empty(a)?;
    if a.flavor() != h.flavor() {
        return Err(Error::FlavorMismatch {
            expected: a.flavor(),
            found: h.flavor(),
        });
    }
    match a.flavor() {
        Flavor::F => {
            let mut out = LinComb::zero(Flavor::F);
            for (b, x) in a.iter() {
                for (t, y) in h.iter() {
                    out += &plus_action(b, t)?.scale(&(x * y));
                }
            }
            Ok(out)
        }
        Flavor::M => to_m(&plus_mul(&to_f(a)?, &to_f(h)?)?),
    }
}

/// `ρ₊`, extended linearly, in the flavor of the input.
pub fn plus_rho(a: &MTerm) -> Result<MYTensor> {
    reject_empty(a)?;
    match a.flavor() {
        Flavor::F => {
            let mut out = LinComb::zero(Flavor::F);
            for (b, x) in a.iter() {
                out += &plus_coaction(b)?.scale(x);
            }
            Ok(out)
        }
        Flavor::M => to_m(&plus_rho(&to_f(a)?)?),
    }
}

/// `b ∈ ℬ`: the ideal contains the rightmost node.
pub fn in_b(b: &BiLeveledTree) -> bool {
    b.is_indecomposable()
}

/// `b ∈ ℬ′`: the empty tree, or an element of `ℬ` not of the form `β(Max t)`.
pub fn in_b_prime(b: &BiLeveledTree) -> bool {
    b.is_empty() || (b.is_indecomposable() && !is_beta_max(b))
}

/// `ℬₙ` in canonical order.
pub fn b_set(n: usize) -> Vec<BiLeveledTree> {
    BiLeveledTree::enumerate(n).into_iter().filter(in_b).collect()
}

/// `ℬ′ₙ` in canonical order.
pub fn b_prime_set(n: usize) -> Vec<BiLeveledTree> {
    BiLeveledTree::enumerate(n)
        .into_iter()
        .filter(in_b_prime)
        .collect()
}

/// `b ⫶ t`: `β(Max t)` for empty `b`, otherwise `b \ t`.
pub fn bbslash(b: &BiLeveledTree, t: &PlanarTree) -> Result<BiLeveledTree> {
    if !in_b_prime(b) {
        return Err(Error::NotMember(format!("{b} is not in B'")));
    }
    if b.is_empty() {
        Ok(beta(&max_perm(t)))
    } else {
        b.backslash(t)
    }
}

/// The unique `c = b ⫶ t` with `b ∈ ℬ′`.
pub fn bbslash_decompose(c: &BiLeveledTree) -> (BiLeveledTree, PlanarTree) {
    if is_beta_max(c) {
        return (BiLeveledTree::empty(), c.tree().clone());
    }
    c.indecomposable_split()
        .expect("a nonempty tree has an indecomposable split")
}

/// The index multiset of `M_t · M_s` in 𝒴Sym.
pub fn y_m_product(t: &PlanarTree, s: &PlanarTree) -> LinComb<PlanarTree> {
    hopf::mul(
        &LinComb::basis(Flavor::M, t.clone()),
        &LinComb::basis(Flavor::M, s.clone()),
    )
    .expect("same flavor")
}

/// `M_{b⫶t} · M_s = Σ_{r ∈ t·s} M_{b⫶r}`.
pub fn msym_action_m(b: &BiLeveledTree, t: &PlanarTree, s: &PlanarTree) -> Result<MTerm> {
    let mut out = LinComb::zero(Flavor::M);
    for (r, c) in y_m_product(t, s).iter() {
        out.add_term(bbslash(b, r)?, c.clone());
    }
    Ok(out)
}

/// `ρ(M_{b⫶t}) = Σ_{t=r\s} M_{b⫶r} ⊗ M_s`.
pub fn msym_coaction_m(b: &BiLeveledTree, t: &PlanarTree) -> Result<MYTensor> {
    let mut out = LinComb::zero(Flavor::M);
    for (r, s) in t.right_decompositions() {
        out.add_term((bbslash(b, &r)?, s), BigInt::one());
    }
    Ok(out)
}

/// The `⫶` action of 𝒴Sym on ℳSym, extended linearly, in the shared flavor.
pub fn bb_mul(a: &MTerm, h: &LinComb<PlanarTree>) -> Result<MTerm> {
    if a.flavor() != h.flavor() {
        return Err(Error::FlavorMismatch {
            expected: a.flavor(),
            found: h.flavor(),
        });
    }
    match a.flavor() {
        Flavor::M => {
            let mut out = LinComb::zero(Flavor::M);
            for (c, x) in a.iter() {
                let (b, t) = bbslash_decompose(c);
                for (s, y) in h.iter() {
                    out += &msym_action_m(&b, &t, s)?.scale(&(x * y));
                }
            }
            Ok(out)
        }
        Flavor::F => to_f(&bb_mul(&to_m(a)?, &to_m(h)?)?),
    }
}

/// The matrix of `x ↦ ρ(x) − x ⊗ 1` (or `ρ₊`) on the degree-`n` F basis.
fn coinvariant_system(n: usize, plus: bool) -> Result<(Vec<BiLeveledTree>, Matrix)> {
    let basis = BiLeveledTree::enumerate(n);
    let images: Vec<MYTensor> = basis
        .iter()
        .map(|b| {
            let mut r = if plus {
                plus_coaction(b)?
            } else {
                hopf::rho_basis(b)
            };
            r.add_term((b.clone(), PlanarTree::leaf()), -BigInt::one());
            Ok(r)
        })
        .collect::<Result<_>>()?;
    Ok((basis, Matrix::from_images(&images).0))
}

/// Basis of `{x ∈ ℳSymₙ : ρ(x) = x ⊗ 1}` (or with `ρ₊` on the positive
/// part), computed as an exact null space in the F basis and returned as
/// primitive integer vectors.
pub fn coinvariants(n: usize, plus: bool) -> Result<Vec<MTerm>> {
    if plus && n == 0 {
        return Ok(Vec::new());
    }
    let (basis, m) = coinvariant_system(n, plus)?;
    Ok(m.kernel()
        .iter()
        .map(|v| {
            let ints = primitive_integer_vector(v);
            LinComb::from_terms(Flavor::F, basis.iter().cloned().zip(ints))
        })
        .collect())
}

/// Dimension of the coinvariants in degree `n`.
pub fn coinvariant_dimension(n: usize, plus: bool) -> Result<usize> {
    if plus && n == 0 {
        return Ok(0);
    }
    let (basis, m) = coinvariant_system(n, plus)?;
    Ok(basis.len() - m.rank())
}

/// `u ∈ 𝒮`: empty, or the last indecomposable component contains `132`.
pub fn in_s(u: &Permutation) -> bool {
    u.indecomposables()
        .last()
        .is_none_or(|last| last.contains_pattern(&[1, 3, 2]))
}

/// Whether `c = ι(b)` for some nonempty `b ∈ ℬ′`.
fn is_section_of_b_prime(c: &Permutation) -> bool {
    let b = beta(c);
    !b.is_empty() && in_b_prime(&b) && iota(&b) == *c
}

/// Length of the maximal initial run of components lying in `ι(ℬ′₊)`.
pub fn initial_run(u: &Permutation) -> usize {
    u.indecomposables()
        .iter()
        .take_while(|c| is_section_of_b_prime(c))
        .count()
}

/// `u ∈ 𝒮′`: `u ∈ 𝒮` with an even initial run.
pub fn in_s_prime(u: &Permutation) -> bool {
    in_s(u) && initial_run(u).is_multiple_of(2)
}

pub fn s_set(n: usize) -> Vec<Permutation> {
    Permutation::enumerate(n).into_iter().filter(in_s).collect()
}

pub fn s_prime_set(n: usize) -> Vec<Permutation> {
    Permutation::enumerate(n).into_iter().filter(in_s_prime).collect()
}

/// `κ(b, v) = ι(b) \ v` (and `v` itself for empty `b`).
pub fn kappa(b: &BiLeveledTree, v: &Permutation) -> Result<Permutation> {
    if !in_b_prime(b) {
        return Err(Error::NotMember(format!("{b} is not in B'")));
    }
    if !in_s_prime(v) {
        return Err(Error::NotMember(format!("{v} is not in S'")));
    }
    Ok(if b.is_empty() {
        v.clone()
    } else {
        iota(b).backslash(v)
    })
}

/// The inverse of [`kappa`].
pub fn kappa_inverse(u: &Permutation) -> Result<(BiLeveledTree, Permutation)> {
    if !in_s(u) {
        return Err(Error::NotMember(format!("{u} is not in S")));
    }
    if in_s_prime(u) {
        return Ok((BiLeveledTree::empty(), u.clone()));
    }
    let parts = u.indecomposables();
    let rest = parts[1..]
        .iter()
        .fold(Permutation::empty(), |acc, c| acc.backslash(c));
    Ok((beta(&parts[0]), rest))
}
