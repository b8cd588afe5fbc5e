//! Formal linear combinations with exact integer coefficients.
//!
//! A [`LinComb<K>`] is a finite sum over basis keys `K` tagged with a basis
//! flavor (fundamental `F` or monomial `M`). Tensors are linear combinations
//! over tuples of keys.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::bileveled::BiLeveledTree;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::trees::PlanarTree;

/// Which basis a linear combination is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    F,
    M,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::F => "F",
            Flavor::M => "M",
        })
    }
}

/// The three families of basis elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Permutations.
    S,
    /// Bi-leveled trees.
    M,
    /// Planar binary trees.
    Y,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::S => "S",
            Family::M => "M",
            Family::Y => "Y",
        })
    }
}

/// A basis key: something with a degree and a printable form.
pub trait Key: Ord + Clone + fmt::Debug + Send + Sync {
    fn degree(&self) -> usize;

    /// Appends the term `F_k` (or `1` in degree 0).
    fn write_term(&self, flavor: Flavor, out: &mut String);

    fn to_json(&self) -> Value;
}

macro_rules! element_key {
    ($ty:ty, $deg:ident) => {
        impl Key for $ty {
            fn degree(&self) -> usize {
                self.$deg()
            }

            fn write_term(&self, flavor: Flavor, out: &mut String) {
                use std::fmt::Write;
                if self.degree() == 0 {
                    out.push('1');
                } else {
                    let _ = write!(out, "{flavor}[{self}]");
                }
            }

            fn to_json(&self) -> Value {
                Value::String(self.to_string())
            }
        }
    };
}

element_key!(Permutation, len);
element_key!(PlanarTree, nodes);
element_key!(BiLeveledTree, nodes);

impl<A: Key, B: Key> Key for (A, B) {
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree()
    }

    fn write_term(&self, flavor: Flavor, out: &mut String) {
        self.0.write_term(flavor, out);
        out.push_str(" ⊗ ");
        self.1.write_term(flavor, out);
    }

    fn to_json(&self) -> Value {
        json!([self.0.to_json(), self.1.to_json()])
    }
}

impl<A: Key, B: Key, C: Key> Key for (A, B, C) {
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree() + self.2.degree()
    }

    fn write_term(&self, flavor: Flavor, out: &mut String) {
        self.0.write_term(flavor, out);
        out.push_str(" ⊗ ");
        self.1.write_term(flavor, out);
        out.push_str(" ⊗ ");
        self.2.write_term(flavor, out);
    }

    fn to_json(&self) -> Value {
        json!([self.0.to_json(), self.1.to_json(), self.2.to_json()])
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: Key> {
    flavor: Flavor,
    terms: BTreeMap<K, BigInt>,
}

impl<K: Key> LinComb<K> {
    pub fn zero(flavor: Flavor) -> Self {
        LinComb {
            flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(flavor: Flavor, key: K) -> Self {
        let mut out = Self::zero(flavor);
        out.terms.insert(key, BigInt::one());
        out
    }

    pub fn from_terms(flavor: Flavor, terms: impl IntoIterator<Item = (K, BigInt)>) -> Self {
        let mut out = Self::zero(flavor);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Sum of basis elements, one per key, counted with multiplicity.
    pub fn from_keys(flavor: Flavor, keys: impl IntoIterator<Item = K>) -> Self {
        Self::from_terms(flavor, keys.into_iter().map(|k| (k, BigInt::one())))
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn add_term(&mut self, key: K, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, key: &K) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// True when every coefficient is positive.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }

    /// Sum of all coefficients; counts terms with multiplicity for positive sums.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_flavor(other.flavor)?;
        let mut out = self.clone();
        out += other;
        Ok(out)
    }

    pub fn check_flavor(&self, expected: Flavor) -> Result<()> {
        if self.flavor == expected {
            Ok(())
        } else {
            Err(Error::FlavorMismatch {
                expected,
                found: self.flavor,
            })
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.flavor);
        }
        LinComb {
            flavor: self.flavor,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Extends `f` linearly. The flavor of the result is `flavor`.
    pub fn linear_map<L: Key>(&self, flavor: Flavor, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero(flavor);
        for (k, c) in &self.terms {
            for (l, d) in f(k).terms {
                out.add_term(l, d * c);
            }
        }
        out
    }

    /// Extends a key-to-key map linearly, keeping the flavor.
    pub fn map_keys<L: Key>(&self, mut f: impl FnMut(&K) -> L) -> LinComb<L> {
        let mut out = LinComb::zero(self.flavor);
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Bilinear extension of `f` on basis pairs.
    pub fn bilinear<L: Key, R: Key>(
        &self,
        other: &LinComb<L>,
        mut f: impl FnMut(&K, &L) -> LinComb<R>,
    ) -> LinComb<R> {
        let mut out = LinComb::zero(self.flavor);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x * y;
                for (r, z) in f(a, b).terms {
                    out.add_term(r, z * &xy);
                }
            }
        }
        out
    }

    /// The tensor product `self ⊗ other`.
    pub fn tensor<L: Key>(&self, other: &LinComb<L>) -> LinComb<(K, L)> {
        self.bilinear(other, |a, b| LinComb::basis(self.flavor, (a.clone(), b.clone())))
    }

    /// Part of degree `n`.
    pub fn homogeneous(&self, n: usize) -> Self {
        LinComb {
            flavor: self.flavor,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == n)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let coeff = c
                    .to_i64()
                    .map_or_else(|| Value::String(c.to_string()), Value::from);
                json!({ "key": k.to_json(), "coeff": coeff })
            })
            .collect();
        json!({ "flavor": self.flavor.to_string(), "terms": terms })
    }
}

impl<A: Key, B: Key> LinComb<(A, B)> {
    /// Applies `f` to the first leg and `g` to the second.
    pub fn map_legs<C: Key, D: Key>(
        &self,
        mut f: impl FnMut(&A) -> LinComb<C>,
        mut g: impl FnMut(&B) -> LinComb<D>,
    ) -> LinComb<(C, D)> {
        self.linear_map(self.flavor, |(a, b)| f(a).tensor(&g(b)))
    }

    /// Multiplication in a tensor product of algebras, leg by leg.
    pub fn tensor_mul<C: Key, D: Key, E: Key, G: Key>(
        &self,
        other: &LinComb<(C, D)>,
        mut left: impl FnMut(&A, &C) -> LinComb<E>,
        mut right: impl FnMut(&B, &D) -> LinComb<G>,
    ) -> LinComb<(E, G)> {
        self.bilinear(other, |(a, b), (c, d)| left(a, c).tensor(&right(b, d)))
    }
}

impl<K: Key> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            let mag = c.abs();
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push(' ');
            }
            k.write_term(self.flavor, &mut out);
        }
        f.write_str(&out)
    }
}

impl<K: Key> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// # Panics
///
/// Panics on a flavor mismatch; use [`LinComb::try_add`] to get an error.
impl<K: Key> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        assert_eq!(
            self.flavor, rhs.flavor,
            "adding combinations of different flavors"
        );
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Key> SubAssign<&LinComb<K>> for LinComb<K> {
    fn sub_assign(&mut self, rhs: &LinComb<K>) {
        assert_eq!(
            self.flavor, rhs.flavor,
            "subtracting combinations of different flavors"
        );
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c);
        }
    }
}

impl<K: Key> Add for LinComb<K> {
    type Output = LinComb<K>;

    fn add(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self += &rhs;
        self
    }
}

impl<K: Key> Sub for LinComb<K> {
    type Output = LinComb<K>;

    fn sub(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self -= &rhs;
        self
    }
}

impl<K: Key> Neg for LinComb<K> {
    type Output = LinComb<K>;

    fn neg(self) -> LinComb<K> {
        LinComb {
            flavor: self.flavor,
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl<K: Key> Mul<i64> for LinComb<K> {
    type Output = LinComb<K>;

    fn mul(self, rhs: i64) -> LinComb<K> {
        self.scale(&BigInt::from(rhs))
    }
}

impl<K: Key> FromIterator<(K, BigInt)> for LinComb<K> {
    /// Collects into flavor `F`.
    fn from_iter<I: IntoIterator<Item = (K, BigInt)>>(iter: I) -> Self {
        LinComb::from_terms(Flavor::F, iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut a = LinComb::basis(Flavor::F, p("12"));
        a.add_term(p("12"), BigInt::from(-1));
        assert!(a.is_zero());
        assert_eq!(a.to_string(), "0");
    }

    #[test]
    fn display_uses_canonical_order_and_unit() {
        let a = LinComb::from_terms(
            Flavor::F,
            [
                (p("21"), BigInt::from(2)),
                (p("12"), BigInt::from(-1)),
                (p(""), BigInt::one()),
            ],
        );
        assert_eq!(a.to_string(), "1 - F[1,2] + 2 F[2,1]");
        let t = LinComb::basis(Flavor::M, (p("1"), p("")));
        assert_eq!(t.to_string(), "M[1] ⊗ 1");
    }

    #[test]
    fn flavors_do_not_mix() {
        let a = LinComb::basis(Flavor::F, p("1"));
        let b = LinComb::basis(Flavor::M, p("1"));
        assert!(matches!(a.try_add(&b), Err(Error::FlavorMismatch { .. })));
    }

    #[test]
    fn module_axioms() {
        let a = LinComb::from_keys(Flavor::F, [p("12"), p("21"), p("21")]);
        let b = LinComb::from_keys(Flavor::F, [p("12"), p("1")]);
        assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        assert_eq!((a.clone() + b.clone()) * 3, a.clone() * 3 + b.clone() * 3);
        assert!((a.clone() - a.clone()).is_zero());
        assert_eq!(-(-a.clone()), a);
        assert_eq!(a.coeff(&p("21")), BigInt::from(2));
    }

    #[test]
    fn tensor_and_json() {
        let a = LinComb::from_keys(Flavor::F, [p("1"), p("")]);
        let t = a.tensor(&a);
        assert_eq!(t.len(), 4);
        let v = t.to_json();
        assert_eq!(v["terms"][0]["key"], json!(["()", "()"]));
        assert_eq!(v["terms"][0]["coeff"], json!(1));
    }
}
