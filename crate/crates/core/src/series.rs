//! Enumerating series of the graded sets and their quotients.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A power series truncated after `q^N`, with exact integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// The series `c₀ + c₁q + …`, truncated at the length of `coeffs`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least q^0");
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigInt::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// The series `q`.
    pub fn q(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[1] = BigInt::one();
        }
        s
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, BigInt::zero());
        Self::new(c)
    }

    /// The smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(Signed::is_negative)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `q · self`, keeping the truncation order.
    pub fn shift(&self) -> Self {
        let mut c = vec![BigInt::zero()];
        c.extend_from_slice(&self.coeffs[..self.order()]);
        Self::new(c)
    }

    /// `self / q^k`, dropping the vanishing low coefficients; the order
    /// drops by `k`.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotInvertible);
        }
        Ok(Self::new(self.coeffs[k..].to_vec()))
    }

    /// Exact quotient. The constant term of `other` must be nonzero; the
    /// result must have integer coefficients.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.order().min(other.order());
        if other.coeffs[0].is_zero() {
            return Err(Error::NotInvertible);
        }
        let b0 = BigRational::from_integer(other.coeffs[0].clone());
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = BigRational::from_integer(self.coeffs[k].clone());
            for i in 1..=k {
                if !other.coeffs[i].is_zero() {
                    acc -= &out[k - i] * BigRational::from_integer(other.coeffs[i].clone());
                }
            }
            out.push(acc / &b0);
        }
        out.into_iter()
            .enumerate()
            .map(|(k, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegral(format!("coefficient of q^{k} is {c}")))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// `self(inner(q))`. The inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner from the top coefficient down
        let mut acc = Self::zero(n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .coeffs
            .iter()
            .map(|c| c
                .to_i64()
                .map_or_else(|| Value::String(c.to_string()), Value::from))
            .collect::<Vec<_>>())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::new((0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect())
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::new((0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries::new(out)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{} + O(q^{})", parts.join(", "), self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{self}]")
    }
}

/// The four enumerating series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Which {
    S,
    M,
    MPlus,
    Y,
}

impl Which {
    pub const ALL: [Which; 4] = [Which::S, Which::M, Which::MPlus, Which::Y];
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::S => "S",
            Which::M => "M",
            Which::MPlus => "M+",
            Which::Y => "Y",
        })
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" => Ok(Which::S),
            "M" => Ok(Which::M),
            "M+" | "Mplus" => Ok(Which::MPlus),
            "Y" => Ok(Which::Y),
            _ => Err(crate::error::parse_err(0, format!("unknown series {s:?}"))),
        }
    }
}

/// `Cₙ` for `n = 0..=order`.
pub fn catalan(order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for n in 0..order {
        let next = (0..=n).map(|i| &c[i] * &c[n - i]).sum();
        c.push(next);
    }
    c
}

/// `Aₙ = Cₙ₋₁ + Σ_{0<i<n} Aᵢ Aₙ₋ᵢ` with `A₀ = 1`.
pub fn a_sequence(order: usize) -> Vec<BigInt> {
    let c = catalan(order);
    let mut a = vec![BigInt::one()];
    for n in 1..=order {
        let conv: BigInt = (1..n).map(|i| &a[i] * &a[n - i]).sum();
        a.push(&c[n - 1] + conv);
    }
    a
}

/// The enumerating series of `𝔖`, `ℳ`, `ℳ₊` or `𝒴`, through `q^order`.
pub fn series(which: Which, order: usize) -> TruncatedSeries {
    let coeffs = match which {
        Which::S => {
            let mut f = vec![BigInt::one()];
            for n in 1..=order {
                let next = &f[n - 1] * BigInt::from(n);
                f.push(next);
            }
            f
        }
        Which::Y => catalan(order),
        Which::M => a_sequence(order),
        Which::MPlus => {
            let mut a = a_sequence(order);
            a[0] = BigInt::zero();
            a
        }
    };
    TruncatedSeries::new(coeffs)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// `B₁ … B_order` from the closed formula
/// `Bₙ = Σ_{k<n} k/(n−1) · binom(2n−k−3, n−k−1) · C_k` (and `B₁ = C₀`).
pub fn b_sequence(order: usize) -> Result<Vec<BigInt>> {
    let c = catalan(order);
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        if n == 1 {
            out.push(c[0].clone());
            continue;
        }
        let mut acc = BigRational::zero();
        for k in 0..n {
            let factor = BigRational::new(BigInt::from(k), BigInt::from(n - 1));
            let term = binomial(2 * n - k - 3, n - k - 1) * &c[k];
            acc += factor * BigRational::from_integer(term);
        }
        if !acc.is_integer() {
            return Err(Error::NonIntegral(format!("B_{n} = {acc}")));
        }
        out.push(acc.to_integer());
    }
    Ok(out)
}

/// A quotient `num/den` as a Laurent series: `q^valuation · coeffs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub num: Which,
    pub den: Which,
    /// Exponent of the first stored coefficient (negative when the
    /// denominator has no constant term).
    pub valuation: i64,
    pub coeffs: TruncatedSeries,
}

impl Quotient {
    /// Exponents paired with coefficients, up to `q^order`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .coeffs()
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    pub fn first_negative(&self) -> Option<i64> {
        self.terms().find(|(_, c)| c.is_negative()).map(|(e, _)| e)
    }
}

/// `num/den` with every coefficient through `q^order`.
pub fn quotient(num: Which, den: Which, order: usize) -> Result<Quotient> {
    let probe = series(den, 1);
    let v = probe.valuation().ok_or(Error::NotInvertible)?;
    let a = series(num, order + v);
    let b = series(den, order + 2 * v).unshift(v)?;
    let coeffs = a.div(&b)?;
    let valuation = -(v as i64);
    Ok(Quotient {
        num,
        den,
        valuation,
        coeffs,
    })
}

/// The quotients whose expansions are claimed nonnegative.
pub const POSITIVE_QUOTIENTS: [(Which, Which); 4] = [
    (Which::S, Which::M),
    (Which::S, Which::Y),
    (Which::MPlus, Which::Y),
    (Which::M, Which::Y),
];

#[derive(Clone, Debug)]
pub struct QuotientRow {
    pub quotient: Quotient,
    pub expected_nonnegative: bool,
}

impl QuotientRow {
    pub fn ok(&self) -> bool {
        self.quotient.first_negative().is_none() == self.expected_nonnegative
    }
}

/// Every ordered quotient of two distinct series, with its sign verdict.
#[derive(Clone, Debug)]
pub struct SignReport {
    pub order: usize,
    pub rows: Vec<QuotientRow>,
}

impl SignReport {
    pub fn is_ok(&self) -> bool {
        self.rows.iter().all(QuotientRow::ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "ok": self.is_ok(),
            "rows": self.rows.iter().map(|r| json!({
                "quotient": format!("{}/{}", r.quotient.num, r.quotient.den),
                "valuation": r.quotient.valuation,
                "coefficients": r.quotient.coeffs.to_json(),
                "first_negative": r.quotient.first_negative(),
                "expected": if r.expected_nonnegative { "nonnegative" } else { "negative somewhere" },
                "ok": r.ok(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<8} {:<20} {:<14} {:<6} first terms",
            "quotient", "expected", "first neg", "ok"
        )?;
        for r in &self.rows {
            let q = &r.quotient;
            let first: Vec<String> = q.terms().take(8).map(|(_, c)| c.to_string()).collect();
            writeln!(
                f,
                "{:<8} {:<20} {:<14} {:<6} q^{}: {}",
                format!("{}/{}", q.num, q.den),
                if r.expected_nonnegative {
                    "nonnegative"
                } else {
                    "negative somewhere"
                },
                q.first_negative()
                    .map_or("none".to_string(), |e| format!("q^{e}")),
                if r.ok() { "yes" } else { "NO" },
                q.valuation,
                first.join(", ")
            )?;
        }
        Ok(())
    }
}

/// Tabulates all twelve ordered quotients through `q^order`.
pub fn quotient_sign_report(order: usize) -> Result<SignReport> {
    let mut rows = Vec::new();
    for num in Which::ALL {
        for den in Which::ALL {
            if num == den {
                continue;
            }
            rows.push(QuotientRow {
                quotient: quotient(num, den, order)?,
                expected_nonnegative: POSITIVE_QUOTIENTS.contains(&(num, den)),
            });
        }
    }
    Ok(SignReport { order, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn printed_coefficients() {
        assert_eq!(
            series(Which::M, 5).coeffs(),
            ints(&[1, 1, 2, 6, 21, 80]).as_slice()
        );
        assert_eq!(
            series(Which::Y, 5).coeffs(),
            ints(&[1, 1, 2, 5, 14, 42]).as_slice()
        );
        assert_eq!(
            series(Which::S, 5).coeffs(),
            ints(&[1, 1, 2, 6, 24, 120]).as_slice()
        );
        assert_eq!(b_sequence(7).unwrap(), ints(&[1, 1, 3, 11, 44, 185, 804]));
    }

    #[test]
    fn arithmetic_identities() {
        let n = 12;
        let y = series(Which::Y, n);
        let one = TruncatedSeries::one(n);
        let qy = &TruncatedSeries::q(n) * &y;
        assert_eq!(one.div(&y).unwrap(), &one - &qy);
        assert_eq!(&y * &one, y);
        assert_eq!(y.div(&y).unwrap(), one);
        let y_of_qy = y.compose(&qy).unwrap();
        let m = &one + &(&qy * &y_of_qy);
        assert_eq!(m, series(Which::M, n));
        let ratio = series(Which::MPlus, n).div(&y).unwrap();
        assert_eq!(ratio, &TruncatedSeries::q(n) * &y_of_qy);
        let b = b_sequence(n).unwrap();
        for k in 1..=n {
            assert_eq!(ratio.coeff(k), &b[k - 1]);
        }
    }

    #[test]
    fn division_errors() {
        let q = TruncatedSeries::q(4);
        assert_eq!(TruncatedSeries::one(4).div(&q), Err(Error::NotInvertible));
        let one = TruncatedSeries::one(4);
        assert_eq!(one.compose(&one), Err(Error::NonzeroConstant));
        let two = TruncatedSeries::from_i64(&[2, 0]);
        assert!(matches!(one.truncate(1).div(&two), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn m_over_y_is_b_minus_catalan() {
        let quot = quotient(Which::M, Which::Y, 12).unwrap();
        let b = b_sequence(12).unwrap();
        let c = catalan(12);
        assert_eq!(quot.coeffs.coeff(0), &BigInt::one());
        for n in 1..=12 {
            assert_eq!(quot.coeffs.coeff(n), &(&b[n - 1] - &c[n - 1]));
        }
    }

    #[test]
    fn y_over_s_goes_negative_early() {
        let quot = quotient(Which::Y, Which::S, 6).unwrap();
        assert!(quot.first_negative().unwrap() <= 6);
    }

    #[test]
    fn laurent_quotients_start_below_zero() {
        let quot = quotient(Which::S, Which::MPlus, 6).unwrap();
        assert_eq!(quot.valuation, -1);
        assert_eq!(quot.terms().last().unwrap().0, 6);
    }
}
