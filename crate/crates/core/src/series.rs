//! Dense truncated power series in `q` over exact rationals.
//!
//! A [`FormalSeries`] of order `N` stores the coefficients of `q^0 ..= q^N`.
//! Binary operations on series of different orders produce a result of the
//! smaller order; nothing is ever silently extended with zeros.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact coefficient type used throughout the crate.
pub type Rational = BigRational;

/// Product length above which [`series_mul`] switches to Karatsuba.
///
/// Chosen from `benches/mul.rs`; Karatsuba forms the full product while the
/// schoolbook loop stops at the truncation, which pushes the crossover up.
pub const KARATSUBA_THRESHOLD: usize = 1024;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalSeries {
    coeffs: Vec<Rational>,
}

impl FormalSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * q^exponent`, or the zero series when the exponent is past `order`.
    pub fn monomial(c: Rational, exponent: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exponent <= order {
            s.coeffs[exponent] = c;
        }
        s
    }

    /// Builds a series whose order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant coefficient");
        Self { coeffs }
    }

    /// Integer coefficients, zero-padded or cut to `order`.
    pub fn from_ints(values: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, v) in s.coeffs.iter_mut().zip(values) {
            *slot = rat(*v);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `q^k`; `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn set_coeff(&mut self, k: usize, value: Rational) {
        if let Some(slot) = self.coeffs.get_mut(k) {
            *slot = value;
        }
    }

    /// Cuts the series down to `order` (no-op when `order` is not smaller).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// First exponent whose coefficient is not an integer.
    pub fn first_non_integral(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order());
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k > self.order() {
                break;
            }
            out.coeffs[i + k] = c.clone();
        }
        out
    }

    /// `q^k * self` as a series of order `order`; needs `order <= self.order() + k`.
    pub fn shift_extend(&self, k: usize, order: usize) -> Self {
        assert!(
            order <= self.order() + k,
            "shifted series is only known through q^{}",
            self.order() + k
        );
        let mut out = Self::zero(order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k > order {
                break;
            }
            out.coeffs[i + k] = c.clone();
        }
        out
    }

    /// `self += c * q^k * other`.
    ///
    /// `q^k * other` is known through `q^{other.order() + k}`, and `self` is
    /// truncated to that when it is smaller.
    pub fn add_scaled_shifted(&mut self, other: &Self, c: &Rational, k: usize) {
        let known = other.order() + k;
        if known < self.order() {
            self.coeffs.truncate(known + 1);
        }
        if c.is_zero() {
            return;
        }
        let top = self.order();
        for (i, a) in other.coeffs.iter().enumerate() {
            if i + k > top {
                break;
            }
            if !a.is_zero() {
                self.coeffs[i + k] += a * c;
            }
        }
    }

    /// In place: `self *= (1 - c q^k)`.
    pub fn mul_one_minus(&mut self, c: &Rational, k: usize) {
        if c.is_zero() {
            return;
        }
        if k == 0 {
            let f = Rational::one() - c;
            for a in &mut self.coeffs {
                *a *= &f;
            }
            return;
        }
        for i in (k..self.coeffs.len()).rev() {
            if !self.coeffs[i - k].is_zero() {
                let d = &self.coeffs[i - k] * c;
                self.coeffs[i] -= d;
            }
        }
    }

    /// In place: `self /= (1 - c q^k)`. Fails only for `k = 0, c = 1`.
    pub fn div_one_minus(&mut self, c: &Rational, k: usize) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if k == 0 {
            let f = Rational::one() - c;
            if f.is_zero() {
                return Err(Error::SingularTerm);
            }
            let inv = f.recip();
            for a in &mut self.coeffs {
                *a *= &inv;
            }
            return Ok(());
        }
        for i in k..self.coeffs.len() {
            if !self.coeffs[i - k].is_zero() {
                let d = &self.coeffs[i - k] * c;
                self.coeffs[i] += d;
            }
        }
        Ok(())
    }

    /// In place multiplication by a sparse polynomial `sum c_e q^e`.
    pub fn mul_sparse(&mut self, poly: &[(usize, Rational)]) {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (e, c) in poly {
            if c.is_zero() {
                continue;
            }
            for (i, a) in self.coeffs.iter().enumerate() {
                if i + e >= out.len() {
                    break;
                }
                if !a.is_zero() {
                    out[i + e] += a * c;
                }
            }
        }
        self.coeffs = out;
    }

    pub fn invert(&self) -> Result<Self> {
        series_invert(self)
    }

    pub fn substitute_power(&self, k: usize) -> Self {
        substitute_power(self, k)
    }

    pub fn substitute_negate(&self) -> Self {
        substitute_negate(self)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = series_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = series_mul(&base, &base);
            }
        }
        acc
    }
}

impl fmt::Debug for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} + O(q^{})", self.order() + 1)
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn series_add(a: &FormalSeries, b: &FormalSeries) -> FormalSeries {
    let n = a.order().min(b.order());
    FormalSeries {
        coeffs: (0..=n).map(|i| &a.coeffs[i] + &b.coeffs[i]).collect(),
    }
}

pub fn series_sub(a: &FormalSeries, b: &FormalSeries) -> FormalSeries {
    let n = a.order().min(b.order());
    FormalSeries {
        coeffs: (0..=n).map(|i| &a.coeffs[i] - &b.coeffs[i]).collect(),
    }
}

/// Cauchy product truncated to the smaller order.
///
/// Both sides are scaled to integers by a common denominator first, so the
/// inner loops run on big integers without per-step normalisation.
pub fn series_mul(a: &FormalSeries, b: &FormalSeries) -> FormalSeries {
    series_mul_with_threshold(a, b, KARATSUBA_THRESHOLD)
}

/// [`series_mul`] with an explicit Karatsuba crossover, for benchmarking.
pub fn series_mul_with_threshold(a: &FormalSeries, b: &FormalSeries, threshold: usize) -> FormalSeries {
    let n = a.order().min(b.order());
    let (ia, da) = to_integers(&a.coeffs[..=n]);
    let (ib, db) = to_integers(&b.coeffs[..=n]);
    let mut prod = if n + 1 >= threshold {
        karatsuba(&ia, &ib)
    } else {
        schoolbook(&ia, &ib, n + 1)
    };
    prod.truncate(n + 1);
    let den = da * db;
    let coeffs = prod
        .into_iter()
        .map(|c| {
            if c.is_zero() {
                Rational::zero()
            } else {
                Rational::new(c, den.clone())
            }
        })
        .collect();
    FormalSeries { coeffs }
}

/// Integer numerators over the least common denominator.
fn to_integers(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for c in coeffs {
        if !c.denom().is_one() {
            den = den.lcm(c.denom());
        }
    }
    let nums = coeffs
        .iter()
        .map(|c| {
            if c.denom().is_one() {
                c.numer() * &den
            } else {
                c.numer() * (&den / c.denom())
            }
        })
        .collect();
    (nums, den)
}

/// Truncated schoolbook product keeping `len` coefficients.
fn schoolbook(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Full (untruncated) product of two coefficient slices.
fn karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len().max(b.len());
    if n < 32 {
        return schoolbook(a, b, a.len() + b.len() - 1);
    }
    let half = n / 2;
    let split = |s: &[BigInt]| -> (Vec<BigInt>, Vec<BigInt>) {
        let lo = s[..half.min(s.len())].to_vec();
        let hi = if s.len() > half {
            s[half..].to_vec()
        } else {
            vec![BigInt::zero()]
        };
        (lo, hi)
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let sum = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); x.len().max(y.len())];
        for (i, c) in x.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in y.iter().enumerate() {
            out[i] += c;
        }
        out
    };
    let z0 = karatsuba(&a0, &b0);
    let z2 = karatsuba(&a1, &b1);
    let z1 = karatsuba(&sum(&a0, &a1), &sum(&b0, &b1));
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, c) in z0.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in z1.iter().enumerate() {
        let mut mid = c.clone();
        if let Some(z) = z0.get(i) {
            mid -= z;
        }
        if let Some(z) = z2.get(i) {
            mid -= z;
        }
        if !mid.is_zero() {
            out[i + half] += mid;
        }
    }
    for (i, c) in z2.iter().enumerate() {
        if i + 2 * half < out.len() {
            out[i + 2 * half] += c;
        }
    }
    out
}

/// Multiplicative inverse to the same order; requires a nonzero constant term.
pub fn series_invert(a: &FormalSeries) -> Result<FormalSeries> {
    let a0 = &a.coeffs[0];
    if a0.is_zero() {
        return Err(Error::NonUnitSeries);
    }
    let inv0 = a0.recip();
    let n = a.order();
    let mut b = vec![Rational::zero(); n + 1];
    b[0] = inv0.clone();
    for k in 1..=n {
        let mut acc = Rational::zero();
        for i in 1..=k {
            if !a.coeffs[i].is_zero() && !b[k - i].is_zero() {
                acc += &a.coeffs[i] * &b[k - i];
            }
        }
        b[k] = -(acc * &inv0);
    }
    Ok(FormalSeries { coeffs: b })
}

/// `a(q^k)` at the order of `a`.
///
/// # Panics
/// If `k == 0`.
pub fn substitute_power(a: &FormalSeries, k: usize) -> FormalSeries {
    assert!(k >= 1, "substitute_power needs k >= 1");
    let mut out = FormalSeries::zero(a.order());
    for (i, c) in a.coeffs.iter().enumerate() {
        let e = i * k;
        if e > a.order() {
            break;
        }
        out.coeffs[e] = c.clone();
    }
    out
}

/// `a(-q)`: odd coefficients change sign.
pub fn substitute_negate(a: &FormalSeries) -> FormalSeries {
    FormalSeries {
        coeffs: a
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect(),
    }
}

/// First coefficient where two series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}: lhs {} != rhs {}", self.exponent, self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Agreement {
    Equal,
    Differs(Mismatch),
}

impl Agreement {
    pub fn is_equal(&self) -> bool {
        matches!(self, Agreement::Equal)
    }

    pub fn mismatch(&self) -> Option<&Mismatch> {
        match self {
            Agreement::Equal => None,
            Agreement::Differs(m) => Some(m),
        }
    }
}

/// Exact comparison of coefficients `0..=n`.
pub fn equal_to_order(a: &FormalSeries, b: &FormalSeries, n: usize) -> Result<Agreement> {
    let available = a.order().min(b.order());
    if n > available {
        return Err(Error::OrderTooLarge {
            requested: n,
            available,
        });
    }
    for k in 0..=n {
        if a.coeffs[k] != b.coeffs[k] {
            return Ok(Agreement::Differs(Mismatch {
                exponent: k,
                lhs: a.coeffs[k].clone(),
                rhs: b.coeffs[k].clone(),
            }));
        }
    }
    Ok(Agreement::Equal)
}

/// `c * q^exponent` with a possibly negative exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub exponent: i64,
}

impl Term {
    pub fn new(coeff: Rational, exponent: i64) -> Self {
        Self { coeff, exponent }
    }

    pub fn materialize(&self, order: usize) -> Result<FormalSeries> {
        materialize_terms(std::slice::from_ref(self), order)
    }
}

impl Mul for &Term {
    type Output = Term;

    fn mul(self, rhs: &Term) -> Term {
        Term::new(&self.coeff * &rhs.coeff, self.exponent + rhs.exponent)
    }
}

/// Sums terms, cancelling like exponents, into a series of the given order.
///
/// Terms past `order` are dropped. A negative exponent whose combined
/// coefficient is nonzero is an error.
pub fn materialize_terms<'a, I>(terms: I, order: usize) -> Result<FormalSeries>
where
    I: IntoIterator<Item = &'a Term>,
{
    let mut negative: BTreeMap<i64, Rational> = BTreeMap::new();
    let mut out = FormalSeries::zero(order);
    for t in terms {
        if t.exponent < 0 {
            *negative.entry(t.exponent).or_insert_with(Rational::zero) += &t.coeff;
        } else if (t.exponent as usize) <= order {
            out.coeffs[t.exponent as usize] += &t.coeff;
        }
    }
    if let Some((&exponent, _)) = negative.iter().find(|(_, c)| !c.is_zero()) {
        return Err(Error::NegativeExponentTerm { exponent });
    }
    Ok(out)
}

/// Product of two finite term sums, with like exponents combined.
pub fn multiply_terms(a: &[Term], b: &[Term]) -> Vec<Term> {
    let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
    for x in a {
        for y in b {
            *acc.entry(x.exponent + y.exponent).or_insert_with(Rational::zero) += &x.coeff * &y.coeff;
        }
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| Term::new(c, e))
        .collect()
}

/// Consecutive equal terms required before a sequence counts as converged.
const ABEL_STABLE_STEPS: usize = 3;
const ABEL_MAX_STEPS: usize = 20_000;

/// Abel value of `sum_{n >= start} (-1)^n c_n` for a q-adically convergent
/// sequence `c_n -> c`.
///
/// The terms do not tend to zero, so the sum is read as
/// `sum (-1)^n (c_n - c) + (-1)^start c / 2`, the common limit of the
/// averaged even and odd partial sums. The limit `c` is detected as the
/// first term that stays unchanged (to `order`) for several steps, which
/// requires the convergence degree of `c_n - c_{n-1}` to be nondecreasing.
pub fn alternating_abel_sum<F>(start: usize, order: usize, mut term: F) -> Result<FormalSeries>
where
    F: FnMut(usize) -> Result<FormalSeries>,
{
    let mut terms: Vec<FormalSeries> = Vec::new();
    let mut stable = 0;
    let mut n = start;
    loop {
        let t = term(n)?.truncate(order);
        if t.order() < order {
            return Err(Error::OrderTooLarge {
                requested: order,
                available: t.order(),
            });
        }
        if terms.last().is_some_and(|prev| prev == &t) {
            stable += 1;
        } else {
            stable = 0;
        }
        terms.push(t);
        if stable >= ABEL_STABLE_STEPS {
            break;
        }
        n += 1;
        if n - start > ABEL_MAX_STEPS {
            return Err(Error::NonConvergent(ABEL_MAX_STEPS));
        }
    }
    let limit = terms.last().cloned().expect("at least one term");
    let mut acc = FormalSeries::zero(order);
    for (i, t) in terms.iter().enumerate() {
        let sign = if (start + i).is_multiple_of(2) { rat(1) } else { rat(-1) };
        let diff = series_sub(t, &limit);
        acc.add_scaled_shifted(&diff, &sign, 0);
    }
    let half = if start.is_multiple_of(2) {
        ratio(1, 2)
    } else {
        ratio(-1, 2)
    };
    acc.add_scaled_shifted(&limit, &half, 0);
    Ok(acc)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $func:ident) => {
        impl $trait<&FormalSeries> for &FormalSeries {
            type Output = FormalSeries;
            fn $method(self, rhs: &FormalSeries) -> FormalSeries {
                $func(self, rhs)
            }
        }
        impl $trait<FormalSeries> for FormalSeries {
            type Output = FormalSeries;
            fn $method(self, rhs: FormalSeries) -> FormalSeries {
                $func(&self, &rhs)
            }
        }
        impl $trait<&FormalSeries> for FormalSeries {
            type Output = FormalSeries;
            fn $method(self, rhs: &FormalSeries) -> FormalSeries {
                $func(&self, rhs)
            }
        }
        impl $trait<FormalSeries> for &FormalSeries {
            type Output = FormalSeries;
            fn $method(self, rhs: FormalSeries) -> FormalSeries {
                $func(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, series_add);
forward_binop!(Sub, sub, series_sub);
forward_binop!(Mul, mul, series_mul);

impl Neg for &FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FormalSeries {
    type Output = FormalSeries;
    fn neg(self) -> FormalSeries {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[i64], order: usize) -> FormalSeries {
        FormalSeries::from_ints(v, order)
    }

    #[test]
    fn add_cancels_odd_terms() {
        let a = s(&[1, 1], 6);
        let b = s(&[1, -1], 6);
        assert_eq!(&a + &b, s(&[2], 6));
        assert_eq!(&a + &FormalSeries::zero(6), a);
        assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn add_uses_min_order() {
        let a = s(&[1, 2, 3], 5);
        let b = s(&[1], 2);
        assert_eq!((&a + &b).order(), 2);
    }

    #[test]
    fn small_euler_product() {
        let mut p = FormalSeries::one(12);
        for k in 1..=3 {
            p = &p * &(FormalSeries::one(12) - FormalSeries::monomial(rat(1), k, 12));
        }
        // (1-q)(1-q^2)(1-q^3) expanded by hand
        assert_eq!(p, s(&[1, -1, -1, 0, 1, 1, -1], 12));
        assert_eq!(&s(&[1, 1], 8) * &s(&[1, -1], 8), s(&[1, 0, -1], 8));
        assert_eq!(&p * &FormalSeries::one(12), p);
    }

    #[test]
    fn invert_geometric() {
        let g = s(&[1, -1], 10).invert().unwrap();
        assert_eq!(g, s(&[1; 11], 10));
        assert_eq!(s(&[0, 1], 4).invert(), Err(Error::NonUnitSeries));
    }

    #[test]
    fn inplace_factor_ops_match_products() {
        let a = s(&[3, -1, 4, 1, -5, 9, 2, 6], 7);
        let mut b = a.clone();
        b.mul_one_minus(&rat(2), 3);
        assert_eq!(b, &a * &s(&[1, 0, 0, -2], 7));
        b.div_one_minus(&rat(2), 3).unwrap();
        assert_eq!(b, a);
        let mut c = a.clone();
        assert_eq!(c.div_one_minus(&rat(1), 0), Err(Error::SingularTerm));
        c.div_one_minus(&rat(-1), 0).unwrap();
        assert_eq!(c, a.scale(&ratio(1, 2)));
    }

    #[test]
    fn substitutions() {
        assert_eq!(substitute_power(&s(&[1, 1], 5), 2), s(&[1, 0, 1], 5));
        let a = s(&[1, 2, 3, 4], 3);
        assert_eq!(substitute_power(&a, 1), a);
        assert_eq!(substitute_negate(&s(&[1, 1, 1], 2)), s(&[1, -1, 1], 2));
    }

    #[test]
    fn equality_report() {
        let a = s(&[1, 1], 3);
        assert!(equal_to_order(&a, &a, 3).unwrap().is_equal());
        let hi = FormalSeries::monomial(rat(1), 6, 10) + FormalSeries::one(10);
        assert!(equal_to_order(&FormalSeries::one(5), &hi, 5).unwrap().is_equal());
        let m = equal_to_order(&s(&[1, 1], 1), &s(&[1, 2], 1), 1).unwrap();
        assert_eq!(m.mismatch().unwrap().exponent, 1);
        assert_eq!(
            equal_to_order(&a, &s(&[1], 2), 3),
            Err(Error::OrderTooLarge {
                requested: 3,
                available: 2
            })
        );
    }

    #[test]
    fn terms_cancel_before_materializing() {
        let ts = [Term::new(rat(1), -2), Term::new(rat(-1), -2), Term::new(rat(5), 1)];
        assert_eq!(materialize_terms(&ts, 3).unwrap(), s(&[0, 5], 3));
        assert_eq!(
            Term::new(rat(1), -1).materialize(3),
            Err(Error::NegativeExponentTerm { exponent: -1 })
        );
        let p = multiply_terms(&[Term::new(rat(1), 0), Term::new(rat(-1), -1)], &[Term::new(rat(1), 1)]);
        assert_eq!(materialize_terms(&p, 2).unwrap(), s(&[-1, 1], 2));
    }

    #[test]
    fn abel_sum_of_constant_sequence_is_half() {
        let got = alternating_abel_sum(0, 4, |_| Ok(FormalSeries::one(4))).unwrap();
        assert_eq!(got, FormalSeries::constant(ratio(1, 2), 4));
        // c_n = 1 - q^{n+1} converges to 1: sum (-1)^n (-q^{n+1}) + 1/2
        let got = alternating_abel_sum(0, 5, |n| {
            let mut t = FormalSeries::one(5);
            t.add_scaled_shifted(&FormalSeries::one(5), &rat(-1), n + 1);
            Ok(t)
        })
        .unwrap();
        let mut want = FormalSeries::constant(ratio(1, 2), 5);
        for n in 0..5 {
            let sign = if n % 2 == 0 { rat(-1) } else { rat(1) };
            want.add_scaled_shifted(&FormalSeries::one(5), &sign, n + 1);
        }
        assert_eq!(got, want);
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<BigInt> = (0..150).map(|i| BigInt::from((i * 7 % 13) - 6)).collect();
        let b: Vec<BigInt> = (0..150).map(|i| BigInt::from((i * 5 % 11) - 5)).collect();
        assert_eq!(karatsuba(&a, &b), schoolbook(&a, &b, 299));
        let x = FormalSeries::from_coeffs((0..900).map(|i| ratio((i * 7 % 13) - 6, 1 + i % 3)).collect());
        let y = FormalSeries::from_coeffs((0..900).map(|i| ratio((i * 5 % 11) - 5, 1 + i % 4)).collect());
        let mut naive = FormalSeries::zero(899);
        for (i, c) in x.coeffs().iter().enumerate() {
            naive.add_scaled_shifted(&y, c, i);
        }
        assert_eq!(series_mul(&x, &y), naive);
    }

    fn arb_series(order: usize) -> impl Strategy<Value = FormalSeries> {
        proptest::collection::vec((-20i64..20, 1i64..5), order + 1)
            .prop_map(|v| FormalSeries::from_coeffs(v.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn ring_laws(a in arb_series(64), b in arb_series(64), c in arb_series(64)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn invert_is_inverse(mut a in arb_series(40)) {
            if a.coeffs()[0].is_zero() {
                a.set_coeff(0, rat(1));
            }
            let b = a.invert().unwrap();
            prop_assert_eq!(&a * &b, FormalSeries::one(40));
        }

        #[test]
        fn substitution_composes(a in arb_series(60), k in 1usize..5, m in 1usize..5) {
            prop_assert_eq!(substitute_power(&substitute_power(&a, k), m), substitute_power(&a, k * m));
            prop_assert_eq!(substitute_negate(&substitute_negate(&a)), a);
        }
    }
}
