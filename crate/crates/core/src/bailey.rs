//! Bailey pairs, the definition checker, the four weak forms of Bailey's
//! lemma, and the multisum chain.
//!
//! A pair `(alpha_n, beta_n)` relative to `a` in base `q^b` satisfies
//!
//! ```text
//! beta_n = sum_{j=0}^{n} alpha_j / ((q^b; q^b)_{n-j} (a q^b; q^b)_{n+j})
//! ```
//!
//! The weak forms are the `a = 1`, `n -> inf` limits of the full lemma with
//! the free parameters sent to `(inf, inf)`, `(inf, -q)` under `q -> q^2`,
//! `(sqrt q, -sqrt q)` and `(inf, -1)`. Only those four limits and the
//! iterated `rho -> inf` chain are implemented.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::chebyshev::{cheb_v, ChebyshevEvaluator};
use crate::error::{Error, Result};
use crate::qfunctions::{
    pochhammer_finite, pochhammer_finite_reciprocal, pochhammer_infinite, pochhammer_infinite_reciprocal, qbinomial,
    SignedMonomial,
};
use crate::series::{alternating_abel_sum, equal_to_order, rat, ratio, Agreement, FormalSeries, Mismatch, Rational};

/// `(n, order) -> term`.
pub type SequenceFn = Arc<dyn Fn(usize, usize) -> Result<FormalSeries> + Send + Sync>;

/// Lower bound on the q-valuation of the `n`th term.
pub type DegreeBound = Arc<dyn Fn(usize) -> usize + Send + Sync>;

#[derive(Clone)]
pub struct BaileyPair {
    pub name: String,
    pub a_param: SignedMonomial,
    pub base_power: usize,
    alpha: SequenceFn,
    beta: SequenceFn,
    alpha_degree: DegreeBound,
}

impl fmt::Debug for BaileyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaileyPair")
            .field("name", &self.name)
            .field("a_param", &self.a_param)
            .field("base_power", &self.base_power)
            .finish_non_exhaustive()
    }
}

impl BaileyPair {
    pub fn new(
        name: impl Into<String>,
        a_param: SignedMonomial,
        base_power: usize,
        alpha: SequenceFn,
        beta: SequenceFn,
        alpha_degree: DegreeBound,
    ) -> Self {
        Self {
            name: name.into(),
            a_param,
            base_power,
            alpha,
            beta,
            alpha_degree,
        }
    }

    pub fn alpha(&self, n: usize, order: usize) -> Result<FormalSeries> {
        (self.alpha)(n, order)
    }

    pub fn beta(&self, n: usize, order: usize) -> Result<FormalSeries> {
        (self.beta)(n, order)
    }

    pub fn alpha_min_degree(&self, n: usize) -> usize {
        (self.alpha_degree)(n)
    }

    /// Same pair with `beta` replaced; used for negative controls.
    pub fn with_beta(&self, beta: SequenceFn) -> Self {
        Self { beta, ..self.clone() }
    }
}

/// Failure found by [`check_bailey_pair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFailure {
    pub n: usize,
    pub mismatch: Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub checked: usize,
    pub failure: Option<PairFailure>,
}

impl PairReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the defining relation for every `n <= n_max` to `order`.
pub fn check_bailey_pair(p: &BaileyPair, n_max: usize, order: usize) -> Result<PairReport> {
    let b = p.base_power;
    let shifted_a = SignedMonomial::new(p.a_param.coeff.clone(), p.a_param.exponent + b);
    let alphas = (0..=n_max).map(|j| p.alpha(j, order)).collect::<Result<Vec<_>>>()?;
    let lefts = (0..=n_max)
        .map(|d| pochhammer_finite_reciprocal(&SignedMonomial::q_pow(b), b, d, order))
        .collect::<Result<Vec<_>>>()?;
    let rights = (0..=2 * n_max)
        .map(|d| pochhammer_finite_reciprocal(&shifted_a, b, d, order))
        .collect::<Result<Vec<_>>>()?;
    for n in 0..=n_max {
        let mut sum = FormalSeries::zero(order);
        for (j, alpha) in alphas.iter().enumerate().take(n + 1) {
            let term = &(alpha * &lefts[n - j]) * &rights[n + j];
            sum.add_scaled_shifted(&term, &Rational::one(), 0);
        }
        let beta = p.beta(n, order)?;
        if let Agreement::Differs(mismatch) = equal_to_order(&beta, &sum, order)? {
            return Ok(PairReport {
                checked: n,
                failure: Some(PairFailure { n, mismatch }),
            });
        }
    }
    Ok(PairReport {
        checked: n_max + 1,
        failure: None,
    })
}

/// `prod_{j=1}^{n} (1 + 2x q^{2j-1} + q^{4j-2})`.
pub fn key_product(x: &Rational, n: usize, order: usize) -> FormalSeries {
    let mut out = FormalSeries::one(order);
    let two_x = x * rat(2);
    for j in 1..=n {
        if 2 * j - 1 > order {
            break;
        }
        out.mul_sparse(&[
            (0, Rational::one()),
            (2 * j - 1, two_x.clone()),
            (4 * j - 2, Rational::one()),
        ]);
    }
    out
}

/// `prod_{j=1}^{n} (1 + 2x q^j + q^{2j})`.
pub fn andrews_product(x: &Rational, n: usize, order: usize) -> FormalSeries {
    let mut out = FormalSeries::one(order);
    let two_x = x * rat(2);
    for j in 1..=n {
        if j > order {
            break;
        }
        out.mul_sparse(&[(0, Rational::one()), (j, two_x.clone()), (2 * j, Rational::one())]);
    }
    out
}

/// The key pair relative to `a = 1` in base `q^2`:
/// `alpha_n = q^{n^2} (V_n(x) + V_{n-1}(x))`,
/// `beta_n = prod_{j<=n} (1 + 2x q^{2j-1} + q^{4j-2}) / (q^2; q^2)_{2n}`.
pub fn key_pair(x: &Rational) -> BaileyPair {
    let xa = x.clone();
    let alpha: SequenceFn = Arc::new(move |n, order| {
        let w = ChebyshevEvaluator::new(xa.clone()).v_plus_prev(n as i64);
        Ok(FormalSeries::monomial(w, n * n, order))
    });
    let xb = x.clone();
    let beta: SequenceFn = Arc::new(move |n, order| {
        let mut out = key_product(&xb, n, order);
        let den = pochhammer_finite_reciprocal(&SignedMonomial::q_pow(2), 2, 2 * n, order)?;
        out = &out * &den;
        Ok(out)
    });
    BaileyPair::new(
        format!("key({x})"),
        SignedMonomial::scalar(rat(1)),
        2,
        alpha,
        beta,
        Arc::new(|n| n * n),
    )
}

/// Andrews' pair at `a = q` in base `q`:
/// `alpha_n = q^{n(n+1)/2} V_n(x) / (1 - q)`,
/// `beta_n = prod_{j<=n} (1 + 2x q^j + q^{2j}) / (q; q)_{2n+1}`.
pub fn andrews_pair(x: &Rational) -> BaileyPair {
    let xa = x.clone();
    let alpha: SequenceFn = Arc::new(move |n, order| {
        let mut out = FormalSeries::monomial(cheb_v(&xa, n as i64), n * (n + 1) / 2, order);
        out.div_one_minus(&Rational::one(), 1)?;
        Ok(out)
    });
    let xb = x.clone();
    let beta: SequenceFn = Arc::new(move |n, order| {
        let num = andrews_product(&xb, n, order);
        let den = pochhammer_finite_reciprocal(&SignedMonomial::q_pow(1), 1, 2 * n + 1, order)?;
        Ok(&num * &den)
    });
    BaileyPair::new(
        format!("andrews({x})"),
        SignedMonomial::q_pow(1),
        1,
        alpha,
        beta,
        Arc::new(|n| n * (n + 1) / 2),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteIdentity {
    /// `prod (1 + 2x q^{2j-1} + q^{4j-2}) = sum q^{j^2} [2n, n-j]_{q^2} v_j(x)`.
    KeyProduct,
    /// `prod (1 + 2x q^j + q^{2j}) = sum q^{j(j+1)/2} V_j(x) [2n+1, n-j]`.
    AndrewsProduct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteReport {
    pub n: usize,
    pub samples: Vec<Rational>,
    pub failure: Option<(Rational, Mismatch)>,
}

impl FiniteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Distinct rationals `0, 1/2, -1/2, 1, -1, 3/2, -3/2, 2, -2, ...`.
///
/// All are half-integers, so `2x` is integral and every Chebyshev weight
/// stays an integer.
pub fn sample_points(count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    out.push(rat(0));
    let mut k = 1;
    while out.len() < count {
        out.push(ratio(k, 2));
        if out.len() < count {
            out.push(ratio(-k, 2));
        }
        k += 1;
    }
    out.truncate(count);
    out
}

/// Highest power of `q` either side of a finite identity can reach.
pub fn finite_identity_degree(which: FiniteIdentity, n: usize) -> usize {
    match which {
        FiniteIdentity::KeyProduct => 2 * n * n,
        FiniteIdentity::AndrewsProduct => n * (n + 1),
    }
}

/// Checks a polynomial-in-`x` identity of `x`-degree `n` at `n + 2` points.
///
/// Exact agreement at more points than the degree proves the identity as a
/// polynomial in `x`; each point is compared coefficientwise to `order`.
pub fn finite_identity_check(which: FiniteIdentity, n: usize, order: usize) -> Result<FiniteReport> {
    let samples = sample_points(n + 2);
    // the Gaussian binomials do not depend on x
    let binomials: Vec<(usize, FormalSeries)> = (0..=n)
        .map(|j| {
            let (shift, bin) = match which {
                FiniteIdentity::KeyProduct => (j * j, qbinomial(2 * n as i64, (n - j) as i64, 2, order)?),
                FiniteIdentity::AndrewsProduct => {
                    (j * (j + 1) / 2, qbinomial(2 * n as i64 + 1, (n - j) as i64, 1, order)?)
                }
            };
            Ok((shift, bin))
        })
        .collect::<Result<_>>()?;
    for x in &samples {
        let lhs = match which {
            FiniteIdentity::KeyProduct => key_product(x, n, order),
            FiniteIdentity::AndrewsProduct => andrews_product(x, n, order),
        };
        let mut ev = ChebyshevEvaluator::new(x.clone());
        let mut rhs = FormalSeries::zero(order);
        for (j, (shift, bin)) in binomials.iter().enumerate() {
            let w = match which {
                FiniteIdentity::KeyProduct => ev.v_plus_prev(j as i64),
                FiniteIdentity::AndrewsProduct => ev.v(j as i64),
            };
            rhs.add_scaled_shifted(bin, &w, *shift);
        }
        if let Agreement::Differs(m) = equal_to_order(&lhs, &rhs, order)? {
            return Ok(FiniteReport {
                n,
                samples: samples.clone(),
                failure: Some((x.clone(), m)),
            });
        }
    }
    Ok(FiniteReport {
        n,
        samples,
        failure: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeakForm {
    /// `sum q^{n^2} beta_n = 1/(q;q)_inf sum q^{n^2} alpha_n`.
    WF1,
    /// `sum q^{n^2} (-q;q^2)_n beta_n(q^2) = (-q;q^2)_inf/(q^2;q^2)_inf sum q^{n^2} alpha_n(q^2)`.
    WF2,
    /// `2 sum (-1)^n (q;q^2)_n beta_n = (q;q^2)_inf/(q^2;q^2)_inf sum (-1)^n alpha_n`.
    WF3,
    /// `sum q^{n(n+1)/2} (-1;q)_n beta_n = (-q;q)_inf/(q;q)_inf sum q^{n(n+1)/2} (-1;q)_n/(-q;q)_n alpha_n`.
    WF4,
}

impl WeakForm {
    pub const ALL: [WeakForm; 4] = [WeakForm::WF1, WeakForm::WF2, WeakForm::WF3, WeakForm::WF4];

    /// The `s` in `q -> q^s` that adapts the form to a pair in base `q^b`.
    ///
    /// WF2 is already stated for pairs in base `q^2`, so it only rescales
    /// by `b / 2` and needs an even base.
    fn scale_for(self, base_power: usize) -> Result<usize> {
        match self {
            WeakForm::WF2 if !base_power.is_multiple_of(2) => Err(Error::UnsupportedBase(base_power)),
            WeakForm::WF2 => Ok(base_power / 2),
            _ => Ok(base_power),
        }
    }

    /// Lower bound on the q-degree of the `n`th weight after `q -> q^s`.
    pub fn weight_min_degree(self, n: usize, s: usize) -> usize {
        match self {
            WeakForm::WF1 | WeakForm::WF2 => s * n * n,
            WeakForm::WF3 => 0,
            WeakForm::WF4 => s * n * (n + 1) / 2,
        }
    }
}

/// First index whose summand provably lies past `order`.
///
/// `min_degree` must be nondecreasing from some point on; the scan stops
/// after it exceeds `order` twice in a row while still increasing.
pub(crate) fn summation_cutoff(order: usize, min_degree: impl Fn(usize) -> usize) -> usize {
    let mut n = 0;
    loop {
        let d = min_degree(n);
        if d > order && min_degree(n + 1) >= d {
            return n;
        }
        n += 1;
    }
}

/// Both sides of a weak form applied to an `a = 1` pair.
pub fn apply_weak_form(wf: WeakForm, p: &BaileyPair, order: usize) -> Result<(FormalSeries, FormalSeries)> {
    if !p.a_param.is_one() {
        return Err(Error::UnsupportedAParameter(p.a_param.to_string()));
    }
    let s = wf.scale_for(p.base_power)?;
    let one = Rational::one();
    let lhs = match wf {
        WeakForm::WF3 => {
            // 2 sum (-1)^n (q^s; q^{2s})_n beta_n, read as an Abel sum
            let half = alternating_abel_sum(0, order, |n| {
                let w = pochhammer_finite(&SignedMonomial::q_pow(s), 2 * s, n as i64, order)?;
                Ok(&w * &p.beta(n, order)?)
            })?;
            half.scale(&rat(2))
        }
        _ => {
            let cutoff = summation_cutoff(order, |n| wf.weight_min_degree(n, s));
            let mut acc = FormalSeries::zero(order);
            for n in 0..cutoff {
                let weight = match wf {
                    WeakForm::WF1 => FormalSeries::one(order),
                    WeakForm::WF2 => pochhammer_finite(&SignedMonomial::neg_q_pow(s), 2 * s, n as i64, order)?,
                    WeakForm::WF4 => pochhammer_finite(&SignedMonomial::scalar(-one.clone()), s, n as i64, order)?,
                    WeakForm::WF3 => unreachable!(),
                };
                let term = &weight * &p.beta(n, order)?;
                acc.add_scaled_shifted(&term, &one, wf.weight_min_degree(n, s));
            }
            acc
        }
    };

    let mut rhs_sum = FormalSeries::zero(order);
    let cutoff = summation_cutoff(order, |n| wf.weight_min_degree(n, s) + p.alpha_min_degree(n));
    for n in 0..cutoff {
        let alpha = p.alpha(n, order)?;
        let (weight, shift, sign) = match wf {
            WeakForm::WF1 | WeakForm::WF2 => (FormalSeries::one(order), s * n * n, one.clone()),
            WeakForm::WF3 => {
                let sign = if n % 2 == 0 { one.clone() } else { -one.clone() };
                (FormalSeries::one(order), 0, sign)
            }
            WeakForm::WF4 => {
                let num = pochhammer_finite(&SignedMonomial::scalar(-one.clone()), s, n as i64, order)?;
                let den = pochhammer_finite_reciprocal(&SignedMonomial::neg_q_pow(s), s, n, order)?;
                (&num * &den, s * n * (n + 1) / 2, one.clone())
            }
        };
        rhs_sum.add_scaled_shifted(&(&weight * &alpha), &sign, shift);
    }
    let prefactor = match wf {
        WeakForm::WF1 => pochhammer_infinite_reciprocal(&SignedMonomial::q_pow(s), s, order)?,
        WeakForm::WF2 => {
            let num = pochhammer_infinite(&SignedMonomial::neg_q_pow(s), 2 * s, order)?;
            &num * &pochhammer_infinite_reciprocal(&SignedMonomial::q_pow(2 * s), 2 * s, order)?
        }
        WeakForm::WF3 => {
            let num = pochhammer_infinite(&SignedMonomial::q_pow(s), 2 * s, order)?;
            &num * &pochhammer_infinite_reciprocal(&SignedMonomial::q_pow(2 * s), 2 * s, order)?
        }
        WeakForm::WF4 => {
            let num = pochhammer_infinite(&SignedMonomial::neg_q_pow(s), s, order)?;
            &num * &pochhammer_infinite_reciprocal(&SignedMonomial::q_pow(s), s, order)?
        }
    };
    Ok((lhs, &prefactor * &rhs_sum))
}

/// Both sides of the `k`-fold chain for an `a = 1` pair:
///
/// ```text
/// sum_{n_k >= ... >= n_1 >= 0} q^{n_1^2 + ... + n_k^2} beta_{n_1}
///     / ((q)_{n_k - n_{k-1}} ... (q)_{n_2 - n_1})
///   = 1/(q)_inf sum_n q^{k n^2} alpha_n
/// ```
///
/// in base `q^b` for a pair in base `q^b`.
pub fn apply_multisum(p: &BaileyPair, k: usize, order: usize) -> Result<(FormalSeries, FormalSeries)> {
    if !p.a_param.is_one() {
        return Err(Error::UnsupportedAParameter(p.a_param.to_string()));
    }
    let b = p.base_power;
    let one = Rational::one();
    let weight = |n: usize| b * n * n;
    let lhs = chain_sum(k, b, order, |n, ord| p.beta(n, ord))?;

    let cutoff = summation_cutoff(order, |n| k * weight(n) + p.alpha_min_degree(n));
    let mut rhs_sum = FormalSeries::zero(order);
    for n in 0..cutoff {
        rhs_sum.add_scaled_shifted(&p.alpha(n, order)?, &one, k * weight(n));
    }
    let prefactor = pochhammer_infinite_reciprocal(&SignedMonomial::q_pow(b), b, order)?;
    Ok((lhs, &prefactor * &rhs_sum))
}

/// The nested sum
///
/// ```text
/// sum_{n_k >= ... >= n_1 >= 0} q^{b(n_1^2 + ... + n_k^2)} first(n_1)
///     / ((q^b; q^b)_{n_k - n_{k-1}} ... (q^b; q^b)_{n_2 - n_1})
/// ```
///
/// `first(n, order)` supplies the `n_1` factor without its `q^{b n_1^2}`.
pub fn chain_sum<F>(k: usize, b: usize, order: usize, mut first: F) -> Result<FormalSeries>
where
    F: FnMut(usize, usize) -> Result<FormalSeries>,
{
    if k == 0 {
        return Err(Error::Invalid("multisum depth must be at least 1".into()));
    }
    let one = Rational::one();
    let weight = |n: usize| b * n * n;
    let top = summation_cutoff(order, weight);
    // level[m]: sum over all chains whose current top index equals m
    let mut level: Vec<FormalSeries> = (0..top)
        .map(|n| Ok(first(n, order - weight(n))?.shift_extend(weight(n), order)))
        .collect::<Result<_>>()?;
    let reciprocals: Vec<FormalSeries> = (0..top)
        .map(|d| pochhammer_finite_reciprocal(&SignedMonomial::q_pow(b), b, d, order))
        .collect::<Result<_>>()?;
    for _ in 1..k {
        let mut next = Vec::with_capacity(top);
        for m in 0..top {
            let w = weight(m);
            let mut inner = FormalSeries::zero(order - w);
            for (n, below) in level.iter().enumerate().take(m + 1) {
                if below.is_zero() {
                    continue;
                }
                inner.add_scaled_shifted(&(&below.truncate(order - w) * &reciprocals[m - n]), &one, 0);
            }
            next.push(inner.shift_extend(w, order));
        }
        level = next;
    }
    let mut out = FormalSeries::zero(order);
    for term in &level {
        out.add_scaled_shifted(term, &one, 0);
    }
    Ok(out)
}

/// Convenience: whether both sides agree to their full order.
pub fn sides_agree(sides: &(FormalSeries, FormalSeries)) -> Result<Agreement> {
    let n = sides.0.order().min(sides.1.order());
    equal_to_order(&sides.0, &sides.1, n)
}

impl fmt::Display for WeakForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::SpecialArg;

    fn special_xs() -> Vec<Rational> {
        let mut xs: Vec<Rational> = SpecialArg::ALL.iter().map(|a| a.value()).collect();
        xs.push(rat(2));
        xs
    }

    #[test]
    fn beta_zero_is_alpha_zero() {
        for x in special_xs() {
            let p = key_pair(&x);
            assert_eq!(p.alpha(0, 20).unwrap(), FormalSeries::one(20));
            assert_eq!(p.beta(0, 20).unwrap(), FormalSeries::one(20));
            let r = check_bailey_pair(&p, 0, 20).unwrap();
            assert!(r.passed());
        }
    }

    #[test]
    fn key_pair_small_terms() {
        let p = key_pair(&ratio(1, 2));
        assert_eq!(p.alpha(1, 5).unwrap(), FormalSeries::monomial(rat(1), 1, 5));
        // beta_1 at x = 0: (1 + q^2) / ((1 - q^2)(1 - q^4))
        let p0 = key_pair(&rat(0));
        let mut want = FormalSeries::from_ints(&[1, 0, 1], 12);
        want.div_one_minus(&rat(1), 2).unwrap();
        want.div_one_minus(&rat(1), 4).unwrap();
        assert_eq!(p0.beta(1, 12).unwrap(), want);
    }

    #[test]
    fn andrews_pair_initial_terms() {
        let p = andrews_pair(&ratio(3, 2));
        let geo = FormalSeries::from_ints(&[1; 11], 10);
        assert_eq!(p.beta(0, 10).unwrap(), geo);
        assert_eq!(p.alpha(0, 10).unwrap(), geo);
    }

    #[test]
    fn pairs_satisfy_definition() {
        for x in special_xs() {
            assert!(
                check_bailey_pair(&key_pair(&x), 8, 60).unwrap().passed(),
                "key pair x = {x}"
            );
            assert!(
                check_bailey_pair(&andrews_pair(&x), 8, 60).unwrap().passed(),
                "andrews pair x = {x}"
            );
        }
    }

    #[test]
    fn corrupted_beta_fails_at_that_index() {
        let p = key_pair(&ratio(1, 2));
        let good = p.clone();
        let bad = p.with_beta(Arc::new(move |n, order| {
            let b = good.beta(n, order)?;
            if n == 1 {
                let mut c = b.clone();
                c.set_coeff(3, b.coeff(3).unwrap() + rat(1));
                return Ok(c);
            }
            Ok(b)
        }));
        let r = check_bailey_pair(&bad, 5, 30).unwrap();
        let f = r.failure.unwrap();
        assert_eq!(f.n, 1);
        assert_eq!(f.mismatch.exponent, 3);
    }

    #[test]
    fn finite_identities_small_n() {
        for n in 0..=6 {
            for which in [FiniteIdentity::KeyProduct, FiniteIdentity::AndrewsProduct] {
                let deg = finite_identity_degree(which, n);
                let r = finite_identity_check(which, n, deg).unwrap();
                assert!(r.passed(), "{which:?} n = {n}: {:?}", r.failure);
                assert_eq!(r.samples.len(), n + 2);
            }
        }
    }

    #[test]
    fn weak_forms_balance_on_key_pair() {
        for x in [rat(0), ratio(1, 2), rat(-1), ratio(3, 2)] {
            let p = key_pair(&x);
            for wf in WeakForm::ALL {
                let sides = apply_weak_form(wf, &p, 60).unwrap();
                assert!(sides_agree(&sides).unwrap().is_equal(), "{wf} x = {x}");
            }
        }
    }

    #[test]
    fn wf4_low_order_expansion() {
        let (lhs, _) = apply_weak_form(WeakForm::WF4, &key_pair(&rat(1)), 4).unwrap();
        assert_eq!(lhs.coeff(0), Some(&rat(1)));
        assert_eq!(lhs.coeff(1), Some(&rat(0)));
        assert_eq!(lhs.coeff(2), Some(&rat(2)));
    }

    #[test]
    fn weak_forms_reject_other_a() {
        let p = andrews_pair(&rat(1));
        assert!(matches!(
            apply_weak_form(WeakForm::WF1, &p, 10),
            Err(Error::UnsupportedAParameter(_))
        ));
    }

    #[test]
    fn multisum_depth_one_is_wf1() {
        let p = key_pair(&ratio(-1, 2));
        assert_eq!(
            apply_multisum(&p, 1, 80).unwrap(),
            apply_weak_form(WeakForm::WF1, &p, 80).unwrap()
        );
        for k in 2..=3 {
            let sides = apply_multisum(&p, k, 60).unwrap();
            assert!(sides_agree(&sides).unwrap().is_equal(), "k = {k}");
        }
    }

    #[test]
    fn sample_points_are_distinct() {
        let pts = sample_points(9);
        assert_eq!(pts[..5], [rat(0), ratio(1, 2), ratio(-1, 2), rat(1), rat(-1)]);
        for i in 0..pts.len() {
            for j in 0..i {
                assert_ne!(pts[i], pts[j]);
            }
        }
    }
}
