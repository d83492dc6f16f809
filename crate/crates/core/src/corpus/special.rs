//! Evaluators for the non-hypergeometric pieces of the corpus: Appell–Lerch
//! sums, residue-class regrouping of cube-root-of-unity weights, Hecke-type
//! double sums, the Heine-derived transform and the Gaussian binomial
//! identity with its triple-product limit.

use num_traits::{One, Zero};

use crate::chebyshev::ChebyshevEvaluator;
use crate::error::{Error, Result};
use crate::qfunctions::{
    jacobi_triple_product, pochhammer_finite_reciprocal, pochhammer_infinite, pochhammer_infinite_reciprocal,
    pow_signed, qbinomial, SignedMonomial,
};
use crate::series::{
    equal_to_order, materialize_terms, multiply_terms, rat, ratio, Agreement, FormalSeries, Rational, Term,
};

/// `1 / (a; q^b)_n`, or the zero series for `n < 0`.
///
/// Sums whose summand carries `1/(q^2;q^2)_{2n-1}` treat the `n = 0` term
/// as absent; this is that convention.
pub fn pochhammer_reciprocal_or_zero(
    a: &SignedMonomial,
    base_power: usize,
    n: i64,
    order: usize,
) -> Result<FormalSeries> {
    if n < 0 {
        return Ok(FormalSeries::zero(order));
    }
    pochhammer_finite_reciprocal(a, base_power, n as usize, order)
}

/// `sum_{n >= start} q^{shift(n)} body(n)` for a convex `shift`.
///
/// `body(n, r)` is built to order `r = order - shift(n)`, so nothing is
/// computed past the truncation.
pub fn q_sum<S, B>(order: usize, start: usize, shift: S, mut body: B) -> Result<FormalSeries>
where
    S: Fn(usize) -> usize,
    B: FnMut(usize, usize) -> Result<FormalSeries>,
{
    let one = Rational::one();
    let mut acc = FormalSeries::zero(order);
    let mut n = start;
    loop {
        let e = shift(n);
        if e > order {
            if shift(n + 1) >= e {
                break;
            }
        } else {
            let t = body(n, order - e)?;
            acc.add_scaled_shifted(&t, &one, e);
        }
        n += 1;
    }
    Ok(acc)
}

/// `sum_{n >= start} coeff(n) q^{exponent(n)}` for a convex exponent.
pub fn monomial_sum<E, C>(order: usize, start: i64, exponent: E, mut coeff: C) -> Result<FormalSeries>
where
    E: Fn(i64) -> i64,
    C: FnMut(i64) -> Rational,
{
    let limit = order as i64;
    let mut terms = Vec::new();
    let mut n = start;
    loop {
        let e = exponent(n);
        if e > limit && exponent(n + 1) >= e {
            break;
        }
        if e <= limit {
            terms.push(Term::new(coeff(n), e));
        }
        n += 1;
    }
    materialize_terms(&terms, order)
}

/// `2 * sum_{n >= 0} (-1)^n c_n` read as an Abel sum, where `c_0 = 1` and
/// `step(n, c)` turns `c_{n-1}` into `c_n` in place.
pub fn doubled_alternating_sum<F>(order: usize, mut step: F) -> Result<FormalSeries>
where
    F: FnMut(usize, &mut FormalSeries) -> Result<()>,
{
    let mut current = FormalSeries::one(order);
    let half = crate::series::alternating_abel_sum(0, order, |n| {
        if n > 0 {
            step(n, &mut current)?;
        }
        Ok(current.clone())
    })?;
    Ok(half.scale(&rat(2)))
}

/// Bilateral Appell–Lerch sum
///
/// ```text
/// outer_scale * sum_{n in Z} (-1)^{l n} q^{beta l n(n+1)/2} b^n / (1 - a q^{beta n})
/// ```
///
/// with `b = c q^e` allowed a negative `e`, optionally restricted to
/// `n = class (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppellLerchSpec {
    pub level: u32,
    pub base_power: usize,
    pub a: SignedMonomial,
    pub b: Term,
    pub residue: Option<(i64, i64)>,
    pub outer_scale: Rational,
}

impl AppellLerchSpec {
    pub fn new(level: u32, base_power: usize, a: SignedMonomial, b: Term) -> Self {
        Self {
            level,
            base_power,
            a,
            b,
            residue: None,
            outer_scale: Rational::one(),
        }
    }

    pub fn restricted(mut self, modulus: i64, class: i64) -> Self {
        self.residue = Some((modulus, class.rem_euclid(modulus)));
        self
    }

    pub fn scaled(mut self, c: Rational) -> Self {
        self.outer_scale = c;
        self
    }

    fn includes(&self, n: i64) -> bool {
        self.residue.is_none_or(|(m, r)| n.rem_euclid(m) == r)
    }

    /// Numerator coefficient and exponent of term `n` after the rewrite that
    /// clears a negative denominator exponent, with the geometric ratio and
    /// step of the remaining denominator.
    fn normalized(&self, n: i64) -> (Rational, i64, Rational, i64) {
        let level = self.level as i64;
        let beta = self.base_power as i64;
        let sign = if (level * n).rem_euclid(2) == 0 {
            rat(1)
        } else {
            rat(-1)
        };
        let mut coeff = sign * pow_signed(&self.b.coeff, n);
        let mut exponent = beta * level * n * (n + 1) / 2 + self.b.exponent * n;
        let k = self.a.exponent as i64 + beta * n;
        if k < 0 && !self.a.coeff.is_zero() {
            // 1/(1 - a q^k) = -a^{-1} q^{-k} / (1 - a^{-1} q^{-k})
            let inv = self.a.coeff.recip();
            coeff = -(coeff * &inv);
            exponent -= k;
            (coeff, exponent, inv, -k)
        } else {
            (coeff, exponent, self.a.coeff.clone(), k)
        }
    }

    /// Smallest q-exponent term `n` can contribute.
    pub fn min_degree(&self, n: i64) -> i64 {
        self.normalized(n).1
    }

    /// Term `n` as a series.
    pub fn term(&self, n: i64, order: usize) -> Result<FormalSeries> {
        let (coeff, exponent, ratio, step) = self.normalized(n);
        if exponent < 0 {
            return Err(Error::NegativeExponentTerm { exponent });
        }
        if exponent as usize > order {
            return Ok(FormalSeries::zero(order));
        }
        let mut out = FormalSeries::monomial(coeff, exponent as usize, order);
        out.div_one_minus(&ratio, step as usize)?;
        Ok(out)
    }
}

pub fn appell_lerch_eval(spec: &AppellLerchSpec, order: usize) -> Result<FormalSeries> {
    let limit = order as i64;
    let mut acc = FormalSeries::zero(order);
    let one = Rational::one();
    for (start, dir) in [(0i64, 1i64), (-1, -1)] {
        let mut n = start;
        loop {
            let d = spec.min_degree(n);
            if d > limit && spec.min_degree(n + dir) >= d {
                break;
            }
            if spec.includes(n) && d <= limit {
                acc.add_scaled_shifted(&spec.term(n, order)?, &one, 0);
            }
            n += dir;
        }
    }
    Ok(acc.scale(&spec.outer_scale))
}

/// Real value of `sum_n w^n f(n)` for a primitive cube root of unity `w`,
/// given the three residue-class sums `S_r = sum_{n = r mod 3} f(n)`.
///
/// The imaginary part is proportional to `S_1 - S_2`, so those must agree.
pub fn cyclotomic_regroup(s0: &FormalSeries, s1: &FormalSeries, s2: &FormalSeries) -> Result<FormalSeries> {
    let n = s0.order().min(s1.order()).min(s2.order());
    if let Agreement::Differs(_) = equal_to_order(s1, s2, n)? {
        return Err(Error::NonRealSum);
    }
    let pair = s1 + s2;
    Ok(s0 - &pair.scale(&ratio(1, 2)))
}

/// `(nn n^2 + nj n j + jj j^2 + n_lin n + j_lin j) / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticForm {
    pub nn: i64,
    pub nj: i64,
    pub jj: i64,
    pub n: i64,
    pub j: i64,
    pub denominator: i64,
}

impl QuadraticForm {
    pub const fn new(nn: i64, nj: i64, jj: i64, n: i64, j: i64, denominator: i64) -> Self {
        Self {
            nn,
            nj,
            jj,
            n,
            j,
            denominator,
        }
    }

    pub fn eval(&self, n: i64, j: i64) -> Result<i64> {
        let num = self.nn * n * n + self.nj * n * j + self.jj * j * j + self.n * n + self.j * j;
        if num % self.denominator != 0 {
            return Err(Error::Invalid(format!(
                "exponent {num}/{} at (n, j) = ({n}, {j}) is not an integer",
                self.denominator
            )));
        }
        Ok(num / self.denominator)
    }
}

/// `scale * floor(n / divisor)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FloorBound {
    pub scale: i64,
    pub divisor: i64,
}

impl FloorBound {
    pub const ZERO: FloorBound = FloorBound { scale: 0, divisor: 1 };

    pub const fn new(scale: i64, divisor: i64) -> Self {
        Self { scale, divisor }
    }

    pub fn at(&self, n: i64) -> i64 {
        self.scale * n.div_euclid(self.divisor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerWeight {
    One,
    /// `V_j(x) + V_{j-1}(x)`.
    ChebPlusPrev,
    /// Keep only `j = class (mod modulus)`.
    ResidueClass {
        modulus: i64,
        class: i64,
    },
}

/// `sum_{n >= n_start} sum_{j = lo(n)}^{hi(n)} (-1)^{H} w_j q^{Q(n, j)} (1 - q^{tail})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeckeSpec {
    pub exponent: QuadraticForm,
    pub n_sign: bool,
    pub j_sign: bool,
    pub n_start: i64,
    pub j_lower: FloorBound,
    pub j_upper: FloorBound,
    pub weight: InnerWeight,
    /// `(alpha, beta)` for an extra factor `1 - q^{alpha n + beta}`.
    pub tail: Option<(i64, i64)>,
}

impl HeckeSpec {
    pub fn j_bounds(&self, n: i64) -> (i64, i64) {
        (self.j_lower.at(n), self.j_upper.at(n))
    }

    pub fn with_weight(mut self, weight: InnerWeight) -> Self {
        self.weight = weight;
        self
    }

    fn min_exponent(&self, n: i64) -> Result<i64> {
        let (lo, hi) = self.j_bounds(n);
        let mut best = i64::MAX;
        for j in lo..=hi {
            best = best.min(self.exponent.eval(n, j)?);
        }
        Ok(best)
    }

    /// Every term of the inner sum at `n`, signs and weights included.
    pub fn inner_terms(&self, n: i64, cheb: Option<&mut ChebyshevEvaluator>) -> Result<Vec<Term>> {
        let (lo, hi) = self.j_bounds(n);
        let mut cheb = cheb;
        let mut out = Vec::new();
        for j in lo..=hi {
            let w = match self.weight {
                InnerWeight::One => Rational::one(),
                InnerWeight::ChebPlusPrev => cheb.as_deref_mut().ok_or(Error::MissingX)?.v_plus_prev(j),
                InnerWeight::ResidueClass { modulus, class } => {
                    if j.rem_euclid(modulus) != class.rem_euclid(modulus) {
                        continue;
                    }
                    Rational::one()
                }
            };
            let parity = (if self.n_sign { n } else { 0 }) + (if self.j_sign { j } else { 0 });
            let c = if parity.rem_euclid(2) == 0 { w } else { -w };
            let e = self.exponent.eval(n, j)?;
            if let Some((alpha, beta)) = self.tail {
                out.push(Term::new(-c.clone(), e + alpha * n + beta));
            }
            out.push(Term::new(c, e));
        }
        Ok(out)
    }
}

/// Truncated double sum; `x` feeds [`InnerWeight::ChebPlusPrev`].
pub fn hecke_eval(spec: &HeckeSpec, x: Option<&Rational>, order: usize) -> Result<FormalSeries> {
    let mut cheb = x.map(|x| ChebyshevEvaluator::new(x.clone()));
    let limit = order as i64;
    let mut terms = Vec::new();
    let mut n = spec.n_start;
    loop {
        let d = spec.min_exponent(n)?;
        if d > limit && spec.min_exponent(n + 1)? >= d {
            break;
        }
        terms.extend(spec.inner_terms(n, cheb.as_mut())?);
        n += 1;
    }
    materialize_terms(&terms, order)
}

/// `(q^e; q)_n` as a finite list of terms; `e` may be negative.
fn laurent_pochhammer(e: i64, n: usize) -> Vec<Term> {
    let mut acc = vec![Term::new(Rational::one(), 0)];
    for j in 0..n as i64 {
        acc = multiply_terms(&acc, &[Term::new(Rational::one(), 0), Term::new(rat(-1), e + j)]);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Both sides of
///
/// ```text
/// sum q^{n^2 + alpha n} / ((q)_n (q)_{n+beta})
///   = 1/(q)_inf sum (q^{alpha-beta}; q)_n (-1)^n q^{beta n + n(n+1)/2} / (q)_n
/// ```
pub fn heine_transform_sides(alpha: usize, beta: usize, order: usize) -> Result<(FormalSeries, FormalSeries)> {
    let q = SignedMonomial::q_pow(1);
    let lhs = q_sum(
        order,
        0,
        |n| n * n + alpha * n,
        |n, r| {
            let a = pochhammer_finite_reciprocal(&q, 1, n, r)?;
            Ok(&a * &pochhammer_finite_reciprocal(&q, 1, n + beta, r)?)
        },
    )?;

    let (a, b) = (alpha as i64, beta as i64);
    let lower = |n: i64| (n * n + a * n).min(n * (n + 1) / 2 + b * n);
    let mut rhs_sum = FormalSeries::zero(order);
    let one = Rational::one();
    let mut n = 0i64;
    while lower(n) <= order as i64 || lower(n + 1) < lower(n) {
        let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
        let lead = Term::new(sign, b * n + n * (n + 1) / 2);
        let terms = multiply_terms(&laurent_pochhammer(a - b, n as usize), &[lead]);
        if !terms.is_empty() {
            let poly = materialize_terms(&terms, order)?;
            rhs_sum.add_scaled_shifted(
                &(&poly * &pochhammer_finite_reciprocal(&q, 1, n as usize, order)?),
                &one,
                0,
            );
        }
        n += 1;
    }
    let rhs = &pochhammer_infinite_reciprocal(&q, 1, order)? * &rhs_sum;
    Ok((lhs, rhs))
}

/// `a(q)` with every exponent doubled, as a series of order `order`.
fn stretch(a: &FormalSeries, order: usize) -> FormalSeries {
    let mut out = FormalSeries::zero(order);
    for (i, c) in a.coeffs().iter().enumerate() {
        if 2 * i > order {
            break;
        }
        out.set_coeff(2 * i, c.clone());
    }
    out
}

/// Exact polynomial sides of
///
/// ```text
/// sum_{j=-n-1}^{n} q^{2j^2+j} [2n+1, n-j]_{q^2}^2 = (1 + q^{2n+1}) [4n+1, 2n]
/// ```
///
/// Both have degree `(2n+1)^2`.
pub fn qbinom_identity_sides(n: usize) -> Result<(FormalSeries, FormalSeries)> {
    if let Some(sides) = machine::qbinom_identity_sides(n) {
        return Ok(sides);
    }
    let top = (2 * n + 1) * (2 * n + 1);
    let one = Rational::one();
    let mut lhs = FormalSeries::zero(top);
    // j and -1-j share a binomial, so each square is formed once
    for j in 0..=n {
        let d = (n - j) * (n + j + 1);
        let bin = qbinomial(2 * n as i64 + 1, (n - j) as i64, 1, 2 * d)?;
        let square = stretch(&(&bin * &bin), top);
        lhs.add_scaled_shifted(&square, &one, 2 * j * j + j);
        lhs.add_scaled_shifted(&square, &one, 2 * j * j + 3 * j + 1);
    }
    let mut rhs = qbinomial(4 * n as i64 + 1, 2 * n as i64, 1, top)?;
    rhs.mul_sparse(&[(0, one.clone()), (2 * n + 1, one)]);
    Ok((lhs, rhs))
}

/// The same polynomials in checked `i128` arithmetic; `None` on overflow.
mod machine {
    use super::{FormalSeries, Rational};

    /// `[m, k]` in base `q`, by multiplying in `1 - q^{m-k+i}` and dividing
    /// out `1 - q^i`; every intermediate is again a Gaussian polynomial.
    fn gaussian(m: usize, k: usize) -> Option<Vec<i128>> {
        let mut p = vec![1i128];
        for i in 1..=k {
            let a = m - k + i;
            let mut next = vec![0i128; p.len() + a];
            for (t, c) in p.iter().enumerate() {
                next[t] = next[t].checked_add(*c)?;
                next[t + a] = next[t + a].checked_sub(*c)?;
            }
            let len = next.len() - i;
            let mut quotient = vec![0i128; len];
            for t in 0..len {
                let carry = if t >= i { quotient[t - i] } else { 0 };
                quotient[t] = next[t].checked_add(carry)?;
            }
            p = quotient;
        }
        Some(p)
    }

    fn square_stretched(p: &[i128], out: &mut [i128], shifts: [usize; 2]) -> Option<()> {
        let mut sq = vec![0i128; 2 * p.len() - 1];
        for (i, a) in p.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in p.iter().enumerate() {
                sq[i + j] = sq[i + j].checked_add(a.checked_mul(*b)?)?;
            }
        }
        for shift in shifts {
            for (i, c) in sq.iter().enumerate() {
                let slot = out.get_mut(shift + 2 * i)?;
                *slot = slot.checked_add(*c)?;
            }
        }
        Some(())
    }

    fn to_series(v: Vec<i128>) -> FormalSeries {
        FormalSeries::from_coeffs(v.into_iter().map(|c| Rational::from_integer(c.into())).collect())
    }

    pub(super) fn qbinom_identity_sides(n: usize) -> Option<(FormalSeries, FormalSeries)> {
        let top = (2 * n + 1) * (2 * n + 1);
        let mut lhs = vec![0i128; top + 1];
        for j in 0..=n {
            let bin = gaussian(2 * n + 1, n - j)?;
            square_stretched(&bin, &mut lhs, [2 * j * j + j, 2 * j * j + 3 * j + 1])?;
        }
        let bin = gaussian(4 * n + 1, 2 * n)?;
        let mut rhs = vec![0i128; top + 1];
        for (i, c) in bin.iter().enumerate() {
            rhs[i] = rhs[i].checked_add(*c)?;
            rhs[i + 2 * n + 1] = rhs[i + 2 * n + 1].checked_add(*c)?;
        }
        Some((to_series(lhs), to_series(rhs)))
    }

}

pub fn qbinom_identity_check(n: usize) -> Result<Agreement> {
    let (lhs, rhs) = qbinom_identity_sides(n)?;
    equal_to_order(&lhs, &rhs, lhs.order())
}

/// `(q^2;q^2)_inf^2` times the left side at index `n = order`, against
/// `(-q, -q^3, q^4; q^4)_inf`.
pub fn qbinom_limit_sides(order: usize) -> Result<(FormalSeries, FormalSeries)> {
    let n = order as i64;
    let one = Rational::one();
    let mut sum = FormalSeries::zero(order);
    for j in -n - 1..=n {
        let e = 2 * j * j + j;
        if e > order as i64 {
            continue;
        }
        let bin = qbinomial(2 * n + 1, n - j, 2, order)?;
        sum.add_scaled_shifted(&(&bin * &bin), &one, e as usize);
    }
    let norm = pochhammer_infinite(&SignedMonomial::q_pow(2), 2, order)?;
    let lhs = &(&norm * &norm) * &sum;
    let rhs = jacobi_triple_product(&SignedMonomial::neg_q_pow(1), 4, order)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfunctions::pochhammer_infinite_multi;

    fn mono(c: i64, e: usize) -> SignedMonomial {
        SignedMonomial::new(rat(c), e)
    }

    fn mock_spec() -> AppellLerchSpec {
        AppellLerchSpec::new(2, 2, mono(-1, 0), Term::new(rat(1), -1))
    }

    #[test]
    fn or_zero_convention() {
        assert!(pochhammer_reciprocal_or_zero(&mono(1, 2), 2, -1, 10).unwrap().is_zero());
        let one_factor = pochhammer_reciprocal_or_zero(&mono(1, 2), 2, 1, 6).unwrap();
        assert_eq!(one_factor, FormalSeries::from_ints(&[1, 0, 1, 0, 1, 0, 1], 6));
    }

    #[test]
    fn appell_lerch_central_term_is_half() {
        let t = mock_spec().term(0, 10).unwrap();
        assert_eq!(t, FormalSeries::constant(ratio(1, 2), 10));
    }

    #[test]
    fn appell_lerch_negative_terms_mirror_positive() {
        let spec = mock_spec();
        for m in 1..=4 {
            assert_eq!(spec.term(-m, 20).unwrap(), spec.term(m, 20).unwrap(), "m = {m}");
        }
        // q^3/(1+q^2) by hand
        let mut want = FormalSeries::monomial(rat(1), 3, 20);
        want.div_one_minus(&rat(-1), 2).unwrap();
        assert_eq!(spec.term(1, 20).unwrap(), want);
    }

    #[test]
    fn appell_lerch_singular_denominator() {
        let spec = AppellLerchSpec::new(1, 1, mono(1, 0), Term::new(rat(1), 0));
        assert_eq!(spec.term(0, 5), Err(Error::SingularTerm));
    }

    #[test]
    fn appell_lerch_residue_classes_partition_the_sum() {
        let whole = appell_lerch_eval(&mock_spec(), 60).unwrap();
        let mut parts = FormalSeries::zero(60);
        for r in 0..3 {
            parts = &parts + &appell_lerch_eval(&mock_spec().restricted(3, r), 60).unwrap();
        }
        assert_eq!(whole, parts);
    }

    #[test]
    fn regroup_values() {
        let s = FormalSeries::from_ints(&[1, 2, 3], 2);
        assert!(cyclotomic_regroup(&s, &s, &s).unwrap().is_zero());
        let t = FormalSeries::from_ints(&[1, 2, 4], 2);
        assert_eq!(cyclotomic_regroup(&s, &s, &t), Err(Error::NonRealSum));
        let zero = FormalSeries::zero(2);
        assert_eq!(cyclotomic_regroup(&s, &zero, &zero).unwrap(), s);
    }

    #[test]
    fn quadratic_form_rejects_fractions() {
        let f = QuadraticForm::new(1, 0, 0, 1, 0, 2);
        assert_eq!(f.eval(3, 0).unwrap(), 6);
        let g = QuadraticForm::new(1, 0, 0, 0, 0, 2);
        assert!(g.eval(1, 0).is_err());
    }

    #[test]
    fn hecke_inner_sum_by_hand() {
        // n^2 + n - j^2 with (-1)^n and j in 0..=floor(n/2), weighted by v_j(x)
        let spec = HeckeSpec {
            exponent: QuadraticForm::new(1, 0, -1, 1, 0, 1),
            n_sign: true,
            j_sign: false,
            n_start: 0,
            j_lower: FloorBound::ZERO,
            j_upper: FloorBound::new(1, 2),
            weight: InnerWeight::ChebPlusPrev,
            tail: None,
        };
        let x = ratio(1, 3);
        let mut ev = ChebyshevEvaluator::new(x.clone());
        let terms = spec.inner_terms(4, Some(&mut ev)).unwrap();
        let v1 = rat(2) * &x;
        let v2 = rat(4) * &x * &x - rat(2);
        assert_eq!(terms, vec![Term::new(rat(1), 20), Term::new(v1, 19), Term::new(v2, 16)]);
        assert_eq!(spec.inner_terms(1, None), Err(Error::MissingX));
        assert_eq!(hecke_eval(&spec, None, 10), Err(Error::MissingX));
    }

    #[test]
    fn heine_small_cases() {
        for (a, b) in [(0, 0), (1, 0), (0, 3), (4, 1)] {
            let (l, r) = heine_transform_sides(a, b, 60).unwrap();
            assert_eq!(l, r, "alpha = {a}, beta = {b}");
        }
        let (l, _) = heine_transform_sides(0, 0, 0).unwrap();
        assert_eq!(l.coeff(0), Some(&rat(1)));
    }

    #[test]
    fn laurent_pochhammer_vanishes_through_zero() {
        assert!(laurent_pochhammer(-2, 3).is_empty());
        assert_eq!(
            laurent_pochhammer(-1, 1),
            vec![Term::new(rat(-1), -1), Term::new(rat(1), 0)]
        );
    }

    #[test]
    fn qbinom_identity_small() {
        let (l, r) = qbinom_identity_sides(0).unwrap();
        assert_eq!(l, FormalSeries::from_ints(&[1, 1], 1));
        assert_eq!(r, l);
        for n in 1..=6 {
            assert!(qbinom_identity_check(n).unwrap().is_equal(), "n = {n}");
        }
    }

    #[test]
    fn machine_path_matches_rational_path() {
        for n in 0..=4 {
            let (l, r) = machine::qbinom_identity_sides(n).unwrap();
            let top = (2 * n + 1) * (2 * n + 1);
            let mut rhs = qbinomial(4 * n as i64 + 1, 2 * n as i64, 1, top).unwrap();
            rhs.mul_sparse(&[(0, rat(1)), (2 * n + 1, rat(1))]);
            assert_eq!(r, rhs);
            assert_eq!(l, r);
        }
    }

    #[test]
    fn qbinom_limit() {
        let (l, r) = qbinom_limit_sides(60).unwrap();
        assert_eq!(l, r);
        let direct = pochhammer_infinite_multi(&[mono(-1, 1), mono(-1, 3), mono(1, 4)], 4, 60).unwrap();
        assert_eq!(r, direct);
    }
}
