//! q-Pochhammer symbols, Gaussian binomials, the Jacobi triple product and a
//! partition-counting oracle.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{materialize_terms, rat, FormalSeries, Rational, Term};

/// `coeff * q^exponent` with a nonnegative exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMonomial {
    pub coeff: Rational,
    pub exponent: usize,
}

impl SignedMonomial {
    pub fn new(coeff: Rational, exponent: usize) -> Self {
        Self { coeff, exponent }
    }

    /// `q^exponent`.
    pub fn q_pow(exponent: usize) -> Self {
        Self::new(Rational::one(), exponent)
    }

    /// `-q^exponent`.
    pub fn neg_q_pow(exponent: usize) -> Self {
        Self::new(-Rational::one(), exponent)
    }

    pub fn scalar(c: Rational) -> Self {
        Self::new(c, 0)
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.coeff.is_one()
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => write!(f, "{}", self.coeff),
            e if self.coeff.is_one() => write!(f, "q^{e}"),
            e if self.coeff == -Rational::one() => write!(f, "-q^{e}"),
            e => write!(f, "{}*q^{e}", self.coeff),
        }
    }
}

/// `(a; q^b)_n = prod_{j<n} (1 - a q^{bj})`.
///
/// `n = -1` follows the usual convention `(a; q^b)_{-1} = 1/(1 - a q^{-b})`,
/// which is only defined here when `a` carries at least `q^b`; the
/// vanishing-summand convention some sums use at that index lives with
/// those sums, see [`crate::corpus::pochhammer_reciprocal_or_zero`].
pub fn pochhammer_finite(a: &SignedMonomial, base_power: usize, n: i64, order: usize) -> Result<FormalSeries> {
    check_base(base_power)?;
    if n < -1 {
        return Err(Error::NegativeLength(n));
    }
    let mut out = FormalSeries::one(order);
    if n == -1 {
        if a.exponent < base_power {
            return Err(Error::MonomialOutOfRange(format!(
                "({a}; q^{base_power})_(-1) needs a Laurent factor"
            )));
        }
        out.div_one_minus(&a.coeff, a.exponent - base_power)?;
        return Ok(out);
    }
    for j in 0..n as usize {
        let e = a.exponent + base_power * j;
        if e > order {
            break;
        }
        out.mul_one_minus(&a.coeff, e);
    }
    Ok(out)
}

/// `1 / (a; q^b)_n` for `n >= 0`, built by repeated geometric division.
pub fn pochhammer_finite_reciprocal(
    a: &SignedMonomial,
    base_power: usize,
    n: usize,
    order: usize,
) -> Result<FormalSeries> {
    check_base(base_power)?;
    let mut out = FormalSeries::one(order);
    for j in 0..n {
        let e = a.exponent + base_power * j;
        if e > order {
            break;
        }
        out.div_one_minus(&a.coeff, e)?;
    }
    Ok(out)
}

/// `(a_1, ..., a_m; q^b)_n`.
pub fn pochhammer_multi(params: &[SignedMonomial], base_power: usize, n: i64, order: usize) -> Result<FormalSeries> {
    let mut out = FormalSeries::one(order);
    for a in params {
        out = &out * &pochhammer_finite(a, base_power, n, order)?;
    }
    Ok(out)
}

/// `(a; q^b)_inf` truncated to `order`; `(1; q^b)_inf` is the zero series.
pub fn pochhammer_infinite(a: &SignedMonomial, base_power: usize, order: usize) -> Result<FormalSeries> {
    if base_power == 0 {
        return Err(Error::DivergentProduct(format!(
            "({a}; 1)_inf repeats one factor forever"
        )));
    }
    let mut out = FormalSeries::one(order);
    let mut e = a.exponent;
    while e <= order {
        out.mul_one_minus(&a.coeff, e);
        e += base_power;
    }
    Ok(out)
}

/// `(a_1, ..., a_m; q^b)_inf`.
pub fn pochhammer_infinite_multi(params: &[SignedMonomial], base_power: usize, order: usize) -> Result<FormalSeries> {
    let mut out = FormalSeries::one(order);
    for a in params {
        out = &out * &pochhammer_infinite(a, base_power, order)?;
    }
    Ok(out)
}

/// `1 / (a; q^b)_inf`; fails when the constant factor `1 - a` vanishes.
pub fn pochhammer_infinite_reciprocal(a: &SignedMonomial, base_power: usize, order: usize) -> Result<FormalSeries> {
    if base_power == 0 {
        return Err(Error::DivergentProduct(format!(
            "({a}; 1)_inf repeats one factor forever"
        )));
    }
    let mut out = FormalSeries::one(order);
    let mut e = a.exponent;
    while e <= order {
        out.div_one_minus(&a.coeff, e)?;
        e += base_power;
    }
    Ok(out)
}

/// Gaussian binomial `[n, k]` in base `q^b`; zero outside `0 <= k <= n`.
pub fn qbinomial(n: i64, k: i64, base_power: usize, order: usize) -> Result<FormalSeries> {
    check_base(base_power)?;
    if k < 0 || k > n {
        return Ok(FormalSeries::zero(order));
    }
    let k = k.min(n - k) as usize;
    let n = n as usize;
    let mut out = FormalSeries::one(order);
    let one = Rational::one();
    for i in 1..=k {
        let top = base_power * (n - k + i);
        if top <= order {
            out.mul_one_minus(&one, top);
        }
        let bottom = base_power * i;
        if bottom <= order {
            out.div_one_minus(&one, bottom)?;
        }
    }
    Ok(out)
}

/// Bilateral sum `sum_{n in Z} (-1)^n q^{b n(n-1)/2} z^n`.
pub fn jacobi_triple_sum(z: &SignedMonomial, base_power: usize, order: usize) -> Result<FormalSeries> {
    check_base(base_power)?;
    let b = base_power as i64;
    let e = z.exponent as i64;
    let exponent = |n: i64| b * n * (n - 1) / 2 + e * n;
    let mut terms = Vec::new();
    let mut push = |n: i64| {
        let sign = if n.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
        let c = sign * pow_signed(&z.coeff, n);
        terms.push(Term::new(c, exponent(n)));
    };
    // the exponent is a convex quadratic in n; walk out from its vertex
    let vertex = (b - 2 * e).div_euclid(2 * b);
    let limit = order as i64;
    let mut n = vertex;
    while n < vertex + 2 || exponent(n) <= limit {
        push(n);
        n += 1;
    }
    let mut n = vertex - 1;
    while n > vertex - 3 || exponent(n) <= limit {
        push(n);
        n -= 1;
    }
    materialize_terms(&terms, order)
}

/// `(q^b, z, q^b/z; q^b)_inf` for `z = c q^e` with `1 <= e <= b`.
pub fn jacobi_triple_product(z: &SignedMonomial, base_power: usize, order: usize) -> Result<FormalSeries> {
    check_base(base_power)?;
    if z.exponent < 1 || z.exponent > base_power || z.coeff.is_zero() {
        return Err(Error::MonomialOutOfRange(format!("z = {z} with base q^{base_power}")));
    }
    let partner = SignedMonomial::new(z.coeff.recip(), base_power - z.exponent);
    pochhammer_infinite_multi(
        &[SignedMonomial::q_pow(base_power), z.clone(), partner],
        base_power,
        order,
    )
}

/// Partition numbers `p(0..=order)` by coin-change dynamic programming.
///
/// Never touches series division, so it can check [`FormalSeries::invert`].
pub fn partition_oracle(order: usize) -> FormalSeries {
    let mut ways = vec![BigInt::zero(); order + 1];
    ways[0] = BigInt::one();
    for part in 1..=order {
        for total in part..=order {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    FormalSeries::from_coeffs(ways.into_iter().map(Rational::from_integer).collect())
}

fn check_base(base_power: usize) -> Result<()> {
    if base_power == 0 {
        return Err(Error::Invalid("base power must be at least 1".into()));
    }
    Ok(())
}

pub(crate) fn pow_signed(c: &Rational, n: i64) -> Rational {
    let p = num_traits::pow(c.clone(), n.unsigned_abs() as usize);
    if n < 0 {
        p.recip()
    } else {
        p
    }
}
