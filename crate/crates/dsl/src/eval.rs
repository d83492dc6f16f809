//! Evaluation of expressions to truncated series.

use num_traits::{One, Signed, ToPrimitive, Zero};
use qrr_core::chebyshev::{cheb_v, fibonacci_or_zero, lucas};
use qrr_core::corpus::{appell_lerch_eval, cyclotomic_regroup, named_hecke_eval, AppellLerchSpec};
use qrr_core::qfunctions::{
    pochhammer_finite, pochhammer_finite_reciprocal, pochhammer_infinite, pochhammer_infinite_reciprocal, qbinomial,
};
use qrr_core::series::{alternating_abel_sum, series_invert, substitute_negate};
use qrr_core::{Error, FormalSeries, Rational, SignedMonomial, Term};

use crate::ast::{AppellLerch, Bound, Expr, SeriesOp};
use crate::error::Result;

type CoreResult<T> = qrr_core::Result<T>;

/// Factors with at most this many nonzero terms are multiplied in sparsely.
const SPARSE_TERMS: usize = 8;

/// `e` to order `order`; `x` is required iff `e` mentions it.
pub fn eval(e: &Expr, order: usize, x: Option<&Rational>) -> Result<FormalSeries> {
    eval_bound(e, order, x, &[])
}

/// As [`eval`], with some indices already bound.
pub fn eval_bound(e: &Expr, order: usize, x: Option<&Rational>, bindings: &[(&str, i64)]) -> Result<FormalSeries> {
    Ok(Evaluator::new(order, x, bindings).series(e, order)?)
}

/// A `q`-free expression as a number.
pub fn eval_number(e: &Expr, order: usize, x: Option<&Rational>, bindings: &[(&str, i64)]) -> Result<Rational> {
    Ok(Evaluator::new(order, x, bindings).scalar(e)?)
}

struct Evaluator {
    x: Option<Rational>,
    top: usize,
    env: Vec<(String, i64)>,
}

struct Factor<'e> {
    expr: &'e Expr,
    inverse: bool,
    power: u64,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn rational_pow(base: &Rational, k: i64) -> CoreResult<Rational> {
    let p = num_traits::pow(base.clone(), k.unsigned_abs() as usize);
    if k >= 0 {
        Ok(p)
    } else if p.is_zero() {
        Err(invalid("zero raised to a negative power"))
    } else {
        Ok(p.recip())
    }
}

fn mentions(e: &Expr, var: &str) -> bool {
    match e {
        Expr::Var(v) => v == var,
        Expr::Int(_) | Expr::Rat(_) | Expr::X | Expr::Order | Expr::Hecke(_) => false,
        Expr::QPower(a)
        | Expr::Neg(a)
        | Expr::Fib(a)
        | Expr::Luc(a)
        | Expr::Invert(a)
        | Expr::NegateQ(a)
        | Expr::Floor(a)
        | Expr::Isqrt(a) => mentions(a, var),
        Expr::Add(a, b)
        | Expr::Sub(a, b)
        | Expr::Mul(a, b)
        | Expr::Div(a, b)
        | Expr::Pow(a, b)
        | Expr::SubstituteQ(a, b)
        | Expr::ChebV { x: a, n: b } => mentions(a, var) || mentions(b, var),
        Expr::Poch { a, base, len } => {
            mentions(a, var) || mentions(base, var) || len.as_ref().is_some_and(|n| mentions(n, var))
        }
        Expr::QBinom { n, k, base } => mentions(n, var) || mentions(k, var) || mentions(base, var),
        Expr::Regroup(a, b, c) => mentions(a, var) || mentions(b, var) || mentions(c, var),
        Expr::Series { lo, hi, body, .. } => {
            mentions(lo, var) || matches!(hi, Bound::Upto(h) if mentions(h, var)) || mentions(body, var)
        }
        Expr::AppellLerch(al) => {
            [&al.level, &al.base, &al.a, &al.b].iter().any(|e| mentions(e, var))
                || al
                    .residue
                    .as_ref()
                    .is_some_and(|(m, r)| mentions(m, var) || mentions(r, var))
        }
    }
}

/// Polynomial in one variable, lowest degree first.
type Poly = Vec<Rational>;

fn poly_add(a: &Poly, b: &Poly, sign: &Rational) -> Poly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c * sign;
    }
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl Evaluator {
    fn new(order: usize, x: Option<&Rational>, bindings: &[(&str, i64)]) -> Self {
        Self {
            x: x.cloned(),
            top: order,
            env: bindings.iter().map(|(v, n)| (v.to_string(), *n)).collect(),
        }
    }

    fn lookup(&self, var: &str) -> CoreResult<i64> {
        self.env
            .iter()
            .rev()
            .find(|(v, _)| v == var)
            .map(|(_, n)| *n)
            .ok_or_else(|| invalid(format!("unbound index `{var}`")))
    }

    // -- numbers ----------------------------------------------------------

    fn scalar(&mut self, e: &Expr) -> CoreResult<Rational> {
        Ok(match e {
            Expr::Int(n) => Rational::from_integer(n.clone()),
            Expr::Rat(r) => r.clone(),
            Expr::X => self.x.clone().ok_or(Error::MissingX)?,
            Expr::Order => Rational::from_integer(self.top.into()),
            Expr::Var(v) => Rational::from_integer(self.lookup(v)?.into()),
            Expr::Neg(a) => -self.scalar(a)?,
            Expr::Add(a, b) => self.scalar(a)? + self.scalar(b)?,
            Expr::Sub(a, b) => self.scalar(a)? - self.scalar(b)?,
            Expr::Mul(a, b) => self.scalar(a)? * self.scalar(b)?,
            Expr::Div(a, b) => {
                let d = self.scalar(b)?;
                if d.is_zero() {
                    return Err(invalid("division by zero"));
                }
                self.scalar(a)? / d
            }
            Expr::Pow(a, k) => {
                let k = self.int(k)?;
                rational_pow(&self.scalar(a)?, k)?
            }
            Expr::ChebV { x, n } => {
                let n = self.int(n)?;
                cheb_v(&self.scalar(x)?, n)
            }
            Expr::Fib(n) => Rational::from_integer(fibonacci_or_zero(self.int(n)?)),
            Expr::Luc(n) => {
                let n = self.int(n)?;
                let n = u64::try_from(n).map_err(|_| invalid(format!("luc({n}) needs a nonnegative index")))?;
                Rational::from_integer(lucas(n))
            }
            Expr::Floor(a) => self.scalar(a)?.floor(),
            Expr::Isqrt(a) => {
                let r = self.scalar(a)?;
                if r.is_negative() {
                    return Err(invalid("isqrt of a negative number"));
                }
                Rational::from_integer(r.floor().to_integer().sqrt())
            }
            other => return Err(invalid(format!("expected a number, found the series `{other}`"))),
        })
    }

    fn int(&mut self, e: &Expr) -> CoreResult<i64> {
        let r = self.scalar(e)?;
        if !r.is_integer() {
            return Err(invalid(format!("`{e}` = {r} is not an integer")));
        }
        r.to_integer()
            .to_i64()
            .ok_or_else(|| invalid(format!("`{e}` is out of range")))
    }

    fn natural(&mut self, e: &Expr, what: &str) -> CoreResult<usize> {
        let n = self.int(e)?;
        usize::try_from(n).map_err(|_| invalid(format!("{what} must be nonnegative, got {n}")))
    }

    /// `c q^e` read off a product of numbers and powers of `q`.
    fn monomial(&mut self, e: &Expr) -> CoreResult<(Rational, i64)> {
        if e.is_scalar() {
            return Ok((self.scalar(e)?, 0));
        }
        Ok(match e {
            Expr::QPower(k) => (Rational::one(), self.int(k)?),
            Expr::Neg(a) => {
                let (c, k) = self.monomial(a)?;
                (-c, k)
            }
            Expr::Mul(a, b) => {
                let (ca, ka) = self.monomial(a)?;
                let (cb, kb) = self.monomial(b)?;
                (ca * cb, ka + kb)
            }
            Expr::Div(a, b) => {
                let (ca, ka) = self.monomial(a)?;
                let (cb, kb) = self.monomial(b)?;
                if cb.is_zero() {
                    return Err(invalid("division by zero"));
                }
                (ca / cb, ka - kb)
            }
            Expr::Pow(a, k) => {
                let k = self.int(k)?;
                let (c, e) = self.monomial(a)?;
                (rational_pow(&c, k)?, e * k)
            }
            other => return Err(invalid(format!("expected a monomial c*q^e, found `{other}`"))),
        })
    }

    fn signed_monomial(&mut self, e: &Expr) -> CoreResult<SignedMonomial> {
        let (c, k) = self.monomial(e)?;
        if k < 0 {
            return Err(Error::NegativeExponentTerm { exponent: k });
        }
        Ok(SignedMonomial::new(c, k as usize))
    }

    fn base_power(&mut self, e: &Expr) -> CoreResult<usize> {
        match self.monomial(e)? {
            (c, k) if c.is_one() && k >= 1 => Ok(k as usize),
            _ => Err(invalid(format!("a base must be q^k with k >= 1, found `{e}`"))),
        }
    }

    // -- series -----------------------------------------------------------

    fn series(&mut self, e: &Expr, order: usize) -> CoreResult<FormalSeries> {
        if e.is_scalar() {
            return Ok(FormalSeries::constant(self.scalar(e)?, order));
        }
        match e {
            Expr::Add(a, b) => Ok(&self.series(a, order)? + &self.series(b, order)?),
            Expr::Sub(a, b) => Ok(&self.series(a, order)? - &self.series(b, order)?),
            Expr::Neg(a) => Ok(-self.series(a, order)?),
            Expr::Mul(..) | Expr::Div(..) | Expr::Pow(..) | Expr::QPower(_) | Expr::Invert(_) => self.product(e, order),
            Expr::Poch { a, base, len } => {
                let m = self.signed_monomial(a)?;
                let b = self.base_power(base)?;
                match len {
                    None => pochhammer_infinite(&m, b, order),
                    Some(n) => {
                        let n = self.int(n)?;
                        pochhammer_finite(&m, b, n, order)
                    }
                }
            }
            Expr::QBinom { n, k, base } => {
                let (n, k) = (self.int(n)?, self.int(k)?);
                let b = self.natural(base, "a q-binomial base")?;
                qbinomial(n, k, b, order)
            }
            Expr::Series { op, var, lo, hi, body } => self.iterate(*op, var, lo, hi, body, order),
            Expr::SubstituteQ(a, k) => {
                let k = self.natural(k, "a substitution power")?;
                if k == 0 {
                    return Err(invalid("subst needs a power of at least 1"));
                }
                let inner = self.series(a, order / k)?;
                let mut out = FormalSeries::zero(order);
                for (i, c) in inner.coeffs().iter().enumerate() {
                    out.set_coeff(i * k, c.clone());
                }
                Ok(out)
            }
            Expr::NegateQ(a) => Ok(substitute_negate(&self.series(a, order)?)),
            Expr::AppellLerch(al) => {
                let spec = self.appell_lerch(al)?;
                appell_lerch_eval(&spec, order)
            }
            Expr::Hecke(name) => named_hecke_eval(name, self.x.as_ref(), order),
            Expr::Regroup(a, b, c) => {
                let (s0, s1, s2) = (self.series(a, order)?, self.series(b, order)?, self.series(c, order)?);
                cyclotomic_regroup(&s0, &s1, &s2)
            }
            other => Err(invalid(format!("cannot evaluate `{other}` as a series"))),
        }
    }

    fn appell_lerch(&mut self, al: &AppellLerch) -> CoreResult<AppellLerchSpec> {
        let level = self.natural(&al.level, "an Appell-Lerch level")?;
        let level = u32::try_from(level).map_err(|_| invalid("Appell-Lerch level out of range"))?;
        let base = self.base_power(&al.base)?;
        let a = self.signed_monomial(&al.a)?;
        let (c, k) = self.monomial(&al.b)?;
        let mut spec = AppellLerchSpec::new(level, base, a, Term::new(c, k));
        if let Some((m, r)) = &al.residue {
            let m = self.int(m)?;
            if m < 1 {
                return Err(invalid("a residue modulus must be positive"));
            }
            let r = self.int(r)?;
            spec = spec.restricted(m, r);
        }
        Ok(spec)
    }

    /// Splits a product into a number, a power of `q` and series factors.
    fn flatten<'e>(
        &mut self,
        e: &'e Expr,
        inverse: bool,
        power: u64,
        coeff: &mut Rational,
        shift: &mut i64,
        out: &mut Vec<Factor<'e>>,
    ) -> CoreResult<()> {
        if power == 0 {
            return Ok(());
        }
        if e.is_scalar() {
            let k = i64::try_from(power).map_err(|_| invalid("power out of range"))?;
            let v = rational_pow(&self.scalar(e)?, if inverse { -k } else { k })?;
            *coeff *= v;
            return Ok(());
        }
        match e {
            Expr::Mul(a, b) => {
                self.flatten(a, inverse, power, coeff, shift, out)?;
                self.flatten(b, inverse, power, coeff, shift, out)
            }
            Expr::Div(a, b) => {
                self.flatten(a, inverse, power, coeff, shift, out)?;
                self.flatten(b, !inverse, power, coeff, shift, out)
            }
            Expr::Neg(a) => {
                if power % 2 == 1 {
                    *coeff = -coeff.clone();
                }
                self.flatten(a, inverse, power, coeff, shift, out)
            }
            Expr::Invert(a) => self.flatten(a, !inverse, power, coeff, shift, out),
            Expr::QPower(k) => {
                let k = self.int(k)? * power as i64;
                *shift += if inverse { -k } else { k };
                Ok(())
            }
            Expr::Pow(b, k) => {
                let k = self.int(k)?;
                self.flatten(b, inverse ^ (k < 0), power * k.unsigned_abs(), coeff, shift, out)
            }
            _ => {
                out.push(Factor {
                    expr: e,
                    inverse,
                    power,
                });
                Ok(())
            }
        }
    }

    fn product(&mut self, e: &Expr, order: usize) -> CoreResult<FormalSeries> {
        let mut coeff = Rational::one();
        let mut shift = 0i64;
        let mut factors = Vec::new();
        self.flatten(e, false, 1, &mut coeff, &mut shift, &mut factors)?;
        if shift < 0 {
            return Err(Error::NegativeExponentTerm { exponent: shift });
        }
        let shift = shift as usize;
        if coeff.is_zero() || shift > order {
            return Ok(FormalSeries::zero(order));
        }
        let r = order - shift;
        let mut acc = FormalSeries::one(r);
        for f in factors {
            let (value, inverse) = self.factor(f.expr, f.inverse, r)?;
            for _ in 0..f.power {
                multiply(&mut acc, &value, inverse)?;
            }
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc.scale(&coeff).shift_extend(shift, order))
    }

    /// A factor's series, inverted directly where that is cheap; the flag
    /// says whether the caller still has to divide by it.
    fn factor(&mut self, e: &Expr, inverse: bool, order: usize) -> CoreResult<(FormalSeries, bool)> {
        if inverse {
            if let Expr::Poch { a, base, len } = e {
                let m = self.signed_monomial(a)?;
                let b = self.base_power(base)?;
                match len {
                    None => return Ok((pochhammer_infinite_reciprocal(&m, b, order)?, false)),
                    Some(n) => {
                        let n = self.int(n)?;
                        if n >= 0 {
                            return Ok((pochhammer_finite_reciprocal(&m, b, n as usize, order)?, false));
                        }
                    }
                }
            }
        }
        Ok((self.series(e, order)?, inverse))
    }

    fn bind<T>(&mut self, var: &str, n: i64, f: impl FnOnce(&mut Self) -> CoreResult<T>) -> CoreResult<T> {
        self.env.push((var.to_string(), n));
        let out = f(self);
        self.env.pop();
        out
    }

    fn iterate(
        &mut self,
        op: SeriesOp,
        var: &str,
        lo: &Expr,
        hi: &Bound,
        body: &Expr,
        order: usize,
    ) -> CoreResult<FormalSeries> {
        let lo = self.int(lo)?;
        match (op, hi) {
            (SeriesOp::Sum, Bound::Upto(hi)) => {
                let hi = self.int(hi)?;
                let mut acc = FormalSeries::zero(order);
                for n in lo..=hi {
                    let t = self.bind(var, n, |ev| ev.series(body, order))?;
                    acc = &acc + &t;
                }
                Ok(acc)
            }
            (SeriesOp::Sum, Bound::Auto) => {
                let [c, b, a] = self.quadratic_shift(body, var)?;
                let vertex = -b.clone() / (a.clone() * Rational::from_integer(2.into()));
                let limit = Rational::from_integer(order.into());
                let mut acc = FormalSeries::zero(order);
                let mut n = lo;
                loop {
                    let nr = Rational::from_integer(n.into());
                    let s = &a * &nr * &nr + &b * &nr + &c;
                    if nr > vertex && s > limit {
                        return Ok(acc);
                    }
                    let t = self.bind(var, n, |ev| ev.series(body, order))?;
                    acc = &acc + &t;
                    n += 1;
                }
            }
            (SeriesOp::AltSum, Bound::Upto(hi)) => {
                let hi = self.int(hi)?;
                let mut acc = FormalSeries::zero(order);
                for n in lo..=hi {
                    let t = self.bind(var, n, |ev| ev.series(body, order))?;
                    acc = if n % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                Ok(acc)
            }
            (SeriesOp::AltSum, Bound::Auto) => {
                let start = usize::try_from(lo).map_err(|_| invalid("an unbounded altsum must start at n >= 0"))?;
                alternating_abel_sum(start, order, |n| self.bind(var, n as i64, |ev| ev.series(body, order)))
            }
            (SeriesOp::Prod, Bound::Upto(hi)) => {
                let hi = self.int(hi)?;
                let mut acc = FormalSeries::one(order);
                for n in lo..=hi {
                    let t = self.bind(var, n, |ev| ev.series(body, order))?;
                    multiply(&mut acc, &t, false)?;
                }
                Ok(acc)
            }
            (SeriesOp::Prod, Bound::Auto) => Err(invalid("prod needs an explicit upper bound")),
        }
    }

    /// Coefficients `[c, b, a]` of the q-exponent `a n^2 + b n + c` that
    /// multiplies `body`; `auto` summation needs `a > 0`.
    fn quadratic_shift(&mut self, body: &Expr, var: &str) -> CoreResult<[Rational; 3]> {
        let mut total = vec![Rational::zero()];
        self.collect_shift(body, var, &Rational::one(), &mut total)?;
        while total.len() > 1 && total.last().is_some_and(|c| c.is_zero()) {
            total.pop();
        }
        if total.len() != 3 || !total[2].is_positive() {
            return Err(invalid(format!(
                "`{var}..auto` needs a q-exponent quadratic in `{var}` with positive leading coefficient"
            )));
        }
        Ok([total[0].clone(), total[1].clone(), total[2].clone()])
    }

    fn collect_shift(&mut self, e: &Expr, var: &str, sign: &Rational, total: &mut Poly) -> CoreResult<()> {
        match e {
            Expr::Mul(a, b) => {
                self.collect_shift(a, var, sign, total)?;
                self.collect_shift(b, var, sign, total)
            }
            Expr::Div(a, b) => {
                self.collect_shift(a, var, sign, total)?;
                self.collect_shift(b, var, &-sign.clone(), total)
            }
            Expr::Neg(a) => self.collect_shift(a, var, sign, total),
            Expr::Invert(a) => self.collect_shift(a, var, &-sign.clone(), total),
            Expr::QPower(k) => {
                let p = self
                    .poly_of(k, var)?
                    .ok_or_else(|| invalid(format!("q-exponent `{k}` is not a polynomial in `{var}`")))?;
                *total = poly_add(total, &p, sign);
                Ok(())
            }
            Expr::Pow(b, k) if !mentions(k, var) && !b.is_scalar() => {
                let k = self.int(k)?;
                self.collect_shift(b, var, &(sign * Rational::from_integer(k.into())), total)
            }
            _ => Ok(()),
        }
    }

    fn poly_of(&mut self, e: &Expr, var: &str) -> CoreResult<Option<Poly>> {
        if !mentions(e, var) {
            return if e.is_scalar() {
                Ok(Some(vec![self.scalar(e)?]))
            } else {
                Ok(None)
            };
        }
        let one = Rational::one();
        Ok(match e {
            Expr::Var(_) => Some(vec![Rational::zero(), one]),
            Expr::Neg(a) => self.poly_of(a, var)?.map(|p| p.into_iter().map(|c| -c).collect()),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let sign = if matches!(e, Expr::Add(..)) { one } else { -one };
                match (self.poly_of(a, var)?, self.poly_of(b, var)?) {
                    (Some(p), Some(r)) => Some(poly_add(&p, &r, &sign)),
                    _ => None,
                }
            }
            Expr::Mul(a, b) => match (self.poly_of(a, var)?, self.poly_of(b, var)?) {
                (Some(p), Some(r)) => Some(poly_mul(&p, &r)),
                _ => None,
            },
            Expr::Div(a, b) if !mentions(b, var) && b.is_scalar() => {
                let d = self.scalar(b)?;
                if d.is_zero() {
                    return Err(invalid("division by zero"));
                }
                self.poly_of(a, var)?.map(|p| p.into_iter().map(|c| c / &d).collect())
            }
            Expr::Pow(a, k) if !mentions(k, var) => {
                let k = self.int(k)?;
                match (self.poly_of(a, var)?, u32::try_from(k)) {
                    (Some(p), Ok(k)) => Some((0..k).fold(vec![one], |acc, _| poly_mul(&acc, &p))),
                    _ => None,
                }
            }
            _ => None,
        })
    }
}

/// `acc *= s`, or `acc /= s` when `inverse`.
fn multiply(acc: &mut FormalSeries, s: &FormalSeries, inverse: bool) -> CoreResult<()> {
    let terms: Vec<(usize, Rational)> = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect();
    if !inverse {
        if terms.len() <= SPARSE_TERMS {
            acc.mul_sparse(&terms);
        } else {
            *acc = &*acc * s;
        }
        return Ok(());
    }
    match terms.as_slice() {
        [(0, c0)] => *acc = acc.scale(&c0.recip()),
        [(0, c0), (k, c1)] => {
            *acc = acc.scale(&c0.recip());
            acc.div_one_minus(&-(c1 / c0), *k)?;
        }
        [(0, _), ..] => *acc = &*acc * &series_invert(s)?,
        _ => return Err(Error::NonUnitSeries),
    }
    Ok(())
}
