use std::sync::Arc;

use num_traits::One;

use super::special::*;
use super::{Builder, IdentityKind, IdentityRecord, Instance};
use crate::bailey::{andrews_product, chain_sum, key_product};
use crate::chebyshev::{cheb_v, fibonacci_or_zero, lucas, ChebyshevEvaluator};
use crate::error::{Error, Result};
use crate::qfunctions::{
    pochhammer_finite, pochhammer_finite_reciprocal, pochhammer_infinite, pochhammer_infinite_reciprocal,
    SignedMonomial,
};
use crate::series::{rat, ratio, FormalSeries, Rational, Term};

fn qm(c: i64, e: usize) -> SignedMonomial {
    SignedMonomial::new(rat(c), e)
}

/// `(c q^e; q^b)_n`.
fn fin(c: i64, e: usize, b: usize, n: usize, order: usize) -> Result<FormalSeries> {
    pochhammer_finite(&qm(c, e), b, n as i64, order)
}

/// `1 / (c q^e; q^b)_n`.
fn rfin(c: i64, e: usize, b: usize, n: usize, order: usize) -> Result<FormalSeries> {
    pochhammer_finite_reciprocal(&qm(c, e), b, n, order)
}

fn inf(c: i64, e: usize, b: usize, order: usize) -> Result<FormalSeries> {
    pochhammer_infinite(&qm(c, e), b, order)
}

fn rinf(c: i64, e: usize, b: usize, order: usize) -> Result<FormalSeries> {
    pochhammer_infinite_reciprocal(&qm(c, e), b, order)
}

fn product(factors: Vec<Result<FormalSeries>>) -> Result<FormalSeries> {
    let mut it = factors.into_iter();
    let mut acc = it.next().expect("at least one factor")?;
    for f in it {
        acc = &acc * &f?;
    }
    Ok(acc)
}

fn need_x(x: Option<&Rational>) -> Result<&Rational> {
    x.ok_or(Error::MissingX)
}

/// `F_{2n+1} + F_{2n-1}` with `F_{-1} = 0`.
fn fib_pair(n: i64) -> Rational {
    Rational::from_integer(fibonacci_or_zero(2 * n + 1) + fibonacci_or_zero(2 * n - 1))
}

fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// `sum_{n>=0} q^{e(n)} v_n(x)`, optionally alternating.
fn theta_v(x: &Rational, order: usize, alternating: bool, e: impl Fn(i64) -> i64) -> Result<FormalSeries> {
    let mut ev = ChebyshevEvaluator::new(x.clone());
    monomial_sum(order, 0, e, |n| {
        let w = ev.v_plus_prev(n);
        if alternating {
            sign(n) * w
        } else {
            w
        }
    })
}

fn theta_fib(order: usize, alternating: bool, e: impl Fn(i64) -> i64) -> Result<FormalSeries> {
    monomial_sum(order, 0, e, |n| {
        if alternating {
            sign(n) * fib_pair(n)
        } else {
            fib_pair(n)
        }
    })
}

/// `sum_{n>=0} q^{shift(n)} P_n(x) weight(n) / (q^2;q^2)_{2n}` with
/// `P_n(x) = prod_{j<=n} (1 + 2x q^{2j-1} + q^{4j-2})`.
fn key_sum<S, W>(x: &Rational, order: usize, shift: S, weight: W) -> Result<FormalSeries>
where
    S: Fn(usize) -> usize,
    W: Fn(usize, usize) -> Result<FormalSeries>,
{
    q_sum(order, 0, shift, |n, r| {
        let core = &key_product(x, n, r) * &rfin(1, 2, 2, 2 * n, r)?;
        Ok(&core * &weight(n, r)?)
    })
}

fn unit(_: usize, r: usize) -> Result<FormalSeries> {
    Ok(FormalSeries::one(r))
}

/// Abel value of `2 sum (-1)^n c_n`, with `c_n = c_{n-1} * num_n / den_n`
/// for sparse polynomials given as `(exponent, coefficient)` lists.
fn abel<F>(order: usize, factor: F) -> Result<FormalSeries>
where
    F: Fn(usize) -> (Vec<(usize, Rational)>, Vec<(i64, usize)>),
{
    doubled_alternating_sum(order, |n, c| {
        let (num, den) = factor(n);
        c.mul_sparse(&num);
        for (coeff, e) in den {
            c.div_one_minus(&rat(coeff), e)?;
        }
        Ok(())
    })
}

/// Sparse `1 + m q^a + q^{2a}`.
fn trinomial(m: Rational, a: usize) -> Vec<(usize, Rational)> {
    vec![(0, Rational::one()), (a, m), (2 * a, Rational::one())]
}

fn binomial_plus(a: usize) -> Vec<(usize, Rational)> {
    vec![(0, Rational::one()), (a, Rational::one())]
}

// ---------------------------------------------------------------------------
// Appell–Lerch pieces

/// `sum_{n in Z} q^{2n^2+n} / (1 + q^{2n})`.
fn mock_spec() -> AppellLerchSpec {
    AppellLerchSpec::new(2, 2, qm(-1, 0), Term::new(rat(1), -1))
}

/// `sum_{n in Z} (-1)^n q^{4n^2+n} / (1 + q^{2n})`.
fn alternating_mock_spec() -> AppellLerchSpec {
    AppellLerchSpec::new(4, 2, qm(-1, 0), Term::new(rat(-1), -3))
}

fn omega_sum(spec: &AppellLerchSpec, order: usize) -> Result<FormalSeries> {
    let classes = (0..3)
        .map(|r| appell_lerch_eval(&spec.clone().restricted(3, r), order))
        .collect::<Result<Vec<_>>>()?;
    cyclotomic_regroup(&classes[0], &classes[1], &classes[2])
}

/// `2 (-q^2;q^2)_inf / (q^2;q^2)_inf`.
fn prefactor_minus_q2(order: usize) -> Result<FormalSeries> {
    Ok(product(vec![inf(-1, 2, 2, order), rinf(1, 2, 2, order)])?.scale(&rat(2)))
}

// ---------------------------------------------------------------------------
// Hecke-type double sums

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NamedHecke {
    pub spec: HeckeSpec,
    /// Inner weight is `e^{2 pi i j / 3}`; evaluated by residue classes.
    pub cyclotomic: bool,
}

pub const HECKE_NAMES: [&str; 8] = [
    "thm-7.1", "cor-7.2", "cor-7.3", "cor-7.4", "thm-7.5", "cor-7.6a", "cor-7.6b", "cor-7.6c",
];

const HALF: FloorBound = FloorBound::new(1, 2);
const MINUS_HALF: FloorBound = FloorBound::new(-1, 2);

fn hecke(
    exponent: QuadraticForm,
    n_sign: bool,
    j_sign: bool,
    j: (FloorBound, FloorBound),
    weight: InnerWeight,
    tail: Option<(i64, i64)>,
) -> HeckeSpec {
    HeckeSpec {
        exponent,
        n_sign,
        j_sign,
        n_start: 0,
        j_lower: j.0,
        j_upper: j.1,
        weight,
        tail,
    }
}

pub fn named_hecke(name: &str) -> Option<NamedHecke> {
    let first = QuadraticForm::new(1, 0, -1, 1, 0, 1);
    let second = QuadraticForm::new(4, 0, -1, -2, 0, 1);
    let tail = Some((12, 6));
    let omega = InnerWeight::ResidueClass { modulus: 3, class: 0 };
    let all = (FloorBound::new(-1, 1), FloorBound::new(1, 1));
    let (spec, cyclotomic) = match name {
        "thm-7.1" => (
            hecke(
                first,
                true,
                false,
                (FloorBound::ZERO, HALF),
                InnerWeight::ChebPlusPrev,
                None,
            ),
            false,
        ),
        "cor-7.2" => (
            hecke(first, true, true, (MINUS_HALF, HALF), InnerWeight::One, None),
            false,
        ),
        "cor-7.3" => {
            let quarter = (FloorBound::new(-1, 4), FloorBound::new(1, 4));
            (
                hecke(
                    QuadraticForm::new(1, 0, -4, 1, 0, 2),
                    true,
                    true,
                    quarter,
                    InnerWeight::One,
                    None,
                ),
                false,
            )
        }
        "cor-7.4" => (hecke(first, true, false, (MINUS_HALF, HALF), omega, None), true),
        "thm-7.5" => (
            hecke(
                second,
                false,
                false,
                (FloorBound::ZERO, FloorBound::new(1, 1)),
                InnerWeight::ChebPlusPrev,
                tail,
            ),
            false,
        ),
        "cor-7.6a" => (hecke(second, false, true, all, InnerWeight::One, tail), false),
        "cor-7.6b" => (
            hecke(
                QuadraticForm::new(2, 0, -2, -1, 0, 1),
                false,
                true,
                (MINUS_HALF, HALF),
                InnerWeight::One,
                Some((6, 3)),
            ),
            false,
        ),
        "cor-7.6c" => (hecke(second, false, false, all, omega, tail), true),
        _ => return None,
    };
    Some(NamedHecke { spec, cyclotomic })
}

fn eval_named(h: &NamedHecke, x: Option<&Rational>, order: usize) -> Result<FormalSeries> {
    if !h.cyclotomic {
        return hecke_eval(&h.spec, x, order);
    }
    let classes = (0..3)
        .map(|class| {
            hecke_eval(
                &h.spec.with_weight(InnerWeight::ResidueClass { modulus: 3, class }),
                x,
                order,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    cyclotomic_regroup(&classes[0], &classes[1], &classes[2])
}

/// The double sum registered under `name`, without its infinite-product
/// prefactor.
pub fn named_hecke_eval(name: &str, x: Option<&Rational>, order: usize) -> Result<FormalSeries> {
    let h = named_hecke(name).ok_or_else(|| Error::Invalid(format!("unknown Hecke-type sum `{name}`")))?;
    eval_named(&h, x, order)
}

fn hecke_side(name: &'static str, prefactor: fn(usize) -> Result<FormalSeries>) -> Builder {
    Arc::new(move |x, order| Ok(&prefactor(order)? * &named_hecke_eval(name, x, order)?))
}

fn over_q2(order: usize) -> Result<FormalSeries> {
    rinf(1, 2, 2, order)
}

fn over_q(order: usize) -> Result<FormalSeries> {
    rinf(1, 1, 1, order)
}

// ---------------------------------------------------------------------------
// record builders

fn side<F>(f: F) -> Builder
where
    F: Fn(Option<&Rational>, usize) -> Result<FormalSeries> + Send + Sync + 'static,
{
    Arc::new(f)
}

fn fixed<F>(f: F) -> Builder
where
    F: Fn(usize) -> Result<FormalSeries> + Send + Sync + 'static,
{
    Arc::new(move |_, order| f(order))
}

fn single(lhs: Builder, rhs: Builder) -> Vec<Instance> {
    vec![Instance {
        label: String::new(),
        lhs,
        rhs,
    }]
}

fn series_record(
    id: &'static str,
    anchor: &'static str,
    default_order: usize,
    lhs: Builder,
    rhs: Builder,
) -> IdentityRecord {
    IdentityRecord {
        id,
        anchor,
        default_order,
        kind: IdentityKind::Series,
        integral: true,
        instances: single(lhs, rhs),
    }
}

fn x_record(
    id: &'static str,
    anchor: &'static str,
    degree_bound: fn(usize) -> usize,
    lhs: Builder,
    rhs: Builder,
) -> IdentityRecord {
    IdentityRecord {
        id,
        anchor,
        default_order: 150,
        kind: IdentityKind::XParametric { degree_bound },
        integral: true,
        instances: single(lhs, rhs),
    }
}

fn max_index(order: usize, f: impl Fn(usize) -> usize) -> usize {
    let mut n = 0;
    while f(n + 1) <= order {
        n += 1;
    }
    n
}

fn bound_square(order: usize) -> usize {
    max_index(order, |n| n * n)
}

fn bound_andrews(order: usize) -> usize {
    max_index(order, |n| n * n + n)
}

fn bound_key(order: usize) -> usize {
    max_index(order, |n| 2 * n * n)
}

fn bound_multisum<const K: usize>(order: usize) -> usize {
    max_index(order, |n| 2 * K * n * n)
}

/// `sum q^{2n^2} P_n(x) / (q^2;q^2)_{2n}` at a fixed `x`.
fn key_series(x: Rational) -> Builder {
    fixed(move |order| key_sum(&x, order, |n| 2 * n * n, unit))
}

fn fib_theta_rhs(order: usize) -> Result<FormalSeries> {
    Ok(&over_q2(order)? * &theta_fib(order, false, |n| 3 * n * n)?)
}

pub(super) fn build() -> Vec<IdentityRecord> {
    let mut out = Vec::new();

    // Dyson and Andrews

    let mut dyson = series_record(
        "dyson-1.1",
        "sum q^(n^2+n) prod_{j<=n}(1+q^j+q^2j)/(q;q)_{2n+1} = (q^9;q^9)_inf/(q;q)_inf",
        200,
        fixed(|order| {
            let half = ratio(1, 2);
            q_sum(
                order,
                0,
                |n| n * n + n,
                |n, r| Ok(&andrews_product(&half, n, r) * &rfin(1, 1, 1, 2 * n + 1, r)?),
            )
        }),
        fixed(|order| product(vec![inf(1, 9, 9, order), rinf(1, 1, 1, order)])),
    );
    dyson.default_order = 200;
    out.push(dyson);

    out.push(x_record(
        "andrews-1.4",
        "sum q^(n^2+n) prod_{j<=n}(1+2x q^j+q^2j)/(q;q)_{2n+1} = 1/(q;q)_inf sum q^(3n(n+1)/2) V_n(x)",
        bound_andrews,
        side(|x, order| {
            let x = need_x(x)?.clone();
            q_sum(
                order,
                0,
                |n| n * n + n,
                |n, r| Ok(&andrews_product(&x, n, r) * &rfin(1, 1, 1, 2 * n + 1, r)?),
            )
        }),
        side(|x, order| {
            let x = need_x(x)?;
            let sum = monomial_sum(order, 0, |n| 3 * n * (n + 1) / 2, |n| cheb_v(x, n))?;
            Ok(&over_q(order)? * &sum)
        }),
    ));

    out.push(series_record(
        "entry-5.3.4",
        "sum q^(2n^2) prod_{j<=n}(1+q^(2j-1)+q^(4j-2))/(q^2;q^2)_{2n} = (q,q^5,q^6;q^6)_inf (q^9;q^18)_inf/(q;q)_inf",
        200,
        key_series(ratio(1, 2)),
        fixed(|order| {
            product(vec![
                inf(1, 1, 6, order),
                inf(1, 5, 6, order),
                inf(1, 6, 6, order),
                inf(1, 9, 18, order),
                rinf(1, 1, 1, order),
            ])
        }),
    ));

    // key pair through the first weak form

    out.push(x_record(
        "thm-1.1",
        "sum q^(2n^2) prod_{j<=n}(1+2x q^(2j-1)+q^(4j-2))/(q^2;q^2)_{2n} = 1/(q^2;q^2)_inf sum q^(3n^2) (V_n(x)+V_{n-1}(x))",
        bound_key,
        side(|x, order| key_sum(need_x(x)?, order, |n| 2 * n * n, unit)),
        side(|x, order| Ok(&over_q2(order)? * &theta_v(need_x(x)?, order, false, |n| 3 * n * n)?)),
    ));

    out.push(series_record(
        "entry-5.3.3",
        "sum q^(2n^2) (q;q^2)_n^2/(q^2;q^2)_{2n} = (q^3;q^3)_inf (q^3;q^6)_inf/(q^2;q^2)_inf",
        150,
        fixed(|order| {
            q_sum(
                order,
                0,
                |n| 2 * n * n,
                |n, r| {
                    let p = fin(1, 1, 2, n, r)?;
                    Ok(&(&p * &p) * &rfin(1, 2, 2, 2 * n, r)?)
                },
            )
        }),
        fixed(|order| product(vec![inf(1, 3, 3, order), inf(1, 3, 6, order), rinf(1, 2, 2, order)])),
    ));

    out.push(series_record(
        "entry-5.3.2",
        "sum q^(n^2) (-q;q^2)_n/(q;q)_{2n} = (q^6;q^12)_inf (q^6;q^6)_inf/(q;q)_inf",
        150,
        fixed(|order| {
            q_sum(
                order,
                0,
                |n| n * n,
                |n, r| Ok(&fin(-1, 1, 2, n, r)? * &rfin(1, 1, 1, 2 * n, r)?),
            )
        }),
        fixed(|order| product(vec![inf(1, 6, 12, order), inf(1, 6, 6, order), rinf(1, 1, 1, order)])),
    ));

    out.push(series_record(
        "fib-4.4a",
        "sum q^(2n^2) prod_{j<=n}(1+3q^(2j-1)+q^(4j-2))/(q^2;q^2)_{2n} = 1/(q^2;q^2)_inf sum q^(3n^2) (F_{2n+1}+F_{2n-1})",
        150,
        key_series(ratio(3, 2)),
        fixed(fib_theta_rhs),
    ));

    out.push(series_record(
        "fib-4.4b",
        "sum q^(2n^2) prod_{j<=n}(1-3q^(2j-1)+q^(4j-2))/(q^2;q^2)_{2n} = 1/(q^2;q^2)_inf (1 + sum_{n>=1} (-1)^n q^(3n^2) L_{2n})",
        150,
        key_series(ratio(-3, 2)),
        fixed(|order| {
            let sum = monomial_sum(order, 0, |n| 3 * n * n, |n| {
                if n == 0 {
                    rat(1)
                } else {
                    sign(n) * Rational::from_integer(lucas(2 * n as u64))
                }
            })?;
            Ok(&over_q2(order)? * &sum)
        }),
    ));

    push_multisums(&mut out);

    // second weak form

    out.push(x_record(
        "thm-5.1",
        "sum q^(n^2) (-q;q^2)_n prod_{i<=n}(1+2x q^(2i-1)+q^(4i-2))/(q^2;q^2)_{2n} = (-q;q^2)_inf/(q^2;q^2)_inf sum q^(2n^2) (V_n(x)+V_{n-1}(x))",
        bound_square,
        side(|x, order| key_sum(need_x(x)?, order, |n| n * n, |n, r| fin(-1, 1, 2, n, r))),
        side(|x, order| {
            let pre = product(vec![inf(-1, 1, 2, order), rinf(1, 2, 2, order)])?;
            Ok(&pre * &theta_v(need_x(x)?, order, false, |n| 2 * n * n)?)
        }),
    ));
    push_cor_5_2(&mut out);

    // third weak form

    out.push(x_record(
        "thm-5.3",
        "2 sum (-1)^n prod_{i<=n}(1+2x q^(2i-1)+q^(4i-2))/(q^4;q^4)_n = (q^2;q^4)_inf/(q^4;q^4)_inf sum (-1)^n q^(n^2) (V_n(x)+V_{n-1}(x)), read as an Abel sum",
        bound_square,
        side(|x, order| {
            let m = need_x(x)? * rat(2);
            abel(order, |n| (trinomial(m.clone(), 2 * n - 1), vec![(1, 4 * n)]))
        }),
        side(|x, order| {
            let pre = product(vec![inf(1, 2, 4, order), rinf(1, 4, 4, order)])?;
            Ok(&pre * &theta_v(need_x(x)?, order, true, |n| n * n)?)
        }),
    ));
    push_cor_5_4(&mut out);

    // fourth weak form and Appell–Lerch series

    out.push(x_record(
        "thm-6.1",
        "sum q^(n^2+n) (-1;q^2)_n prod_{i<=n}(1+2x q^(2i-1)+q^(4i-2))/(q^2;q^2)_{2n} = (-q^2;q^2)_inf/(q^2;q^2)_inf sum (-1;q^2)_n q^(2n^2+n) (V_n(x)+V_{n-1}(x))/(-q^2;q^2)_n",
        bound_square,
        side(|x, order| key_sum(need_x(x)?, order, |n| n * n + n, |n, r| fin(-1, 0, 2, n, r))),
        side(|x, order| {
            let mut ev = ChebyshevEvaluator::new(need_x(x)?.clone());
            let sum = q_sum(order, 0, |n| 2 * n * n + n, |n, r| {
                let t = &fin(-1, 0, 2, n, r)? * &rfin(-1, 2, 2, n, r)?;
                Ok(t.scale(&ev.v_plus_prev(n as i64)))
            })?;
            Ok(&product(vec![inf(-1, 2, 2, order), rinf(1, 2, 2, order)])? * &sum)
        }),
    ));
    push_appell_lerch(&mut out);

    // Hecke-type series

    let heine_instances = (0..=4usize)
        .flat_map(|alpha| (0..=4usize).map(move |beta| (alpha, beta)))
        .map(|(alpha, beta)| Instance {
            label: format!("alpha = {alpha}, beta = {beta}"),
            lhs: fixed(move |order| Ok(heine_transform_sides(alpha, beta, order)?.0)),
            rhs: fixed(move |order| Ok(heine_transform_sides(alpha, beta, order)?.1)),
        })
        .collect();
    out.push(IdentityRecord {
        id: "heine",
        anchor: "sum q^(n^2+an)/((q;q)_n (q;q)_{n+b}) = 1/(q;q)_inf sum (q^(a-b);q)_n (-1)^n q^(bn+n(n+1)/2)/(q;q)_n, for 0 <= a, b <= 4",
        default_order: 150,
        kind: IdentityKind::Series,
        integral: true,
        instances: heine_instances,
    });
    push_hecke(&mut out);

    // q-binomial identity and its limit

    out.push(IdentityRecord {
        id: "qbi-8.1",
        anchor: "sum_{j=-n-1}^{n} q^(2j^2+j) [2n+1, n-j]_{q^2}^2 = (1+q^(2n+1)) [4n+1, 2n], exact for every n",
        default_order: 30,
        kind: IdentityKind::Finite,
        integral: true,
        instances: single(
            fixed(|n| Ok(qbinom_identity_sides(n)?.0)),
            fixed(|n| Ok(qbinom_identity_sides(n)?.1)),
        ),
    });
    out.push(series_record(
        "jtp-limit-8",
        "(q^2;q^2)_inf^2 sum_{j=-n-1}^{n} q^(2j^2+j) [2n+1, n-j]_{q^2}^2 -> (-q,-q^3,q^4;q^4)_inf as n grows",
        100,
        fixed(|order| Ok(qbinom_limit_sides(order)?.0)),
        fixed(|order| Ok(qbinom_limit_sides(order)?.1)),
    ));

    out
}

fn push_multisums(out: &mut Vec<IdentityRecord>) {
    const IDS: [&str; 3] = ["multisum-4.5-k1", "multisum-4.5-k2", "multisum-4.5-k3"];
    const BOUNDS: [fn(usize) -> usize; 3] = [bound_multisum::<1>, bound_multisum::<2>, bound_multisum::<3>];
    for k in 1..=3usize {
        let mut rec = x_record(
            IDS[k - 1],
            "1/(q^2;q^2)_inf sum q^((2k+1)n^2) (V_n(x)+V_{n-1}(x)) = sum_{n_k>=...>=n_1>=0} q^(2(n_1^2+...+n_k^2)) prod_{j<=n_1}(1+2x q^(2j-1)+q^(4j-2)) / ((q^2;q^2)_{n_k-n_{k-1}} ... (q^2;q^2)_{n_2-n_1} (q^2;q^2)_{2n_1})",
            BOUNDS[k - 1],
            side(move |x, order| {
                let e = 2 * k as i64 + 1;
                Ok(&over_q2(order)? * &theta_v(need_x(x)?, order, false, |n| e * n * n)?)
            }),
            side(move |x, order| {
                let x = need_x(x)?;
                chain_sum(k, 2, order, |n, r| Ok(&key_product(x, n, r) * &rfin(1, 2, 2, 2 * n, r)?))
            }),
        );
        rec.default_order = 100;
        out.push(rec);
    }

    type Family = (
        &'static str,
        &'static str,
        fn(usize, usize) -> Result<FormalSeries>,
        fn(usize, usize, usize) -> Result<FormalSeries>,
    );
    let families: [Family; 4] = [
        (
            "a",
            "(q^(2k+1),q^(2k+1),q^(4k+2);q^(4k+2))_inf/(q^2;q^2)_inf = k-fold chain in base q^2 over (q;q^2)_{n_1}^2/(q^2;q^2)_{2n_1}",
            |k, order| {
                let m = 2 * k + 1;
                product(vec![inf(1, m, 2 * m, order), inf(1, m, 2 * m, order), inf(1, 2 * m, 2 * m, order), rinf(1, 2, 2, order)])
            },
            |k, _, order| {
                chain_sum(k, 2, order, |n, r| {
                    let p = fin(1, 1, 2, n, r)?;
                    Ok(&(&p * &p) * &rfin(1, 2, 2, 2 * n, r)?)
                })
            },
        ),
        (
            "b",
            "(q^(4k+2);q^(4k+2))_inf (q^(6k+3);q^(12k+6))_inf/((q^2;q^2)_inf (q^(2k+1);q^(4k+2))_inf) = k-fold chain in base q^2 over (q^3;q^6)_{n_1}/((q^2;q^2)_{2n_1} (q;q^2)_{n_1})",
            |k, order| {
                let m = 2 * k + 1;
                product(vec![
                    inf(1, 2 * m, 2 * m, order),
                    inf(1, 3 * m, 6 * m, order),
                    rinf(1, 2, 2, order),
                    rinf(1, m, 2 * m, order),
                ])
            },
            |k, _, order| {
                chain_sum(k, 2, order, |n, r| {
                    product(vec![fin(1, 3, 6, n, r), rfin(1, 2, 2, 2 * n, r), rfin(1, 1, 2, n, r)])
                })
            },
        ),
        (
            "c",
            "(q^(4k+2),q^(4k+2),q^(8k+4);q^(8k+4))_inf/(q;q)_inf = k-fold chain in base q over (-q;q^2)_{n_1}/(q;q)_{2n_1}",
            |k, order| {
                let m = 4 * k + 2;
                product(vec![inf(1, m, 2 * m, order), inf(1, m, 2 * m, order), inf(1, 2 * m, 2 * m, order), rinf(1, 1, 1, order)])
            },
            |k, _, order| chain_sum(k, 1, order, |n, r| Ok(&fin(-1, 1, 2, n, r)? * &rfin(1, 1, 1, 2 * n, r)?)),
        ),
        (
            "d",
            "1/(q^2;q^2)_inf sum q^((2k+1)n^2) (F_{2n+1}+F_{2n-1}) = k-fold chain in base q^2 over prod_{j<=n_1}(1+3q^(2j-1)+q^(4j-2))/(q^2;q^2)_{2n_1}",
            |k, order| {
                let e = 2 * k as i64 + 1;
                Ok(&over_q2(order)? * &theta_fib(order, false, |n| e * n * n)?)
            },
            |k, _, order| {
                let x = ratio(3, 2);
                chain_sum(k, 2, order, |n, r| Ok(&key_product(&x, n, r) * &rfin(1, 2, 2, 2 * n, r)?))
            },
        ),
    ];
    const CHAIN_IDS: [[&str; 3]; 4] = [
        ["cor-4.6a-k1", "cor-4.6a-k2", "cor-4.6a-k3"],
        ["cor-4.6b-k1", "cor-4.6b-k2", "cor-4.6b-k3"],
        ["cor-4.6c-k1", "cor-4.6c-k2", "cor-4.6c-k3"],
        ["cor-4.6d-k1", "cor-4.6d-k2", "cor-4.6d-k3"],
    ];
    for (f, (_, anchor, lhs, rhs)) in families.into_iter().enumerate() {
        for k in 1..=3usize {
            out.push(series_record(
                CHAIN_IDS[f][k - 1],
                anchor,
                100,
                fixed(move |order| lhs(k, order)),
                fixed(move |order| rhs(k, 0, order)),
            ));
        }
    }
}

fn push_cor_5_2(out: &mut Vec<IdentityRecord>) {
    out.push(series_record(
        "cor-5.2a",
        "sum q^(n^2) (q;q^2)_n/(q^4;q^4)_n = (q^2;q^4)_inf^2/(q;q^2)_inf",
        150,
        fixed(|order| {
            q_sum(
                order,
                0,
                |n| n * n,
                |n, r| Ok(&fin(1, 1, 2, n, r)? * &rfin(1, 4, 4, n, r)?),
            )
        }),
        fixed(|order| product(vec![inf(1, 2, 4, order), inf(1, 2, 4, order), rinf(1, 1, 2, order)])),
    ));
    out.push(series_record(
        "cor-5.2b",
        "sum q^(n^2) (-q^3;q^6)_n/(q^2;q^2)_{2n} = (-q;q)_inf (-q^6;q^12)_inf/(-q^2;q^4)_inf",
        150,
        fixed(|order| {
            q_sum(
                order,
                0,
                |n| n * n,
                |n, r| Ok(&fin(-1, 3, 6, n, r)? * &rfin(1, 2, 2, 2 * n, r)?),
            )
        }),
        fixed(|order| product(vec![inf(-1, 1, 1, order), inf(-1, 6, 12, order), rinf(-1, 2, 4, order)])),
    ));
    out.push(series_record(
        "cor-5.2c",
        "sum q^(n^2) (-q^2;q^4)_n/((q;q^2)_n (q^4;q^4)_n) = (-q;q^2)_inf (q^8;q^8)_inf (q^8;q^16)_inf/(q^2;q^2)_inf",
        150,
        fixed(|order| {
            q_sum(
                order,
                0,
                |n| n * n,
                |n, r| product(vec![fin(-1, 2, 4, n, r), rfin(1, 1, 2, n, r), rfin(1, 4, 4, n, r)]),
            )
        }),
        fixed(|order| {
            product(vec![
                inf(-1, 1, 2, order),
                inf(1, 8, 8, order),
                inf(1, 8, 16, order),
                rinf(1, 2, 2, order),
            ])
        }),
    ));
    out.push(series_record(
        "cor-5.2d",
        "sum q^(n^2) (-q;q^2)_n (q^3;q^6)_n/((q^2;q^2)_{2n} (q;q^2)_n) = (q^4;q^4)_inf (q^6;q^12)_inf/(q;q)_inf",
        150,
        fixed(|order| {
            q_sum(
                order,
                0,
                |n| n * n,
                |n, r| {
                    product(vec![
                        fin(-1, 1, 2, n, r),
                        fin(1, 3, 6, n, r),
                        rfin(1, 2, 2, 2 * n, r),
                        rfin(1, 1, 2, n, r),
                    ])
                },
            )
        }),
        fixed(|order| product(vec![inf(1, 4, 4, order), inf(1, 6, 12, order), rinf(1, 1, 1, order)])),
    ));
    out.push(series_record(
        "cor-5.2e",
        "sum q^(n^2) (-q;q^2)_n^3/(q^2;q^2)_{2n} = (-q^2;q^4)_inf^2/(q;q^2)_inf",
        150,
        fixed(|order| {
            q_sum(
                order,
                0,
                |n| n * n,
                |n, r| {
                    let p = fin(-1, 1, 2, n, r)?;
                    Ok(&(&p * &p) * &(&p * &rfin(1, 2, 2, 2 * n, r)?))
                },
            )
        }),
        fixed(|order| product(vec![inf(-1, 2, 4, order), inf(-1, 2, 4, order), rinf(1, 1, 2, order)])),
    ));
    out.push(series_record(
        "cor-5.2f",
        "sum q^(n^2) (-q;q^2)_n prod_{i<=n}(1+3q^(2i-1)+q^(4i-2))/(q^2;q^2)_{2n} = (-q;q^2)_inf/(q^2;q^2)_inf sum q^(2n^2) (F_{2n+1}+F_{2n-1})",
        150,
        fixed(|order| key_sum(&ratio(3, 2), order, |n| n * n, |n, r| fin(-1, 1, 2, n, r))),
        fixed(|order| {
            let pre = product(vec![inf(-1, 1, 2, order), rinf(1, 2, 2, order)])?;
            Ok(&pre * &theta_fib(order, false, |n| 2 * n * n)?)
        }),
    ));
}

fn push_cor_5_4(out: &mut Vec<IdentityRecord>) {
    out.push(series_record(
        "cor-5.4a",
        "2 sum (-1)^n (-q;q^2)_n/(q^2;q^2)_n = (q,q^2,q^3;q^4)_inf, read as an Abel sum",
        150,
        fixed(|order| abel(order, |n| (binomial_plus(2 * n - 1), vec![(1, 2 * n)]))),
        fixed(|order| product(vec![inf(1, 1, 4, order), inf(1, 2, 4, order), inf(1, 3, 4, order)])),
    ));
    out.push(series_record(
        "cor-5.4b",
        "2 sum (-1)^n (-q^3;q^6)_n/((q^4;q^4)_n (-q;q^2)_n) = (q^2;q^4)_inf^2 (q^3;q^6)_inf/(q;q^2)_inf, read as an Abel sum",
        150,
        fixed(|order| abel(order, |n| (binomial_plus(6 * n - 3), vec![(1, 4 * n), (-1, 2 * n - 1)]))),
        fixed(|order| {
            product(vec![inf(1, 2, 4, order), inf(1, 2, 4, order), inf(1, 3, 6, order), rinf(1, 1, 2, order)])
        }),
    ));
    out.push(series_record(
        "cor-5.4c",
        "2 sum (-1)^n (-q;q^2)_n^2/(q^4;q^4)_n = (q,q^2,q^3;q^4)_inf^2, read as an Abel sum",
        150,
        fixed(|order| abel(order, |n| (trinomial(rat(2), 2 * n - 1), vec![(1, 4 * n)]))),
        fixed(|order| {
            let p = product(vec![inf(1, 1, 4, order), inf(1, 2, 4, order), inf(1, 3, 4, order)])?;
            Ok(&p * &p)
        }),
    ));
    out.push(series_record(
        "cor-5.4d",
        "2 sum (-1)^n prod_{i<=n}(1+3q^(2i-1)+q^(4i-2))/(q^4;q^4)_n = (q^2;q^4)_inf/(q^4;q^4)_inf sum (-1)^n q^(n^2) (F_{2n+1}+F_{2n-1}), read as an Abel sum",
        150,
        fixed(|order| abel(order, |n| (trinomial(rat(3), 2 * n - 1), vec![(1, 4 * n)]))),
        fixed(|order| {
            let pre = product(vec![inf(1, 2, 4, order), rinf(1, 4, 4, order)])?;
            Ok(&pre * &theta_fib(order, true, |n| n * n)?)
        }),
    ));
}

/// `sum q^(n^2+n) (-1;q^2)_n (-q;q^2)_n^2/(q^2;q^2)_{2n}`.
fn mock_hyper_sum(order: usize) -> Result<FormalSeries> {
    q_sum(
        order,
        0,
        |n| n * n + n,
        |n, r| {
            let p = fin(-1, 1, 2, n, r)?;
            product(vec![fin(-1, 0, 2, n, r), Ok(&p * &p), rfin(1, 2, 2, 2 * n, r)])
        },
    )
}

fn push_appell_lerch(out: &mut Vec<IdentityRecord>) {
    out.push(series_record(
        "cor-6.2",
        "sum q^(n^2+n) (-1;q^2)_n (-q;q^2)_n^2/(q^2;q^2)_{2n} = 2 (-q^2;q^2)_inf/(q^2;q^2)_inf sum_{n in Z} q^(2n^2+n)/(1+q^(2n))",
        150,
        fixed(mock_hyper_sum),
        fixed(|order| Ok(&prefactor_minus_q2(order)? * &appell_lerch_eval(&mock_spec(), order)?)),
    ));

    let classical = fixed(|order| {
        q_sum(
            order,
            0,
            |n| n * n,
            |n, r| {
                let d = rfin(-1, 2, 2, n, r)?;
                Ok((&fin(1, 1, 2, n, r)? * &(&d * &d)).scale(&sign(n as i64)))
            },
        )
    });
    out.push(IdentityRecord {
        id: "mock-mu2",
        anchor: "second-order mock theta function mu: (q;q^2)_inf/(-q^2;q^2)_inf sum (-1;q^2)_n (-q;q^2)_n^2 q^(n^2+n)/(q^2;q^2)_{2n} = sum (-1)^n (q;q^2)_n q^(n^2)/(-q^2;q^2)_n^2 = 2 (q;q^2)_inf/(q^2;q^2)_inf sum_{n in Z} q^(2n^2+n)/(1+q^(2n))",
        default_order: 150,
        kind: IdentityKind::Series,
        integral: true,
        instances: vec![
            Instance {
                label: "new expression".into(),
                lhs: fixed(|order| Ok(&product(vec![inf(1, 1, 2, order), rinf(-1, 2, 2, order)])? * &mock_hyper_sum(order)?)),
                rhs: classical.clone(),
            },
            Instance {
                label: "Appell-Lerch form".into(),
                lhs: classical,
                rhs: fixed(|order| {
                    let pre = product(vec![inf(1, 1, 2, order), rinf(1, 2, 2, order)])?.scale(&rat(2));
                    Ok(&pre * &appell_lerch_eval(&mock_spec(), order)?)
                }),
            },
        ],
    });

    out.push(series_record(
        "cor-6.3",
        "sum q^(n^2+n) (-1;q^2)_n (-q^3;q^6)_n/((q^2;q^2)_{2n} (-q;q^2)_n) = 2 (-q^2;q^2)_inf/(q^2;q^2)_inf sum_{n in Z} w^n q^(2n^2+n)/(1+q^(2n)), w a primitive cube root of unity",
        150,
        fixed(|order| {
            q_sum(order, 0, |n| n * n + n, |n, r| {
                product(vec![fin(-1, 0, 2, n, r), fin(-1, 3, 6, n, r), rfin(1, 2, 2, 2 * n, r), rfin(-1, 1, 2, n, r)])
            })
        }),
        fixed(|order| Ok(&prefactor_minus_q2(order)? * &omega_sum(&mock_spec(), order)?)),
    ));

    out.push(series_record(
        "cor-6.4",
        "sum (-1;q)_n (-q;q^2)_n q^((n^2+n)/2)/(q;q)_{2n} = 2 (-q;q)_inf/(q;q)_inf sum_{n in Z} (-1)^n q^(4n^2+n)/(1+q^(2n))",
        150,
        fixed(|order| {
            q_sum(order, 0, |n| n * (n + 1) / 2, |n, r| {
                product(vec![fin(-1, 0, 1, n, r), fin(-1, 1, 2, n, r), rfin(1, 1, 1, 2 * n, r)])
            })
        }),
        fixed(|order| {
            let pre = product(vec![inf(-1, 1, 1, order), rinf(1, 1, 1, order)])?.scale(&rat(2));
            Ok(&pre * &appell_lerch_eval(&alternating_mock_spec(), order)?)
        }),
    ));

    out.push(series_record(
        "cor-6.5",
        "sum q^(n^2+n) (-1;q^2)_n prod_{i<=n}(1+3q^(2i-1)+q^(4i-2))/(q^2;q^2)_{2n} = 2 (-q^2;q^2)_inf/(q^2;q^2)_inf sum_{n>=0} q^(2n^2+n) (F_{2n+1}+F_{2n-1})/(1+q^(2n))",
        150,
        fixed(|order| key_sum(&ratio(3, 2), order, |n| n * n + n, |n, r| fin(-1, 0, 2, n, r))),
        fixed(|order| Ok(&prefactor_minus_q2(order)? * &fib_appell_sum(order)?)),
    ));
}

/// `sum_{n>=0} q^(2n^2+n) (F_{2n+1}+F_{2n-1})/(1+q^(2n))`.
fn fib_appell_sum(order: usize) -> Result<FormalSeries> {
    q_sum(
        order,
        0,
        |n| 2 * n * n + n,
        |n, r| {
            let mut t = FormalSeries::constant(fib_pair(n as i64), r);
            t.div_one_minus(&rat(-1), 2 * n)?;
            Ok(t)
        },
    )
}

fn push_hecke(out: &mut Vec<IdentityRecord>) {
    out.push(x_record(
        "thm-7.1",
        "sum q^(2n^2+2n) prod_{i<=n}(1+2x q^(2i-1)+q^(4i-2))/(q^2;q^2)_{2n} = 1/(q^2;q^2)_inf sum (-1)^n q^(n^2+n) sum_{j=0}^{floor(n/2)} q^(-j^2) (V_j(x)+V_{j-1}(x))",
        bound_square,
        side(|x, order| key_sum(need_x(x)?, order, |n| 2 * n * n + 2 * n, unit)),
        hecke_side("thm-7.1", over_q2),
    ));
    out.push(series_record(
        "cor-7.2",
        "sum q^(2n^2+2n) (q;q^2)_n^2/(q^2;q^2)_{2n} = 1/(q^2;q^2)_inf sum (-1)^n q^(n^2+n) sum_{|j|<=floor(n/2)} (-1)^j q^(-j^2)",
        150,
        fixed(|order| {
            q_sum(order, 0, |n| 2 * n * n + 2 * n, |n, r| {
                let p = fin(1, 1, 2, n, r)?;
                Ok(&(&p * &p) * &rfin(1, 2, 2, 2 * n, r)?)
            })
        }),
        hecke_side("cor-7.2", over_q2),
    ));
    out.push(series_record(
        "cor-7.3",
        "sum q^(n^2+n) (-q;q^2)_n/(q;q)_{2n} = 1/(q;q)_inf sum (-1)^n q^(n(n+1)/2) sum_{|j|<=floor(n/4)} (-1)^j q^(-2j^2)",
        150,
        fixed(|order| q_sum(order, 0, |n| n * n + n, |n, r| Ok(&fin(-1, 1, 2, n, r)? * &rfin(1, 1, 1, 2 * n, r)?))),
        hecke_side("cor-7.3", over_q),
    ));
    out.push(series_record(
        "cor-7.4",
        "sum q^(2n^2+2n) (-q^3;q^6)_n/((q^2;q^2)_{2n} (-q;q^2)_n) = 1/(q^2;q^2)_inf sum (-1)^n q^(n(n+1)) sum_{|j|<=floor(n/2)} w^j q^(-j^2), w a primitive cube root of unity",
        150,
        fixed(|order| {
            q_sum(order, 0, |n| 2 * n * n + 2 * n, |n, r| {
                product(vec![fin(-1, 3, 6, n, r), rfin(1, 2, 2, 2 * n, r), rfin(-1, 1, 2, n, r)])
            })
        }),
        hecke_side("cor-7.4", over_q2),
    ));
    out.push(x_record(
        "thm-7.5",
        "sum q^(2n^2-2n) prod_{i<=n}(1+2x q^(2i-1)+q^(4i-2))/(q^2;q^2)_{2n-1} = 1/(q^2;q^2)_inf sum q^(4n^2-2n) (1-q^(12n+6)) sum_{j=0}^{n} q^(-j^2) (V_j(x)+V_{j-1}(x)); the n = 0 summand on the left is zero",
        bound_square,
        side(|x, order| {
            let x = need_x(x)?;
            q_sum(order, 0, |n| 2 * n * n - 2 * n, |n, r| {
                let den = pochhammer_reciprocal_or_zero(&qm(1, 2), 2, 2 * n as i64 - 1, r)?;
                Ok(&key_product(x, n, r) * &den)
            })
        }),
        hecke_side("thm-7.5", over_q2),
    ));
    out.push(series_record(
        "cor-7.6a",
        "sum q^(2n^2-2n) (q;q^2)_n^2/(q^2;q^2)_{2n-1} = 1/(q^2;q^2)_inf sum q^(4n^2-2n) (1-q^(12n+6)) sum_{j=-n}^{n} (-1)^j q^(-j^2)",
        150,
        fixed(|order| {
            q_sum(order, 0, |n| 2 * n * n - 2 * n, |n, r| {
                let p = fin(1, 1, 2, n, r)?;
                Ok(&(&p * &p) * &pochhammer_reciprocal_or_zero(&qm(1, 2), 2, 2 * n as i64 - 1, r)?)
            })
        }),
        hecke_side("cor-7.6a", over_q2),
    ));
    out.push(series_record(
        "cor-7.6b",
        "sum q^(n^2-n) (-q;q^2)_n/(q;q)_{2n-1} = 1/(q;q)_inf sum q^(2n^2-n) (1-q^(6n+3)) sum_{|j|<=floor(n/2)} (-1)^j q^(-2j^2)",
        150,
        fixed(|order| cor_7_6b_lhs(-1, order)),
        hecke_side("cor-7.6b", over_q),
    ));
    out.push(series_record(
        "cor-7.6c",
        "sum q^(2n^2-2n) (-q^3;q^6)_n/((q^2;q^2)_{2n-1} (-q;q^2)_n) = 1/(q^2;q^2)_inf sum q^(4n^2-2n) (1-q^(12n+6)) sum_{j=-n}^{n} w^j q^(-j^2), w a primitive cube root of unity",
        150,
        fixed(|order| {
            q_sum(order, 0, |n| 2 * n * n - 2 * n, |n, r| {
                product(vec![
                    fin(-1, 3, 6, n, r),
                    pochhammer_reciprocal_or_zero(&qm(1, 2), 2, 2 * n as i64 - 1, r),
                    rfin(-1, 1, 2, n, r),
                ])
            })
        }),
        hecke_side("cor-7.6c", over_q2),
    ));
}

/// `sum q^(n^2-n) (c q;q^2)_n/(q;q)_{2n-1}`; `c = -1` is the form that
/// follows from the `x = 0` case; `c = 1` gives a series that does not match.
pub(super) fn cor_7_6b_lhs(c: i64, order: usize) -> Result<FormalSeries> {
    q_sum(
        order,
        0,
        |n| n * n - n,
        |n, r| Ok(&fin(c, 1, 2, n, r)? * &pochhammer_reciprocal_or_zero(&qm(1, 1), 1, 2 * n as i64 - 1, r)?),
    )
}
