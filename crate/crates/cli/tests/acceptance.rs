//! One line per acceptance criterion; exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use qrr_core::bailey::{
    andrews_pair, apply_multisum, apply_weak_form, check_bailey_pair, finite_identity_check, finite_identity_degree,
    key_pair, FiniteIdentity, WeakForm,
};
use qrr_core::chebyshev::{cheb_special, cheb_v, fibonacci, lucas, ChebyshevEvaluator, SpecialArg};
use qrr_core::corpus::{lookup, named_hecke, registry, IdentityKind};
use qrr_core::qfunctions::{
    jacobi_triple_product, jacobi_triple_sum, partition_oracle, pochhammer_finite, pochhammer_infinite, qbinomial,
};
use qrr_core::series::{rat, ratio, series_invert, substitute_negate};
use qrr_core::{FormalSeries, Rational, SignedMonomial};
use qrr_dsl::{corpus, parse_corpus, parse_expr, print_corpus, DslError, Location};
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type InnerCase = (&'static str, i64, Option<Rational>, Vec<(i64, i64)>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli(args: &[&str]) -> (i32, String, Duration) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let start = Instant::now();
    let code = qrr_cli::run(std::iter::once("qrr").chain(args.iter().copied()), &mut out, &mut err);
    let text = String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&err);
    (code, text, start.elapsed())
}

fn timed_verify(id: &str, order: usize, limit: Duration) -> Outcome {
    let (code, text, t) = cli(&["verify", "--id", id, "--order", &order.to_string()]);
    ensure(code == 0, format!("exit {code}: {}", text.trim()))?;
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(format!("{id} to order {order} in {t:.2?}"))
}

fn verify_ids(ids: &[&str], order: usize) -> Result<(), String> {
    let failures: Vec<String> = ids
        .par_iter()
        .map(|id| lookup(id).map_err(|e| e.to_string()).map(|r| r.verify(order)))
        .filter_map(|r| match r {
            Ok(rep) if rep.passed() => None,
            Ok(rep) => Some(format!("{} {} {:?} {:?}", rep.id, rep.status, rep.mismatch, rep.note)),
            Err(e) => Some(e),
        })
        .collect();
    ensure(failures.is_empty(), failures.join("; "))
}

fn special_xs() -> Vec<Rational> {
    SpecialArg::ALL.iter().map(|a| a.value()).collect()
}

fn c1() -> Outcome {
    timed_verify("dyson-1.1", 200, Duration::from_secs(5))
}

fn c2() -> Outcome {
    timed_verify("entry-5.3.4", 200, Duration::from_secs(5))
}

fn c3() -> Outcome {
    let rec = lookup("thm-1.1").unwrap();
    let xs = [
        rat(0),
        ratio(1, 2),
        ratio(-1, 2),
        rat(1),
        rat(-1),
        ratio(3, 2),
        ratio(-3, 2),
        rat(2),
    ];
    let bad: Vec<String> = xs
        .par_iter()
        .map(|x| rec.verify_at(150, x))
        .filter(|r| !r.passed())
        .map(|r| format!("{:?} {:?}", r.mismatch, r.note))
        .collect();
    ensure(bad.is_empty(), bad.join("; "))?;
    let key = rec.lhs(Some(&ratio(1, 2)), 150).unwrap();
    let entry = lookup("entry-5.3.4").unwrap().lhs(None, 150).unwrap();
    ensure(key == entry, "x = 1/2 specialization differs from entry-5.3.4")?;
    Ok("8 sample points to order 150; x = 1/2 sum side identical to entry-5.3.4".into())
}

fn c4() -> Outcome {
    let cases: Vec<(FiniteIdentity, usize)> = [FiniteIdentity::KeyProduct, FiniteIdentity::AndrewsProduct]
        .into_iter()
        .flat_map(|w| (0..=25).map(move |n| (w, n)))
        .collect();
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|&(w, n)| {
            let r = finite_identity_check(w, n, finite_identity_degree(w, n)).unwrap();
            ensure(
                r.passed() && r.samples.len() == n + 2,
                format!("{w:?} n = {n}: {:?}", r.failure),
            )
            .err()
        })
        .collect();
    ensure(bad.is_empty(), bad.join("; "))?;
    Ok("both finite identities for n = 0..25 at n + 2 points".into())
}

fn c5() -> Outcome {
    let mut xs = special_xs();
    xs.truncate(7);
    let bad: Vec<String> = xs
        .par_iter()
        .flat_map(|x| vec![("key", key_pair(x), x.clone()), ("andrews", andrews_pair(x), x.clone())])
        .filter_map(|(name, p, x)| {
            let r = check_bailey_pair(&p, 25, 200).unwrap();
            ensure(r.passed(), format!("{name} pair at x = {x}: {:?}", r.failure)).err()
        })
        .collect();
    ensure(bad.is_empty(), bad.join("; "))?;

    let good = key_pair(&ratio(1, 2));
    let base = good.clone();
    let mutated = good.with_beta(Arc::new(move |n, order| {
        let b = base.beta(n, order)?;
        if n == 7 {
            let mut c = b.clone();
            c.set_coeff(60, b.coeff(60).unwrap() - rat(2));
            return Ok(c);
        }
        Ok(b)
    }));
    let f = check_bailey_pair(&mutated, 25, 200)
        .unwrap()
        .failure
        .ok_or("mutated pair passed")?;
    ensure(
        f.n == 7 && f.mismatch.exponent == 60,
        format!("control failed at n = {}, q^{}", f.n, f.mismatch.exponent),
    )?;
    Ok("key and Andrews pairs at 7 special points, n <= 25, order 200; mutated beta_7 caught".into())
}

fn c6() -> Outcome {
    let xs = [rat(0), ratio(1, 2), rat(-1), ratio(3, 2), ratio(2, 5)];
    let forms = [
        (WeakForm::WF1, "thm-1.1"),
        (WeakForm::WF2, "thm-5.1"),
        (WeakForm::WF3, "thm-5.3"),
        (WeakForm::WF4, "thm-6.1"),
    ];
    let cases: Vec<_> = forms
        .iter()
        .flat_map(|f| xs.iter().map(move |x| (*f, x.clone())))
        .collect();
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|((wf, id), x)| {
            let (lhs, rhs) = apply_weak_form(*wf, &key_pair(x), 150).unwrap();
            let rec = lookup(id).unwrap();
            let same = lhs == rec.lhs(Some(x), 150).unwrap() && rhs == rec.rhs(Some(x), 150).unwrap();
            ensure(same, format!("{wf} vs {id} at x = {x}")).err()
        })
        .collect();
    ensure(bad.is_empty(), bad.join("; "))?;
    for x in &xs {
        let p = key_pair(x);
        ensure(
            apply_multisum(&p, 1, 150).unwrap() == apply_weak_form(WeakForm::WF1, &p, 150).unwrap(),
            format!("multisum k = 1 differs from WF1 at x = {x}"),
        )?;
    }
    Ok("four weak forms reproduce their theorems bit for bit at 5 points; k = 1 chain is WF1".into())
}

fn c7() -> Outcome {
    let ids = [
        "entry-5.3.3",
        "entry-5.3.2",
        "fib-4.4a",
        "fib-4.4b",
        "cor-5.2a",
        "cor-5.2b",
        "cor-5.2c",
        "cor-5.2d",
        "cor-5.2e",
        "cor-5.2f",
        "cor-5.4a",
        "cor-5.4b",
        "cor-5.4c",
        "cor-5.4d",
        "cor-6.2",
        "cor-6.3",
        "cor-6.4",
        "cor-6.5",
        "mock-mu2",
    ];
    verify_ids(&ids, 150)?;
    let a = lookup("fib-4.4a").unwrap();
    let b = lookup("fib-4.4b").unwrap();
    for (sa, sb) in [
        (a.lhs(None, 150), b.lhs(None, 150)),
        (a.rhs(None, 150), b.rhs(None, 150)),
    ] {
        ensure(
            substitute_negate(&sa.unwrap()) == sb.unwrap(),
            "x = 3/2 and x = -3/2 forms do not map under q -> -q",
        )?;
    }
    Ok(format!(
        "{} identities to order 150; x = +-3/2 pair maps under q -> -q",
        ids.len()
    ))
}

fn c8() -> Outcome {
    let mut ids = Vec::new();
    for f in ["a", "b", "c", "d"] {
        for k in 1..=3 {
            ids.push(format!("cor-4.6{f}-k{k}"));
        }
    }
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    verify_ids(&refs, 100)?;
    for (f, single) in [
        ("a", "entry-5.3.3"),
        ("b", "entry-5.3.4"),
        ("c", "entry-5.3.2"),
        ("d", "fib-4.4a"),
    ] {
        let multi = lookup(&format!("cor-4.6{f}-k1")).unwrap();
        let one = lookup(single).unwrap();
        ensure(
            multi.rhs(None, 100).unwrap() == one.lhs(None, 100).unwrap()
                && multi.lhs(None, 100).unwrap() == one.rhs(None, 100).unwrap(),
            format!("cor-4.6{f}-k1 differs from {single}"),
        )?;
    }
    Ok("12 instances to order 100; k = 1 equals the single sums".into())
}

fn c9() -> Outcome {
    let rec = lookup("heine").unwrap();
    ensure(rec.instances.len() == 25, format!("{} instances", rec.instances.len()))?;
    verify_ids(&["heine"], 150)?;
    Ok("25 (alpha, beta) instances to order 150".into())
}

fn c10() -> Outcome {
    verify_ids(
        &[
            "thm-7.1", "thm-7.5", "cor-7.2", "cor-7.3", "cor-7.4", "cor-7.6a", "cor-7.6b", "cor-7.6c",
        ],
        150,
    )?;
    let terms = |name: &str, n: i64, x: Option<Rational>| -> Vec<(i64, i64)> {
        let spec = named_hecke(name).unwrap().spec;
        let mut ev = x.map(ChebyshevEvaluator::new);
        spec.inner_terms(n, ev.as_mut())
            .unwrap()
            .into_iter()
            .map(|t| (t.coeff.to_integer().try_into().unwrap(), t.exponent))
            .collect()
    };
    let hand: [InnerCase; 7] = [
        ("thm-7.1", 0, Some(rat(-1)), vec![(1, 0)]),
        ("thm-7.1", 3, Some(rat(-1)), vec![(-1, 12), (2, 11)]),
        ("thm-7.1", 4, Some(rat(-1)), vec![(1, 20), (-2, 19), (2, 16)]),
        ("cor-7.2", 2, None, vec![(-1, 5), (1, 6), (-1, 5)]),
        ("cor-7.2", 4, None, vec![(1, 16), (-1, 19), (1, 20), (-1, 19), (1, 16)]),
        ("cor-7.3", 4, None, vec![(-1, 8), (1, 10), (-1, 8)]),
        ("thm-7.5", 1, Some(rat(-1)), vec![(-1, 20), (1, 2), (2, 19), (-2, 1)]),
    ];
    for (name, n, x, want) in hand {
        ensure(terms(name, n, x) == want, format!("inner sum of {name} at n = {n}"))?;
    }
    Ok("8 Hecke-type identities to order 150; inner sums match hand enumeration".into())
}

fn c11() -> Outcome {
    verify_ids(&["qbi-8.1"], 30)?;
    verify_ids(&["jtp-limit-8"], 100)?;
    let rhs = lookup("jtp-limit-8").unwrap().rhs(None, 100).unwrap();
    let params = [
        SignedMonomial::neg_q_pow(1),
        SignedMonomial::neg_q_pow(3),
        SignedMonomial::q_pow(4),
    ];
    let want = params.iter().fold(FormalSeries::one(100), |acc, a| {
        &acc * &pochhammer_infinite(a, 4, 100).unwrap()
    });
    ensure(rhs == want, "limit product differs")?;
    Ok("exact for n = 0..30; normalized limit to order 100".into())
}

fn arb_series(order: usize) -> impl Strategy<Value = FormalSeries> {
    prop::collection::vec((-9i64..10, 1i64..4), order + 1)
        .prop_map(|v| FormalSeries::from_coeffs(v.into_iter().map(|(n, d)| ratio(n, d)).collect()))
}

fn c12() -> Outcome {
    let mut runner = TestRunner::new_with_rng(
        Config {
            failure_persistence: None,
            ..Config::with_cases(100)
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    runner
        .run(&(arb_series(64), arb_series(64), arb_series(64)), |(a, b, c)| {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &FormalSeries::one(64), a.clone());
            Ok(())
        })
        .map_err(|e| format!("ring laws: {e}"))?;

    for a in [
        SignedMonomial::q_pow(1),
        SignedMonomial::neg_q_pow(2),
        SignedMonomial::new(ratio(1, 2), 0),
    ] {
        for b in 1..=3 {
            for n in 0..30i64 {
                let mut rhs = pochhammer_finite(&a, b, n, 80).unwrap();
                rhs.mul_one_minus(&a.coeff, a.exponent + b * n as usize);
                ensure(
                    pochhammer_finite(&a, b, n + 1, 80).unwrap() == rhs,
                    format!("shift recurrence {a} n = {n}"),
                )?;
            }
        }
    }
    for b in 1..=2usize {
        for n in 1..=20i64 {
            for k in 0..=n {
                let mut rhs = qbinomial(n - 1, k - 1, b, 150).unwrap();
                rhs.add_scaled_shifted(&qbinomial(n - 1, k, b, 150).unwrap(), &rat(1), b * k as usize);
                ensure(qbinomial(n, k, b, 150).unwrap() == rhs, format!("q-Pascal [{n}, {k}]"))?;
            }
        }
    }
    for (z, b) in [
        (SignedMonomial::q_pow(1), 2),
        (SignedMonomial::neg_q_pow(1), 3),
        (SignedMonomial::q_pow(2), 5),
    ] {
        ensure(
            jacobi_triple_sum(&z, b, 200).unwrap() == jacobi_triple_product(&z, b, 200).unwrap(),
            format!("triple product z = {z}, base q^{b}"),
        )?;
    }
    for arg in SpecialArg::ALL {
        for n in 0..=500 {
            ensure(
                cheb_special(arg, n) == cheb_v(&arg.value(), n as i64),
                format!("V_{n}({arg})"),
            )?;
        }
    }
    for n in 1..=500u64 {
        ensure(
            lucas(2 * n) == fibonacci(2 * n + 1) + fibonacci(2 * n - 1),
            format!("L_{}", 2 * n),
        )?;
    }
    ensure(!lucas(0).is_zero() && fibonacci(0) == BigInt::zero(), "F_0, L_0")?;
    let euler = pochhammer_infinite(&SignedMonomial::q_pow(1), 1, 500).unwrap();
    ensure(
        partition_oracle(500) == series_invert(&euler).unwrap(),
        "partition oracle",
    )?;
    Ok(
        "ring laws (100 cases), shift and q-Pascal recurrences, triple product, special values, Lucas, partitions"
            .into(),
    )
}

fn c13() -> Outcome {
    let stanzas = corpus().map_err(|e| e.to_string())?;
    let reparsed = parse_corpus(&print_corpus(&stanzas)).map_err(|e| e.to_string())?;
    ensure(reparsed == stanzas, "round trip changed the corpus")?;

    let mut jobs = Vec::new();
    for (i, s) in stanzas.iter().enumerate() {
        let instance = stanzas[..i].iter().filter(|t| t.id == s.id).count();
        jobs.push((s, instance));
    }
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|(s, instance)| {
            let rec = lookup(&s.id).ok()?;
            let inst = &rec.instances[*instance];
            let points: Vec<(Option<Rational>, usize)> = match rec.kind {
                IdentityKind::Series => vec![(None, rec.default_order)],
                IdentityKind::XParametric { .. } => vec![
                    (Some(ratio(2, 3)), rec.default_order),
                    (Some(ratio(-3, 2)), rec.default_order),
                ],
                IdentityKind::Finite => (0..=6).map(|n| (None, n)).collect(),
            };
            for (x, n) in points {
                let (lhs, rhs) = s.sides(x.as_ref(), n).ok()?;
                if lhs != (inst.lhs)(x.as_ref(), n).ok()? || rhs != (inst.rhs)(x.as_ref(), n).ok()? {
                    return Some(format!("{} {}", s.id, inst.label));
                }
            }
            None
        })
        .collect();
    ensure(bad.is_empty(), bad.join("; "))?;
    ensure(
        stanzas.len() == registry().iter().map(|r| r.instances.len()).sum::<usize>(),
        "stanza count",
    )?;

    for (src, line, column) in [
        ("poch(q, q,", 1, 11),
        ("sum(n, 0..auto q^(n^2))", 1, 16),
        ("1 +\n  * q", 2, 3),
    ] {
        match parse_expr(src) {
            Err(DslError::Syntax { at, .. }) if at == (Location { line, column }) => {}
            other => return Err(format!("{src:?}: {other:?}")),
        }
    }
    Ok(format!(
        "round trip; {} stanzas equal their native builders; 3 located syntax errors",
        stanzas.len()
    ))
}

fn c14() -> Outcome {
    let (code, text, t) = cli(&["verify-all", "--order", "100"]);
    ensure(
        code == 0,
        format!(
            "exit {code}: {}",
            text.lines()
                .filter(|l| !l.contains("\"pass\""))
                .collect::<Vec<_>>()
                .join("; ")
        ),
    )?;
    ensure(t < Duration::from_secs(60), format!("took {t:.2?}"))?;
    Ok(format!("{} records in {t:.2?}", text.lines().count()))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("dyson-1.1 to order 200", c1),
        ("entry-5.3.4 to order 200", c2),
        ("thm-1.1 sample points and x = 1/2 specialization", c3),
        ("finite polynomial identities", c4),
        ("Bailey pair checker", c5),
        ("weak-form closure", c6),
        ("single-sum corollaries", c7),
        ("multisum corollaries", c8),
        ("Heine grid", c9),
        ("Hecke-type identities", c10),
        ("q-binomial identity and limit", c11),
        ("property suites", c12),
        ("DSL parser and corpus", c13),
        ("verify-all to order 100", c14),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.1?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{t:.1?}]", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
