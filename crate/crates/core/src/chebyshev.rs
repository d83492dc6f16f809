//! Chebyshev polynomials of the third kind at rational arguments.
//!
//! `V_0 = 1`, `V_1 = 2x - 1`, `V_n = 2x V_{n-1} - V_{n-2}`, and `V_n = 0` for
//! negative `n`. Values come from the recurrence, never from the cosine form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{rat, ratio, Rational};

/// Memoised `V_n(x)` for one fixed `x`.
///
/// Holds a growable cache, so use one evaluator per thread.
#[derive(Debug, Clone)]
pub struct ChebyshevEvaluator {
    x: Rational,
    cache: Vec<Rational>,
}

impl ChebyshevEvaluator {
    pub fn new(x: Rational) -> Self {
        let v1 = &x * rat(2) - rat(1);
        Self {
            x,
            cache: vec![Rational::one(), v1],
        }
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    /// `V_n(x)`.
    pub fn v(&mut self, n: i64) -> Rational {
        if n < 0 {
            return Rational::zero();
        }
        let n = n as usize;
        let two_x = &self.x * rat(2);
        while self.cache.len() <= n {
            let k = self.cache.len();
            let next = &two_x * &self.cache[k - 1] - &self.cache[k - 2];
            self.cache.push(next);
        }
        self.cache[n].clone()
    }

    /// `v_n(x) = V_n(x) + V_{n-1}(x)`.
    pub fn v_plus_prev(&mut self, n: i64) -> Rational {
        self.v(n) + self.v(n - 1)
    }
}

pub fn cheb_v(x: &Rational, n: i64) -> Rational {
    ChebyshevEvaluator::new(x.clone()).v(n)
}

/// `V_n(x) + V_{n-1}(x)`, which is `2 T_n(x)` for `n >= 1`.
pub fn cheb_v_plus_prev(x: &Rational, n: i64) -> Rational {
    ChebyshevEvaluator::new(x.clone()).v_plus_prev(n)
}

/// First-kind `T_n(x)` by its own recurrence (`T_0 = 1`, `T_1 = x`).
pub fn cheb_t(x: &Rational, n: usize) -> Rational {
    let (mut prev, mut cur) = (Rational::one(), x.clone());
    if n == 0 {
        return prev;
    }
    let two_x = x * rat(2);
    for _ in 1..n {
        let next = &two_x * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Arguments at which `V_n` has a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialArg {
    MinusOne,
    MinusHalf,
    Zero,
    Half,
    One,
    ThreeHalves,
    MinusThreeHalves,
}

impl SpecialArg {
    pub const ALL: [SpecialArg; 7] = [
        SpecialArg::MinusOne,
        SpecialArg::MinusHalf,
        SpecialArg::Zero,
        SpecialArg::Half,
        SpecialArg::One,
        SpecialArg::ThreeHalves,
        SpecialArg::MinusThreeHalves,
    ];

    pub fn value(self) -> Rational {
        match self {
            SpecialArg::MinusOne => rat(-1),
            SpecialArg::MinusHalf => ratio(-1, 2),
            SpecialArg::Zero => rat(0),
            SpecialArg::Half => ratio(1, 2),
            SpecialArg::One => rat(1),
            SpecialArg::ThreeHalves => ratio(3, 2),
            SpecialArg::MinusThreeHalves => ratio(-3, 2),
        }
    }

    pub fn from_rational(x: &Rational) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| &a.value() == x)
            .ok_or_else(|| Error::UnsupportedArgument(x.to_string()))
    }
}

impl fmt::Display for SpecialArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Closed-form `V_n(x)` at the special arguments, by residue class.
pub fn cheb_special(arg: SpecialArg, n: usize) -> Rational {
    let sign = |k: usize| if k.is_multiple_of(2) { rat(1) } else { rat(-1) };
    match arg {
        SpecialArg::MinusOne => sign(n) * rat(2 * n as i64 + 1),
        SpecialArg::MinusHalf => {
            if n % 3 == 1 {
                rat(-2)
            } else {
                rat(1)
            }
        }
        SpecialArg::Zero => match n % 4 {
            0 | 3 => rat(1),
            _ => rat(-1),
        },
        SpecialArg::Half => match n % 6 {
            0 | 5 => rat(1),
            1 | 4 => rat(0),
            _ => rat(-1),
        },
        SpecialArg::One => rat(1),
        SpecialArg::ThreeHalves => Rational::from_integer(fibonacci(2 * n as u64 + 1)),
        SpecialArg::MinusThreeHalves => sign(n) * Rational::from_integer(lucas(2 * n as u64 + 1)),
    }
}

pub fn fibonacci(n: u64) -> BigInt {
    lucas_sequence(BigInt::zero(), BigInt::one(), n)
}

pub fn lucas(n: u64) -> BigInt {
    lucas_sequence(BigInt::from(2), BigInt::one(), n)
}

/// `F_n` extended by zero to negative indices, matching `V_n = 0` for `n < 0`.
///
/// With this convention `F_{2n+1} + F_{2n-1} = V_n(3/2) + V_{n-1}(3/2)` holds
/// at `n = 0` as well.
pub fn fibonacci_or_zero(n: i64) -> BigInt {
    if n < 0 {
        BigInt::zero()
    } else {
        fibonacci(n as u64)
    }
}

fn lucas_sequence(first: BigInt, second: BigInt, n: u64) -> BigInt {
    let (mut a, mut b) = (first, second);
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn recurrence_values() {
        assert_eq!(cheb_v(&rat(-1), 2), rat(5));
        assert_eq!(cheb_v(&ratio(7, 3), -3), rat(0));
        assert_eq!(cheb_v(&ratio(3, 2), 3), rat(13));
        // V_2(x) = 4x^2 - 2x - 1
        let x = ratio(5, 7);
        assert_eq!(cheb_v(&x, 2), rat(4) * &x * &x - rat(2) * &x - rat(1));
    }

    #[test]
    fn plus_prev_values() {
        let x = ratio(-2, 9);
        assert_eq!(cheb_v_plus_prev(&x, 0), rat(1));
        assert_eq!(cheb_v_plus_prev(&x, 1), rat(2) * &x);
        assert_eq!(cheb_v_plus_prev(&x, 2), rat(4) * &x * &x - rat(2));
        assert_eq!(cheb_v_plus_prev(&x, 2), rat(2) * cheb_t(&x, 2));
    }

    #[test]
    fn special_values() {
        assert_eq!(cheb_special(SpecialArg::Half, 7), rat(0));
        assert_eq!(cheb_special(SpecialArg::One, 123), rat(1));
        assert_eq!(cheb_special(SpecialArg::MinusThreeHalves, 2), rat(11));
        assert!(matches!(
            SpecialArg::from_rational(&ratio(1, 3)),
            Err(Error::UnsupportedArgument(_))
        ));
        assert_eq!(
            SpecialArg::from_rational(&ratio(-3, 2)).unwrap(),
            SpecialArg::MinusThreeHalves
        );
    }

    #[test]
    fn fibonacci_lucas() {
        assert_eq!(fibonacci(7), BigInt::from(13));
        assert_eq!(lucas(0), BigInt::from(2));
        assert_eq!(lucas(1), BigInt::from(1));
        assert_eq!(lucas(4), BigInt::from(7));
        assert_eq!(lucas(4), fibonacci(5) + fibonacci(3));
        assert_eq!(fibonacci_or_zero(-1), BigInt::zero());
    }

    #[test]
    fn special_table_agrees_with_recurrence() {
        for arg in SpecialArg::ALL {
            let mut ev = ChebyshevEvaluator::new(arg.value());
            for n in 0..=500usize {
                assert_eq!(cheb_special(arg, n), ev.v(n as i64), "x = {arg}, n = {n}");
            }
        }
    }

    #[test]
    fn lucas_even_index_identity() {
        for n in 1..=500u64 {
            assert_eq!(lucas(2 * n), fibonacci(2 * n + 1) + fibonacci(2 * n - 1), "n = {n}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn twice_first_kind(num in -50i64..50, den in 1i64..20) {
            let x = ratio(num, den);
            let mut ev = ChebyshevEvaluator::new(x.clone());
            for n in 1..40 {
                prop_assert_eq!(ev.v_plus_prev(n), rat(2) * cheb_t(&x, n as usize));
            }
        }
    }
}
