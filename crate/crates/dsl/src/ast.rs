//! Expression tree.

use num_bigint::BigInt;
use qrr_core::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// Non-integral literal `p/q`.
    Rat(Rational),
    /// The parameter `x`.
    X,
    /// `N`, the truncation order of the evaluation.
    Order,
    /// A summation or product index.
    Var(String),
    /// `q^e`.
    QPower(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    /// `poch(a, q^b, n)`; `len == None` is the infinite product.
    Poch {
        a: Box<Expr>,
        base: Box<Expr>,
        len: Option<Box<Expr>>,
    },
    /// `qbinom(n, k, b)`, Gaussian binomial in base `q^b`.
    QBinom {
        n: Box<Expr>,
        k: Box<Expr>,
        base: Box<Expr>,
    },
    /// `sum`, `altsum` or `prod` over `var` in `lo..hi`.
    Series {
        op: SeriesOp,
        var: String,
        lo: Box<Expr>,
        hi: Bound,
        body: Box<Expr>,
    },
    ChebV {
        x: Box<Expr>,
        n: Box<Expr>,
    },
    Fib(Box<Expr>),
    Luc(Box<Expr>),
    Invert(Box<Expr>),
    /// `subst(e, k)`: `q -> q^k`.
    SubstituteQ(Box<Expr>, Box<Expr>),
    /// `negq(e)`: `q -> -q`.
    NegateQ(Box<Expr>),
    AppellLerch(AppellLerch),
    /// One of the registered Hecke-type double sums.
    Hecke(String),
    /// `regroup(s0, s1, s2)`: real value of `s0 + w s1 + w^2 s2` for a
    /// primitive cube root of unity `w`.
    Regroup(Box<Expr>, Box<Expr>, Box<Expr>),
    Floor(Box<Expr>),
    Isqrt(Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Sum,
    /// Alternating sum `sum (-1)^n body`, Abel-summed when unbounded.
    AltSum,
    Prod,
}

impl SeriesOp {
    pub fn keyword(self) -> &'static str {
        match self {
            SeriesOp::Sum => "sum",
            SeriesOp::AltSum => "altsum",
            SeriesOp::Prod => "prod",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Auto,
    Upto(Box<Expr>),
}

/// `appell_lerch(l, q^b, a, c q^e [, m, r])`:
/// `sum_{n in Z} (-1)^{ln} q^{b l n(n+1)/2} (c q^e)^n / (1 - a q^{bn})`,
/// optionally over `n = r (mod m)` only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppellLerch {
    pub level: Box<Expr>,
    pub base: Box<Expr>,
    pub a: Box<Expr>,
    pub b: Box<Expr>,
    pub residue: Option<(Box<Expr>, Box<Expr>)>,
}

impl Expr {
    pub fn int(n: i64) -> Self {
        Expr::Int(BigInt::from(n))
    }

    /// Free of `q`: evaluates to a rational number.
    pub fn is_scalar(&self) -> bool {
        match self {
            Expr::Int(_) | Expr::Rat(_) | Expr::X | Expr::Order | Expr::Var(_) => true,
            Expr::ChebV { .. } | Expr::Fib(_) | Expr::Luc(_) | Expr::Floor(_) | Expr::Isqrt(_) => true,
            Expr::Neg(a) => a.is_scalar(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.is_scalar() && b.is_scalar()
            }
            _ => false,
        }
    }
}
