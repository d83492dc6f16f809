//! Recursive-descent parser.
//!
//! ```text
//! expr   := mul (('+' | '-') mul)*
//! mul    := unary (('*' | '/') unary | power)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := 'q' ('^' unary)? | atom ('^' unary)?
//! atom   := INT | '(' expr ')' | 'x' | 'N' | VAR | CALL
//! ```
//!
//! So `-q^2` is `-(q^2)`, `2n^2` is `2 (n^2)` and `a/b c` is `(a/b) c`.
//! Juxtaposition only continues into a number, a parenthesis or a name in
//! scope, which keeps stanza keywords from being read as factors.

use num_bigint::BigInt;
use num_traits::One;
use qrr_core::corpus::HECKE_NAMES;
use qrr_core::Rational;

use crate::ast::{AppellLerch, Bound, Expr, SeriesOp};
use crate::corpus::{Stanza, StanzaKind};
use crate::error::{DslError, Location, Result};
use crate::lexer::{Lexer, Tok, Token};

pub const FUNCTIONS: [&str; 16] = [
    "poch",
    "qbinom",
    "sum",
    "altsum",
    "prod",
    "chebv",
    "fib",
    "luc",
    "inv",
    "subst",
    "negq",
    "appell_lerch",
    "hecke",
    "regroup",
    "floor",
    "isqrt",
];

const RESERVED: [&str; 5] = ["q", "x", "N", "inf", "auto"];

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

pub fn parse_corpus(src: &str) -> Result<Vec<Stanza>> {
    let mut p = Parser::new(src);
    let mut out = Vec::new();
    while p.peek()?.tok != Tok::Eof {
        out.push(p.stanza()?);
    }
    Ok(out)
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<Token>,
    scope: Vec<String>,
}

fn syntax(at: Location, message: impl Into<String>) -> DslError {
    DslError::Syntax {
        at,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            lexer: Lexer::new(src),
            peeked: None,
            scope: Vec::new(),
        }
    }

    fn peek(&mut self) -> Result<&Token> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next_token()?);
        }
        Ok(self.peeked.as_ref().expect("just filled"))
    }

    fn next(&mut self) -> Result<Token> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lexer.next_token(),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Token> {
        let t = self.next()?;
        if t.tok == want {
            Ok(t)
        } else {
            Err(syntax(
                t.at,
                format!("expected {}, found {}", want.describe(), t.tok.describe()),
            ))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<Token> {
        let t = self.next()?;
        match &t.tok {
            Tok::Ident(s) if s == word => Ok(t),
            other => Err(syntax(t.at, format!("expected `{word}`, found {}", other.describe()))),
        }
    }

    fn known(&self, name: &str) -> bool {
        RESERVED[..3].contains(&name) || FUNCTIONS.contains(&name) || self.scope.iter().any(|v| v == name)
    }

    // -- expressions ------------------------------------------------------

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.mul()?;
        loop {
            match self.peek()?.tok {
                Tok::Plus => {
                    self.next()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.mul()?));
                }
                Tok::Minus => {
                    self.next()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.mul()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn mul(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let implicit = match self.peek()?.tok.clone() {
                Tok::Star => {
                    self.next()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                    continue;
                }
                Tok::Slash => {
                    self.next()?;
                    let rhs = self.unary()?;
                    lhs = divide(lhs, rhs);
                    continue;
                }
                Tok::Int(_) | Tok::LParen => true,
                Tok::Ident(name) => self.known(&name),
                _ => false,
            };
            if !implicit {
                return Ok(lhs);
            }
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek()?.tok == Tok::Minus {
            self.next()?;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        if matches!(&self.peek()?.tok, Tok::Ident(s) if s == "q") {
            self.next()?;
            if self.peek()?.tok == Tok::Caret {
                self.next()?;
                return Ok(Expr::QPower(Box::new(self.unary()?)));
            }
            return Ok(Expr::QPower(Box::new(Expr::int(1))));
        }
        let base = self.atom()?;
        if self.peek()?.tok == Tok::Caret {
            self.next()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.next()?;
        match t.tok {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(Expr::X),
                "N" => Ok(Expr::Order),
                _ if self.scope.contains(&name) => Ok(Expr::Var(name)),
                _ if FUNCTIONS.contains(&name.as_str()) => self.call(&name, t.at),
                _ => Err(DslError::UnknownIdentifier { name, at: t.at }),
            },
            other => Err(syntax(
                t.at,
                format!("expected an expression, found {}", other.describe()),
            )),
        }
    }

    fn arg(&mut self) -> Result<Box<Expr>> {
        Ok(Box::new(self.expr()?))
    }

    fn comma(&mut self) -> Result<()> {
        self.expect(Tok::Comma).map(|_| ())
    }

    fn args<const K: usize>(&mut self) -> Result<[Box<Expr>; K]> {
        let mut out = Vec::with_capacity(K);
        for i in 0..K {
            if i > 0 {
                self.comma()?;
            }
            out.push(self.arg()?);
        }
        self.expect(Tok::RParen)?;
        Ok(out.try_into().expect("K arguments"))
    }

    fn call(&mut self, name: &str, at: Location) -> Result<Expr> {
        self.expect(Tok::LParen)?;
        let e = match name {
            "poch" => {
                let a = self.arg()?;
                self.comma()?;
                let base = self.arg()?;
                self.comma()?;
                let len = if matches!(&self.peek()?.tok, Tok::Ident(s) if s == "inf") {
                    self.next()?;
                    None
                } else {
                    Some(self.arg()?)
                };
                self.expect(Tok::RParen)?;
                Expr::Poch { a, base, len }
            }
            "qbinom" => {
                let [n, k, base] = self.args()?;
                Expr::QBinom { n, k, base }
            }
            "sum" | "altsum" | "prod" => {
                let op = match name {
                    "sum" => SeriesOp::Sum,
                    "altsum" => SeriesOp::AltSum,
                    _ => SeriesOp::Prod,
                };
                self.series(op)?
            }
            "chebv" => {
                let [x, n] = self.args()?;
                Expr::ChebV { x, n }
            }
            "fib" => Expr::Fib(self.args::<1>()?.into_iter().next().expect("one")),
            "luc" => Expr::Luc(self.args::<1>()?.into_iter().next().expect("one")),
            "inv" => Expr::Invert(self.args::<1>()?.into_iter().next().expect("one")),
            "negq" => Expr::NegateQ(self.args::<1>()?.into_iter().next().expect("one")),
            "floor" => Expr::Floor(self.args::<1>()?.into_iter().next().expect("one")),
            "isqrt" => Expr::Isqrt(self.args::<1>()?.into_iter().next().expect("one")),
            "subst" => {
                let [e, k] = self.args()?;
                Expr::SubstituteQ(e, k)
            }
            "regroup" => {
                let [a, b, c] = self.args()?;
                Expr::Regroup(a, b, c)
            }
            "hecke" => {
                let t = self.next()?;
                let Tok::Str(s) = t.tok else {
                    return Err(syntax(
                        t.at,
                        format!("expected a quoted sum name, found {}", t.tok.describe()),
                    ));
                };
                if !HECKE_NAMES.contains(&s.as_str()) {
                    return Err(DslError::UnknownIdentifier { name: s, at: t.at });
                }
                self.expect(Tok::RParen)?;
                Expr::Hecke(s)
            }
            "appell_lerch" => {
                let level = self.arg()?;
                self.comma()?;
                let base = self.arg()?;
                self.comma()?;
                let a = self.arg()?;
                self.comma()?;
                let b = self.arg()?;
                let residue = if self.peek()?.tok == Tok::Comma {
                    self.next()?;
                    let m = self.arg()?;
                    self.comma()?;
                    Some((m, self.arg()?))
                } else {
                    None
                };
                self.expect(Tok::RParen)?;
                Expr::AppellLerch(AppellLerch {
                    level,
                    base,
                    a,
                    b,
                    residue,
                })
            }
            _ => {
                return Err(DslError::UnknownIdentifier {
                    name: name.to_string(),
                    at,
                })
            }
        };
        Ok(e)
    }

    fn binder(&mut self) -> Result<String> {
        let t = self.next()?;
        match t.tok {
            Tok::Ident(v) if RESERVED.contains(&v.as_str()) || FUNCTIONS.contains(&v.as_str()) => {
                Err(syntax(t.at, format!("`{v}` is reserved and cannot name an index")))
            }
            Tok::Ident(v) => Ok(v),
            other => Err(syntax(
                t.at,
                format!("expected an index name, found {}", other.describe()),
            )),
        }
    }

    fn series(&mut self, op: SeriesOp) -> Result<Expr> {
        let var = self.binder()?;
        self.comma()?;
        let lo = self.arg()?;
        self.expect(Tok::DotDot)?;
        let hi = if matches!(&self.peek()?.tok, Tok::Ident(s) if s == "auto") {
            self.next()?;
            Bound::Auto
        } else {
            Bound::Upto(self.arg()?)
        };
        self.comma()?;
        self.scope.push(var.clone());
        let body = self.expr();
        self.scope.pop();
        let body = Box::new(body?);
        self.expect(Tok::RParen)?;
        Ok(Expr::Series { op, var, lo, hi, body })
    }

    // -- corpus stanzas ---------------------------------------------------

    fn braced(&mut self) -> Result<Expr> {
        self.expect(Tok::LBrace)?;
        let e = self.expr()?;
        self.expect(Tok::RBrace)?;
        Ok(e)
    }

    fn stanza(&mut self) -> Result<Stanza> {
        let start = self.keyword("identity")?.at;
        debug_assert!(self.peeked.is_none());
        let id = match self.lexer.raw_id()?.tok {
            Tok::Ident(s) => s,
            _ => unreachable!("raw ids are identifiers"),
        };
        self.expect(Tok::LBrace)?;
        let (mut anchor, mut lhs, mut rhs, mut kind, mut order) = (None, None, None, None, None);
        loop {
            let t = self.next()?;
            let word = match t.tok {
                Tok::RBrace => break,
                Tok::Ident(w) => w,
                other => {
                    return Err(syntax(
                        t.at,
                        format!("expected a stanza clause, found {}", other.describe()),
                    ))
                }
            };
            let twice = || syntax(t.at, format!("duplicate `{word}` clause"));
            match word.as_str() {
                "anchor" => {
                    let s = self.next()?;
                    let Tok::Str(text) = s.tok else {
                        return Err(syntax(
                            s.at,
                            format!("expected a quoted anchor, found {}", s.tok.describe()),
                        ));
                    };
                    if anchor.replace(text).is_some() {
                        return Err(twice());
                    }
                }
                "lhs" => {
                    if lhs.replace(self.braced()?).is_some() {
                        return Err(twice());
                    }
                }
                "rhs" => {
                    if rhs.replace(self.braced()?).is_some() {
                        return Err(twice());
                    }
                }
                "xparam" => {
                    self.keyword("degree_bound")?;
                    let bound = self.expr()?;
                    if kind.replace(StanzaKind::XParametric { degree_bound: bound }).is_some() {
                        return Err(twice());
                    }
                }
                "finite" => {
                    if lhs.is_some() || rhs.is_some() {
                        return Err(syntax(t.at, "`finite` must come before `lhs` and `rhs`"));
                    }
                    let var = self.binder()?;
                    self.keyword("degree")?;
                    self.scope.push(var.clone());
                    let degree = self.expr()?;
                    if kind.replace(StanzaKind::Finite { var, degree }).is_some() {
                        return Err(twice());
                    }
                }
                "order" => {
                    let n = self.next()?;
                    let Tok::Int(v) = n.tok else {
                        return Err(syntax(n.at, format!("expected an order, found {}", n.tok.describe())));
                    };
                    let v = usize::try_from(v).map_err(|_| syntax(n.at, "order out of range"))?;
                    if order.replace(v).is_some() {
                        return Err(twice());
                    }
                }
                other => return Err(syntax(t.at, format!("unknown stanza clause `{other}`"))),
            }
        }
        self.scope.clear();
        let missing = |what: &str| syntax(start, format!("identity `{id}` has no {what}"));
        Ok(Stanza {
            anchor: anchor.ok_or_else(|| missing("anchor"))?,
            lhs: lhs.ok_or_else(|| missing("lhs"))?,
            rhs: rhs.ok_or_else(|| missing("rhs"))?,
            kind: kind.unwrap_or(StanzaKind::Series),
            order,
            id,
        })
    }
}

/// `a / b`, folding two integer literals into a rational literal when the
/// quotient is not an integer.
fn divide(lhs: Expr, rhs: Expr) -> Expr {
    if let (Expr::Int(a), Expr::Int(b)) = (&lhs, &rhs) {
        if *b != BigInt::ZERO {
            let r = Rational::new(a.clone(), b.clone());
            if !r.denom().is_one() {
                return Expr::Rat(r);
            }
        }
    }
    Expr::Div(Box::new(lhs), Box::new(rhs))
}
