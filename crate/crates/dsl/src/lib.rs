//! A small language for q-series expressions.
//!
//! ```text
//! sum(n, 0..auto, q^(n^2) / poch(q, q, n)^2)
//! ```
//!
//! Expressions parse to an [`Expr`], print back canonically and evaluate
//! exactly to a truncated [`qrr_core::FormalSeries`]. The identity corpus
//! ships in this language as well ([`corpus::CORPUS_SOURCE`]).
//!
//! Built-ins: `q`, `x`, `N` (the truncation order), `poch(a, q^b, n | inf)`,
//! `qbinom(n, k, b)`, `sum`/`altsum`/`prod(i, lo..hi | auto, body)`,
//! `chebv(x, n)`, `fib(n)`, `luc(n)`, `inv(e)`, `subst(e, k)`, `negq(e)`,
//! `appell_lerch(l, q^b, a, c q^e [, m, r])`, `hecke("name")`,
//! `regroup(s0, s1, s2)`, `floor(r)`, `isqrt(r)`.

pub mod ast;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod printer;

pub use ast::Expr;
pub use corpus::{corpus, Stanza, StanzaKind, CORPUS_SOURCE};
pub use error::{DslError, Location, Result};
pub use eval::{eval, eval_bound, eval_number};
pub use parser::{parse_corpus, parse_expr};
pub use printer::{print, print_corpus};
