//! Identity stanzas and the shipped corpus file.

use qrr_core::{FormalSeries, Rational};

use crate::ast::Expr;
use crate::error::Result;
use crate::eval::{eval, eval_bound, eval_number};
use crate::parser::parse_corpus;

/// The corpus in DSL form, one stanza per registered identity (an id with
/// several instances has one stanza per instance, in registry order).
pub const CORPUS_SOURCE: &str = include_str!("../corpus/identities.qrr");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StanzaKind {
    Series,
    /// `degree_bound` is an expression in the order `N`.
    XParametric {
        degree_bound: Expr,
    },
    /// Indexed by `var`; both sides are polynomials of degree `degree`.
    Finite {
        var: String,
        degree: Expr,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stanza {
    pub id: String,
    pub anchor: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub kind: StanzaKind,
    pub order: Option<usize>,
}

impl Stanza {
    /// Both sides at `order`, or at index `order` for finite stanzas.
    pub fn sides(&self, x: Option<&Rational>, order: usize) -> Result<(FormalSeries, FormalSeries)> {
        match &self.kind {
            StanzaKind::Finite { var, degree } => {
                let n = order as i64;
                let bind = [(var.as_str(), n)];
                let deg = eval_number(degree, 0, x, &bind)?;
                let deg = usize::try_from(deg.to_integer())
                    .map_err(|_| qrr_core::Error::Invalid("negative degree".into()))?;
                Ok((
                    eval_bound(&self.lhs, deg, x, &bind)?,
                    eval_bound(&self.rhs, deg, x, &bind)?,
                ))
            }
            _ => Ok((eval(&self.lhs, order, x)?, eval(&self.rhs, order, x)?)),
        }
    }

    /// Degree bound in `x` at `order`, for x-parametric stanzas.
    pub fn degree_bound(&self, order: usize) -> Option<Result<usize>> {
        let StanzaKind::XParametric { degree_bound } = &self.kind else {
            return None;
        };
        Some(eval_number(degree_bound, order, None, &[]).and_then(|r| {
            usize::try_from(r.to_integer()).map_err(|_| qrr_core::Error::Invalid("negative degree bound".into()).into())
        }))
    }
}

pub fn corpus() -> Result<Vec<Stanza>> {
    parse_corpus(CORPUS_SOURCE)
}
