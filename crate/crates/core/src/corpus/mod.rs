//! Registry of verified identities and the evaluators they need.

mod registry;
pub mod special;

use std::fmt;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use num_integer::Integer;

use crate::bailey::sample_points;
use crate::error::{Error, Result};
use crate::series::{equal_to_order, Agreement, FormalSeries, Mismatch, Rational};

pub use registry::{named_hecke, named_hecke_eval, NamedHecke, HECKE_NAMES};
pub use special::*;

/// Builds one side of an identity: `(x, order) -> series`.
///
/// For finite identities the second argument is the index `n` instead and
/// the result is the full polynomial.
pub type Builder = Arc<dyn Fn(Option<&Rational>, usize) -> Result<FormalSeries> + Send + Sync>;

#[derive(Debug, Clone, Copy)]
pub enum IdentityKind {
    Series,
    /// Both sides are polynomials in `x` coefficientwise; `degree_bound(order)`
    /// bounds their degree once truncated at `order`.
    XParametric {
        degree_bound: fn(usize) -> usize,
    },
    /// Polynomial identity indexed by `n`; verifying at `order` checks
    /// `n = 0..=order`.
    Finite,
}

#[derive(Clone)]
pub struct Instance {
    pub label: String,
    pub lhs: Builder,
    pub rhs: Builder,
}

#[derive(Clone)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub anchor: &'static str,
    pub default_order: usize,
    pub kind: IdentityKind,
    /// Assert integer coefficients on the left side as well.
    pub integral: bool,
    pub instances: Vec<Instance>,
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("anchor", &self.anchor)
            .field("default_order", &self.default_order)
            .field("kind", &self.kind)
            .field("instances", &self.instances.len())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub order: usize,
    pub status: Status,
    pub elapsed_ms: u128,
    pub mismatch: Option<Mismatch>,
    /// Which instance or sample point failed, or the error text.
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

enum Outcome {
    Pass,
    Fail(Mismatch, String),
}

impl IdentityRecord {
    pub fn is_x_parametric(&self) -> bool {
        matches!(self.kind, IdentityKind::XParametric { .. })
    }

    /// Order used by bulk runs: finite identities stay at their own default,
    /// since their cost grows like the fourth power of the index.
    pub fn bulk_order(&self, order: usize) -> usize {
        match self.kind {
            IdentityKind::Finite => order.min(self.default_order),
            _ => order,
        }
    }

    pub fn instance(&self, label: &str) -> Option<&Instance> {
        self.instances.iter().find(|i| i.label == label)
    }

    /// Left side of the first instance.
    pub fn lhs(&self, x: Option<&Rational>, order: usize) -> Result<FormalSeries> {
        (self.instances[0].lhs)(x, order)
    }

    pub fn rhs(&self, x: Option<&Rational>, order: usize) -> Result<FormalSeries> {
        (self.instances[0].rhs)(x, order)
    }

    /// The sample points an x-parametric check uses at `order`.
    pub fn samples(&self, order: usize) -> Vec<Rational> {
        match self.kind {
            IdentityKind::XParametric { degree_bound } => sample_points((degree_bound(order) + 1).max(8)),
            _ => Vec::new(),
        }
    }

    pub fn verify(&self, order: usize) -> VerificationReport {
        self.run(order, None)
    }

    /// Verifies at a single `x` (ignored for records without `x`).
    pub fn verify_at(&self, order: usize, x: &Rational) -> VerificationReport {
        self.run(order, Some(x))
    }

    fn run(&self, order: usize, x: Option<&Rational>) -> VerificationReport {
        let start = Instant::now();
        let outcome = self.outcome(order, x);
        let elapsed_ms = start.elapsed().as_millis();
        let (status, mismatch, note) = match outcome {
            Ok(Outcome::Pass) => (Status::Pass, None, None),
            Ok(Outcome::Fail(m, note)) => (Status::Fail, Some(m), Some(note)),
            Err(e) => (Status::Error, None, Some(e.to_string())),
        };
        VerificationReport {
            id: self.id.to_string(),
            order,
            status,
            elapsed_ms,
            mismatch,
            note,
        }
    }

    fn outcome(&self, order: usize, x: Option<&Rational>) -> Result<Outcome> {
        match self.kind {
            IdentityKind::Series => self.check_all(None, order, ""),
            IdentityKind::XParametric { .. } => {
                let points = match x {
                    Some(x) => vec![x.clone()],
                    None => self.samples(order),
                };
                for x in &points {
                    if let Outcome::Fail(m, note) = self.check_all(Some(x), order, &format!("x = {x}"))? {
                        return Ok(Outcome::Fail(m, note));
                    }
                }
                Ok(Outcome::Pass)
            }
            IdentityKind::Finite => {
                for n in 0..=order {
                    if let Outcome::Fail(m, note) = self.check_all(None, n, &format!("n = {n}"))? {
                        return Ok(Outcome::Fail(m, note));
                    }
                }
                Ok(Outcome::Pass)
            }
        }
    }

    fn check_all(&self, x: Option<&Rational>, order: usize, context: &str) -> Result<Outcome> {
        for inst in &self.instances {
            let lhs = (inst.lhs)(x, order)?;
            let rhs = (inst.rhs)(x, order)?;
            let n = lhs.order().min(rhs.order());
            if n < order && !matches!(self.kind, IdentityKind::Finite) {
                return Err(Error::OrderTooLarge {
                    requested: order,
                    available: n,
                });
            }
            let label = [inst.label.as_str(), context]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join(", ");
            if let Agreement::Differs(m) = equal_to_order(&lhs, &rhs, n)? {
                return Ok(Outcome::Fail(m, label));
            }
            if self.integral && x.is_none_or(is_half_integer) {
                if let Some(e) = lhs.first_non_integral() {
                    let c = lhs.coeffs()[e].clone();
                    let m = Mismatch {
                        exponent: e,
                        lhs: c.clone(),
                        rhs: c.round(),
                    };
                    return Ok(Outcome::Fail(m, format!("non-integral coefficient ({label})")));
                }
            }
        }
        Ok(Outcome::Pass)
    }
}

/// Every registered identity, in a stable order.
pub fn registry() -> &'static [IdentityRecord] {
    static REGISTRY: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    REGISTRY.get_or_init(registry::build)
}

pub fn lookup(id: &str) -> Result<&'static IdentityRecord> {
    registry()
        .iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

pub fn verify(id: &str, order: usize) -> Result<VerificationReport> {
    Ok(lookup(id)?.verify(order))
}

fn is_half_integer(x: &Rational) -> bool {
    (x.numer() * 2i32).is_multiple_of(x.denom())
}
