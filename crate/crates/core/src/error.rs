use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term and cannot be inverted")]
    NonUnitSeries,
    #[error("comparison order {requested} exceeds available order {available}")]
    OrderTooLarge { requested: usize, available: usize },
    #[error("term with negative q-exponent {exponent} survives materialization")]
    NegativeExponentTerm { exponent: i64 },
    #[error("q-Pochhammer length {0} is not supported")]
    NegativeLength(i64),
    #[error("infinite product does not converge: {0}")]
    DivergentProduct(String),
    #[error("monomial {0} is outside the admissible range")]
    MonomialOutOfRange(String),
    #[error("factor 1 - c*q^0 with c = 1 is singular")]
    SingularTerm,
    #[error("no closed form for V_n at x = {0}")]
    UnsupportedArgument(String),
    #[error("weak forms are stated for a = 1, got a = {0}")]
    UnsupportedAParameter(String),
    #[error("pair base q^{0} is not supported by this transform")]
    UnsupportedBase(usize),
    #[error("residue classes 1 and 2 differ; the cyclotomic sum is not real")]
    NonRealSum,
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("alternating sum terms did not stabilise within {0} steps")]
    NonConvergent(usize),
    #[error("expression mentions x but no value was supplied")]
    MissingX,
    #[error("{0}")]
    Invalid(String),
}
