use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed quadratic fields: sqrt({0}) and sqrt({1})")]
    FieldMismatch(String, String),

    #[error("radicand {0} is the square of a rational")]
    SquareRadicand(String),

    #[error("value {0} has a nonzero irrational part")]
    NotRational(String),

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("degree {degree} out of range (maximum {max})")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("polynomial has nonzero constant term {0}")]
    NonzeroConstantTerm(String),

    #[error("{what} is not defined for {family}")]
    Undefined { what: String, family: String },

    #[error("quotient form of the kernel needs x != y")]
    CoincidentPoints,

    #[error("denominator Pochhammer ({param})_{k} vanishes")]
    VanishingDenominator { param: String, k: usize },

    #[error("identity {id} does not hold: {detail}")]
    Mismatch { id: String, detail: String },

    #[error("summation certificate fails first at n = {0}")]
    Certificate(usize),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn mismatch(id: &str, lhs: impl std::fmt::Display, rhs: impl std::fmt::Display) -> Self {
        Error::Mismatch {
            id: id.to_string(),
            detail: format!("lhs = {lhs}, rhs = {rhs}"),
        }
    }
}
