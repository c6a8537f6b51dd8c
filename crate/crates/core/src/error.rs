use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial has no valuation")]
    ZeroValuation,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("denominator vanishes at t = 0; not a power series")]
    DenominatorVanishesAtZero,
    #[error("monomial has {got} exponents but the ring has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("generator is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("variable weight must be a positive integer, got {weight} for {name}")]
    InvalidWeight { name: String, weight: i64 },
    #[error("duplicate variable name {0}")]
    DuplicateVariable(String),
    #[error("ring needs at least one variable")]
    NoVariables,
    #[error("monomial order rejected: {0}")]
    InvalidOrder(String),
    #[error("zero module has no dimension")]
    ZeroModule,
    #[error("ideal is the unit ideal; the quotient module is zero")]
    UnitIdeal,
    #[error("intersection not proper")]
    NotProper,
    #[error("intersection not proper over ambient ring")]
    NotProperAmbient,
    #[error("pole order of chi at t = 1 is {pole_order} but dimensions give defect {defect}")]
    PoleOrderMismatch { pole_order: i64, defect: i64 },
    #[error("dimension test says {by_dimension} but evaluation at t = 1 says {by_value}")]
    ClassMismatch {
        by_dimension: String,
        by_value: String,
    },
    #[error("Cartier multiple e must be positive")]
    NonPositiveMultiple,
    #[error("Tor computation did not stabilise up to internal degree {0}")]
    NoStabilization(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
