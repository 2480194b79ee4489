use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LgError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{monomials} monomials in {variables} variables; an invertible polynomial needs a square system")]
    NonSquare { monomials: usize, variables: usize },
    #[error("invalid exponent: {0}")]
    BadExponent(String),
    #[error("repeated monomial {0}")]
    RepeatedMonomial(String),
    #[error("variable indices must be contiguous from 1; missing x{0}")]
    MissingVariable(usize),
    #[error("not a sum of Fermat, chain and loop atomics: {0}")]
    NotInvertibleShape(String),
    #[error("exponent matrix is singular")]
    Singular,
    #[error("outside the hypotheses of the mirror theorem: {0}")]
    UnsupportedByTheorem(String),
    #[error("variable is an A1 (x^2) summand and drops out under stabilization")]
    Stabilization,
    #[error("x{0} does not carry a final-type correlator")]
    NotFinalType(usize),
    #[error("concavity fails: {0}")]
    ConcavityViolated(String),
    #[error("wrong configuration: {0}")]
    WrongConfiguration(String),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("identity has {0} unknown correlators; cannot solve")]
    Underdetermined(usize),
    #[error("group enumeration exceeded cap of {0} elements")]
    GroupCapExceeded(usize),
    #[error("perturbative order {0} unsupported (maximum 3)")]
    OrderUnsupported(usize),
    #[error("z-power {0} left the Laurent window [{1}, {2}]")]
    LaurentWindow(i32, i32, i32),
    #[error("degree bound {bound} below the top-monomial degree {top}")]
    BoundTooSmall { bound: u32, top: u32 },
    #[error("malformed correlator: {0}")]
    Malformed(String),
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, LgError>;
