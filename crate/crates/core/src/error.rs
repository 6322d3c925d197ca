use thiserror::Error;

/// Errors produced by the exact-arithmetic and group layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("operands live in different rings: mod {left} vs mod {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("p = {p} is not congruent to 1 mod 4; v = -1 applies instead")]
    WrongResidueClass { p: u64 },

    #[error("1 + alpha*sigma^2 is not a unit modulo {modulus}")]
    SingularDenominator { modulus: u64 },

    #[error("matrix is not an element of the group: {0}")]
    NotInGroup(String),

    #[error("malformed element: {0}")]
    MalformedElement(String),

    #[error("minor is not in the image of the dihedral generator")]
    NotInImage,

    #[error("dihedral degree {0} is odd")]
    OddDegree(u64),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: u64, max: u64 },

    #[error("variant {variant} is not available for p = {p}")]
    BadVariant { p: u64, variant: usize },

    #[error("p-adic sequence is incoherent at depth {depth}")]
    IncoherentSequence { depth: usize },

    #[error("budget exceeded: {what} passed the cap of {limit}")]
    BudgetExceeded { what: &'static str, limit: u64 },

    #[error("unsupported prime p = {p}: {reason}")]
    UnsupportedPrime { p: u64, reason: &'static str },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
