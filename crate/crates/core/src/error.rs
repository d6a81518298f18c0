use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("modulus is not irreducible over GF({p}): {modulus}")]
    ReducibleModulus { p: u64, modulus: String },

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("element {value:#x} is outside a field of order {order}")]
    ElementOutOfRange { value: u64, order: u64 },

    #[error("zero has no inverse")]
    ZeroInverse,

    #[error("zero raised to a non-positive exponent ({0})")]
    ZeroPower(i128),

    #[error("operation requires characteristic 2, field has characteristic {0}")]
    WrongCharacteristic(u64),

    #[error("field order {order} exceeds the exhaustive bound {bound}")]
    TooLarge { order: u64, bound: u64 },

    #[error("invalid family instance: {0}")]
    InvalidInstance(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
