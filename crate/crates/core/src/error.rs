use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("axis {axis} out of range for {nvars} variables")]
    AxisOutOfRange { axis: usize, nvars: usize },
    #[error("blade index {index} exceeds algebra dimension {dim}")]
    BladeOutOfRange { index: usize, dim: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid dimension m = {0}: {1}")]
    InvalidDimension(usize, &'static str),
    #[error("invalid factor spec (m = {m}, j = {j}, a = {a})")]
    InvalidFactorSpec { m: usize, j: u32, a: u32 },
    #[error("invalid label {label} for m = {m}, k = {k}")]
    InvalidLabel { label: String, m: usize, k: u32 },
    #[error("invalid chirality for m = {0}: odd dimensions use the + realization")]
    InvalidChirality(usize),
    #[error("element lies outside the spinor space")]
    NotInSpinorSpace,
    #[error("input is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("input fails harmonicity")]
    NotHarmonic,
    #[error("input fails monogenicity")]
    NotMonogenic,
    #[error("input is not scalar valued")]
    NotScalar,
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("unknown label in table: {0}")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
