use thiserror::Error;

/// Errors produced anywhere in the zeta pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("function is not an absolute automorphic form: f(1/u)/f(u) = {0}")]
    NotAutomorphic(String),

    #[error("spectrum not expressible exactly; characteristic polynomial of P is {charpoly}")]
    UnsupportedSpectrum { charpoly: String },

    #[error("not of cyclotomic form; residual {residual}")]
    NotRepresentable { residual: String },

    #[error("pole at s = 1")]
    PoleAt1,

    #[error("pole of the continuation at w = {0}")]
    Pole(f64),

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("does not converge: {0}")]
    Convergence(String),

    #[error("enumeration bound exceeded: {0}")]
    Scale(String),
}

pub type Result<T> = std::result::Result<T, Error>;
