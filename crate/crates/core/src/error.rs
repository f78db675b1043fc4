use thiserror::Error;

/// Errors raised by the constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chain size {0} out of range (expected 3..=12)")]
    ChainSize(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("morphisms not composable: {0}")]
    Composition(String),

    #[error("product {product} of ({left}, {right}) escapes the element set")]
    NotClosed {
        left: String,
        right: String,
        product: String,
    },

    #[error("associativity fails on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),

    #[error("duplicate element {0}")]
    DuplicateElement(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
