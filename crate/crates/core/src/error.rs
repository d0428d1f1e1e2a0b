use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("codomain mismatch: cannot compose a map into {left_cod} with a map out of {right_dom}")]
    CodomainMismatch { left_cod: usize, right_dom: usize },

    #[error("invalid function table: {0}")]
    InvalidTable(String),

    #[error("cone does not commute over the cospan; no factorization exists")]
    NoFactorization,

    #[error("malformed data: {0}")]
    MalformedData(String),

    #[error("resource bound exceeded: {needed} items requested, limit is {limit}")]
    ResourceBound { needed: u128, limit: usize },

    #[error("isomorphism check failed: {0}")]
    IsoFailure(String),

    #[error("laxator incoherent: {0}")]
    LaxatorIncoherent(String),

    #[error("index {index} out of range for {what} of size {size}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },

    #[error("interface mismatch: {0}")]
    InterfaceMismatch(String),
}
