use thiserror::Error;

/// Errors produced while building, parsing or analysing a reaction network.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: reactant and product complex are identical")]
    SelfLoop { line: usize },

    #[error("line {line}: reaction {reactant} -> {product} is already defined")]
    DuplicateReaction {
        line: usize,
        reactant: String,
        product: String,
    },

    #[error("line {line}: duplicate reaction label `{label}`")]
    DuplicateLabel { line: usize, label: String },

    #[error("network has no reactions")]
    EmptyNetwork,

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("partitions cover different reaction sets")]
    MismatchedReactionSet,

    #[error("subnetwork needs at least one reaction")]
    EmptySubset,

    #[error("vector is not in the span of the basis")]
    NotInSpan,

    #[error("basis rows are linearly dependent")]
    DependentBasis,

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("brute-force enumeration limited to {limit} reactions, network has {reactions}")]
    TooLarge { reactions: usize, limit: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("concentration of species `{species}` must be positive, got {value}")]
    NonPositivePoint { species: String, value: f64 },

    #[error("rate constant of reaction `{reaction}` must be positive, got {value}")]
    NonPositiveRate { reaction: String, value: f64 },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
