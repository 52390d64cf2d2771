use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid cell structure: {0}")]
    InvalidStructure(String),

    #[error("structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },

    #[error("range of {got} cells is too short, need more than {needed}")]
    RangeTooShort { needed: usize, got: usize },

    #[error("matrix elements beyond interaction length {range}: {max_entry:e}")]
    NotBanded { range: usize, max_entry: f64 },

    #[error("invalid symmetry representation: {0}")]
    InvalidRepresentation(String),

    #[error("subspace not invariant under {generator} (defect {defect:e})")]
    NonInvariantSubspace { generator: &'static str, defect: f64 },

    #[error("chiral trace {value} is not an integer")]
    NonIntegerTrace { value: f64 },

    #[error("Kramers pairing violated: {0}")]
    KramersViolation(String),

    #[error("eigenvalue cluster straddles the tolerance boundary at {lambda}: distance {distance:e}")]
    ClusterAmbiguity { lambda: f64, distance: f64 },

    #[error("eigenvector attribution ambiguous after {escalations} window escalations")]
    AmbiguousAttribution { escalations: usize },

    #[error("gap closed: {0}")]
    GapClosed(String),

    #[error("winding accumulation {value} is not an integer")]
    NonIntegerWinding { value: f64 },

    #[error("walk is not decoupled at x = {cut}: crossing element {max_crossing:e}")]
    NotDecoupled { cut: i64, max_crossing: f64 },

    #[error("unsupported symmetry type: {0}")]
    UnsupportedSymmetry(String),

    #[error("decoupling recipe has no path")]
    MissingPath,

    #[error("Schur series did not converge: tail {tail:e} after {terms} terms")]
    SeriesNotConverged { tail: f64, terms: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
