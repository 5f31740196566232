use thiserror::Error;

/// Errors and refusals raised by graph construction, walk setup, eigensolving
/// and the closed-form machinery.
///
/// "Refusal" variants (`NotEquitable`, `NotDistanceRegular`, ...) are expected
/// outcomes on inputs that fail a structural hypothesis; they carry a witness
/// so callers can report *why* the hypothesis failed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph has {n} vertices, exceeding the size cap {cap} (override with DTQW_MAX_N)")]
    SizeCap { n: usize, cap: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is not regular: vertex {u} has degree {du}, vertex {v} has degree {dv}")]
    NotRegular { u: usize, du: usize, v: usize, dv: usize },

    #[error("graph is disconnected: vertex {unreachable} is unreachable from {from}")]
    Disconnected { from: usize, unreachable: usize },

    #[error("walk requires degree k >= 2, got k = {k}")]
    DegreeTooSmall { k: usize },

    #[error("partition is not equitable: vertex {vertex} in cell {cell} sees {found} neighbours in cell {other}, expected {expected}")]
    NotEquitable {
        vertex: usize,
        cell: usize,
        other: usize,
        expected: usize,
        found: usize,
    },

    #[error("graph is not distance regular: {detail} (witness vertex {vertex})")]
    NotDistanceRegular { vertex: usize, detail: String },

    #[error("invalid intersection array: {condition}")]
    InvalidArray { condition: String },

    #[error("graph is not 2-connected (cut vertex {cut})")]
    NotTwoConnected { cut: usize },

    #[error("matrix is not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix is not Hermitian at ({row},{col})")]
    NotHermitian { row: usize, col: usize },

    #[error("Jacobi sweep limit reached after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("eigenvalue {lambda} lies on or outside the interior disc |x| < {k}")]
    EigenvalueOutsideDisc { lambda: f64, k: f64 },

    #[error("{value} is not a root of the requested polynomial (|p| = {residual:e})")]
    NotARoot { value: f64, residual: f64 },

    #[error("eigenvalues {a} and {b} are closer than the grouping tolerance; refusing to build an interpolation projection")]
    GroupingFailure { a: f64, b: f64 },

    #[error("projection weight differs across the marked vertex's neighbours (spread {spread:e}); the deleted-vertex spectrum is not neighbour-independent")]
    NeighbourWeightSpread { spread: f64 },

    #[error("matrix is singular at pivot {pivot}")]
    Singular { pivot: usize },

    #[error("explicit unitaries are limited to nk <= 60 arcs, got {arcs}")]
    TooLargeToMaterialize { arcs: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
