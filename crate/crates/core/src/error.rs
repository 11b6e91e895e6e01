use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex count {0} outside the supported range 1..=64")]
    VertexCount(usize),

    #[error("vertex {vertex} outside 1..={m}")]
    VertexOutOfRange { vertex: u64, m: usize },

    #[error("minimal non-simplices must form an antichain: {0} and {1} are comparable")]
    NotAntichain(String, String),

    #[error("the empty set cannot be a non-simplex")]
    EmptyNonsimplex,

    #[error("matrix has {found} rows, expected {expected}")]
    RowCount { expected: usize, found: usize },

    #[error("matrix has {found} columns, expected {expected}")]
    ColumnCount { expected: usize, found: usize },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },

    #[error("dimension {value} outside the supported range {min}..={max}")]
    DimensionOutOfRange { value: usize, min: usize, max: usize },

    #[error("complex has dimension {0}, expected a graph (dimension at most 1)")]
    NotAGraph(i64),

    #[error("complex has ghost vertices {0:?}; the graph formula needs every vertex present")]
    GhostVertices(Vec<u32>),

    #[error("search guard: {0}")]
    SearchGuard(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that signal an exhausted search budget rather than bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::SearchGuard(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
