use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("matrix must be square, got {rows}x{cols}")]
    Shape { rows: usize, cols: usize },

    #[error("unsupported Matrix Market {what}: {value}")]
    Unsupported { what: &'static str, value: String },

    #[error("entry ({row}, {col}) out of range for n = {n}")]
    OutOfBounds { row: usize, col: usize, n: usize },

    #[error("row {row} has a missing or zero diagonal entry")]
    Singular { row: usize },

    #[error("inconsistent inputs: {0}")]
    Consistency(String),

    #[error("row {row} has no dependency on row {dep}")]
    NoSuchTerm { row: usize, dep: usize },

    #[error("row {row} at level {level} reads x[{dep}] at level {dep_level}")]
    ScheduleViolation {
        row: usize,
        level: usize,
        dep: usize,
        dep_level: usize,
    },

    #[error("elevating row {row} exceeded the substitution cap of {cap}")]
    SubstitutionCap { row: usize, cap: usize },

    #[error("{statements} statements exceed the cap of {cap}")]
    StatementCap { statements: usize, cap: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("output directory {0} is not empty (pass --force to overwrite)")]
    OutputExists(PathBuf),

    #[error("fetch failed: {0}")]
    Fetch(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
