//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the mining pipeline.
///
/// Messages are module-qualified so a frontend can surface them verbatim.
#[derive(Debug, Error)]
pub enum Error {
    /// The input file could not be opened or read.
    #[error("dataset: cannot read `{path}`: {message}")]
    UnreadableFile {
        /// Path as given by the caller.
        path: String,
        /// Underlying I/O or CSV error.
        message: String,
    },

    /// A declared column is absent from the CSV header.
    #[error("dataset: column `{0}` missing from header")]
    MissingColumn(String),

    /// The file contains a header but no data rows.
    #[error("dataset: table has no data rows")]
    EmptyTable,

    /// A numeric attribute has fewer distinct values than requested bins.
    #[error("dataset: attribute `{attribute}` has {distinct} distinct values, need at least {bins} for binning")]
    TooFewDistinctValues {
        /// Attribute name.
        attribute: String,
        /// Number of distinct non-missing values observed.
        distinct: usize,
        /// Requested bin count.
        bins: usize,
    },

    /// The control column does not code to exactly two classes.
    #[error("dataset: control column has {0} observed classes, need exactly 2")]
    NotBinaryControl(usize),

    /// A declared control class has no rows.
    #[error("dataset: control class `{0}` has no rows")]
    EmptyClass(String),

    /// The target column is constant, so central tendency is undefined.
    #[error("dataset: target is constant, impact is undefined")]
    ConstantTarget,

    /// The attribute specifications violate their invariants.
    #[error("dataset: invalid attribute specs: {0}")]
    InvalidSpec(String),

    /// An operation that requires a non-empty subgroup received an empty one.
    #[error("scores: subgroup is empty")]
    EmptySubgroup,

    /// A probability pair is negative or does not sum to one.
    #[error("scores: not a probability vector: ({0}, {1})")]
    NotAProbabilityVector(f64, f64),

    /// The objective weight lies outside `[0, 1)`.
    #[error("scores: weight a = {0} outside [0, 1)")]
    WeightOutOfRange(f64),

    /// The approximation factor lies outside `(0, 1]`.
    #[error("search: alpha = {0} outside (0, 1]")]
    AlphaOutOfRange(f64),

    /// A class-count point lies outside the subgroup's class-count space.
    #[error("ccs: point ({i1}, {i2}) outside class-count space ({m1}, {m2})")]
    OutOfBounds {
        /// Class-1 count of the point.
        i1: usize,
        /// Class-2 count of the point.
        i2: usize,
        /// Class-1 capacity of the subgroup.
        m1: usize,
        /// Class-2 capacity of the subgroup.
        m2: usize,
    },

    /// The zero point of the class-count space was passed where it is excluded.
    #[error("ccs: the zero point (0, 0) is excluded here")]
    ZeroPoint,

    /// A path index exceeds the subgroup size.
    #[error("ccs: path index {index} exceeds subgroup size {size}")]
    OutOfRange {
        /// Requested prefix length.
        index: usize,
        /// Subgroup size.
        size: usize,
    },

    /// A search range with `hi < lo` was requested.
    #[error("ccs: empty search range")]
    EmptyRange,

    /// A balanced-binary-only estimator was called on an unbalanced population.
    #[error("estimators: population control classes are not balanced; stratify first")]
    UnbalancedPopulation,

    /// A brute-force oracle received a subgroup above its enumeration cap.
    #[error("oracle: subgroup size {size} exceeds brute-force cap {cap}")]
    TooLarge {
        /// Subgroup size.
        size: usize,
        /// Hard enumeration cap.
        cap: usize,
    },

    /// The selection language exceeds the oracle's enumeration cap.
    #[error("oracle: language size exceeds cap {0}")]
    LanguageTooLarge(usize),

    /// A run configuration value violates its contract.
    #[error("search: invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Returns `true` for errors caused by caller-supplied configuration
    /// values, as opposed to properties of the data.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::WeightOutOfRange(_)
                | Error::AlphaOutOfRange(_)
                | Error::InvalidConfig(_)
                | Error::InvalidSpec(_)
        )
    }
}
