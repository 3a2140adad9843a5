//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by series construction, fitting, scoring, retrieval,
/// and file ingestion.
#[derive(Debug, Error)]
pub enum Error {
    /// Too few observations for the requested operation.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// An input fell outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    DomainError(String),

    /// The series has no reducible component to fit.
    #[error("degenerate series: {0}")]
    DegenerateSeries(String),

    /// Too many bootstrap resamples were unusable.
    #[error("unstable series: {0} of {1} resamples had fewer than 2 distinct x values")]
    UnstableSeries(usize, usize),

    /// Integer overflow in exact parameter accounting.
    #[error("arithmetic overflow: {0}")]
    ArithmeticError(String),

    /// Calibration has no signal to fit a scale factor against.
    #[error("degenerate calibration: {0}")]
    DegenerateCalibration(String),

    /// The reference side of a scored pair is empty.
    #[error("empty reference")]
    EmptyReference,

    /// The hypothesis corpus is empty.
    #[error("empty hypothesis corpus")]
    EmptyHypothesis,

    /// A normalization chain referenced a mapping table that is not registered.
    #[error("unknown mapping table: {0}")]
    UnknownTable(String),

    /// Vector dimension does not match the store.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionError { expected: usize, got: usize },

    /// Retrieval against a store with no records.
    #[error("empty embedding store")]
    EmptyStore,

    /// Time-averaging over zero frames.
    #[error("empty frame sequence")]
    EmptySequence,

    /// Audio segments disagree on sample rate.
    #[error("sample rate mismatch: expected {expected} Hz, got {got} Hz")]
    SampleRateMismatch { expected: u32, got: u32 },

    /// A WAV file is malformed or uses an unsupported encoding; the
    /// message names the offending field or chunk.
    #[error("unsupported wav format: {0}")]
    UnsupportedFormat(String),

    /// A structured file violated its schema.
    #[error("schema error: {0}")]
    SchemaError(String),

    /// A report file was written by a newer tool version.
    #[error("report version {file} is newer than supported version {tool}")]
    VersionError { file: u32, tool: u32 },

    /// Lookup of a language absent from a table or catalog.
    #[error("unknown language: {0}")]
    UnknownLanguage(String),

    /// Underlying I/O failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
