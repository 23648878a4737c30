use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed RIFF/WAVE container.
    #[error("malformed WAV data: {0}")]
    Format(String),

    #[error("unsupported WAV encoding (format tag {tag:#06x}, {bits} bits per sample)")]
    UnsupportedFormat { tag: u16, bits: u16 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid STFT configuration: {0}")]
    Config(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// No decision can be made (unvoiced audio, curve with no rates).
    #[error("undecidable: {0}")]
    Undecidable(String),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
