use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("non-square matrix ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("duplicate abscissae")]
    DuplicateAbscissa,
    #[error("limit diverges")]
    LimitDiverges,
    #[error("sample point collision")]
    SampleCollision,
    #[error("coincident rapidities: {0}")]
    Coincident(String),
    #[error("colour {colour} out of range 0..={rank}")]
    ColourOutOfRange { colour: u32, rank: u32 },
    #[error("exact rational input required")]
    Inexact,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("no finite solution")]
    NoFiniteSolution,
    #[error("search exhausted after {attempts} attempts ({converged} converged, {rejected} rejected)")]
    SearchExhausted {
        attempts: usize,
        converged: usize,
        rejected: usize,
    },
    #[error("methods disagree: {0}")]
    MethodDisagreement(String),
}
