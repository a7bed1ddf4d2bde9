use thiserror::Error;

use crate::nonvanish::SplitProfile;
use crate::wci::TheoremDiagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("subset gcd requested for the empty index set")]
    EmptySubset,

    #[error("index {index} out of range for a sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("lcm requested for an empty list")]
    EmptyList,

    #[error("value {0} is not a positive integer")]
    NonPositive(i128),

    #[error("exact result exceeds the 127-bit working range")]
    Overflow,

    #[error("sequence has n = {n}, at least n = {min} is required")]
    SequenceTooShort { n: usize, min: usize },

    #[error("split s = {s} outside [-1, {n}]")]
    SplitOutOfRange { s: isize, n: usize },

    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),

    #[error("no couple or triple certificate exists for this split")]
    CounterexampleFound(Box<SplitProfile>),

    #[error("coin system with {0} generators; 2 or 3 are required")]
    WrongArity(usize),

    #[error("coin system must have between 1 and 3 generators, got {0}")]
    InvalidCoinSystem(usize),

    #[error("weight a_{index} divides neither d1 nor d2")]
    SplitImpossible { index: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no monomial section of degree h exists")]
    TheoremCounterexample(Box<TheoremDiagnostic>),

    #[error("invalid sweep bounds: {0}")]
    InvalidBounds(String),
}
