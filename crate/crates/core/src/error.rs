use thiserror::Error;

use crate::perm::Permutation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u64, degree: u64 },

    #[error("modulus {modulus} does not divide degree {degree}")]
    NotDivisible { modulus: u64, degree: u64 },

    #[error("gap condition fails for n = {n}: {next} divides lcm(2..{n}) = {lcm}, so n + 1 is not a new prime power")]
    GapConditionFails { n: u32, next: u32, lcm: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid cycles: {0}")]
    InvalidCycles(String),

    #[error("generator index {index} out of range ({len} generators)")]
    InvalidGeneratorIndex { index: usize, len: usize },

    #[error("point {0} is not in the exceptional set")]
    NotInExceptionalSet(u64),

    #[error("point {point} of the stabilized set translates to the right single bridge pier {pier}")]
    RightPierInDelta { point: u64, pier: u64 },

    #[error("permutation is not a member of the group (sift residue {residue})")]
    NotMember { residue: Permutation },

    #[error("group enumeration hit the cap of {cap} elements")]
    CappedGroup { cap: usize },

    #[error("word has {length} letters, more than the expansion limit {limit}")]
    WordTooLong { length: String, limit: usize },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    /// A checked mathematical statement failed; carries the counterexample.
    #[error("assertion falsified: {0}")]
    Falsified(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by a failed check.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Falsified(_))
    }
}
