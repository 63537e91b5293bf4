use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("row {row} lies outside the ambient: {reason}")]
    RowOutOfAmbient { row: usize, reason: String },
    #[error("element outside its alphabet: {0}")]
    ElementOutOfRange(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("ambient spaces differ")]
    AmbientMismatch,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("enumeration of {size} elements exceeds the cap of {cap}")]
    TooLargeToEnumerate { size: u128, cap: u128 },
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("homomorphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("map is not an isomorphism")]
    NotAnIsomorphism,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("`{0}` is not a state edge of the given constraint")]
    NotAStateEdge(String),
    #[error("fragments overlap: {0}")]
    FragmentsOverlap(String),
    #[error("edge `{0}` is a cut set")]
    EdgeIsCutSet(String),
    #[error("realization is disconnected")]
    Disconnected,
    #[error("realization is not cycle-free")]
    NotCycleFree,
    #[error("not trim and proper: {0}")]
    NotTrimProper(String),
    #[error("configuration is not in the external behavior")]
    NotInExternalBehavior,
    #[error("not internally proper: {0}")]
    NotInternallyProper(String),
    #[error("missing incoming message for `{0}`")]
    MissingIncoming(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
