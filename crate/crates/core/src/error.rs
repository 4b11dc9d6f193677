use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph is not connected")]
    NotConnected,
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),
    #[error("not a simple cycle: {0}")]
    NotACycle(String),
    #[error("family is not laminar (cycles {0} and {1} cross)")]
    NotLaminar(usize, usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("cycle {0} is not in the family")]
    CycleNotInFamily(usize),
    #[error("uncrossing stalled after {0} steps")]
    UncrossingStalled(usize),
    #[error("structure invariant violated: {0}")]
    StructureInvariantViolated(String),
    #[error("support is empty")]
    EmptySupport,
    #[error("threshold level is empty")]
    EmptyLevel,
    #[error("feasibility violation: {0}")]
    FeasibilityViolation(String),
    #[error("colouring search exhausted")]
    SearchExhausted,
    #[error("guarantee violated: {0}")]
    GuaranteeViolated(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("checker failed: {0}")]
    CheckerFailed(String),
    #[error("redundant cycle present: {0}")]
    RedundantCyclePresent(usize),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unknown cycle {0}")]
    UnknownCycle(usize),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
