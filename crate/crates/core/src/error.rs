use thiserror::Error;

/// Errors raised while building or validating network structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("duplicate proposition `{0}`")]
    DuplicateProposition(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),
    #[error("label `{0}` is contradictory (a proposition occurs with both polarities)")]
    ContradictoryLabel(String),
    #[error("observation map is not a bijection: {0}")]
    ObservationNotBijective(String),
    #[error("hyperarc has no heads (tail `{0}`)")]
    EmptyHeads(String),
    #[error("hyperarc tail `{0}` also occurs among its heads")]
    TailAmongHeads(String),
    #[error("negative self-loop `{0}` on a network that cannot absorb it")]
    DegenerateSelfLoop(String),
    #[error("schedule is missing node `{0}`")]
    MissingScheduleEntry(String),
    #[error("schedule contains node `{0}` outside its domain")]
    ForeignScheduleEntry(String),
    #[error("{0}")]
    Malformed(String),
}

/// A resource cap was exceeded; the message names the cap.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResourceError {
    #[error("proposition count {props} exceeds the scenario cap {cap}")]
    ScenarioCap { props: usize, cap: usize },
    #[error("{0}")]
    Limit(String),
}

/// An internal invariant failed; callers should treat this as a bug, not bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("internal invariant failure: {0}")]
pub struct InternalError(pub String);

/// Errors out of the DC-checking pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DcError {
    #[error("network is not well defined: {0}")]
    NotWellDefined(String),
    #[error("multi-tail constraints are not supported by the dynamic-consistency pipeline")]
    MultiTailUnsupported,
    #[error(transparent)]
    Resource(#[from] ResourceError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Internal(#[from] InternalError),
}
