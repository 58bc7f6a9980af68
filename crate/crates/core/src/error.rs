use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("point index {index} out of range for a space of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("relation is not a preorder: {0}")]
    NotAPreorder(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("quotient preorder disagrees with the quotient topology at blocks {0} and {1}")]
    QuotientMismatch(usize, usize),
    #[error("map is not continuous: {x} <= {y} but f({x}) = {fx} is not <= f({y}) = {fy}")]
    NotContinuous { x: usize, y: usize, fx: usize, fy: usize },
    #[error("map shape mismatch: {0}")]
    MapMismatch(String),
    #[error("space is not T0")]
    NotT0,
    #[error("codomain is not discrete")]
    NotDiscrete,
    #[error("map is not constant on reflection class {0}")]
    NotConstantOnClasses(usize),
    #[error("oracle mode supports at most 6 points, got {0}")]
    OracleTooLarge(usize),
    #[error("search space of {0} candidate maps exceeds the limit of 10^6")]
    SearchSpaceTooLarge(u128),
    #[error("{0} is not prime")]
    UnsupportedPrime(u64),
    #[error("not a simplicial complex: {0}")]
    NotFaceClosed(String),
    #[error("stage {stage} is not T0")]
    StageNotT0 { stage: usize },
    #[error("bond {stage} is not continuous: {source}")]
    BondNotContinuous { stage: usize, source: alloc::boxed::Box<Error> },
    #[error("bond {stage} does not match the adjacent stages")]
    BondMismatch { stage: usize },
    #[error("window {window} needs at least {needed} stages, sequence has {len}")]
    WindowTooLarge { window: usize, needed: usize, len: usize },
    #[error("resolution {resolution} too small for {model} (minimum {minimum})")]
    ResolutionTooSmall { model: &'static str, resolution: usize, minimum: usize },
    #[error("cover element {0} of the finer cover lies in no coarser element")]
    BondNotWellDefined(usize),
    #[error("twin vertex {0} is isolated in the base complex")]
    IsolatedTwin(usize),
}
