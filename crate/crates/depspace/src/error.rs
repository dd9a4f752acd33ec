use thiserror::Error;

/// Errors produced by construction, parsing, and guarded operations.
///
/// Verification verdicts are never errors: a failed axiom or property is
/// reported through the corresponding report type with a counterexample.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid label {label:?}: {reason}")]
    InvalidLabel { label: String, reason: &'static str },

    #[error("duplicate element label {label:?}")]
    DuplicateElement { label: String },

    #[error("ground set has {size} elements; the limit is {limit}")]
    GroundTooLarge { size: usize, limit: usize },

    #[error("unknown element {label:?}")]
    UnknownElement { label: String },

    #[error("delta member {{{}}} has fewer than 2 elements", member.join(","))]
    MemberTooSmall { member: Vec<String> },

    #[error("{op} supports ground sets of at most {limit} elements; this input has {size}")]
    Guard {
        op: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("precondition of {op} violated: {clause}")]
    Contract { op: &'static str, clause: String },

    #[error("extension stalled before spanning the ground set; reached {{{}}}", set.join(","))]
    ExtensionFailed { set: Vec<String> },

    #[error("parameter {param} out of range: {constraint} (got {value})")]
    ParamRange {
        param: &'static str,
        value: String,
        constraint: &'static str,
    },

    #[error(
        "edge {label:?} is a loop (both endpoints are vertex {vertex}); loops induce single-element dependent sets, which are not representable"
    )]
    LoopEdge { label: String, vertex: u64 },

    #[error("edge {label:?} has endpoint {vertex} outside the vertex range 0..{count}")]
    EdgeOutOfRange {
        label: String,
        vertex: u64,
        count: u64,
    },

    #[error("duplicate edge label {label:?}")]
    DuplicateEdgeLabel { label: String },

    #[error(
        "column {label:?} is zero; a zero column is a single-element dependent set, which is not representable"
    )]
    ZeroColumn { label: String },

    #[error("matrix entry {value} is not 0 or 1")]
    MatrixEntry { value: i64 },

    #[error("matrix rows have inconsistent lengths ({first} vs {other})")]
    RaggedMatrix { first: usize, other: usize },

    #[error("matrix has {rows} rows; the limit is {limit}")]
    TooManyRows { rows: usize, limit: usize },

    #[error("label count {labels} does not match column count {columns}")]
    LabelCountMismatch { labels: usize, columns: usize },

    #[error(
        "{requested} distinct members requested but only {available} subsets exist in the size range"
    )]
    RandomInfeasible { requested: usize, available: usize },

    #[error("ground sets differ between the space and the oracle")]
    GroundMismatch,

    #[error("syntax error: {detail}")]
    Syntax { detail: String },

    #[error("unknown format-version {found} (supported: {supported})")]
    Version { found: u32, supported: u32 },
}
