use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An element was used with a group it does not belong to.
    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    /// A word, permutation, integer set, or element literal failed to parse.
    #[error("malformed token `{token}`: {reason}")]
    Malformed { token: String, reason: String },

    /// A subset literal contained the same element twice.
    #[error("duplicate element `{0}` in subset")]
    DuplicateElement(String),

    /// Subsets must contain at least one element.
    #[error("subset must be nonempty")]
    EmptySubset,

    /// A group spec string was not understood or is outside supported bounds.
    #[error("unsupported group spec `{spec}`: {reason}")]
    UnsupportedSpec { spec: String, reason: String },

    /// A multiplication table failed the group axioms.
    #[error("invalid multiplication table for `{group}`: {reason}")]
    InvalidTable { group: String, reason: String },

    /// The vertex pair is not an edge of the difference graph.
    #[error("not an edge: ({0}, {1}) and ({2}, {3}) lie in different components")]
    NotAnEdge(usize, usize, usize, usize),

    /// DOT export is capped at 12 x 12 grids; use the component summary instead.
    #[error("graph too large for DOT export (n = {0} > 12); export the component summary instead")]
    DotTooLarge(usize),

    /// A search or enumeration would exceed its subset budget.
    #[error("budget exceeded: {scanned} of {requested} subsets enumerated (completed sizes 1..={completed_size})")]
    BudgetExceeded {
        scanned: u64,
        requested: u64,
        completed_size: usize,
    },

    /// No integer set with the requested gap exists in the search window.
    #[error(
        "no subset of [0, {window}] realizes gap {target}; enlarge the window or compose witnesses"
    )]
    GapSetNotFound { target: i64, window: u32 },

    /// Integer-set search windows are capped at desk scale.
    #[error("search window {0} exceeds the cap of 24")]
    WindowTooLarge(u32),

    /// Exact enumeration of a power set that is too large.
    #[error("exact enumeration over 2^{bits} subsets exceeds the limit of 2^{limit}")]
    ExactTooLarge { bits: u32, limit: u32 },

    /// A numeric argument was out of range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
