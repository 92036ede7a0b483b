use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable [`Error::code`] and is
/// classified as either bad input ([`ErrorKind::Input`]), a domain-level
/// refusal ([`ErrorKind::Domain`]) or an internal consistency failure
/// ([`ErrorKind::Internal`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quiver has a directed cycle through vertices {cycle:?}")]
    CycleDetected { cycle: Vec<usize> },
    #[error("vertex index {index} out of range 1..={n}")]
    BadIndex { index: usize, n: usize },
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector {vector} has a negative entry")]
    NegativeEntry { vector: String },
    #[error("vector {vector} has an entry above the supported maximum {max}")]
    EntryTooLarge { vector: String, max: i64 },
    #[error("integer overflow while evaluating {what}")]
    Overflow { what: &'static str },
    #[error("height bound required: the quiver is not Dynkin, so its real roots are infinite")]
    BoundRequired,
    #[error("quiver is not Dynkin")]
    NotDynkin,
    #[error("no exceptional representation of dimension {alpha} found ({reason}; budget {budget}, seeds tried {seeds_tried})")]
    ProbeExhausted {
        alpha: String,
        budget: u32,
        seeds_tried: u32,
        reason: String,
    },
    #[error("no cluster containing the given precluster within the search range")]
    CompletionNotFound,
    #[error("not a precluster: {violation}")]
    NotPrecluster { violation: String },
    #[error("relation is not a partial order: {reason}")]
    NotAPartialOrder { reason: String },
    #[error("relation is not reflexive at element {element}")]
    NotReflexive { element: usize },
    #[error("relation is not antisymmetric: {a} <= {b} and {b} <= {a}")]
    NotAntisymmetric { a: usize, b: usize },
    #[error("relation is not transitive: {a} <= {b} <= {c} but not {a} <= {c}")]
    NotTransitive { a: usize, b: usize, c: usize },
    #[error("more than {limit} results")]
    LimitExceeded { limit: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("negative Ext dimension {value}: hom/Euler form inconsistency")]
    NegativeExt { value: i64 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("line {line}, column {column}: {reason}")]
    Parse {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("unsupported output format '{0}' for this payload")]
    UnsupportedFormat(String),
    #[error("instance too large: {0} (pass --allow-large to run it)")]
    TooLarge(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Domain,
    Internal,
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::CycleDetected { .. } => "cycle_detected",
            Error::BadIndex { .. } => "bad_index",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NegativeEntry { .. } => "negative_entry",
            Error::EntryTooLarge { .. } => "entry_too_large",
            Error::Overflow { .. } => "overflow",
            Error::BoundRequired => "bound_required",
            Error::NotDynkin => "not_dynkin",
            Error::ProbeExhausted { .. } => "probe_exhausted",
            Error::CompletionNotFound => "completion_not_found",
            Error::NotPrecluster { .. } => "not_precluster",
            Error::NotAPartialOrder { .. } => "not_a_partial_order",
            Error::NotReflexive { .. } => "not_reflexive",
            Error::NotAntisymmetric { .. } => "not_antisymmetric",
            Error::NotTransitive { .. } => "not_transitive",
            Error::LimitExceeded { .. } => "limit_exceeded",
            Error::SizeMismatch { .. } => "size_mismatch",
            Error::NegativeExt { .. } => "negative_ext",
            Error::Internal(_) => "internal",
            Error::Parse { .. } => "parse_error",
            Error::UnsupportedFormat(_) => "unsupported_format",
            Error::TooLarge(_) => "too_large",
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::CycleDetected { .. }
            | Error::BadIndex { .. }
            | Error::DimensionMismatch { .. }
            | Error::NegativeEntry { .. }
            | Error::EntryTooLarge { .. }
            | Error::NotPrecluster { .. }
            | Error::NotReflexive { .. }
            | Error::NotAntisymmetric { .. }
            | Error::NotTransitive { .. }
            | Error::Parse { .. }
            | Error::UnsupportedFormat(_) => ErrorKind::Input,
            Error::Overflow { .. }
            | Error::BoundRequired
            | Error::NotDynkin
            | Error::ProbeExhausted { .. }
            | Error::CompletionNotFound
            | Error::LimitExceeded { .. }
            | Error::SizeMismatch { .. }
            | Error::TooLarge(_) => ErrorKind::Domain,
            Error::NotAPartialOrder { .. } | Error::NegativeExt { .. } | Error::Internal(_) => {
                ErrorKind::Internal
            }
        }
    }
}
