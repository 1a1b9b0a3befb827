use thiserror::Error;

/// Errors produced by the chromakit numerics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A recurrence or table entry became non-finite.
    #[error("overflow in {context} at order {order}")]
    Overflow { context: &'static str, order: usize },

    /// A table entry became non-finite; `(row, column)` names the entry.
    #[error("overflow in operator table entry ({row}, {column})")]
    TableOverflow { row: usize, column: usize },

    #[error("requested order {requested} exceeds the configured cap {cap}; raise it explicitly (e.g. CHROMAKIT_MAX_ORDER)")]
    OrderCap { requested: usize, cap: usize },

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("family {family} is not weakly bounded (p = {p}); this operation requires p < 1")]
    NotWeaklyBounded { family: String, p: f64 },

    #[error("family {family} violates the weak-boundedness inequalities at n = {n}: {detail}")]
    WeakBoundViolation { family: String, n: usize, detail: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument {value} outside the domain of {what}")]
    Domain { what: &'static str, value: f64 },

    #[error("jet kind mismatch: expected {expected}, got {found}")]
    JetKind { expected: &'static str, found: &'static str },

    #[error("jet of length {len} does not fit a table of order {order}")]
    JetLength { len: usize, order: usize },

    #[error("insufficient samples: need indices {needed_lo}..={needed_hi}, have 0..{available}")]
    Window { needed_lo: i64, needed_hi: i64, available: usize },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("linear solve failed: {0}")]
    Solve(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Overflow { .. } => "overflow",
            Error::TableOverflow { .. } => "table_overflow",
            Error::OrderCap { .. } => "order_cap",
            Error::UnknownFamily(_) => "unknown_family",
            Error::NotWeaklyBounded { .. } => "not_weakly_bounded",
            Error::WeakBoundViolation { .. } => "weak_bound_violation",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Domain { .. } => "domain",
            Error::JetKind { .. } => "jet_kind",
            Error::JetLength { .. } => "jet_length",
            Error::Window { .. } => "window",
            Error::Consistency(_) => "consistency",
            Error::Solve(_) => "solve",
        }
    }
}
