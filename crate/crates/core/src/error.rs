use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. The `Display` text is prefixed with
/// the module the error originates from.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group-core: malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("group-core: group order exceeds the configured bound {bound}")]
    OrderBoundExceeded { bound: usize },
    #[error("group-core: element is not in the group")]
    ElementNotInGroup,
    #[error("group-core: subgroup is not normal")]
    NotNormal,
    #[error("group-core: not a subgroup")]
    NotSubgroup,
    #[error("group-core: unknown group specification `{0}`")]
    UnknownGroup(String),

    #[error("pgroup-catalog: no bundled data for p = {p} up to order {max_order}")]
    DatasetMissing { p: u64, max_order: u64 },
    #[error("pgroup-catalog: validation failed: {0}")]
    ValidationFailed(String),
    #[error("pgroup-catalog: closed sets belong to different catalogs")]
    CatalogMismatch,
    #[error("pgroup-catalog: catalog has {entries} entries, enumeration bound is {bound}")]
    EnumerationBoundExceeded { entries: usize, bound: usize },

    #[error("exactalg: value is not p-local (denominator divisible by {p})")]
    NotPLocal { p: u64 },
    #[error("exactalg: field of order {p}^{degree} is too large")]
    FieldTooLarge { p: u64, degree: u32 },
    #[error("exactalg: {0} is not a prime")]
    NotPrime(u64),
    #[error("exactalg: dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("modrep: chop stalled after {attempts} random algebra elements")]
    ChopStalled { attempts: usize },
    #[error("modrep: characteristic polynomial does not split over the chosen field")]
    NonSplitCharPoly,
    #[error("modrep: Brauer character matrix is singular")]
    SingularPhi,
    #[error("modrep: Cartan entry ({row}, {col}) is not a non-negative integer")]
    NonIntegralCartan { row: usize, col: usize },
    #[error("modrep: decomposition into simples is not integral")]
    NonIntegralDecomposition,
    #[error("modrep: found {simples} simple modules but {classes} p-regular classes")]
    SimpleCountMismatch { simples: usize, classes: usize },

    #[error("functor-eval: Sylow subgroup of order {order} has no catalog entry")]
    CatalogTooSmall { order: usize },
    #[error("functor-eval: class {class} does not have defect zero")]
    NotDefectZero { class: usize },
    #[error("functor-eval: image of the class rep does not have defect zero in the quotient")]
    DefectNotZeroInQuotient,
    #[error("functor-eval: precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("functor-eval: internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("cli: corpus unreadable: {0}")]
    CorpusUnreadable(String),
    #[error("cli: {0}")]
    Io(String),
}

impl Error {
    /// Name of the module the error comes from, for structured reports.
    pub fn module(&self) -> &'static str {
        use Error::*;
        match self {
            MalformedPermutation(_)
            | OrderBoundExceeded { .. }
            | ElementNotInGroup
            | NotNormal
            | NotSubgroup
            | UnknownGroup(_) => "group-core",
            DatasetMissing { .. }
            | ValidationFailed(_)
            | CatalogMismatch
            | EnumerationBoundExceeded { .. } => "pgroup-catalog",
            NotPLocal { .. } | FieldTooLarge { .. } | NotPrime(_) | DimensionMismatch(_) => {
                "exactalg"
            }
            ChopStalled { .. }
            | NonSplitCharPoly
            | SingularPhi
            | NonIntegralCartan { .. }
            | NonIntegralDecomposition
            | SimpleCountMismatch { .. } => "modrep",
            CatalogTooSmall { .. }
            | NotDefectZero { .. }
            | DefectNotZeroInQuotient
            | PreconditionViolated(_)
            | Inconsistent(_) => "functor-eval",
            CorpusUnreadable(_) | Io(_) => "cli",
        }
    }

    /// Short machine-readable variant name.
    pub fn kind(&self) -> String {
        let dbg = format!("{self:?}");
        dbg.split(|c: char| !c.is_alphanumeric())
            .next()
            .unwrap_or_default()
            .to_string()
    }
}
