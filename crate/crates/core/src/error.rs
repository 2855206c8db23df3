use thiserror::Error;

/// Failure modes shared by every module. The `Display` form of each variant
/// starts with a stable kebab-case code, see [`Error::code`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty-body")]
    EmptyBody,
    #[error("non-finite: coordinate is NaN or infinite")]
    NonFinite,
    #[error("negative-scale")]
    NegativeScale,
    #[error("ray-undefined")]
    RayUndefined,
    #[error("not-centered")]
    NotCentered,
    #[error("incomparable")]
    Incomparable,
    #[error("needs-solid")]
    NeedsSolid,
    #[error("not-on-surface")]
    NotOnSurface,
    #[error("needs-planar")]
    NeedsPlanar,
    #[error("outside-shadow")]
    OutsideShadow,
    #[error("not-alpha-symmetric")]
    NotAlphaSymmetric,
    #[error("degenerate")]
    Degenerate,
    #[error("not-a-double")]
    NotADouble,
    #[error("hypothesis-violated: {0}")]
    HypothesisViolated(String),
    #[error("axis-outside-span")]
    AxisOutsideSpan,
    #[error("group-mismatch")]
    GroupMismatch,
    #[error("exact-mode-limit")]
    ExactModeLimit,
    #[error("grid-mismatch")]
    GridMismatch,
    #[error("parameter-range: {0}")]
    ParameterRange(String),
    #[error("degenerate-lattice")]
    DegenerateLattice,
    #[error("invalid-splitting-degree")]
    InvalidSplittingDegree,
    #[error("invalid-input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyBody => "empty-body",
            Error::NonFinite => "non-finite",
            Error::NegativeScale => "negative-scale",
            Error::RayUndefined => "ray-undefined",
            Error::NotCentered => "not-centered",
            Error::Incomparable => "incomparable",
            Error::NeedsSolid => "needs-solid",
            Error::NotOnSurface => "not-on-surface",
            Error::NeedsPlanar => "needs-planar",
            Error::OutsideShadow => "outside-shadow",
            Error::NotAlphaSymmetric => "not-alpha-symmetric",
            Error::Degenerate => "degenerate",
            Error::NotADouble => "not-a-double",
            Error::HypothesisViolated(_) => "hypothesis-violated",
            Error::AxisOutsideSpan => "axis-outside-span",
            Error::GroupMismatch => "group-mismatch",
            Error::ExactModeLimit => "exact-mode-limit",
            Error::GridMismatch => "grid-mismatch",
            Error::ParameterRange(_) => "parameter-range",
            Error::DegenerateLattice => "degenerate-lattice",
            Error::InvalidSplittingDegree => "invalid-splitting-degree",
            Error::InvalidInput(_) => "invalid-input",
        }
    }

    /// True for errors that signal a violated mathematical hypothesis rather
    /// than malformed input.
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::HypothesisViolated(_)
                | Error::NotCentered
                | Error::NotAlphaSymmetric
                | Error::AxisOutsideSpan
                | Error::Incomparable
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
