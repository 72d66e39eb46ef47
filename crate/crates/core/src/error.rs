use thiserror::Error;

/// Failures raised by the geometry kernel and the family constructions built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("focus outside unit disk: |{0}| >= 1")]
    FocusOutsideDisk(String),
    #[error("inconic not an ellipse: center must lie strictly inside the medial triangle")]
    InconicNotEllipse,
    #[error("no valid caustic: foci {0} and {1} not both inside the unit disk")]
    NoValidCaustic(String, String),
    #[error("{0} undefined")]
    Undefined(&'static str),
    #[error("family contains no equilateral triangle (| |f+g| - |fg| | = {0:.3e})")]
    NoEquilateral(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("ray misses circle")]
    RayMisses,
    #[error("not enough points: need {needed}, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("rank-deficient fit input")]
    RankDeficient,
}

pub type Result<T> = std::result::Result<T, GeomError>;
