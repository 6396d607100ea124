use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("gluing is not an involution at tetrahedron {tet} face {face}")]
    NotInvolution { tet: usize, face: usize },
    #[error("gluing at tetrahedron {tet} face {face} preserves orientation")]
    Orientation { tet: usize, face: usize },
    #[error("not a manifold triangulation: {0}")]
    NotManifold(String),
    #[error("triangulation has no ideal vertices")]
    AlreadyCompact,
    #[error("triangulation has ideal vertices")]
    Ideal,
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("vertex link is not a torus")]
    NotTorus,
    #[error("expected exactly one ideal vertex with torus link, found {0}")]
    Cusps(String),
    #[error("vector has length {got}, expected {want}")]
    Length { got: usize, want: usize },
    #[error("vector is not admissible")]
    NotAdmissible,
    #[error("vector does not satisfy the matching equations")]
    NotInKernel,
    #[error("surface is not closed")]
    NotClosed,
    #[error("surface is one-sided")]
    OneSided,
    #[error("surface is a sphere")]
    Sphere,
    #[error("surface is disconnected")]
    Disconnected,
    #[error("surface belongs to a different triangulation")]
    ForeignSurface,
    #[error("surface is not spun")]
    NotSpun,
    #[error("boundary slope is infinite")]
    InfiniteSlope,
    #[error("dimension {0} exceeds the brute-force limit")]
    TooLarge(usize),
    #[error("invalid curve: {0}")]
    Curve(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::OutOfRange(_) => "out-of-range",
            Error::NotInvolution { .. } => "not-involution",
            Error::Orientation { .. } => "orientation",
            Error::NotManifold(_) => "not-manifold",
            Error::AlreadyCompact => "already-compact",
            Error::Ideal => "ideal",
            Error::MoveNotApplicable(_) => "move-not-applicable",
            Error::NotTorus => "not-torus",
            Error::Cusps(_) => "cusps",
            Error::Length { .. } => "length",
            Error::NotAdmissible => "not-admissible",
            Error::NotInKernel => "not-in-kernel",
            Error::NotClosed => "not-closed",
            Error::OneSided => "one-sided",
            Error::Sphere => "sphere",
            Error::Disconnected => "disconnected",
            Error::ForeignSurface => "foreign-surface",
            Error::NotSpun => "not-spun",
            Error::InfiniteSlope => "infinite-slope",
            Error::TooLarge(_) => "too-large",
            Error::Curve(_) => "curve",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
