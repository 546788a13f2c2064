use thiserror::Error;

use crate::diagram::ArcLabel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("arc {arc} appears {count} times (expected 2)")]
    ArcDegree { arc: ArcLabel, count: usize },
    #[error("untraceable diagram: {0}")]
    Untraceable(String),
    #[error("non-planar diagram: {0}")]
    NonPlanar(String),
    #[error("diagram is not oriented")]
    Unoriented,
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("move is not applicable: {0}")]
    InapplicableMove(String),
    #[error("no recombination site: {0}")]
    NoSite(String),
    #[error("invalid underpass: {0}")]
    InvalidUnderpass(String),
    #[error("invalid quandle table: {0}")]
    InvalidQuandle(String),
    #[error("singular star-triangle transform (leg sum is zero)")]
    SingularTransform,
    #[error("singular network: {0}")]
    SingularNetwork(String),
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("quaternion is not a unit")]
    NonUnit,
    #[error("twist word is not a rotation loop")]
    NotALoop,
    #[error("knot-set modes differ")]
    ModeMismatch,
    #[error("formula has no free variable")]
    ClosedFormula,
    #[error("template does not apply the shift symbol to the variable")]
    MissingShift,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}
