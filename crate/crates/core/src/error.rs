use thiserror::Error;

use crate::model::LoadCase;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A value violated a constructor invariant.
    #[error("invalid {field} = {value}: must be {rule}")]
    Invalid {
        field: &'static str,
        rule: &'static str,
        value: f64,
    },

    #[error("unsupported unit `{0}`")]
    UnsupportedUnit(String),

    #[error("cannot convert `{from}` to `{to}`: different dimensions")]
    IncompatibleUnits { from: String, to: String },

    #[error("load case mismatch: operation expects {expected}, motion profile uses {found}")]
    LoadCaseMismatch { expected: LoadCase, found: LoadCase },

    #[error("outline needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("outline has zero area")]
    DegeneratePolygon,

    #[error("outline is self-intersecting (edges {0} and {1} cross)")]
    SelfIntersecting(usize, usize),

    #[error("layout generation requires an axis-aligned rectangular outline")]
    NonRectangular,

    #[error("margin {margin} m leaves no usable area on a {length} m x {width} m outline")]
    MarginTooLarge {
        margin: f64,
        length: f64,
        width: f64,
    },

    #[error("effective suction ratio is zero: the grabbing circle does not touch the fabric")]
    ZeroEffectiveRatio,

    #[error("expected {expected} weights, got {got}")]
    WeightCountMismatch { expected: usize, got: usize },

    #[error("pipe line needs at least one segment")]
    EmptyLine,

    #[error("corpus: {0}")]
    Corpus(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub(crate) fn ensure(ok: bool, field: &'static str, rule: &'static str, value: f64) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Invalid { field, rule, value })
    }
}

pub(crate) fn positive(field: &'static str, value: f64) -> Result<f64> {
    ensure(value > 0.0, field, "> 0", value).map(|_| value)
}

pub(crate) fn non_negative(field: &'static str, value: f64) -> Result<f64> {
    ensure(value >= 0.0, field, ">= 0", value).map(|_| value)
}
