use thiserror::Error;

/// Crate-wide error type. Numerical verdicts ("this frame is not a top") are
/// not errors; they are reported in result structs. Errors are malformed
/// input, degenerate geometry, or internal consistency failures.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at byte {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("unknown function `{name}` at byte {pos}")]
    UnknownFunction { name: String, pos: usize },

    #[error("division by zero while evaluating expression")]
    DivisionByZero,

    #[error("expression evaluated to a non-finite value")]
    NonFinite,

    #[error("point has wrong dimension: expected {expected}, got {got}")]
    PointDimension { expected: usize, got: usize },

    #[error("point violates the unit-sphere constraint: | |q|^2 - 1 | = {violation:.3e}")]
    OffConstraint { violation: f64 },

    #[error("degenerate frame at {point:?}: fields are linearly dependent")]
    DegenerateFrame { point: Vec<f64> },

    #[error("degenerate measurement: {0}")]
    DegenerateMeasurement(String),

    #[error("singular system: the form circle is not contact at the sampled point")]
    NotContact,

    #[error("not a contact circle: k = 0 admits no Cartan normalization")]
    NoCartanNormalization,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("frame data does not satisfy the spinning bracket shape: {0}")]
    ShapeViolation(String),

    #[error("pivot candidate fails the spinning-metric checks: {0}")]
    NotSpinning(String),

    #[error("closure parameter h = {h} is inconsistent with measured extremal curvature: residual {residual:.3e}")]
    InconsistentClosure { h: f64, residual: f64 },

    #[error("path-dependent potential: two integration paths disagree by {residual:.3e}")]
    PathDependent { residual: f64 },

    #[error("inadmissible frame transform: {0}")]
    InadmissibleTransform(String),

    #[error("transform produced a frame that fails top classification: {0}")]
    TransformClassification(String),

    #[error("geodesic integrator drift {drift:.3e} exceeded the hard bound {bound:.3e}")]
    IntegratorDrift { drift: f64, bound: f64 },

    #[error("io error: {0}")]
    Io(String),

    #[error("malformed frame spec: {0}")]
    BadSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
