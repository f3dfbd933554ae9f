use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("nothing to intersect")]
    NothingToIntersect,

    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,

    #[error("polynomial is not homogeneous: term {first} has degree {first_degree}, term {second} has degree {second_degree}")]
    NotHomogeneous {
        first: String,
        first_degree: String,
        second: String,
        second_degree: String,
    },

    #[error("zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{nvars} variables exceed the configured limit of {limit}")]
    SizeLimit { nvars: usize, limit: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("weight {0} lies outside the weight cone")]
    OutsideWeightCone(String),

    #[error("weight cone is not pointed")]
    NonPointedWeightCone,

    #[error("no Q-factorial projective model for this chamber")]
    ChamberOutsideMoving,

    #[error("cone is not a full-dimensional chamber: {0}")]
    NotAChamber(String),

    #[error("face {0} is not relevant")]
    NotRelevant(String),

    #[error("a listed cone is not a projected F-face: {0}")]
    NotProjectedFFace(String),

    #[error("vector {0} spans a ray of the fan; nothing to subdivide")]
    OnRay(String),

    #[error("vector {0} lies outside the support of the fan")]
    OutsideSupport(String),

    #[error("vector {0} is not primitive")]
    NotPrimitive(String),

    #[error("cone {0} is not simplicial")]
    NotSimplicial(String),

    #[error("inadmissible modification: {0}")]
    Inadmissible(String),

    #[error("admissibility hypotheses violated: {0}")]
    AdmissibilityViolated(String),

    #[error("lifted relation has positive degree {0}")]
    PositiveLiftDegree(String),

    #[error("complete intersection count mismatch: {relations} relations but the formula asks for {expected}")]
    CompleteIntersectionMismatch { relations: usize, expected: i64 },

    #[error("no contraction available: {0}")]
    NoContraction(String),
}
