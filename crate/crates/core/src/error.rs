use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("one-dimensional representation excluded: shape {0:?} is a single row or column")]
    OneDimensional(Vec<usize>),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("spectral collision at kappa={kappa}: labels {label:?} and {other:?} share a spectral vector")]
    SpectralCollision {
        kappa: f64,
        label: (Vec<i32>, usize),
        other: (Vec<i32>, usize),
    },

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: i32, cap: i32 },

    #[error("point too close to the singular set: margin {margin:e} below floor {floor:e}")]
    SingularPoint { margin: f64, floor: f64 },

    #[error("step size underflow at t={t} (h={h:e})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("non-finite value encountered during integration at t={t}")]
    NonFinite { t: f64 },

    #[error("kappa={0} lies in Z+1/2; the series has logarithmic terms there")]
    HalfIntegerKappa(f64),

    #[error("continuation path collides with the singular set (distance {distance:e})")]
    PathCollision { distance: f64 },

    #[error("|z|={radius:e} outside the admissible radius {limit:e}")]
    OutsideRadius { radius: f64, limit: f64 },

    #[error("point is not in the upper half of the z/u disc (Im(z/u)={0:e})")]
    WrongHalfDisc(f64),

    #[error("commutation system has {small} near-zero singular values (gap {gap:e}); kappa is exceptional")]
    RankDeficient { small: usize, gap: f64 },

    #[error("Fourier coefficient for alpha={0:?} was not computed")]
    MissingCoefficient(Vec<i32>),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
