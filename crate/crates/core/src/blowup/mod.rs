//! Monoidal transformations along coordinate centers, one affine chart at a
//! time, with exceptional-divisor bookkeeping.

mod chart;
mod experiment;
mod tower;
mod transform;

use thiserror::Error;

use crate::poly::PolyError;
use crate::projection::ProjectionError;

pub use chart::{Chart, Divisor};
pub use experiment::{stage_ab_experiment, ExperimentResult, ExperimentStep};
pub use tower::{Permissibility, Snapshot, Step, Tower};
pub use transform::{blow_down_poly, blow_up_poly, transform_pair, transform_presentation, transform_rees};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("center is empty")]
    EmptyCenter,
    #[error("variable index {0} is outside the chart")]
    UnknownVariable(usize),
    #[error("chart variable must belong to the center")]
    ChartNotInCenter,
    #[error("center not permissible: {0}")]
    NotPermissible(String),
    #[error("center not β-vertical: section variable {0} is missing from it")]
    NotBetaVertical(usize),
    #[error("chart of section variable {0} is not compatible with the projection")]
    SectionChart(usize),
    #[error("presentation is not in normal form at the base point")]
    NotNormal,
    #[error("experiment needs slope q ≥ 1, got {0}")]
    SlopeBelowOne(String),
    #[error("experiment did not stop within {0} codimension-e+1 blowups")]
    Unbounded(usize),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
