//! The monomial algebra attached to a tower, the strong monomial case, and
//! resolution by a combinatorial game lifted back to the tower.

mod alg;
mod game;
mod lift;
mod strong;
mod track;

use thiserror::Error;

use crate::blowup::BlowupError;
use crate::field::{rational_string, Rational};
use crate::poly::PolyError;
use crate::projection::ProjectionError;

pub use alg::{divides, divisors_through, elim_as_monomial, ord_monomial, MonomialAlg};
pub use game::{combinatorial_resolve, GameCenter, GameResult, MAX_GAME_STEPS};
pub use lift::{lift_resolution, Leaf, LeafKind, Lift, LiftedStep};
pub use strong::{is_strong_monomial, PointCheck, StrongReport};
pub use track::track_monomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("divisor {0} is not in the registry of the other algebra")]
    IncompatibleRegistries(String),
    #[error("hord is infinite at the center of step {step}")]
    InfiniteHord { step: usize },
    #[error("tower carries no presentation")]
    NoPresentation,
    #[error("hord {} < 1 at the center of step {step}: center not permissible", rational_string(.hord))]
    HordBelowOne { step: usize, hord: Rational },
    #[error("elimination algebra is not monomial in the exceptional divisors")]
    NotMonomialElim,
    #[error("combinatorial game did not finish within {0} steps")]
    GameRunaway(usize),
    #[error("not in the strong monomial case: hord differs from ord(M) at {0}")]
    NotStrong(String),
    #[error("lifted center {center} (chart path [{path}]) not permissible: {reason}")]
    Impermissible { path: String, center: String, reason: String },
    #[error("lifted resolution leaves Sing(G) nonempty in chart path [{0}]")]
    Unresolved(String),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
