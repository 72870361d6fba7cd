use num_traits::Zero;

use super::{MPoly, PolyError};
use crate::field::Coeff;
use crate::value::{Extended, Order};

/// A point of a chart that can be handled in coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointSpec {
    /// Closed point with base-field coordinates, one per chart variable.
    Closed(Vec<Coeff>),
    /// Generic point of the coordinate subvariety `V(x_i : i ∈ S)`.
    Generic(Vec<usize>),
}

impl PointSpec {
    pub fn origin(nvars: usize) -> Self {
        PointSpec::Closed(vec![Coeff::zero(); nvars])
    }

    /// Generic point of `V(vars)`; indices are sorted and deduplicated.
    pub fn generic(vars: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        PointSpec::Generic(v)
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, PointSpec::Closed(_))
    }

    pub fn validate(&self, nvars: usize) -> Result<(), PolyError> {
        match self {
            PointSpec::Closed(c) if c.len() != nvars => {
                Err(PolyError::ArityMismatch { poly: nvars, point: c.len() })
            }
            PointSpec::Closed(_) => Ok(()),
            PointSpec::Generic(s) if s.is_empty() => {
                Err(PolyError::InvalidPoint("generic point of an empty subset".into()))
            }
            PointSpec::Generic(s) => match s.iter().find(|&&v| v >= nvars) {
                Some(&v) => Err(PolyError::InvalidPoint(format!("variable index {v} out of range"))),
                None => Ok(()),
            },
        }
    }

    /// Variables carrying weight 1 in the grading at this point.
    pub fn grading_vars(&self, nvars: usize) -> Vec<usize> {
        match self {
            PointSpec::Closed(_) => (0..nvars).collect(),
            PointSpec::Generic(s) => s.clone(),
        }
    }

    /// Local coordinates centred at the point: `f(x + c)` for a closed point,
    /// `f` itself for a generic point.
    pub fn localize(&self, f: &MPoly) -> MPoly {
        match self {
            PointSpec::Closed(c) => f.translate(c),
            PointSpec::Generic(_) => f.clone(),
        }
    }

    /// Inverse of [`PointSpec::localize`]: `g(x − c)`.
    pub fn globalize(&self, g: &MPoly) -> MPoly {
        match self {
            PointSpec::Closed(c) => {
                let field = g.field();
                let neg: Vec<Coeff> = c.iter().map(|v| field.neg(v)).collect();
                g.translate(&neg)
            }
            PointSpec::Generic(_) => g.clone(),
        }
    }

    /// Keep only the coordinates `keep`, re-indexed in that order. Generic
    /// subsets lose dropped indices.
    pub fn restrict(&self, keep: &[usize]) -> PointSpec {
        match self {
            PointSpec::Closed(c) => PointSpec::Closed(keep.iter().map(|&i| c[i].clone()).collect()),
            PointSpec::Generic(s) => PointSpec::generic(
                s.iter().filter_map(|v| keep.iter().position(|k| k == v)),
            ),
        }
    }
}

/// `ν_y(f)`; `∞` for the zero polynomial.
pub fn order_at(f: &MPoly, y: &PointSpec) -> Result<Order, PolyError> {
    y.validate(f.nvars())?;
    if f.is_zero() {
        return Ok(Extended::Infinite);
    }
    let local = y.localize(f);
    Ok(local.min_degree_in(&y.grading_vars(f.nvars())))
}

/// Lowest homogeneous part of `f` in local coordinates at a closed point.
pub fn initial_form(f: &MPoly, y: &PointSpec) -> Result<MPoly, PolyError> {
    y.validate(f.nvars())?;
    if !y.is_closed() {
        return Err(PolyError::GenericPointUnsupported);
    }
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let local = y.localize(f);
    let all: Vec<usize> = (0..f.nvars()).collect();
    let d = *local.min_degree_in(&all).finite().expect("nonzero");
    Ok(local.homogeneous_part(&all, d))
}
