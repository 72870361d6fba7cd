use super::{slope_poly, slope_presentation, Presentation, ProjectionError};
use crate::field::Rational;
use crate::poly::{is_nth_power, weighted_initial_form, MPoly, PointSpec};
use crate::rees::ReesAlg;
use crate::value::{ExtRational, Extended};

/// Default iteration cap is this factor times the degree `n`.
pub const DEFAULT_CAP_FACTOR: usize = 64;

/// A presentation brought to normal form, with the accumulated coordinate
/// changes: the new section coordinate is `z_i + shifts[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub presentation: Presentation,
    pub shifts: Vec<MPoly>,
    pub iterations: Vec<usize>,
}

enum Step {
    Normal,
    Root(MPoly),
}

fn step(f: &MPoly, z: usize, y: &PointSpec, elim_ord: &ExtRational) -> Result<Step, ProjectionError> {
    let s = slope_poly(f, z, y)?;
    if &s >= elim_ord {
        if s.is_infinite() && elim_ord.is_infinite() {
            return Err(ProjectionError::Degenerate);
        }
        return Ok(Step::Normal);
    }
    let q: &Rational = s.finite().expect("finite below elim order");
    let w = weighted_initial_form(f, z, y, q)?;
    Ok(match is_nth_power(&w) {
        Some(a) => Step::Root(y.globalize(&a)),
        None => Step::Normal,
    })
}

/// Normalize each `f_{n_i}` at `y`: while its slope is below `ord(elim)(y)`
/// and its weighted initial form is `(Z + A)^n`, change coordinates by
/// `z_1 = z + α` with `α` the form `A` moved back from `y`.
///
/// The cap defaults to `64·n_i` iterations per polynomial.
pub fn normalize(p: &Presentation, y: &PointSpec, cap: Option<usize>) -> Result<Normalized, ProjectionError> {
    y.validate(p.nvars())?;
    let elim_ord = p.elim().ord_at(y)?;
    let field = p.field();
    let nv = p.nvars();
    let mut polys = Vec::with_capacity(p.e());
    let mut shifts = Vec::with_capacity(p.e());
    let mut iterations = Vec::with_capacity(p.e());
    for (i, (&z, f)) in p.sections().iter().zip(p.polys()).enumerate() {
        let cap = cap.unwrap_or(DEFAULT_CAP_FACTOR * p.degrees()[i] as usize);
        let mut f = f.clone();
        let mut shift = MPoly::zero(field, nv);
        let mut count = 0;
        while let Step::Root(alpha) = step(&f, z, y, &elim_ord)? {
            if count == cap {
                return Err(ProjectionError::IterationCap { cap });
            }
            let zv = MPoly::var(field, nv, z);
            f = f.substitute(z, &(&zv - &alpha));
            shift = &shift + &alpha;
            count += 1;
        }
        polys.push(f);
        shifts.push(shift);
        iterations.push(count);
    }
    Ok(Normalized { presentation: p.with_parts(polys, p.elim().clone()), shifts, iterations })
}

/// Every `f_{n_i}` has slope at least `ord(elim)(y)` or a weighted initial
/// form that is not an `n_i`-th power.
pub fn is_normal(p: &Presentation, y: &PointSpec) -> Result<bool, ProjectionError> {
    let elim_ord = p.elim().ord_at(y)?;
    for (&z, f) in p.sections().iter().zip(p.polys()) {
        if let Step::Root(_) = step(f, z, y, &elim_ord)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `y ∈ β(Sing G)` iff `Sl(P)(y) ≥ 1`, for `P` in normal form at `y`.
pub fn membership_criterion(p: &Presentation, y: &PointSpec) -> Result<bool, ProjectionError> {
    if !is_normal(p, y)? {
        return Err(ProjectionError::NotNormal);
    }
    Ok(slope_presentation(p, y)? >= Extended::Finite(Rational::from_integer(1.into())))
}

/// Rewrite an upstairs algebra in the normalized coordinates: substitute
/// `z_i ← z_i − shifts[i]` in every generator.
pub fn apply_shifts(g: &ReesAlg, sections: &[usize], shifts: &[MPoly]) -> ReesAlg {
    g.map_polys(g.nvars(), |f, _| shift_poly(f, sections, shifts))
}

pub(crate) fn shift_poly(f: &MPoly, sections: &[usize], shifts: &[MPoly]) -> MPoly {
    let mut out = f.clone();
    for (&z, alpha) in sections.iter().zip(shifts) {
        if alpha.is_zero() || !out.involves(z) {
            continue;
        }
        let zv = MPoly::var(f.field(), f.nvars(), z);
        out = out.substitute(z, &(&zv - alpha));
    }
    out
}
