use num_bigint::BigInt;

use super::{Presentation, ProjectionError};
use crate::field::Rational;
use crate::poly::{monic_coefficients, order_at, MPoly, PointSpec};
use crate::value::{ext_min, ExtRational};

/// `Sl(f W^n)(y) = min_j ν_y(a_j)/j` for `f = z^n + Σ a_j z^{n−j}`; `∞` when
/// `f = z^n`. Coefficients are free of `z`, so the `z`-coordinate of `y` does
/// not matter.
pub fn slope_poly(f: &MPoly, z: usize, y: &PointSpec) -> Result<ExtRational, ProjectionError> {
    let a = monic_coefficients(f, z).map_err(|_| ProjectionError::NotMonic { index: 0 })?;
    let mut vals = Vec::with_capacity(a.len());
    for (j, aj) in a.iter().enumerate().skip(1) {
        vals.push(order_at(aj, y)?.map(|v| Rational::new(BigInt::from(v), BigInt::from(j))));
    }
    Ok(ext_min(vals))
}

/// `Sl(P)(y) = min{Sl(f_{n_i})(y), ord(elim)(y)}`.
pub fn slope_presentation(p: &Presentation, y: &PointSpec) -> Result<ExtRational, ProjectionError> {
    let mut vals = vec![p.elim().ord_at(y)?];
    for (&z, f) in p.sections().iter().zip(p.polys()) {
        vals.push(slope_poly(f, z, y)?);
    }
    Ok(ext_min(vals))
}
