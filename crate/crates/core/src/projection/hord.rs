use num_bigint::BigInt;

use super::{is_power_of, normalize, slope_poly, Normalized, Presentation, ProjectionError};
use crate::field::Rational;
use crate::poly::{order_at, PointSpec};
use crate::value::{ext_min, ExtRational};

/// Value of the H-function at a point together with the data it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HordValue {
    pub value: ExtRational,
    /// Slope of each normalized `f_{n_i}`.
    pub slopes: Vec<ExtRational>,
    pub elim_ord: ExtRational,
    /// The constant-term formula, when every degree is a power of `p`.
    pub p_formula: Option<ExtRational>,
    pub normalized: Normalized,
}

/// `Hord^{(d−e)}` at the point over `y`: normalize every `f_{n_i}` at `y`,
/// then take the minimum of all coefficient slopes and `ord(elim)(y)`.
///
/// For p-presentations the constant-term formula is evaluated as well and the
/// two values must agree.
pub fn hord(p: &Presentation, y: &PointSpec, cap: Option<usize>) -> Result<HordValue, ProjectionError> {
    let normalized = normalize(p, y, cap)?;
    let np = &normalized.presentation;
    let elim_ord = np.elim().ord_at(y)?;
    let mut slopes = Vec::with_capacity(np.e());
    for (&z, f) in np.sections().iter().zip(np.polys()) {
        slopes.push(slope_poly(f, z, y)?);
    }
    let value = ext_min(slopes.iter().cloned().chain([elim_ord.clone()]));
    let ch = np.field().characteristic();
    let p_formula = if ch > 0 && np.degrees().iter().all(|&n| is_power_of(n as u64, ch)) {
        let v = p_hord(np, y)?;
        if v != value {
            return Err(ProjectionError::PFormulaMismatch { general: value.to_canonical(), p_formula: v.to_canonical() });
        }
        Some(v)
    } else {
        None
    };
    Ok(HordValue { value, slopes, elim_ord, p_formula, normalized })
}

/// `min_i {ν_y(a^{(i)}_{n_i})/n_i, ord(elim)(y)}`, only meaningful for a
/// p-presentation in normal form at `y`.
pub fn p_hord(p: &Presentation, y: &PointSpec) -> Result<ExtRational, ProjectionError> {
    let mut vals = vec![p.elim().ord_at(y)?];
    for (i, n) in p.degrees().into_iter().enumerate() {
        let a = p.coefficients(i);
        vals.push(order_at(&a[n as usize], y)?.map(|v| Rational::new(BigInt::from(v), BigInt::from(n))));
    }
    Ok(ext_min(vals))
}
