use num_traits::{ToPrimitive, Zero};

use super::{MPoly, PointSpec, PolyError};
use crate::field::{p_valuation, Rational};

/// `Σ_j A_j Z^{n−j}` with `A_0 = 1` and `A_j` weighted-homogeneous of degree
/// `jq` in the grading variables (zero when `jq ∉ Z`). The distinguished
/// symbol `Z` occupies the slot of the section variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedForm {
    pub z: usize,
    pub n: u32,
    pub q: Rational,
    /// `coeffs[j] = A_j` in local coordinates at the point, `j = 0..=n`.
    pub coeffs: Vec<MPoly>,
    pub grading: Vec<usize>,
}

impl WeightedForm {
    pub fn to_poly(&self) -> MPoly {
        let field = self.coeffs[0].field();
        let nv = self.coeffs[0].nvars();
        let zv = MPoly::var(field, nv, self.z);
        let mut out = MPoly::zero(field, nv);
        for (j, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                out = &out + &(a * &zv.pow(self.n - j as u32));
            }
        }
        out
    }

    /// `Z^n` alone: every `A_j` with `j ≥ 1` vanishes.
    pub fn is_pure(&self) -> bool {
        self.coeffs[1..].iter().all(MPoly::is_zero)
    }
}

/// Split a polynomial monic in `z` into its coefficients `a_0 = 1, a_1, …, a_n`
/// where `f = Σ a_j z^{n−j}`.
pub fn monic_coefficients(f: &MPoly, z: usize) -> Result<Vec<MPoly>, PolyError> {
    let by_power = f.coefficients_in(z);
    let n = match by_power.keys().next_back() {
        Some(&n) => n,
        None => return Err(PolyError::ZeroPolynomial),
    };
    let lead = &by_power[&n];
    if !(lead.is_constant() && lead.constant_term() == f.field().one()) {
        return Err(PolyError::NotMonic { var: z });
    }
    let mut out = vec![MPoly::zero(f.field(), f.nvars()); n as usize + 1];
    for (k, c) in by_power {
        out[(n - k) as usize] = c;
    }
    Ok(out)
}

/// Grading variables and local shift at `y`, ignoring the section variable.
pub(crate) fn downstairs_view(y: &PointSpec, z: usize, nvars: usize) -> (PointSpec, Vec<usize>) {
    match y {
        PointSpec::Closed(c) => {
            let mut c = c.clone();
            c[z] = Rational::zero();
            (PointSpec::Closed(c), (0..nvars).filter(|&v| v != z).collect())
        }
        PointSpec::Generic(s) => {
            let s: Vec<usize> = s.iter().copied().filter(|&v| v != z).collect();
            (PointSpec::Generic(s.clone()), s)
        }
    }
}

/// Weighted initial form of `f` (monic in `z`) at `y` with weight `q`.
pub fn weighted_initial_form(
    f: &MPoly,
    z: usize,
    y: &PointSpec,
    q: &Rational,
) -> Result<WeightedForm, PolyError> {
    let nv = f.nvars();
    match y {
        PointSpec::Closed(c) if c.len() != nv => {
            return Err(PolyError::ArityMismatch { poly: nv, point: c.len() })
        }
        PointSpec::Generic(s) if s.iter().any(|&v| v >= nv) => {
            return Err(PolyError::InvalidPoint("variable index out of range".into()))
        }
        _ => {}
    }
    let a = monic_coefficients(f, z)?;
    let n = (a.len() - 1) as u32;
    let (local_pt, grading) = downstairs_view(y, z, nv);
    let mut coeffs = Vec::with_capacity(a.len());
    for (j, aj) in a.iter().enumerate() {
        let w = q * Rational::from_integer(j.into());
        if j == 0 {
            coeffs.push(aj.clone());
        } else if w.is_integer() {
            let deg = w.to_integer().to_u32().expect("small weight");
            coeffs.push(local_pt.localize(aj).homogeneous_part(&grading, deg));
        } else {
            coeffs.push(MPoly::zero(f.field(), nv));
        }
    }
    Ok(WeightedForm { z, n, q: q.clone(), coeffs, grading })
}

/// The `A` with `W = (Z + A)^n`, if it exists. `A` is returned in the same
/// local coordinates as the coefficients of `W`.
pub fn is_nth_power(w: &WeightedForm) -> Option<MPoly> {
    let field = w.coeffs[0].field();
    let nv = w.coeffs[0].nvars();
    let p = field.characteristic();
    let e = if p == 0 { 0 } else { p_valuation(w.n as u64, p) };
    let pe: u64 = if p == 0 { 1 } else { p.pow(e) };
    let a_pe = &w.coeffs[pe as usize];
    // Lucas: C(m p^e, p^e) ≡ m mod p, nonzero since p ∤ m.
    let b = field.binomial(w.n as u64, pe);
    let inv = field.inv(&b).ok()?;
    let power = a_pe.scale(&inv);
    let mut root = MPoly::zero(field, nv);
    for (m, c) in power.terms() {
        if m.exponents().iter().any(|&x| !(x as u64).is_multiple_of(pe)) {
            return None;
        }
        let exps = m.exponents().iter().map(|&x| (x as u64 / pe) as u32).collect();
        root.add_term(super::Monomial::new(exps), field.frobenius_root(c, pe)?);
    }
    let zv = MPoly::var(field, nv, w.z);
    if (&zv + &root).pow(w.n) == w.to_poly() {
        Some(root)
    } else {
        None
    }
}
