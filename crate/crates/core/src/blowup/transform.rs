use super::BlowupError;
use crate::poly::{MPoly, Monomial};
use crate::projection::Presentation;
use crate::rees::{Pair, ReesAlg};

fn check_center(nvars: usize, center: &[usize], w: usize) -> Result<(), BlowupError> {
    if center.is_empty() {
        return Err(BlowupError::EmptyCenter);
    }
    if let Some(&v) = center.iter().find(|&&v| v >= nvars) {
        return Err(BlowupError::UnknownVariable(v));
    }
    if !center.contains(&w) {
        return Err(BlowupError::ChartNotInCenter);
    }
    Ok(())
}

/// Weighted transform in the `w`-chart of the blowup of `V(center)`:
/// substitute `v ← v·w` for `v ∈ center ∖ {w}` and divide by `w^n`.
///
/// Termwise the new `w`-exponent is `Σ_{v∈center} e_v − n`; the map on
/// exponents is injective, so the division is exact precisely when every
/// term has order at least `n` along the center.
pub fn blow_up_poly(f: &MPoly, n: u32, center: &[usize], w: usize) -> Result<MPoly, BlowupError> {
    check_center(f.nvars(), center, w)?;
    let mut out = MPoly::zero(f.field(), f.nvars());
    for (m, c) in f.terms() {
        let s = m.partial_degree(center);
        if s < n {
            return Err(BlowupError::NotPermissible(format!(
                "order {s} along the center is below the weight {n}"
            )));
        }
        let mut e = m.exponents().to_vec();
        e[w] = s - n;
        out.add_term(Monomial::new(e), c.clone());
    }
    Ok(out)
}

/// Inverse of [`blow_up_poly`]: multiply by `w^n` and undo the substitution.
pub fn blow_down_poly(g: &MPoly, n: u32, center: &[usize], w: usize) -> Result<MPoly, BlowupError> {
    check_center(g.nvars(), center, w)?;
    let mut out = MPoly::zero(g.field(), g.nvars());
    for (m, c) in g.terms() {
        let others: u32 = center.iter().filter(|&&v| v != w).map(|&v| m.exp(v)).sum();
        let ew = (m.exp(w) + n).checked_sub(others).ok_or_else(|| {
            BlowupError::NotPermissible("polynomial is not a transform for this center".into())
        })?;
        out.add_term(m.with_exp(w, ew), c.clone());
    }
    Ok(out)
}

/// Transform of a pair: every generator with the pair's weight.
pub fn transform_pair(p: &Pair, center: &[usize], w: usize) -> Result<Pair, BlowupError> {
    let gens = p.gens.iter().map(|g| blow_up_poly(g, p.b, center, w)).collect::<Result<_, _>>()?;
    Ok(Pair { gens, b: p.b })
}

/// Transform of a Rees algebra, generator by generator with its own weight.
pub fn transform_rees(g: &ReesAlg, center: &[usize], w: usize) -> Result<ReesAlg, BlowupError> {
    let mut gens = Vec::with_capacity(g.gens().len());
    for (f, n) in g.gens() {
        gens.push((blow_up_poly(f, *n, center, w)?, *n));
    }
    Ok(ReesAlg::new(g.field(), g.nvars(), gens).expect("transforms of nonzero generators are nonzero"))
}

/// Transform of a (simplified) presentation. The center must contain every
/// section variable and the chart variable must be downstairs; each `f_{n_i}`
/// is transformed with weight `n_i` and the elimination algebra downstairs
/// along `center ∖ sections`.
pub fn transform_presentation(p: &Presentation, center: &[usize], w: usize) -> Result<Presentation, BlowupError> {
    check_center(p.nvars(), center, w)?;
    if let Some(&z) = p.sections().iter().find(|z| !center.contains(z)) {
        return Err(BlowupError::NotBetaVertical(z));
    }
    if p.sections().contains(&w) {
        return Err(BlowupError::SectionChart(w));
    }
    let down: Vec<usize> = center.iter().copied().filter(|v| !p.sections().contains(v)).collect();
    let mut polys = Vec::with_capacity(p.e());
    for (f, n) in p.polys().iter().zip(p.degrees()) {
        polys.push(blow_up_poly(f, n, center, w)?);
    }
    let elim = transform_rees(p.elim(), &down, w)?;
    Ok(Presentation::new(p.sections().to_vec(), polys, elim).expect("transform keeps the presentation shape"))
}
