use super::{Presentation, ProjectionError};
use crate::poly::{monic_coefficients, MPoly};
use crate::rees::{diff_saturate, ReesAlg};

/// Downstairs proxy for the elimination algebra of `f W^n`: the coefficient
/// generators `(a_j, j)` and, when `relative_saturation` is set, every
/// generator of the `z`-relative saturation of `{(f, n)}` that no longer
/// involves `z`.
pub fn coefficient_elim(f: &MPoly, z: usize, relative_saturation: bool) -> Result<ReesAlg, ProjectionError> {
    let a = monic_coefficients(f, z).map_err(|_| ProjectionError::NotMonic { index: 0 })?;
    let n = (a.len() - 1) as u32;
    let mut out = ReesAlg::zero(f.field(), f.nvars());
    out.extend(a.into_iter().enumerate().skip(1).map(|(j, aj)| (aj, j as u32)));
    if relative_saturation {
        let g = ReesAlg::new(f.field(), f.nvars(), vec![(f.clone(), n)])?;
        let sat = diff_saturate(&g, Some(&[z]));
        let known: Vec<(MPoly, u32)> = out.gens().iter().map(|(g, m)| (g.monic(), *m)).collect();
        let extra: Vec<(MPoly, u32)> = sat
            .gens()
            .iter()
            .filter(|(g, m)| !g.involves(z) && !known.contains(&(g.monic(), *m)))
            .cloned()
            .collect();
        out.extend(extra);
    }
    Ok(out)
}

/// [`coefficient_elim`] of every polynomial of a presentation, merged.
pub fn presentation_elim(sections: &[usize], polys: &[MPoly]) -> Result<ReesAlg, ProjectionError> {
    let mut out: Option<ReesAlg> = None;
    for (index, (&z, f)) in sections.iter().zip(polys).enumerate() {
        let e = coefficient_elim(f, z, true).map_err(|e| match e {
            ProjectionError::NotMonic { .. } => ProjectionError::NotMonic { index },
            other => other,
        })?;
        out = Some(match out {
            Some(acc) => acc.union(&e),
            None => e,
        });
    }
    out.ok_or(ProjectionError::SectionMismatch { sections: 0, polys: 0 })
}

impl Presentation {
    /// Presentation whose elimination algebra is the coefficient proxy.
    pub fn with_coefficient_elim(sections: Vec<usize>, polys: Vec<MPoly>) -> Result<Self, ProjectionError> {
        let elim = presentation_elim(&sections, &polys)?;
        Presentation::new(sections, polys, elim)
    }
}
