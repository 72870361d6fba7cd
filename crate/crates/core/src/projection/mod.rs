//! Transversal projections in coordinates: presentations by monic
//! polynomials in section variables, slopes, normal forms and H-functions.

mod elim;
mod hord;
mod normalize;
mod slope;

use thiserror::Error;

use crate::field::Field;
use crate::poly::{monic_coefficients, MPoly, PointSpec, PolyError};
use crate::rees::{ReesAlg, ReesError};

pub use elim::{coefficient_elim, presentation_elim};
pub use hord::{hord, p_hord, HordValue};
pub use normalize::{
    apply_shifts, is_normal, membership_criterion, normalize, Normalized, DEFAULT_CAP_FACTOR,
};
pub use slope::{slope_poly, slope_presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Rees(#[from] ReesError),
    #[error("polynomial {index} is not monic in its section variable")]
    NotMonic { index: usize },
    #[error("polynomial {index} has a coefficient involving a section variable")]
    CoefficientInvolvesSection { index: usize },
    #[error("section variables must be distinct")]
    DuplicateSection,
    #[error("{sections} section variables but {polys} polynomials")]
    SectionMismatch { sections: usize, polys: usize },
    #[error("elimination algebra generator {index} involves a section variable")]
    ElimInvolvesSection { index: usize },
    #[error("presentation is not in normal form at the point")]
    NotNormal,
    #[error("degenerate: slope unbounded (f = z^n and ord of the elimination algebra is infinite)")]
    Degenerate,
    #[error("normalization did not finish within {cap} iterations")]
    IterationCap { cap: usize },
    #[error("not a p-presentation: {0}")]
    NotPPresentation(String),
    #[error("p-presentation formula gives {p_formula}, coefficient slopes give {general}")]
    PFormulaMismatch { general: String, p_formula: String },
}

/// Simplified presentation `sP(β, z_1..z_e, f_{n_1}(z_1)..f_{n_e}(z_e))`
/// together with the elimination algebra. `e = 1` is an ordinary
/// presentation. Everything lives in the full chart ring; `β` forgets the
/// section variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    sections: Vec<usize>,
    polys: Vec<MPoly>,
    elim: ReesAlg,
}

impl Presentation {
    pub fn new(sections: Vec<usize>, polys: Vec<MPoly>, elim: ReesAlg) -> Result<Self, ProjectionError> {
        if sections.len() != polys.len() || sections.is_empty() {
            return Err(ProjectionError::SectionMismatch { sections: sections.len(), polys: polys.len() });
        }
        for (i, &z) in sections.iter().enumerate() {
            if sections[..i].contains(&z) {
                return Err(ProjectionError::DuplicateSection);
            }
        }
        for (index, (&z, f)) in sections.iter().zip(&polys).enumerate() {
            if f.nvars() != elim.nvars() || z >= f.nvars() {
                return Err(PolyError::ArityMismatch { poly: f.nvars(), point: elim.nvars() }.into());
            }
            let coeffs = monic_coefficients(f, z).map_err(|_| ProjectionError::NotMonic { index })?;
            if coeffs.len() < 2 {
                return Err(ProjectionError::NotMonic { index });
            }
            if coeffs.iter().any(|a| sections.iter().any(|&s| a.involves(s))) {
                return Err(ProjectionError::CoefficientInvolvesSection { index });
            }
        }
        for (index, (g, _)) in elim.gens().iter().enumerate() {
            if sections.iter().any(|&s| g.involves(s)) {
                return Err(ProjectionError::ElimInvolvesSection { index });
            }
        }
        Ok(Presentation { sections, polys, elim })
    }

    /// Single-section presentation `P(β, z, f_n(z))`.
    pub fn single(z: usize, f: MPoly, elim: ReesAlg) -> Result<Self, ProjectionError> {
        Presentation::new(vec![z], vec![f], elim)
    }

    pub fn sections(&self) -> &[usize] {
        &self.sections
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn elim(&self) -> &ReesAlg {
        &self.elim
    }

    pub fn e(&self) -> usize {
        self.sections.len()
    }

    pub fn field(&self) -> Field {
        self.elim.field()
    }

    pub fn nvars(&self) -> usize {
        self.elim.nvars()
    }

    /// Degrees `n_i`.
    pub fn degrees(&self) -> Vec<u32> {
        self.sections.iter().zip(&self.polys).map(|(&z, f)| f.degree_in(z)).collect()
    }

    /// Coefficients `a^{(i)}_0 = 1, a^{(i)}_1, …, a^{(i)}_{n_i}`.
    pub fn coefficients(&self, i: usize) -> Vec<MPoly> {
        monic_coefficients(&self.polys[i], self.sections[i]).expect("validated monic")
    }

    /// Non-section variables.
    pub fn downstairs_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|v| !self.sections.contains(v)).collect()
    }

    /// The upstairs algebra `{(f_i, n_i)} ∪ elim` this presentation describes.
    pub fn upstairs(&self) -> ReesAlg {
        let mut g = ReesAlg::zero(self.field(), self.nvars());
        g.extend(self.polys.iter().cloned().zip(self.degrees()));
        g.union(&self.elim)
    }

    pub(crate) fn with_parts(&self, polys: Vec<MPoly>, elim: ReesAlg) -> Presentation {
        Presentation { sections: self.sections.clone(), polys, elim }
    }

    /// The point seen downstairs: section coordinates are ignored.
    pub fn downstairs_point(&self, y: &PointSpec) -> PointSpec {
        match y {
            PointSpec::Closed(c) => {
                let mut c = c.clone();
                for &s in &self.sections {
                    c[s] = self.field().zero();
                }
                PointSpec::Closed(c)
            }
            PointSpec::Generic(s) => {
                PointSpec::Generic(s.iter().copied().filter(|v| !self.sections.contains(v)).collect())
            }
        }
    }
}

/// A simplified presentation whose degrees are powers of the characteristic,
/// stored with `ℓ_1 ≤ … ≤ ℓ_e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPresentation(Presentation);

impl PPresentation {
    pub fn new(p: Presentation) -> Result<Self, ProjectionError> {
        let ch = p.field().characteristic();
        if ch == 0 {
            return Err(ProjectionError::NotPPresentation("characteristic zero".into()));
        }
        for n in p.degrees() {
            if !is_power_of(n as u64, ch) {
                return Err(ProjectionError::NotPPresentation(format!("degree {n} is not a power of {ch}")));
            }
        }
        let mut order: Vec<usize> = (0..p.e()).collect();
        let degrees = p.degrees();
        order.sort_by_key(|&i| degrees[i]);
        let sections = order.iter().map(|&i| p.sections[i]).collect();
        let polys = order.iter().map(|&i| p.polys[i].clone()).collect();
        Ok(PPresentation(Presentation { sections, polys, elim: p.elim }))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0
    }

    /// `ℓ_i` with `n_i = p^{ℓ_i}`.
    pub fn exponents(&self) -> Vec<u32> {
        let p = self.0.field().characteristic();
        self.0.degrees().iter().map(|&n| crate::field::p_valuation(n as u64, p)).collect()
    }
}

pub(crate) fn is_power_of(n: u64, p: u64) -> bool {
    let mut m = n;
    while m > 1 && m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}
