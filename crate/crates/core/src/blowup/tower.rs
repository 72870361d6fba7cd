use super::{transform_presentation, transform_rees, BlowupError, Chart, Divisor};
use crate::poly::{MPoly, PointSpec, PolyError};
use crate::projection::{apply_shifts, hord, slope_presentation, HordValue, Presentation};
use crate::rees::ReesAlg;
use crate::value::ExtRational;

/// Invariants at the generic point of a center, taken just before blowing it up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub ord: ExtRational,
    pub slope: Option<ExtRational>,
    pub hord: Option<ExtRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permissibility {
    /// `V(center) ⊆ Sing(G)`, tested at its generic point.
    pub center_in_sing: bool,
    /// The projected center lies in `Sing` of the elimination algebra.
    pub elim_center_in_sing: Option<bool>,
    pub exact_division: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub index: usize,
    pub center: Vec<usize>,
    pub chart_var: usize,
    pub label: String,
    /// Normalization applied to the sections before the step (`z_i + α_i`).
    pub shifts: Vec<MPoly>,
    pub before: Snapshot,
    pub permissibility: Permissibility,
    pub registry: Vec<Divisor>,
    pub g: ReesAlg,
    pub presentation: Option<Presentation>,
}

/// A sequence of chart blowups of `G` (and optionally of a presentation of it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    start_chart: Chart,
    start_g: ReesAlg,
    start_presentation: Option<Presentation>,
    chart: Chart,
    g: ReesAlg,
    presentation: Option<Presentation>,
    steps: Vec<Step>,
    cap: Option<usize>,
}

impl Tower {
    pub fn new(chart: Chart, g: ReesAlg, presentation: Option<Presentation>) -> Result<Self, BlowupError> {
        if g.nvars() != chart.nvars() {
            return Err(PolyError::ArityMismatch { poly: g.nvars(), point: chart.nvars() }.into());
        }
        if let Some(p) = &presentation {
            if p.nvars() != chart.nvars() {
                return Err(PolyError::ArityMismatch { poly: p.nvars(), point: chart.nvars() }.into());
            }
        }
        Ok(Tower {
            start_chart: chart.clone(),
            start_g: g.clone(),
            start_presentation: presentation.clone(),
            chart,
            g,
            presentation,
            steps: Vec::new(),
            cap: None,
        })
    }

    /// Iteration cap passed to every normalization.
    pub fn with_cap(mut self, cap: Option<usize>) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn g(&self) -> &ReesAlg {
        &self.g
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn start_chart(&self) -> &Chart {
        &self.start_chart
    }

    pub fn start_g(&self) -> &ReesAlg {
        &self.start_g
    }

    pub fn start_presentation(&self) -> Option<&Presentation> {
        self.start_presentation.as_ref()
    }

    /// `Hord` at a point of the current chart.
    pub fn hord_at(&self, y: &PointSpec) -> Result<Option<HordValue>, BlowupError> {
        match &self.presentation {
            Some(p) => Ok(Some(hord(p, y, self.cap)?)),
            None => Ok(None),
        }
    }

    /// Replace `G` and the presentation by their normalized form at `y`.
    pub fn renormalize(&mut self, y: &PointSpec) -> Result<Option<HordValue>, BlowupError> {
        let Some(p) = &self.presentation else { return Ok(None) };
        let h = hord(p, y, self.cap)?;
        self.g = apply_shifts(&self.g, p.sections(), &h.normalized.shifts);
        self.presentation = Some(h.normalized.presentation.clone());
        Ok(Some(h))
    }

    /// Record a blowup whose center does not meet the current chart.
    pub fn register_absent(&mut self) -> String {
        self.chart.register_absent()
    }

    /// Blow up `V(center)` and move to the `w`-chart.
    ///
    /// The center must lie in `Sing(G)`. With a presentation, it must also
    /// contain every section, `w` must be downstairs, and the presentation is
    /// first normalized at the generic point of the center; the same
    /// coordinate change is applied to `G`. On error the tower is unchanged.
    pub fn blowup(&mut self, center: &[usize], w: usize) -> Result<&Step, BlowupError> {
        let mut center = center.to_vec();
        center.sort_unstable();
        center.dedup();
        if center.is_empty() {
            return Err(BlowupError::EmptyCenter);
        }
        if let Some(&v) = center.iter().find(|&&v| v >= self.chart.nvars()) {
            return Err(BlowupError::UnknownVariable(v));
        }
        if !center.contains(&w) {
            return Err(BlowupError::ChartNotInCenter);
        }
        let xi = PointSpec::generic(center.iter().copied());
        if !self.g.sing_member(&xi)? {
            return Err(BlowupError::NotPermissible("center is not contained in Sing(G)".into()));
        }

        let mut g = self.g.clone();
        let mut presentation = self.presentation.clone();
        let mut shifts = Vec::new();
        let mut snapshot = Snapshot { ord: g.ord_at(&xi)?, slope: None, hord: None };
        let mut elim_ok = None;
        if let Some(p) = &self.presentation {
            if let Some(&z) = p.sections().iter().find(|z| !center.contains(z)) {
                return Err(BlowupError::NotBetaVertical(z));
            }
            if p.sections().contains(&w) {
                return Err(BlowupError::SectionChart(w));
            }
            snapshot.slope = Some(slope_presentation(p, &xi)?);
            let h = hord(p, &xi, self.cap)?;
            g = apply_shifts(&g, p.sections(), &h.normalized.shifts);
            let down = p.downstairs_point(&xi);
            let ok = h.normalized.presentation.elim().sing_member(&down)?;
            if !ok {
                return Err(BlowupError::NotPermissible(
                    "projected center is not contained in Sing of the elimination algebra".into(),
                ));
            }
            elim_ok = Some(ok);
            snapshot.hord = Some(h.value.clone());
            shifts = h.normalized.shifts.clone();
            presentation = Some(h.normalized.presentation);
        }

        let g1 = transform_rees(&g, &center, w)?;
        let p1 = match &presentation {
            Some(p) => Some(transform_presentation(p, &center, w)?),
            None => None,
        };
        let label = self.chart.register_blowup(&center, w);
        self.g = g1;
        self.presentation = p1;
        self.steps.push(Step {
            index: self.steps.len(),
            center,
            chart_var: w,
            label,
            shifts,
            before: snapshot,
            permissibility: Permissibility {
                center_in_sing: true,
                elim_center_in_sing: elim_ok,
                exact_division: true,
            },
            registry: self.chart.divisors().to_vec(),
            g: self.g.clone(),
            presentation: self.presentation.clone(),
        });
        Ok(self.steps.last().expect("just pushed"))
    }
}
