use super::{BlowupError, Chart, Tower};
use crate::field::{floor_i64, Rational};
use crate::poly::PointSpec;
use crate::projection::{is_normal, slope_presentation, Presentation};
use crate::rees::ReesAlg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentStep {
    /// `'A'` for the point blowups, `'B'` for the codimension-`e+1` ones.
    pub stage: char,
    pub center: Vec<usize>,
    pub chart_var: usize,
    pub permissible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentResult {
    pub q: Rational,
    pub n: u32,
    /// Number of permissible Stage B blowups.
    pub stage_b_count: u32,
    /// Index (from 0) of the last permissible Stage B center.
    pub ell: i64,
    /// `⌊N(q−1)−1⌋`.
    pub formula: i64,
    pub steps: Vec<ExperimentStep>,
    pub tower: Tower,
}

/// Adjoin a coordinate `t`, blow up the origin `n` times in the `t`-chart,
/// then blow up `V(z_1, …, z_e, t)` in the `t`-chart for as long as it is
/// permissible.
///
/// `q` is the slope of the presentation at the origin, which must be in
/// normal form there with `q ≥ 1`. The algebra blown up is the one the
/// presentation describes, `{(f_i, n_i)} ∪ elim`.
pub fn stage_ab_experiment(
    chart: &Chart,
    p: &Presentation,
    n: u32,
) -> Result<ExperimentResult, BlowupError> {
    let d = p.nvars();
    let origin = PointSpec::origin(d);
    if !is_normal(p, &origin)? {
        return Err(BlowupError::NotNormal);
    }
    let q = match slope_presentation(p, &origin)? {
        crate::value::Extended::Finite(q) => q,
        inf => return Err(BlowupError::SlopeBelowOne(inf.to_canonical())),
    };
    if q < Rational::from_integer(1.into()) {
        return Err(BlowupError::SlopeBelowOne(crate::field::rational_string(&q)));
    }

    let mut name = "t".to_string();
    while chart.names().contains(&name) {
        name.push('_');
    }
    let ext_chart = chart.with_extra_var(&name);
    let t = d;
    let upstairs = p.upstairs();
    let g = ReesAlg::new(p.field(), d + 1, upstairs.gens().iter().map(|(f, m)| (f.extend_vars(1), *m)).collect())
        .expect("extension keeps generators valid");
    let mut tower = Tower::new(ext_chart, g, None)?;
    let mut steps = Vec::new();

    let all: Vec<usize> = (0..=d).collect();
    for _ in 0..n {
        tower.blowup(&all, t)?;
        steps.push(ExperimentStep { stage: 'A', center: all.clone(), chart_var: t, permissible: true });
    }

    let mut center_b: Vec<usize> = p.sections().to_vec();
    center_b.push(t);
    // The count is at most N(q−1); anything far beyond signals a bug.
    let bound = 64 * (n as usize + 1) * (floor_i64(&q).max(1) as usize + 1);
    let mut count = 0u32;
    loop {
        match tower.blowup(&center_b, t) {
            Ok(_) => {
                count += 1;
                steps.push(ExperimentStep { stage: 'B', center: center_b.clone(), chart_var: t, permissible: true });
                if count as usize > bound {
                    return Err(BlowupError::Unbounded(bound));
                }
            }
            Err(BlowupError::NotPermissible(_)) => {
                steps.push(ExperimentStep { stage: 'B', center: center_b.clone(), chart_var: t, permissible: false });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let nq1 = Rational::from_integer(n.into()) * (&q - Rational::from_integer(1.into()));
    let formula = floor_i64(&(nq1 - Rational::from_integer(1.into())));
    Ok(ExperimentResult { q, n, stage_b_count: count, ell: count as i64 - 1, formula, steps, tower })
}
