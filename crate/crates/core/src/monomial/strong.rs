use std::collections::BTreeSet;

use super::{divides, elim_as_monomial, ord_monomial, MonomialAlg, MonomialError};
use crate::blowup::{Chart, Tower};
use crate::field::Rational;
use crate::poly::PointSpec;
use crate::projection::{hord, membership_criterion};
use crate::value::{ExtRational, Extended};

/// One tested point: `Hord` against `ord(M W^s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCheck {
    pub name: String,
    pub point: PointSpec,
    pub in_sing: bool,
    pub hord: ExtRational,
    pub ord_monomial: Rational,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongReport {
    pub strong: bool,
    /// First failing point, if any.
    pub witness: Option<PointCheck>,
    pub checks: Vec<PointCheck>,
    pub elim_monomial: MonomialAlg,
    /// `M` divides the elimination algebra on the divisors of the chart.
    pub divides: bool,
}

fn stratum_points(chart: &Chart) -> Vec<(String, PointSpec)> {
    let present: Vec<(String, usize)> =
        chart.present().map(|d| (d.label.clone(), d.var.expect("present"))).collect();
    let mut subsets: Vec<Vec<usize>> = (1u64..(1u64 << present.len()))
        .map(|mask| (0..present.len()).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    subsets
        .into_iter()
        .map(|s| {
            let name = s.iter().map(|&i| present[i].0.as_str()).collect::<Vec<_>>().join("∩");
            (name, PointSpec::generic(s.iter().map(|&i| present[i].1)))
        })
        .collect()
}

/// Compare `Hord` with `ord(M W^s)` at the generic point of every divisor
/// stratum, at the chart origin and at `extra`, restricted to points where
/// either value reaches 1. The elimination algebra must itself be monomial
/// and divisible by `M`.
pub fn is_strong_monomial(
    tower: &Tower,
    m: &MonomialAlg,
    extra: &[(String, PointSpec)],
) -> Result<StrongReport, MonomialError> {
    let p = tower.presentation().ok_or(MonomialError::NoPresentation)?;
    let chart = tower.chart();
    let elim_monomial = elim_as_monomial(p.elim(), chart).ok_or(MonomialError::NotMonomialElim)?;
    let local = MonomialAlg {
        s: m.s,
        exponents: chart.present().map(|d| (d.label.clone(), m.h(&d.label))).collect(),
    };
    let divides = divides(&local, &elim_monomial)?;

    let mut points = stratum_points(chart);
    let origin = PointSpec::origin(chart.nvars());
    let mut seen: BTreeSet<PointSpec> = points.iter().map(|(_, x)| x.clone()).collect();
    for (name, x) in std::iter::once(("origin".to_string(), origin)).chain(extra.iter().cloned()) {
        if seen.insert(x.clone()) {
            points.push((name, x));
        }
    }

    let one = Rational::from_integer(1.into());
    let mut checks = Vec::with_capacity(points.len());
    for (name, x) in points {
        let h = hord(p, &x, tower.cap())?;
        let in_sing = membership_criterion(&h.normalized.presentation, &x)?;
        let om = ord_monomial(m, &x, chart);
        if !in_sing && om < one {
            continue;
        }
        let equal = h.value == Extended::Finite(om.clone());
        checks.push(PointCheck { name, point: x, in_sing, hord: h.value, ord_monomial: om, equal });
    }
    let witness = checks.iter().find(|c| !c.equal).cloned();
    Ok(StrongReport { strong: witness.is_none() && divides, witness, checks, elim_monomial, divides })
}
