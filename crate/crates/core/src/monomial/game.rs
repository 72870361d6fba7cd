//! Combinatorial resolution of a monomial algebra on normal-crossing
//! divisors: repeated stellar subdivision of the complex of strata.

use std::collections::{BTreeMap, BTreeSet};

use super::{MonomialAlg, MonomialError};
use crate::blowup::Chart;

/// Number of subdivisions after which the game is declared runaway.
pub const MAX_GAME_STEPS: usize = 10_000;

/// One blowup of the game: the stratum `∩_{i∈T} H_i` and the divisor it
/// creates with its exponent `Σ_T h_i − s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameCenter {
    pub labels: Vec<String>,
    pub new_label: String,
    pub new_exponent: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameResult {
    pub centers: Vec<GameCenter>,
    /// Exponents of every divisor ever present, including the new ones.
    pub exponents: BTreeMap<String, u64>,
    pub s: u64,
    /// Maximal faces of the final complex.
    pub faces: Vec<BTreeSet<String>>,
}

impl GameResult {
    /// Largest `Σ_T h_i` over the strata of the final complex.
    pub fn max_stratum_sum(&self) -> u64 {
        strata(&self.faces).iter().map(|t| t.iter().map(|l| self.exponents[l]).sum()).max().unwrap_or(0)
    }
}

// Divisor age: position in creation order, read off the label `H<k>`.
fn age(label: &str, order: &[String]) -> usize {
    order.iter().position(|l| l == label).expect("known label")
}

fn strata(faces: &[BTreeSet<String>]) -> BTreeSet<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for f in faces {
        let items: Vec<&String> = f.iter().collect();
        for mask in 1u64..(1u64 << items.len()) {
            let t: BTreeSet<String> =
                items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| (*l).clone()).collect();
            out.insert(t);
        }
    }
    out
}

/// While some stratum `T` has `Σ_T h_i ≥ s`, blow up one with fewest
/// divisors (the largest stratum), ties going to the oldest labels. New
/// labels continue the chart's numbering.
pub fn combinatorial_resolve(m: &MonomialAlg, chart: &Chart) -> Result<GameResult, MonomialError> {
    let mut order: Vec<String> = chart.divisors().iter().map(|d| d.label.clone()).collect();
    let present: BTreeSet<String> = chart.present().map(|d| d.label.clone()).collect();
    let mut exponents: BTreeMap<String, u64> = present.iter().map(|l| (l.clone(), m.h(l))).collect();
    let mut faces: Vec<BTreeSet<String>> = if present.is_empty() { Vec::new() } else { vec![present] };
    let mut centers = Vec::new();
    let s = m.s;
    loop {
        let candidate = strata(&faces)
            .into_iter()
            .filter(|t| t.iter().map(|l| exponents[l]).sum::<u64>() >= s)
            .min_by_key(|t| {
                let mut ages: Vec<usize> = t.iter().map(|l| age(l, &order)).collect();
                ages.sort_unstable();
                (t.len(), ages)
            });
        let Some(t) = candidate else { break };
        if centers.len() == MAX_GAME_STEPS {
            return Err(MonomialError::GameRunaway(MAX_GAME_STEPS));
        }
        let new_label = format!("H{}", order.len() + 1);
        let new_exponent = t.iter().map(|l| exponents[l]).sum::<u64>() - s;
        order.push(new_label.clone());
        exponents.insert(new_label.clone(), new_exponent);
        let mut next = Vec::new();
        for f in faces {
            if t.is_subset(&f) {
                for i in &t {
                    let mut g = f.clone();
                    g.remove(i);
                    g.insert(new_label.clone());
                    next.push(g);
                }
            } else {
                next.push(f);
            }
        }
        faces = next;
        let mut labels: Vec<String> = t.into_iter().collect();
        labels.sort_by_key(|l| age(l, &order));
        centers.push(GameCenter { labels, new_label, new_exponent });
    }
    Ok(GameResult { centers, exponents, s, faces })
}
