use std::collections::{HashMap, VecDeque};

use super::ReesAlg;
use crate::poly::{hasse_multi, MPoly};

/// Smallest differential Rees algebra containing `g`, absolute when
/// `relative` is `None`, otherwise only differentiating in the given
/// variables.
///
/// For each generator `(f, n)` and each multi-index `α` with `1 ≤ |α| < n`
/// the generator `(Δ^α f, n − |α|)` is added; new generators are processed in
/// turn until nothing new appears. Generators are compared up to a scalar, and
/// `(f, m)` is skipped when `(f, m')` with `m' ≥ m` is already present, since
/// `I_{m'} ⊆ I_m`. Once a nonzero constant appears the algebra is the unit
/// algebra and the closure stops there.
pub fn diff_saturate(g: &ReesAlg, relative: Option<&[usize]>) -> ReesAlg {
    let all: Vec<usize> = (0..g.nvars()).collect();
    let vars: Vec<usize> = match relative {
        Some(v) => v.to_vec(),
        None => all,
    };
    let mut out = g.clone();
    let mut best: HashMap<MPoly, u32> = HashMap::new();
    for (f, n) in g.gens() {
        let w = best.entry(f.monic()).or_insert(0);
        *w = (*w).max(*n);
    }
    if out.is_unit() {
        return out;
    }
    let mut queue: VecDeque<(MPoly, u32)> = g.gens().iter().cloned().collect();
    while let Some((f, n)) = queue.pop_front() {
        let bounds: Vec<u32> = vars.iter().map(|&v| f.degree_in(v)).collect();
        let mut alpha = vec![0u32; g.nvars()];
        let mut found = Vec::new();
        enumerate(&vars, &bounds, 0, n.saturating_sub(1), &mut alpha, &mut |a| {
            let total: u32 = a.iter().sum();
            if total == 0 {
                return;
            }
            let d = hasse_multi(&f, a);
            if !d.is_zero() {
                found.push((d, n - total));
            }
        });
        for (d, m) in found {
            let key = d.monic();
            if best.get(&key).is_some_and(|&w| w >= m) {
                continue;
            }
            best.insert(key.clone(), m);
            let unit = key.is_unit_constant();
            out.extend([(key.clone(), m)]);
            if unit {
                return out;
            }
            queue.push_back((key, m));
        }
    }
    out
}

// All α supported on `vars` with α_v ≤ bound_v and |α| ≤ budget.
fn enumerate(
    vars: &[usize],
    bounds: &[u32],
    i: usize,
    budget: u32,
    alpha: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    if i == vars.len() {
        visit(alpha);
        return;
    }
    for a in 0..=bounds[i].min(budget) {
        alpha[vars[i]] = a;
        enumerate(vars, bounds, i + 1, budget - a, alpha, visit);
    }
    alpha[vars[i]] = 0;
}
