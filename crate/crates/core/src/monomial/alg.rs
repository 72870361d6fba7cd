use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use super::MonomialError;
use crate::blowup::Chart;
use crate::field::Rational;
use crate::poly::PointSpec;
use crate::rees::ReesAlg;

/// `M W^s = O[I(H_1)^{h_1} ⋯ I(H_r)^{h_r} W^s]`, keyed by divisor label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialAlg {
    pub s: u64,
    pub exponents: BTreeMap<String, u64>,
}

impl MonomialAlg {
    pub fn empty() -> Self {
        MonomialAlg { s: 1, exponents: BTreeMap::new() }
    }

    /// From rational values `h_i/s` per label: `s` is the least common
    /// denominator.
    pub fn from_values(values: &[(String, Rational)]) -> Self {
        let s = values.iter().fold(BigInt::from(1), |acc, (_, v)| acc.lcm(v.denom()));
        let exponents = values
            .iter()
            .map(|(l, v)| {
                let h = (v * Rational::from_integer(s.clone())).to_integer();
                (l.clone(), u64::try_from(h).expect("non-negative exponent"))
            })
            .collect();
        MonomialAlg { s: u64::try_from(s).expect("small denominator"), exponents }
    }

    pub fn h(&self, label: &str) -> u64 {
        self.exponents.get(label).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.values().all(|&h| h == 0)
    }

    pub fn value(&self, label: &str) -> Rational {
        Rational::new(BigInt::from(self.h(label)), BigInt::from(self.s))
    }
}

/// Labels of the divisors of `chart` that pass through `x`.
pub fn divisors_through(chart: &Chart, x: &PointSpec) -> Vec<String> {
    chart
        .present()
        .filter(|d| {
            let v = d.var.expect("present divisor");
            match x {
                PointSpec::Closed(c) => c[v] == Rational::from_integer(0.into()),
                PointSpec::Generic(s) => s.contains(&v),
            }
        })
        .map(|d| d.label.clone())
        .collect()
}

/// `ord(M W^s)(x) = (Σ_{x ∈ H_i} h_i)/s`.
pub fn ord_monomial(m: &MonomialAlg, x: &PointSpec, chart: &Chart) -> Rational {
    let total: u64 = divisors_through(chart, x).iter().map(|l| m.h(l)).sum();
    Rational::new(BigInt::from(total), BigInt::from(m.s))
}

/// `h_i / s_M ≤ α_i / s_R` for every label. Labels of `r` must be known to `m`.
pub fn divides(m: &MonomialAlg, r: &MonomialAlg) -> Result<bool, MonomialError> {
    if let Some(l) = r.exponents.keys().find(|l| !m.exponents.contains_key(*l)) {
        return Err(MonomialError::IncompatibleRegistries(l.clone()));
    }
    Ok(m.exponents.iter().all(|(l, &h)| h as u128 * r.s as u128 <= r.h(l) as u128 * m.s as u128))
}

/// The elimination algebra as a monomial algebra, when it is one near the
/// chart origin: every generator is a unit times a monomial in present
/// divisor variables and
/// one generator `(m_0, n_0)` has `α_0/n_0 ≤ α_k/n_k` against all others, so
/// it generates the rest up to integral closure.
pub fn elim_as_monomial(elim: &ReesAlg, chart: &Chart) -> Option<MonomialAlg> {
    if elim.is_zero_algebra() {
        return None;
    }
    let mut gens = Vec::new();
    for (f, n) in elim.gens() {
        // f = x^α · u with u(0) ≠ 0: x^α is the gcd of the terms and must
        // itself occur as a term.
        let mut gcd: Vec<u32> = vec![u32::MAX; elim.nvars()];
        for (mono, _) in f.terms() {
            for (g, &e) in gcd.iter_mut().zip(mono.exponents()) {
                *g = (*g).min(e);
            }
        }
        if !f.terms().any(|(mono, _)| mono.exponents() == gcd.as_slice()) {
            return None;
        }
        let mut alpha = BTreeMap::new();
        for (v, &e) in gcd.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let label = chart.label_of_var(v)?;
            alpha.insert(label.to_string(), e as u64);
        }
        gens.push((alpha, *n as u64));
    }
    let labels: Vec<String> = chart.present().map(|d| d.label.clone()).collect();
    let get = |a: &BTreeMap<String, u64>, l: &str| a.get(l).copied().unwrap_or(0);
    let (alpha, n0) = gens.iter().find(|(a0, n0)| {
        gens.iter().all(|(ak, nk)| labels.iter().all(|l| get(a0, l) * nk <= get(ak, l) * n0))
    })?;
    let mut exponents: BTreeMap<String, u64> = labels.iter().map(|l| (l.clone(), 0)).collect();
    for (l, e) in alpha {
        exponents.insert(l.clone(), *e);
    }
    Some(MonomialAlg { s: *n0, exponents })
}
