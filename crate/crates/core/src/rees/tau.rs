use num_traits::Zero;

use super::{diff_saturate, ReesAlg, ReesError};
use crate::linalg::rref;
use crate::poly::{MPoly, Monomial, PointSpec};

/// Tangent-cone data of `G` at a closed point of `Sing(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentData {
    pub point: PointSpec,
    /// Initial forms (in local coordinates at the point) of the saturated
    /// generators whose order equals their weight.
    pub initial_ideal_gens: Vec<MPoly>,
    /// Additive forms `Σ c_i x_i^q` (`q = 1` or a power of `p`) found in the
    /// degree-`q` parts of the initial ideal.
    pub vertex_space_gens: Vec<MPoly>,
    /// Reduced basis of the linear forms `Σ c_i^{1/q} x_i` cutting out the
    /// vertex space.
    pub linear_forms: Vec<MPoly>,
    pub tau: usize,
}

/// `τ_G(x)`: codimension of the space of vertices of the tangent cone.
///
/// The algebra is saturated, initial forms of weight-exact generators are
/// collected, and for each `q` (`1` in characteristic zero, `p^e` up to the
/// largest weight otherwise) the degree-`q` part of the initial ideal is
/// intersected with the span of `x_1^q, …, x_d^q`. Roots of the resulting
/// additive forms are linear forms; `τ` is their rank.
pub fn tau_at(g: &ReesAlg, x: &PointSpec) -> Result<TangentData, ReesError> {
    x.validate(g.nvars())?;
    if !x.is_closed() {
        return Err(ReesError::NotClosed);
    }
    if !g.sing_member(x)? {
        return Err(ReesError::NotInSing);
    }
    let sat = diff_saturate(g, None);
    if sat.is_unit() {
        return Err(ReesError::NotInSing);
    }
    let field = g.field();
    let d = g.nvars();
    let all: Vec<usize> = (0..d).collect();
    let mut forms: Vec<MPoly> = Vec::new();
    for (f, n) in sat.gens() {
        let local = x.localize(f);
        if local.min_degree_in(&all).finite() == Some(n) {
            let h = local.homogeneous_part(&all, *n).monic();
            if !forms.contains(&h) {
                forms.push(h);
            }
        }
    }
    let max_deg = forms.iter().filter_map(|h| h.total_degree().finite().copied()).max().unwrap_or(0);
    let p = field.characteristic();
    let mut qs = vec![1u32];
    if p > 0 {
        let mut q = p as u32;
        while q <= max_deg {
            qs.push(q);
            q *= p as u32;
        }
    }

    let mut additive = Vec::new();
    let mut linear_rows: Vec<Vec<_>> = Vec::new();
    for &q in &qs {
        let mut cols: Vec<Monomial> =
            monomials_of_degree(d, q).into_iter().filter(|m| !is_pure_power(m)).collect();
        let nonadd = cols.len();
        cols.extend((0..d).map(|i| Monomial::var(d, i, q)));
        let index = |m: &Monomial| cols.iter().position(|c| c == m).expect("degree-q monomial");
        let mut rows = Vec::new();
        for h in &forms {
            let k = *h.total_degree().finite().expect("nonzero form");
            if k > q {
                continue;
            }
            for m in monomials_of_degree(d, q - k) {
                let mut row = vec![field.zero(); cols.len()];
                for (t, c) in h.terms() {
                    row[index(&t.mul(&m))] = c.clone();
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            continue;
        }
        for (pivot, row) in rref(field, rows) {
            if pivot < nonadd {
                continue;
            }
            let coeffs = &row[nonadd..];
            additive.push(MPoly::from_terms(
                field,
                d,
                (0..d).filter(|&i| !coeffs[i].is_zero()).map(|i| {
                    (Monomial::var(d, i, q).exponents().to_vec(), coeffs[i].clone())
                }),
            ));
            let root: Vec<_> = coeffs
                .iter()
                .map(|c| field.frobenius_root(c, q as u64).expect("perfect base field"))
                .collect();
            linear_rows.push(root);
        }
    }
    let basis = rref(field, linear_rows);
    let linear_forms = basis
        .iter()
        .map(|(_, row)| {
            MPoly::from_terms(
                field,
                d,
                (0..d).filter(|&i| !row[i].is_zero()).map(|i| {
                    (Monomial::var(d, i, 1).exponents().to_vec(), row[i].clone())
                }),
            )
        })
        .collect();
    Ok(TangentData {
        point: x.clone(),
        initial_ideal_gens: forms,
        vertex_space_gens: additive,
        linear_forms,
        tau: basis.len(),
    })
}

fn is_pure_power(m: &Monomial) -> bool {
    m.exponents().iter().filter(|&&e| e > 0).count() == 1
}

/// All exponent vectors in `d` variables with total degree `k`.
pub(crate) fn monomials_of_degree(d: usize, k: u32) -> Vec<Monomial> {
    fn rec(d: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == d {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            cur[i] = 0;
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(d, i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if d == 0 {
        if k == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    rec(d, 0, k, &mut vec![0; d], &mut out);
    out
}
