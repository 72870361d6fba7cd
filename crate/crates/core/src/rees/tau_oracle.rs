//! Brute-force τ: the vertex space of the tangent cone as the group of
//! translations preserving the cone, over a small extension `F_{p^m}`.

use num_traits::ToPrimitive;

use super::{diff_saturate, ReesAlg, ReesError};
use crate::poly::{MPoly, PointSpec};

/// Largest number of points of `F_{p^m}^d` the oracle will enumerate.
pub const MAX_ORACLE_POINTS: usize = 4096;

/// `F_{p^m}` with table arithmetic; elements are `0..p^m`, read as base-`p`
/// digit vectors of polynomials modulo a fixed irreducible of degree `m`.
#[derive(Debug, Clone)]
pub struct GaloisField {
    pub p: usize,
    pub m: u32,
    pub size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl GaloisField {
    pub fn new(p: u64, m: u32) -> Result<Self, ReesError> {
        if !(1..=3).contains(&m) {
            return Err(ReesError::Oracle(format!("extension degree {m} outside 1..=3")));
        }
        let p = p as usize;
        let size = p.pow(m);
        let digits = |mut a: usize| -> Vec<usize> {
            let mut v = vec![0; m as usize];
            for d in v.iter_mut() {
                *d = a % p;
                a /= p;
            }
            v
        };
        let undigits = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        // Monic irreducible modulus: for m ≤ 3, having no root suffices.
        let modulus: Vec<usize> = (0..p.pow(m))
            .map(|a| {
                let mut v = digits(a);
                v.push(1);
                v
            })
            .find(|poly| {
                m == 1
                    || (0..p).all(|t| {
                        poly.iter().rev().fold(0, |acc, &c| (acc * t + c) % p) != 0
                    })
            })
            .expect("irreducible polynomial exists");
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for a in 0..size {
            let da = digits(a);
            for b in 0..size {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * size + b] = undigits(&s);
                let mut prod = vec![0; 2 * m as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for k in (m as usize..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    for (i, mc) in modulus.iter().enumerate() {
                        let idx = k - m as usize + i;
                        prod[idx] = (prod[idx] + p * p - c * mc % p) % p;
                    }
                }
                mul[a * size + b] = undigits(&prod[..m as usize]);
            }
        }
        Ok(GaloisField { p, m, size, add, mul })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    fn eval(&self, f: &MPoly, pt: &[usize]) -> usize {
        let mut acc = 0;
        for (mono, c) in f.terms() {
            let mut t = c.to_integer().to_usize().expect("reduced coefficient") % self.p;
            for (v, &e) in mono.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = self.mul(t, pt[v]);
                }
            }
            acc = self.add(acc, t);
        }
        acc
    }
}

/// `τ` at a closed point computed as `d − log_{p^m} |L|`, where `L` is the
/// set of `v ∈ F_{p^m}^d` with `C + v ⊆ C` for the `F_{p^m}`-points `C` of the
/// tangent cone of the saturated algebra.
pub fn tau_oracle(g: &ReesAlg, x: &PointSpec, m: u32) -> Result<usize, ReesError> {
    let p = g.field().characteristic();
    if p == 0 {
        return Err(ReesError::Oracle("needs positive characteristic".into()));
    }
    x.validate(g.nvars())?;
    if !x.is_closed() {
        return Err(ReesError::NotClosed);
    }
    if !g.sing_member(x)? {
        return Err(ReesError::NotInSing);
    }
    let gf = GaloisField::new(p, m)?;
    let d = g.nvars();
    let npts = gf.size.checked_pow(d as u32).filter(|&n| n <= MAX_ORACLE_POINTS).ok_or_else(|| {
        ReesError::Oracle(format!("{}^{} points exceed the enumeration limit", gf.size, d))
    })?;
    let all: Vec<usize> = (0..d).collect();
    let sat = diff_saturate(g, None);
    let forms: Vec<MPoly> = sat
        .gens()
        .iter()
        .filter_map(|(f, n)| {
            let local = x.localize(f);
            (local.min_degree_in(&all).finite() == Some(n)).then(|| local.homogeneous_part(&all, *n))
        })
        .collect();
    let coords = |mut i: usize| -> Vec<usize> {
        let mut v = vec![0; d];
        for c in v.iter_mut() {
            *c = i % gf.size;
            i /= gf.size;
        }
        v
    };
    let index = |v: &[usize]| v.iter().rev().fold(0, |acc, &c| acc * gf.size + c);
    let in_cone: Vec<bool> =
        (0..npts).map(|i| forms.iter().all(|h| gf.eval(h, &coords(i)) == 0)).collect();
    let cone: Vec<Vec<usize>> = (0..npts).filter(|&i| in_cone[i]).map(coords).collect();
    let mut l = 0usize;
    for vi in 0..npts {
        let v = coords(vi);
        let keeps = cone.iter().all(|c| {
            let s: Vec<usize> = c.iter().zip(&v).map(|(a, b)| gf.add(*a, *b)).collect();
            in_cone[index(&s)]
        });
        if keeps {
            l += 1;
        }
    }
    let mut k = 0;
    let mut size = 1;
    while size < l {
        size *= gf.size;
        k += 1;
    }
    if size != l {
        return Err(ReesError::Oracle(format!("translation group of order {l} is not F_{}-linear", gf.size)));
    }
    Ok(d - k)
}
