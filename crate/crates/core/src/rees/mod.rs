//! Pairs and Rees algebras given by weighted generators `f W^n`.

mod saturate;
mod tau;
mod tau_oracle;

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::{Field, Rational};
use crate::poly::{order_at, MPoly, PointSpec, PolyError};
use crate::value::{ext_min, ExtRational, Extended};

pub use saturate::diff_saturate;
pub use tau::{tau_at, TangentData};
pub use tau_oracle::{tau_oracle, GaloisField, MAX_ORACLE_POINTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReesError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },
    #[error("generator {index} has weight 0")]
    ZeroWeight { index: usize },
    #[error("a pair needs at least one generator")]
    EmptyPair,
    #[error("point is not in the singular locus")]
    NotInSing,
    #[error("tau is only computed at closed points")]
    NotClosed,
    #[error("oracle: {0}")]
    Oracle(String),
}

/// `(J, b)`: an ideal with an assigned weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    pub gens: Vec<MPoly>,
    pub b: u32,
}

impl Pair {
    pub fn new(gens: Vec<MPoly>, b: u32) -> Result<Self, ReesError> {
        if gens.is_empty() {
            return Err(ReesError::EmptyPair);
        }
        if b == 0 {
            return Err(ReesError::ZeroWeight { index: 0 });
        }
        if let Some(index) = gens.iter().position(MPoly::is_zero) {
            return Err(ReesError::ZeroGenerator { index });
        }
        Ok(Pair { gens, b })
    }
}

/// `G_{(J,b)} = O[J W^b]`.
pub fn pair_to_rees(pair: &Pair) -> ReesAlg {
    let f = &pair.gens[0];
    ReesAlg::new(f.field(), f.nvars(), pair.gens.iter().map(|g| (g.clone(), pair.b)).collect())
        .expect("pair generators are valid")
}

/// Finitely generated Rees algebra `O[f_1 W^{n_1}, …, f_s W^{n_s}]`.
///
/// The empty generator list is the zero algebra (`ord = ∞` everywhere); it
/// arises as the elimination algebra of a hypersurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesAlg {
    field: Field,
    nvars: usize,
    gens: Vec<(MPoly, u32)>,
}

impl ReesAlg {
    pub fn new(field: Field, nvars: usize, gens: Vec<(MPoly, u32)>) -> Result<Self, ReesError> {
        for (index, (f, n)) in gens.iter().enumerate() {
            if f.is_zero() {
                return Err(ReesError::ZeroGenerator { index });
            }
            if *n == 0 {
                return Err(ReesError::ZeroWeight { index });
            }
            if f.field() != field {
                return Err(PolyError::FieldMismatch(f.field(), field).into());
            }
            if f.nvars() != nvars {
                return Err(PolyError::ArityMismatch { poly: f.nvars(), point: nvars }.into());
            }
        }
        Ok(ReesAlg { field, nvars, gens })
    }

    pub fn zero(field: Field, nvars: usize) -> Self {
        ReesAlg { field, nvars, gens: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[(MPoly, u32)] {
        &self.gens
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.gens.is_empty()
    }

    /// Some generator is a nonzero constant in positive degree: Sing is empty.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|(f, _)| f.is_unit_constant())
    }

    /// Add generators, skipping zero polynomials.
    pub fn extend(&mut self, more: impl IntoIterator<Item = (MPoly, u32)>) {
        for (f, n) in more {
            if !f.is_zero() && n > 0 {
                self.gens.push((f, n));
            }
        }
    }

    pub fn union(&self, other: &ReesAlg) -> ReesAlg {
        let mut out = self.clone();
        out.extend(other.gens.iter().cloned());
        out
    }

    /// Apply `f` to every generator polynomial (zero images are dropped).
    pub fn map_polys(&self, nvars: usize, mut f: impl FnMut(&MPoly, u32) -> MPoly) -> ReesAlg {
        let mut out = ReesAlg::zero(self.field, nvars);
        out.extend(self.gens.iter().map(|(g, n)| (f(g, *n), *n)));
        out
    }

    /// `ν_y(f) ≥ n` for every generator.
    pub fn sing_member(&self, y: &PointSpec) -> Result<bool, PolyError> {
        for (f, n) in &self.gens {
            if order_at(f, y)? < Extended::Finite(*n) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `min ν_y(f)/n` over generators; `∞` for the zero algebra.
    pub fn ord_at(&self, y: &PointSpec) -> Result<ExtRational, PolyError> {
        let mut vals = Vec::with_capacity(self.gens.len());
        for (f, n) in &self.gens {
            vals.push(
                order_at(f, y)?.map(|v| Rational::new(BigInt::from(v), BigInt::from(*n))),
            );
        }
        Ok(ext_min(vals))
    }

    pub fn to_lines(&self, names: &[String]) -> Vec<String> {
        self.gens.iter().map(|(f, n)| format!("{} W^{}", f.to_text(names), n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;
    use crate::poly::Ring;

    fn ring(ch: u64) -> Ring {
        Ring::new(Field::new(ch).unwrap(), vec!["z".into(), "x".into()]).unwrap()
    }

    fn alg(r: &Ring, gens: &[(&str, u32)]) -> ReesAlg {
        ReesAlg::new(r.field(), r.nvars(), gens.iter().map(|(t, n)| (r.parse(t).unwrap(), *n)).collect())
            .unwrap()
    }

    #[test]
    fn pair_conversion() {
        let r = ring(0);
        let p = Pair::new(vec![r.parse("z").unwrap(), r.parse("x").unwrap()], 1).unwrap();
        let g = pair_to_rees(&p);
        assert_eq!(g.gens().len(), 2);
        assert!(g.gens().iter().all(|(_, n)| *n == 1));
        assert!(Pair::new(vec![], 1).is_err());
        assert!(Pair::new(vec![r.parse("0").unwrap()], 1).is_err());
    }

    #[test]
    fn singular_locus_membership() {
        let r = ring(0);
        let g = alg(&r, &[("z^2 + x^3", 2)]);
        assert!(g.sing_member(&PointSpec::origin(2)).unwrap());
        assert!(g.sing_member(&PointSpec::generic([0, 1])).unwrap());
        let h = alg(&r, &[("z^2 + (x+1)^3", 2)]);
        assert!(!h.sing_member(&PointSpec::origin(2)).unwrap());
    }

    #[test]
    fn order_function() {
        let r = ring(0);
        let o = PointSpec::origin(2);
        assert_eq!(alg(&r, &[("z^2 + x^3", 2)]).ord_at(&o).unwrap(), Extended::Finite(rational(1, 1)));
        assert_eq!(alg(&r, &[("x^3", 2)]).ord_at(&o).unwrap(), Extended::Finite(rational(3, 2)));
        assert_eq!(alg(&r, &[("x^3", 2), ("x", 1)]).ord_at(&o).unwrap(), Extended::Finite(rational(1, 1)));
        assert_eq!(ReesAlg::zero(r.field(), 2).ord_at(&o).unwrap(), Extended::Infinite);
        let u = alg(&r, &[("1", 2)]);
        assert!(u.is_unit());
        assert_eq!(u.ord_at(&o).unwrap(), Extended::Finite(rational(0, 1)));
    }
}
