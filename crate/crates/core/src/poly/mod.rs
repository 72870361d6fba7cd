//! Sparse multivariate polynomials over an exact field.
//!
//! A polynomial lives in a chart ring `k[x_0, …, x_{d-1}]`; variables are
//! addressed by index and names are attached only for parsing and printing
//! (see [`Ring`]). Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose
//! ordering is graded-lexicographic, so iteration and serialization are
//! canonical.

mod hasse;
mod monomial;
mod parse;
mod point;
mod weighted;

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{raw_add, raw_mul, Coeff, Field};
use crate::value::{Extended, Order};

pub use hasse::{hasse_derivative, hasse_multi};
pub use monomial::Monomial;
pub use parse::{is_identifier, parse_poly, ParseError, Ring, MAX_EXPONENT, MAX_TERMS};
pub use point::{initial_form, order_at, PointSpec};
pub use weighted::{is_nth_power, monic_coefficients, weighted_initial_form, WeightedForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: polynomial has {poly} variables, point has {point}")]
    ArityMismatch { poly: usize, point: usize },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("initial forms are only taken at closed points")]
    GenericPointUnsupported,
    #[error("polynomial is not monic in variable {var}")]
    NotMonic { var: usize },
    #[error("coefficient of the section variable {var} involves it")]
    CoefficientNotSectionFree { var: usize },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
}

/// Sparse polynomial with coefficients in `field` and `nvars` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl MPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        MPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: Coeff) -> Self {
        let mut p = MPoly::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        MPoly::constant(field, nvars, Coeff::one())
    }

    pub fn var(field: Field, nvars: usize, index: usize) -> Self {
        MPoly::monomial(field, Monomial::var(nvars, index, 1), Coeff::one())
    }

    pub fn monomial(field: Field, m: Monomial, c: Coeff) -> Self {
        let nvars = m.nvars();
        let mut p = MPoly::zero(field, nvars);
        p.add_term(m, c);
        p
    }

    /// Build from raw `(exponents, coefficient)` pairs; coefficients are reduced
    /// into the field and like terms combined.
    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Coeff)>,
    ) -> Self {
        let mut p = MPoly::zero(field, nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector arity");
            let c = field.reduce(&c).expect("coefficient must reduce into the field");
            p.add_term(Monomial::new(exps), c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Order {
        match self.terms.keys().map(Monomial::degree).max() {
            Some(d) => Extended::Finite(d),
            None => Extended::Infinite,
        }
    }

    /// Degree in one variable (0 for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Minimum over terms of the summed exponents of `vars`; `∞` for zero.
    pub fn min_degree_in(&self, vars: &[usize]) -> Order {
        match self.terms.keys().map(|m| m.partial_degree(vars)).min() {
            Some(d) => Extended::Finite(d),
            None => Extended::Infinite,
        }
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.involves(v)).collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        let field = self.field;
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = field.add(existing, &c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &MPoly) {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.nvars, other.nvars, "arity mismatch");
    }

    pub fn scale(&self, c: &Coeff) -> MPoly {
        let mut out = MPoly::zero(self.field, self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    /// Divide by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Apply `f` to every exponent vector; colliding images are summed.
    pub fn map_monomials(&self, nvars: usize, mut f: impl FnMut(&Monomial) -> Monomial) -> MPoly {
        let mut out = MPoly::zero(self.field, nvars);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Substitute `var ← replacement`, grouping by powers of `var`.
    pub fn substitute(&self, var: usize, replacement: &MPoly) -> MPoly {
        self.check_compatible(replacement);
        let mut by_power: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            by_power
                .entry(e)
                .or_insert_with(|| MPoly::zero(self.field, self.nvars))
                .add_term(m.with_exp(var, 0), c.clone());
        }
        // Horner from the top power down.
        let mut acc = MPoly::zero(self.field, self.nvars);
        let mut current = match by_power.keys().next_back() {
            Some(&e) => e,
            None => return acc,
        };
        for (&e, coeff) in by_power.iter().rev() {
            while current > e {
                acc = &acc * replacement;
                current -= 1;
            }
            acc = &acc + coeff;
        }
        while current > 0 {
            acc = &acc * replacement;
            current -= 1;
        }
        acc
    }

    /// `f(x + shift)`, one shift per variable.
    pub fn translate(&self, shift: &[Coeff]) -> MPoly {
        assert_eq!(shift.len(), self.nvars, "translation arity");
        let mut out = self.clone();
        for (v, c) in shift.iter().enumerate() {
            if c.is_zero() || !out.involves(v) {
                continue;
            }
            let repl =
                &MPoly::var(self.field, self.nvars, v) + &MPoly::constant(self.field, self.nvars, c.clone());
            out = out.substitute(v, &repl);
        }
        out
    }

    /// Part whose exponents in `vars` sum to `degree`.
    pub fn homogeneous_part(&self, vars: &[usize], degree: u32) -> MPoly {
        let mut out = MPoly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            if m.partial_degree(vars) == degree {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// `Σ_k coeff_k · var^k`, returned as the map `k ↦ coeff_k` (coefficients
    /// are free of `var`).
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(var))
                .or_insert_with(|| MPoly::zero(self.field, self.nvars))
                .add_term(m.with_exp(var, 0), c.clone());
        }
        out
    }

    /// Exact division by `var^k`; `None` when some term has a smaller power.
    pub fn divide_by_var_power(&self, var: usize, k: u32) -> Option<MPoly> {
        let mut out = MPoly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e < k {
                return None;
            }
            out.add_term(m.with_exp(var, e - k), c.clone());
        }
        Some(out)
    }

    /// Evaluate at a point of the base field.
    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        assert_eq!(point.len(), self.nvars, "evaluation arity");
        let f = self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = f.mul(&t, &point[v]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Append `k` fresh variables at the end of the chart.
    pub fn extend_vars(&self, k: usize) -> MPoly {
        self.map_monomials(self.nvars + k, |m| m.extended(k))
    }

    /// Drop variables the polynomial does not involve, given an index map.
    pub fn with_nvars_mapped(&self, nvars: usize, map: &[usize]) -> MPoly {
        self.map_monomials(nvars, |m| {
            let mut e = vec![0; nvars];
            for (old, &new) in map.iter().enumerate() {
                e[new] += m.exp(old);
            }
            Monomial::new(e)
        })
    }

    /// Canonical text using the given variable names: terms in descending
    /// graded-lex order, `*` between factors, `^` for powers.
    pub fn to_text(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars, "names arity");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Coeff::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m.to_text(names);
            let coeff_text = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => out.push_str(&coeff_text),
                (false, true) => out.push_str(&mono),
                (false, false) => {
                    out.push_str(&coeff_text);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    /// Text with default names `x0, x1, …`.
    pub fn to_default_text(&self) -> String {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        self.to_text(&names)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.field, self.to_default_text())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&self.field.neg(&Coeff::one()))
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_compatible(rhs);
        // Accumulate unreduced products, reduce each coefficient once.
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let prod = raw_mul(c1, c2);
                match acc.entry(m1.mul(m2)) {
                    Entry::Occupied(mut e) => {
                        let sum = raw_add(e.get(), &prod);
                        *e.get_mut() = sum;
                    }
                    Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        let mut out = MPoly::zero(self.field, self.nvars);
        for (m, c) in acc {
            let c = self.field.reduce_trusted(c);
            if !c.is_zero() {
                out.terms.insert(m, c);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
