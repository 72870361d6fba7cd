//! Randomized invariants shared by the property tests and the acceptance
//! report. Each suite returns the first counterexample as text.

use std::collections::BTreeSet;

use hord_core::blowup::{blow_down_poly, blow_up_poly, Chart};
use hord_core::field::{binomial, Field};
use hord_core::monomial::{combinatorial_resolve, MonomialAlg};
use hord_core::poly::{hasse_derivative, hasse_multi, order_at, MPoly, Monomial, PointSpec};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 512;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(0u64), Just(2), Just(3), Just(5), Just(7)].prop_map(|p| Field::new(p).expect("0 or prime"))
}

type Terms = Vec<(Vec<u32>, i64)>;

fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -4i64..=4), 0..=max_terms)
}

fn poly(field: Field, nvars: usize, t: &Terms) -> MPoly {
    MPoly::from_terms(field, nvars, t.iter().map(|(e, c)| (e.clone(), field.from_i64(*c))))
}

fn point(field: Field, c: &[i64]) -> Vec<BigRational> {
    c.iter().map(|&v| field.from_i64(v)).collect()
}

fn run<S: Strategy>(cases: u32, s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&s, test).map_err(|e| e.to_string())
}

/// `f(x + c) = Σ_α (Δ^α f)(c) x^α`.
pub fn taylor(cases: u32) -> Result<(), String> {
    let s = (field_strategy(), terms(2, 4, 6), prop::collection::vec(-3i64..=3, 2));
    run(cases, s, |(field, t, c)| {
        let f = poly(field, 2, &t);
        let c = point(field, &c);
        let shifted = f.translate(&c);
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                let expected = hasse_multi(&f, &[a, b]).evaluate(&c);
                let got = shifted.coefficient(&Monomial::new(vec![a, b]));
                prop_assert_eq!(&got, &expected, "alpha = ({}, {})", a, b);
            }
        }
        Ok(())
    })
}

/// `Δ^a Δ^b = C(a+b, a) Δ^{a+b}` in one variable.
pub fn hasse_composition(cases: u32) -> Result<(), String> {
    let s = (field_strategy(), terms(2, 8, 6), 0u32..5, 0u32..5, 0usize..2);
    run(cases, s, |(field, t, a, b, v)| {
        let f = poly(field, 2, &t);
        let lhs = hasse_derivative(&hasse_derivative(&f, v, b), v, a);
        let c = field.from_int(&binomial(u64::from(a + b), u64::from(a)));
        let rhs = hasse_derivative(&f, v, a + b).scale(&c);
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

/// `ν_x(fg) = ν_x(f) + ν_x(g)` at closed points.
pub fn order_multiplicativity(cases: u32) -> Result<(), String> {
    let s = (field_strategy(), terms(3, 3, 5), terms(3, 3, 5), prop::collection::vec(-2i64..=2, 3));
    run(cases, s, |(field, t1, t2, c)| {
        let f = poly(field, 3, &t1);
        let g = poly(field, 3, &t2);
        let x = PointSpec::Closed(point(field, &c));
        let lhs = order_at(&(&f * &g), &x).unwrap();
        let rhs = order_at(&f, &x).unwrap().add(&order_at(&g, &x).unwrap());
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

/// Blow down after blow up is the identity, whatever the order along the
/// center; one more than that order is refused.
pub fn blowup_round_trip(cases: u32) -> Result<(), String> {
    let s = (field_strategy(), terms(3, 4, 6), prop::collection::btree_set(0usize..3, 1..=3), any::<prop::sample::Index>());
    run(cases, s, |(field, t, center, wi)| {
        let f = poly(field, 3, &t);
        prop_assume!(!f.is_zero());
        let center: Vec<usize> = center.into_iter().collect();
        let w = center[wi.index(center.len())];
        let n = f.terms().map(|(m, _)| m.partial_degree(&center)).min().unwrap();
        let up = blow_up_poly(&f, n, &center, w).unwrap();
        prop_assert_eq!(blow_down_poly(&up, n, &center, w).unwrap(), f.clone());
        prop_assert!(blow_up_poly(&f, n + 1, &center, w).is_err());
        Ok(())
    })
}

fn chart_with(r: usize) -> Chart {
    let mut c = Chart::new((0..r).map(|i| format!("x{i}")).collect());
    for v in 0..r {
        c.register_blowup(&[v], v);
    }
    c
}

/// The game stops, and afterwards every face of the complex has all its
/// subsets below `s` (checked on the full subset lattice).
pub fn game_termination(cases: u32) -> Result<(), String> {
    let s = (1u64..=6, prop::collection::vec(0u64..=9, 1..=4));
    run(cases, s, |(s, h)| {
        let chart = chart_with(h.len());
        let m = MonomialAlg {
            s,
            exponents: h.iter().enumerate().map(|(i, &e)| (format!("H{}", i + 1), e)).collect(),
        };
        let r = combinatorial_resolve(&m, &chart).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let mut labels: BTreeSet<&String> = BTreeSet::new();
        for face in &r.faces {
            let items: Vec<&String> = face.iter().collect();
            labels.extend(items.iter().copied());
            for mask in 1u32..(1 << items.len()) {
                let sum: u64 = (0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| r.exponents[items[i]]).sum();
                prop_assert!(sum < s, "face {:?} subset {:b} has sum {} ≥ {}", face, mask, sum, s);
            }
        }
        // Each step uses a stratum with excess ≥ 0 and records Σ − s.
        for c in &r.centers {
            prop_assert!(c.labels.iter().map(|l| r.exponents[l]).sum::<u64>() == c.new_exponent + s);
        }
        Ok(())
    })
}

pub fn all(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("Taylor identity", taylor(cases)),
        ("Hasse composition", hasse_composition(cases)),
        ("order multiplicativity", order_multiplicativity(cases)),
        ("blowup round trip", blowup_round_trip(cases)),
        ("game termination and excess < s", game_termination(cases)),
    ]
}
