use super::{MPoly, Monomial};

/// `Δ^r_var f`: the coefficient of `T^r` in `f(…, var + T, …)`, with
/// `Δ^r x^m = C(m, r) x^{m−r}` and the binomial reduced into the field.
pub fn hasse_derivative(f: &MPoly, var: usize, r: u32) -> MPoly {
    let field = f.field();
    let mut out = MPoly::zero(field, f.nvars());
    for (m, c) in f.terms() {
        let e = m.exp(var);
        if e < r {
            continue;
        }
        let b = field.binomial(e as u64, r as u64);
        out.add_term(m.with_exp(var, e - r), field.mul(c, &b));
    }
    out
}

/// `Δ^α f = Δ^{α_0}_{x_0} ∘ … ∘ Δ^{α_{d−1}}_{x_{d−1}} f` (the operators commute).
pub fn hasse_multi(f: &MPoly, alpha: &[u32]) -> MPoly {
    assert_eq!(alpha.len(), f.nvars(), "multi-index arity");
    let field = f.field();
    let mut out = MPoly::zero(field, f.nvars());
    for (m, c) in f.terms() {
        if !Monomial::new(alpha.to_vec()).divides(m) {
            continue;
        }
        let mut coeff = c.clone();
        for (v, &a) in alpha.iter().enumerate() {
            coeff = field.mul(&coeff, &field.binomial(m.exp(v) as u64, a as u64));
        }
        out.add_term(Monomial::new(alpha.to_vec()).quotient_of(m), coeff);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::Ring;

    #[test]
    fn examples() {
        let r = Ring::new(Field::RATIONALS, vec!["x".into()]).unwrap();
        assert_eq!(hasse_derivative(&r.parse("x^5").unwrap(), 0, 2), r.parse("10*x^3").unwrap());

        for p in [2u64, 3, 5] {
            let r = Ring::new(Field::prime(p), vec!["z".into(), "a".into()]).unwrap();
            let f = r.parse(&format!("z^{p} + a*z")).unwrap();
            assert_eq!(hasse_derivative(&f, 0, 1), r.parse("a").unwrap());
            // Δ^p z^p = 1 even though the ordinary p-th derivative vanishes
            assert_eq!(hasse_derivative(&f, 0, p as u32), r.parse("1").unwrap());
        }
    }

    #[test]
    fn multi_index_matches_composition() {
        let r = Ring::new(Field::prime(3), vec!["x".into(), "y".into()]).unwrap();
        let f = r.parse("x^4*y^3 + 2*x^2*y + y^5").unwrap();
        let composed = hasse_derivative(&hasse_derivative(&f, 0, 2), 1, 1);
        assert_eq!(hasse_multi(&f, &[2, 1]), composed);
    }
}
