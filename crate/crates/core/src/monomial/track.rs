use super::{MonomialAlg, MonomialError};
use crate::blowup::Tower;
use crate::field::Rational;
use crate::value::Extended;

/// `h_{i+1}/s = Hord(ξ_{Y_i}) − 1` for every step of the tower, with the
/// value recorded when the step normalized at the center's generic point.
pub fn track_monomial(tower: &Tower) -> Result<MonomialAlg, MonomialError> {
    let one = Rational::from_integer(1.into());
    let mut values = Vec::with_capacity(tower.steps().len());
    for step in tower.steps() {
        let h = match &step.before.hord {
            Some(Extended::Finite(h)) => h.clone(),
            Some(Extended::Infinite) => return Err(MonomialError::InfiniteHord { step: step.index }),
            None => return Err(MonomialError::NoPresentation),
        };
        if h < one {
            return Err(MonomialError::HordBelowOne { step: step.index, hord: h });
        }
        values.push((step.label.clone(), h - &one));
    }
    Ok(MonomialAlg::from_values(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::Chart;
    use crate::field::Field;
    use crate::poly::Ring;
    use crate::projection::Presentation;
    use crate::rees::ReesAlg;

    fn tower(f: &str, elim: (&str, u32)) -> (Ring, Tower) {
        let r = Ring::new(Field::prime(2), vec!["z".into(), "x".into(), "y".into()]).unwrap();
        let f = r.parse(f).unwrap();
        let e = ReesAlg::new(r.field(), 3, vec![(r.parse(elim.0).unwrap(), elim.1)]).unwrap();
        let g = ReesAlg::new(r.field(), 3, vec![(f.clone(), 2)]).unwrap();
        let p = Presentation::single(0, f, e).unwrap();
        let t = Tower::new(Chart::new(r.names().to_vec()), g, Some(p)).unwrap();
        (r, t)
    }

    #[test]
    fn exponents_follow_hord_at_centers() {
        let (_, mut t) = tower("z^2 + x^3", ("x^3", 2));
        t.blowup(&[0, 1], 1).unwrap();
        let m = track_monomial(&t).unwrap();
        assert_eq!((m.s, m.h("H1")), (2, 1));

        // z^2 + x^3 y^4: hord 3/2 along x, then 2 along y
        let (_, mut t) = tower("z^2 + x^3*y^4", ("x^3*y^4", 2));
        t.blowup(&[0, 1], 1).unwrap();
        t.blowup(&[0, 2], 2).unwrap();
        let m = track_monomial(&t).unwrap();
        assert_eq!((m.s, m.h("H1"), m.h("H2")), (2, 1, 2));
    }

    #[test]
    fn hord_one_contributes_nothing() {
        let (_, mut t) = tower("z^2 + x^2*y", ("x^2*y", 2));
        t.blowup(&[0, 1], 1).unwrap();
        let m = track_monomial(&t).unwrap();
        assert_eq!(m.h("H1"), 0);
        assert!(m.is_zero());
    }
}
