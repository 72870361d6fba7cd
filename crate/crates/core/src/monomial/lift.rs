use super::{GameResult, MonomialError};
use crate::blowup::{transform_rees, Tower};
use crate::field::{Field, Rational};
use crate::poly::PointSpec;
use crate::projection::{membership_criterion, normalize};
use crate::rees::ReesAlg;
use crate::value::{ExtRational, Extended};

/// Closed test points per chart are enumerated only up to this many.
const MAX_GRID_POINTS: usize = 4096;

/// A game center as executed in one chart of the lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedStep {
    /// Chart variables chosen so far, outermost first.
    pub path: Vec<String>,
    pub labels: Vec<String>,
    /// Upstairs center (sections plus the divisor variables); empty when the
    /// stratum misses this chart.
    pub center: Vec<usize>,
    pub hord: Option<ExtRational>,
    /// `Σ_T h_i / s` predicted by the game.
    pub expected: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafKind {
    /// A chart of a downstairs variable: the presentation is carried along.
    Downstairs,
    /// A chart of a section variable, where only `G` is transformed.
    Section,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf {
    pub path: Vec<String>,
    pub kind: LeafKind,
    pub points_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    /// The branch that always takes the first chart.
    pub tower: Tower,
    pub steps: Vec<LiftedStep>,
    pub leaves: Vec<Leaf>,
}

// Generic points of all coordinate strata, plus a grid of closed points.
fn test_points(field: Field, nvars: usize) -> Vec<PointSpec> {
    let mut pts: Vec<PointSpec> =
        (1u64..(1u64 << nvars)).map(|mask| PointSpec::generic((0..nvars).filter(|i| mask >> i & 1 == 1))).collect();
    let values = field.elements().unwrap_or_else(|| vec![field.from_i64(-1), field.zero(), field.one()]);
    let total = values.len().checked_pow(nvars as u32).filter(|&t| t <= MAX_GRID_POINTS);
    if let Some(total) = total {
        for mut k in 0..total {
            let mut c = Vec::with_capacity(nvars);
            for _ in 0..nvars {
                c.push(values[k % values.len()].clone());
                k /= values.len();
            }
            pts.push(PointSpec::Closed(c));
        }
    }
    pts
}

fn sing_free(g: &ReesAlg) -> Result<usize, Option<PointSpec>> {
    let pts = test_points(g.field(), g.nvars());
    for x in &pts {
        if g.sing_member(x).unwrap_or(true) {
            return Err(Some(x.clone()));
        }
    }
    Ok(pts.len())
}

struct Lifter<'a> {
    game: &'a GameResult,
    names: Vec<String>,
    steps: Vec<LiftedStep>,
    leaves: Vec<Leaf>,
    main: Option<Tower>,
}

impl Lifter<'_> {
    fn path_text(path: &[String]) -> String {
        path.join(", ")
    }

    fn run(&mut self, mut tower: Tower, next: usize, path: Vec<String>) -> Result<(), MonomialError> {
        let Some(c) = self.game.centers.get(next) else {
            return self.leaf(tower, path);
        };
        let expected = Rational::new(
            c.labels.iter().map(|l| self.game.exponents[l]).sum::<u64>().into(),
            self.game.s.into(),
        );
        let vars: Option<Vec<usize>> = c.labels.iter().map(|l| tower.chart().var_of(l)).collect();
        let Some(vars) = vars else {
            let label = tower.register_absent();
            debug_assert_eq!(label, c.new_label);
            self.steps.push(LiftedStep { path: path.clone(), labels: c.labels.clone(), center: Vec::new(), hord: None, expected });
            return self.run(tower, next + 1, path);
        };
        let p = tower.presentation().ok_or(MonomialError::NoPresentation)?;
        let sections = p.sections().to_vec();
        let mut center: Vec<usize> = sections.iter().copied().chain(vars.iter().copied()).collect();
        center.sort_unstable();
        let impermissible = |reason: String| MonomialError::Impermissible {
            path: Self::path_text(&path),
            center: c.labels.join("∩"),
            reason,
        };

        // Section charts: the normalized G alone.
        let mut normalized = tower.clone();
        normalized.renormalize(&PointSpec::generic(center.iter().copied()))?;
        for &z in &sections {
            let g = transform_rees(normalized.g(), &center, z)?;
            let mut p2 = path.clone();
            p2.push(self.names[z].clone());
            match sing_free(&g) {
                Ok(n) => self.leaves.push(Leaf { path: p2, kind: LeafKind::Section, points_checked: n }),
                Err(_) => return Err(MonomialError::Unresolved(Self::path_text(&p2))),
            }
        }

        let mut recorded = false;
        for &w in &vars {
            let mut t = tower.clone();
            let step = t.blowup(&center, w).map_err(|e| impermissible(e.to_string()))?;
            debug_assert_eq!(step.label, c.new_label);
            let h = step.before.hord.clone();
            if h.as_ref().is_some_and(|h| h < &Extended::Finite(Rational::from_integer(1.into()))) {
                return Err(impermissible("hord below 1 at the center".into()));
            }
            if !recorded {
                self.steps.push(LiftedStep { path: path.clone(), labels: c.labels.clone(), center: center.clone(), hord: h, expected: expected.clone() });
                recorded = true;
            }
            let mut p2 = path.clone();
            p2.push(self.names[w].clone());
            self.run(t, next + 1, p2)?;
        }
        Ok(())
    }

    fn leaf(&mut self, tower: Tower, path: Vec<String>) -> Result<(), MonomialError> {
        let unresolved = || MonomialError::Unresolved(Self::path_text(&path));
        let n = sing_free(tower.g()).map_err(|_| unresolved())?;
        if let Some(p) = tower.presentation() {
            let down = p.downstairs_vars();
            for mask in 1u64..(1u64 << down.len()) {
                let y = PointSpec::generic((0..down.len()).filter(|i| mask >> i & 1 == 1).map(|i| down[i]));
                let np = normalize(p, &y, tower.cap())?.presentation;
                if membership_criterion(&np, &y)? {
                    return Err(unresolved());
                }
            }
        }
        self.leaves.push(Leaf { path, kind: LeafKind::Downstairs, points_checked: n });
        if self.main.is_none() {
            self.main = Some(tower);
        }
        Ok(())
    }
}

/// Lift the game's centers: each stratum `∩_T H_i` becomes the center
/// `V(z_1, …, z_e, x_T)` and every chart of a divisor variable is followed.
/// Charts of a section variable only transform `G`, which must already be
/// resolved there. Every leaf must have empty `Sing(G)` on its test points.
pub fn lift_resolution(tower: &Tower, game: &GameResult) -> Result<Lift, MonomialError> {
    let mut l = Lifter { game, names: tower.chart().names().to_vec(), steps: Vec::new(), leaves: Vec::new(), main: None };
    l.run(tower.clone(), 0, Vec::new())?;
    Ok(Lift { tower: l.main.expect("at least one leaf"), steps: l.steps, leaves: l.leaves })
}
