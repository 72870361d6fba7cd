//! Executes a scene's script against a blowup tower and collects one trace
//! record per command.

use serde_json::{json, Map, Value};

use crate::blowup::{stage_ab_experiment, Chart, Tower};
use crate::field::{rational_string, Rational};
use crate::monomial::{
    combinatorial_resolve, is_strong_monomial, lift_resolution, track_monomial, LeafKind, MonomialAlg,
    MonomialError,
};
use crate::poly::{MPoly, PointSpec, Ring};
use crate::projection::{is_normal, slope_presentation, Presentation};
use crate::rees::{tau_at, tau_oracle, ReesAlg};
use crate::scene::{Command, Scene};
use crate::value::ExtRational;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Normalization cap per polynomial (default `64·n`).
    pub max_normalize_iters: Option<usize>,
    /// Degree `m` of `F_{p^m}` for the brute-force `τ` check in `analyze`.
    pub tau_oracle_extension: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub trace: Value,
    pub errors: usize,
}

struct Ctx<'a> {
    scene: &'a Scene,
    opts: &'a RunOptions,
    tower: Tower,
}

fn q(v: &Rational) -> Value {
    Value::String(rational_string(v))
}

fn ext(v: &ExtRational) -> Value {
    Value::String(v.to_canonical())
}

fn point_text(ring: &Ring, x: &PointSpec) -> String {
    match x {
        PointSpec::Closed(c) => format!("({})", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")),
        PointSpec::Generic(s) => {
            format!("generic {{{}}}", s.iter().map(|&v| ring.names()[v].as_str()).collect::<Vec<_>>().join(", "))
        }
    }
}

fn polys(ring: &Ring, ps: &[MPoly]) -> Value {
    ps.iter().map(|f| Value::String(ring.format(f))).collect()
}

fn algebra(ring: &Ring, g: &ReesAlg) -> Value {
    g.to_lines(ring.names()).into_iter().map(Value::String).collect()
}

fn presentation(ring: &Ring, p: Option<&Presentation>) -> Value {
    match p {
        None => Value::Null,
        Some(p) => json!({
            "sections": p.sections().iter().map(|&z| ring.names()[z].clone()).collect::<Vec<_>>(),
            "polys": polys(ring, p.polys()),
            "elim": algebra(ring, p.elim()),
        }),
    }
}

fn monomial(m: &MonomialAlg) -> Value {
    json!({
        "s": m.s,
        "exponents": m.exponents.iter().map(|(l, h)| (l.clone(), json!(h))).collect::<Map<_, _>>(),
    })
}

fn divisors(chart: &Chart) -> Value {
    chart
        .divisors()
        .iter()
        .map(|d| json!({"label": d.label, "var": d.var.map(|v| chart.names()[v].clone())}))
        .collect()
}

impl Ctx<'_> {
    fn ring(&self) -> &Ring {
        &self.scene.ring
    }

    fn point(&self, name: &str) -> PointSpec {
        self.scene.point(name).expect("validated by the parser").clone()
    }

    fn named(&self, names: &[usize]) -> Vec<String> {
        names.iter().map(|&v| self.ring().names()[v].clone()).collect()
    }

    fn presentation(&self) -> Result<&Presentation, String> {
        self.tower.presentation().ok_or_else(|| "scene has no presentation".to_string())
    }

    fn run(&mut self, cmd: &Command, rec: &mut Map<String, Value>) -> Result<(), String> {
        match cmd {
            Command::Analyze(name) => self.analyze(name, rec),
            Command::Slope(name) => {
                let x = self.point(name);
                let p = self.presentation()?;
                rec.insert("point".into(), json!(name));
                rec.insert("slope".into(), ext(&slope_presentation(p, &x).map_err(|e| e.to_string())?));
                rec.insert("normal".into(), json!(is_normal(p, &x).map_err(|e| e.to_string())?));
                Ok(())
            }
            Command::Hord(name) => {
                let x = self.point(name);
                let h = self.tower.hord_at(&x).map_err(|e| e.to_string())?.ok_or("scene has no presentation")?;
                rec.insert("point".into(), json!(name));
                rec.insert("value".into(), ext(&h.value));
                rec.insert("slopes".into(), h.slopes.iter().map(ext).collect());
                rec.insert("elim_ord".into(), ext(&h.elim_ord));
                rec.insert("p_formula".into(), h.p_formula.as_ref().map(ext).unwrap_or(Value::Null));
                rec.insert("iterations".into(), json!(h.normalized.iterations));
                rec.insert("shifts".into(), polys(self.ring(), &h.normalized.shifts));
                rec.insert("normalized".into(), polys(self.ring(), h.normalized.presentation.polys()));
                Ok(())
            }
            Command::Blowup { center, chart } => {
                let step = self.tower.blowup(center, *chart).map_err(|e| e.to_string())?.clone();
                let ring = self.ring();
                rec.insert("center".into(), json!(self.named(&step.center)));
                rec.insert("chart".into(), json!(ring.names()[step.chart_var]));
                rec.insert("label".into(), json!(step.label));
                rec.insert(
                    "before".into(),
                    json!({
                        "ord": ext(&step.before.ord),
                        "slope": step.before.slope.as_ref().map(ext),
                        "hord": step.before.hord.as_ref().map(ext),
                    }),
                );
                rec.insert("shifts".into(), polys(ring, &step.shifts));
                rec.insert("g".into(), algebra(ring, &step.g));
                rec.insert("presentation".into(), presentation(ring, step.presentation.as_ref()));
                rec.insert("divisors".into(), divisors(self.tower.chart()));
                Ok(())
            }
            Command::Experiment { n } => {
                let p = self.presentation()?;
                let r = stage_ab_experiment(self.tower.chart(), p, *n).map_err(|e| e.to_string())?;
                rec.insert("N".into(), json!(r.n));
                rec.insert("q".into(), q(&r.q));
                rec.insert("stage_b_count".into(), json!(r.stage_b_count));
                rec.insert("ell".into(), json!(r.ell));
                rec.insert("formula".into(), json!(r.formula));
                rec.insert("blowups".into(), json!(r.steps.len()));
                Ok(())
            }
            Command::MonomialTrack => {
                let m = track_monomial(&self.tower).map_err(|e| e.to_string())?;
                rec.insert("monomial".into(), monomial(&m));
                Ok(())
            }
            Command::StrongCheck(names) => {
                let m = track_monomial(&self.tower).map_err(|e| e.to_string())?;
                let extra: Vec<(String, PointSpec)> = names.iter().map(|n| (n.clone(), self.point(n))).collect();
                let r = is_strong_monomial(&self.tower, &m, &extra).map_err(|e| e.to_string())?;
                rec.insert("monomial".into(), monomial(&m));
                rec.insert("strong".into(), json!(r.strong));
                rec.insert("divides".into(), json!(r.divides));
                rec.insert("elim_monomial".into(), monomial(&r.elim_monomial));
                rec.insert("witness".into(), r.witness.as_ref().map(|w| json!(w.name)).unwrap_or(Value::Null));
                let checks: Vec<Value> = r
                    .checks
                    .iter()
                    .map(|c| {
                        json!({
                            "point": c.name,
                            "locus": point_text(self.ring(), &c.point),
                            "in_sing": c.in_sing,
                            "hord": ext(&c.hord),
                            "ord_monomial": q(&c.ord_monomial),
                            "equal": c.equal,
                        })
                    })
                    .collect();
                rec.insert("checks".into(), Value::Array(checks));
                Ok(())
            }
            Command::Resolve => self.resolve(rec).map_err(|e| e.to_string()),
        }
    }

    fn analyze(&self, name: &str, rec: &mut Map<String, Value>) -> Result<(), String> {
        let x = self.point(name);
        let g = self.tower.g();
        let in_sing = g.sing_member(&x).map_err(|e| e.to_string())?;
        rec.insert("point".into(), json!(name));
        rec.insert("locus".into(), json!(point_text(self.ring(), &x)));
        rec.insert("ord".into(), ext(&g.ord_at(&x).map_err(|e| e.to_string())?));
        rec.insert("in_sing".into(), json!(in_sing));
        let mut tau = Value::Null;
        if in_sing && x.is_closed() {
            match tau_at(g, &x) {
                Ok(t) => {
                    tau = json!(t.tau);
                    rec.insert("linear_forms".into(), polys(self.ring(), &t.linear_forms));
                }
                Err(crate::rees::ReesError::NotInSing) => {}
                Err(e) => return Err(e.to_string()),
            }
            if let (Some(m), true) = (self.opts.tau_oracle_extension, !self.ring().field().is_rational()) {
                let v = match tau_oracle(g, &x, m) {
                    Ok(t) => json!(t),
                    Err(e) => json!({ "unavailable": e.to_string() }),
                };
                rec.insert("tau_oracle".into(), json!({ "extension": m, "tau": v }));
            }
        }
        rec.insert("tau".into(), tau);
        if let Some(p) = self.tower.presentation() {
            rec.insert("slope".into(), ext(&slope_presentation(p, &x).map_err(|e| e.to_string())?));
            let h = self.tower.hord_at(&x).map_err(|e| e.to_string())?.expect("presentation present");
            rec.insert("hord".into(), ext(&h.value));
        }
        Ok(())
    }

    fn resolve(&mut self, rec: &mut Map<String, Value>) -> Result<(), MonomialError> {
        let m = track_monomial(&self.tower)?;
        let strong = is_strong_monomial(&self.tower, &m, &[])?;
        if !strong.strong {
            let at = match &strong.witness {
                Some(w) => w.name.clone(),
                None => "the elimination algebra (not divisible by M)".into(),
            };
            return Err(MonomialError::NotStrong(at));
        }
        let game = combinatorial_resolve(&m, self.tower.chart())?;
        let lift = lift_resolution(&self.tower, &game)?;
        let ring = self.ring();
        rec.insert("monomial".into(), monomial(&m));
        rec.insert(
            "centers".into(),
            game.centers
                .iter()
                .map(|c| json!({"stratum": c.labels, "label": c.new_label, "exponent": c.new_exponent}))
                .collect(),
        );
        rec.insert(
            "lifted".into(),
            lift.steps
                .iter()
                .map(|s| {
                    json!({
                        "path": s.path,
                        "stratum": s.labels,
                        "center": self.named(&s.center),
                        "hord": s.hord.as_ref().map(ext),
                        "expected": q(&s.expected),
                    })
                })
                .collect(),
        );
        rec.insert(
            "leaves".into(),
            lift.leaves
                .iter()
                .map(|l| {
                    let kind = match l.kind {
                        LeafKind::Downstairs => "downstairs",
                        LeafKind::Section => "section",
                    };
                    json!({"path": l.path, "kind": kind, "points_checked": l.points_checked})
                })
                .collect(),
        );
        rec.insert("final_g".into(), algebra(ring, lift.tower.g()));
        rec.insert("resolved".into(), json!(true));
        Ok(())
    }
}

/// Run every script command in order (then `extra`, if given). A failing
/// command produces an `error` record and leaves the tower unchanged; later
/// commands still run.
pub fn run_scene(scene: &Scene, opts: &RunOptions, extra: Option<&Command>) -> RunOutcome {
    let ring = &scene.ring;
    let chart = Chart::new(ring.names().to_vec());
    let tower = Tower::new(chart, scene.algebra.clone(), scene.presentation.clone())
        .expect("scene arities are validated by the parser")
        .with_cap(opts.max_normalize_iters);
    let mut ctx = Ctx { scene, opts, tower };
    let mut records = Vec::new();
    let mut errors = 0;
    let cmds = scene.script.iter().map(|l| (Some(l.line), &l.command)).chain(extra.map(|c| (None, c)));
    for (index, (line, cmd)) in cmds.enumerate() {
        let mut rec = Map::new();
        rec.insert("index".into(), json!(index));
        rec.insert("command".into(), json!(cmd.name()));
        rec.insert("line".into(), line.map(Value::from).unwrap_or(Value::Null));
        if let Err(e) = ctx.run(cmd, &mut rec) {
            errors += 1;
            rec.insert("error".into(), json!(e));
        }
        records.push(Value::Object(rec));
    }
    let trace = json!({
        "scene": {
            "char": ring.field().characteristic(),
            "vars": ring.names(),
            "algebra": algebra(ring, &scene.algebra),
            "presentation": presentation(ring, scene.presentation.as_ref()),
            "points": scene.points.iter().map(|(n, x)| (n.clone(), json!(point_text(ring, x)))).collect::<Map<_, _>>(),
        },
        "records": records,
        "ok": errors == 0,
    });
    RunOutcome { trace, errors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::parse_scene;
    use crate::trace::canonical_text;

    const CUSP: &str = "[field]\nchar: 2\nvars: z, x\n[algebra]\ngen: z^2 + x^3 W^2\n[presentation]\nsections: z\npoly: z^2 + x^3\nelim: x^3 W^2\n";

    fn run(script: &str) -> RunOutcome {
        let s = parse_scene(&format!("{CUSP}[script]\n{script}")).unwrap();
        run_scene(&s, &RunOptions::default(), None)
    }

    #[test]
    fn hord_and_experiment_records() {
        let out = run("hord at origin\nexperiment q-from-presentation N=4\n");
        assert_eq!(out.errors, 0);
        assert_eq!(out.trace["records"][0]["value"], "3/2");
        assert_eq!(out.trace["records"][1]["ell"], 1);
        assert_eq!(out.trace["ok"], true);
    }

    #[test]
    fn empty_script_and_determinism() {
        let a = run("");
        assert_eq!(a.errors, 0);
        assert_eq!(a.trace["records"], json!([]));
        let b = run("blowup: center = {z, x}; chart = x\nmonomial-track\nstrong-check\nresolve\n");
        let c = run("blowup: center = {z, x}; chart = x\nmonomial-track\nstrong-check\nresolve\n");
        assert_eq!(canonical_text(&b.trace), canonical_text(&c.trace));
        assert_eq!(b.errors, 0, "{}", canonical_text(&b.trace));
        assert_eq!(b.trace["records"][1]["monomial"]["s"], 2);
    }

    #[test]
    fn failures_are_recorded() {
        let out = run("blowup: center = {x}; chart = x\nhord at origin\n");
        assert_eq!(out.errors, 1);
        assert!(out.trace["records"][0]["error"].as_str().unwrap().contains("not permissible"));
        assert_eq!(out.trace["records"][1]["value"], "3/2");
        assert_eq!(out.trace["ok"], false);
    }
}
