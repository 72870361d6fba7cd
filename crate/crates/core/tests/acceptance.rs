//! Acceptance report: one PASS/FAIL line per criterion; exits non-zero on
//! any failure. All comparisons are exact.

mod common;

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use hord_core::blowup::{stage_ab_experiment, Chart, Tower};
use hord_core::field::{rational, rational_string, Field, Rational};
use hord_core::monomial::{ord_monomial, track_monomial};
use hord_core::poly::{MPoly, PointSpec, Ring};
use hord_core::projection::{hord, is_normal, membership_criterion, normalize, Presentation};
use hord_core::rees::{tau_at, tau_oracle, ReesAlg};
use hord_core::runner::{run_scene, RunOptions};
use hord_core::scene::parse_scene;
use hord_core::value::Extended;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

/// Wall-clock budget for the Stage A/B grid over `F_5`.
const STAGE_AB_BUDGET: Duration = Duration::from_secs(5);
const SECTION_CHANGES_PER_SCENE: usize = 100;
const MIN_SANDWICH_TOWERS: usize = 10;
const MIN_STRONG_SCENES: usize = 5;
const MIN_NON_STRONG_SCENES: usize = 2;
const SEED: u64 = 0x5eed_f40d;

struct Report {
    failed: usize,
}

impl Report {
    fn check(&mut self, name: &str, result: Result<String, String>) {
        match result {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(ch: u64, vars: &[&str]) -> Ring {
    Ring::new(Field::new(ch).unwrap(), vars.iter().map(|v| v.to_string()).collect()).unwrap()
}

fn rees(r: &Ring, gens: &[(&str, u32)]) -> ReesAlg {
    ReesAlg::new(r.field(), r.nvars(), gens.iter().map(|(f, n)| (r.parse(f).unwrap(), *n)).collect()).unwrap()
}

fn single(r: &Ring, f: &str, elim: Option<(&str, u32)>) -> Presentation {
    let f = r.parse(f).unwrap();
    match elim {
        Some(e) => Presentation::single(0, f, rees(r, &[e])).unwrap(),
        None => Presentation::with_coefficient_elim(vec![0], vec![f]).unwrap(),
    }
}

fn fin(q: Rational) -> Extended<Rational> {
    Extended::Finite(q)
}

fn stage_ab() -> Result<String, String> {
    let start = Instant::now();
    let mut detail = Vec::new();
    let grids: [(&str, &str, &[u32], &[i64]); 2] =
        [("z^2 + x^3", "x^3", &[4, 6, 8, 10, 12], &[1, 2, 3, 4, 5]), ("z^2 + x^4", "x^4", &[3, 5], &[2, 4])];
    for (f, e, ns, expected) in grids {
        let r = ring(5, &["z", "x"]);
        let p = single(&r, f, Some((e, 2)));
        let mut measured = Vec::new();
        let mut ratios: Vec<Rational> = Vec::new();
        for &n in ns {
            let res = stage_ab_experiment(&Chart::new(r.names().to_vec()), &p, n).map_err(|e| e.to_string())?;
            ensure(res.ell == res.formula, || format!("{f}, N={n}: ℓ={} but formula gives {}", res.ell, res.formula))?;
            measured.push(res.ell);
            ratios.push(rational(res.ell, i64::from(n)));
        }
        ensure(measured == expected, || format!("{f}: ℓ = {measured:?}, expected {expected:?}"))?;
        let q1 = if f.ends_with('3') { rational(1, 2) } else { rational(1, 1) };
        ensure(ratios.windows(2).all(|w| w[0] <= w[1]) && ratios.iter().all(|x| x < &q1), || {
            format!("{f}: ℓ/N = {:?} not monotone below q−1", ratios.iter().map(rational_string).collect::<Vec<_>>())
        })?;
        detail.push(format!("{f}: ℓ={measured:?}"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < STAGE_AB_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{}; ℓ/N increasing towards q−1; {:.2?}", detail.join(", "), elapsed))
}

fn normal_form() -> Result<String, String> {
    let origin = PointSpec::origin(2);
    let r = ring(0, &["z", "x"]);
    let p = single(&r, "z^2 + 2*x*z + x^2 + x^3", Some(("x^3", 2)));
    let h = hord(&p, &origin, None).map_err(|e| e.to_string())?;
    ensure(h.normalized.iterations == [1], || format!("Q: {:?} iterations", h.normalized.iterations))?;
    ensure(h.slopes == [fin(rational(3, 2))], || format!("Q: slopes {:?}", h.slopes))?;

    let r = ring(2, &["z", "x"]);
    let p = single(&r, "z^2 + x^3", Some(("x^3", 2)));
    ensure(is_normal(&p, &origin).map_err(|e| e.to_string())?, || "z^2 + x^3 over F_2 is not normal".into())?;

    for ch in [2u64, 3, 5] {
        let r = ring(ch, &["z", "x"]);
        let text = format!("(z + x)^{ch} + x^{}", ch + 1);
        let p = single(&r, &text, Some((&format!("x^{}", ch + 1), ch as u32)));
        let n = normalize(&p, &origin, None).map_err(|e| e.to_string())?;
        let s = hord(&n.presentation, &origin, None).map_err(|e| e.to_string())?.slopes;
        let want = fin(rational(ch as i64 + 1, ch as i64));
        ensure(s == [want], || format!("p={ch}: slope {s:?}"))?;
    }
    Ok("Q one step to 3/2; z^2+x^3 normal over F_2; (z+x)^p+x^(p+1) → (p+1)/p for p=2,3,5".into())
}

fn membership() -> Result<String, String> {
    let scenes = [
        "z^3 + x^4 + y^5",
        "z^3 + x^2*y^2 + y^4",
        "(z + x)^3 + (x - 1)^4*y",
        "z^2 + x^3 - y^2",
        "z^2 + (x - 1)^2*(y + 1)^3",
        "z^3 + x*y*(x + y)",
        "(z - y)^3 + x^4 + x*y^4",
        "z^2 + x^4 + y^6 + x^2*y^2",
        "z^3 + (x + y^2)^4",
        "z^2 + 2*x*z + x^2 + x^3*y^3",
    ];
    let r = ring(3, &["z", "x", "y"]);
    let field = r.field();
    let elements = field.elements().unwrap();
    let (mut points, mut members) = (0, 0);
    for f in scenes {
        let p = single(&r, f, None);
        let g = p.upstairs();
        for a in &elements {
            for b in &elements {
                let y = PointSpec::Closed(vec![field.zero(), a.clone(), b.clone()]);
                let np = normalize(&p, &y, None).map_err(|e| format!("{f}: {e}"))?.presentation;
                let criterion = membership_criterion(&np, &y).map_err(|e| format!("{f}: {e}"))?;
                let upstairs = elements
                    .iter()
                    .any(|z| g.sing_member(&PointSpec::Closed(vec![z.clone(), a.clone(), b.clone()])).unwrap());
                ensure(criterion == upstairs, || format!("{f} at ({a}, {b}): criterion {criterion}, upstairs {upstairs}"))?;
                points += 1;
                members += usize::from(upstairs);
            }
        }
    }
    Ok(format!("{} scenes × F_3^2: {points} points agree ({members} in β(Sing G))", scenes.len()))
}

fn tau() -> Result<String, String> {
    let cases = [(0u64, &["x", "y"][..], "x^2 + y^2", 2usize), (2, &["x", "y"], "x^2 + y^2", 1), (0, &["z", "x", "y"], "z^2 - x*y", 3)];
    let mut oracle_checks = 0;
    for (ch, vars, f, want) in cases {
        let r = ring(ch, vars);
        let g = rees(&r, &[(f, 2)]);
        let x = PointSpec::origin(vars.len());
        let t = tau_at(&g, &x).map_err(|e| e.to_string())?.tau;
        ensure(t == want, || format!("{f} over char {ch}: τ = {t}, expected {want}"))?;
    }
    for (vars, f) in [(&["x", "y"][..], "x^2 + y^2"), (&["z", "x", "y"][..], "z^2 + x*y"), (&["x", "y", "u"][..], "x^2 + y^2*u")] {
        let r = ring(2, vars);
        let g = rees(&r, &[(f, 2)]);
        let x = PointSpec::origin(vars.len());
        let t = tau_at(&g, &x).map_err(|e| e.to_string())?.tau;
        for m in 1..=3 {
            let o = tau_oracle(&g, &x, m).map_err(|e| e.to_string())?;
            ensure(o == t, || format!("{f}: τ = {t} but oracle over F_{} gives {o}", 1 << m))?;
            oracle_checks += 1;
        }
    }
    Ok(format!("x^2+y^2: 2 over Q, 1 over F_2; z^2−xy: 3 over Q; {oracle_checks} oracle checks over F_2, F_4, F_8"))
}

type TowerSpec = (u64, &'static str, Option<(&'static str, u32)>, &'static [(&'static [usize], usize)]);

fn sandwich() -> Result<String, String> {
    const X: &[usize] = &[0, 1];
    const Y: &[usize] = &[0, 2];
    const O: &[usize] = &[0, 1, 2];
    let towers: [TowerSpec; 14] = [
        (2, "z^2 + x^3", Some(("x^3", 2)), &[(X, 1)]),
        (2, "z^2 + x^3*y^3", Some(("x^3*y^3", 2)), &[(X, 1), (Y, 2)]),
        (2, "z^2 + x^5*y^4", Some(("x^5*y^4", 2)), &[(X, 1), (Y, 2)]),
        (2, "z^2 + x^7", Some(("x^7", 2)), &[(X, 1), (X, 1), (X, 1)]),
        (2, "z^2 + x^5 + y^7", None, &[(O, 1)]),
        (2, "z^2 + x^6 + x^5*y", Some(("x^8", 2)), &[(X, 1)]),
        (3, "z^3 + x^4*y^5", Some(("x^4*y^5", 3)), &[(X, 1), (Y, 2)]),
        (3, "z^2 + x^4*y^4*(1 + x)", None, &[(X, 1), (Y, 2)]),
        (3, "z^3 + x^7", Some(("x^7", 3)), &[(X, 1), (X, 1)]),
        (3, "z^2 + x^4 + x^3*y^2", Some(("x^6", 2)), &[(X, 1)]),
        (5, "z^2 + x^3", Some(("x^3", 2)), &[(X, 1)]),
        (5, "z^5 + x^6*y^7", Some(("x^6*y^7", 5)), &[(X, 1), (Y, 2)]),
        (5, "z^2 + x^5*y^3", Some(("x^5*y^3", 2)), &[(X, 1), (Y, 2), (X, 1)]),
        (5, "z^2 + x^9", Some(("x^9", 2)), &[(X, 1), (X, 1), (X, 1), (X, 1)]),
    ];
    let mut tested = 0;
    for (ch, f, elim, centers) in towers {
        let r = ring(ch, &["z", "x", "y"]);
        let p = single(&r, f, elim);
        let mut t = Tower::new(Chart::new(r.names().to_vec()), p.upstairs(), Some(p)).unwrap();
        for (c, w) in centers {
            t.blowup(c, *w).map_err(|e| format!("{f}: {e}"))?;
        }
        let m = track_monomial(&t).map_err(|e| format!("{f}: {e}"))?;
        let chart = t.chart().clone();
        let present: Vec<usize> = chart.present().map(|d| d.var.unwrap()).collect();
        let mut pts: Vec<PointSpec> = (1u32..(1 << present.len()))
            .map(|mask| PointSpec::generic((0..present.len()).filter(|i| mask >> i & 1 == 1).map(|i| present[i])))
            .collect();
        pts.push(PointSpec::origin(3));
        let p = t.presentation().unwrap();
        for x in pts {
            let h = hord(p, &x, None).map_err(|e| format!("{f}: {e}"))?;
            if !membership_criterion(&h.normalized.presentation, &x).unwrap() {
                continue;
            }
            let om = fin(ord_monomial(&m, &x, &chart));
            ensure(om <= h.value && h.value <= h.elim_ord, || {
                format!("char {ch}, {f} at {x:?}: ord M = {om}, hord = {}, ord elim = {}", h.value, h.elim_ord)
            })?;
            tested += 1;
        }
    }
    ensure(towers.len() >= MIN_SANDWICH_TOWERS, || "too few towers".into())?;
    Ok(format!("{} towers (length 1–4, char 2/3/5), {tested} stratum points in Sing", towers.len()))
}

fn scene_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/scenes"))
}

fn scene_trace(name: &str) -> Value {
    let text = fs::read_to_string(scene_dir().join(format!("{name}.scene"))).unwrap();
    run_scene(&parse_scene(&text).unwrap(), &RunOptions::default(), None).trace
}

fn find<'a>(t: &'a Value, command: &str) -> Option<&'a Value> {
    t["records"].as_array()?.iter().find(|r| r["command"] == command)
}

fn strong_resolution() -> Result<String, String> {
    let strong = ["cusp_char2", "strong_cross_char2", "strong_x5y4_char2", "strong_unit_char3", "strong_cube_char3", "strong_two_sections"];
    let mut two_sections = false;
    for name in strong {
        let t = scene_trace(name);
        let r = find(&t, "resolve").ok_or_else(|| format!("{name}: no resolve record"))?;
        ensure(r["resolved"] == true, || format!("{name}: {}", r["error"]))?;
        let leaves = r["leaves"].as_array().unwrap();
        ensure(leaves.iter().all(|l| l["points_checked"].as_u64() > Some(0)), || format!("{name}: unchecked leaf"))?;
        two_sections |= t["scene"]["presentation"]["sections"].as_array().map(Vec::len) == Some(2);
    }
    ensure(strong.len() >= MIN_STRONG_SCENES && two_sections, || "corpus lacks an e = 2 scene".into())?;
    let non_strong = ["nonstrong_char2", "nonstrong_char3"];
    for name in non_strong {
        let t = scene_trace(name);
        let r = find(&t, "strong-check").ok_or_else(|| format!("{name}: no strong-check record"))?;
        ensure(r["strong"] == false && r["witness"].is_string(), || format!("{name}: {r}"))?;
    }
    ensure(non_strong.len() >= MIN_NON_STRONG_SCENES, || "too few non-strong scenes".into())?;
    Ok(format!("{} strong scenes resolved (one with e = 2); {} non-strong scenes refused with a witness", strong.len(), non_strong.len()))
}

fn random_alpha(rng: &mut StdRng, field: Field, nvars: usize, down: &[usize]) -> MPoly {
    let mut terms = Vec::new();
    for _ in 0..rng.random_range(1..=4) {
        let mut e = vec![0u32; nvars];
        let deg = rng.random_range(1..=3);
        for _ in 0..deg {
            e[down[rng.random_range(0..down.len())]] += 1;
        }
        terms.push((e, field.from_i64(rng.random_range(-3..=3))));
    }
    MPoly::from_terms(field, nvars, terms)
}

fn section_invariance() -> Result<String, String> {
    let names = [
        "cusp_char2",
        "normalize_q",
        "normalize_char3",
        "strong_cross_char2",
        "strong_x5y4_char2",
        "strong_unit_char3",
        "strong_cube_char3",
        "strong_two_sections",
        "nonstrong_char2",
        "nonstrong_char3",
    ];
    let mut rng = StdRng::seed_from_u64(SEED);
    for name in names {
        let text = fs::read_to_string(scene_dir().join(format!("{name}.scene"))).unwrap();
        let p = parse_scene(&text).unwrap().presentation.unwrap();
        let x = PointSpec::origin(p.nvars());
        let base = hord(&p, &x, None).map_err(|e| format!("{name}: {e}"))?.value;
        let down = p.downstairs_vars();
        for _ in 0..SECTION_CHANGES_PER_SCENE {
            let polys: Vec<MPoly> = p
                .sections()
                .iter()
                .zip(p.polys())
                .map(|(&z, f)| {
                    let alpha = random_alpha(&mut rng, p.field(), p.nvars(), &down);
                    f.substitute(z, &(&MPoly::var(p.field(), p.nvars(), z) - &alpha))
                })
                .collect();
            let q = Presentation::new(p.sections().to_vec(), polys, p.elim().clone()).map_err(|e| e.to_string())?;
            let v = hord(&q, &x, None).map_err(|e| format!("{name}: {e}"))?.value;
            ensure(v == base, || format!("{name}: hord {v} after a change of section, {base} before"))?;
        }
    }
    Ok(format!("{} scenes × {SECTION_CHANGES_PER_SCENE} random z' = z + α: hord unchanged", names.len()))
}

fn properties() -> Result<String, String> {
    let mut names = Vec::new();
    for (name, r) in common::props::all(common::props::CASES) {
        r.map_err(|e| format!("{name}: {e}"))?;
        names.push(name);
    }
    Ok(format!("{} cases each: {}", common::props::CASES, names.join(", ")))
}

fn main() {
    let mut report = Report { failed: 0 };
    report.check("stage A/B law", stage_ab());
    report.check("normal form", normal_form());
    report.check("membership criterion", membership());
    report.check("tau characteristic sensitivity", tau());
    report.check("sandwich", sandwich());
    report.check("strong monomial resolution", strong_resolution());
    report.check("section invariance", section_invariance());
    report.check("property suites", properties());
    println!("{} criteria failed", report.failed);
    if report.failed > 0 {
        std::process::exit(1);
    }
}
