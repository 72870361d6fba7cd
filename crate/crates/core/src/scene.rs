//! Line-oriented scene files: a field, an algebra, an optional
//! presentation, named points and a script of commands.
//!
//! ```text
//! [field]
//! char: 2
//! vars: z, x
//! [algebra]
//! gen: z^2 + x^3 W^2
//! [presentation]
//! sections: z
//! poly: z^2 + x^3
//! elim: x^3 W^2
//! [points]
//! p: (0, 1)
//! line: generic {z}
//! [script]
//! hord at origin
//! blowup: center = {z, x}; chart = x
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::{parse_rational, Field};
use crate::poly::{is_identifier, MPoly, PointSpec, Ring, MAX_EXPONENT};
use crate::projection::{presentation_elim, Presentation};
use crate::rees::ReesAlg;

/// Largest accepted characteristic (primality is checked by trial division).
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;
pub const MAX_VARS: usize = 16;
/// Largest `N` for the Stage A/B experiment.
pub const MAX_EXPERIMENT_N: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SceneError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, SceneError> {
    Err(SceneError { line, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Analyze(String),
    Slope(String),
    Hord(String),
    Blowup { center: Vec<usize>, chart: usize },
    Experiment { n: u32 },
    MonomialTrack,
    StrongCheck(Vec<String>),
    Resolve,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze(_) => "analyze",
            Command::Slope(_) => "slope",
            Command::Hord(_) => "hord",
            Command::Blowup { .. } => "blowup",
            Command::Experiment { .. } => "experiment",
            Command::MonomialTrack => "monomial-track",
            Command::StrongCheck(_) => "strong-check",
            Command::Resolve => "resolve",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptLine {
    pub line: usize,
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scene {
    pub ring: Ring,
    pub algebra: ReesAlg,
    pub presentation: Option<Presentation>,
    /// Named points in declaration order; `origin` comes first.
    pub points: Vec<(String, PointSpec)>,
    pub script: Vec<ScriptLine>,
}

impl Scene {
    pub fn point(&self, name: &str) -> Option<&PointSpec> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Field,
    Algebra,
    Presentation,
    Points,
    Script,
}

#[derive(Default)]
struct Raw {
    char: Option<(usize, String)>,
    vars: Option<(usize, String)>,
    gens: Vec<(usize, String)>,
    sections: Option<(usize, String)>,
    polys: Vec<(usize, String)>,
    elims: Vec<(usize, String)>,
    points: Vec<(usize, String, String)>,
    script: Vec<(usize, String)>,
}

fn key_value(line: usize, text: &str) -> Result<(String, String), SceneError> {
    match text.split_once(':') {
        Some((k, v)) => Ok((k.trim().to_string(), v.trim().to_string())),
        None => err(line, format!("expected `key: value`, found {text:?}")),
    }
}

fn set_once(slot: &mut Option<(usize, String)>, line: usize, key: &str, v: String) -> Result<(), SceneError> {
    if slot.is_some() {
        return err(line, format!("duplicate `{key}`"));
    }
    *slot = Some((line, v));
    Ok(())
}

fn split_raw(text: &str) -> Result<Raw, SceneError> {
    let mut raw = Raw::default();
    let mut section = None;
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let t = l.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        if let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = Some(match name.trim() {
                "field" => Section::Field,
                "algebra" => Section::Algebra,
                "presentation" => Section::Presentation,
                "points" => Section::Points,
                "script" => Section::Script,
                other => return err(line, format!("unknown section [{other}]")),
            });
            continue;
        }
        let Some(sec) = section else { return err(line, "content before the first section") };
        match sec {
            Section::Script => raw.script.push((line, t.to_string())),
            Section::Points => {
                let (k, v) = key_value(line, t)?;
                raw.points.push((line, k, v));
            }
            _ => {
                let (k, v) = key_value(line, t)?;
                match (sec, k.as_str()) {
                    (Section::Field, "char") => set_once(&mut raw.char, line, "char", v)?,
                    (Section::Field, "vars") => set_once(&mut raw.vars, line, "vars", v)?,
                    (Section::Algebra, "gen") => raw.gens.push((line, v)),
                    (Section::Presentation, "sections") => set_once(&mut raw.sections, line, "sections", v)?,
                    (Section::Presentation, "poly") => raw.polys.push((line, v)),
                    (Section::Presentation, "elim") => raw.elims.push((line, v)),
                    _ => return err(line, format!("unknown key `{k}` in [{}]", format!("{sec:?}").to_lowercase())),
                }
            }
        }
    }
    Ok(raw)
}

fn parse_poly_at(ring: &Ring, line: usize, text: &str) -> Result<MPoly, SceneError> {
    ring.parse(text).or_else(|e| err(line, e.to_string()))
}

/// `<poly> W^<n>`; a bare `W` means weight 1.
fn parse_weighted(ring: &Ring, line: usize, text: &str) -> Result<(MPoly, u32), SceneError> {
    let Some(pos) = text.rfind('W') else { return err(line, "generator needs a weight `W^n`") };
    let (f, w) = text.split_at(pos);
    let w = w[1..].trim();
    let n = if w.is_empty() {
        1
    } else {
        let Some(e) = w.strip_prefix('^') else { return err(line, "expected `W^n`") };
        match e.trim().parse::<u32>() {
            Ok(n) if (1..=MAX_EXPONENT).contains(&n) => n,
            _ => return err(line, format!("weight must be an integer in 1..={MAX_EXPONENT}")),
        }
    };
    let f = f.trim().trim_end_matches('*').trim();
    if f.is_empty() {
        return err(line, "missing polynomial before `W`");
    }
    let f = parse_poly_at(ring, line, f)?;
    if f.is_zero() {
        return err(line, "generator is zero");
    }
    Ok((f, n))
}

fn var_list(ring: &Ring, line: usize, text: &str) -> Result<Vec<usize>, SceneError> {
    let mut out = Vec::new();
    for v in text.split(',').map(str::trim).filter(|v| !v.is_empty()) {
        match ring.index_of(v) {
            Some(i) if !out.contains(&i) => out.push(i),
            Some(_) => return err(line, format!("variable {v} listed twice")),
            None => return err(line, format!("unknown variable {v}")),
        }
    }
    Ok(out)
}

fn braced(line: usize, text: &str) -> Result<&str, SceneError> {
    match text.trim().strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
        Some(s) => Ok(s),
        None => err(line, format!("expected `{{…}}`, found {text:?}")),
    }
}

fn parse_point(ring: &Ring, line: usize, text: &str) -> Result<PointSpec, SceneError> {
    if let Some(rest) = text.strip_prefix("generic") {
        return Ok(PointSpec::generic(var_list(ring, line, braced(line, rest)?)?));
    }
    let Some(inner) = text.strip_prefix('(').and_then(|s| s.strip_suffix(')')) else {
        return err(line, "point must be `(c1, …, cd)` or `generic {…}`");
    };
    let mut coords = Vec::new();
    for c in inner.split(',') {
        let Some(q) = parse_rational(c) else { return err(line, format!("bad coordinate {:?}", c.trim())) };
        match ring.field().reduce(&q) {
            Ok(v) => coords.push(v),
            Err(e) => return err(line, e.to_string()),
        }
    }
    if coords.len() != ring.nvars() {
        return err(line, format!("point has {} coordinates, expected {}", coords.len(), ring.nvars()));
    }
    Ok(PointSpec::Closed(coords))
}

fn point_ref(points: &[(String, PointSpec)], line: usize, name: &str) -> Result<String, SceneError> {
    if points.iter().any(|(n, _)| n == name) {
        Ok(name.to_string())
    } else {
        err(line, format!("unknown point {name:?}"))
    }
}

fn parse_command(
    ring: &Ring,
    points: &[(String, PointSpec)],
    line: usize,
    text: &str,
) -> Result<Command, SceneError> {
    let (head, rest) = match text.find(|c: char| c.is_whitespace() || c == ':') {
        Some(i) => (&text[..i], text[i..].trim_start_matches(':').trim()),
        None => (text, ""),
    };
    let at = |rest: &str| -> Result<String, SceneError> {
        match rest.strip_prefix("at") {
            Some(p) if p.starts_with(char::is_whitespace) => point_ref(points, line, p.trim()),
            _ => err(line, format!("expected `{head} at <point>`")),
        }
    };
    let bare = |c: Command| if rest.is_empty() { Ok(c) } else { err(line, format!("`{head}` takes no arguments")) };
    match head {
        "analyze" => Ok(Command::Analyze(at(rest)?)),
        "slope" => Ok(Command::Slope(at(rest)?)),
        "hord" => Ok(Command::Hord(at(rest)?)),
        "blowup" => {
            let mut center = None;
            let mut chart = None;
            for part in rest.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                let Some((k, v)) = part.split_once('=') else { return err(line, "expected `center = {…}; chart = v`") };
                match k.trim() {
                    "center" => center = Some(var_list(ring, line, braced(line, v)?)?),
                    "chart" => match ring.index_of(v.trim()) {
                        Some(i) => chart = Some(i),
                        None => return err(line, format!("unknown variable {}", v.trim())),
                    },
                    other => return err(line, format!("unknown blowup option `{other}`")),
                }
            }
            match (center, chart) {
                (Some(center), Some(chart)) => Ok(Command::Blowup { center, chart }),
                _ => err(line, "blowup needs both `center` and `chart`"),
            }
        }
        "experiment" => {
            let mut parts = rest.split_whitespace();
            if parts.next() != Some("q-from-presentation") {
                return err(line, "expected `experiment q-from-presentation N=<n>`");
            }
            let n = parts.next().and_then(|p| p.strip_prefix("N=")).and_then(|n| n.parse::<u32>().ok());
            match (n, parts.next()) {
                (Some(n), None) if (1..=MAX_EXPERIMENT_N).contains(&n) => Ok(Command::Experiment { n }),
                _ => err(line, format!("expected `N=<n>` with 1 ≤ n ≤ {MAX_EXPERIMENT_N}")),
            }
        }
        "monomial-track" => bare(Command::MonomialTrack),
        "resolve" => bare(Command::Resolve),
        "strong-check" => {
            if rest.is_empty() {
                return Ok(Command::StrongCheck(Vec::new()));
            }
            let Some(list) = rest.strip_prefix("at") else { return err(line, "expected `strong-check [at p, …]`") };
            let names = list
                .split(',')
                .map(str::trim)
                .map(|n| point_ref(points, line, n))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Command::StrongCheck(names))
        }
        other => err(line, format!("unknown command `{other}`")),
    }
}

/// Parse a scene; every error names its line.
pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    let raw = split_raw(text)?;
    let Some((cl, ch)) = raw.char else { return err(1, "missing `char` in [field]") };
    let field = match ch.parse::<u64>() {
        Ok(c) if c <= MAX_CHARACTERISTIC => Field::new(c).or_else(|e| err(cl, e.to_string()))?,
        _ => return err(cl, format!("characteristic must be 0 or a prime ≤ {MAX_CHARACTERISTIC}")),
    };
    let Some((vl, vars)) = raw.vars else { return err(1, "missing `vars` in [field]") };
    let names: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
    if names.is_empty() || names.len() > MAX_VARS {
        return err(vl, format!("need between 1 and {MAX_VARS} variables"));
    }
    let ring = Ring::new(field, names).or_else(|e| err(vl, e.to_string()))?;
    let nv = ring.nvars();

    let presentation = match raw.sections {
        None => {
            if let Some((l, _)) = raw.polys.first().or(raw.elims.first()) {
                return err(*l, "presentation needs `sections`");
            }
            None
        }
        Some((sl, s)) => {
            let sections = var_list(&ring, sl, &s)?;
            if sections.is_empty() {
                return err(sl, "at least one section is required");
            }
            if raw.polys.len() != sections.len() {
                return err(sl, format!("{} sections but {} `poly` lines", sections.len(), raw.polys.len()));
            }
            let polys = raw.polys.iter().map(|(l, t)| parse_poly_at(&ring, *l, t)).collect::<Result<Vec<_>, _>>()?;
            let auto = raw.elims.iter().any(|(_, t)| t == "auto");
            let elim = if auto {
                if raw.elims.len() != 1 {
                    return err(raw.elims[1].0, "`elim: auto` excludes other elim lines");
                }
                presentation_elim(&sections, &polys).or_else(|e| err(raw.elims[0].0, e.to_string()))?
            } else {
                let gens = raw.elims.iter().map(|(l, t)| parse_weighted(&ring, *l, t)).collect::<Result<Vec<_>, _>>()?;
                ReesAlg::new(field, nv, gens).or_else(|e| err(sl, e.to_string()))?
            };
            Some(Presentation::new(sections, polys, elim).or_else(|e| err(sl, e.to_string()))?)
        }
    };

    let algebra = if raw.gens.is_empty() {
        match &presentation {
            Some(p) => p.upstairs(),
            None => return err(1, "scene needs [algebra] generators or a [presentation]"),
        }
    } else {
        let gens = raw.gens.iter().map(|(l, t)| parse_weighted(&ring, *l, t)).collect::<Result<Vec<_>, _>>()?;
        ReesAlg::new(field, nv, gens).or_else(|e| err(raw.gens[0].0, e.to_string()))?
    };

    let mut points = vec![("origin".to_string(), PointSpec::origin(nv))];
    let mut seen = BTreeMap::new();
    for (l, name, v) in &raw.points {
        if !is_identifier(name) {
            return err(*l, format!("invalid point name {name:?}"));
        }
        if name == "origin" || seen.insert(name.clone(), *l).is_some() {
            return err(*l, format!("point {name:?} is already defined"));
        }
        points.push((name.clone(), parse_point(&ring, *l, v)?));
    }

    let script = raw
        .script
        .iter()
        .map(|(l, t)| Ok(ScriptLine { line: *l, command: parse_command(&ring, &points, *l, t)? }))
        .collect::<Result<Vec<_>, SceneError>>()?;
    Ok(Scene { ring, algebra, presentation, points, script })
}
