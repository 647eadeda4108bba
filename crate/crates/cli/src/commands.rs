use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use tropskel::charts::{build_b_diagram, build_cech_diagram, canonical_mapping, diagram_isomorphic};
use tropskel::export::{diagram_dot, quiver_dot, ribbon_dot, tropical_dot, tropical_svg};
use tropskel::io::{format_rational, parse_representation, tropical_to_json, TriangulationFile, TropicalFile};
use tropskel::lattice::{dual_tropical_graph, validate_triangulation, Triangulation};
use tropskel::quiver::{euler_form, hom_complex, k0_rank, pattern_quiver, Orientation};
use tropskel::ribbon::{canonical_pattern, component_invariants, validate_ribbon, RibbonData, RibbonGraph, SurfaceType};
use tropskel::synth::synthesize as run_synthesis;
use tropskel::tropical::{mirror_invariants, sweep_decompose, validate as validate_tropical, TropicalGraph};

use crate::{Format, RunConfig};

/// Unreadable or malformed input; maps to exit code 2.
#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

enum Input {
    Triangulation(Triangulation),
    Tropical(TropicalGraph),
    Ribbon(RibbonData),
}

fn parse_err(path: &Path, what: impl std::fmt::Display) -> anyhow::Error {
    ParseError(format!("{}: {what}", path.display())).into()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| parse_err(path, e))
}

fn load(path: &Path) -> Result<Input> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| parse_err(path, e))?;
    let has = |k: &str| value.get(k).is_some();
    if has("triangles") {
        let f: TriangulationFile = serde_json::from_value(value).map_err(|e| parse_err(path, e))?;
        Ok(Input::Triangulation(f.build().map_err(|e| parse_err(path, e))?))
    } else if has("sigma") {
        Ok(Input::Ribbon(serde_json::from_value(value).map_err(|e| parse_err(path, e))?))
    } else if has("finite_edges") || has("infinite_edges") {
        let f: TropicalFile = serde_json::from_value(value).map_err(|e| parse_err(path, e))?;
        Ok(Input::Tropical(f.into()))
    } else {
        Err(parse_err(path, "not a triangulation, tropical graph or ribbon graph"))
    }
}

/// A tropical graph from either a triangulation (via its dual) or a
/// tropical graph file; `None` after reporting an invalid triangulation.
fn load_tropical(path: &Path) -> Result<Option<TropicalGraph>> {
    match load(path)? {
        Input::Triangulation(t) => match dual_tropical_graph(&t) {
            Ok(d) => Ok(Some(d.graph)),
            Err(e) => {
                eprintln!("invalid triangulation: {e}");
                Ok(None)
            }
        },
        Input::Tropical(g) => Ok(Some(g)),
        Input::Ribbon(_) => Err(parse_err(path, "expected a triangulation or a tropical graph")),
    }
}

fn load_triangulation(path: &Path) -> Result<Triangulation> {
    match load(path)? {
        Input::Triangulation(t) => Ok(t),
        _ => Err(parse_err(path, "expected a triangulation")),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

/// Print in the requested format; formats without a rendering are errors.
fn emit(cfg: &RunConfig, text: &str, json: Option<String>, dot: Option<String>, svg: Option<String>) -> Result<()> {
    let out = match cfg.format {
        Format::Text => Some(text.to_string()),
        Format::Json => json,
        Format::Dot => dot,
        Format::Svg => svg,
    };
    match out {
        Some(s) => {
            print!("{s}");
            if !s.ends_with('\n') {
                println!();
            }
            Ok(())
        }
        None => bail!("--format {:?} is not available for this command", cfg.format),
    }
}

fn gn(s: &SurfaceType) -> String {
    format!("(g, n) = ({}, {})", s.genus, s.punctures)
}

pub fn validate(cfg: &RunConfig, path: &Path) -> Result<bool> {
    let (ok, text, json) = match load(path)? {
        Input::Triangulation(t) => {
            let r = validate_triangulation(&t);
            let mut text = format!("triangulation: {}\n", if r.valid { "valid" } else { "invalid" });
            for (i, s) in r.triangles.iter().enumerate() {
                writeln!(text, "  triangle {i}: det {}{}", s.determinant, if s.overlaps.is_empty() { "" } else { ", overlaps" })?;
            }
            for issue in &r.issues {
                writeln!(text, "  {issue}")?;
            }
            (r.valid, text, to_json(&r))
        }
        Input::Tropical(g) => {
            let r = validate_tropical(&g)?;
            let text = format!(
                "tropical graph: {}\n  balanced {}\n  nondegenerate {}\n  embedded {}\n  infinite edges {}\n",
                if r.ok() { "valid" } else { "invalid" },
                r.balanced.balanced,
                r.nondegenerate.nondegenerate,
                r.embedding.embedded,
                r.infinite_edges.count
            );
            (r.ok(), text, to_json(&r))
        }
        Input::Ribbon(x) => {
            let r = validate_ribbon(&x);
            let mut text = format!("ribbon graph: {}\n", if r.valid { "valid" } else { "invalid" });
            for issue in &r.issues {
                writeln!(text, "  {issue}")?;
            }
            (r.valid, text, to_json(&r))
        }
    };
    emit(cfg, &text, Some(json), None, None)?;
    Ok(ok)
}

pub fn dual(cfg: &RunConfig, path: &Path) -> Result<bool> {
    let t = load_triangulation(path)?;
    let d = match dual_tropical_graph(&t) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("invalid triangulation: {e}");
            return Ok(false);
        }
    };
    let g = &d.graph;
    let text = format!(
        "dual graph: {} vertices, {} finite edges, {} infinite edges\n",
        g.num_vertices(),
        g.finite_edges.len(),
        g.infinite_edges.len()
    );
    emit(cfg, &text, Some(tropical_to_json(g)), Some(tropical_dot(g)), Some(tropical_svg(g)))?;
    Ok(true)
}

pub fn invariants(cfg: &RunConfig, path: &Path) -> Result<bool> {
    let s = match load(path)? {
        Input::Ribbon(x) => {
            let g = RibbonGraph::try_from(x).map_err(|e| parse_err(path, e))?;
            let comps = component_invariants(&g)?;
            if comps.len() != 1 {
                bail!("ribbon graph has {} components", comps.len());
            }
            comps[0]
        }
        _ => {
            let Some(g) = load_tropical(path)? else { return Ok(false) };
            let v = validate_tropical(&g)?;
            if !v.ok() {
                eprintln!("tropical graph is not valid");
                return Ok(false);
            }
            let m = mirror_invariants(&g)?;
            SurfaceType::new(m.genus, m.punctures)
        }
    };
    emit(cfg, &format!("{}\n", gn(&s)), Some(to_json(&json!({"genus": s.genus, "punctures": s.punctures}))), None, None)?;
    Ok(true)
}

pub fn sweep(cfg: &RunConfig, path: &Path) -> Result<bool> {
    let Some(g) = load_tropical(path)? else { return Ok(false) };
    let steps = sweep_decompose(&g, cfg.direction)?;
    let mut text = String::new();
    for (k, s) in steps.iter().enumerate() {
        let open: Vec<String> = s.new_open_edges.iter().map(|o| o.edge.to_string()).collect();
        writeln!(
            text,
            "step {k}: vertex {} at height {}, glue {:?}, open [{}], {:?}",
            s.vertex,
            format_rational(&s.height),
            s.glue_edges,
            open.join(", "),
            s.case
        )?;
    }
    let json = to_json(&json!({"direction": cfg.direction, "steps": steps}));
    emit(cfg, &text, Some(json), None, None)?;
    Ok(true)
}

pub fn synthesize(cfg: &RunConfig, path: &Path, output: Option<&Path>) -> Result<bool> {
    let Some(g) = load_tropical(path)? else { return Ok(false) };
    let (x, cert) = run_synthesis(&g, &cfg.synth())?;
    let data = RibbonData::from(&x);
    if let Some(out) = output {
        fs::write(out, to_json(&data)).with_context(|| format!("writing {}", out.display()))?;
    }
    let mut text = format!(
        "skeleton: {} vertices, {} edges, {}; mirror (g, n) = ({}, {})\n",
        x.num_vertices(),
        x.num_edges(),
        gn(&cert.skeleton),
        cert.mirror.genus,
        cert.mirror.punctures
    );
    for (k, s) in cert.steps.iter().enumerate() {
        let resynth = s.prepared.iter().filter(|p| !p.log.is_explicit()).count();
        writeln!(
            text,
            "  step {k}: vertex {}, {:?} glued along {} circle(s){}",
            s.vertex,
            s.pants,
            s.glue_edges.len(),
            if resynth > 0 { ", cycles prepared by re-synthesis" } else { "" }
        )?;
    }
    writeln!(text, "certificate: {}", if cert.passes() { "pass" } else { "fail" })?;
    let json = to_json(&json!({"skeleton": data, "certificate": cert}));
    emit(cfg, &text, Some(json), Some(ribbon_dot(&x)), None)?;
    Ok(cert.passes())
}

pub fn quiver(cfg: &RunConfig, pattern: &str, reversed: bool) -> Result<bool> {
    let orientation = if reversed { Orientation::Reversed } else { Orientation::Traversal };
    let q = pattern_quiver(pattern, orientation)?;
    let mut text = format!("Q({pattern}): {} vertices, K0 rank {}\n", q.vertices, k0_rank(&q));
    for (k, (s, t)) in q.arrows.iter().enumerate() {
        writeln!(text, "  m{k}: s{s} -> s{t}")?;
    }
    let json = to_json(&json!({
        "pattern": pattern,
        "canonical_pattern": canonical_pattern(&pattern.replace('\u{2212}', "-")),
        "orientation": orientation,
        "quiver": q,
        "k0_rank": k0_rank(&q),
    }));
    emit(cfg, &text, Some(json), Some(quiver_dot(&q)), None)?;
    Ok(true)
}

pub fn hom(cfg: &RunConfig, pattern: &str, m: &Path, n: &Path) -> Result<bool> {
    let q = pattern_quiver(pattern, Orientation::Traversal)?;
    let rm = parse_representation(&read(m)?).map_err(|e| parse_err(m, e))?;
    let rn = parse_representation(&read(n)?).map_err(|e| parse_err(n, e))?;
    let h = hom_complex(&q, &rm, &rn)?;
    let chi = euler_form(&q, &rm.dims, &rn.dims);
    let text = format!("(C0, C1, H0, H1) = ({}, {}, {}, {})\neuler form {chi}\n", h.c0, h.c1, h.h0, h.h1);
    let json = to_json(&json!({"hom": h, "euler_form": chi}));
    emit(cfg, &text, Some(json), None, None)?;
    Ok(chi == h.euler())
}

pub fn diagram(cfg: &RunConfig, path: &Path) -> Result<bool> {
    let t = load_triangulation(path)?;
    let dual = match dual_tropical_graph(&t) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("invalid triangulation: {e}");
            return Ok(false);
        }
    };
    let b = build_b_diagram(&dual.graph)?;
    let c = build_cech_diagram(&t)?;
    let iso = diagram_isomorphic(&b, &c, Some(&canonical_mapping(&dual, &t, &b, &c)));
    let text = match &iso {
        Ok(m) => format!(
            "equalizer diagram: {} + {} objects, {} arrows\nCech diagram: {} + {} objects, {} arrows\nisomorphic ({})\n",
            b.vertices.len(),
            b.edges.len(),
            b.arrows.len(),
            c.vertices.len(),
            c.edges.len(),
            c.arrows.len(),
            if m.canonical { "canonical bijection" } else { "found by search" }
        ),
        Err(d) => format!("not isomorphic: {}\n", d.witness),
    };
    let json = to_json(&json!({"equalizer": b, "cech": c, "mapping": iso.as_ref().ok(), "discrepancy": iso.as_ref().err()}));
    emit(cfg, &text, Some(json), Some(format!("{}{}", diagram_dot(&b), diagram_dot(&c))), None)?;
    Ok(iso.is_ok())
}

#[derive(Serialize)]
struct Stage {
    stage: &'static str,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct CheckReport {
    file: String,
    seed: u64,
    direction: tropskel::geometry::Vec2,
    stages: Vec<Stage>,
    pass: bool,
}

pub fn check(cfg: &RunConfig, path: &Path) -> Result<bool> {
    let input = load(path)?;
    let mut stages = Vec::new();
    let mut push = |stage, pass, detail: String| {
        stages.push(Stage { stage, pass, detail });
        pass
    };
    run_stages(cfg, input, &mut push);
    let pass = stages.iter().all(|s| s.pass);
    let report = CheckReport { file: path.display().to_string(), seed: cfg.seed, direction: cfg.direction, stages, pass };
    let mut text = String::new();
    for s in &report.stages {
        writeln!(text, "{:<20} {}  {}", s.stage, if s.pass { "pass" } else { "FAIL" }, s.detail)?;
    }
    writeln!(text, "{}", if pass { "all stages pass" } else { "check failed" })?;
    emit(cfg, &text, Some(to_json(&report)), None, None)?;
    Ok(pass)
}

/// Stops at the first failing stage.
fn run_stages(cfg: &RunConfig, input: Input, push: &mut dyn FnMut(&'static str, bool, String) -> bool) {
    let (triangulation, g) = match input {
        Input::Triangulation(t) => {
            let r = validate_triangulation(&t);
            if !push("validate", r.valid, r.issues.join("; ")) {
                return;
            }
            match dual_tropical_graph(&t) {
                Ok(d) => {
                    push("dual", true, format!("{} vertices", d.graph.num_vertices()));
                    (Some((t, d.clone())), d.graph)
                }
                Err(e) => {
                    push("dual", false, e.to_string());
                    return;
                }
            }
        }
        Input::Tropical(g) => {
            let ok = validate_tropical(&g).map(|v| v.ok()).unwrap_or(false);
            if !push("validate", ok, String::new()) {
                return;
            }
            (None, g)
        }
        Input::Ribbon(_) => {
            push("validate", false, "check needs a triangulation or tropical graph".into());
            return;
        }
    };
    let m = match mirror_invariants(&g) {
        Ok(m) => m,
        Err(e) => {
            push("mirror_invariants", false, e.to_string());
            return;
        }
    };
    push("mirror_invariants", true, format!("(g, n) = ({}, {})", m.genus, m.punctures));
    let (x, cert) = match run_synthesis(&g, &cfg.synth()) {
        Ok(r) => r,
        Err(e) => {
            push("synthesize", false, e.to_string());
            return;
        }
    };
    push("synthesize", cert.passes(), format!("{} steps, {} two-circle", cert.steps.len(), cert.two_circle_steps()));
    let s = component_invariants(&x).ok().filter(|c| c.len() == 1).map(|c| c[0]);
    let same = s.is_some_and(|s| (s.genus, s.punctures) == (m.genus, m.punctures));
    let detail = s.map(|s| gn(&s)).unwrap_or_else(|| "skeleton is not connected".into());
    if !push("surface_invariants", same, detail) {
        return;
    }
    let Some((t, dual)) = triangulation else { return };
    let diagrams = build_b_diagram(&g).and_then(|b| Ok((b, build_cech_diagram(&t)?)));
    let (b, c) = match diagrams {
        Ok(p) => p,
        Err(e) => {
            push("diagrams", false, e.to_string());
            return;
        }
    };
    push("diagrams", true, format!("{} + {} objects", b.vertices.len(), b.edges.len()));
    match diagram_isomorphic(&b, &c, Some(&canonical_mapping(&dual, &t, &b, &c))) {
        Ok(m) => push("diagram_isomorphic", true, if m.canonical { "canonical bijection".into() } else { "by search".into() }),
        Err(d) => push("diagram_isomorphic", false, d.witness),
    };
}
