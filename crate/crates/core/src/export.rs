//! Graphviz and SVG renderings. Floating point is used here for drawing
//! only.

use std::fmt::Write;

use crate::charts::ChartDiagram;
use crate::geometry::{ratio_to_f64, Point};
use crate::quiver::Quiver;
use crate::ribbon::RibbonGraph;
use crate::tropical::TropicalGraph;

fn xy(p: &Point) -> (f64, f64) {
    (ratio_to_f64(p.x), ratio_to_f64(p.y))
}

/// Bounding box of the vertices, padded so rays show.
fn frame(g: &TropicalGraph) -> (f64, f64, f64, f64) {
    let pts: Vec<(f64, f64)> = g.positions.iter().map(xy).collect();
    let fold = |f: fn(f64, f64) -> f64, init: f64, k: usize| {
        pts.iter().map(|p| if k == 0 { p.0 } else { p.1 }).fold(init, f)
    };
    let (x0, x1) = (fold(f64::min, f64::INFINITY, 0), fold(f64::max, f64::NEG_INFINITY, 0));
    let (y0, y1) = (fold(f64::min, f64::INFINITY, 1), fold(f64::max, f64::NEG_INFINITY, 1));
    let pad = ((x1 - x0).max(y1 - y0) * 0.5).max(1.0);
    (x0 - pad, y0 - pad, x1 + pad, y1 + pad)
}

/// Where a ray from `p` in direction `v` leaves the box.
fn clip(p: (f64, f64), v: (f64, f64), b: (f64, f64, f64, f64)) -> (f64, f64) {
    let mut t = f64::INFINITY;
    for (pc, vc, lo, hi) in [(p.0, v.0, b.0, b.2), (p.1, v.1, b.1, b.3)] {
        if vc > 0.0 {
            t = t.min((hi - pc) / vc);
        } else if vc < 0.0 {
            t = t.min((lo - pc) / vc);
        }
    }
    (p.0 + t * v.0, p.1 + t * v.1)
}

fn ray_ends(g: &TropicalGraph) -> Vec<(f64, f64)> {
    let b = frame(g);
    g.infinite_edges
        .iter()
        .map(|e| clip(xy(&g.positions[e.vertex]), (e.momentum.x as f64, e.momentum.y as f64), b))
        .collect()
}

pub fn tropical_dot(g: &TropicalGraph) -> String {
    let mut s = String::from("graph tropical {\n  node [shape=point];\n");
    for (v, p) in g.positions.iter().enumerate() {
        let (x, y) = xy(p);
        writeln!(s, "  v{v} [pos=\"{x:.3},{y:.3}!\", xlabel=\"v{v}\"];").unwrap();
    }
    for (k, e) in g.finite_edges.iter().enumerate() {
        let p = e.momentum;
        writeln!(s, "  v{} -- v{} [label=\"f{k} ({},{})\"];", e.ends[0], e.ends[1], p.x, p.y).unwrap();
    }
    for (k, (e, (x, y))) in g.infinite_edges.iter().zip(ray_ends(g)).enumerate() {
        writeln!(s, "  inf{k} [pos=\"{x:.3},{y:.3}!\", style=invis];").unwrap();
        let p = e.momentum;
        writeln!(s, "  v{} -- inf{k} [label=\"i{k} ({},{})\", style=dashed];", e.vertex, p.x, p.y).unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn tropical_svg(g: &TropicalGraph) -> String {
    let b = frame(g);
    let scale = 400.0 / (b.2 - b.0).max(b.3 - b.1);
    let tx = |(x, y): (f64, f64)| ((x - b.0) * scale + 10.0, (b.3 - y) * scale + 10.0);
    let (w, h) = ((b.2 - b.0) * scale + 20.0, (b.3 - b.1) * scale + 20.0);
    let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\">\n");
    let mut line = |a: (f64, f64), c: (f64, f64), dash: bool| {
        let (a, c) = (tx(a), tx(c));
        let extra = if dash { " stroke-dasharray=\"4 3\"" } else { "" };
        writeln!(
            s,
            "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"{extra}/>",
            a.0, a.1, c.0, c.1
        )
        .unwrap();
    };
    for e in &g.finite_edges {
        line(xy(&g.positions[e.ends[0]]), xy(&g.positions[e.ends[1]]), false);
    }
    for (e, end) in g.infinite_edges.iter().zip(ray_ends(g)) {
        line(xy(&g.positions[e.vertex]), end, true);
    }
    for p in &g.positions {
        let (x, y) = tx(xy(p));
        writeln!(s, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\"/>").unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Vertices with their cyclic orders, edges labeled by darts, and one
/// legend line per face.
pub fn ribbon_dot(x: &RibbonGraph) -> String {
    let mut s = String::from("graph ribbon {\n");
    for v in 0..x.num_vertices() {
        let order: Vec<String> = x.order(v).iter().map(usize::to_string).collect();
        writeln!(s, "  v{v} [label=\"v{v} ({})\"];", order.join(" ")).unwrap();
    }
    for d in 0..x.num_darts() {
        let e = x.sigma(d);
        if e == d {
            writeln!(s, "  x{d} [shape=point];\n  v{} -- x{d} [label=\"{d}\", style=dashed];", x.vertex_of(d)).unwrap();
        } else if d < e {
            writeln!(s, "  v{} -- v{} [label=\"{d}/{e}\"];", x.vertex_of(d), x.vertex_of(e)).unwrap();
        }
    }
    let mut legend = Vec::new();
    for (k, f) in x.faces().iter().enumerate() {
        let darts: Vec<String> = f.darts.iter().map(usize::to_string).collect();
        let name = f.label.clone().unwrap_or_else(|| format!("face{k}"));
        let cyc = if f.is_cycle { " cycle" } else { "" };
        legend.push(format!("{name}: {}{cyc}", darts.join(" ")));
    }
    writeln!(s, "  faces [shape=note, label=\"{}\\l\"];", legend.join("\\l")).unwrap();
    s.push_str("}\n");
    s
}

pub fn diagram_dot(d: &ChartDiagram) -> String {
    let mut s = String::from("digraph charts {\n  rankdir=LR;\n");
    for v in &d.vertices {
        writeln!(s, "  \"{}\" [shape=box, label=\"{}\\nA3, {}\"];", v.name, v.name, d.function_label(&v.ids)).unwrap();
    }
    for e in &d.edges {
        writeln!(s, "  \"{}\" [label=\"{}\\nGm*A2, {}\"];", e.name, e.name, d.function_label(&e.ids)).unwrap();
    }
    for a in &d.arrows {
        let (v, e) = (d.vertex(a.vertex).unwrap(), d.edge(a.edge).unwrap());
        writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", v.name, e.name, d.arrow_label(a)).unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn quiver_dot(q: &Quiver) -> String {
    let mut s = String::from("digraph quiver {\n");
    for v in 0..q.vertices {
        writeln!(s, "  s{v};").unwrap();
    }
    for (k, &(a, b)) in q.arrows.iter().enumerate() {
        writeln!(s, "  s{a} -> s{b} [label=\"m{k}\"];").unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{dual_tropical_graph, Triangulation};
    use crate::ribbon::theta;

    #[test]
    fn renderings_mention_every_piece() {
        let g = dual_tropical_graph(&Triangulation::dilated_simplex(2)).unwrap().graph;
        let dot = tropical_dot(&g);
        assert_eq!(dot.matches(" -- ").count(), g.finite_edges.len() + g.infinite_edges.len());
        let svg = tropical_svg(&g);
        assert_eq!(svg.matches("<line").count(), 9);
        assert_eq!(svg.matches("<circle").count(), 4);
        let r = ribbon_dot(&theta());
        assert!(r.contains("a: ") && r.contains("cycle"));
        assert!(quiver_dot(&Quiver::kronecker()).contains("s0 -> s1"));
    }

    #[test]
    fn rays_leave_through_the_frame() {
        let b = (0.0, 0.0, 10.0, 10.0);
        assert_eq!(clip((5.0, 5.0), (1.0, 0.0), b), (10.0, 5.0));
        assert_eq!(clip((5.0, 5.0), (-1.0, -1.0), b), (0.0, 0.0));
    }
}
