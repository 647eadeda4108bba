//! Labeled chart diagrams: the equalizer diagram of a trivalent planar graph
//! and the Čech diagram of the toric cover of a triangulation.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{DualGraph, LatticeError, Triangulation};
use crate::tropical::{check_embedding, EdgeId, PlanarFaces, TropicalError, TropicalGraph};

#[derive(Debug, Error)]
pub enum ChartError {
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("graph has a loop")]
    Loop,
    #[error("graph is not embedded")]
    NotEmbedded,
    #[error("degenerate chart labels: {0}")]
    Degenerate(String),
    #[error("not a subgraph: {0}")]
    NotSubgraph(String),
}

/// Complementary regions and their local views.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionAssignment {
    pub bounded: Vec<bool>,
    pub vertex_regions: Vec<BTreeSet<usize>>,
    pub edge_regions: BTreeMap<EdgeId, BTreeSet<usize>>,
}

impl RegionAssignment {
    pub fn count(&self) -> usize {
        self.bounded.len()
    }

    pub fn bounded_count(&self) -> usize {
        self.bounded.iter().filter(|&&b| b).count()
    }
}

pub fn regions(g: &TropicalGraph) -> Result<RegionAssignment, ChartError> {
    if !check_embedding(g)?.embedded {
        return Err(ChartError::NotEmbedded);
    }
    let faces = PlanarFaces::trace(g)?;
    Ok(RegionAssignment {
        bounded: faces.regions.iter().map(|r| r.bounded).collect(),
        vertex_regions: faces.sectors.iter().map(|s| s.iter().map(|&(_, r)| r).collect()).collect(),
        edge_regions: g.edge_ids().map(|e| (e, faces.flanking(e).into_iter().collect())).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ChartKind {
    /// `MF(A^3, xyz)`: three coordinates, function their product.
    #[serde(rename = "A3")]
    Affine3,
    /// `MF(G_m x A^2, yz)`: one inverted coordinate, function the product of
    /// the other two.
    #[serde(rename = "Gm*A2")]
    TorusAffine2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagramSide {
    Equalizer,
    Cech,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexObject {
    pub key: usize,
    pub name: String,
    pub ids: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeObject {
    pub key: usize,
    pub name: String,
    pub ids: BTreeSet<usize>,
}

/// Restriction from a vertex chart to an edge chart, inverting `inverted`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub vertex: usize,
    pub edge: usize,
    pub inverted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartDiagram {
    pub side: DiagramSide,
    /// Display names of region or coordinate ids.
    pub id_names: Vec<String>,
    pub vertices: Vec<VertexObject>,
    pub edges: Vec<EdgeObject>,
    pub arrows: Vec<Arrow>,
}

impl ChartDiagram {
    pub fn vertex_kind(&self) -> ChartKind {
        ChartKind::Affine3
    }

    pub fn edge_kind(&self) -> ChartKind {
        ChartKind::TorusAffine2
    }

    fn var(&self, id: usize) -> String {
        format!("t[{}]", self.id_names[id])
    }

    /// Function label of a chart: the product of its variables.
    pub fn function_label(&self, ids: &BTreeSet<usize>) -> String {
        ids.iter().map(|&i| self.var(i)).collect::<Vec<_>>().join("*")
    }

    /// Variable mapping of an arrow.
    pub fn arrow_label(&self, a: &Arrow) -> String {
        let v = self.vertex(a.vertex).expect("arrow source exists");
        let mut parts: Vec<String> =
            v.ids.iter().filter(|&&i| i != a.inverted).map(|&i| format!("{0} -> {0}", self.var(i))).collect();
        parts.push(format!("{} -> u", self.var(a.inverted)));
        parts.join(", ")
    }

    pub fn vertex(&self, key: usize) -> Option<&VertexObject> {
        self.vertices.iter().find(|v| v.key == key)
    }

    pub fn edge(&self, key: usize) -> Option<&EdgeObject> {
        self.edges.iter().find(|e| e.key == key)
    }

    /// Structural invariants: chart sizes, nesting and the inverted variable
    /// of every arrow.
    pub fn check(&self) -> Result<(), ChartError> {
        let bad = |m: String| Err(ChartError::Degenerate(m));
        for v in &self.vertices {
            if v.ids.len() != 3 {
                return bad(format!("vertex {} has {} distinct ids", v.name, v.ids.len()));
            }
        }
        for e in &self.edges {
            if e.ids.len() != 2 {
                return bad(format!("edge {} has {} distinct ids", e.name, e.ids.len()));
            }
        }
        let mut seen = BTreeSet::new();
        for a in &self.arrows {
            let (Some(v), Some(e)) = (self.vertex(a.vertex), self.edge(a.edge)) else {
                return bad(format!("arrow {a:?} has a missing end"));
            };
            let diff: Vec<usize> = v.ids.difference(&e.ids).copied().collect();
            if !e.ids.is_subset(&v.ids) || diff != [a.inverted] {
                return bad(format!("arrow {} -> {} does not invert I - L", v.name, e.name));
            }
            if !seen.insert((a.vertex, a.edge)) {
                return bad(format!("incidence {} -> {} carries two arrows", v.name, e.name));
            }
        }
        Ok(())
    }
}

fn edge_key(g: &TropicalGraph, e: EdgeId) -> usize {
    match e {
        EdgeId::Finite(k) => k,
        EdgeId::Infinite(j) => g.finite_edges.len() + j,
    }
}

/// The equalizer diagram of a loopless trivalent embedded graph.
pub fn build_b_diagram(g: &TropicalGraph) -> Result<ChartDiagram, ChartError> {
    if g.has_loop() {
        return Err(ChartError::Loop);
    }
    let ra = regions(g)?;
    let inc = g.trivalent_incidences()?;
    let vertices = (0..g.num_vertices())
        .map(|v| VertexObject { key: v, name: format!("v{v}"), ids: ra.vertex_regions[v].clone() })
        .collect();
    let edges = g
        .edge_ids()
        .map(|e| EdgeObject { key: edge_key(g, e), name: e.to_string(), ids: ra.edge_regions[&e].clone() })
        .collect();
    let mut arrows = Vec::new();
    for (v, list) in inc.iter().enumerate() {
        for i in list {
            let l = &ra.edge_regions[&i.edge];
            let j = ra.vertex_regions[v].difference(l).copied().next().ok_or_else(|| {
                ChartError::Degenerate(format!("edge {} meets no new region at v{v}", i.edge))
            })?;
            arrows.push(Arrow { vertex: v, edge: edge_key(g, i.edge), inverted: j });
        }
    }
    arrows.sort_unstable();
    let id_names = (0..ra.count()).map(|r| format!("r{r}")).collect();
    let d = ChartDiagram { side: DiagramSide::Equalizer, id_names, vertices, edges, arrows };
    d.check()?;
    Ok(d)
}

/// The Čech diagram of the cover by cones over the triangles; boundary edges
/// contribute one-arrow objects.
pub fn build_cech_diagram(t: &Triangulation) -> Result<ChartDiagram, ChartError> {
    let charts = crate::lattice::fan_charts(t)?;
    let vertices = charts
        .charts
        .iter()
        .map(|c| VertexObject { key: c.triangle, name: format!("T{}", c.triangle), ids: c.coordinates.into_iter().collect() })
        .collect();
    let mut edges = Vec::new();
    let mut arrows = Vec::new();
    for (key, (&(a, b), sides)) in t.edge_census().iter().enumerate() {
        edges.push(EdgeObject { key, name: format!("[{a},{b}]"), ids: BTreeSet::from([a, b]) });
        for &(tri, _) in sides {
            let opposite = t.triangles()[tri].into_iter().find(|&p| p != a && p != b).expect("triangle has three points");
            arrows.push(Arrow { vertex: tri, edge: key, inverted: opposite });
        }
    }
    arrows.sort_unstable();
    let id_names = t.points().iter().map(|p| format!("{},{}", p.x, p.y)).collect();
    let d = ChartDiagram { side: DiagramSide::Cech, id_names, vertices, edges, arrows };
    d.check()?;
    Ok(d)
}

/// A candidate isomorphism between two diagrams, by object keys and ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramMapping {
    pub vertices: BTreeMap<usize, usize>,
    pub edges: BTreeMap<usize, usize>,
    pub ids: BTreeMap<usize, usize>,
    /// Whether the mapping came from the supplied hint.
    pub canonical: bool,
}

/// Why two diagrams are not isomorphic, or why a mapping fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub witness: String,
}

fn image(ids: &BTreeSet<usize>, m: &BTreeMap<usize, usize>) -> Option<BTreeSet<usize>> {
    ids.iter().map(|i| m.get(i).copied()).collect()
}

fn is_bijection(m: &BTreeMap<usize, usize>, n: usize) -> bool {
    m.len() == n && m.values().collect::<BTreeSet<_>>().len() == n
}

/// Check that `m` maps `d1` onto `d2` preserving all labels.
pub fn verify_mapping(d1: &ChartDiagram, d2: &ChartDiagram, m: &DiagramMapping) -> Result<(), Discrepancy> {
    let fail = |w: String| Err(Discrepancy { witness: w });
    if !is_bijection(&m.vertices, d1.vertices.len()) || d1.vertices.len() != d2.vertices.len() {
        return fail("vertex map is not a bijection".into());
    }
    if !is_bijection(&m.edges, d1.edges.len()) || d1.edges.len() != d2.edges.len() {
        return fail("edge map is not a bijection".into());
    }
    if !is_bijection(&m.ids, d1.id_names.len()) || d1.id_names.len() != d2.id_names.len() {
        return fail("id renaming is not a bijection".into());
    }
    for v in &d1.vertices {
        let w = m.vertices.get(&v.key).and_then(|k| d2.vertex(*k));
        if w.map(|w| &w.ids) != image(&v.ids, &m.ids).as_ref() {
            return fail(format!("vertex {} has different chart ids", v.name));
        }
    }
    for e in &d1.edges {
        let f = m.edges.get(&e.key).and_then(|k| d2.edge(*k));
        if f.map(|f| &f.ids) != image(&e.ids, &m.ids).as_ref() {
            return fail(format!("edge {} has different chart ids", e.name));
        }
    }
    let mut mapped: Vec<Arrow> = d1
        .arrows
        .iter()
        .map(|a| Arrow { vertex: m.vertices[&a.vertex], edge: m.edges[&a.edge], inverted: m.ids[&a.inverted] })
        .collect();
    mapped.sort_unstable();
    if mapped != d2.arrows {
        return fail("restriction arrows differ".into());
    }
    Ok(())
}

/// The bijection triangle to dual vertex, boundary point to region, for a
/// dual graph compared with its triangulation.
pub fn canonical_mapping(dual: &DualGraph, t: &Triangulation, b: &ChartDiagram, c: &ChartDiagram) -> DiagramMapping {
    let census: Vec<(usize, usize)> = t.edge_census().keys().copied().collect();
    let g = &dual.graph;
    let edges: BTreeMap<usize, usize> = g
        .edge_ids()
        .filter_map(|e| census.binary_search(&dual.primal_of(e)).ok().map(|k| (edge_key(g, e), k)))
        .collect();
    let mut ids = BTreeMap::new();
    for a in &b.arrows {
        if let Some(&k) = edges.get(&a.edge) {
            if let Some(ca) = c.arrows.iter().find(|x| x.vertex == a.vertex && x.edge == k) {
                ids.insert(a.inverted, ca.inverted);
            }
        }
    }
    DiagramMapping { vertices: (0..g.num_vertices()).map(|v| (v, v)).collect(), edges, ids, canonical: true }
}

/// Find an isomorphism, trying `hint` first and then a backtracking search
/// over vertex images with incremental id renaming.
pub fn diagram_isomorphic(
    d1: &ChartDiagram,
    d2: &ChartDiagram,
    hint: Option<&DiagramMapping>,
) -> Result<DiagramMapping, Discrepancy> {
    let counts = |d: &ChartDiagram| (d.vertices.len(), d.edges.len(), d.arrows.len(), d.id_names.len());
    if counts(d1) != counts(d2) {
        let (a, b) = (counts(d1), counts(d2));
        return Err(Discrepancy {
            witness: format!(
                "object counts differ: {} vs {} vertex objects, {} vs {} edge objects, {} vs {} arrows",
                a.0, b.0, a.1, b.1, a.2, b.2
            ),
        });
    }
    if let Some(h) = hint {
        if verify_mapping(d1, d2, h).is_ok() {
            return Ok(h.clone());
        }
    }
    Search::new(d1, d2).run().ok_or_else(|| Discrepancy { witness: "no label-preserving bijection exists".into() })
}

struct Search<'a> {
    d1: &'a ChartDiagram,
    d2: &'a ChartDiagram,
    order: Vec<usize>,
    degree1: BTreeMap<usize, usize>,
    degree2: BTreeMap<usize, usize>,
}

impl<'a> Search<'a> {
    fn new(d1: &'a ChartDiagram, d2: &'a ChartDiagram) -> Self {
        let degree = |d: &ChartDiagram| {
            let mut m: BTreeMap<usize, usize> = d.vertices.iter().map(|v| (v.key, 0)).collect();
            for a in &d.arrows {
                *m.get_mut(&a.vertex).unwrap() += 1;
            }
            m
        };
        // breadth-first over shared edge objects, so ids get pinned early
        let mut by_edge: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for a in &d1.arrows {
            by_edge.entry(a.edge).or_default().push(a.vertex);
        }
        let mut order = Vec::new();
        let mut seen = BTreeSet::new();
        for v in &d1.vertices {
            if !seen.insert(v.key) {
                continue;
            }
            let mut queue = std::collections::VecDeque::from([v.key]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for a in d1.arrows.iter().filter(|a| a.vertex == u) {
                    for &w in &by_edge[&a.edge] {
                        if seen.insert(w) {
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        Search { d1, d2, order, degree1: degree(d1), degree2: degree(d2) }
    }

    fn run(&self) -> Option<DiagramMapping> {
        let mut vm = BTreeMap::new();
        let mut ids = BTreeMap::new();
        self.extend(0, &mut vm, &mut ids)
    }

    fn extend(
        &self,
        k: usize,
        vm: &mut BTreeMap<usize, usize>,
        ids: &mut BTreeMap<usize, usize>,
    ) -> Option<DiagramMapping> {
        if k == self.order.len() {
            return self.finish(vm, ids);
        }
        let v = self.d1.vertex(self.order[k]).unwrap();
        let used: BTreeSet<usize> = vm.values().copied().collect();
        for w in &self.d2.vertices {
            if used.contains(&w.key) || self.degree1[&v.key] != self.degree2[&w.key] {
                continue;
            }
            let src: Vec<usize> = v.ids.iter().copied().collect();
            let dst: Vec<usize> = w.ids.iter().copied().collect();
            for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                let mut added = Vec::new();
                let ok = src.iter().zip(perm).all(|(&s, p)| {
                    let t = dst[p];
                    match ids.get(&s) {
                        Some(&x) => x == t,
                        None if ids.values().any(|&x| x == t) => false,
                        None => {
                            ids.insert(s, t);
                            added.push(s);
                            true
                        }
                    }
                });
                if ok {
                    vm.insert(v.key, w.key);
                    if let Some(m) = self.extend(k + 1, vm, ids) {
                        return Some(m);
                    }
                    vm.remove(&v.key);
                }
                for s in added {
                    ids.remove(&s);
                }
            }
        }
        None
    }

    /// Match edge objects by (image of arrow sources, image of ids).
    fn finish(&self, vm: &BTreeMap<usize, usize>, ids: &BTreeMap<usize, usize>) -> Option<DiagramMapping> {
        if ids.len() != self.d1.id_names.len() {
            return None;
        }
        type Signature = (Vec<(usize, usize)>, BTreeSet<usize>);
        let signature = |d: &ChartDiagram, e: &EdgeObject, vmap: &dyn Fn(usize) -> usize, imap: &dyn Fn(usize) -> usize| -> Signature {
            let mut s: Vec<(usize, usize)> =
                d.arrows.iter().filter(|a| a.edge == e.key).map(|a| (vmap(a.vertex), imap(a.inverted))).collect();
            s.sort_unstable();
            (s, e.ids.iter().map(|&i| imap(i)).collect())
        };
        let mut pool: BTreeMap<Signature, Vec<usize>> = BTreeMap::new();
        for e in &self.d2.edges {
            pool.entry(signature(self.d2, e, &|v| v, &|i| i)).or_default().push(e.key);
        }
        let mut edges = BTreeMap::new();
        for e in &self.d1.edges {
            let sig = signature(self.d1, e, &|v| vm[&v], &|i| ids[&i]);
            let k = pool.get_mut(&sig)?.pop()?;
            edges.insert(e.key, k);
        }
        let m = DiagramMapping { vertices: vm.clone(), edges, ids: ids.clone(), canonical: false };
        verify_mapping(self.d1, self.d2, &m).ok().map(|_| m)
    }
}

/// A subgraph in the sense used for restriction: every edge meeting a
/// chosen vertex is chosen too.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramSubgraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
}

impl DiagramSubgraph {
    pub fn whole(d: &ChartDiagram) -> Self {
        DiagramSubgraph {
            vertices: d.vertices.iter().map(|v| v.key).collect(),
            edges: d.edges.iter().map(|e| e.key).collect(),
        }
    }

    /// A vertex with all its edges.
    pub fn star(d: &ChartDiagram, v: usize) -> Self {
        DiagramSubgraph {
            vertices: BTreeSet::from([v]),
            edges: d.arrows.iter().filter(|a| a.vertex == v).map(|a| a.edge).collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        DiagramSubgraph {
            vertices: self.vertices.intersection(&other.vertices).copied().collect(),
            edges: self.edges.intersection(&other.edges).copied().collect(),
        }
    }
}

/// The full sub-diagram on a subgraph's objects.
pub fn restrict_diagram(d: &ChartDiagram, sub: &DiagramSubgraph) -> Result<ChartDiagram, ChartError> {
    for &v in &sub.vertices {
        if d.vertex(v).is_none() {
            return Err(ChartError::NotSubgraph(format!("no vertex object {v}")));
        }
    }
    for &e in &sub.edges {
        if d.edge(e).is_none() {
            return Err(ChartError::NotSubgraph(format!("no edge object {e}")));
        }
    }
    if let Some(a) = d.arrows.iter().find(|a| sub.vertices.contains(&a.vertex) && !sub.edges.contains(&a.edge)) {
        return Err(ChartError::NotSubgraph(format!(
            "edge {} meets vertex {} but is missing",
            d.edge(a.edge).unwrap().name,
            d.vertex(a.vertex).unwrap().name
        )));
    }
    Ok(ChartDiagram {
        side: d.side,
        id_names: d.id_names.clone(),
        vertices: d.vertices.iter().filter(|v| sub.vertices.contains(&v.key)).cloned().collect(),
        edges: d.edges.iter().filter(|e| sub.edges.contains(&e.key)).cloned().collect(),
        arrows: d.arrows.iter().filter(|a| sub.vertices.contains(&a.vertex)).copied().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec2;
    use crate::lattice::dual_tropical_graph;

    fn two() -> Triangulation {
        let v = Vec2::new;
        Triangulation::new(vec![v(0, 0), v(1, 0), v(0, 1), v(1, 1)], vec![[0, 1, 2], [1, 3, 2]], None).unwrap()
    }

    #[test]
    fn unit_triangle_diagrams() {
        let t = Triangulation::dilated_simplex(1);
        let dual = dual_tropical_graph(&t).unwrap();
        let ra = regions(&dual.graph).unwrap();
        assert_eq!((ra.count(), ra.bounded_count()), (3, 0));
        let b = build_b_diagram(&dual.graph).unwrap();
        assert_eq!((b.vertices.len(), b.edges.len(), b.arrows.len()), (1, 3, 3));
        let c = build_cech_diagram(&t).unwrap();
        assert_eq!((c.vertices.len(), c.edges.len()), (1, 3));
        let m = diagram_isomorphic(&b, &c, Some(&canonical_mapping(&dual, &t, &b, &c))).unwrap();
        assert!(m.canonical);
    }

    #[test]
    fn two_triangle_diagrams() {
        let t = two();
        let dual = dual_tropical_graph(&t).unwrap();
        let ra = regions(&dual.graph).unwrap();
        assert_eq!(ra.count(), 4);
        let shared = &ra.edge_regions[&EdgeId::Finite(0)];
        assert!(ra.vertex_regions.iter().all(|iv| shared.is_subset(iv)));

        let b = build_b_diagram(&dual.graph).unwrap();
        assert_eq!((b.vertices.len(), b.edges.len()), (2, 5));
        let into = |k: usize| b.arrows.iter().filter(|a| a.edge == k).count();
        assert_eq!(into(0), 2);
        assert!((1..5).all(|k| into(k) == 1));

        let c = build_cech_diagram(&t).unwrap();
        let mid = c.edges.iter().find(|e| e.ids == BTreeSet::from([1, 2])).unwrap();
        let inv: BTreeSet<usize> = c.arrows.iter().filter(|a| a.edge == mid.key).map(|a| a.inverted).collect();
        assert_eq!(inv, BTreeSet::from([0, 3]));

        assert!(diagram_isomorphic(&b, &c, Some(&canonical_mapping(&dual, &t, &b, &c))).unwrap().canonical);
        let searched = diagram_isomorphic(&b, &c, None).unwrap();
        assert!(!searched.canonical);
        assert!(verify_mapping(&b, &c, &searched).is_ok());
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let a = build_cech_diagram(&Triangulation::dilated_simplex(1)).unwrap();
        let b = build_cech_diagram(&two()).unwrap();
        let e = diagram_isomorphic(&a, &b, None).unwrap_err();
        assert!(e.witness.contains("object counts differ"));
    }

    #[test]
    fn second_dilate_census() {
        let c = build_cech_diagram(&Triangulation::dilated_simplex(2)).unwrap();
        assert_eq!(c.vertices.len(), 4);
        let interior = c.edges.iter().filter(|e| c.arrows.iter().filter(|a| a.edge == e.key).count() == 2).count();
        assert_eq!((interior, c.edges.len() - interior), (3, 6));
    }

    #[test]
    fn loops_are_rejected() {
        let mut g = dual_tropical_graph(&two()).unwrap().graph;
        g.finite_edges[0].ends = [0, 0];
        assert!(matches!(build_b_diagram(&g), Err(ChartError::Loop)));
    }

    #[test]
    fn restriction() {
        let dual = dual_tropical_graph(&two()).unwrap();
        let b = build_b_diagram(&dual.graph).unwrap();
        assert_eq!(restrict_diagram(&b, &DiagramSubgraph::whole(&b)).unwrap(), b);
        let star = restrict_diagram(&b, &DiagramSubgraph::star(&b, 0)).unwrap();
        assert_eq!((star.vertices.len(), star.edges.len(), star.arrows.len()), (1, 3, 3));
        let unit = build_b_diagram(&dual_tropical_graph(&Triangulation::dilated_simplex(1)).unwrap().graph).unwrap();
        let shape = |d: &ChartDiagram| (d.vertices.len(), d.edges.len(), d.arrows.len());
        assert_eq!(shape(&star), shape(&unit));

        let bad = DiagramSubgraph { vertices: BTreeSet::from([0]), edges: BTreeSet::new() };
        assert!(matches!(restrict_diagram(&b, &bad), Err(ChartError::NotSubgraph(_))));
    }

    #[test]
    fn nested_restrictions_compose() {
        let t = Triangulation::dilated_simplex(2);
        let b = build_b_diagram(&dual_tropical_graph(&t).unwrap().graph).unwrap();
        let s1 = DiagramSubgraph::whole(&b);
        let mut s2 = DiagramSubgraph::star(&b, 0);
        s2.vertices.extend(DiagramSubgraph::star(&b, 1).vertices);
        s2.edges.extend(DiagramSubgraph::star(&b, 1).edges);
        let s3 = DiagramSubgraph::star(&b, 1);
        let once = restrict_diagram(&b, &s2.intersection(&s3)).unwrap();
        let twice = restrict_diagram(&restrict_diagram(&restrict_diagram(&b, &s1).unwrap(), &s2).unwrap(), &s3).unwrap();
        assert_eq!(once, twice);
    }
}
