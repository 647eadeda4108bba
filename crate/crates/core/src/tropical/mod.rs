//! Balanced, nondegenerate trivalent tropical graphs with a straight-line
//! planar embedding.
//!
//! A [`TropicalGraph`] stores vertex positions exactly, finite edges with the
//! momentum of a reference orientation (`ends[0] -> ends[1]`), and infinite
//! edges with the momentum of the outgoing orientation. Reversing an
//! orientation negates the momentum, so only one value is stored per edge.

mod planar;
mod sweep;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{angle_cmp, intersect, Meet, Piece, Point, Vec2};

pub use planar::{PlanarFaces, Region};
pub use sweep::{downward_count, replay, sweep_decompose, GluingStep, OpenEnd, VertexCase};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("vertex {vertex} has valency {valency}, expected 3")]
    NotTrivalent { vertex: usize, valency: usize },
    #[error("edge {0} refers to a vertex that does not exist")]
    DanglingEdge(EdgeId),
    #[error("edge {0} has zero momentum")]
    ZeroMomentum(EdgeId),
    #[error("graph is not embedded: {0}")]
    NotEmbedded(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("sweep replay failed: {0}")]
    ReplayMismatch(String),
}

/// Identifies an edge of a tropical graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeId {
    Finite(usize),
    Infinite(usize),
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeId::Finite(i) => write!(f, "f{i}"),
            EdgeId::Infinite(i) => write!(f, "i{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteEdge {
    pub ends: [usize; 2],
    /// Momentum of the orientation `ends[0] -> ends[1]`.
    pub momentum: Vec2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InfiniteEdge {
    pub vertex: usize,
    /// Momentum of the orientation pointing away from `vertex`.
    pub momentum: Vec2,
}

/// An edge end at a vertex: which edge, and its outgoing momentum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub edge: EdgeId,
    pub outgoing: Vec2,
    /// The vertex at the other end, for finite edges.
    pub neighbor: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TropicalGraph {
    pub positions: Vec<Point>,
    pub finite_edges: Vec<FiniteEdge>,
    pub infinite_edges: Vec<InfiniteEdge>,
    /// Free-form provenance note, e.g. the momentum convention used by the
    /// dual-graph construction.
    pub convention: Option<String>,
}

impl TropicalGraph {
    pub fn num_vertices(&self) -> usize {
        self.positions.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.finite_edges.len())
            .map(EdgeId::Finite)
            .chain((0..self.infinite_edges.len()).map(EdgeId::Infinite))
    }

    /// Momentum of `edge` oriented away from `vertex`.
    pub fn outgoing(&self, edge: EdgeId, vertex: usize) -> Option<Vec2> {
        match edge {
            EdgeId::Finite(i) => {
                let e = self.finite_edges.get(i)?;
                if e.ends[0] == vertex {
                    Some(e.momentum)
                } else if e.ends[1] == vertex {
                    Some(-e.momentum)
                } else {
                    None
                }
            }
            EdgeId::Infinite(i) => {
                let e = self.infinite_edges.get(i)?;
                (e.vertex == vertex).then_some(e.momentum)
            }
        }
    }

    /// Edge ends at every vertex, in storage order. A finite loop contributes
    /// two incidences at its vertex.
    pub fn incidences(&self) -> Result<Vec<Vec<Incidence>>, TropicalError> {
        let n = self.num_vertices();
        let mut inc: Vec<Vec<Incidence>> = vec![Vec::new(); n];
        for (i, e) in self.finite_edges.iter().enumerate() {
            let id = EdgeId::Finite(i);
            if e.ends.iter().any(|&v| v >= n) {
                return Err(TropicalError::DanglingEdge(id));
            }
            inc[e.ends[0]].push(Incidence { edge: id, outgoing: e.momentum, neighbor: Some(e.ends[1]) });
            inc[e.ends[1]].push(Incidence { edge: id, outgoing: -e.momentum, neighbor: Some(e.ends[0]) });
        }
        for (i, e) in self.infinite_edges.iter().enumerate() {
            let id = EdgeId::Infinite(i);
            if e.vertex >= n {
                return Err(TropicalError::DanglingEdge(id));
            }
            inc[e.vertex].push(Incidence { edge: id, outgoing: e.momentum, neighbor: None });
        }
        Ok(inc)
    }

    /// Incidences, failing unless every vertex is trivalent.
    pub fn trivalent_incidences(&self) -> Result<Vec<Vec<Incidence>>, TropicalError> {
        let inc = self.incidences()?;
        if let Some((v, list)) = inc.iter().enumerate().find(|(_, l)| l.len() != 3) {
            return Err(TropicalError::NotTrivalent { vertex: v, valency: list.len() });
        }
        Ok(inc)
    }

    pub fn has_loop(&self) -> bool {
        self.finite_edges.iter().any(|e| e.ends[0] == e.ends[1])
    }

    /// Connected components as a vertex -> component index map.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.finite_edges {
            let (a, b) = (find(&mut parent, e.ends[0]), find(&mut parent, e.ends[1]));
            if a != b {
                parent[a] = b;
            }
        }
        let mut ids = BTreeMap::new();
        let comp: Vec<usize> = (0..n)
            .map(|v| {
                let r = find(&mut parent, v);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect();
        (ids.len(), comp)
    }
}

/// Per-vertex inward momentum sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub balanced: bool,
    pub inward_sums: Vec<Vec2>,
}

pub fn check_balanced(g: &TropicalGraph) -> Result<BalanceReport, TropicalError> {
    let inc = g.trivalent_incidences()?;
    let inward_sums: Vec<Vec2> = inc
        .iter()
        .map(|list| list.iter().fold(Vec2::ZERO, |acc, i| acc - i.outgoing))
        .collect();
    Ok(BalanceReport { balanced: inward_sums.iter().all(|s| s.is_zero()), inward_sums })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexNondegeneracy {
    /// All incident momenta pairwise proportional (the failure condition).
    pub all_proportional: bool,
    /// Whether the incident momenta generate `Z^2` as a lattice.
    pub spans_lattice: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NondegeneracyReport {
    pub nondegenerate: bool,
    pub vertices: Vec<VertexNondegeneracy>,
}

pub fn check_nondegenerate(g: &TropicalGraph) -> Result<NondegeneracyReport, TropicalError> {
    let inc = g.trivalent_incidences()?;
    let vertices: Vec<VertexNondegeneracy> = inc
        .iter()
        .map(|list| {
            let moms: Vec<Vec2> = list.iter().map(|i| i.outgoing).collect();
            let mut gcd: i128 = 0;
            let mut all_proportional = true;
            for a in 0..moms.len() {
                for b in a + 1..moms.len() {
                    let c = moms[a].cross(moms[b]);
                    if c != 0 {
                        all_proportional = false;
                    }
                    gcd = num_integer::gcd(gcd, c);
                }
            }
            VertexNondegeneracy { all_proportional, spans_lattice: gcd == 1 }
        })
        .collect();
    Ok(NondegeneracyReport {
        nondegenerate: vertices.iter().all(|v| !v.all_proportional),
        vertices,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub embedded: bool,
    /// Finite edges whose drawn direction is not positively proportional to
    /// their momentum.
    pub direction_violations: Vec<EdgeId>,
    /// Pairs of edges meeting somewhere other than a shared endpoint.
    pub crossings: Vec<(EdgeId, EdgeId)>,
}

fn piece_of(g: &TropicalGraph, id: EdgeId) -> Piece {
    match id {
        EdgeId::Finite(i) => {
            let e = g.finite_edges[i];
            Piece::segment(g.positions[e.ends[0]], g.positions[e.ends[1]])
        }
        EdgeId::Infinite(i) => {
            let e = g.infinite_edges[i];
            Piece::ray(g.positions[e.vertex], e.momentum)
        }
    }
}

fn endpoints(g: &TropicalGraph, id: EdgeId) -> Vec<usize> {
    match id {
        EdgeId::Finite(i) => g.finite_edges[i].ends.to_vec(),
        EdgeId::Infinite(i) => vec![g.infinite_edges[i].vertex],
    }
}

fn momentum_of(g: &TropicalGraph, id: EdgeId) -> Vec2 {
    match id {
        EdgeId::Finite(i) => g.finite_edges[i].momentum,
        EdgeId::Infinite(i) => g.infinite_edges[i].momentum,
    }
}

pub fn check_embedding(g: &TropicalGraph) -> Result<EmbeddingReport, TropicalError> {
    g.incidences()?;
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    if let Some(&id) = ids.iter().find(|&&id| momentum_of(g, id).is_zero()) {
        return Err(TropicalError::ZeroMomentum(id));
    }
    let mut direction_violations = Vec::new();
    for (i, e) in g.finite_edges.iter().enumerate() {
        let (a, b) = (g.positions[e.ends[0]], g.positions[e.ends[1]]);
        let dx = b.x - a.x;
        let dy = b.y - a.y;
        let (px, py) = (e.momentum.x as i128, e.momentum.y as i128);
        let cross = dx * py - dy * px;
        let dot = dx * px + dy * py;
        if cross != 0.into() || dot <= 0.into() {
            direction_violations.push(EdgeId::Finite(i));
        }
    }
    let pieces: Vec<Piece> = ids.iter().map(|&id| piece_of(g, id)).collect();
    let mut crossings = Vec::new();
    for a in 0..ids.len() {
        if direction_violations.contains(&ids[a]) {
            continue;
        }
        for b in a + 1..ids.len() {
            if direction_violations.contains(&ids[b]) {
                continue;
            }
            let shared: Vec<usize> = {
                let ea = endpoints(g, ids[a]);
                let eb = endpoints(g, ids[b]);
                ea.into_iter().filter(|v| eb.contains(v)).collect()
            };
            let ok = match intersect(&pieces[a], &pieces[b]) {
                Meet::Disjoint => true,
                Meet::Overlap => false,
                Meet::Point(p) => {
                    // Allowed only at a shared endpoint. Two parallel edges
                    // between the same pair of vertices meet along a segment
                    // and are reported as an overlap above.
                    shared.iter().any(|&v| g.positions[v] == p) && shared.len() == 1
                }
            };
            if !ok {
                crossings.push((ids[a], ids[b]));
            }
        }
    }
    Ok(EmbeddingReport {
        embedded: direction_violations.is_empty() && crossings.is_empty(),
        direction_violations,
        crossings,
    })
}

/// Infinite-edge census with the maximum-principle consistency flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfiniteEdgeCount {
    pub count: usize,
    /// `count >= 2`; a balanced nondegenerate graph can never violate this.
    pub consistent: bool,
}

pub fn infinite_edge_count(g: &TropicalGraph) -> InfiniteEdgeCount {
    let count = g.infinite_edges.len();
    InfiniteEdgeCount { count, consistent: count >= 2 }
}

/// Genus (bounded complementary regions) and punctures (infinite edges).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorInvariants {
    pub genus: usize,
    pub punctures: usize,
}

pub fn mirror_invariants(g: &TropicalGraph) -> Result<MirrorInvariants, TropicalError> {
    let faces = PlanarFaces::trace(g)?;
    Ok(MirrorInvariants { genus: faces.bounded_count(), punctures: g.infinite_edges.len() })
}

/// First Betti number `E_finite - V + components`.
pub fn first_betti_number(g: &TropicalGraph) -> usize {
    let (c, _) = g.components();
    g.finite_edges.len() + c - g.num_vertices()
}

/// Diagnostic: delete `v0` (which must carry one or two infinite edges)
/// together with its infinite edges, and report whether the remaining graph
/// still has an infinite edge that was not incident to `v0`.
pub fn deletion_keeps_foreign_infinite_edge(g: &TropicalGraph, v0: usize) -> Option<bool> {
    let own = g.infinite_edges.iter().filter(|e| e.vertex == v0).count();
    if own == 0 || own == 3 {
        return None;
    }
    Some(g.infinite_edges.iter().any(|e| e.vertex != v0))
}

/// All graph-level validators in one pass, for pipelines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TropicalValidation {
    pub balanced: BalanceReport,
    pub nondegenerate: NondegeneracyReport,
    pub embedding: EmbeddingReport,
    pub infinite_edges: InfiniteEdgeCount,
}

impl TropicalValidation {
    pub fn ok(&self) -> bool {
        self.balanced.balanced
            && self.nondegenerate.nondegenerate
            && self.embedding.embedded
            && self.infinite_edges.consistent
    }
}

pub fn validate(g: &TropicalGraph) -> Result<TropicalValidation, TropicalError> {
    if g.num_vertices() == 0 {
        return Err(TropicalError::Empty);
    }
    Ok(TropicalValidation {
        balanced: check_balanced(g)?,
        nondegenerate: check_nondegenerate(g)?,
        embedding: check_embedding(g)?,
        infinite_edges: infinite_edge_count(g),
    })
}

/// Counterclockwise angular order of the edge ends at each vertex.
pub(crate) fn rotation_system(g: &TropicalGraph) -> Result<Vec<Vec<Incidence>>, TropicalError> {
    let mut inc = g.incidences()?;
    for list in inc.iter_mut() {
        list.sort_by(|a, b| angle_cmp(a.outgoing, b.outgoing));
    }
    Ok(inc)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn star(moms: [Vec2; 3]) -> TropicalGraph {
        TropicalGraph {
            positions: vec![Point::from_ints(0, 0)],
            finite_edges: vec![],
            infinite_edges: moms.iter().map(|&m| InfiniteEdge { vertex: 0, momentum: m }).collect(),
            convention: None,
        }
    }

    #[test]
    fn balanced_star() {
        let g = star([Vec2::new(0, -1), Vec2::new(1, 1), Vec2::new(-1, 0)]);
        assert!(check_balanced(&g).unwrap().balanced);
        let nd = check_nondegenerate(&g).unwrap();
        assert!(nd.nondegenerate);
        assert!(nd.vertices[0].spans_lattice);
    }

    #[test]
    fn unbalanced_star_reports_sum() {
        let g = star([Vec2::new(1, 0), Vec2::new(0, 1), Vec2::new(0, -1)]);
        let r = check_balanced(&g).unwrap();
        assert!(!r.balanced);
        // outward sum (1,0), inward is its negation
        assert_eq!(r.inward_sums[0], Vec2::new(-1, 0));
    }

    #[test]
    fn degenerate_star() {
        let g = star([Vec2::new(1, 0), Vec2::new(-2, 0), Vec2::new(1, 0)]);
        assert!(!check_nondegenerate(&g).unwrap().nondegenerate);
    }

    #[test]
    fn proportional_and_span_can_differ() {
        // (2,0),(0,2),(-2,-2): not proportional, but only spans 2Z^2.
        let g = star([Vec2::new(2, 0), Vec2::new(0, 2), Vec2::new(-2, -2)]);
        let nd = check_nondegenerate(&g).unwrap();
        assert!(nd.nondegenerate);
        assert!(!nd.vertices[0].spans_lattice);
    }

    #[test]
    fn non_trivalent_is_structural_error() {
        let mut g = star([Vec2::new(0, -1), Vec2::new(1, 1), Vec2::new(-1, 0)]);
        g.infinite_edges.pop();
        assert_eq!(
            check_balanced(&g),
            Err(TropicalError::NotTrivalent { vertex: 0, valency: 2 })
        );
    }

    #[test]
    fn crossing_rays_rejected() {
        // Two stars whose rays cross.
        let g = TropicalGraph {
            positions: vec![Point::from_ints(0, 0), Point::from_ints(5, -1)],
            finite_edges: vec![],
            infinite_edges: vec![
                InfiniteEdge { vertex: 0, momentum: Vec2::new(1, 0) },
                InfiniteEdge { vertex: 0, momentum: Vec2::new(0, 1) },
                InfiniteEdge { vertex: 0, momentum: Vec2::new(-1, -1) },
                InfiniteEdge { vertex: 1, momentum: Vec2::new(0, 1) },
                InfiniteEdge { vertex: 1, momentum: Vec2::new(1, 0) },
                InfiniteEdge { vertex: 1, momentum: Vec2::new(-1, -1) },
            ],
            convention: None,
        };
        let r = check_embedding(&g).unwrap();
        assert!(!r.embedded);
        assert!(r.crossings.contains(&(EdgeId::Infinite(0), EdgeId::Infinite(3))));
    }

    #[test]
    fn zero_momentum_rejected() {
        let g = star([Vec2::new(0, 0), Vec2::new(1, 1), Vec2::new(-1, -1)]);
        assert_eq!(check_embedding(&g), Err(TropicalError::ZeroMomentum(EdgeId::Infinite(0))));
    }

    #[test]
    fn wrong_direction_flagged() {
        let g = TropicalGraph {
            positions: vec![Point::from_ints(0, 0), Point::from_ints(1, 1)],
            finite_edges: vec![FiniteEdge { ends: [0, 1], momentum: Vec2::new(-1, -1) }],
            infinite_edges: vec![],
            convention: None,
        };
        let r = check_embedding(&g).unwrap();
        assert_eq!(r.direction_violations, vec![EdgeId::Finite(0)]);
    }
}
