use std::collections::BTreeMap;

use serde::Serialize;

use super::{EdgeId, FiniteEdge, InfiniteEdge, TropicalError, TropicalGraph};
use crate::geometry::{Point, Rational, Vec2};

/// Local shape at a vertex, by number of incident infinite edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexCase {
    NoInfinite,
    OneInfinite,
    TwoInfinite,
    ThreeInfinite,
}

/// An edge end left noncompact when a vertex is added.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OpenEnd {
    pub edge: EdgeId,
    /// Momentum oriented away from the vertex that owns this end.
    pub momentum: Vec2,
    /// For finite edges: whether the owning vertex is `ends[0]` in storage.
    pub stored_tail: bool,
}

/// One vertex of a sweep decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingStep {
    pub vertex: usize,
    #[serde(serialize_with = "crate::io::ser_point")]
    pub position: Point,
    /// Exact value of `direction . position`.
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub height: Rational,
    /// Finite edges joining this vertex to already placed vertices.
    pub glue_edges: Vec<usize>,
    /// Every other edge end at this vertex.
    pub new_open_edges: Vec<OpenEnd>,
    pub case: VertexCase,
}

fn lex_key(v: Vec2, direction: Vec2) -> (i128, i64, i64) {
    (v.dot(direction), v.x, v.y)
}

/// Order the vertices by a generic linear height and record how each one is
/// attached to the part below it.
///
/// Genericity is simulated by the lexicographic perturbation
/// `(direction . p, p.x, p.y)`, so every direction (including zero) is
/// accepted and the order is total.
pub fn sweep_decompose(
    g: &TropicalGraph,
    direction: Vec2,
) -> Result<Vec<GluingStep>, TropicalError> {
    let inc = g.trivalent_incidences()?;
    let key = |v: usize| {
        let p = g.positions[v];
        (p.project(direction), p.x, p.y)
    };
    let mut order: Vec<usize> = (0..g.num_vertices()).collect();
    order.sort_by(|&a, &b| key(a).cmp(&key(b)).then(a.cmp(&b)));
    let mut rank = vec![0usize; order.len()];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }

    let mut steps = Vec::with_capacity(order.len());
    for &v in &order {
        let mut glue_edges = Vec::new();
        let mut new_open_edges = Vec::new();
        let mut infinite = 0;
        for i in &inc[v] {
            match (i.edge, i.neighbor) {
                (EdgeId::Finite(k), Some(u)) if rank[u] < rank[v] => glue_edges.push(k),
                (edge, _) => {
                    if matches!(edge, EdgeId::Infinite(_)) {
                        infinite += 1;
                    }
                    let stored_tail = match edge {
                        EdgeId::Finite(k) => g.finite_edges[k].ends[0] == v,
                        EdgeId::Infinite(_) => true,
                    };
                    new_open_edges.push(OpenEnd { edge, momentum: i.outgoing, stored_tail });
                }
            }
        }
        // A loop would appear twice; both ends are open at the same vertex.
        glue_edges.sort_unstable();
        let case = match infinite {
            0 => VertexCase::NoInfinite,
            1 => VertexCase::OneInfinite,
            2 => VertexCase::TwoInfinite,
            _ => VertexCase::ThreeInfinite,
        };
        steps.push(GluingStep {
            vertex: v,
            position: g.positions[v],
            height: g.positions[v].project(direction),
            glue_edges,
            new_open_edges,
            case,
        });
    }
    Ok(steps)
}

/// Number of edge ends at a step that point downward under the perturbed
/// height (glued finite edges plus downward infinite edges).
pub fn downward_count(step: &GluingStep, direction: Vec2) -> usize {
    step.glue_edges.len()
        + step
            .new_open_edges
            .iter()
            .filter(|o| {
                matches!(o.edge, EdgeId::Infinite(_)) && lex_key(o.momentum, direction) < (0, 0, 0)
            })
            .count()
}

/// Rebuild a graph from its sweep steps.
pub fn replay(steps: &[GluingStep]) -> Result<TropicalGraph, TropicalError> {
    let nv = steps.iter().map(|s| s.vertex + 1).max().unwrap_or(0);
    let mut positions: Vec<Option<Point>> = vec![None; nv];
    let mut open: BTreeMap<usize, (usize, OpenEnd)> = BTreeMap::new();
    let mut finite: BTreeMap<usize, FiniteEdge> = BTreeMap::new();
    let mut infinite: BTreeMap<usize, InfiniteEdge> = BTreeMap::new();
    let mismatch = |msg: String| TropicalError::ReplayMismatch(msg);

    for s in steps {
        if positions[s.vertex].replace(s.position).is_some() {
            return Err(mismatch(format!("vertex {} placed twice", s.vertex)));
        }
        for &k in &s.glue_edges {
            let (u, end) = open
                .remove(&k)
                .ok_or_else(|| mismatch(format!("edge f{k} glued before it was opened")))?;
            let edge = if end.stored_tail {
                FiniteEdge { ends: [u, s.vertex], momentum: end.momentum }
            } else {
                FiniteEdge { ends: [s.vertex, u], momentum: -end.momentum }
            };
            finite.insert(k, edge);
        }
        for end in &s.new_open_edges {
            match end.edge {
                EdgeId::Finite(k) => {
                    if let Some((u, first)) = open.remove(&k) {
                        // Loop: both ends opened at the same vertex.
                        let (tail, head, m) =
                            if first.stored_tail { (u, s.vertex, first.momentum) } else { (s.vertex, u, end.momentum) };
                        finite.insert(k, FiniteEdge { ends: [tail, head], momentum: m });
                    } else {
                        open.insert(k, (s.vertex, *end));
                    }
                }
                EdgeId::Infinite(j) => {
                    infinite.insert(j, InfiniteEdge { vertex: s.vertex, momentum: end.momentum });
                }
            }
        }
    }
    if let Some(k) = open.keys().next() {
        return Err(mismatch(format!("finite edge f{k} never closed")));
    }
    let positions = positions
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| mismatch(format!("vertex {v} missing"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TropicalGraph {
        positions,
        finite_edges: dense(finite, "finite")?,
        infinite_edges: dense(infinite, "infinite")?,
        convention: None,
    })
}

fn dense<T>(m: BTreeMap<usize, T>, what: &str) -> Result<Vec<T>, TropicalError> {
    let n = m.len();
    if m.keys().copied().eq(0..n) {
        Ok(m.into_values().collect())
    } else {
        Err(TropicalError::ReplayMismatch(format!("{what} edge ids are not contiguous")))
    }
}
