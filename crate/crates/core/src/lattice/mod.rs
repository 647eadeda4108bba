//! Lattice polygons, unimodular triangulations, and what they determine:
//! the dual tropical curve and the toric chart census of the fan.

mod random;
mod realize;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{angle_cmp, det3, Point, Vec2};
use crate::tropical::{EdgeId, FiniteEdge, InfiniteEdge, TropicalGraph};

pub use random::{random_triangulation, RandomTriangulationConfig};

/// Recorded on every dual graph produced here.
pub const MOMENTUM_CONVENTION: &str =
    "momentum of the dual edge = clockwise quarter-turn (x,y)->(y,-x) of the primal edge traversed counterclockwise around the triangle it leaves";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("need at least three non-collinear points")]
    Degenerate,
    #[error("polygon is not strictly convex and counterclockwise at vertex {0}")]
    NotConvex(usize),
    #[error("triangle {triangle} refers to point {index}, but only {len} points exist")]
    IndexOutOfRange { triangle: usize, index: usize, len: usize },
    #[error("triangle {0} repeats a point")]
    RepeatedIndex(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("triangulation is invalid: {0}")]
    Invalid(String),
    #[error("triangulation is not regular: no convex height function exists, so it has no tropical realization")]
    NotRegular,
    #[error("height function overflows 64-bit coordinates")]
    Overflow,
}

/// A convex lattice polygon, vertices counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePolytope {
    vertices: Vec<Vec2>,
}

impl LatticePolytope {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self, LatticeError> {
        let n = vertices.len();
        if n < 3 {
            return Err(LatticeError::Degenerate);
        }
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if det3(a, b, c) <= 0 {
                return Err(LatticeError::NotConvex((i + 1) % n));
            }
        }
        // All left turns plus edge directions wrapping around exactly once
        // rules out star polygons.
        let dirs: Vec<Vec2> = (0..n).map(|i| vertices[(i + 1) % n] - vertices[i]).collect();
        let wraps = (0..n)
            .filter(|&i| angle_cmp(dirs[(i + 1) % n], dirs[i]) != std::cmp::Ordering::Greater)
            .count();
        if wraps != 1 {
            return Err(LatticeError::NotConvex(0));
        }
        Ok(LatticePolytope { vertices })
    }

    /// Convex hull (monotone chain), dropping collinear boundary points.
    pub fn convex_hull(points: &[Vec2]) -> Result<Self, LatticeError> {
        let mut pts: Vec<Vec2> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(LatticeError::Degenerate);
        }
        let mut hull: Vec<Vec2> = Vec::new();
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &Vec2>> =
                if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
            for &p in iter {
                while hull.len() >= start + 2
                    && det3(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
                {
                    hull.pop();
                }
                hull.push(p);
            }
            hull.pop();
        }
        if hull.len() < 3 {
            return Err(LatticeError::Degenerate);
        }
        LatticePolytope::new(hull)
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Closed containment.
    pub fn contains(&self, p: Vec2) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| det3(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0)
    }

    pub fn double_area(&self) -> i128 {
        let n = self.vertices.len();
        (0..n).map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n])).sum()
    }

    /// Number of primitive lattice segments on the boundary.
    pub fn boundary_segments(&self) -> usize {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let d = self.vertices[(i + 1) % n] - self.vertices[i];
                num_integer::gcd(d.x, d.y).unsigned_abs() as usize
            })
            .sum()
    }

    pub fn lattice_points(&self) -> Vec<Vec2> {
        let xs = self.vertices.iter().map(|v| v.x);
        let ys = self.vertices.iter().map(|v| v.y);
        let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
        let mut out = Vec::new();
        for y in y0..=y1 {
            for x in x0..=x1 {
                let p = Vec2::new(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// A triangulation of a lattice polygon by lattice triangles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    polytope: LatticePolytope,
    points: Vec<Vec2>,
    triangles: Vec<[usize; 3]>,
}

/// Primal edge as a sorted pair of point indices.
pub type PrimalEdge = (usize, usize);

impl Triangulation {
    /// Structural checks only; see [`validate_triangulation`] for geometry.
    pub fn new(
        points: Vec<Vec2>,
        triangles: Vec<[usize; 3]>,
        hull: Option<Vec<Vec2>>,
    ) -> Result<Self, LatticeError> {
        let mut seen = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if let Some(j) = seen.insert(*p, i) {
                return Err(LatticeError::DuplicatePoint(j, i));
            }
        }
        for (t, tri) in triangles.iter().enumerate() {
            for &index in tri {
                if index >= points.len() {
                    return Err(LatticeError::IndexOutOfRange { triangle: t, index, len: points.len() });
                }
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(LatticeError::RepeatedIndex(t));
            }
        }
        let polytope = match hull {
            Some(h) => LatticePolytope::new(h)?,
            None => LatticePolytope::convex_hull(&points)?,
        };
        Ok(Triangulation { polytope, points, triangles })
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn determinant(&self, t: usize) -> i128 {
        let [a, b, c] = self.triangles[t].map(|i| self.points[i]);
        det3(a, b, c)
    }

    /// Triangle `t` with its vertices in counterclockwise order.
    pub fn ccw(&self, t: usize) -> [usize; 3] {
        let tri = self.triangles[t];
        if self.determinant(t) < 0 {
            [tri[0], tri[2], tri[1]]
        } else {
            tri
        }
    }

    /// Every primal edge with the triangles containing it and, for each, the
    /// opposite point.
    pub fn edge_census(&self) -> BTreeMap<PrimalEdge, Vec<(usize, usize)>> {
        let mut map: BTreeMap<PrimalEdge, Vec<(usize, usize)>> = BTreeMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b, c) = (tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]);
                map.entry((a.min(b), a.max(b))).or_default().push((t, c));
            }
        }
        map
    }

    /// Dilated standard simplex `d*Delta` with its standard subdivision into
    /// `d^2` unimodular triangles.
    pub fn dilated_simplex(d: usize) -> Self {
        assert!(d >= 1);
        let mut index = BTreeMap::new();
        let mut points = Vec::new();
        for j in 0..=d {
            for i in 0..=d - j {
                index.insert((i, j), points.len());
                points.push(Vec2::new(i as i64, j as i64));
            }
        }
        let mut triangles = Vec::new();
        for j in 0..d {
            for i in 0..d - j {
                triangles.push([index[&(i, j)], index[&(i + 1, j)], index[&(i, j + 1)]]);
                if i + j + 2 <= d {
                    triangles.push([index[&(i + 1, j)], index[&(i + 1, j + 1)], index[&(i, j + 1)]]);
                }
            }
        }
        Triangulation::new(points, triangles, None).expect("standard subdivision is well formed")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleStatus {
    pub determinant: i128,
    pub unimodular: bool,
    pub inside: bool,
    /// Other triangles whose interiors meet this one.
    pub overlaps: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulationReport {
    pub valid: bool,
    pub triangles: Vec<TriangleStatus>,
    /// Twice the summed triangle area.
    pub covered_double_area: i128,
    pub polytope_double_area: i128,
    /// Points lying outside the polytope.
    pub stray_points: Vec<usize>,
    pub issues: Vec<String>,
}

/// Two triangles (counterclockwise) have disjoint interiors iff some edge
/// line separates them.
fn interiors_disjoint(a: [Vec2; 3], b: [Vec2; 3]) -> bool {
    let separates = |t: [Vec2; 3], other: [Vec2; 3]| {
        (0..3).any(|k| {
            let (p, q) = (t[k], t[(k + 1) % 3]);
            other.iter().all(|&r| det3(p, q, r) <= 0)
        })
    };
    separates(a, b) || separates(b, a)
}

pub fn validate_triangulation(t: &Triangulation) -> TriangulationReport {
    let mut issues = Vec::new();
    let n = t.triangles.len();
    let ccw: Vec<[Vec2; 3]> = (0..n).map(|i| t.ccw(i).map(|k| t.points[k])).collect();
    let mut statuses: Vec<TriangleStatus> = (0..n)
        .map(|i| {
            let det = t.determinant(i);
            TriangleStatus {
                determinant: det,
                unimodular: det.abs() == 1,
                inside: ccw[i].iter().all(|&p| t.polytope.contains(p)),
                overlaps: Vec::new(),
            }
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if statuses[i].determinant == 0 || statuses[j].determinant == 0 {
                continue;
            }
            if !interiors_disjoint(ccw[i], ccw[j]) {
                statuses[i].overlaps.push(j);
                statuses[j].overlaps.push(i);
            }
        }
    }
    let covered: i128 = statuses.iter().map(|s| s.determinant.abs()).sum();
    let total = t.polytope.double_area();
    let stray_points: Vec<usize> =
        (0..t.points.len()).filter(|&i| !t.polytope.contains(t.points[i])).collect();

    if n == 0 {
        issues.push("no triangles".to_string());
    }
    for (i, s) in statuses.iter().enumerate() {
        if !s.unimodular {
            issues.push(format!("triangle {i} has determinant {}", s.determinant));
        }
        if !s.inside {
            issues.push(format!("triangle {i} leaves the polytope"));
        }
        if !s.overlaps.is_empty() {
            issues.push(format!("triangle {i} overlaps {:?}", s.overlaps));
        }
    }
    if covered != total {
        issues.push(format!("triangles cover double area {covered}, polytope has {total}"));
    }
    if !stray_points.is_empty() {
        issues.push(format!("points outside the polytope: {stray_points:?}"));
    }
    TriangulationReport {
        valid: issues.is_empty(),
        triangles: statuses,
        covered_double_area: covered,
        polytope_double_area: total,
        stray_points,
        issues,
    }
}

/// The tropical curve dual to a triangulation, with the correspondences
/// needed to compare the two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    /// Vertex `i` is dual to triangle `i`.
    pub graph: TropicalGraph,
    /// Primal edge crossed by each finite edge.
    pub finite_primal: Vec<PrimalEdge>,
    /// Primal boundary edge crossed by each infinite edge.
    pub infinite_primal: Vec<PrimalEdge>,
    /// Integer convex heights on the points realizing the curve.
    pub heights: Vec<i64>,
}

impl DualGraph {
    pub fn primal_of(&self, e: EdgeId) -> PrimalEdge {
        match e {
            EdgeId::Finite(i) => self.finite_primal[i],
            EdgeId::Infinite(i) => self.infinite_primal[i],
        }
    }
}

/// Build the dual tropical curve.
///
/// Vertex `i` sits at the gradient of the convex piecewise-affine function
/// interpolating the heights on triangle `i`; with this placement every
/// finite edge points along its momentum and the drawing is the corner locus
/// of a tropical polynomial, hence embedded.
pub fn dual_tropical_graph(t: &Triangulation) -> Result<DualGraph, LatticeError> {
    let report = validate_triangulation(t);
    if !report.valid {
        return Err(LatticeError::Invalid(report.issues.join("; ")));
    }
    let census = t.edge_census();

    let mut rows = Vec::new();
    for sides in census.values() {
        if let [(t1, _), (_, d)] = sides[..] {
            let [p, q, r] = t.ccw(t1);
            let bc = realize::barycentric(t.points[p], t.points[q], t.points[r], t.points[d]);
            rows.push(realize::FoldConstraint {
                terms: vec![(d, 1), (p, -bc[0]), (q, -bc[1]), (r, -bc[2])],
            });
        }
    }
    let heights = realize::solve_heights(t.points.len(), &rows).ok_or(LatticeError::NotRegular)?;

    let positions: Vec<Point> = (0..t.triangles.len())
        .map(|i| {
            let tri = t.ccw(i);
            let g = realize::gradient(tri.map(|k| t.points[k]), tri.map(|k| heights[k]));
            g.to_point()
        })
        .collect();

    let mut graph = TropicalGraph {
        positions,
        finite_edges: Vec::new(),
        infinite_edges: Vec::new(),
        convention: Some(MOMENTUM_CONVENTION.to_string()),
    };
    let mut finite_primal = Vec::new();
    let mut infinite_primal = Vec::new();
    for (&edge, sides) in &census {
        let (t1, _) = sides[0];
        let out = outward_momentum(t, t1, edge);
        match sides[..] {
            [_] => {
                graph.infinite_edges.push(InfiniteEdge { vertex: t1, momentum: out });
                infinite_primal.push(edge);
            }
            [_, (t2, _)] => {
                graph.finite_edges.push(FiniteEdge { ends: [t1, t2], momentum: out });
                finite_primal.push(edge);
            }
            _ => unreachable!("validated triangulations are edge-to-edge"),
        }
    }
    for (i, e) in graph.finite_edges.iter().enumerate() {
        let (a, b) = (graph.positions[e.ends[0]], graph.positions[e.ends[1]]);
        if a == b {
            // Strict convexity makes adjacent gradients distinct.
            return Err(LatticeError::Invalid(format!("dual edge f{i} collapsed")));
        }
    }
    Ok(DualGraph { graph, finite_primal, infinite_primal, heights })
}

/// Rotated primal edge, pointing out of triangle `t`.
fn outward_momentum(t: &Triangulation, tri: usize, edge: PrimalEdge) -> Vec2 {
    let c = t.ccw(tri);
    for k in 0..3 {
        let (a, b) = (c[k], c[(k + 1) % 3]);
        if (a.min(b), a.max(b)) == edge {
            return (t.points[b] - t.points[a]).rotate_cw();
        }
    }
    unreachable!("edge belongs to triangle")
}

/// One affine toric chart: the cone over a triangle placed at height one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub triangle: usize,
    /// The triangle's points, which index the rays of the cone.
    pub coordinates: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartAdjacency {
    pub charts: [usize; 2],
    pub shared: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartSet {
    pub charts: Vec<Chart>,
    pub adjacencies: Vec<ChartAdjacency>,
    /// The singular cone over the whole polygon, kept as a description.
    pub polytope_cone: String,
}

pub fn fan_charts(t: &Triangulation) -> Result<ChartSet, LatticeError> {
    let report = validate_triangulation(t);
    if !report.valid {
        return Err(LatticeError::Invalid(report.issues.join("; ")));
    }
    let charts = (0..t.triangles.len())
        .map(|i| {
            let mut coordinates = t.triangles[i];
            coordinates.sort_unstable();
            Chart { triangle: i, coordinates }
        })
        .collect();
    let adjacencies = t
        .edge_census()
        .iter()
        .filter_map(|(&(a, b), sides)| match sides[..] {
            [(t1, _), (t2, _)] => Some(ChartAdjacency { charts: [t1.min(t2), t1.max(t2)], shared: [a, b] }),
            _ => None,
        })
        .collect();
    let verts: Vec<String> = t.polytope.vertices().iter().map(|v| format!("({},{},1)", v.x, v.y)).collect();
    Ok(ChartSet { charts, adjacencies, polytope_cone: format!("cone over {}", verts.join(" ")) })
}
