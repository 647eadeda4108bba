//! Ribbon graphs as combinatorial maps.
//!
//! Darts are `0..H`. `sigma` is an involution whose fixed points are the
//! external (open) edges, every dart belongs to a vertex, and each vertex
//! carries the cyclic order of its darts. Faces are orbits of
//! `h -> rho(sigma(h))`, which reflects at external darts because there
//! `sigma(h) = h`.
//!
//! Faces may carry string labels naming the puncture they surround. A label
//! is stored as one dart of its face and is moved along explicitly by every
//! operation that deletes darts.

mod cycles;
mod moves;
mod subgraph;
mod wheel;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cycles::{
    ensure_cycle_at_face, has_cycle_at_face, split_at_cycle, CycleRequest, MoveLog, SplitAtCycle,
};
pub use moves::{apply_move, close_up, end_connect_sum, subdivide_edge, Move};
pub(crate) use moves::{apply_move_mapped, rotated};
pub use subgraph::{
    closed_subgraph_ops, gluing_cover_check, tubular_neighborhood, ClosedSubgraphReport,
    GluingCertificate, Subgraph, WheelPiece,
};
pub use wheel::{canonical_pattern, classify_wheel, wheel, Wheel, WheelClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error("invalid ribbon graph: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("dart {0} does not exist")]
    NoSuchDart(usize),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
    #[error("no face is labeled {0:?}")]
    UnknownLabel(String),
    #[error("label {0:?} is used twice")]
    DuplicateLabel(String),
    #[error("edge of dart {0} is external")]
    ExternalEdge(usize),
    #[error("edge of dart {0} is a loop and cannot be contracted")]
    LoopContraction(usize),
    #[error("contracting the edge of dart {0} would leave an isolated vertex")]
    IsolatedVertex(usize),
    #[error("arc of length {len} does not fit vertex {vertex} of valency {valency}")]
    BadArc { vertex: usize, len: usize, valency: usize },
    #[error("graph has external edges")]
    HasExternal,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is empty")]
    Empty,
    #[error("no skeleton of this form exists for (g, n) = ({0}, {1})")]
    Unsupported(usize, usize),
    #[error("face {0:?} is not a cycle")]
    NotCycle(String),
    #[error("cycles {0:?} and {1:?} are not disjoint")]
    NotDisjoint(String, String),
    #[error("no cyclable face: a one-faced graph traverses every edge twice")]
    NoCyclableFace,
    #[error("infeasible cycle request: {0}")]
    Infeasible(String),
    #[error("not a subgraph: {0}")]
    NotSubgraph(String),
    #[error("not a wheel: {0}")]
    NotWheel(String),
    #[error("gluing hypothesis failed: {0}")]
    Hypothesis(String),
}

/// File form of a ribbon graph; may be invalid until checked.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RibbonData {
    pub sigma: Vec<usize>,
    pub vertex_of: Vec<usize>,
    pub cyclic_order: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub face_labels: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RibbonReport {
    pub valid: bool,
    pub issues: Vec<String>,
}

/// Check every structural invariant of a ribbon graph in file form.
pub fn validate_ribbon(x: &RibbonData) -> RibbonReport {
    let mut issues = Vec::new();
    let h = x.sigma.len();
    if x.vertex_of.len() != h {
        issues.push(format!("vertex_of has {} entries for {h} darts", x.vertex_of.len()));
    }
    for (d, &s) in x.sigma.iter().enumerate() {
        if s >= h {
            issues.push(format!("sigma({d}) = {s} is out of range"));
        } else if x.sigma[s] != d {
            issues.push(format!("sigma is not an involution at dart {d}"));
        }
    }
    let nv = x.cyclic_order.len();
    let mut seen = vec![None; h];
    for (v, order) in x.cyclic_order.iter().enumerate() {
        if order.is_empty() {
            issues.push(format!("vertex {v} has no darts"));
        }
        for &d in order {
            if d >= h {
                issues.push(format!("cyclic order of vertex {v} lists missing dart {d}"));
                continue;
            }
            if let Some(w) = seen[d].replace(v) {
                issues.push(format!("dart {d} appears in the cyclic orders of vertices {w} and {v}"));
            }
            if x.vertex_of.get(d).is_some_and(|&u| u != v) {
                issues.push(format!(
                    "dart {d} belongs to vertex {} but is ordered at vertex {v}; rho is not a single cycle there",
                    x.vertex_of[d]
                ));
            }
        }
    }
    for (d, s) in seen.iter().enumerate() {
        if s.is_none() {
            issues.push(format!("dart {d} is in no cyclic order"));
        }
    }
    for (d, &v) in x.vertex_of.iter().enumerate() {
        if v >= nv {
            issues.push(format!("dart {d} is incident to missing vertex {v}"));
        }
    }
    for (label, &d) in &x.face_labels {
        if d >= h {
            issues.push(format!("label {label:?} points to missing dart {d}"));
        }
    }
    if issues.is_empty() {
        let g = RibbonGraph::build(x.sigma.clone(), x.cyclic_order.clone(), BTreeMap::new());
        let faces = g.face_index();
        let mut owner: BTreeMap<usize, &String> = BTreeMap::new();
        for (label, &d) in &x.face_labels {
            if let Some(other) = owner.insert(faces[d], label) {
                issues.push(format!("labels {other:?} and {label:?} name the same face"));
            }
        }
    }
    RibbonReport { valid: issues.is_empty(), issues }
}

/// Validate a ribbon graph given by permutations: the involution `sigma`,
/// the incidence map and the vertex rotation `rho` on all darts.
pub fn validate_permutations(sigma: &[usize], vertex_of: &[usize], rho: &[usize]) -> RibbonReport {
    let h = sigma.len();
    let mut issues = Vec::new();
    if rho.len() != h || vertex_of.len() != h {
        issues.push("permutation lengths differ".to_string());
        return RibbonReport { valid: false, issues };
    }
    let mut image = vec![false; h];
    for (d, &r) in rho.iter().enumerate() {
        if r >= h || std::mem::replace(&mut image[r], true) {
            issues.push(format!("rho is not a permutation at dart {d}"));
            return RibbonReport { valid: false, issues };
        }
    }
    let nv = vertex_of.iter().map(|&v| v + 1).max().unwrap_or(0);
    let mut orders = vec![Vec::new(); nv];
    let mut cycles_at = vec![0usize; nv];
    let mut done = vec![false; h];
    for start in 0..h {
        if done[start] {
            continue;
        }
        let v = vertex_of[start];
        cycles_at[v] += 1;
        let mut d = start;
        while !done[d] {
            done[d] = true;
            if vertex_of[d] != v {
                issues.push(format!("rho maps dart {d} across vertices"));
            }
            orders[v].push(d);
            d = rho[d];
        }
    }
    for (v, &c) in cycles_at.iter().enumerate() {
        if c > 1 {
            issues.push(format!("rho restricted to vertex {v} splits into {c} cycles"));
        }
    }
    let mut report = validate_ribbon(&RibbonData {
        sigma: sigma.to_vec(),
        vertex_of: vertex_of.to_vec(),
        cyclic_order: orders,
        face_labels: BTreeMap::new(),
    });
    issues.append(&mut report.issues);
    RibbonReport { valid: issues.is_empty(), issues }
}

/// A valid ribbon graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RibbonGraph {
    sigma: Vec<usize>,
    vertex_of: Vec<usize>,
    rho: Vec<usize>,
    orders: Vec<Vec<usize>>,
    labels: BTreeMap<String, usize>,
}

/// One face: its dart walk and boundary subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceWalk {
    pub darts: Vec<usize>,
    /// Edges on the boundary, each named by its smaller dart.
    pub edges: BTreeSet<usize>,
    pub vertices: BTreeSet<usize>,
    pub is_cycle: bool,
    pub label: Option<String>,
}

impl TryFrom<RibbonData> for RibbonGraph {
    type Error = RibbonError;

    fn try_from(x: RibbonData) -> Result<Self, RibbonError> {
        let report = validate_ribbon(&x);
        if !report.valid {
            return Err(RibbonError::Invalid(report.issues));
        }
        Ok(RibbonGraph::build(x.sigma, x.cyclic_order, x.face_labels))
    }
}

impl From<&RibbonGraph> for RibbonData {
    fn from(g: &RibbonGraph) -> Self {
        RibbonData {
            sigma: g.sigma.clone(),
            vertex_of: g.vertex_of.clone(),
            cyclic_order: g.orders.clone(),
            face_labels: g.labels.clone(),
        }
    }
}

impl RibbonGraph {
    /// Build from an involution and per-vertex cyclic orders.
    pub fn new(
        sigma: Vec<usize>,
        cyclic_order: Vec<Vec<usize>>,
        face_labels: BTreeMap<String, usize>,
    ) -> Result<Self, RibbonError> {
        let mut vertex_of = vec![usize::MAX; sigma.len()];
        for (v, order) in cyclic_order.iter().enumerate() {
            for &d in order {
                if d < vertex_of.len() {
                    vertex_of[d] = v;
                }
            }
        }
        RibbonGraph::try_from(RibbonData { sigma, vertex_of, cyclic_order, face_labels })
    }

    /// Unchecked construction from data known to be valid.
    pub(crate) fn build(
        sigma: Vec<usize>,
        orders: Vec<Vec<usize>>,
        labels: BTreeMap<String, usize>,
    ) -> Self {
        let mut vertex_of = vec![0; sigma.len()];
        let mut rho = vec![0; sigma.len()];
        for (v, order) in orders.iter().enumerate() {
            for (k, &d) in order.iter().enumerate() {
                vertex_of[d] = v;
                rho[d] = order[(k + 1) % order.len()];
            }
        }
        RibbonGraph { sigma, vertex_of, rho, orders, labels }
    }

    pub fn num_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.orders.len()
    }

    /// Number of edges, internal and external.
    pub fn num_edges(&self) -> usize {
        (0..self.num_darts()).filter(|&d| self.sigma[d] >= d).count()
    }

    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }

    pub fn vertex_of(&self, d: usize) -> usize {
        self.vertex_of[d]
    }

    /// Counterclockwise successor of `d` at its vertex.
    pub fn rho(&self, d: usize) -> usize {
        self.rho[d]
    }

    pub fn rho_inv(&self, d: usize) -> usize {
        let order = &self.orders[self.vertex_of[d]];
        let k = order.iter().position(|&x| x == d).expect("dart is ordered at its vertex");
        order[(k + order.len() - 1) % order.len()]
    }

    pub fn order(&self, v: usize) -> &[usize] {
        &self.orders[v]
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    pub fn is_external(&self, d: usize) -> bool {
        self.sigma[d] == d
    }

    pub fn has_external(&self) -> bool {
        (0..self.num_darts()).any(|d| self.is_external(d))
    }

    pub fn is_loop(&self, d: usize) -> bool {
        !self.is_external(d) && self.vertex_of[d] == self.vertex_of[self.sigma[d]]
    }

    /// Canonical name of the edge of `d`: its smaller dart.
    pub fn edge_of(&self, d: usize) -> usize {
        d.min(self.sigma[d])
    }

    /// Internal edges, by canonical dart.
    pub fn internal_edges(&self) -> Vec<usize> {
        (0..self.num_darts()).filter(|&d| self.sigma[d] > d).collect()
    }

    pub fn external_darts(&self) -> Vec<usize> {
        (0..self.num_darts()).filter(|&d| self.is_external(d)).collect()
    }

    pub fn face_labels(&self) -> &BTreeMap<String, usize> {
        &self.labels
    }

    pub fn label_dart(&self, label: &str) -> Result<usize, RibbonError> {
        self.labels.get(label).copied().ok_or_else(|| RibbonError::UnknownLabel(label.to_string()))
    }

    /// Attach `label` to the face containing dart `d`, replacing any label
    /// already on that face.
    pub fn set_label(&mut self, label: &str, d: usize) -> Result<(), RibbonError> {
        if d >= self.num_darts() {
            return Err(RibbonError::NoSuchDart(d));
        }
        let faces = self.face_index();
        self.labels.retain(|_, e| faces[*e] != faces[d]);
        self.labels.insert(label.to_string(), d);
        Ok(())
    }

    pub fn remove_label(&mut self, label: &str) -> Option<usize> {
        self.labels.remove(label)
    }

    /// The face permutation.
    pub fn next_in_face(&self, d: usize) -> usize {
        self.rho[self.sigma[d]]
    }

    /// Face index of every dart, faces numbered by their smallest dart.
    pub fn face_index(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.num_darts()];
        let mut count = 0;
        for start in 0..self.num_darts() {
            if index[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            while index[d] == usize::MAX {
                index[d] = count;
                d = self.next_in_face(d);
            }
            count += 1;
        }
        index
    }

    pub fn face_walk(&self, start: usize) -> FaceWalk {
        let mut darts = vec![start];
        let mut d = self.next_in_face(start);
        while d != start {
            darts.push(d);
            d = self.next_in_face(d);
        }
        let edges: BTreeSet<usize> = darts.iter().map(|&d| self.edge_of(d)).collect();
        let vertices: BTreeSet<usize> = darts.iter().map(|&d| self.vertex_of[d]).collect();
        let is_cycle = darts.iter().all(|&d| !self.is_external(d))
            && edges.len() == darts.len()
            && vertices.len() == darts.len();
        let label = self
            .labels
            .iter()
            .find(|(_, &l)| darts.contains(&l))
            .map(|(name, _)| name.clone());
        FaceWalk { darts, edges, vertices, is_cycle, label }
    }

    /// All faces, in order of their smallest dart.
    pub fn faces(&self) -> Vec<FaceWalk> {
        let index = self.face_index();
        let mut out = Vec::new();
        for d in 0..self.num_darts() {
            if index[d] == out.len() {
                out.push(self.face_walk(d));
            }
        }
        out
    }

    pub fn labeled_face(&self, label: &str) -> Result<FaceWalk, RibbonError> {
        Ok(self.face_walk(self.label_dart(label)?))
    }

    /// Connected components as sets of vertices, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let nv = self.num_vertices();
        let mut comp = vec![usize::MAX; nv];
        let mut out = Vec::new();
        for s in 0..nv {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = Vec::new();
            let mut queue = VecDeque::from([s]);
            comp[s] = id;
            while let Some(v) = queue.pop_front() {
                members.push(v);
                for &d in &self.orders[v] {
                    let w = self.vertex_of[self.sigma[d]];
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// The subgraph on a union of components, with its labels.
    pub fn extract(&self, vertices: &[usize]) -> RibbonGraph {
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        let orders = keep.iter().map(|&v| self.orders[v].clone()).collect();
        let mut labels = self.labels.clone();
        labels.retain(|_, d| keep.contains(&self.vertex_of[*d]));
        Draft { sigma: self.sigma.clone(), orders, labels }.finish().0
    }

    /// Start a draft holding a copy of this graph.
    pub(crate) fn draft(&self) -> Draft {
        Draft { sigma: self.sigma.clone(), orders: self.orders.clone(), labels: self.labels.clone() }
    }
}

/// A graph under construction: dart ids may be sparse and deleted darts
/// are simply absent from `orders`.
#[derive(Clone, Debug)]
pub(crate) struct Draft {
    pub sigma: Vec<usize>,
    pub orders: Vec<Vec<usize>>,
    pub labels: BTreeMap<String, usize>,
}

impl Draft {
    pub fn new_dart(&mut self) -> usize {
        self.sigma.push(self.sigma.len());
        self.sigma.len() - 1
    }

    pub fn pair(&mut self, a: usize, b: usize) {
        self.sigma[a] = b;
        self.sigma[b] = a;
    }

    /// Renumber darts in vertex order, dropping empty vertices. Returns the
    /// old-to-new dart map.
    pub fn finish(self) -> (RibbonGraph, Vec<Option<usize>>) {
        let mut map = vec![None; self.sigma.len()];
        let mut next = 0;
        let orders: Vec<Vec<usize>> = self.orders.into_iter().filter(|o| !o.is_empty()).collect();
        for order in &orders {
            for &d in order {
                map[d] = Some(next);
                next += 1;
            }
        }
        let mut sigma = vec![0; next];
        for order in &orders {
            for &d in order {
                sigma[map[d].unwrap()] = map[self.sigma[d]].expect("partner dart survives");
            }
        }
        let orders = orders.iter().map(|o| o.iter().map(|&d| map[d].unwrap()).collect()).collect();
        let labels = self
            .labels
            .into_iter()
            .map(|(l, d)| (l, map[d].expect("labels point to surviving darts")))
            .collect();
        (RibbonGraph::build(sigma, orders, labels), map)
    }
}

/// Genus and puncture count of the surface a ribbon graph is a spine of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SurfaceType {
    pub genus: usize,
    pub punctures: usize,
}

impl SurfaceType {
    pub const fn new(genus: usize, punctures: usize) -> Self {
        SurfaceType { genus, punctures }
    }
}

/// `(g, n)` of a connected ribbon graph without external edges.
pub fn surface_invariants(x: &RibbonGraph) -> Result<SurfaceType, RibbonError> {
    if x.num_vertices() == 0 {
        return Err(RibbonError::Empty);
    }
    if x.has_external() {
        return Err(RibbonError::HasExternal);
    }
    if !x.is_connected() {
        return Err(RibbonError::Disconnected);
    }
    let n = x.faces().len();
    let v = x.num_vertices();
    let e = x.num_darts() / 2;
    let twice_g = (2 + e) as i64 - (n + v) as i64;
    assert!(twice_g >= 0 && twice_g % 2 == 0, "Euler characteristic of a closed ribbon graph");
    Ok(SurfaceType::new(twice_g as usize / 2, n))
}

/// `(g, n)` of every component, ordered by smallest vertex.
pub fn component_invariants(x: &RibbonGraph) -> Result<Vec<SurfaceType>, RibbonError> {
    x.components().iter().map(|c| surface_invariants(&x.extract(c))).collect()
}

/// Disjoint union; darts of `y` are shifted past those of `x`. Labels must
/// not clash.
pub fn disjoint_union(x: &RibbonGraph, y: &RibbonGraph) -> Result<RibbonGraph, RibbonError> {
    let off = x.num_darts();
    let mut d = x.draft();
    d.sigma.extend(y.sigma.iter().map(|&s| s + off));
    d.orders.extend(y.orders.iter().map(|o| o.iter().map(|&e| e + off).collect()));
    for (l, &e) in &y.labels {
        if d.labels.insert(l.clone(), e + off).is_some() {
            return Err(RibbonError::DuplicateLabel(l.clone()));
        }
    }
    Ok(d.finish().0)
}

fn labels_of<const N: usize>(pairs: [(&str, usize); N]) -> BTreeMap<String, usize> {
    pairs.into_iter().map(|(l, d)| (l.to_string(), d)).collect()
}

/// One vertex with a loop; faces `a` and `b`.
pub fn circle() -> RibbonGraph {
    RibbonGraph::build(vec![1, 0], vec![vec![0, 1]], labels_of([("a", 0), ("b", 1)]))
}

/// Two interleaved loops at one vertex; a single face `a`.
pub fn figure_eight() -> RibbonGraph {
    // order (a b a' b') with a = 0, b = 1, a' = 2, b' = 3
    RibbonGraph::build(vec![2, 3, 0, 1], vec![vec![0, 1, 2, 3]], labels_of([("a", 0)]))
}

/// The Θ graph: two vertices joined by three edges; faces `a`, `b`, `c`.
pub fn theta() -> RibbonGraph {
    // u: (a1 a2 a3) = (0 1 2); w: (b3 b2 b1) = (3 4 5) with b_i = sigma(a_i)
    RibbonGraph::build(
        vec![5, 4, 3, 2, 1, 0],
        vec![vec![0, 1, 2], vec![3, 4, 5]],
        labels_of([("a", 0), ("b", 1), ("c", 2)]),
    )
}

/// The dumbbell: two loops joined by a bridge. Faces `l` and `r` are the
/// loop faces, `o` the outer face.
pub fn dumbbell() -> RibbonGraph {
    // u: (l1 l1' c) = (0 1 2); w: (r1 r1' c') = (3 4 5)
    RibbonGraph::build(
        vec![1, 0, 5, 4, 3, 2],
        vec![vec![0, 1, 2], vec![3, 4, 5]],
        labels_of([("l", 1), ("r", 4), ("o", 0)]),
    )
}

pub(crate) fn relabeled(mut g: RibbonGraph, map: &[(&str, String)]) -> RibbonGraph {
    let old = std::mem::take(&mut g.labels);
    for (from, to) in map {
        g.labels.insert(to.clone(), old[*from]);
    }
    g
}

/// The iterated end connect sum of `g` figure-eights and `n - 1` circles.
/// Faces are labeled `p0 .. p{n-1}`.
pub fn standard_skeleton(g: usize, n: usize) -> Result<RibbonGraph, RibbonError> {
    if n == 0 || (g, n) == (0, 1) {
        return Err(RibbonError::Unsupported(g, n));
    }
    let p = |k: usize| format!("p{k}");
    let (mut x, mut next) = if g == 0 {
        (relabeled(circle(), &[("a", p(0)), ("b", p(1))]), 2)
    } else {
        let mut x = relabeled(figure_eight(), &[("a", p(0))]);
        for _ in 1..g {
            let y = relabeled(figure_eight(), &[("a", "#".to_string())]);
            x = end_connect_sum(&x, &p(0), &y, "#")?;
        }
        (x, 1)
    };
    while next < n {
        let y = relabeled(circle(), &[("a", "#".to_string()), ("b", p(next))]);
        x = end_connect_sum(&x, &p(0), &y, "#")?;
        next += 1;
    }
    Ok(x)
}

/// A canonical code of one connected component, obtained by numbering
/// darts in breadth-first order from `start`.
fn component_code(x: &RibbonGraph, start: usize, face_label: &[Option<&str>]) -> Vec<(usize, usize, String)> {
    let mut id = BTreeMap::new();
    let mut order = vec![start];
    id.insert(start, 0);
    let mut k = 0;
    while k < order.len() {
        let d = order[k];
        for e in [x.sigma[d], x.rho[d]] {
            if let std::collections::btree_map::Entry::Vacant(v) = id.entry(e) {
                v.insert(order.len());
                order.push(e);
            }
        }
        k += 1;
    }
    order
        .iter()
        .map(|&d| (id[&x.sigma[d]], id[&x.rho[d]], face_label[d].unwrap_or("").to_string()))
        .collect()
}

/// Whether two ribbon graphs agree up to renaming darts and vertices,
/// including face labels.
pub fn is_isomorphic(x: &RibbonGraph, y: &RibbonGraph) -> bool {
    if x.num_darts() != y.num_darts() || x.num_vertices() != y.num_vertices() || x.labels.len() != y.labels.len() {
        return false;
    }
    let codes = |g: &RibbonGraph| {
        let faces = g.face_index();
        let mut by_face: BTreeMap<usize, &str> = BTreeMap::new();
        for (l, &d) in &g.labels {
            by_face.insert(faces[d], l);
        }
        let face_label: Vec<Option<&str>> = faces.iter().map(|f| by_face.get(f).copied()).collect();
        let mut out: Vec<_> = g
            .components()
            .iter()
            .map(|c| {
                c.iter()
                    .flat_map(|&v| g.orders[v].iter().copied())
                    .map(|d| component_code(g, d, &face_label))
                    .min()
                    .expect("components are nonempty")
            })
            .collect();
        out.sort();
        out
    };
    codes(x) == codes(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gn(x: &RibbonGraph) -> (usize, usize) {
        let s = surface_invariants(x).unwrap();
        (s.genus, s.punctures)
    }

    fn cycle_faces(x: &RibbonGraph) -> usize {
        x.faces().iter().filter(|f| f.is_cycle).count()
    }

    #[test]
    fn circle_is_valid_with_two_faces() {
        let c = circle();
        assert!(validate_ribbon(&RibbonData::from(&c)).valid);
        assert_eq!(c.faces().len(), 2);
        assert_eq!(gn(&c), (0, 2));
    }

    #[test]
    fn three_cycle_sigma_is_rejected() {
        let r = validate_ribbon(&RibbonData {
            sigma: vec![1, 2, 0],
            vertex_of: vec![0, 0, 0],
            cyclic_order: vec![vec![0, 1, 2]],
            face_labels: BTreeMap::new(),
        });
        assert!(!r.valid);
        assert!(r.issues.iter().any(|i| i.contains("involution")));
    }

    #[test]
    fn split_rotation_is_rejected() {
        let r = validate_permutations(&[1, 0, 3, 2], &[0, 0, 0, 0], &[1, 0, 3, 2]);
        assert!(!r.valid);
        assert!(r.issues.iter().any(|i| i.contains("splits into 2 cycles")));
        assert!(validate_permutations(&[1, 0, 3, 2], &[0, 0, 0, 0], &[1, 2, 3, 0]).valid);
    }

    #[test]
    fn basic_skeleta() {
        assert_eq!(figure_eight().faces().len(), 1);
        assert_eq!(gn(&figure_eight()), (1, 1));
        assert_eq!(theta().faces().len(), 3);
        assert_eq!(gn(&theta()), (0, 3));
        assert_eq!(cycle_faces(&theta()), 3);
        assert_eq!(gn(&dumbbell()), (0, 3));
        assert_eq!(cycle_faces(&dumbbell()), 2);
        assert!(!dumbbell().labeled_face("o").unwrap().is_cycle);
        assert!(dumbbell().labeled_face("l").unwrap().is_cycle);
    }

    #[test]
    fn standard_skeleta_have_requested_type() {
        assert!(matches!(standard_skeleton(0, 1), Err(RibbonError::Unsupported(0, 1))));
        for g in 0..=3 {
            for n in 1..=4 {
                if (g, n) == (0, 1) {
                    continue;
                }
                let x = standard_skeleton(g, n).unwrap();
                assert_eq!(gn(&x), (g, n));
                assert_eq!(x.face_labels().len(), n);
            }
        }
    }

    #[test]
    fn isomorphism_ignores_numbering() {
        let a = dumbbell();
        let b = RibbonGraph::new(
            vec![1, 0, 5, 4, 3, 2],
            vec![vec![4, 5, 3], vec![1, 2, 0]],
            a.face_labels().clone(),
        )
        .unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(&a, &theta()));
        assert!(!is_isomorphic(&a, &relabeled(dumbbell(), &[("l", "r".into()), ("r", "l".into()), ("o", "x".into())])));
    }

    #[test]
    fn faces_partition_darts() {
        let x = standard_skeleton(2, 3).unwrap();
        let total: usize = x.faces().iter().map(|f| f.darts.len()).sum();
        assert_eq!(total, x.num_darts());
    }
}
