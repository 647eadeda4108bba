use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::wheel::{classify_wheel, WheelClass};
use super::{Draft, RibbonError, RibbonGraph};

/// A closed subgraph: vertices plus internal edges (named by their smaller
/// dart) whose endpoints are among the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
}

impl Subgraph {
    /// All vertices and internal edges.
    pub fn whole(x: &RibbonGraph) -> Self {
        Subgraph { vertices: (0..x.num_vertices()).collect(), edges: x.internal_edges().into_iter().collect() }
    }

    /// The edges of the given darts with their endpoints.
    pub fn from_darts(x: &RibbonGraph, darts: impl IntoIterator<Item = usize>) -> Self {
        let mut z = Subgraph::default();
        for d in darts {
            z.edges.insert(x.edge_of(d));
            z.vertices.insert(x.vertex_of(d));
            z.vertices.insert(x.vertex_of(x.sigma(d)));
        }
        z
    }

    pub fn union(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.intersection(&other.vertices).copied().collect(),
            edges: self.edges.intersection(&other.edges).copied().collect(),
        }
    }

    pub fn check(&self, x: &RibbonGraph) -> Result<(), RibbonError> {
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= x.num_vertices()) {
            return Err(RibbonError::NotSubgraph(format!("vertex {v} does not exist")));
        }
        for &e in &self.edges {
            if e >= x.num_darts() || x.edge_of(e) != e {
                return Err(RibbonError::NotSubgraph(format!("{e} does not name an edge")));
            }
            if x.is_external(e) {
                return Err(RibbonError::NotSubgraph(format!("external edge {e} is not closed")));
            }
            for end in [x.vertex_of(e), x.vertex_of(x.sigma(e))] {
                if !self.vertices.contains(&end) {
                    return Err(RibbonError::NotSubgraph(format!("edge {e} has endpoint {end} outside")));
                }
            }
        }
        Ok(())
    }

    pub fn contains_dart(&self, x: &RibbonGraph, d: usize) -> bool {
        self.edges.contains(&x.edge_of(d))
    }

    /// Valency of `v` counting only edges of the subgraph.
    pub fn valency(&self, x: &RibbonGraph, v: usize) -> usize {
        x.order(v).iter().filter(|&&d| self.contains_dart(x, d)).count()
    }

    /// Connected components, as subgraphs.
    pub fn components(&self, x: &RibbonGraph) -> Vec<Subgraph> {
        let mut out: Vec<Subgraph> = Vec::new();
        let mut seen = BTreeSet::new();
        for &s in &self.vertices {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = Subgraph::default();
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                comp.vertices.insert(v);
                for &d in x.order(v) {
                    if self.contains_dart(x, d) {
                        comp.edges.insert(x.edge_of(d));
                        let w = x.vertex_of(x.sigma(d));
                        if seen.insert(w) {
                            stack.push(w);
                        }
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedSubgraphReport {
    pub is_closed_subgraph: bool,
    pub is_good: bool,
    /// Vertices of valency one inside the subgraph.
    pub valency_one: Vec<usize>,
    #[serde(skip)]
    pub neighborhood: RibbonGraph,
    /// Dart of `x` for each dart of the neighborhood.
    pub neighborhood_darts: Vec<usize>,
}

/// `N_Z X`: the vertices of `z` with all their darts; darts of edges
/// outside `z` become external. This is the tubular neighborhood after
/// subdividing every edge that leaves `z`.
pub fn tubular_neighborhood(x: &RibbonGraph, z: &Subgraph) -> Result<(RibbonGraph, Vec<usize>), RibbonError> {
    z.check(x)?;
    let sigma = (0..x.num_darts()).map(|d| if z.contains_dart(x, d) { x.sigma(d) } else { d }).collect();
    let orders = z.vertices.iter().map(|&v| x.order(v).to_vec()).collect();
    let (g, map) = Draft { sigma, orders, labels: Default::default() }.finish();
    let mut back = vec![0; g.num_darts()];
    for (old, new) in map.iter().enumerate() {
        if let Some(n) = new {
            back[*n] = old;
        }
    }
    Ok((g, back))
}

pub fn closed_subgraph_ops(x: &RibbonGraph, z: &Subgraph) -> Result<ClosedSubgraphReport, RibbonError> {
    let (neighborhood, neighborhood_darts) = tubular_neighborhood(x, z)?;
    let valency_one: Vec<usize> = z.vertices.iter().copied().filter(|&v| z.valency(x, v) == 1).collect();
    Ok(ClosedSubgraphReport {
        is_closed_subgraph: true,
        is_good: valency_one.is_empty(),
        valency_one,
        neighborhood,
        neighborhood_darts,
    })
}

/// One circle of `Z1 ∩ Z2` and its wheel neighborhood.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WheelPiece {
    pub circle_vertices: usize,
    pub wheel: WheelClass,
    /// Spokes lying on edges of `Z1` and of `Z2`.
    pub spokes_from: [usize; 2],
    /// Whether the two spoke classes coincide with the two sides of the
    /// circle.
    pub sides_agree: bool,
}

/// The open pieces of the cover, each as a count of edges (open edges
/// included) or darts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingCertificate {
    pub circles: usize,
    pub wheels: Vec<WheelPiece>,
    /// Edges of `U1 = Z1 ∪ N`, `U2 = Z2 ∪ N`.
    pub u_edges: [usize; 2],
    /// Darts of `U12 = N_{Z12} X`.
    pub u12_darts: usize,
    /// Edges of `U1^o = Z1 - Z12` and `U2^o`.
    pub u_open_edges: [usize; 2],
    /// Spokes of `U1^e = U12 ∩ U1^o` and `U2^e`.
    pub u_spokes: [usize; 2],
}

fn fail(msg: impl Into<String>) -> RibbonError {
    RibbonError::Hypothesis(msg.into())
}

/// Check that `z1`, `z2` cover `x` as good closed subgraphs meeting in
/// circles, and describe the resulting open cover.
pub fn gluing_cover_check(x: &RibbonGraph, z1: &Subgraph, z2: &Subgraph) -> Result<GluingCertificate, RibbonError> {
    z1.check(x)?;
    z2.check(x)?;
    if x.has_external() || z1.union(z2) != Subgraph::whole(x) {
        return Err(fail("Z1 ∪ Z2 is not X"));
    }
    for (name, z) in [("Z1", z1), ("Z2", z2)] {
        let r = closed_subgraph_ops(x, z)?;
        if !r.is_good {
            return Err(fail(format!("{name} is not good: valency one at {:?}", r.valency_one)));
        }
    }
    let z12 = z1.intersection(z2);
    if z12.vertices.is_empty() {
        return Err(fail("intersection not circles: Z1 ∩ Z2 is empty"));
    }
    if let Some(&v) = z12.vertices.iter().find(|&&v| z12.valency(x, v) != 2) {
        return Err(fail(format!("intersection not circles: vertex {v} has valency {}", z12.valency(x, v))));
    }

    let mut wheels = Vec::new();
    for comp in z12.components(x) {
        let (n, back) = tubular_neighborhood(x, &comp)?;
        let class = classify_wheel(&n)?;
        let mut spokes_from = [0, 0];
        let mut side_of_class = [BTreeSet::new(), BTreeSet::new()];
        for (&s, c) in class.spokes.iter().zip(class.reading.chars()) {
            let k = if z1.contains_dart(x, back[s]) { 0 } else { 1 };
            spokes_from[k] += 1;
            side_of_class[k].insert(c);
        }
        let sides_agree = side_of_class.iter().all(|s| s.len() <= 1) && side_of_class[0].is_disjoint(&side_of_class[1]);
        wheels.push(WheelPiece { circle_vertices: comp.vertices.len(), wheel: class, spokes_from, sides_agree });
    }

    let spokes = |z: &Subgraph| {
        z12.vertices
            .iter()
            .flat_map(|&v| x.order(v).iter().copied())
            .filter(|&d| z.contains_dart(x, d) && !z12.contains_dart(x, d))
            .count()
    };
    let u_spokes = [spokes(z1), spokes(z2)];
    let open = |z: &Subgraph| z.edges.difference(&z12.edges).count();
    let u12_darts = z12.vertices.iter().map(|&v| x.order(v).len()).sum();
    Ok(GluingCertificate {
        circles: wheels.len(),
        u_edges: [z1.edges.len() + u_spokes[1], z2.edges.len() + u_spokes[0]],
        u12_darts,
        u_open_edges: [open(z1), open(z2)],
        u_spokes,
        wheels,
    })
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    #[test]
    fn theta_edge_is_not_good() {
        let t = theta();
        let z = Subgraph::from_darts(&t, [0]);
        let r = closed_subgraph_ops(&t, &z).unwrap();
        assert!(!r.is_good);
        assert_eq!(r.valency_one, vec![0, 1]);
    }

    #[test]
    fn dumbbell_loop_neighborhood_is_a_one_spoke_wheel() {
        let d = dumbbell();
        let z = Subgraph::from_darts(&d, [0]);
        let r = closed_subgraph_ops(&d, &z).unwrap();
        assert!(r.is_good);
        let c = classify_wheel(&r.neighborhood).unwrap();
        assert_eq!(c.counts, [1, 0]);
    }

    #[test]
    fn whole_graph_neighborhood_is_itself() {
        let x = standard_skeleton(1, 2).unwrap();
        let r = closed_subgraph_ops(&x, &Subgraph::whole(&x)).unwrap();
        assert!(r.is_good);
        let mut bare = x.clone();
        for l in x.face_labels().keys() {
            bare.remove_label(l);
        }
        assert!(is_isomorphic(&r.neighborhood, &bare));
    }

    #[test]
    fn not_a_subgraph() {
        let d = dumbbell();
        let z = Subgraph { vertices: [0].into(), edges: [2].into() };
        assert!(matches!(closed_subgraph_ops(&d, &z), Err(RibbonError::NotSubgraph(_))));
    }

    #[test]
    fn circle_covered_by_itself() {
        let c = circle();
        let z = Subgraph::whole(&c);
        let cert = gluing_cover_check(&c, &z, &z).unwrap();
        assert_eq!(cert.circles, 1);
        assert_eq!(cert.wheels[0].wheel.counts, [0, 0]);
    }

    #[test]
    fn vertex_intersection_fails() {
        // figure-eight split into its two loops meets in a vertex
        let f = figure_eight();
        let z1 = Subgraph::from_darts(&f, [0]);
        let z2 = Subgraph::from_darts(&f, [1]);
        let err = gluing_cover_check(&f, &z1, &z2).unwrap_err();
        assert!(err.to_string().contains("intersection not circles"), "{err}");
    }
}
