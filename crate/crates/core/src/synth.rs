//! Skeleton synthesis: build a ribbon graph for the mirror curve of a
//! tropical graph by adding one pair of pants per sweep step.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::geometry::Vec2;
use crate::ribbon::{
    component_invariants, disjoint_union, dumbbell, ensure_cycle_at_face, gluing_cover_check, relabeled, theta,
    CycleRequest, GluingCertificate, MoveLog, RibbonError, RibbonGraph, Subgraph, SurfaceType,
};
use crate::ribbon::{apply_move_mapped, rotated, Move};
use crate::tropical::{mirror_invariants, sweep_decompose, EdgeId, MirrorInvariants, TropicalError, TropicalGraph};

#[derive(Debug, Error)]
pub enum SynthError {
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error("step {step} (vertex {vertex}): {source}")]
    Step { step: usize, vertex: usize, source: RibbonError },
    #[error("synthesis check failed: {0}")]
    Mismatch(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SynthConfig {
    pub direction: Vec2,
    pub seed: u64,
    /// Move budget for every cycle preparation.
    pub budget: usize,
    /// Rotation offset used when two circles are identified.
    pub offset: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig { direction: Vec2::new(0, 1), seed: 0, budget: CycleRequest::DEFAULT_BUDGET, offset: 0 }
    }
}

/// Face label used for the open end of a tropical edge.
pub fn edge_label(e: EdgeId) -> String {
    e.to_string()
}

/// Result of identifying two cycle faces of one graph.
#[derive(Clone, Debug)]
pub struct Identified {
    pub graph: RibbonGraph,
    /// Old dart to new dart; darts of the second cycle are dropped.
    pub map: Vec<Option<usize>>,
    /// Darts of the identified circle in the new graph.
    pub circle: Vec<usize>,
    /// Number of edges of the circle after subdivision.
    pub length: usize,
}

fn compose(a: &[Option<usize>], b: &[Option<usize>]) -> Vec<Option<usize>> {
    a.iter().map(|o| o.and_then(|d| b[d])).collect()
}

/// Glue the boundary circle of face `fa` to that of face `fb` (both in `z`,
/// vertex-disjoint cycles), reversing orientation as for oriented surfaces.
/// The shorter cycle is subdivided first; vertex `i` of the first cycle is
/// matched with vertex `offset - i` of the second. Both labels disappear.
pub fn identify_cycles(z: &RibbonGraph, fa: &str, fb: &str, offset: usize) -> Result<Identified, RibbonError> {
    let mut g = z.clone();
    let mut map: Vec<Option<usize>> = (0..z.num_darts()).map(Some).collect();
    let (mut wa, mut wb) = (g.labeled_face(fa)?, g.labeled_face(fb)?);
    for (l, w) in [(fa, &wa), (fb, &wb)] {
        if !w.is_cycle {
            return Err(RibbonError::NotCycle(l.to_string()));
        }
    }
    if !wa.vertices.is_disjoint(&wb.vertices) {
        return Err(RibbonError::NotDisjoint(fa.to_string(), fb.to_string()));
    }
    while wa.darts.len() != wb.darts.len() {
        let d = if wa.darts.len() < wb.darts.len() { wa.darts[0] } else { wb.darts[0] };
        let (next, m) = apply_move_mapped(&g, Move::Subdivide { dart: d })?;
        map = compose(&map, &m);
        g = next;
        wa = g.labeled_face(fa)?;
        wb = g.labeled_face(fb)?;
    }
    let (a, b) = (wa.darts, wb.darts);
    let l = a.len();
    let o = offset % l;
    // b_j is glued to sigma(a_{o-j-1}) and sigma(b_j) to a_{o-j-1}
    let partner = |j: usize| a[(2 * l + o - j - 1) % l];

    let mut d = g.draft();
    for i in 0..l {
        let j = (l + o - i) % l;
        let (u, w) = (g.vertex_of(a[i]), g.vertex_of(b[j]));
        let xo = rotated(g.order(u), a[i]);
        let yo = rotated(g.order(w), b[j]);
        let prev = g.sigma(a[(i + l - 1) % l]);
        debug_assert_eq!(*xo.last().unwrap(), prev);
        let mut order = vec![prev];
        order.extend_from_slice(&yo[1..yo.len() - 1]);
        order.push(a[i]);
        order.extend_from_slice(&xo[1..xo.len() - 1]);
        d.orders[u] = order;
        d.orders[w].clear();
    }
    d.labels.remove(fa);
    d.labels.remove(fb);
    let b_index: BTreeMap<usize, usize> = b.iter().enumerate().map(|(j, &x)| (x, j)).collect();
    for dart in d.labels.values_mut() {
        if let Some(&j) = b_index.get(dart) {
            *dart = g.sigma(partner(j));
        } else if let Some(&j) = b_index.get(&g.sigma(*dart)) {
            *dart = partner(j);
        }
    }
    let (graph, m) = d.finish();
    let circle = a.iter().flat_map(|&x| [x, g.sigma(x)]).map(|x| m[x].expect("first cycle survives")).collect();
    Ok(Identified { graph, map: compose(&map, &m), circle, length: l })
}

/// Glue `y` to `x` along matching lists of cycle faces (one or two pairs).
/// Labels of `x` and `y` must be distinct; the glued faces lose theirs.
pub fn glue_along_cycles(
    x: &RibbonGraph,
    cycles_x: &[&str],
    y: &RibbonGraph,
    cycles_y: &[&str],
    offsets: &[usize],
) -> Result<RibbonGraph, RibbonError> {
    if cycles_x.len() != cycles_y.len() || cycles_x.is_empty() {
        return Err(RibbonError::Infeasible("cycle lists must be nonempty and of equal length".into()));
    }
    for (g, cs) in [(x, cycles_x), (y, cycles_y)] {
        let walks = cs.iter().map(|c| g.labeled_face(c)).collect::<Result<Vec<_>, _>>()?;
        for (c, w) in cs.iter().zip(&walks) {
            if !w.is_cycle {
                return Err(RibbonError::NotCycle(c.to_string()));
            }
        }
        for i in 0..walks.len() {
            for j in i + 1..walks.len() {
                if !walks[i].vertices.is_disjoint(&walks[j].vertices) {
                    return Err(RibbonError::NotDisjoint(cs[i].to_string(), cs[j].to_string()));
                }
            }
        }
    }
    let mut z = disjoint_union(x, y)?;
    for (k, (a, b)) in cycles_x.iter().zip(cycles_y).enumerate() {
        z = identify_cycles(&z, a, b, offsets.get(k).copied().unwrap_or(0))?.graph;
    }
    Ok(z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pants {
    Theta,
    Dumbbell,
}

/// A cycle preparation on one component of the partial skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preparation {
    pub faces: Vec<String>,
    pub log: MoveLog,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub vertex: usize,
    pub glue_edges: Vec<usize>,
    pub pants: Pants,
    pub prepared: Vec<Preparation>,
    /// Circle lengths after subdivision.
    pub circle_lengths: Vec<usize>,
    pub offset: usize,
    /// Cover of the glued graph by the old skeleton and the new pants.
    pub cover: Option<GluingCertificate>,
    pub open_labels: Vec<String>,
    pub components: Vec<SurfaceType>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SynthCertificate {
    pub config: SynthConfig,
    pub steps: Vec<StepRecord>,
    pub mirror: MirrorInvariants,
    /// Genus and punctures of the skeleton, summed over components.
    pub skeleton: SurfaceType,
}

impl SynthCertificate {
    pub fn two_circle_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.glue_edges.len() == 2).count()
    }

    /// Every gluing certificate has one circle per glued edge and spokes
    /// split cleanly between the two sides; invariants agree.
    pub fn passes(&self) -> bool {
        self.steps.iter().all(|s| match &s.cover {
            None => s.glue_edges.is_empty(),
            Some(c) => c.circles == s.glue_edges.len() && c.wheels.iter().all(|w| w.sides_agree),
        }) && self.mirror.genus == self.skeleton.genus
            && self.mirror.punctures == self.skeleton.punctures
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Old,
    New,
    Circle,
}

/// Make the given faces cycles (pairwise disjoint within a component),
/// working one connected component at a time.
fn prepare(x: &RibbonGraph, faces: &[String], cfg: &SynthConfig, seed: u64) -> Result<(RibbonGraph, Vec<Preparation>), RibbonError> {
    let comps = x.components();
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for f in faces {
        let v = x.vertex_of(x.label_dart(f)?);
        let c = comps.iter().position(|c| c.binary_search(&v).is_ok()).expect("vertex has a component");
        groups.entry(c).or_default().push(f.clone());
    }
    let mut out = x.extract(&[]);
    let mut prepared = Vec::new();
    for (c, vertices) in comps.iter().enumerate() {
        let mut part = x.extract(vertices);
        if let Some(targets) = groups.get(&c) {
            let mut req = CycleRequest::new(targets).with_seed(seed).with_budget(cfg.budget);
            if targets.len() > 1 {
                req = req.disjoint();
            }
            let (y, log) = ensure_cycle_at_face(&part, &req)?;
            part = y;
            prepared.push(Preparation { faces: targets.clone(), log });
        }
        out = disjoint_union(&out, &part)?;
    }
    Ok((out, prepared))
}

fn expected_open_labels(g: &TropicalGraph, placed: &BTreeSet<usize>) -> BTreeSet<String> {
    let finite = g.finite_edges.iter().enumerate().filter_map(|(k, e)| {
        (placed.contains(&e.ends[0]) != placed.contains(&e.ends[1])).then(|| edge_label(EdgeId::Finite(k)))
    });
    let infinite = g
        .infinite_edges
        .iter()
        .enumerate()
        .filter(|(_, e)| placed.contains(&e.vertex))
        .map(|(k, _)| edge_label(EdgeId::Infinite(k)));
    finite.chain(infinite).collect()
}

/// Run the pants-gluing induction along a sweep of `g`.
pub fn synthesize(g: &TropicalGraph, cfg: &SynthConfig) -> Result<(RibbonGraph, SynthCertificate), SynthError> {
    let mirror = mirror_invariants(g)?;
    let steps = sweep_decompose(g, cfg.direction)?;
    let mut x = RibbonGraph::default();
    let mut placed = BTreeSet::new();
    let mut records = Vec::with_capacity(steps.len());

    for (k, step) in steps.iter().enumerate() {
        let fail = |source| SynthError::Step { step: k, vertex: step.vertex, source };
        let glue: Vec<String> = step.glue_edges.iter().map(|&e| edge_label(EdgeId::Finite(e))).collect();
        let open: Vec<String> = step.new_open_edges.iter().map(|o| edge_label(o.edge)).collect();
        if glue.len() + open.len() != 3 || glue.len() > 2 {
            return Err(SynthError::Mismatch(format!("vertex {} has an unexpected edge census", step.vertex)));
        }
        let tmp = |c: char| format!("#{k}{c}");
        let (pants, pants_kind, seams) = match glue.len() {
            0 | 1 => {
                let names = ["a", "b", "c"];
                let mut map: Vec<(&str, String)> = Vec::new();
                let mut seams = Vec::new();
                for (i, name) in names.iter().enumerate() {
                    if i < glue.len() {
                        seams.push(tmp('g'));
                        map.push((name, tmp('g')));
                    } else {
                        map.push((name, open[i - glue.len()].clone()));
                    }
                }
                (relabeled(theta(), &map), Pants::Theta, seams)
            }
            _ => {
                let map = [("l", tmp('l')), ("r", tmp('r')), ("o", open[0].clone())];
                (relabeled(dumbbell(), &map), Pants::Dumbbell, vec![tmp('l'), tmp('r')])
            }
        };

        let (base, prepared) = prepare(&x, &glue, cfg, cfg.seed.wrapping_add(k as u64)).map_err(fail)?;
        let mut z = disjoint_union(&base, &pants).map_err(fail)?;
        let mut side: Vec<Side> =
            (0..z.num_darts()).map(|d| if d < base.num_darts() { Side::Old } else { Side::New }).collect();
        let mut circle_lengths = Vec::new();
        for (a, b) in glue.iter().zip(&seams) {
            let r = identify_cycles(&z, a, b, cfg.offset).map_err(fail)?;
            let mut next = vec![Side::Circle; r.graph.num_darts()];
            for (d, m) in r.map.iter().enumerate() {
                if let Some(m) = m {
                    next[*m] = side[d];
                }
            }
            for &c in &r.circle {
                next[c] = Side::Circle;
            }
            side = next;
            circle_lengths.push(r.length);
            z = r.graph;
        }
        let cover = if glue.is_empty() {
            None
        } else {
            let pick = |s: Side| Subgraph::from_darts(&z, (0..z.num_darts()).filter(|&d| side[d] == s || side[d] == Side::Circle));
            Some(gluing_cover_check(&z, &pick(Side::Old), &pick(Side::New)).map_err(fail)?)
        };
        x = z;

        placed.insert(step.vertex);
        let labels: BTreeSet<String> = x.face_labels().keys().cloned().collect();
        if labels != expected_open_labels(g, &placed) {
            return Err(SynthError::Mismatch(format!("open labels after step {k} are {labels:?}")));
        }
        records.push(StepRecord {
            vertex: step.vertex,
            glue_edges: step.glue_edges.clone(),
            pants: pants_kind,
            prepared,
            circle_lengths,
            offset: cfg.offset,
            cover,
            open_labels: labels.into_iter().collect(),
            components: component_invariants(&x).map_err(fail)?,
        });
    }

    let comps = component_invariants(&x).map_err(|e| SynthError::Step { step: steps.len(), vertex: 0, source: e })?;
    let skeleton = SurfaceType::new(comps.iter().map(|s| s.genus).sum(), comps.iter().map(|s| s.punctures).sum());
    let cert = SynthCertificate { config: *cfg, steps: records, mirror, skeleton };
    if !cert.passes() {
        return Err(SynthError::Mismatch(format!(
            "skeleton {:?} vs mirror {:?}, or a gluing certificate is malformed",
            cert.skeleton, cert.mirror
        )));
    }
    Ok((x, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::{surface_invariants, validate_ribbon, wheel, RibbonData};

    fn gn(x: &RibbonGraph) -> (usize, usize) {
        let s = surface_invariants(x).unwrap();
        (s.genus, s.punctures)
    }

    fn theta2() -> RibbonGraph {
        relabeled(theta(), &[("a", "d".into()), ("b", "e".into()), ("c", "f".into())])
    }

    #[test]
    fn two_thetas_along_one_circle() {
        for off in 0..3 {
            let z = glue_along_cycles(&theta(), &["a"], &theta2(), &["d"], &[off]).unwrap();
            assert_eq!(gn(&z), (0, 4));
            assert_eq!(z.face_labels().len(), 4);
        }
    }

    #[test]
    fn two_dumbbells_along_both_loops() {
        let y = relabeled(dumbbell(), &[("l", "l2".into()), ("r", "r2".into()), ("o", "o2".into())]);
        let z = glue_along_cycles(&dumbbell(), &["l", "r"], &y, &["l2", "r2"], &[0, 0]).unwrap();
        assert_eq!(gn(&z), (1, 2));
        assert!(matches!(
            glue_along_cycles(&dumbbell(), &["o"], &y, &["l2"], &[0]),
            Err(RibbonError::NotCycle(_))
        ));
    }

    #[test]
    fn offsets_do_not_change_the_type() {
        let x = crate::ribbon::standard_skeleton(1, 3).unwrap();
        let (x, _) = ensure_cycle_at_face(&x, &CycleRequest::new(&["p1"])).unwrap();
        let len = x.labeled_face("p1").unwrap().darts.len().max(3);
        for off in 0..len {
            let z = glue_along_cycles(&x, &["p1"], &theta2(), &["d"], &[off]).unwrap();
            assert_eq!(gn(&z), (1, 4));
        }
    }

    #[test]
    fn gluing_a_wheel_adds_open_edges() {
        let w = wheel(2, 0, "++").unwrap();
        let mut y = w.graph.clone();
        let f = (0..y.num_darts()).find(|&d| y.face_walk(d).is_cycle).unwrap();
        y.set_label("s", f).unwrap();
        let z = glue_along_cycles(&theta(), &["a"], &y, &["s"], &[0]).unwrap();
        assert!(validate_ribbon(&RibbonData::from(&z)).valid);
        assert_eq!(z.external_darts().len(), 2);
        assert_eq!(z.face_labels().keys().collect::<Vec<_>>(), ["b", "c"]);
    }
}
