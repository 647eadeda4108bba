use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::moves::{apply_move_mapped, Move};
use super::subgraph::{tubular_neighborhood, Subgraph};
use super::wheel::{classify_wheel, WheelClass};
use super::{circle, end_connect_sum, figure_eight, relabeled, surface_invariants, theta, Draft, RibbonError, RibbonGraph};

pub fn has_cycle_at_face(x: &RibbonGraph, label: &str) -> Result<bool, RibbonError> {
    Ok(x.labeled_face(label)?.is_cycle)
}

/// What [`ensure_cycle_at_face`] must achieve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleRequest {
    pub targets: Vec<String>,
    /// Faces that are cycles already and must stay so after every move.
    pub preserve: Vec<String>,
    /// Require the target and preserved cycles to be pairwise
    /// vertex-disjoint.
    pub disjoint: bool,
    /// Number of local moves tried before falling back to re-synthesis.
    pub budget: usize,
    pub seed: u64,
}

impl CycleRequest {
    pub const DEFAULT_BUDGET: usize = 64;

    pub fn new<S: AsRef<str>>(targets: &[S]) -> Self {
        CycleRequest {
            targets: targets.iter().map(|s| s.as_ref().to_string()).collect(),
            preserve: Vec::new(),
            disjoint: false,
            budget: Self::DEFAULT_BUDGET,
            seed: 0,
        }
    }

    pub fn disjoint(mut self) -> Self {
        self.disjoint = true;
        self
    }

    pub fn preserving<S: AsRef<str>>(mut self, preserve: &[S]) -> Self {
        self.preserve = preserve.iter().map(|s| s.as_ref().to_string()).collect();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

/// How a graph was brought into the requested shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MoveLog {
    /// Replaying these moves on the input yields the output.
    Explicit { moves: Vec<Move> },
    /// The output was rebuilt from scratch with the same `(g, n)`; the
    /// move sequence connecting the two exists but is not recorded.
    Resynthesized { moves_tried: usize, faces: BTreeMap<String, String> },
}

impl MoveLog {
    pub fn is_explicit(&self) -> bool {
        matches!(self, MoveLog::Explicit { .. })
    }
}

fn pairwise_disjoint(x: &RibbonGraph, labels: &[String]) -> Option<(String, String)> {
    let faces: Vec<BTreeSet<usize>> =
        labels.iter().map(|l| x.labeled_face(l).map(|f| f.vertices).unwrap_or_default()).collect();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if !faces[i].is_disjoint(&faces[j]) {
                return Some((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    None
}

/// Corners of vertex `v` lying in face `label`: corner `k` sits between
/// `order[k]` and `order[k + 1]`.
fn corners_in(x: &RibbonGraph, v: usize, face: &BTreeSet<usize>) -> Vec<bool> {
    let o = x.order(v);
    (0..o.len()).map(|k| face.contains(&o[(k + 1) % o.len()])).collect()
}

/// Expansions at `v` putting a corner of `inner` into a different vertex
/// than a corner of `outer`, cutting only at corners not in `avoid`.
fn separating_expansions(x: &RibbonGraph, v: usize, first: &[bool], second: &[bool], avoid: &[bool]) -> Vec<Move> {
    let o = x.order(v);
    let d = o.len();
    let mut out = Vec::new();
    for c1 in (0..d).filter(|&k| first[k]) {
        for c2 in (0..d).filter(|&k| second[k] && k != c1) {
            // p strictly between c1 and c2, q strictly between c2 and c1
            let between = |a: usize, b: usize| (1..(b + d - a) % d).map(move |s| (a + s) % d);
            for p in between(c1, c2).filter(|&p| !avoid[p]) {
                for q in between(c2, c1).filter(|&q| !avoid[q]) {
                    let start = o[(p + 1) % d];
                    let len = (q + d - p) % d;
                    out.push(Move::Expand { vertex: v, start, len });
                }
            }
        }
    }
    out
}

/// Local moves that make progress on the first unmet demand.
fn candidate_moves(x: &RibbonGraph, targets: &[String], disjoint: bool) -> Vec<Move> {
    for t in targets {
        let f = x.labeled_face(t).expect("labels exist");
        if f.is_cycle {
            continue;
        }
        let walk: BTreeSet<usize> = f.darts.iter().copied().collect();
        let mut moves: Vec<Move> = f
            .darts
            .iter()
            .filter(|&&d| walk.contains(&x.sigma(d)) && d < x.sigma(d) && !x.is_loop(d))
            .map(|&d| Move::Contract { dart: d })
            .collect();
        if moves.is_empty() {
            for &v in &f.vertices {
                let c = corners_in(x, v, &walk);
                if c.iter().filter(|&&b| b).count() >= 2 {
                    moves.extend(separating_expansions(x, v, &c, &c, &c));
                }
            }
        }
        return moves;
    }
    if disjoint {
        if let Some((a, b)) = pairwise_disjoint(x, targets) {
            let fa = x.labeled_face(&a).unwrap();
            let fb = x.labeled_face(&b).unwrap();
            let wa: BTreeSet<usize> = fa.darts.iter().copied().collect();
            let wb: BTreeSet<usize> = fb.darts.iter().copied().collect();
            let mut moves: Vec<Move> = fa
                .darts
                .iter()
                .filter(|&&d| wb.contains(&x.sigma(d)) && !x.is_loop(d))
                .map(|&d| Move::Contract { dart: d })
                .collect();
            for &v in fa.vertices.intersection(&fb.vertices) {
                let ca = corners_in(x, v, &wa);
                let cb = corners_in(x, v, &wb);
                let avoid: Vec<bool> = ca.iter().zip(&cb).map(|(p, q)| *p || *q).collect();
                moves.extend(separating_expansions(x, v, &ca, &cb, &avoid));
            }
            return moves;
        }
    }
    Vec::new()
}

fn satisfied(x: &RibbonGraph, demanded: &[String], disjoint: bool) -> bool {
    demanded.iter().all(|l| x.labeled_face(l).is_ok_and(|f| f.is_cycle))
        && (!disjoint || pairwise_disjoint(x, demanded).is_none())
}

/// Bring `x` into a form with cycles at the target faces, keeping the
/// preserved faces cycles, by contractions and expansions; after `budget`
/// moves without success, rebuild a standard skeleton of the same type.
pub fn ensure_cycle_at_face(x: &RibbonGraph, req: &CycleRequest) -> Result<(RibbonGraph, MoveLog), RibbonError> {
    let st = surface_invariants(x)?;
    if st.punctures < 2 {
        return Err(RibbonError::NoCyclableFace);
    }
    for l in req.targets.iter().chain(&req.preserve) {
        x.label_dart(l)?;
    }
    if let Some(l) = req.targets.iter().find(|l| req.preserve.contains(l)) {
        return Err(RibbonError::Infeasible(format!("{l:?} is both a target and preserved")));
    }
    for l in &req.preserve {
        if !x.labeled_face(l)?.is_cycle {
            return Err(RibbonError::NotCycle(l.clone()));
        }
    }
    let demanded: Vec<String> = req.preserve.iter().chain(&req.targets).cloned().collect();
    let k = demanded.iter().collect::<BTreeSet<_>>().len();
    if k < demanded.len() {
        return Err(RibbonError::Infeasible("a face is demanded twice".into()));
    }
    let resynthesizable = k < st.punctures || (!req.disjoint && matches!((st.genus, st.punctures, k), (0, 2, 2) | (0, 3, 3)));
    if req.disjoint && k >= st.punctures {
        return Err(RibbonError::Infeasible(format!(
            "{k} pairwise disjoint cycles cannot exist on a surface with {} punctures",
            st.punctures
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
    let mut g = x.clone();
    let mut moves = Vec::new();
    let mut tried = 0;
    while tried < req.budget {
        if satisfied(&g, &demanded, req.disjoint) {
            return Ok((g, MoveLog::Explicit { moves }));
        }
        let protected: Vec<String> =
            demanded.iter().filter(|l| g.labeled_face(l).is_ok_and(|f| f.is_cycle)).cloned().collect();
        let mut candidates = candidate_moves(&g, &demanded, req.disjoint);
        candidates.shuffle(&mut rng);
        let mut progressed = false;
        for m in candidates {
            tried += 1;
            let Ok((next, _)) = apply_move_mapped(&g, m) else { continue };
            if protected.iter().all(|l| next.labeled_face(l).is_ok_and(|f| f.is_cycle)) {
                g = next;
                moves.push(m);
                progressed = true;
                break;
            }
            if tried >= req.budget {
                break;
            }
        }
        if !progressed {
            break;
        }
    }
    if satisfied(&g, &demanded, req.disjoint) {
        return Ok((g, MoveLog::Explicit { moves }));
    }
    if !resynthesizable {
        return Err(RibbonError::Infeasible(format!(
            "no local moves found and no standard skeleton of type ({}, {}) has {k} such cycles",
            st.genus, st.punctures
        )));
    }
    let (y, faces) = resynthesize(x, &demanded)?;
    debug_assert!(satisfied(&y, &demanded, req.disjoint));
    Ok((y, MoveLog::Resynthesized { moves_tried: tried, faces }))
}

/// A skeleton of the same type as `x` with cycles at `demanded`, which are
/// pairwise disjoint when fewer than the puncture count.
fn resynthesize(x: &RibbonGraph, demanded: &[String]) -> Result<(RibbonGraph, BTreeMap<String, String>), RibbonError> {
    let st = surface_invariants(x)?;
    let (g, n) = (st.genus, st.punctures);
    // roles: "c1".."c{n-1}" are disjoint cycle faces, "m" the remaining face
    let role = |k: usize| format!("c{k}");
    let (mut y, roles): (RibbonGraph, Vec<String>) = if demanded.len() == n && g == 0 && n == 3 {
        (relabeled(theta(), &[("a", role(1)), ("b", role(2)), ("c", role(3))]), (1..=3).map(role).collect())
    } else {
        let mut y = if g == 0 {
            relabeled(circle(), &[("a", "m".into()), ("b", role(1))])
        } else {
            let mut y = relabeled(figure_eight(), &[("a", "m".into())]);
            for _ in 1..g {
                y = end_connect_sum(&y, "m", &relabeled(figure_eight(), &[("a", "#".into())]), "#")?;
            }
            y
        };
        let first = if g == 0 { 2 } else { 1 };
        for k in first..n {
            y = end_connect_sum(&y, "m", &relabeled(circle(), &[("a", "#".into()), ("b", role(k))]), "#")?;
        }
        let mut roles: Vec<String> = (1..n).map(role).collect();
        roles.push("m".into());
        (y, roles)
    };
    let mut others: Vec<String> = x.face_labels().keys().filter(|l| !demanded.contains(l)).cloned().collect();
    let order: Vec<String> = demanded.iter().cloned().chain(others.drain(..)).collect();
    let mut faces = BTreeMap::new();
    let old = std::mem::take(&mut y.labels);
    for (label, r) in order.iter().zip(&roles) {
        y.labels.insert(label.clone(), old[r]);
        faces.insert(label.clone(), r.clone());
    }
    Ok((y, faces))
}

/// The pieces of a graph cut along a cycle face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitAtCycle {
    /// Everything off the cycle; edges that met the cycle are external
    /// here, and chords are cut at a new midpoint vertex.
    pub rest: RibbonGraph,
    /// The cycle with one spoke per dart leaving it.
    pub wheel: RibbonGraph,
    pub wheel_class: WheelClass,
    /// Number of spokes.
    pub r: usize,
    /// For each wheel spoke, the external dart of `rest` it reconnects to
    /// (none for spokes that were already external).
    pub pairing: Vec<(usize, Option<usize>)>,
    /// Midpoint vertices of `rest` created on chords.
    pub midpoints: Vec<usize>,
    /// Labels whose face dart ended up in the wheel part.
    pub wheel_labels: BTreeMap<String, usize>,
}

pub fn split_at_cycle(x: &RibbonGraph, f: &str) -> Result<SplitAtCycle, RibbonError> {
    let walk = x.labeled_face(f)?;
    if !walk.is_cycle {
        return Err(RibbonError::NotCycle(f.to_string()));
    }
    let on_cycle: BTreeSet<usize> = walk.vertices.clone();
    let z = Subgraph::from_darts(x, walk.darts.iter().copied());
    let (wheel, back) = tubular_neighborhood(x, &z)?;
    let mut to_wheel = vec![None; x.num_darts()];
    for (n, &o) in back.iter().enumerate() {
        to_wheel[o] = Some(n);
    }

    let mut draft = Draft {
        sigma: (0..x.num_darts()).map(|d| x.sigma(d)).collect(),
        orders: (0..x.num_vertices())
            .map(|v| if on_cycle.contains(&v) { Vec::new() } else { x.order(v).to_vec() })
            .collect(),
        labels: BTreeMap::new(),
    };
    let mut pairing_old = Vec::new();
    let mut midpoints_old = Vec::new();
    for &v in &on_cycle {
        for &d in x.order(v) {
            if z.contains_dart(x, d) {
                continue;
            }
            let e = x.sigma(d);
            if e == d {
                pairing_old.push((d, None));
            } else if !on_cycle.contains(&x.vertex_of(e)) {
                draft.sigma[e] = e;
                pairing_old.push((d, Some(e)));
            } else if d < e {
                let md = draft.new_dart();
                let me = draft.new_dart();
                midpoints_old.push(draft.orders.len());
                draft.orders.push(vec![md, me]);
                pairing_old.push((d, Some(md)));
                pairing_old.push((e, Some(me)));
            }
        }
    }
    let mut wheel_labels = BTreeMap::new();
    for (l, &d) in x.face_labels() {
        match to_wheel[d] {
            Some(w) => {
                wheel_labels.insert(l.clone(), w);
            }
            None => {
                draft.labels.insert(l.clone(), d);
            }
        }
    }
    let nonempty_before: Vec<usize> =
        draft.orders.iter().enumerate().filter(|(_, o)| !o.is_empty()).map(|(v, _)| v).collect();
    let (rest, map) = draft.finish();
    let midpoints =
        midpoints_old.iter().map(|m| nonempty_before.iter().position(|v| v == m).unwrap()).collect();
    let mut pairing: Vec<(usize, Option<usize>)> =
        pairing_old.iter().map(|&(s, e)| (to_wheel[s].unwrap(), e.map(|e| map[e].unwrap()))).collect();
    pairing.sort_unstable();
    let wheel_class = classify_wheel(&wheel)?;
    Ok(SplitAtCycle { rest, r: pairing.len(), wheel, wheel_class, pairing, midpoints, wheel_labels })
}

impl SplitAtCycle {
    /// Glue the pieces back together, smoothing the chord midpoints.
    pub fn reconnect(&self) -> RibbonGraph {
        let off = self.wheel.num_darts();
        let mut d = self.wheel.draft();
        d.labels = self.wheel_labels.clone();
        d.sigma.extend((0..self.rest.num_darts()).map(|e| self.rest.sigma(e) + off));
        d.orders.extend(self.rest.orders().iter().map(|o| o.iter().map(|&e| e + off).collect()));
        d.labels.extend(self.rest.face_labels().iter().map(|(l, &e)| (l.clone(), e + off)));
        for &(s, e) in &self.pairing {
            if let Some(e) = e {
                d.pair(s, e + off);
            }
        }
        for &m in &self.midpoints {
            let [a, b] = [self.rest.order(m)[0] + off, self.rest.order(m)[1] + off];
            let (sa, sb) = (d.sigma[a], d.sigma[b]);
            d.pair(sa, sb);
            d.orders[off_vertex(&self.wheel, m)].clear();
        }
        d.finish().0
    }
}

fn off_vertex(wheel: &RibbonGraph, m: usize) -> usize {
    wheel.num_vertices() + m
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn gn(x: &RibbonGraph) -> (usize, usize) {
        let s = surface_invariants(x).unwrap();
        (s.genus, s.punctures)
    }

    fn replay(x: &RibbonGraph, log: &MoveLog) -> RibbonGraph {
        let MoveLog::Explicit { moves } = log else { panic!("not explicit") };
        let mut g = x.clone();
        for &m in moves {
            g = apply_move(&g, m).unwrap();
            assert_eq!(gn(&g), gn(x));
        }
        g
    }

    #[test]
    fn theta_needs_no_moves() {
        let (y, log) = ensure_cycle_at_face(&theta(), &CycleRequest::new(&["b"])).unwrap();
        assert_eq!(log, MoveLog::Explicit { moves: vec![] });
        assert_eq!(y, theta());
    }

    #[test]
    fn dumbbell_outer_face_becomes_a_cycle() {
        let x = dumbbell();
        let (y, log) = ensure_cycle_at_face(&x, &CycleRequest::new(&["o"])).unwrap();
        assert!(log.is_explicit());
        assert!(has_cycle_at_face(&y, "o").unwrap());
        assert_eq!(gn(&y), (0, 3));
        assert_eq!(replay(&x, &log), y);
    }

    #[test]
    fn disjoint_cycles_on_four_punctures() {
        let x = standard_skeleton(0, 4).unwrap();
        let (y, _) = ensure_cycle_at_face(&x, &CycleRequest::new(&["p0", "p1"]).disjoint()).unwrap();
        assert_eq!(gn(&y), (0, 4));
        let a = y.labeled_face("p0").unwrap();
        let b = y.labeled_face("p1").unwrap();
        assert!(a.is_cycle && b.is_cycle && a.vertices.is_disjoint(&b.vertices));
    }

    #[test]
    fn infeasible_requests() {
        assert!(matches!(
            ensure_cycle_at_face(&figure_eight(), &CycleRequest::new(&["a"])),
            Err(RibbonError::NoCyclableFace)
        ));
        assert!(matches!(
            ensure_cycle_at_face(&theta(), &CycleRequest::new(&["a", "b", "c"]).disjoint()),
            Err(RibbonError::Infeasible(_))
        ));
    }

    #[test]
    fn resynthesis_fallback_keeps_type_and_labels() {
        let x = standard_skeleton(2, 3).unwrap();
        let (y, log) = ensure_cycle_at_face(&x, &CycleRequest::new(&["p0", "p2"]).disjoint().with_budget(0)).unwrap();
        assert!(!log.is_explicit());
        assert_eq!(gn(&y), (2, 3));
        assert_eq!(y.face_labels().keys().collect::<Vec<_>>(), x.face_labels().keys().collect::<Vec<_>>());
        assert!(has_cycle_at_face(&y, "p0").unwrap() && has_cycle_at_face(&y, "p2").unwrap());
    }

    #[test]
    fn split_dumbbell_at_loop() {
        let s = split_at_cycle(&dumbbell(), "l").unwrap();
        assert_eq!(s.r, 1);
        assert_eq!(s.wheel_class.counts, [1, 0]);
        assert_eq!(s.rest.num_vertices(), 1);
        assert_eq!(s.rest.external_darts().len(), 1);
        assert!(is_isomorphic(&s.reconnect(), &dumbbell()));
    }

    #[test]
    fn split_theta_has_two_spokes() {
        let s = split_at_cycle(&theta(), "a").unwrap();
        assert_eq!(s.r, 2);
        assert_eq!(s.midpoints.len(), 1);
        assert!(is_isomorphic(&s.reconnect(), &theta()));
    }

    #[test]
    fn split_wheel_is_all_spokes() {
        let w = wheel(3, 0, "+++").unwrap();
        let mut g = w.graph.clone();
        let face = (0..g.num_darts()).find(|&d| g.face_walk(d).is_cycle).unwrap();
        g.set_label("s", face).unwrap();
        let s = split_at_cycle(&g, "s").unwrap();
        assert_eq!(s.r, 3);
        assert_eq!(s.rest.num_darts(), 0);
        assert!(s.pairing.iter().all(|(_, e)| e.is_none()));
    }
}
