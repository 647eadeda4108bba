use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Draft, RibbonError, RibbonGraph};

/// An elementary rewrite. Dart and vertex ids refer to the graph the move
/// is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum Move {
    /// Collapse the (non-loop) edge of `dart`.
    Contract { dart: usize },
    /// Split `vertex`: the `len` darts starting at `start` move to a new
    /// vertex joined to the old one by a new edge.
    Expand { vertex: usize, start: usize, len: usize },
    /// Insert a two-valent vertex in the edge of `dart`.
    Subdivide { dart: usize },
}

pub fn apply_move(x: &RibbonGraph, m: Move) -> Result<RibbonGraph, RibbonError> {
    Ok(apply_move_mapped(x, m)?.0)
}

/// Apply a move and also return the old-to-new dart map.
pub(crate) fn apply_move_mapped(
    x: &RibbonGraph,
    m: Move,
) -> Result<(RibbonGraph, Vec<Option<usize>>), RibbonError> {
    match m {
        Move::Contract { dart } => contract(x, dart),
        Move::Expand { vertex, start, len } => expand(x, vertex, start, len),
        Move::Subdivide { dart } => subdivide(x, dart),
    }
}

fn check_dart(x: &RibbonGraph, d: usize) -> Result<(), RibbonError> {
    if d < x.num_darts() {
        Ok(())
    } else {
        Err(RibbonError::NoSuchDart(d))
    }
}

/// Insert a two-valent vertex in an internal edge.
pub fn subdivide_edge(x: &RibbonGraph, dart: usize) -> Result<RibbonGraph, RibbonError> {
    Ok(subdivide(x, dart)?.0)
}

fn subdivide(x: &RibbonGraph, h1: usize) -> Result<(RibbonGraph, Vec<Option<usize>>), RibbonError> {
    check_dart(x, h1)?;
    if x.is_external(h1) {
        return Err(RibbonError::ExternalEdge(h1));
    }
    let h2 = x.sigma(h1);
    let mut d = x.draft();
    let h1p = d.new_dart();
    let h2p = d.new_dart();
    d.pair(h1, h1p);
    d.pair(h2, h2p);
    d.orders.push(vec![h1p, h2p]);
    Ok(d.finish())
}

/// Rotate a cyclic order to start at `d`.
pub(crate) fn rotated(order: &[usize], d: usize) -> Vec<usize> {
    let k = order.iter().position(|&x| x == d).expect("dart is in the order");
    order[k..].iter().chain(&order[..k]).copied().collect()
}

/// Move every label pointing at a removed dart forward along its face.
pub(crate) fn relocate_labels(x: &RibbonGraph, draft: &mut Draft, removed: &BTreeSet<usize>) {
    for d in draft.labels.values_mut() {
        let start = *d;
        while removed.contains(d) {
            *d = x.next_in_face(*d);
            assert_ne!(*d, start, "face consists of removed darts only");
        }
    }
}

fn contract(x: &RibbonGraph, h: usize) -> Result<(RibbonGraph, Vec<Option<usize>>), RibbonError> {
    check_dart(x, h)?;
    if x.is_external(h) {
        return Err(RibbonError::ExternalEdge(h));
    }
    if x.is_loop(h) {
        return Err(RibbonError::LoopContraction(h));
    }
    let hp = x.sigma(h);
    let (u, w) = (x.vertex_of(h), x.vertex_of(hp));
    let a = rotated(x.order(u), h);
    let b = rotated(x.order(w), hp);
    if a.len() == 1 && b.len() == 1 {
        return Err(RibbonError::IsolatedVertex(h));
    }
    let mut d = x.draft();
    d.orders[u] = a[1..].iter().chain(&b[1..]).copied().collect();
    d.orders[w].clear();
    relocate_labels(x, &mut d, &BTreeSet::from([h, hp]));
    Ok(d.finish())
}

fn expand(
    x: &RibbonGraph,
    v: usize,
    start: usize,
    len: usize,
) -> Result<(RibbonGraph, Vec<Option<usize>>), RibbonError> {
    if v >= x.num_vertices() {
        return Err(RibbonError::NoSuchVertex(v));
    }
    check_dart(x, start)?;
    let valency = x.order(v).len();
    if x.vertex_of(start) != v || len > valency {
        return Err(RibbonError::BadArc { vertex: v, len, valency });
    }
    let c = rotated(x.order(v), start);
    let mut d = x.draft();
    let h = d.new_dart();
    let hp = d.new_dart();
    d.pair(h, hp);
    d.orders[v] = std::iter::once(h).chain(c[len..].iter().copied()).collect();
    d.orders.push(std::iter::once(hp).chain(c[..len].iter().copied()).collect());
    Ok(d.finish())
}

/// Join a corner of face `f1` of `x1` to a corner of face `f2` of `x2` by a
/// new edge. The merged face keeps the label `f1`; `f2` disappears.
pub fn end_connect_sum(x1: &RibbonGraph, f1: &str, x2: &RibbonGraph, f2: &str) -> Result<RibbonGraph, RibbonError> {
    let a1 = x1.label_dart(f1)?;
    let a2 = x2.label_dart(f2)? + x1.num_darts();
    let mut y = x2.clone();
    y.remove_label(f2);
    let union = super::disjoint_union(x1, &y)?;
    let mut d = union.draft();
    let n1 = d.new_dart();
    let n2 = d.new_dart();
    d.pair(n1, n2);
    for (n, a) in [(n1, a1), (n2, a2)] {
        let order = &mut d.orders[union.vertex_of(a)];
        let k = order.iter().position(|&e| e == a).unwrap();
        order.insert(k, n);
    }
    Ok(d.finish().0)
}

/// Collapse the cycle bounding face `f` to a point and drop the face: the
/// result is a spine of the surface with that puncture filled in.
pub fn close_up(x: &RibbonGraph, f: &str) -> Result<RibbonGraph, RibbonError> {
    let walk = x.labeled_face(f)?;
    if !walk.is_cycle {
        return Err(RibbonError::NotCycle(f.to_string()));
    }
    let mut g = x.clone();
    g.remove_label(f);
    let mut cycle = walk.darts;
    while cycle.len() > 1 {
        let (next, map) = contract(&g, cycle[0])?;
        cycle = cycle[1..].iter().map(|&d| map[d].expect("other cycle darts survive")).collect();
        g = next;
    }
    let a = cycle[0];
    let b = g.sigma(a);
    let v = g.vertex_of(a);
    if g.order(v).len() == 2 {
        return Err(RibbonError::Unsupported(0, 1));
    }
    let mut d = g.draft();
    d.orders[v].retain(|&e| e != a && e != b);
    relocate_labels(&g, &mut d, &BTreeSet::from([a, b]));
    Ok(d.finish().0)
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn gn(x: &RibbonGraph) -> (usize, usize) {
        let s = surface_invariants(x).unwrap();
        (s.genus, s.punctures)
    }

    #[test]
    fn subdivision_keeps_type() {
        let c = subdivide_edge(&circle(), 0).unwrap();
        assert_eq!((c.num_vertices(), c.num_darts() / 2), (2, 2));
        assert_eq!(gn(&c), (0, 2));
        let mut t = theta();
        for k in 0..5 {
            t = subdivide_edge(&t, k).unwrap();
            assert_eq!(gn(&t), (0, 3));
            assert_eq!(t.num_vertices(), 3 + k);
        }
        assert_eq!(t.face_labels().len(), 3);
    }

    #[test]
    fn contract_bridge_of_dumbbell() {
        let x = apply_move(&dumbbell(), Move::Contract { dart: 2 }).unwrap();
        assert_eq!(x.num_vertices(), 1);
        assert_eq!(x.order(0).len(), 4);
        assert_eq!(gn(&x), (0, 3));
        assert_eq!(x.face_labels().len(), 3);
        assert!(matches!(apply_move(&dumbbell(), Move::Contract { dart: 0 }), Err(RibbonError::LoopContraction(0))));
    }

    #[test]
    fn contract_theta_edge() {
        let x = apply_move(&theta(), Move::Contract { dart: 0 }).unwrap();
        assert_eq!(x.num_vertices(), 1);
        assert_eq!(gn(&x), (0, 3));
        // two nested loops, not interleaved
        let o = x.order(0);
        assert_eq!((x.sigma(o[0]), x.sigma(o[1])), (o[3], o[2]));
    }

    #[test]
    fn expansion_inverts_contraction() {
        let x = standard_skeleton(1, 3).unwrap();
        for v in 0..x.num_vertices() {
            let valency = x.order(v).len();
            for len in 0..=valency {
                let start = x.order(v)[0];
                let (y, map) = expand(&x, v, start, len).unwrap();
                assert_eq!(gn(&y), gn(&x));
                let new_dart = map[x.num_darts()].unwrap();
                let z = apply_move(&y, Move::Contract { dart: new_dart }).unwrap();
                assert!(is_isomorphic(&z, &x), "v={v} len={len}");
            }
        }
    }

    #[test]
    fn connect_sums() {
        let d = end_connect_sum(&circle(), "a", &relabeled(circle(), &[("a", "c".into()), ("b", "d".into())]), "c")
            .unwrap();
        assert_eq!(gn(&d), (0, 3));
        assert_eq!(d.faces().iter().filter(|f| f.is_cycle).count(), 2);
        let y = relabeled(circle(), &[("a", "x".into()), ("b", "y".into())]);
        assert_eq!(gn(&end_connect_sum(&figure_eight(), "a", &y, "x").unwrap()), (1, 2));
        let s = standard_skeleton(1, 2).unwrap();
        let t = relabeled(s.clone(), &[("p0", "q0".into()), ("p1", "q1".into())]);
        assert_eq!(gn(&end_connect_sum(&s, "p1", &t, "q0").unwrap()), (2, 3));
    }

    #[test]
    fn close_up_fills_a_puncture() {
        let x = standard_skeleton(1, 3).unwrap();
        for f in x.faces().iter().filter(|f| f.is_cycle) {
            let y = close_up(&x, f.label.as_deref().unwrap()).unwrap();
            assert_eq!(gn(&y), (1, 2));
        }
        let t = close_up(&theta(), "a").unwrap();
        assert_eq!(gn(&t), (0, 2));
    }
}
