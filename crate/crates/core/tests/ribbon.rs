use proptest::prelude::*;
use tropskel::ribbon::{
    apply_move, dumbbell, end_connect_sum, ensure_cycle_at_face, figure_eight, has_cycle_at_face, is_isomorphic,
    standard_skeleton, surface_invariants, theta, CycleRequest, Move, MoveLog, RibbonGraph, SurfaceType,
};

fn gn(x: &RibbonGraph) -> (usize, usize) {
    let s = surface_invariants(x).unwrap();
    (s.genus, s.punctures)
}

/// Turn raw numbers into a move that makes sense for `x`, when possible.
fn pick(x: &RibbonGraph, (kind, a, b): (u8, usize, usize)) -> Move {
    let d = a % x.num_darts();
    match kind % 3 {
        0 => Move::Contract { dart: d },
        1 => {
            let v = x.vertex_of(d);
            Move::Expand { vertex: v, start: d, len: b % (x.order(v).len() + 1) }
        }
        _ => Move::Subdivide { dart: d },
    }
}

fn start(k: usize) -> RibbonGraph {
    match k % 5 {
        0 => theta(),
        1 => dumbbell(),
        2 => standard_skeleton(1, 2).unwrap(),
        3 => standard_skeleton(2, 1).unwrap(),
        _ => standard_skeleton(0, 4).unwrap(),
    }
}

proptest! {
    #[test]
    fn moves_keep_type_and_labels(k in 0usize..5, raw in prop::collection::vec((0u8..3, 0usize..64, 0usize..8), 1..24)) {
        let mut x = start(k);
        let before = gn(&x);
        let labels: Vec<String> = x.face_labels().keys().cloned().collect();
        for r in raw {
            if let Ok(y) = apply_move(&x, pick(&x, r)) {
                x = y;
            }
            prop_assert_eq!(gn(&x), before);
            prop_assert_eq!(x.face_labels().keys().cloned().collect::<Vec<_>>(), labels.clone());
            // labels stay on distinct faces
            let faces = x.face_index();
            let mut hit: Vec<usize> = x.face_labels().values().map(|&d| faces[d]).collect();
            hit.sort_unstable();
            hit.dedup();
            prop_assert_eq!(hit.len(), labels.len());
        }
    }
}

#[test]
fn end_connect_sum_adds_genera() {
    let cases = [(theta(), "a", figure_eight(), "a"), (dumbbell(), "o", theta(), "c"), (figure_eight(), "a", figure_eight(), "a")];
    for (x, f, y, h) in cases {
        let (g1, n1) = gn(&x);
        let (g2, n2) = gn(&y);
        let z = end_connect_sum(&x, f, &y, h).unwrap();
        assert_eq!(gn(&z), (g1 + g2, n1 + n2 - 1));
    }
}

#[test]
fn standard_skeleta_have_requested_type() {
    for g in 0..=3 {
        for n in 1..=4 {
            if (g, n) == (0, 1) {
                assert!(standard_skeleton(g, n).is_err());
                continue;
            }
            let x = standard_skeleton(g, n).unwrap();
            assert_eq!(surface_invariants(&x).unwrap(), SurfaceType::new(g, n));
            assert_eq!(x.face_labels().len(), n);
        }
    }
}

#[test]
fn explicit_logs_replay() {
    for k in 0..5 {
        let x = start(k);
        for label in x.face_labels().keys().cloned().collect::<Vec<_>>() {
            let Ok((y, log)) = ensure_cycle_at_face(&x, &CycleRequest::new(&[&label]).with_seed(k as u64)) else {
                continue;
            };
            assert!(has_cycle_at_face(&y, &label).unwrap());
            assert_eq!(gn(&y), gn(&x));
            if let MoveLog::Explicit { moves } = log {
                let z = moves.iter().fold(x.clone(), |g, &m| apply_move(&g, m).unwrap());
                assert!(is_isomorphic(&z, &y));
            }
        }
    }
}
