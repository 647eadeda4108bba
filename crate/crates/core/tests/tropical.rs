use tropskel::geometry::Vec2;
use tropskel::lattice::{dual_tropical_graph, random_triangulation, RandomTriangulationConfig, Triangulation};
use tropskel::tropical::{
    check_balanced, check_embedding, check_nondegenerate, downward_count, first_betti_number,
    infinite_edge_count, mirror_invariants, replay, sweep_decompose, PlanarFaces, VertexCase,
};

fn dual(d: usize) -> tropskel::tropical::TropicalGraph {
    dual_tropical_graph(&Triangulation::dilated_simplex(d)).unwrap().graph
}

#[test]
fn dilated_simplex_invariants() {
    for (d, g, n) in [(1, 0, 3), (2, 0, 6), (3, 1, 9), (4, 3, 12)] {
        let m = mirror_invariants(&dual(d)).unwrap();
        assert_eq!((m.genus, m.punctures), (g, n), "d = {d}");
        assert_eq!(2 * g + 3 * d, d * d + 2);
    }
}

#[test]
fn three_delta_regions() {
    let faces = PlanarFaces::trace(&dual(3)).unwrap();
    assert_eq!(faces.regions.len(), 10);
    assert_eq!(faces.bounded_count(), 1);
}

#[test]
fn sweep_examples() {
    let steps = sweep_decompose(&dual(1), Vec2::new(0, 1)).unwrap();
    assert_eq!(steps.len(), 1);
    assert!(steps[0].glue_edges.is_empty());
    assert_eq!(steps[0].case, VertexCase::ThreeInfinite);

    let two = Triangulation::new(
        vec![Vec2::new(0, 0), Vec2::new(1, 0), Vec2::new(0, 1), Vec2::new(1, 1)],
        vec![[0, 1, 2], [1, 3, 2]],
        None,
    )
    .unwrap();
    let g = dual_tropical_graph(&two).unwrap().graph;
    let steps = sweep_decompose(&g, Vec2::new(0, 1)).unwrap();
    assert_eq!(steps.len(), 2);
    assert_eq!(steps[1].glue_edges.len(), 1);

    let steps = sweep_decompose(&dual(3), Vec2::new(0, 1)).unwrap();
    assert_eq!(steps.len(), 9);
    assert!(steps.iter().any(|s| s.glue_edges.len() == 2));
}

#[test]
fn random_corpus_properties() {
    let cfg = RandomTriangulationConfig::default();
    for seed in 0..60 {
        let t = random_triangulation(seed, cfg);
        let g = dual_tropical_graph(&t).unwrap().graph;
        assert!(check_balanced(&g).unwrap().balanced);
        let nd = check_nondegenerate(&g).unwrap();
        assert!(nd.nondegenerate);
        assert!(nd.vertices.iter().all(|v| v.spans_lattice));
        assert!(check_embedding(&g).unwrap().embedded, "seed {seed}");
        let count = infinite_edge_count(&g);
        assert!(count.consistent && count.count >= 2);
        assert_eq!(count.count, t.polytope().boundary_segments());
        let m = mirror_invariants(&g).unwrap();
        assert_eq!(m.genus, first_betti_number(&g));
        for dir in [Vec2::new(0, 1), Vec2::new(3, -2), Vec2::new(0, 0)] {
            let steps = sweep_decompose(&g, dir).unwrap();
            let mut rebuilt = replay(&steps).unwrap();
            rebuilt.convention = g.convention.clone();
            assert_eq!(rebuilt, g);
            for s in &steps {
                assert!(s.glue_edges.len() <= 2);
                // balancing forces one or two downward ends; a step with no
                // glue edges has only infinite ones below it
                assert!((1..=2).contains(&downward_count(s, dir)));
            }
            assert!(steps.windows(2).all(|w| w[0].height <= w[1].height));
            assert!(steps[0].glue_edges.is_empty());
        }
    }
}
