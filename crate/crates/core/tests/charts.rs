use tropskel::charts::{
    build_b_diagram, build_cech_diagram, canonical_mapping, diagram_isomorphic, regions, verify_mapping,
};
use tropskel::lattice::{dual_tropical_graph, fan_charts, random_triangulation, RandomTriangulationConfig, Triangulation};
use tropskel::tropical::mirror_invariants;

#[test]
fn corpus_diagrams_match_canonically() {
    for seed in 0..60 {
        let t = random_triangulation(seed, RandomTriangulationConfig::default());
        let dual = dual_tropical_graph(&t).unwrap();
        let b = build_b_diagram(&dual.graph).unwrap();
        let c = build_cech_diagram(&t).unwrap();
        let m = diagram_isomorphic(&b, &c, Some(&canonical_mapping(&dual, &t, &b, &c))).unwrap();
        assert!(m.canonical, "seed {seed}");
        // regions correspond to lattice points
        assert_eq!(regions(&dual.graph).unwrap().count(), t.points().len());
        assert_eq!(
            regions(&dual.graph).unwrap().bounded_count(),
            mirror_invariants(&dual.graph).unwrap().genus
        );
    }
}

#[test]
fn search_finds_an_isomorphism_without_a_hint() {
    for d in 1..=3 {
        let t = Triangulation::dilated_simplex(d);
        let b = build_b_diagram(&dual_tropical_graph(&t).unwrap().graph).unwrap();
        let c = build_cech_diagram(&t).unwrap();
        let m = diagram_isomorphic(&b, &c, None).unwrap();
        assert!(verify_mapping(&b, &c, &m).is_ok());
    }
}

#[test]
fn adjacency_graph_matches_finite_edges() {
    for seed in 0..30 {
        let t = random_triangulation(seed, RandomTriangulationConfig::default());
        let dual = dual_tropical_graph(&t).unwrap();
        let charts = fan_charts(&t).unwrap();
        let mut adj: Vec<[usize; 2]> = charts.adjacencies.iter().map(|a| a.charts).collect();
        let mut fin: Vec<[usize; 2]> = dual
            .graph
            .finite_edges
            .iter()
            .map(|e| [e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1])])
            .collect();
        adj.sort_unstable();
        fin.sort_unstable();
        assert_eq!(adj, fin);
    }
}
