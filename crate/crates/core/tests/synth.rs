use tropskel::geometry::Vec2;
use tropskel::lattice::{dual_tropical_graph, random_triangulation, RandomTriangulationConfig, Triangulation};
use tropskel::ribbon::{surface_invariants, RibbonGraph};
use tropskel::synth::{synthesize, Pants, SynthConfig};
use tropskel::tropical::{mirror_invariants, TropicalGraph};

fn dual(t: &Triangulation) -> TropicalGraph {
    dual_tropical_graph(t).unwrap().graph
}

fn gn(x: &RibbonGraph) -> (usize, usize) {
    let s = surface_invariants(x).unwrap();
    (s.genus, s.punctures)
}

#[test]
fn dilated_simplices() {
    for (d, expected) in [(1, (0, 3)), (2, (0, 6)), (3, (1, 9)), (4, (3, 12))] {
        let g = dual(&Triangulation::dilated_simplex(d));
        let (x, cert) = synthesize(&g, &SynthConfig::default()).unwrap();
        assert_eq!(gn(&x), expected, "d = {d}");
        assert!(cert.passes());
        assert_eq!(cert.two_circle_steps(), expected.0, "each bounded region closes once");
        let labels: Vec<&String> = x.face_labels().keys().collect();
        assert_eq!(labels.len(), expected.1);
        assert!(labels.iter().all(|l| l.starts_with('i')));
    }
}

#[test]
fn unit_and_two_triangle_examples() {
    let (x, cert) = synthesize(&dual(&Triangulation::dilated_simplex(1)), &SynthConfig::default()).unwrap();
    assert_eq!(gn(&x), (0, 3));
    assert_eq!(cert.steps[0].pants, Pants::Theta);

    let two = Triangulation::new(
        vec![Vec2::new(0, 0), Vec2::new(1, 0), Vec2::new(0, 1), Vec2::new(1, 1)],
        vec![[0, 1, 2], [1, 3, 2]],
        None,
    )
    .unwrap();
    let (x, cert) = synthesize(&dual(&two), &SynthConfig::default()).unwrap();
    assert_eq!(gn(&x), (0, 4));
    let single: Vec<_> = cert.steps.iter().filter(|s| s.glue_edges.len() == 1).collect();
    assert_eq!(single.len(), 1);
    assert_eq!(single[0].cover.as_ref().unwrap().circles, 1);
}

#[test]
fn random_corpus_matches_mirror() {
    let cfg = RandomTriangulationConfig::default();
    for seed in 0..40 {
        let g = dual(&random_triangulation(seed, cfg));
        let m = mirror_invariants(&g).unwrap();
        let (x, cert) = synthesize(&g, &SynthConfig { seed, ..SynthConfig::default() }).unwrap();
        assert_eq!(gn(&x), (m.genus, m.punctures), "seed {seed}");
        assert!(cert.passes());
    }
}

#[test]
fn deterministic_and_direction_independent_type() {
    let g = dual(&Triangulation::dilated_simplex(3));
    let cfg = SynthConfig { seed: 7, ..SynthConfig::default() };
    assert_eq!(synthesize(&g, &cfg).unwrap().0, synthesize(&g, &cfg).unwrap().0);
    for dir in [Vec2::new(1, 0), Vec2::new(2, -3), Vec2::new(-1, -1)] {
        for offset in 0..3 {
            let (x, _) = synthesize(&g, &SynthConfig { direction: dir, offset, ..cfg }).unwrap();
            assert_eq!(gn(&x), (1, 9));
        }
    }
}
