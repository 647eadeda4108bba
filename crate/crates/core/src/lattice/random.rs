use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dual_tropical_graph, LatticeError, LatticePolytope, Triangulation};
use crate::geometry::{det3, Vec2};

/// Parameters for [`random_triangulation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomTriangulationConfig {
    /// Upper bound on the number of unimodular triangles.
    pub max_triangles: usize,
    /// Hull points are drawn from `[0, box_size]^2`.
    pub box_size: i64,
    /// Random diagonal flips applied after the initial triangulation.
    pub flips: usize,
}

impl Default for RandomTriangulationConfig {
    fn default() -> Self {
        RandomTriangulationConfig { max_triangles: 20, box_size: 5, flips: 40 }
    }
}

/// A random regular unimodular triangulation of a random lattice polygon.
///
/// The polygon is the hull of a few random points. All its lattice points
/// are inserted (which forces every triangle to be unimodular), the result
/// is shuffled by random flips, and only regular outcomes are returned so
/// that the dual tropical curve exists. Deterministic in `seed`.
pub fn random_triangulation(seed: u64, cfg: RandomTriangulationConfig) -> Triangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(t) = attempt(&mut rng, cfg) {
            return t;
        }
    }
}

fn attempt(rng: &mut ChaCha8Rng, cfg: RandomTriangulationConfig) -> Option<Triangulation> {
    let k = rng.gen_range(3..=6);
    let raw: Vec<Vec2> = (0..k)
        .map(|_| Vec2::new(rng.gen_range(0..=cfg.box_size), rng.gen_range(0..=cfg.box_size)))
        .collect();
    let hull = LatticePolytope::convex_hull(&raw).ok()?;
    let area = hull.double_area() as usize;
    if area == 0 || area > cfg.max_triangles {
        return None;
    }
    let mut points = hull.vertices().to_vec();
    let mut rest: Vec<Vec2> =
        hull.lattice_points().into_iter().filter(|p| !points.contains(p)).collect();
    rest.shuffle(rng);
    points.extend(rest);

    let nh = hull.vertices().len();
    let mut tris: Vec<[usize; 3]> = (1..nh - 1).map(|i| [0, i, i + 1]).collect();
    for p in nh..points.len() {
        insert_point(&points, &mut tris, p);
    }
    for _ in 0..cfg.flips {
        random_flip(rng, &points, &mut tris);
    }
    let t = Triangulation::new(points, tris, None).ok()?;
    match dual_tropical_graph(&t) {
        Ok(_) => Some(t),
        Err(LatticeError::NotRegular) => None,
        Err(e) => panic!("generator produced an invalid triangulation: {e}"),
    }
}

/// Split the triangle(s) containing point `p` (all ccw).
fn insert_point(points: &[Vec2], tris: &mut Vec<[usize; 3]>, p: usize) {
    let q = points[p];
    let mut hits = Vec::new();
    for (i, t) in tris.iter().enumerate() {
        let d = [0, 1, 2].map(|k| det3(points[t[k]], points[t[(k + 1) % 3]], q));
        if d.iter().all(|&x| x >= 0) {
            hits.push((i, d));
        }
    }
    let mut replaced = Vec::new();
    let mut added = Vec::new();
    for (i, d) in hits {
        let t = tris[i];
        replaced.push(i);
        for k in 0..3 {
            if d[k] > 0 {
                added.push([t[k], t[(k + 1) % 3], p]);
            }
        }
    }
    replaced.sort_unstable();
    for i in replaced.into_iter().rev() {
        tris.swap_remove(i);
    }
    tris.extend(added);
}

fn random_flip(rng: &mut ChaCha8Rng, points: &[Vec2], tris: &mut [[usize; 3]]) {
    let i = rng.gen_range(0..tris.len());
    let k = rng.gen_range(0..3);
    let (a, b, c) = (tris[i][k], tris[i][(k + 1) % 3], tris[i][(k + 2) % 3]);
    // neighbour across a->b traverses b->a
    let Some((j, d)) = tris.iter().enumerate().find_map(|(j, t)| {
        (0..3).find_map(|m| (t[m] == b && t[(m + 1) % 3] == a).then_some((j, t[(m + 2) % 3])))
    }) else {
        return;
    };
    let (pa, pb, pc, pd) = (points[a], points[b], points[c], points[d]);
    // quadrilateral a, d, b, c must be strictly convex
    if det3(pc, pa, pd) > 0 && det3(pd, pb, pc) > 0 {
        tris[i] = [c, a, d];
        tris[j] = [d, b, c];
        debug_assert_eq!(det3(pc, pa, pd).abs(), 1);
        debug_assert_eq!(det3(pd, pb, pc).abs(), 1);
    }
}
