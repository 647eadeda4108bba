use serde::Serialize;

use super::{rotation_system, EdgeId, TropicalError, TropicalGraph};
use crate::geometry::angle_cmp;

/// A complementary region of an embedded tropical graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    /// Darts of the face walk on the sphere (the plane plus a vertex at
    /// infinity where all rays end).
    pub darts: Vec<usize>,
    pub bounded: bool,
}

/// Face structure of an embedded tropical graph.
///
/// Rays are closed up at a single vertex at infinity whose rotation is the
/// clockwise order of the ray directions; every region is then a face of a
/// connected sphere map. Dart numbering: finite edge `i` has darts `2i` (at
/// `ends[0]`) and `2i+1`; infinite edge `j` has dart `2F+j` at its vertex and
/// `2F+I+j` at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarFaces {
    pub regions: Vec<Region>,
    pub face_of_dart: Vec<usize>,
    /// Per vertex, the counterclockwise edge ends and, for each, the region
    /// of the sector that follows it counterclockwise.
    pub sectors: Vec<Vec<(EdgeId, usize)>>,
    num_finite: usize,
}

impl PlanarFaces {
    /// Trace the regions. Assumes `g` is embedded (see `check_embedding`).
    pub fn trace(g: &TropicalGraph) -> Result<Self, TropicalError> {
        let nf = g.finite_edges.len();
        let ni = g.infinite_edges.len();
        let nd = 2 * nf + 2 * ni;
        let mut sigma = vec![0usize; nd];
        for i in 0..nf {
            sigma[2 * i] = 2 * i + 1;
            sigma[2 * i + 1] = 2 * i;
        }
        for j in 0..ni {
            sigma[2 * nf + j] = 2 * nf + ni + j;
            sigma[2 * nf + ni + j] = 2 * nf + j;
        }
        let dart_at = |edge: EdgeId, vertex: usize| -> usize {
            match edge {
                EdgeId::Finite(i) => {
                    if g.finite_edges[i].ends[0] == vertex {
                        2 * i
                    } else {
                        2 * i + 1
                    }
                }
                EdgeId::Infinite(j) => 2 * nf + j,
            }
        };

        let rot = rotation_system(g)?;
        let mut rho = vec![usize::MAX; nd];
        let mut vertex_darts: Vec<Vec<usize>> = Vec::with_capacity(rot.len());
        for (v, list) in rot.iter().enumerate() {
            let mut darts: Vec<usize> = Vec::with_capacity(list.len());
            for inc in list {
                let mut d = dart_at(inc.edge, v);
                // A loop has both ends at v; the second end takes the other dart.
                if darts.contains(&d) {
                    d = sigma[d];
                }
                darts.push(d);
            }
            for k in 0..darts.len() {
                rho[darts[k]] = darts[(k + 1) % darts.len()];
            }
            vertex_darts.push(darts);
        }
        // Vertex at infinity: counterclockwise order along the circle at
        // infinity, then reversed.
        let mut rays: Vec<usize> = (0..ni).collect();
        rays.sort_by(|&a, &b| {
            let (ea, eb) = (g.infinite_edges[a], g.infinite_edges[b]);
            angle_cmp(ea.momentum, eb.momentum).then_with(|| {
                let oa = g.positions[ea.vertex];
                let ob = g.positions[eb.vertex];
                let ca = oa.y * ea.momentum.x as i128 - oa.x * ea.momentum.y as i128;
                let cb = ob.y * eb.momentum.x as i128 - ob.x * eb.momentum.y as i128;
                ca.cmp(&cb)
            })
        });
        for k in 0..rays.len() {
            let here = 2 * nf + ni + rays[k];
            let prev = 2 * nf + ni + rays[(k + rays.len() - 1) % rays.len()];
            rho[here] = prev;
        }

        let mut face_of_dart = vec![usize::MAX; nd];
        let mut regions = Vec::new();
        for start in 0..nd {
            if face_of_dart[start] != usize::MAX {
                continue;
            }
            let id = regions.len();
            let mut darts = Vec::new();
            let mut bounded = true;
            let mut h = start;
            loop {
                face_of_dart[h] = id;
                darts.push(h);
                if h >= 2 * nf + ni {
                    bounded = false;
                }
                h = rho[sigma[h]];
                if h == start {
                    break;
                }
            }
            regions.push(Region { darts, bounded });
        }

        let sectors = rot
            .iter()
            .zip(&vertex_darts)
            .map(|(list, darts)| {
                list.iter()
                    .zip(darts)
                    .map(|(inc, &d)| (inc.edge, face_of_dart[rho[d]]))
                    .collect()
            })
            .collect();

        Ok(PlanarFaces { regions, face_of_dart, sectors, num_finite: nf })
    }

    pub fn bounded_count(&self) -> usize {
        self.regions.iter().filter(|r| r.bounded).count()
    }

    /// The (one or two) regions on either side of an edge.
    pub fn flanking(&self, edge: EdgeId) -> [usize; 2] {
        match edge {
            EdgeId::Finite(i) => [self.face_of_dart[2 * i], self.face_of_dart[2 * i + 1]],
            EdgeId::Infinite(j) => {
                let d = 2 * self.num_finite + j;
                let ni = (self.face_of_dart.len() - 2 * self.num_finite) / 2;
                [self.face_of_dart[d], self.face_of_dart[d + ni]]
            }
        }
    }
}
