//! Convex height functions for unimodular triangulations.
//!
//! A triangulation is drawn as a tropical curve by lifting each lattice point
//! to a height `h(m)` such that the lower hull of the lifted points projects
//! back onto the triangulation. Local convexity across every interior edge
//! is a linear condition on `h`; we look for a strictly feasible integer
//! solution with an exact phase-one simplex.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geometry::Vec2;

/// One row `sum_i coeff_i * h[point_i] >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FoldConstraint {
    pub terms: Vec<(usize, i64)>,
}

/// Barycentric coordinates of `d` in the unimodular triangle `(a, b, c)`.
/// Integral because the triangle has determinant +-1.
pub(crate) fn barycentric(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> [i64; 3] {
    let det = (b - a).cross(c - a);
    debug_assert!(det == 1 || det == -1);
    let beta = (d - a).cross(c - a) / det;
    let gamma = (b - a).cross(d - a) / det;
    let alpha = 1 - beta - gamma;
    [alpha as i64, beta as i64, gamma as i64]
}

/// Solve `A h >= 1`, `h >= 0` exactly. Returns integer heights, or `None`
/// when the system is infeasible (the triangulation is not regular).
pub(crate) fn solve_heights(num_points: usize, rows: &[FoldConstraint]) -> Option<Vec<i64>> {
    if rows.is_empty() {
        return Some(vec![0; num_points]);
    }
    let m = rows.len();
    let n = num_points;
    // columns: h (n) | surplus (m) | artificial (m) | rhs
    let width = n + 2 * m + 1;
    let rhs = width - 1;
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut tab: Vec<Vec<BigRational>> = vec![vec![zero.clone(); width]; m];
    for (r, row) in rows.iter().enumerate() {
        for &(i, c) in &row.terms {
            tab[r][i] += BigRational::from_integer(BigInt::from(c));
        }
        tab[r][n + r] = -one.clone();
        tab[r][n + m + r] = one.clone();
        tab[r][rhs] = one.clone();
    }
    let mut basis: Vec<usize> = (0..m).map(|r| n + m + r).collect();

    // Reduced cost row for minimising the sum of artificials.
    let mut cost = vec![zero.clone(); width];
    for r in 0..m {
        for j in 0..width {
            if j < n + m || j == rhs {
                cost[j] -= &tab[r][j];
            }
        }
    }

    // Bland's rule keeps this finite.
    loop {
        let entering = (0..n + 2 * m).find(|&j| cost[j].is_negative());
        let Some(col) = entering else { break };
        let mut best: Option<(usize, BigRational)> = None;
        for r in 0..m {
            if tab[r][col].is_positive() {
                let ratio = &tab[r][rhs] / &tab[r][col];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && basis[r] < basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
        }
        let Some((pivot_row, _)) = best else {
            // Unbounded direction in phase one cannot happen (objective >= 0).
            return None;
        };
        pivot(&mut tab, &mut cost, pivot_row, col);
        basis[pivot_row] = col;
    }

    // Remaining infeasibility is -cost[rhs].
    if !cost[rhs].is_zero() {
        return None;
    }
    let mut h = vec![zero.clone(); n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            h[b] = tab[r][rhs].clone();
        }
    }
    let lcm = h.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    h.iter()
        .map(|v| (v.numer() * (&lcm / v.denom())).to_i64())
        .collect()
}

fn pivot(tab: &mut [Vec<BigRational>], cost: &mut [BigRational], pr: usize, pc: usize) {
    let p = tab[pr][pc].clone();
    for v in tab[pr].iter_mut() {
        *v /= &p;
    }
    let prow = tab[pr].clone();
    for (r, row) in tab.iter_mut().enumerate() {
        if r == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    if !cost[pc].is_zero() {
        let f = cost[pc].clone();
        for (v, pv) in cost.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

/// Gradient of the affine function interpolating `h` on a unimodular
/// triangle.
pub(crate) fn gradient(tri: [Vec2; 3], h: [i64; 3]) -> Vec2 {
    let [a, b, c] = tri;
    let (u, v) = (b - a, c - a);
    let (r1, r2) = ((h[1] - h[0]) as i128, (h[2] - h[0]) as i128);
    let det = u.cross(v);
    // [u; v] g = (r1, r2)
    let gx = (r1 * v.y as i128 - r2 * u.y as i128) / det;
    let gy = (u.x as i128 * r2 - v.x as i128 * r1) / det;
    Vec2::new(gx as i64, gy as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barycentric_of_opposite_vertex() {
        let bc = barycentric(Vec2::new(0, 0), Vec2::new(1, 0), Vec2::new(0, 1), Vec2::new(1, 1));
        assert_eq!(bc, [-1, 1, 1]);
    }

    #[test]
    fn gradient_recovers_affine_function() {
        // phi = 2x - 3y + 5
        let tri = [Vec2::new(1, 1), Vec2::new(2, 1), Vec2::new(1, 2)];
        let h = tri.map(|p| 2 * p.x - 3 * p.y + 5);
        assert_eq!(gradient(tri, h), Vec2::new(2, -3));
    }

    #[test]
    fn infeasible_system_detected() {
        // h0 - h1 >= 1 and h1 - h0 >= 1
        let rows = vec![
            FoldConstraint { terms: vec![(0, 1), (1, -1)] },
            FoldConstraint { terms: vec![(1, 1), (0, -1)] },
        ];
        assert_eq!(solve_heights(2, &rows), None);
    }

    #[test]
    fn feasible_system_solved_exactly() {
        let rows = vec![
            FoldConstraint { terms: vec![(0, 2), (1, -1)] },
            FoldConstraint { terms: vec![(1, 3), (2, -1)] },
        ];
        let h = solve_heights(3, &rows).unwrap();
        for row in &rows {
            let s: i64 = row.terms.iter().map(|&(i, c)| c * h[i]).sum();
            assert!(s >= 1);
        }
        assert!(h.iter().all(|&v| v >= 0));
    }
}
