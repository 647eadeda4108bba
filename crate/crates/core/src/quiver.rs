//! Quivers attached to wheels, and the two-term Hom complex of their
//! finite-dimensional representations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::Rational;
use crate::ribbon::Wheel;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("no quiver model; S\u{b9} handled as a special label")]
    Spokeless,
    #[error("pattern symbol {0:?} is not + or -")]
    BadSymbol(char),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Quiver {
    pub vertices: usize,
    /// `(source, target)` pairs; loops and parallel arrows allowed.
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn kronecker() -> Self {
        Quiver { vertices: 2, arrows: vec![(0, 1), (0, 1)] }
    }

    pub fn opposite(&self) -> Self {
        Quiver { vertices: self.vertices, arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect() }
    }

    /// Equal after some renumbering of vertices (brute force over
    /// permutations, so only for small quivers).
    pub fn is_isomorphic(&self, other: &Quiver) -> bool {
        if self.vertices != other.vertices || self.arrows.len() != other.arrows.len() {
            return false;
        }
        let mut target = other.arrows.clone();
        target.sort_unstable();
        let mut perm: Vec<usize> = (0..self.vertices).collect();
        loop {
            let mut mapped: Vec<(usize, usize)> = self.arrows.iter().map(|&(s, t)| (perm[s], perm[t])).collect();
            mapped.sort_unstable();
            if mapped == target {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Which way round the central circle is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// The traversal order of the wheel's pattern.
    #[default]
    Traversal,
    Reversed,
}

/// Quiver of a spoke pattern: vertex `i` is the circle segment after marked
/// point `i - 1`; marked point `i` gives an arrow between segments `i` and
/// `i + 1`, forward for `+` and backward for `-`.
pub fn pattern_quiver(pattern: &str, orientation: Orientation) -> Result<Quiver, QuiverError> {
    let signs: Vec<char> = pattern.chars().map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
    if let Some(&c) = signs.iter().find(|&&c| c != '+' && c != '-') {
        return Err(QuiverError::BadSymbol(c));
    }
    let k = signs.len();
    if k == 0 {
        return Err(QuiverError::Spokeless);
    }
    let arrows = signs
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let (a, b) = (i, (i + 1) % k);
            let forward = (c == '+') == (orientation == Orientation::Traversal);
            if forward {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    Ok(Quiver { vertices: k, arrows })
}

pub fn wheel_to_quiver(w: &Wheel, orientation: Orientation) -> Result<Quiver, QuiverError> {
    pattern_quiver(&w.pattern, orientation)
}

pub fn k0_rank(q: &Quiver) -> usize {
    q.vertices
}

pub fn euler_form(q: &Quiver, d: &[usize], e: &[usize]) -> i64 {
    let diag: i64 = d.iter().zip(e).map(|(&a, &b)| (a * b) as i64).sum();
    let off: i64 = q.arrows.iter().map(|&(s, t)| (d[s] * e[t]) as i64).sum();
    diag - off
}

pub type Matrix = Vec<Vec<Rational>>;

/// A finite-dimensional representation over the rationals: the matrix of an
/// arrow `s -> t` has `dims[t]` rows and `dims[s]` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl QuiverRep {
    pub fn check(&self, q: &Quiver) -> Result<(), QuiverError> {
        if self.dims.len() != q.vertices {
            return Err(QuiverError::Shape(format!("{} dimensions for {} vertices", self.dims.len(), q.vertices)));
        }
        if self.maps.len() != q.arrows.len() {
            return Err(QuiverError::Shape(format!("{} matrices for {} arrows", self.maps.len(), q.arrows.len())));
        }
        for (k, (&(s, t), m)) in q.arrows.iter().zip(&self.maps).enumerate() {
            if m.len() != self.dims[t] || m.iter().any(|row| row.len() != self.dims[s]) {
                return Err(QuiverError::Shape(format!(
                    "arrow {k} needs a {}x{} matrix",
                    self.dims[t], self.dims[s]
                )));
            }
        }
        Ok(())
    }

    pub fn zero(q: &Quiver, dims: Vec<usize>) -> Self {
        let maps = q.arrows.iter().map(|&(s, t)| vec![vec![Rational::zero(); dims[s]]; dims[t]]).collect();
        QuiverRep { dims, maps }
    }

    /// Simple representation at `v`.
    pub fn simple(q: &Quiver, v: usize) -> Self {
        let mut dims = vec![0; q.vertices];
        dims[v] = 1;
        Self::zero(q, dims)
    }
}

/// Random representation with dimensions at most `max_dim` and small
/// integer entries.
pub fn random_representation(q: &Quiver, max_dim: usize, seed: u64) -> QuiverRep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<usize> = (0..q.vertices).map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps = q
        .arrows
        .iter()
        .map(|&(s, t)| {
            (0..dims[t]).map(|_| (0..dims[s]).map(|_| Rational::from_integer(rng.gen_range(-2..=2))).collect()).collect()
        })
        .collect();
    QuiverRep { dims, maps }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomDims {
    pub c0: usize,
    pub c1: usize,
    pub h0: usize,
    pub h1: usize,
}

impl HomDims {
    pub fn euler(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64
    }
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub(crate) fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in c..width {
                let delta = &f * &rows[r][j];
                rows[i][j] -= delta;
            }
        }
        r += 1;
    }
    r
}

/// Dimensions of `C0 = (+)_v Hom(M_v, N_v)`, `C1 = (+)_a Hom(M_s, N_t)` and
/// of the kernel and cokernel of `f -> (f_t M_a - N_a f_s)_a`.
pub fn hom_complex(q: &Quiver, m: &QuiverRep, n: &QuiverRep) -> Result<HomDims, QuiverError> {
    m.check(q)?;
    n.check(q)?;
    // coordinates of f_v[r][c]
    let mut base = Vec::with_capacity(q.vertices);
    let mut c0 = 0;
    for v in 0..q.vertices {
        base.push(c0);
        c0 += n.dims[v] * m.dims[v];
    }
    let var = |v: usize, r: usize, c: usize| base[v] + r * m.dims[v] + c;
    let mut rows = Vec::new();
    for (k, &(s, t)) in q.arrows.iter().enumerate() {
        let (ma, na) = (&m.maps[k], &n.maps[k]);
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![BigRational::zero(); c0];
                for x in 0..m.dims[t] {
                    row[var(t, r, x)] += big(&ma[x][c]);
                }
                for x in 0..n.dims[s] {
                    row[var(s, x, c)] -= big(&na[r][x]);
                }
                rows.push(row);
            }
        }
    }
    let c1 = rows.len();
    let rk = rank(rows);
    Ok(HomDims { c0, c1, h0: c0 - rk, h1: c1 - rk })
}
