//! JSON file formats.

use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::geometry::{Point, Rational, Vec2};
use crate::lattice::{LatticeError, Triangulation};
use crate::quiver::QuiverRep;
use crate::tropical::{FiniteEdge, InfiniteEdge, TropicalGraph};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad coordinate {0:?}")]
    Coordinate(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Render a rational as `n` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, IoError> {
    let bad = || IoError::Coordinate(s.to_string());
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim().parse::<i128>().map_err(|_| bad())?, d.trim().parse::<i128>().map_err(|_| bad())?),
        None => (s.trim().parse::<i128>().map_err(|_| bad())?, 1),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    Coord::from(*r).serialize(s)
}

pub(crate) fn ser_point<S: Serializer>(p: &Point, s: S) -> Result<S::Ok, S::Error> {
    [Coord::from(p.x), Coord::from(p.y)].serialize(s)
}

/// A coordinate written as an integer or as a `"p/q"` string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coord(pub Rational);

impl From<Rational> for Coord {
    fn from(r: Rational) -> Self {
        Coord(r)
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.denom().is_one() {
            if let Ok(n) = i64::try_from(*self.0.numer()) {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Coord(Rational::from_integer(n as i128))),
            Raw::Text(t) => parse_rational(&t).map(Coord).map_err(de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationFile {
    pub points: Vec<Vec2>,
    pub triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hull: Option<Vec<Vec2>>,
}

impl TriangulationFile {
    pub fn from_triangulation(t: &Triangulation) -> Self {
        TriangulationFile { points: t.points().to_vec(), triangles: t.triangles().to_vec(), hull: None }
    }

    pub fn build(self) -> Result<Triangulation, LatticeError> {
        Triangulation::new(self.points, self.triangles, self.hull)
    }
}

pub fn parse_triangulation(text: &str) -> Result<Triangulation, IoError> {
    let file: TriangulationFile = serde_json::from_str(text)?;
    Ok(file.build()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub pos: [Coord; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteEdgeRecord {
    pub v: [usize; 2],
    pub p: Vec2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfiniteEdgeRecord {
    pub v: usize,
    pub p: Vec2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalFile {
    pub vertices: Vec<VertexRecord>,
    pub finite_edges: Vec<FiniteEdgeRecord>,
    pub infinite_edges: Vec<InfiniteEdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

impl From<&TropicalGraph> for TropicalFile {
    fn from(g: &TropicalGraph) -> Self {
        TropicalFile {
            vertices: g.positions.iter().map(|p| VertexRecord { pos: [Coord(p.x), Coord(p.y)] }).collect(),
            finite_edges: g.finite_edges.iter().map(|e| FiniteEdgeRecord { v: e.ends, p: e.momentum }).collect(),
            infinite_edges: g.infinite_edges.iter().map(|e| InfiniteEdgeRecord { v: e.vertex, p: e.momentum }).collect(),
            convention: g.convention.clone(),
        }
    }
}

impl From<TropicalFile> for TropicalGraph {
    fn from(f: TropicalFile) -> Self {
        TropicalGraph {
            positions: f.vertices.iter().map(|v| Point::new(v.pos[0].0, v.pos[1].0)).collect(),
            finite_edges: f.finite_edges.iter().map(|e| FiniteEdge { ends: e.v, momentum: e.p }).collect(),
            infinite_edges: f.infinite_edges.iter().map(|e| InfiniteEdge { vertex: e.v, momentum: e.p }).collect(),
            convention: f.convention,
        }
    }
}

pub fn parse_tropical(text: &str) -> Result<TropicalGraph, IoError> {
    let file: TropicalFile = serde_json::from_str(text)?;
    Ok(file.into())
}

pub fn tropical_to_json(g: &TropicalGraph) -> String {
    serde_json::to_string_pretty(&TropicalFile::from(g)).expect("plain data serializes")
}

/// A quiver representation: dimensions per vertex and one matrix per arrow
/// (rows indexed by the target).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationFile {
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<Vec<Coord>>>,
}

impl From<&QuiverRep> for RepresentationFile {
    fn from(m: &QuiverRep) -> Self {
        RepresentationFile {
            dims: m.dims.clone(),
            maps: m.maps.iter().map(|a| a.iter().map(|row| row.iter().map(|&x| Coord(x)).collect()).collect()).collect(),
        }
    }
}

impl From<RepresentationFile> for QuiverRep {
    fn from(f: RepresentationFile) -> Self {
        QuiverRep {
            dims: f.dims,
            maps: f.maps.into_iter().map(|a| a.into_iter().map(|row| row.into_iter().map(|c| c.0).collect()).collect()).collect(),
        }
    }
}

pub fn parse_representation(text: &str) -> Result<QuiverRep, IoError> {
    let file: RepresentationFile = serde_json::from_str(text)?;
    Ok(file.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_round_trip() {
        for s in ["0", "-3", "1/2", "-7/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("2/4").unwrap(), Rational::new(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn tropical_file_round_trips() {
        let text = r#"{"vertices":[{"pos":[0,"1/2"]}],"finite_edges":[],
            "infinite_edges":[{"v":0,"p":[0,-1]},{"v":0,"p":[1,1]},{"v":0,"p":[-1,0]}]}"#;
        let g = parse_tropical(text).unwrap();
        assert_eq!(g.positions[0].y, Rational::new(1, 2));
        assert_eq!(parse_tropical(&tropical_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn triangulation_file_parses() {
        let t = parse_triangulation(r#"{"points":[[0,0],[1,0],[0,1]],"triangles":[[0,1,2]]}"#).unwrap();
        assert_eq!(t.triangles().len(), 1);
        assert!(matches!(parse_triangulation("{"), Err(IoError::Json(_))));
    }

    #[test]
    fn representation_file_round_trips() {
        let m = parse_representation(r#"{"dims":[1,2],"maps":[[[1],["-1/2"]]]}"#).unwrap();
        assert_eq!(m.maps[0][1][0], Rational::new(-1, 2));
        let text = serde_json::to_string(&RepresentationFile::from(&m)).unwrap();
        assert_eq!(parse_representation(&text).unwrap(), m);
    }
}
