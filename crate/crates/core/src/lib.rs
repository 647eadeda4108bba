//! Tropical curves from unimodular triangulations, ribbon-graph skeleta of
//! punctured surfaces built by pants gluing, wheel quivers, and the labeled
//! chart diagrams on the toric side.
//!
//! All validation paths use exact integer or rational arithmetic.

pub mod charts;
pub mod export;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod quiver;
pub mod ribbon;
pub mod synth;
pub mod tropical;
