use std::collections::BTreeMap;

use serde::Serialize;

use super::{RibbonError, RibbonGraph};

/// A circle with external spokes. `pattern` lists the spoke sides in
/// traversal order: `+` spokes sit between the outgoing and incoming
/// circle darts (counterclockwise), `-` spokes between incoming and
/// outgoing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wheel {
    pub graph: RibbonGraph,
    pub pattern: String,
    /// Outgoing circle dart at each circle vertex, in traversal order.
    pub circle: Vec<usize>,
    /// Spoke darts in the order of `pattern`.
    pub spokes: Vec<usize>,
}

/// Result of recognizing a wheel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WheelClass {
    /// Spoke counts of the two classes, larger first.
    pub counts: [usize; 2],
    /// The spoke pattern up to rotation, reversal and exchange of classes.
    pub pattern: String,
    /// The pattern as read along the traversal used for `spokes`.
    pub reading: String,
    pub spokes: Vec<usize>,
}

/// Build `Lambda(n1, n2)` with one circle vertex per spoke, spokes placed
/// according to `pattern` (a word in `+` and `-`).
pub fn wheel(n1: usize, n2: usize, pattern: &str) -> Result<Wheel, RibbonError> {
    let signs: Vec<char> = pattern.chars().map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
    if signs.iter().any(|&c| c != '+' && c != '-') {
        return Err(RibbonError::NotWheel(format!("pattern {pattern:?} must use + and -")));
    }
    let plus = signs.iter().filter(|&&c| c == '+').count();
    if (plus, signs.len() - plus) != (n1, n2) {
        return Err(RibbonError::NotWheel(format!("pattern {pattern:?} does not have {n1} + and {n2} -")));
    }
    let k = signs.len();
    if k == 0 {
        let graph = RibbonGraph::build(vec![1, 0], vec![vec![0, 1]], BTreeMap::new());
        return Ok(Wheel { graph, pattern: String::new(), circle: vec![0], spokes: vec![] });
    }
    // at vertex i: out = 3i, in = 3i + 1, spoke = 3i + 2
    let mut sigma = vec![0; 3 * k];
    let mut orders = Vec::with_capacity(k);
    for (i, &c) in signs.iter().enumerate() {
        let (out, inn, spoke) = (3 * i, 3 * i + 1, 3 * i + 2);
        let next_in = 3 * ((i + 1) % k) + 1;
        sigma[out] = next_in;
        sigma[next_in] = out;
        sigma[spoke] = spoke;
        orders.push(if c == '+' { vec![inn, out, spoke] } else { vec![inn, spoke, out] });
    }
    let graph = RibbonGraph::build(sigma, orders, BTreeMap::new());
    Ok(Wheel {
        graph,
        pattern: signs.iter().collect(),
        circle: (0..k).map(|i| 3 * i).collect(),
        spokes: (0..k).map(|i| 3 * i + 2).collect(),
    })
}

fn swap_signs(p: &str) -> String {
    p.chars().map(|c| if c == '+' { '-' } else { '+' }).collect()
}

/// Normal form of a cyclic spoke word: the least word over rotations,
/// reversal and exchange of the two classes.
pub fn canonical_pattern(p: &str) -> String {
    let rev: String = p.chars().rev().collect();
    let mut best: Option<String> = None;
    for w in [p.to_string(), rev.clone(), swap_signs(p), swap_signs(&rev)] {
        for k in 0..w.len().max(1) {
            let r = format!("{}{}", &w[k..], &w[..k]);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

/// Recognize a wheel: a connected graph whose internal edges form one
/// circle, with every external edge a spoke.
pub fn classify_wheel(x: &RibbonGraph) -> Result<WheelClass, RibbonError> {
    if x.num_vertices() == 0 {
        return Err(RibbonError::NotWheel("empty graph".into()));
    }
    if !x.is_connected() {
        return Err(RibbonError::NotWheel("not connected".into()));
    }
    for v in 0..x.num_vertices() {
        let internal = x.order(v).iter().filter(|&&d| !x.is_external(d)).count();
        if internal != 2 {
            return Err(RibbonError::NotWheel(format!("vertex {v} meets the core in {internal} darts, not 2")));
        }
    }
    let first = (0..x.num_darts()).find(|&d| !x.is_external(d)).expect("a circle dart exists");
    let mut reading = String::new();
    let mut spokes = Vec::new();
    let mut out = first;
    loop {
        let inn = x.sigma(out);
        let order = super::moves::rotated(x.order(x.vertex_of(inn)), inn);
        let next_out = *order[1..].iter().find(|&&d| !x.is_external(d)).expect("two circle darts");
        let k = order.iter().position(|&d| d == next_out).unwrap();
        for &d in &order[1..k] {
            reading.push('-');
            spokes.push(d);
        }
        for &d in &order[k + 1..] {
            reading.push('+');
            spokes.push(d);
        }
        out = next_out;
        if out == first {
            break;
        }
    }
    let plus = reading.chars().filter(|&c| c == '+').count();
    let minus = reading.len() - plus;
    Ok(WheelClass {
        counts: [plus.max(minus), plus.min(minus)],
        pattern: canonical_pattern(&reading),
        reading,
        spokes,
    })
}
