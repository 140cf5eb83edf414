//! Compact leaves: exact heights of free-separatrix leaves and their traces
//! through the strip complex.

use std::collections::BTreeMap;

use super::complex::{Crossing, EdgeSide, SurfaceComplex};
use super::layout::{Affine, Q};
use super::SurfaceError;
use crate::symdyn::{free_separatrices, Manifold, SeparatrixCycle, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafStep {
    pub strip: usize,
    pub height: Q,
    pub heading: EdgeSide,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafTrace {
    pub cycle: usize,
    pub steps: Vec<LeafStep>,
    pub closed: bool,
    pub component: usize,
}

/// Stable cycles of the complex's own type.
pub fn complex_cycles(cx: &SurfaceComplex) -> Vec<SeparatrixCycle> {
    free_separatrices(&cx.source, Manifold::Stable)
}

pub fn side_of(side: Side) -> EdgeSide {
    match side {
        Side::Low => EdgeSide::Left,
        Side::High => EdgeSide::Right,
    }
}

/// Height of the compact leaf at each state of the cycle: the fixed point
/// of the composed band maps along the cycle.
pub fn cycle_heights(cx: &SurfaceComplex, cycle: &SeparatrixCycle) -> Vec<Q> {
    let maps: Vec<Affine> = cycle.symbols.iter().map(|&s| cx.layout.height_map(&cx.source, s)).collect();
    let mut comp = Affine::identity();
    for m in &maps {
        comp = m.after(&comp);
    }
    let mut heights = vec![comp.fixed_point()];
    for m in &maps[..maps.len() - 1] {
        let y = m.apply(heights.last().expect("nonempty"));
        heights.push(y);
    }
    heights
}

/// Compact leaf pieces in outer strips, keyed by `(rectangle, side)`:
/// the owning cycle and the exact height.
pub fn compact_pieces(cx: &SurfaceComplex, cycles: &[SeparatrixCycle]) -> BTreeMap<(usize, EdgeSide), (usize, Q)> {
    let mut out = BTreeMap::new();
    for (c, cycle) in cycles.iter().enumerate() {
        for (state, y) in cycle.states.iter().zip(cycle_heights(cx, cycle)) {
            out.insert((state.rect, side_of(state.side)), (c, y));
        }
    }
    out
}

/// Follows the horizontal leaf of a stable cycle until it closes.
pub fn trace_leaf(
    cx: &SurfaceComplex,
    cycles: &[SeparatrixCycle],
    cycle: usize,
    face_component: &[usize],
) -> Result<LeafTrace, SurfaceError> {
    let cyc = &cycles[cycle];
    let state = cyc.states[0];
    let side = side_of(state.side);
    let start = LeafStep {
        strip: cx.outer_strip(state.rect, side),
        height: cycle_heights(cx, cyc).swap_remove(0),
        heading: side.opposite(),
    };
    let total_v: usize = cx.source.v().iter().sum();
    let max_v = cx.source.v().iter().copied().max().unwrap_or(0);
    let bound = cyc.states.len().max(1) * total_v * (max_v + 1);

    let mut steps = vec![start.clone()];
    let mut at = start.clone();
    while steps.len() <= bound {
        match cx.cross(at.strip, &at.height, at.heading) {
            Crossing::Glued { strip, height, heading } => {
                at = LeafStep { strip, height, heading };
            }
            Crossing::Free { dart } => {
                return Err(SurfaceError::TraceDiverged {
                    cycle: cyc.label(),
                    detail: format!("left the surface through {}", cx.dart_label(dart)),
                });
            }
        }
        if at == start {
            return Ok(LeafTrace { cycle, steps, closed: true, component: face_component[start.strip] });
        }
        steps.push(at.clone());
    }
    Err(SurfaceError::TraceDiverged { cycle: cyc.label(), detail: format!("no closure within {bound} steps") })
}
