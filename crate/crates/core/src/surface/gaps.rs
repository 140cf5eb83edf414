//! Level-0 gaps of each rectangle and the leaves bounding them.

use std::fmt::Write as _;

use super::census::Census;
use super::complex::{DartKind, EdgeSide, SurfaceComplex};
use super::layout::{solve_functional, Q};
use super::leaves::compact_pieces;
use crate::geomtype::{GeometricType, Symbol};
use crate::symdyn::{all_states, extremal_step, state_index, ExtremalState, Manifold, SeparatrixCycle, Side};

/// Exact extremes of the lamination heights in each rectangle, indexed by
/// extremal state: `Low` is the minimum, `High` the maximum.
pub fn lamination_extremes(t: &GeometricType, cx: &SurfaceComplex) -> Vec<Q> {
    let states: Vec<ExtremalState> = all_states(t.n()).collect();
    let mut next = Vec::new();
    let mut maps = Vec::new();
    for &s in &states {
        let (to, sym, _) = extremal_step(t, Manifold::Unstable, s);
        next.push(state_index(to));
        maps.push(cx.layout.height_map(t, sym));
    }
    solve_functional(&next, &maps)
}

/// A leaf bounding a gap, given by its height and the band itinerary of
/// that height: `prefix` then `period` repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryLeaf {
    pub height: Q,
    pub prefix: Vec<Symbol>,
    pub period: Vec<Symbol>,
}

impl BoundaryLeaf {
    /// The height belongs to a periodic orbit.
    pub fn is_periodic(&self) -> bool {
        self.prefix.is_empty()
    }

    /// `(1,2)[(1,1)]`: the bracketed block repeats.
    pub fn itinerary(&self) -> String {
        let mut s = String::new();
        for p in &self.prefix {
            let _ = write!(s, "{p}");
        }
        s.push('[');
        for p in &self.period {
            let _ = write!(s, "{p}");
        }
        s.push(']');
        s
    }
}

/// Extreme point of the lamination inside band `s`, on the given side.
fn band_extreme(t: &GeometricType, cx: &SurfaceComplex, ext: &[Q], s: Symbol, side: Side) -> BoundaryLeaf {
    let tgt = t.phi(s);
    let from = ExtremalState { rect: tgt.k, side: side.apply(tgt.eps) };
    let height = cx.layout.height_map(t, s).apply(&ext[state_index(from)]);
    let mut seq = vec![s];
    let mut seen: Vec<ExtremalState> = Vec::new();
    let mut at = from;
    while !seen.contains(&at) {
        seen.push(at);
        let (to, sym, _) = extremal_step(t, Manifold::Unstable, at);
        seq.push(sym);
        at = to;
    }
    // seq = [s] ++ symbols of `seen`; the cycle starts where `at` was seen.
    let start = 1 + seen.iter().position(|&x| x == at).expect("cycle state");
    let mut prefix = seq[..start].to_vec();
    let mut period = seq[start..].to_vec();
    while let (Some(a), Some(b)) = (prefix.last(), period.last()) {
        if a != b {
            break;
        }
        prefix.pop();
        period.rotate_right(1);
    }
    let root = crate::symdyn::primitive_root(&period).len();
    period.truncate(root);
    BoundaryLeaf { height, prefix, period }
}

/// One outer side of a gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSide {
    pub side: EdgeSide,
    pub dart: usize,
    pub circle: usize,
    pub cap: bool,
    pub lower_compact: bool,
    pub upper_compact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub rect: usize,
    pub gap: usize,
    /// Leaf at the top of the band below; absent for the bottom gap.
    pub lower: Option<BoundaryLeaf>,
    /// Leaf at the bottom of the band above; absent for the top gap.
    pub upper: Option<BoundaryLeaf>,
    pub sides: [GapSide; 2],
}

impl GapReport {
    pub fn is_cap(&self) -> bool {
        self.sides.iter().any(|s| s.cap)
    }

    pub fn is_interior(&self) -> bool {
        self.lower.is_some() && self.upper.is_some()
    }
}

pub fn classify_gaps(cx: &SurfaceComplex, census: &Census, cycles: &[SeparatrixCycle]) -> Vec<GapReport> {
    let t = &cx.source;
    let ext = lamination_extremes(t, cx);
    let compact = compact_pieces(cx, cycles);
    let is_compact = |rect: usize, side: EdgeSide, leaf: &Option<BoundaryLeaf>| {
        leaf.as_ref()
            .is_some_and(|l| compact.get(&(rect, side)).is_some_and(|(_, y)| *y == l.height))
    };
    let mut out = Vec::new();
    for rect in 0..t.n() {
        let h = t.h()[rect];
        for gap in 0..=h {
            let lower = (gap > 0).then(|| band_extreme(t, cx, &ext, Symbol::new(rect, gap - 1), Side::High));
            let upper = (gap < h).then(|| band_extreme(t, cx, &ext, Symbol::new(rect, gap), Side::Low));
            let sides = [EdgeSide::Left, EdgeSide::Right].map(|side| {
                let dart = cx.dart_of(cx.outer_strip(rect, side), DartKind::Gap(side, gap));
                let circle = census.circle_of_dart(dart).expect("gap darts are free");
                GapSide {
                    side,
                    dart,
                    circle,
                    cap: census.circles[circle].is_cap(),
                    lower_compact: is_compact(rect, side, &lower),
                    upper_compact: is_compact(rect, side, &upper),
                }
            });
            out.push(GapReport { rect, gap, lower, upper, sides });
        }
    }
    out
}

/// Height of the single leaf bounding an outermost gap.
pub fn frontier_height(t: &GeometricType, ext: &[Q], rect: usize, gap: usize) -> Option<Q> {
    let side = if gap == 0 {
        Side::Low
    } else if gap == t.h()[rect] {
        Side::High
    } else {
        return None;
    };
    Some(ext[state_index(ExtremalState { rect, side })].clone())
}
