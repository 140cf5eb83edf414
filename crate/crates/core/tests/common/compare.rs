//! Side-by-side comparison of library results and oracle results.

use std::collections::{BTreeMap, BTreeSet};

use anosov_core::surface::complex::EdgeSide;
use anosov_core::surface::{analyze_side, check_realizable_with, BandLayout, SideAnalysis};
use anosov_core::symdyn::{free_separatrices, Manifold, Side};
use anosov_core::{GeometricType, Sign, Symbol};

use super::oracle::{self, End, OSide, Rule};

pub fn layout(rule: Rule) -> BandLayout {
    match rule {
        Rule::Thirds => BandLayout::Thirds,
        Rule::Quarters => BandLayout::Quarters,
    }
}

fn end(side: Side) -> End {
    match side {
        Side::Low => End::Min,
        Side::High => End::Max,
    }
}

fn edge_end(side: EdgeSide) -> End {
    match side {
        EdgeSide::Left => End::Min,
        EdgeSide::Right => End::Max,
    }
}

type SepKey = (Vec<Symbol>, Sign, Vec<(usize, End)>);

/// Free separatrices of both kinds from the extremal solver.
pub fn library_separatrices(t: &GeometricType, kind: Manifold) -> BTreeSet<SepKey> {
    free_separatrices(t, kind)
        .into_iter()
        .map(|c| {
            let mut states: Vec<(usize, End)> = c.states.iter().map(|s| (s.rect, end(s.side))).collect();
            states.sort();
            (c.orbit.word.clone(), c.orbit.sign, states)
        })
        .collect()
}

pub fn oracle_separatrices(t: &GeometricType, kind: Manifold, rule: Rule) -> BTreeSet<SepKey> {
    let m = oracle::Model::new(t, rule);
    m.free_separatrices(kind == Manifold::Stable).iter().map(|s| s.key()).collect()
}

/// Combinatorial digest of one side: per component (keyed by strips) the
/// raw Euler characteristic, sorted spike counts, the leaves on it and the
/// cap leaves; plus all gap compactness flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideDigest {
    pub components: BTreeMap<Vec<(usize, usize)>, (i64, Vec<usize>, BTreeSet<Vec<(usize, End)>>, Vec<Vec<(usize, End)>>)>,
    pub gaps: BTreeSet<(usize, usize, End, bool, bool)>,
}

pub fn library_digest(s: &SideAnalysis) -> SideDigest {
    let cx = &s.complex;
    let leaf_key = |c: usize| -> Vec<(usize, End)> {
        let mut v: Vec<(usize, End)> = s.cycles[c].states.iter().map(|st| (st.rect, end(st.side))).collect();
        v.sort();
        v
    };
    let mut components = BTreeMap::new();
    for comp in &s.census.components {
        let strips: Vec<(usize, usize)> = comp.strips.iter().map(|&f| (cx.strips[f].rect, cx.strips[f].index)).collect();
        let mut spikes: Vec<usize> = comp.circles.iter().map(|&c| s.census.circles[c].spikes).collect();
        spikes.sort();
        let leaves = s.leaves_on(comp.id).map(|l| leaf_key(l.cycle)).collect();
        let mut caps: Vec<Vec<(usize, End)>> = s.caps_on(comp.id).map(|c| leaf_key(c.cycle)).collect();
        caps.sort();
        components.insert(strips, (comp.complex_chi, spikes, leaves, caps));
    }
    let mut gaps = BTreeSet::new();
    for g in &s.gaps {
        for side in &g.sides {
            gaps.insert((g.rect, g.gap, edge_end(side.side), side.lower_compact, side.upper_compact));
        }
    }
    SideDigest { components, gaps }
}

/// `t` is the type whose stable surface `o` describes.
pub fn oracle_digest(t: &GeometricType, o: &OSide) -> SideDigest {
    let leaf_key = |k: usize| -> Vec<(usize, End)> { o.seps[k].states.keys().copied().collect() };
    let mut components = BTreeMap::new();
    for (idx, c) in o.comps.iter().enumerate() {
        let strips: Vec<(usize, usize)> = c.strips.iter().copied().collect();
        let mut spikes: Vec<usize> = c.circles.iter().map(|c| c.spikes).collect();
        spikes.sort();
        // A compact leaf runs through the outer strip of each of its states.
        let leaves = (0..o.seps.len())
            .filter(|&k| {
                let &(rect, e) = o.seps[k].states.keys().next().unwrap();
                let outer = if e == End::Min { 0 } else { t.v()[rect] };
                c.strips.contains(&(rect, outer))
            })
            .map(leaf_key)
            .collect();
        let mut caps: Vec<Vec<(usize, End)>> = o.caps[idx].iter().map(|c| leaf_key(c.0)).collect();
        caps.sort();
        components.insert(strips, (c.chi, spikes, leaves, caps));
    }
    let gaps = o.gaps.iter().map(|g| (g.rect, g.gap, g.end, g.lower_compact, g.upper_compact)).collect();
    SideDigest { components, gaps }
}

pub struct Agreement {
    pub separatrices: bool,
    pub stable: bool,
    pub unstable: bool,
    pub verdict: bool,
    pub detail: String,
}

pub fn agree(t: &GeometricType, rule: Rule) -> Agreement {
    let mut detail = String::new();
    let seps = [Manifold::Stable, Manifold::Unstable]
        .iter()
        .all(|&k| library_separatrices(t, k) == oracle_separatrices(t, k, rule));
    if !seps {
        detail.push_str("separatrices differ; ");
    }
    let lay = layout(rule);
    let ls = analyze_side(t, Manifold::Stable, lay).expect("stable side");
    let lu = analyze_side(t, Manifold::Unstable, lay).expect("unstable side");
    let ov = oracle::verdict(t, rule);
    let stable = library_digest(&ls) == oracle_digest(t, &ov.stable);
    let unstable = library_digest(&lu) == oracle_digest(&oracle::transpose(t), &ov.unstable);
    if !stable {
        detail.push_str(&format!("stable {:?} vs {:?}; ", library_digest(&ls), oracle_digest(t, &ov.stable)));
    }
    if !unstable {
        detail.push_str("unstable digests differ; ");
    }
    let lib = check_realizable_with(t, lay).expect("verdict");
    let kinds: BTreeSet<String> = lib.violations.iter().map(|v| v.kind.name().to_string()).collect();
    let verdict = lib.realizable == ov.realizable && kinds == ov.violations;
    if !verdict {
        detail.push_str(&format!("verdict {kinds:?} vs {:?}; ", ov.violations));
    }
    Agreement { separatrices: seps, stable, unstable, verdict, detail }
}
