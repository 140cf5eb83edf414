//! Realizability of a geometric type by a model block, and the assembly of
//! the block boundary from both boundary surfaces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::unionfind::UnionFind;

use super::census::{surface_census, Census};
use super::complex::{build_complex, DartKind, SurfaceComplex};
use super::gaps::{classify_gaps, frontier_height, lamination_extremes, GapReport};
use super::layout::BandLayout;
use super::leaves::{compact_pieces, complex_cycles, trace_leaf, LeafTrace};
use super::SurfaceError;
use crate::geomtype::{GeometricType, Sign};
use crate::symdyn::{Manifold, PeriodicOrbit, SeparatrixCycle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    BadGenus,
    WrongCapCount,
    SharedCapLeaf,
    CompactNonCapGap,
    NonStripComplement,
    NegativeCapOrbit,
    RepeatedCapOrbit,
    EmptyLaminationComponent,
    UnpairedSeparatrix,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::BadGenus => "BadGenus",
            ViolationKind::WrongCapCount => "WrongCapCount",
            ViolationKind::SharedCapLeaf => "SharedCapLeaf",
            ViolationKind::CompactNonCapGap => "CompactNonCapGap",
            ViolationKind::NonStripComplement => "NonStripComplement",
            ViolationKind::NegativeCapOrbit => "NegativeCapOrbit",
            ViolationKind::RepeatedCapOrbit => "RepeatedCapOrbit",
            ViolationKind::EmptyLaminationComponent => "EmptyLaminationComponent",
            ViolationKind::UnpairedSeparatrix => "UnpairedSeparatrix",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    pub side: Manifold,
    pub component: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.side.name())?;
        if let Some(c) = self.component {
            write!(f, " component={c}")?;
        }
        write!(f, " {}", self.detail)
    }
}

/// A boundary circle closed off by a disk whose frontier is one compact leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cap {
    pub circle: usize,
    pub component: usize,
    pub cycle: usize,
    /// Orbit of the leaf, labelled by bands of the input type.
    pub orbit: PeriodicOrbit,
}

/// Everything computed on one boundary surface.
#[derive(Debug, Clone)]
pub struct SideAnalysis {
    pub kind: Manifold,
    pub complex: SurfaceComplex,
    pub census: Census,
    /// Free separatrices of the side, as stable cycles of the complex type.
    pub cycles: Vec<SeparatrixCycle>,
    /// Orbits of `cycles` labelled by the input type.
    pub orbits: Vec<PeriodicOrbit>,
    pub traces: Vec<LeafTrace>,
    pub gaps: Vec<GapReport>,
    pub caps: Vec<Cap>,
}

impl SideAnalysis {
    pub fn caps_on(&self, component: usize) -> impl Iterator<Item = &Cap> {
        self.caps.iter().filter(move |c| c.component == component)
    }

    pub fn leaves_on(&self, component: usize) -> impl Iterator<Item = &LeafTrace> {
        self.traces.iter().filter(move |l| l.component == component)
    }
}

pub fn analyze_side(t: &GeometricType, kind: Manifold, layout: BandLayout) -> Result<SideAnalysis, SurfaceError> {
    let complex = build_complex(t, kind, layout);
    let census = surface_census(&complex)?;
    let cycles = complex_cycles(&complex);
    let orbits = cycles
        .iter()
        .map(|c| match kind {
            Manifold::Stable => c.orbit.clone(),
            Manifold::Unstable => PeriodicOrbit::from_transpose(t, &c.orbit),
        })
        .collect::<Vec<_>>();
    let traces = (0..cycles.len())
        .map(|c| trace_leaf(&complex, &cycles, c, &census.face_component))
        .collect::<Result<Vec<_>, _>>()?;
    let gaps = classify_gaps(&complex, &census, &cycles);
    let caps = locate_caps(&complex, &census, &cycles, &orbits)?;
    Ok(SideAnalysis { kind, complex, census, cycles, orbits, traces, gaps, caps })
}

/// Finds the compact leaf bounding each cap circle. Every outermost gap on
/// the circle must see the same leaf.
fn locate_caps(
    cx: &SurfaceComplex,
    census: &Census,
    cycles: &[SeparatrixCycle],
    orbits: &[PeriodicOrbit],
) -> Result<Vec<Cap>, SurfaceError> {
    let ext = lamination_extremes(&cx.source, cx);
    let compact = compact_pieces(cx, cycles);
    let mut caps = Vec::new();
    for circle in census.circles.iter().filter(|c| c.is_cap()) {
        let mut found: Option<usize> = None;
        for &d in &circle.darts {
            let DartKind::Gap(side, gap) = cx.darts[d].kind else { continue };
            let rect = cx.strips[cx.darts[d].face].rect;
            let y = frontier_height(&cx.source, &ext, rect, gap).expect("caps have no interior gaps");
            let leaf = compact.get(&(rect, side)).filter(|(_, h)| *h == y).map(|(c, _)| *c);
            match (leaf, found) {
                (None, _) => return Err(cap_error(cx, d, "frontier leaf is not compact")),
                (Some(c), Some(f)) if c != f => return Err(cap_error(cx, d, "two leaves on one cap")),
                (Some(c), _) => found = Some(c),
            }
        }
        let cycle = found.ok_or_else(|| cap_error(cx, circle.darts[0], "cap without a gap segment"))?;
        caps.push(Cap { circle: circle.id, component: circle.component, cycle, orbit: orbits[cycle].clone() });
    }
    Ok(caps)
}

fn cap_error(cx: &SurfaceComplex, dart: usize, what: &str) -> SurfaceError {
    SurfaceError::CapLeaf { dart: cx.dart_label(dart), detail: what.to_string() }
}

/// Checks one side against the model-block axioms.
pub fn side_violations(side: &SideAnalysis) -> Vec<Violation> {
    let mut out = Vec::new();
    let v = |kind, component: Option<usize>, detail: String| Violation { kind, side: side.kind, component, detail };
    let cx = &side.complex;
    for comp in &side.census.components {
        let id = Some(comp.id);
        let caps: Vec<&Cap> = side.caps_on(comp.id).collect();
        let carries = comp.strips.iter().any(|&f| cx.faces[f].iter().any(|&d| !cx.darts[d].is_free()));
        if !carries {
            out.push(v(ViolationKind::EmptyLaminationComponent, id, "no glued band".into()));
        }
        match comp.capped_genus {
            0 => {
                if caps.len() != 2 {
                    out.push(v(ViolationKind::WrongCapCount, id, format!("sphere with {} cap(s)", caps.len())));
                } else if caps[0].cycle == caps[1].cycle {
                    out.push(v(
                        ViolationKind::SharedCapLeaf,
                        id,
                        format!("both caps bound {}", side.cycles[caps[0].cycle].label()),
                    ));
                }
            }
            1 => {
                if !caps.is_empty() {
                    out.push(v(ViolationKind::WrongCapCount, id, format!("torus with {} cap(s)", caps.len())));
                }
            }
            g => out.push(v(ViolationKind::BadGenus, id, format!("capped genus {g}"))),
        }
        for cap in &caps {
            if cap.orbit.sign == Sign::Minus {
                out.push(v(ViolationKind::NegativeCapOrbit, id, format!("cap on orbit {}", cap.orbit)));
            }
        }
        for &c in &comp.circles {
            let circle = &side.census.circles[c];
            if circle.is_cap() {
                continue;
            }
            let mut compact_gap = false;
            for gap in side.gaps.iter().filter(|g| g.is_interior()) {
                for s in gap.sides.iter().filter(|s| s.circle == c) {
                    if s.lower_compact || s.upper_compact {
                        compact_gap = true;
                        out.push(v(
                            ViolationKind::CompactNonCapGap,
                            id,
                            format!("gap {} of rectangle {} ({})", gap.gap, gap.rect + 1, s.side.name()),
                        ));
                    }
                }
            }
            if !compact_gap && circle.spikes != 2 {
                out.push(v(
                    ViolationKind::NonStripComplement,
                    id,
                    format!("boundary circle {} with {} interior gaps", c + 1, circle.spikes),
                ));
            }
        }
    }
    let mut by_orbit: BTreeMap<&PeriodicOrbit, BTreeSet<usize>> = BTreeMap::new();
    for cap in &side.caps {
        by_orbit.entry(&cap.orbit).or_default().insert(cap.cycle);
    }
    for (orbit, leaves) in by_orbit {
        if leaves.len() > 1 {
            out.push(v(ViolationKind::RepeatedCapOrbit, None, format!("{} caps on orbit {}", leaves.len(), orbit)));
        }
    }
    out
}

/// A torus of the block boundary assembled from pieces of both sides.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BlockTorus {
    pub orbits: Vec<PeriodicOrbit>,
    pub stable_components: Vec<usize>,
    pub unstable_components: Vec<usize>,
}

impl BlockTorus {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn signs(&self) -> String {
        self.orbits.iter().map(|o| o.sign.glyph()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockBoundarySummary {
    pub tori: Vec<BlockTorus>,
}

#[derive(Debug, Clone)]
pub struct RealizabilityVerdict {
    pub realizable: bool,
    pub stable: SideAnalysis,
    pub unstable: SideAnalysis,
    pub violations: Vec<Violation>,
    pub summary: Option<BlockBoundarySummary>,
}

pub fn check_realizable_filled(t: &GeometricType) -> Result<RealizabilityVerdict, SurfaceError> {
    check_realizable_with(t, BandLayout::Thirds)
}

pub fn check_realizable_with(t: &GeometricType, layout: BandLayout) -> Result<RealizabilityVerdict, SurfaceError> {
    let stable = analyze_side(t, Manifold::Stable, layout)?;
    let unstable = analyze_side(t, Manifold::Unstable, layout)?;
    let mut violations = side_violations(&stable);
    violations.extend(side_violations(&unstable));
    let mut summary = None;
    if violations.is_empty() {
        match assemble(&stable, &unstable) {
            Ok(s) => summary = Some(s),
            Err(orbit) => violations.push(Violation {
                kind: ViolationKind::UnpairedSeparatrix,
                side: Manifold::Stable,
                component: None,
                detail: format!("no partner cap on orbit {orbit}"),
            }),
        }
    }
    Ok(RealizabilityVerdict { realizable: violations.is_empty(), stable, unstable, violations, summary })
}

/// The block boundary of a realizable type.
pub fn block_boundary_summary(t: &GeometricType) -> Result<BlockBoundarySummary, SurfaceError> {
    let verdict = check_realizable_filled(t)?;
    if let Some(s) = verdict.summary {
        return Ok(s);
    }
    match verdict.violations.iter().find(|v| v.kind == ViolationKind::UnpairedSeparatrix) {
        Some(v) => Err(SurfaceError::UnpairedSeparatrix(v.detail.clone())),
        None => Err(SurfaceError::NotRealizable(
            verdict.violations.iter().map(|v| v.kind.name()).collect::<Vec<_>>().join(","),
        )),
    }
}

/// Pairs stable and unstable caps along shared orbits; the connected
/// pieces of the resulting graph are the boundary tori.
fn assemble(stable: &SideAnalysis, unstable: &SideAnalysis) -> Result<BlockBoundarySummary, PeriodicOrbit> {
    let ns = stable.census.components.len();
    let nu = unstable.census.components.len();
    let mut uf = UnionFind::<usize>::new(ns + nu);
    let mut edges = Vec::new();
    for cap in &stable.caps {
        let partner = unstable.caps.iter().find(|u| u.orbit == cap.orbit).ok_or_else(|| cap.orbit.clone())?;
        uf.union(cap.component, ns + partner.component);
        edges.push((cap.component, cap.orbit.clone()));
    }
    if let Some(u) = unstable.caps.iter().find(|u| !stable.caps.iter().any(|s| s.orbit == u.orbit)) {
        return Err(u.orbit.clone());
    }
    let mut tori: BTreeMap<usize, BlockTorus> = BTreeMap::new();
    for node in 0..ns + nu {
        let torus = tori.entry(uf.find(node)).or_insert_with(|| BlockTorus {
            orbits: Vec::new(),
            stable_components: Vec::new(),
            unstable_components: Vec::new(),
        });
        if node < ns {
            torus.stable_components.push(node);
        } else {
            torus.unstable_components.push(node - ns);
        }
    }
    for (comp, orbit) in edges {
        tori.get_mut(&uf.find(comp)).expect("torus").orbits.push(orbit);
    }
    let mut tori: Vec<BlockTorus> = tori
        .into_values()
        .map(|mut t| {
            t.orbits.sort();
            t
        })
        .collect();
    tori.sort();
    Ok(BlockBoundarySummary { tori })
}
