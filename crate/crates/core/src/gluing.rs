//! Block summaries and the calculus of gluing and surgery on them.
//!
//! A [`BlockSummary`] keeps only what the gluing and transitivity criteria
//! consume: the boundary tori with their periodic orbits and lamination
//! data, the Smale graph of basic pieces, and which boundary tori each
//! piece's stable and unstable laminations meet.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::folia::{analyze_ctype, restrict_ctype, Arrow, CombinatorialType, Orient, Triple};
use crate::geomtype::{GeometricType, Sign};
use crate::surface::{analyze_side, block_boundary_summary, BandLayout, SideAnalysis, SurfaceError};
use crate::symdyn::{basic_pieces, is_transitive, smale_graph_of_type, Manifold, SmaleGraph, SymbolGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GluingError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid summary: {0}")]
    InvalidSummary(String),
    #[error("bad pairing: {0}")]
    BadPairing(String),
    #[error("missing incidence on {0}")]
    MissingIncidence(String),
    #[error("pair {0} is not declared strongly quasi-transverse")]
    NotStronglyQuasiTransverse(String),
    #[error("orbit has positive multipliers")]
    PositiveMultiplier,
    #[error("orbit has a free separatrix")]
    FreeSeparatrix,
    #[error("orbit lies on a trivial piece")]
    TrivialPiece,
    #[error("block is not transitive")]
    NotTransitive,
    #[error("no piece {0}")]
    NoSuchPiece(usize),
    #[error("no boundary component {0}")]
    NoSuchComponent(usize),
    #[error("component {0} carries no full combinatorial type")]
    NotFullType(usize),
    #[error("no annulus after leaf {0}")]
    NoSuchAnnulus(usize),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("component {0} is not alternating elementary")]
    NotAlternatingElementary(String),
    #[error("glued graph of transitive blocks is not strongly connected")]
    TransitivityLost,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// What is known about the lamination on a boundary torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flavor {
    FullType(CombinatorialType),
    /// Elementary alternating with `2p` marked leaves.
    AlternatingElementary(usize),
    OrbitCountOnly,
}

impl Flavor {
    pub fn is_alternating_elementary(&self) -> bool {
        match self {
            Flavor::AlternatingElementary(_) => true,
            Flavor::FullType(t) => t.is_alternating_elementary().is_some(),
            Flavor::OrbitCountOnly => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub orbit_count: usize,
    pub signs: Vec<Sign>,
    pub flavor: Flavor,
}

impl BoundaryComponent {
    pub fn with_type(t: CombinatorialType) -> Self {
        let m = t.marked().len();
        BoundaryComponent { orbit_count: m, signs: vec![Sign::Plus; m], flavor: Flavor::FullType(t) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSummary {
    pub components: Vec<BoundaryComponent>,
    /// Vertices are basic pieces.
    pub graph: SmaleGraph,
    pub trivial: Vec<bool>,
    /// Per piece, the components its stable lamination meets (entrance side).
    pub stable_incidence: Vec<BTreeSet<usize>>,
    /// Per piece, the components its unstable lamination meets (exit side).
    pub unstable_incidence: Vec<BTreeSet<usize>>,
    pub transitive: bool,
    pub filled: bool,
}

/// A periodic orbit of a basic piece, as declared by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitDecl {
    pub piece: usize,
    pub sign: Sign,
    pub free_separatrix: bool,
}

impl BlockSummary {
    /// A closed manifold carrying a transitive flow: one nontrivial piece
    /// and no boundary.
    pub fn closed_transitive(piece: &str) -> Self {
        let mut graph = SmaleGraph::default();
        graph.add_vertex(piece);
        BlockSummary {
            components: Vec::new(),
            graph,
            trivial: vec![false],
            stable_incidence: vec![BTreeSet::new()],
            unstable_incidence: vec![BTreeSet::new()],
            transitive: true,
            filled: true,
        }
    }

    /// Summary of the model block of a realizable type.
    pub fn from_type(t: &GeometricType) -> Result<Self, GluingError> {
        let boundary = block_boundary_summary(t)?;
        let (pieces, _) = basic_pieces(t);
        let graph = smale_graph_of_type(t);
        let sg = SymbolGraph::new(t);
        let mut stable_incidence = vec![BTreeSet::new(); pieces.len()];
        let mut unstable_incidence = vec![BTreeSet::new(); pieces.len()];
        let stable = analyze_side(t, Manifold::Stable, BandLayout::default())?;
        let unstable = analyze_side(t, Manifold::Unstable, BandLayout::default())?;
        let rects = |side: &SideAnalysis, comps: &[usize]| -> BTreeSet<usize> {
            comps
                .iter()
                .flat_map(|&c| side.census.components[c].strips.iter().map(|&f| side.complex.strips[f].rect))
                .collect()
        };
        for (c, torus) in boundary.tori.iter().enumerate() {
            let srects = rects(&stable, &torus.stable_components);
            let urects = rects(&unstable, &torus.unstable_components);
            // Stable leaves in a rectangle follow forward itineraries from
            // its symbols; unstable leaves arrive through symbols mapping
            // into it.
            let from: Vec<usize> =
                t.symbols().filter(|s| srects.contains(&s.rect)).map(|s| t.symbol_index(s)).collect();
            let reach = sg.reachable_from(&from);
            for p in &pieces {
                if p.symbols.iter().any(|&s| reach[t.symbol_index(s)]) {
                    stable_incidence[p.id].insert(c);
                }
                let start: Vec<usize> = p.symbols.iter().map(|&s| t.symbol_index(s)).collect();
                let out = sg.reachable_from(&start);
                if t.symbols().any(|s| out[t.symbol_index(s)] && urects.contains(&t.phi(s).k)) {
                    unstable_incidence[p.id].insert(c);
                }
            }
        }
        let components = boundary
            .tori
            .iter()
            .map(|torus| BoundaryComponent {
                orbit_count: torus.orbit_count(),
                signs: torus.orbits.iter().map(|o| o.sign).collect(),
                flavor: Flavor::OrbitCountOnly,
            })
            .collect();
        let s = BlockSummary {
            components,
            graph,
            trivial: pieces.iter().map(|p| p.trivial).collect(),
            stable_incidence,
            unstable_incidence,
            transitive: is_transitive(t),
            filled: true,
        };
        s.check()?;
        Ok(s)
    }

    pub fn piece_count(&self) -> usize {
        self.graph.vertices.len()
    }

    pub fn check(&self) -> Result<(), GluingError> {
        let bad = |m: String| Err(GluingError::InvalidSummary(m));
        let n = self.piece_count();
        if self.trivial.len() != n || self.stable_incidence.len() != n || self.unstable_incidence.len() != n {
            return bad("piece data does not match the graph".into());
        }
        if self.graph.edges.iter().any(|&(a, b)| a >= n || b >= n) {
            return bad("edge refers to a missing piece".into());
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.orbit_count % 2 == 1 {
                return bad(format!("component {i} has an odd orbit count"));
            }
            if c.signs.len() != c.orbit_count {
                return bad(format!("component {i} lists {} signs for {} orbits", c.signs.len(), c.orbit_count));
            }
            let expected = match &c.flavor {
                Flavor::FullType(t) => Some(t.marked().len()),
                Flavor::AlternatingElementary(p) => Some(2 * p),
                Flavor::OrbitCountOnly => None,
            };
            if expected.is_some_and(|m| m != c.orbit_count) {
                return bad(format!("component {i} flavor disagrees with its orbit count"));
            }
        }
        let k = self.components.len();
        for inc in self.stable_incidence.iter().chain(&self.unstable_incidence) {
            if inc.iter().any(|&c| c >= k) {
                return bad("incidence refers to a missing component".into());
            }
        }
        Ok(())
    }

    fn add_piece(&mut self, name: &str, trivial: bool) -> usize {
        self.trivial.push(trivial);
        self.stable_incidence.push(BTreeSet::new());
        self.unstable_incidence.push(BTreeSet::new());
        self.graph.add_vertex(name)
    }

    fn da_precheck(&self, orbit: OrbitDecl) -> Result<(), GluingError> {
        if orbit.piece >= self.piece_count() {
            return Err(GluingError::NoSuchPiece(orbit.piece));
        }
        if orbit.sign == Sign::Plus {
            return Err(GluingError::PositiveMultiplier);
        }
        if orbit.free_separatrix {
            return Err(GluingError::FreeSeparatrix);
        }
        if self.trivial[orbit.piece] {
            return Err(GluingError::TrivialPiece);
        }
        Ok(())
    }

    /// Attracting DA bifurcation on `orbit` and excision of the basin: a new
    /// exit torus carrying one compact leaf.
    pub fn attracting_da(&self, orbit: OrbitDecl) -> Result<Self, GluingError> {
        self.da_precheck(orbit)?;
        let mut s = self.clone();
        let leaf = Triple::new(Arrow::Right, Orient::Up, Arrow::Left);
        s.components.push(BoundaryComponent::with_type(CombinatorialType::new(vec![leaf]).expect("single leaf")));
        s.unstable_incidence[orbit.piece].insert(s.components.len() - 1);
        Ok(s)
    }

    /// Repelling DA bifurcation: a new entrance torus carrying one compact
    /// leaf.
    pub fn repelling_da(&self, orbit: OrbitDecl) -> Result<Self, GluingError> {
        self.da_precheck(orbit)?;
        let mut s = self.clone();
        let leaf = Triple::new(Arrow::Left, Orient::Up, Arrow::Right);
        s.components.push(BoundaryComponent::with_type(CombinatorialType::new(vec![leaf]).expect("single leaf")));
        s.stable_incidence[orbit.piece].insert(s.components.len() - 1);
        Ok(s)
    }

    /// Two DA bifurcations on an orbit with `p` stable separatrices, then
    /// excision of a solid torus: a new boundary torus with `2p` coherent
    /// marked leaves and alternating entrance and exit annuli.
    pub fn double_blow_up_excise(&self, piece: usize, p: usize) -> Result<Self, GluingError> {
        if piece >= self.piece_count() {
            return Err(GluingError::NoSuchPiece(piece));
        }
        if !self.transitive {
            return Err(GluingError::NotTransitive);
        }
        if p == 0 {
            return Err(GluingError::InvalidExtension("an orbit has at least one stable separatrix".into()));
        }
        let mut s = self.clone();
        s.components.push(BoundaryComponent::with_type(coherent_elementary(p)));
        let c = s.components.len() - 1;
        s.stable_incidence[piece].insert(c);
        s.unstable_incidence[piece].insert(c);
        Ok(s)
    }

    /// Inserts a compact leaf in the annulus following leaf `after` of
    /// `component`, carried by a new saddle orbit `name`. The pieces in
    /// `incident` are those whose laminations cross the annulus; they get
    /// an edge from the new orbit on the entrance side, to it on the exit
    /// side.
    pub fn add_compact_leaf(
        &self,
        component: usize,
        after: usize,
        triple: Triple,
        incident: &[usize],
        name: &str,
    ) -> Result<Self, GluingError> {
        let comp = self.components.get(component).ok_or(GluingError::NoSuchComponent(component))?;
        let Flavor::FullType(sigma) = &comp.flavor else {
            return Err(GluingError::NotFullType(component));
        };
        if after >= sigma.len() {
            return Err(GluingError::NoSuchAnnulus(after));
        }
        if let Some(&bad) = incident.iter().find(|&&i| i >= self.piece_count()) {
            return Err(GluingError::NoSuchPiece(bad));
        }
        let mut entries = sigma.entries().to_vec();
        entries.insert(after + 1, triple);
        let a = analyze_ctype(&entries);
        if !a.valid {
            let v: Vec<String> = a.violations.iter().map(|v| v.to_string()).collect();
            return Err(GluingError::InvalidExtension(v.join(",")));
        }
        let original: Vec<usize> = (0..entries.len()).filter(|&i| i != after + 1).collect();
        if restrict_ctype(&entries, &original).ok().as_deref() != Some(sigma.entries()) {
            return Err(GluingError::InvalidExtension("restriction does not recover the type".into()));
        }
        // Leaves bounding an entrance annulus expand towards it.
        let entrance = sigma.entries()[after].right == Arrow::Right;
        let extended = CombinatorialType::new(entries).expect("checked above");
        let mut s = self.clone();
        s.components[component].flavor = Flavor::FullType(extended);
        let o = s.add_piece(name, true);
        for &i in incident {
            if entrance {
                s.graph.add_edge(o, i);
            } else {
                s.graph.add_edge(i, o);
            }
        }
        if entrance {
            s.stable_incidence[o].insert(component);
        } else {
            s.unstable_incidence[o].insert(component);
        }
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("summary v1\n");
        let _ = writeln!(s, "transitive {}", self.transitive);
        let _ = writeln!(s, "filled {}", self.filled);
        for (v, name) in self.graph.vertices.iter().enumerate() {
            let _ = writeln!(s, "piece {name} {}", if self.trivial[v] { "trivial" } else { "nontrivial" });
        }
        for &(a, b) in &self.graph.edges {
            let _ = writeln!(s, "edge {} {}", self.graph.vertices[a], self.graph.vertices[b]);
        }
        for (i, c) in self.components.iter().enumerate() {
            let _ = write!(s, "component {i} orbits {}", c.orbit_count);
            if !c.signs.is_empty() {
                let _ = write!(s, " signs {}", c.signs.iter().map(|x| x.glyph()).collect::<String>());
            }
            match &c.flavor {
                Flavor::OrbitCountOnly => s.push_str(" flavor count\n"),
                Flavor::AlternatingElementary(p) => {
                    let _ = writeln!(s, " flavor alternating {p}");
                }
                Flavor::FullType(t) => {
                    s.push_str(" flavor type");
                    for e in t.entries() {
                        let _ = write!(s, " {}{}{}", e.left.ascii(), e.orient.ascii(), e.right.ascii());
                    }
                    s.push('\n');
                }
            }
        }
        for (label, inc) in [("stable", &self.stable_incidence), ("unstable", &self.unstable_incidence)] {
            for (v, set) in inc.iter().enumerate() {
                if !set.is_empty() {
                    let cs: Vec<String> = set.iter().map(|c| c.to_string()).collect();
                    let _ = writeln!(s, "{label} {} {}", self.graph.vertices[v], cs.join(" "));
                }
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, GluingError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "summary v1")) => {}
            other => {
                let line = other.map_or(1, |(n, _)| n);
                return Err(GluingError::Syntax { line, msg: "expected `summary v1`".into() });
            }
        }
        let mut s = BlockSummary {
            components: Vec::new(),
            graph: SmaleGraph::default(),
            trivial: Vec::new(),
            stable_incidence: Vec::new(),
            unstable_incidence: Vec::new(),
            transitive: false,
            filled: false,
        };
        for (line, l) in lines {
            let err = |msg: String| GluingError::Syntax { line, msg };
            let toks: Vec<&str> = l.split_whitespace().collect();
            let piece = |name: &str, g: &SmaleGraph| g.index_of(name).ok_or_else(|| err(format!("unknown piece `{name}`")));
            let flag = |v: Option<&&str>| match v {
                Some(&"true") => Ok(true),
                Some(&"false") => Ok(false),
                _ => Err(err("expected `true` or `false`".into())),
            };
            match toks[0] {
                "transitive" => s.transitive = flag(toks.get(1))?,
                "filled" => s.filled = flag(toks.get(1))?,
                "piece" => {
                    let (Some(name), Some(kind)) = (toks.get(1), toks.get(2)) else {
                        return Err(err("expected `piece <name> trivial|nontrivial`".into()));
                    };
                    if s.graph.index_of(name).is_some() {
                        return Err(err(format!("duplicate piece `{name}`")));
                    }
                    let trivial = match *kind {
                        "trivial" => true,
                        "nontrivial" => false,
                        _ => return Err(err("expected `trivial` or `nontrivial`".into())),
                    };
                    s.add_piece(name, trivial);
                }
                "edge" if toks.len() == 3 => {
                    let (a, b) = (piece(toks[1], &s.graph)?, piece(toks[2], &s.graph)?);
                    s.graph.add_edge(a, b);
                }
                "component" => s.components.push(parse_component(&toks, s.components.len()).map_err(err)?),
                "stable" | "unstable" if toks.len() >= 2 => {
                    let v = piece(toks[1], &s.graph)?;
                    let cs = toks[2..]
                        .iter()
                        .map(|c| c.parse::<usize>().map_err(|_| err(format!("bad component `{c}`"))))
                        .collect::<Result<BTreeSet<usize>, _>>()?;
                    let inc = if toks[0] == "stable" { &mut s.stable_incidence } else { &mut s.unstable_incidence };
                    inc[v].extend(cs);
                }
                _ => return Err(err(format!("unrecognized line `{l}`"))),
            }
        }
        s.check()?;
        Ok(s)
    }
}

fn parse_component(toks: &[&str], expected_id: usize) -> Result<BoundaryComponent, String> {
    if toks.get(1).and_then(|t| t.parse::<usize>().ok()) != Some(expected_id) {
        return Err(format!("components must be numbered in order; expected {expected_id}"));
    }
    let mut orbit_count = None;
    let mut signs = Vec::new();
    let mut flavor = None;
    let mut i = 2;
    while i < toks.len() {
        let val = toks.get(i + 1).ok_or_else(|| format!("`{}` needs a value", toks[i]))?;
        match toks[i] {
            "orbits" => orbit_count = Some(val.parse::<usize>().map_err(|_| format!("bad orbit count `{val}`"))?),
            "signs" => {
                signs = val
                    .chars()
                    .map(|c| match c {
                        '+' => Ok(Sign::Plus),
                        '-' => Ok(Sign::Minus),
                        _ => Err(format!("bad sign `{c}`")),
                    })
                    .collect::<Result<_, _>>()?
            }
            "flavor" => {
                flavor = Some(match *val {
                    "count" => Flavor::OrbitCountOnly,
                    "alternating" => {
                        let p = toks.get(i + 2).and_then(|p| p.parse::<usize>().ok()).ok_or("bad alternating count")?;
                        i += 1;
                        Flavor::AlternatingElementary(p)
                    }
                    "type" => {
                        let entries = toks[i + 2..].iter().map(|t| parse_compact_triple(t)).collect::<Result<Vec<_>, _>>()?;
                        i = toks.len();
                        Flavor::FullType(CombinatorialType::new(entries).map_err(|e| e.to_string())?)
                    }
                    other => return Err(format!("unknown flavor `{other}`")),
                });
            }
            other => return Err(format!("unknown key `{other}`")),
        }
        i += 2;
    }
    Ok(BoundaryComponent {
        orbit_count: orbit_count.ok_or("missing `orbits`")?,
        signs,
        flavor: flavor.ok_or("missing `flavor`")?,
    })
}

fn parse_compact_triple(tok: &str) -> Result<Triple, String> {
    let c: Vec<char> = tok.chars().collect();
    let arrow = |c: char| match c {
        '<' => Ok(Arrow::Left),
        '>' => Ok(Arrow::Right),
        _ => Err(format!("bad leaf `{tok}`")),
    };
    let [l, o, r] = c[..] else { return Err(format!("bad leaf `{tok}`")) };
    let orient = match o {
        'u' => Orient::Up,
        'd' => Orient::Down,
        _ => return Err(format!("bad leaf `{tok}`")),
    };
    Ok(Triple::new(arrow(l)?, orient, arrow(r)?))
}

/// Elementary coherent type with `2p` marked upward leaves.
pub fn coherent_elementary(p: usize) -> CombinatorialType {
    let a = Triple::new(Arrow::Right, Orient::Up, Arrow::Right);
    let b = Triple::new(Arrow::Left, Orient::Up, Arrow::Left);
    CombinatorialType::new((0..2 * p).map(|i| if i % 2 == 0 { a } else { b }).collect()).expect("valid")
}

/// A boundary component of one block in a gluing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompRef {
    pub block: usize,
    pub comp: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pair {
    pub a: CompRef,
    pub b: CompRef,
    pub reversed: bool,
    pub strongly_quasi_transverse: bool,
}

/// Named blocks and a pairing of their boundary components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingSpec {
    pub blocks: Vec<(String, BlockSummary)>,
    pub pairs: Vec<Pair>,
}

impl GluingSpec {
    pub fn label(&self, r: CompRef) -> String {
        format!("{}.{}", self.blocks[r.block].0, r.comp)
    }

    fn component(&self, r: CompRef) -> &BoundaryComponent {
        &self.blocks[r.block].1.components[r.comp]
    }

    /// The pairing must use existing components, each at most once, and
    /// never pair a component with itself.
    pub fn check_pairing(&self) -> Result<(), GluingError> {
        let mut used = BTreeSet::new();
        for p in &self.pairs {
            for r in [p.a, p.b] {
                let ok = self.blocks.get(r.block).is_some_and(|(_, s)| r.comp < s.components.len());
                if !ok {
                    return Err(GluingError::BadPairing(format!("no component {}.{}", r.block, r.comp)));
                }
                if !used.insert(r) {
                    return Err(GluingError::BadPairing(format!("{} is paired twice", self.label(r))));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingCheck {
    pub exists: bool,
    /// First pair with different orbit counts.
    pub obstruction: Option<String>,
}

/// A gluing exists when paired tori carry equally many periodic orbits.
pub fn gluing_exists(spec: &GluingSpec) -> Result<GluingCheck, GluingError> {
    spec.check_pairing()?;
    let obstruction = spec.pairs.iter().find_map(|p| {
        let (x, y) = (spec.component(p.a).orbit_count, spec.component(p.b).orbit_count);
        (x != y).then(|| format!("{} has {x} orbits, {} has {y}", spec.label(p.a), spec.label(p.b)))
    });
    Ok(GluingCheck { exists: obstruction.is_none(), obstruction })
}

/// Smale graph of the glued manifold. Pieces keep their base edges; across
/// each pair, a piece whose unstable lamination meets one side gets an edge
/// to every piece whose stable lamination meets the other side.
pub fn triple_smale_graph(spec: &GluingSpec) -> Result<SmaleGraph, GluingError> {
    spec.check_pairing()?;
    let mut g = SmaleGraph::default();
    let mut ids = Vec::new();
    for (name, s) in &spec.blocks {
        ids.push(g.extend_prefixed(&s.graph, &format!("{name}.")));
    }
    let meeting = |r: CompRef, inc: fn(&BlockSummary) -> &Vec<BTreeSet<usize>>| -> Vec<usize> {
        let s = &spec.blocks[r.block].1;
        (0..s.piece_count()).filter(|&v| inc(s)[v].contains(&r.comp)).map(|v| ids[r.block][v]).collect()
    };
    let stable = |r| meeting(r, |s| &s.stable_incidence);
    let unstable = |r| meeting(r, |s| &s.unstable_incidence);
    for p in &spec.pairs {
        if !p.strongly_quasi_transverse {
            return Err(GluingError::NotStronglyQuasiTransverse(format!("{} {}", spec.label(p.a), spec.label(p.b))));
        }
        for r in [p.a, p.b] {
            if stable(r).is_empty() && unstable(r).is_empty() {
                return Err(GluingError::MissingIncidence(spec.label(r)));
            }
        }
        for (from, to) in [(p.a, p.b), (p.b, p.a)] {
            for &x in &unstable(from) {
                for &y in &stable(to) {
                    g.add_edge(x, y);
                }
            }
        }
    }
    Ok(g)
}

pub fn is_transitive_glued(g: &SmaleGraph) -> bool {
    g.is_strongly_connected()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueVerdict {
    pub gluable: bool,
    pub obstruction: Option<String>,
    /// Absent when no gluing exists.
    pub transitive: Option<bool>,
    pub graph: Option<SmaleGraph>,
}

impl fmt::Display for GlueVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gluable={}", self.gluable)?;
        match self.transitive {
            Some(t) => write!(f, " transitive={t}"),
            None => write!(f, " transitive=-"),
        }
    }
}

/// Gluability and transitivity of a gluing, with no requirement on the
/// lamination flavors.
pub fn glue(spec: &GluingSpec) -> Result<GlueVerdict, GluingError> {
    let check = gluing_exists(spec)?;
    if !check.exists {
        return Ok(GlueVerdict { gluable: false, obstruction: check.obstruction, transitive: None, graph: None });
    }
    let graph = triple_smale_graph(spec)?;
    Ok(GlueVerdict { gluable: true, obstruction: None, transitive: Some(is_transitive_glued(&graph)), graph: Some(graph) })
}

/// Gluing of blocks whose boundary laminations are all alternating
/// elementary. For such blocks a gluing exists exactly when paired tori
/// carry equally many orbits, and gluing transitive blocks keeps the
/// result transitive.
pub fn checked_glue(spec: &GluingSpec) -> Result<GlueVerdict, GluingError> {
    for (name, s) in &spec.blocks {
        if let Some(c) = s.components.iter().position(|c| !c.flavor.is_alternating_elementary()) {
            return Err(GluingError::NotAlternatingElementary(format!("{name}.{c}")));
        }
    }
    let v = glue(spec)?;
    let all_transitive = spec.blocks.iter().all(|(_, s)| s.transitive);
    if v.gluable && all_transitive && v.transitive == Some(false) {
        return Err(GluingError::TransitivityLost);
    }
    Ok(v)
}

/// The complement of a periodic orbit with `p` stable separatrices in a
/// transitive flow, glued to a copy of itself carrying one extra compact
/// leaf in every annulus.
#[derive(Debug, Clone)]
pub struct OrbitComplementGluing {
    pub base: BlockSummary,
    pub extended: BlockSummary,
    pub spec: GluingSpec,
    pub graph: SmaleGraph,
    pub transitive: bool,
}

pub fn orbit_complement_gluing(p: usize) -> Result<OrbitComplementGluing, GluingError> {
    let base = BlockSummary::closed_transitive("L").double_blow_up_excise(0, p)?;
    let mut extended = base.clone();
    extended.graph.vertices[0] = "L0".to_string();
    for i in 0..2 * p {
        let Flavor::FullType(sigma) = &extended.components[0].flavor else { unreachable!() };
        // Leaf i of the original type sits at index 2i once i leaves were added.
        let at = 2 * i;
        let left = sigma.entries()[at];
        let next = sigma.entries()[(at + 1) % sigma.len()];
        let triple = Triple::new(
            if left.right == Arrow::Right { Arrow::Left } else { Arrow::Right },
            Orient::Down,
            if next.left == Arrow::Left { Arrow::Right } else { Arrow::Left },
        );
        extended = extended.add_compact_leaf(0, at, triple, &[0], &format!("O{}", i + 1))?;
    }
    let spec = GluingSpec {
        blocks: vec![("P".into(), base.clone()), ("Q".into(), extended.clone())],
        pairs: vec![Pair {
            a: CompRef { block: 0, comp: 0 },
            b: CompRef { block: 1, comp: 0 },
            reversed: true,
            strongly_quasi_transverse: true,
        }],
    };
    let graph = triple_smale_graph(&spec)?;
    let transitive = is_transitive_glued(&graph);
    Ok(OrbitComplementGluing { base, extended, spec, graph, transitive })
}

/// A parsed glue-spec file: block names with their summary paths, and the
/// pairs by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueSpecFile {
    pub blocks: Vec<(String, String)>,
    pub pairs: Vec<(String, usize, String, usize, bool, bool)>,
}

pub fn parse_glue_spec(text: &str) -> Result<GlueSpecFile, GluingError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "gluespec v1")) => {}
        other => {
            return Err(GluingError::Syntax { line: other.map_or(1, |(n, _)| n), msg: "expected `gluespec v1`".into() })
        }
    }
    let mut out = GlueSpecFile { blocks: Vec::new(), pairs: Vec::new() };
    for (line, l) in lines {
        let err = |msg: String| GluingError::Syntax { line, msg };
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "block" if toks.len() == 3 => {
                if out.blocks.iter().any(|(n, _)| n == toks[1]) {
                    return Err(err(format!("duplicate block `{}`", toks[1])));
                }
                out.blocks.push((toks[1].to_string(), toks[2].to_string()));
            }
            "pair" if toks.len() >= 3 => {
                let comp = |t: &str| -> Result<(String, usize), GluingError> {
                    let (b, c) = t.rsplit_once('.').ok_or_else(|| err(format!("expected <block>.<component>, got `{t}`")))?;
                    let c = c.parse().map_err(|_| err(format!("bad component in `{t}`")))?;
                    Ok((b.to_string(), c))
                };
                let (a, ca) = comp(toks[1])?;
                let (b, cb) = comp(toks[2])?;
                let mut reversed = false;
                let mut sqt = false;
                for f in &toks[3..] {
                    match *f {
                        "reversed" => reversed = true,
                        "sqt" => sqt = true,
                        _ => return Err(err(format!("unknown pair flag `{f}`"))),
                    }
                }
                out.pairs.push((a, ca, b, cb, reversed, sqt));
            }
            _ => return Err(err(format!("unrecognized line `{l}`"))),
        }
    }
    Ok(out)
}

impl GlueSpecFile {
    /// Loads each block's summary through `load` and resolves pair names.
    pub fn resolve<E>(
        &self,
        mut load: impl FnMut(&str) -> Result<BlockSummary, E>,
    ) -> Result<Result<GluingSpec, GluingError>, E> {
        let mut blocks = Vec::new();
        for (name, path) in &self.blocks {
            blocks.push((name.clone(), load(path)?));
        }
        let index: BTreeMap<&str, usize> = self.blocks.iter().enumerate().map(|(i, (n, _))| (n.as_str(), i)).collect();
        let mut pairs = Vec::new();
        for (a, ca, b, cb, reversed, sqt) in &self.pairs {
            let (Some(&ia), Some(&ib)) = (index.get(a.as_str()), index.get(b.as_str())) else {
                return Ok(Err(GluingError::BadPairing(format!("unknown block in pair {a}.{ca} {b}.{cb}"))));
            };
            pairs.push(Pair {
                a: CompRef { block: ia, comp: *ca },
                b: CompRef { block: ib, comp: *cb },
                reversed: *reversed,
                strongly_quasi_transverse: *sqt,
            });
        }
        Ok(Ok(GluingSpec { blocks, pairs }))
    }
}
