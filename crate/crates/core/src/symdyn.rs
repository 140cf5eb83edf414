//! Symbolic dynamics of a geometric type.
//!
//! Covers the transition graph on horizontal bands, basic pieces,
//! periodic orbits with the sign of their multipliers, and the extremal
//! maps whose cycles are the free separatrices.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::geomtype::{GeometricType, Sign, Symbol};

/// Transition graph on horizontal bands: `(i,j) -> (k,j')` for every band
/// `j'` of the rectangle `k` that `H_i^j` is mapped into.
#[derive(Debug, Clone)]
pub struct SymbolGraph {
    pub symbols: Vec<Symbol>,
    /// Successor lists over dense symbol indices.
    pub succ: Vec<Vec<usize>>,
}

impl SymbolGraph {
    pub fn new(t: &GeometricType) -> Self {
        let symbols: Vec<Symbol> = t.symbols().collect();
        let succ = symbols
            .iter()
            .map(|&s| {
                let k = t.phi(s).k;
                (0..t.h()[k]).map(|j| t.symbol_index(Symbol::new(k, j))).collect()
            })
            .collect();
        SymbolGraph { symbols, succ }
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    fn to_petgraph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::with_capacity(self.symbols.len(), self.edge_count());
        let nodes: Vec<_> = self.symbols.iter().map(|_| g.add_node(())).collect();
        for (a, out) in self.succ.iter().enumerate() {
            for &b in out {
                g.add_edge(nodes[a], nodes[b], ());
            }
        }
        g
    }

    /// Symbols reachable from `start` by paths of length at least one.
    pub fn reachable_from(&self, start: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.symbols.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in start {
            for &b in &self.succ[s] {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        while let Some(a) = queue.pop_front() {
            for &b in &self.succ[a] {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        seen
    }
}

/// A strongly connected set of symbols carrying at least one cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicPiece {
    pub id: usize,
    pub symbols: Vec<Symbol>,
    /// The piece is a single periodic orbit.
    pub trivial: bool,
}

/// Basic pieces ordered by their smallest symbol, plus wandering symbols.
pub fn basic_pieces(t: &GeometricType) -> (Vec<BasicPiece>, Vec<Symbol>) {
    let graph = SymbolGraph::new(t);
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&graph.to_petgraph())
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort();

    let mut pieces = Vec::new();
    let mut wandering = Vec::new();
    for comp in comps {
        let members: BTreeSet<usize> = comp.iter().copied().collect();
        let inner_edges: usize = comp
            .iter()
            .map(|&a| graph.succ[a].iter().filter(|b| members.contains(b)).count())
            .sum();
        if inner_edges == 0 {
            wandering.extend(comp.iter().map(|&a| graph.symbols[a]));
            continue;
        }
        pieces.push(BasicPiece {
            id: pieces.len(),
            symbols: comp.iter().map(|&a| graph.symbols[a]).collect(),
            trivial: inner_edges == comp.len(),
        });
    }
    wandering.sort();
    (pieces, wandering)
}

/// One basic piece containing every symbol.
pub fn is_transitive(t: &GeometricType) -> bool {
    let (pieces, wandering) = basic_pieces(t);
    pieces.len() == 1 && wandering.is_empty()
}

/// Number of periodic itineraries of period `p`, as `trace(M^p)`.
pub fn count_periodic_itineraries(t: &GeometricType, p: usize) -> BigUint {
    let g = SymbolGraph::new(t);
    let m = g.symbols.len();
    let mut adj = vec![vec![BigUint::zero(); m]; m];
    for (a, out) in g.succ.iter().enumerate() {
        for &b in out {
            adj[a][b] += 1u32;
        }
    }
    let mut acc: Vec<Vec<BigUint>> = (0..m)
        .map(|a| (0..m).map(|b| if a == b { BigUint::one() } else { BigUint::zero() }).collect())
        .collect();
    let mut base = adj;
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    (0..m).fold(BigUint::zero(), |s, a| s + &acc[a][a])
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let m = a.len();
    let mut out = vec![vec![BigUint::zero(); m]; m];
    for i in 0..m {
        for k in 0..m {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// A primitive periodic orbit, stored as its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicOrbit {
    pub word: Vec<Symbol>,
    pub sign: Sign,
}

impl PeriodicOrbit {
    /// Orbit of a closed admissible word; the word is reduced to its
    /// primitive root and rotated into canonical position.
    pub fn from_cycle(t: &GeometricType, cycle: &[Symbol]) -> Self {
        let root = primitive_root(cycle);
        let sign = root.iter().fold(Sign::Plus, |acc, &s| acc * t.phi(s).eps);
        PeriodicOrbit { word: least_rotation(root), sign }
    }

    /// Relabels an orbit of `t.transpose()` as the same orbit of `t`.
    pub fn from_transpose(t: &GeometricType, orbit: &PeriodicOrbit) -> Self {
        let mut word: Vec<Symbol> = orbit
            .word
            .iter()
            .map(|s| t.phi_inv(s.rect, s.band).0)
            .collect();
        word.reverse();
        PeriodicOrbit::from_cycle(t, &word)
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub fn word_string(&self) -> String {
        self.word.iter().map(|s| s.to_string()).collect()
    }
}

impl fmt::Display for PeriodicOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.word_string(), self.sign)
    }
}

/// Shortest prefix whose repetition gives the whole cyclic word.
pub fn primitive_root<T: PartialEq>(w: &[T]) -> &[T] {
    let n = w.len();
    for p in 1..=n {
        if n % p == 0 && (p..n).all(|i| w[i] == w[i - p]) {
            return &w[..p];
        }
    }
    w
}

/// Lexicographically least rotation of a cyclic word.
pub fn least_rotation<T: Ord + Clone>(w: &[T]) -> Vec<T> {
    (0..w.len())
        .map(|r| w[r..].iter().chain(&w[..r]).cloned().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// All primitive periodic orbits of period at most `max_period`, ordered by
/// period and then by word.
pub fn periodic_orbits(t: &GeometricType, max_period: usize) -> Vec<PeriodicOrbit> {
    let g = SymbolGraph::new(t);
    let mut out = Vec::new();
    for p in 1..=max_period {
        for start in 0..g.symbols.len() {
            let mut word = vec![start];
            collect_cycles(t, &g, p, &mut word, &mut out);
        }
    }
    out.sort_by(|a, b| a.period().cmp(&b.period()).then_with(|| a.word.cmp(&b.word)));
    out
}

fn collect_cycles(
    t: &GeometricType,
    g: &SymbolGraph,
    p: usize,
    word: &mut Vec<usize>,
    out: &mut Vec<PeriodicOrbit>,
) {
    let start = word[0];
    let last = *word.last().expect("nonempty");
    if word.len() == p {
        if g.succ[last].contains(&start) {
            let syms: Vec<Symbol> = word.iter().map(|&a| g.symbols[a]).collect();
            // Keep one representative per cyclic class: the least rotation.
            if primitive_root(&syms).len() == p && least_rotation(&syms) == syms {
                out.push(PeriodicOrbit::from_cycle(t, &syms));
            }
        }
        return;
    }
    for &b in &g.succ[last] {
        if b >= start {
            word.push(b);
            collect_cycles(t, g, p, word, out);
            word.pop();
        }
    }
}

/// Which invariant manifold an extremal map follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Manifold {
    Stable,
    Unstable,
}

impl Manifold {
    pub fn name(self) -> &'static str {
        match self {
            Manifold::Stable => "stable",
            Manifold::Unstable => "unstable",
        }
    }
}

/// Extreme side of a rectangle. For the stable map `Low`/`High` read as
/// left/right (extreme vertical bands); for the unstable map as bottom/top
/// (extreme horizontal bands).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Low,
    High,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Low => Side::High,
            Side::High => Side::Low,
        }
    }

    pub fn apply(self, eps: Sign) -> Side {
        match eps {
            Sign::Plus => self,
            Sign::Minus => self.flip(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtremalState {
    pub rect: usize,
    pub side: Side,
}

impl ExtremalState {
    pub fn label(&self, kind: Manifold) -> String {
        let side = match (kind, self.side) {
            (Manifold::Stable, Side::Low) => "left",
            (Manifold::Stable, Side::High) => "right",
            (Manifold::Unstable, Side::Low) => "low",
            (Manifold::Unstable, Side::High) => "high",
        };
        format!("({},{})", self.rect + 1, side)
    }
}

/// One step of the extremal map: the successor state, the band crossed and
/// its sign.
pub fn extremal_step(t: &GeometricType, kind: Manifold, s: ExtremalState) -> (ExtremalState, Symbol, Sign) {
    match kind {
        Manifold::Stable => {
            let l = match s.side {
                Side::Low => 0,
                Side::High => t.v()[s.rect] - 1,
            };
            let (sym, eps) = t.phi_inv(s.rect, l);
            (ExtremalState { rect: sym.rect, side: s.side.apply(eps) }, sym, eps)
        }
        Manifold::Unstable => {
            let j = match s.side {
                Side::Low => 0,
                Side::High => t.h()[s.rect] - 1,
            };
            let sym = Symbol::new(s.rect, j);
            let tgt = t.phi(sym);
            (ExtremalState { rect: tgt.k, side: s.side.apply(tgt.eps) }, sym, tgt.eps)
        }
    }
}

/// A cycle of an extremal map: one free separatrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatrixCycle {
    pub kind: Manifold,
    /// States in map order, starting from the least one.
    pub states: Vec<ExtremalState>,
    /// `symbols[t]` is the band crossed when leaving `states[t]`.
    pub symbols: Vec<Symbol>,
    pub orbit: PeriodicOrbit,
}

impl SeparatrixCycle {
    pub fn label(&self) -> String {
        let states: Vec<String> = self.states.iter().map(|s| s.label(self.kind)).collect();
        format!("{{{}}} {}", states.join(" "), self.orbit)
    }

    /// The cycle visits both sides of some rectangle.
    pub fn visits_both_sides(&self) -> bool {
        self.states
            .iter()
            .any(|s| self.states.contains(&ExtremalState { rect: s.rect, side: s.side.flip() }))
    }
}

/// Dense index of an extremal state.
pub fn state_index(s: ExtremalState) -> usize {
    2 * s.rect + usize::from(s.side == Side::High)
}

pub fn all_states(n: usize) -> impl Iterator<Item = ExtremalState> {
    (0..n).flat_map(|rect| [Side::Low, Side::High].map(|side| ExtremalState { rect, side }))
}

/// Cycles of the extremal map, ordered by their least state.
pub fn free_separatrices(t: &GeometricType, kind: Manifold) -> Vec<SeparatrixCycle> {
    let n = t.n();
    let next: Vec<ExtremalState> = all_states(n).map(|s| extremal_step(t, kind, s).0).collect();
    // 0 = unvisited, 1 = on the current walk, 2 = done.
    let mut mark = vec![0u8; 2 * n];
    let mut cycles = Vec::new();
    for start in all_states(n) {
        let mut walk = Vec::new();
        let mut s = start;
        while mark[state_index(s)] == 0 {
            mark[state_index(s)] = 1;
            walk.push(s);
            s = next[state_index(s)];
        }
        if mark[state_index(s)] == 1 {
            let pos = walk.iter().position(|&w| w == s).expect("on walk");
            cycles.push(build_cycle(t, kind, &walk[pos..]));
        }
        for w in walk {
            mark[state_index(w)] = 2;
        }
    }
    cycles.sort_by(|a, b| a.states[0].cmp(&b.states[0]));
    cycles
}

fn build_cycle(t: &GeometricType, kind: Manifold, states: &[ExtremalState]) -> SeparatrixCycle {
    let min = (0..states.len()).min_by_key(|&r| states[r]).expect("nonempty");
    let states: Vec<ExtremalState> = states[min..].iter().chain(&states[..min]).copied().collect();
    let symbols: Vec<Symbol> = states.iter().map(|&s| extremal_step(t, kind, s).1).collect();
    let forward: Vec<Symbol> = match kind {
        Manifold::Stable => symbols.iter().rev().copied().collect(),
        Manifold::Unstable => symbols.clone(),
    };
    SeparatrixCycle { kind, orbit: PeriodicOrbit::from_cycle(t, &forward), states, symbols }
}

/// Directed graph on named vertices without self-loops or parallel edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SmaleGraph {
    pub vertices: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl SmaleGraph {
    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.edges.insert((a, b));
        }
    }

    /// Edges as name pairs, sorted.
    pub fn named_edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(a, b)| (self.vertices[a].clone(), self.vertices[b].clone()))
            .collect();
        out.sort();
        out
    }

    /// One strongly connected component covering every vertex. The empty
    /// graph is not strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut g: DiGraph<(), ()> = DiGraph::new();
        let nodes: Vec<_> = self.vertices.iter().map(|_| g.add_node(())).collect();
        for &(a, b) in &self.edges {
            g.add_edge(nodes[a], nodes[b], ());
        }
        tarjan_scc(&g).len() == 1
    }

    /// Disjoint union; vertex names of `other` are prefixed.
    pub fn extend_prefixed(&mut self, other: &SmaleGraph, prefix: &str) -> Vec<usize> {
        let ids: Vec<usize> = other
            .vertices
            .iter()
            .map(|v| self.add_vertex(format!("{prefix}{v}")))
            .collect();
        for &(a, b) in &other.edges {
            self.add_edge(ids[a], ids[b]);
        }
        ids
    }
}

/// Name of the `i`-th basic piece in reports and graphs.
pub fn piece_name(id: usize) -> String {
    format!("L{}", id + 1)
}

/// Smale graph of the type: an edge between distinct pieces when some
/// symbol of the first reaches some symbol of the second.
pub fn smale_graph_of_type(t: &GeometricType) -> SmaleGraph {
    let g = SymbolGraph::new(t);
    let (pieces, _) = basic_pieces(t);
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &pieces {
        for &s in &p.symbols {
            owner.insert(t.symbol_index(s), p.id);
        }
    }
    let mut sg = SmaleGraph::default();
    for p in &pieces {
        sg.add_vertex(piece_name(p.id));
    }
    for p in &pieces {
        let start: Vec<usize> = p.symbols.iter().map(|&s| t.symbol_index(s)).collect();
        for (b, reached) in g.reachable_from(&start).into_iter().enumerate() {
            if let (true, Some(&q)) = (reached, owner.get(&b)) {
                sg.add_edge(p.id, q);
            }
        }
    }
    sg
}
