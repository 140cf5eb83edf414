//! Brute-force model of a geometric type as explicit piecewise-affine maps
//! on unit squares. Shares no code with the library beyond the type data:
//! periodic points are exact fixed points, extremality is decided against
//! depth-12 cylinder intervals, and the boundary surface is assembled from
//! coordinates.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use anosov_core::{GeometricType, Sign, SignedTarget, Symbol};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;

pub type R = BigRational;

pub const DEPTH: usize = 12;

fn r(a: i64, b: i64) -> R {
    R::new(BigInt::from(a), BigInt::from(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Thirds,
    Quarters,
}

fn band(rule: Rule, count: usize, idx: usize) -> (R, R) {
    let (c, j) = (count as i64, idx as i64 + 1);
    match rule {
        Rule::Thirds => (r(3 * j - 2, 3 * c), r(3 * j - 1, 3 * c)),
        Rule::Quarters => (r(4 * j - 3, 4 * c), r(4 * j - 2, 4 * c)),
    }
}

#[derive(Debug, Clone)]
struct Map1 {
    a: R,
    b: R,
}

impl Map1 {
    fn onto((lo, hi): (R, R), flip: bool) -> Map1 {
        if flip {
            Map1 { a: &lo - &hi, b: hi }
        } else {
            Map1 { a: &hi - &lo, b: lo }
        }
    }

    fn id() -> Map1 {
        Map1 { a: R::one(), b: R::zero() }
    }

    fn at(&self, x: &R) -> R {
        &self.a * x + &self.b
    }

    /// `self` after `g`.
    fn then_after(&self, g: &Map1) -> Map1 {
        Map1 { a: &self.a * &g.a, b: &self.a * &g.b + &self.b }
    }

    fn fix(&self) -> R {
        &self.b / (R::one() - &self.a)
    }

    fn image(&self, (lo, hi): &(R, R)) -> (R, R) {
        let (p, q) = (self.at(lo), self.at(hi));
        if p <= q {
            (p, q)
        } else {
            (q, p)
        }
    }
}

pub fn transpose(t: &GeometricType) -> GeometricType {
    let n = t.n();
    let mut phi: Vec<Vec<Option<SignedTarget>>> = (0..n).map(|k| vec![None; t.v()[k]]).collect();
    for i in 0..n {
        for j in 0..t.h()[i] {
            let tg = t.phi(Symbol::new(i, j));
            phi[tg.k][tg.l] = Some(SignedTarget { k: i, l: j, eps: tg.eps });
        }
    }
    let phi = phi.into_iter().map(|row| row.into_iter().map(Option::unwrap).collect()).collect();
    GeometricType::new(t.v().to_vec(), t.h().to_vec(), phi).unwrap()
}

/// Lower or upper end of a rectangle side, in the oracle's own terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Min,
    Max,
}

impl End {
    fn by(self, eps: Sign) -> End {
        match (self, eps) {
            (e, Sign::Plus) => e,
            (End::Min, Sign::Minus) => End::Max,
            (End::Max, Sign::Minus) => End::Min,
        }
    }
}

pub struct Model<'a> {
    pub t: &'a GeometricType,
    pub rule: Rule,
    preimage: BTreeMap<(usize, usize), Symbol>,
    /// Depth-12 cylinders containing the extremes of the x-coordinates of
    /// the invariant set, per rectangle.
    xcyl: BTreeMap<(usize, End), (R, R)>,
    ycyl: BTreeMap<(usize, End), (R, R)>,
}

impl<'a> Model<'a> {
    pub fn new(t: &'a GeometricType, rule: Rule) -> Self {
        let mut preimage = BTreeMap::new();
        for i in 0..t.n() {
            for j in 0..t.h()[i] {
                let tg = t.phi(Symbol::new(i, j));
                preimage.insert((tg.k, tg.l), Symbol::new(i, j));
            }
        }
        let mut m = Model { t, rule, preimage, xcyl: BTreeMap::new(), ycyl: BTreeMap::new() };
        m.xcyl = m.cylinders(true);
        m.ycyl = m.cylinders(false);
        m
    }

    fn eps(&self, s: Symbol) -> Sign {
        self.t.phi(s).eps
    }

    /// Heights of the target rectangle onto the horizontal band `s`.
    fn g(&self, s: Symbol) -> Map1 {
        Map1::onto(band(self.rule, self.t.h()[s.rect], s.band), self.eps(s) == Sign::Minus)
    }

    /// Widths of the source rectangle onto the image vertical band of `s`.
    fn f(&self, s: Symbol) -> Map1 {
        let tg = self.t.phi(s);
        Map1::onto(band(self.rule, self.t.v()[tg.k], tg.l), tg.eps == Sign::Minus)
    }

    fn cylinders(&self, horizontal_coord: bool) -> BTreeMap<(usize, End), (R, R)> {
        let n = self.t.n();
        let mut cur: BTreeMap<(usize, End), (R, R)> = BTreeMap::new();
        for i in 0..n {
            for e in [End::Min, End::Max] {
                cur.insert((i, e), (R::zero(), R::one()));
            }
        }
        for _ in 0..DEPTH {
            let mut next = BTreeMap::new();
            for i in 0..n {
                let mut cands: Vec<(R, R)> = Vec::new();
                if horizontal_coord {
                    for l in 0..self.t.v()[i] {
                        let s = self.preimage[&(i, l)];
                        let map = self.f(s);
                        for e in [End::Min, End::Max] {
                            cands.push(map.image(&cur[&(s.rect, e)]));
                        }
                    }
                } else {
                    for j in 0..self.t.h()[i] {
                        let s = Symbol::new(i, j);
                        let map = self.g(s);
                        let k = self.t.phi(s).k;
                        for e in [End::Min, End::Max] {
                            cands.push(map.image(&cur[&(k, e)]));
                        }
                    }
                }
                let lo = cands.iter().min_by(|a, b| a.0.cmp(&b.0)).unwrap().clone();
                let hi = cands.iter().max_by(|a, b| a.1.cmp(&b.1)).unwrap().clone();
                next.insert((i, End::Min), lo);
                next.insert((i, End::Max), hi);
            }
            cur = next;
        }
        cur
    }

    /// Cylinder holding the extreme height of the invariant set inside
    /// band `s`.
    pub fn band_extreme(&self, s: Symbol, end: End) -> (R, R) {
        let k = self.t.phi(s).k;
        let g = self.g(s);
        let cands = [g.image(&self.ycyl[&(k, End::Min)]), g.image(&self.ycyl[&(k, End::Max)])];
        match end {
            End::Min => cands.into_iter().min_by(|a, b| a.0.cmp(&b.0)).unwrap(),
            End::Max => cands.into_iter().max_by(|a, b| a.1.cmp(&b.1)).unwrap(),
        }
    }

    pub fn extreme_height(&self, rect: usize, end: End) -> (R, R) {
        self.ycyl[&(rect, end)].clone()
    }

    /// Primitive closed words up to the given period, as least rotations.
    pub fn periodic_words(&self, max_period: usize) -> Vec<Vec<Symbol>> {
        let syms: Vec<Symbol> =
            (0..self.t.n()).flat_map(|i| (0..self.t.h()[i]).map(move |j| Symbol::new(i, j))).collect();
        let mut out = BTreeSet::new();
        let mut stack: Vec<Vec<Symbol>> = syms.iter().map(|&s| vec![s]).collect();
        while let Some(w) = stack.pop() {
            let last = *w.last().unwrap();
            let k = self.t.phi(last).k;
            if k == w[0].rect {
                let primitive = (1..w.len()).all(|d| w.len() % d != 0 || (0..w.len()).any(|t| w[t] != w[(t + d) % w.len()]));
                if primitive {
                    let best = (0..w.len())
                        .map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<_>>())
                        .min()
                        .unwrap();
                    out.insert(best);
                }
            }
            if w.len() < max_period {
                for j in 0..self.t.h()[k] {
                    let mut x = w.clone();
                    x.push(Symbol::new(k, j));
                    stack.push(x);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Exact point of the orbit in rectangle `w[t].rect`.
    pub fn orbit_point(&self, w: &[Symbol], t: usize) -> (R, R) {
        let p = w.len();
        let mut gy = Map1::id();
        for k in (0..p).rev() {
            gy = self.g(w[(t + k) % p]).then_after(&gy);
        }
        let mut fx = Map1::id();
        for k in (1..=p).rev() {
            fx = self.f(w[(t + p - k) % p]).then_after(&fx);
        }
        (fx.fix(), gy.fix())
    }

    pub fn sign_of(&self, w: &[Symbol]) -> Sign {
        w.iter().fold(Sign::Plus, |a, &s| if self.eps(s) == Sign::Minus { a.flip() } else { a })
    }

    fn within(x: &R, (lo, hi): &(R, R)) -> bool {
        lo <= x && x <= hi
    }

    /// Free separatrices of the given kind: stable ones are horizontal
    /// half-leaves reaching no other point of the invariant set, followed
    /// backward; unstable ones are vertical, followed forward.
    pub fn free_separatrices(&self, stable: bool) -> Vec<OSeparatrix> {
        let mut out: Vec<OSeparatrix> = Vec::new();
        for w in self.periodic_words(2 * self.t.n()) {
            let p = w.len();
            let pts: Vec<(R, R)> = (0..p).map(|t| self.orbit_point(&w, t)).collect();
            for e0 in [End::Min, End::Max] {
                let mut states = Vec::new();
                let (mut t, mut e) = (0usize, e0);
                loop {
                    states.push((t, e));
                    if stable {
                        let prev = (t + p - 1) % p;
                        e = e.by(self.eps(w[prev]));
                        t = prev;
                    } else {
                        e = e.by(self.eps(w[t]));
                        t = (t + 1) % p;
                    }
                    if (t, e) == (0, e0) {
                        break;
                    }
                }
                let free = states.iter().all(|&(t, e)| {
                    let rect = w[t].rect;
                    if stable {
                        Self::within(&pts[t].0, &self.xcyl[&(rect, e)])
                    } else {
                        Self::within(&pts[t].1, &self.ycyl[&(rect, e)])
                    }
                });
                if !free {
                    continue;
                }
                let mut set = BTreeMap::new();
                for &(t, e) in &states {
                    let coord = if stable { pts[t].1.clone() } else { pts[t].0.clone() };
                    set.insert((w[t].rect, e), coord);
                }
                let sep = OSeparatrix { word: w.clone(), sign: self.sign_of(&w), states: set };
                if !out.contains(&sep) {
                    out.push(sep);
                }
            }
        }
        out.sort_by(|a, b| a.states.keys().next().cmp(&b.states.keys().next()));
        out
    }
}

/// A free separatrix found by the oracle. `states` maps each visited
/// (rectangle, end) to the transverse coordinate of the leaf there:
/// the height for stable separatrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OSeparatrix {
    pub word: Vec<Symbol>,
    pub sign: Sign,
    pub states: BTreeMap<(usize, End), R>,
}

impl OSeparatrix {
    pub fn key(&self) -> (Vec<Symbol>, Sign, Vec<(usize, End)>) {
        (self.word.clone(), self.sign, self.states.keys().copied().collect())
    }
}

/// A boundary circle of the assembled surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OCircle {
    /// Outer gap segments on it: (rectangle, end of side, gap index).
    pub gaps: Vec<(usize, End, usize)>,
    pub spikes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OComponent {
    /// Strips as (rectangle, index).
    pub strips: BTreeSet<(usize, usize)>,
    pub chi: i64,
    pub circles: Vec<OCircle>,
}

impl OComponent {
    pub fn genus(&self) -> i64 {
        (2 - self.chi - self.circles.len() as i64) / 2
    }
}

/// The stable boundary surface assembled from coordinates: strips between
/// vertical bands, with each vertical band edge identified to the outer
/// side of its preimage band. `End::Min` on a side means x = 0.
pub fn assemble_surface(t: &GeometricType, rule: Rule) -> Vec<OComponent> {
    let n = t.n();
    let xs = |i: usize| -> Vec<R> {
        let mut v = vec![R::zero()];
        for l in 0..t.v()[i] {
            let (lo, hi) = band(rule, t.v()[i], l);
            v.push(lo);
            v.push(hi);
        }
        v.push(R::one());
        v
    };
    let strip_of = |i: usize, x: &R| -> usize {
        let b = xs(i);
        (0..=t.v()[i]).find(|&s| &b[2 * s] <= x && x <= &b[2 * s + 1]).unwrap()
    };
    let mut ids: HashMap<(usize, R, R), usize> = HashMap::new();
    let mut id = |key: (usize, R, R)| -> usize {
        let next = ids.len();
        *ids.entry(key).or_insert(next)
    };
    // Vertices and free segments.
    let mut free_segments: Vec<(usize, usize, usize, usize, Option<(End, usize)>)> = Vec::new();
    let mut glue_points: Vec<(usize, usize)> = Vec::new();
    let mut strip_links: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for i in 0..n {
        let b = xs(i);
        let h = t.h()[i];
        for s in 0..=t.v()[i] {
            let (a, c) = (b[2 * s].clone(), b[2 * s + 1].clone());
            let p00 = id((i, a.clone(), R::zero()));
            let p10 = id((i, c.clone(), R::zero()));
            let p01 = id((i, a.clone(), R::one()));
            let p11 = id((i, c.clone(), R::one()));
            free_segments.push((i, s, p00, p10, None));
            free_segments.push((i, s, p01, p11, None));
        }
        let mut ys = vec![R::zero()];
        for j in 0..h {
            let (lo, hi) = band(rule, h, j);
            ys.push(lo);
            ys.push(hi);
        }
        ys.push(R::one());
        for (end, x, s) in [(End::Min, R::zero(), 0), (End::Max, R::one(), t.v()[i])] {
            for g in 0..=h {
                let p = id((i, x.clone(), ys[2 * g].clone()));
                let q = id((i, x.clone(), ys[2 * g + 1].clone()));
                free_segments.push((i, s, p, q, Some((end, g))));
            }
        }
    }
    for i in 0..n {
        for j in 0..t.h()[i] {
            let s = Symbol::new(i, j);
            let tg = t.phi(s);
            let (xl, xr) = band(rule, t.v()[tg.k], tg.l);
            let (x_for_left, x_for_right) = match tg.eps {
                Sign::Plus => (R::zero(), R::one()),
                Sign::Minus => (R::one(), R::zero()),
            };
            let (lo, hi) = band(rule, t.h()[i], j);
            let gmap = Map1::onto((lo, hi), tg.eps == Sign::Minus);
            for (xe, xo) in [(xl, x_for_left), (xr, x_for_right)] {
                for y in [R::zero(), R::one()] {
                    let a = id((tg.k, xe.clone(), y.clone()));
                    let b = id((i, xo.clone(), gmap.at(&y)));
                    glue_points.push((a, b));
                }
                let outer_strip = if xo.is_zero() { 0 } else { t.v()[i] };
                strip_links.push(((tg.k, strip_of(tg.k, &xe)), (i, outer_strip)));
            }
        }
    }

    let strips: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..=t.v()[i]).map(move |s| (i, s))).collect();
    let sidx: BTreeMap<(usize, usize), usize> = strips.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let mut su = UnionFind::<usize>::new(strips.len());
    for (a, b) in &strip_links {
        su.union(sidx[a], sidx[b]);
    }
    let mut vu = UnionFind::<usize>::new(ids.len());
    for &(a, b) in &glue_points {
        vu.union(a, b);
    }
    // Strip of each vertex, to attribute vertices to components.
    let mut vertex_strip = vec![0usize; ids.len()];
    for ((i, x, _), &v) in &ids {
        vertex_strip[v] = sidx[&(*i, strip_of(*i, x))];
    }

    let mut bu = UnionFind::<usize>::new(ids.len());
    for &(_, _, p, q, _) in &free_segments {
        bu.union(vu.find(p), vu.find(q));
    }
    let mut comps: BTreeMap<usize, OComponent> = BTreeMap::new();
    for (k, &(i, s)) in strips.iter().enumerate() {
        comps
            .entry(su.find(k))
            .or_insert_with(|| OComponent { strips: BTreeSet::new(), chi: 0, circles: Vec::new() })
            .strips
            .insert((i, s));
    }
    let comp_root = |strip: (usize, usize)| su.find(sidx[&strip]);
    // V: vertex classes.
    let mut seen = BTreeSet::new();
    for v in 0..ids.len() {
        let c = vu.find(v);
        if seen.insert(c) {
            comps.get_mut(&su.find(vertex_strip[v])).unwrap().chi += 1;
        }
    }
    // F and E.
    for (k, _) in strips.iter().enumerate() {
        comps.get_mut(&su.find(k)).unwrap().chi += 1;
    }
    for &(i, s, _, _, _) in &free_segments {
        comps.get_mut(&comp_root((i, s))).unwrap().chi -= 1;
    }
    for (a, _) in &strip_links {
        comps.get_mut(&comp_root(*a)).unwrap().chi -= 1;
    }
    // Boundary circles: classes of boundary vertices joined by free segments.
    let mut circles: BTreeMap<usize, (usize, OCircle)> = BTreeMap::new();
    for &(i, s, p, _, gap) in &free_segments {
        let root = bu.find(vu.find(p));
        let entry = circles
            .entry(root)
            .or_insert_with(|| (comp_root((i, s)), OCircle { gaps: Vec::new(), spikes: 0 }));
        if let Some((end, g)) = gap {
            entry.1.gaps.push((i, end, g));
            if g > 0 && g < t.h()[i] {
                entry.1.spikes += 1;
            }
        }
    }
    for (_, (comp, mut circle)) in circles {
        circle.gaps.sort();
        comps.get_mut(&comp).unwrap().circles.push(circle);
    }
    let mut out: Vec<OComponent> = comps.into_values().collect();
    for c in &mut out {
        c.circles.sort_by(|a, b| a.gaps.cmp(&b.gaps));
    }
    out.sort_by(|a, b| a.strips.iter().next().cmp(&b.strips.iter().next()));
    out
}

/// Compactness of the leaves bounding one outer side of a gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OGap {
    pub rect: usize,
    pub gap: usize,
    pub end: End,
    pub lower_compact: bool,
    pub upper_compact: bool,
}

pub fn gap_flags(m: &Model, seps: &[OSeparatrix]) -> Vec<OGap> {
    let t = m.t;
    let hit = |rect: usize, end: End, cyl: &(R, R)| {
        seps.iter().any(|s| s.states.get(&(rect, end)).is_some_and(|y| Model::within(y, cyl)))
    };
    let mut out = Vec::new();
    for i in 0..t.n() {
        let h = t.h()[i];
        for gap in 0..=h {
            for end in [End::Min, End::Max] {
                let lower = gap > 0 && hit(i, end, &m.band_extreme(Symbol::new(i, gap - 1), End::Max));
                let upper = gap < h && hit(i, end, &m.band_extreme(Symbol::new(i, gap), End::Min));
                out.push(OGap { rect: i, gap, end, lower_compact: lower, upper_compact: upper });
            }
        }
    }
    out
}

/// Everything the oracle derives for one side: `t` is the input type for
/// the stable side and its transpose for the unstable side.
pub struct OSide {
    pub seps: Vec<OSeparatrix>,
    pub comps: Vec<OComponent>,
    pub gaps: Vec<OGap>,
    /// Per component: leaves (indices into `seps`) and orbit signs of caps.
    pub caps: Vec<Vec<(usize, Vec<Symbol>, Sign)>>,
    pub violations: BTreeSet<String>,
}

pub fn side(t: &GeometricType, rule: Rule) -> OSide {
    let m = Model::new(t, rule);
    let seps = m.free_separatrices(true);
    let comps = assemble_surface(t, rule);
    let gaps = gap_flags(&m, &seps);
    let mut violations = BTreeSet::new();
    let mut caps_all = Vec::new();
    let mut cap_orbits: BTreeMap<Vec<Symbol>, BTreeSet<usize>> = BTreeMap::new();
    for c in &comps {
        let mut caps = Vec::new();
        for circle in &c.circles {
            if circle.spikes == 0 {
                let mut leaves = BTreeSet::new();
                for &(i, end, g) in &circle.gaps {
                    let cyl = m.extreme_height(i, if g == 0 { End::Min } else { End::Max });
                    let found: Vec<usize> = (0..seps.len())
                        .filter(|&k| seps[k].states.get(&(i, end)).is_some_and(|y| Model::within(y, &cyl)))
                        .collect();
                    assert_eq!(found.len(), 1, "oracle: cap frontier must be one compact leaf");
                    leaves.insert(found[0]);
                }
                assert_eq!(leaves.len(), 1, "oracle: cap bounded by several leaves");
                let k = *leaves.iter().next().unwrap();
                caps.push((k, seps[k].word.clone(), seps[k].sign));
                cap_orbits.entry(seps[k].word.clone()).or_default().insert(k);
                continue;
            }
            let mut compact = false;
            for &(i, end, g) in &circle.gaps {
                if g == 0 || g == t.h()[i] {
                    continue;
                }
                let f = gaps.iter().find(|x| (x.rect, x.gap, x.end) == (i, g, end)).unwrap();
                if f.lower_compact || f.upper_compact {
                    compact = true;
                    violations.insert("CompactNonCapGap".to_string());
                }
            }
            if !compact && circle.spikes != 2 {
                violations.insert("NonStripComplement".to_string());
            }
        }
        match c.genus() {
            0 if caps.len() != 2 => {
                violations.insert("WrongCapCount".into());
            }
            0 if caps[0].0 == caps[1].0 => {
                violations.insert("SharedCapLeaf".into());
            }
            0 => {}
            1 if !caps.is_empty() => {
                violations.insert("WrongCapCount".into());
            }
            1 => {}
            _ => {
                violations.insert("BadGenus".into());
            }
        }
        if caps.iter().any(|c| c.2 == Sign::Minus) {
            violations.insert("NegativeCapOrbit".into());
        }
        caps_all.push(caps);
    }
    if cap_orbits.values().any(|l| l.len() > 1) {
        violations.insert("RepeatedCapOrbit".into());
    }
    OSide { seps, comps, gaps, caps: caps_all, violations }
}

/// Oracle verdict: realizable flag and the violation kinds of both sides.
pub struct OVerdict {
    pub stable: OSide,
    pub unstable: OSide,
    pub realizable: bool,
    pub violations: BTreeSet<String>,
}

pub fn verdict(t: &GeometricType, rule: Rule) -> OVerdict {
    let stable = side(t, rule);
    let unstable = side(&transpose(t), rule);
    let mut violations = stable.violations.clone();
    violations.extend(unstable.violations.iter().cloned());
    OVerdict { realizable: violations.is_empty(), stable, unstable, violations }
}

fn word(w: &[Symbol]) -> String {
    w.iter().map(|s| s.to_string()).collect()
}

fn end_name(e: End) -> &'static str {
    match e {
        End::Min => "min",
        End::Max => "max",
    }
}

/// Text dump of everything the oracle decides, for golden files.
pub fn report(t: &GeometricType, rule: Rule) -> String {
    let v = verdict(t, rule);
    let mut s = String::new();
    let m = Model::new(t, rule);
    for (name, seps) in [("stable", m.free_separatrices(true)), ("unstable", m.free_separatrices(false))] {
        for sep in seps {
            let states: Vec<String> =
                sep.states.iter().map(|((i, e), y)| format!("({},{})@{}", i + 1, end_name(*e), y)).collect();
            let _ = writeln!(s, "separatrix {name} {} {} {}", word(&sep.word), sep.sign, states.join(" "));
        }
    }
    for (name, sd) in [("stable", &v.stable), ("unstable", &v.unstable)] {
        for (k, c) in sd.comps.iter().enumerate() {
            let strips: Vec<String> = c.strips.iter().map(|(i, s)| format!("{}.{}", i + 1, s)).collect();
            let spikes: Vec<String> = c.circles.iter().map(|c| c.spikes.to_string()).collect();
            let _ = writeln!(
                s,
                "component {name} {} chi={} circles={} spikes={} strips={}",
                k + 1,
                c.chi,
                c.circles.len(),
                spikes.join(","),
                strips.join(",")
            );
            for cap in &sd.caps[k] {
                let _ = writeln!(s, "cap {name} {} leaf={} orbit={} {}", k + 1, cap.0 + 1, word(&cap.1), cap.2);
            }
        }
        for g in &sd.gaps {
            let _ = writeln!(
                s,
                "gap {name} ({},{}) {} lower={} upper={}",
                g.rect + 1,
                g.gap,
                end_name(g.end),
                g.lower_compact,
                g.upper_compact
            );
        }
    }
    let kinds: Vec<&str> = v.violations.iter().map(String::as_str).collect();
    let _ = writeln!(s, "realizable {}", v.realizable);
    let _ = writeln!(s, "violations {}", kinds.join(","));
    s
}
