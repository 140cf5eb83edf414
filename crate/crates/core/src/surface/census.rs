//! Topology of the strip complex: components, Euler characteristic,
//! boundary circles and orientability.

use petgraph::unionfind::UnionFind;

use super::complex::SurfaceComplex;
use super::SurfaceError;

/// A boundary circle, as the cyclic list of free darts met by the walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCircle {
    pub id: usize,
    pub component: usize,
    pub darts: Vec<usize>,
    /// Gap segments strictly between two bands of a rectangle.
    pub spikes: usize,
}

impl BoundaryCircle {
    /// A circle without spikes closes off a disk bounded by one leaf.
    pub fn is_cap(&self) -> bool {
        self.spikes == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceComponent {
    pub id: usize,
    pub strips: Vec<usize>,
    /// Euler characteristic of the strip complex itself.
    pub complex_chi: i64,
    pub complex_boundary_circles: usize,
    /// Euler characteristic once non-cap circles are filled: the surface
    /// carrying the lamination together with its strip complements.
    pub chi: i64,
    /// Cap circles left after filling.
    pub boundary_circles: usize,
    pub capped_genus: i64,
    pub orientable: bool,
    pub circles: Vec<usize>,
}

impl SurfaceComponent {
    pub fn capped_chi(&self) -> i64 {
        2 - 2 * self.capped_genus
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub components: Vec<SurfaceComponent>,
    pub circles: Vec<BoundaryCircle>,
    /// Component of every face.
    pub face_component: Vec<usize>,
}

impl Census {
    pub fn component_of_strip(&self, strip: usize) -> usize {
        self.face_component[strip]
    }

    pub fn circle_of_dart(&self, dart: usize) -> Option<usize> {
        self.circles.iter().find(|c| c.darts.contains(&dart)).map(|c| c.id)
    }
}

/// Components numbered by their least strip.
pub fn face_components(cx: &SurfaceComplex) -> Vec<usize> {
    let mut uf = UnionFind::<usize>::new(cx.faces.len());
    for g in &cx.gluings {
        for &(a, b) in &g.pairs {
            uf.union(cx.darts[a].face, cx.darts[b].face);
        }
    }
    let mut ids = vec![usize::MAX; cx.faces.len()];
    let mut root_id = std::collections::BTreeMap::new();
    for (f, slot) in ids.iter_mut().enumerate() {
        let next = root_id.len();
        *slot = *root_id.entry(uf.find(f)).or_insert(next);
    }
    ids
}

/// Vertex classes: the start corner of every dart, identified across
/// gluings. Returns the class of each dart's start corner.
pub fn vertex_classes(cx: &SurfaceComplex) -> Vec<usize> {
    let mut uf = UnionFind::<usize>::new(cx.darts.len());
    for a in 0..cx.darts.len() {
        if let Some(b) = cx.darts[a].partner {
            // Gluings reverse direction: start(a) ~ end(b), end(a) ~ start(b).
            uf.union(a, cx.next_in_face(b));
            uf.union(cx.next_in_face(a), b);
        }
    }
    (0..cx.darts.len()).map(|d| uf.find(d)).collect()
}

/// Boundary circles by walking free darts corner to corner.
pub fn boundary_circles(cx: &SurfaceComplex, face_component: &[usize]) -> Vec<BoundaryCircle> {
    let mut seen = vec![false; cx.darts.len()];
    let mut circles = Vec::new();
    for start in cx.free_darts() {
        if seen[start] {
            continue;
        }
        let mut darts = Vec::new();
        let mut d = start;
        loop {
            seen[d] = true;
            darts.push(d);
            d = next_free(cx, d);
            if d == start {
                break;
            }
            assert!(!seen[d], "boundary walk re-entered a circle");
        }
        let spikes = darts.iter().filter(|&&d| cx.is_interior_gap(d)).count();
        circles.push(BoundaryCircle {
            id: circles.len(),
            component: face_component[cx.darts[start].face],
            darts,
            spikes,
        });
    }
    circles
}

/// The free dart following `d` along the boundary.
pub fn next_free(cx: &SurfaceComplex, d: usize) -> usize {
    let mut e = cx.next_in_face(d);
    while let Some(p) = cx.darts[e].partner {
        e = cx.next_in_face(p);
    }
    e
}

/// Propagates face orientations across gluings; a glued pair must be
/// traversed in opposite directions.
pub fn orientation(cx: &SurfaceComplex) -> Result<Vec<i32>, SurfaceError> {
    let mut o = vec![0i32; cx.faces.len()];
    for root in 0..cx.faces.len() {
        if o[root] != 0 {
            continue;
        }
        o[root] = 1;
        let mut stack = vec![root];
        while let Some(f) = stack.pop() {
            for &a in &cx.faces[f] {
                let Some(b) = cx.darts[a].partner else { continue };
                let g = cx.darts[b].face;
                let da = cx.darts[a].vertical_direction();
                let db = cx.darts[b].vertical_direction();
                let want = -o[f] * da * cx.gluing_sign(a) * db;
                if o[g] == 0 {
                    o[g] = want;
                    stack.push(g);
                } else if o[g] != want {
                    return Err(SurfaceError::NonOrientable { strip: cx.strips[g].label() });
                }
            }
        }
    }
    Ok(o)
}

pub fn surface_census(cx: &SurfaceComplex) -> Result<Census, SurfaceError> {
    orientation(cx)?;
    let face_component = face_components(cx);
    let classes = vertex_classes(cx);
    let circles = boundary_circles(cx, &face_component);
    let count = face_component.iter().max().map_or(0, |m| m + 1);

    let mut components = Vec::new();
    for id in 0..count {
        let strips: Vec<usize> = (0..cx.faces.len()).filter(|&f| face_component[f] == id).collect();
        let darts: Vec<usize> = strips.iter().flat_map(|&f| cx.faces[f].iter().copied()).collect();
        let mut verts: Vec<usize> = darts.iter().map(|&d| classes[d]).collect();
        verts.sort_unstable();
        verts.dedup();
        let free = darts.iter().filter(|&&d| cx.darts[d].is_free()).count();
        let edges = free + (darts.len() - free) / 2;
        let complex_chi = verts.len() as i64 - edges as i64 + strips.len() as i64;
        let own: Vec<&BoundaryCircle> = circles.iter().filter(|c| c.component == id).collect();
        let caps = own.iter().filter(|c| c.is_cap()).count();
        let b = own.len();
        let sum = complex_chi + b as i64;
        debug_assert!(sum % 2 == 0, "chi + b must be even");
        components.push(SurfaceComponent {
            id,
            strips,
            complex_chi,
            complex_boundary_circles: b,
            chi: complex_chi + (b - caps) as i64,
            boundary_circles: caps,
            capped_genus: (2 - sum) / 2,
            orientable: true,
            circles: own.iter().map(|c| c.id).collect(),
        });
    }
    Ok(Census { components, circles, face_component })
}

/// Euler characteristic per component by an independent count: vertices
/// as orbits of the corner rotation, edges by the handshake over darts.
pub fn half_edge_tally(cx: &SurfaceComplex) -> Vec<i64> {
    let face_component = face_components(cx);
    let n = cx.darts.len();
    // Corner `c` is the start of dart `c`. Rotating around a vertex steps
    // across the dart ending at the corner to the start of its partner.
    let succ: Vec<Option<usize>> = (0..n).map(|c| cx.darts[cx.prev_in_face(c)].partner).collect();
    let mut has_pred = vec![false; n];
    for s in succ.iter().flatten() {
        assert!(!has_pred[*s], "corner rotation is not injective");
        has_pred[*s] = true;
    }
    let count = face_component.iter().max().map_or(0, |m| m + 1);
    let mut vertices = vec![0i64; count];
    let mut seen = vec![false; n];
    let comp_of = |c: usize| face_component[cx.darts[c].face];
    for c in (0..n).filter(|&c| !has_pred[c]) {
        vertices[comp_of(c)] += 1;
        let mut x = Some(c);
        while let Some(y) = x {
            seen[y] = true;
            x = succ[y];
        }
    }
    for c in 0..n {
        if seen[c] {
            continue;
        }
        vertices[comp_of(c)] += 1;
        let mut y = c;
        while !seen[y] {
            seen[y] = true;
            y = succ[y].expect("interior vertex rotation is a cycle");
        }
    }
    let mut chi = vertices;
    let mut half = vec![0i64; count];
    for (d, dart) in cx.darts.iter().enumerate() {
        let k = comp_of(d);
        half[k] += if dart.is_free() { 2 } else { 1 };
    }
    for &k in &face_component {
        chi[k] += 1;
    }
    for k in 0..count {
        chi[k] -= half[k] / 2;
    }
    chi
}
