//! The strip complex: every rectangle cut along its vertical bands, with
//! each band's vertical sides glued to the outer sides of its image band.

use num_traits::{Signed, Zero};

use super::layout::{Affine, BandLayout, Q};
use crate::geomtype::{GeometricType, Sign, Symbol};
use crate::symdyn::Manifold;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeSide {
    Left,
    Right,
}

impl EdgeSide {
    pub fn name(self) -> &'static str {
        match self {
            EdgeSide::Left => "left",
            EdgeSide::Right => "right",
        }
    }

    pub fn opposite(self) -> EdgeSide {
        match self {
            EdgeSide::Left => EdgeSide::Right,
            EdgeSide::Right => EdgeSide::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DartKind {
    Bottom,
    Top,
    /// Full-height side shared with a vertical band.
    Inner(EdgeSide),
    /// Free segment of an outer side; gap `g` lies below band `g`.
    Gap(EdgeSide, usize),
    /// Segment of an outer side along horizontal band `j`.
    Band(EdgeSide, usize),
}

impl DartKind {
    pub fn side(self) -> Option<EdgeSide> {
        match self {
            DartKind::Bottom | DartKind::Top => None,
            DartKind::Inner(s) | DartKind::Gap(s, _) | DartKind::Band(s, _) => Some(s),
        }
    }
}

/// One strip: the closure of a component of a rectangle minus its
/// vertical bands. Strip `s` sits left of band `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strip {
    pub rect: usize,
    pub index: usize,
}

impl Strip {
    pub fn label(self) -> String {
        format!("{}.{}", self.rect + 1, self.index)
    }
}

#[derive(Debug, Clone)]
pub struct Dart {
    pub face: usize,
    pub kind: DartKind,
    /// Height interval covered on a vertical side.
    pub span: Option<(Q, Q)>,
    pub partner: Option<usize>,
    /// Height map onto the partner's side.
    pub to_partner: Option<Affine>,
}

impl Dart {
    pub fn is_free(&self) -> bool {
        self.partner.is_none()
    }

    /// Traversal direction along a vertical side in counterclockwise order:
    /// right sides go up, left sides go down.
    pub fn vertical_direction(&self) -> i32 {
        match self.kind.side() {
            Some(EdgeSide::Right) => 1,
            Some(EdgeSide::Left) => -1,
            None => 0,
        }
    }
}

/// The identification attached to one horizontal band `H_i^j`.
#[derive(Debug, Clone)]
pub struct Gluing {
    pub symbol: Symbol,
    pub target: (usize, usize),
    pub eps: Sign,
    /// `(inner dart, outer band dart)` pairs.
    pub pairs: [(usize, usize); 2],
    /// Heights of the target rectangle onto the band.
    pub map: Affine,
}

#[derive(Debug, Clone)]
pub struct SurfaceComplex {
    pub kind: Manifold,
    pub layout: BandLayout,
    /// The type whose stable complex this is (the transpose on the
    /// unstable side).
    pub source: GeometricType,
    pub strips: Vec<Strip>,
    /// Darts of each face in counterclockwise order from the bottom edge.
    pub faces: Vec<Vec<usize>>,
    pub darts: Vec<Dart>,
    pub gluings: Vec<Gluing>,
    strip_offset: Vec<usize>,
}

/// Outcome of pushing a horizontal segment across a strip side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Crossing {
    Glued { strip: usize, height: Q, heading: EdgeSide },
    Free { dart: usize },
}

pub fn build_complex(t: &GeometricType, kind: Manifold, layout: BandLayout) -> SurfaceComplex {
    let source = match kind {
        Manifold::Stable => t.clone(),
        Manifold::Unstable => t.transpose(),
    };
    let mut strips = Vec::new();
    let mut strip_offset = Vec::new();
    for rect in 0..source.n() {
        strip_offset.push(strips.len());
        for index in 0..=source.v()[rect] {
            strips.push(Strip { rect, index });
        }
    }

    let mut darts: Vec<Dart> = Vec::new();
    let mut faces = Vec::new();
    for (face, strip) in strips.iter().enumerate() {
        let (h, v) = (source.h()[strip.rect], source.v()[strip.rect]);
        let mut kinds = vec![DartKind::Bottom];
        if strip.index == v {
            for g in 0..h {
                kinds.push(DartKind::Gap(EdgeSide::Right, g));
                kinds.push(DartKind::Band(EdgeSide::Right, g));
            }
            kinds.push(DartKind::Gap(EdgeSide::Right, h));
        } else {
            kinds.push(DartKind::Inner(EdgeSide::Right));
        }
        kinds.push(DartKind::Top);
        if strip.index == 0 {
            kinds.push(DartKind::Gap(EdgeSide::Left, h));
            for g in (0..h).rev() {
                kinds.push(DartKind::Band(EdgeSide::Left, g));
                kinds.push(DartKind::Gap(EdgeSide::Left, g));
            }
        } else {
            kinds.push(DartKind::Inner(EdgeSide::Left));
        }
        let ids = kinds
            .into_iter()
            .map(|kind| {
                darts.push(Dart {
                    face,
                    kind,
                    span: span_of(layout, h, kind),
                    partner: None,
                    to_partner: None,
                });
                darts.len() - 1
            })
            .collect();
        faces.push(ids);
    }

    let mut cx = SurfaceComplex {
        kind,
        layout,
        source,
        strips,
        faces,
        darts,
        gluings: Vec::new(),
        strip_offset,
    };
    let symbols: Vec<Symbol> = cx.source.symbols().collect();
    for s in symbols {
        let tgt = cx.source.phi(s);
        let map = layout.height_map(&cx.source, s);
        // Band l of R_k lies between strips l and l+1.
        let v_left = cx.dart_of(cx.strip_id(tgt.k, tgt.l), DartKind::Inner(EdgeSide::Right));
        let v_right = cx.dart_of(cx.strip_id(tgt.k, tgt.l + 1), DartKind::Inner(EdgeSide::Left));
        let left = cx.dart_of(cx.strip_id(s.rect, 0), DartKind::Band(EdgeSide::Left, s.band));
        let right = cx.dart_of(
            cx.strip_id(s.rect, cx.source.v()[s.rect]),
            DartKind::Band(EdgeSide::Right, s.band),
        );
        let pairs = match tgt.eps {
            Sign::Plus => [(v_left, left), (v_right, right)],
            Sign::Minus => [(v_left, right), (v_right, left)],
        };
        for &(a, b) in &pairs {
            cx.darts[a].partner = Some(b);
            cx.darts[b].partner = Some(a);
            cx.darts[a].to_partner = Some(map.clone());
            cx.darts[b].to_partner = Some(map.inverse());
        }
        cx.gluings.push(Gluing { symbol: s, target: (tgt.k, tgt.l), eps: tgt.eps, pairs, map });
    }
    cx
}

fn span_of(layout: BandLayout, h: usize, kind: DartKind) -> Option<(Q, Q)> {
    match kind {
        DartKind::Bottom | DartKind::Top => None,
        DartKind::Inner(_) => Some((Q::zero(), Q::from_integer(1.into()))),
        DartKind::Band(_, j) => Some(layout.band(h, j)),
        DartKind::Gap(_, g) => {
            let lo = if g == 0 { Q::zero() } else { layout.band(h, g - 1).1 };
            let hi = if g == h { Q::from_integer(1.into()) } else { layout.band(h, g).0 };
            Some((lo, hi))
        }
    }
}

impl SurfaceComplex {
    pub fn strip_id(&self, rect: usize, index: usize) -> usize {
        self.strip_offset[rect] + index
    }

    /// Outer strip on the given side of a rectangle.
    pub fn outer_strip(&self, rect: usize, side: EdgeSide) -> usize {
        match side {
            EdgeSide::Left => self.strip_id(rect, 0),
            EdgeSide::Right => self.strip_id(rect, self.source.v()[rect]),
        }
    }

    pub fn dart_of(&self, face: usize, kind: DartKind) -> usize {
        *self.faces[face]
            .iter()
            .find(|&&d| self.darts[d].kind == kind)
            .unwrap_or_else(|| panic!("face {face} has no dart {kind:?}"))
    }

    /// Position of a dart inside its face.
    pub fn position(&self, dart: usize) -> usize {
        let face = &self.faces[self.darts[dart].face];
        face.iter().position(|&d| d == dart).expect("dart in its face")
    }

    pub fn next_in_face(&self, dart: usize) -> usize {
        let face = &self.faces[self.darts[dart].face];
        face[(self.position(dart) + 1) % face.len()]
    }

    pub fn prev_in_face(&self, dart: usize) -> usize {
        let face = &self.faces[self.darts[dart].face];
        let p = self.position(dart);
        face[(p + face.len() - 1) % face.len()]
    }

    pub fn glued_pairs(&self) -> usize {
        self.darts.iter().filter(|d| !d.is_free()).count() / 2
    }

    pub fn free_darts(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.darts.len()).filter(|&d| self.darts[d].is_free())
    }

    /// Number of bands of the rectangle owning a dart.
    pub fn bands_of(&self, dart: usize) -> usize {
        self.source.h()[self.strips[self.darts[dart].face].rect]
    }

    /// A gap segment strictly between two bands.
    pub fn is_interior_gap(&self, dart: usize) -> bool {
        matches!(self.darts[dart].kind, DartKind::Gap(_, g) if g > 0 && g < self.bands_of(dart))
    }

    /// Follows a horizontal segment at `height` leaving `strip` through its
    /// `heading` side.
    pub fn cross(&self, strip: usize, height: &Q, heading: EdgeSide) -> Crossing {
        let dart = *self.faces[strip]
            .iter()
            .find(|&&d| {
                let dk = &self.darts[d];
                dk.kind.side() == Some(heading)
                    && dk.span.as_ref().is_some_and(|(lo, hi)| lo <= height && height <= hi)
            })
            .expect("height within the side");
        let dk = &self.darts[dart];
        match (dk.partner, &dk.to_partner) {
            (Some(p), Some(map)) => {
                let pd = &self.darts[p];
                let entered = pd.kind.side().expect("vertical partner");
                Crossing::Glued { strip: pd.face, height: map.apply(height), heading: entered.opposite() }
            }
            _ => Crossing::Free { dart },
        }
    }

    /// Sign of the height map across a glued dart.
    pub fn gluing_sign(&self, dart: usize) -> i32 {
        let map = self.darts[dart].to_partner.as_ref().expect("glued dart");
        if map.a.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn dart_label(&self, dart: usize) -> String {
        let d = &self.darts[dart];
        let strip = self.strips[d.face].label();
        match d.kind {
            DartKind::Bottom => format!("{strip}:bottom"),
            DartKind::Top => format!("{strip}:top"),
            DartKind::Inner(s) => format!("{strip}:{}", s.name()),
            DartKind::Gap(s, g) => format!("{strip}:{}-gap{g}", s.name()),
            DartKind::Band(s, j) => format!("{strip}:{}-band{}", s.name(), j + 1),
        }
    }
}
