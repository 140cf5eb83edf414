//! Exact band positions inside the unit square and the affine band maps.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::geomtype::{GeometricType, Sign, Symbol};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `y -> a*y + b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub a: Q,
    pub b: Q,
}

impl Affine {
    pub fn identity() -> Self {
        Affine { a: Q::one(), b: Q::zero() }
    }

    /// Orientation-respecting map of `[0,1]` onto `[lo,hi]`.
    pub fn onto(lo: &Q, hi: &Q, eps: Sign) -> Self {
        let w = hi - lo;
        match eps {
            Sign::Plus => Affine { a: w, b: lo.clone() },
            Sign::Minus => Affine { a: -w, b: hi.clone() },
        }
    }

    pub fn apply(&self, y: &Q) -> Q {
        &self.a * y + &self.b
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Affine) -> Affine {
        Affine { a: &self.a * &inner.a, b: &self.a * &inner.b + &self.b }
    }

    pub fn inverse(&self) -> Affine {
        let a = self.a.recip();
        Affine { b: -(&a * &self.b), a }
    }

    /// The unique fixed point of a strict contraction.
    pub fn fixed_point(&self) -> Q {
        assert!(self.a.abs() < Q::one(), "fixed point of a non-contraction");
        &self.b / (Q::one() - &self.a)
    }
}

/// Rule placing `c` disjoint closed bands strictly inside `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BandLayout {
    /// Band `j` of `c` is `[(3j-2)/3c, (3j-1)/3c]`.
    #[default]
    Thirds,
    /// Band `j` of `c` is `[(4j-3)/4c, (4j-2)/4c]`; gaps are uneven.
    Quarters,
}

impl BandLayout {
    /// Band `idx` (0-based) among `count` bands.
    pub fn band(self, count: usize, idx: usize) -> (Q, Q) {
        let (c, j) = (count as i64, idx as i64 + 1);
        match self {
            BandLayout::Thirds => (q(3 * j - 2, 3 * c), q(3 * j - 1, 3 * c)),
            BandLayout::Quarters => (q(4 * j - 3, 4 * c), q(4 * j - 2, 4 * c)),
        }
    }

    pub fn horizontal(self, t: &GeometricType, s: Symbol) -> (Q, Q) {
        self.band(t.h()[s.rect], s.band)
    }

    pub fn vertical(self, t: &GeometricType, rect: usize, l: usize) -> (Q, Q) {
        self.band(t.v()[rect], l)
    }

    /// Height map sending the unit interval of the target rectangle of
    /// `H_s` onto the band `H_s`, reversed when the sign is negative.
    pub fn height_map(self, t: &GeometricType, s: Symbol) -> Affine {
        let (lo, hi) = self.horizontal(t, s);
        Affine::onto(&lo, &hi, t.phi(s).eps)
    }
}

/// Solves `value[s] = maps[s](value[next[s]])` on a functional graph whose
/// cycle compositions are contractions.
pub fn solve_functional(next: &[usize], maps: &[Affine]) -> Vec<Q> {
    let n = next.len();
    let mut value: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if value[start].is_some() {
            continue;
        }
        let mut walk = Vec::new();
        let mut pos = vec![usize::MAX; n];
        let mut s = start;
        while value[s].is_none() && pos[s] == usize::MAX {
            pos[s] = walk.len();
            walk.push(s);
            s = next[s];
        }
        let mut end = walk.len();
        if value[s].is_none() {
            // Closed a new cycle at walk[pos[s]..].
            let cyc = &walk[pos[s]..];
            let mut comp = Affine::identity();
            for &c in cyc.iter().rev() {
                comp = maps[c].after(&comp);
            }
            value[cyc[0]] = Some(comp.fixed_point());
            for idx in (1..cyc.len()).rev() {
                let v = maps[cyc[idx]].apply(value[next[cyc[idx]]].as_ref().expect("set"));
                value[cyc[idx]] = Some(v);
            }
            end = pos[s];
        }
        for &c in walk[..end].iter().rev() {
            let v = maps[c].apply(value[next[c]].as_ref().expect("downstream solved"));
            value[c] = Some(v);
        }
    }
    value.into_iter().map(|v| v.expect("all solved")).collect()
}
