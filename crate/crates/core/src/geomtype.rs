//! Abstract geometric types: validated data model, text format and transpose.
//!
//! A geometric type on `n` rectangles records, for every horizontal band
//! `H_i^j`, the vertical band `V_k^l` it is mapped onto and whether the map
//! preserves (`+`) or reverses (`-`) the vertical orientation. Indices are
//! 0-based in memory and 1-based in the text format and in every report.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// Orientation sign of one band map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn glyph(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.glyph())
    }
}

/// A band of a rectangle: `(rect, band)`, both 0-based.
///
/// For a geometric type this is a horizontal band `H_rect^band`; the same
/// pair type is used for vertical bands where noted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub rect: usize,
    pub band: usize,
}

impl Symbol {
    pub fn new(rect: usize, band: usize) -> Self {
        Symbol { rect, band }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rect + 1, self.band + 1)
    }
}

/// Image of a horizontal band: the vertical band `V_k^l` and the sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedTarget {
    pub k: usize,
    pub l: usize,
    pub eps: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomTypeError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("band counts differ: sum of h is {h_sum}, sum of v is {v_sum}")]
    SumMismatch { h_sum: usize, v_sum: usize },
    #[error("vertical band ({k},{l}) is the image of more than one horizontal band")]
    NotBijective { k: usize, l: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}

/// A validated geometric type. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeometricType {
    h: Vec<usize>,
    v: Vec<usize>,
    phi: Vec<Vec<SignedTarget>>,
    phi_inv: Vec<Vec<(Symbol, Sign)>>,
}

impl GeometricType {
    /// Builds and validates a type from 0-based data. `phi[i][j]` is the
    /// image of `H_i^j`.
    pub fn new(
        h: Vec<usize>,
        v: Vec<usize>,
        phi: Vec<Vec<SignedTarget>>,
    ) -> Result<Self, GeomTypeError> {
        let n = h.len();
        if n == 0 {
            return Err(GeomTypeError::IndexOutOfRange("n must be positive".into()));
        }
        if v.len() != n || phi.len() != n {
            return Err(GeomTypeError::IndexOutOfRange(format!(
                "expected {n} entries for h, v and phi"
            )));
        }
        if let Some(i) = h.iter().chain(&v).position(|&c| c == 0) {
            return Err(GeomTypeError::IndexOutOfRange(format!(
                "band count {} is zero",
                i % n + 1
            )));
        }
        let h_sum: usize = h.iter().sum();
        let v_sum: usize = v.iter().sum();
        if h_sum != v_sum {
            return Err(GeomTypeError::SumMismatch { h_sum, v_sum });
        }
        let mut phi_inv: Vec<Vec<Option<(Symbol, Sign)>>> =
            v.iter().map(|&vk| vec![None; vk]).collect();
        for (i, row) in phi.iter().enumerate() {
            if row.len() != h[i] {
                return Err(GeomTypeError::IndexOutOfRange(format!(
                    "rectangle {} has {} horizontal bands but {} images",
                    i + 1,
                    h[i],
                    row.len()
                )));
            }
            for (j, t) in row.iter().enumerate() {
                if t.k >= n || t.l >= v[t.k] {
                    return Err(GeomTypeError::IndexOutOfRange(format!(
                        "image ({},{}) of ({},{})",
                        t.k + 1,
                        t.l + 1,
                        i + 1,
                        j + 1
                    )));
                }
                let slot = &mut phi_inv[t.k][t.l];
                if slot.is_some() {
                    return Err(GeomTypeError::NotBijective { k: t.k + 1, l: t.l + 1 });
                }
                *slot = Some((Symbol::new(i, j), t.eps));
            }
        }
        // Equal sums plus injectivity already force surjectivity.
        let phi_inv = phi_inv
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.expect("bijective")).collect())
            .collect();
        Ok(GeometricType { h, v, phi, phi_inv })
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn v(&self) -> &[usize] {
        &self.v
    }

    /// Image of `H_i^j`.
    pub fn phi(&self, s: Symbol) -> SignedTarget {
        self.phi[s.rect][s.band]
    }

    /// The horizontal band mapped onto `V_k^l`, with its sign.
    pub fn phi_inv(&self, k: usize, l: usize) -> (Symbol, Sign) {
        self.phi_inv[k][l]
    }

    /// Total number of horizontal (equivalently vertical) bands.
    pub fn symbol_count(&self) -> usize {
        self.h.iter().sum()
    }

    /// All horizontal-band symbols in canonical `(i, j)` order.
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.h
            .iter()
            .enumerate()
            .flat_map(|(i, &hi)| (0..hi).map(move |j| Symbol::new(i, j)))
    }

    /// Dense index of a symbol in canonical order.
    pub fn symbol_index(&self, s: Symbol) -> usize {
        self.h[..s.rect].iter().sum::<usize>() + s.band
    }

    /// Time reversal: horizontal and vertical bands exchange roles.
    pub fn transpose(&self) -> GeometricType {
        let phi = self
            .phi_inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(s, eps)| SignedTarget { k: s.rect, l: s.band, eps })
                    .collect()
            })
            .collect();
        GeometricType::new(self.v.clone(), self.h.clone(), phi)
            .expect("transpose of a valid type is valid")
    }

    /// Canonical text form; `parse(serialize(t)) == t`.
    pub fn serialize(&self) -> String {
        let join = |xs: &[usize]| {
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        };
        let mut out = format!(
            "geomtype v1\nn {}\nh {}\nv {}\n",
            self.n(),
            join(&self.h),
            join(&self.v)
        );
        for s in self.symbols() {
            let t = self.phi(s);
            out.push_str(&format!(
                "phi {} {} -> {} {} {}\n",
                s.rect + 1,
                s.band + 1,
                t.k + 1,
                t.l + 1,
                t.eps
            ));
        }
        out
    }

    /// Parses and validates the `geomtype v1` text format.
    pub fn parse(text: &str) -> Result<Self, GeomTypeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(no, raw)| (no + 1, raw.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let syntax = |line: usize, msg: &str| GeomTypeError::Syntax { line, msg: msg.to_string() };
        let eof = || GeomTypeError::Syntax {
            line: text.lines().count().max(1),
            msg: "unexpected end of input".into(),
        };

        let (no, header) = lines.next().ok_or_else(eof)?;
        if header.split_whitespace().collect::<Vec<_>>() != ["geomtype", "v1"] {
            return Err(syntax(no, "expected header `geomtype v1`"));
        }

        let (no, line) = lines.next().ok_or_else(eof)?;
        let n = match keyed_ints(line, "n") {
            Some(xs) if xs.len() == 1 && xs[0] > 0 => xs[0],
            _ => return Err(syntax(no, "expected `n <positive int>`")),
        };
        let mut counts = Vec::with_capacity(2);
        for key in ["h", "v"] {
            let (no, line) = lines.next().ok_or_else(eof)?;
            match keyed_ints(line, key) {
                Some(xs) if xs.len() == n && xs.iter().all(|&x| x > 0) => counts.push(xs),
                _ => return Err(syntax(no, &format!("expected `{key}` followed by {n} positive ints"))),
            }
        }
        let v = counts.pop().expect("two rows");
        let h = counts.pop().expect("two rows");
        let h_sum: usize = h.iter().sum();
        let v_sum: usize = v.iter().sum();
        if h_sum != v_sum {
            return Err(GeomTypeError::SumMismatch { h_sum, v_sum });
        }

        let mut phi: Vec<Vec<Option<SignedTarget>>> = h.iter().map(|&hi| vec![None; hi]).collect();
        for (no, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 7 || toks[0] != "phi" || toks[3] != "->" {
                return Err(syntax(no, "expected `phi <i> <j> -> <k> <l> <+|->`"));
            }
            let mut idx = [0usize; 4];
            for (slot, tok) in idx.iter_mut().zip([toks[1], toks[2], toks[4], toks[5]]) {
                *slot = tok
                    .parse::<usize>()
                    .map_err(|_| syntax(no, &format!("`{tok}` is not an index")))?;
            }
            let eps = match toks[6] {
                "+" => Sign::Plus,
                "-" => Sign::Minus,
                _ => return Err(syntax(no, "sign must be `+` or `-`")),
            };
            let [i, j, k, l] = idx;
            if i == 0 || i > n || j == 0 || j > h[i - 1] {
                return Err(GeomTypeError::IndexOutOfRange(format!("line {no}: source ({i},{j})")));
            }
            if k == 0 || k > n || l == 0 || l > v[k - 1] {
                return Err(GeomTypeError::IndexOutOfRange(format!("line {no}: target ({k},{l})")));
            }
            let slot = &mut phi[i - 1][j - 1];
            if slot.is_some() {
                return Err(syntax(no, &format!("duplicate phi line for ({i},{j})")));
            }
            *slot = Some(SignedTarget { k: k - 1, l: l - 1, eps });
        }
        let mut rows = Vec::with_capacity(n);
        for (i, row) in phi.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, t) in row.into_iter().enumerate() {
                match t {
                    Some(t) => out.push(t),
                    None => {
                        return Err(syntax(
                            text.lines().count(),
                            &format!("missing phi line for ({},{})", i + 1, j + 1),
                        ))
                    }
                }
            }
            rows.push(out);
        }
        GeometricType::new(h, v, rows)
    }

    /// Disjoint union: the rectangles of `other` are appended after ours.
    pub fn disjoint_union(&self, other: &GeometricType) -> GeometricType {
        let off = self.n();
        let mut h = self.h.clone();
        h.extend_from_slice(&other.h);
        let mut v = self.v.clone();
        v.extend_from_slice(&other.v);
        let mut phi = self.phi.clone();
        phi.extend(other.phi.iter().map(|row| {
            row.iter()
                .map(|t| SignedTarget { k: t.k + off, ..*t })
                .collect::<Vec<_>>()
        }));
        GeometricType::new(h, v, phi).expect("union of valid types is valid")
    }
}

fn keyed_ints(line: &str, key: &str) -> Option<Vec<usize>> {
    let mut toks = line.split_whitespace();
    if toks.next()? != key {
        return None;
    }
    toks.map(|t| t.parse().ok()).collect()
}

/// Small fixtures used across tests, docs and the CLI.
pub mod fixtures {
    use super::*;

    fn one_rect(h: usize, targets: &[(usize, Sign)]) -> GeometricType {
        let row = targets
            .iter()
            .map(|&(l, eps)| SignedTarget { k: 0, l, eps })
            .collect();
        GeometricType::new(vec![h], vec![h], vec![row]).expect("fixture is valid")
    }

    /// One rectangle, two bands, both maps orientation preserving.
    pub fn fake_horseshoe() -> GeometricType {
        one_rect(2, &[(0, Sign::Plus), (1, Sign::Plus)])
    }

    /// One rectangle, two bands, the second map orientation reversing.
    pub fn smale_horseshoe() -> GeometricType {
        one_rect(2, &[(0, Sign::Plus), (1, Sign::Minus)])
    }

    /// A single band mapped onto itself: one isolated fixed point.
    pub fn trivial() -> GeometricType {
        one_rect(1, &[(0, Sign::Plus)])
    }
}
