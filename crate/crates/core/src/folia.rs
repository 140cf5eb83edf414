//! Combinatorial types of foliations of the torus with finitely many
//! compact leaves, and of pairs of such foliations.
//!
//! A type is a cyclic sequence of triples, one per compact leaf in the
//! order met along a transversal: the holonomy arrow on the left side of
//! the leaf, the leaf's orientation, and the holonomy arrow on its right.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    Left,
    Right,
}

impl Arrow {
    pub fn glyph(self) -> char {
        match self {
            Arrow::Left => '←',
            Arrow::Right => '→',
        }
    }

    pub fn ascii(self) -> char {
        match self {
            Arrow::Left => '<',
            Arrow::Right => '>',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orient {
    Up,
    Down,
}

impl Orient {
    pub fn flip(self) -> Orient {
        match self {
            Orient::Up => Orient::Down,
            Orient::Down => Orient::Up,
        }
    }

    pub fn glyph(self) -> char {
        match self {
            Orient::Up => '↑',
            Orient::Down => '↓',
        }
    }

    pub fn ascii(self) -> char {
        match self {
            Orient::Up => 'u',
            Orient::Down => 'd',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub left: Arrow,
    pub orient: Orient,
    pub right: Arrow,
}

impl Triple {
    pub const fn new(left: Arrow, orient: Orient, right: Arrow) -> Self {
        Triple { left, orient, right }
    }

    /// Same arrow on both sides: contracting on one side, expanding on the
    /// other.
    pub fn is_marked(&self) -> bool {
        self.left == self.right
    }

    pub fn swapped(self) -> Triple {
        Triple { left: self.right, orient: self.orient, right: self.left }
    }

    pub fn flipped(self) -> Triple {
        Triple { orient: self.orient.flip(), ..self }
    }

    pub fn ascii(&self) -> String {
        format!("{} {} {}", self.left.ascii(), self.orient.ascii(), self.right.ascii())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.left.glyph(), self.orient.glyph(), self.right.glyph())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoliaError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("empty index subset")]
    EmptySubset,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid combinatorial type: {0}")]
    InvalidType(String),
    #[error("the type has no marked leaves")]
    NoMarkedLeaves,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CTypeViolation {
    Empty,
    /// The first leaf must point up.
    FirstLeafDown,
    /// Arrows facing the annulus between leaves `index` and `index+1` do
    /// not match.
    Adjacency { index: usize },
    OddMarkedCount(usize),
}

impl fmt::Display for CTypeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CTypeViolation::Empty => write!(f, "Empty"),
            CTypeViolation::FirstLeafDown => write!(f, "FirstLeafDown"),
            CTypeViolation::Adjacency { index } => write!(f, "Adjacency({index})"),
            CTypeViolation::OddMarkedCount(n) => write!(f, "OddMarkedCount({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CTypeAnalysis {
    pub valid: bool,
    pub violations: Vec<CTypeViolation>,
    pub marked: Vec<usize>,
    pub is_morse_smale: bool,
    pub is_elementary: bool,
    pub is_coherent: bool,
    pub is_alternating: bool,
}

/// The annulus between consecutive leaves is coherent: holonomy leaving
/// one leaf to the right must point away from the next leaf.
fn adjacent_ok(a: &Triple, b: &Triple) -> bool {
    (a.right == Arrow::Right) == (b.left == Arrow::Left)
}

pub fn analyze_ctype(entries: &[Triple]) -> CTypeAnalysis {
    let n = entries.len();
    let mut violations = Vec::new();
    if n == 0 {
        violations.push(CTypeViolation::Empty);
    } else if entries[0].orient != Orient::Up {
        violations.push(CTypeViolation::FirstLeafDown);
    }
    for i in 0..n {
        if !adjacent_ok(&entries[i], &entries[(i + 1) % n]) {
            violations.push(CTypeViolation::Adjacency { index: i });
        }
    }
    let marked: Vec<usize> = (0..n).filter(|&i| entries[i].is_marked()).collect();
    if marked.len() % 2 == 1 {
        violations.push(CTypeViolation::OddMarkedCount(marked.len()));
    }
    let orients: Vec<Orient> = marked.iter().map(|&i| entries[i].orient).collect();
    let m = orients.len();
    CTypeAnalysis {
        valid: violations.is_empty(),
        violations,
        is_morse_smale: n > 0 && marked.is_empty(),
        is_elementary: n > 0 && m == n,
        is_coherent: orients.windows(2).all(|w| w[0] == w[1]),
        is_alternating: m % 2 == 0 && (0..m).all(|k| orients[k] != orients[(k + 1) % m]),
        marked,
    }
}

/// A validated combinatorial type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CombinatorialType {
    entries: Vec<Triple>,
}

impl CombinatorialType {
    pub fn new(entries: Vec<Triple>) -> Result<Self, FoliaError> {
        let a = analyze_ctype(&entries);
        if !a.valid {
            let v: Vec<String> = a.violations.iter().map(|v| v.to_string()).collect();
            return Err(FoliaError::InvalidType(v.join(",")));
        }
        Ok(CombinatorialType { entries })
    }

    pub fn entries(&self) -> &[Triple] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn analysis(&self) -> CTypeAnalysis {
        analyze_ctype(&self.entries)
    }

    pub fn marked(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.entries[i].is_marked()).collect()
    }

    /// Elementary alternating type with `2p` marked leaves:
    /// `(→,↑,→), (←,↓,←)` repeated.
    pub fn alternating_elementary(p: usize) -> Self {
        let up = Triple::new(Arrow::Right, Orient::Up, Arrow::Right);
        let down = Triple::new(Arrow::Left, Orient::Down, Arrow::Left);
        let entries = (0..2 * p).map(|i| if i % 2 == 0 { up } else { down }).collect();
        CombinatorialType::new(entries).expect("alternating elementary types are valid")
    }

    pub fn is_alternating_elementary(&self) -> Option<usize> {
        let a = self.analysis();
        (a.is_elementary && a.is_alternating).then_some(self.len() / 2)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("ctype v1\n");
        for e in &self.entries {
            s.push_str(&e.ascii());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for CombinatorialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Restriction to an index subset, read in increasing cyclic order.
pub fn restrict_ctype(entries: &[Triple], subset: &[usize]) -> Result<Vec<Triple>, FoliaError> {
    if subset.is_empty() {
        return Err(FoliaError::EmptySubset);
    }
    let mut idx = subset.to_vec();
    idx.sort_unstable();
    idx.dedup();
    idx.iter()
        .map(|&i| entries.get(i).copied().ok_or(FoliaError::IndexOutOfRange { index: i, len: entries.len() }))
        .collect()
}

fn rotate(entries: &[Triple], r: usize) -> Vec<Triple> {
    entries[r..].iter().chain(&entries[..r]).copied().collect()
}

/// Reverses the cyclic order keeping the first leaf first, and swaps the
/// sides of every leaf.
fn reverse_swap(entries: &[Triple]) -> Vec<Triple> {
    let n = entries.len();
    (0..n).map(|i| entries[(n - i) % n].swapped()).collect()
}

fn flip_all(entries: &[Triple]) -> Vec<Triple> {
    entries.iter().map(|e| e.flipped()).collect()
}

/// Every re-enumeration of a type: each choice of first leaf, made to
/// point up by reversing the transverse direction. With `unoriented`, the
/// torus orientation may be reversed too.
pub fn reenumerations(t: &CombinatorialType, unoriented: bool) -> Vec<Vec<Triple>> {
    let e = t.entries();
    let mut out = Vec::new();
    for r in 0..e.len() {
        let rotated = rotate(e, r);
        let mut seqs = vec![rotated.clone()];
        if unoriented {
            seqs.push(reverse_swap(&rotated));
        }
        for s in seqs {
            let s = if s[0].orient == Orient::Up {
                s
            } else if unoriented {
                flip_all(&s)
            } else {
                reverse_swap(&flip_all(&s))
            };
            out.push(s);
        }
    }
    out
}

pub fn canonical_form(t: &CombinatorialType, unoriented: bool) -> CombinatorialType {
    let best = reenumerations(t, unoriented).into_iter().min().expect("nonempty type");
    CombinatorialType::new(best).expect("re-enumeration preserves validity")
}

pub fn equivalent(a: &CombinatorialType, b: &CombinatorialType, unoriented: bool) -> bool {
    canonical_form(a, unoriented) == canonical_form(b, unoriented)
}

pub fn parse_ctype(text: &str) -> Result<Vec<Triple>, FoliaError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "ctype v1")?;
    lines.map(|(no, l)| parse_triple(no, &l.split_whitespace().collect::<Vec<_>>())).collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn expect_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, header: &str) -> Result<(), FoliaError> {
    match lines.next() {
        Some((_, l)) if l == header => Ok(()),
        Some((no, _)) => Err(FoliaError::Syntax { line: no, msg: format!("expected `{header}`") }),
        None => Err(FoliaError::Syntax { line: 1, msg: format!("expected `{header}`") }),
    }
}

fn parse_triple(line: usize, toks: &[&str]) -> Result<Triple, FoliaError> {
    let err = |msg: &str| FoliaError::Syntax { line, msg: msg.to_string() };
    let arrow = |s: &str| match s {
        "<" => Ok(Arrow::Left),
        ">" => Ok(Arrow::Right),
        _ => Err(err("arrow must be `<` or `>`")),
    };
    let [l, o, r] = toks else { return Err(err("expected `<g> <o> <d>`")) };
    let orient = match *o {
        "u" => Orient::Up,
        "d" => Orient::Down,
        _ => return Err(err("orientation must be `u` or `d`")),
    };
    Ok(Triple::new(arrow(l)?, orient, arrow(r)?))
}

/// A compact leaf of one of two foliations of the same torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BifEntry {
    pub owner: u8,
    pub marked: bool,
    pub triple: Triple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BifViolation {
    Empty,
    BadOwner { index: usize },
    /// Entry 0 must be a marked, upward leaf of the first foliation.
    BadFirstEntry,
    /// Marked leaves belong to the first foliation and carry equal arrows.
    BadMarkedEntry { index: usize },
    /// Unmarked leaves have opposite arrows on their two sides.
    BadUnmarkedEntry { index: usize },
    MarkedCount(usize),
}

impl fmt::Display for BifViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BifViolation::Empty => write!(f, "Empty"),
            BifViolation::BadOwner { index } => write!(f, "BadOwner({index})"),
            BifViolation::BadFirstEntry => write!(f, "BadFirstEntry"),
            BifViolation::BadMarkedEntry { index } => write!(f, "BadMarkedEntry({index})"),
            BifViolation::BadUnmarkedEntry { index } => write!(f, "BadUnmarkedEntry({index})"),
            BifViolation::MarkedCount(n) => write!(f, "MarkedCount({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BifAnalysis {
    pub valid: bool,
    pub violations: Vec<BifViolation>,
    pub marked_count: usize,
}

pub fn validate_bif(entries: &[BifEntry]) -> BifAnalysis {
    let mut violations = Vec::new();
    if entries.is_empty() {
        violations.push(BifViolation::Empty);
    } else {
        let e0 = &entries[0];
        if !(e0.owner == 1 && e0.marked && e0.triple.orient == Orient::Up) {
            violations.push(BifViolation::BadFirstEntry);
        }
    }
    for (index, e) in entries.iter().enumerate() {
        if e.owner != 1 && e.owner != 2 {
            violations.push(BifViolation::BadOwner { index });
        } else if e.marked && (e.owner != 1 || !e.triple.is_marked()) {
            violations.push(BifViolation::BadMarkedEntry { index });
        } else if !e.marked && e.triple.is_marked() {
            violations.push(BifViolation::BadUnmarkedEntry { index });
        }
    }
    let marked_count = entries.iter().filter(|e| e.marked).count();
    if marked_count < 2 || marked_count % 2 == 1 {
        violations.push(BifViolation::MarkedCount(marked_count));
    }
    BifAnalysis { valid: violations.is_empty(), violations, marked_count }
}

/// The leaves of one foliation, in order.
pub fn owner_subsequence(entries: &[BifEntry], owner: u8) -> Vec<Triple> {
    entries.iter().filter(|e| e.owner == owner).map(|e| e.triple).collect()
}

/// A second foliation quasi-transverse to `t`: one extra compact leaf in
/// each annulus between consecutive leaves of `t`, with arrows pointing
/// into the annulus from both sides and orientation opposite to the leaf
/// before it. The sequence starts at the first marked upward leaf.
pub fn quasi_transverse_partner(t: &CombinatorialType) -> Result<Vec<BifEntry>, FoliaError> {
    let start = reenumerations(t, false)
        .into_iter()
        .enumerate()
        .find(|(r, s)| s[0].is_marked() && t.entries()[*r].orient == Orient::Up)
        .or_else(|| reenumerations(t, false).into_iter().enumerate().find(|(_, s)| s[0].is_marked()))
        .map(|(_, s)| s)
        .ok_or(FoliaError::NoMarkedLeaves)?;
    let mut out = Vec::with_capacity(2 * start.len());
    for e in start {
        out.push(BifEntry { owner: 1, marked: e.is_marked(), triple: e });
        out.push(BifEntry { owner: 2, marked: false, triple: Triple::new(Arrow::Right, e.orient.flip(), Arrow::Left) });
    }
    Ok(out)
}

pub fn bif_to_text(entries: &[BifEntry]) -> String {
    let mut s = String::from("bftype v1\n");
    for e in entries {
        s.push_str(&format!("{} {} {}\n", e.owner, if e.marked { 'm' } else { '-' }, e.triple.ascii()));
    }
    s
}

pub fn parse_bif(text: &str) -> Result<Vec<BifEntry>, FoliaError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "bftype v1")?;
    lines
        .map(|(no, l)| {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let err = |msg: &str| FoliaError::Syntax { line: no, msg: msg.to_string() };
            if toks.len() != 5 {
                return Err(err("expected `<owner> <m|-> <g> <o> <d>`"));
            }
            let owner = match toks[0] {
                "1" => 1,
                "2" => 2,
                _ => return Err(err("owner must be 1 or 2")),
            };
            let marked = match toks[1] {
                "m" => true,
                "-" => false,
                _ => return Err(err("marked column must be `m` or `-`")),
            };
            Ok(BifEntry { owner, marked, triple: parse_triple(no, &toks[2..])? })
        })
        .collect()
}

/// Worked examples used by tests and documentation.
pub mod examples {
    use super::*;

    const fn t(l: Arrow, o: Orient, r: Arrow) -> Triple {
        Triple::new(l, o, r)
    }
    use Arrow::{Left as L, Right as R};
    use Orient::{Down as D, Up as U};

    /// Four leaves, two of them marked (entries 2 and 3).
    pub fn four_leaf_type() -> Vec<Triple> {
        vec![t(L, U, R), t(L, D, R), t(L, U, L), t(R, U, R)]
    }

    /// Ten leaves of two foliations, entries 0 and 4 marked.
    pub fn ten_leaf_bifoliation() -> Vec<BifEntry> {
        let e = |owner, marked, triple| BifEntry { owner, marked, triple };
        vec![
            e(1, true, t(L, U, L)),
            e(1, false, t(L, D, R)),
            e(2, false, t(R, U, L)),
            e(1, false, t(L, D, R)),
            e(1, true, t(R, U, R)),
            e(2, false, t(R, D, L)),
            e(1, false, t(L, U, R)),
            e(1, false, t(L, D, R)),
            e(2, false, t(R, U, L)),
            e(1, false, t(L, D, R)),
        ]
    }
}
