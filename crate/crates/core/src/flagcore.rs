//! Shared domain types: compositions, matrix positions, transport matrices,
//! decorations, and the decorated matrices that label orbits of
//! (line, flag, flag) triples.
//!
//! All indices are 1-based. Row `i` refers to the step `B_i / B_{i-1}` of the
//! first flag and column `j` to `C_j / C_{j-1}` of the second. Rank tables
//! carry an explicit 0 border; a [`Position`] never does.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::Error;

/// The first rule a candidate decorated matrix violates.
#[derive(Clone, Debug, PartialEq, Eq, ThisError)]
pub enum ValidationError {
    #[error("composition is empty")]
    EmptyComposition,
    #[error("composition part {0} is zero")]
    ZeroPart(usize),
    #[error("matrix has {rows} rows but b has {expected} parts")]
    BadRowCount { rows: usize, expected: usize },
    #[error("row {row} has {len} entries but c has {expected} parts")]
    BadRowLength {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("row {0} does not sum to b_{0}")]
    BadRowSum(usize),
    #[error("column {0} does not sum to c_{0}")]
    BadColSum(usize),
    #[error("decoration is empty")]
    EmptyDecoration,
    #[error("decoration position ({0}, {1}) lies outside the matrix")]
    PositionOutOfRange(usize, usize),
    #[error("decoration position {0} breaks the northeast-to-southwest staircase")]
    NotStaircase(usize),
    #[error("decoration sits on a zero entry at ({0}, {1})")]
    ZeroEntryDecorated(usize, usize),
}

/// A composition of `n`: a list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, ValidationError> {
        if parts.is_empty() {
            return Err(ValidationError::EmptyComposition);
        }
        if let Some(k) = parts.iter().position(|&p| p == 0) {
            return Err(ValidationError::ZeroPart(k + 1));
        }
        Ok(Composition { parts })
    }

    /// The composition `(1, 1, ..., 1)` of `n`, i.e. full flags.
    pub fn ones(n: usize) -> Self {
        Composition {
            parts: vec![1; n.max(1)],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// 1-based part accessor.
    pub fn part(&self, k: usize) -> u32 {
        self.parts[k - 1]
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_all_ones(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// Every composition of `n`, in lexicographic order of parts.
    pub fn all_of(n: u32) -> Vec<Composition> {
        fn rec(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition {
                    parts: prefix.clone(),
                });
                return;
            }
            for p in 1..=rest {
                prefix.push(p);
                rec(rest - p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = ValidationError;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A matrix position `(i, j)`, 1-based. Ordered lexicographically for
/// storage; the componentwise partial order is [`Position::leq`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Position {
    pub i: usize,
    pub j: usize,
}

impl Position {
    pub const fn new(i: usize, j: usize) -> Self {
        Position { i, j }
    }

    /// Componentwise order: northwest positions are small.
    pub fn leq(self, other: Position) -> bool {
        self.i <= other.i && self.j <= other.j
    }

    pub fn is_below(self, other: Position) -> bool {
        self.leq(other) && self != other
    }

    /// `self ≤ S`: some element of `set` dominates `self`.
    pub fn leq_set(self, set: &[Position]) -> bool {
        set.iter().any(|&p| self.leq(p))
    }
}

impl From<[usize; 2]> for Position {
    fn from([i, j]: [usize; 2]) -> Self {
        Position { i, j }
    }
}

impl From<Position> for [usize; 2] {
    fn from(p: Position) -> Self {
        [p.i, p.j]
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

pub fn pos_leq(p: Position, q: Position) -> bool {
    p.leq(q)
}

/// Domination order on position sets: every element of `lhs` lies weakly
/// northwest of some element of `rhs`.
pub fn set_leq(lhs: &[Position], rhs: &[Position]) -> bool {
    lhs.iter().all(|p| p.leq_set(rhs))
}

/// `[S]`, the ≤-maximal elements of `s`, sorted by increasing row.
pub fn normalize_decoration(s: &[Position]) -> Result<Vec<Position>, Error> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out: Vec<Position> = s
        .iter()
        .copied()
        .filter(|&p| !s.iter().any(|&q| p.is_below(q)))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Checks the raw parts of a (decorated) transport matrix and reports the
/// first violated rule.
pub fn validate(
    b: &Composition,
    c: &Composition,
    m: &[Vec<u32>],
    delta: Option<&[Position]>,
) -> Result<(), ValidationError> {
    let (q, r) = (b.len(), c.len());
    if m.len() != q {
        return Err(ValidationError::BadRowCount {
            rows: m.len(),
            expected: q,
        });
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != r {
            return Err(ValidationError::BadRowLength {
                row: i + 1,
                len: row.len(),
                expected: r,
            });
        }
    }
    for (i, row) in m.iter().enumerate() {
        if row.iter().sum::<u32>() != b.part(i + 1) {
            return Err(ValidationError::BadRowSum(i + 1));
        }
    }
    for j in 0..r {
        if m.iter().map(|row| row[j]).sum::<u32>() != c.part(j + 1) {
            return Err(ValidationError::BadColSum(j + 1));
        }
    }
    let Some(delta) = delta else {
        return Ok(());
    };
    if delta.is_empty() {
        return Err(ValidationError::EmptyDecoration);
    }
    for p in delta {
        if p.i == 0 || p.i > q || p.j == 0 || p.j > r {
            return Err(ValidationError::PositionOutOfRange(p.i, p.j));
        }
    }
    let mut sorted = delta.to_vec();
    sorted.sort();
    for k in 1..sorted.len() {
        let (prev, cur) = (sorted[k - 1], sorted[k]);
        if !(prev.i < cur.i && prev.j > cur.j) {
            return Err(ValidationError::NotStaircase(k + 1));
        }
    }
    for p in &sorted {
        if m[p.i - 1][p.j - 1] == 0 {
            return Err(ValidationError::ZeroEntryDecorated(p.i, p.j));
        }
    }
    Ok(())
}

/// A `q × r` matrix of nonnegative integers with row sums `b` and column
/// sums `c`; labels a `GL(V)`-orbit on pairs of flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct TransportMatrix {
    b: Composition,
    c: Composition,
    m: Vec<Vec<u32>>,
}

impl TransportMatrix {
    pub fn new(b: Composition, c: Composition, m: Vec<Vec<u32>>) -> Result<Self, ValidationError> {
        validate(&b, &c, &m, None)?;
        Ok(TransportMatrix { b, c, m })
    }

    /// Callers guarantee the margins are right (moves preserve them).
    pub(crate) fn from_parts_unchecked(b: Composition, c: Composition, m: Vec<Vec<u32>>) -> Self {
        debug_assert_eq!(validate(&b, &c, &m, None), Ok(()));
        TransportMatrix { b, c, m }
    }

    /// Permutation matrix of `w` (one-line notation, values 1..=n):
    /// `m[w(j), j] = 1`.
    pub fn permutation(w: &[usize]) -> Result<Self, Error> {
        let n = w.len();
        let mut seen = vec![false; n + 1];
        for &v in w {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotPermutation);
            }
            seen[v] = true;
        }
        let mut m = vec![vec![0u32; n]; n];
        for (col, &row) in w.iter().enumerate() {
            m[row - 1][col] = 1;
        }
        Ok(TransportMatrix::from_parts_unchecked(
            Composition::ones(n),
            Composition::ones(n),
            m,
        ))
    }

    pub fn identity(n: usize) -> Self {
        let w: Vec<usize> = (1..=n).collect();
        TransportMatrix::permutation(&w).expect("identity is a permutation")
    }

    /// The longest permutation `n, n-1, ..., 1`.
    pub fn antidiagonal(n: usize) -> Self {
        let w: Vec<usize> = (1..=n).rev().collect();
        TransportMatrix::permutation(&w).expect("w0 is a permutation")
    }

    pub fn b(&self) -> &Composition {
        &self.b
    }

    pub fn c(&self) -> &Composition {
        &self.c
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    pub fn r(&self) -> usize {
        self.c.len()
    }

    pub fn n(&self) -> u32 {
        self.b.total()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.m
    }

    /// Entry at a 1-based position.
    pub fn at(&self, p: Position) -> u32 {
        self.m[p.i - 1][p.j - 1]
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.m[i - 1][j - 1]
    }

    pub fn same_shape(&self, other: &TransportMatrix) -> bool {
        self.b == other.b && self.c == other.c
    }

    /// All grid positions in row-major order.
    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        let r = self.r();
        (1..=self.q()).flat_map(move |i| (1..=r).map(move |j| Position::new(i, j)))
    }

    /// Positions carrying a positive entry, row-major.
    pub fn support(&self) -> Vec<Position> {
        self.positions().filter(|&p| self.at(p) > 0).collect()
    }

    /// Applies signed unit changes `(position, ±1)`; `None` if an entry
    /// would go negative.
    pub(crate) fn shifted(&self, changes: &[(Position, i32)]) -> Option<TransportMatrix> {
        let mut m = self.m.clone();
        for &(p, d) in changes {
            let cell = &mut m[p.i - 1][p.j - 1];
            let v = *cell as i64 + d as i64;
            if v < 0 {
                return None;
            }
            *cell = v as u32;
        }
        Some(TransportMatrix::from_parts_unchecked(
            self.b.clone(),
            self.c.clone(),
            m,
        ))
    }

    /// For full flags, the permutation `w` with `m[w(j), j] = 1`.
    pub fn to_permutation(&self) -> Option<Vec<usize>> {
        if !(self.b.is_all_ones() && self.c.is_all_ones()) {
            return None;
        }
        (1..=self.r())
            .map(|j| (1..=self.q()).find(|&i| self.entry(i, j) == 1))
            .collect()
    }
}

/// A nonempty NE→SW staircase of positions, stored by increasing row (hence
/// decreasing column).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Position>", into = "Vec<Position>")]
pub struct Decoration {
    positions: Vec<Position>,
}

impl Decoration {
    /// Sorts `positions` and checks the staircase shape. Does not look at
    /// any host matrix.
    pub fn new(mut positions: Vec<Position>) -> Result<Self, ValidationError> {
        if positions.is_empty() {
            return Err(ValidationError::EmptyDecoration);
        }
        positions.sort();
        for k in 1..positions.len() {
            let (prev, cur) = (positions[k - 1], positions[k]);
            if !(prev.i < cur.i && prev.j > cur.j) {
                return Err(ValidationError::NotStaircase(k + 1));
            }
        }
        Ok(Decoration { positions })
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, p: Position) -> bool {
        self.positions.binary_search(&p).is_ok()
    }

    /// `p ≤ Δ`.
    pub fn dominates(&self, p: Position) -> bool {
        p.leq_set(&self.positions)
    }
}

impl TryFrom<Vec<Position>> for Decoration {
    type Error = ValidationError;

    fn try_from(v: Vec<Position>) -> Result<Self, Self::Error> {
        Decoration::new(v)
    }
}

impl From<Decoration> for Vec<Position> {
    fn from(d: Decoration) -> Self {
        d.positions
    }
}

/// A transport matrix together with a decoration; labels one orbit of
/// `GL(V)` on `P(V) × Flag(b) × Flag(c)`.
///
/// The derived order is the canonical total order used for enumeration:
/// shape, then the flattened matrix, then the sorted decoration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct DecoratedMatrix {
    matrix: TransportMatrix,
    delta: Decoration,
}

impl DecoratedMatrix {
    pub fn new(matrix: TransportMatrix, delta: Decoration) -> Result<Self, ValidationError> {
        for &p in delta.positions() {
            if p.i == 0 || p.i > matrix.q() || p.j == 0 || p.j > matrix.r() {
                return Err(ValidationError::PositionOutOfRange(p.i, p.j));
            }
            if matrix.at(p) == 0 {
                return Err(ValidationError::ZeroEntryDecorated(p.i, p.j));
            }
        }
        Ok(DecoratedMatrix { matrix, delta })
    }

    /// Builds from raw parts, reporting the first violated rule.
    pub fn from_parts(
        b: Vec<u32>,
        c: Vec<u32>,
        m: Vec<Vec<u32>>,
        delta: Vec<Position>,
    ) -> Result<Self, ValidationError> {
        let b = Composition::new(b)?;
        let c = Composition::new(c)?;
        validate(&b, &c, &m, Some(&delta))?;
        let delta = Decoration::new(delta)?;
        Ok(DecoratedMatrix {
            matrix: TransportMatrix { b, c, m },
            delta,
        })
    }

    pub fn matrix(&self) -> &TransportMatrix {
        &self.matrix
    }

    pub fn delta(&self) -> &Decoration {
        &self.delta
    }

    pub fn same_shape(&self, other: &DecoratedMatrix) -> bool {
        self.matrix.same_shape(&other.matrix)
    }

    /// Compact circled-matrix notation: `.` for zero, `(m)` for a decorated
    /// entry, rows separated by ` / `.
    pub fn notation(&self) -> String {
        let m = &self.matrix;
        (1..=m.q())
            .map(|i| {
                (1..=m.r())
                    .map(|j| {
                        let p = Position::new(i, j);
                        let v = m.at(p);
                        if self.delta.contains(p) {
                            format!("({v})")
                        } else if v == 0 {
                            ".".to_string()
                        } else {
                            v.to_string()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" / ")
    }
}

impl fmt::Display for DecoratedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// Full-flag decorated permutation `(w, Δ)`: ones at `(w(j), j)` and circles
/// at `(w(j), j)` for `j ∈ cols`, which must be a descending subsequence.
pub fn from_permutation(w: &[usize], cols: &[usize]) -> Result<DecoratedMatrix, Error> {
    let matrix = TransportMatrix::permutation(w)?;
    if cols.is_empty() {
        return Err(Error::Validation(ValidationError::EmptyDecoration));
    }
    let mut cols = cols.to_vec();
    cols.sort_unstable();
    cols.dedup();
    if cols.iter().any(|&j| j == 0 || j > w.len()) {
        return Err(Error::NotDescending);
    }
    if cols.windows(2).any(|pair| w[pair[0] - 1] <= w[pair[1] - 1]) {
        return Err(Error::NotDescending);
    }
    let positions = cols.iter().map(|&j| Position::new(w[j - 1], j)).collect();
    let delta = Decoration::new(positions)?;
    Ok(DecoratedMatrix::new(matrix, delta)?)
}

/// Wire form shared by plain and decorated matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub b: Vec<u32>,
    pub c: Vec<u32>,
    pub m: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Position>>,
}

impl TryFrom<MatrixJson> for TransportMatrix {
    type Error = ValidationError;

    fn try_from(j: MatrixJson) -> Result<Self, Self::Error> {
        TransportMatrix::new(Composition::new(j.b)?, Composition::new(j.c)?, j.m)
    }
}

impl From<TransportMatrix> for MatrixJson {
    fn from(t: TransportMatrix) -> Self {
        MatrixJson {
            b: t.b.into(),
            c: t.c.into(),
            m: t.m,
            delta: None,
        }
    }
}

impl TryFrom<MatrixJson> for DecoratedMatrix {
    type Error = ValidationError;

    fn try_from(j: MatrixJson) -> Result<Self, Self::Error> {
        let delta = j.delta.unwrap_or_default();
        DecoratedMatrix::from_parts(j.b, j.c, j.m, delta)
    }
}

impl From<DecoratedMatrix> for MatrixJson {
    fn from(d: DecoratedMatrix) -> Self {
        let mut j = MatrixJson::from(d.matrix);
        j.delta = Some(d.delta.positions);
        j
    }
}
