//! Orbits on pairs of flags: rank numbers, the rank order, simple rectangle
//! moves, and the constructive step that walks one matrix towards another.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::flagcore::{Composition, Position, TransportMatrix};
use crate::{Error, Result};

/// `r_ij = Σ_{k≤i, l≤j} m_kl` over `[0,q]×[0,r]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RankTable {
    pub q: usize,
    pub r: usize,
    pub values: Vec<Vec<u32>>,
}

impl RankTable {
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.values[i][j]
    }

    /// Recovers the matrix entries from second differences.
    pub fn entries(&self) -> Vec<Vec<i64>> {
        let v = |i: usize, j: usize| self.values[i][j] as i64;
        (1..=self.q)
            .map(|i| {
                (1..=self.r)
                    .map(|j| v(i, j) - v(i - 1, j) - v(i, j - 1) + v(i - 1, j - 1))
                    .collect()
            })
            .collect()
    }

    /// Bordered indices in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = (usize, usize)> {
        let r = self.r;
        (0..=self.q).flat_map(move |i| (0..=r).map(move |j| (i, j)))
    }
}

pub fn rank_table(m: &TransportMatrix) -> RankTable {
    let (q, r) = (m.q(), m.r());
    let mut values = vec![vec![0u32; r + 1]; q + 1];
    for i in 1..=q {
        for j in 1..=r {
            values[i][j] =
                m.entry(i, j) + values[i - 1][j] + values[i][j - 1] - values[i - 1][j - 1];
        }
    }
    RankTable { q, r, values }
}

/// `M ≤rk M′`: every rank number of `M` is at least that of `M′`.
pub fn rk_leq(m: &TransportMatrix, m2: &TransportMatrix) -> Result<bool> {
    if !m.same_shape(m2) {
        return Err(Error::ShapeMismatch);
    }
    let (a, b) = (rank_table(m), rank_table(m2));
    Ok(a.indices().all(|(i, j)| a.get(i, j) >= b.get(i, j)))
}

/// `[i0,i1]×[j0,j1]` with `(i0,j0) < (i1,j1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Rectangle {
    pub i0: usize,
    pub i1: usize,
    pub j0: usize,
    pub j1: usize,
}

impl Rectangle {
    pub fn new(i0: usize, i1: usize, j0: usize, j1: usize) -> Self {
        debug_assert!(i0 <= i1 && j0 <= j1 && (i0, j0) != (i1, j1));
        Rectangle { i0, i1, j0, j1 }
    }

    pub fn from_corners(p0: Position, p1: Position) -> Self {
        Rectangle::new(p0.i, p1.i, p0.j, p1.j)
    }

    pub fn nw(&self) -> Position {
        Position::new(self.i0, self.j0)
    }

    pub fn se(&self) -> Position {
        Position::new(self.i1, self.j1)
    }

    pub fn ne(&self) -> Position {
        Position::new(self.i0, self.j1)
    }

    pub fn sw(&self) -> Position {
        Position::new(self.i1, self.j0)
    }

    /// Entry changes of the move: `-E_nw - E_se + E_ne + E_sw`.
    pub fn changes(&self) -> [(Position, i32); 4] {
        [
            (self.nw(), -1),
            (self.se(), -1),
            (self.ne(), 1),
            (self.sw(), 1),
        ]
    }
}

impl std::fmt::Display for Rectangle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.i0, self.i1, self.j0, self.j1)
    }
}

/// Whether `m` vanishes at every `p` with `lo < p < hi` except the listed
/// positions.
pub(crate) fn open_box_empty(
    m: &TransportMatrix,
    lo: Position,
    hi: Position,
    except: &[Position],
) -> bool {
    for i in lo.i..=hi.i {
        for j in lo.j..=hi.j {
            let p = Position::new(i, j);
            if p == lo || p == hi || except.contains(&p) {
                continue;
            }
            if m.at(p) > 0 {
                return false;
            }
        }
    }
    true
}

/// Every simple move out of `m`, in row-major order of the NW corner and
/// then of the SE corner.
pub fn simple_moves(m: &TransportMatrix) -> Vec<(Rectangle, TransportMatrix)> {
    let support = m.support();
    let mut out = Vec::new();
    for &p0 in &support {
        for &p1 in &support {
            if p1.i <= p0.i || p1.j <= p0.j {
                continue;
            }
            let rect = Rectangle::from_corners(p0, p1);
            if open_box_empty(m, p0, p1, &[rect.ne(), rect.sw()]) {
                let moved = m.shifted(&rect.changes()).expect("corners are positive");
                out.push((rect, moved));
            }
        }
    }
    out
}

/// One simple move from `m` that stays `≤rk` the target, following the
/// lexicographically-first-difference construction.
pub fn progress_move(
    m: &TransportMatrix,
    target: &TransportMatrix,
) -> Result<(Rectangle, TransportMatrix)> {
    if !rk_leq(m, target)? || m == target {
        return Err(Error::NotStrictlyLess);
    }
    let (r, rt) = (rank_table(m), rank_table(target));
    let above = |i: usize, j: usize| r.get(i, j) > rt.get(i, j);

    let p0 = m
        .positions()
        .find(|&p| m.at(p) != target.at(p))
        .expect("distinct matrices differ somewhere");
    let (k0, l0) = (p0.i, p0.j);
    debug_assert!(above(k0, l0));

    // Largest [k0,k1-1]×[l0,l1-1] on which r > r′: rows first, then columns.
    let mut k1 = k0 + 1;
    while k1 < m.q() && above(k1, l0) {
        k1 += 1;
    }
    let mut l1 = l0 + 1;
    while l1 < m.r() && (k0..k1).all(|i| above(i, l1)) {
        l1 += 1;
    }

    let p1 = (k0 + 1..=k1)
        .flat_map(|i| (l0 + 1..=l1).map(move |j| Position::new(i, j)))
        .find(|&p| m.at(p) > 0)
        .expect("a positive entry exists in the grown rectangle");
    let start = (k0..p1.i)
        .flat_map(|i| (l0..p1.j).map(move |j| Position::new(i, j)))
        .filter(|&p| m.at(p) > 0)
        .max()
        .expect("the first differing entry is positive");

    let rect = Rectangle::from_corners(start, p1);
    debug_assert!(open_box_empty(m, start, p1, &[rect.ne(), rect.sw()]));
    let moved = m.shifted(&rect.changes()).expect("corners are positive");
    debug_assert!(rk_leq(&moved, target)?);
    Ok((rect, moved))
}

/// Every transport matrix with margins `(b, c)`, sorted.
pub fn enumerate_transport_matrices(b: &Composition, c: &Composition) -> Vec<TransportMatrix> {
    #[allow(clippy::too_many_arguments)]
    fn fill_row(
        row: usize,
        col: usize,
        left_in_row: u32,
        cols_left: &mut Vec<u32>,
        current: &mut Vec<Vec<u32>>,
        b: &Composition,
        c: &Composition,
        out: &mut Vec<TransportMatrix>,
    ) {
        let r = c.len();
        if col + 1 == r {
            if left_in_row > cols_left[col] {
                return;
            }
            current[row][col] = left_in_row;
            cols_left[col] -= left_in_row;
            if row + 1 == b.len() {
                out.push(TransportMatrix::from_parts_unchecked(
                    b.clone(),
                    c.clone(),
                    current.clone(),
                ));
            } else {
                fill_row(
                    row + 1,
                    0,
                    b.parts()[row + 1],
                    cols_left,
                    current,
                    b,
                    c,
                    out,
                );
            }
            cols_left[col] += left_in_row;
            current[row][col] = 0;
            return;
        }
        for v in 0..=left_in_row.min(cols_left[col]) {
            current[row][col] = v;
            cols_left[col] -= v;
            fill_row(row, col + 1, left_in_row - v, cols_left, current, b, c, out);
            cols_left[col] += v;
        }
        current[row][col] = 0;
    }

    let mut out = Vec::new();
    if b.total() != c.total() {
        return out;
    }
    let mut cols_left = c.parts().to_vec();
    let mut current = vec![vec![0; c.len()]; b.len()];
    fill_row(
        0,
        0,
        b.parts()[0],
        &mut cols_left,
        &mut current,
        b,
        c,
        &mut out,
    );
    out.sort();
    out
}

/// Outcome of the brute-force check that move reachability, the rank order
/// and the cover relation agree.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TwoFlagReport {
    pub elements: usize,
    pub covers: usize,
    pub comparable_pairs: usize,
    pub counterexamples: Vec<String>,
}

impl TwoFlagReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn verify_two_flag_theorem(b: &Composition, c: &Composition) -> TwoFlagReport {
    let elems = enumerate_transport_matrices(b, c);
    let index: BTreeMap<&TransportMatrix, usize> =
        elems.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let n = elems.len();
    let mut report = TwoFlagReport {
        elements: n,
        ..Default::default()
    };

    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (k, m) in elems.iter().enumerate() {
        for (rect, moved) in simple_moves(m) {
            match index.get(&moved) {
                Some(&t) => {
                    succ[k].insert(t);
                }
                None => report
                    .counterexamples
                    .push(format!("move {rect} leaves the element set")),
            }
        }
    }
    report.covers = succ.iter().map(BTreeSet::len).sum();

    let leq: Vec<Vec<bool>> = elems
        .iter()
        .map(|x| {
            elems
                .iter()
                .map(|y| rk_leq(x, y).expect("same shape"))
                .collect()
        })
        .collect();

    for start in 0..n {
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &succ[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        for t in 0..n {
            if seen[t] != leq[start][t] {
                report.counterexamples.push(format!(
                    "element {start} vs {t}: reachable={} rank order={}",
                    seen[t], leq[start][t]
                ));
            }
            if leq[start][t] {
                report.comparable_pairs += 1;
            }
            if start != t && leq[start][t] {
                match progress_move(&elems[start], &elems[t]) {
                    Ok((_, next)) if rk_leq(&next, &elems[t]).unwrap_or(false) => {}
                    _ => report
                        .counterexamples
                        .push(format!("progress step fails from {start} to {t}")),
                }
            }
        }
    }

    for x in 0..n {
        for &y in &succ[x] {
            if !leq[x][y] || x == y {
                report
                    .counterexamples
                    .push(format!("move {x} -> {y} is not an increase"));
            }
            if let Some(z) = (0..n).find(|&z| z != x && z != y && leq[x][z] && leq[z][y]) {
                report
                    .counterexamples
                    .push(format!("move {x} -> {y} is not a cover (via {z})"));
            }
        }
    }
    report
}
