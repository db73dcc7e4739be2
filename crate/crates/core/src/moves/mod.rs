//! The simple moves between decorated matrices, the poset they generate,
//! brute-force verification of that poset, and chains between comparable
//! elements.
//!
//! A move is described from the smaller element: it takes `(M, Δ)` to a
//! strictly larger `(M′, Δ′)`. Every kind has one checker, shared by
//! [`applicable_moves`] and [`apply_move`], so enumeration and application
//! cannot disagree.

mod chain;
mod poset;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::flagcore::{
    normalize_decoration, DecoratedMatrix, Decoration, Position, TransportMatrix,
};
use crate::twoflags::open_box_empty;
use crate::{Error, Result};

pub use chain::find_chain;
pub use poset::{build_poset, verify_equivalence, EquivalenceReport, Poset};

/// Move kinds in tie-breaking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    I,
    II,
    IIIa,
    IIIb,
    IVa,
    IVb,
    IVc,
    V,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::I,
        MoveKind::II,
        MoveKind::IIIa,
        MoveKind::IIIb,
        MoveKind::IVa,
        MoveKind::IVb,
        MoveKind::IVc,
        MoveKind::V,
    ];
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A move kind with its anchor positions:
///
/// * `I`: `[(i1,j1)]`
/// * `II`, `IIIa`, `IIIb`: `[(i0,j0), (i1,j1)]`
/// * `IVa`, `IVb`, `IVc`: `[(i0,j0), (i1,j1), (i2,j2)]`; for `IVb` the third
///   anchor is `(i2,j0)`, for `IVc` it is `(i0,j2)`
/// * `V`: `[(i0,j0), (i1,j1), ..., (it,jt)]`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub anchors: Vec<Position>,
}

impl Move {
    pub fn new(kind: MoveKind, anchors: Vec<Position>) -> Self {
        Move { kind, anchors }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for p in &self.anchors {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

fn pos(i: usize, j: usize) -> Position {
    Position::new(i, j)
}

fn require(cond: bool, clause: &str) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(clause.to_string())
    }
}

fn in_grid(m: &TransportMatrix, p: Position) -> bool {
    p.i >= 1 && p.i <= m.q() && p.j >= 1 && p.j <= m.r()
}

/// Zero entries at every `p` in `[lo, hi]` (componentwise, inclusive) that
/// satisfies `pick`.
fn zero_where(
    m: &TransportMatrix,
    lo: Position,
    hi: Position,
    pick: impl Fn(Position) -> bool,
) -> bool {
    (lo.i..=hi.i)
        .flat_map(|i| (lo.j..=hi.j).map(move |j| pos(i, j)))
        .all(|p| !pick(p) || m.at(p) == 0)
}

fn with_added(delta: &Decoration, p: Position) -> Vec<Position> {
    let mut s = delta.positions().to_vec();
    s.push(p);
    normalize_decoration(&s).expect("nonempty")
}

fn finish(
    m: &TransportMatrix,
    changes: &[(Position, i32)],
    delta: Vec<Position>,
) -> std::result::Result<DecoratedMatrix, String> {
    let moved = m.shifted(changes).ok_or("an entry would become negative")?;
    let delta = Decoration::new(delta).map_err(|_| "resulting decoration is not a staircase")?;
    DecoratedMatrix::new(moved, delta)
        .map_err(|_| "resulting decoration sits on a zero entry".to_string())
}

fn rect_changes(p0: Position, p1: Position) -> [(Position, i32); 4] {
    [
        (p0, -1),
        (p1, -1),
        (pos(p0.i, p1.j), 1),
        (pos(p1.i, p0.j), 1),
    ]
}

fn check(x: &DecoratedMatrix, mv: &Move) -> std::result::Result<DecoratedMatrix, String> {
    let m = x.matrix();
    let delta = x.delta();
    let a = &mv.anchors;
    require(
        a.iter().all(|&p| in_grid(m, p)),
        "anchor outside the matrix",
    )?;
    let arity_ok = match mv.kind {
        MoveKind::I => a.len() == 1,
        MoveKind::II | MoveKind::IIIa | MoveKind::IIIb => a.len() == 2,
        MoveKind::IVa | MoveKind::IVb | MoveKind::IVc => a.len() == 3,
        MoveKind::V => a.len() >= 2,
    };
    require(arity_ok, "wrong number of anchors")?;

    match mv.kind {
        MoveKind::I => {
            let p1 = a[0];
            require(!delta.dominates(p1), "(i1,j1) ≰ Δ")?;
            require(m.at(p1) > 0, "m_{i1j1} > 0")?;
            require(
                zero_where(m, pos(1, 1), p1, |p| p != p1 && !delta.dominates(p)),
                "m_ij = 0 for (i,j) < (i1,j1), (i,j) ≰ Δ",
            )?;
            finish(m, &[], with_added(delta, p1))
        }
        MoveKind::II | MoveKind::IIIa | MoveKind::IIIb => {
            let (p0, p1) = (a[0], a[1]);
            require(p0.i < p1.i && p0.j < p1.j, "i0 < i1 and j0 < j1")?;
            let (ne, sw) = (pos(p0.i, p1.j), pos(p1.i, p0.j));
            require(m.at(p0) > 0, "m_{i0j0} > 0")?;
            require(m.at(p1) > 0, "m_{i1j1} > 0")?;
            match mv.kind {
                MoveKind::II => {
                    require(
                        open_box_empty(m, p0, p1, &[ne, sw]),
                        "m_ij = 0 strictly between the corners except (i0,j1), (i1,j0)",
                    )?;
                    require(!delta.contains(p1), "(i1,j1) ∉ Δ")?;
                    require(
                        !(delta.contains(ne) && delta.contains(sw)),
                        "(i0,j1) ∉ Δ or (i1,j0) ∉ Δ",
                    )?;
                    require(
                        !delta.contains(p0) || m.at(p0) > 1,
                        "(i0,j0) ∉ Δ or m_{i0j0} > 1",
                    )?;
                    require(
                        delta.dominates(p1) || !delta.dominates(ne) || !delta.dominates(sw),
                        "(i1,j1) ≤ Δ, or (i0,j1) ≰ Δ, or (i1,j0) ≰ Δ",
                    )?;
                    finish(m, &rect_changes(p0, p1), delta.positions().to_vec())
                }
                MoveKind::IIIa => {
                    require(delta.contains(p0), "(i0,j0) ∈ Δ")?;
                    require(m.at(p0) == 1, "m_{i0j0} = 1")?;
                    require(
                        open_box_empty(m, p0, p1, &[sw]),
                        "m_ij = 0 strictly between the corners except (i1,j0)",
                    )?;
                    require(
                        zero_where(m, pos(1, 1), ne, |p| !delta.dominates(p)),
                        "m_ij = 0 for (i,j) ≤ (i0,j1), (i,j) ≰ Δ",
                    )?;
                    finish(m, &rect_changes(p0, p1), with_added(delta, ne))
                }
                _ => {
                    require(delta.contains(p0), "(i0,j0) ∈ Δ")?;
                    require(m.at(p0) == 1, "m_{i0j0} = 1")?;
                    require(
                        open_box_empty(m, p0, p1, &[ne]),
                        "m_ij = 0 strictly between the corners except (i0,j1)",
                    )?;
                    require(
                        zero_where(m, pos(1, 1), sw, |p| !delta.dominates(p)),
                        "m_ij = 0 for (i,j) ≤ (i1,j0), (i,j) ≰ Δ",
                    )?;
                    finish(m, &rect_changes(p0, p1), with_added(delta, sw))
                }
            }
        }
        MoveKind::IVa => {
            let (p0, p1, p2) = (a[0], a[1], a[2]);
            require(p0.i < p2.i && p2.i < p1.i, "i0 < i2 < i1")?;
            require(p2.j < p0.j && p0.j < p1.j, "j2 < j0 < j1")?;
            require(
                delta.contains(p0) && delta.contains(p2),
                "(i0,j0), (i2,j2) ∈ Δ",
            )?;
            require(m.at(p0) == 1 && m.at(p2) == 1, "m_{i0j0} = m_{i2j2} = 1")?;
            require(m.at(p1) > 0, "m_{i1j1} > 0")?;
            let corner = pos(p0.i, p2.j);
            let (e1, e2) = (pos(p0.i, p1.j), pos(p1.i, p2.j));
            require(
                zero_where(m, corner, p1, |p| {
                    p != corner && p != p1 && !delta.dominates(p) && p != e1 && p != e2
                }),
                "m_ij = 0 for (i0,j2) < (i,j) < (i1,j1), (i,j) ≰ Δ, except (i0,j1), (i1,j2)",
            )?;
            let changes = [
                (p0, -1),
                (p1, -1),
                (p2, -1),
                (pos(p1.i, p2.j), 1),
                (pos(p2.i, p0.j), 1),
                (pos(p0.i, p1.j), 1),
            ];
            finish(m, &changes, with_added(delta, pos(p2.i, p0.j)))
        }
        MoveKind::IVb | MoveKind::IVc => {
            let (p0, p1, p2) = (a[0], a[1], a[2]);
            require(p0.i < p1.i && p0.j < p1.j, "i0 < i1 and j0 < j1")?;
            let (ne, sw) = (pos(p0.i, p1.j), pos(p1.i, p0.j));
            if mv.kind == MoveKind::IVb {
                require(
                    p2.j == p0.j && p0.i < p2.i && p2.i < p1.i,
                    "third anchor is (i2,j0), i0 < i2 < i1",
                )?;
            } else {
                require(
                    p2.i == p0.i && p0.j < p2.j && p2.j < p1.j,
                    "third anchor is (i0,j2), j0 < j2 < j1",
                )?;
            }
            require(m.at(p0) > 0, "m_{i0j0} > 0")?;
            require(m.at(p1) > 0, "m_{i1j1} > 0")?;
            require(
                open_box_empty(m, p0, p1, &[ne, sw, p2]),
                "m_ij = 0 strictly between the corners except (i0,j1), (i1,j0) and the circled 1",
            )?;
            require(delta.contains(p2), "circled third anchor")?;
            require(m.at(p2) == 1, "third anchor entry is 1")?;
            if mv.kind == MoveKind::IVb {
                require(!delta.dominates(ne), "(i0,j1) ≰ Δ")?;
            } else {
                require(!delta.dominates(sw), "(i1,j0) ≰ Δ")?;
            }
            finish(m, &rect_changes(p0, p1), delta.positions().to_vec())
        }
        MoveKind::V => {
            let p0 = a[0];
            let chain = &a[1..];
            let t = chain.len();
            require(chain.iter().all(|p| p0.i < p.i), "i0 < i1")?;
            require(
                chain.windows(2).all(|w| w[0].i < w[1].i && w[0].j > w[1].j),
                "i1 < ... < it and j1 > ... > jt",
            )?;
            require(chain[t - 1].j > p0.j, "jt > j0")?;
            require(chain.iter().all(|&p| delta.contains(p)), "(is,js) ∈ Δ")?;
            require(m.at(p0) > 0, "m_{i0j0} > 0")?;
            for &ps in chain {
                let hi = pos(ps.i - 1, ps.j - 1);
                require(
                    zero_where(m, p0, hi, |p| p != p0),
                    "m_ij = 0 for (i0,j0) < (i,j) ≤ (is-1,js-1)",
                )?;
            }
            require(
                chain.windows(2).all(|w| {
                    !delta
                        .positions()
                        .iter()
                        .any(|p| w[0].i < p.i && p.i < w[1].i && w[1].j < p.j && p.j < w[0].j)
                }),
                "no circled position between consecutive (is,js)",
            )?;
            let (ne, sw) = (pos(p0.i, chain[0].j), pos(chain[t - 1].i, p0.j));
            let rest: Vec<Position> = delta
                .positions()
                .iter()
                .copied()
                .filter(|p| *p != p0 && !chain.contains(p))
                .collect();
            let under_rest = |q: Position| rest.iter().any(|p| q.leq(*p));
            require(
                (p0.i + 1..chain[0].i)
                    .all(|i| m.at(pos(i, ne.j)) == 0 || !under_rest(pos(i, ne.j))),
                "m_{i,j1} = 0 for i0 < i < i1 with (i,j1) ≤ Δ'",
            )?;
            require(
                (p0.j + 1..chain[t - 1].j)
                    .all(|j| m.at(pos(sw.i, j)) == 0 || !under_rest(pos(sw.i, j))),
                "m_{it,j} = 0 for j0 < j < jt with (it,j) ≤ Δ'",
            )?;
            let mut changes = vec![(p0, -1)];
            changes.extend(chain.iter().map(|&p| (p, -1)));
            changes.push((pos(p0.i, chain[0].j), 1));
            changes.push((pos(chain[t - 1].i, p0.j), 1));
            changes.extend(chain.windows(2).map(|w| (pos(w[0].i, w[1].j), 1)));
            let mut new_delta: Vec<Position> = delta
                .positions()
                .iter()
                .copied()
                .filter(|p| *p != p0 && !chain.contains(p))
                .collect();
            new_delta.push(pos(p0.i, chain[0].j));
            new_delta.push(pos(chain[t - 1].i, p0.j));
            finish(
                m,
                &changes,
                normalize_decoration(&new_delta).expect("nonempty"),
            )
        }
    }
}

/// Candidate anchor lists for one kind; [`check`] filters them.
fn candidates(x: &DecoratedMatrix, kind: MoveKind) -> Vec<Vec<Position>> {
    let m = x.matrix();
    let grid: Vec<Position> = m.positions().collect();
    let support = m.support();
    let circled = x.delta().positions();
    let pairs = || {
        support.iter().flat_map(|&p0| {
            support
                .iter()
                .filter(move |p1| p1.i > p0.i && p1.j > p0.j)
                .map(move |&p1| (p0, p1))
        })
    };
    match kind {
        MoveKind::I => support.iter().map(|&p| vec![p]).collect(),
        MoveKind::II | MoveKind::IIIa | MoveKind::IIIb => {
            pairs().map(|(p0, p1)| vec![p0, p1]).collect()
        }
        MoveKind::IVa => {
            let mut out = Vec::new();
            for &p0 in circled {
                for &p2 in circled {
                    if !(p0.i < p2.i && p2.j < p0.j) {
                        continue;
                    }
                    for &p1 in &support {
                        if p1.i > p2.i && p1.j > p0.j {
                            out.push(vec![p0, p1, p2]);
                        }
                    }
                }
            }
            out
        }
        MoveKind::IVb => pairs()
            .flat_map(|(p0, p1)| (p0.i + 1..p1.i).map(move |i2| vec![p0, p1, pos(i2, p0.j)]))
            .collect(),
        MoveKind::IVc => pairs()
            .flat_map(|(p0, p1)| (p0.j + 1..p1.j).map(move |j2| vec![p0, p1, pos(p0.i, j2)]))
            .collect(),
        MoveKind::V => {
            let mut out = Vec::new();
            let k = circled.len();
            for &p0 in &grid {
                if m.at(p0) == 0 {
                    continue;
                }
                for mask in 1u32..(1 << k) {
                    let mut anchors = vec![p0];
                    anchors.extend((0..k).filter(|b| mask >> b & 1 == 1).map(|b| circled[b]));
                    out.push(anchors);
                }
            }
            out
        }
    }
}

/// Every move applicable at `x` with its result, in canonical move order.
pub fn applicable_moves(x: &DecoratedMatrix) -> Vec<(Move, DecoratedMatrix)> {
    let mut out = Vec::new();
    for kind in MoveKind::ALL {
        for anchors in candidates(x, kind) {
            let mv = Move::new(kind, anchors);
            if let Ok(y) = check(x, &mv) {
                out.push((mv, y));
            }
        }
    }
    out.sort();
    out
}

/// Applies one move, re-checking all of its conditions.
pub fn apply_move(x: &DecoratedMatrix, mv: &Move) -> Result<DecoratedMatrix> {
    check(x, mv).map_err(|clause| Error::PreconditionFailed {
        kind: mv.kind,
        clause,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decorated::{compare, Verdict};
    use crate::flagcore::from_permutation;

    fn dp(w: &[usize], cols: &[usize]) -> DecoratedMatrix {
        from_permutation(w, cols).unwrap()
    }

    fn with_delta(x: &DecoratedMatrix, delta: &[(usize, usize)]) -> DecoratedMatrix {
        let d = Decoration::new(delta.iter().map(|&(i, j)| pos(i, j)).collect()).unwrap();
        DecoratedMatrix::new(x.matrix().clone(), d).unwrap()
    }

    #[test]
    fn moves_from_n2_minimum() {
        let min = dp(&[1, 2], &[1]);
        let moves = applicable_moves(&min);
        let summary: Vec<(MoveKind, DecoratedMatrix)> =
            moves.iter().map(|(m, y)| (m.kind, y.clone())).collect();
        let id = dp(&[1, 2], &[1]);
        let anti = dp(&[2, 1], &[1]);
        assert_eq!(
            summary,
            vec![
                (MoveKind::I, with_delta(&id, &[(2, 2)])),
                (MoveKind::IIIa, with_delta(&anti, &[(1, 2)])),
                (MoveKind::IIIb, with_delta(&anti, &[(2, 1)])),
            ]
        );
    }

    #[test]
    fn moves_from_n2_upper_elements() {
        let id22 = with_delta(&dp(&[1, 2], &[1]), &[(2, 2)]);
        let moves = applicable_moves(&id22);
        assert_eq!(moves.len(), 1);
        assert_eq!(
            moves[0].0,
            Move::new(MoveKind::V, vec![pos(1, 1), pos(2, 2)])
        );
        assert_eq!(moves[0].1, dp(&[2, 1], &[1, 2]));
        assert!(applicable_moves(&dp(&[2, 1], &[1, 2])).is_empty());
    }

    #[test]
    fn apply_examples() {
        let min = dp(&[1, 2], &[1]);
        let err =
            apply_move(&min, &Move::new(MoveKind::II, vec![pos(1, 1), pos(2, 2)])).unwrap_err();
        assert!(
            matches!(
                err,
                Error::PreconditionFailed {
                    kind: MoveKind::II,
                    ..
                }
            ),
            "{err}"
        );
        let up = apply_move(&min, &Move::new(MoveKind::I, vec![pos(2, 2)])).unwrap();
        assert_eq!(up, with_delta(&min, &[(2, 2)]));
        let top = apply_move(&up, &Move::new(MoveKind::V, vec![pos(1, 1), pos(2, 2)])).unwrap();
        assert_eq!(top, dp(&[2, 1], &[1, 2]));
    }

    #[test]
    fn moves_go_up() {
        for x in crate::decorated::enumerate_orbits(
            &crate::Composition::ones(3),
            &crate::Composition::ones(3),
        ) {
            for (mv, y) in applicable_moves(&x) {
                assert_eq!(
                    compare(&x, &y).unwrap().verdict,
                    Verdict::Less,
                    "{x} {mv} {y}"
                );
            }
        }
    }

    fn clause(x: &DecoratedMatrix, mv: Move) -> String {
        match apply_move(x, &mv) {
            Err(Error::PreconditionFailed { clause, .. }) => clause,
            other => panic!("{mv} on {x}: {other:?}"),
        }
    }

    #[test]
    fn two_corner_swap_under_the_circles_is_rejected() {
        let x = with_delta(&dp(&[1, 4, 3, 2], &[1]), &[(2, 4), (4, 2)]);
        let c = clause(&x, Move::new(MoveKind::II, vec![pos(1, 1), pos(3, 3)]));
        assert!(c.starts_with("(i1,j1) ≤ Δ"), "{c}");
        assert!(apply_move(&x, &Move::new(MoveKind::I, vec![pos(3, 3)])).is_ok());
    }

    #[test]
    fn chain_skipping_a_circle_is_rejected() {
        let x = with_delta(&dp(&[1, 4, 3, 2], &[1]), &[(2, 4), (3, 3), (4, 2)]);
        let c = clause(
            &x,
            Move::new(MoveKind::V, vec![pos(1, 1), pos(2, 4), pos(4, 2)]),
        );
        assert!(c.starts_with("no circled position"), "{c}");
        let y = apply_move(
            &x,
            &Move::new(
                MoveKind::V,
                vec![pos(1, 1), pos(2, 4), pos(3, 3), pos(4, 2)],
            ),
        )
        .unwrap();
        assert_eq!(y, with_delta(&dp(&[4, 3, 2, 1], &[1]), &[(1, 4), (4, 1)]));
    }

    #[test]
    fn absorbed_corner_needs_an_empty_edge() {
        let m = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![0, 1, 0]];
        let x =
            DecoratedMatrix::from_parts(vec![1; 4], vec![1, 2, 1], m, vec![pos(3, 3), pos(4, 2)])
                .unwrap();
        let c = clause(&x, Move::new(MoveKind::V, vec![pos(1, 1), pos(4, 2)]));
        assert!(c.starts_with("m_{i,j1} = 0"), "{c}");
        let x = with_delta(&dp(&[1, 3, 2], &[1]), &[(2, 3), (3, 2)]);
        let y = apply_move(&x, &Move::new(MoveKind::V, vec![pos(1, 1), pos(3, 2)])).unwrap();
        assert_eq!(y, dp(&[3, 1, 2], &[1, 3]));
    }
}
