//! Rank invariants of decorated matrices, the rank order they define, orbit
//! enumeration, and the orbit dimension for full flags.

use serde::Serialize;

use crate::flagcore::{Composition, DecoratedMatrix, Decoration, Position, TransportMatrix};
use crate::twoflags::{enumerate_transport_matrices, rank_table, RankTable};
use crate::{Error, Result};

/// `r̄_ij = r_ij + δ_ij` over `[0,q]×[0,r]`, with the `δ` table alongside.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RBarTable {
    pub q: usize,
    pub r: usize,
    pub values: Vec<Vec<u32>>,
    pub delta_values: Vec<Vec<u32>>,
}

impl RBarTable {
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.values[i][j]
    }

    pub fn delta(&self, i: usize, j: usize) -> u32 {
        self.delta_values[i][j]
    }
}

/// `δ_ij(Δ)`. The two characterizations are checked against each other in
/// debug builds.
pub fn delta_value(delta: &Decoration, i: usize, j: usize) -> u32 {
    let by_rows_or_cols = delta.positions().iter().all(|p| p.i <= i || p.j <= j);
    let below = delta.dominates(Position::new(i + 1, j + 1));
    debug_assert_eq!(by_rows_or_cols, !below);
    by_rows_or_cols as u32
}

pub fn delta_table(x: &DecoratedMatrix) -> Vec<Vec<u32>> {
    let m = x.matrix();
    (0..=m.q())
        .map(|i| (0..=m.r()).map(|j| delta_value(x.delta(), i, j)).collect())
        .collect()
}

pub fn rbar_table(x: &DecoratedMatrix) -> RBarTable {
    let r = rank_table(x.matrix());
    let delta_values = delta_table(x);
    let values = r
        .values
        .iter()
        .zip(&delta_values)
        .map(|(rr, dd)| rr.iter().zip(dd).map(|(a, b)| a + b).collect())
        .collect();
    RBarTable {
        q: r.q,
        r: r.r,
        values,
        delta_values,
    }
}

/// Which of the two rank tables an index refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableKind {
    #[serde(rename = "r")]
    R,
    #[serde(rename = "rbar")]
    RBar,
}

impl std::fmt::Display for TableKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TableKind::R => "r",
            TableKind::RBar => "rbar",
        })
    }
}

/// One entry at which two elements' tables differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankWitness {
    pub table: TableKind,
    pub i: usize,
    pub j: usize,
    pub lhs: u32,
    pub rhs: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Less => "<",
            Verdict::Equal => "=",
            Verdict::Greater => ">",
            Verdict::Incomparable => "incomparable",
        })
    }
}

/// Result of [`compare`]. `not_leq` is the first entry (row-major, `r`
/// before `r̄`) refuting `lhs ≤ rhs`, i.e. where the lhs value is smaller;
/// `not_geq` refutes `rhs ≤ lhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub verdict: Verdict,
    pub not_leq: Option<RankWitness>,
    pub not_geq: Option<RankWitness>,
}

/// Rank order: `r(X) ≥ r(Y)` and `r̄(X) ≥ r̄(Y)` everywhere.
pub fn rk_leq_dec(x: &DecoratedMatrix, y: &DecoratedMatrix) -> Result<bool> {
    Ok(compare(x, y)?.not_leq.is_none())
}

pub fn compare(x: &DecoratedMatrix, y: &DecoratedMatrix) -> Result<Comparison> {
    if !x.same_shape(y) {
        return Err(Error::ShapeMismatch);
    }
    let (rx, ry) = (rank_table(x.matrix()), rank_table(y.matrix()));
    let (bx, by) = (rbar_table(x), rbar_table(y));
    let entries = || {
        let r_part = rx
            .indices()
            .map(|(i, j)| (TableKind::R, i, j, rx.get(i, j), ry.get(i, j)));
        let b_part = rx
            .indices()
            .map(|(i, j)| (TableKind::RBar, i, j, bx.get(i, j), by.get(i, j)));
        r_part.chain(b_part)
    };
    let witness = |(table, i, j, lhs, rhs)| RankWitness {
        table,
        i,
        j,
        lhs,
        rhs,
    };
    let not_leq = entries().find(|e| e.3 < e.4).map(witness);
    let not_geq = entries().find(|e| e.3 > e.4).map(witness);
    let verdict = match (not_leq, not_geq) {
        (None, None) => Verdict::Equal,
        (None, Some(_)) => Verdict::Less,
        (Some(_), None) => Verdict::Greater,
        (Some(_), Some(_)) => Verdict::Incomparable,
    };
    Ok(Comparison {
        verdict,
        not_leq,
        not_geq,
    })
}

/// Every nonempty NE→SW staircase on the positive entries of `m`, sorted.
pub fn decorations_of(m: &TransportMatrix) -> Vec<Decoration> {
    fn extend(support: &[Position], chain: &mut Vec<Position>, out: &mut Vec<Decoration>) {
        out.push(Decoration::new(chain.clone()).expect("chain is a staircase"));
        let last = *chain.last().expect("nonempty");
        for &p in support {
            if p.i > last.i && p.j < last.j {
                chain.push(p);
                extend(support, chain, out);
                chain.pop();
            }
        }
    }
    let mut support = m.support();
    support.sort_by_key(|p| (p.i, std::cmp::Reverse(p.j)));
    let mut out = Vec::new();
    for &p in &support {
        extend(&support, &mut vec![p], &mut out);
    }
    out.sort();
    out
}

/// All decorated matrices with margins `(b, c)`, in canonical order.
pub fn enumerate_orbits(b: &Composition, c: &Composition) -> Vec<DecoratedMatrix> {
    let mut out: Vec<DecoratedMatrix> = enumerate_transport_matrices(b, c)
        .into_iter()
        .flat_map(|m| {
            decorations_of(&m)
                .into_iter()
                .map(move |d| DecoratedMatrix::new(m.clone(), d).expect("decoration on support"))
        })
        .collect();
    out.sort();
    out
}

/// Rebuilds the decorated matrix whose invariants are `(r, r̄)`.
pub fn orbit_from_tables(r: &RankTable, rbar: &RBarTable) -> Result<DecoratedMatrix> {
    let bad = |why: &str| Error::NotAnOrbitInvariant(why.to_string());
    let (q, rc) = (r.q, r.r);
    if q == 0 || rc == 0 || rbar.q != q || rbar.r != rc {
        return Err(bad("table dimensions"));
    }
    if (0..=q).any(|i| r.get(i, 0) != 0) || (0..=rc).any(|j| r.get(0, j) != 0) {
        return Err(bad("nonzero border in r"));
    }
    let entries = r.entries();
    if entries.iter().flatten().any(|&v| v < 0) {
        return Err(bad("negative second difference"));
    }
    let m: Vec<Vec<u32>> = entries
        .iter()
        .map(|row| row.iter().map(|&v| v as u32).collect())
        .collect();
    let b: Vec<u32> = m.iter().map(|row| row.iter().sum()).collect();
    let c: Vec<u32> = (0..rc).map(|j| m.iter().map(|row| row[j]).sum()).collect();
    let b = Composition::new(b).map_err(|e| bad(&e.to_string()))?;
    let c = Composition::new(c).map_err(|e| bad(&e.to_string()))?;
    let matrix = TransportMatrix::new(b, c, m).map_err(|e| bad(&e.to_string()))?;

    let mut dvals = vec![vec![0u32; rc + 1]; q + 1];
    for i in 0..=q {
        for j in 0..=rc {
            let d = rbar.get(i, j) as i64 - r.get(i, j) as i64;
            if !(0..=1).contains(&d) {
                return Err(bad("rbar - r outside {0,1}"));
            }
            dvals[i][j] = d as u32;
        }
    }
    let below: Vec<Position> = matrix
        .positions()
        .filter(|p| dvals[p.i - 1][p.j - 1] == 0)
        .collect();
    if below.is_empty() {
        return Err(bad("no decorated position"));
    }
    let maximal = crate::flagcore::normalize_decoration(&below)?;
    let delta = Decoration::new(maximal).map_err(|e| bad(&e.to_string()))?;
    let x = DecoratedMatrix::new(matrix, delta).map_err(|e| bad(&e.to_string()))?;
    if delta_table(&x) != dvals {
        return Err(bad("delta table is not that of a staircase"));
    }
    Ok(x)
}

fn inversions(w: &[usize]) -> u64 {
    let mut count = 0;
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if w[a] > w[b] {
                count += 1;
            }
        }
    }
    count
}

/// Orbit dimension of `(w, Δ)` for full flags:
/// `C(n,2) + (n-1) + ℓ(w) - #{j : ∀k∈Δ, k<j or w(k)<w(j)}`.
pub fn dimension_full_flags(w: &[usize], cols: &[usize]) -> Result<u64> {
    crate::flagcore::from_permutation(w, cols)?;
    let n = w.len() as u64;
    let free = (1..=w.len())
        .filter(|&j| cols.iter().all(|&k| k < j || w[k - 1] < w[j - 1]))
        .count() as u64;
    Ok(n * (n - 1) / 2 + (n - 1) + inversions(w) - free)
}

/// [`dimension_full_flags`] for a decorated matrix; errors unless both flags
/// are full.
pub fn orbit_dimension(x: &DecoratedMatrix) -> Result<u64> {
    let w = x.matrix().to_permutation().ok_or(Error::NotFullFlag)?;
    let cols: Vec<usize> = x.delta().positions().iter().map(|p| p.j).collect();
    dimension_full_flags(&w, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flagcore::from_permutation;

    fn dp(w: &[usize], cols: &[usize]) -> DecoratedMatrix {
        from_permutation(w, cols).unwrap()
    }

    #[test]
    fn delta_examples() {
        let x = dp(&[3, 1, 2], &[1, 3]);
        let d = delta_table(&x);
        assert_eq!(d[3][3], 1);
        assert_eq!((d[2][0], d[3][0], d[1][3], d[1][1]), (0, 1, 1, 0));

        let min2 = dp(&[1, 2], &[1]);
        let d = delta_table(&min2);
        for i in 0..=2 {
            for j in 0..=2 {
                assert_eq!(d[i][j], u32::from(i >= 1 || j >= 1));
            }
        }
    }

    #[test]
    fn rbar_examples() {
        assert_eq!(rbar_table(&dp(&[1, 2], &[1])).get(1, 1), 2);
        let e = rbar_table(&dp(&[1, 2, 3], &[3]));
        let z = rbar_table(&dp(&[3, 2, 1], &[1, 2]));
        assert_eq!(e.get(2, 0), 0);
        // The decoration of z sits at (3,1) and (2,2), so (3,1) ≤ Δ forces δ_20 = 0.
        assert_eq!(z.get(2, 0), 0);
        assert_eq!((e.get(0, 2), z.get(0, 2)), (0, 1));
    }

    #[test]
    fn compare_examples() {
        let e = dp(&[1, 2, 3], &[3]);
        let z = dp(&[3, 2, 1], &[1, 2]);
        assert!(rk_leq_dec(&e, &e).unwrap());
        let c = compare(&e, &z).unwrap();
        assert_eq!(c.verdict, Verdict::Incomparable);
        let w = c.not_leq.unwrap();
        assert_eq!(
            (w.table, w.i, w.j, w.lhs, w.rhs),
            (TableKind::RBar, 0, 2, 0, 1)
        );
        let w = c.not_geq.unwrap();
        assert_eq!(
            (w.table, w.i, w.j, w.lhs, w.rhs),
            (TableKind::R, 1, 1, 1, 0)
        );

        let min = dp(&[1, 2, 3], &[1]);
        let max = dp(&[3, 2, 1], &[1, 2, 3]);
        assert!(rk_leq_dec(&min, &max).unwrap());
        assert_eq!(compare(&min, &max).unwrap().verdict, Verdict::Less);
        assert_eq!(compare(&max, &max).unwrap().verdict, Verdict::Equal);
        assert_eq!(
            rk_leq_dec(&min, &dp(&[1, 2], &[1])),
            Err(Error::ShapeMismatch)
        );
    }

    #[test]
    fn orbit_counts() {
        let ones = |n| Composition::ones(n);
        assert_eq!(enumerate_orbits(&ones(2), &ones(2)).len(), 5);
        assert_eq!(enumerate_orbits(&ones(3), &ones(3)).len(), 28);
        let two = Composition::new(vec![2]).unwrap();
        assert_eq!(enumerate_orbits(&two, &ones(2)).len(), 2);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension_full_flags(&[1, 2, 3], &[1]).unwrap(), 3);
        assert_eq!(dimension_full_flags(&[3, 2, 1], &[1, 2, 3]).unwrap(), 8);
        assert_eq!(dimension_full_flags(&[3, 1, 2], &[1, 2]).unwrap(), 6);
        let partial = DecoratedMatrix::from_parts(
            vec![2],
            vec![1, 1],
            vec![vec![1, 1]],
            vec![Position::new(1, 1)],
        )
        .unwrap();
        assert_eq!(orbit_dimension(&partial), Err(Error::NotFullFlag));
    }

    #[test]
    fn tables_determine_orbit() {
        for x in enumerate_orbits(&Composition::ones(3), &Composition::ones(3)) {
            let back = orbit_from_tables(&rank_table(x.matrix()), &rbar_table(&x)).unwrap();
            assert_eq!(back, x);
        }
    }
}
