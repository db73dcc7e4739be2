//! Exact linear-algebra oracle.
//!
//! A [`Configuration`] is an explicit line and pair of flags in `Q^n`. Its
//! rank tables are computed by exact elimination and inverted back to a
//! decorated matrix, which checks the combinatorics against geometry.

mod family;
pub mod linalg;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::decorated::{orbit_from_tables, RBarTable};
use crate::flagcore::{normalize_decoration, DecoratedMatrix, Position, TransportMatrix};
use crate::twoflags::RankTable;
use crate::{Error, Result};

pub use family::{
    degeneration_family, verify_family, verify_move_degeneration, Family, FamilyReport, TVec,
};
use linalg::{rank, rank_of, unit, Q};

/// A line `A` and flags `B_1 ⊂ … ⊂ B_q`, `C_1 ⊂ … ⊂ C_r` in `Q^n`, each
/// given by generators. `b[i-1]` spans `B_i` and extends `b[i-2]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub n: usize,
    #[serde(rename = "A", with = "qvecs")]
    pub a: Vec<Vec<Q>>,
    #[serde(rename = "B", with = "qflags")]
    pub b: Vec<Vec<Vec<Q>>>,
    #[serde(rename = "C", with = "qflags")]
    pub c: Vec<Vec<Vec<Q>>>,
}

impl Configuration {
    /// Applies `g` (rows of a square matrix) to every generator.
    pub fn transformed(&self, g: &[Vec<Q>]) -> Configuration {
        let map = |vs: &Vec<Vec<Q>>| vs.iter().map(|v| linalg::mat_vec(g, v)).collect::<Vec<_>>();
        Configuration {
            n: self.n,
            a: map(&self.a),
            b: self.b.iter().map(map).collect(),
            c: self.c.iter().map(map).collect(),
        }
    }
}

fn q_to_string(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn q_from_str(s: &str) -> std::result::Result<Q, String> {
    let (p, d) = s.split_once('/').unwrap_or((s, "1"));
    let p = p
        .trim()
        .parse()
        .map_err(|_| format!("bad rational {s:?}"))?;
    let d: num_bigint::BigInt = d
        .trim()
        .parse()
        .map_err(|_| format!("bad rational {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Q::new(p, d))
}

mod qvecs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> = v
            .iter()
            .map(|x| x.iter().map(q_to_string).collect())
            .collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Q>>, D::Error> {
        let strings: Vec<Vec<String>> = Vec::deserialize(d)?;
        strings
            .iter()
            .map(|x| {
                x.iter()
                    .map(|s| q_from_str(s).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

mod qflags {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[Vec<Vec<Q>>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<Vec<Vec<String>>> = v
            .iter()
            .map(|f| {
                f.iter()
                    .map(|x| x.iter().map(q_to_string).collect())
                    .collect()
            })
            .collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Vec<Q>>>, D::Error> {
        let strings: Vec<Vec<Vec<String>>> = Vec::deserialize(d)?;
        strings
            .iter()
            .map(|f| {
                f.iter()
                    .map(|x| {
                        x.iter()
                            .map(|s| q_from_str(s).map_err(D::Error::custom))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }
}

/// The standard basis `e_ijk`, one coordinate per unit of each entry,
/// numbered row-major over `(i, j)` and then by `k`.
#[derive(Clone, Debug)]
pub(crate) struct Coordinates {
    pub n: usize,
    index: BTreeMap<(usize, usize, u32), usize>,
}

impl Coordinates {
    pub fn new(m: &TransportMatrix) -> Self {
        let mut index = BTreeMap::new();
        for p in m.positions() {
            for k in 1..=m.at(p) {
                let next = index.len();
                index.insert((p.i, p.j, k), next);
            }
        }
        Coordinates {
            n: index.len(),
            index,
        }
    }

    pub fn get(&self, p: Position, k: u32) -> usize {
        self.index[&(p.i, p.j, k)]
    }
}

/// A flag as the list of its subspaces, each given by spanning vectors.
pub(crate) type Flag = Vec<Vec<Vec<Q>>>;

/// Assembles flags from per-cell vector lists: `B_i` from cells in rows
/// `≤ i`, ordered by row; `C_j` from columns `≤ j`, ordered by column.
pub(crate) fn flags_from_cells(
    q: usize,
    r: usize,
    cells: &BTreeMap<Position, Vec<Vec<Q>>>,
) -> (Flag, Flag) {
    let mut b = Vec::with_capacity(q);
    let mut acc = Vec::new();
    for i in 1..=q {
        for j in 1..=r {
            if let Some(vs) = cells.get(&Position::new(i, j)) {
                acc.extend(vs.iter().cloned());
            }
        }
        b.push(acc.clone());
    }
    let mut c = Vec::with_capacity(r);
    let mut acc = Vec::new();
    for j in 1..=r {
        for i in 1..=q {
            if let Some(vs) = cells.get(&Position::new(i, j)) {
                acc.extend(vs.iter().cloned());
            }
        }
        c.push(acc.clone());
    }
    (b, c)
}

/// The configuration of `M` with `A = ⟨Σ_{(i,j)∈S} e_ij1⟩`. `S` need not be
/// a staircase.
pub fn standard_configuration(m: &TransportMatrix, s: &[Position]) -> Result<Configuration> {
    for &p in s {
        if p.i == 0 || p.i > m.q() || p.j == 0 || p.j > m.r() || m.at(p) == 0 {
            return Err(Error::ZeroEntryPosition(p));
        }
    }
    let coords = Coordinates::new(m);
    let n = coords.n;
    let cells: BTreeMap<Position, Vec<Vec<Q>>> = m
        .positions()
        .map(|p| {
            (
                p,
                (1..=m.at(p)).map(|k| unit(n, coords.get(p, k))).collect(),
            )
        })
        .collect();
    let (b, c) = flags_from_cells(m.q(), m.r(), &cells);
    let mut line = vec![Q::zero(); n];
    let mut seen = s.to_vec();
    seen.sort();
    seen.dedup();
    for p in seen {
        line[coords.get(p, 1)] += Q::one();
    }
    Ok(Configuration {
        n,
        a: vec![line],
        b,
        c,
    })
}

pub fn standard_configuration_of(x: &DecoratedMatrix) -> Configuration {
    standard_configuration(x.matrix(), x.delta().positions())
        .expect("decoration sits on positive entries")
}

fn empty() -> &'static [Vec<Q>] {
    &[]
}

/// `r_ij = dim(B_i ∩ C_j)` and `r̄_ij = r_ij + dim(A ∩ (B_i + C_j))`,
/// computed by exact rank.
pub fn geometric_rank_tables(x: &Configuration) -> (RankTable, RBarTable) {
    let (q, r) = (x.b.len(), x.c.len());
    let bi = |i: usize| if i == 0 { empty() } else { &x.b[i - 1][..] };
    let cj = |j: usize| if j == 0 { empty() } else { &x.c[j - 1][..] };
    let dim_a = rank(&x.a);
    let dim_b: Vec<usize> = (0..=q).map(|i| rank(bi(i))).collect();
    let dim_c: Vec<usize> = (0..=r).map(|j| rank(cj(j))).collect();
    let mut rv = vec![vec![0u32; r + 1]; q + 1];
    let mut dv = vec![vec![0u32; r + 1]; q + 1];
    for i in 0..=q {
        for j in 0..=r {
            let sum = rank_of(&[bi(i), cj(j)]);
            let with_a = rank_of(&[&x.a, bi(i), cj(j)]);
            rv[i][j] = (dim_b[i] + dim_c[j] - sum) as u32;
            dv[i][j] = (dim_a + sum - with_a) as u32;
        }
    }
    let values = rv
        .iter()
        .zip(&dv)
        .map(|(a, d)| a.iter().zip(d).map(|(x, y)| x + y).collect())
        .collect();
    (
        RankTable { q, r, values: rv },
        RBarTable {
            q,
            r,
            values,
            delta_values: dv,
        },
    )
}

/// `r̄_ij` as the kernel dimension of `B_i ⊕ C_j → V/A`, with the quotient
/// taken explicitly by eliminating one coordinate of the line.
pub fn kernel_rbar_table(x: &Configuration) -> Result<Vec<Vec<u32>>> {
    let a =
        x.a.first()
            .ok_or_else(|| Error::NotAnOrbitInvariant("no line".into()))?;
    let pivot = a
        .iter()
        .position(|v| !v.is_zero())
        .ok_or_else(|| Error::NotAnOrbitInvariant("line is zero".into()))?;
    let project = |v: &Vec<Q>| -> Vec<Q> {
        let f = &v[pivot] / &a[pivot];
        v.iter()
            .zip(a)
            .enumerate()
            .filter(|(k, _)| *k != pivot)
            .map(|(_, (vk, ak))| vk - &f * ak)
            .collect()
    };
    let (q, r) = (x.b.len(), x.c.len());
    let mut out = vec![vec![0u32; r + 1]; q + 1];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let bi: &[Vec<Q>] = if i == 0 { &[] } else { &x.b[i - 1] };
            let cj: &[Vec<Q>] = if j == 0 { &[] } else { &x.c[j - 1] };
            let image: Vec<Vec<Q>> = bi.iter().chain(cj).map(&project).collect();
            *cell = (rank(bi) + rank(cj) - rank(&image)) as u32;
        }
    }
    Ok(out)
}

/// The decorated matrix whose orbit contains `x`.
pub fn identify_orbit(x: &Configuration) -> Result<DecoratedMatrix> {
    let bad = |why: &str| Error::NotAnOrbitInvariant(why.to_string());
    if x.b.is_empty() || x.c.is_empty() {
        return Err(bad("empty flag"));
    }
    if x.a.len() != 1 || rank(&x.a) != 1 {
        return Err(bad("A is not a line"));
    }
    let full = |f: &Vec<Vec<Vec<Q>>>| f.last().is_some_and(|top| rank(top) == x.n);
    if !full(&x.b) || !full(&x.c) {
        return Err(bad("a flag does not end at the whole space"));
    }
    for f in [&x.b, &x.c] {
        for w in f.windows(2) {
            if rank_of(&[&w[0], &w[1]]) != rank(&w[1]) {
                return Err(bad("flag is not nested"));
            }
        }
    }
    let (r, rbar) = geometric_rank_tables(x);
    orbit_from_tables(&r, &rbar)
}

/// Whether the configuration of `M` with line `Σ_S e_ij1` lies in the orbit
/// of `(M, [S])`.
pub fn uncircling_check(m: &TransportMatrix, s: &[Position]) -> Result<bool> {
    let x = standard_configuration(m, s)?;
    let expected = crate::flagcore::Decoration::new(normalize_decoration(s)?)?;
    let expected = DecoratedMatrix::new(m.clone(), expected)?;
    Ok(identify_orbit(&x)? == expected)
}
