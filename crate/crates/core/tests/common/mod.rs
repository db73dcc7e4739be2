//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library's enumeration or order code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use triflag::witness::linalg::rank;
use triflag::{Composition, DecoratedMatrix, Position};

pub type Q = BigRational;

/// Every `(b, c)` pair of compositions of `n` for `1 ≤ n ≤ max`.
pub fn all_shapes(max: u32) -> Vec<(Composition, Composition)> {
    let mut out = Vec::new();
    for n in 1..=max {
        for b in Composition::all_of(n) {
            for c in Composition::all_of(n) {
                out.push((b.clone(), c));
            }
        }
    }
    out
}

/// Odometer over all `q×r` arrays with entries up to `min(b_i, c_j)`,
/// filtered by the margins.
pub fn transport_matrices(b: &[u32], c: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let (q, r) = (b.len(), c.len());
    let caps: Vec<u32> = (0..q * r).map(|k| b[k / r].min(c[k % r])).collect();
    let mut cur = vec![0u32; q * r];
    let mut out = Vec::new();
    loop {
        let rows_ok = (0..q).all(|i| (0..r).map(|j| cur[i * r + j]).sum::<u32>() == b[i]);
        let cols_ok = (0..r).all(|j| (0..q).map(|i| cur[i * r + j]).sum::<u32>() == c[j]);
        if rows_ok && cols_ok {
            out.push((0..q).map(|i| cur[i * r..(i + 1) * r].to_vec()).collect());
        }
        let mut k = 0;
        while k < cur.len() && cur[k] == caps[k] {
            cur[k] = 0;
            k += 1;
        }
        if k == cur.len() {
            return out;
        }
        cur[k] += 1;
    }
}

/// Nonempty subsets of the support that form a strict NE→SW staircase.
pub fn staircases(m: &[Vec<u32>]) -> Vec<Vec<Position>> {
    let support: Vec<Position> = m
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(move |(j, _)| Position::new(i + 1, j + 1))
        })
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << support.len()) {
        let mut s: Vec<Position> = (0..support.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| support[k])
            .collect();
        s.sort();
        if s.windows(2).all(|w| w[0].i < w[1].i && w[0].j > w[1].j) {
            out.push(s);
        }
    }
    out
}

/// All orbits of a shape as `(matrix rows, decoration)` pairs.
pub fn orbits(b: &Composition, c: &Composition) -> BTreeSet<(Vec<Vec<u32>>, Vec<Position>)> {
    let mut out = BTreeSet::new();
    for m in transport_matrices(b.parts(), c.parts()) {
        for s in staircases(&m) {
            out.insert((m.clone(), s));
        }
    }
    out
}

pub fn key(x: &DecoratedMatrix) -> (Vec<Vec<u32>>, Vec<Position>) {
    (x.matrix().rows().to_vec(), x.delta().positions().to_vec())
}

/// `r_ij` by direct summation.
pub fn r(m: &[Vec<u32>], i: usize, j: usize) -> u32 {
    m[..i].iter().map(|row| row[..j].iter().sum::<u32>()).sum()
}

/// `δ_ij = 1` iff every circled `(k, l)` has `k ≤ i` or `l ≤ j`.
pub fn delta(d: &[Position], i: usize, j: usize) -> u32 {
    d.iter().all(|p| p.i <= i || p.j <= j) as u32
}

/// Rank order on decorated matrices straight from the definitions.
pub fn leq(x: &DecoratedMatrix, y: &DecoratedMatrix) -> bool {
    let (mx, my) = (x.matrix().rows(), y.matrix().rows());
    let (dx, dy) = (x.delta().positions(), y.delta().positions());
    (0..=mx.len()).all(|i| {
        (0..=mx[0].len()).all(|j| {
            let (a, b) = (r(mx, i, j), r(my, i, j));
            a >= b && a + delta(dx, i, j) >= b + delta(dy, i, j)
        })
    })
}

/// Covers of a finite order given as a `≤` predicate, by the naive
/// `O(n³)` transitive reduction.
pub fn transitive_reduction<T>(
    items: &[T],
    le: impl Fn(&T, &T) -> bool,
) -> BTreeSet<(usize, usize)> {
    let n = items.len();
    let lt: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| x != y && le(&items[x], &items[y])).collect())
        .collect();
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            if lt[x][y] && !(0..n).any(|z| lt[x][z] && lt[z][y]) {
                out.insert((x, y));
            }
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n);
            out.push(q);
        }
    }
    out
}

pub fn length(w: &[usize]) -> usize {
    (0..w.len())
        .flat_map(|a| (a + 1..w.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| w[a] > w[b])
        .count()
}

/// Bruhat covers of `S_n`: `w ⋖ w·(a b)` whenever the length goes up by one.
pub fn bruhat_covers(n: usize) -> BTreeSet<(Vec<usize>, Vec<usize>)> {
    let mut out = BTreeSet::new();
    for w in permutations(n) {
        for a in 0..n {
            for b in a + 1..n {
                let mut y = w.clone();
                y.swap(a, b);
                if length(&y) == length(&w) + 1 {
                    out.insert((w.clone(), y));
                }
            }
        }
    }
    out
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    Q::new(
        rng.gen_range(-9i64..=9).into(),
        rng.gen_range(1i64..=5).into(),
    )
}

/// A seeded random invertible `n×n` rational matrix.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Q>> {
    loop {
        let g: Vec<Vec<Q>> = (0..n)
            .map(|_| (0..n).map(|_| random_q(rng)).collect())
            .collect();
        if rank(&g) == n {
            return g;
        }
    }
}
