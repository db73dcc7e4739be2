//! Exact rank of rational vector lists by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

/// Scales a rational vector by the lcm of its denominators.
pub fn integer_row(v: &[Q]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Rank of an integer matrix given as rows, by Bareiss elimination.
pub fn integer_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                debug_assert!((&num % &prev).is_zero());
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Dimension of the span of `vectors`.
pub fn rank(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    integer_rank(vectors.iter().map(|v| integer_row(v)).collect())
}

/// `rank` of the concatenation of several generator lists.
pub fn rank_of(parts: &[&[Vec<Q>]]) -> usize {
    let all: Vec<Vec<Q>> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
    rank(&all)
}

pub fn unit(n: usize, k: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[k] = Q::one();
    v
}

/// `m · v` for a square matrix given by rows.
pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![q(0, 1), q(0, 1)]]), 0);
        assert_eq!(rank(&[vec![q(1, 2), q(1, 3)], vec![q(3, 1), q(2, 1)]]), 1);
        assert_eq!(rank(&[vec![q(1, 1), q(2, 1)], vec![q(1, 3), q(1, 1)]]), 2);
        let rows = vec![
            vec![q(0, 1), q(2, 1), q(4, 1), q(1, 1)],
            vec![q(0, 1), q(1, 1), q(2, 1), q(1, 2)],
            vec![q(1, 1), q(0, 1), q(1, 1), q(0, 1)],
        ];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn bareiss_matches_rational_elimination_on_vandermonde() {
        let rows: Vec<Vec<Q>> = (1..=5i64)
            .map(|x| (0..5u32).map(|p| q(x.pow(p), 1)).collect())
            .collect();
        assert_eq!(rank(&rows), 5);
        let mut dup = rows.clone();
        dup.push(
            rows[0]
                .iter()
                .zip(&rows[3])
                .map(|(a, b)| a - b * q(2, 7))
                .collect(),
        );
        assert_eq!(rank(&dup), 5);
    }
}
