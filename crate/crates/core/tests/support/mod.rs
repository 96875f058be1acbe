//! Reference computations written without the library's chain or matrix code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses a free-semilattice label like `{0,2}` into a bit mask.
pub fn mask_of(label: &str) -> u64 {
    let inner = label.trim_start_matches('{').trim_end_matches('}');
    inner
        .split(',')
        .filter(|p| !p.is_empty())
        .map(|p| 1u64 << p.parse::<u32>().unwrap())
        .fold(0, |a, b| a | b)
}

/// Elements of the free semilattice algebra keyed by subset mask.
pub type MaskElement = BTreeMap<u64, i64>;

pub fn mask_mul(a: &MaskElement, b: &MaskElement) -> MaskElement {
    let mut out = MaskElement::new();
    for (x, cx) in a {
        for (y, cy) in b {
            *out.entry(x | y).or_insert(0) += cx * cy;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn mask_norm(a: &MaskElement) -> i64 {
    a.values().map(|v| v.abs()).sum()
}

/// `prod_{i in J} e_i prod_{i not in J} (e_{} - e_i)` by direct expansion.
pub fn u_oracle(k: usize, j: u64) -> MaskElement {
    let mut acc = MaskElement::from([(0, 1)]);
    for i in 0..k {
        let bit = 1u64 << i;
        let factor = if j & bit != 0 {
            MaskElement::from([(bit, 1)])
        } else {
            MaskElement::from([(0, 1), (bit, -1)])
        };
        acc = mask_mul(&acc, &factor);
    }
    acc
}

/// Dense matrix of `d_n : C_{n+1} -> C_n` for the algebra acting on itself,
/// built straight from the product table with big-endian tuple indexing.
pub fn dense_boundary(table: &[Vec<usize>], n: usize) -> Vec<Vec<i64>> {
    let s = table.len();
    let cols = s.pow(n as u32 + 2);
    let rows = s.pow(n as u32 + 1);
    let mut m = vec![vec![0i64; cols]; rows];
    let decode = |mut idx: usize, len: usize| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = idx % s;
            idx /= s;
        }
        t
    };
    let encode = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * s + x);
    for col in 0..cols {
        let a = decode(col, n + 2);
        for i in 0..=n {
            let mut face = a[..i].to_vec();
            face.push(table[a[i]][a[i + 1]]);
            face.extend_from_slice(&a[i + 2..]);
            m[encode(&face)][col] += if i % 2 == 0 { 1 } else { -1 };
        }
        let mut face = vec![table[a[n + 1]][a[0]]];
        face.extend_from_slice(&a[1..=n]);
        m[encode(&face)][col] += if (n + 1) % 2 == 0 { 1 } else { -1 };
    }
    m
}

/// Rank by textbook Gaussian elimination over the rationals.
pub fn oracle_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).max_by_key(|&i| a[i][c].abs()) else { break };
        if a[p][c].is_zero() {
            continue;
        }
        a.swap(rank, p);
        for i in rank + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[rank][c];
            for j in c..cols {
                let d = &f * &a[rank][j];
                a[i][j] -= d;
            }
        }
        rank += 1;
    }
    rank
}

/// `dim H_n(A, A)` for `1 <= n <= nmax` from the dense oracle.
pub fn oracle_homology(table: &[Vec<usize>], nmax: usize) -> Vec<usize> {
    let s = table.len();
    let ranks: Vec<usize> = (0..=nmax).map(|n| oracle_rank(&dense_boundary(table, n))).collect();
    (1..=nmax).map(|n| s.pow(n as u32 + 1) - ranks[n - 1] - ranks[n]).collect()
}
