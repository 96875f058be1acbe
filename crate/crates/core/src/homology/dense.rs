//! Plain dense Gaussian elimination over the rationals, kept independent of
//! the sparse engine so the two can check each other.

use num_traits::Zero;

use super::matrix::RationalMatrix;
use crate::scalar::Q;

pub fn dense_rank(m: &RationalMatrix) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in rank + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f: Q = &a[i][col] / &pivot;
            for j in col..cols {
                let d = &f * &a[rank][j];
                a[i][j] -= d;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
