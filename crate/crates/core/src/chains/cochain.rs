use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{tuple_at, Bimodule};
use crate::caps::{tensor_dim, Caps};
use crate::error::{Error, Result};
use crate::homology::matrix::RationalMatrix;
use crate::scalar::Q;
use crate::semilattice::SemigroupTable;

/// A dense `n`-cochain: a value in `M` for every `n`-tuple of table elements.
///
/// Coordinate `(m, t)` sits at `m * |S|^n + index(t)`, so the coordinates line
/// up with the chain basis `e_m ⊗ e_{t_1} ⊗ ... ⊗ e_{t_n}` of `M ⊗ A^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    base: Arc<SemigroupTable>,
    module: Arc<Bimodule>,
    degree: usize,
    values: Vec<Q>,
}

fn flat_index(t: &[usize], base: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * base + x)
}

impl Cochain {
    pub fn zero(base: Arc<SemigroupTable>, module: Arc<Bimodule>, degree: usize) -> Result<Self> {
        module.check_table(&base)?;
        let len = module.dim() * base.len().pow(degree as u32);
        Ok(Cochain { base, module, degree, values: vec![Q::zero(); len] })
    }

    pub fn from_values(
        base: Arc<SemigroupTable>,
        module: Arc<Bimodule>,
        degree: usize,
        values: Vec<Q>,
    ) -> Result<Self> {
        let mut c = Cochain::zero(base, module, degree)?;
        if values.len() != c.values.len() {
            return Err(Error::ArityMismatch { expected: c.values.len(), found: values.len() });
        }
        c.values = values;
        Ok(c)
    }

    pub fn base(&self) -> &Arc<SemigroupTable> {
        &self.base
    }

    pub fn module(&self) -> &Arc<Bimodule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    fn stride(&self) -> usize {
        self.base.len().pow(self.degree as u32)
    }

    fn check_tuple(&self, t: &[usize]) -> Result<()> {
        if t.len() != self.degree {
            return Err(Error::ArityMismatch { expected: self.degree, found: t.len() });
        }
        t.iter().try_for_each(|&x| self.base.check_index(x))
    }

    /// `F(a_1, ..., a_n)` in module coordinates.
    pub fn value(&self, t: &[usize]) -> Result<Vec<Q>> {
        self.check_tuple(t)?;
        let at = flat_index(t, self.base.len());
        let stride = self.stride();
        Ok((0..self.module.dim()).map(|m| self.values[m * stride + at].clone()).collect())
    }

    pub fn set(&mut self, t: &[usize], m: usize, v: Q) -> Result<()> {
        self.check_tuple(t)?;
        if m >= self.module.dim() {
            return Err(Error::IndexOutOfRange { index: m, len: self.module.dim() });
        }
        let at = m * self.stride() + flat_index(t, self.base.len());
        self.values[at] = v;
        Ok(())
    }

    /// `(δF)(a_1..a_{n+1}) = a_1·F(a_2..) + sum_j (-1)^j F(..a_j a_{j+1}..) + (-1)^{n+1} F(a_1..a_n)·a_{n+1}`.
    pub fn coboundary(&self) -> Result<Cochain> {
        let n = self.degree;
        let size = self.base.len();
        let dim = self.module.dim();
        let mut out = Cochain::zero(self.base.clone(), self.module.clone(), n + 1)?;
        let out_stride = out.stride();
        for a_index in 0..size.pow(n as u32 + 1) {
            let a: Vec<usize> = tuple_at(a_index, size, n + 1).iter().map(|&x| x as usize).collect();
            let mut g = vec![Q::zero(); dim];
            let first = self.value(&a[1..])?;
            for (m, fm) in first.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (r, c) in self.module.left_apply(a[0], m) {
                    g[*r] += c * fm;
                }
            }
            for j in 1..=n {
                let mut contracted = Vec::with_capacity(n);
                contracted.extend_from_slice(&a[..j - 1]);
                contracted.push(self.base.mul(a[j - 1], a[j]));
                contracted.extend_from_slice(&a[j + 1..]);
                let v = self.value(&contracted)?;
                for (gm, vm) in g.iter_mut().zip(v) {
                    if j % 2 == 0 {
                        *gm += vm;
                    } else {
                        *gm -= vm;
                    }
                }
            }
            let last = self.value(&a[..n])?;
            let sign = if (n + 1) % 2 == 0 { Q::one() } else { -Q::one() };
            for (m, fm) in last.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (r, c) in self.module.right_apply(a[n], m) {
                    g[*r] += c * fm * &sign;
                }
            }
            for (m, v) in g.into_iter().enumerate() {
                out.values[m * out_stride + a_index] = v;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// Matrix of `δ_n : C^n(A, M) -> C^{n+1}(A, M)` in the coordinates of [`Cochain`].
pub fn coboundary_matrix(
    base: &SemigroupTable,
    module: &Bimodule,
    n: usize,
    caps: &Caps,
) -> Result<RationalMatrix> {
    module.check_table(base)?;
    let size = base.len();
    let dim = module.dim();
    let rows = dim as u128 * tensor_dim(size, n + 1);
    caps.check_dim(&format!("cochain space of degree {}", n + 1), rows)?;
    let in_stride = size.pow(n as u32);
    let out_stride = size.pow(n as u32 + 1);
    let cols = dim * in_stride;
    let sign_last = if (n + 1) % 2 == 0 { Q::one() } else { -Q::one() };

    // One batch of (row, col, value) triplets per tuple (a_1..a_{n+1}).
    let batches: Vec<Vec<(usize, usize, Q)>> = (0..out_stride)
        .into_par_iter()
        .map(|a_index| {
            let a: Vec<usize> = tuple_at(a_index, size, n + 1).iter().map(|&x| x as usize).collect();
            let mut out = Vec::new();
            let tail = flat_index(&a[1..], size);
            for (r, c, v) in module.left(a[0]).entries() {
                out.push((r * out_stride + a_index, c * in_stride + tail, v.clone()));
            }
            for j in 1..=n {
                let mut contracted = Vec::with_capacity(n);
                contracted.extend_from_slice(&a[..j - 1]);
                contracted.push(base.mul(a[j - 1], a[j]));
                contracted.extend_from_slice(&a[j + 1..]);
                let at = flat_index(&contracted, size);
                let v = if j % 2 == 0 { Q::one() } else { -Q::one() };
                for m in 0..dim {
                    out.push((m * out_stride + a_index, m * in_stride + at, v.clone()));
                }
            }
            let head = flat_index(&a[..n], size);
            for (r, c, v) in module.right(a[n]).entries() {
                out.push((r * out_stride + a_index, c * in_stride + head, v * &sign_last));
            }
            out
        })
        .collect();
    let mut m = RationalMatrix::zeros(rows as usize, cols);
    for (r, c, v) in batches.into_iter().flatten() {
        m.add_entry(r, c, v);
    }
    Ok(m)
}
