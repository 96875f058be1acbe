//! The explicit contracting homotopy of the simplicial chain complex of the
//! free unital semilattice algebra on `k` generators:
//!
//! `s_n(a_0 ⊗ a_1 ⊗ ... ⊗ a_n) = sum_J a_0 u_J ⊗ u_J ⊗ a_1 ⊗ ... ⊗ a_n`, with `s_0 = 0`.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{u_element, AlgebraElement};
use crate::caps::{tensor_dim, Caps};
use crate::chains::{all_tuples, Chain, Tuple};
use crate::error::{Error, Result};
use crate::scalar::{format_q, q, Q};
use crate::semilattice::{free_unital_semilattice, same_table, subset_positions, SemigroupTable};

#[derive(Clone, Debug)]
pub struct HomotopyFree {
    k: usize,
    table: Arc<SemigroupTable>,
    // indexed by subset mask
    u: Vec<AlgebraElement>,
    u_terms: Vec<Vec<(u16, Q)>>,
    // left_products[t][mask] = e_t u_J
    left_products: Vec<Vec<Vec<(u16, Q)>>>,
}

/// `a ⊗ b` as a degree-1 chain.
pub fn tensor_pair(a: &AlgebraElement, b: &AlgebraElement) -> Result<Chain> {
    if !same_table(a.base(), b.base()) {
        return Err(Error::BaseMismatch);
    }
    let mut c = Chain::zero(a.base().clone(), 1);
    for (s, x) in a.terms() {
        for (t, y) in b.terms() {
            c.add_term(&[s, t], x * y)?;
        }
    }
    Ok(c)
}

impl HomotopyFree {
    /// Builds the free table and all `u_J`, and checks the properties the
    /// homotopy identity rests on: `u_J^2 = u_J`, `sum_J u_J^2 = e_{}`,
    /// `a u_J ⊗ u_J = u_J ⊗ u_J a` on basis elements, `|u_J| <= 2^(k-|J|)`.
    pub fn new(k: usize, caps: &Caps) -> Result<Self> {
        let table = Arc::new(free_unital_semilattice(k, caps)?);
        let u: Vec<AlgebraElement> =
            (0..1u64 << k).map(|mask| u_element(&table, k, mask)).collect::<Result<_>>()?;
        let h = HomotopyFree::from_parts(k, table, u)?;
        h.check_diagonal()?;
        Ok(h)
    }

    fn from_parts(k: usize, table: Arc<SemigroupTable>, u: Vec<AlgebraElement>) -> Result<Self> {
        let u_terms: Vec<Vec<(u16, Q)>> =
            u.iter().map(|e| e.terms().map(|(s, c)| (s as u16, c.clone())).collect()).collect();
        let left_products = (0..table.len())
            .map(|t| {
                let e_t = AlgebraElement::basis(table.clone(), t)?;
                u.iter()
                    .map(|uj| {
                        Ok(e_t.convolve(uj)?.terms().map(|(s, c)| (s as u16, c.clone())).collect())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HomotopyFree { k, table, u, u_terms, left_products })
    }

    fn check_diagonal(&self) -> Result<()> {
        let broken = |what: &str| Err(Error::DiagonalProperty(what.to_string()));
        let mut sum = AlgebraElement::zero(self.table.clone());
        for (mask, uj) in self.u.iter().enumerate() {
            let sq = uj.convolve(uj)?;
            if &sq != uj {
                return broken("u_J is not idempotent");
            }
            if uj.l1_norm() > q(1 << (self.k - (mask as u64).count_ones() as usize)) {
                return broken("norm bound");
            }
            sum = sum.try_add(&sq)?;
            for a in 0..self.table.len() {
                let e_a = AlgebraElement::basis(self.table.clone(), a)?;
                let lhs = tensor_pair(&e_a.convolve(uj)?, uj)?;
                let rhs = tensor_pair(uj, &uj.convolve(&e_a)?)?;
                if lhs != rhs {
                    return broken("flip");
                }
            }
        }
        if sum != AlgebraElement::basis(self.table.clone(), 0)? {
            return broken("sum of squares");
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn table(&self) -> &Arc<SemigroupTable> {
        &self.table
    }

    /// `u_J` for the subset with bit mask `mask`.
    pub fn u(&self, mask: u64) -> &AlgebraElement {
        &self.u[mask as usize]
    }

    /// The generators `({0}, ..., {k-1})` as a primitive tensor of degree `k-1`.
    pub fn generator_tensor(&self) -> Result<Chain> {
        if self.k == 0 {
            return Err(Error::DegreeTooLow { degree: 0, min: 1 });
        }
        let pos = subset_positions(self.k);
        let f: Vec<usize> = (0..self.k).map(|i| pos[1 << i]).collect();
        Chain::primitive_tensor(self.table.clone(), self.k - 1, &f)
    }

    /// `s_n`, sending degree `n` to degree `n+1`.
    pub fn apply_s(&self, n: usize, c: &Chain) -> Result<Chain> {
        if !same_table(c.base(), &self.table) {
            return Err(Error::BaseMismatch);
        }
        if c.module().is_some() {
            return Err(Error::ModuleMismatch);
        }
        if c.degree() != n {
            return Err(Error::ArityMismatch { expected: n + 1, found: c.arity() });
        }
        if n == 0 {
            return Ok(Chain::zero(self.table.clone(), 1));
        }
        let mut acc: HashMap<Tuple, Q> = HashMap::new();
        for (t, coeff) in c.terms() {
            let rest = &t[1..];
            for (mask, a0u) in self.left_products[t[0] as usize].iter().enumerate() {
                for (p, cp) in a0u {
                    let cp = cp * coeff;
                    for (r, cr) in &self.u_terms[mask] {
                        let mut key: Tuple = Tuple::with_capacity(t.len() + 1);
                        key.push(*p);
                        key.push(*r);
                        key.extend_from_slice(rest);
                        *acc.entry(key).or_insert_with(Q::zero) += &cp * cr;
                    }
                }
            }
        }
        Ok(Chain::zero(self.table.clone(), n + 1).with_accumulated(acc))
    }

    /// Checks `d_n s_n + s_{n-1} d_{n-1} = id` on every primitive tensor of
    /// degree `n >= 1`; returns the first tuple where it fails.
    pub fn verify_identity(&self, n: usize, caps: &Caps) -> Result<Option<Vec<usize>>> {
        if n == 0 {
            return Err(Error::DegreeTooLow { degree: 0, min: 1 });
        }
        let size = self.table.len();
        caps.check_dim(&format!("chain space of degree {}", n + 1), tensor_dim(size, n + 2))?;
        let tuples: Vec<Tuple> = all_tuples(size, size, n + 1).collect();
        let failures: Vec<Option<Vec<usize>>> = tuples
            .par_iter()
            .map(|t| {
                let idx: Vec<usize> = t.iter().map(|&x| x as usize).collect();
                let c = Chain::primitive_tensor(self.table.clone(), n, &idx)?;
                let lhs = self
                    .apply_s(n, &c)?
                    .boundary()?
                    .try_add(&self.apply_s(n - 1, &c.boundary()?)?)?;
                Ok((lhs != c).then_some(idx))
            })
            .collect::<Result<_>>()?;
        Ok(failures.into_iter().flatten().next())
    }

    /// `5^k`.
    pub fn norm_bound(&self) -> Q {
        q(5i64.pow(self.k as u32))
    }

    /// `sum_J |u_J|^2`.
    pub fn sum_u_norm_squared(&self) -> Q {
        self.u.iter().map(|u| {
            let n = u.l1_norm();
            &n * &n
        }).fold(Q::zero(), |a, b| a + b)
    }

    /// Exact `l1 -> l1` operator norm of `s_n`.
    pub fn s_norm(&self, n: usize, caps: &Caps) -> Result<Q> {
        let size = self.table.len();
        caps.check_dim(&format!("chain space of degree {n}"), tensor_dim(size, n + 1))?;
        operator_l1_norm(all_tuples(size, size, n + 1), |t| {
            let idx: Vec<usize> = t.iter().map(|&x| x as usize).collect();
            self.apply_s(n, &Chain::primitive_tensor(self.table.clone(), n, &idx)?)
        })
    }
}

/// Exact operator norm of a linear map between `l1` spaces with tuple bases:
/// the largest `l1` norm of the image of a basis vector.
pub fn operator_l1_norm<I, F>(domain: I, mut image: F) -> Result<Q>
where
    I: IntoIterator<Item = Tuple>,
    F: FnMut(&Tuple) -> Result<Chain>,
{
    let mut best = Q::zero();
    for t in domain {
        let norm = image(&t)?.l1_norm();
        if norm > best {
            best = norm;
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyRecord {
    pub k: usize,
    pub n: usize,
    pub identity_verified: bool,
    pub exact_norm: String,
    pub bound: String,
    pub within_bound: bool,
}

/// Identity check and exact norm of `s_n` for `1 <= n <= n_max`.
pub fn homotopy_report(k: usize, n_max: usize, caps: &Caps) -> Result<Vec<HomotopyRecord>> {
    let h = HomotopyFree::new(k, caps)?;
    (1..=n_max)
        .map(|n| {
            let norm = h.s_norm(n, caps)?;
            Ok(HomotopyRecord {
                k,
                n,
                identity_verified: h.verify_identity(n, caps)?.is_none(),
                within_bound: norm <= h.norm_bound(),
                exact_norm: format_q(&norm),
                bound: format!("5^{k}"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn s0_is_zero() {
        let h = HomotopyFree::new(2, &caps()).unwrap();
        let c = Chain::primitive_tensor(h.table().clone(), 0, &[3]).unwrap();
        let s = h.apply_s(0, &c).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.degree(), 1);
    }

    #[test]
    fn s1_k1_on_unit_tensor() {
        // u_{} = e_{} - e_{0}, u_{0} = e_{0}; s_1(e ⊗ e) = u_{} ⊗ u_{} ⊗ e + u_{0} ⊗ u_{0} ⊗ e
        let h = HomotopyFree::new(1, &caps()).unwrap();
        let t = h.table().clone();
        let c = Chain::primitive_tensor(t.clone(), 1, &[0, 0]).unwrap();
        let expected = Chain::from_terms(
            t,
            2,
            [
                (vec![0, 0, 0], q(1)),
                (vec![0, 1, 0], q(-1)),
                (vec![1, 0, 0], q(-1)),
                (vec![1, 1, 0], q(2)),
            ],
        )
        .unwrap();
        assert_eq!(h.apply_s(1, &c).unwrap(), expected);
    }

    #[test]
    fn identity_on_generator_tensor() {
        for k in 1..=3 {
            let h = HomotopyFree::new(k, &caps()).unwrap();
            let f = h.generator_tensor().unwrap();
            let n = k - 1;
            if n == 0 {
                continue;
            }
            let lhs = h
                .apply_s(n, &f)
                .unwrap()
                .boundary()
                .unwrap()
                .try_add(&h.apply_s(n - 1, &f.boundary().unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, f);
        }
    }

    #[test]
    fn identity_exhaustive_small() {
        let h = HomotopyFree::new(2, &caps()).unwrap();
        for n in 1..=2 {
            assert_eq!(h.verify_identity(n, &caps()).unwrap(), None);
        }
    }

    #[test]
    fn operator_norm_trivial_maps() {
        let h = HomotopyFree::new(1, &caps()).unwrap();
        let t = h.table().clone();
        let id = operator_l1_norm(all_tuples(2, 2, 2), |x| {
            Chain::primitive_tensor(t.clone(), 1, &[x[0] as usize, x[1] as usize])
        })
        .unwrap();
        assert_eq!(id, q(1));
        let zero = operator_l1_norm(all_tuples(2, 2, 2), |_| Ok(Chain::zero(t.clone(), 1))).unwrap();
        assert_eq!(zero, q(0));
    }

    #[test]
    fn norm_bounds_k2() {
        let h = HomotopyFree::new(2, &caps()).unwrap();
        assert!(h.sum_u_norm_squared() <= h.norm_bound());
        for n in 1..=2 {
            assert!(h.s_norm(n, &caps()).unwrap() <= q(25));
        }
    }

    #[test]
    fn rejects_foreign_chain() {
        let h = HomotopyFree::new(1, &caps()).unwrap();
        let other = Arc::new(free_unital_semilattice(2, &caps()).unwrap());
        let c = Chain::primitive_tensor(other, 1, &[0, 0]).unwrap();
        assert!(matches!(h.apply_s(1, &c), Err(Error::BaseMismatch)));
    }
}
