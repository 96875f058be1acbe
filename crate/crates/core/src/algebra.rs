//! The convolution algebra of a finite semigroup over exact rationals.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::scalar::{abs_sum, q_one, Q};
use crate::semilattice::{free_unital_semilattice, same_table, subset_positions, SemigroupTable};

/// A finitely supported element `sum_s c_s e_s`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    base: Arc<SemigroupTable>,
    coeffs: BTreeMap<usize, Q>,
}

impl AlgebraElement {
    pub fn zero(base: Arc<SemigroupTable>) -> Self {
        AlgebraElement { base, coeffs: BTreeMap::new() }
    }

    /// `e_s`.
    pub fn basis(base: Arc<SemigroupTable>, s: usize) -> Result<Self> {
        base.check_index(s)?;
        Ok(AlgebraElement { base, coeffs: BTreeMap::from([(s, q_one())]) })
    }

    pub fn from_terms(
        base: Arc<SemigroupTable>,
        terms: impl IntoIterator<Item = (usize, Q)>,
    ) -> Result<Self> {
        let mut out = AlgebraElement::zero(base);
        for (s, c) in terms {
            out.base.check_index(s)?;
            out.add_term(s, c);
        }
        Ok(out)
    }

    pub fn base(&self) -> &Arc<SemigroupTable> {
        &self.base
    }

    pub fn coeff(&self, s: usize) -> Q {
        self.coeffs.get(&s).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coeffs.iter().map(|(&s, c)| (s, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, s: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(s).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = AlgebraElement::zero(self.base.clone());
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(&s, v)| (s, v * c)).collect();
        }
        out
    }

    /// Bilinear extension of `e_s e_t = e_(st)`.
    pub fn convolve(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if !same_table(&self.base, &other.base) {
            return Err(Error::BaseMismatch);
        }
        let mut out = AlgebraElement::zero(self.base.clone());
        for (&s, a) in &self.coeffs {
            for (&t, b) in &other.coeffs {
                out.add_term(self.base.mul(s, t), a * b);
            }
        }
        Ok(out)
    }

    pub fn l1_norm(&self) -> Q {
        abs_sum(self.coeffs.values())
    }

    fn combine(mut self, other: &AlgebraElement, sign: bool) -> Result<Self> {
        if !same_table(&self.base, &other.base) {
            return Err(Error::BaseMismatch);
        }
        for (&s, c) in &other.coeffs {
            self.add_term(s, if sign { c.clone() } else { -c.clone() });
        }
        Ok(self)
    }

    pub fn try_add(self, other: &AlgebraElement) -> Result<Self> {
        self.combine(other, true)
    }

    pub fn try_sub(self, other: &AlgebraElement) -> Result<Self> {
        self.combine(other, false)
    }
}

impl Add<&AlgebraElement> for AlgebraElement {
    type Output = AlgebraElement;

    /// Panics on a base mismatch; use [`AlgebraElement::try_add`] to handle it.
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("adding elements over different tables")
    }
}

impl Sub<&AlgebraElement> for AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_sub(rhs).expect("subtracting elements over different tables")
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        let coeffs = self.coeffs.into_iter().map(|(s, c)| (s, -c)).collect();
        AlgebraElement { base: self.base, coeffs }
    }
}

/// `u_J = prod_{i in J} e_i * prod_{k not in J} (e_{} - e_k)` in the algebra of the
/// free unital semilattice on `k` generators, with `J` given as a bit mask.
pub fn u_element(free: &Arc<SemigroupTable>, k: usize, j_mask: u64) -> Result<AlgebraElement> {
    if free.len() != 1usize << k || k >= 64 {
        return Err(Error::BaseMismatch);
    }
    if j_mask >> k != 0 {
        return Err(Error::IndexOutOfRange { index: j_mask as usize, len: 1 << k });
    }
    let pos = subset_positions(k);
    let unit = AlgebraElement::basis(free.clone(), pos[0])?;
    let mut acc = unit.clone();
    for i in 0..k {
        let e_i = AlgebraElement::basis(free.clone(), pos[1 << i])?;
        let factor = if j_mask >> i & 1 == 1 { e_i } else { unit.clone() - &e_i };
        acc = acc.convolve(&factor)?;
    }
    Ok(acc)
}

/// Convenience wrapper building its own free table.
pub fn u_element_standalone(k: usize, j_mask: u64, caps: &Caps) -> Result<AlgebraElement> {
    let free = Arc::new(free_unital_semilattice(k, caps)?);
    u_element(&free, k, j_mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use crate::semilattice::chain_semilattice;

    fn free(k: usize) -> Arc<SemigroupTable> {
        Arc::new(free_unital_semilattice(k, &Caps::default()).unwrap())
    }

    #[test]
    fn basis_elements() {
        let f2 = free(2);
        let unit = AlgebraElement::basis(f2.clone(), 0).unwrap();
        let a = AlgebraElement::from_terms(f2.clone(), [(1, q(3)), (3, q(-2))]).unwrap();
        assert_eq!(unit.convolve(&a).unwrap(), a);
        assert_eq!(a.convolve(&unit).unwrap(), a);
        let c3 = Arc::new(chain_semilattice(3, &Caps::default()).unwrap());
        assert_eq!(AlgebraElement::basis(c3.clone(), 2).unwrap().l1_norm(), q(1));
        assert!(matches!(
            AlgebraElement::basis(c3, 3),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        ));
    }

    #[test]
    fn generators_multiply_to_union() {
        let f2 = free(2);
        let e0 = AlgebraElement::basis(f2.clone(), 1).unwrap();
        let e1 = AlgebraElement::basis(f2.clone(), 2).unwrap();
        assert_eq!(e0.convolve(&e1).unwrap(), AlgebraElement::basis(f2, 3).unwrap());
    }

    #[test]
    fn complement_idempotent() {
        let f2 = free(2);
        let unit = AlgebraElement::basis(f2.clone(), 0).unwrap();
        let ek = AlgebraElement::basis(f2.clone(), 2).unwrap();
        let p = unit - &ek;
        assert_eq!(p.convolve(&p).unwrap(), p);
        assert_eq!(p.l1_norm(), q(2));
        assert_eq!(AlgebraElement::zero(f2).l1_norm(), q(0));
    }

    #[test]
    fn base_mismatch() {
        let a = AlgebraElement::basis(free(1), 0).unwrap();
        let b = AlgebraElement::basis(free(2), 0).unwrap();
        assert!(matches!(a.convolve(&b), Err(Error::BaseMismatch)));
    }

    #[test]
    fn u_examples() {
        let f1 = free(1);
        let u_empty = u_element(&f1, 1, 0).unwrap();
        assert_eq!(u_empty, AlgebraElement::from_terms(f1.clone(), [(0, q(1)), (1, q(-1))]).unwrap());
        assert_eq!(u_empty.l1_norm(), q(2));

        let f2 = free(2);
        // e_0 (e_{} - e_1) = e_{0} - e_{0,1}
        let u0 = u_element(&f2, 2, 0b01).unwrap();
        assert_eq!(u0, AlgebraElement::from_terms(f2.clone(), [(1, q(1)), (3, q(-1))]).unwrap());
        assert_eq!(u_element(&f2, 2, 0b11).unwrap(), AlgebraElement::basis(f2.clone(), 3).unwrap());
        assert!(u_element(&f2, 2, 0b100).is_err());
    }

    #[test]
    fn u_properties_k3() {
        let f3 = free(3);
        let pos = subset_positions(3);
        let mut sum = AlgebraElement::zero(f3.clone());
        for j in 0..8u64 {
            let u = u_element(&f3, 3, j).unwrap();
            let sq = u.convolve(&u).unwrap();
            assert_eq!(sq, u);
            sum = sum + &sq;
            let bound = q(1 << (3 - j.count_ones()));
            assert!(u.l1_norm() <= bound);
            for i in 0..3 {
                let ei = AlgebraElement::basis(f3.clone(), pos[1 << i]).unwrap();
                let prod = ei.convolve(&u).unwrap();
                if j >> i & 1 == 1 {
                    assert_eq!(prod, u);
                } else {
                    assert!(prod.is_zero());
                }
            }
        }
        assert_eq!(sum, AlgebraElement::basis(f3, 0).unwrap());
    }
}
