//! Hochschild chains and cochains over the convolution algebra of a table.
//!
//! A degree-`n` chain lives in `M ⊗ A^{⊗n}` and is stored as a sparse map
//! from `(n+1)`-tuples to rationals. Slot 0 holds either an element of the
//! table (coefficients in `A` itself) or a basis index of a [`Bimodule`].
//! Tuples are ordered lexicographically with slot 0 most significant; this
//! is also the row/column order of every extracted matrix.

mod bimodule;
mod cochain;

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use smallvec::SmallVec;

pub use bimodule::Bimodule;
pub use cochain::{coboundary_matrix, Cochain};

use crate::caps::{tensor_dim, Caps};
use crate::error::{Error, Result};
use crate::homology::matrix::RationalMatrix;
use crate::scalar::{abs_sum, Q};
use crate::semilattice::{same_table, Morphism, SemigroupTable};

use bimodule::same_module;

/// A basis tensor `e_{x_0} ⊗ ... ⊗ e_{x_n}` identified with its index tuple.
pub type Tuple = SmallVec<[u16; 8]>;

pub fn tuple_of(indices: &[usize]) -> Tuple {
    indices.iter().map(|&i| i as u16).collect()
}

/// Position of `t` in the canonical order. Slot 0 ranges over `slot0` values
/// and the remaining slots over `base` values.
pub fn tuple_index(t: &[u16], slot0: usize, base: usize) -> usize {
    debug_assert!(t.is_empty() || (t[0] as usize) < slot0);
    t.iter().fold(0, |acc, &x| acc * base + x as usize)
}

/// Inverse of [`tuple_index`] for tuples of the given arity.
pub fn tuple_at(mut index: usize, base: usize, arity: usize) -> Tuple {
    let mut t: Tuple = SmallVec::from_elem(0, arity);
    for slot in (1..arity).rev() {
        t[slot] = (index % base) as u16;
        index /= base;
    }
    if arity > 0 {
        t[0] = index as u16;
    }
    t
}

/// Number of tuples of the given arity.
pub fn tuple_count(slot0: usize, base: usize, arity: usize) -> usize {
    if arity == 0 {
        1
    } else {
        slot0 * base.pow(arity as u32 - 1)
    }
}

/// Every tuple of the given arity in canonical order.
pub fn all_tuples(slot0: usize, base: usize, arity: usize) -> impl Iterator<Item = Tuple> {
    (0..tuple_count(slot0, base, arity)).map(move |i| tuple_at(i, base, arity))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    base: Arc<SemigroupTable>,
    module: Option<Arc<Bimodule>>,
    degree: usize,
    coeffs: BTreeMap<Tuple, Q>,
}

impl Chain {
    pub fn zero(base: Arc<SemigroupTable>, degree: usize) -> Self {
        Chain { base, module: None, degree, coeffs: BTreeMap::new() }
    }

    /// Zero chain in `M ⊗ A^{⊗degree}`.
    pub fn zero_with_module(
        base: Arc<SemigroupTable>,
        module: Arc<Bimodule>,
        degree: usize,
    ) -> Result<Self> {
        module.check_table(&base)?;
        Ok(Chain { base, module: Some(module), degree, coeffs: BTreeMap::new() })
    }

    /// The primitive tensor `e_{t_0} ⊗ ... ⊗ e_{t_degree}` with coefficient 1.
    pub fn primitive_tensor(base: Arc<SemigroupTable>, degree: usize, tuple: &[usize]) -> Result<Self> {
        let mut c = Chain::zero(base, degree);
        c.add_term(tuple, Q::one())?;
        Ok(c)
    }

    pub fn from_terms(
        base: Arc<SemigroupTable>,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Q)>,
    ) -> Result<Self> {
        let mut c = Chain::zero(base, degree);
        for (t, v) in terms {
            c.add_term(&t, v)?;
        }
        Ok(c)
    }

    pub fn base(&self) -> &Arc<SemigroupTable> {
        &self.base
    }

    pub fn module(&self) -> Option<&Arc<Bimodule>> {
        self.module.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.degree + 1
    }

    fn empty_like(&self, degree: usize) -> Chain {
        Chain {
            base: self.base.clone(),
            module: self.module.clone(),
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    fn slot0_len(&self) -> usize {
        self.module.as_ref().map_or(self.base.len(), |m| m.dim())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tuple, &Q)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, tuple: &[usize]) -> Q {
        self.coeffs.get(&tuple_of(tuple)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn l1_norm(&self) -> Q {
        abs_sum(self.coeffs.values())
    }

    /// Adds `value` to the coefficient of `tuple`, checking arity and ranges.
    pub fn add_term(&mut self, tuple: &[usize], value: Q) -> Result<()> {
        if tuple.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: tuple.len() });
        }
        let slot0 = self.slot0_len();
        for (i, &x) in tuple.iter().enumerate() {
            let len = if i == 0 { slot0 } else { self.base.len() };
            if x >= len {
                return Err(Error::IndexOutOfRange { index: x, len });
            }
        }
        self.push(tuple_of(tuple), value);
        Ok(())
    }

    pub(crate) fn push(&mut self, tuple: Tuple, value: Q) {
        if value.is_zero() {
            return;
        }
        match self.coeffs.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Replaces the coefficients with an accumulated map, dropping zeros.
    pub(crate) fn with_accumulated(mut self, acc: HashMap<Tuple, Q>) -> Self {
        self.coeffs = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self
    }

    fn check_compatible(&self, other: &Chain) -> Result<()> {
        if !same_table(&self.base, &other.base) {
            return Err(Error::BaseMismatch);
        }
        if !same_module(&self.module, &other.module) {
            return Err(Error::ModuleMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        Ok(())
    }

    pub fn try_add(mut self, other: &Chain) -> Result<Chain> {
        self.check_compatible(other)?;
        for (t, v) in &other.coeffs {
            self.push(t.clone(), v.clone());
        }
        Ok(self)
    }

    pub fn try_sub(mut self, other: &Chain) -> Result<Chain> {
        self.check_compatible(other)?;
        for (t, v) in &other.coeffs {
            self.push(t.clone(), -v.clone());
        }
        Ok(self)
    }

    pub fn scale(&self, c: &Q) -> Chain {
        let mut out = self.empty_like(self.degree);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(t, v)| (t.clone(), v * c)).collect();
        }
        out
    }

    /// The Hochschild boundary `d_{n-1}` of this degree-`n` chain.
    pub fn boundary(&self) -> Result<Chain> {
        if self.degree == 0 {
            return Err(Error::DegreeTooLow { degree: 0, min: 1 });
        }
        let mut acc: HashMap<Tuple, Q> = HashMap::new();
        for (t, v) in &self.coeffs {
            boundary_terms(&self.base, self.module.as_deref(), t, &mut |face, c| {
                *acc.entry(face).or_insert_with(Q::zero) += c * v;
            });
        }
        let out = self.empty_like(self.degree - 1);
        Ok(out.with_accumulated(acc))
    }

    /// `b · c`: left multiplication of slot 0 by the basis element `e_b`.
    pub fn act_left(&self, b: usize) -> Result<Chain> {
        self.base.check_index(b)?;
        let mut out = self.empty_like(self.degree);
        for (t, v) in &self.coeffs {
            let mut image = t.clone();
            match &self.module {
                None => {
                    image[0] = self.base.mul(b, t[0] as usize) as u16;
                    out.push(image, v.clone());
                }
                Some(m) => {
                    for (r, c) in m.left_apply(b, t[0] as usize) {
                        image[0] = *r as u16;
                        out.push(image.clone(), c * v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `θ^{⊗(n+1)}` applied entrywise.
    pub fn pushforward(&self, theta: &Morphism) -> Result<Chain> {
        if self.module.is_some() {
            return Err(Error::ModuleMismatch);
        }
        if !same_table(&self.base, theta.source()) {
            return Err(Error::BaseMismatch);
        }
        Ok(self.pushforward_by(theta.target().clone(), theta.map()))
    }

    /// Entrywise relabeling by a raw element map into `target`. The map must
    /// be a morphism for the result to mean anything.
    pub(crate) fn pushforward_by(&self, target: Arc<SemigroupTable>, map: &[usize]) -> Chain {
        let mut acc: HashMap<Tuple, Q> = HashMap::with_capacity(self.coeffs.len());
        for (t, v) in &self.coeffs {
            let image: Tuple = t.iter().map(|&x| map[x as usize] as u16).collect();
            *acc.entry(image).or_insert_with(Q::zero) += v;
        }
        Chain::zero(target, self.degree).with_accumulated(acc)
    }

    /// Coordinates in the canonical basis of the chain space.
    pub fn to_vector(&self) -> Vec<Q> {
        let slot0 = self.slot0_len();
        let n = self.base.len();
        let dim = slot0 * n.pow(self.degree as u32);
        let mut v = vec![Q::zero(); dim];
        for (t, c) in &self.coeffs {
            v[tuple_index(t, slot0, n)] = c.clone();
        }
        v
    }

    pub fn from_vector(
        base: Arc<SemigroupTable>,
        module: Option<Arc<Bimodule>>,
        degree: usize,
        v: &[Q],
    ) -> Result<Chain> {
        let slot0 = module.as_ref().map_or(base.len(), |m| m.dim());
        let n = base.len();
        let dim = tuple_count(slot0, n, degree + 1);
        if v.len() != dim {
            return Err(Error::ArityMismatch { expected: dim, found: v.len() });
        }
        let mut c = Chain { base, module, degree, coeffs: BTreeMap::new() };
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                c.push(tuple_at(i, n, degree + 1), x.clone());
            }
        }
        Ok(c)
    }
}

impl Add<&Chain> for Chain {
    type Output = Chain;

    fn add(self, rhs: &Chain) -> Chain {
        self.try_add(rhs).expect("adding incompatible chains")
    }
}

impl Sub<&Chain> for Chain {
    type Output = Chain;

    fn sub(self, rhs: &Chain) -> Chain {
        self.try_sub(rhs).expect("subtracting incompatible chains")
    }
}

/// Emits the terms of `d(x ⊗ a_1 ⊗ ... ⊗ a_{n+1})`:
///
/// `x a_1 ⊗ a_2 ⊗ ... + sum_j (-1)^j x ⊗ ... ⊗ a_j a_{j+1} ⊗ ... + (-1)^{n+1} a_{n+1} x ⊗ a_1 ⊗ ... ⊗ a_n`
fn boundary_terms(
    base: &SemigroupTable,
    module: Option<&Bimodule>,
    t: &[u16],
    emit: &mut impl FnMut(Tuple, &Q),
) {
    let arity = t.len();
    debug_assert!(arity >= 2);
    let last = arity - 1;
    let plus = Q::one();
    let minus = -Q::one();
    let sign = |j: usize| if j % 2 == 0 { &plus } else { &minus };

    // first face: x a_1
    let mut face: Tuple = t[1..].iter().copied().collect();
    match module {
        None => {
            face[0] = base.mul(t[0] as usize, t[1] as usize) as u16;
            emit(face, &plus);
        }
        Some(m) => {
            for (r, c) in m.right_apply(t[1] as usize, t[0] as usize) {
                face[0] = *r as u16;
                emit(face.clone(), c);
            }
        }
    }
    // inner faces
    for j in 1..last {
        let mut face: Tuple = SmallVec::with_capacity(arity - 1);
        face.extend_from_slice(&t[..j]);
        face.push(base.mul(t[j] as usize, t[j + 1] as usize) as u16);
        face.extend_from_slice(&t[j + 2..]);
        emit(face, sign(j));
    }
    // last face: a_{n+1} x
    let mut face: Tuple = t[..last].iter().copied().collect();
    let s = sign(last);
    match module {
        None => {
            face[0] = base.mul(t[last] as usize, t[0] as usize) as u16;
            emit(face, s);
        }
        Some(m) => {
            for (r, c) in m.left_apply(t[last] as usize, t[0] as usize) {
                face[0] = *r as u16;
                emit(face.clone(), &(c * s));
            }
        }
    }
}

/// Matrix of `d_n : C_{n+1} -> C_n` in the primitive-tensor bases.
pub fn boundary_matrix(
    base: &SemigroupTable,
    n: usize,
    module: Option<&Bimodule>,
    caps: &Caps,
) -> Result<RationalMatrix> {
    if let Some(m) = module {
        m.check_table(base)?;
    }
    let size = base.len();
    let slot0 = module.map_or(size, Bimodule::dim);
    let cols = slot0 as u128 * tensor_dim(size, n + 1);
    caps.check_dim(&format!("chain space of degree {}", n + 1), cols)?;
    let rows = slot0 * size.pow(n as u32);
    let columns: Vec<Vec<(usize, Q)>> = (0..cols as usize)
        .into_par_iter()
        .map(|j| {
            let t = tuple_at(j, size, n + 2);
            let mut col = Vec::new();
            boundary_terms(base, module, &t, &mut |face, c| {
                col.push((tuple_index(&face, slot0, size), c.clone()));
            });
            col
        })
        .collect();
    Ok(RationalMatrix::from_columns(rows, columns))
}

/// Outcome of checking that `d_n` commutes with left multiplication on slot 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMapCheck {
    pub holds: bool,
    /// First primitive tensor where `d(b·c) != b·d(c)`.
    pub witness: Option<Vec<usize>>,
}

/// Checks `d_n(b·c) = b·d_n(c)` on every primitive tensor `c` of degree `n+1`.
pub fn module_map_check(
    base: &Arc<SemigroupTable>,
    n: usize,
    b: usize,
    caps: &Caps,
) -> Result<ModuleMapCheck> {
    base.check_index(b)?;
    let size = base.len();
    caps.check_dim(&format!("chain space of degree {}", n + 1), tensor_dim(size, n + 2))?;
    for t in all_tuples(size, size, n + 2) {
        let idx: Vec<usize> = t.iter().map(|&x| x as usize).collect();
        let c = Chain::primitive_tensor(base.clone(), n + 1, &idx)?;
        let lhs = c.act_left(b)?.boundary()?;
        let rhs = c.boundary()?.act_left(b)?;
        if lhs != rhs {
            return Ok(ModuleMapCheck { holds: false, witness: Some(idx) });
        }
    }
    Ok(ModuleMapCheck { holds: true, witness: None })
}
