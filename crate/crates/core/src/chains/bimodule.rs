use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::homology::matrix::RationalMatrix;
use crate::scalar::Q;
use crate::semilattice::{unitize, SemigroupTable};

/// A finite-dimensional bimodule over the convolution algebra of a table,
/// given by the action matrices of the basis elements `e_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    dim: usize,
    left: Vec<RationalMatrix>,
    right: Vec<RationalMatrix>,
    symmetric: bool,
    unit_linked: bool,
    // left_cols[s][m] is column m of left[s], i.e. e_s . e_m
    left_cols: Vec<Vec<Vec<(usize, Q)>>>,
    right_cols: Vec<Vec<Vec<(usize, Q)>>>,
}

impl Bimodule {
    /// Checks `L(st) = L(s)L(t)`, `R(st) = R(t)R(s)` and `L(s)R(t) = R(t)L(s)`
    /// for every pair of basis elements.
    pub fn new(
        table: &SemigroupTable,
        dim: usize,
        left: Vec<RationalMatrix>,
        right: Vec<RationalMatrix>,
    ) -> Result<Self> {
        let n = table.len();
        if left.len() != n || right.len() != n {
            return Err(Error::InvalidBimodule(format!(
                "need {n} left and right matrices, got {} and {}",
                left.len(),
                right.len()
            )));
        }
        for mat in left.iter().chain(&right) {
            if mat.rows() != dim || mat.cols() != dim {
                return Err(Error::InvalidBimodule(format!(
                    "action matrix is {}x{}, expected {dim}x{dim}",
                    mat.rows(),
                    mat.cols()
                )));
            }
        }
        for s in 0..n {
            for t in 0..n {
                let st = table.mul(s, t);
                if left[s].mul(&left[t])? != left[st] {
                    return Err(Error::InvalidBimodule(format!(
                        "left action: L({s})L({t}) != L({st})"
                    )));
                }
                if right[t].mul(&right[s])? != right[st] {
                    return Err(Error::InvalidBimodule(format!(
                        "right action: R({t})R({s}) != R({st})"
                    )));
                }
                if left[s].mul(&right[t])? != right[t].mul(&left[s])? {
                    return Err(Error::InvalidBimodule(format!(
                        "actions of {s} (left) and {t} (right) do not commute"
                    )));
                }
            }
        }
        let symmetric = left == right;
        let unit_linked = table.unit().is_some_and(|u| {
            let id = RationalMatrix::identity(dim);
            left[u] == id && right[u] == id
        });
        let columns = |mats: &[RationalMatrix]| {
            mats.iter()
                .map(|mat| {
                    let mut cols = vec![Vec::new(); dim];
                    for (r, c, v) in mat.entries() {
                        cols[c].push((r, v.clone()));
                    }
                    cols
                })
                .collect()
        };
        let left_cols = columns(&left);
        let right_cols = columns(&right);
        Ok(Bimodule { dim, left, right, symmetric, unit_linked, left_cols, right_cols })
    }

    /// The algebra acting on itself by multiplication.
    pub fn regular(table: &SemigroupTable) -> Self {
        let n = table.len();
        let act = |f: &dyn Fn(usize, usize) -> usize| -> Vec<RationalMatrix> {
            (0..n)
                .map(|s| {
                    let mut m = RationalMatrix::zeros(n, n);
                    for t in 0..n {
                        m.add_entry(f(s, t), t, Q::one());
                    }
                    m
                })
                .collect()
        };
        let left = act(&|s, t| table.mul(s, t));
        let right = act(&|s, t| table.mul(t, s));
        Bimodule::new(table, n, left, right).expect("regular bimodule axioms follow from associativity")
    }

    /// The coordinate dual `A'` with `(a.phi)(b) = phi(ba)` and `(phi.a)(b) = phi(ab)`.
    pub fn dual(table: &SemigroupTable) -> Self {
        let n = table.len();
        let act = |f: &dyn Fn(usize, usize) -> usize| -> Vec<RationalMatrix> {
            (0..n)
                .map(|t| {
                    // e_t acting on phi_s is the sum of phi_u over u with f(u, t) = s
                    let mut m = RationalMatrix::zeros(n, n);
                    for u in 0..n {
                        m.add_entry(u, f(u, t), Q::one());
                    }
                    m
                })
                .collect()
        };
        let left = act(&|u, t| table.mul(u, t));
        let right = act(&|u, t| table.mul(t, u));
        Bimodule::new(table, n, left, right).expect("dual bimodule axioms follow from associativity")
    }

    pub fn zero(table: &SemigroupTable) -> Self {
        let mats = vec![RationalMatrix::zeros(0, 0); table.len()];
        Bimodule::new(table, 0, mats.clone(), mats).expect("zero module is a bimodule")
    }

    /// Extends the module over `unitize(table)` with the new unit acting as the identity.
    pub fn unit_linked_extension(&self, table: &SemigroupTable) -> Result<(SemigroupTable, Bimodule)> {
        if table.unit().is_some() {
            return Err(Error::AlreadyUnital);
        }
        if table.len() != self.left.len() {
            return Err(Error::BaseMismatch);
        }
        let extended = unitize(table).table;
        let id = RationalMatrix::identity(self.dim);
        let mut left = self.left.clone();
        left.push(id.clone());
        let mut right = self.right.clone();
        right.push(id);
        let module = Bimodule::new(&extended, self.dim, left, right)?;
        Ok((extended, module))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of algebra basis elements the module is defined over.
    pub fn base_len(&self) -> usize {
        self.left.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_unit_linked(&self) -> bool {
        self.unit_linked
    }

    pub fn left(&self, s: usize) -> &RationalMatrix {
        &self.left[s]
    }

    pub fn right(&self, s: usize) -> &RationalMatrix {
        &self.right[s]
    }

    /// `e_s . e_m` as a sparse coordinate list.
    pub fn left_apply(&self, s: usize, m: usize) -> &[(usize, Q)] {
        &self.left_cols[s][m]
    }

    /// `e_m . e_s` as a sparse coordinate list.
    pub fn right_apply(&self, s: usize, m: usize) -> &[(usize, Q)] {
        &self.right_cols[s][m]
    }

    pub(crate) fn check_table(&self, table: &SemigroupTable) -> Result<()> {
        if table.len() != self.left.len() {
            return Err(Error::ModuleMismatch);
        }
        Ok(())
    }
}

pub(crate) fn same_module(a: &Option<Arc<Bimodule>>, b: &Option<Arc<Bimodule>>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => Arc::ptr_eq(x, y) || x == y,
        _ => false,
    }
}
