//! Sparse exact rational matrices with fraction-free rank computation.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Q::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = RationalMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Parse(format!("row {i} has {} entries, expected {c}", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                m.add_entry(i, j, v.clone());
            }
        }
        Ok(m)
    }

    /// Builds from per-column sparse lists; repeated rows within a column are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Q)>>) -> Self {
        let mut m = RationalMatrix::zeros(rows, columns.len());
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col {
                m.add_entry(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Q::zero)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: Q) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) outside {}x{}", self.rows, self.cols);
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((r, c)).or_insert_with(Q::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn transpose(&self) -> Self {
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Parse(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut rhs_rows: HashMap<usize, Vec<(usize, &Q)>> = HashMap::new();
        for (&(r, c), v) in &rhs.entries {
            rhs_rows.entry(r).or_default().push((c, v));
        }
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = rhs_rows.get(&k) {
                for &(j, b) in row {
                    out.add_entry(i, j, a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Q::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut d = vec![vec![Q::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    /// Exact rank over the rationals.
    ///
    /// Each row (or column, whichever side is shorter) is scaled to a primitive
    /// integer vector and reduced against the pivots found so far by
    /// fraction-free elimination, `v <- a v - b u`, dividing out the content
    /// after every step. Coordinates are visited sparsest-first, ties broken by
    /// the lowest index, so the leading entry of each vector is its pivot.
    pub fn rank(&self) -> usize {
        if self.entries.is_empty() {
            return 0;
        }
        let by_rows = self.rows <= self.cols;
        let (count, coords) = if by_rows { (self.rows, self.cols) } else { (self.cols, self.rows) };
        let mut weight = vec![0usize; coords];
        let mut vectors: Vec<Vec<(usize, Q)>> = vec![Vec::new(); count];
        for (&(r, c), v) in &self.entries {
            let (owner, coord) = if by_rows { (r, c) } else { (c, r) };
            weight[coord] += 1;
            vectors[owner].push((coord, v.clone()));
        }
        let mut order: Vec<usize> = (0..coords).collect();
        order.sort_by_key(|&c| (weight[c], c));
        let mut position = vec![0; coords];
        for (p, &c) in order.iter().enumerate() {
            position[c] = p;
        }

        let mut pivots: HashMap<usize, IntVector> = HashMap::new();
        let mut rank = 0;
        for raw in vectors {
            let mut v = IntVector::from_rational(
                raw.into_iter().map(|(c, q)| (position[c], q)).collect(),
            );
            while let Some(lead) = v.lead() {
                match pivots.get(&lead) {
                    Some(u) => v = v.eliminate(u),
                    None => {
                        pivots.insert(lead, v);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right kernel, from the reduced row echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Q>> {
        let mut a = self.to_dense();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&i| !a[i][col].is_zero()) else { continue };
            a.swap(row, p);
            let inv = a[row][col].recip();
            for v in a[row].iter_mut() {
                *v *= &inv;
            }
            for i in 0..self.rows {
                if i != row && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in col..self.cols {
                        let d = &f * &a[row][j];
                        a[i][j] -= d;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[r][free].clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Sparse integer vector sorted by coordinate, kept primitive (content 1, positive lead).
#[derive(Clone, Debug)]
struct IntVector(Vec<(usize, BigInt)>);

impl IntVector {
    fn from_rational(mut entries: Vec<(usize, Q)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let lcm = entries.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let ints = entries
            .into_iter()
            .map(|(c, q)| (c, q.numer() * (&lcm / q.denom())))
            .collect();
        let mut v = IntVector(ints);
        v.normalize();
        v
    }

    fn lead(&self) -> Option<usize> {
        self.0.first().map(|e| e.0)
    }

    fn normalize(&mut self) {
        let Some(first) = self.0.first() else { return };
        let mut g = first.1.abs();
        for (_, x) in &self.0[1..] {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if first.1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, x) in self.0.iter_mut() {
                *x /= &g;
            }
        }
    }

    /// `a*self - b*pivot` with `a, b` chosen to cancel the shared leading entry.
    fn eliminate(&self, pivot: &IntVector) -> IntVector {
        let (pa, sa) = (&pivot.0[0].1, &self.0[0].1);
        let g = pa.gcd(sa);
        let a = pa / &g;
        let b = sa / &g;
        let mut out = Vec::with_capacity(self.0.len() + pivot.0.len());
        let (mut i, mut j) = (1, 1);
        while i < self.0.len() || j < pivot.0.len() {
            let ci = self.0.get(i).map(|e| e.0);
            let cj = pivot.0.get(j).map(|e| e.0);
            match (ci, cj) {
                (Some(x), Some(y)) if x == y => {
                    let v = &a * &self.0[i].1 - &b * &pivot.0[j].1;
                    if !v.is_zero() {
                        out.push((x, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push((x, &a * &self.0[i].1));
                    i += 1;
                }
                (Some(x), None) => {
                    out.push((x, &a * &self.0[i].1));
                    i += 1;
                }
                (_, Some(y)) => {
                    out.push((y, -(&b * &pivot.0[j].1)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let mut v = IntVector(out);
        v.normalize();
        v
    }
}
