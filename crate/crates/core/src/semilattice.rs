//! Finite semigroups given by multiplication tables.
//!
//! A [`SemigroupTable`] is validated once and immutable afterwards. The
//! unit is whatever the caller declared: a table whose identity element is
//! not declared is treated as non-unital, exactly like a raw input file.

use std::collections::HashMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupTable {
    elements: Vec<String>,
    // row-major, `product[x * n + y] = xy`
    product: Vec<usize>,
    unit: Option<usize>,
    commutative: bool,
    idempotent: bool,
}

impl SemigroupTable {
    /// Checks totality, associativity (all `n^3` triples) and the declared
    /// unit, then derives the commutative/idempotent flags.
    pub fn validate(
        elements: Vec<String>,
        product: Vec<Vec<usize>>,
        unit: Option<usize>,
    ) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::MalformedTable("a semigroup needs at least one element".into()));
        }
        if product.len() != n {
            return Err(Error::MalformedTable(format!("{} rows for {n} elements", product.len())));
        }
        let mut seen = HashMap::new();
        for (i, label) in elements.iter().enumerate() {
            if let Some(j) = seen.insert(label.as_str(), i) {
                return Err(Error::MalformedTable(format!(
                    "label {label:?} used by elements {j} and {i}"
                )));
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for (x, row) in product.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!("row {x} has {} entries", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::MalformedTable(format!("row {x} refers to element {v}")));
                }
                flat.push(v);
            }
        }
        let at = |x: usize, y: usize| flat[x * n + y];
        for x in 0..n {
            for y in 0..n {
                let xy = at(x, y);
                for z in 0..n {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(Error::NonAssociative { x, y, z });
                    }
                }
            }
        }
        if let Some(u) = unit {
            if u >= n {
                return Err(Error::BadUnit(u));
            }
            if (0..n).any(|x| at(u, x) != x || at(x, u) != x) {
                return Err(Error::BadUnit(u));
            }
        }
        let commutative = (0..n).all(|x| (0..x).all(|y| at(x, y) == at(y, x)));
        let idempotent = (0..n).all(|x| at(x, x) == x);
        Ok(SemigroupTable { elements, product: flat, unit, commutative, idempotent })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|l| l == label)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.product[x * self.elements.len() + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.product.chunks(self.len()).map(|r| r.to_vec()).collect()
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotent
    }

    pub fn is_unital_semilattice(&self) -> bool {
        self.commutative && self.idempotent && self.unit.is_some()
    }

    /// An element acting as a two-sided identity, declared or not.
    pub fn find_identity(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&u| (0..n).all(|x| self.mul(u, x) == x && self.mul(x, u) == x))
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x >= self.len() {
            return Err(Error::IndexOutOfRange { index: x, len: self.len() });
        }
        Ok(())
    }

    pub(crate) fn require_unital_semilattice(&self) -> Result<()> {
        if self.unit.is_none() {
            return Err(Error::NotUnital);
        }
        if !self.idempotent {
            return Err(Error::NotIdempotent);
        }
        if !self.commutative {
            return Err(Error::NotCommutative);
        }
        Ok(())
    }

    /// Isomorphic copy in which old element `x` becomes new element `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<(SemigroupTable, Vec<usize>)> {
        let n = self.len();
        let mut hit = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut hit[p], true)) {
            return Err(Error::MalformedTable("relabeling is not a permutation".into()));
        }
        let mut inverse = vec![0; n];
        for (x, &p) in perm.iter().enumerate() {
            inverse[p] = x;
        }
        let elements = inverse.iter().map(|&x| self.elements[x].clone()).collect();
        let product = (0..n)
            .map(|a| (0..n).map(|b| perm[self.mul(inverse[a], inverse[b])]).collect())
            .collect();
        let table = SemigroupTable::validate(elements, product, self.unit.map(|u| perm[u]))?;
        Ok((table, perm.to_vec()))
    }
}

/// Subsets of `{0..k-1}` as bit masks, ordered by size then lexicographically.
pub fn subset_masks(k: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..1u64 << k).collect();
    masks.sort_by_key(|&m| (m.count_ones(), subset_members(m)));
    masks
}

fn subset_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn subset_label(mask: u64) -> String {
    let inner: Vec<String> = subset_members(mask).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Index of each mask in the canonical order of [`subset_masks`].
pub fn subset_positions(k: usize) -> Vec<usize> {
    let mut pos = vec![0; 1 << k];
    for (i, m) in subset_masks(k).into_iter().enumerate() {
        pos[m as usize] = i;
    }
    pos
}

/// The power set of `{0..k-1}` under union, with unit `{}`.
pub fn free_unital_semilattice(k: usize, caps: &Caps) -> Result<SemigroupTable> {
    if k >= 64 {
        return Err(Error::ResourceLimit {
            what: format!("free unital semilattice on {k} generators"),
            size: u128::MAX,
            cap: caps.max_elements as u128,
        });
    }
    caps.check_elements(&format!("free unital semilattice on {k} generators"), 1u128 << k)?;
    let masks = subset_masks(k);
    let pos = subset_positions(k);
    let elements = masks.iter().map(|&m| subset_label(m)).collect();
    let product = masks
        .iter()
        .map(|&a| masks.iter().map(|&b| pos[(a | b) as usize]).collect())
        .collect();
    SemigroupTable::validate(elements, product, Some(0))
}

/// `{0..n-1}` under `max`; 0 is the unit.
pub fn chain_semilattice(n: usize, caps: &Caps) -> Result<SemigroupTable> {
    if n == 0 {
        return Err(Error::MalformedTable("a chain needs at least one element".into()));
    }
    caps.check_elements(&format!("chain of length {n}"), n as u128)?;
    let elements = (0..n).map(|i| i.to_string()).collect();
    let product = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
    SemigroupTable::validate(elements, product, Some(0))
}

/// The monoid `{1, n, z}` with `n^2 = z` and `z` absorbing.
pub fn null_monoid() -> SemigroupTable {
    SemigroupTable::validate(
        vec!["1".into(), "n".into(), "z".into()],
        vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]],
        Some(0),
    )
    .expect("null monoid table is valid")
}

/// `{n, z}` with `n^2 = z` and `z` absorbing; no unit.
pub fn null_semigroup() -> SemigroupTable {
    SemigroupTable::validate(
        vec!["n".into(), "z".into()],
        vec![vec![1, 1], vec![1, 1]],
        None,
    )
    .expect("null semigroup table is valid")
}

/// `{a, b}` with `xy = x`: associative, idempotent, not commutative.
pub fn left_zero_band() -> SemigroupTable {
    SemigroupTable::validate(
        vec!["a".into(), "b".into()],
        vec![vec![0, 0], vec![1, 1]],
        None,
    )
    .expect("left-zero band table is valid")
}

#[derive(Clone, Debug)]
pub struct Unitized {
    pub table: SemigroupTable,
    /// False when the input already had a unit and was returned unchanged.
    pub adjoined: bool,
}

/// Adjoins a fresh identity (as the last element) when `table` has no unit.
pub fn unitize(table: &SemigroupTable) -> Unitized {
    if table.unit.is_some() {
        return Unitized { table: table.clone(), adjoined: false };
    }
    let n = table.len();
    let mut label = String::from("1");
    while table.index_of(&label).is_some() {
        label.push('\'');
    }
    let mut elements = table.elements.clone();
    elements.push(label);
    let product = (0..=n)
        .map(|x| {
            (0..=n)
                .map(|y| match (x == n, y == n) {
                    (true, _) => y,
                    (_, true) => x,
                    _ => table.mul(x, y),
                })
                .collect()
        })
        .collect();
    let table = SemigroupTable::validate(elements, product, Some(n))
        .expect("adjoining an identity preserves associativity");
    Unitized { table, adjoined: true }
}

/// A validated semigroup homomorphism between two tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Arc<SemigroupTable>,
    target: Arc<SemigroupTable>,
    map: Vec<usize>,
}

impl Morphism {
    /// Checks `f(xy) = f(x)f(y)` on all pairs, and `f(1) = 1` when both ends are unital.
    pub fn validate(
        source: Arc<SemigroupTable>,
        target: Arc<SemigroupTable>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::MalformedTable(format!(
                "map has {} entries for a source of size {}",
                map.len(),
                source.len()
            )));
        }
        for &v in &map {
            target.check_index(v)?;
        }
        for x in 0..source.len() {
            for y in 0..source.len() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::NotHomomorphism { x, y });
                }
            }
        }
        if let (Some(u), Some(v)) = (source.unit, target.unit) {
            if map[u] != v {
                return Err(Error::UnitNotPreserved);
            }
        }
        Ok(Morphism { source, target, map })
    }

    pub fn identity(table: Arc<SemigroupTable>) -> Self {
        let map = (0..table.len()).collect();
        Morphism { source: table.clone(), target: table, map }
    }

    pub fn source(&self) -> &Arc<SemigroupTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SemigroupTable> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if !same_table(&self.target, &next.source) {
            return Err(Error::BaseMismatch);
        }
        Ok(Morphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        })
    }
}

pub(crate) fn same_table(a: &Arc<SemigroupTable>, b: &Arc<SemigroupTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// The images `prod_{i in J} x_i` of every subset `J`, listed in the canonical
/// order of the free unital semilattice on `x.len()` generators.
pub fn substitution_map(table: &SemigroupTable, x: &[usize]) -> Result<Vec<usize>> {
    table.require_unital_semilattice()?;
    for &xi in x {
        table.check_index(xi)?;
    }
    let unit = table.unit.expect("checked above");
    Ok(subset_masks(x.len())
        .into_iter()
        .map(|mask| {
            x.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(unit, |acc, (_, &xi)| table.mul(acc, xi))
        })
        .collect())
}

/// The unique unital morphism from the free unital semilattice on
/// `x.len()` generators into `table` sending generator `i` to `x[i]`.
pub fn substitution_morphism(
    table: Arc<SemigroupTable>,
    x: &[usize],
    caps: &Caps,
) -> Result<Morphism> {
    let map = substitution_map(&table, x)?;
    let source = Arc::new(free_unital_semilattice(x.len(), caps)?);
    Ok(Morphism { source, target: table, map })
}

/// Unital semilattice morphism onto the 2-chain collapsing the down-set of `a`
/// (`x` goes to 0 iff `xa = a`).
pub fn collapse_morphism(table: Arc<SemigroupTable>, a: usize, caps: &Caps) -> Result<Morphism> {
    table.require_unital_semilattice()?;
    table.check_index(a)?;
    let target = Arc::new(chain_semilattice(2, caps)?);
    let map = (0..table.len()).map(|x| usize::from(table.mul(x, a) != a)).collect();
    Morphism::validate(table, target, map)
}

/// Symmetric product tables of size `n` satisfying associativity, filled by
/// backtracking over the upper triangle. With `idempotent` the diagonal is
/// pinned to `xx = x`.
fn enumerate_commutative(n: usize, idempotent: bool) -> Vec<Vec<Vec<usize>>> {
    let mut cells = Vec::new();
    for x in 0..n {
        for y in x..n {
            if !(idempotent && x == y) {
                cells.push((x, y));
            }
        }
    }
    let mut table = vec![vec![None; n]; n];
    if idempotent {
        for (x, row) in table.iter_mut().enumerate() {
            row[x] = Some(x);
        }
    }
    let mut out = Vec::new();
    fill(&mut table, &cells, 0, &mut out);
    out
}

fn fill(
    table: &mut Vec<Vec<Option<usize>>>,
    cells: &[(usize, usize)],
    next: usize,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if next == cells.len() {
        out.push(table.iter().map(|r| r.iter().map(|v| v.unwrap()).collect()).collect());
        return;
    }
    let n = table.len();
    let (x, y) = cells[next];
    for v in 0..n {
        table[x][y] = Some(v);
        table[y][x] = Some(v);
        if partially_associative(table) {
            fill(table, cells, next + 1, out);
        }
    }
    table[x][y] = None;
    table[y][x] = None;
}

fn partially_associative(t: &[Vec<Option<usize>>]) -> bool {
    let n = t.len();
    for x in 0..n {
        for y in 0..n {
            let Some(xy) = t[x][y] else { continue };
            for z in 0..n {
                let (Some(l), Some(yz)) = (t[xy][z], t[y][z]) else { continue };
                if let Some(r) = t[x][yz] {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn element_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

/// Every unital semilattice product table on `{s0..s(n-1)}` for `1 <= n <= max_size`,
/// as raw labeled tables (not up to isomorphism). The unit is declared.
pub fn enumerate_unital_semilattices(max_size: usize) -> Vec<SemigroupTable> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        for rows in enumerate_commutative(n, true) {
            let t = SemigroupTable::validate(element_labels(n), rows, None)
                .expect("enumerated tables are associative");
            if let Some(u) = t.find_identity() {
                out.push(SemigroupTable { unit: Some(u), ..t });
            }
        }
    }
    out
}

/// Every commutative semigroup table of size `1..=max_size` with no identity element.
pub fn enumerate_non_unital_commutative(max_size: usize) -> Vec<SemigroupTable> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        for rows in enumerate_commutative(n, false) {
            let t = SemigroupTable::validate(element_labels(n), rows, None)
                .expect("enumerated tables are associative");
            if t.find_identity().is_none() {
                out.push(t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn singleton_is_unital_semilattice() {
        let t = SemigroupTable::validate(labels(&["e"]), vec![vec![0]], Some(0)).unwrap();
        assert!(t.is_unital_semilattice());
    }

    #[test]
    fn two_chain_by_hand() {
        // a*b = a, unit b
        let t = SemigroupTable::validate(labels(&["a", "b"]), vec![vec![0, 0], vec![0, 1]], Some(1))
            .unwrap();
        assert!(t.is_unital_semilattice());
    }

    #[test]
    fn left_zero_band_is_non_commutative() {
        let t = left_zero_band();
        assert!(!t.is_commutative());
        assert!(t.is_idempotent());
        // all 8 triples: (xy)z = x = x(yz)
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    assert_eq!(t.mul(t.mul(x, y), z), x);
                    assert_eq!(t.mul(x, t.mul(y, z)), x);
                }
            }
        }
    }

    #[test]
    fn reports_failing_triple() {
        // a*a = b, everything else a: (aa)a = ba = a, a(aa) = ab = a ... find a genuinely bad one
        let err = SemigroupTable::validate(
            labels(&["a", "b"]),
            vec![vec![1, 0], vec![0, 0]],
            None,
        )
        .unwrap_err();
        match err {
            Error::NonAssociative { x, y, z } => {
                let t = [[1usize, 0], [0, 0]];
                assert_ne!(t[t[x][y]][z], t[x][t[y][z]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_unit_and_malformed() {
        assert!(matches!(
            SemigroupTable::validate(labels(&["a", "b"]), vec![vec![0, 0], vec![0, 1]], Some(0)),
            Err(Error::BadUnit(0))
        ));
        assert!(matches!(
            SemigroupTable::validate(labels(&["a"]), vec![vec![1]], None),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            SemigroupTable::validate(labels(&["a", "a"]), vec![vec![0, 0], vec![0, 0]], None),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn free_semilattice_order_and_union() {
        let caps = Caps::default();
        let f0 = free_unital_semilattice(0, &caps).unwrap();
        assert_eq!(f0.elements(), &["{}"]);
        let f2 = free_unital_semilattice(2, &caps).unwrap();
        assert_eq!(f2.elements(), &["{}", "{0}", "{1}", "{0,1}"]);
        assert_eq!(f2.mul(1, 2), 3);
        let f3 = free_unital_semilattice(3, &caps).unwrap();
        assert_eq!(f3.len(), 8);
        assert!(f3.is_unital_semilattice());
        assert_eq!(f3.label(4), "{0,1}");
        assert_eq!(f3.label(6), "{1,2}");
        assert!(matches!(free_unital_semilattice(7, &caps), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn chains() {
        let caps = Caps::default();
        let c3 = chain_semilattice(3, &caps).unwrap();
        assert_eq!(c3.mul(1, 2), 2);
        assert_eq!(c3.unit(), Some(0));
        let c2 = chain_semilattice(2, &caps).unwrap();
        assert_eq!(c2.rows(), vec![vec![0, 1], vec![1, 1]]);
        assert!(chain_semilattice(0, &caps).is_err());
    }

    #[test]
    fn unitize_behaviour() {
        let caps = Caps::default();
        let f2 = free_unital_semilattice(2, &caps).unwrap();
        let u = unitize(&f2);
        assert!(!u.adjoined);
        assert_eq!(u.table, f2);

        // 2-chain with its identity left undeclared
        let s = SemigroupTable::validate(labels(&["a", "b"]), vec![vec![0, 0], vec![0, 1]], None)
            .unwrap();
        let u = unitize(&s);
        assert!(u.adjoined);
        assert_eq!(u.table.len(), 3);
        assert_eq!(u.table.unit(), Some(2));
        assert_eq!(u.table.label(2), "1");
        assert!(u.table.is_unital_semilattice());
        assert_eq!(unitize(&u.table).table, u.table);

        let ns = unitize(&null_semigroup());
        assert!(ns.table.is_commutative() && !ns.table.is_idempotent());
    }

    #[test]
    fn collapse_from_free_two() {
        let caps = Caps::default();
        let f2 = Arc::new(free_unital_semilattice(2, &caps).unwrap());
        let c2 = Arc::new(chain_semilattice(2, &caps).unwrap());
        let m = Morphism::validate(f2.clone(), c2.clone(), vec![0, 1, 1, 1]).unwrap();
        // brute-force all 16 pairs
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(m.apply(f2.mul(x, y)), c2.mul(m.apply(x), m.apply(y)));
            }
        }
        assert_eq!(collapse_morphism(f2.clone(), 0, &caps).unwrap(), m);
        assert!(matches!(
            Morphism::validate(f2.clone(), c2.clone(), vec![1, 1, 1, 1]),
            Err(Error::UnitNotPreserved)
        ));
        assert!(matches!(
            Morphism::validate(f2, c2, vec![0, 1, 0, 0]),
            Err(Error::NotHomomorphism { .. })
        ));
    }

    #[test]
    fn substitution_examples() {
        let caps = Caps::default();
        let c3 = Arc::new(chain_semilattice(3, &caps).unwrap());
        let pi = substitution_morphism(c3.clone(), &[1, 2], &caps).unwrap();
        assert_eq!(pi.map(), &[0, 1, 2, 2]);
        let units = substitution_morphism(c3.clone(), &[0, 0, 0], &caps).unwrap();
        assert!(units.map().iter().all(|&v| v == 0));

        let f2 = Arc::new(free_unital_semilattice(2, &caps).unwrap());
        let id = substitution_morphism(f2.clone(), &[1, 2], &caps).unwrap();
        assert_eq!(id.map(), Morphism::identity(f2).map());

        let nm = Arc::new(null_monoid());
        assert!(matches!(substitution_morphism(nm, &[1], &caps), Err(Error::NotIdempotent)));
        let lzb = Arc::new(left_zero_band());
        assert!(matches!(substitution_morphism(lzb, &[0], &caps), Err(Error::NotUnital)));
    }

    #[test]
    fn enumeration_counts() {
        // labeled lattices: 1, 2, 3! = 6, 4! + 4!/2 = 36
        let all = enumerate_unital_semilattices(4);
        let count = |n| all.iter().filter(|t| t.len() == n).count();
        assert_eq!([count(1), count(2), count(3), count(4)], [1, 2, 6, 36]);
        assert!(all.iter().all(|t| t.is_unital_semilattice()));
    }

    #[test]
    fn enumeration_matches_brute_force_up_to_three() {
        for n in 1..=3usize {
            let mut brute = 0;
            let cells = n * n;
            for code in 0..n.pow(cells as u32) {
                let mut c = code;
                let rows: Vec<Vec<usize>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                let v = c % n;
                                c /= n;
                                v
                            })
                            .collect()
                    })
                    .collect();
                if let Ok(t) = SemigroupTable::validate(element_labels(n), rows, None) {
                    if t.is_commutative() && t.is_idempotent() && t.find_identity().is_some() {
                        brute += 1;
                    }
                }
            }
            let fast = enumerate_unital_semilattices(n).iter().filter(|t| t.len() == n).count();
            assert_eq!(fast, brute, "size {n}");
        }
    }

    #[test]
    fn non_unital_enumeration() {
        let all = enumerate_non_unital_commutative(3);
        assert!(all.iter().all(|t| t.is_commutative() && t.find_identity().is_none()));
        // size 1 always has an identity
        assert!(all.iter().all(|t| t.len() >= 2));
        assert!(all.iter().any(|t| t.rows() == null_semigroup().rows()));
    }

    #[test]
    fn relabel_gives_isomorphism() {
        let caps = Caps::default();
        let f2 = Arc::new(free_unital_semilattice(2, &caps).unwrap());
        let (t, perm) = f2.relabel(&[3, 0, 1, 2]).unwrap();
        let t = Arc::new(t);
        let m = Morphism::validate(f2, t.clone(), perm).unwrap();
        assert_eq!(t.unit(), Some(3));
        assert_eq!(m.apply(0), 3);
    }

    #[test]
    fn composition() {
        let caps = Caps::default();
        let f2 = Arc::new(free_unital_semilattice(2, &caps).unwrap());
        let c3 = Arc::new(chain_semilattice(3, &caps).unwrap());
        let a = substitution_morphism(c3.clone(), &[1, 2], &caps).unwrap();
        let b = collapse_morphism(c3, 1, &caps).unwrap();
        let ab = Morphism::validate(f2, b.target().clone(), a.then(&b).unwrap().map().to_vec());
        assert!(ab.is_ok());
        assert!(b.then(&a).is_err());
    }
}
