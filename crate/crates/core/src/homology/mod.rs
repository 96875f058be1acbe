//! Exact Hochschild homology and cohomology dimensions.
//!
//! `dim H_n = (dim C_n - rank d_{n-1}) - rank d_n` and
//! `dim H^n = (dim C^n - rank δ_n) - rank δ_{n-1}`.

pub mod dense;
pub mod matrix;

use std::sync::Arc;

use serde::Serialize;

use crate::caps::{tensor_dim, Caps};
use crate::chains::{boundary_matrix, coboundary_matrix, Bimodule};
use crate::error::{Error, Result};
use crate::natural_splitting::{verify_splitting, SigmaTower, SplittingReport};
use crate::semilattice::SemigroupTable;
use matrix::RationalMatrix;

#[derive(Clone, Debug)]
pub enum Coefficients {
    /// The algebra itself.
    Algebra,
    /// The coordinate dual `A'`.
    Dual,
    Module(Arc<Bimodule>),
}

impl Coefficients {
    pub fn describe(&self) -> String {
        match self {
            Coefficients::Algebra => "A".into(),
            Coefficients::Dual => "A'".into(),
            Coefficients::Module(m) => format!("bimodule of dimension {}", m.dim()),
        }
    }

    fn module(&self, table: &SemigroupTable) -> Result<Bimodule> {
        Ok(match self {
            Coefficients::Algebra => Bimodule::regular(table),
            Coefficients::Dual => Bimodule::dual(table),
            Coefficients::Module(m) => {
                m.check_table(table)?;
                (**m).clone()
            }
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankEngine {
    #[default]
    Sparse,
    Dense,
}

impl RankEngine {
    pub fn rank(self, m: &RationalMatrix) -> usize {
        match self {
            RankEngine::Sparse => m.rank(),
            RankEngine::Dense => dense::dense_rank(m),
        }
    }
}

/// One degree of a (co)homology computation.
///
/// For homology `kernel_dim = dim ker d_{n-1}` and `image_dim = rank d_n`;
/// for cohomology `kernel_dim = dim ker δ_n` and `image_dim = rank δ_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub degree: usize,
    pub space_dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub kind: &'static str,
    pub table_size: usize,
    pub coefficients: String,
    pub unit_linked: bool,
    pub engine: RankEngine,
    pub degrees: Vec<DegreeStats>,
}

impl HomologyReport {
    pub fn dim(&self, n: usize) -> Option<usize> {
        self.degrees.iter().find(|d| d.degree == n).map(|d| d.dim)
    }

    pub fn vanishes(&self) -> bool {
        self.degrees.iter().all(|d| d.dim == 0)
    }
}

fn module_dim(coeffs: &Coefficients, table: &SemigroupTable) -> usize {
    match coeffs {
        Coefficients::Module(m) => m.dim(),
        _ => table.len(),
    }
}

fn space_dim(slot0: usize, size: usize, n: usize, caps: &Caps) -> Result<usize> {
    let dim = slot0 as u128 * tensor_dim(size, n);
    caps.check_dim(&format!("chain space of degree {n}"), dim)?;
    Ok(dim as usize)
}

fn assemble(
    kind: &'static str,
    table: &SemigroupTable,
    coeffs: &Coefficients,
    unit_linked: bool,
    engine: RankEngine,
    degrees: Vec<DegreeStats>,
) -> HomologyReport {
    HomologyReport {
        kind,
        table_size: table.len(),
        coefficients: coeffs.describe(),
        unit_linked,
        engine,
        degrees,
    }
}

pub fn homology_dims(
    table: &SemigroupTable,
    nmax: usize,
    coeffs: &Coefficients,
    caps: &Caps,
) -> Result<HomologyReport> {
    homology_dims_with(table, nmax, coeffs, RankEngine::Sparse, caps)
}

/// `dim H_n(A, M)` for `1 <= n <= nmax`.
pub fn homology_dims_with(
    table: &SemigroupTable,
    nmax: usize,
    coeffs: &Coefficients,
    engine: RankEngine,
    caps: &Caps,
) -> Result<HomologyReport> {
    let module = match coeffs {
        Coefficients::Algebra => None,
        other => Some(other.module(table)?),
    };
    let slot0 = module_dim(coeffs, table);
    let size = table.len();
    // ranks[n] = rank d_n : C_{n+1} -> C_n
    let ranks = (0..=nmax)
        .map(|n| Ok(engine.rank(&boundary_matrix(table, n, module.as_ref(), caps)?)))
        .collect::<Result<Vec<_>>>()?;
    let degrees = (1..=nmax)
        .map(|n| {
            let space = space_dim(slot0, size, n, caps)?;
            let kernel = space - ranks[n - 1];
            Ok(DegreeStats { degree: n, space_dim: space, kernel_dim: kernel, image_dim: ranks[n], dim: kernel - ranks[n] })
        })
        .collect::<Result<Vec<_>>>()?;
    let unit_linked = module.as_ref().map_or(table.unit().is_some(), Bimodule::is_unit_linked);
    Ok(assemble("homology", table, coeffs, unit_linked, engine, degrees))
}

pub fn cohomology_dims(
    table: &SemigroupTable,
    nmax: usize,
    coeffs: &Coefficients,
    caps: &Caps,
) -> Result<HomologyReport> {
    cohomology_dims_with(table, nmax, coeffs, RankEngine::Sparse, caps)
}

/// `dim H^n(A, M)` for `1 <= n <= nmax`. Modules that are not unit-linked are
/// accepted; the report records which case applies.
pub fn cohomology_dims_with(
    table: &SemigroupTable,
    nmax: usize,
    coeffs: &Coefficients,
    engine: RankEngine,
    caps: &Caps,
) -> Result<HomologyReport> {
    let module = coeffs.module(table)?;
    let size = table.len();
    // ranks[n] = rank δ_n : C^n -> C^{n+1}
    let ranks = (0..=nmax)
        .map(|n| Ok(engine.rank(&coboundary_matrix(table, &module, n, caps)?)))
        .collect::<Result<Vec<_>>>()?;
    let degrees = (1..=nmax)
        .map(|n| {
            let space = space_dim(module.dim(), size, n, caps)?;
            let kernel = space - ranks[n];
            Ok(DegreeStats { degree: n, space_dim: space, kernel_dim: kernel, image_dim: ranks[n - 1], dim: kernel - ranks[n - 1] })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble("cohomology", table, coeffs, module.is_unit_linked(), engine, degrees))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionPair {
    pub degree: usize,
    pub left: usize,
    pub right: usize,
    pub equal: bool,
}

fn pair_up(left: &HomologyReport, right: &HomologyReport) -> Vec<DimensionPair> {
    left.degrees
        .iter()
        .zip(&right.degrees)
        .map(|(l, r)| DimensionPair { degree: l.degree, left: l.dim, right: r.dim, equal: l.dim == r.dim })
        .collect()
}

/// `dim H_n(A, A)` (left) against `dim H^n(A, A')` (right).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub degrees: Vec<DimensionPair>,
    pub passed: bool,
}

pub fn duality_check(table: &SemigroupTable, nmax: usize, caps: &Caps) -> Result<DualityReport> {
    let h = homology_dims(table, nmax, &Coefficients::Algebra, caps)?;
    let c = cohomology_dims(table, nmax, &Coefficients::Dual, caps)?;
    let degrees = pair_up(&h, &c);
    let passed = degrees.iter().all(|d| d.equal);
    Ok(DualityReport { degrees, passed })
}

/// `dim H^n(S^1, M_1)` (left) against `dim H^n(S, M)` (right).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitisationReport {
    pub table_size: usize,
    pub module_dim: usize,
    pub degrees: Vec<DimensionPair>,
    pub passed: bool,
}

/// Compares the cohomology of a non-unital commutative table with symmetric
/// coefficients against that of its unitisation with the unit-linked extension.
pub fn unitisation_check(
    table: &SemigroupTable,
    module: &Bimodule,
    nmax: usize,
    caps: &Caps,
) -> Result<UnitisationReport> {
    if table.unit().is_some() {
        return Err(Error::AlreadyUnital);
    }
    if !table.is_commutative() {
        return Err(Error::NotCommutative);
    }
    if !module.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let (extended, extended_module) = module.unit_linked_extension(table)?;
    let left = cohomology_dims(&extended, nmax, &Coefficients::Module(Arc::new(extended_module)), caps)?;
    let right = cohomology_dims(table, nmax, &Coefficients::Module(Arc::new(module.clone())), caps)?;
    let degrees = pair_up(&left, &right);
    let passed = degrees.iter().all(|d| d.equal);
    Ok(UnitisationReport { table_size: table.len(), module_dim: module.dim(), degrees, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingVsVanishing {
    pub homology: HomologyReport,
    pub splitting: SplittingReport,
    pub homology_vanishes: bool,
    pub splitting_holds: bool,
    pub agree: bool,
}

/// Vanishing of `H_n(A, A)` against the explicit splitting, for `1 <= n <= nmax`.
pub fn splitting_vs_vanishing(
    table: &Arc<SemigroupTable>,
    tower: &SigmaTower,
    nmax: usize,
    caps: &Caps,
) -> Result<SplittingVsVanishing> {
    let homology = homology_dims(table, nmax, &Coefficients::Algebra, caps)?;
    let splitting = verify_splitting(tower, table.clone(), 1..=nmax, caps)?;
    let homology_vanishes = homology.vanishes();
    let splitting_holds = splitting.passed;
    Ok(SplittingVsVanishing {
        homology,
        splitting,
        homology_vanishes,
        splitting_holds,
        agree: homology_vanishes && splitting_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilattice::{
        chain_semilattice, enumerate_unital_semilattices, free_unital_semilattice, left_zero_band,
        null_monoid, null_semigroup,
    };

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn singleton_vanishes() {
        let t = chain_semilattice(1, &caps()).unwrap();
        for c in [Coefficients::Algebra, Coefficients::Dual] {
            assert!(homology_dims(&t, 4, &c, &caps()).unwrap().vanishes());
            assert!(cohomology_dims(&t, 4, &c, &caps()).unwrap().vanishes());
        }
    }

    #[test]
    fn small_unital_semilattices_vanish() {
        for t in enumerate_unital_semilattices(3) {
            assert!(homology_dims(&t, 3, &Coefficients::Algebra, &caps()).unwrap().vanishes());
            assert!(cohomology_dims(&t, 3, &Coefficients::Dual, &caps()).unwrap().vanishes());
        }
    }

    #[test]
    fn null_monoid_control_matches_dense() {
        let t = null_monoid();
        let sparse = homology_dims(&t, 2, &Coefficients::Algebra, &caps()).unwrap();
        let dense =
            homology_dims_with(&t, 2, &Coefficients::Algebra, RankEngine::Dense, &caps()).unwrap();
        assert!(sparse.dim(1).unwrap() >= 1);
        assert_eq!(sparse.degrees, dense.degrees);
    }

    #[test]
    fn rank_nullity_bookkeeping() {
        let t = null_monoid();
        let r = homology_dims(&t, 3, &Coefficients::Algebra, &caps()).unwrap();
        for d in &r.degrees {
            assert_eq!(d.space_dim, 3usize.pow(d.degree as u32 + 1));
            assert_eq!(d.dim + d.image_dim, d.kernel_dim);
        }
    }

    #[test]
    fn duality_holds() {
        for t in [null_monoid(), left_zero_band(), chain_semilattice(3, &caps()).unwrap()] {
            let r = duality_check(&t, 3, &caps()).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn unitisation_examples() {
        let caps = caps();
        // two-element semilattice ab = a with no declared unit
        let s = SemigroupTable::validate(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 1]], None)
            .unwrap();
        let r = unitisation_check(&s, &Bimodule::regular(&s), 2, &caps).unwrap();
        assert!(r.passed);
        assert!(r.degrees.iter().all(|d| d.left == 0));
        let z = unitisation_check(&s, &Bimodule::zero(&s), 2, &caps).unwrap();
        assert!(z.passed && z.degrees.iter().all(|d| d.left == 0 && d.right == 0));
        let n = null_semigroup();
        assert!(unitisation_check(&n, &Bimodule::regular(&n), 2, &caps).unwrap().passed);
    }

    #[test]
    fn unitisation_preconditions() {
        let f = free_unital_semilattice(1, &caps()).unwrap();
        assert!(matches!(
            unitisation_check(&f, &Bimodule::regular(&f), 1, &caps()),
            Err(Error::AlreadyUnital)
        ));
        let band = left_zero_band();
        assert!(matches!(
            unitisation_check(&band, &Bimodule::regular(&band), 1, &caps()),
            Err(Error::NotCommutative)
        ));
    }

    #[test]
    fn unit_linked_tag() {
        let n = null_semigroup();
        let r = cohomology_dims(&n, 1, &Coefficients::Algebra, &caps()).unwrap();
        assert!(!r.unit_linked);
        let t = null_monoid();
        assert!(cohomology_dims(&t, 1, &Coefficients::Algebra, &caps()).unwrap().unit_linked);
    }

    #[test]
    fn splitting_agrees_with_vanishing() {
        let tower = SigmaTower::build(2, &caps()).unwrap();
        for t in [chain_semilattice(1, &caps()).unwrap(), chain_semilattice(2, &caps()).unwrap()] {
            let r = splitting_vs_vanishing(&Arc::new(t), &tower, 2, &caps()).unwrap();
            assert!(r.agree);
        }
    }
}
