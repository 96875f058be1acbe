//! Natural splitting maps `σ_j` for unital semilattices.
//!
//! `w[j]` is a degree `j+1` chain over the free unital semilattice `F` on
//! `j+1` generators with `d_j w[j] = f - σ_{j-1} d_{j-1} f`, where `f` is the
//! tuple of generators. On any unital semilattice `S`, `σ_j` sends a
//! primitive tensor `x` to the pushforward of `w[j]` along the substitution
//! morphism `π_x : F -> S`.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::{tensor_dim, Caps};
use crate::chains::{all_tuples, Chain, Tuple};
use crate::error::{Error, Result};
use crate::homotopy_free::HomotopyFree;
use crate::io;
use crate::scalar::{format_q, Q};
use crate::semilattice::{free_unital_semilattice, same_table, substitution_map, Morphism, SemigroupTable};

#[derive(Clone, Debug)]
pub struct SigmaTower {
    // w[j - 1] for 1 <= j <= jmax
    w: Vec<Chain>,
}

fn require_semilattice(table: &SemigroupTable) -> Result<()> {
    table.require_unital_semilattice().map_err(|_| Error::NotUnitalSemilattice)
}

impl SigmaTower {
    /// Builds `w[1..=jmax]`, checking the formal identity at every step.
    pub fn build(jmax: usize, caps: &Caps) -> Result<Self> {
        let mut tower = SigmaTower { w: Vec::new() };
        for j in 1..=jmax {
            let (h, target) = tower.formal_target(j, caps)?;
            let w = h.apply_s(j, &target)?;
            if w.boundary()? != target {
                return Err(Error::FormalIdentityFailed { degree: j });
            }
            tower.w.push(w);
        }
        Ok(tower)
    }

    /// Accepts previously built chains after checking each against the formal identity.
    pub fn from_chains(chains: Vec<Chain>, caps: &Caps) -> Result<Self> {
        let mut tower = SigmaTower { w: Vec::new() };
        for (i, w) in chains.into_iter().enumerate() {
            let j = i + 1;
            let free = free_unital_semilattice(j + 1, caps)?;
            if **w.base() != free || w.module().is_some() {
                return Err(Error::BaseMismatch);
            }
            if w.degree() != j + 1 {
                return Err(Error::ArityMismatch { expected: j + 2, found: w.arity() });
            }
            let (h, target) = tower.formal_target(j, caps)?;
            let w = Chain::from_terms(
                h.table().clone(),
                j + 1,
                w.terms().map(|(t, v)| (t.iter().map(|&x| x as usize).collect(), v.clone())),
            )?;
            if w.boundary()? != target {
                return Err(Error::FormalIdentityFailed { degree: j });
            }
            tower.w.push(w);
        }
        Ok(tower)
    }

    /// `f - σ_{j-1}(d_{j-1} f)` over the free algebra on `j+1` generators.
    fn formal_target(&self, j: usize, caps: &Caps) -> Result<(HomotopyFree, Chain)> {
        let size = 1usize.checked_shl(j as u32 + 1).unwrap_or(usize::MAX);
        caps.check_dim(&format!("w[{j}]"), tensor_dim(size, j + 2))?;
        let h = HomotopyFree::new(j + 1, caps)?;
        let f = h.generator_tensor()?;
        let sigma = self.evaluator(h.table().clone())?;
        let target = f.clone().try_sub(&sigma.apply(j - 1, &f.boundary()?)?)?;
        Ok((h, target))
    }

    pub fn jmax(&self) -> usize {
        self.w.len()
    }

    /// `w[j]` for `1 <= j <= jmax`.
    pub fn w(&self, j: usize) -> Result<&Chain> {
        if j == 0 || j > self.jmax() {
            return Err(Error::DegreeOutOfRange { degree: j, max: self.jmax() });
        }
        Ok(&self.w[j - 1])
    }

    pub fn chains(&self) -> &[Chain] {
        &self.w
    }

    /// `σ_j` on `table`, memoizing the image of each primitive tensor.
    pub fn evaluator(&self, table: Arc<SemigroupTable>) -> Result<Sigma<'_>> {
        require_semilattice(&table)?;
        Ok(Sigma { tower: self, table, cache: Mutex::new(HashMap::new()) })
    }

    /// `σ^S_j(c)` for a degree-`j` chain over a unital semilattice.
    pub fn apply_sigma(&self, j: usize, c: &Chain) -> Result<Chain> {
        self.evaluator(c.base().clone())?.apply(j, c)
    }

    /// Writes `w1.json ... wN.json` and `tower.json` into `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut files = Vec::new();
        for (i, w) in self.w.iter().enumerate() {
            let name = format!("w{}.json", i + 1);
            io::write_chain(&dir.join(&name), w)?;
            files.push(name);
        }
        let manifest = TowerManifest { jmax: self.jmax(), chains: files };
        io::write_json(&dir.join("tower.json"), &manifest)
    }

    /// Reads a tower written by [`SigmaTower::save`] and re-verifies it.
    pub fn load(dir: &Path, caps: &Caps) -> Result<Self> {
        let manifest: TowerManifest = io::read_json(&dir.join("tower.json"))?;
        if manifest.chains.len() != manifest.jmax {
            return Err(Error::Parse(format!(
                "tower.json lists {} chains for jmax {}",
                manifest.chains.len(),
                manifest.jmax
            )));
        }
        let chains = manifest
            .chains
            .iter()
            .map(|name| io::read_chain(&dir.join(name)))
            .collect::<Result<Vec<_>>>()?;
        SigmaTower::from_chains(chains, caps)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TowerManifest {
    jmax: usize,
    chains: Vec<String>,
}

/// `σ_j` evaluated on one fixed table.
pub struct Sigma<'a> {
    tower: &'a SigmaTower,
    table: Arc<SemigroupTable>,
    cache: Mutex<HashMap<Tuple, Arc<Chain>>>,
}

impl Sigma<'_> {
    pub fn table(&self) -> &Arc<SemigroupTable> {
        &self.table
    }

    /// Pushforward of `w[j]` along `π_x`, where `x` has arity `j+1 >= 2`.
    fn image(&self, x: &Tuple) -> Result<Arc<Chain>> {
        if let Some(c) = self.cache.lock().expect("cache lock").get(x) {
            return Ok(c.clone());
        }
        let w = self.tower.w(x.len() - 1)?;
        let xs: Vec<usize> = x.iter().map(|&v| v as usize).collect();
        let map = substitution_map(&self.table, &xs)?;
        let image = Arc::new(w.pushforward_by(self.table.clone(), &map));
        self.cache.lock().expect("cache lock").insert(x.clone(), image.clone());
        Ok(image)
    }

    pub fn apply(&self, j: usize, c: &Chain) -> Result<Chain> {
        if !same_table(c.base(), &self.table) {
            return Err(Error::BaseMismatch);
        }
        if c.module().is_some() {
            return Err(Error::ModuleMismatch);
        }
        if j > self.tower.jmax() {
            return Err(Error::DegreeOutOfRange { degree: j, max: self.tower.jmax() });
        }
        if c.degree() != j {
            return Err(Error::ArityMismatch { expected: j + 1, found: c.arity() });
        }
        if j == 0 {
            return Ok(Chain::zero(self.table.clone(), 1));
        }
        let mut acc: HashMap<Tuple, Q> = HashMap::new();
        for (x, coeff) in c.terms() {
            for (t, v) in self.image(x)?.terms() {
                *acc.entry(t.clone()).or_insert_with(Q::zero) += v * coeff;
            }
        }
        Ok(Chain::zero(self.table.clone(), j + 1).with_accumulated(acc))
    }

    /// `σ_j` on a single primitive tensor.
    pub fn apply_tuple(&self, j: usize, x: &[usize]) -> Result<Chain> {
        self.apply(j, &Chain::primitive_tensor(self.table.clone(), j, x)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingDegree {
    pub j: usize,
    pub tuples_checked: usize,
    pub identity_holds: bool,
    pub weakened_hypothesis_holds: bool,
    pub witness: Option<Vec<String>>,
    pub sigma_norm: String,
    pub w_norm: String,
    pub within_norm_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub table_size: usize,
    pub degrees: Vec<SplittingDegree>,
    pub passed: bool,
}

fn labels(table: &SemigroupTable, t: &[usize]) -> Vec<String> {
    t.iter().map(|&x| table.label(x).to_string()).collect()
}

struct TupleOutcome {
    identity: bool,
    weakened: bool,
    norm: Q,
}

/// Checks `d_j σ_j + σ_{j-1} d_{j-1} = id` and `d_{j-1} σ_{j-1} d_{j-1} = d_{j-1}`
/// on every primitive tensor of degree `j` over `table`.
pub fn verify_splitting(
    tower: &SigmaTower,
    table: Arc<SemigroupTable>,
    degrees: impl IntoIterator<Item = usize>,
    caps: &Caps,
) -> Result<SplittingReport> {
    let sigma = tower.evaluator(table.clone())?;
    let size = table.len();
    let mut out = Vec::new();
    for j in degrees {
        if j == 0 || j > tower.jmax() {
            return Err(Error::DegreeOutOfRange { degree: j, max: tower.jmax() });
        }
        caps.check_dim(&format!("chain space of degree {}", j + 1), tensor_dim(size, j + 2))?;
        let tuples: Vec<Tuple> = all_tuples(size, size, j + 1).collect();
        let outcomes: Vec<TupleOutcome> = tuples
            .par_iter()
            .map(|t| {
                let idx: Vec<usize> = t.iter().map(|&x| x as usize).collect();
                let c = Chain::primitive_tensor(table.clone(), j, &idx)?;
                let sc = sigma.apply(j, &c)?;
                let dc = c.boundary()?;
                let sdc = sigma.apply(j - 1, &dc)?;
                let identity = sc.boundary()?.try_add(&sdc)? == c;
                let weakened = sdc.boundary()? == dc;
                Ok(TupleOutcome { identity, weakened, norm: sc.l1_norm() })
            })
            .collect::<Result<_>>()?;
        let witness = tuples
            .iter()
            .zip(&outcomes)
            .find(|(_, o)| !o.identity || !o.weakened)
            .map(|(t, _)| labels(&table, &t.iter().map(|&x| x as usize).collect::<Vec<_>>()));
        let sigma_norm = outcomes.iter().map(|o| &o.norm).max().cloned().unwrap_or_else(Q::zero);
        let w_norm = tower.w(j)?.l1_norm();
        out.push(SplittingDegree {
            j,
            tuples_checked: tuples.len(),
            identity_holds: outcomes.iter().all(|o| o.identity),
            weakened_hypothesis_holds: outcomes.iter().all(|o| o.weakened),
            witness,
            within_norm_bound: sigma_norm <= w_norm,
            sigma_norm: format_q(&sigma_norm),
            w_norm: format_q(&w_norm),
        });
    }
    let passed = out
        .iter()
        .all(|d| d.identity_holds && d.weakened_hypothesis_holds && d.within_norm_bound);
    Ok(SplittingReport { table_size: size, degrees: out, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityReport {
    pub j: usize,
    pub tuples_checked: usize,
    pub commutes: bool,
    pub witness: Option<Vec<String>>,
}

/// Checks `θ^{⊗j+2} σ^H_j = σ^K_j θ^{⊗j+1}` on every primitive tensor of degree `j` over `H`.
pub fn verify_naturality(
    tower: &SigmaTower,
    theta: &Morphism,
    j: usize,
    caps: &Caps,
) -> Result<NaturalityReport> {
    if j > tower.jmax() {
        return Err(Error::DegreeOutOfRange { degree: j, max: tower.jmax() });
    }
    let source = theta.source().clone();
    let sigma_h = tower.evaluator(source.clone())?;
    let sigma_k = tower.evaluator(theta.target().clone())?;
    let size = source.len();
    caps.check_dim(&format!("chain space of degree {}", j + 1), tensor_dim(size, j + 2))?;
    let tuples: Vec<Tuple> = all_tuples(size, size, j + 1).collect();
    let ok: Vec<bool> = tuples
        .par_iter()
        .map(|t| {
            let idx: Vec<usize> = t.iter().map(|&x| x as usize).collect();
            let c = Chain::primitive_tensor(source.clone(), j, &idx)?;
            let lhs = sigma_h.apply(j, &c)?.pushforward(theta)?;
            let rhs = sigma_k.apply(j, &c.pushforward(theta)?)?;
            Ok(lhs == rhs)
        })
        .collect::<Result<_>>()?;
    let witness = tuples
        .iter()
        .zip(&ok)
        .find(|(_, &good)| !good)
        .map(|(t, _)| labels(&source, &t.iter().map(|&x| x as usize).collect::<Vec<_>>()));
    Ok(NaturalityReport { j, tuples_checked: tuples.len(), commutes: witness.is_none(), witness })
}
