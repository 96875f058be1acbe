//! End-to-end batch run: homology, duality and splitting over a corpus of
//! tables, naturality over seeded morphisms, and the non-vanishing control.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::chains::Bimodule;
use crate::error::Result;
use crate::homology::{cohomology_dims, duality_check, homology_dims, unitisation_check, Coefficients};
use crate::natural_splitting::{verify_naturality, verify_splitting, SigmaTower};
use crate::scalar::format_q;
use crate::semilattice::{
    chain_semilattice, collapse_morphism, enumerate_non_unital_commutative,
    enumerate_unital_semilattices, free_unital_semilattice, null_monoid, substitution_morphism,
    Morphism, SemigroupTable,
};

pub const CONTROL_LINE: &str = "control: nonzero H_1 detected";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Enumerate all unital semilattices with at most this many elements.
    pub max_size: usize,
    /// Chains of length `1..=chain_max`.
    pub chain_max: usize,
    /// Free unital semilattices on `1..=free_max` generators.
    pub free_max: usize,
    /// Non-unital commutative tables with at most this many elements.
    pub non_unital_max: usize,
    pub control: bool,
    pub jmax: usize,
    pub nmax: usize,
    pub morphisms: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            max_size: 3,
            chain_max: 5,
            free_max: 2,
            non_unital_max: 2,
            control: true,
            jmax: 2,
            nmax: 2,
            morphisms: 10,
        }
    }
}

impl SuiteConfig {
    /// A configuration that checks nothing.
    pub fn empty() -> Self {
        SuiteConfig {
            max_size: 0,
            chain_max: 0,
            free_max: 0,
            non_unital_max: 0,
            control: false,
            morphisms: 0,
            ..SuiteConfig::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub name: String,
    pub kind: &'static str,
    pub size: usize,
    pub homology: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub duality: bool,
    pub splitting: Option<bool>,
    pub sigma_norms: Vec<String>,
    pub witness: Option<Vec<String>>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub description: String,
    pub source_size: usize,
    pub target_size: usize,
    pub commutes: Vec<bool>,
    pub witness: Option<Vec<String>>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub morphisms: usize,
    pub failures: Vec<String>,
    pub control: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub w_norms: Vec<String>,
    pub instances: Vec<InstanceReport>,
    pub morphisms: Vec<MorphismReport>,
    pub summary: Summary,
}

struct Instance {
    name: String,
    kind: &'static str,
    table: Arc<SemigroupTable>,
}

fn corpus(config: &SuiteConfig, caps: &Caps) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let mut push = |name: String, kind, table| out.push(Instance { name, kind, table: Arc::new(table) });
    let mut counts = std::collections::BTreeMap::new();
    for t in enumerate_unital_semilattices(config.max_size) {
        let i = counts.entry(t.len()).or_insert(0usize);
        push(format!("semilattice-{}-{}", t.len(), i), "unital", t);
        *i += 1;
    }
    for n in 1..=config.chain_max {
        push(format!("chain-{n}"), "unital", chain_semilattice(n, caps)?);
    }
    for k in 1..=config.free_max {
        push(format!("free-{k}"), "unital", free_unital_semilattice(k, caps)?);
    }
    counts.clear();
    for t in enumerate_non_unital_commutative(config.non_unital_max) {
        let i = counts.entry(t.len()).or_insert(0usize);
        push(format!("non-unital-{}-{}", t.len(), i), "non-unital", t);
        *i += 1;
    }
    if config.control {
        push("null-monoid".into(), "control", null_monoid());
    }
    Ok(out)
}

fn dims(r: &crate::homology::HomologyReport) -> Vec<usize> {
    r.degrees.iter().map(|d| d.dim).collect()
}

fn run_instance(inst: &Instance, tower: &SigmaTower, config: &SuiteConfig, caps: &Caps) -> Result<InstanceReport> {
    let t = &inst.table;
    let mut report = InstanceReport {
        name: inst.name.clone(),
        kind: inst.kind,
        size: t.len(),
        homology: Vec::new(),
        cohomology: Vec::new(),
        duality: true,
        splitting: None,
        sigma_norms: Vec::new(),
        witness: None,
        passed: false,
    };
    match inst.kind {
        "non-unital" => {
            // unitisation with the regular module; `cohomology` holds H^n(S, M)
            let u = unitisation_check(t, &Bimodule::regular(t), config.nmax, caps)?;
            report.homology = u.degrees.iter().map(|d| d.left).collect();
            report.cohomology = u.degrees.iter().map(|d| d.right).collect();
            report.duality = duality_check(t, config.nmax, caps)?.passed;
            report.passed = u.passed && report.duality;
        }
        kind => {
            let h = homology_dims(t, config.nmax, &Coefficients::Algebra, caps)?;
            let c = cohomology_dims(t, config.nmax, &Coefficients::Dual, caps)?;
            report.duality = duality_check(t, config.nmax, caps)?.passed;
            report.homology = dims(&h);
            report.cohomology = dims(&c);
            if kind == "control" {
                report.passed = h.dim(1).is_some_and(|d| d >= 1) && report.duality;
            } else {
                let degrees = 1..=config.jmax.min(config.nmax.max(1));
                let s = verify_splitting(tower, t.clone(), degrees, caps)?;
                report.sigma_norms = s.degrees.iter().map(|d| d.sigma_norm.clone()).collect();
                report.witness = s.degrees.iter().find_map(|d| d.witness.clone());
                report.splitting = Some(s.passed);
                report.passed = h.vanishes() && c.vanishes() && report.duality && s.passed;
            }
        }
    }
    Ok(report)
}

fn describe_tuple(t: &SemigroupTable, x: &[usize]) -> String {
    let labels: Vec<&str> = x.iter().map(|&i| t.label(i)).collect();
    format!("({})", labels.join(","))
}

/// Seeded morphisms between corpus tables: substitutions, collapses,
/// relabelings and composites of a substitution with a collapse.
fn seeded_morphisms(
    tables: &[(String, Arc<SemigroupTable>)],
    count: usize,
    seed: u64,
    caps: &Caps,
) -> Result<Vec<(String, Morphism)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if tables.is_empty() {
        return Ok(out);
    }
    for i in 0..count {
        let (name, t) = &tables[rng.gen_range(0..tables.len())];
        let pick = |rng: &mut ChaCha8Rng| rng.gen_range(0..t.len());
        let m = match i % 4 {
            0 => {
                let arity = rng.gen_range(1..=3);
                let x: Vec<usize> = (0..arity).map(|_| pick(&mut rng)).collect();
                let d = format!("substitution {} into {name}", describe_tuple(t, &x));
                (d, substitution_morphism(t.clone(), &x, caps)?)
            }
            1 => {
                let a = pick(&mut rng);
                let d = format!("collapse of {name} at {}", t.label(a));
                (d, collapse_morphism(t.clone(), a, caps)?)
            }
            2 => {
                let mut perm: Vec<usize> = (0..t.len()).collect();
                perm.shuffle(&mut rng);
                let (relabeled, perm) = t.relabel(&perm)?;
                let d = format!("relabeling of {name} by {perm:?}");
                (d, Morphism::validate(t.clone(), Arc::new(relabeled), perm)?)
            }
            _ => {
                let x: Vec<usize> = (0..2).map(|_| pick(&mut rng)).collect();
                let a = pick(&mut rng);
                let sub = substitution_morphism(t.clone(), &x, caps)?;
                let col = collapse_morphism(t.clone(), a, caps)?;
                let d = format!(
                    "collapse at {} after substitution {} into {name}",
                    t.label(a),
                    describe_tuple(t, &x)
                );
                (d, sub.then(&col)?)
            }
        };
        out.push(m);
    }
    Ok(out)
}

fn run_morphism(desc: &str, theta: &Morphism, tower: &SigmaTower, config: &SuiteConfig, caps: &Caps) -> Result<MorphismReport> {
    let mut commutes = Vec::new();
    let mut witness = None;
    for j in 1..=config.jmax {
        let r = verify_naturality(tower, theta, j, caps)?;
        if witness.is_none() {
            witness = r.witness.clone();
        }
        commutes.push(r.commutes);
    }
    Ok(MorphismReport {
        description: desc.to_string(),
        source_size: theta.source().len(),
        target_size: theta.target().len(),
        passed: commutes.iter().all(|&c| c),
        commutes,
        witness,
    })
}

pub fn run_suite(config: &SuiteConfig, tower: Option<&SigmaTower>, caps: &Caps) -> Result<SuiteReport> {
    let built;
    let tower = match tower {
        Some(t) if t.jmax() >= config.jmax => t,
        _ => {
            built = SigmaTower::build(config.jmax, caps)?;
            &built
        }
    };
    let instances = corpus(config, caps)?;
    let instance_reports = instances
        .par_iter()
        .map(|inst| run_instance(inst, tower, config, caps))
        .collect::<Result<Vec<_>>>()?;
    let unital: Vec<(String, Arc<SemigroupTable>)> = instances
        .iter()
        .filter(|i| i.kind == "unital")
        .map(|i| (i.name.clone(), i.table.clone()))
        .collect();
    let morphisms = seeded_morphisms(&unital, config.morphisms, config.seed, caps)?;
    let morphism_reports = morphisms
        .par_iter()
        .map(|(d, m)| run_morphism(d, m, tower, config, caps))
        .collect::<Result<Vec<_>>>()?;

    let mut failures: Vec<String> =
        instance_reports.iter().filter(|r| !r.passed).map(|r| r.name.clone()).collect();
    failures.extend(morphism_reports.iter().filter(|r| !r.passed).map(|r| r.description.clone()));
    let control = instance_reports
        .iter()
        .find(|r| r.kind == "control")
        .map(|r| if r.passed { CONTROL_LINE.to_string() } else { "control: H_1 unexpectedly zero".to_string() });
    let w_norms = (1..=config.jmax)
        .map(|j| Ok(format_q(&tower.w(j)?.l1_norm())))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        config: config.clone(),
        w_norms,
        summary: Summary {
            instances: instance_reports.len(),
            morphisms: morphism_reports.len(),
            passed: failures.is_empty(),
            failures,
            control,
        },
        instances: instance_reports,
        morphisms: morphism_reports,
    })
}

impl SuiteReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.instances {
            let mark = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{mark} {} [{}] |S|={} H_n={:?} H^n={:?}",
                r.name, r.kind, r.size, r.homology, r.cohomology
            ));
            if let Some(s) = r.splitting {
                out.push_str(&format!(" splitting={s}"));
            }
            if let Some(w) = &r.witness {
                out.push_str(&format!(" witness=({})", w.join(",")));
            }
            out.push('\n');
        }
        for m in &self.morphisms {
            let mark = if m.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} naturality: {}\n", m.description));
        }
        if let Some(c) = &self.summary.control {
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&format!(
            "{} instances, {} morphisms, {} failures: {}\n",
            self.summary.instances,
            self.summary.morphisms,
            self.summary.failures.len(),
            if self.summary.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}
