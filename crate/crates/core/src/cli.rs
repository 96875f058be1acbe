//! Command-line interface. Exit codes: 0 pass, 1 mathematical failure,
//! 2 usage or I/O error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::homology::{
    cohomology_dims_with, homology_dims_with, unitisation_check, Coefficients, HomologyReport, RankEngine,
};
use crate::homotopy_free::homotopy_report;
use crate::io;
use crate::natural_splitting::{verify_naturality, verify_splitting, SigmaTower};
use crate::semilattice::{chain_semilattice, free_unital_semilattice, unitize, SemigroupTable};
use crate::suite::{run_suite, SuiteConfig};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    #[default]
    Sparse,
    Dense,
}

#[derive(Debug, Parser)]
#[command(name = "hochlat", version, about = "Exact Hochschild (co)homology of semilattice algebras")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest table size any constructor may produce.
    #[arg(long, global = true)]
    pub cap_elements: Option<usize>,
    /// Largest chain-space dimension (overrides HOCHLAT_CAP_DIM).
    #[arg(long, global = true)]
    pub cap_dim: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a table file.
    Validate { table: PathBuf },
    /// Write the free unital semilattice on K generators.
    Free {
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the chain semilattice with N elements.
    Chain {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Adjoin a unit to a table without one.
    Unitize {
        table: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hochschild homology dimensions.
    Homology(HomologyArgs),
    /// Hochschild cohomology dimensions.
    Cohomology(CohomologyArgs),
    /// Check the free-case contracting homotopy and its norm.
    HomotopyCheck {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        nmax: usize,
    },
    /// Build the splitting tower and save it.
    SigmaBuild {
        #[arg(long, default_value_t = 2)]
        jmax: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the splitting identity on every primitive tensor over a table.
    SigmaVerify {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, default_value_t = 2)]
        jmax: usize,
        /// Saved tower; built in-run when omitted.
        #[arg(long)]
        tower: Option<PathBuf>,
    },
    /// Check naturality of the splitting along a morphism.
    NaturalityCheck {
        #[arg(long)]
        morphism: PathBuf,
        #[arg(long)]
        tower: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        jmax: usize,
    },
    /// Run the whole battery over a generated corpus.
    Suite(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    #[arg(long)]
    pub table: PathBuf,
    /// `A`, `Adual`, or a bimodule file.
    #[arg(long, default_value = "A")]
    pub coefficients: String,
    #[arg(long, default_value_t = 3)]
    pub nmax: usize,
    #[arg(long, value_enum, default_value_t = Engine::Sparse)]
    pub engine: Engine,
}

#[derive(Debug, Args)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub common: HomologyArgs,
    /// Also compare with the unitisation and the unit-linked extension of the module.
    #[arg(long)]
    pub unitisation: bool,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub max_size: usize,
    #[arg(long, default_value_t = 5)]
    pub chain_max: usize,
    #[arg(long, default_value_t = 2)]
    pub free_max: usize,
    #[arg(long, default_value_t = 2)]
    pub non_unital_max: usize,
    #[arg(long)]
    pub no_control: bool,
    #[arg(long, default_value_t = 2)]
    pub jmax: usize,
    #[arg(long, default_value_t = 2)]
    pub nmax: usize,
    #[arg(long, default_value_t = 10)]
    pub morphisms: usize,
    #[arg(long)]
    pub tower: Option<PathBuf>,
}

impl SuiteArgs {
    pub fn config(&self) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            max_size: self.max_size,
            chain_max: self.chain_max,
            free_max: self.free_max,
            non_unital_max: self.non_unital_max,
            control: !self.no_control,
            jmax: self.jmax,
            nmax: self.nmax,
            morphisms: self.morphisms,
        }
    }
}

impl Cli {
    pub fn caps(&self) -> Result<Caps> {
        let mut caps = Caps::from_env()?;
        if let Some(e) = self.cap_elements {
            caps.max_elements = e;
        }
        if let Some(d) = self.cap_dim {
            caps.max_dim = d;
        }
        Ok(caps)
    }
}

struct Output<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> Result<()> {
        let s = match self.format {
            Format::Json => io::to_json(value)?,
            Format::Text => text(),
        };
        self.out.write_all(s.as_bytes()).map_err(|e| Error::io("<stdout>", e))
    }
}

fn load_table(path: &Path) -> Result<Arc<SemigroupTable>> {
    Ok(Arc::new(io::read_table(path)?))
}

fn load_tower(dir: Option<&Path>, jmax: usize, caps: &Caps) -> Result<SigmaTower> {
    match dir {
        Some(d) => {
            let t = SigmaTower::load(d, caps)?;
            if t.jmax() < jmax {
                return Err(Error::DegreeOutOfRange { degree: jmax, max: t.jmax() });
            }
            Ok(t)
        }
        None => SigmaTower::build(jmax, caps),
    }
}

fn coefficients(spec: &str, table: &SemigroupTable) -> Result<Coefficients> {
    Ok(match spec {
        "A" => Coefficients::Algebra,
        "Adual" | "A'" => Coefficients::Dual,
        path => Coefficients::Module(Arc::new(io::read_bimodule(Path::new(path), table)?)),
    })
}

fn engine(e: Engine) -> RankEngine {
    match e {
        Engine::Sparse => RankEngine::Sparse,
        Engine::Dense => RankEngine::Dense,
    }
}

fn homology_text(r: &HomologyReport) -> String {
    let sym = if r.kind == "homology" { "H_" } else { "H^" };
    let mut s = format!(
        "{} of a table with {} elements, coefficients {}{}\n",
        r.kind,
        r.table_size,
        r.coefficients,
        if r.unit_linked { "" } else { " (not unit-linked)" }
    );
    for d in &r.degrees {
        s.push_str(&format!(
            "  n={} dim C={} ker={} im={} dim {sym}{}={}\n",
            d.degree, d.space_dim, d.kernel_dim, d.image_dim, d.degree, d.dim
        ));
    }
    s
}

fn write_or_print(out: &mut Output<'_>, path: Option<&Path>, t: &SemigroupTable) -> Result<()> {
    let text = io::table_to_json(t)?;
    match path {
        Some(p) => io::write_table(p, t),
        None => out.out.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e)),
    }
}

/// Runs one command; `Ok(false)` means a mathematical check failed.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<bool> {
    let caps = cli.caps()?;
    let mut out = Output { format: cli.format, out: stdout };
    match &cli.command {
        Command::Validate { table } => {
            let t = io::read_table(table)?;
            let value = json!({
                "valid": true,
                "elements": t.len(),
                "commutative": t.is_commutative(),
                "idempotent": t.is_idempotent(),
                "unit": t.unit().map(|u| t.label(u).to_string()),
                "unital_semilattice": t.is_unital_semilattice(),
            });
            out.emit(&value, || {
                format!(
                    "valid: {} elements, commutative={}, idempotent={}, unit={}, unital semilattice={}\n",
                    t.len(),
                    t.is_commutative(),
                    t.is_idempotent(),
                    t.unit().map_or("none", |u| t.label(u)),
                    t.is_unital_semilattice()
                )
            })?;
            Ok(true)
        }
        Command::Free { k, out: path } => {
            write_or_print(&mut out, path.as_deref(), &free_unital_semilattice(*k, &caps)?)?;
            Ok(true)
        }
        Command::Chain { n, out: path } => {
            write_or_print(&mut out, path.as_deref(), &chain_semilattice(*n, &caps)?)?;
            Ok(true)
        }
        Command::Unitize { table, out: path } => {
            let t = io::read_table(table)?;
            let u = unitize(&t);
            if !u.adjoined {
                let value = json!({ "adjoined": false, "message": "already unital" });
                out.emit(&value, || "already unital\n".to_string())?;
                return Ok(true);
            }
            write_or_print(&mut out, path.as_deref(), &u.table)?;
            Ok(true)
        }
        Command::Homology(args) => {
            let t = load_table(&args.table)?;
            let c = coefficients(&args.coefficients, &t)?;
            let r = homology_dims_with(&t, args.nmax, &c, engine(args.engine), &caps)?;
            out.emit(&r, || homology_text(&r))?;
            Ok(true)
        }
        Command::Cohomology(args) => {
            let a = &args.common;
            let t = load_table(&a.table)?;
            let c = coefficients(&a.coefficients, &t)?;
            if args.unitisation {
                let module = match &c {
                    Coefficients::Algebra => crate::chains::Bimodule::regular(&t),
                    Coefficients::Dual => crate::chains::Bimodule::dual(&t),
                    Coefficients::Module(m) => (**m).clone(),
                };
                let r = unitisation_check(&t, &module, a.nmax, &caps)?;
                out.emit(&r, || {
                    let mut s = String::new();
                    for d in &r.degrees {
                        s.push_str(&format!(
                            "n={} unitised={} original={} {}\n",
                            d.degree,
                            d.left,
                            d.right,
                            if d.equal { "equal" } else { "DIFFER" }
                        ));
                    }
                    s
                })?;
                return Ok(r.passed);
            }
            let r = cohomology_dims_with(&t, a.nmax, &c, engine(a.engine), &caps)?;
            out.emit(&r, || homology_text(&r))?;
            Ok(true)
        }
        Command::HomotopyCheck { k, nmax } => {
            let records = homotopy_report(*k, *nmax, &caps)?;
            let passed = records.iter().all(|r| r.identity_verified && r.within_bound);
            out.emit(&records, || {
                records
                    .iter()
                    .map(|r| {
                        format!(
                            "k={} n={} identity={} norm={} bound={}\n",
                            r.k, r.n, r.identity_verified, r.exact_norm, r.bound
                        )
                    })
                    .collect()
            })?;
            Ok(passed)
        }
        Command::SigmaBuild { jmax, out: dir } => {
            let tower = SigmaTower::build(*jmax, &caps)?;
            tower.save(dir)?;
            let norms: Vec<String> =
                tower.chains().iter().map(|w| crate::scalar::format_q(&w.l1_norm())).collect();
            let value = json!({ "jmax": jmax, "out": dir, "w_norms": norms });
            out.emit(&value, || {
                let mut s = format!("built w[1..={jmax}] into {}\n", dir.display());
                for (i, n) in norms.iter().enumerate() {
                    s.push_str(&format!("  |w[{}]|_1 = {n}\n", i + 1));
                }
                s
            })?;
            Ok(true)
        }
        Command::SigmaVerify { table, jmax, tower } => {
            let t = load_table(table)?;
            let tower = load_tower(tower.as_deref(), *jmax, &caps)?;
            let r = verify_splitting(&tower, t, 1..=*jmax, &caps)?;
            out.emit(&r, || {
                let mut s = String::new();
                for d in &r.degrees {
                    s.push_str(&format!(
                        "j={} tuples={} identity={} weakened={} |sigma|={} |w|={}",
                        d.j, d.tuples_checked, d.identity_holds, d.weakened_hypothesis_holds, d.sigma_norm, d.w_norm
                    ));
                    if let Some(w) = &d.witness {
                        s.push_str(&format!(" witness=({})", w.join(",")));
                    }
                    s.push('\n');
                }
                s.push_str(if r.passed { "PASS\n" } else { "FAIL\n" });
                s
            })?;
            Ok(r.passed)
        }
        Command::NaturalityCheck { morphism, tower, jmax } => {
            let theta = io::read_morphism(morphism)?;
            let tower = load_tower(tower.as_deref(), *jmax, &caps)?;
            let reports = (1..=tower.jmax().min(*jmax))
                .map(|j| verify_naturality(&tower, &theta, j, &caps))
                .collect::<Result<Vec<_>>>()?;
            let passed = reports.iter().all(|r| r.commutes);
            out.emit(&reports, || {
                reports
                    .iter()
                    .map(|r| {
                        let w = r.witness.as_ref().map(|w| format!(" witness=({})", w.join(","))).unwrap_or_default();
                        format!("j={} tuples={} commutes={}{w}\n", r.j, r.tuples_checked, r.commutes)
                    })
                    .collect()
            })?;
            Ok(passed)
        }
        Command::Suite(args) => {
            let config = args.config();
            let tower = match &args.tower {
                Some(d) => Some(load_tower(Some(d), config.jmax, &caps)?),
                None => None,
            };
            let r = run_suite(&config, tower.as_ref(), &caps)?;
            out.emit(&r, || r.to_text())?;
            Ok(r.summary.passed)
        }
    }
}

/// Diagnostic for a failed command, in the requested format.
pub fn report_error(format: Format, err: &Error, stdout: &mut dyn Write, stderr: &mut dyn Write) {
    let witness = match err {
        Error::NonAssociative { x, y, z } => Some(vec![*x, *y, *z]),
        Error::NotHomomorphism { x, y } => Some(vec![*x, *y]),
        _ => None,
    };
    match format {
        Format::Json => {
            let value = json!({ "error": err.to_string(), "exit_code": err.exit_code(), "witness": witness });
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&value).unwrap_or_default());
        }
        Format::Text => {
            let _ = writeln!(stderr, "error: {err}");
        }
    }
}
