//! JSON file formats for tables, morphisms, chains, algebra elements and bimodules.
//!
//! Tables: `{"elements": [...], "table": [[...]], "unit": i | null}`.
//! Morphisms: `{"source": path, "target": path, "map": [...]}`, with paths
//! relative to the morphism file. Chains: `{"base": path | table, "degree": n,
//! "coeffs": {"(i,j,k)": "num/den"}}`. Algebra elements: `{"base": path | table,
//! "coeffs": {"label": "num/den"}}`. Bimodules: `{"dim": d, "left": {"label":
//! matrix}, "right": {...}, "symmetric": bool}`. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::AlgebraElement;
use crate::chains::{Bimodule, Chain};
use crate::error::{Error, Result};
use crate::homology::matrix::RationalMatrix;
use crate::scalar::{format_q, parse_q, Q};
use crate::semilattice::{Morphism, SemigroupTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub unit: Option<usize>,
}

impl TableFile {
    pub fn from_table(t: &SemigroupTable) -> Self {
        TableFile { elements: t.elements().to_vec(), table: t.rows(), unit: t.unit() }
    }

    pub fn into_table(self) -> Result<SemigroupTable> {
        SemigroupTable::validate(self.elements, self.table, self.unit)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

/// A table given either by path or inline.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Path(String),
    Inline(TableFile),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainFileIn {
    base: BaseRef,
    degree: usize,
    coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFileIn {
    base: BaseRef,
    coeffs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Int(i64),
    Text(String),
}

impl ScalarRepr {
    fn value(&self) -> Result<Q> {
        match self {
            ScalarRepr::Int(n) => Ok(Q::from_integer((*n).into())),
            ScalarRepr::Text(s) => parse_q(s),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BimoduleFileIn {
    dim: usize,
    left: BTreeMap<String, Vec<Vec<ScalarRepr>>>,
    right: BTreeMap<String, Vec<Vec<ScalarRepr>>>,
    symmetric: bool,
}

/// Entries serialized in the given order, so output follows canonical tuple order.
struct OrderedMap<'a>(&'a [(String, String)]);

impl Serialize for OrderedMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct ChainFileOut<'a> {
    base: &'a BaseRef,
    degree: usize,
    coeffs: OrderedMap<'a>,
}

#[derive(Serialize)]
struct AlgebraFileOut<'a> {
    base: &'a BaseRef,
    coeffs: OrderedMap<'a>,
}

#[derive(Serialize)]
struct BimoduleFileOut {
    dim: usize,
    left: BTreeMap<String, Vec<Vec<String>>>,
    right: BTreeMap<String, Vec<Vec<String>>>,
    symmetric: bool,
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    write_text(path, &to_json(value)?)
}

fn relative_to(file: &Path, target: &str) -> PathBuf {
    let target = Path::new(target);
    if target.is_absolute() {
        return target.to_path_buf();
    }
    file.parent().map_or_else(|| target.to_path_buf(), |dir| dir.join(target))
}

fn resolve_base(file: &Path, base: BaseRef) -> Result<SemigroupTable> {
    match base {
        BaseRef::Path(p) => read_table(&relative_to(file, &p)),
        BaseRef::Inline(t) => t.into_table(),
    }
}

pub fn parse_table(text: &str) -> Result<SemigroupTable> {
    serde_json::from_str::<TableFile>(text)?.into_table()
}

pub fn read_table(path: &Path) -> Result<SemigroupTable> {
    parse_table(&read_text(path)?)
}

pub fn table_to_json(t: &SemigroupTable) -> Result<String> {
    to_json(&TableFile::from_table(t))
}

pub fn write_table(path: &Path, t: &SemigroupTable) -> Result<()> {
    write_text(path, &table_to_json(t)?)
}

pub fn read_morphism(path: &Path) -> Result<Morphism> {
    let file: MorphismFile = read_json(path)?;
    let source = read_table(&relative_to(path, &file.source))?;
    let target = read_table(&relative_to(path, &file.target))?;
    Morphism::validate(Arc::new(source), Arc::new(target), file.map)
}

fn tuple_key(t: &[u16]) -> String {
    let parts: Vec<String> = t.iter().map(u16::to_string).collect();
    format!("({})", parts.join(","))
}

fn parse_tuple_key(key: &str) -> Result<Vec<usize>> {
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|k| k.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("tuple key {key:?} is not of the form (i,j,...)")))?;
    inner
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad tuple key {key:?}"))))
        .collect()
}

/// Module-free chains only; the base table is written inline.
pub fn chain_to_json(c: &Chain) -> Result<String> {
    if c.module().is_some() {
        return Err(Error::ModuleMismatch);
    }
    let base = BaseRef::Inline(TableFile::from_table(c.base()));
    let coeffs: Vec<(String, String)> = c.terms().map(|(t, v)| (tuple_key(t), format_q(v))).collect();
    to_json(&ChainFileOut { base: &base, degree: c.degree(), coeffs: OrderedMap(&coeffs) })
}

pub fn write_chain(path: &Path, c: &Chain) -> Result<()> {
    write_text(path, &chain_to_json(c)?)
}

fn chain_from_file(path: &Path, file: ChainFileIn) -> Result<Chain> {
    let base = Arc::new(resolve_base(path, file.base)?);
    let mut c = Chain::zero(base, file.degree);
    for (k, v) in file.coeffs {
        c.add_term(&parse_tuple_key(&k)?, parse_q(&v)?)?;
    }
    Ok(c)
}

pub fn parse_chain(text: &str) -> Result<Chain> {
    chain_from_file(Path::new("."), serde_json::from_str(text)?)
}

pub fn read_chain(path: &Path) -> Result<Chain> {
    chain_from_file(path, serde_json::from_str(&read_text(path)?)?)
}

pub fn algebra_element_to_json(a: &AlgebraElement) -> Result<String> {
    let base = BaseRef::Inline(TableFile::from_table(a.base()));
    let coeffs: Vec<(String, String)> =
        a.terms().map(|(s, v)| (a.base().label(s).to_string(), format_q(v))).collect();
    to_json(&AlgebraFileOut { base: &base, coeffs: OrderedMap(&coeffs) })
}

pub fn read_algebra_element(path: &Path) -> Result<AlgebraElement> {
    let file: AlgebraFileIn = read_json(path)?;
    let base = Arc::new(resolve_base(path, file.base)?);
    let terms = file
        .coeffs
        .iter()
        .map(|(label, v)| {
            let s = base
                .index_of(label)
                .ok_or_else(|| Error::Parse(format!("unknown element label {label:?}")))?;
            Ok((s, parse_q(v)?))
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraElement::from_terms(base, terms)
}

fn actions_for(
    table: &SemigroupTable,
    dim: usize,
    side: &str,
    given: &BTreeMap<String, Vec<Vec<ScalarRepr>>>,
) -> Result<Vec<RationalMatrix>> {
    if let Some(extra) = given.keys().find(|l| table.index_of(l).is_none()) {
        return Err(Error::Parse(format!("{side} action names unknown element {extra:?}")));
    }
    table
        .elements()
        .iter()
        .map(|label| {
            let rows = given
                .get(label)
                .ok_or_else(|| Error::Parse(format!("{side} action missing element {label:?}")))?;
            let rows = rows
                .iter()
                .map(|r| r.iter().map(ScalarRepr::value).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let m = if dim == 0 && rows.is_empty() {
                RationalMatrix::zeros(0, 0)
            } else {
                RationalMatrix::from_dense(&rows)?
            };
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidBimodule(format!(
                    "{side} action of {label:?} is not {dim}x{dim}"
                )));
            }
            Ok(m)
        })
        .collect()
}

pub fn parse_bimodule(text: &str, table: &SemigroupTable) -> Result<Bimodule> {
    let file: BimoduleFileIn = serde_json::from_str(text)?;
    let left = actions_for(table, file.dim, "left", &file.left)?;
    let right = actions_for(table, file.dim, "right", &file.right)?;
    let module = Bimodule::new(table, file.dim, left, right)?;
    if module.is_symmetric() != file.symmetric {
        return Err(Error::InvalidBimodule(format!(
            "declared symmetric = {} but the actions say {}",
            file.symmetric,
            module.is_symmetric()
        )));
    }
    Ok(module)
}

pub fn read_bimodule(path: &Path, table: &SemigroupTable) -> Result<Bimodule> {
    parse_bimodule(&read_text(path)?, table)
}

pub fn bimodule_to_json(m: &Bimodule, table: &SemigroupTable) -> Result<String> {
    m.check_table(table)?;
    let dense = |mat: &RationalMatrix| -> Vec<Vec<String>> {
        mat.to_dense().iter().map(|r| r.iter().map(format_q).collect()).collect()
    };
    let left = (0..table.len()).map(|s| (table.label(s).to_string(), dense(m.left(s)))).collect();
    let right = (0..table.len()).map(|s| (table.label(s).to_string(), dense(m.right(s)))).collect();
    to_json(&BimoduleFileOut {
        dim: m.dim(),
        left,
        right,
        symmetric: m.is_symmetric(),
    })
}
