//! JSON file formats and `builtin:` identifiers.
//!
//! Structure tensor: `{"dim": r, "entries": [[i, j, k, num, den], ...]}` with
//! 1-based indices meaning `c^i_jk = num/den`. Entries with `j > k` may be
//! omitted; they are completed by antisymmetry, and a listed pair that
//! contradicts antisymmetry is rejected.
//!
//! Cayley table: `{"order": n, "table": [[...], ...], "names": [...]}` with
//! 0-based element indices and optional names.
//!
//! Generator set: `{"r": r, "dim": n, "S": [...], "T": [...]}` where each
//! matrix is a list of rows of `[num, den]` pairs, plus an optional
//! `"tensor"` holding the structure constants the generators realize.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use mnl_core::algebra::catalog_algebra;
use mnl_core::birep::{octonion_lr_generators, quaternion_lr_generators, GeneratorSet};
use mnl_core::linalg::Matrix;
use mnl_core::loops::{chein_double, groups, octonion_unit_loop, CayleyTable};
use mnl_core::rational::{int, Rational};
use mnl_core::StructureTensor;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const BUILTIN: &str = "builtin:";

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
}

fn invalid(what: &'static str, detail: impl ToString) -> InputError {
    InputError::Invalid {
        what,
        detail: detail.to_string(),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| InputError::Json {
        path: path.display().to_string(),
        source,
    })
}

fn rational(num: i64, den: i64, what: &'static str) -> Result<Rational, InputError> {
    if den == 0 {
        return Err(invalid(what, "zero denominator"));
    }
    Ok(Rational::new(num.into(), den.into()))
}

fn pair(q: &Rational) -> Result<[i64; 2], InputError> {
    let num =
        i64::try_from(*q.numer()).map_err(|_| invalid("rational", "numerator overflows i64"))?;
    let den =
        i64::try_from(*q.denom()).map_err(|_| invalid("rational", "denominator overflows i64"))?;
    Ok([num, den])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub dim: usize,
    pub entries: Vec<[i64; 5]>,
}

impl TensorFile {
    pub fn to_tensor(&self) -> Result<StructureTensor, InputError> {
        let r = self.dim;
        if r == 0 {
            return Err(invalid("tensor", "dimension must be positive"));
        }
        let mut values: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for e in &self.entries {
            let idx: Vec<usize> = e[..3]
                .iter()
                .map(|&x| {
                    usize::try_from(x)
                        .ok()
                        .filter(|&x| (1..=r).contains(&x))
                        .map(|x| x - 1)
                })
                .collect::<Option<_>>()
                .ok_or_else(|| invalid("tensor", format!("index out of range in {e:?}")))?;
            let q = rational(e[3], e[4], "tensor")?;
            let (i, j, k) = (idx[0], idx[1], idx[2]);
            for (key, value) in [((i, j, k), q), ((i, k, j), -q)] {
                match values.get(&key) {
                    Some(old) if *old != value => {
                        return Err(invalid(
                            "tensor",
                            format!(
                                "entries contradict antisymmetry at c[{}][{}][{}]",
                                key.0 + 1,
                                key.1 + 1,
                                key.2 + 1
                            ),
                        ))
                    }
                    _ => {
                        values.insert(key, value);
                    }
                }
            }
        }
        StructureTensor::from_fn(r, |i, j, k| {
            values.get(&(i, j, k)).copied().unwrap_or_else(|| int(0))
        })
        .map_err(|e| invalid("tensor", e))
    }

    /// Writes the entries with `j < k`.
    pub fn from_tensor(c: &StructureTensor) -> Result<Self, InputError> {
        let mut entries = Vec::new();
        for &(i, j, k, q) in c.support() {
            if j < k {
                let [num, den] = pair(&q)?;
                entries.push([(i + 1) as i64, (j + 1) as i64, (k + 1) as i64, num, den]);
            }
        }
        Ok(Self {
            dim: c.dim(),
            entries,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CayleyFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl CayleyFile {
    pub fn to_table(&self) -> Result<CayleyTable, InputError> {
        if self.table.len() != self.order {
            return Err(invalid(
                "cayley table",
                format!("order {} but {} rows", self.order, self.table.len()),
            ));
        }
        CayleyTable::new(self.table.clone(), self.names.clone())
            .map_err(|e| invalid("cayley table", e))
    }

    pub fn from_table(t: &CayleyTable) -> Self {
        Self {
            order: t.order(),
            table: t.rows(),
            names: t.names().map(|n| n.to_vec()),
        }
    }
}

type MatrixJson = Vec<Vec<[i64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub r: usize,
    pub dim: usize,
    #[serde(rename = "S")]
    pub s: Vec<MatrixJson>,
    #[serde(rename = "T")]
    pub t: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<TensorFile>,
}

fn matrix_from_json(m: &MatrixJson, dim: usize) -> Result<Matrix, InputError> {
    if m.len() != dim || m.iter().any(|row| row.len() != dim) {
        return Err(invalid(
            "generator set",
            format!("expected {dim}x{dim} matrices"),
        ));
    }
    let mut out = Matrix::zeros(dim, dim);
    for (i, row) in m.iter().enumerate() {
        for (j, &[num, den]) in row.iter().enumerate() {
            out.set(i, j, rational(num, den, "generator set")?);
        }
    }
    Ok(out)
}

fn matrix_to_json(m: &Matrix) -> Result<MatrixJson, InputError> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(pair).collect())
        .collect()
}

/// Generators together with the tensor they are meant to realize, if known.
#[derive(Clone, Debug)]
pub struct LoadedGenerators {
    pub gen: GeneratorSet,
    pub tensor: Option<StructureTensor>,
}

impl GeneratorFile {
    pub fn to_generators(&self) -> Result<LoadedGenerators, InputError> {
        if self.s.len() != self.r || self.t.len() != self.r {
            return Err(invalid(
                "generator set",
                format!(
                    "r = {} but {} S and {} T matrices",
                    self.r,
                    self.s.len(),
                    self.t.len()
                ),
            ));
        }
        let s = self
            .s
            .iter()
            .map(|m| matrix_from_json(m, self.dim))
            .collect::<Result<_, _>>()?;
        let t = self
            .t
            .iter()
            .map(|m| matrix_from_json(m, self.dim))
            .collect::<Result<_, _>>()?;
        let gen = GeneratorSet::new(s, t).map_err(|e| invalid("generator set", e))?;
        let tensor = self
            .tensor
            .as_ref()
            .map(TensorFile::to_tensor)
            .transpose()?;
        if let Some(c) = &tensor {
            if c.dim() != self.r {
                return Err(invalid("generator set", "tensor dimension differs from r"));
            }
        }
        Ok(LoadedGenerators { gen, tensor })
    }

    pub fn from_generators(
        gen: &GeneratorSet,
        tensor: Option<&StructureTensor>,
    ) -> Result<Self, InputError> {
        Ok(Self {
            r: gen.r(),
            dim: gen.dim(),
            s: gen
                .s()
                .iter()
                .map(matrix_to_json)
                .collect::<Result<_, _>>()?,
            t: gen
                .t()
                .iter()
                .map(matrix_to_json)
                .collect::<Result<_, _>>()?,
            tensor: tensor.map(TensorFile::from_tensor).transpose()?,
        })
    }
}

/// Batch description for the `etc` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub generators: String,
    #[serde(default)]
    pub sites: Option<usize>,
    #[serde(default)]
    pub format: Option<String>,
}

pub fn load_scenario(path: &Path) -> Result<Scenario, InputError> {
    read_json(path)
}

/// `builtin:m7`, `builtin:su2`, `builtin:sl2`, `builtin:abelian(r)` or a path.
pub fn load_tensor(spec: &str) -> Result<StructureTensor, InputError> {
    match spec.strip_prefix(BUILTIN) {
        Some(name) => catalog_algebra(name).map_err(|_| InputError::UnknownBuiltin(spec.into())),
        None => read_json::<TensorFile>(Path::new(spec))?.to_tensor(),
    }
}

/// `builtin:octonion-loop`, `builtin:chein-<group>` (e.g. `chein-S3`),
/// `builtin:<group>` for any catalog group, or a path.
pub fn load_loop(spec: &str) -> Result<CayleyTable, InputError> {
    let Some(name) = spec.strip_prefix(BUILTIN) else {
        return read_json::<CayleyFile>(Path::new(spec))?.to_table();
    };
    let unknown = || InputError::UnknownBuiltin(spec.into());
    if name == "octonion-loop" {
        return Ok(octonion_unit_loop());
    }
    if let Some(group) = name.strip_prefix("chein-") {
        let g = groups::by_name(group).ok_or_else(unknown)?;
        return chein_double(&g).map_err(|e| invalid("group", e));
    }
    groups::by_name(name).ok_or_else(unknown)
}

/// `builtin:octonion` (realizing m7), `builtin:quaternion` (realizing 2·su2)
/// or a path.
pub fn load_generators(spec: &str) -> Result<LoadedGenerators, InputError> {
    match spec.strip_prefix(BUILTIN) {
        Some("octonion") => Ok(LoadedGenerators {
            gen: octonion_lr_generators(),
            tensor: Some(catalog_algebra("m7").expect("catalog tensor")),
        }),
        Some("quaternion") => Ok(LoadedGenerators {
            gen: quaternion_lr_generators(),
            tensor: Some(
                catalog_algebra("su2")
                    .expect("catalog tensor")
                    .scale(int(2)),
            ),
        }),
        Some(_) => Err(InputError::UnknownBuiltin(spec.into())),
        None => read_json::<GeneratorFile>(Path::new(spec))?.to_generators(),
    }
}
