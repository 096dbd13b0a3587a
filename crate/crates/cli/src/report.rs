//! JSON report documents.

use std::fs;
use std::io::Write;
use std::path::Path;

use fpdim_core::bricks::{BrickList, BrickSet};
use fpdim_core::{BoundQuiver, Field, Matrix, Representation};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dsl::{self, QuiverFile};
use crate::error::CliError;

pub const SCHEMA: &str = "fpdim-report/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    /// One line per headline result, for `--text`.
    pub summary: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            inputs,
            results,
            summary: Vec::new(),
            certificate: None,
        }
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let r: Report = serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad report: {e}")))?;
        if r.schema != SCHEMA {
            return Err(CliError::Input(format!("unsupported report schema {:?}", r.schema)));
        }
        Ok(r)
    }
}

/// Writes through a temporary sibling so readers never see a partial file.
pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

/// One arrow's matrix, rows of decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapCert {
    pub arrow: String,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrickCert {
    pub dims: Vec<usize>,
    pub maps: Vec<MapCert>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessCert {
    /// Indices into the certificate's brick list.
    pub members: Vec<usize>,
    pub hom: Vec<Vec<usize>>,
    /// `dim Ext¹(X_i, X_j)`.
    pub adjacency: Vec<Vec<u64>>,
    pub rho: f64,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchCert {
    pub max_size: usize,
    pub tol: f64,
    pub best: f64,
    pub sets_examined: u64,
}

/// Everything needed to recompute a report's numbers: the bound quiver in
/// the text format, the field, the bricks, and the best brick set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub field: String,
    pub quiver: String,
    pub cap: Vec<usize>,
    pub bricks_exhaustive: bool,
    pub bricks: Vec<BrickCert>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessCert>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchCert>,
}

pub fn matrix_strings<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}

pub fn brick_cert<F: Field>(bq: &BoundQuiver, b: &Representation<F>) -> BrickCert {
    BrickCert {
        dims: b.dims().to_vec(),
        maps: bq
            .quiver()
            .arrows()
            .iter()
            .zip(b.maps())
            .map(|(a, m)| MapCert {
                arrow: a.name.clone(),
                rows: matrix_strings(m),
            })
            .collect(),
    }
}

pub fn witness_cert(hom: &[Vec<usize>], set: &BrickSet, rho: f64, method: &str) -> WitnessCert {
    WitnessCert {
        members: set.members.clone(),
        hom: set.members.iter().map(|&i| set.members.iter().map(|&j| hom[i][j]).collect()).collect(),
        adjacency: set.adjacency.rows(),
        rho,
        method: method.to_string(),
    }
}

pub fn certificate<F: Field>(bq: &BoundQuiver, list: &BrickList<F>) -> Result<Certificate, CliError> {
    let file = QuiverFile::from_bound_quiver(bq).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Certificate {
        field: F::name(),
        quiver: dsl::print(&file),
        cap: list.cap.clone(),
        bricks_exhaustive: list.exhaustive,
        bricks: list.bricks.iter().map(|b| brick_cert(bq, b)).collect(),
        witness: None,
        search: None,
    })
}

/// Inverse of [`brick_cert`]; maps are matched to arrows by name.
pub fn read_brick<F: Field>(bq: &BoundQuiver, cert: &BrickCert) -> Result<Representation<F>, CliError> {
    let q = bq.quiver();
    if cert.maps.len() != q.arrows().len() {
        return Err(CliError::Input(format!(
            "brick lists {} maps for {} arrows",
            cert.maps.len(),
            q.arrows().len()
        )));
    }
    let mut maps: Vec<Option<Matrix<F>>> = vec![None; q.arrows().len()];
    for m in &cert.maps {
        let id = q
            .arrow_by_name(&m.arrow)
            .ok_or_else(|| CliError::Input(format!("unknown arrow {} in certificate", m.arrow)))?;
        let a = q.arrow(id);
        let (rows, cols) = (
            *cert.dims.get(a.target).unwrap_or(&0),
            *cert.dims.get(a.source).unwrap_or(&0),
        );
        if m.rows.len() != rows || m.rows.iter().any(|r| r.len() != cols) {
            return Err(CliError::Input(format!("matrix of {} has the wrong shape", m.arrow)));
        }
        let data = m
            .rows
            .iter()
            .flatten()
            .map(|s| F::parse_exact(s).ok_or_else(|| CliError::Input(format!("bad field element {s:?}"))))
            .collect::<Result<Vec<F>, _>>()?;
        maps[id] = Some(Matrix::new(rows, cols, data)?);
    }
    let maps = maps
        .into_iter()
        .map(|m| m.ok_or_else(|| CliError::Input("arrow listed twice in certificate".into())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Representation::new(bq, cert.dims.clone(), maps)?)
}
