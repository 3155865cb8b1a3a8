use std::collections::HashMap;
use std::path::Path;

use lcheb::arith::ParamVec;
use lcheb::discrete::GridFunction;
use lcheb::trig::cos_pi_ratio;
use lcheb::{ChebCoeffs, Interpolator, NodeSet, Space, SpectralIndex};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::format::g17;
use crate::CliError;

fn open_csv(path: &Path) -> Result<csv::Reader<std::fs::File>, CliError> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn columns(path: &Path, headers: &csv::StringRecord, names: &[String]) -> Result<Vec<usize>, CliError> {
    let pos: HashMap<&str, usize> = headers.iter().enumerate().map(|(k, h)| (h, k)).collect();
    names
        .iter()
        .map(|n| {
            pos.get(n.as_str())
                .copied()
                .ok_or_else(|| CliError::Input(format!("{}: missing column `{n}`", path.display())))
        })
        .collect()
}

fn field<T: std::str::FromStr>(path: &Path, row: usize, rec: &csv::StringRecord, col: usize) -> Result<T, CliError> {
    let raw = rec.get(col).unwrap_or("");
    raw.parse()
        .map_err(|_| CliError::Input(format!("{}: row {row}: cannot parse `{raw}`", path.display())))
}

/// Node data with columns `i_1..i_d` and `value`; other columns are ignored.
pub fn read_node_data(path: &Path, nodes: &NodeSet) -> Result<GridFunction<f64>, CliError> {
    let d = nodes.params().dim();
    let mut rdr = open_csv(path)?;
    let headers = rdr.headers().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?.clone();
    let mut names: Vec<String> = (1..=d).map(|j| format!("i_{j}")).collect();
    names.push("value".into());
    let cols = columns(path, &headers, &names)?;
    let mut pairs = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let i: Vec<usize> = cols[..d].iter().map(|&c| field(path, row + 1, &rec, c)).collect::<Result<_, _>>()?;
        pairs.push((i, field(path, row + 1, &rec, cols[d])?));
    }
    Ok(GridFunction::from_pairs(nodes, pairs)?)
}

/// Points with columns `x_1..x_d`.
pub fn read_points(path: &Path, d: usize) -> Result<Vec<Vec<f64>>, CliError> {
    let mut rdr = open_csv(path)?;
    let headers = rdr.headers().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?.clone();
    let names: Vec<String> = (1..=d).map(|j| format!("x_{j}")).collect();
    let cols = columns(path, &headers, &names)?;
    rdr.records()
        .enumerate()
        .map(|(row, rec)| {
            let rec = rec.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            cols.iter().map(|&c| field(path, row + 1, &rec, c)).collect()
        })
        .collect()
}

pub fn grid_points(n: &[usize]) -> Vec<Vec<f64>> {
    let mut out = vec![vec![]];
    for &nj in n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<f64>| {
                (0..=nj).map(move |k| {
                    let mut q = p.clone();
                    q.push(cos_pi_ratio(k as i64, nj as u64));
                    q
                })
            })
            .collect();
    }
    out
}

pub fn points_csv(d: usize, pts: &[Vec<f64>], values: &[f64]) -> String {
    let mut header: Vec<String> = (1..=d).map(|j| format!("x_{j}")).collect();
    header.push("value".into());
    let mut rows = vec![header.join(",")];
    for (p, v) in pts.iter().zip(values) {
        let mut row: Vec<String> = p.iter().map(|&x| g17(x)).collect();
        row.push(g17(*v));
        rows.push(row.join(","));
    }
    rows.join("\n") + "\n"
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub gamma: Vec<usize>,
    pub c: f64,
}

/// Coefficient file `{m, kappa, space, entries: [{gamma, c}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffFile {
    pub m: Vec<u64>,
    pub kappa: Vec<i64>,
    pub space: String,
    pub entries: Vec<CoeffEntry>,
}

impl CoeffFile {
    pub fn params(&self) -> Result<ParamVec, CliError> {
        ParamVec::new(self.m.clone(), self.kappa.clone()).map_err(|e| match e {
            lcheb::Error::Overflow(_) => e.into(),
            other => CliError::Input(format!("coefficient file: {other}")),
        })
    }

    pub fn space(&self) -> Result<Space, CliError> {
        match self.space.as_str() {
            "plain" => Ok(Space::Plain),
            "averaged" => Ok(Space::Averaged),
            other => Err(CliError::Input(format!("coefficient file: unknown space `{other}`"))),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (SpectralIndex, f64)> + '_ {
        self.entries.iter().map(|e| (SpectralIndex(e.gamma.clone()), e.c))
    }
}

pub fn read_coeffs(path: &Path) -> Result<CoeffFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn coeffs_json(ip: &Interpolator, c: &ChebCoeffs) -> Value {
    let entries: Vec<Value> = c.entries(ip.classes()).map(|(g, v)| json!({ "gamma": g.0, "c": v })).collect();
    json!({
        "m": c.pv.m(),
        "kappa": c.pv.kappa(),
        "space": c.space.name(),
        "entries": entries,
    })
}
