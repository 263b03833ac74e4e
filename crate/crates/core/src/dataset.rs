//! Delimited-text datasets, min-max normalization and stratified
//! cross-validation splits.

use std::collections::HashMap;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{DatasetError, Result, UcsError};

/// Token marking a missing feature value.
pub const MISSING: &str = "?";

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub feature_names: Vec<String>,
    pub class_names: Vec<String>,
    /// Normalized feature rows; `None` is a missing value.
    pub instances: Vec<Vec<Option<f64>>>,
    pub labels: Vec<usize>,
    /// Raw `(min, max)` per feature before normalization.
    pub bounds: Vec<(f64, f64)>,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.feature_names.len()
    }

    pub fn class_count(&self) -> usize {
        self.class_names.len()
    }

    /// Most frequent label among `indices`, lowest index on ties.
    pub fn majority_class(&self, indices: &[usize]) -> usize {
        let mut counts = vec![0usize; self.class_count()];
        for &i in indices {
            counts[self.labels[i]] += 1;
        }
        counts
            .iter()
            .enumerate()
            .fold((0, 0), |best, (j, &c)| if c > best.1 { (j, c) } else { best })
            .0
    }
}

/// Load a dataset file; see [`parse_dataset`] for the format.
pub fn load_dataset(path: &Path) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".into());
    parse_dataset(&name, &text).map_err(|kind| UcsError::Dataset { path: path.to_path_buf(), kind })
}

/// Parse delimited text with one header row. The delimiter is a tab if the
/// header contains one, a comma otherwise. The last column is the class
/// label. Columns containing any non-numeric token (other than `?`) are
/// nominal and integer-coded in order of first appearance.
pub fn parse_dataset(name: &str, text: &str) -> std::result::Result<Dataset, DatasetError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or(DatasetError::Empty)?;
    let delim = if header.contains('\t') { '\t' } else { ',' };
    let split = |l: &str| l.split(delim).map(|t| t.trim().to_string()).collect::<Vec<_>>();
    let columns = split(header);
    let width = columns.len();

    let rows: Vec<Vec<String>> = lines.map(split).collect();
    if rows.is_empty() {
        return Err(DatasetError::Empty);
    }
    if rows.len() < 2 {
        return Err(DatasetError::TooFewRows(rows.len()));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(DatasetError::RowLength { row: i + 2, expected: width, got: r.len() });
        }
    }

    let mut class_names: Vec<String> = Vec::new();
    let labels: Vec<usize> = rows
        .iter()
        .map(|r| intern(&mut class_names, &r[width - 1]))
        .collect();
    if class_names.len() < 2 {
        return Err(DatasetError::SingleClass);
    }

    let dims = width - 1;
    let mut raw: Vec<Vec<Option<f64>>> = vec![Vec::with_capacity(dims); rows.len()];
    for col in 0..dims {
        let nominal = rows
            .iter()
            .any(|r| r[col] != MISSING && r[col].parse::<f64>().is_err());
        let mut codes: Vec<String> = Vec::new();
        for (row, out) in rows.iter().zip(raw.iter_mut()) {
            let tok = &row[col];
            let v = if tok == MISSING {
                None
            } else if nominal {
                Some(intern(&mut codes, tok) as f64)
            } else {
                tok.parse::<f64>().ok()
            };
            out.push(v);
        }
    }
    let (instances, bounds) = normalize(&raw, dims);

    Ok(Dataset {
        name: name.to_string(),
        feature_names: columns[..dims].to_vec(),
        class_names,
        instances,
        labels,
        bounds,
    })
}

fn intern(table: &mut Vec<String>, tok: &str) -> usize {
    match table.iter().position(|t| t == tok) {
        Some(i) => i,
        None => {
            table.push(tok.to_string());
            table.len() - 1
        }
    }
}

/// Rows of optional feature values; `None` marks a missing value.
pub type Rows = Vec<Vec<Option<f64>>>;

/// Min-max normalize every column into `[0, 1)`. Constant columns map to 0
/// and missing values stay missing.
pub fn normalize(rows: &[Vec<Option<f64>>], dims: usize) -> (Rows, Vec<(f64, f64)>) {
    let bounds: Vec<(f64, f64)> = (0..dims)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r[c])
                .fold(None, |acc: Option<(f64, f64)>, v| match acc {
                    None => Some((v, v)),
                    Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
                })
                .unwrap_or((0.0, 0.0))
        })
        .collect();
    let scaled = rows
        .iter()
        .map(|r| {
            r.iter()
                .zip(&bounds)
                .map(|(v, &(lo, hi))| {
                    v.map(|v| if hi > lo { (v - lo) / ((hi - lo) * (1.0 + 1e-9)) } else { 0.0 })
                })
                .collect()
        })
        .collect();
    (scaled, bounds)
}

/// One train/test partition of instance indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub repeat: usize,
    pub fold: usize,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Stratified `repeats x folds` cross-validation.
///
/// Each repeat shuffles every class independently and deals its members
/// round-robin into the folds, continuing the deal across classes.
pub fn cv_split<R: Rng>(labels: &[usize], class_count: usize, folds: usize, repeats: usize, rng: &mut R) -> Vec<Fold> {
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); class_count];
    for (i, &c) in labels.iter().enumerate() {
        by_class[c].push(i);
    }
    let mut out = Vec::with_capacity(folds * repeats);
    for repeat in 0..repeats {
        let mut assignment = vec![0usize; labels.len()];
        let mut deal = 0usize;
        for members in &by_class {
            let mut members = members.clone();
            members.shuffle(rng);
            for i in members {
                assignment[i] = deal % folds;
                deal += 1;
            }
        }
        for fold in 0..folds {
            let (test, train): (Vec<usize>, Vec<usize>) = (0..labels.len()).partition(|&i| assignment[i] == fold);
            out.push(Fold { repeat, fold, train, test });
        }
    }
    out
}

/// Count of instances per label, used for reporting.
pub fn class_histogram(labels: &[usize]) -> HashMap<usize, usize> {
    let mut h = HashMap::new();
    for &l in labels {
        *h.entry(l).or_insert(0) += 1;
    }
    h
}
