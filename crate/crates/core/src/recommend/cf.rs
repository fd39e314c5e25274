//! Item-based collaborative filtering over a hotel-by-feature matrix.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rows are hotels, columns features. Missing cells are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UtilityMatrix {
    rows: Vec<String>,
    cols: Vec<String>,
    cells: Vec<Vec<Option<f64>>>,
}

fn check_unique(keys: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    match keys.iter().find(|k| !seen.insert(k.as_str())) {
        Some(dup) => Err(Error::Config(format!("duplicate matrix key {dup:?}"))),
        None => Ok(()),
    }
}

impl UtilityMatrix {
    pub fn new(rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        check_unique(&rows)?;
        check_unique(&cols)?;
        let cells = vec![vec![None; cols.len()]; rows.len()];
        Ok(Self { rows, cols, cells })
    }

    pub fn from_rows(rows: Vec<String>, cols: Vec<String>, cells: Vec<Vec<Option<f64>>>) -> Result<Self> {
        let mut m = Self::new(rows, cols)?;
        if cells.len() != m.rows.len() {
            return Err(Error::DimensionMismatch(cells.len(), m.rows.len()));
        }
        for row in &cells {
            if row.len() != m.cols.len() {
                return Err(Error::DimensionMismatch(row.len(), m.cols.len()));
            }
        }
        m.cells = cells;
        Ok(m)
    }

    /// Builds from nested maps; absent entries become missing cells.
    pub fn from_nested(
        values: &BTreeMap<String, BTreeMap<String, f64>>,
        rows: Vec<String>,
        cols: Vec<String>,
    ) -> Result<Self> {
        let mut m = Self::new(rows, cols)?;
        for (r, row) in m.rows.iter().enumerate() {
            if let Some(vals) = values.get(row) {
                for (c, col) in m.cols.iter().enumerate() {
                    m.cells[r][c] = vals.get(col).copied();
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    fn row_index(&self, key: &str) -> Result<usize> {
        self.rows
            .iter()
            .position(|r| r == key)
            .ok_or_else(|| Error::UnknownKey(key.to_string()))
    }

    fn col_index(&self, key: &str) -> Result<usize> {
        self.cols
            .iter()
            .position(|c| c == key)
            .ok_or_else(|| Error::UnknownKey(key.to_string()))
    }

    pub fn get(&self, row: &str, col: &str) -> Result<Option<f64>> {
        Ok(self.cells[self.row_index(row)?][self.col_index(col)?])
    }

    pub fn set(&mut self, row: &str, col: &str, value: Option<f64>) -> Result<()> {
        let (r, c) = (self.row_index(row)?, self.col_index(col)?);
        self.cells[r][c] = value;
        Ok(())
    }

    pub fn row(&self, key: &str) -> Result<&[Option<f64>]> {
        Ok(&self.cells[self.row_index(key)?])
    }
}

/// `1 / (1 + d)` where `d` is the Euclidean distance over coordinates present
/// in both vectors.
pub fn euclidean_similarity(u: &[Option<f64>], v: &[Option<f64>]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(u.len(), v.len()));
    }
    let mut shared = 0;
    let mut sq = 0.0;
    for (a, b) in u.iter().zip(v) {
        if let (Some(a), Some(b)) = (a, b) {
            shared += 1;
            sq += (a - b) * (a - b);
        }
    }
    if shared == 0 {
        return Err(Error::NoSharedCoordinates);
    }
    Ok(1.0 / (1.0 + sq.sqrt()))
}

/// Neighbor used in a prediction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Neighbor {
    pub hotel: String,
    pub similarity: f64,
    pub value: f64,
}

/// Similarity-weighted mean of the `k` most similar hotels that have the
/// feature. Ties in similarity go to the smaller hotel id. Neighbors sharing
/// no coordinate with the target are skipped; if every candidate is of that
/// kind, candidates are weighted equally.
pub fn predict_missing_cell_detailed(
    matrix: &UtilityMatrix,
    hotel: &str,
    feature: &str,
    k: usize,
) -> Result<(f64, Vec<Neighbor>)> {
    let target = matrix.row(hotel)?;
    let col = matrix.col_index(feature)?;
    let no_neighbor = || Error::NoNeighbor {
        hotel: hotel.to_string(),
        feature: feature.to_string(),
    };
    if k == 0 {
        return Err(no_neighbor());
    }
    let mut rated = Vec::new();
    let mut unrelated = Vec::new();
    for (r, key) in matrix.rows.iter().enumerate() {
        if key == hotel {
            continue;
        }
        let Some(value) = matrix.cells[r][col] else { continue };
        match euclidean_similarity(target, &matrix.cells[r]) {
            Ok(similarity) => rated.push(Neighbor {
                hotel: key.clone(),
                similarity,
                value,
            }),
            Err(Error::NoSharedCoordinates) => unrelated.push(Neighbor {
                hotel: key.clone(),
                similarity: 1.0,
                value,
            }),
            Err(e) => return Err(e),
        }
    }
    let mut pool = if rated.is_empty() { unrelated } else { rated };
    if pool.is_empty() {
        return Err(no_neighbor());
    }
    pool.sort_by(|a, b| {
        b.similarity
            .total_cmp(&a.similarity)
            .then_with(|| a.hotel.cmp(&b.hotel))
    });
    pool.truncate(k);
    let weight: f64 = pool.iter().map(|n| n.similarity).sum();
    let value = pool.iter().map(|n| n.similarity * n.value).sum::<f64>() / weight;
    Ok((value, pool))
}

pub fn predict_missing_cell(matrix: &UtilityMatrix, hotel: &str, feature: &str, k: usize) -> Result<f64> {
    predict_missing_cell_detailed(matrix, hotel, feature, k).map(|(v, _)| v)
}

/// Copy of the matrix with every predictable missing cell filled from the
/// original observed values.
pub fn complete_matrix(matrix: &UtilityMatrix, k: usize) -> UtilityMatrix {
    let mut out = matrix.clone();
    for (r, hotel) in matrix.rows.iter().enumerate() {
        for (c, feature) in matrix.cols.iter().enumerate() {
            if matrix.cells[r][c].is_none() {
                out.cells[r][c] = predict_missing_cell(matrix, hotel, feature, k).ok();
            }
        }
    }
    out
}
