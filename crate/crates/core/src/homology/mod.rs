//! Boundary matrices and exact integral homology.
//!
//! Matrices are sparse with arbitrary-precision integer entries; homology is
//! reduced by default (the augmentation is accounted for in degree zero) and
//! computed from Smith normal form ranks and invariant factors. No floating
//! point and no modular arithmetic anywhere.

mod snf;

pub use snf::{smith_normal_form, SnfResult};

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cell::Cell;
use crate::complex::{ComplexSpec, FVector};

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("boundary operator index {k} is out of range; valid indices are 1..={top}")]
    DimensionOutOfRange { k: usize, top: usize },
    #[error("invalid sparse matrix: {0}")]
    InvalidMatrix(String),
}

/// A sparse integer matrix with arbitrary-precision entries, stored as
/// `(row, col, value)` triples sorted by `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, BigInt)>,
}

impl SparseIntMatrix {
    /// Validates ranges, rejects duplicates and zero entries, and sorts.
    pub fn new(
        rows: usize,
        cols: usize,
        mut entries: Vec<(usize, usize, BigInt)>,
    ) -> Result<Self, HomologyError> {
        entries.sort_unstable_by_key(|a| (a.0, a.1));
        for (i, (r, c, v)) in entries.iter().enumerate() {
            if *r >= rows || *c >= cols {
                return Err(HomologyError::InvalidMatrix(format!(
                    "entry ({r},{c}) outside a {rows}x{cols} matrix"
                )));
            }
            if v.is_zero() {
                return Err(HomologyError::InvalidMatrix(format!(
                    "zero entry at ({r},{c})"
                )));
            }
            if i > 0 && (entries[i - 1].0, entries[i - 1].1) == (*r, *c) {
                return Err(HomologyError::InvalidMatrix(format!(
                    "duplicate entry at ({r},{c})"
                )));
            }
        }
        Ok(SparseIntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from a row-major dense slice, dropping zeros.
    pub fn from_dense(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i / cols, i % cols, BigInt::from(v)))
            .collect();
        SparseIntMatrix::new(rows, cols, entries).expect("dense input is well formed")
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| (i, i, BigInt::one())).collect();
        SparseIntMatrix::new(n, n, entries).expect("identity is well formed")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Entries sorted by `(row, col)`.
    pub fn entries(&self) -> &[(usize, usize, BigInt)] {
        &self.entries
    }

    /// Text export: header `rows cols nnz`, then one `row col value` triple
    /// per line, 0-indexed, sorted by `(row, col)`.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {} {}", self.rows, self.cols, self.entries.len()).unwrap();
        for (r, c, v) in &self.entries {
            writeln!(out, "{r} {c} {v}").unwrap();
        }
        out
    }
}

/// The matrix of the boundary operator from k-chains to (k-1)-chains in the
/// lexicographic cell bases: rows are (k-1)-cells, columns are k-cells, and
/// the entry is the coefficient of the row cell in the boundary of the
/// positively oriented column cell.
pub fn boundary_matrix(spec: &ComplexSpec, k: usize) -> Result<SparseIntMatrix, HomologyError> {
    let top = spec.top_dimension();
    if k == 0 || k > top {
        return Err(HomologyError::DimensionOutOfRange { k, top });
    }
    let row_cells = spec.cells(k - 1).expect("in range");
    let col_cells = spec.cells(k).expect("in range");
    Ok(boundary_matrix_from_bases(&row_cells, &col_cells))
}

fn boundary_matrix_from_bases(row_cells: &[Cell], col_cells: &[Cell]) -> SparseIntMatrix {
    let row_index: HashMap<&Cell, usize> =
        row_cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut entries = Vec::new();
    for (j, cell) in col_cells.iter().enumerate() {
        for (face, &coef) in cell.boundary().terms() {
            let i = row_index[face];
            entries.push((i, j, BigInt::from(coef)));
        }
    }
    SparseIntMatrix::new(row_cells.len(), col_cells.len(), entries)
        .expect("boundary entries are well formed")
}

/// One homology group: free rank plus torsion invariant factors (> 1, in
/// divisibility order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub dimension: usize,
    pub free_rank: u64,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Reduced integral homology of `Y(N, r)` in all dimensions `0..=N-r+1`.
pub fn homology(spec: &ComplexSpec) -> Vec<HomologyGroup> {
    homology_impl(spec, true)
}

/// Unreduced integral homology (no augmentation in degree zero).
pub fn homology_unreduced(spec: &ComplexSpec) -> Vec<HomologyGroup> {
    homology_impl(spec, false)
}

fn homology_impl(spec: &ComplexSpec, reduced: bool) -> Vec<HomologyGroup> {
    let top = spec.top_dimension();
    let cells: Vec<Vec<Cell>> = (0..=top)
        .map(|k| spec.cells(k).expect("in range"))
        .collect();
    let snfs: Vec<SnfResult> = (1..=top)
        .map(|k| smith_normal_form(&boundary_matrix_from_bases(&cells[k - 1], &cells[k])))
        .collect();
    // rank of the boundary operator out of degree k; the augmentation gives
    // the degree-0 operator rank 1 in the reduced theory
    let rank_out = |k: usize| -> u64 {
        if k == 0 {
            u64::from(reduced && !cells[0].is_empty())
        } else if k <= top {
            snfs[k - 1].rank() as u64
        } else {
            0
        }
    };
    (0..=top)
        .map(|k| {
            let f_k = cells[k].len() as u64;
            let free_rank = f_k
                .checked_sub(rank_out(k))
                .and_then(|v| v.checked_sub(rank_out(k + 1)))
                .expect("rank-nullity");
            let torsion = if k < top {
                snfs[k]
                    .invariant_factors()
                    .iter()
                    .filter(|d| !d.is_one())
                    .cloned()
                    .collect()
            } else {
                Vec::new()
            };
            HomologyGroup {
                dimension: k,
                free_rank,
                torsion,
            }
        })
        .collect()
}

/// Alternating sum of the f-vector. Consistency with the Betti numbers is
/// exercised by the test suites.
pub fn euler_characteristic(spec: &ComplexSpec) -> i64 {
    spec.f_vector().alternating_sum()
}

/// Alternating sum of free ranks, for cross-checking against
/// [`euler_characteristic`]. Uses unreduced groups.
pub fn euler_characteristic_from_betti(groups: &[HomologyGroup]) -> i64 {
    let mut acc: i128 = 0;
    for g in groups {
        let term = g.free_rank as i128;
        if g.dimension % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    i64::try_from(acc).expect("fits in i64")
}

/// The f-vector of the complex; a convenience re-export for callers that
/// work through this module.
pub fn f_vector(spec: &ComplexSpec) -> FVector {
    spec.f_vector()
}
