//! The prism complex `Y(N, r)` of ordered r-tuples of pairwise disjoint,
//! nonempty faces of the N-simplex: cell enumeration and f-vectors.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::cell::Cell;
use crate::combinatorics::{binomial, factorial, stirling2};

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("invalid complex parameters: need N >= 1, r >= 2 and N >= r - 1, got N={n}, r={r}")]
    InvalidSpec { n: usize, r: usize },
    #[error("no cells of dimension {k} in Y({n},{r}); dimensions range over 0..={top}")]
    EmptyDomain {
        k: usize,
        n: usize,
        r: usize,
        top: usize,
    },
    #[error("invalid cell: {0}")]
    InvalidCell(String),
}

/// Parameters of the complex `Y(N, r)`: vertex set `{0, ..., N}` split into
/// ordered tuples of `r` disjoint nonempty faces.
///
/// Requires `N >= 1`, `r >= 2` and `N >= r - 1`; without the last condition
/// there are no cells at all. Operations on top cells (orientation and the
/// quotient of top-cell orbits) additionally require `N >= r`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ComplexSpec {
    n: usize,
    r: usize,
}

impl ComplexSpec {
    pub fn new(n: usize, r: usize) -> Result<Self, ComplexError> {
        if n < 1 || r < 2 || n + 1 < r {
            return Err(ComplexError::InvalidSpec { n, r });
        }
        Ok(ComplexSpec { n, r })
    }

    /// The largest vertex label N.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The number of parts r.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.n + 1
    }

    /// Dimension of the complex, `N - r + 1`.
    pub fn top_dimension(&self) -> usize {
        self.n + 1 - self.r
    }

    /// Every cell of dimension `k`, exactly once, sorted in the
    /// lexicographic order of the flattened representation (part separators
    /// sorting before vertices).
    pub fn cells(&self, k: usize) -> Result<Vec<Cell>, ComplexError> {
        let top = self.top_dimension();
        if k > top {
            return Err(ComplexError::EmptyDomain {
                k,
                n: self.n,
                r: self.r,
                top,
            });
        }
        let used = k + self.r;
        let mut out = Vec::new();
        for combo in (0..=self.n).combinations(used) {
            ordered_partitions(&combo, self.r, &mut out);
        }
        out.sort_unstable();
        debug_assert!(out.windows(2).all(|w| w[0] < w[1]), "duplicate cells");
        Ok(out)
    }

    /// The cells of maximal dimension; their parts cover the vertex set.
    pub fn top_cells(&self) -> Vec<Cell> {
        self.cells(self.top_dimension())
            .expect("top dimension is in range")
    }

    /// Cell counts per dimension, computed by enumeration.
    pub fn f_vector(&self) -> FVector {
        let counts = (0..=self.top_dimension())
            .map(|k| self.cells(k).expect("in range").len() as u64)
            .collect();
        FVector::new(counts)
    }

    /// Cell counts per dimension from the closed form
    /// `f_k = C(N+1, k+r) * r! * S(k+r, r)`.
    ///
    /// The enumeration in [`ComplexSpec::f_vector`] is the ground truth; the
    /// closed form exists for cross-checks and cheap size estimates.
    pub fn f_vector_closed_form(&self) -> Vec<BigUint> {
        (0..=self.top_dimension())
            .map(|k| self.cell_count_closed_form(k))
            .collect()
    }

    /// Closed-form count of k-cells.
    pub fn cell_count_closed_form(&self, k: usize) -> BigUint {
        let m = (k + self.r) as u64;
        binomial(self.n as u64 + 1, m) * factorial(self.r as u64) * stirling2(m, self.r as u64)
    }

    /// Closed-form count of top-dimensional cells, `r! * S(N+1, r)`.
    pub fn top_cell_count(&self) -> BigUint {
        self.cell_count_closed_form(self.top_dimension())
    }

    /// Largest per-dimension cell count; used for size guards.
    pub fn max_cell_count(&self) -> BigUint {
        self.f_vector_closed_form()
            .into_iter()
            .max()
            .expect("at least one dimension")
    }
}

impl fmt::Display for ComplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y({},{})", self.n, self.r)
    }
}

/// Assigns each vertex of `verts` (ascending) to one of `r` parts, keeping
/// only the assignments where every part is nonempty.
fn ordered_partitions(verts: &[usize], r: usize, out: &mut Vec<Cell>) {
    fn rec(
        verts: &[usize],
        idx: usize,
        parts: &mut Vec<Vec<usize>>,
        empty: usize,
        out: &mut Vec<Cell>,
    ) {
        if empty > verts.len() - idx {
            return; // not enough vertices left to fill the empty parts
        }
        if idx == verts.len() {
            out.push(Cell::from_canonical_unchecked(parts.clone()));
            return;
        }
        for label in 0..parts.len() {
            let was_empty = parts[label].is_empty();
            parts[label].push(verts[idx]);
            rec(verts, idx + 1, parts, empty - usize::from(was_empty), out);
            parts[label].pop();
        }
    }
    let mut parts = vec![Vec::new(); r];
    rec(verts, 0, &mut parts, r, out);
}

/// Cell counts per dimension.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct FVector {
    counts: Vec<u64>,
}

impl FVector {
    pub fn new(counts: Vec<u64>) -> Self {
        FVector { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `sum (-1)^k f_k`.
    pub fn alternating_sum(&self) -> i64 {
        let mut acc: i128 = 0;
        for (k, &count) in self.counts.iter().enumerate() {
            let term = count as i128;
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        i64::try_from(acc).expect("Euler characteristic fits in i64")
    }
}

impl std::ops::Index<usize> for FVector {
    type Output = u64;
    fn index(&self, k: usize) -> &u64 {
        &self.counts[k]
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn cell(parts: &[&[usize]]) -> Cell {
        Cell::new(parts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    /// Independent brute-force enumeration: every function from the vertex
    /// set to r+1 labels (label r meaning "unused"), filtered to surjective
    /// use of the first r labels and the requested dimension.
    fn brute_force_cells(n: usize, r: usize, k: usize) -> BTreeSet<Cell> {
        let verts = n + 1;
        let mut out = BTreeSet::new();
        let total = (r as u64 + 1).pow(verts as u32);
        for code in 0..total {
            let mut c = code;
            let mut parts = vec![Vec::new(); r];
            for v in 0..verts {
                let label = (c % (r as u64 + 1)) as usize;
                c /= r as u64 + 1;
                if label < r {
                    parts[label].push(v);
                }
            }
            if parts.iter().any(|p| p.is_empty()) {
                continue;
            }
            let cell = Cell::new(parts).unwrap();
            if cell.dimension() == k {
                out.insert(cell);
            }
        }
        out
    }

    #[test]
    fn spec_validation() {
        assert!(ComplexSpec::new(3, 2).is_ok());
        assert!(ComplexSpec::new(1, 2).is_ok());
        assert!(ComplexSpec::new(2, 3).is_ok()); // N = r - 1, zero-dimensional
        assert!(ComplexSpec::new(1, 3).is_err()); // no cells at all
        assert!(ComplexSpec::new(0, 2).is_err());
        assert!(ComplexSpec::new(3, 1).is_err());
    }

    #[test]
    fn hexagon_edges() {
        let spec = ComplexSpec::new(2, 2).unwrap();
        let edges: BTreeSet<Cell> = spec.cells(1).unwrap().into_iter().collect();
        let expected: BTreeSet<Cell> = [
            cell(&[&[0], &[1, 2]]),
            cell(&[&[1], &[0, 2]]),
            cell(&[&[2], &[0, 1]]),
            cell(&[&[0, 1], &[2]]),
            cell(&[&[1, 2], &[0]]),
            cell(&[&[0, 2], &[1]]),
        ]
        .into_iter()
        .collect();
        assert_eq!(edges, expected);
    }

    #[test]
    fn cuboctahedron_top_cells() {
        let spec = ComplexSpec::new(3, 2).unwrap();
        let cells = spec.cells(2).unwrap();
        assert_eq!(cells.len(), 14);
        let triangles = cells
            .iter()
            .filter(|c| {
                let d = c.factor_dims();
                d == vec![0, 2] || d == vec![2, 0]
            })
            .count();
        let squares = cells
            .iter()
            .filter(|c| c.factor_dims() == vec![1, 1])
            .count();
        assert_eq!(triangles, 8);
        assert_eq!(squares, 6);
    }

    #[test]
    fn two_vertices_two_parts() {
        let spec = ComplexSpec::new(1, 2).unwrap();
        let verts = spec.cells(0).unwrap();
        assert_eq!(verts, vec![cell(&[&[0], &[1]]), cell(&[&[1], &[0]])]);
    }

    #[test]
    fn three_part_top_cells_match_brute_force() {
        let spec = ComplexSpec::new(4, 3).unwrap();
        let cells = spec.cells(2).unwrap();
        assert_eq!(cells.len(), 150);
        let brute = brute_force_cells(4, 3, 2);
        assert_eq!(cells.iter().cloned().collect::<BTreeSet<_>>(), brute);
    }

    #[test]
    fn out_of_range_dimension_is_an_error() {
        let spec = ComplexSpec::new(3, 2).unwrap();
        assert!(matches!(
            spec.cells(3),
            Err(ComplexError::EmptyDomain { k: 3, .. })
        ));
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        let spec = ComplexSpec::new(4, 3).unwrap();
        for k in 0..=spec.top_dimension() {
            let cells = spec.cells(k).unwrap();
            assert!(cells.windows(2).all(|w| w[0] < w[1]), "k={k}");
        }
    }

    #[test]
    fn top_cells_cover_vertex_set() {
        let spec = ComplexSpec::new(4, 3).unwrap();
        for c in spec.top_cells() {
            assert_eq!(c.vertices(), (0..=4).collect::<Vec<_>>());
        }
    }

    #[test]
    fn f_vectors() {
        assert_eq!(
            ComplexSpec::new(3, 2).unwrap().f_vector().counts(),
            &[12, 24, 14]
        );
        assert_eq!(ComplexSpec::new(2, 2).unwrap().f_vector().counts(), &[6, 6]);
        assert_eq!(
            ComplexSpec::new(4, 3).unwrap().f_vector().counts(),
            &[60, 180, 150]
        );
        // zero-dimensional complex: the r! orderings of r singletons
        assert_eq!(ComplexSpec::new(2, 3).unwrap().f_vector().counts(), &[6]);
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for (n, r) in [
            (1, 2),
            (2, 2),
            (3, 2),
            (4, 2),
            (2, 3),
            (3, 3),
            (4, 3),
            (4, 4),
            (5, 4),
        ] {
            let spec = ComplexSpec::new(n, r).unwrap();
            let enumerated = spec.f_vector();
            let closed = spec.f_vector_closed_form();
            for (k, count) in closed.iter().enumerate() {
                assert_eq!(
                    count,
                    &BigUint::from(enumerated[k]),
                    "mismatch at Y({n},{r}) dim {k}"
                );
            }
        }
    }

    #[test]
    fn boundary_squared_vanishes_on_small_complexes() {
        for (n, r) in [(3, 2), (4, 3)] {
            let spec = ComplexSpec::new(n, r).unwrap();
            for c in spec.top_cells() {
                assert!(c.boundary().boundary().is_zero(), "cell {c} of Y({n},{r})");
            }
        }
    }

    #[test]
    fn codim1_cells_have_r_parents() {
        for (n, r) in [(2, 2), (3, 2), (4, 3)] {
            let spec = ComplexSpec::new(n, r).unwrap();
            let top = spec.top_dimension();
            let mut parent_count = std::collections::BTreeMap::new();
            for f in spec.top_cells() {
                for g in f.boundary().terms().keys() {
                    *parent_count.entry(g.clone()).or_insert(0usize) += 1;
                }
            }
            let codim1 = spec.cells(top - 1).unwrap();
            assert_eq!(parent_count.len(), codim1.len());
            for g in &codim1 {
                assert_eq!(parent_count.get(g), Some(&r), "cell {g} of Y({n},{r})");
            }
        }
    }

    #[test]
    fn enumeration_is_safe_to_run_concurrently() {
        let spec = ComplexSpec::new(5, 3).unwrap();
        let expected = spec.f_vector();
        let handles: Vec<_> = (0..=spec.top_dimension())
            .map(|k| std::thread::spawn(move || spec.cells(k).unwrap().len() as u64))
            .collect();
        for (k, handle) in handles.into_iter().enumerate() {
            assert_eq!(handle.join().unwrap(), expected[k]);
        }
    }

    #[test]
    fn euler_characteristic_from_counts() {
        assert_eq!(
            ComplexSpec::new(3, 2).unwrap().f_vector().alternating_sum(),
            2
        );
        assert_eq!(
            ComplexSpec::new(2, 2).unwrap().f_vector().alternating_sum(),
            0
        );
        assert_eq!(
            ComplexSpec::new(4, 3).unwrap().f_vector().alternating_sum(),
            30
        );
    }
}
