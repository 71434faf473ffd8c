//! The symmetric group action permuting the tuple slots of a cell, orbit
//! decompositions, and the cell-count model of the quotient complex.
//!
//! Permuting the parts of a cell is a free action at the cell level (parts
//! are disjoint and nonempty, so a nontrivial slot permutation always moves
//! the cell), which makes every orbit have full size r! and lets the
//! quotient be modeled by orbit representatives with counts alone.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::cell::Cell;
use crate::complex::{ComplexError, ComplexSpec, FVector};
use crate::orientation::{o_orientation, OrientationError, Parity};

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("images {images:?} are not a bijection on 0..{degree}")]
    NotABijection { images: Vec<usize>, degree: usize },
    #[error("free action violated on the orbit of {cell} in dimension {dim}: orbit size {size}, expected {expected}")]
    FreenessViolation {
        cell: String,
        dim: usize,
        size: usize,
        expected: usize,
    },
}

/// A permutation of the part slots `0..r`, stored as the image list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, SymmetryError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &i in &images {
            if i >= degree || seen[i] {
                return Err(SymmetryError::NotABijection { images, degree });
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// All permutations of degree `r` in lexicographic order of the image
    /// lists; the identity comes first.
    pub fn all(degree: usize) -> Vec<Permutation> {
        (0..degree)
            .permutations(degree)
            .map(|images| Permutation { images })
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Function composition: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// Parity of the permutation (inversion count).
    pub fn parity(&self) -> Parity {
        let mut inversions = 0usize;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        Parity::of_transposition_count(inversions)
    }

    /// Moves part `i` of the cell to slot `sigma(i)`. The result is again
    /// canonical since parts themselves are untouched.
    ///
    /// Panics when the cell arity differs from the permutation degree.
    pub fn act(&self, cell: &Cell) -> Cell {
        assert_eq!(
            cell.arity(),
            self.degree(),
            "cell arity differs from permutation degree"
        );
        let mut parts = vec![Vec::new(); self.degree()];
        for (i, part) in cell.parts().iter().enumerate() {
            parts[self.images[i]] = part.clone();
        }
        Cell::new(parts).expect("slot permutation preserves cell invariants")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Result of the exhaustive freeness check.
#[derive(Clone, Debug)]
pub struct FreeActionReport {
    fixed_pairs: Vec<(Permutation, Cell)>,
    cells_checked: u64,
}

impl FreeActionReport {
    pub fn pass(&self) -> bool {
        self.fixed_pairs.is_empty()
    }

    /// Certificate: every (non-identity permutation, cell) pair left fixed.
    pub fn fixed_pairs(&self) -> &[(Permutation, Cell)] {
        &self.fixed_pairs
    }

    pub fn cells_checked(&self) -> u64 {
        self.cells_checked
    }
}

/// Checks `act(sigma, c) != c` for every cell of every dimension and every
/// non-identity permutation, exhaustively.
pub fn verify_free_action(spec: &ComplexSpec) -> FreeActionReport {
    let perms: Vec<Permutation> = Permutation::all(spec.r())
        .into_iter()
        .filter(|p| !p.is_identity())
        .collect();
    let mut fixed_pairs = Vec::new();
    let mut cells_checked = 0u64;
    for k in 0..=spec.top_dimension() {
        for cell in spec.cells(k).expect("in range") {
            cells_checked += 1;
            for sigma in &perms {
                if sigma.act(&cell) == cell {
                    fixed_pairs.push((sigma.clone(), cell.clone()));
                }
            }
        }
    }
    FreeActionReport {
        fixed_pairs,
        cells_checked,
    }
}

/// An orbit of the slot-permutation action in one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    cells: Vec<Cell>,
}

impl Orbit {
    /// The lexicographically least cell of the orbit.
    pub fn representative(&self) -> &Cell {
        &self.cells[0]
    }

    /// Orbit members in lexicographic order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }
}

/// Orbits of the k-cells, listed by their lexicographically least
/// representatives.
pub fn orbits(spec: &ComplexSpec, k: usize) -> Result<Vec<Orbit>, ComplexError> {
    let perms = Permutation::all(spec.r());
    let mut seen: BTreeSet<Cell> = BTreeSet::new();
    let mut out = Vec::new();
    for cell in spec.cells(k)? {
        if seen.contains(&cell) {
            continue;
        }
        let members: BTreeSet<Cell> = perms.iter().map(|p| p.act(&cell)).collect();
        for m in &members {
            seen.insert(m.clone());
        }
        out.push(Orbit {
            cells: members.into_iter().collect(),
        });
    }
    out.sort_by(|a, b| a.representative().cmp(b.representative()));
    Ok(out)
}

/// Cell counts of the quotient by the slot-permutation action: `f_k / r!`
/// in every dimension, with freeness checked through the orbit sizes.
pub fn quotient_f_vector(spec: &ComplexSpec) -> Result<FVector, SymmetryError> {
    let order = (1..=spec.r() as u64).product::<u64>() as usize;
    let mut counts = Vec::with_capacity(spec.top_dimension() + 1);
    for k in 0..=spec.top_dimension() {
        let orbs = orbits(spec, k).expect("in range");
        for orbit in &orbs {
            if orbit.size() != order {
                return Err(SymmetryError::FreenessViolation {
                    cell: orbit.representative().to_string(),
                    dim: k,
                    size: orbit.size(),
                    expected: order,
                });
            }
        }
        counts.push(orbs.len() as u64);
    }
    Ok(FVector::new(counts))
}

/// Orbit report for one dimension, serialized as
/// `{"dim": k, "orbits": [{"rep": cell, "size": n}]}`.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub dim: usize,
    pub orbits: Vec<OrbitSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSummary {
    pub rep: Cell,
    pub size: u64,
}

pub fn orbit_report(spec: &ComplexSpec, k: usize) -> Result<OrbitReport, ComplexError> {
    let orbits = orbits(spec, k)?
        .into_iter()
        .map(|o| OrbitSummary {
            rep: o.representative().clone(),
            size: o.size() as u64,
        })
        .collect();
    Ok(OrbitReport { dim: k, orbits })
}

/// A face of the ambient simplex, given by its vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SimplexFace {
    vertices: Vec<usize>,
}

impl SimplexFace {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// The parts of a cell viewed as pairwise disjoint faces of the ambient
/// simplex. For a top cell of `Y(N, r)` the face dimensions add up to
/// `N - r + 1`; in particular for r = 2 a top cell splits the vertex set
/// into two complementary faces with dimensions summing to `N - 1`.
pub fn complementary_faces(cell: &Cell) -> Vec<SimplexFace> {
    cell.parts()
        .iter()
        .map(|p| SimplexFace {
            vertices: p.clone(),
        })
        .collect()
}

/// Empirical count, per unordered shape of factor dimensions, of how many
/// top cells keep or flip their orientation sign under `sigma`. How the sign
/// interacts with the action is measured, not asserted.
pub fn o_sign_action_census(
    spec: &ComplexSpec,
    sigma: &Permutation,
) -> Result<BTreeMap<Vec<usize>, SignActionCount>, OrientationError> {
    let assignment = o_orientation(spec)?;
    let mut census: BTreeMap<Vec<usize>, SignActionCount> = BTreeMap::new();
    for (cell, sign) in assignment.iter() {
        let image_sign = assignment
            .sign_of(&sigma.act(cell))
            .expect("action permutes top cells");
        let mut shape = cell.factor_dims();
        shape.sort_unstable();
        let entry = census.entry(shape).or_default();
        if image_sign == sign {
            entry.preserved += 1;
        } else {
            entry.flipped += 1;
        }
    }
    Ok(census)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignActionCount {
    pub preserved: u64,
    pub flipped: u64,
}
