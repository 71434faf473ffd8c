//! Orientation assignments on top cells under which every codimension-1
//! cell inherits the *same* induced sign from all incident top cells.
//!
//! Classical orientability asks for opposite induced signs from the two
//! parents of each facet; the assignments built here ask for equal induced
//! signs from all `r` parents instead. For `Y(N, r)` the assignment is
//! computed by string parity: a top cell, read with ascending factors and
//! interleaved part separators, is a permutation of the reference string of
//! the cell whose first `r - 1` parts are the singletons `{0}, ..., {r-2}`;
//! the cell is oriented positively exactly when that permutation is even.
//!
//! The [`generic`] submodule decides the same coherence question for
//! arbitrary user-described prism complexes by exact search.

mod generic;

pub use generic::{
    check_assignment, decide_by_enumeration, decide_by_propagation, verify_generic_prism_complex,
    GenericCoface, GenericFacet, GenericPrismComplex, GenericTopCell, OrientationSearchOutcome,
};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cell::{Cell, Sign, SignedCell};
use crate::complex::ComplexSpec;

#[derive(Debug, Error)]
pub enum OrientationError {
    #[error("orientation requires N >= r, got N={n}, r={r}")]
    DegenerateSpec { n: usize, r: usize },
    #[error("cell {cell} is not a top-dimensional cell of Y({n},{r})")]
    NotTopDimensional { cell: String, n: usize, r: usize },
    #[error("strings are not permutations of the same distinct symbols")]
    IncomparableStrings,
    #[error("invalid prism complex description: {0}")]
    MalformedComplex(String),
}

/// Parity of a permutation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_transposition_count(count: usize) -> Parity {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            Parity::Even => Sign::Plus,
            Parity::Odd => Sign::Minus,
        }
    }
}

/// A symbol of an orientation string: a vertex letter or a part separator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StringSymbol {
    /// Separator `s_i`, 1-based.
    Separator(usize),
    /// Vertex letter `v_j`.
    Vertex(usize),
}

impl fmt::Display for StringSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StringSymbol::Separator(i) => write!(f, "s{i}"),
            StringSymbol::Vertex(v) => write!(f, "v{v}"),
        }
    }
}

/// A sequence of distinct symbols encoding an ordering of a top cell:
/// the vertices of the parts in order, with separator `s_i` between part i
/// and part i+1. Describing a top cell of `Y(N, r)` it has `N + r` symbols.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientationString {
    symbols: Vec<StringSymbol>,
}

impl OrientationString {
    /// Builds a string from raw symbols. Used mostly in tests; the
    /// complex-aware constructors are [`reference_string`] and
    /// [`cell_string`].
    pub fn new(symbols: Vec<StringSymbol>) -> Self {
        OrientationString { symbols }
    }

    pub fn symbols(&self) -> &[StringSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for OrientationString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The reference string `v_0, s_1, v_1, s_2, ..., s_(r-1), v_(r-1), ..., v_N`:
/// the cell whose first `r - 1` parts are the singletons `{0}, ..., {r-2}`
/// and whose last part is `{r-1, ..., N}`, read in ascending order.
pub fn reference_string(spec: &ComplexSpec) -> Result<OrientationString, OrientationError> {
    if spec.n() < spec.r() {
        return Err(OrientationError::DegenerateSpec {
            n: spec.n(),
            r: spec.r(),
        });
    }
    let mut symbols = Vec::with_capacity(spec.n() + spec.r());
    for i in 0..spec.r() - 1 {
        symbols.push(StringSymbol::Vertex(i));
        symbols.push(StringSymbol::Separator(i + 1));
    }
    for v in spec.r() - 1..=spec.n() {
        symbols.push(StringSymbol::Vertex(v));
    }
    Ok(OrientationString { symbols })
}

/// The string of a top-dimensional cell: its parts in ascending order,
/// separated by `s_1, ..., s_(r-1)`.
pub fn cell_string(spec: &ComplexSpec, cell: &Cell) -> Result<OrientationString, OrientationError> {
    let is_top = cell.arity() == spec.r() && cell.vertices() == (0..=spec.n()).collect::<Vec<_>>();
    if !is_top {
        return Err(OrientationError::NotTopDimensional {
            cell: cell.to_string(),
            n: spec.n(),
            r: spec.r(),
        });
    }
    let mut symbols = Vec::with_capacity(spec.n() + spec.r());
    for (i, part) in cell.parts().iter().enumerate() {
        if i > 0 {
            symbols.push(StringSymbol::Separator(i));
        }
        symbols.extend(part.iter().map(|&v| StringSymbol::Vertex(v)));
    }
    Ok(OrientationString { symbols })
}

/// Parity of the unique permutation taking `a` to `b`, computed by counting
/// the transpositions of a selection sort.
///
/// The strings must consist of the same distinct symbols.
pub fn string_parity(
    a: &OrientationString,
    b: &OrientationString,
) -> Result<Parity, OrientationError> {
    let mut p = position_permutation(a, b)?;
    let mut swaps = 0usize;
    for i in 0..p.len() {
        while p[i] != i {
            let j = p[i];
            p.swap(i, j);
            swaps += 1;
        }
    }
    Ok(Parity::of_transposition_count(swaps))
}

/// Parity of the permutation taking `a` to `b`, computed by counting
/// inversions. Independent of [`string_parity`]; the two always agree.
pub fn parity_by_inversions(
    a: &OrientationString,
    b: &OrientationString,
) -> Result<Parity, OrientationError> {
    let p = position_permutation(a, b)?;
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    Ok(Parity::of_transposition_count(inversions))
}

/// `p[i]` = position in `b` of the i-th symbol of `a`. Errors unless the
/// strings are permutations of the same distinct symbols.
fn position_permutation(
    a: &OrientationString,
    b: &OrientationString,
) -> Result<Vec<usize>, OrientationError> {
    if a.len() != b.len() {
        return Err(OrientationError::IncomparableStrings);
    }
    let mut pos = BTreeMap::new();
    for (i, s) in b.symbols.iter().enumerate() {
        if pos.insert(*s, i).is_some() {
            return Err(OrientationError::IncomparableStrings);
        }
    }
    let mut seen = vec![false; b.len()];
    let mut perm = Vec::with_capacity(a.len());
    for s in &a.symbols {
        let &i = pos.get(s).ok_or(OrientationError::IncomparableStrings)?;
        if seen[i] {
            return Err(OrientationError::IncomparableStrings);
        }
        seen[i] = true;
        perm.push(i);
    }
    Ok(perm)
}

/// A total assignment of signs to the top-dimensional cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientationAssignment {
    signs: BTreeMap<Cell, Sign>,
}

impl OrientationAssignment {
    pub fn sign_of(&self, cell: &Cell) -> Option<Sign> {
        self.signs.get(cell).copied()
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Cells with their signs, in the lexicographic cell order.
    pub fn iter(&self) -> impl Iterator<Item = (&Cell, Sign)> {
        self.signs.iter().map(|(c, &s)| (c, s))
    }

    /// The signed top cells.
    pub fn signed_cells(&self) -> impl Iterator<Item = SignedCell> + '_ {
        self.signs
            .iter()
            .map(|(c, &s)| SignedCell::new(c.clone(), s))
    }
}

/// The sign assignment on the top cells of `Y(N, r)`: a cell is positive
/// exactly when the permutation taking its string to the reference string is
/// even. (When it is odd the cell could equivalently carry a reordering that
/// differs by one transposition inside a part of size >= 2, which exists for
/// every top cell once `N >= r`; storing the sign against the ascending
/// representative keeps a unique normal form.)
pub fn o_orientation(spec: &ComplexSpec) -> Result<OrientationAssignment, OrientationError> {
    let reference = reference_string(spec)?;
    let mut signs = BTreeMap::new();
    for cell in spec.top_cells() {
        let s = cell_string(spec, &cell)?;
        let parity = string_parity(&s, &reference)?;
        signs.insert(cell, parity.sign());
    }
    Ok(OrientationAssignment { signs })
}

/// The induced signs collected on every codimension-1 cell, and the verdict.
#[derive(Clone, Debug)]
pub struct CoherenceReport {
    induced: BTreeMap<Cell, Vec<Sign>>,
    violations: Vec<Cell>,
}

impl CoherenceReport {
    /// Passes when every codimension-1 cell inherits one constant sign.
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    /// Induced signs per codimension-1 cell, parents in lexicographic
    /// top-cell order.
    pub fn induced(&self) -> &BTreeMap<Cell, Vec<Sign>> {
        &self.induced
    }

    /// Cells that inherit conflicting signs.
    pub fn violations(&self) -> &[Cell] {
        &self.violations
    }

    /// Number of codimension-1 cells seen.
    pub fn codim1_count(&self) -> usize {
        self.induced.len()
    }

    /// True when every codimension-1 cell has exactly `expected` parents.
    pub fn parent_counts_all(&self, expected: usize) -> bool {
        self.induced.values().all(|v| v.len() == expected)
    }
}

/// Checks that the sign assignment of [`o_orientation`] is coherent: for
/// every codimension-1 cell, the coefficient signs it receives in the signed
/// boundaries of its incident top cells all agree.
pub fn verify_o_orientability(spec: &ComplexSpec) -> Result<CoherenceReport, OrientationError> {
    let assignment = o_orientation(spec)?;
    let mut induced: BTreeMap<Cell, Vec<Sign>> = BTreeMap::new();
    for signed in assignment.signed_cells() {
        for (face, &coef) in signed.boundary().terms() {
            debug_assert!(
                coef.abs() == 1,
                "boundary coefficient of a single cell is a sign"
            );
            let sign = Sign::of(coef).expect("nonzero");
            induced.entry(face.clone()).or_default().push(sign);
        }
    }
    let violations = induced
        .iter()
        .filter(|(_, signs)| signs.windows(2).any(|w| w[0] != w[1]))
        .map(|(cell, _)| cell.clone())
        .collect();
    Ok(CoherenceReport {
        induced,
        violations,
    })
}
