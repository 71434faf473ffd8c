//! Cells, signed cells and integer chains.
//!
//! A [`Cell`] is an ordered tuple of pairwise disjoint, nonempty,
//! strictly ascending vertex lists. The ascending lists are the canonical
//! representatives: orientation is never carried as a stored ordering but as
//! a single [`Sign`] against the canonical representative, with singleton
//! factors always counted positive.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::ComplexError;

/// Orientation sign relative to the canonical ascending representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The sign as an integer coefficient, `+1` or `-1`.
    pub fn coef(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Sign of a nonzero integer. Returns `None` for zero.
    pub fn of(value: i64) -> Option<Sign> {
        match value.cmp(&0) {
            Ordering::Greater => Some(Sign::Plus),
            Ordering::Less => Some(Sign::Minus),
            Ordering::Equal => None,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flipped()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.coef())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(deserializer)?;
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(D::Error::custom(format!(
                "sign must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// An ordered tuple of pairwise disjoint, nonempty vertex lists, each stored
/// strictly ascending. The dimension is `sum of part sizes - number of parts`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cell {
    parts: Vec<Vec<usize>>,
}

impl Cell {
    /// Builds a cell from canonical parts, validating the invariants:
    /// at least one part, every part nonempty and strictly ascending,
    /// parts pairwise disjoint.
    pub fn new(parts: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        if parts.is_empty() {
            return Err(ComplexError::InvalidCell(
                "a cell needs at least one part".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for part in &parts {
            if part.is_empty() {
                return Err(ComplexError::InvalidCell("empty part".into()));
            }
            for w in part.windows(2) {
                if w[0] >= w[1] {
                    return Err(ComplexError::InvalidCell(format!(
                        "part {part:?} is not strictly ascending"
                    )));
                }
            }
            for &v in part {
                if !seen.insert(v) {
                    return Err(ComplexError::InvalidCell(format!(
                        "vertex {v} appears in more than one part"
                    )));
                }
            }
        }
        Ok(Cell { parts })
    }

    /// Internal constructor for parts already known to be canonical.
    pub(crate) fn from_canonical_unchecked(parts: Vec<Vec<usize>>) -> Self {
        debug_assert!(
            Cell::new(parts.clone()).is_ok(),
            "non-canonical parts {parts:?}"
        );
        Cell { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Number of parts in the tuple.
    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    /// `sum |V_i| - r`, the dimension of the product of simplices.
    pub fn dimension(&self) -> usize {
        self.parts.iter().map(|p| p.len()).sum::<usize>() - self.parts.len()
    }

    /// Dimension of each simplex factor, `|V_i| - 1`.
    pub fn factor_dims(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.len() - 1).collect()
    }

    /// All vertices used by the cell, in ascending order.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.parts.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs
    }

    /// Flattened representation used for the lexicographic basis order:
    /// part separators encode as 0 and sort before every vertex `v` (as v+1).
    fn lex_key(&self) -> Vec<usize> {
        let mut key = Vec::with_capacity(
            self.parts.iter().map(|p| p.len()).sum::<usize>() + self.parts.len(),
        );
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                key.push(0);
            }
            key.extend(part.iter().map(|&v| v + 1));
        }
        key
    }

    /// Boundary of the cell with its canonical (positive) orientation.
    ///
    /// Each part of size >= 2 contributes its simplex boundary, with the
    /// alternating-sign prefix of the product rule: the term removing the
    /// j-th vertex of part k carries `(-1)^(d_1 + ... + d_(k-1) + j)` where
    /// `d_i = |V_i| - 1`. Removing a vertex from an ascending part keeps it
    /// ascending, so every resulting cell is already canonical. Parts of
    /// size 1 contribute nothing, hence no part ever becomes empty.
    /// A zero-dimensional cell has zero boundary.
    pub fn boundary(&self) -> Chain {
        let dim = self.dimension() as i64;
        let mut out = Chain::zero(dim - 1);
        let mut prefix = 0usize;
        for (k, part) in self.parts.iter().enumerate() {
            if part.len() >= 2 {
                for j in 0..part.len() {
                    let mut parts = self.parts.clone();
                    parts[k].remove(j);
                    let coef = if (prefix + j).is_multiple_of(2) {
                        1
                    } else {
                        -1
                    };
                    out.add_term(Cell::from_canonical_unchecked(parts), coef);
                }
            }
            prefix += part.len() - 1;
        }
        out
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_key().cmp(&other.lex_key())
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, v) in part.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Cell", 1)?;
        st.serialize_field("parts", &self.parts)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            parts: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Cell::new(raw.parts).map_err(D::Error::custom)
    }
}

/// A cell together with an orientation sign relative to its canonical
/// ascending representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedCell {
    pub cell: Cell,
    pub sign: Sign,
}

impl SignedCell {
    pub fn new(cell: Cell, sign: Sign) -> Self {
        SignedCell { cell, sign }
    }

    pub fn positive(cell: Cell) -> Self {
        SignedCell {
            cell,
            sign: Sign::Plus,
        }
    }

    /// Normalizes explicitly ordered parts to the canonical representative.
    ///
    /// Each part is sorted ascending and the parity of the sorting
    /// permutation is folded into the sign, so `[[0], [3, 1]]` becomes
    /// `({0},{1,3})` with sign `-1`. Renormalizing a canonical cell is the
    /// identity.
    pub fn from_ordered_parts(parts: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let mut sign = Sign::Plus;
        let mut canonical = Vec::with_capacity(parts.len());
        for part in parts {
            let mut inversions = 0usize;
            for i in 0..part.len() {
                for j in i + 1..part.len() {
                    if part[i] > part[j] {
                        inversions += 1;
                    }
                }
            }
            if inversions % 2 == 1 {
                sign = sign.flipped();
            }
            let mut sorted = part;
            sorted.sort_unstable();
            canonical.push(sorted);
        }
        Ok(SignedCell {
            cell: Cell::new(canonical)?,
            sign,
        })
    }

    /// Renormalizes the stored parts; the identity on canonical cells.
    pub fn normalized(&self) -> Self {
        let mut out = SignedCell::from_ordered_parts(self.cell.parts.clone())
            .expect("stored cell is canonical");
        if self.sign == Sign::Minus {
            out.sign = out.sign.flipped();
        }
        out
    }

    /// Signed boundary: the boundary of the canonical cell scaled by the sign.
    pub fn boundary(&self) -> Chain {
        let mut chain = self.cell.boundary();
        if self.sign == Sign::Minus {
            chain = -chain;
        }
        chain
    }
}

impl fmt::Display for SignedCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "+{}", self.cell),
            Sign::Minus => write!(f, "-{}", self.cell),
        }
    }
}

/// A finite integer combination of cells of one fixed dimension.
///
/// Zero coefficients are never stored. The dimension label may be `-1` for
/// the zero chain produced as the boundary of a 0-cell.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    dim: i64,
    terms: BTreeMap<Cell, i64>,
}

impl Chain {
    pub fn zero(dim: i64) -> Self {
        Chain {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_signed_cell(sc: &SignedCell) -> Self {
        let mut out = Chain::zero(sc.cell.dimension() as i64);
        out.add_term(sc.cell.clone(), sc.sign.coef());
        out
    }

    pub fn dimension(&self) -> i64 {
        self.dim
    }

    /// Terms in the lexicographic cell order.
    pub fn terms(&self) -> &BTreeMap<Cell, i64> {
        &self.terms
    }

    pub fn coefficient(&self, cell: &Cell) -> i64 {
        self.terms.get(cell).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coef * cell`, dropping the term if the result is zero.
    ///
    /// Panics if the cell dimension disagrees with the chain dimension or on
    /// coefficient overflow.
    pub fn add_term(&mut self, cell: Cell, coef: i64) {
        if coef == 0 {
            return;
        }
        assert_eq!(
            cell.dimension() as i64,
            self.dim,
            "cell {cell} has the wrong dimension for this chain"
        );
        match self.terms.entry(cell) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e
                    .get()
                    .checked_add(coef)
                    .expect("chain coefficient overflow");
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
        }
    }

    /// Linear extension of the cell boundary operator.
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.dim - 1);
        for (cell, &coef) in &self.terms {
            for (face, &face_coef) in cell.boundary().terms() {
                out.add_term(
                    face.clone(),
                    coef.checked_mul(face_coef)
                        .expect("chain coefficient overflow"),
                );
            }
        }
        out
    }
}

impl std::ops::Add for Chain {
    type Output = Chain;
    fn add(self, rhs: Chain) -> Chain {
        assert_eq!(
            self.dim, rhs.dim,
            "cannot add chains of different dimensions"
        );
        let mut out = self;
        for (cell, coef) in rhs.terms {
            out.add_term(cell, coef);
        }
        out
    }
}

impl std::ops::Neg for Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        let dim = self.dim;
        let terms = self.terms.into_iter().map(|(c, v)| (c, -v)).collect();
        Chain { dim, terms }
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            cell: &'a Cell,
            coef: i64,
        }
        struct Terms<'a>(&'a BTreeMap<Cell, i64>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (cell, &coef) in self.0 {
                    seq.serialize_element(&Term { cell, coef })?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("Chain", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("terms", &Terms(&self.terms))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Chain {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct RawTerm {
            cell: Cell,
            coef: i64,
        }
        #[derive(Deserialize)]
        struct Raw {
            dim: i64,
            terms: Vec<RawTerm>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut chain = Chain::zero(raw.dim);
        for term in raw.terms {
            if term.coef == 0 {
                return Err(D::Error::custom("zero coefficient in chain"));
            }
            if term.cell.dimension() as i64 != raw.dim {
                return Err(D::Error::custom(format!(
                    "cell {} has dimension {} in a chain of dimension {}",
                    term.cell,
                    term.cell.dimension(),
                    raw.dim
                )));
            }
            chain.add_term(term.cell, term.coef);
        }
        Ok(chain)
    }
}
