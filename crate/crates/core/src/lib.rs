//! Prism cell complexes built from ordered tuples of pairwise disjoint,
//! nonempty faces of a simplex.
//!
//! The central object is the complex `Y(N, r)` whose k-cells are ordered
//! r-tuples of disjoint nonempty subsets of the vertex set `{0, ..., N}`,
//! each cell carrying a product-of-simplices structure. On top of the cell
//! enumeration the crate provides:
//!
//! - the signed boundary operator obtained from the simplex boundary formula
//!   and the product (Leibniz) rule ([`cell`]),
//! - orientation assignments under which every codimension-1 cell inherits
//!   the *same* induced sign from all incident top cells, decided either by
//!   the string-parity recipe for `Y(N, r)` or by exact search on generic
//!   prism complexes ([`orientation`]),
//! - exact integral homology via Smith normal form over arbitrary-precision
//!   integers ([`homology`]),
//! - the symmetric group action permuting the tuple slots, with freeness
//!   checks and the orbit model of the quotient ([`symmetry`]),
//! - exact rational search for Tverberg partitions: partitions of a point
//!   configuration whose convex hulls share a common point ([`tverberg`]).

pub mod cell;
pub mod combinatorics;
pub mod complex;
pub mod homology;
pub mod orientation;
pub mod symmetry;
pub mod tverberg;

pub use cell::{Cell, Chain, Sign, SignedCell};
pub use complex::{ComplexError, ComplexSpec, FVector};
