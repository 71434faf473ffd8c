//! Exact rational verification of affine Tverberg statements.
//!
//! Given points with rational coordinates, [`hulls_intersect`] decides by
//! exact linear-program feasibility whether a family of convex hulls shares
//! a common point, returning an exact witness with its convex weights.
//! [`tverberg_search`] enumerates the unordered partitions of a point set
//! into r nonempty blocks in canonical order and returns the first partition
//! whose hulls intersect; with at least `(d+1)(r-1)+1` points such a
//! partition always exists and failing to find one is a hard failure.
//! [`affine_ttt_check`] reads the points as the vertex images of an affine
//! map on the N-simplex with `N = (d+1)(r-1)` and reports the partition as
//! pairwise disjoint faces together with the common witness point.
//!
//! There is no epsilon anywhere: certificates verify by exact equality and a
//! `None` from the feasibility solver is a proof of empty intersection.

mod fourier_motzkin;
mod simplex;

pub use fourier_motzkin::hulls_intersect_by_fourier_motzkin;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cell::Cell;
use crate::symmetry::{complementary_faces, SimplexFace};

pub type Rational = BigRational;

#[derive(Debug, Error)]
pub enum TverbergError {
    #[error("point {index} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("part {index} is empty")]
    EmptyPart { index: usize },
    #[error("expected {expected} points for d={d}, r={r}, got {got}")]
    WrongPointCount {
        expected: usize,
        got: usize,
        d: usize,
        r: usize,
    },
    #[error("cannot parse rational {text:?} on line {line}")]
    ParsePoint { text: String, line: usize },
    #[error("no points given")]
    Empty,
    #[error("partition search exhausted all partitions although a certificate is guaranteed")]
    TheoremViolation,
}

/// A point configuration with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    dim: usize,
    points: Vec<Vec<Rational>>,
}

impl PointConfig {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self, TverbergError> {
        if dim == 0 || points.is_empty() {
            return Err(TverbergError::Empty);
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(TverbergError::DimensionMismatch {
                    index,
                    got: p.len(),
                    expected: dim,
                });
            }
        }
        Ok(PointConfig { dim, points })
    }

    /// Parses a point file: one point per line, coordinates whitespace
    /// separated, each an integer or `p/q`; blank lines are skipped and the
    /// dimension is inferred from the first line.
    pub fn parse(text: &str) -> Result<Self, TverbergError> {
        let mut points = Vec::new();
        let mut dim = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let coords = line
                .split_whitespace()
                .map(|tok| parse_rational(tok, lineno + 1))
                .collect::<Result<Vec<_>, _>>()?;
            let d = *dim.get_or_insert(coords.len());
            if coords.len() != d {
                return Err(TverbergError::DimensionMismatch {
                    index: points.len(),
                    got: coords.len(),
                    expected: d,
                });
            }
            points.push(coords);
        }
        PointConfig::new(dim.ok_or(TverbergError::Empty)?, points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }
}

/// Parses `p`, `-p`, or `p/q` into an exact rational.
pub fn parse_rational(token: &str, line: usize) -> Result<Rational, TverbergError> {
    let err = || TverbergError::ParsePoint {
        text: token.to_string(),
        line,
    };
    let mut pieces = token.splitn(2, '/');
    let numer: BigInt = pieces.next().ok_or_else(err)?.parse().map_err(|_| err())?;
    match pieces.next() {
        None => Ok(Rational::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.parse().map_err(|_| err())?;
            if denom.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Renders a rational as `p` or `p/q` for exact text output.
pub fn rational_to_string(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub(crate) fn validate_parts(
    parts: &[Vec<Vec<Rational>>],
    dim: usize,
) -> Result<(), TverbergError> {
    if parts.is_empty() || dim == 0 {
        return Err(TverbergError::Empty);
    }
    let mut index = 0usize;
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(TverbergError::EmptyPart { index: i });
        }
        for p in part {
            if p.len() != dim {
                return Err(TverbergError::DimensionMismatch {
                    index,
                    got: p.len(),
                    expected: dim,
                });
            }
            index += 1;
        }
    }
    Ok(())
}

/// A common point of the convex hulls together with the convex weights that
/// realize it in every part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullIntersection {
    pub witness: Vec<Rational>,
    /// One weight vector per part, parallel to the part's points.
    pub coefficients: Vec<Vec<Rational>>,
}

/// Decides whether the convex hulls of the parts share a common point.
///
/// Feasibility of the system "one convex combination per part, all equal" is
/// decided by exact phase-1 elimination with Bland's least-index pivot rule;
/// `None` is a proof of empty intersection.
pub fn hulls_intersect(
    parts: &[Vec<Vec<Rational>>],
    dim: usize,
) -> Result<Option<HullIntersection>, TverbergError> {
    validate_parts(parts, dim)?;
    let n: usize = parts.iter().map(Vec::len).sum();
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0usize, |acc, p| {
            let o = *acc;
            *acc += p.len();
            Some(o)
        })
        .collect();

    // rows: (r-1) * dim coordinate equalities plus r weight normalizations
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 1..parts.len() {
        for t in 0..dim {
            let mut row = vec![Rational::zero(); n];
            for (j, p) in parts[0].iter().enumerate() {
                row[offsets[0] + j] = p[t].clone();
            }
            for (j, p) in parts[i].iter().enumerate() {
                row[offsets[i] + j] = -p[t].clone();
            }
            a.push(row);
            b.push(Rational::zero());
        }
    }
    for (i, part) in parts.iter().enumerate() {
        let mut row = vec![Rational::zero(); n];
        for j in 0..part.len() {
            row[offsets[i] + j] = Rational::one();
        }
        a.push(row);
        b.push(Rational::one());
    }

    let Some(weights) = simplex::feasible_point(&a, &b) else {
        return Ok(None);
    };
    let coefficients: Vec<Vec<Rational>> = parts
        .iter()
        .enumerate()
        .map(|(i, part)| weights[offsets[i]..offsets[i] + part.len()].to_vec())
        .collect();
    let witness = (0..dim)
        .map(|t| {
            parts[0]
                .iter()
                .zip(&coefficients[0])
                .map(|(p, w)| &p[t] * w)
                .sum()
        })
        .collect();
    Ok(Some(HullIntersection {
        witness,
        coefficients,
    }))
}

/// An unordered partition of the point indices into r nonempty blocks, with
/// a common point of the corresponding convex hulls and the convex weights
/// realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCertificate {
    /// Blocks listed by least element, each ascending.
    pub parts: Vec<Vec<usize>>,
    pub witness: Vec<Rational>,
    /// One weight vector per block, parallel to the block's indices.
    pub coefficients: Vec<Vec<Rational>>,
}

impl PartitionCertificate {
    /// Re-verifies the certificate by exact arithmetic: the blocks partition
    /// the index set, the weights are nonnegative and sum to one per block,
    /// and every block's convex combination equals the witness.
    pub fn verify(&self, config: &PointConfig) -> Result<(), String> {
        let mut seen = vec![false; config.len()];
        for block in &self.parts {
            if block.is_empty() {
                return Err("empty block".into());
            }
            for &i in block {
                if i >= config.len() || seen[i] {
                    return Err(format!("index {i} repeated or out of range"));
                }
                seen[i] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err("blocks do not cover the point set".into());
        }
        if self.coefficients.len() != self.parts.len() {
            return Err("weight vectors do not match blocks".into());
        }
        for (block, weights) in self.parts.iter().zip(&self.coefficients) {
            if block.len() != weights.len() {
                return Err("weight vector length mismatch".into());
            }
            if weights.iter().any(Signed::is_negative) {
                return Err("negative weight".into());
            }
            let total: Rational = weights.iter().cloned().sum();
            if !total.is_one() {
                return Err("weights do not sum to one".into());
            }
            for t in 0..config.dim() {
                let combo: Rational = block
                    .iter()
                    .zip(weights)
                    .map(|(&i, w)| &config.points()[i][t] * w)
                    .sum();
                if combo != self.witness[t] {
                    return Err(format!("combination of block {block:?} misses the witness"));
                }
            }
        }
        Ok(())
    }
}

impl Serialize for PartitionCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let witness: Vec<String> = self.witness.iter().map(rational_to_string).collect();
        let coefficients: Vec<Vec<String>> = self
            .coefficients
            .iter()
            .map(|ws| ws.iter().map(rational_to_string).collect())
            .collect();
        let mut st = serializer.serialize_struct("PartitionCertificate", 3)?;
        st.serialize_field("coefficients", &coefficients)?;
        st.serialize_field("parts", &self.parts)?;
        st.serialize_field("witness", &witness)?;
        st.end()
    }
}

impl fmt::Display for PartitionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "partition ")?;
        for (i, block) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{block:?}")?;
        }
        write!(f, " at (")?;
        for (i, w) in self.witness.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rational_to_string(w))?;
        }
        write!(f, ")")
    }
}

/// Iterator over the unordered partitions of `{0, ..., n-1}` into exactly
/// `blocks` nonempty blocks, in the lexicographic order of the restricted
/// growth labeling; blocks come out keyed by their least element.
pub fn partitions(n: usize, blocks: usize) -> PartitionIter {
    PartitionIter {
        n,
        blocks,
        labels: Vec::new(),
        done: n == 0 || blocks == 0 || blocks > n,
    }
}

pub struct PartitionIter {
    n: usize,
    blocks: usize,
    /// Restricted growth string of the previously returned partition.
    labels: Vec<usize>,
    done: bool,
}

impl PartitionIter {
    fn emit(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i);
        }
        out
    }

    /// Advances `labels` to the next restricted growth string with exactly
    /// `blocks` labels, extending greedily with zeros.
    fn advance(&mut self) -> bool {
        loop {
            if self.labels.len() < self.n {
                self.labels.resize(self.n, 0);
            } else {
                // increment from the right; position 0 is pinned to label 0
                let mut i = self.n;
                loop {
                    if i == 1 {
                        return false;
                    }
                    i -= 1;
                    let max_prev = self.labels[..i]
                        .iter()
                        .copied()
                        .max()
                        .expect("nonempty prefix");
                    if self.labels[i] <= max_prev && self.labels[i] + 1 < self.blocks {
                        self.labels[i] += 1;
                        for l in self.labels[i + 1..].iter_mut() {
                            *l = 0;
                        }
                        break;
                    }
                    self.labels[i] = 0;
                }
            }
            let used = self.labels.iter().copied().max().expect("nonempty") + 1;
            if used == self.blocks {
                return true;
            }
        }
    }
}

impl Iterator for PartitionIter {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.emit())
    }
}

/// True when the point count meets the bound `(d+1)(r-1)+1` under which a
/// partition with intersecting hulls always exists.
pub fn tverberg_guarantee_applies(config: &PointConfig, r: usize) -> bool {
    config.len() > (config.dim() + 1) * (r - 1)
}

/// Searches the canonical partition order for the first partition of the
/// configuration into r nonempty blocks whose hulls share a common point.
pub fn tverberg_search(
    config: &PointConfig,
    r: usize,
) -> Result<Option<PartitionCertificate>, TverbergError> {
    assert!(r >= 2, "need at least two blocks");
    for blocks in partitions(config.len(), r) {
        let parts: Vec<Vec<Vec<Rational>>> = blocks
            .iter()
            .map(|b| b.iter().map(|&i| config.points()[i].clone()).collect())
            .collect();
        if let Some(hit) = hulls_intersect(&parts, config.dim())? {
            return Ok(Some(PartitionCertificate {
                parts: blocks,
                witness: hit.witness,
                coefficients: hit.coefficients,
            }));
        }
    }
    Ok(None)
}

/// A Tverberg certificate together with the faces of the ambient simplex
/// spanned by the partition blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineTttCertificate {
    pub certificate: PartitionCertificate,
    /// The blocks as pairwise disjoint faces of the N-simplex.
    pub faces: Vec<SimplexFace>,
}

/// Checks the affine intersection statement: the points are the vertex
/// images of an affine map on the N-simplex with `N = (d+1)(r-1)`, so there
/// must be r pairwise disjoint faces whose images intersect. Returns the
/// partition as faces plus the exact witness.
pub fn affine_ttt_check(
    vertex_images: &PointConfig,
    r: usize,
) -> Result<AffineTttCertificate, TverbergError> {
    let d = vertex_images.dim();
    let expected = (d + 1) * (r - 1) + 1;
    if vertex_images.len() != expected {
        return Err(TverbergError::WrongPointCount {
            expected,
            got: vertex_images.len(),
            d,
            r,
        });
    }
    let certificate = tverberg_search(vertex_images, r)?.ok_or(TverbergError::TheoremViolation)?;
    let cell = Cell::new(certificate.parts.clone()).expect("partition blocks form a cell");
    let faces = complementary_faces(&cell);
    Ok(AffineTttCertificate { certificate, faces })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qr(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pts(coords: &[&[i64]]) -> Vec<Vec<Rational>> {
        coords
            .iter()
            .map(|p| p.iter().map(|&c| q(c)).collect())
            .collect()
    }

    fn config(coords: &[&[i64]]) -> PointConfig {
        PointConfig::new(coords[0].len(), pts(coords)).unwrap()
    }

    #[test]
    fn identical_points_intersect() {
        let parts = vec![pts(&[&[0]]), pts(&[&[0]])];
        let hit = hulls_intersect(&parts, 1).unwrap().unwrap();
        assert_eq!(hit.witness, vec![q(0)]);
    }

    #[test]
    fn point_inside_segment() {
        let parts = vec![pts(&[&[0], &[2]]), pts(&[&[1]])];
        let hit = hulls_intersect(&parts, 1).unwrap().unwrap();
        assert_eq!(hit.witness, vec![q(1)]);
    }

    #[test]
    fn parallel_segments_do_not_intersect() {
        let parts = vec![pts(&[&[0, 0], &[1, 0]]), pts(&[&[0, 1], &[1, 1]])];
        assert_eq!(hulls_intersect(&parts, 2).unwrap(), None);
    }

    #[test]
    fn unit_square_diagonals_cross_in_the_middle() {
        let parts = vec![pts(&[&[0, 0], &[1, 1]]), pts(&[&[1, 0], &[0, 1]])];
        let hit = hulls_intersect(&parts, 2).unwrap().unwrap();
        assert_eq!(hit.witness, vec![qr(1, 2), qr(1, 2)]);
    }

    #[test]
    fn hull_errors() {
        let parts = vec![pts(&[&[0]]), vec![]];
        assert!(matches!(
            hulls_intersect(&parts, 1),
            Err(TverbergError::EmptyPart { index: 1 })
        ));
        let parts = vec![pts(&[&[0]]), pts(&[&[0, 1]])];
        assert!(matches!(
            hulls_intersect(&parts, 1),
            Err(TverbergError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn partition_enumeration_is_canonical() {
        let all: Vec<Vec<Vec<usize>>> = partitions(3, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![vec![0, 1], vec![2]],
                vec![vec![0, 2], vec![1]],
                vec![vec![0], vec![1, 2]],
            ]
        );
    }

    #[test]
    fn partition_counts_match_stirling_numbers() {
        use crate::combinatorics::stirling2;
        for (n, r) in [(3usize, 2usize), (4, 2), (5, 3), (6, 3), (6, 4), (7, 3)] {
            let count = partitions(n, r).count();
            assert_eq!(
                num_bigint::BigUint::from(count),
                stirling2(n as u64, r as u64),
                "({n},{r})"
            );
        }
    }

    #[test]
    fn partition_blocks_are_keyed_by_least_element() {
        for blocks in partitions(6, 3) {
            let mins: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
            assert!(mins.windows(2).all(|w| w[0] < w[1]));
            for b in &blocks {
                assert!(b.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn line_search_finds_middle_point() {
        let cfg = config(&[&[0], &[5], &[2]]);
        let cert = tverberg_search(&cfg, 2).unwrap().unwrap();
        assert_eq!(cert.parts, vec![vec![0, 1], vec![2]]);
        assert_eq!(cert.witness, vec![q(2)]);
        cert.verify(&cfg).unwrap();
    }

    #[test]
    fn interior_point_of_triangle() {
        let cfg = config(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1]]);
        let cert = tverberg_search(&cfg, 2).unwrap().unwrap();
        assert_eq!(cert.parts, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(cert.witness, vec![q(1), q(1)]);
        cert.verify(&cfg).unwrap();
    }

    #[test]
    fn convex_position_has_unique_radon_partition() {
        // brute force over all 7 unordered 2-partitions of the square
        let cfg = config(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let mut hits = Vec::new();
        for blocks in partitions(4, 2) {
            let parts: Vec<Vec<Vec<Rational>>> = blocks
                .iter()
                .map(|b| b.iter().map(|&i| cfg.points()[i].clone()).collect())
                .collect();
            if hulls_intersect(&parts, 2).unwrap().is_some() {
                hits.push(blocks);
            }
        }
        assert_eq!(hits, vec![vec![vec![0, 2], vec![1, 3]]]);
        let cert = tverberg_search(&cfg, 2).unwrap().unwrap();
        assert_eq!(cert.witness, vec![qr(1, 2), qr(1, 2)]);
        cert.verify(&cfg).unwrap();
    }

    #[test]
    fn affine_check_centroid() {
        let cfg = config(&[&[0, 0], &[3, 0], &[0, 3], &[1, 1]]);
        let result = affine_ttt_check(&cfg, 2).unwrap();
        assert_eq!(result.certificate.parts, vec![vec![0, 1, 2], vec![3]]);
        let dims: Vec<usize> = result.faces.iter().map(|f| f.dimension()).collect();
        assert_eq!(dims, vec![2, 0]);
        result.certificate.verify(&cfg).unwrap();
    }

    #[test]
    fn affine_check_three_parts_on_a_line() {
        // exhaustive search over the 25 unordered 3-partitions of 5 points
        let cfg = config(&[&[0], &[1], &[2], &[3], &[4]]);
        assert_eq!(partitions(5, 3).count(), 25);
        let result = affine_ttt_check(&cfg, 3).unwrap();
        result.certificate.verify(&cfg).unwrap();
        assert_eq!(result.faces.len(), 3);
        let total_vertices: usize = result.faces.iter().map(|f| f.vertices().len()).sum();
        assert_eq!(total_vertices, 5);
    }

    #[test]
    fn affine_check_point_count_error() {
        let cfg = config(&[&[0], &[1], &[2]]);
        assert!(matches!(
            affine_ttt_check(&cfg, 3),
            Err(TverbergError::WrongPointCount {
                expected: 5,
                got: 3,
                ..
            })
        ));
    }

    #[test]
    fn simplex_and_fourier_motzkin_agree_on_small_cases() {
        let cases: Vec<Vec<Vec<Vec<Rational>>>> = vec![
            vec![pts(&[&[0], &[2]]), pts(&[&[1]])],
            vec![pts(&[&[0], &[2]]), pts(&[&[3]])],
            vec![pts(&[&[0, 0], &[1, 0]]), pts(&[&[0, 1], &[1, 1]])],
            vec![pts(&[&[0, 0], &[1, 1]]), pts(&[&[1, 0], &[0, 1]])],
            vec![pts(&[&[0], &[4]]), pts(&[&[1], &[3]]), pts(&[&[2]])],
        ];
        for parts in cases {
            let dim = parts[0][0].len();
            assert_eq!(
                hulls_intersect(&parts, dim).unwrap().is_some(),
                hulls_intersect_by_fourier_motzkin(&parts, dim).unwrap(),
                "{parts:?}"
            );
        }
    }

    #[test]
    fn certificate_verification_rejects_corruption() {
        let cfg = config(&[&[0], &[5], &[2]]);
        let mut cert = tverberg_search(&cfg, 2).unwrap().unwrap();
        cert.witness = vec![q(3)];
        assert!(cert.verify(&cfg).is_err());
    }

    #[test]
    fn parse_points_and_rationals() {
        let cfg = PointConfig::parse("0 1/2\n-3/4 2\n\n1 1\n").unwrap();
        assert_eq!(cfg.dim(), 2);
        assert_eq!(cfg.len(), 3);
        assert_eq!(cfg.points()[0][1], qr(1, 2));
        assert_eq!(cfg.points()[1][0], qr(-3, 4));

        assert!(matches!(
            PointConfig::parse("1 2\n3\n"),
            Err(TverbergError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            PointConfig::parse("x y\n"),
            Err(TverbergError::ParsePoint { .. })
        ));
        assert!(matches!(
            PointConfig::parse("1/0\n"),
            Err(TverbergError::ParsePoint { .. })
        ));
        assert!(matches!(PointConfig::parse(""), Err(TverbergError::Empty)));
    }

    #[test]
    fn certificate_json_uses_rational_strings() {
        let cfg = config(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]);
        let cert = tverberg_search(&cfg, 2).unwrap().unwrap();
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["witness"][0], "1/2");
        assert_eq!(json["parts"][0][0], 0);
    }

    #[test]
    fn guarantee_bound() {
        assert!(tverberg_guarantee_applies(&config(&[&[0], &[1], &[2]]), 2));
        assert!(!tverberg_guarantee_applies(&config(&[&[0], &[1]]), 2));
    }
}
