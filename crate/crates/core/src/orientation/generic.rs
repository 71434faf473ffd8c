//! Coherent-orientation search on generic prism complexes.
//!
//! A generic complex is described by its labeled top cells and, for every
//! codimension-1 cell, the list of incident top cells together with the sign
//! the facet inherits when the top cell is oriented positively. The search
//! decides whether signs can be chosen for the top cells so that every
//! facet inherits one constant sign, and returns a witness assignment or
//! reports unsatisfiability.
//!
//! Complexes with fewer than 25 top cells are decided by enumerating all
//! sign assignments; larger ones by propagating the pairwise parity
//! constraints through a union-find structure. Both procedures are exact.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cell::Sign;
use crate::complex::ComplexSpec;

use super::OrientationError;

const ENUMERATION_LIMIT: usize = 25;

/// A top cell: a label and the dimensions of its simplex factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericTopCell {
    pub id: String,
    pub factors: Vec<usize>,
}

/// One incidence of a codimension-1 cell: the containing top cell and the
/// sign the facet inherits when that top cell is oriented positively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericCoface {
    pub top: String,
    pub induced_sign_if_plus: Sign,
}

/// A codimension-1 cell with its cofaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericFacet {
    pub id: String,
    pub cofaces: Vec<GenericCoface>,
}

/// A prism complex given by explicit incidence data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericPrismComplex {
    pub top_cells: Vec<GenericTopCell>,
    pub codim1: Vec<GenericFacet>,
}

impl GenericPrismComplex {
    pub fn from_json(text: &str) -> Result<Self, OrientationError> {
        let parsed: GenericPrismComplex = serde_json::from_str(text)
            .map_err(|e| OrientationError::MalformedComplex(e.to_string()))?;
        parsed.validate()?;
        Ok(parsed)
    }

    /// Re-encodes `Y(N, r)` through the generic interface. The induced-sign
    /// table comes from the boundary coefficients of positively oriented
    /// top cells; ids are the display forms of the cells.
    pub fn from_spec(spec: &ComplexSpec) -> Result<Self, OrientationError> {
        if spec.n() < spec.r() {
            return Err(OrientationError::DegenerateSpec {
                n: spec.n(),
                r: spec.r(),
            });
        }
        let tops = spec.top_cells();
        let top_cells = tops
            .iter()
            .map(|c| GenericTopCell {
                id: c.to_string(),
                factors: c.factor_dims(),
            })
            .collect();
        let mut facets: BTreeMap<crate::cell::Cell, Vec<GenericCoface>> = BTreeMap::new();
        for top in &tops {
            for (face, &coef) in top.boundary().terms() {
                facets.entry(face.clone()).or_default().push(GenericCoface {
                    top: top.to_string(),
                    induced_sign_if_plus: Sign::of(coef).expect("nonzero"),
                });
            }
        }
        let codim1 = facets
            .into_iter()
            .map(|(face, cofaces)| GenericFacet {
                id: face.to_string(),
                cofaces,
            })
            .collect();
        Ok(GenericPrismComplex { top_cells, codim1 })
    }

    fn validate(&self) -> Result<(), OrientationError> {
        let mut ids = std::collections::BTreeSet::new();
        for top in &self.top_cells {
            if !ids.insert(top.id.as_str()) {
                return Err(OrientationError::MalformedComplex(format!(
                    "duplicate top cell id {:?}",
                    top.id
                )));
            }
            if top.factors.is_empty() {
                return Err(OrientationError::MalformedComplex(format!(
                    "top cell {:?} has no factors",
                    top.id
                )));
            }
        }
        let mut facet_ids = std::collections::BTreeSet::new();
        for facet in &self.codim1 {
            if !facet_ids.insert(facet.id.as_str()) {
                return Err(OrientationError::MalformedComplex(format!(
                    "duplicate codimension-1 id {:?}",
                    facet.id
                )));
            }
            for coface in &facet.cofaces {
                if !ids.contains(coface.top.as_str()) {
                    return Err(OrientationError::MalformedComplex(format!(
                        "facet {:?} references unknown top cell {:?}",
                        facet.id, coface.top
                    )));
                }
            }
        }
        Ok(())
    }

    fn top_index(&self) -> BTreeMap<&str, usize> {
        self.top_cells
            .iter()
            .enumerate()
            .map(|(i, t)| (t.id.as_str(), i))
            .collect()
    }

    /// Pairwise constraints: cells (a, b) whose signs must satisfy
    /// `eps_a * eps_b = rel`.
    fn constraints(&self) -> Vec<(usize, usize, Sign)> {
        let index = self.top_index();
        let mut out = Vec::new();
        for facet in &self.codim1 {
            if let Some(first) = facet.cofaces.first() {
                let a = index[first.top.as_str()];
                for coface in &facet.cofaces[1..] {
                    let b = index[coface.top.as_str()];
                    out.push((
                        a,
                        b,
                        first.induced_sign_if_plus * coface.induced_sign_if_plus,
                    ));
                }
            }
        }
        out
    }

    fn assignment_from_bits(&self, mask: u64) -> BTreeMap<String, Sign> {
        self.top_cells
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let sign = if mask >> i & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                (t.id.clone(), sign)
            })
            .collect()
    }
}

/// Outcome of the coherent-orientation search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrientationSearchOutcome {
    /// A sign assignment under which every facet inherits one constant sign.
    Satisfiable(BTreeMap<String, Sign>),
    Unsatisfiable,
}

impl OrientationSearchOutcome {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, OrientationSearchOutcome::Satisfiable(_))
    }

    pub fn witness(&self) -> Option<&BTreeMap<String, Sign>> {
        match self {
            OrientationSearchOutcome::Satisfiable(w) => Some(w),
            OrientationSearchOutcome::Unsatisfiable => None,
        }
    }
}

/// Decides coherent orientability of a generic prism complex.
///
/// Dispatches to exhaustive enumeration below 25 top cells and to parity
/// propagation above; both are exact decision procedures.
pub fn verify_generic_prism_complex(
    complex: &GenericPrismComplex,
) -> Result<OrientationSearchOutcome, OrientationError> {
    complex.validate()?;
    if complex.top_cells.len() < ENUMERATION_LIMIT {
        Ok(decide_by_enumeration(complex))
    } else {
        Ok(decide_by_propagation(complex))
    }
}

/// Checks one assignment against every facet constraint.
pub fn check_assignment(
    complex: &GenericPrismComplex,
    assignment: &BTreeMap<String, Sign>,
) -> Result<bool, OrientationError> {
    complex.validate()?;
    for top in &complex.top_cells {
        if !assignment.contains_key(&top.id) {
            return Err(OrientationError::MalformedComplex(format!(
                "assignment misses top cell {:?}",
                top.id
            )));
        }
    }
    for facet in &complex.codim1 {
        let mut signs = facet
            .cofaces
            .iter()
            .map(|c| assignment[&c.top] * c.induced_sign_if_plus);
        if let Some(first) = signs.next() {
            if signs.any(|s| s != first) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive search over all `2^n` sign assignments, in ascending bit-mask
/// order with bit i = 1 meaning top cell i is negative. Returns the first
/// satisfying assignment.
pub fn decide_by_enumeration(complex: &GenericPrismComplex) -> OrientationSearchOutcome {
    let n = complex.top_cells.len();
    assert!(n < 64, "enumeration needs fewer than 64 top cells");
    let constraints = complex.constraints();
    'mask: for mask in 0u64..1 << n {
        for &(a, b, rel) in &constraints {
            let sa = mask >> a & 1;
            let sb = mask >> b & 1;
            let equal_signs = sa == sb;
            let want_equal = rel == Sign::Plus;
            if equal_signs != want_equal {
                continue 'mask;
            }
        }
        return OrientationSearchOutcome::Satisfiable(complex.assignment_from_bits(mask));
    }
    OrientationSearchOutcome::Unsatisfiable
}

/// Parity propagation: every facet forces the relative sign of each pair of
/// its cofaces; the pairs are merged through a union-find carrying signs,
/// and any contradiction proves unsatisfiability. Roots are assigned `+1`.
pub fn decide_by_propagation(complex: &GenericPrismComplex) -> OrientationSearchOutcome {
    let n = complex.top_cells.len();
    let mut uf = ParityUnionFind::new(n);
    for (a, b, rel) in complex.constraints() {
        if !uf.union(a, b, rel) {
            return OrientationSearchOutcome::Unsatisfiable;
        }
    }
    let mut witness = BTreeMap::new();
    for (i, top) in complex.top_cells.iter().enumerate() {
        let (_, sign) = uf.find(i);
        witness.insert(top.id.clone(), sign);
    }
    OrientationSearchOutcome::Satisfiable(witness)
}

/// Union-find over cells where each node stores its sign relative to its
/// parent.
struct ParityUnionFind {
    parent: Vec<usize>,
    rel: Vec<Sign>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            rel: vec![Sign::Plus; n],
        }
    }

    /// Root of `x` and the sign of `x` relative to the root.
    fn find(&mut self, x: usize) -> (usize, Sign) {
        if self.parent[x] == x {
            return (x, Sign::Plus);
        }
        let (root, parent_sign) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.rel[x] = self.rel[x] * parent_sign;
        (root, self.rel[x])
    }

    /// Enforces `eps_a * eps_b = rel`; false on contradiction.
    fn union(&mut self, a: usize, b: usize, rel: Sign) -> bool {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        if ra == rb {
            return sa * sb == rel;
        }
        // eps_a = sa * eps_ra, eps_b = sb * eps_rb, so eps_ra relative to
        // eps_rb must be sa * sb * rel
        self.parent[ra] = rb;
        self.rel[ra] = sa * sb * rel;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::o_orientation;

    /// The boundary of the 3-simplex as a simplicial complex: four
    /// triangles, six edges, each edge in two triangles, with the induced
    /// signs of the ascending-order boundary formula.
    fn tetrahedron_boundary() -> GenericPrismComplex {
        let tri = |id: &str| GenericTopCell {
            id: id.into(),
            factors: vec![2],
        };
        let coface = |top: &str, sign: Sign| GenericCoface {
            top: top.into(),
            induced_sign_if_plus: sign,
        };
        GenericPrismComplex {
            top_cells: vec![tri("012"), tri("013"), tri("023"), tri("123")],
            codim1: vec![
                GenericFacet {
                    id: "01".into(),
                    cofaces: vec![coface("012", Sign::Plus), coface("013", Sign::Plus)],
                },
                GenericFacet {
                    id: "02".into(),
                    cofaces: vec![coface("012", Sign::Minus), coface("023", Sign::Plus)],
                },
                GenericFacet {
                    id: "03".into(),
                    cofaces: vec![coface("013", Sign::Minus), coface("023", Sign::Minus)],
                },
                GenericFacet {
                    id: "12".into(),
                    cofaces: vec![coface("012", Sign::Plus), coface("123", Sign::Plus)],
                },
                GenericFacet {
                    id: "13".into(),
                    cofaces: vec![coface("013", Sign::Plus), coface("123", Sign::Minus)],
                },
                GenericFacet {
                    id: "23".into(),
                    cofaces: vec![coface("023", Sign::Plus), coface("123", Sign::Plus)],
                },
            ],
        }
    }

    #[test]
    fn tetrahedron_boundary_has_no_coherent_orientation() {
        // brute-force over all 16 assignments; the constraint chain
        // 012 ~ 013 ~ 023 ~ 012 is odd
        let complex = tetrahedron_boundary();
        let outcome = verify_generic_prism_complex(&complex).unwrap();
        assert_eq!(outcome, OrientationSearchOutcome::Unsatisfiable);
        assert_eq!(
            decide_by_enumeration(&complex),
            OrientationSearchOutcome::Unsatisfiable
        );
        assert_eq!(
            decide_by_propagation(&complex),
            OrientationSearchOutcome::Unsatisfiable
        );
    }

    #[test]
    fn isolated_triangle_is_trivially_satisfiable() {
        let complex = GenericPrismComplex {
            top_cells: vec![GenericTopCell {
                id: "t".into(),
                factors: vec![2],
            }],
            codim1: vec![
                GenericFacet {
                    id: "e0".into(),
                    cofaces: vec![GenericCoface {
                        top: "t".into(),
                        induced_sign_if_plus: Sign::Plus,
                    }],
                },
                GenericFacet {
                    id: "e1".into(),
                    cofaces: vec![GenericCoface {
                        top: "t".into(),
                        induced_sign_if_plus: Sign::Minus,
                    }],
                },
            ],
        };
        let outcome = verify_generic_prism_complex(&complex).unwrap();
        let witness = outcome.witness().expect("satisfiable").clone();
        assert!(check_assignment(&complex, &witness).unwrap());
    }

    #[test]
    fn reencoded_complex_matches_string_parity_up_to_global_sign() {
        let spec = ComplexSpec::new(3, 2).unwrap();
        let generic = GenericPrismComplex::from_spec(&spec).unwrap();
        assert_eq!(generic.top_cells.len(), 14);
        assert_eq!(generic.codim1.len(), 24);

        let outcome = verify_generic_prism_complex(&generic).unwrap();
        let witness = outcome.witness().expect("satisfiable");
        assert!(check_assignment(&generic, witness).unwrap());

        // connected complex: the witness agrees with the string-parity
        // assignment up to one global sign
        let assignment = o_orientation(&spec).unwrap();
        let ratios: std::collections::BTreeSet<Sign> = assignment
            .iter()
            .map(|(cell, sign)| witness[&cell.to_string()] * sign)
            .collect();
        assert_eq!(ratios.len(), 1);
    }

    #[test]
    fn both_search_strategies_agree() {
        for (n, r) in [(2, 2), (3, 2)] {
            let generic = GenericPrismComplex::from_spec(&ComplexSpec::new(n, r).unwrap()).unwrap();
            let a = decide_by_enumeration(&generic);
            let b = decide_by_propagation(&generic);
            assert_eq!(a.is_satisfiable(), b.is_satisfiable(), "Y({n},{r})");
            if let Some(w) = a.witness() {
                assert!(check_assignment(&generic, w).unwrap());
            }
            if let Some(w) = b.witness() {
                assert!(check_assignment(&generic, w).unwrap());
            }
        }
        let tetra = tetrahedron_boundary();
        assert_eq!(
            decide_by_enumeration(&tetra).is_satisfiable(),
            decide_by_propagation(&tetra).is_satisfiable()
        );
    }

    #[test]
    fn json_round_trip_and_validation() {
        let text = r#"{
            "top_cells": [{"id": "a", "factors": [1, 1]}, {"id": "b", "factors": [2]}],
            "codim1": [
                {"id": "e", "cofaces": [
                    {"top": "a", "induced_sign_if_plus": 1},
                    {"top": "b", "induced_sign_if_plus": -1}
                ]}
            ]
        }"#;
        let complex = GenericPrismComplex::from_json(text).unwrap();
        assert_eq!(complex.top_cells.len(), 2);
        let outcome = verify_generic_prism_complex(&complex).unwrap();
        assert!(outcome.is_satisfiable());

        assert!(GenericPrismComplex::from_json("{").is_err());
        let dangling = r#"{
            "top_cells": [{"id": "a", "factors": [1]}],
            "codim1": [{"id": "e", "cofaces": [{"top": "zzz", "induced_sign_if_plus": 1}]}]
        }"#;
        assert!(matches!(
            GenericPrismComplex::from_json(dangling),
            Err(OrientationError::MalformedComplex(_))
        ));
        let bad_sign = r#"{
            "top_cells": [{"id": "a", "factors": [1]}],
            "codim1": [{"id": "e", "cofaces": [{"top": "a", "induced_sign_if_plus": 2}]}]
        }"#;
        assert!(GenericPrismComplex::from_json(bad_sign).is_err());
    }

    #[test]
    fn odd_twisted_cycle_is_unsatisfiable_even_when_large() {
        // a cycle of 30 quadrilateral cells with one sign twist exercises the
        // propagation path (>= 25 top cells)
        let twist_at = 17;
        let mut top_cells = Vec::new();
        let mut codim1 = Vec::new();
        for i in 0..30 {
            top_cells.push(GenericTopCell {
                id: format!("q{i}"),
                factors: vec![1, 1],
            });
        }
        for i in 0..30 {
            let j = (i + 1) % 30;
            // equal induced signs demand eps_i = eps_j except at the twist
            let (sa, sb) = if i == twist_at {
                (Sign::Plus, Sign::Minus)
            } else {
                (Sign::Plus, Sign::Plus)
            };
            codim1.push(GenericFacet {
                id: format!("e{i}"),
                cofaces: vec![
                    GenericCoface {
                        top: format!("q{i}"),
                        induced_sign_if_plus: sa,
                    },
                    GenericCoface {
                        top: format!("q{j}"),
                        induced_sign_if_plus: sb,
                    },
                ],
            });
        }
        let complex = GenericPrismComplex { top_cells, codim1 };
        assert_eq!(
            verify_generic_prism_complex(&complex).unwrap(),
            OrientationSearchOutcome::Unsatisfiable
        );
    }
}
