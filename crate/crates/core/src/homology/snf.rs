//! Sparse Smith normal form over arbitrary-precision integers.
//!
//! The elimination repeatedly picks the nonzero entry of minimal absolute
//! value (ties broken by row, then column), clears its column with exact row
//! operations and its row with exact column operations, and records the
//! isolated pivot. Division remainders leave strictly smaller entries and
//! simply cause a re-pick, so the loop terminates. The collected diagonal is
//! then normalized into the divisibility chain by pairwise gcd/lcm
//! replacement, which the invariant factors are insensitive to because they
//! are unique for the matrix.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseIntMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_k` of an integer matrix, all
/// positive, with `k` the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Computes the Smith normal form of a sparse integer matrix; exact and
/// deterministic.
pub fn smith_normal_form(matrix: &SparseIntMatrix) -> SnfResult {
    let mut elim = Elimination::new(matrix);
    let diagonal = elim.run();
    SnfResult {
        invariant_factors: normalize_divisibility(diagonal),
    }
}

struct Elimination {
    rows: Vec<BTreeMap<usize, BigInt>>,
    col_rows: Vec<BTreeSet<usize>>,
    /// Positions holding an entry of absolute value one.
    units: BTreeSet<(usize, usize)>,
}

impl Elimination {
    fn new(matrix: &SparseIntMatrix) -> Self {
        let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); matrix.rows()];
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); matrix.cols()];
        let mut units = BTreeSet::new();
        for (r, c, v) in matrix.entries() {
            rows[*r].insert(*c, v.clone());
            col_rows[*c].insert(*r);
            if v.magnitude().is_one() {
                units.insert((*r, *c));
            }
        }
        Elimination {
            rows,
            col_rows,
            units,
        }
    }

    /// Entry of minimal absolute value; ties broken by (row, col).
    fn choose_pivot(&self) -> Option<(usize, usize)> {
        if let Some(&(r, c)) = self.units.first() {
            return Some((r, c));
        }
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                let abs = v.abs();
                match &best {
                    Some((b, _, _)) if *b <= abs => {}
                    _ => best = Some((abs, r, c)),
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    /// Writes `value` at (r, c), maintaining the column and unit indexes.
    fn set(&mut self, r: usize, c: usize, value: BigInt) {
        if value.is_zero() {
            if self.rows[r].remove(&c).is_some() {
                self.col_rows[c].remove(&r);
                self.units.remove(&(r, c));
            }
            return;
        }
        if value.magnitude().is_one() {
            self.units.insert((r, c));
        } else {
            self.units.remove(&(r, c));
        }
        self.rows[r].insert(c, value);
        self.col_rows[c].insert(r);
    }

    /// `row_target -= q * row_source`.
    fn row_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        let source_entries: Vec<(usize, BigInt)> = self.rows[source]
            .iter()
            .map(|(&c, v)| (c, v.clone()))
            .collect();
        for (c, v) in source_entries {
            let current = self.rows[target]
                .get(&c)
                .cloned()
                .unwrap_or_else(BigInt::zero);
            self.set(target, c, current - q * v);
        }
    }

    /// Runs the elimination to a diagonal (unordered); returns the absolute
    /// diagonal values.
    fn run(&mut self) -> Vec<BigInt> {
        let mut diagonal = Vec::new();
        while let Some((pr, pc)) = self.choose_pivot() {
            let pivot = self.rows[pr][&pc].clone();

            // clear the pivot column with row operations
            let others: Vec<usize> = self.col_rows[pc]
                .iter()
                .copied()
                .filter(|&r| r != pr)
                .collect();
            let mut clean = true;
            for r in others {
                let value = self.rows[r][&pc].clone();
                let (q, rem) = value.div_rem(&pivot);
                if !q.is_zero() {
                    self.row_axpy(r, pr, &q);
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder smaller than the pivot exists; re-pick
                continue;
            }

            // the pivot column is clear, so clearing the pivot row with
            // column operations touches no other row: each entry is simply
            // replaced by its remainder modulo the pivot
            let row_entries: Vec<(usize, BigInt)> = self.rows[pr]
                .iter()
                .filter(|(&c, _)| c != pc)
                .map(|(&c, v)| (c, v.clone()))
                .collect();
            let mut all_divisible = true;
            for (c, v) in row_entries {
                let (_, rem) = v.div_rem(&pivot);
                if !rem.is_zero() {
                    all_divisible = false;
                }
                self.set(pr, c, rem);
            }
            if !all_divisible {
                continue;
            }

            diagonal.push(pivot.abs());
            self.set(pr, pc, BigInt::zero());
        }
        diagonal
    }
}

/// Rewrites a positive diagonal into the divisibility chain: any pair
/// violating divisibility is replaced by (gcd, lcm) until stable, then
/// sorted. Factors equal to one are handled separately since one divides
/// everything.
fn normalize_divisibility(diagonal: Vec<BigInt>) -> Vec<BigInt> {
    let ones = diagonal.iter().filter(|d| d.is_one()).count();
    let mut rest: Vec<BigInt> = diagonal.into_iter().filter(|d| !d.is_one()).collect();
    loop {
        let mut changed = false;
        for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                if !(&rest[j] % &rest[i]).is_zero() {
                    let g = rest[i].gcd(&rest[j]);
                    let l = &rest[i] * &rest[j] / &g;
                    rest[i] = g;
                    rest[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    rest.sort();
    let mut out = vec![BigInt::one(); ones];
    out.append(&mut rest);
    out
}
