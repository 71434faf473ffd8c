//! Exact phase-1 simplex over the rationals.
//!
//! Decides feasibility of `A x = b, x >= 0` by minimizing the sum of one
//! artificial variable per row, pivoting with Bland's least-index rule so the
//! elimination cannot cycle. Everything is arbitrary-precision rational
//! arithmetic; a zero optimum yields an exact feasible point and a positive
//! optimum is a proof of infeasibility.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Returns an exact solution of `A x = b, x >= 0`, or `None` when the system
/// is infeasible.
pub(crate) fn feasible_point(
    a: &[Vec<BigRational>],
    b: &[BigRational],
) -> Option<Vec<BigRational>> {
    let m = a.len();
    assert_eq!(b.len(), m);
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![BigRational::zero(); n]);
    }

    // tableau rows [A | I] with b >= 0; artificial j sits at column n + j
    let cols = n + m;
    let mut tableau: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    for (row, bi) in a.iter().zip(b) {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let flip = bi.is_negative();
        let mut t: Vec<BigRational> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        t.resize(cols, BigRational::zero());
        tableau.push(t);
        rhs.push(if flip { -bi.clone() } else { bi.clone() });
    }
    for (j, row) in tableau.iter_mut().enumerate() {
        row[n + j] = BigRational::one();
    }
    let mut basis: Vec<usize> = (n..cols).collect();

    loop {
        // reduced cost of column j for the objective "sum of artificials":
        // c_j - sum over rows of c_basis[i] * tableau[i][j]
        let entering = (0..cols).find(|&j| {
            let c_j = if j >= n {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            let mut reduced = c_j;
            for (i, &bv) in basis.iter().enumerate() {
                if bv >= n {
                    reduced -= &tableau[i][j];
                }
            }
            reduced.is_negative()
        });
        let Some(col) = entering else { break };

        // ratio test; ties resolved toward the smallest basic variable index
        let mut leaving: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if tableau[i][col].is_positive() {
                let ratio = &rhs[i] / &tableau[i][col];
                let better = match &leaving {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
        }
        let (pivot_row, _) = leaving.expect("phase-1 objective is bounded below by zero");

        // pivot
        let pivot = tableau[pivot_row][col].clone();
        for v in tableau[pivot_row].iter_mut() {
            *v /= &pivot;
        }
        rhs[pivot_row] /= &pivot;
        for i in 0..m {
            if i != pivot_row && !tableau[i][col].is_zero() {
                let factor = tableau[i][col].clone();
                let source = tableau[pivot_row].clone();
                for (v, s) in tableau[i].iter_mut().zip(&source) {
                    *v -= &factor * s;
                }
                let delta = &factor * &rhs[pivot_row];
                rhs[i] -= delta;
            }
        }
        basis[pivot_row] = col;
    }

    // optimum value = sum of basic artificial values
    let objective: BigRational = basis
        .iter()
        .enumerate()
        .filter(|(_, &bv)| bv >= n)
        .map(|(i, _)| rhs[i].clone())
        .sum();
    if !objective.is_zero() {
        return None;
    }

    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = rhs[i].clone();
        }
    }
    Some(x)
}
