//! Fourier-Motzkin feasibility oracle for common points of convex hulls.
//!
//! An independent decision path used to cross-check the simplex-based
//! [`super::hulls_intersect`]: it builds its own equality system from the
//! point data, eliminates the equalities by exact Gaussian substitution, and
//! then eliminates the remaining free variables from the nonnegativity
//! inequalities one at a time in the classical Fourier-Motzkin fashion.
//! Inequalities are normalized and deduplicated between rounds to tame the
//! quadratic growth; everything is exact rational arithmetic.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::TverbergError;

/// Decides whether the convex hulls of the given parts share a common
/// point, by Fourier-Motzkin elimination.
pub fn hulls_intersect_by_fourier_motzkin(
    parts: &[Vec<Vec<BigRational>>],
    dim: usize,
) -> Result<bool, TverbergError> {
    super::validate_parts(parts, dim)?;
    // variables: one barycentric weight per point, grouped by part
    let n: usize = parts.iter().map(Vec::len).sum();
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0usize, |acc, p| {
            let o = *acc;
            *acc += p.len();
            Some(o)
        })
        .collect();

    // equalities: coordinates of part 0's combination equal those of every
    // other part, and each part's weights sum to one
    let mut equalities: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for i in 1..parts.len() {
        for t in 0..dim {
            let mut row = vec![BigRational::zero(); n];
            for (j, p) in parts[0].iter().enumerate() {
                row[offsets[0] + j] = p[t].clone();
            }
            for (j, p) in parts[i].iter().enumerate() {
                row[offsets[i] + j] = -p[t].clone();
            }
            equalities.push((row, BigRational::zero()));
        }
    }
    for (i, part) in parts.iter().enumerate() {
        let mut row = vec![BigRational::zero(); n];
        for j in 0..part.len() {
            row[offsets[i] + j] = BigRational::from_integer(1.into());
        }
        equalities.push((row, BigRational::from_integer(1.into())));
    }

    Ok(nonnegative_solution_exists(equalities, n))
}

/// Feasibility of `A x = b, x >= 0` by substitution plus Fourier-Motzkin.
fn nonnegative_solution_exists(
    mut equalities: Vec<(Vec<BigRational>, BigRational)>,
    n: usize,
) -> bool {
    // Gaussian elimination to row echelon, tracking pivot columns
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (eq index, column)
    let mut next_row = 0usize;
    for col in 0..n {
        let Some(p) = (next_row..equalities.len()).find(|&i| !equalities[i].0[col].is_zero())
        else {
            continue;
        };
        equalities.swap(next_row, p);
        let scale = equalities[next_row].0[col].clone();
        for v in equalities[next_row].0.iter_mut() {
            *v /= &scale;
        }
        equalities[next_row].1 /= &scale;
        for i in 0..equalities.len() {
            if i != next_row && !equalities[i].0[col].is_zero() {
                let factor = equalities[i].0[col].clone();
                let (source, target) = if i < next_row {
                    let (a, b) = equalities.split_at_mut(next_row);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = equalities.split_at_mut(i);
                    (&a[next_row], &mut b[0])
                };
                for (v, s) in target.0.iter_mut().zip(&source.0) {
                    *v -= &factor * s;
                }
                let delta = &factor * &source.1;
                target.1 -= delta;
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
        if next_row == equalities.len() {
            break;
        }
    }
    // rows 0=c with c != 0 are contradictions
    for (row, rhs) in equalities.iter().skip(next_row) {
        if row.iter().all(Zero::is_zero) && !rhs.is_zero() {
            return false;
        }
    }

    // express pivot variables through the free ones and rewrite x_j >= 0 as
    // inequalities over the free variables: coeffs . y + constant >= 0
    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let free_index = |c: usize| free_cols.binary_search(&c).expect("free column");

    let mut inequalities: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for x in 0..n {
        if let Some(&(row, _)) = pivots.iter().find(|&&(_, c)| c == x) {
            // x = rhs - sum over free columns
            let mut coeffs = vec![BigRational::zero(); free_cols.len()];
            for &c in &free_cols {
                coeffs[free_index(c)] = -equalities[row].0[c].clone();
            }
            inequalities.push((coeffs, equalities[row].1.clone()));
        } else {
            let mut coeffs = vec![BigRational::zero(); free_cols.len()];
            coeffs[free_index(x)] = BigRational::from_integer(1.into());
            inequalities.push((coeffs, BigRational::zero()));
        }
    }

    fourier_motzkin(inequalities)
}

/// Feasibility of `coeffs . y + constant >= 0` systems by variable
/// elimination.
fn fourier_motzkin(mut system: Vec<(Vec<BigRational>, BigRational)>) -> bool {
    let vars = system.first().map_or(0, |(c, _)| c.len());
    for var in (0..vars).rev() {
        let mut lower = Vec::new(); // coeff > 0: y >= bound
        let mut upper = Vec::new(); // coeff < 0: y <= bound
        let mut rest = Vec::new();
        for (coeffs, constant) in system {
            match coeffs[var].cmp(&BigRational::zero()) {
                std::cmp::Ordering::Greater | std::cmp::Ordering::Less => {
                    // normalize the eliminated coefficient to +-1
                    let scale = coeffs[var].abs();
                    let coeffs: Vec<BigRational> = coeffs.iter().map(|c| c / &scale).collect();
                    let constant = constant / &scale;
                    if coeffs[var].is_positive() {
                        lower.push((coeffs, constant));
                    } else {
                        upper.push((coeffs, constant));
                    }
                }
                std::cmp::Ordering::Equal => rest.push((coeffs, constant)),
            }
        }
        // combine every lower bound with every upper bound
        let mut next: BTreeSet<(Vec<BigRational>, BigRational)> = BTreeSet::new();
        for (lc, lk) in &lower {
            for (uc, uk) in &upper {
                let coeffs: Vec<BigRational> = lc.iter().zip(uc).map(|(a, b)| a + b).collect();
                let constant = lk + uk;
                debug_assert!(coeffs[var].is_zero());
                next.insert((coeffs, constant));
            }
        }
        for row in rest {
            next.insert(row);
        }
        system = next.into_iter().collect();

        // drop rows with no remaining variables, checking them on the way
        let mut remaining = Vec::new();
        for (coeffs, constant) in system {
            if coeffs[..var].iter().all(Zero::is_zero) {
                if constant.is_negative() {
                    return false;
                }
            } else {
                remaining.push((coeffs, constant));
            }
        }
        system = remaining;
    }
    system.iter().all(|(_, constant)| !constant.is_negative())
}
