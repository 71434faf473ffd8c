//! Counting helpers used by the cell-census cross-checks.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    // each partial product is C(n - k + i, i), so the division is exact
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n!`.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Stirling number of the second kind `S(n, k)`: the number of partitions of
/// an n-element set into k nonempty unordered blocks.
pub fn stirling2(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    if n == 0 {
        return BigUint::one();
    }
    if k == 0 {
        return BigUint::zero();
    }
    // S(n, k) = k S(n-1, k) + S(n-1, k-1), row by row
    let k = k as usize;
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one(); // S(0, 0)
    for _ in 1..=n {
        for j in (1..=k).rev() {
            row[j] = &row[j] * j as u64 + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[k].clone()
}
