//! Small dense linear solves (Gaussian elimination with partial pivoting).
//!
//! Systems in this crate stay tiny (a few hundred unknowns at most), so a
//! straightforward O(n^3) elimination is both fast enough and deterministic.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Solve `A x = b` in place. `a` is row-major `n x n`, `b` has length `n`.
pub(crate) fn solve_dense<T: Scalar>(a: &mut [T], b: &mut [T]) -> Result<Vec<T>> {
    let n = b.len();
    debug_assert_eq!(a.len(), n * n);

    for col in 0..n {
        // partial pivot
        let mut pivot_row = col;
        let mut pivot_mag = a[col * n + col].abs();
        for row in col + 1..n {
            let mag = a[row * n + col].abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if !(pivot_mag > T::zero()) || !pivot_mag.is_finite() {
            return Err(Error::SingularSystem);
        }
        if pivot_row != col {
            for k in col..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        let inv = T::one() / a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] * inv;
            if factor == T::zero() {
                continue;
            }
            a[row * n + col] = T::zero();
            for k in col + 1..n {
                let update = a[col * n + k] * factor;
                a[row * n + k] -= update;
            }
            let update = b[col] * factor;
            b[row] -= update;
        }
    }

    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row * n + k] * x[k];
        }
        x[row] = acc / a[row * n + row];
        if !x[row].is_finite() {
            return Err(Error::SingularSystem);
        }
    }
    Ok(x)
}
