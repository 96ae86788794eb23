//! Small dense complex linear algebra: pivoted LU determinant and cofactors.
//! Matrices here are tiny (N <= ~6), so direct factorization is enough.

use num_complex::Complex64;

/// Determinant of an n x n complex matrix (row-major) via partially
/// pivoted Gaussian elimination.
pub fn det_complex(a: &[Complex64], n: usize) -> Complex64 {
    debug_assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let (pivot_row, pivot_mag) = (col..n)
            .map(|r| (r, m[r * n + col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pivot_mag == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot_row != col {
            for k in 0..n {
                m.swap(col * n + k, pivot_row * n + k);
            }
            det = -det;
        }
        let pivot = m[col * n + col];
        det *= pivot;
        for row in (col + 1)..n {
            let factor = m[row * n + col] / pivot;
            for k in (col + 1)..n {
                let sub = factor * m[col * n + k];
                m[row * n + k] -= sub;
            }
        }
    }
    det
}

/// Cofactor d(det A)/d(a_ij) = (-1)^{i+j} * det of A with row i, col j removed.
pub fn cofactor(a: &[Complex64], n: usize, i: usize, j: usize) -> Complex64 {
    if n == 1 {
        return Complex64::new(1.0, 0.0);
    }
    let mut minor = Vec::with_capacity((n - 1) * (n - 1));
    for r in 0..n {
        if r == i {
            continue;
        }
        for c in 0..n {
            if c == j {
                continue;
            }
            minor.push(a[r * n + c]);
        }
    }
    let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
    sign * det_complex(&minor, n - 1)
}
