//! Small dense helpers for the normal equations. Matrices are row-major `Vec<f64>`.

use crate::error::{Error, Result};

/// Relative pivot threshold below which a cross-product matrix is treated as singular.
const PIVOT_TOL: f64 = 1e-10;

/// Cholesky factor `L` of a symmetric positive definite `p x p` matrix.
pub(crate) fn cholesky(a: &[f64], p: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), p * p);
    let mut l = vec![0.0; p * p];
    for j in 0..p {
        let mut d = a[j * p + j];
        for k in 0..j {
            d -= l[j * p + k] * l[j * p + k];
        }
        let scale = a[j * p + j].abs().max(f64::MIN_POSITIVE);
        if !(d > PIVOT_TOL * scale) {
            return Err(Error::Singular(format!(
                "cross-product matrix is rank deficient at column {j}"
            )));
        }
        let d = d.sqrt();
        l[j * p + j] = d;
        for i in (j + 1)..p {
            let mut s = a[i * p + j];
            for k in 0..j {
                s -= l[i * p + k] * l[j * p + k];
            }
            l[i * p + j] = s / d;
        }
    }
    Ok(l)
}

/// Solves `L L' x = b` given the Cholesky factor.
pub(crate) fn cholesky_solve(l: &[f64], p: usize, b: &[f64]) -> Vec<f64> {
    let mut z = b.to_vec();
    for i in 0..p {
        let mut s = z[i];
        for k in 0..i {
            s -= l[i * p + k] * z[k];
        }
        z[i] = s / l[i * p + i];
    }
    for i in (0..p).rev() {
        let mut s = z[i];
        for k in (i + 1)..p {
            s -= l[k * p + i] * z[k];
        }
        z[i] = s / l[i * p + i];
    }
    z
}

/// Inverse of an SPD matrix from its Cholesky factor.
pub(crate) fn cholesky_inverse(l: &[f64], p: usize) -> Vec<f64> {
    let mut inv = vec![0.0; p * p];
    let mut e = vec![0.0; p];
    for j in 0..p {
        e.iter_mut().for_each(|v| *v = 0.0);
        e[j] = 1.0;
        let col = cholesky_solve(l, p, &e);
        for i in 0..p {
            inv[i * p + j] = col[i];
        }
    }
    inv
}

/// Least squares on pre-accumulated cross products. Returns coefficients and `(X'X)^-1`.
pub(crate) fn solve_normal(xtx: &[f64], xty: &[f64], p: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let l = cholesky(xtx, p)?;
    let beta = cholesky_solve(&l, p, xty);
    let inv = cholesky_inverse(&l, p);
    Ok((beta, inv))
}

/// `X'X` and `X'y` for a row-major design with `p` columns.
pub(crate) fn cross_products(x: &[f64], y: &[f64], p: usize) -> (Vec<f64>, Vec<f64>) {
    let n = y.len();
    debug_assert_eq!(x.len(), n * p);
    let mut xtx = vec![0.0; p * p];
    let mut xty = vec![0.0; p];
    for (row, &yt) in x.chunks_exact(p).zip(y) {
        for i in 0..p {
            let xi = row[i];
            xty[i] += xi * yt;
            for j in 0..=i {
                xtx[i * p + j] += xi * row[j];
            }
        }
    }
    for i in 0..p {
        for j in 0..i {
            xtx[j * p + i] = xtx[i * p + j];
        }
    }
    (xtx, xty)
}

pub(crate) fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = [4.0, 2.0, 2.0, 3.0];
        let b = [2.0, 1.0];
        let (x, inv) = solve_normal(&a, &b, 2).unwrap();
        assert!((4.0 * x[0] + 2.0 * x[1] - 2.0).abs() < 1e-12);
        assert!((2.0 * x[0] + 3.0 * x[1] - 1.0).abs() < 1e-12);
        // A * A^-1 = I
        for i in 0..2 {
            for j in 0..2 {
                let v: f64 = (0..2).map(|k| a[i * 2 + k] * inv[k * 2 + j]).sum();
                assert!((v - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_rank_deficient() {
        let a = [1.0, 2.0, 2.0, 4.0];
        assert!(matches!(cholesky(&a, 2), Err(Error::Singular(_))));
    }
}
