//! Closed-form ridge regression on position-major one-hot features.

use crate::error::{Error, Result};

pub const RIDGE_LAMBDA: f64 = 1e-3;

/// Solves `(X^T X + lambda I) w = X^T y` where row `i` of `X` is the one-hot
/// encoding of `samples[i]` (feature `4 * position + symbol`).
pub fn fit_ridge(samples: &[&[usize]], targets: &[f64], width: usize, lambda: f64) -> Result<Vec<f64>> {
    if samples.is_empty() || samples.len() != targets.len() {
        return Err(Error::SizeMismatch {
            left: samples.len(),
            right: targets.len(),
        });
    }
    let mut gram = vec![0.0; width * width];
    let mut rhs = vec![0.0; width];
    for (sample, &y) in samples.iter().zip(targets) {
        let active: Vec<usize> = active_features(sample).collect();
        for &a in &active {
            rhs[a] += y;
            for &b in &active {
                gram[a * width + b] += 1.0;
            }
        }
    }
    for d in 0..width {
        gram[d * width + d] += lambda;
    }
    cholesky_solve(&mut gram, &mut rhs, width)?;
    Ok(rhs)
}

pub(crate) fn active_features(sample: &[usize]) -> impl Iterator<Item = usize> + '_ {
    sample.iter().enumerate().map(|(p, &s)| 4 * p + s)
}

/// In-place Cholesky factorization and solve; `a` is row-major `n x n`.
fn cholesky_solve(a: &mut [f64], b: &mut [f64], n: usize) -> Result<()> {
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if d <= 0.0 {
            return Err(Error::InvalidParameter(
                "normal equations are not positive definite".into(),
            ));
        }
        let d = d.sqrt();
        a[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / d;
        }
    }
    // L z = b
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= a[i * n + k] * b[k];
        }
        b[i] = s / a[i * n + i];
    }
    // L^T w = z
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= a[k * n + i] * b[k];
        }
        b[i] = s / a[i * n + i];
    }
    Ok(())
}
