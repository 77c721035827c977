use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::{normal_two_sided, OlsFit};
use crate::error::{Error, Result};

/// AR(1) coefficients used in the bandwidth plug-in are clamped to this magnitude.
pub const RHO_CLAMP: f64 = 0.97;

#[derive(Debug, Clone, PartialEq)]
pub struct HacResult {
    pub bandwidth: f64,
    /// Long-run variance of the average score, `p x p` row-major.
    pub lrv: Vec<f64>,
    pub se: Vec<f64>,
    pub t_stats: Vec<f64>,
    /// Two-sided, standard normal reference.
    pub p_values: Vec<f64>,
}

/// Quadratic spectral kernel.
pub fn qs_kernel(x: f64) -> f64 {
    let z = 6.0 * PI * x / 5.0;
    if z.abs() < 1e-3 {
        let z2 = z * z;
        return 1.0 - z2 / 10.0 + z2 * z2 / 280.0;
    }
    3.0 / (z * z) * (z.sin() / z - z.cos())
}

/// Andrews' AR(1) plug-in bandwidth for the QS kernel with unit weights.
///
/// `scores` is row-major `T x p`.
pub fn andrews_bandwidth(scores: &[f64], p: usize) -> Result<f64> {
    if p == 0 || !scores.len().is_multiple_of(p) {
        return Err(Error::invalid("score matrix shape mismatch"));
    }
    let t = scores.len() / p;
    if t < 10 {
        return Err(Error::TooShort { needed: 10, got: t });
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for a in 0..p {
        let g = |i: usize| scores[i * p + a];
        let (mut sxy, mut sxx) = (0.0, 0.0);
        for i in 1..t {
            sxy += g(i) * g(i - 1);
            sxx += g(i - 1) * g(i - 1);
        }
        if !(sxx > 0.0) {
            continue;
        }
        let rho = (sxy / sxx).clamp(-RHO_CLAMP, RHO_CLAMP);
        let s2 = (1..t).map(|i| (g(i) - rho * g(i - 1)).powi(2)).sum::<f64>() / (t - 1) as f64;
        let s4 = s2 * s2;
        num += 4.0 * rho * rho * s4 / (1.0 - rho).powi(8);
        den += s4 / (1.0 - rho).powi(4);
    }
    if !(den > 0.0) {
        return Ok(0.0);
    }
    Ok(1.3221 * (num / den * t as f64).powf(0.2))
}

/// `sum_{|l| < T} w(l / bandwidth) Gamma(l)` with `Gamma(l) = T^{-1} sum_t g_t g_{t-l}'`.
/// A zero bandwidth keeps only `Gamma(0)`.
pub fn long_run_variance(scores: &[f64], p: usize, bandwidth: f64) -> Vec<f64> {
    let t = scores.len() / p;
    let tf = t as f64;
    let mut s = vec![0.0; p * p];
    let add_lag = |lag: usize, w: f64, s: &mut [f64]| {
        let mut gamma = vec![0.0; p * p];
        for i in lag..t {
            let a = &scores[i * p..(i + 1) * p];
            let b = &scores[(i - lag) * p..(i - lag + 1) * p];
            for r in 0..p {
                for c in 0..p {
                    gamma[r * p + c] += a[r] * b[c];
                }
            }
        }
        for r in 0..p {
            for c in 0..p {
                let v = gamma[r * p + c] / tf;
                if lag == 0 {
                    s[r * p + c] += w * v;
                } else {
                    // Gamma(l) + Gamma(l)'
                    s[r * p + c] += w * v;
                    s[c * p + r] += w * v;
                }
            }
        }
    };
    add_lag(0, 1.0, &mut s);
    if bandwidth > 0.0 {
        for lag in 1..t {
            let w = qs_kernel(lag as f64 / bandwidth);
            add_lag(lag, w, &mut s);
        }
    }
    s
}

fn min_eigenvalue(m: &[f64], p: usize) -> (f64, f64) {
    let mat = DMatrix::from_row_slice(p, p, m);
    let eig = nalgebra::SymmetricEigen::new(mat).eigenvalues;
    let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (min, max)
}

/// Scores with every non-constant regressor centered at its sample mean. Shifting a
/// regressor by a constant leaves these, and hence the plug-in bandwidth, unchanged.
fn centered_scores(fit: &OlsFit) -> Vec<f64> {
    let (t, p) = (fit.nobs(), fit.nparams());
    let means: Vec<f64> = (0..p)
        .map(|j| {
            let col = (0..t).map(|i| fit.x.row(i)[j]);
            let first = fit.x.row(0)[j];
            if col.clone().all(|v| v == first) {
                0.0
            } else {
                col.sum::<f64>() / t as f64
            }
        })
        .collect();
    let mut g = Vec::with_capacity(t * p);
    for (i, e) in fit.residuals.iter().enumerate() {
        g.extend(fit.x.row(i).iter().zip(&means).map(|(v, m)| (v - m) * e));
    }
    g
}

/// HAC inference with the automatic bandwidth.
pub fn hac_inference(fit: &OlsFit) -> Result<HacResult> {
    let bw = andrews_bandwidth(&centered_scores(fit), fit.nparams())?;
    hac_inference_with_bandwidth(fit, bw)
}

/// Sandwich covariance `T (X'X)^{-1} S (X'X)^{-1}` with a fixed bandwidth.
pub fn hac_inference_with_bandwidth(fit: &OlsFit, bandwidth: f64) -> Result<HacResult> {
    if !(bandwidth >= 0.0) || !bandwidth.is_finite() {
        return Err(Error::invalid(format!(
            "bandwidth must be finite and non-negative, got {bandwidth}"
        )));
    }
    let p = fit.nparams();
    let t = fit.nobs() as f64;
    let lrv = long_run_variance(&fit.scores(), p, bandwidth);
    let (min, max) = min_eigenvalue(&lrv, p);
    if min < -1e-10 * max.abs().max(1e-300) {
        return Err(Error::Degenerate(format!(
            "long-run variance is not positive semidefinite (min eigenvalue {min:e})"
        )));
    }
    let inv = &fit.xtx_inv;
    let mut tmp = vec![0.0; p * p];
    for r in 0..p {
        for c in 0..p {
            tmp[r * p + c] = (0..p).map(|k| inv[r * p + k] * lrv[k * p + c]).sum();
        }
    }
    let se: Vec<f64> = (0..p)
        .map(|i| {
            let v: f64 = (0..p).map(|k| tmp[i * p + k] * inv[k * p + i]).sum();
            (t * v).max(0.0).sqrt()
        })
        .collect();
    let t_stats: Vec<f64> = fit.coefficients.iter().zip(&se).map(|(b, s)| b / s).collect();
    let p_values = t_stats.iter().map(|z| normal_two_sided(*z)).collect();
    Ok(HacResult {
        bandwidth,
        lrv,
        se,
        t_stats,
        p_values,
    })
}
