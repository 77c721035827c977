//! Tail-index estimation for power-law tails `P(X > x) ~ C x^{-zeta}`.
//!
//! Two estimators over the `k` largest observations: Hill's log-spacing estimator and the
//! log-log rank-size regression with ranks shifted by 1/2. Both come with asymptotic
//! standard errors (`zeta/sqrt(k)` and `sqrt(2/k) zeta`) and normal 95% intervals.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::series::Sample;

pub const Z95: f64 = 1.96;
pub const DEFAULT_SHIFT: f64 = 0.5;
pub const DEFAULT_LO_FRAC: f64 = 0.025;
pub const DEFAULT_HI_FRAC: f64 = 0.15;
pub const DEFAULT_GRID_STEPS: usize = 20;

/// Column header of curve files.
pub const CURVE_HEADER: &str = "k,frac,zeta,se,ci_lo,ci_hi";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TailMethod {
    Hill,
    RankSize,
}

impl TailMethod {
    pub fn name(self) -> &'static str {
        match self {
            TailMethod::Hill => "hill",
            TailMethod::RankSize => "rank_size",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailFit {
    pub zeta: f64,
    pub se: f64,
    pub ci95: (f64, f64),
    pub k: usize,
    pub method: TailMethod,
    /// `1 / zeta`.
    pub theta: f64,
    /// Rank-size regression intercept `a` in `ln(rank - shift) = a - zeta ln(size)`.
    pub log_intercept: Option<f64>,
    /// Scale constant `C = exp(a) / n`; no interval is attached to it.
    pub scale: Option<f64>,
}

impl TailFit {
    fn new(zeta: f64, se: f64, k: usize, method: TailMethod) -> Self {
        Self {
            zeta,
            se,
            ci95: (zeta - Z95 * se, zeta + Z95 * se),
            k,
            method,
            theta: 1.0 / zeta,
            log_intercept: None,
            scale: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailCurve {
    pub points: Vec<TailFit>,
    pub n: usize,
}

/// Descending stable sort.
fn descending(sample: &Sample) -> Result<Vec<f64>> {
    let v = sample.values();
    if let Some(x) = v.iter().find(|x| **x <= 0.0) {
        return Err(Error::invalid(format!(
            "tail estimation needs positive values, found {x}"
        )));
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    Ok(sorted)
}

/// Hill estimate from the `k` largest values relative to the `(k+1)`-th.
pub fn hill_estimate(sample: &Sample, k: usize) -> Result<TailFit> {
    let n = sample.len();
    if k < 2 || k + 1 > n {
        return Err(Error::invalid(format!(
            "Hill needs 2 <= k <= n - 1, got k = {k}, n = {n}"
        )));
    }
    let x = descending(sample)?;
    let threshold = x[k].ln();
    let spacing: f64 = x[..k].iter().map(|v| v.ln() - threshold).sum();
    if !(spacing > 0.0) {
        return Err(Error::Degenerate(format!("the {} largest values are all equal", k + 1)));
    }
    let zeta = k as f64 / spacing;
    Ok(TailFit::new(zeta, zeta / (k as f64).sqrt(), k, TailMethod::Hill))
}

/// OLS of `ln(rank - shift)` on `ln(size)` over the `k` largest values; `zeta = -slope`.
pub fn rank_size_estimate(sample: &Sample, k: usize, shift: f64) -> Result<TailFit> {
    let n = sample.len();
    if k < 2 || k > n {
        return Err(Error::invalid(format!(
            "rank-size needs 2 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if !(0.0..1.0).contains(&shift) {
        return Err(Error::invalid(format!("rank shift must lie in [0, 1), got {shift}")));
    }
    let x = descending(sample)?;
    let ls: Vec<f64> = x[..k].iter().map(|v| v.ln()).collect();
    let lr: Vec<f64> = (1..=k).map(|r| (r as f64 - shift).ln()).collect();
    let kf = k as f64;
    let mx = ls.iter().sum::<f64>() / kf;
    let my = lr.iter().sum::<f64>() / kf;
    let sxx: f64 = ls.iter().map(|v| (v - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Degenerate("fewer than two distinct sizes".into()));
    }
    let sxy: f64 = ls.iter().zip(&lr).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let zeta = -slope;
    if !(zeta > 0.0) {
        return Err(Error::Degenerate(format!("non-negative rank-size slope {slope}")));
    }
    let intercept = my - slope * mx;
    let mut fit = TailFit::new(zeta, (2.0 / kf).sqrt() * zeta, k, TailMethod::RankSize);
    fit.log_intercept = Some(intercept);
    fit.scale = Some(intercept.exp() / n as f64);
    Ok(fit)
}

/// Truncation levels `ceil(frac * n)` for `steps` fractions evenly spaced over
/// `[lo_frac, hi_frac]`, clipped to `[2, n - 1]` and deduplicated.
pub fn k_grid(n: usize, lo_frac: f64, hi_frac: f64, steps: usize) -> Result<Vec<usize>> {
    if n < 40 {
        return Err(Error::TooShort { needed: 40, got: n });
    }
    if !(lo_frac > 0.0 && lo_frac <= hi_frac && hi_frac < 1.0) || steps == 0 {
        return Err(Error::invalid(format!(
            "bad grid fractions [{lo_frac}, {hi_frac}] with {steps} steps"
        )));
    }
    let mut ks: Vec<usize> = (0..steps)
        .map(|i| {
            let frac = if steps == 1 {
                lo_frac
            } else {
                lo_frac + (hi_frac - lo_frac) * i as f64 / (steps - 1) as f64
            };
            // Guard against products like 0.025 * 200 = 5.000000000000001.
            let k = (frac * n as f64 - 1e-9).ceil().max(0.0) as usize;
            k.clamp(2, n - 1)
        })
        .collect();
    ks.dedup();
    if ks.is_empty() {
        return Err(Error::invalid("empty truncation grid"));
    }
    Ok(ks)
}

/// Default grid: 2.5% to 15% of the sample in 20 steps.
pub fn default_k_grid(n: usize) -> Result<Vec<usize>> {
    k_grid(n, DEFAULT_LO_FRAC, DEFAULT_HI_FRAC, DEFAULT_GRID_STEPS)
}

pub fn estimate(sample: &Sample, method: TailMethod, k: usize) -> Result<TailFit> {
    match method {
        TailMethod::Hill => hill_estimate(sample, k),
        TailMethod::RankSize => rank_size_estimate(sample, k, DEFAULT_SHIFT),
    }
}

/// Estimates over every truncation level in `grid`.
pub fn tail_curve(sample: &Sample, method: TailMethod, grid: &[usize]) -> Result<TailCurve> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("truncation grid must be strictly increasing"));
    }
    let points = grid
        .iter()
        .map(|&k| estimate(sample, method, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(TailCurve {
        points,
        n: sample.len(),
    })
}

impl TailCurve {
    /// `k,frac,zeta,se,ci_lo,ci_hi` records with `frac = k / n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CURVE_HEADER);
        out.push('\n');
        for p in &self.points {
            let _ = writeln!(
                out,
                "{},{:.6},{:.6},{:.6},{:.6},{:.6}",
                p.k,
                p.k as f64 / self.n as f64,
                p.zeta,
                p.se,
                p.ci95.0,
                p.ci95.1
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn sample(v: &[f64]) -> Sample {
        Sample::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hill_analytic_spacings() {
        let s = sample(&[1.0, E.powi(3), E, E.powi(2)]);
        let fit = hill_estimate(&s, 3).unwrap();
        assert!((fit.zeta - 0.5).abs() < 1e-12);
        assert!((fit.theta * fit.zeta - 1.0).abs() < 1e-12);
        assert!((fit.se - 0.5 / 3f64.sqrt()).abs() < 1e-12);
        assert!((fit.ci95.1 - fit.ci95.0 - 2.0 * Z95 * fit.se).abs() < 1e-12);
    }

    #[test]
    fn hill_errors() {
        let s = sample(&[1.0, 2.0, 3.0, 4.0]);
        assert!(hill_estimate(&s, 1).is_err());
        assert!(hill_estimate(&s, 4).is_err());
        assert!(hill_estimate(&sample(&[1.0, -2.0, 3.0, 4.0]), 2).is_err());
        assert!(matches!(
            hill_estimate(&sample(&[5.0, 5.0, 5.0, 1.0]), 2),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn rank_size_closed_form() {
        // Oracle: slope of the four points (ln size, ln(rank - 1/2)) by hand-written sums.
        let xs = [8f64.ln(), 4f64.ln(), 2f64.ln(), 0.0];
        let ys = [0.5f64.ln(), 1.5f64.ln(), 2.5f64.ln(), 3.5f64.ln()];
        let n = 4.0;
        let sx: f64 = xs.iter().sum();
        let sy: f64 = ys.iter().sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(a, b)| a * b).sum();
        let sxx: f64 = xs.iter().map(|a| a * a).sum();
        let oracle = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!((oracle - 0.916).abs() < 5e-4, "{oracle}");

        let fit = rank_size_estimate(&sample(&[1.0, 8.0, 2.0, 4.0]), 4, 0.5).unwrap();
        assert!((fit.zeta - oracle).abs() < 1e-12);
        assert!((fit.se - (0.5f64).sqrt() * fit.zeta).abs() < 1e-12);
    }

    #[test]
    fn rank_size_exact_power_law() {
        let zeta = 1.7;
        let sizes: Vec<f64> = (1..=30).map(|r| (r as f64).powf(-1.0 / zeta)).collect();
        let fit = rank_size_estimate(&sample(&sizes), 30, 0.0).unwrap();
        assert!((fit.zeta - zeta).abs() < 1e-10);
    }

    #[test]
    fn scale_invariance() {
        let v: Vec<f64> = (1..=60).map(|i| 1.0 / (i as f64).powf(0.8) + 0.01 * i as f64).collect();
        let scaled: Vec<f64> = v.iter().map(|x| 37.0 * x).collect();
        let (a, b) = (sample(&v), sample(&scaled));
        let h = hill_estimate(&a, 20).unwrap().zeta;
        assert!((h - hill_estimate(&b, 20).unwrap().zeta).abs() < 1e-10 * h);
        let r1 = rank_size_estimate(&a, 20, 0.5).unwrap();
        let r2 = rank_size_estimate(&b, 20, 0.5).unwrap();
        assert!((r1.zeta - r2.zeta).abs() < 1e-10 * r1.zeta);
        assert!((r1.log_intercept.unwrap() - r2.log_intercept.unwrap()).abs() > 1e-3);
    }

    #[test]
    fn rank_size_errors() {
        assert!(rank_size_estimate(&sample(&[2.0, 2.0, 2.0]), 3, 0.5).is_err());
        assert!(rank_size_estimate(&sample(&[1.0, 2.0, 3.0]), 3, 1.0).is_err());
        assert!(rank_size_estimate(&sample(&[1.0, 2.0, 3.0]), 4, 0.5).is_err());
    }

    #[test]
    fn grids() {
        let g = default_k_grid(200).unwrap();
        assert_eq!(g.first(), Some(&5));
        assert_eq!(g.last(), Some(&30));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let g = default_k_grid(40).unwrap();
        assert_eq!(g[0], 2);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(default_k_grid(39).is_err());
        assert!(k_grid(100, 0.2, 0.1, 5).is_err());
    }

    #[test]
    fn curve_csv() {
        let v: Vec<f64> = (1..=100).map(|i| 100.0 / i as f64).collect();
        let s = sample(&v);
        let grid = default_k_grid(100).unwrap();
        let c = tail_curve(&s, TailMethod::Hill, &grid).unwrap();
        assert_eq!(c.points.len(), grid.len());
        let csv = c.to_csv();
        assert!(csv.starts_with("k,frac,zeta,se,ci_lo,ci_hi\n"));
        assert_eq!(csv.lines().count(), grid.len() + 1);
        assert!(tail_curve(&s, TailMethod::Hill, &[5, 3]).is_err());
    }
}
