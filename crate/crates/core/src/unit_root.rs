//! GLS-demeaned unit-root statistics: the likelihood-ratio test, the modified
//! Phillips-Perron family (MZα, MSB, MZt), the modified point-optimal MPt and ADF-GLS,
//! all sharing one lag chosen by the modified AIC on OLS-demeaned data.

use crate::error::{Error, Result};
use crate::linalg::{self, mean};

/// GLS quasi-differencing constant for the constant-only case.
pub const DEFAULT_C_BAR: f64 = -7.0;

/// Minimum series length accepted by [`unit_root_battery`].
pub const MIN_BATTERY_LEN: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitRootConfig {
    pub c_bar: f64,
    /// `None` uses `floor(12 (T/100)^{1/4})`.
    pub k_max: Option<usize>,
}

impl Default for UnitRootConfig {
    fn default() -> Self {
        Self {
            c_bar: DEFAULT_C_BAR,
            k_max: None,
        }
    }
}

impl UnitRootConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c_bar < 0.0) || !self.c_bar.is_finite() {
            return Err(Error::invalid(format!("c_bar must be negative, got {}", self.c_bar)));
        }
        Ok(())
    }

    /// Maximum lag for a series of length `t`, capped so every candidate regression
    /// keeps more observations than parameters.
    pub fn resolve_k_max(&self, t: usize) -> usize {
        let cap = t.saturating_sub(4) / 2;
        self.k_max.unwrap_or_else(|| default_k_max(t)).min(cap)
    }
}

/// `floor(12 (T/100)^{1/4})`.
pub fn default_k_max(t: usize) -> usize {
    (12.0 * (t as f64 / 100.0).powf(0.25)).floor() as usize
}

/// The six statistics for one series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitRootStats {
    pub lr: f64,
    pub mz_alpha: f64,
    pub msb: f64,
    pub mz_t: f64,
    pub mp_t: f64,
    pub adf: f64,
    pub lag: usize,
    pub s2_ar: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LagSelection {
    pub k: usize,
    pub maic_values: Vec<f64>,
}

/// Which statistics a test rejects for: small values (left) or large values (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Left,
    Right,
}

/// Identifies one statistic of the battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistic {
    Lr,
    MzAlpha,
    Msb,
    MzT,
    MpT,
    Adf,
}

impl Statistic {
    pub const ALL: [Statistic; 6] = [
        Statistic::Lr,
        Statistic::MzAlpha,
        Statistic::Msb,
        Statistic::MzT,
        Statistic::MpT,
        Statistic::Adf,
    ];

    pub fn tail(self) -> Tail {
        match self {
            Statistic::Lr => Tail::Right,
            _ => Tail::Left,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Lr => "LR",
            Statistic::MzAlpha => "MZa",
            Statistic::Msb => "MSB",
            Statistic::MzT => "MZt",
            Statistic::MpT => "MPt",
            Statistic::Adf => "ADF",
        }
    }
}

impl UnitRootStats {
    pub fn get(&self, s: Statistic) -> f64 {
        match s {
            Statistic::Lr => self.lr,
            Statistic::MzAlpha => self.mz_alpha,
            Statistic::Msb => self.msb,
            Statistic::MzT => self.mz_t,
            Statistic::MpT => self.mp_t,
            Statistic::Adf => self.adf,
        }
    }
}

/// Subtracts the sample mean.
pub fn ols_demean(y: &[f64]) -> Vec<f64> {
    let m = mean(y);
    y.iter().map(|v| v - m).collect()
}

/// Intercept fitted by least squares on quasi-differenced data with `rho = 1 + c_bar/T`.
pub fn gls_intercept(y: &[f64], c_bar: f64) -> Result<f64> {
    let t = y.len();
    if t < 3 {
        return Err(Error::TooShort { needed: 3, got: t });
    }
    let rho = 1.0 + c_bar / t as f64;
    let z = 1.0 - rho;
    let mut szy = y[0];
    let mut szz = 1.0;
    for w in y.windows(2) {
        szy += z * (w[1] - rho * w[0]);
        szz += z * z;
    }
    Ok(szy / szz)
}

/// `y` minus its GLS-fitted intercept.
pub fn gls_demean(y: &[f64], c_bar: f64) -> Result<Vec<f64>> {
    let mu = gls_intercept(y, c_bar)?;
    Ok(y.iter().map(|v| v - mu).collect())
}

/// Fit of `dy_t = b0 y_{t-1} + sum_j b_j dy_{t-j} + e_t` without deterministic terms.
#[derive(Debug, Clone, PartialEq)]
pub struct AdfFit {
    /// `b0` followed by the `k` lagged-difference coefficients.
    pub coefficients: Vec<f64>,
    pub t_stat: f64,
    /// Residual sum of squares divided by the number of observations.
    pub sigma2: f64,
    pub nobs: usize,
}

/// Builds the ADF design over `t = first..T` (0-based), with `k` lagged differences.
fn adf_design(y: &[f64], k: usize, first: usize) -> (Vec<f64>, Vec<f64>) {
    let p = k + 1;
    let n = y.len() - first;
    let mut x = Vec::with_capacity(n * p);
    let mut dy = Vec::with_capacity(n);
    for t in first..y.len() {
        dy.push(y[t] - y[t - 1]);
        x.push(y[t - 1]);
        for j in 1..=k {
            x.push(y[t - j] - y[t - j - 1]);
        }
    }
    (x, dy)
}

/// ADF regression with `k` lags on the full available sample.
pub fn adf_regression(y: &[f64], k: usize) -> Result<AdfFit> {
    let first = k + 1;
    let p = k + 1;
    if y.len() < first + p + 1 {
        return Err(Error::TooShort {
            needed: first + p + 1,
            got: y.len(),
        });
    }
    let (x, dy) = adf_design(y, k, first);
    let (xtx, xty) = linalg::cross_products(&x, &dy, p);
    let (b, inv) = linalg::solve_normal(&xtx, &xty, p)
        .map_err(|e| Error::Singular(format!("ADF regression with {k} lags: {e}")))?;
    let n = dy.len();
    let rss: f64 = x
        .chunks_exact(p)
        .zip(&dy)
        .map(|(row, yt)| {
            let fit: f64 = row.iter().zip(&b).map(|(a, c)| a * c).sum();
            (yt - fit).powi(2)
        })
        .sum();
    let s2 = rss / (n - p) as f64;
    let se = (s2 * inv[0]).sqrt();
    Ok(AdfFit {
        t_stat: b[0] / se,
        coefficients: b,
        sigma2: rss / n as f64,
        nobs: n,
    })
}

/// Modified AIC lag choice over the common sample `t > k_max + 1` (1-based).
pub fn select_lag_maic(y: &[f64], k_max: usize) -> Result<LagSelection> {
    if y.len() <= k_max + 2 {
        return Err(Error::TooShort {
            needed: k_max + 3,
            got: y.len(),
        });
    }
    let pmax = k_max + 1;
    let first = k_max + 1;
    let (x, dy) = adf_design(y, k_max, first);
    let n = dy.len();
    if n <= pmax {
        return Err(Error::TooShort {
            needed: 2 * k_max + 3,
            got: y.len(),
        });
    }
    let (xtx, xty) = linalg::cross_products(&x, &dy, pmax);
    let yty: f64 = dy.iter().map(|v| v * v).sum();
    let sum_y2 = xtx[0];
    let nf = n as f64;

    let mut maic_values = Vec::with_capacity(pmax);
    for k in 0..=k_max {
        let p = k + 1;
        let mut sub = vec![0.0; p * p];
        for i in 0..p {
            sub[i * p..(i + 1) * p].copy_from_slice(&xtx[i * pmax..i * pmax + p]);
        }
        let l =
            linalg::cholesky(&sub, p).map_err(|e| Error::Singular(format!("MAIC regression with {k} lags: {e}")))?;
        let b = linalg::cholesky_solve(&l, p, &xty[..p]);
        let explained: f64 = b.iter().zip(&xty[..p]).map(|(a, c)| a * c).sum();
        let rss = (yty - explained).max(0.0);
        let sigma2 = rss / nf;
        if !(sigma2 > 0.0) {
            return Err(Error::Degenerate(format!(
                "zero residual variance in MAIC regression with {k} lags"
            )));
        }
        let tau = b[0] * b[0] * sum_y2 / sigma2;
        maic_values.push(sigma2.ln() + 2.0 * (tau + k as f64) / nf);
    }
    let mut k = 0;
    for (i, v) in maic_values.iter().enumerate() {
        if *v < maic_values[k] {
            k = i;
        }
    }
    Ok(LagSelection { k, maic_values })
}

/// ADF-GLS t-ratio with `k` lags on already demeaned data.
pub fn adf_gls(y_gls: &[f64], k: usize) -> Result<f64> {
    Ok(adf_regression(y_gls, k)?.t_stat)
}

/// Autoregressive spectral density estimate at frequency zero from an ADF fit.
pub fn s2_ar(fit: &AdfFit) -> f64 {
    let sum_b: f64 = fit.coefficients[1..].iter().sum();
    fit.sigma2 / (1.0 - sum_b).powi(2)
}

/// `T^{-2} sum_{t=1}^{T} y_{t-1}^2` and `T^{-1} y_T^2`.
fn moments(y: &[f64]) -> (f64, f64) {
    let t = y.len() as f64;
    let kappa = y[..y.len() - 1].iter().map(|v| v * v).sum::<f64>() / (t * t);
    let last = y[y.len() - 1];
    (kappa, last * last / t)
}

/// `(MZα, MSB, MZt)`.
pub fn mz_msb_mzt(y_gls: &[f64], s2_ar: f64) -> Result<(f64, f64, f64)> {
    if !(s2_ar > 0.0) {
        return Err(Error::invalid(format!("s2_ar must be positive, got {s2_ar}")));
    }
    if y_gls.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: y_gls.len(),
        });
    }
    let (kappa, end) = moments(y_gls);
    if !(kappa > 0.0) {
        return Err(Error::Degenerate("sum of squared lagged levels is zero".into()));
    }
    let mz_alpha = (end - s2_ar) / (2.0 * kappa);
    let msb = (kappa / s2_ar).sqrt();
    Ok((mz_alpha, msb, mz_alpha * msb))
}

/// Modified point-optimal statistic, constant-only case.
pub fn mp_test(y_gls: &[f64], s2_ar: f64, c_bar: f64) -> Result<f64> {
    if !(s2_ar > 0.0) {
        return Err(Error::invalid(format!("s2_ar must be positive, got {s2_ar}")));
    }
    if y_gls.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: y_gls.len(),
        });
    }
    let (kappa, end) = moments(y_gls);
    Ok((c_bar * c_bar * kappa - c_bar * end) / s2_ar)
}

/// Local-to-unity grid `c = 0, 0.5, ..., 50`.
pub fn default_lr_grid() -> Vec<f64> {
    (0..=100).map(|i| i as f64 * 0.5).collect()
}

/// Right-tailed likelihood-ratio statistic over the default grid.
pub fn lr_test(y: &[f64]) -> Result<f64> {
    lr_test_with_grid(y, &default_lr_grid())
}

/// `2 [max_c l(1 - c/T) - l(1)]` where `l` is the Gaussian log-likelihood of the
/// demeaned AR(1) model, profiled over the mean and innovation variance. The first
/// observation enters as the initial condition, so the mean stays identified at `rho = 1`.
pub fn lr_test_with_grid(y: &[f64], grid: &[f64]) -> Result<f64> {
    let t = y.len();
    if t < 20 {
        return Err(Error::TooShort { needed: 20, got: t });
    }
    // The statistic is invariant to location and scale; normalise for conditioning.
    let m = mean(y);
    let sd = (y.iter().map(|v| (v - m).powi(2)).sum::<f64>() / t as f64).sqrt();
    if !(sd > 0.0) {
        return Err(Error::Degenerate("constant series".into()));
    }
    let z: Vec<f64> = y.iter().map(|v| (v - m) / sd).collect();

    let y0 = z[0];
    let (mut a, mut b, mut c, mut d, mut e) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for w in z.windows(2) {
        a += w[1] * w[1];
        b += w[1] * w[0];
        c += w[0] * w[0];
        d += w[1];
        e += w[0];
    }
    let tf = t as f64;
    let ssr = |cc: f64| -> f64 {
        let rho = 1.0 - cc / tf;
        let g = 1.0 - rho;
        let syy = y0 * y0 + a - 2.0 * rho * b + rho * rho * c;
        let szy = y0 + g * (d - rho * e);
        let szz = 1.0 + (tf - 1.0) * g * g;
        (syy - szy * szy / szz).max(0.0)
    };
    let s_null = ssr(0.0);
    if !(s_null > 0.0) {
        return Err(Error::Degenerate("zero residual variance under the unit root".into()));
    }
    let s_min = grid.iter().map(|&cc| ssr(cc)).fold(s_null, f64::min);
    if !(s_min > 0.0) {
        return Err(Error::Degenerate("zero residual variance under the alternative".into()));
    }
    Ok(tf * (s_null / s_min).ln())
}

/// Runs the full battery: MAIC on OLS-demeaned data, then every statistic on
/// GLS-demeaned data with the shared lag.
pub fn unit_root_battery(y: &[f64], cfg: &UnitRootConfig) -> Result<UnitRootStats> {
    cfg.validate()?;
    if y.len() < MIN_BATTERY_LEN {
        return Err(Error::TooShort {
            needed: MIN_BATTERY_LEN,
            got: y.len(),
        });
    }
    if let Some(v) = y.iter().find(|v| !v.is_finite()) {
        return Err(Error::invalid(format!("non-finite observation {v}")));
    }
    let k_max = cfg.resolve_k_max(y.len());
    let lag = select_lag_maic(&ols_demean(y), k_max)?.k;
    let y_gls = gls_demean(y, cfg.c_bar)?;
    let fit = adf_regression(&y_gls, lag)?;
    let s2 = s2_ar(&fit);
    if !(s2 > 0.0) || !s2.is_finite() {
        return Err(Error::Degenerate(format!("long-run variance estimate {s2}")));
    }
    let (mz_alpha, msb, mz_t) = mz_msb_mzt(&y_gls, s2)?;
    let mp_t = mp_test(&y_gls, s2, cfg.c_bar)?;
    let lr = lr_test(y)?;
    let stats = UnitRootStats {
        lr,
        mz_alpha,
        msb,
        mz_t,
        mp_t,
        adf: fit.t_stat,
        lag,
        s2_ar: s2,
    };
    if Statistic::ALL.iter().any(|s| !stats.get(*s).is_finite()) {
        return Err(Error::Degenerate("non-finite statistic".into()));
    }
    Ok(stats)
}
