//! Sieve wild bootstrap for the unit-root battery.
//!
//! Residuals of an AR(p) sieve fitted to the differenced series are multiplied by
//! Rademacher signs, recoloured through the fitted AR filter and cumulated, which imposes
//! the unit root on every bootstrap sample. Each replication draws from its own stream
//! keyed on `(seed, replication)`, so results do not depend on thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, mean};
use crate::unit_root::{unit_root_battery, Statistic, Tail, UnitRootConfig, UnitRootStats};

pub const DEFAULT_REPLICATIONS: usize = 999;
pub const MIN_REPLICATIONS: usize = 99;

#[derive(Debug, Clone, PartialEq)]
pub struct SieveModel {
    pub phi: Vec<f64>,
    /// Centered residuals, `|dy| - p` of them.
    pub residuals: Vec<f64>,
}

impl SieveModel {
    pub fn order(&self) -> usize {
        self.phi.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapResult {
    /// Statistics on the original series.
    pub stats: UnitRootStats,
    /// Indexed like [`Statistic::ALL`].
    pub p_values: [f64; 6],
    pub replications: usize,
    pub seed: u64,
}

impl BootstrapResult {
    pub fn p_value(&self, s: Statistic) -> f64 {
        let i = Statistic::ALL.iter().position(|x| *x == s).unwrap_or_default();
        self.p_values[i]
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replication `r`, a function of `(seed, r)` only.
pub fn replication_seed(seed: u64, r: u64) -> u64 {
    splitmix64(seed ^ splitmix64(r.wrapping_add(0xA076_1D64_78BD_642F)))
}

/// `n` equiprobable signs in `{-1, +1}`, deterministic in `seed`.
pub fn rademacher(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let bits: u64 = rng.random();
        let take = (n - out.len()).min(64);
        out.extend((0..take).map(|i| if (bits >> i) & 1 == 1 { 1.0 } else { -1.0 }));
    }
    out
}

/// Least-squares AR(`p`) on demeaned `dy` with centered residuals.
pub fn fit_sieve(dy: &[f64], p: usize) -> Result<SieveModel> {
    if dy.len() <= p + 2 {
        return Err(Error::TooShort {
            needed: p + 3,
            got: dy.len(),
        });
    }
    let m = mean(dy);
    let d: Vec<f64> = dy.iter().map(|v| v - m).collect();
    if p == 0 {
        return Ok(SieveModel {
            phi: Vec::new(),
            residuals: d,
        });
    }
    let n = d.len() - p;
    let mut x = Vec::with_capacity(n * p);
    for t in p..d.len() {
        x.extend((1..=p).map(|j| d[t - j]));
    }
    let target = &d[p..];
    let (xtx, xty) = linalg::cross_products(&x, target, p);
    let (phi, _) =
        linalg::solve_normal(&xtx, &xty, p).map_err(|e| Error::Singular(format!("sieve AR({p}) fit: {e}")))?;
    let mut residuals: Vec<f64> = x
        .chunks_exact(p)
        .zip(target)
        .map(|(row, v)| v - row.iter().zip(&phi).map(|(a, b)| a * b).sum::<f64>())
        .collect();
    let rm = mean(&residuals);
    residuals.iter_mut().for_each(|e| *e -= rm);
    Ok(SieveModel { phi, residuals })
}

/// Recolours `innovations` through the AR filter with zero pre-sample values.
pub fn recolour(phi: &[f64], innovations: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(innovations.len());
    for (t, e) in innovations.iter().enumerate() {
        let ar: f64 = phi
            .iter()
            .enumerate()
            .take_while(|(j, _)| *j < t)
            .map(|(j, f)| f * out[t - 1 - j])
            .sum();
        out.push(ar + e);
    }
    out
}

/// One bootstrap level series under the unit-root null.
pub fn resample_null(model: &SieveModel, seed: u64) -> Vec<f64> {
    let w = rademacher(seed, model.residuals.len());
    let shocks: Vec<f64> = model.residuals.iter().zip(&w).map(|(e, s)| e * s).collect();
    crate::series::cumulative_sum(&recolour(&model.phi, &shocks), 0.0)
}

/// `(1 + #{replicates at least as extreme}) / (B + 1)`; ties count as extreme.
pub fn empirical_p_value(stat: f64, replicates: &[f64], tail: Tail) -> f64 {
    let hits = replicates
        .iter()
        .filter(|r| match tail {
            Tail::Left => **r <= stat,
            Tail::Right => **r >= stat,
        })
        .count();
    (1 + hits) as f64 / (replicates.len() + 1) as f64
}

/// Bootstrap p-values for all six statistics of the battery.
///
/// The sieve order reuses the MAIC lag selected on the original series; each replicate
/// re-runs the whole battery, including lag selection.
pub fn bootstrap_pvalues(y: &[f64], cfg: &UnitRootConfig, replications: usize, seed: u64) -> Result<BootstrapResult> {
    if replications < MIN_REPLICATIONS {
        return Err(Error::invalid(format!(
            "need at least {MIN_REPLICATIONS} bootstrap replications, got {replications}"
        )));
    }
    let stats = unit_root_battery(y, cfg)?;
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    let model = fit_sieve(&dy, stats.lag)?;

    let counts = (0..replications as u64)
        .into_par_iter()
        .map(|r| {
            let ystar = resample_null(&model, replication_seed(seed, r));
            let rep = unit_root_battery(&ystar, cfg)?;
            let mut hit = [0usize; 6];
            for (i, s) in Statistic::ALL.iter().enumerate() {
                let (orig, b) = (stats.get(*s), rep.get(*s));
                let extreme = match s.tail() {
                    Tail::Left => b <= orig,
                    Tail::Right => b >= orig,
                };
                hit[i] = usize::from(extreme);
            }
            Ok(hit)
        })
        .try_reduce(
            || [0usize; 6],
            |a, b| {
                let mut c = a;
                c.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(c)
            },
        )?;

    let denom = (replications + 1) as f64;
    let p_values = counts.map(|c| (1 + c) as f64 / denom);
    Ok(BootstrapResult {
        stats,
        p_values,
        replications,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::StandardNormal;

    fn noise(seed: u64, n: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.sample(StandardNormal)).collect()
    }

    #[test]
    fn rademacher_signs() {
        let a = rademacher(42, 1000);
        assert_eq!(a, rademacher(42, 1000));
        assert_ne!(a, rademacher(43, 1000));
        assert!(a.iter().all(|v| *v == 1.0 || *v == -1.0));
        let big = rademacher(7, 1_000_000);
        let m = big.iter().sum::<f64>() / big.len() as f64;
        assert!(m.abs() < 0.01, "{m}");
        // A prefix of a longer draw is the shorter draw.
        assert_eq!(&rademacher(42, 1500)[..1000], &a[..]);
    }

    #[test]
    fn sieve_order_zero_is_demeaning() {
        let dy = [1.0, 2.0, 3.0, 6.0];
        let m = fit_sieve(&dy, 0).unwrap();
        assert_eq!(m.residuals, vec![-2.0, -1.0, 0.0, 3.0]);
        assert!(fit_sieve(&dy, 2).is_err());
    }

    #[test]
    fn sieve_recovers_exact_ar1() {
        // Zero-mean data following u_t = -u_{t-1} exactly, so demeaning keeps it exact.
        let d: Vec<f64> = (0..40).map(|t| 3.0 + if t % 2 == 0 { 1.5 } else { -1.5 }).collect();
        let fit = fit_sieve(&d, 1).unwrap();
        assert!((fit.phi[0] + 1.0).abs() < 1e-8, "{:?}", fit.phi);
        assert!(fit.residuals.iter().all(|e| e.abs() < 1e-8));
        assert_eq!(fit.residuals.len(), 39);
    }

    #[test]
    fn sieve_estimates_ar1_coefficient() {
        let e = noise(3, 2000);
        let mut d = vec![e[0]];
        for t in 1..2000 {
            d.push(0.6 * d[t - 1] + e[t]);
        }
        let fit = fit_sieve(&d, 1).unwrap();
        assert!((fit.phi[0] - 0.6).abs() < 0.05);
    }

    #[test]
    fn recolour_identity_for_zero_phi() {
        let e = [0.5, -1.0, 2.0];
        assert_eq!(recolour(&[0.0, 0.0], &e), e.to_vec());
        assert_eq!(recolour(&[], &e), e.to_vec());
        assert_eq!(recolour(&[0.5], &[1.0, 0.0, 0.0]), vec![1.0, 0.5, 0.25]);
    }

    #[test]
    fn resample_with_unit_signs_is_cumsum() {
        let dy = [1.0, -2.0, 4.0, 0.5, 1.5];
        let model = fit_sieve(&dy, 0).unwrap();
        // Find a seed whose first five signs are all +1.
        let seed = (0..10_000u64)
            .find(|s| rademacher(*s, 5).iter().all(|v| *v == 1.0))
            .unwrap();
        let y = resample_null(&model, seed);
        assert_eq!(y, crate::series::cumulative_sum(&model.residuals, 0.0));
    }

    #[test]
    fn recoloured_variance_matches_filter() {
        // AR(1) sieve with phi = 0.5 over centered residuals with variance s2:
        // var(dy*) ~ s2 / (1 - phi^2) and var(y*_n) / n ~ s2 / (1 - phi)^2.
        let e = noise(10, 400);
        let m = mean(&e);
        let model = SieveModel {
            phi: vec![0.5],
            residuals: e.iter().map(|v| v - m).collect(),
        };
        let n = model.residuals.len();
        let s2 = model.residuals.iter().map(|v| v * v).sum::<f64>() / n as f64;
        let reps = 2000;
        let (mut inc, mut level) = (0.0, 0.0);
        for r in 0..reps {
            let y = resample_null(&model, replication_seed(1, r));
            let mut prev = 0.0;
            for v in &y {
                inc += (v - prev).powi(2);
                prev = *v;
            }
            level += y[n - 1].powi(2) / n as f64;
        }
        let inc_ratio = inc / (reps as f64 * n as f64) / (s2 / 0.75);
        let lrv_ratio = level / reps as f64 / (s2 / 0.25);
        assert!((inc_ratio - 1.0).abs() < 0.1, "{inc_ratio}");
        assert!((lrv_ratio - 1.0).abs() < 0.1, "{lrv_ratio}");
    }

    #[test]
    fn p_value_boundaries() {
        let reps: Vec<f64> = (1..=99).map(f64::from).collect();
        assert_eq!(empirical_p_value(0.0, &reps, Tail::Left), 0.01);
        assert_eq!(empirical_p_value(100.0, &reps, Tail::Right), 0.01);
        assert_eq!(empirical_p_value(100.0, &reps, Tail::Left), 1.0);
        let median = empirical_p_value(50.0, &reps, Tail::Left);
        assert!((median - 0.5).abs() <= 1.0 / 100.0 + 1e-12);
    }

    #[test]
    fn pvalues_deterministic_and_bounded() {
        let y = crate::series::cumulative_sum(&noise(5, 120), 0.0);
        let cfg = UnitRootConfig::default();
        let a = bootstrap_pvalues(&y, &cfg, 99, 42).unwrap();
        let b = bootstrap_pvalues(&y, &cfg, 99, 42).unwrap();
        assert_eq!(a, b);
        for p in a.p_values {
            assert!((0.01..=1.0).contains(&p));
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let c = pool.install(|| bootstrap_pvalues(&y, &cfg, 99, 42).unwrap());
        assert_eq!(a, c);
        assert!(bootstrap_pvalues(&y, &cfg, 50, 42).is_err());
    }
}
