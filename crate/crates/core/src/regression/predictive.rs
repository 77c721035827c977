use super::{grouped_regression, hac_inference, ols, stars, DesignMatrix, GroupInference};
use crate::error::Result;
use crate::series::PairedSample;

/// Group counts used by default.
pub const DEFAULT_QS: [usize; 4] = [4, 8, 12, 16];

#[derive(Debug, Clone, PartialEq)]
pub struct GroupCell {
    pub q: usize,
    /// `None` when `q` is too large for the sample or a group regression is singular.
    pub inference: Option<GroupInference>,
}

/// Slope inference for one predictive regression `R_t = a + b X_{t-1} + e_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictiveRow {
    pub nobs: usize,
    pub alpha: f64,
    pub beta: f64,
    pub grouped: Vec<GroupCell>,
    pub hac_t: f64,
    pub hac_p: f64,
    pub hac_bandwidth: f64,
}

impl PredictiveRow {
    pub fn hac_stars(&self) -> &'static str {
        stars(self.hac_p)
    }
}

pub fn predictive_report(pair: &PairedSample, qs: &[usize]) -> Result<PredictiveRow> {
    let x = DesignMatrix::with_intercept(&[&pair.x])?;
    let fit = ols(&x, &pair.y)?;
    let hac = hac_inference(&fit)?;
    let grouped = qs
        .iter()
        .map(|&q| GroupCell {
            q,
            inference: grouped_regression(&x, &pair.y, q)
                .ok()
                .and_then(|mut v| (v.len() > 1).then(|| v.swap_remove(1))),
        })
        .collect();
    Ok(PredictiveRow {
        nobs: pair.len(),
        alpha: fit.coefficients[0],
        beta: fit.coefficients[1],
        grouped,
        hac_t: hac.t_stats[1],
        hac_p: hac.p_values[1],
        hac_bandwidth: hac.bandwidth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn pair(y: Vec<f64>, x: Vec<f64>) -> PairedSample {
        let start = NaiveDate::from_ymd_opt(2020, 1, 2).unwrap();
        let dates: Vec<NaiveDate> = start.iter_days().take(y.len()).collect();
        let regressor_dates = dates.iter().map(|d| d.pred_opt().unwrap()).collect();
        PairedSample {
            y,
            x,
            dates,
            regressor_dates,
        }
    }

    #[test]
    fn row_shape_and_regressor_shift_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x: Vec<f64> = (0..300).map(|_| rng.sample(StandardNormal)).collect();
        let y: Vec<f64> = x
            .iter()
            .map(|v| 0.3 * v + rng.sample::<f64, _>(StandardNormal))
            .collect();
        let row = predictive_report(&pair(y.clone(), x.clone()), &DEFAULT_QS).unwrap();
        assert_eq!(row.nobs, 300);
        assert_eq!(row.grouped.len(), 4);
        assert!(row.grouped.iter().all(|g| g.inference.is_some()));
        assert!(row.hac_t > 3.0);

        let shifted: Vec<f64> = x.iter().map(|v| v + 50.0).collect();
        let row2 = predictive_report(&pair(y.clone(), shifted), &DEFAULT_QS).unwrap();
        assert!((row.beta - row2.beta).abs() < 1e-9);
        assert!((row.hac_t - row2.hac_t).abs() < 1e-6 * row.hac_t.abs());
        for (a, b) in row.grouped.iter().zip(&row2.grouped) {
            let (a, b) = (a.inference.as_ref().unwrap(), b.inference.as_ref().unwrap());
            assert!((a.t_stat - b.t_stat).abs() < 1e-6 * a.t_stat.abs().max(1.0));
        }

        let scaled: Vec<f64> = y.iter().map(|v| 3.0 * v).collect();
        let row3 = predictive_report(&pair(scaled, x), &DEFAULT_QS).unwrap();
        for (a, b) in row.grouped.iter().zip(&row3.grouped) {
            let (a, b) = (a.inference.as_ref().unwrap(), b.inference.as_ref().unwrap());
            assert!((a.t_stat - b.t_stat).abs() < 1e-9 * a.t_stat.abs().max(1.0));
            assert_eq!(a.t_stat.signum(), a.mean.signum());
        }
    }

    #[test]
    fn oversized_q_is_blank() {
        let x: Vec<f64> = (0..20).map(|i| (i as f64).sin()).collect();
        let y: Vec<f64> = (0..20).map(|i| (i as f64 * 0.7).cos()).collect();
        let row = predictive_report(&pair(y, x), &[4, 16]).unwrap();
        assert!(row.grouped[0].inference.is_some());
        assert!(row.grouped[1].inference.is_none());
    }
}
