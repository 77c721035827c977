//! Least squares with three parallel inference schemes: classical, HAC with the
//! quadratic spectral kernel, and the grouped t-statistic approach.

mod factors;
mod grouped;
mod hac;
mod predictive;

pub use factors::{factor_report, FactorFit, FactorModel, FactorPanel};
pub use grouped::{group_partition, grouped_regression, im_tstat, GroupInference, MAX_VALID_LEVEL};
pub use hac::{
    andrews_bandwidth, hac_inference, hac_inference_with_bandwidth, long_run_variance, qs_kernel, HacResult,
};
pub use predictive::{predictive_report, GroupCell, PredictiveRow, DEFAULT_QS};

use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

use crate::error::{Error, Result};
use crate::linalg;

/// Row-major regressor matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    data: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl DesignMatrix {
    pub fn from_rows(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "design has {} entries, expected {rows} x {cols}",
                data.len()
            )));
        }
        Ok(Self { data, rows, cols })
    }

    /// Intercept column followed by the given regressors.
    pub fn with_intercept(columns: &[&[f64]]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.len());
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::invalid("regressor columns differ in length"));
        }
        let cols = columns.len() + 1;
        let mut data = Vec::with_capacity(rows * cols);
        for t in 0..rows {
            data.push(1.0);
            data.extend(columns.iter().map(|c| c[t]));
        }
        Ok(Self { data, rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, t: usize) -> &[f64] {
        &self.data[t * self.cols..(t + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Rows `range` as a new matrix.
    pub fn slice_rows(&self, range: std::ops::Range<usize>) -> DesignMatrix {
        DesignMatrix {
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
            rows: range.len(),
            cols: self.cols,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OlsFit {
    /// Intercept first when the design has one.
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
    pub x: DesignMatrix,
    pub xtx: Vec<f64>,
    pub xtx_inv: Vec<f64>,
}

impl OlsFit {
    pub fn nobs(&self) -> usize {
        self.x.rows()
    }

    pub fn nparams(&self) -> usize {
        self.x.cols()
    }

    pub fn rss(&self) -> f64 {
        self.residuals.iter().map(|e| e * e).sum()
    }

    /// Homoskedastic standard errors with `T - k` degrees of freedom.
    pub fn classical_se(&self) -> Vec<f64> {
        let p = self.nparams();
        let s2 = self.rss() / (self.nobs() - p) as f64;
        (0..p).map(|i| (s2 * self.xtx_inv[i * p + i]).sqrt()).collect()
    }

    pub fn classical_t(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .zip(self.classical_se())
            .map(|(b, se)| b / se)
            .collect()
    }

    /// Two-sided Student-t p-values with `T - k` degrees of freedom.
    pub fn classical_p(&self) -> Vec<f64> {
        let df = (self.nobs() - self.nparams()) as f64;
        self.classical_t()
            .into_iter()
            .map(|t| student_two_sided(t, df))
            .collect()
    }

    /// Per-observation scores `x_t e_t`, row-major.
    pub fn scores(&self) -> Vec<f64> {
        let p = self.nparams();
        let mut g = Vec::with_capacity(self.nobs() * p);
        for (t, e) in self.residuals.iter().enumerate() {
            g.extend(self.x.row(t).iter().map(|v| v * e));
        }
        g
    }
}

/// Least squares; rank deficiency is an error.
pub fn ols(x: &DesignMatrix, y: &[f64]) -> Result<OlsFit> {
    let (t, p) = (x.rows(), x.cols());
    if y.len() != t {
        return Err(Error::invalid(format!("{} responses for {t} design rows", y.len())));
    }
    if t <= p {
        return Err(Error::TooShort { needed: p + 1, got: t });
    }
    let (xtx, xty) = linalg::cross_products(x.as_slice(), y, p);
    let (coefficients, xtx_inv) = linalg::solve_normal(&xtx, &xty, p)?;
    let residuals = (0..t)
        .map(|i| y[i] - x.row(i).iter().zip(&coefficients).map(|(a, b)| a * b).sum::<f64>())
        .collect();
    Ok(OlsFit {
        coefficients,
        residuals,
        x: x.clone(),
        xtx,
        xtx_inv,
    })
}

pub(crate) fn normal_two_sided(z: f64) -> f64 {
    let n = Normal::standard();
    (2.0 * n.cdf(-z.abs())).min(1.0)
}

pub(crate) fn student_two_sided(t: f64, df: f64) -> f64 {
    match StudentsT::new(0.0, 1.0, df) {
        Ok(d) => (2.0 * d.cdf(-t.abs())).min(1.0),
        Err(_) => f64::NAN,
    }
}

/// `***` below 1%, `**` below 5%, `*` below 10%.
pub fn stars(p: f64) -> &'static str {
    if p < 0.01 {
        "***"
    } else if p < 0.05 {
        "**"
    } else if p < 0.10 {
        "*"
    } else {
        ""
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    #[test]
    fn exact_line() {
        let x: Vec<f64> = (0..10).map(f64::from).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 + 3.0 * v).collect();
        let fit = ols(&DesignMatrix::with_intercept(&[&x]).unwrap(), &y).unwrap();
        assert!((fit.coefficients[0] - 2.0).abs() < 1e-12);
        assert!((fit.coefficients[1] - 3.0).abs() < 1e-12);
        assert!(fit.residuals.iter().all(|e| e.abs() < 1e-12));
    }

    #[test]
    fn rank_deficiency() {
        let x = vec![4.0; 10];
        let y: Vec<f64> = (0..10).map(f64::from).collect();
        assert!(matches!(
            ols(&DesignMatrix::with_intercept(&[&x]).unwrap(), &y),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn matches_normal_equation_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        let t = 50;
        let x1: Vec<f64> = (0..t).map(|_| rng.sample(StandardNormal)).collect();
        let x2: Vec<f64> = (0..t).map(|_| rng.sample(StandardNormal)).collect();
        let y: Vec<f64> = (0..t)
            .map(|i| 1.0 - 0.5 * x1[i] + 2.0 * x2[i] + rng.sample::<f64, _>(StandardNormal))
            .collect();
        let fit = ols(&DesignMatrix::with_intercept(&[&x1, &x2]).unwrap(), &y).unwrap();

        // Oracle: solve the 3x3 normal equations by Gaussian elimination with nalgebra.
        let xm = nalgebra::DMatrix::from_fn(t, 3, |i, j| match j {
            0 => 1.0,
            1 => x1[i],
            _ => x2[i],
        });
        let yv = nalgebra::DVector::from_vec(y.clone());
        let xtx = xm.transpose() * &xm;
        let xty = xm.transpose() * &yv;
        let b = xtx.clone().lu().solve(&xty).unwrap();
        for j in 0..3 {
            assert!((b[j] - fit.coefficients[j]).abs() < 1e-8);
        }
        // Residuals orthogonal to every column.
        for j in 0..3 {
            let dot: f64 = (0..t).map(|i| fit.x.row(i)[j] * fit.residuals[i]).sum();
            assert!(dot.abs() < 1e-8);
        }
    }

    #[test]
    fn star_thresholds() {
        assert_eq!(stars(0.005), "***");
        assert_eq!(stars(0.03), "**");
        assert_eq!(stars(0.07), "*");
        assert_eq!(stars(0.2), "");
    }
}
