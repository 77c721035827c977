use std::ops::Range;

use statrs::distribution::{ContinuousCDF, StudentsT};

use super::{ols, student_two_sided, DesignMatrix};
use crate::error::{Error, Result};

/// Largest test level for which the grouped t-test is known to control size.
pub const MAX_VALID_LEVEL: f64 = 0.083;

#[derive(Debug, Clone, PartialEq)]
pub struct GroupInference {
    pub q: usize,
    pub group_estimates: Vec<f64>,
    pub mean: f64,
    pub sd: f64,
    pub t_stat: f64,
    pub df: usize,
    /// Two-sided, Student-t with `q - 1` degrees of freedom.
    pub p_value: f64,
}

impl GroupInference {
    /// Two-sided critical value at `level`; levels above 8.3% are refused.
    pub fn critical_value(&self, level: f64) -> Result<f64> {
        if !(level > 0.0 && level <= MAX_VALID_LEVEL) {
            return Err(Error::invalid(format!(
                "grouped t-test controls size only for levels in (0, {MAX_VALID_LEVEL}], got {level}"
            )));
        }
        let dist = StudentsT::new(0.0, 1.0, self.df as f64).map_err(|e| Error::invalid(e.to_string()))?;
        Ok(dist.inverse_cdf(1.0 - level / 2.0))
    }

    pub fn rejects(&self, level: f64) -> Result<bool> {
        Ok(self.t_stat.abs() > self.critical_value(level)?)
    }
}

/// Consecutive groups `{t : floor((j-1)T/q) < t <= floor(jT/q)}` as 0-based ranges.
pub fn group_partition(t: usize, q: usize) -> Result<Vec<Range<usize>>> {
    if q < 2 || q > t / 2 {
        return Err(Error::invalid(format!(
            "group count must satisfy 2 <= q <= T/2, got q = {q}, T = {t}"
        )));
    }
    Ok((1..=q).map(|j| (j - 1) * t / q..j * t / q).collect())
}

/// `sqrt(q) * mean / sd` of the group estimates.
pub fn im_tstat(group_estimates: &[f64]) -> Result<GroupInference> {
    let q = group_estimates.len();
    if q < 2 {
        return Err(Error::invalid(format!("need at least 2 group estimates, got {q}")));
    }
    let qf = q as f64;
    let mean = group_estimates.iter().sum::<f64>() / qf;
    let var = group_estimates.iter().map(|b| (b - mean).powi(2)).sum::<f64>() / (qf - 1.0);
    if !(var > 0.0) {
        return Err(Error::Degenerate("group estimates have zero sample variance".into()));
    }
    let sd = var.sqrt();
    let t_stat = qf.sqrt() * mean / sd;
    Ok(GroupInference {
        q,
        group_estimates: group_estimates.to_vec(),
        mean,
        sd,
        t_stat,
        df: q - 1,
        p_value: student_two_sided(t_stat, qf - 1.0),
    })
}

/// Re-estimates the full regression (intercept included) in each of `q` consecutive
/// groups and returns one grouped t-statistic per coefficient.
pub fn grouped_regression(x: &DesignMatrix, y: &[f64], q: usize) -> Result<Vec<GroupInference>> {
    if y.len() != x.rows() {
        return Err(Error::invalid("response and design lengths differ"));
    }
    let groups = group_partition(x.rows(), q)?;
    let p = x.cols();
    let mut per_coef: Vec<Vec<f64>> = vec![Vec::with_capacity(q); p];
    for (j, range) in groups.into_iter().enumerate() {
        let fit = ols(&x.slice_rows(range.clone()), &y[range.clone()]).map_err(|e| {
            Error::Singular(format!(
                "group {} of {q} (observations {}..={}): {e}",
                j + 1,
                range.start + 1,
                range.end
            ))
        })?;
        for (c, b) in fit.coefficients.into_iter().enumerate() {
            per_coef[c].push(b);
        }
    }
    per_coef.iter().map(|b| im_tstat(b)).collect()
}
