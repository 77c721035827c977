//! Dated series, the transforms that feed the analyses, and file ingestion.

pub mod ingest;

use chrono::NaiveDate;

use crate::error::{Error, Result};

/// A dated, strictly ordered sequence of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
}

impl Series {
    pub fn new(dates: Vec<NaiveDate>, values: Vec<f64>) -> Result<Self> {
        if dates.len() != values.len() {
            return Err(Error::invalid(format!(
                "{} dates but {} values",
                dates.len(),
                values.len()
            )));
        }
        if dates.is_empty() {
            return Err(Error::TooShort { needed: 1, got: 0 });
        }
        if let Some(w) = dates.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "dates not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite value on {}", dates[i])));
        }
        Ok(Self { dates, values })
    }

    /// Consecutive calendar days starting at `start`. Handy for synthetic data.
    pub fn daily(start: NaiveDate, values: Vec<f64>) -> Result<Self> {
        let dates = start.iter_days().take(values.len()).collect();
        Self::new(dates, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn first_date(&self) -> NaiveDate {
        self.dates[0]
    }

    pub fn last_date(&self) -> NaiveDate {
        self.dates[self.dates.len() - 1]
    }

    /// Most recent value dated on or before `date`.
    pub fn value_as_of(&self, date: NaiveDate) -> Option<f64> {
        let idx = self.dates.partition_point(|d| *d <= date);
        idx.checked_sub(1).map(|i| self.values[i])
    }

    /// Restricts to observations dated within `[from, to]`.
    pub fn window(&self, from: NaiveDate, to: NaiveDate) -> Result<Series> {
        let lo = self.dates.partition_point(|d| *d < from);
        let hi = self.dates.partition_point(|d| *d <= to);
        if lo >= hi {
            return Err(Error::Missing(format!("no observations between {from} and {to}")));
        }
        Series::new(self.dates[lo..hi].to_vec(), self.values[lo..hi].to_vec())
    }

    /// Drops the leading stretch before the first strictly positive value.
    pub fn from_first_positive(&self) -> Result<Series> {
        let start = self
            .values
            .iter()
            .position(|&v| v > 0.0)
            .ok_or_else(|| Error::Missing("series never becomes positive".into()))?;
        Series::new(self.dates[start..].to_vec(), self.values[start..].to_vec())
    }

    /// Natural logarithm of every value; all values must be positive.
    pub fn ln(&self) -> Result<Series> {
        if let Some(i) = self.values.iter().position(|&v| v <= 0.0) {
            return Err(Error::invalid(format!(
                "log of non-positive value {} on {}",
                self.values[i], self.dates[i]
            )));
        }
        Ok(Series {
            dates: self.dates.clone(),
            values: self.values.iter().map(|v| v.ln()).collect(),
        })
    }
}

/// An unordered collection of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooShort { needed: 1, got: 0 });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("sample contains a non-finite value"));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Regressand at date t paired with the most recent regressor value dated strictly before t.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    pub y: Vec<f64>,
    pub x: Vec<f64>,
    pub dates: Vec<NaiveDate>,
    pub regressor_dates: Vec<NaiveDate>,
}

impl PairedSample {
    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }
}

/// `order`-th difference; keeps the dates of the retained observations.
pub fn difference(s: &Series, order: usize) -> Result<Series> {
    if !(1..=2).contains(&order) {
        return Err(Error::invalid(format!("difference order must be 1 or 2, got {order}")));
    }
    if s.len() <= order {
        return Err(Error::TooShort {
            needed: order + 1,
            got: s.len(),
        });
    }
    let mut values = s.values.clone();
    for _ in 0..order {
        values = values.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Series::new(s.dates[order..].to_vec(), values)
}

/// Running sum starting from `initial`: `out[i] = initial + sum(v[..=i])`.
pub fn cumulative_sum(values: &[f64], initial: f64) -> Vec<f64> {
    values
        .iter()
        .scan(initial, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

/// `R_t = P_t / P_{t-1} - 1`, dated at t.
pub fn simple_returns(prices: &Series) -> Result<Series> {
    if prices.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: prices.len(),
        });
    }
    if let Some(i) = prices.values.iter().position(|&p| p <= 0.0) {
        return Err(Error::invalid(format!(
            "non-positive price {} on {}",
            prices.values[i], prices.dates[i]
        )));
    }
    let values = prices.values.windows(2).map(|w| w[1] / w[0] - 1.0).collect();
    Series::new(prices.dates[1..].to_vec(), values)
}

/// Subtracts the per-day risk-free return `(rate/100)/day_count`, forward-filling the rate.
pub fn excess_returns(returns: &Series, annual_rate_pct: &Series, day_count: u32) -> Result<Series> {
    if day_count == 0 {
        return Err(Error::invalid("day count must be positive"));
    }
    let first = returns.first_date();
    if annual_rate_pct.value_as_of(first).is_none() {
        return Err(Error::Missing(format!(
            "no rate observation on or before first return date {first}"
        )));
    }
    let values = returns
        .dates
        .iter()
        .zip(&returns.values)
        .map(|(d, r)| {
            // Presence at the first date guarantees presence at every later one.
            let rate = annual_rate_pct.value_as_of(*d).unwrap_or_default();
            r - rate / 100.0 / day_count as f64
        })
        .collect();
    Series::new(returns.dates.clone(), values)
}

/// Pairs each return with the latest regressor observation dated strictly earlier.
pub fn align_predictive(returns: &Series, regressor: &Series) -> Result<PairedSample> {
    let mut out = PairedSample {
        y: Vec::new(),
        x: Vec::new(),
        dates: Vec::new(),
        regressor_dates: Vec::new(),
    };
    for (d, r) in returns.dates.iter().zip(&returns.values) {
        let idx = regressor.dates.partition_point(|rd| rd < d);
        if idx == 0 {
            continue;
        }
        out.y.push(*r);
        out.x.push(regressor.values[idx - 1]);
        out.dates.push(*d);
        out.regressor_dates.push(regressor.dates[idx - 1]);
    }
    if out.len() < 4 {
        return Err(Error::TooShort {
            needed: 4,
            got: out.len(),
        });
    }
    Ok(out)
}

/// Strictly positive values of `s`, order discarded.
pub fn positive_part(s: &Series) -> Result<Sample> {
    let values: Vec<f64> = s.values.iter().copied().filter(|&v| v > 0.0).collect();
    if values.is_empty() {
        return Err(Error::Missing("series has no strictly positive values".into()));
    }
    Sample::new(values)
}
