use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;

use super::{grouped_regression, hac_inference, ols, DesignMatrix, GroupInference, HacResult};
use crate::error::{Error, Result};
use crate::series::Series;

/// Factor returns by date, stored as fractions.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorPanel {
    dates: Vec<NaiveDate>,
    columns: BTreeMap<String, Vec<f64>>,
}

impl FactorPanel {
    pub fn new(dates: Vec<NaiveDate>, columns: Vec<(String, Vec<f64>)>) -> Result<Self> {
        if dates.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("factor dates must be strictly increasing"));
        }
        let mut map = BTreeMap::new();
        for (name, values) in columns {
            if values.len() != dates.len() {
                return Err(Error::invalid(format!(
                    "factor `{name}` has {} values for {} dates",
                    values.len(),
                    dates.len()
                )));
            }
            if map.insert(name.clone(), values).is_some() {
                return Err(Error::invalid(format!("duplicate factor column `{name}`")));
            }
        }
        Ok(Self { dates, columns: map })
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.get(name).map(Vec::as_slice)
    }

    fn index_of(&self, d: NaiveDate) -> Option<usize> {
        self.dates.binary_search(&d).ok()
    }

    /// Returns minus the `RF` column on dates present in both.
    pub fn excess_returns(&self, returns: &Series) -> Result<Series> {
        let rf = self
            .column("RF")
            .ok_or_else(|| Error::Missing("factor panel has no `RF` column".into()))?;
        let (mut dates, mut values) = (Vec::new(), Vec::new());
        for (d, r) in returns.dates().iter().zip(returns.values()) {
            if let Some(i) = self.index_of(*d) {
                dates.push(*d);
                values.push(r - rf[i]);
            }
        }
        if dates.is_empty() {
            return Err(Error::Missing("no return dates overlap the factor panel".into()));
        }
        Series::new(dates, values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorModel {
    Capm,
    ThreeFactor,
    FourFactor,
    FiveFactor,
    SixFactor,
}

impl FactorModel {
    pub const ALL: [FactorModel; 5] = [
        FactorModel::Capm,
        FactorModel::ThreeFactor,
        FactorModel::FourFactor,
        FactorModel::FiveFactor,
        FactorModel::SixFactor,
    ];

    pub fn factors(self) -> &'static [&'static str] {
        match self {
            FactorModel::Capm => &["Mkt.RF"],
            FactorModel::ThreeFactor => &["Mkt.RF", "SMB", "HML"],
            FactorModel::FourFactor => &["Mkt.RF", "SMB", "HML", "MOM"],
            FactorModel::FiveFactor => &["Mkt.RF", "SMB", "HML", "RMW", "CMA"],
            FactorModel::SixFactor => &["Mkt.RF", "SMB", "HML", "MOM", "RMW", "CMA"],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FactorModel::Capm => "CAPM",
            FactorModel::ThreeFactor => "3-F",
            FactorModel::FourFactor => "4-F",
            FactorModel::FiveFactor => "5-F",
            FactorModel::SixFactor => "6-F",
        }
    }
}

impl fmt::Display for FactorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FactorModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "").as_str() {
            "CAPM" => Ok(FactorModel::Capm),
            "3F" => Ok(FactorModel::ThreeFactor),
            "4F" => Ok(FactorModel::FourFactor),
            "5F" => Ok(FactorModel::FiveFactor),
            "6F" => Ok(FactorModel::SixFactor),
            _ => Err(Error::invalid(format!("unknown factor model `{s}`"))),
        }
    }
}

/// One factor regression with parallel inference sets.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorFit {
    pub model: FactorModel,
    /// `"Alpha"` followed by the model's factors, matching coefficient order.
    pub names: Vec<String>,
    pub estimates: Vec<f64>,
    pub classical_t: Vec<f64>,
    pub hac: HacResult,
    /// Per group count, one inference per coefficient; `None` if `q` is not feasible.
    pub grouped: Vec<(usize, Option<Vec<GroupInference>>)>,
    pub rss: f64,
    pub nobs: usize,
}

impl FactorFit {
    pub fn coefficient_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Regresses `excess` on the model's factors over the dates both cover.
pub fn factor_report(excess: &Series, panel: &FactorPanel, model: FactorModel, qs: &[usize]) -> Result<FactorFit> {
    let cols: Vec<&[f64]> = model
        .factors()
        .iter()
        .map(|f| {
            panel
                .column(f)
                .ok_or_else(|| Error::Missing(format!("factor panel lacks `{f}` required by {model}")))
        })
        .collect::<Result<_>>()?;
    let mut y = Vec::new();
    let mut regressors: Vec<Vec<f64>> = vec![Vec::new(); cols.len()];
    for (d, r) in excess.dates().iter().zip(excess.values()) {
        if let Some(i) = panel.index_of(*d) {
            y.push(*r);
            for (j, c) in cols.iter().enumerate() {
                regressors[j].push(c[i]);
            }
        }
    }
    let refs: Vec<&[f64]> = regressors.iter().map(Vec::as_slice).collect();
    let x = DesignMatrix::with_intercept(&refs)?;
    let fit = ols(&x, &y)?;
    let hac = hac_inference(&fit)?;
    let grouped = qs.iter().map(|&q| (q, grouped_regression(&x, &y, q).ok())).collect();
    let mut names = vec!["Alpha".to_string()];
    names.extend(model.factors().iter().map(|s| s.to_string()));
    Ok(FactorFit {
        model,
        names,
        classical_t: fit.classical_t(),
        estimates: fit.coefficients.clone(),
        rss: fit.rss(),
        nobs: fit.nobs(),
        hac,
        grouped,
    })
}
