//! The four analyses behind the `robinf` binary, as library functions that turn a
//! [`RunConfig`] into named output files. Nothing here touches global state, so the same
//! inputs and seed always produce the same bytes regardless of the thread count.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chrono::NaiveDate;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::bootstrap::{bootstrap_pvalues, DEFAULT_REPLICATIONS, MIN_REPLICATIONS};
use crate::error::{Error, Result};
use crate::regression::{factor_report, predictive_report, stars, FactorFit, FactorModel, DEFAULT_QS};
use crate::report::{fmt_num, render_table, Format, Table};
use crate::series::ingest::{ingest_counts, ingest_factors, ingest_prices, ingest_rates};
use crate::series::{align_predictive, difference, excess_returns, positive_part, simple_returns, Series};
use crate::tail::{k_grid, tail_curve, TailMethod, DEFAULT_GRID_STEPS, DEFAULT_HI_FRAC, DEFAULT_LO_FRAC};
use crate::unit_root::{unit_root_battery, Statistic, UnitRootConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    UnitRoot,
    TailIndex,
    Predict,
    Factors,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::UnitRoot => "unitroot",
            Command::TailIndex => "tailindex",
            Command::Predict => "predict",
            Command::Factors => "factors",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Infections,
    Deaths,
}

impl Target {
    pub fn label(self) -> &'static str {
        match self {
            Target::Infections => "Infections",
            Target::Deaths => "Deaths",
        }
    }

    fn slug(self) -> &'static str {
        match self {
            Target::Infections => "infections",
            Target::Deaths => "deaths",
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "infections" => Ok(Target::Infections),
            "deaths" => Ok(Target::Deaths),
            _ => Err(Error::invalid(format!("unknown target `{s}`"))),
        }
    }
}

/// Difference order of the epidemic regressor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Regressor {
    D1,
    D2,
}

impl Regressor {
    pub fn order(self) -> usize {
        match self {
            Regressor::D1 => 1,
            Regressor::D2 => 2,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Regressor::D1 => "Δ",
            Regressor::D2 => "Δ²",
        }
    }
}

impl FromStr for Regressor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d1" => Ok(Regressor::D1),
            "d2" => Ok(Regressor::D2),
            _ => Err(Error::invalid(format!("unknown regressor `{s}` (expected d1 or d2)"))),
        }
    }
}

/// A price file `<prices-dir>/<stem>.csv`, optionally tied to a country.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSpec {
    pub stem: String,
    pub country: Option<String>,
}

impl FromStr for IndexSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (stem, country) = match s.split_once('=') {
            Some((a, b)) => (a.trim(), Some(b.trim().to_string())),
            None => (s.trim(), None),
        };
        if stem.is_empty() || country.as_deref() == Some("") {
            return Err(Error::invalid(format!(
                "bad index spec `{s}` (expected STEM or STEM=COUNTRY)"
            )));
        }
        Ok(IndexSpec {
            stem: stem.to_string(),
            country,
        })
    }
}

/// One inference scheme rendered as a line in factor-table cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Classical,
    Hac,
    Grouped(usize),
}

impl Scheme {
    fn describe(self) -> String {
        match self {
            Scheme::Classical => "classical OLS t".into(),
            Scheme::Hac => "HAC (QS kernel) t".into(),
            Scheme::Grouped(q) => format!("grouped t, q={q}"),
        }
    }
}

/// Parses `classical`, `hac`, `grouped` (expands to every q) or `qN`.
pub fn parse_schemes(spec: &str, qs: &[usize]) -> Result<Vec<Scheme>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part {
            "classical" => out.push(Scheme::Classical),
            "hac" => out.push(Scheme::Hac),
            "grouped" => out.extend(qs.iter().map(|q| Scheme::Grouped(*q))),
            other => {
                let q = other
                    .strip_prefix('q')
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| Error::invalid(format!("unknown inference scheme `{other}`")))?;
                out.push(Scheme::Grouped(q));
            }
        }
    }
    if out.is_empty() {
        return Err(Error::invalid("no inference schemes selected"));
    }
    Ok(out)
}

const BRACKETS: [(&str, &str); 4] = [("[", "]"), ("(", ")"), ("{", "}"), ("<", ">")];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub counts: Option<PathBuf>,
    pub prices_dir: Option<PathBuf>,
    /// A single rates file, or a directory of `<country>.csv` files.
    pub rates: Option<PathBuf>,
    pub factors: Option<PathBuf>,
    /// Empty selects every country in the counts file.
    pub countries: Vec<String>,
    pub indices: Vec<IndexSpec>,
    pub regressors: Vec<Regressor>,
    pub target: Target,
    pub replications: usize,
    pub seed: Option<u64>,
    pub qs: Vec<usize>,
    pub grid_lo: f64,
    pub grid_hi: f64,
    pub grid_steps: usize,
    pub format: Format,
    pub out: PathBuf,
    pub from: Option<NaiveDate>,
    pub to: Option<NaiveDate>,
    /// Difference logarithms of the counts instead of the counts.
    pub log_counts: bool,
    pub day_count: u32,
    pub models: Vec<FactorModel>,
    pub schemes: Vec<Scheme>,
}

impl RunConfig {
    pub fn new(command: Command, out: impl Into<PathBuf>) -> Self {
        Self {
            command,
            counts: None,
            prices_dir: None,
            rates: None,
            factors: None,
            countries: Vec::new(),
            indices: Vec::new(),
            regressors: vec![Regressor::D1, Regressor::D2],
            target: Target::Infections,
            replications: DEFAULT_REPLICATIONS,
            seed: None,
            qs: DEFAULT_QS.to_vec(),
            grid_lo: DEFAULT_LO_FRAC,
            grid_hi: DEFAULT_HI_FRAC,
            grid_steps: DEFAULT_GRID_STEPS,
            format: Format::Csv,
            out: out.into(),
            from: None,
            to: None,
            log_counts: false,
            day_count: 252,
            models: FactorModel::ALL.to_vec(),
            schemes: vec![Scheme::Classical, Scheme::Hac, Scheme::Grouped(4)],
        }
    }

    /// Checks the invariants that do not need any input file.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.command == Command::UnitRoot && self.replications > 0 && self.seed.is_none() {
            return Err("--seed is required when bootstrap replications are requested".into());
        }
        if self.replications > 0 && self.replications < MIN_REPLICATIONS {
            return Err(format!("--B must be 0 or at least {MIN_REPLICATIONS}"));
        }
        if let Some(q) = self.qs.iter().find(|q| **q < 2) {
            return Err(format!("group counts must be at least 2, got {q}"));
        }
        if let Some(Scheme::Grouped(q)) = self.schemes.iter().find(|s| matches!(s, Scheme::Grouped(q) if *q < 2)) {
            return Err(format!("group counts must be at least 2, got {q}"));
        }
        if !(self.grid_lo > 0.0 && self.grid_lo <= self.grid_hi && self.grid_hi < 1.0) {
            return Err(format!("bad k-grid fractions {}..{}", self.grid_lo, self.grid_hi));
        }
        if self.regressors.is_empty() {
            return Err("no regressor selected".into());
        }
        let need = |p: &Option<PathBuf>, flag: &str| {
            p.is_none()
                .then(|| format!("{flag} is required for {}", self.command.name()))
        };
        let missing = match self.command {
            Command::UnitRoot | Command::TailIndex => need(&self.counts, "--counts"),
            Command::Predict => need(&self.counts, "--counts")
                .or_else(|| need(&self.prices_dir, "--prices-dir"))
                .or_else(|| need(&self.rates, "--rates")),
            Command::Factors => need(&self.prices_dir, "--prices-dir").or_else(|| need(&self.factors, "--factors")),
        };
        if let Some(m) = missing {
            return Err(m);
        }
        if matches!(self.command, Command::Predict | Command::Factors) && self.indices.is_empty() {
            return Err("at least one --index is required".into());
        }
        if self.command == Command::Predict {
            if let Some(ix) = self.indices.iter().find(|ix| ix.country.is_none()) {
                return Err(format!("--index {} needs a country (STEM=COUNTRY)", ix.stem));
            }
        }
        Ok(())
    }
}

type NamedFile = (String, Vec<u8>);

/// Files produced by one command, in a deterministic order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Output {
    pub files: Vec<(String, Vec<u8>)>,
    pub warnings: Vec<String>,
}

/// Classified failure carrying the process exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(Error),
    Numerical(Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Data(_) => EXIT_DATA,
            Failure::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Data(e) => write!(f, "data error: {e}"),
            Failure::Numerical(e) => write!(f, "numerical failure: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e)
        } else {
            Failure::Data(e)
        }
    }
}

/// Runs the configured command and returns its files plus a run manifest.
pub fn run(cfg: &RunConfig) -> std::result::Result<Output, Failure> {
    cfg.validate().map_err(Failure::Usage)?;
    let mut out = match cfg.command {
        Command::UnitRoot => cmd_unitroot(cfg)?,
        Command::TailIndex => cmd_tailindex(cfg)?,
        Command::Predict => cmd_predict(cfg)?,
        Command::Factors => cmd_factors(cfg)?,
    };
    let manifest = manifest(cfg, &out)?;
    out.files.push(("manifest.txt".into(), manifest.into_bytes()));
    Ok(out)
}

/// Writes every output file under `cfg.out`.
pub fn write_output(cfg: &RunConfig, out: &Output) -> Result<()> {
    std::fs::create_dir_all(&cfg.out).map_err(|source| Error::Io {
        path: cfg.out.clone(),
        source,
    })?;
    for (name, bytes) in &out.files {
        let path = cfg.out.join(name);
        std::fs::write(&path, bytes).map_err(|source| Error::Io { path, source })?;
    }
    Ok(())
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    p.as_deref()
        .ok_or_else(|| Error::invalid(format!("{flag} is required")))
}

/// Country count series cut to the estimation window, keyed and ordered by name.
fn load_counts(cfg: &RunConfig) -> Result<BTreeMap<String, Series>> {
    let path = required(&cfg.counts, "--counts")?;
    let all = ingest_counts(path)?;
    let names: Vec<String> = if cfg.countries.is_empty() {
        all.keys().cloned().collect()
    } else {
        cfg.countries.clone()
    };
    let mut out = BTreeMap::new();
    for name in names {
        let s = all
            .get(&name)
            .ok_or_else(|| Error::Missing(format!("{}: no country `{name}`", path.display())))?;
        out.insert(name, prepare_counts(cfg, s)?);
    }
    Ok(out)
}

fn prepare_counts(cfg: &RunConfig, s: &Series) -> Result<Series> {
    let mut s = s.clone();
    if cfg.from.is_some() || cfg.to.is_some() {
        s = s.window(cfg.from.unwrap_or(NaiveDate::MIN), cfg.to.unwrap_or(NaiveDate::MAX))?;
    }
    s = s.from_first_positive()?;
    if cfg.log_counts {
        s = s.ln()?;
    }
    Ok(s)
}

fn slug(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect()
}

/// Unit-root table: one two-line row per country, Δ and Δ² blocks side by side.
pub fn cmd_unitroot(cfg: &RunConfig) -> Result<Output> {
    let counts = load_counts(cfg)?;
    let ur = UnitRootConfig::default();
    let jobs: Vec<(&String, &Series, Regressor)> = counts
        .iter()
        .flat_map(|(c, s)| cfg.regressors.iter().map(move |r| (c, s, *r)))
        .collect();
    let results: Vec<(Vec<String>, Vec<String>, Option<String>)> = jobs
        .par_iter()
        .map(|(country, levels, reg)| {
            let outcome = difference(levels, reg.order()).and_then(|d| {
                if cfg.replications > 0 {
                    let seed = cfg.seed.unwrap_or_default();
                    let b = bootstrap_pvalues(d.values(), &ur, cfg.replications, seed)?;
                    Ok((b.stats, Some(b.p_values)))
                } else {
                    Ok((unit_root_battery(d.values(), &ur)?, None))
                }
            });
            match outcome {
                Ok((stats, p)) => {
                    let line1 = Statistic::ALL.iter().map(|s| fmt_num(stats.get(*s), 2)).collect();
                    let line2 = match p {
                        Some(p) => p.iter().map(|v| format!("({})", fmt_num(*v, 3))).collect(),
                        None => vec![String::new(); 6],
                    };
                    (line1, line2, None)
                }
                Err(e) => (
                    vec![String::new(); 6],
                    vec![String::new(); 6],
                    Some(format!("{country} {}{}: {e}", reg.prefix(), cfg.target.label())),
                ),
            }
        })
        .collect();

    let mut table = Table::new(
        format!(
            "Sieve wild bootstrap (Rademacher) quasi-differenced unit root tests for {} (p-values in parentheses)",
            cfg.target.label()
        ),
        Vec::new(),
    );
    for r in &cfg.regressors {
        table.groups.push((format!("{}{}", r.prefix(), cfg.target.label()), 6));
        table
            .columns
            .extend(Statistic::ALL.iter().map(|s| s.name().to_string()));
    }
    let mut warnings = Vec::new();
    let per = cfg.regressors.len();
    for (i, country) in counts.keys().enumerate() {
        let mut l1 = Vec::new();
        let mut l2 = Vec::new();
        for (a, b, w) in &results[i * per..(i + 1) * per] {
            l1.extend(a.iter().cloned());
            l2.extend(b.iter().cloned());
            warnings.extend(w.iter().cloned());
        }
        let lines = if cfg.replications > 0 { vec![l1, l2] } else { vec![l1] };
        table.push_row(country.clone(), lines);
    }
    if cfg.replications > 0 {
        table.notes.push(format!(
            "B = {}, seed = {}",
            cfg.replications,
            cfg.seed.unwrap_or_default()
        ));
    }
    let name = format!("unitroot_{}.{}", cfg.target.slug(), cfg.format.extension());
    Ok(Output {
        files: vec![(name, render_table(&table, cfg.format))],
        warnings,
    })
}

/// Tail-index curves for positive changes in daily counts, one file per country and method.
pub fn cmd_tailindex(cfg: &RunConfig) -> Result<Output> {
    let counts = load_counts(cfg)?;
    let mut out = Output::default();
    let results: Vec<(String, Result<Vec<NamedFile>>)> = counts
        .par_iter()
        .map(|(country, levels)| {
            let files = (|| {
                let changes = difference(levels, 2)?;
                let sample = positive_part(&changes)?;
                let grid = k_grid(sample.len(), cfg.grid_lo, cfg.grid_hi, cfg.grid_steps)?;
                [TailMethod::Hill, TailMethod::RankSize]
                    .iter()
                    .map(|m| {
                        let curve = tail_curve(&sample, *m, &grid)?;
                        let name = format!("tail_{}_{}_{}.csv", slug(country), cfg.target.slug(), m.name());
                        Ok((name, curve.to_csv().into_bytes()))
                    })
                    .collect::<Result<Vec<_>>>()
            })();
            (country.clone(), files)
        })
        .collect();
    for (country, r) in results {
        match r {
            Ok(files) => out.files.extend(files),
            Err(e) => out.warnings.push(format!("{country}: {e}")),
        }
    }
    if out.files.is_empty() {
        return Err(Error::Missing(format!(
            "no country has enough positive changes for a tail curve: {}",
            out.warnings.join("; ")
        )));
    }
    Ok(out)
}

fn rates_for(cfg: &RunConfig, country: &str) -> Result<Series> {
    let path = required(&cfg.rates, "--rates")?;
    if path.is_dir() {
        ingest_rates(path.join(format!("{country}.csv")))
    } else {
        ingest_rates(path)
    }
}

fn index_returns(cfg: &RunConfig, ix: &IndexSpec) -> Result<Series> {
    let dir = required(&cfg.prices_dir, "--prices-dir")?;
    simple_returns(&ingest_prices(dir.join(format!("{}.csv", ix.stem)))?)
}

/// Predictive regressions of excess index returns on lagged epidemic changes.
pub fn cmd_predict(cfg: &RunConfig) -> Result<Output> {
    let path = required(&cfg.counts, "--counts")?;
    let all = ingest_counts(path)?;
    let mut table = Table::new(
        format!("Predictive regression tests: {}", cfg.target.label()),
        Vec::new(),
    );
    let width = cfg.qs.len() + 2;
    for r in &cfg.regressors {
        table
            .groups
            .push((format!("{}{}", r.prefix(), cfg.target.label()), width));
        table.columns.push("T".into());
        table.columns.extend(cfg.qs.iter().map(|q| format!("q={q}")));
        table.columns.push("HAC".into());
    }
    let rows: Vec<Result<Vec<String>>> = cfg
        .indices
        .par_iter()
        .map(|ix| {
            let country = ix.country.as_deref().unwrap_or_default();
            let levels = all
                .get(country)
                .ok_or_else(|| Error::Missing(format!("{}: no country `{country}`", path.display())))?;
            let levels = prepare_counts(cfg, levels)?;
            let excess = excess_returns(&index_returns(cfg, ix)?, &rates_for(cfg, country)?, cfg.day_count)?;
            let mut cells = Vec::new();
            for r in &cfg.regressors {
                let pair = align_predictive(&excess, &difference(&levels, r.order())?)?;
                let row = predictive_report(&pair, &cfg.qs)?;
                cells.push(row.nobs.to_string());
                cells.extend(
                    row.grouped
                        .iter()
                        .map(|g| g.inference.as_ref().map_or(String::new(), |i| fmt_num(i.t_stat, 2))),
                );
                cells.push(format!("{}{}", fmt_num(row.hac_t, 2), row.hac_stars()));
            }
            Ok(cells)
        })
        .collect();
    for (ix, cells) in cfg.indices.iter().zip(rows) {
        table.push_row(ix.stem.replace('_', " "), vec![cells?]);
    }
    table.notes.push(
        "Grouped columns: t-statistics with q-1 degrees of freedom. HAC: *** p<0.01, ** p<0.05, * p<0.10 (normal)."
            .into(),
    );
    let name = format!("predict_{}.{}", cfg.target.slug(), cfg.format.extension());
    Ok(Output {
        files: vec![(name, render_table(&table, cfg.format))],
        warnings: Vec::new(),
    })
}

fn scheme_cell(fit: &FactorFit, coef: usize, scheme: Scheme, style: (&str, &str)) -> String {
    let (open, close) = style;
    match scheme {
        Scheme::Classical => format!("{open}{}{close}", fmt_num(fit.classical_t[coef], 3)),
        Scheme::Hac => format!(
            "{open}{}{close}{}",
            fmt_num(fit.hac.t_stats[coef], 3),
            stars(fit.hac.p_values[coef])
        ),
        Scheme::Grouped(q) => fit
            .grouped
            .iter()
            .find(|(gq, _)| *gq == q)
            .and_then(|(_, g)| g.as_ref())
            .map_or(String::new(), |g| {
                format!("{open}{}{close}", fmt_num(g[coef].t_stat, 3))
            }),
    }
}

/// Factor-model tables, one per asset: a column per model, a row per factor plus Alpha.
pub fn cmd_factors(cfg: &RunConfig) -> Result<Output> {
    let panel = ingest_factors(required(&cfg.factors, "--factors")?)?;
    let mut qs: Vec<usize> = cfg.qs.clone();
    for s in &cfg.schemes {
        if let Scheme::Grouped(q) = s {
            if !qs.contains(q) {
                qs.push(*q);
            }
        }
    }
    let row_names = ["Mkt.RF", "SMB", "HML", "MOM", "RMW", "CMA", "Alpha"];
    let mut out = Output::default();
    for ix in &cfg.indices {
        let excess = panel.excess_returns(&index_returns(cfg, ix)?)?;
        let fits: Vec<FactorFit> = cfg
            .models
            .par_iter()
            .map(|m| factor_report(&excess, &panel, *m, &qs))
            .collect::<Result<_>>()?;
        let mut table = Table::new(
            format!("{} and stock factors (excess returns)", ix.stem),
            cfg.models.iter().map(|m| m.name().to_string()).collect(),
        );
        for name in row_names {
            let mut lines = vec![Vec::new(); 1 + cfg.schemes.len()];
            for fit in &fits {
                match fit.coefficient_index(name) {
                    Some(c) => {
                        lines[0].push(fmt_num(fit.estimates[c], 3));
                        for (i, s) in cfg.schemes.iter().enumerate() {
                            lines[i + 1].push(scheme_cell(fit, c, *s, BRACKETS[i % BRACKETS.len()]));
                        }
                    }
                    None => lines.iter_mut().for_each(|l| l.push(String::new())),
                }
            }
            if lines[0].iter().any(|c| !c.is_empty()) {
                table.push_row(name, lines);
            }
        }
        let mut legend = String::from("Cell lines: coefficient");
        for (i, s) in cfg.schemes.iter().enumerate() {
            let (o, c) = BRACKETS[i % BRACKETS.len()];
            let _ = write!(legend, "; {o}{c} {}", s.describe());
        }
        legend.push_str(". Stars on HAC only: *** p<0.01, ** p<0.05, * p<0.10.");
        table.notes.push(legend);
        table.notes.push(format!("T = {}", fits.first().map_or(0, |f| f.nobs)));
        out.files.push((
            format!("factors_{}.{}", slug(&ix.stem), cfg.format.extension()),
            render_table(&table, cfg.format),
        ));
    }
    Ok(out)
}

fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(hex(&Sha256::digest(&bytes)))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Plain `key=value` record of the run: settings and content hashes of inputs and outputs.
pub fn manifest(cfg: &RunConfig, out: &Output) -> Result<String> {
    let mut m = String::new();
    let _ = writeln!(m, "tool=robinf {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(m, "command={}", cfg.command.name());
    let _ = writeln!(m, "target={}", cfg.target.slug());
    let _ = writeln!(m, "B={}", cfg.replications);
    let _ = writeln!(m, "seed={}", cfg.seed.map_or("none".to_string(), |s| s.to_string()));
    let _ = writeln!(
        m,
        "q={}",
        cfg.qs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    );
    let _ = writeln!(m, "k_grid={},{},{}", cfg.grid_lo, cfg.grid_hi, cfg.grid_steps);
    let _ = writeln!(m, "format={}", cfg.format.extension());
    let _ = writeln!(m, "log_counts={}", cfg.log_counts);
    let mut inputs: Vec<(String, PathBuf)> = Vec::new();
    if let Some(p) = &cfg.counts {
        inputs.push(("counts".into(), p.clone()));
    }
    if let Some(p) = &cfg.factors {
        inputs.push(("factors".into(), p.clone()));
    }
    if let Some(p) = &cfg.rates {
        if p.is_file() {
            inputs.push(("rates".into(), p.clone()));
        } else {
            for ix in &cfg.indices {
                if let Some(c) = &ix.country {
                    inputs.push((format!("rates.{c}"), p.join(format!("{c}.csv"))));
                }
            }
        }
    }
    if let Some(dir) = &cfg.prices_dir {
        for ix in &cfg.indices {
            inputs.push((format!("prices.{}", ix.stem), dir.join(format!("{}.csv", ix.stem))));
        }
    }
    if !matches!(cfg.command, Command::Predict) {
        inputs.retain(|(k, _)| !k.starts_with("rates"));
    }
    if matches!(cfg.command, Command::UnitRoot | Command::TailIndex) {
        inputs.retain(|(k, _)| k == "counts");
    }
    for (key, path) in inputs {
        let _ = writeln!(m, "input.{key}=sha256:{}", sha256_file(&path)?);
    }
    for (name, bytes) in &out.files {
        let _ = writeln!(m, "output.{name}=sha256:{}", hex(&Sha256::digest(bytes)));
    }
    for w in &out.warnings {
        let _ = writeln!(m, "warning={w}");
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_required_with_bootstrap() {
        let mut cfg = RunConfig::new(Command::UnitRoot, "/tmp/x");
        cfg.counts = Some("c.csv".into());
        assert!(cfg.validate().is_err());
        cfg.seed = Some(1);
        assert!(cfg.validate().is_ok());
        cfg.replications = 0;
        cfg.seed = None;
        assert!(cfg.validate().is_ok());
        cfg.qs = vec![1];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn index_specs_and_schemes() {
        let ix: IndexSpec = "UK_FTSE=United Kingdom".parse().unwrap();
        assert_eq!(ix.country.as_deref(), Some("United Kingdom"));
        assert!("=X".parse::<IndexSpec>().is_err());
        let s = parse_schemes("classical,hac,grouped,q6", &[4, 8]).unwrap();
        assert_eq!(
            s,
            vec![
                Scheme::Classical,
                Scheme::Hac,
                Scheme::Grouped(4),
                Scheme::Grouped(8),
                Scheme::Grouped(6)
            ]
        );
        assert!(parse_schemes("bogus", &[4]).is_err());
    }

    #[test]
    fn failure_exit_codes() {
        assert_eq!(Failure::Usage("x".into()).exit_code(), 2);
        assert_eq!(Failure::from(Error::Missing("x".into())).exit_code(), 3);
        assert_eq!(Failure::from(Error::Singular("x".into())).exit_code(), 4);
    }
}
