use std::path::PathBuf;
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

use robinf::cli::{self, Command, Failure, IndexSpec, Regressor, RunConfig, Target};
use robinf::regression::FactorModel;
use robinf::report::Format;

#[derive(Parser)]
#[command(
    name = "robinf",
    version,
    about = "Robust inference for epidemic and market time series"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Bootstrap unit-root tests on differenced counts.
    Unitroot(Common),
    /// Hill and rank-size tail-index curves for positive count changes.
    Tailindex(Common),
    /// Predictive regressions of excess index returns on lagged count changes.
    Predict(Common),
    /// Factor-model regressions with classical, HAC and grouped inference.
    Factors(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    counts: Option<PathBuf>,
    #[arg(long = "prices-dir")]
    prices_dir: Option<PathBuf>,
    /// Rates file, or directory of `<country>.csv` files.
    #[arg(long)]
    rates: Option<PathBuf>,
    #[arg(long)]
    factors: Option<PathBuf>,
    /// Repeatable; default is every country in the counts file.
    #[arg(long)]
    country: Vec<String>,
    /// `STEM=COUNTRY` (or `STEM` for factors), price file `<prices-dir>/STEM.csv`.
    #[arg(long)]
    index: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "d1,d2")]
    regressor: Vec<String>,
    #[arg(long, default_value = "infections")]
    target: String,
    /// Bootstrap replications, 0 disables the bootstrap.
    #[arg(long = "B", default_value_t = 999)]
    b: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_delimiter = ',', default_value = "4,8,12,16")]
    q: Vec<usize>,
    /// Tail k-grid as `LO,HI,STEPS` sample fractions.
    #[arg(long = "k-grid", value_delimiter = ',', default_value = "0.025,0.15,20")]
    k_grid: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "capm,3f,4f,5f,6f")]
    models: Vec<String>,
    /// Factor-table cell lines: classical, hac, grouped, qN.
    #[arg(long, default_value = "classical,hac,q4")]
    schemes: String,
    #[arg(long)]
    from: Option<NaiveDate>,
    #[arg(long)]
    to: Option<NaiveDate>,
    /// Difference log counts instead of counts.
    #[arg(long)]
    log: bool,
    #[arg(long = "day-count", default_value_t = 252)]
    day_count: u32,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

fn build(command: Command, a: &Common) -> Result<RunConfig, String> {
    let e = |e: robinf::Error| e.to_string();
    let mut cfg = RunConfig::new(command, &a.out);
    cfg.counts = a.counts.clone();
    cfg.prices_dir = a.prices_dir.clone();
    cfg.rates = a.rates.clone();
    cfg.factors = a.factors.clone();
    cfg.countries = a.country.clone();
    cfg.indices = a
        .index
        .iter()
        .map(|s| s.parse::<IndexSpec>())
        .collect::<Result<_, _>>()
        .map_err(e)?;
    cfg.regressors = a
        .regressor
        .iter()
        .map(|s| s.parse::<Regressor>())
        .collect::<Result<_, _>>()
        .map_err(e)?;
    cfg.regressors.sort();
    cfg.regressors.dedup();
    cfg.target = a.target.parse::<Target>().map_err(e)?;
    cfg.replications = a.b;
    cfg.seed = a.seed;
    cfg.qs = a.q.clone();
    if a.k_grid.len() != 3 {
        return Err("--k-grid expects LO,HI,STEPS".into());
    }
    cfg.grid_lo = a.k_grid[0].parse().map_err(|_| "bad --k-grid LO")?;
    cfg.grid_hi = a.k_grid[1].parse().map_err(|_| "bad --k-grid HI")?;
    cfg.grid_steps = a.k_grid[2].parse().map_err(|_| "bad --k-grid STEPS")?;
    cfg.models = a
        .models
        .iter()
        .map(|s| s.parse::<FactorModel>())
        .collect::<Result<_, _>>()
        .map_err(e)?;
    cfg.schemes = cli::parse_schemes(&a.schemes, &cfg.qs).map_err(e)?;
    cfg.from = a.from;
    cfg.to = a.to;
    cfg.log_counts = a.log;
    cfg.day_count = a.day_count;
    cfg.format = a.format.parse::<Format>().map_err(e)?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let parsed = Cli::parse();
    let (command, args) = match &parsed.command {
        Sub::Unitroot(a) => (Command::UnitRoot, a),
        Sub::Tailindex(a) => (Command::TailIndex, a),
        Sub::Predict(a) => (Command::Predict, a),
        Sub::Factors(a) => (Command::Factors, a),
    };
    let result = build(command, args).map_err(Failure::Usage).and_then(|cfg| {
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(n) = args.threads {
            pool = pool.num_threads(n);
        }
        let pool = pool.build().map_err(|e| Failure::Usage(e.to_string()))?;
        let out = pool.install(|| cli::run(&cfg))?;
        cli::write_output(&cfg, &out)?;
        Ok(out)
    });
    match result {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            for (name, _) in &out.files {
                println!("{}", args.out.join(name).display());
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("robinf: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
