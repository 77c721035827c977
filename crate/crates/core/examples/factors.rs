//! CAPM through six-factor regressions of a coin's excess returns, each coefficient with
//! classical, HAC and grouped t-statistics.
//!
//!     cargo run --example factors

use std::path::Path;

use robinf::regression::{factor_report, FactorModel};
use robinf::series::ingest::{ingest_factors, ingest_prices};
use robinf::series::simple_returns;

fn main() -> robinf::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let panel = ingest_factors(dir.join("factors.csv"))?;
    let coin = simple_returns(&ingest_prices(dir.join("prices/COIN.csv"))?)?;
    let excess = panel.excess_returns(&coin)?;

    for model in FactorModel::ALL {
        let fit = factor_report(&excess, &panel, model, &[4, 8])?;
        println!("{model} (T = {})", fit.nobs);
        for (i, name) in fit.names.iter().enumerate() {
            let grouped: Vec<String> = fit
                .grouped
                .iter()
                .map(|(q, g)| match g {
                    Some(g) => format!("q={q}: {:6.2}", g[i].t_stat),
                    None => format!("q={q}: n/a"),
                })
                .collect();
            println!(
                "  {name:<7} {:8.4}  t {:6.2}  HAC t {:6.2}  {}",
                fit.estimates[i],
                fit.classical_t[i],
                fit.hac.t_stats[i],
                grouped.join("  ")
            );
        }
    }
    Ok(())
}
