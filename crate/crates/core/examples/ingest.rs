//! Read the bundled fixtures and build the series the analyses consume.
//!
//!     cargo run --example ingest

use std::path::Path;

use robinf::series::ingest::{ingest_counts, ingest_factors, ingest_prices, ingest_rates};
use robinf::series::{align_predictive, difference, excess_returns, simple_returns};

fn main() -> robinf::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");

    let counts = ingest_counts(dir.join("counts_infections.csv"))?;
    for (country, s) in &counts {
        println!(
            "{country}: {} days, {} cumulative cases by {}",
            s.len(),
            s.values()[s.len() - 1],
            s.last_date()
        );
    }

    let levels = counts["Alphaland"].from_first_positive()?;
    let daily = difference(&levels, 1)?;
    let prices = ingest_prices(dir.join("prices/ALPHA_IDX.csv"))?;
    let rates = ingest_rates(dir.join("rates.csv"))?;
    let excess = excess_returns(&simple_returns(&prices)?, &rates, 252)?;
    let pair = align_predictive(&excess, &daily)?;
    println!(
        "ALPHA_IDX: {} prices, {} excess returns, {} (return, previous-day cases) pairs",
        prices.len(),
        excess.len(),
        pair.len()
    );
    println!(
        "first pair: return on {} with cases from {}",
        pair.dates[0], pair.regressor_dates[0]
    );

    let panel = ingest_factors(dir.join("factors.csv"))?;
    println!("factor panel: {} days, mean Mkt.RF {:.5}", panel.dates().len(), {
        let m = panel.column("Mkt.RF").unwrap();
        m.iter().sum::<f64>() / m.len() as f64
    });
    Ok(())
}
