//! Predictive regressions of excess index returns on lagged daily cases, as the `predict`
//! command runs them, rendered as Markdown.
//!
//!     cargo run --example predictive

use std::path::Path;

use robinf::cli::{cmd_predict, Command, RunConfig};
use robinf::report::Format;

fn main() -> robinf::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut cfg = RunConfig::new(Command::Predict, "out");
    cfg.counts = Some(dir.join("counts_infections.csv"));
    cfg.prices_dir = Some(dir.join("prices"));
    cfg.rates = Some(dir.join("rates.csv"));
    cfg.indices = vec!["ALPHA_IDX=Alphaland".parse()?, "BETA_IDX=Betaland".parse()?];
    cfg.format = Format::Markdown;

    let out = cmd_predict(&cfg)?;
    for (name, bytes) in &out.files {
        println!("--- {name}");
        print!("{}", String::from_utf8_lossy(bytes));
    }
    Ok(())
}
