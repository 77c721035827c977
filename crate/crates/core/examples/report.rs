//! The unit-root table for the fixture countries in all three output formats.
//!
//!     cargo run --release --example report

use std::path::Path;

use robinf::cli::{cmd_unitroot, Command, RunConfig};
use robinf::report::Format;

fn main() -> robinf::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut cfg = RunConfig::new(Command::UnitRoot, "out");
    cfg.counts = Some(dir.join("counts_infections.csv"));
    cfg.replications = 199;
    cfg.seed = Some(42);
    for format in [Format::Csv, Format::Markdown, Format::Tex] {
        cfg.format = format;
        for (name, bytes) in cmd_unitroot(&cfg)?.files {
            println!("--- {name}");
            print!("{}", String::from_utf8_lossy(&bytes));
        }
    }
    Ok(())
}
