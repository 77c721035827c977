//! Sieve wild bootstrap p-values for the battery, reproducible for any thread count.
//!
//!     cargo run --release --example bootstrap

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use robinf::bootstrap::{bootstrap_pvalues, fit_sieve, rademacher, resample_null};
use robinf::unit_root::{Statistic, UnitRootConfig};

fn main() -> robinf::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    // Heavy-tailed stationary AR(1): the kind of series the sieve is meant for.
    let mut y = Vec::new();
    let mut prev = 0.0;
    for _ in 0..200 {
        let e: f64 = rng.sample::<f64, _>(StandardNormal) / rng.random::<f64>().max(0.05).sqrt();
        prev = 0.7 * prev + e;
        y.push(prev);
    }

    let signs = rademacher(42, 10);
    println!("first multipliers: {signs:?}");

    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    let model = fit_sieve(&dy, 2)?;
    println!("sieve AR(2) phi = {:.3?}", model.phi);
    let ystar = resample_null(&model, 7);
    println!(
        "one bootstrap path: {} points ending at {:.2}",
        ystar.len(),
        ystar[ystar.len() - 1]
    );

    let res = bootstrap_pvalues(&y, &UnitRootConfig::default(), 499, 42)?;
    println!("B = {}, seed = {}", res.replications, res.seed);
    for s in Statistic::ALL {
        println!("{:>4} {:9.3}  p = {:.3}", s.name(), res.stats.get(s), res.p_value(s));
    }
    Ok(())
}
