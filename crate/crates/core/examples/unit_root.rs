//! The six-statistic unit-root battery on a random walk and on a stationary series.
//!
//!     cargo run --example unit_root

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use robinf::unit_root::{ols_demean, select_lag_maic, unit_root_battery, Statistic, UnitRootConfig};

fn main() -> robinf::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let e: Vec<f64> = (0..250).map(|_| rng.sample(StandardNormal)).collect();

    let mut walk = Vec::new();
    let mut ar = Vec::new();
    let (mut w, mut a) = (0.0, 0.0);
    for x in &e {
        w += x;
        a = 0.5 * a + x;
        walk.push(w);
        ar.push(a);
    }

    let cfg = UnitRootConfig::default();
    let k_max = cfg.resolve_k_max(walk.len());
    let sel = select_lag_maic(&ols_demean(&walk), k_max)?;
    println!("MAIC over k = 0..={k_max} picks k = {}", sel.k);

    for (name, y) in [("random walk", &walk), ("AR(1), phi = 0.5", &ar)] {
        let stats = unit_root_battery(y, &cfg)?;
        print!("{name:>18}:");
        for s in Statistic::ALL {
            print!("  {} {:8.3}", s.name(), stats.get(s));
        }
        println!("  (lag {})", stats.lag);
    }
    Ok(())
}
