//! Grouped t-statistic inference: estimate per block of consecutive observations, test
//! with Student-t on q - 1 degrees of freedom.
//!
//!     cargo run --example grouped

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use robinf::regression::{group_partition, grouped_regression, im_tstat, DesignMatrix, MAX_VALID_LEVEL};

fn main() -> robinf::Result<()> {
    let g = im_tstat(&[0.5, 1.0, 1.5, 2.0])?;
    println!(
        "t = {:.3}, df = {}, 5% critical value {:.3}, rejects: {}",
        g.t_stat,
        g.df,
        g.critical_value(0.05)?,
        g.rejects(0.05)?
    );
    match g.critical_value(0.10) {
        Ok(_) => unreachable!(),
        Err(e) => println!("10% level: {e}"),
    }

    let sizes: Vec<usize> = group_partition(103, 8)?.iter().map(|r| r.len()).collect();
    println!("T = 103, q = 8 block sizes: {sizes:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let x: Vec<f64> = (0..400).map(|_| rng.sample(StandardNormal)).collect();
    // Heteroskedastic errors that change scale across the sample.
    let y: Vec<f64> = x
        .iter()
        .enumerate()
        .map(|(t, x)| 0.3 * x + (1.0 + t as f64 / 100.0) * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let d = DesignMatrix::with_intercept(&[&x])?;
    for q in [4, 8, 12, 16] {
        let slope = &grouped_regression(&d, &y, q)?[1];
        println!(
            "q = {q:>2}: slope mean {:.3}, t = {:.2}, p = {:.3}, reject at {MAX_VALID_LEVEL}: {}",
            slope.mean,
            slope.t_stat,
            slope.p_value,
            slope.rejects(MAX_VALID_LEVEL)?
        );
    }
    Ok(())
}
