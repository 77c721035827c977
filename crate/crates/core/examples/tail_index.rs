//! Hill and rank-size tail-index estimates and a curve over the default truncation grid.
//!
//!     cargo run --example tail_index

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use robinf::series::Sample;
use robinf::tail::{default_k_grid, hill_estimate, rank_size_estimate, tail_curve, TailMethod, DEFAULT_SHIFT};

fn main() -> robinf::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // Pareto with tail index 1.5: infinite variance.
    let draws: Vec<f64> = (0..2_000)
        .map(|_| (1.0 - rng.random::<f64>()).powf(-1.0 / 1.5))
        .collect();
    let sample = Sample::new(draws)?;

    let hill = hill_estimate(&sample, 200)?;
    let rs = rank_size_estimate(&sample, 200, DEFAULT_SHIFT)?;
    println!(
        "Hill      k = 200: zeta {:.3}  95% CI ({:.3}, {:.3})",
        hill.zeta, hill.ci95.0, hill.ci95.1
    );
    println!(
        "rank-size k = 200: zeta {:.3}  95% CI ({:.3}, {:.3})  C = {:.3}",
        rs.zeta,
        rs.ci95.0,
        rs.ci95.1,
        rs.scale.unwrap_or(f64::NAN)
    );

    let grid = default_k_grid(sample.len())?;
    let curve = tail_curve(&sample, TailMethod::Hill, &grid)?;
    print!("{}", curve.to_csv());
    Ok(())
}
