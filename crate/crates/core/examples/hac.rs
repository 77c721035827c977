//! QS-kernel HAC standard errors with the automatic bandwidth, next to classical ones.
//!
//!     cargo run --example hac

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use robinf::regression::{
    andrews_bandwidth, hac_inference, hac_inference_with_bandwidth, long_run_variance, ols, qs_kernel, DesignMatrix,
};

fn main() -> robinf::Result<()> {
    for x in [0.0, 0.5, 1.0, 2.0] {
        println!("qs({x}) = {:.5}", qs_kernel(x));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ar = |rng: &mut ChaCha8Rng, phi: f64, n: usize| {
        let mut v = Vec::with_capacity(n);
        let mut prev = 0.0;
        for _ in 0..n {
            prev = phi * prev + rng.sample::<f64, _>(StandardNormal);
            v.push(prev);
        }
        v
    };
    // Persistent regressor and errors: classical standard errors are too small.
    let x = ar(&mut rng, 0.7, 1_000);
    let e = ar(&mut rng, 0.7, 1_000);
    let y: Vec<f64> = x.iter().zip(&e).map(|(x, e)| 0.1 * x + e).collect();

    let fit = ols(&DesignMatrix::with_intercept(&[&x])?, &y)?;
    let hac = hac_inference(&fit)?;
    let white = hac_inference_with_bandwidth(&fit, 0.0)?;
    println!("slope {:.4}", fit.coefficients[1]);
    println!("classical se {:.4}", fit.classical_se()[1]);
    println!("White se     {:.4}", white.se[1]);
    println!(
        "HAC se       {:.4} (bandwidth {:.2}), t = {:.2}",
        hac.se[1], hac.bandwidth, hac.t_stats[1]
    );

    let bw = andrews_bandwidth(&e, 1)?;
    println!(
        "long-run variance of the errors: {:.3} (theory {:.3})",
        long_run_variance(&e, 1, bw)[0],
        1.0 / 0.09
    );
    Ok(())
}
