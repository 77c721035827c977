use chrono::NaiveDate;
use proptest::prelude::*;

use robinf::bootstrap::bootstrap_pvalues;
use robinf::regression::group_partition;
use robinf::series::{cumulative_sum, difference, excess_returns, Sample, Series};
use robinf::tail::{hill_estimate, rank_size_estimate};
use robinf::unit_root::{unit_root_battery, Statistic, UnitRootConfig};

fn start() -> NaiveDate {
    NaiveDate::from_ymd_opt(2020, 1, 22).unwrap()
}

fn walk(steps: &[f64]) -> Vec<f64> {
    cumulative_sum(steps, 0.0)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_covers_sample(t in 10usize..1000, qi in 0usize..4) {
        let q = [4usize, 8, 12, 16][qi];
        prop_assume!(q <= t / 2);
        let parts = group_partition(t, q).unwrap();
        let sizes: Vec<usize> = parts.iter().map(|r| r.len()).collect();
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        prop_assert_eq!(sizes.iter().sum::<usize>(), t);
        prop_assert!(parts.windows(2).all(|w| w[0].end == w[1].start));
    }

    #[test]
    fn mz_identity_and_positive_s2(steps in prop::collection::vec(-5.0f64..5.0, 40..200)) {
        let y = walk(&steps);
        if let Ok(b) = unit_root_battery(&y, &UnitRootConfig::default()) {
            prop_assert!(close(b.mz_t, b.mz_alpha * b.msb, 1e-10));
            prop_assert!(b.s2_ar > 0.0);
        }
    }

    #[test]
    fn battery_affine_invariant(steps in prop::collection::vec(-5.0f64..5.0, 40..160), a in 0.01f64..100.0, b in -1e3f64..1e3) {
        let y = walk(&steps);
        let z: Vec<f64> = y.iter().map(|v| a * v + b).collect();
        let cfg = UnitRootConfig::default();
        if let (Ok(s1), Ok(s2)) = (unit_root_battery(&y, &cfg), unit_root_battery(&z, &cfg)) {
            prop_assert_eq!(s1.lag, s2.lag);
            for s in Statistic::ALL {
                prop_assert!(close(s1.get(s), s2.get(s), 1e-6), "{:?}: {} vs {}", s, s1.get(s), s2.get(s));
            }
        }
    }

    #[test]
    fn battery_on_double_difference_of_double_cumsum(noise in prop::collection::vec(-3.0f64..3.0, 40..150)) {
        let levels = cumulative_sum(&cumulative_sum(&noise, 0.0), 0.0);
        let s = Series::daily(start(), levels).unwrap();
        let back = difference(&s, 2).unwrap();
        let cfg = UnitRootConfig::default();
        let a = unit_root_battery(back.values(), &cfg).unwrap();
        let b = unit_root_battery(&noise[2..], &cfg).unwrap();
        prop_assert_eq!(a.lag, b.lag);
        for st in Statistic::ALL {
            prop_assert!(close(a.get(st), b.get(st), 1e-8));
        }
    }

    #[test]
    fn tail_estimates_ignore_order(mut v in prop::collection::vec(1.0f64..1e6, 20..200), k in 2usize..19, seed in any::<u64>()) {
        let a = Sample::new(v.clone()).unwrap();
        // Deterministic shuffle.
        let mut s = seed | 1;
        for i in (1..v.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            v.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let b = Sample::new(v).unwrap();
        if let (Ok(x), Ok(y)) = (hill_estimate(&a, k), hill_estimate(&b, k)) {
            prop_assert_eq!(x.zeta, y.zeta);
            prop_assert!((x.theta * x.zeta - 1.0).abs() < 1e-12);
        }
        if let (Ok(x), Ok(y)) = (rank_size_estimate(&a, k, 0.5), rank_size_estimate(&b, k, 0.5)) {
            prop_assert!(close(x.zeta, y.zeta, 1e-12));
        }
    }

    #[test]
    fn excess_returns_linear_in_rate(r in prop::collection::vec(-0.1f64..0.1, 5..40), rate in 0.0f64..20.0, shift in 0.0f64..5.0) {
        let dates: Vec<NaiveDate> = start().iter_days().take(r.len()).collect();
        let returns = Series::new(dates.clone(), r.clone()).unwrap();
        let base = Series::new(vec![dates[0]], vec![rate]).unwrap();
        let shifted = Series::new(vec![dates[0]], vec![rate + shift]).unwrap();
        let e1 = excess_returns(&returns, &base, 252).unwrap();
        let e2 = excess_returns(&returns, &shifted, 252).unwrap();
        for ((a, b), x) in e1.values().iter().zip(e2.values()).zip(&r) {
            prop_assert!((a - b - shift / 100.0 / 252.0).abs() < 1e-15);
            prop_assert!((x - a - rate / 100.0 / 252.0).abs() < 1e-15);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn bootstrap_p_values_in_range(steps in prop::collection::vec(-1.0f64..1.0, 60..100), seed in any::<u64>()) {
        let y = walk(&steps);
        let r = bootstrap_pvalues(&y, &UnitRootConfig::default(), 99, seed).unwrap();
        for p in r.p_values {
            prop_assert!((0.01..=1.0).contains(&p));
        }
        let again = bootstrap_pvalues(&y, &UnitRootConfig::default(), 99, seed).unwrap();
        prop_assert_eq!(r.p_values, again.p_values);
    }
}
