use num_bigint::BigInt;
use proptest::prelude::*;

use diffspec::charsum::{
    brute_charsums, gamma_table, supersingular_gamma, CharSumKind, GammaParams,
};
use diffspec::field::{odd_primes, FieldCtx};
use diffspec::{char_sum, lambda1, lambda2};

#[test]
fn recurrence_matches_enumeration() {
    for p in odd_primes(5, 50) {
        let params = GammaParams::new(p).unwrap();
        let mut n = 1u64;
        while p.pow(n as u32) <= 20_000 {
            let ctx = FieldCtx::new(p, n as u32).unwrap();
            let sums = brute_charsums(&ctx);
            assert_eq!(params.gamma(n), sums.gamma, "p={p} n={n}");
            assert_eq!(lambda1(p, n).unwrap(), sums.lambda1, "p={p} n={n}");
            assert_eq!(lambda2(p, n).unwrap(), sums.lambda2, "p={p} n={n}");
            n += 1;
        }
    }
}

#[test]
fn characteristic_three_values_match_enumeration() {
    for n in 1..=9u64 {
        let sums = brute_charsums(&FieldCtx::new(3, n as u32).unwrap());
        assert_eq!(lambda1(3, n).unwrap(), sums.lambda1, "n={n}");
        assert_eq!(lambda2(3, n).unwrap(), sums.lambda2, "n={n}");
    }
}

#[test]
fn gamma_table_matches_fixture() {
    let fixture: Vec<(u64, i64)> = include_str!("data/gamma_p1_upto_1000.csv")
        .lines()
        .skip(1)
        .map(|l| {
            let (p, g) = l.split_once(',').unwrap();
            (p.parse().unwrap(), g.parse().unwrap())
        })
        .collect();
    assert_eq!(fixture.len(), 166);
    assert_eq!(gamma_table(1000).unwrap(), fixture);
}

#[test]
fn supersingular_shortcut() {
    for p in [7u64, 47, 191, 383, 439] {
        let params = GammaParams::new(p).unwrap();
        for n in 1..=60 {
            assert_eq!(params.gamma(n), supersingular_gamma(p, n), "p={p} n={n}");
        }
    }
}

#[test]
fn weil_bound_everywhere_below_1000() {
    for p in odd_primes(5, 1000) {
        let params = GammaParams::new(p).unwrap();
        for n in 1..=60u64 {
            let g = params.gamma(n);
            assert!(&g * &g <= BigInt::from(4) * BigInt::from(p).pow(n as u32), "p={p} n={n}");
        }
    }
}

proptest! {
    #[test]
    fn lambdas_within_weil_bound(i in 0usize..166, n in 1u64..60) {
        let p = odd_primes(5, 1000)[i];
        for which in CharSumKind::ALL {
            prop_assert!(char_sum(p, n, which).unwrap().within_bound());
        }
    }

    #[test]
    fn gamma_obeys_its_recurrence(i in 0usize..166, n in 3u64..80) {
        let p = odd_primes(5, 1000)[i];
        let params = GammaParams::new(p).unwrap();
        let a = BigInt::from(params.trace());
        let lhs = params.gamma(n);
        let rhs = -&a * params.gamma(n - 1) - BigInt::from(p) * params.gamma(n - 2);
        prop_assert_eq!(lhs, rhs);
    }
}
