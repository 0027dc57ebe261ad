use diffspec::field::{eta_base, find_irreducible, is_irreducible, legendre, CharSign, FieldCtx};
use diffspec::verify::odd_prime_powers;
use proptest::prelude::*;

#[test]
fn eta_base_matches_field_character() {
    for (p, n) in odd_prime_powers(5000) {
        let ctx = FieldCtx::new(p, n as u32).unwrap();
        for c in [-7i64, -3, -2, -1, 2, 3, 6, 7] {
            assert_eq!(eta_base(c, p, n), ctx.eta(&ctx.embed(c)), "c={c} p={p} n={n}");
        }
    }
}

#[test]
fn half_the_units_are_squares() {
    for (p, n) in odd_prime_powers(3000) {
        let ctx = FieldCtx::new(p, n as u32).unwrap();
        let table = ctx.square_table();
        let plus = table.iter().filter(|s| s.is_plus()).count() as u64;
        assert_eq!(plus, (ctx.size() - 1) / 2, "p={p} n={n}");
    }
}

#[test]
fn found_moduli_are_irreducible() {
    for (p, n) in odd_prime_powers(1_000_000) {
        let f = find_irreducible(p, n as usize);
        assert_eq!(f.len(), n as usize + 1);
        assert_eq!(f[n as usize], 1);
        assert!(n == 1 || is_irreducible(&f, p), "p={p} n={n}");
    }
}

fn fields() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![(3u64, 5u32), (5, 3), (7, 3), (11, 2), (3, 8), (101, 1)])
}

proptest! {
    #[test]
    fn eta_is_multiplicative((p, n) in fields(), a in any::<u64>(), b in any::<u64>()) {
        let ctx = FieldCtx::new(p, n).unwrap();
        let (x, y) = (ctx.from_index(a % ctx.size()), ctx.from_index(b % ctx.size()));
        prop_assert_eq!(ctx.eta(&ctx.mul(&x, &y)), ctx.eta(&x) * ctx.eta(&y));
    }

    #[test]
    fn square_table_matches_exponentiation((p, n) in fields(), a in any::<u64>()) {
        let ctx = FieldCtx::new(p, n).unwrap();
        let i = a % ctx.size();
        prop_assert_eq!(ctx.square_table()[i as usize], ctx.eta(&ctx.from_index(i)));
    }

    #[test]
    fn legendre_is_completely_multiplicative(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        for p in [3u64, 7, 101, 65537] {
            prop_assert_eq!(legendre(a * b, p), legendre(a, p) * legendre(b, p));
        }
    }

    #[test]
    fn constants_become_squares_in_even_degree(c in 1i64..1000, k in 1u64..10) {
        let p = 1009;
        if c % p as i64 != 0 {
            prop_assert_eq!(eta_base(c, p, 2 * k), CharSign::Plus);
        }
    }
}
