//! Quadratic character sums attached to the curve `E: y^2 = x(x-1)(x+3)`.
//!
//! ```text
//! Γ_{p,n}    = Σ_x η(x(x-1)(x+3))
//! λ_{1,p^n}  = Σ_x η((x^2-4)(-3x^2-4))
//! λ_{2,p^n}  = Σ_x η((x^2+1)(x^2+4x+1))
//! ```
//!
//! For `p >= 5` all three follow from the trace `a = N_p - p` of `E` over
//! `F_p`: `-Γ_{p,n}` is the power sum `γ_1^n + γ_2^n` of the roots of
//! `T^2 + aT + p`, which satisfies an integer two-term recurrence, and the
//! λ's differ from Γ by a unit. For `p = 3` both quartics degenerate to
//! quadratics and the λ's are constants up to sign.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{eta_base, jacobi, odd_primes, CharSign, FieldCtx, PrimeField};

/// Which of the three sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharSumKind {
    Gamma,
    Lambda1,
    Lambda2,
}

impl CharSumKind {
    pub const ALL: [CharSumKind; 3] = [CharSumKind::Gamma, CharSumKind::Lambda1, CharSumKind::Lambda2];

    pub fn name(self) -> &'static str {
        match self {
            CharSumKind::Gamma => "gamma",
            CharSumKind::Lambda1 => "lambda1",
            CharSumKind::Lambda2 => "lambda2",
        }
    }
}

impl fmt::Display for CharSumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CharSumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(CharSumKind::Gamma),
            "lambda1" => Ok(CharSumKind::Lambda1),
            "lambda2" => Ok(CharSumKind::Lambda2),
            other => Err(Error::UnsupportedInput(format!("unknown character sum {other:?}"))),
        }
    }
}

/// A computed character sum together with what it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSumValue {
    pub value: BigInt,
    pub which: CharSumKind,
    pub p: u64,
    pub n: u64,
}

impl CharSumValue {
    /// `|value| <= 2 p^(n/2) + 2`, checked in exact integers.
    pub fn within_bound(&self) -> bool {
        let excess: BigInt = self.value.abs() - 2;
        !excess.is_positive() || &excess * &excess <= BigInt::from(4) * BigInt::from(self.p).pow(self.n as u32)
    }
}

/// Number of affine points of `y^2 = x(x-1)(x+3)` over `F_p`, `p >= 5`.
///
/// Straight scan over `x`. The character comes from a table of squares for
/// `p <= 2^22` and from the Jacobi symbol above that.
pub fn count_ec_points(p: u64) -> Result<u64> {
    let fp = PrimeField::new(p)?;
    if p < 5 {
        return Err(Error::InvalidPrime { p, reason: "the curve needs p >= 5" });
    }
    let squares = (p <= 1 << 22).then(|| square_flags(p));
    let chi = |v: u64| match &squares {
        Some(_) if v == 0 => 0,
        Some(sq) => if sq[v as usize] { 1 } else { -1 },
        None => jacobi(v, p) as i64,
    };
    const CHUNK: u64 = 1 << 16;
    let char_total: i64 = (0..p.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(p);
            (lo..hi)
                .map(|x| chi(fp.mul(fp.mul(x, fp.sub(x, 1)), fp.add(x, 3))))
                .sum::<i64>()
        })
        .sum();
    Ok((p as i64 + char_total) as u64)
}

/// `sq[v]` is true iff `v` is a nonzero square mod `p`.
fn square_flags(p: u64) -> Vec<bool> {
    let mut sq = vec![false; p as usize];
    for x in 1..=p / 2 {
        sq[(x * x % p) as usize] = true;
    }
    sq
}

/// `N_p` and the trace `a = N_p - p` for the curve over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaParams {
    p: u64,
    n_points: u64,
    a: i64,
}

impl GammaParams {
    pub fn new(p: u64) -> Result<Self> {
        let n_points = count_ec_points(p)?;
        let a = n_points as i64 - p as i64;
        debug_assert!((a as i128) * (a as i128) < 4 * p as i128);
        Ok(GammaParams { p, n_points, a })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n_points(&self) -> u64 {
        self.n_points
    }

    /// `a = N_p - p`, which equals `Γ_{p,1}`.
    pub fn trace(&self) -> i64 {
        self.a
    }

    /// `Γ_{p,n} = -s_n` where `s_0 = 2`, `s_1 = -a`,
    /// `s_k = -a s_{k-1} - p s_{k-2}`.
    pub fn gamma(&self, n: u64) -> BigInt {
        let a = BigInt::from(self.a);
        let p = BigInt::from(self.p);
        let mut prev = BigInt::from(2);
        let mut cur = -&a;
        if n == 0 {
            return -prev;
        }
        for _ in 1..n {
            let next = -&a * &cur - &p * &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        -cur
    }
}

fn check_degree(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::UnsupportedInput("n must be positive".into()));
    }
    Ok(())
}

/// `Γ_{p,n}` for `p >= 5`, exact for every `n >= 1`.
pub fn gamma(p: u64, n: u64) -> Result<BigInt> {
    check_degree(n)?;
    Ok(GammaParams::new(p)?.gamma(n))
}

/// `λ_{1,p^n}`: `-η(-1)` for `p = 3`, `Γ_{p,n} - η(-3)` otherwise.
pub fn lambda1(p: u64, n: u64) -> Result<BigInt> {
    PrimeField::new(p)?;
    check_degree(n)?;
    if p == 3 {
        return Ok(BigInt::from(-eta_base(-1, 3, n).value()));
    }
    Ok(gamma(p, n)? - eta_base(-3, p, n).value())
}

/// `λ_{2,p^n}`: `-1 - η(2)` for `p = 3`, `Γ_{p,n} - 1` otherwise.
pub fn lambda2(p: u64, n: u64) -> Result<BigInt> {
    PrimeField::new(p)?;
    check_degree(n)?;
    if p == 3 {
        return Ok(BigInt::from(-1 - eta_base(2, 3, n).value()));
    }
    Ok(gamma(p, n)? - 1)
}

/// Closed-form evaluation of the requested sum.
pub fn char_sum(p: u64, n: u64, which: CharSumKind) -> Result<CharSumValue> {
    let value = match which {
        CharSumKind::Gamma => gamma(p, n)?,
        CharSumKind::Lambda1 => lambda1(p, n)?,
        CharSumKind::Lambda2 => lambda2(p, n)?,
    };
    Ok(CharSumValue { value, which, p, n })
}

/// All three sums by enumerating `F_{p^n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCharSums {
    pub gamma: BigInt,
    pub lambda1: BigInt,
    pub lambda2: BigInt,
}

impl BruteCharSums {
    pub fn get(&self, which: CharSumKind) -> &BigInt {
        match which {
            CharSumKind::Gamma => &self.gamma,
            CharSumKind::Lambda1 => &self.lambda1,
            CharSumKind::Lambda2 => &self.lambda2,
        }
    }
}

/// Direct summation over every element of `ctx`.
///
/// The character is read from a table built by squaring every element, so
/// this shares nothing with the closed form but the field itself. The field
/// size cap applies when `ctx` is built.
pub fn brute_charsums(ctx: &FieldCtx) -> BruteCharSums {
    let eta = ctx.square_table();
    let q = ctx.size();
    const CHUNK: u64 = 1 << 14;
    let (g, l1, l2) = (0..q.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(q);
            if ctx.degree() == 1 {
                prime_field_sums(ctx.prime_field(), &eta, lo..hi)
            } else {
                extension_sums(ctx, &eta, lo..hi)
            }
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    BruteCharSums {
        gamma: g.into(),
        lambda1: l1.into(),
        lambda2: l2.into(),
    }
}

type Sums = (i64, i64, i64);

fn extension_sums(ctx: &FieldCtx, eta: &[CharSign], range: std::ops::Range<u64>) -> Sums {
    let chi = |x| eta[ctx.index(&x) as usize].value();
    let (one, three, four) = (ctx.embed(1), ctx.embed(3), ctx.embed(4));
    let mut acc = (0, 0, 0);
    for i in range {
        let x = ctx.from_index(i);
        let x2 = ctx.square(&x);
        let cubic = ctx.mul(&ctx.mul(&x, &ctx.sub(&x, &one)), &ctx.add(&x, &three));
        acc.0 += chi(cubic);
        let quartic1 = ctx.mul(&ctx.sub(&x2, &four), &ctx.sub(&ctx.scale(&x2, -3), &four));
        acc.1 += chi(quartic1);
        let x2_plus_1 = ctx.add(&x2, &one);
        let quartic2 = ctx.mul(&x2_plus_1, &ctx.add(&x2_plus_1, &ctx.scale(&x, 4)));
        acc.2 += chi(quartic2);
    }
    acc
}

/// Same sums as [`extension_sums`] on plain residues.
fn prime_field_sums(fp: PrimeField, eta: &[CharSign], range: std::ops::Range<u64>) -> Sums {
    let chi = |v: u64| eta[v as usize].value();
    let r = |c: i64| fp.reduce(c);
    let mut acc = (0, 0, 0);
    for x in range {
        let x2 = fp.mul(x, x);
        acc.0 += chi(fp.mul(fp.mul(x, fp.sub(x, 1)), fp.add(x, r(3))));
        let minus_3x2 = fp.mul(x2, r(-3));
        acc.1 += chi(fp.mul(fp.sub(x2, r(4)), fp.sub(minus_3x2, r(4))));
        let x2_plus_1 = fp.add(x2, 1);
        acc.2 += chi(fp.mul(x2_plus_1, fp.add(x2_plus_1, fp.mul(x, r(4)))));
    }
    acc
}

pub fn brute_charsum(ctx: &FieldCtx, which: CharSumKind) -> BigInt {
    brute_charsums(ctx).get(which).clone()
}

/// `(p, Γ_{p,1})` for every prime `5 <= p <= max_p`.
pub fn gamma_table(max_p: u64) -> Result<Vec<(u64, i64)>> {
    odd_primes(5, max_p)
        .into_iter()
        .map(|p| Ok((p, GammaParams::new(p)?.trace())))
        .collect()
}

/// [`gamma_table`] as CSV with header `p,gamma_p_1`.
pub fn gamma_table_csv(max_p: u64) -> Result<String> {
    let mut out = String::from("p,gamma_p_1\n");
    for (p, a) in gamma_table(max_p)? {
        out.push_str(&format!("{p},{a}\n"));
    }
    Ok(out)
}

/// `Γ_{p,n}` on a supersingular curve (`a = 0`): zero for odd `n`,
/// `-2 (-1)^(n/2) p^(n/2)` for even `n`.
pub fn supersingular_gamma(p: u64, n: u64) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let half = BigInt::from(p).pow((n / 2) as u32);
    if (n / 2) % 2 == 0 {
        -2 * half
    } else {
        2 * half
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        assert_eq!(count_ec_points(5).unwrap(), 7);
        assert_eq!(count_ec_points(7).unwrap(), 7);
        assert_eq!(count_ec_points(11).unwrap(), 7);
        assert!(count_ec_points(3).is_err());
        assert!(count_ec_points(9).is_err());
    }

    #[test]
    fn point_count_matches_pair_enumeration() {
        for p in odd_primes(5, 200) {
            let mut pairs = 0u64;
            for x in 0..p {
                let rhs = x * ((x + p - 1) % p) % p * ((x + 3) % p) % p;
                pairs += (0..p).filter(|y| y * y % p == rhs).count() as u64;
            }
            assert_eq!(count_ec_points(p).unwrap(), pairs, "p={p}");
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(5, 4).unwrap(), BigInt::from(14));
        assert_eq!(gamma(5, 5).unwrap(), BigInt::from(82));
        assert_eq!(gamma(5, 2).unwrap(), BigInt::from(6));
        assert_eq!(gamma(7, 2).unwrap(), BigInt::from(14));
        for n in [1u64, 3, 5, 7, 9] {
            assert!(gamma(7, n).unwrap().is_zero());
        }
        assert!(gamma(3, 2).is_err());
        assert!(gamma(5, 0).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda1(5, 4).unwrap(), BigInt::from(13));
        assert_eq!(lambda1(5, 5).unwrap(), BigInt::from(83));
        assert_eq!(lambda1(7, 4).unwrap(), BigInt::from(-99));
        assert_eq!(lambda1(3, 2).unwrap(), BigInt::from(-1));
        assert_eq!(lambda2(5, 4).unwrap(), BigInt::from(13));
        assert_eq!(lambda2(5, 5).unwrap(), BigInt::from(81));
        assert_eq!(lambda2(3, 4).unwrap(), BigInt::from(-2));
        for n in [1u64, 3, 5, 7] {
            assert!(lambda2(3, n).unwrap().is_zero());
        }
    }

    #[test]
    fn brute_examples() {
        let f25 = FieldCtx::new(5, 2).unwrap();
        assert_eq!(brute_charsum(&f25, CharSumKind::Gamma), BigInt::from(6));
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(brute_charsum(&f9, CharSumKind::Lambda1), BigInt::from(-1));
        let f49 = FieldCtx::new(7, 2).unwrap();
        assert_eq!(brute_charsum(&f49, CharSumKind::Lambda2), BigInt::from(13));
    }

    #[test]
    fn prime_field_path_matches_generic_path() {
        for p in odd_primes(3, 400) {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let eta = ctx.square_table();
            assert_eq!(
                prime_field_sums(ctx.prime_field(), &eta, 0..p),
                extension_sums(&ctx, &eta, 0..p),
                "p={p}"
            );
        }
    }

    #[test]
    fn supersingular_primes_have_zero_trace() {
        for p in [7u64, 47, 191, 383, 439] {
            assert_eq!(GammaParams::new(p).unwrap().trace(), 0, "p={p}");
        }
    }

    #[test]
    fn table_csv_shape() {
        let csv = gamma_table_csv(13).unwrap();
        assert_eq!(csv, "p,gamma_p_1\n5,2\n7,0\n11,-4\n13,2\n");
    }

    #[test]
    fn kind_parsing() {
        for k in CharSumKind::ALL {
            assert_eq!(k.name().parse::<CharSumKind>().unwrap(), k);
        }
        assert!("delta".parse::<CharSumKind>().is_err());
    }
}
