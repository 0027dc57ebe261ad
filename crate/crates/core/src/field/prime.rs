//! Arithmetic modulo an odd prime: residues, the Legendre symbol and
//! square roots.

use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};

/// Default upper bound (exclusive) on the characteristic.
pub const DEFAULT_PRIME_CAP: u64 = 1 << 31;

/// Value of a quadratic character: -1, 0 or +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharSign {
    Minus,
    Zero,
    Plus,
}

impl CharSign {
    pub fn value(self) -> i64 {
        match self {
            CharSign::Minus => -1,
            CharSign::Zero => 0,
            CharSign::Plus => 1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            -1 => Some(CharSign::Minus),
            0 => Some(CharSign::Zero),
            1 => Some(CharSign::Plus),
            _ => None,
        }
    }

    pub fn is_plus(self) -> bool {
        self == CharSign::Plus
    }

    pub fn is_minus(self) -> bool {
        self == CharSign::Minus
    }
}

impl Mul for CharSign {
    type Output = CharSign;

    fn mul(self, rhs: CharSign) -> CharSign {
        CharSign::from_value(self.value() * rhs.value()).unwrap()
    }
}

impl Neg for CharSign {
    type Output = CharSign;

    fn neg(self) -> CharSign {
        CharSign::from_value(-self.value()).unwrap()
    }
}

impl fmt::Display for CharSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A validated odd prime characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_cap(p, DEFAULT_PRIME_CAP)
    }

    /// Accepts `p` only if it is an odd prime strictly below `cap`.
    pub fn with_cap(p: u64, cap: u64) -> Result<Self> {
        if p >= cap.min(DEFAULT_PRIME_CAP) {
            return Err(Error::InvalidPrime { p, reason: "above the supported range" });
        }
        if p == 2 {
            return Err(Error::InvalidPrime { p, reason: "characteristic 2 is not supported" });
        }
        if !is_prime(p) {
            return Err(Error::InvalidPrime { p, reason: "not a prime" });
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Canonical representative of `c` in `[0, p)`.
    pub fn reduce(&self, c: i64) -> u64 {
        c.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn legendre(&self, c: i64) -> CharSign {
        legendre(c, self.p)
    }

    pub fn sqrt(&self, c: i64) -> Result<u64> {
        sqrt_mod_p(c, self.p)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Odd primes in `[lo, hi]`, ascending.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&p| is_prime(p)).collect()
}

/// Legendre symbol `(c / p)` by Euler's criterion. `p` must be an odd prime.
pub fn legendre(c: i64, p: u64) -> CharSign {
    debug_assert!(p > 2 && p % 2 == 1);
    let c = c.rem_euclid(p as i64) as u64;
    if c == 0 {
        return CharSign::Zero;
    }
    if pow_mod(c, (p - 1) / 2, p) == 1 {
        CharSign::Plus
    } else {
        CharSign::Minus
    }
}

/// Jacobi symbol `(a / m)` for odd `m`, via quadratic reciprocity. Agrees
/// with [`legendre`] when `m` is prime and needs no modular exponentiation.
pub fn jacobi(mut a: u64, mut m: u64) -> i8 {
    debug_assert!(m % 2 == 1);
    a %= m;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (m % 8 == 3 || m % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut m);
        a %= m;
    }
    if m == 1 {
        sign
    } else {
        0
    }
}

/// Square root of a quadratic residue modulo `p` (Tonelli-Shanks).
///
/// Returns the smaller of the two roots `{r, p - r}`, so the result is
/// reproducible regardless of which root the iteration lands on.
pub fn sqrt_mod_p(c: i64, p: u64) -> Result<u64> {
    let c = c.rem_euclid(p as i64) as u64;
    if legendre(c as i64, p) != CharSign::Plus {
        return Err(Error::NonResidue { c, p });
    }
    let r = tonelli_shanks(c, p);
    debug_assert_eq!(mul_mod(r, r, p), c);
    Ok(r.min(p - r))
}

fn tonelli_shanks(c: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(c, (p + 1) / 4, p);
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while legendre(z as i64, p) != CharSign::Minus {
        z += 1;
    }
    let mut m = s;
    let mut cz = pow_mod(z, q, p);
    let mut t = pow_mod(c, q, p);
    let mut r = pow_mod(c, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(cz, 1 << (m - i - 1), p);
        m = i;
        cz = mul_mod(b, b, p);
        t = mul_mod(t, cz, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Quadratic character in `F_{p^n}` of a constant from the prime field.
///
/// A nonzero constant is a square in `F_{p^n}` iff it is a square mod `p`
/// or `n` is even, so no extension field needs to be built.
pub fn eta_base(c: i64, p: u64, n: u64) -> CharSign {
    match legendre(c, p) {
        CharSign::Zero => CharSign::Zero,
        _ if n % 2 == 0 => CharSign::Plus,
        s => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares_mod(p: u64) -> Vec<u64> {
        let mut sq: Vec<u64> = (1..p).map(|r| r * r % p).collect();
        sq.sort_unstable();
        sq.dedup();
        sq
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 7), CharSign::Plus);
        assert_eq!(legendre(0, 5), CharSign::Zero);
        assert_eq!(squares_mod(5), vec![1, 4]);
        assert_eq!(legendre(2, 5), CharSign::Minus);
        assert_eq!(legendre(-3, 7), CharSign::Plus);
    }

    #[test]
    fn legendre_matches_square_census() {
        for p in odd_primes(3, 400) {
            let sq = squares_mod(p);
            for c in 0..p {
                let expect = if c == 0 {
                    CharSign::Zero
                } else if sq.binary_search(&c).is_ok() {
                    CharSign::Plus
                } else {
                    CharSign::Minus
                };
                assert_eq!(legendre(c as i64, p), expect, "c={c} p={p}");
                assert_eq!(jacobi(c, p) as i64, expect.value());
            }
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod_p(2, 7).unwrap(), 3);
        assert_eq!(sqrt_mod_p(-3, 7).unwrap(), 2);
        let brute: Vec<u64> = (0..17).filter(|r| r * r % 17 == 8).collect();
        assert_eq!(brute, vec![5, 12]);
        assert_eq!(sqrt_mod_p(8, 17).unwrap(), 5);
        assert_eq!(
            sqrt_mod_p(3, 7),
            Err(Error::NonResidue { c: 3, p: 7 })
        );
        assert!(sqrt_mod_p(0, 7).is_err());
    }

    #[test]
    fn sqrt_roundtrip_with_deep_two_adic_part() {
        // 2^16 + 1 = 65537 and 7681 = 15 * 2^9 + 1 exercise the full loop.
        for p in [65537u64, 7681, 40961, 1_000_000_007, 2_147_483_647] {
            for c in 1..200i64 {
                if legendre(c, p).is_plus() {
                    let r = sqrt_mod_p(c, p).unwrap();
                    assert_eq!(mul_mod(r, r, p), c as u64);
                    assert!(r <= p - r);
                }
            }
        }
    }

    #[test]
    fn eta_base_examples() {
        assert_eq!(eta_base(2, 7, 3), CharSign::Plus);
        assert_eq!(eta_base(2, 5, 2), CharSign::Plus);
        assert_eq!(eta_base(-2, 5, 2), CharSign::Plus);
        assert_eq!(eta_base(2, 5, 5), CharSign::Minus);
        assert_eq!(eta_base(-7, 7, 4), CharSign::Zero);
    }

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2_147_483_647).is_ok());
        assert!(PrimeField::new(2_147_483_659).is_err());
        assert!(PrimeField::with_cap(101, 100).is_err());
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "{n}");
        }
    }

    #[test]
    fn char_sign_algebra() {
        use CharSign::*;
        assert_eq!(Minus * Minus, Plus);
        assert_eq!(Minus * Zero, Zero);
        assert_eq!(-Plus, Minus);
    }
}
