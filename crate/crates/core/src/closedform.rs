//! Closed-form differential spectrum of `x^(p^n - 3)` over `F_{p^n}`.
//!
//! The pipeline works entirely in `F_p` and the integers:
//!
//! 1. quadratic characters of a handful of constants ([`EtaProfile`]);
//! 2. `T_1`, the number of roots of `x^4 + 2x^3 + x^2 + 2x + 1`;
//! 3. `ω_5`, `ω_3`, `ω_2` from the characters, `T_1` and `λ_1`;
//! 4. `M` from `λ_2` and `T_1`;
//! 5. `ω_0`, `ω_1`, `ω_4` from the three moment identities
//!    `Σ ω_i = Σ i ω_i = q`, `Σ i^2 ω_i = (M - q^2)/(q - 1)`.
//!
//! Every division in step 5 is carried out on a single integer numerator
//! and checked for exactness, and every branch split asserts that exactly
//! one case applies. A violation means a transcription bug and surfaces as
//! an internal error instead of a wrong answer.
//!
//! [`corollary_spectrum`] evaluates the per-prime formulas for
//! `p ∈ {3, 5, 7}` directly; for `p = 5` it takes `Γ_{5,n}` from powers of
//! the Gaussian integer `-1 + 2i` rather than from the point count.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::charsum::GammaParams;
use crate::error::{Error, Result};
use crate::field::{eta_base, legendre, roots_in_extension, sqrt_mod_p, CharSign, PrimeField};
use crate::spectrum::{
    EtaProfile, Intermediates, Method, QuadrupleCountM, Spectrum, SpectrumReport,
};

/// Rejects `p = 2`, composite `p`, `n = 0` and the degenerate `(3, 1)`.
fn validate(p: u64, n: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::UnsupportedInput("characteristic 2 is out of scope".into()));
    }
    PrimeField::new(p)?;
    if n == 0 {
        return Err(Error::UnsupportedInput("n must be positive".into()));
    }
    if p == 3 && n == 1 {
        return Err(Error::UnsupportedInput(
            "p^n = 3 gives the exponent 0; the map is constant".into(),
        ));
    }
    Ok(())
}

/// `η(-1 + 2√2)` in `F_{p^n}`, or `None` when `η(2) ≠ 1` there.
///
/// If `2` is a square mod `p`, `t = -1 + 2s` lies in `F_p` (with `s` the
/// canonical root) and is a square in `F_{p^n}` iff it is one mod `p` or
/// `n` is even. Otherwise `√2 ∈ F_{p^2} \ F_p`, `n` is even, and the
/// character of `t` over `F_{p^2}` is the Legendre symbol of its norm
/// `1 - 8 = -7`; the result is `+1` iff that is `+1` or `4 | n`.
pub fn eta_sqrt2_shift(p: u64, n: u64) -> Option<CharSign> {
    let s = sqrt_mod_p(2, p).ok();
    eta_sqrt2_shift_inner(p, n, s)
}

/// Same as [`eta_sqrt2_shift`] but with the caller's choice of `√2 mod p`
/// when 2 is a square mod `p`.
pub fn eta_sqrt2_shift_with_root(p: u64, n: u64, root: u64) -> Option<CharSign> {
    debug_assert_eq!((root as u128 * root as u128) % p as u128, 2);
    eta_sqrt2_shift_inner(p, n, Some(root))
}

fn eta_sqrt2_shift_inner(p: u64, n: u64, root: Option<u64>) -> Option<CharSign> {
    if eta_base(2, p, n) != CharSign::Plus {
        return None;
    }
    match legendre(2, p) {
        CharSign::Plus => {
            let s = root.expect("2 is a square mod p");
            let t = (2 * s as i64 - 1).rem_euclid(p as i64);
            Some(eta_base(t, p, n))
        }
        _ => {
            debug_assert!(n % 2 == 0);
            let norm = legendre(-7, p);
            Some(if norm == CharSign::Plus || n % 4 == 0 {
                CharSign::Plus
            } else {
                norm
            })
        }
    }
}

/// `η(-1 + 2√2)` by root existence: `+1` iff `x^4 + 2x^2 - 7` has a root in
/// `F_{p^n}`. All roots live in `F_{p^4}`, so only `gcd(n, 4)` matters.
///
/// Only meaningful when `η(2) = η(-7) = 1`; then `-1 ± 2√2` have the same
/// character and a root of either quartic factor decides it.
pub fn eta_sqrt2_shift_by_roots(p: u64, n: u64) -> Option<CharSign> {
    if eta_base(2, p, n) != CharSign::Plus {
        return None;
    }
    let f = [(p - 7 % p) % p, 0, 2 % p, 0, 1];
    let k = n.gcd(&4) as usize;
    Some(if roots_in_extension(&f, p, k) > 0 {
        CharSign::Plus
    } else {
        CharSign::Minus
    })
}

impl EtaProfile {
    pub fn new(p: u64, n: u64) -> Result<Self> {
        PrimeField::new(p)?;
        let e = |c| eta_base(c, p, n);
        Ok(EtaProfile {
            p,
            n,
            eta2: e(2),
            etam7: e(-7),
            etam1: e(-1),
            etam3: e(-3),
            eta6: e(6),
            etam2: e(-2),
            eta_sqrt2_shift: eta_sqrt2_shift(p, n),
        })
    }

    fn p7(&self) -> bool {
        self.p == 7
    }

    /// `η(2) = η(-7) = η(-1 + 2√2) = 1`.
    fn all_shift_conditions(&self) -> bool {
        self.eta2.is_plus() && self.etam7.is_plus() && self.eta_sqrt2_shift == Some(CharSign::Plus)
    }

    /// `η(2) = 1` and `η(-7) = -1`.
    fn c1(&self) -> bool {
        self.eta2.is_plus() && self.etam7.is_minus()
    }

    /// `η(-3) = η(6) = 1` and `p ≠ 7`.
    fn c2(&self) -> bool {
        self.etam3.is_plus() && self.eta6.is_plus() && !self.p7()
    }
}

/// Exactly one guard must hold; returns its index.
fn one_hot(guards: &[bool], what: &'static str, p: u64, n: u64) -> Result<usize> {
    let mut hits = guards.iter().enumerate().filter(|(_, &g)| g).map(|(i, _)| i);
    match (hits.next(), hits.next()) {
        (Some(i), None) => Ok(i),
        _ => Err(Error::BranchNotExhaustive { what, p, n }),
    }
}

fn t1_from_profile(eta: &EtaProfile) -> Result<u8> {
    let (p, n) = (eta.p, eta.n);
    let shift_minus = eta.eta_sqrt2_shift == Some(CharSign::Minus);
    let guards = [
        eta.eta2.is_minus() || (eta.eta2.is_plus() && eta.etam7.is_plus() && shift_minus),
        eta.p7() && n % 2 == 1,
        eta.c1(),
        eta.p7() && n % 2 == 0,
        eta.all_shift_conditions(),
    ];
    Ok(one_hot(&guards, "T_1", p, n)? as u8)
}

/// Number of roots of `x^4 + 2x^3 + x^2 + 2x + 1` in `F_{p^n}`.
pub fn t1(p: u64, n: u64) -> Result<u8> {
    validate(p, n)?;
    t1_from_profile(&EtaProfile::new(p, n)?)
}

fn omega5_from_profile(eta: &EtaProfile, t1: u8) -> Result<u8> {
    let w5 = if eta.all_shift_conditions() { 2 } else { 0 };
    if (w5 == 2) != (t1 == 4) {
        return Err(Error::InvariantViolation(format!(
            "ω_5 = {w5} but T_1 = {t1} for p = {}, n = {}",
            eta.p, eta.n
        )));
    }
    Ok(w5)
}

/// `ω_5 ∈ {0, 2}`.
pub fn omega5(p: u64, n: u64) -> Result<u8> {
    validate(p, n)?;
    let eta = EtaProfile::new(p, n)?;
    omega5_from_profile(&eta, t1_from_profile(&eta)?)
}

/// `ω_3` from the indicator product
/// `η(7)^2 η(3)^2 / 2 · ((1+η(2))(1-η(-7)) + (1+η(-2))(1+η(-3)))`.
pub fn omega3_product_form(eta: &EtaProfile) -> u8 {
    let (e2, em7, em2, em3) = (
        eta.eta2.value(),
        eta.etam7.value(),
        eta.etam2.value(),
        eta.etam3.value(),
    );
    let indicator = em7 * em7 * em3 * em3;
    let twice = indicator * ((1 + e2) * (1 - em7) + (1 + em2) * (1 + em3));
    debug_assert!(twice % 2 == 0);
    (twice / 2) as u8
}

fn omega3_from_profile(eta: &EtaProfile) -> Result<u8> {
    let w3 = 2 * (eta.c1() as u8 + eta.c2() as u8);
    let alt = omega3_product_form(eta);
    if w3 != alt {
        return Err(Error::InvariantViolation(format!(
            "ω_3 case split gives {w3}, product form gives {alt} for p = {}, n = {}",
            eta.p, eta.n
        )));
    }
    Ok(w3)
}

/// `ω_3 ∈ {0, 2, 4}`: two for each of the conditions C1, C2 that holds.
pub fn omega3(p: u64, n: u64) -> Result<u8> {
    validate(p, n)?;
    omega3_from_profile(&EtaProfile::new(p, n)?)
}

fn exact_div(num: &BigInt, den: &BigInt, what: &'static str, p: u64, n: u64) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::DivisibilityViolation { what, p, n });
    }
    Ok(q)
}

fn nonnegative(v: BigInt, what: &str) -> Result<BigUint> {
    v.to_biguint()
        .ok_or_else(|| Error::InvariantViolation(format!("{what} is negative")))
}

/// `4A = q - 5 - λ_1 - η(-3) + 2η(-1)`; `A` is the size of
/// `{a : η(a^2 - 4) = 1, η(-3a^2 - 4) = -1}` for `p >= 5`.
pub fn set_a_size(p: u64, n: u64, lambda1: &BigInt) -> Result<BigInt> {
    let eta = EtaProfile::new(p, n)?;
    let q = BigInt::from(p).pow(n as u32);
    let four_a = q - 5 - lambda1 - eta.etam3.value() + 2 * eta.etam1.value();
    exact_div(&four_a, &BigInt::from(4), "A", p, n)
}

fn omega2_from_parts(eta: &EtaProfile, lambda1: &BigInt) -> Result<BigUint> {
    let (p, n) = (eta.p, eta.n);
    let q = BigInt::from(p).pow(n as u32);
    let guards = [
        p == 3 && n % 2 == 0,
        p == 3 && n % 2 == 1,
        eta.p7() && n % 2 == 1,
        eta.c1(),
    ];
    let fired: Vec<usize> = (0..guards.len()).filter(|&i| guards[i]).collect();
    if fired.len() > 1 {
        return Err(Error::BranchNotExhaustive { what: "ω_2", p, n });
    }
    let w2 = match fired.first() {
        Some(0) => BigInt::zero(),
        Some(1) => exact_div(&(q - 3), &BigInt::from(2), "ω_2", p, n)?,
        Some(2) => set_a_size(p, n, lambda1)? + 2,
        Some(3) => set_a_size(p, n, lambda1)? - 2,
        _ => set_a_size(p, n, lambda1)?,
    };
    nonnegative(w2, "ω_2")
}

/// `ω_2`.
pub fn omega2(p: u64, n: u64) -> Result<BigUint> {
    validate(p, n)?;
    let eta = EtaProfile::new(p, n)?;
    omega2_from_parts(&eta, &crate::charsum::lambda1(p, n)?)
}

fn big_m_from_parts(eta: &EtaProfile, lambda2: &BigInt, t1: u8) -> Result<QuadrupleCountM> {
    let q = BigInt::from(eta.p).pow(eta.n as u32);
    let (em1, em3) = (eta.etam1.value(), eta.etam3.value());
    let bracket = 3 * &q + lambda2 + 4 * i64::from(t1) - 4 - 2 * em1 - em3 * (2 + em3);
    let m = 1 + (q - 1) * bracket;
    Ok(QuadrupleCountM(nonnegative(m, "M")?))
}

/// `M = 1 + (q-1)[3q + λ_2 + 4T_1 - 4 - 2η(-1) - η(-3)(2 + η(-3))]`.
pub fn big_m(p: u64, n: u64) -> Result<QuadrupleCountM> {
    validate(p, n)?;
    let eta = EtaProfile::new(p, n)?;
    big_m_from_parts(&eta, &crate::charsum::lambda2(p, n)?, t1_from_profile(&eta)?)
}

/// Solves the moment system for `ω_0, ω_1, ω_4`.
fn solve_remaining(
    p: u64,
    n: u64,
    m: &BigUint,
    w2: &BigUint,
    w3: u8,
    w5: u8,
) -> Result<(BigUint, BigUint, BigUint)> {
    let q = BigInt::from(p).pow(n as u32);
    let w = &q - 1;
    let m = BigInt::from(m.clone());
    let w2 = BigInt::from(w2.clone());
    let (w3, w5) = (BigInt::from(w3), BigInt::from(w5));
    let q2 = &q * &q;
    let k = &m - 2 * &q2 + &q;

    let num0 = &k + 2 * &w * &w2 + 2 * &w * &w3 - 4 * &w * &w5;
    let num1 = -&m + 5 * &q2 - 4 * &q - 4 * &w * &w2 - 3 * &w * &w3 + 5 * &w * &w5;
    let num4 = &k - 2 * &w * &w2 - 6 * &w * &w3 - 20 * &w * &w5;

    let w0 = exact_div(&num0, &(4 * &w), "ω_0", p, n)?;
    let w1 = exact_div(&num1, &(3 * &w), "ω_1", p, n)?;
    let w4 = exact_div(&num4, &(12 * &w), "ω_4", p, n)?;
    Ok((
        nonnegative(w0, "ω_0")?,
        nonnegative(w1, "ω_1")?,
        nonnegative(w4, "ω_4")?,
    ))
}

fn check_moments(spectrum: &Spectrum, q: &BigUint, m: Option<&BigUint>) -> Result<()> {
    if !spectrum.satisfies_counting_identities(q) {
        return Err(Error::InvariantViolation(format!(
            "{spectrum} does not sum to {q}"
        )));
    }
    if let Some(m) = m {
        let lhs = spectrum.second_moment() * (q - 1u32);
        if &lhs + q * q != *m {
            return Err(Error::InvariantViolation(format!(
                "second moment of {spectrum} disagrees with M = {m}"
            )));
        }
    }
    Ok(())
}

fn exponent(q: &BigUint) -> BigUint {
    q - 3u32
}

/// The full closed-form pipeline. Works for any odd prime `p < 2^31` and any
/// `n`, with `p^n > 3`.
pub fn closed_spectrum(p: u64, n: u64) -> Result<SpectrumReport> {
    validate(p, n)?;
    let eta = EtaProfile::new(p, n)?;
    let (curve_trace, gamma, lambda1, lambda2) = if p == 3 {
        (
            None,
            None,
            crate::charsum::lambda1(p, n)?,
            crate::charsum::lambda2(p, n)?,
        )
    } else {
        let params = GammaParams::new(p)?;
        let g = params.gamma(n);
        let l1 = &g - eta.etam3.value();
        let l2 = &g - 1;
        (Some(params.trace()), Some(g), l1, l2)
    };

    let t1 = t1_from_profile(&eta)?;
    let omega5 = omega5_from_profile(&eta, t1)?;
    let omega3 = omega3_from_profile(&eta)?;
    let omega2 = omega2_from_parts(&eta, &lambda1)?;
    let m = big_m_from_parts(&eta, &lambda2, t1)?;
    let (w0, w1, w4) = solve_remaining(p, n, &m.0, &omega2, omega3, omega5)?;

    let order = BigUint::from(p).pow(n as u32);
    let spectrum = Spectrum::new(vec![
        w0,
        w1,
        omega2.clone(),
        BigUint::from(omega3),
        w4,
        BigUint::from(omega5),
    ]);
    check_moments(&spectrum, &order, Some(&m.0))?;
    if !m.is_one_mod(&order) {
        return Err(Error::InvariantViolation(format!("M = {m} is not 1 mod q - 1")));
    }

    Ok(SpectrumReport {
        p,
        n,
        d: exponent(&order),
        order,
        method: Method::Closed,
        spectrum,
        intermediates: Some(Intermediates {
            curve_trace,
            gamma,
            lambda1,
            lambda2,
            t1,
            omega5,
            omega3,
            omega2,
            m,
            eta,
        }),
    })
}

/// `Γ_{5,n} = -2 Re((-1 + 2i)^n)`, by Gaussian-integer powering.
pub fn gamma_5_gaussian(n: u64) -> BigInt {
    let (mut re, mut im) = (BigInt::from(1), BigInt::zero());
    let (br, bi) = (BigInt::from(-1), BigInt::from(2));
    for _ in 0..n {
        let nr = &re * &br - &im * &bi;
        let ni = &re * &bi + &im * &br;
        re = nr;
        im = ni;
    }
    -2 * re
}

/// Per-prime formulas for `p ∈ {3, 5, 7}`, evaluated directly.
pub fn corollary_spectrum(p: u64, n: u64) -> Result<SpectrumReport> {
    if !matches!(p, 3 | 5 | 7) {
        return Err(Error::UnsupportedInput(format!(
            "per-prime formulas exist for p = 3, 5, 7 only, not {p}"
        )));
    }
    validate(p, n)?;
    let q = BigInt::from(p).pow(n as u32);
    let div = |num: BigInt, den: i64, what| exact_div(&num, &BigInt::from(den), what, p, n);
    let zero = BigInt::zero;
    let omega: [BigInt; 6] = match p {
        3 => {
            let q_over_3 = BigInt::from(3).pow(n as u32 - 1);
            if n % 2 == 1 {
                let half = div(&q - 3, 2, "ω_0")?;
                [half.clone(), 3.into(), half, zero(), zero(), zero()]
            } else if n % 4 == 2 {
                [
                    div(&q - 9, 4, "ω_0")?,
                    2 * &q_over_3 + 3,
                    zero(),
                    zero(),
                    div(&q_over_3 - 3, 4, "ω_4")?,
                    zero(),
                ]
            } else {
                [
                    div(&q - 1, 4, "ω_0")?,
                    2 * &q_over_3 + 1,
                    zero(),
                    zero(),
                    div(&q_over_3 - 11, 4, "ω_4")?,
                    2.into(),
                ]
            }
        }
        5 => {
            let g = gamma_5_gaussian(n);
            let w2 = div(&q - &g - 3, 4, "ω_2")?;
            let (c0, c1, w3, c4, w5) = match n % 4 {
                1 | 3 => (17, 10, 0, 11, 0),
                2 => (17, 8, 2, 43, 0),
                _ => (1, 2, 2, 91, 2),
            };
            [
                div(3 * &q + &g - c0, 8, "ω_0")?,
                div(&q + c1, 3, "ω_1")?,
                w2,
                w3.into(),
                div(&q + 3 * &g - c4, 24, "ω_4")?,
                w5.into(),
            ]
        }
        _ => {
            let w1 = div(&q + 2, 3, "ω_1")?;
            if n % 2 == 1 {
                [
                    div(3 * &q - 5, 8, "ω_0")?,
                    w1,
                    div(&q + 1, 4, "ω_2")?,
                    zero(),
                    div(&q - 7, 24, "ω_4")?,
                    zero(),
                ]
            } else {
                let s = BigInt::from(-7).pow(n as u32 / 2);
                [
                    div(3 * &q - 2 * &s - 1, 8, "ω_0")?,
                    w1,
                    div(&q + 2 * &s - 3, 4, "ω_2")?,
                    zero(),
                    div(&q - 6 * &s + 5, 24, "ω_4")?,
                    zero(),
                ]
            }
        }
    };
    let omega = omega
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            if w.sign() == Sign::Minus {
                Err(Error::InvariantViolation(format!("ω_{i} = {w} is negative")))
            } else {
                Ok(w.abs().to_biguint().unwrap())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let order = BigUint::from(p).pow(n as u32);
    let spectrum = Spectrum::new(omega);
    check_moments(&spectrum, &order, None)?;
    Ok(SpectrumReport {
        p,
        n,
        d: exponent(&order),
        order,
        method: Method::Corollary,
        spectrum,
        intermediates: None,
    })
}
