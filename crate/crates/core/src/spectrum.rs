//! Differential spectra and the reports that carry them.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::CharSign;

/// `[ω_0, ω_1, ...]` where `ω_i` counts the `b` hit exactly `i` times by
/// the derivative `x -> (x+1)^d - x^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spectrum {
    omega: Vec<BigUint>,
}

impl Spectrum {
    pub fn new(omega: Vec<BigUint>) -> Self {
        Spectrum { omega }
    }

    pub fn from_u64s(omega: &[u64]) -> Self {
        Spectrum::new(omega.iter().map(|&w| BigUint::from(w)).collect())
    }

    pub fn omega(&self) -> &[BigUint] {
        &self.omega
    }

    /// `ω_i`, zero past the stored length.
    pub fn get(&self, i: usize) -> BigUint {
        self.omega.get(i).cloned().unwrap_or_default()
    }

    /// Differential uniformity: the largest `i` with `ω_i > 0`.
    pub fn delta(&self) -> usize {
        self.omega.iter().rposition(|w| !w.is_zero()).unwrap_or(0)
    }

    /// `Σ ω_i`.
    pub fn total(&self) -> BigUint {
        self.omega.iter().sum()
    }

    /// `Σ i ω_i`.
    pub fn first_moment(&self) -> BigUint {
        self.weighted(|i| i)
    }

    /// `Σ i^2 ω_i`.
    pub fn second_moment(&self) -> BigUint {
        self.weighted(|i| i * i)
    }

    fn weighted(&self, f: impl Fn(u64) -> u64) -> BigUint {
        self.omega
            .iter()
            .enumerate()
            .map(|(i, w)| w * f(i as u64))
            .sum()
    }

    /// `Σ ω_i = Σ i ω_i = q`, which holds for every power map over `F_q`.
    pub fn satisfies_counting_identities(&self, q: &BigUint) -> bool {
        &self.total() == q && &self.first_moment() == q
    }

    /// Entrywise equality, treating missing trailing entries as zero.
    pub fn same_counts(&self, other: &Spectrum) -> bool {
        let len = self.omega.len().max(other.omega.len());
        (0..len).all(|i| self.get(i) == other.get(i))
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, w) in self.omega.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]")
    }
}

/// `M`, the number of `(x_1, x_2, x_3, x_4)` with
/// `x_1 - x_2 + x_3 - x_4 = 0` and `x_1^d - x_2^d + x_3^d - x_4^d = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadrupleCountM(pub BigUint);

impl QuadrupleCountM {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// `M ≡ 1 (mod q - 1)`.
    pub fn is_one_mod(&self, q: &BigUint) -> bool {
        let w = q - 1u32;
        w.is_zero() || self.0.mod_floor(&w).is_one()
    }
}

impl fmt::Display for QuadrupleCountM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Where a report's spectrum came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Character values, `T_1`, `M`, then the linear solve for `ω_0, ω_1, ω_4`.
    Closed,
    /// Direct per-prime formulas for `p ∈ {3, 5, 7}`.
    Corollary,
    /// Enumeration of the derivative over an explicit field.
    Brute,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Corollary => "corollary",
            Method::Brute => "brute",
        }
    }
}

/// Quadratic characters of the constants the closed form branches on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EtaProfile {
    pub p: u64,
    pub n: u64,
    pub eta2: CharSign,
    pub etam7: CharSign,
    pub etam1: CharSign,
    pub etam3: CharSign,
    pub eta6: CharSign,
    pub etam2: CharSign,
    /// `η(-1 + 2√2)`; `None` unless `η(2) = 1`.
    pub eta_sqrt2_shift: Option<CharSign>,
}

/// Every quantity the closed form passes through on the way to a spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intermediates {
    /// `a = N_p - p`; absent for `p = 3`.
    pub curve_trace: Option<i64>,
    /// `Γ_{p,n}`; absent for `p = 3`.
    pub gamma: Option<BigInt>,
    pub lambda1: BigInt,
    pub lambda2: BigInt,
    pub t1: u8,
    pub omega5: u8,
    pub omega3: u8,
    pub omega2: BigUint,
    pub m: QuadrupleCountM,
    pub eta: EtaProfile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub p: u64,
    pub n: u64,
    /// The exponent.
    pub d: BigUint,
    /// `q = p^n`.
    pub order: BigUint,
    pub method: Method,
    pub spectrum: Spectrum,
    /// Present for closed-form reports.
    pub intermediates: Option<Intermediates>,
}

impl SpectrumReport {
    pub fn omega(&self, i: usize) -> BigUint {
        self.spectrum.get(i)
    }

    pub fn delta(&self) -> usize {
        self.spectrum.delta()
    }
}
