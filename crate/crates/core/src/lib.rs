//! Differential spectrum of the power map `x ↦ x^(p^n - 3)` over `F_{p^n}`,
//! `p` odd.
//!
//! [`closed_spectrum`] computes `[ω_0, ..., ω_5]` from a few quadratic
//! characters and one elliptic-curve point count over `F_p`, so it runs in
//! time polynomial in `log p` and `n`. The [`oracle`] module recomputes the
//! same spectrum by enumerating an explicit field, and [`verify`] runs the
//! two against each other.
//!
//! ```
//! let r = diffspec::closed_spectrum(5, 4).unwrap();
//! assert_eq!(r.spectrum.to_string(), "[236, 209, 152, 2, 24, 2]");
//! assert_eq!(r.delta(), 5);
//! ```

pub mod charsum;
pub mod closedform;
mod error;
pub mod field;
pub mod oracle;
pub mod spectrum;
pub mod verify;

pub use charsum::{char_sum, gamma, lambda1, lambda2, CharSumKind, CharSumValue};
pub use closedform::{big_m, closed_spectrum, corollary_spectrum, omega2, omega3, omega5, t1};
pub use error::{Error, Result};
pub use field::{CharSign, FieldCtx, FieldElement};
pub use oracle::{brute_spectrum, count_gb_roots, count_nb, count_set_A, m_from_spectrum};
pub use spectrum::{Method, QuadrupleCountM, Spectrum, SpectrumReport};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/character-sums.md")]
    mod character_sums {}
    #[doc = include_str!("../../../book/src/quartic.md")]
    mod quartic {}
    #[doc = include_str!("../../../book/src/spectrum.md")]
    mod spectrum {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
