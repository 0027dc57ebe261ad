//! Exact arithmetic in `F_p` and `F_{p^n}`, quadratic characters and
//! square roots.
//!
//! The closed-form pipeline only ever touches `F_p` (through
//! [`legendre`], [`sqrt_mod_p`] and [`eta_base`]); the brute-force oracle
//! builds `F_{p^n}` explicitly through [`FieldCtx`].

mod ext;
mod poly;
mod prime;

pub use ext::{FieldCtx, FieldElement, DEFAULT_FIELD_CAP};
pub use poly::{find_irreducible, is_irreducible, roots_in_extension};
pub use prime::{
    eta_base, is_prime, jacobi, legendre, odd_primes, sqrt_mod_p, CharSign, PrimeField,
    DEFAULT_PRIME_CAP,
};
