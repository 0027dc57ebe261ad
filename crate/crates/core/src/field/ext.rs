//! Explicit `F_{p^n} = F_p[α]/(f)` for brute-force work.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use smallvec::SmallVec;

use super::poly::find_irreducible;
use super::prime::{CharSign, PrimeField};
use crate::error::{Error, Result};

/// Default bound on `p^n` for explicitly constructed fields.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

/// An element `Σ coeffs[i] α^i` with every coefficient reduced mod `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: SmallVec<[u64; 4]>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// A concrete realization of `F_{p^n}`.
///
/// The modulus is the first monic irreducible in the order used by
/// [`find_irreducible`], so two contexts for the same `(p, n)` are identical.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    fp: PrimeField,
    n: usize,
    modulus: Vec<u64>,
    order: BigUint,
    size: u64,
}

impl FieldCtx {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        Self::with_cap(p, n, DEFAULT_FIELD_CAP)
    }

    /// Builds `F_{p^n}` provided `p^n <= cap`.
    pub fn with_cap(p: u64, n: u32, cap: u64) -> Result<Self> {
        let fp = PrimeField::new(p)?;
        if n == 0 {
            return Err(Error::UnsupportedInput("extension degree must be positive".into()));
        }
        let order = BigUint::from(p).pow(n);
        let size = match order.to_u64() {
            Some(q) if q <= cap => q,
            _ => {
                return Err(Error::CapExceeded {
                    order: order.to_string(),
                    cap,
                })
            }
        };
        let modulus = find_irreducible(p, n as usize);
        Ok(FieldCtx {
            fp,
            n: n as usize,
            modulus,
            order,
            size,
        })
    }

    pub fn p(&self) -> u64 {
        self.fp.p()
    }

    pub fn prime_field(&self) -> PrimeField {
        self.fp
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Monic modulus, constant term first (`degree() + 1` entries).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// `p^n` as a machine integer; always within the construction cap.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: SmallVec::from_elem(0, self.n),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.embed(1)
    }

    /// The image of an integer under `Z -> F_p -> F_{p^n}`.
    pub fn embed(&self, c: i64) -> FieldElement {
        let mut x = self.zero();
        x.coeffs[0] = self.fp.reduce(c);
        x
    }

    /// The primitive root `α` of the modulus (equal to `embed(-f_0)` when `n = 1`).
    pub fn generator_alpha(&self) -> FieldElement {
        if self.n == 1 {
            return self.embed(-(self.modulus[0] as i64));
        }
        let mut x = self.zero();
        x.coeffs[1] = 1;
        x
    }

    /// Element from coefficients (constant term first); missing entries are zero.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.n {
            return Err(Error::UnsupportedInput(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.n
            )));
        }
        let mut x = self.zero();
        for (dst, &c) in x.coeffs.iter_mut().zip(coeffs) {
            *dst = c % self.p();
        }
        Ok(x)
    }

    /// Inverse of [`FieldCtx::index`]. Panics if `idx >= p^n`.
    pub fn from_index(&self, mut idx: u64) -> FieldElement {
        assert!(idx < self.size, "index {idx} out of range");
        let p = self.p();
        let mut x = self.zero();
        for c in x.coeffs.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
        x
    }

    /// Base-`p` positional code `Σ coeffs[i] p^i`, a bijection onto `[0, p^n)`.
    pub fn index(&self, x: &FieldElement) -> u64 {
        let p = self.p();
        x.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p();
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p();
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + p - y) % p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p();
        let coeffs = a.coeffs.iter().map(|&x| (p - x) % p).collect();
        FieldElement { coeffs }
    }

    /// `c * a` for an integer constant `c`.
    pub fn scale(&self, a: &FieldElement, c: i64) -> FieldElement {
        let c = self.fp.reduce(c);
        let coeffs = a.coeffs.iter().map(|&x| self.fp.mul(x, c)).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p();
        let n = self.n;
        if n == 1 {
            return FieldElement {
                coeffs: SmallVec::from_elem(self.fp.mul(a.coeffs[0], b.coeffs[0]), 1),
            };
        }
        let mut prod: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * n - 1);
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // α^n = -(f_0 + f_1 α + ... + f_{n-1} α^{n-1}).
        for k in (n..2 * n - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            for j in 0..n {
                let m = self.modulus[j];
                if m != 0 {
                    let idx = k - n + j;
                    prod[idx] = (prod[idx] + (p - t) * m) % p;
                }
            }
        }
        FieldElement {
            coeffs: prod[..n].iter().copied().collect(),
        }
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// `x^e` for an arbitrary-precision exponent; `0^e = 0` for `e > 0` and
    /// `x^0 = 1`.
    pub fn pow(&self, x: &FieldElement, e: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    pub fn pow_u64(&self, x: &FieldElement, e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u64(x, self.size - 2))
    }

    /// Quadratic character `x^((p^n - 1) / 2)`, with `η(0) = 0`.
    pub fn eta(&self, x: &FieldElement) -> CharSign {
        if x.is_zero() {
            return CharSign::Zero;
        }
        let e = (&self.order - BigUint::one()) >> 1u32;
        let r = self.pow(x, &e);
        if r == self.one() {
            CharSign::Plus
        } else {
            debug_assert_eq!(r, self.embed(-1));
            CharSign::Minus
        }
    }

    /// Quadratic character of every element, by index, computed by squaring
    /// every element rather than by exponentiation.
    pub fn square_table(&self) -> Vec<CharSign> {
        let mut table = vec![CharSign::Minus; self.size as usize];
        table[0] = CharSign::Zero;
        for x in self.elements().skip(1) {
            let i = self.index(&self.square(&x)) as usize;
            table[i] = CharSign::Plus;
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn f9() -> FieldCtx {
        FieldCtx::new(3, 2).unwrap()
    }

    #[test]
    fn alpha_squared_in_f9() {
        let ctx = f9();
        assert_eq!(ctx.modulus(), &[1, 0, 1]);
        let a = ctx.generator_alpha();
        assert_eq!(ctx.mul(&a, &a), ctx.embed(2));
    }

    #[test]
    fn lagrange_and_inverse() {
        for (p, n) in [(3u64, 2u32), (5, 3), (7, 2), (13, 1), (3, 5)] {
            let ctx = FieldCtx::new(p, n).unwrap();
            let q1 = ctx.order() - 1u32;
            for x in ctx.elements().skip(1) {
                assert_eq!(ctx.pow(&x, &q1), ctx.one());
                assert_eq!(ctx.mul(&x, &ctx.inv(&x).unwrap()), ctx.one());
            }
            assert_eq!(ctx.inv(&ctx.zero()), Err(Error::DivisionByZero));
            assert_eq!(ctx.pow(&ctx.zero(), &BigUint::from(5u32)), ctx.zero());
            assert_eq!(ctx.pow(&ctx.embed(2), &BigUint::zero()), ctx.one());
        }
    }

    #[test]
    fn index_is_a_bijection() {
        let ctx = FieldCtx::new(5, 3).unwrap();
        for i in 0..ctx.size() {
            assert_eq!(ctx.index(&ctx.from_index(i)), i);
        }
    }

    #[test]
    fn eta_on_f9_matches_square_enumeration() {
        let ctx = f9();
        let mut squares = vec![false; 9];
        for y in ctx.elements() {
            squares[ctx.index(&ctx.square(&y)) as usize] = true;
        }
        for x in ctx.elements() {
            let expect = if x.is_zero() {
                CharSign::Zero
            } else if squares[ctx.index(&x) as usize] {
                CharSign::Plus
            } else {
                CharSign::Minus
            };
            assert_eq!(ctx.eta(&x), expect);
        }
        // α^2 = -1 is a square in F_9, and α has order 4, so it is a square too.
        assert_eq!(ctx.eta(&ctx.generator_alpha()), CharSign::Plus);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            FieldCtx::with_cap(3, 10, 1000),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(FieldCtx::new(2, 4), Err(Error::InvalidPrime { .. })));
        assert!(FieldCtx::new(3, 0).is_err());
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u64..625, b in 0u64..625, c in 0u64..625) {
            let ctx = FieldCtx::new(5, 4).unwrap();
            let (a, b, c) = (ctx.from_index(a), ctx.from_index(b), ctx.from_index(c));
            prop_assert_eq!(ctx.mul(&a, &b), ctx.mul(&b, &a));
            prop_assert_eq!(
                ctx.mul(&a, &ctx.add(&b, &c)),
                ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c))
            );
            prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
            prop_assert_eq!(ctx.add(&ctx.sub(&a, &b), &b), a.clone());
            prop_assert!(ctx.add(&a, &ctx.neg(&a)).is_zero());
        }
    }
}
