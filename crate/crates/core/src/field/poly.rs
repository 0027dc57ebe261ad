//! Dense polynomials over `F_p`, coefficients stored constant term first.
//!
//! Only what modulus selection and root-existence tests need: reduction,
//! multiplication modulo a monic polynomial, Frobenius powers of `x`, gcd.

use super::prime::{mul_mod, pow_mod};

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// `a mod f` for any nonzero `f`.
fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let df = degree(f).expect("division by the zero polynomial");
    let lead_inv = pow_mod(f[df], p - 2, p);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let t = mul_mod(r[dr], lead_inv, p);
        let shift = dr - df;
        for (i, &fc) in f[..=df].iter().enumerate() {
            let sub = mul_mod(t, fc, p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn mul_rem(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), f, p)
}

fn pow_rem(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, f, p);
        }
        b = mul_rem(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod f` for `k = 0..=k_max`, by repeated `p`-th powering.
fn frobenius_orbit(f: &[u64], p: u64, k_max: usize) -> Vec<Vec<u64>> {
    let x = rem(&[0, 1], f, p);
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(x);
    for k in 1..=k_max {
        let next = pow_rem(&out[k - 1], p, f, p);
        out.push(next);
    }
    out
}

/// Irreducibility of a monic `f` of degree `n >= 1` over `F_p`:
/// `x^(p^n) = x mod f`, and `gcd(x^(p^k) - x, f) = 1` for every `k <= n/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let orbit = frobenius_orbit(f, p, n);
    let x = &orbit[0];
    if orbit[n] != *x {
        return false;
    }
    (1..=n / 2).all(|k| degree(&gcd(&sub(&orbit[k], x, p), f, p)) == Some(0))
}

/// First monic irreducible polynomial of degree `n` over `F_p`.
///
/// Candidates `x^n + c_{n-1} x^{n-1} + ... + c_0` are scanned in
/// lexicographic order of `(c_{n-1}, ..., c_0)` with `c_0` varying fastest,
/// so the choice is stable across runs. Returns `n + 1` coefficients,
/// constant term first.
pub fn find_irreducible(p: u64, n: usize) -> Vec<u64> {
    assert!(n >= 1, "degree must be positive");
    let mut f = vec![0u64; n + 1];
    f[n] = 1;
    if n == 1 {
        return f;
    }
    loop {
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
        // Odometer increment over c_0..c_{n-1}.
        let mut i = 0;
        loop {
            assert!(i < n, "exhausted all monic polynomials of degree {n}");
            f[i] += 1;
            if f[i] < p {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Number of distinct roots of `f` in `F_{p^k}`, i.e. the degree of
/// `gcd(x^(p^k) - x, f)`. `f` must be monic.
pub fn roots_in_extension(f: &[u64], p: u64, k: usize) -> usize {
    let f = trim(f.to_vec());
    let orbit = frobenius_orbit(&f, p, k);
    let g = gcd(&sub(&orbit[k], &orbit[0], p), &f, p);
    degree(&g).unwrap_or(0)
}
