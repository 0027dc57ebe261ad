//! Brute-force ground truth over an explicit `F_{p^n}`.
//!
//! Elements are handled by their base-`p` index (see [`FieldCtx::index`]).
//! Addition works digit by digit on indices; multiplication goes through
//! discrete-log tables built from a primitive element. The direct counters
//! [`count_nb`] and [`count_gb_roots`] skip the tables and use the field
//! arithmetic of [`FieldCtx`] instead, so the two routes can check each
//! other.

use num_bigint::{BigUint, ToBigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{CharSign, FieldCtx, FieldElement};
use crate::spectrum::{Method, QuadrupleCountM, Spectrum, SpectrumReport};

const CHUNK: u64 = 1 << 15;

fn chunks(q: u64) -> impl ParallelIterator<Item = std::ops::Range<u64>> {
    (0..q.div_ceil(CHUNK))
        .into_par_iter()
        .map(move |c| c * CHUNK..((c + 1) * CHUNK).min(q))
}

/// Digit-wise arithmetic on element indices.
#[derive(Clone, Copy, Debug)]
struct Digits {
    p: u64,
    n: usize,
}

impl Digits {
    fn add(self, mut a: u64, mut b: u64) -> u64 {
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (mut r, mut place) = (0, 1);
        for _ in 0..self.n {
            r += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        r
    }

    fn neg(self, mut a: u64) -> u64 {
        let (mut r, mut place) = (0, 1);
        for _ in 0..self.n {
            r += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        r
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Index of `x + 1`: only the constant digit moves.
    fn inc(self, x: u64) -> u64 {
        if x % self.p == self.p - 1 {
            x + 1 - self.p
        } else {
            x + 1
        }
    }

    fn constant(self, c: i64) -> u64 {
        c.rem_euclid(self.p as i64) as u64
    }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= m {
        if m % f == 0 {
            out.push(f);
            while m % f == 0 {
                m /= f;
            }
        }
        f += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Smallest-index element of multiplicative order `q - 1`.
pub fn primitive_element(ctx: &FieldCtx) -> FieldElement {
    let q = ctx.size();
    let factors = prime_factors(q - 1);
    let one = ctx.one();
    (1..q)
        .map(|i| ctx.from_index(i))
        .find(|g| factors.iter().all(|r| ctx.pow_u64(g, (q - 1) / r) != one))
        .expect("the multiplicative group is cyclic")
}

fn table_size(ctx: &FieldCtx) -> Result<()> {
    if ctx.size() > u32::MAX as u64 {
        return Err(Error::CapExceeded {
            order: ctx.order().to_string(),
            cap: u32::MAX as u64,
        });
    }
    Ok(())
}

/// `exp[k] = idx(g^k)` and its inverse over the nonzero indices.
#[derive(Clone, Debug)]
pub struct LogTables {
    generator: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl LogTables {
    pub fn new(ctx: &FieldCtx) -> Result<Self> {
        table_size(ctx)?;
        let q = ctx.size();
        let g = primitive_element(ctx);
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = ctx.one();
        for k in 0..q - 1 {
            let i = ctx.index(&cur);
            exp.push(i as u32);
            log[i as usize] = k as u32;
            cur = ctx.mul(&cur, &g);
        }
        debug_assert_eq!(cur, ctx.one());
        Ok(LogTables {
            generator: ctx.index(&g),
            exp,
            log,
        })
    }

    /// Index of the primitive element the tables were built from.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    fn order(&self) -> u64 {
        self.exp.len() as u64
    }

    /// `log_g` of a nonzero index.
    pub fn log(&self, idx: u64) -> u64 {
        debug_assert!(idx != 0);
        self.log[idx as usize] as u64
    }

    pub fn exp(&self, k: u64) -> u64 {
        self.exp[(k % self.order()) as usize] as u64
    }

    /// Quadratic character read off the parity of the discrete log.
    pub fn eta(&self, idx: u64) -> CharSign {
        match idx {
            0 => CharSign::Zero,
            _ if self.log(idx) % 2 == 0 => CharSign::Plus,
            _ => CharSign::Minus,
        }
    }
}

fn reduced_exponent(ctx: &FieldCtx, d: &BigUint) -> Result<u64> {
    if d.is_zero() {
        return Err(Error::UnsupportedInput("exponent must be positive".into()));
    }
    let w = ctx.size() - 1;
    let e = (d % w).to_u64().unwrap();
    // x^(k(q-1)) is 1 on nonzero x and 0 at 0, same as x^(q-1).
    Ok(if e == 0 { w } else { e })
}

/// `pow[idx(x)] = idx(x^d)` for every `x`.
#[derive(Clone, Debug)]
pub struct PowerTable {
    pow: Vec<u32>,
    generator: Option<u64>,
}

impl PowerTable {
    /// Fills the table from log tables: `pow[g^k] = g^(kd)`.
    pub fn new(ctx: &FieldCtx, logs: &LogTables, d: &BigUint) -> Result<Self> {
        let e = reduced_exponent(ctx, d)?;
        let w = ctx.size() - 1;
        let mut pow = vec![0u32; ctx.size() as usize];
        for k in 0..w {
            pow[logs.exp(k) as usize] = logs.exp(((k as u128 * e as u128) % w as u128) as u64) as u32;
        }
        Ok(PowerTable {
            pow,
            generator: Some(logs.generator()),
        })
    }

    /// Square-and-multiply on every element; no primitive element needed.
    pub fn by_exponentiation(ctx: &FieldCtx, d: &BigUint) -> Result<Self> {
        table_size(ctx)?;
        let e = reduced_exponent(ctx, d)?;
        let pow = (0..ctx.size())
            .into_par_iter()
            .map(|i| ctx.index(&ctx.pow_u64(&ctx.from_index(i), e)) as u32)
            .collect();
        Ok(PowerTable {
            pow,
            generator: None,
        })
    }

    pub fn get(&self, idx: u64) -> u64 {
        self.pow[idx as usize] as u64
    }

    pub fn generator(&self) -> Option<u64> {
        self.generator
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.pow
    }
}

/// `counts[idx(b)] = N(b)`, the number of `x` with `(x+1)^d - x^d = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffHistogram {
    counts: Vec<u32>,
}

impl DiffHistogram {
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn get(&self, idx: u64) -> u32 {
        self.counts[idx as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// `ω_i = #{b : N(b) = i}` for `0 <= i <= max N(b)`.
    pub fn spectrum(&self) -> Spectrum {
        let max = self.counts.iter().copied().max().unwrap_or(0) as usize;
        let mut omega = vec![0u64; max + 1];
        for &c in &self.counts {
            omega[c as usize] += 1;
        }
        Spectrum::from_u64s(&omega)
    }
}

fn merge(mut a: Vec<u32>, b: Vec<u32>) -> Vec<u32> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Precomputed tables for one field, shared by the table-based counters.
#[derive(Clone, Debug)]
pub struct Oracle {
    ctx: FieldCtx,
    digits: Digits,
    logs: LogTables,
}

impl Oracle {
    pub fn new(ctx: &FieldCtx) -> Result<Self> {
        Ok(Oracle {
            ctx: ctx.clone(),
            digits: Digits {
                p: ctx.p(),
                n: ctx.degree(),
            },
            logs: LogTables::new(ctx)?,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn logs(&self) -> &LogTables {
        &self.logs
    }

    pub fn power_table(&self, d: &BigUint) -> Result<PowerTable> {
        PowerTable::new(&self.ctx, &self.logs, d)
    }

    pub fn histogram(&self, table: &PowerTable) -> DiffHistogram {
        let q = self.ctx.size();
        let pow = table.as_slice();
        let dg = self.digits;
        let counts = chunks(q)
            .fold(
                || vec![0u32; q as usize],
                |mut h, r| {
                    for x in r {
                        let b = dg.sub(pow[dg.inc(x) as usize] as u64, pow[x as usize] as u64);
                        h[b as usize] += 1;
                    }
                    h
                },
            )
            .reduce(|| vec![0u32; q as usize], merge);
        DiffHistogram { counts }
    }

    pub fn diff_histogram(&self, d: &BigUint) -> Result<DiffHistogram> {
        Ok(self.histogram(&self.power_table(d)?))
    }

    /// `T_b` for every `b` at once. Each `x ∉ {0, -1, -1/2}` is a root of
    /// exactly one `g_b`, namely `b = -(2x+1) / (x^2 (x+1)^2)`.
    pub fn gb_root_histogram(&self) -> Vec<u32> {
        let q = self.ctx.size();
        let w = q - 1;
        let (dg, logs) = (self.digits, &self.logs);
        chunks(q)
            .fold(
                || vec![0u32; q as usize],
                |mut h, r| {
                    for x in r {
                        let x1 = dg.inc(x);
                        let num = dg.add(x, x1);
                        if x == 0 || x1 == 0 || num == 0 {
                            continue;
                        }
                        let lb = logs.log(num) + w / 2 + 2 * (2 * w - logs.log(x) - logs.log(x1));
                        h[logs.exp(lb) as usize] += 1;
                    }
                    h
                },
            )
            .reduce(|| vec![0u32; q as usize], merge)
    }

    /// `|{a : η(a^2 - 4) = 1, η(-3a^2 - 4) = -1}|`.
    pub fn set_a_count(&self) -> u64 {
        let q = self.ctx.size();
        let (dg, logs) = (self.digits, &self.logs);
        let four = dg.constant(4);
        chunks(q)
            .map(|r| {
                r.filter(|&a| {
                    let sq = if a == 0 { 0 } else { logs.exp(2 * logs.log(a)) };
                    let u = dg.sub(sq, four);
                    let v = dg.sub(dg.neg(dg.add(dg.add(sq, sq), sq)), four);
                    logs.eta(u).is_plus() && logs.eta(v).is_minus()
                })
                .count() as u64
            })
            .sum()
    }

    pub fn spectrum_report(&self, d: &BigUint) -> Result<SpectrumReport> {
        self.report_from_histogram(d, &self.diff_histogram(d)?)
    }

    /// Wraps a histogram already computed for `x^d`.
    pub fn report_from_histogram(&self, d: &BigUint, hist: &DiffHistogram) -> Result<SpectrumReport> {
        let order = self.ctx.order().clone();
        let mut omega = hist.spectrum().omega().to_vec();
        if *d == &order - 3u32 {
            if omega.len() > 6 {
                return Err(Error::InvariantViolation(format!(
                    "x^(q-3) over F_{order} has differential uniformity {}",
                    omega.len() - 1
                )));
            }
            omega.resize(6, BigUint::zero());
        }
        Ok(SpectrumReport {
            p: self.ctx.p(),
            n: self.ctx.degree() as u64,
            d: d.clone(),
            order,
            method: Method::Brute,
            spectrum: Spectrum::new(omega),
            intermediates: None,
        })
    }
}

/// Differential spectrum of `x^d` over `ctx` by full enumeration. For
/// `d = q - 3` the result is padded to six entries.
pub fn brute_spectrum(ctx: &FieldCtx, d: &BigUint) -> Result<SpectrumReport> {
    Oracle::new(ctx)?.spectrum_report(d)
}

/// `N(b)` by evaluating `(x+1)^d - x^d` at every `x`.
pub fn count_nb(ctx: &FieldCtx, b: &FieldElement, d: &BigUint) -> Result<u64> {
    let e = reduced_exponent(ctx, d)?;
    let one = ctx.one();
    Ok(chunks(ctx.size())
        .map(|r| {
            r.filter(|&i| {
                let x = ctx.from_index(i);
                let y = ctx.sub(&ctx.pow_u64(&ctx.add(&x, &one), e), &ctx.pow_u64(&x, e));
                &y == b
            })
            .count() as u64
        })
        .sum())
}

/// Distinct roots of `g_b(x) = x^4 + 2x^3 + x^2 + 2b^{-1}x + b^{-1}` in `ctx`.
pub fn count_gb_roots(ctx: &FieldCtx, b: &FieldElement) -> Result<u64> {
    if b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let binv = ctx.inv(b)?;
    let two_binv = ctx.add(&binv, &binv);
    let (one, two) = (ctx.one(), ctx.embed(2));
    Ok(chunks(ctx.size())
        .map(|r| {
            r.filter(|&i| {
                let x = ctx.from_index(i);
                let mut acc = ctx.add(&x, &two);
                acc = ctx.add(&ctx.mul(&acc, &x), &one);
                acc = ctx.add(&ctx.mul(&acc, &x), &two_binv);
                acc = ctx.add(&ctx.mul(&acc, &x), &binv);
                acc.is_zero()
            })
            .count() as u64
        })
        .sum())
}

/// Size of `{a : η(a^2 - 4) = 1, η(-3a^2 - 4) = -1}`.
#[allow(non_snake_case)]
pub fn count_set_A(ctx: &FieldCtx) -> Result<u64> {
    Ok(Oracle::new(ctx)?.set_a_count())
}

/// `M = (q - 1) Σ i^2 ω_i + q^2`.
pub fn m_from_spectrum(report: &SpectrumReport) -> QuadrupleCountM {
    let q = &report.order;
    QuadrupleCountM(report.spectrum.second_moment() * (q - 1u32) + q * q)
}

/// `M` by direct enumeration of `(x_1, x_2, x_3)`, with `x_4` forced.
/// Cubic in `q`; intended for fields with a few dozen elements.
pub fn count_m_direct(ctx: &FieldCtx, d: &BigUint) -> Result<QuadrupleCountM> {
    let oracle = Oracle::new(ctx)?;
    let pow = oracle.power_table(d)?;
    let dg = oracle.digits;
    let q = ctx.size();
    let mut m = 0u64;
    for x1 in 0..q {
        for x2 in 0..q {
            let s = dg.sub(x1, x2);
            let t = dg.sub(pow.get(x1), pow.get(x2));
            for x3 in 0..q {
                let x4 = dg.add(s, x3);
                if dg.add(t, pow.get(x3)) == pow.get(x4) {
                    m += 1;
                }
            }
        }
    }
    Ok(QuadrupleCountM(m.to_biguint().unwrap()))
}
