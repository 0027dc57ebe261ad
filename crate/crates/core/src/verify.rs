//! Cross-checks between the closed form and the oracle for one field, and
//! a sweep over every odd prime power up to a bound.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::charsum::brute_charsums;
use crate::closedform::{closed_spectrum, corollary_spectrum, set_a_size};
use crate::error::Result;
use crate::field::{is_prime, FieldCtx};
use crate::oracle::{count_gb_roots, count_nb, m_from_spectrum, DiffHistogram, Oracle};

/// Number of random `b` checked by direct enumeration in [`verify`].
pub const DEFAULT_DIRECT_SAMPLES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub p: u64,
    pub n: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }

    fn compare<T: PartialEq + fmt::Display>(&mut self, name: &'static str, closed: &T, brute: &T) {
        self.push(name, closed == brute, format!("closed {closed}, brute {brute}"));
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bad: Vec<&str> = self.failures().map(|c| c.name).collect();
        if bad.is_empty() {
            write!(f, "p={} n={}: ok ({} checks)", self.p, self.n, self.checks.len())
        } else {
            write!(f, "p={} n={}: FAILED {}", self.p, self.n, bad.join(", "))
        }
    }
}

/// Runs every check for `F_{p^n}`, building the field under `cap`.
///
/// `N(b)` is compared with `T_b` for every `b` through the oracle tables. On
/// top of that, when `direct_samples > 0`, `±1` and that many random other
/// `b` are recounted by direct enumeration.
pub fn verify(p: u64, n: u64, cap: u64, direct_samples: usize) -> Result<VerifyReport> {
    let closed = closed_spectrum(p, n)?;
    let inter = closed
        .intermediates
        .as_ref()
        .expect("closed reports carry intermediates");
    let ctx = FieldCtx::with_cap(p, n as u32, cap)?;
    let oracle = Oracle::new(&ctx)?;
    let q = ctx.size();
    let d = ctx.order() - 3u32;
    let hist = oracle.diff_histogram(&d)?;
    let brute = oracle.report_from_histogram(&d, &hist)?;
    let mut report = VerifyReport {
        p,
        n,
        checks: Vec::new(),
    };

    report.compare("spectrum", &closed.spectrum, &brute.spectrum);
    report.push(
        "moments",
        brute.spectrum.satisfies_counting_identities(ctx.order()),
        format!("brute {}", brute.spectrum),
    );

    let sums = brute_charsums(&ctx);
    if let Some(gamma) = &inter.gamma {
        report.compare("gamma", gamma, &sums.gamma);
    }
    report.compare("lambda1", &inter.lambda1, &sums.lambda1);
    report.compare("lambda2", &inter.lambda2, &sums.lambda2);

    let set_a = BigInt::from(oracle.set_a_count());
    let expect_a = if p == 3 {
        BigInt::from(closed.omega(2))
    } else {
        set_a_size(p, n, &inter.lambda1)?
    };
    report.compare("set_a", &expect_a, &set_a);

    let m_closed = &inter.m;
    let m_brute = m_from_spectrum(&brute);
    let m_moment = m_from_spectrum(&closed);
    report.push(
        "m",
        *m_closed == m_brute && *m_closed == m_moment,
        format!("closed {m_closed}, from brute {m_brute}, from closed spectrum {m_moment}"),
    );

    let t = oracle.gb_root_histogram();
    let (one, minus_one) = (ctx.index(&ctx.one()), ctx.index(&ctx.embed(-1)));
    let bad_b = (0..q)
        .filter(|&b| {
            let expect = match b {
                0 => 1,
                _ if b == one || b == minus_one => 1 + t[b as usize],
                _ => t[b as usize],
            };
            let neg = ctx.index(&ctx.neg(&ctx.from_index(b)));
            hist.get(b) != expect || hist.get(b) != hist.get(neg)
        })
        .count();
    report.push(
        "n_of_b",
        bad_b == 0 && hist.total() == q,
        format!("{bad_b} of {q} b disagree with T_b"),
    );

    let t1_direct = count_gb_roots(&ctx, &ctx.one())?;
    report.compare("t1", &u64::from(inter.t1), &t1_direct);

    if direct_samples > 0 {
        let mismatched = direct_mismatches(&ctx, &d, &hist, direct_samples)?;
        report.push(
            "n_of_b_direct",
            mismatched.0 == 0,
            format!("{} of {} sampled b disagree", mismatched.0, mismatched.1),
        );
    }

    if matches!(p, 3 | 5 | 7) {
        let cor = corollary_spectrum(p, n)?;
        report.push(
            "corollary",
            cor.spectrum == closed.spectrum,
            format!("per-prime formula {}, closed {}", cor.spectrum, closed.spectrum),
        );
    }
    Ok(report)
}

/// Checks `N(b) = T_b (+1 at b = ±1)` by direct enumeration for `±1` and
/// up to `samples` random other nonzero `b`. Returns (mismatches, checked).
fn direct_mismatches(
    ctx: &FieldCtx,
    d: &BigUint,
    hist: &DiffHistogram,
    samples: usize,
) -> Result<(usize, usize)> {
    let (p, n, q) = (ctx.p(), ctx.degree() as u64, ctx.size());
    let (one, minus_one) = (ctx.index(&ctx.one()), ctx.index(&ctx.embed(-1)));
    let mut rng = ChaCha8Rng::seed_from_u64(p.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ n);
    let pool: Vec<u64> = (1..q).filter(|&b| b != one && b != minus_one).collect();
    let mut picks: Vec<u64> = if pool.len() <= samples {
        pool
    } else {
        sample(&mut rng, pool.len(), samples)
            .into_iter()
            .map(|i| pool[i])
            .collect()
    };
    picks.extend([one, minus_one]);
    let mut mismatched = 0;
    for &b in &picks {
        let elem = ctx.from_index(b);
        let nb = count_nb(ctx, &elem, d)?;
        let tb = count_gb_roots(ctx, &elem)?;
        let shift = u64::from(b == one || b == minus_one);
        if nb != tb + shift || nb != hist.get(b) as u64 {
            mismatched += 1;
        }
    }
    Ok((mismatched, picks.len()))
}

/// `(p, n)` for every odd prime power `3 < p^n <= max_order`, by `p^n`.
pub fn odd_prime_powers(max_order: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in (3..=max_order).step_by(2).filter(|&p| is_prime(p)) {
        let mut q = p as u128;
        let mut n = 1;
        while q <= max_order as u128 {
            if q > 3 {
                out.push((q as u64, p, n));
            }
            q *= p as u128;
            n += 1;
        }
    }
    out.sort_unstable();
    out.into_iter().map(|(_, p, n)| (p, n)).collect()
}

/// Direct-enumeration sample count used by [`sweep`] for a field of order
/// `q`: about `2^13` element evaluations per field, at most 200 samples,
/// and none once `q > 2^13`.
pub fn sweep_samples(q: u64) -> usize {
    ((1u64 << 13) / q).min(DEFAULT_DIRECT_SAMPLES as u64) as usize
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub fields: usize,
    pub failed: Vec<(u64, u64)>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }
}

/// [`verify`] for every odd prime power in `(3, max_order]`, reporting each
/// field to `on_field` as it finishes.
pub fn sweep(
    max_order: u64,
    mut on_field: impl FnMut(&VerifyReport),
) -> Result<SweepSummary> {
    let mut summary = SweepSummary::default();
    for (p, n) in odd_prime_powers(max_order) {
        let q = BigUint::from(p).pow(n as u32);
        let report = verify(p, n, max_order.max(4), sweep_samples(q.try_into().unwrap()))?;
        summary.fields += 1;
        if !report.passed() {
            summary.failed.push((p, n));
        }
        on_field(&report);
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers_in_order() {
        let got = odd_prime_powers(50);
        let orders: Vec<u64> = got.iter().map(|&(p, n)| p.pow(n as u32)).collect();
        assert_eq!(orders, [5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49]);
        assert!(!got.contains(&(3, 1)));
    }

    #[test]
    fn verify_small_fields() {
        for (p, n) in [(5, 4), (7, 2), (3, 4), (3, 5), (11, 2), (13, 1), (23, 1)] {
            let r = verify(p, n, 1 << 20, 20).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn sweep_to_200() {
        let mut lines = Vec::new();
        let s = sweep(200, |r| lines.push(r.to_string())).unwrap();
        assert!(s.passed(), "{lines:?}");
        assert_eq!(s.fields, lines.len());
        assert_eq!(lines[0], "p=5 n=1: ok (11 checks)");
    }
}
