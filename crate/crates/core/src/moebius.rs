//! `S` as a generating function on the divisor lattice.
//!
//! The Möbius inverse `s(n) = Σ_{d|n} μ(d) S(n/d)` satisfies
//! `Σ_{d|n} s(d) = S(n)`. [`s_inversion`] evaluates the sum directly and is
//! the reference value. [`s_closed`] evaluates a chain classifier over the
//! prime-power parts of `n`; it does not always agree with the direct sum,
//! and [`audit_s_closed`] lists where.
//!
//! The gcd matrix `[S(gcd(i, j))]_{i,j ≤ r}` has determinant `∏_{i ≤ r} s(i)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{factorize, FactoredNat};
use crate::det::bareiss_determinant;
use crate::error::{Error, Result};
use crate::kempner::{prime_power_s, smarandache, SmarandacheCtx};
use crate::scales::{digit_sum, ScaleKind};

/// `Σ_{d|n, d squarefree} μ(d) S(n/d)`.
pub fn s_inversion(n: &FactoredNat, ctx: SmarandacheCtx) -> i64 {
    n.squarefree_divisors()
        .iter()
        .map(|(d, mu)| {
            let quotient = n.checked_div(d).expect("d divides n");
            *mu as i64 * smarandache(&quotient, ctx) as i64
        })
        .sum()
}

/// Why the chain classifier returned the value it did.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainTerminal {
    /// More primes than chain links (`t ≥ k + 1`): value 0.
    TooLarge,
    /// The last link's exponent drop leaves `S` unchanged
    /// (`σ₍[p]₎(α − 1) − σ₍[p]₎(α) = p − 1`): value 0.
    DigitDropHit,
    /// Value `(−1)^{k+1} p_k`.
    Nonzero,
}

/// The maximal prime chain built by the classifier, with its verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainTrace {
    /// `(prime, exponent)` links in chain order; the first attains `S(n)`.
    pub chain: Vec<(u64, u32)>,
    pub terminal: ChainTerminal,
    pub value: i64,
}

/// Chain classifier for `s(n)`, `n ≥ 2`.
///
/// Starts from the prime-power part attaining `S(n)`; each next link is the
/// unused part with the largest `S(pʲ^αʲ)` among those exceeding
/// `S(p_prev^{α_prev − 1})`. Ties go to the smaller prime. With `k` links and
/// `t` distinct primes the value is `0` if `t ≥ k + 1` or the last link's
/// digit drop equals `p − 1`, and `(−1)^{k+1} p_k` otherwise.
pub fn s_closed(n: &FactoredNat, ctx: SmarandacheCtx) -> Result<ChainTrace> {
    if n.is_one() {
        return Err(Error::Domain("the chain classifier needs n >= 2"));
    }
    let parts = n.factors();
    let s_full: Vec<u64> = parts.iter().map(|&(p, e)| prime_power_s(p, e as u64, ctx)).collect();
    let s_less: Vec<u64> = parts
        .iter()
        .map(|&(p, e)| prime_power_s(p, e as u64 - 1, ctx))
        .collect();

    let pick = |used: &[bool], floor: Option<u64>| -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in 0..parts.len() {
            if used[i] || floor.is_some_and(|f| s_full[i] <= f) {
                continue;
            }
            if best.map_or(true, |b| s_full[i] > s_full[b]) {
                best = Some(i);
            }
        }
        best
    };

    let mut used = alloc::vec![false; parts.len()];
    let mut order = Vec::new();
    let mut current = pick(&used, None).expect("n > 1 has a prime part");
    loop {
        used[current] = true;
        order.push(current);
        match pick(&used, Some(s_less[current])) {
            Some(next) => current = next,
            None => break,
        }
    }

    let k = order.len();
    let t = parts.len();
    let (p_last, e_last) = parts[*order.last().unwrap()];
    let alpha = e_last as u64;
    let drop = digit_sum(alpha - 1, p_last, ScaleKind::Generalized) as i64
        - digit_sum(alpha, p_last, ScaleKind::Generalized) as i64;
    let (terminal, value) = if t >= k + 1 {
        (ChainTerminal::TooLarge, 0)
    } else if drop == p_last as i64 - 1 {
        (ChainTerminal::DigitDropHit, 0)
    } else {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        (ChainTerminal::Nonzero, sign * p_last as i64)
    };
    Ok(ChainTrace {
        chain: order.iter().map(|&i| parts[i]).collect(),
        terminal,
        value,
    })
}

/// `F_S(n) = Σ_{d|n} S(d)`.
pub fn summatory_fs(n: &FactoredNat, ctx: SmarandacheCtx) -> u64 {
    n.divisors().iter().map(|d| smarandache(d, ctx)).sum()
}

fn gcd_matrix(offset: u64, r: usize, ctx: SmarandacheCtx) -> Vec<Vec<BigInt>> {
    let mut cache: BTreeMap<u64, BigInt> = BTreeMap::new();
    let mut entry = |g: u64| -> BigInt {
        cache
            .entry(g)
            .or_insert_with(|| {
                let f = factorize(g).expect("gcd of positive integers");
                BigInt::from(smarandache(&f, ctx))
            })
            .clone()
    };
    (1..=r as u64)
        .map(|i| {
            (1..=r as u64)
                .map(|j| entry((offset + i).gcd(&(offset + j))))
                .collect()
        })
        .collect()
}

/// `Δ(r) = det [S(gcd(i, j))]_{1 ≤ i, j ≤ r}`.
pub fn gcd_matrix_det(r: usize, ctx: SmarandacheCtx) -> BigInt {
    shifted_det(0, r, ctx)
}

/// `Δ(n, r) = det [S(gcd(n + i, n + j))]_{1 ≤ i, j ≤ r}`.
pub fn shifted_det(n: u64, r: usize, ctx: SmarandacheCtx) -> BigInt {
    bareiss_determinant(gcd_matrix(n, r, ctx))
}

/// `∏_{i ≤ r} s(i)`, the value `Δ(r)` must equal.
pub fn inversion_product(r: usize, ctx: SmarandacheCtx) -> BigInt {
    (1..=r as u64)
        .map(|i| BigInt::from(s_inversion(&factorize(i).expect("i >= 1"), ctx)))
        .product()
}

/// Smallest `r ≤ r_max` with `Δ(n, r) = 0`.
pub fn find_vanishing_r(n: u64, r_max: usize, ctx: SmarandacheCtx) -> Option<usize> {
    (1..=r_max).find(|&r| shifted_det(n, r, ctx).is_zero())
}

/// One `n` where the chain classifier disagrees with the direct inversion sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SClosedErratum {
    pub n: u64,
    pub closed: i64,
    pub inversion: i64,
}

/// Every `n` in `2..=limit` where `s_closed(n) ≠ s_inversion(n)`, ascending.
pub fn audit_s_closed(limit: u64, ctx: SmarandacheCtx) -> Vec<SClosedErratum> {
    let sieve = crate::arith::FactorSieve::new(limit as u32);
    (2..=limit)
        .filter_map(|n| {
            let f = sieve.factorize(n).expect("n >= 2");
            let closed = s_closed(&f, ctx).expect("n >= 2").value;
            let inversion = s_inversion(&f, ctx);
            (closed != inversion).then_some(SClosedErratum { n, closed, inversion })
        })
        .collect()
}
