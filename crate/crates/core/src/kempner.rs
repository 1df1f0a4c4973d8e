//! `S_p(α) = S(p^α)` by four routes, `S(n)` by the max rule, and the links to
//! `φ`, `ζ` and Mangoldt's `Λ`.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::arith::{factorial_exponent, lcm_upto, FactoredNat, FactorSieve};
use crate::error::{Error, Result};
use crate::scales::{digit_sum, digits_of, read_in_standard, ScaleKind};

/// The value assigned to `S(1)`: `1` (least `m ≥ 1` with `1 | m!`) or `0`.
///
/// Both conventions occur in the literature; every evaluation of `S` takes one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SmarandacheCtx {
    s1: u8,
}

impl SmarandacheCtx {
    pub const ONE: Self = Self { s1: 1 };
    pub const ZERO: Self = Self { s1: 0 };

    pub fn new(s1: u64) -> Result<Self> {
        match s1 {
            0 => Ok(Self::ZERO),
            1 => Ok(Self::ONE),
            other => Err(Error::Convention(other)),
        }
    }

    pub fn s1(self) -> u64 {
        self.s1 as u64
    }
}

impl Default for SmarandacheCtx {
    fn default() -> Self {
        Self::ONE
    }
}

fn checked_product(a: u64, b: u64) -> u64 {
    a.checked_mul(b).expect("S_p(alpha) overflows u64")
}

/// Ground truth: least `m` with `E_p(m) ≥ α`, by binary search on the
/// monotone Legendre exponent. `α = 0` gives `0`.
pub fn sp_bruteforce(p: u64, alpha: u64) -> u64 {
    // E_p(p·α) ≥ α, so the answer lies in [0, p·α]
    let (mut lo, mut hi) = (0u64, checked_product(p, alpha));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if factorial_exponent(p, mid) >= alpha {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// `p` times the generalized-scale digits of `α` read in the standard scale.
pub fn sp_digits(p: u64, alpha: u64) -> u64 {
    checked_product(p, read_in_standard(&digits_of(alpha, p, ScaleKind::Generalized)))
}

/// `(p − 1)·α + σ₍[p]₎(α)`.
pub fn sp_formula(p: u64, alpha: u64) -> u64 {
    checked_product(p - 1, alpha) + digit_sum(alpha, p, ScaleKind::Generalized)
}

/// `p·(α − ⌊α/p⌋ + ⌊σ₍[p]₎(α)/p⌋)`.
pub fn sp_floor_formula(p: u64, alpha: u64) -> u64 {
    let sigma = digit_sum(alpha, p, ScaleKind::Generalized);
    checked_product(p, alpha - alpha / p + sigma / p)
}

/// `S(p^e)` with the `S(1)` convention applied at `e = 0`.
pub fn prime_power_s(p: u64, e: u64, ctx: SmarandacheCtx) -> u64 {
    if e == 0 {
        ctx.s1()
    } else {
        sp_formula(p, e)
    }
}

/// Outcome of checking the identity system around `x = S_p(α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub p: u64,
    pub alpha: u64,
    pub x: u64,
    /// Cleared-denominator form of the `E_p`/`σ₍ₚ₎`/`σ₍[p]₎` expression:
    /// `p·x = (p−1)²(E_p(α)+α) + (p−1)σ₍ₚ₎(α) + p·σ₍[p]₎(α)`.
    pub legendre_mix: bool,
    /// `x = p(α − ⌊α/p⌋ + ⌊σ₍[p]₎(α)/p⌋)`.
    pub floor_formula: bool,
    /// `E_p(x) ≥ α` and `E_p(x − 1) < α`.
    pub bracketing: bool,
    /// `σ₍ₚ₎(x) ≤ σ₍[p]₎(α) ≤ σ₍ₚ₎(x − 1) + 1` (membership only; not unique).
    pub digit_system: bool,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.legendre_mix && self.floor_formula && self.bracketing && self.digit_system
    }
}

/// Evaluates every identity for `(p, α)`, `α ≥ 1`, with `x` taken from the
/// brute-force route.
pub fn sp_identity_suite(p: u64, alpha: u64) -> IdentityReport {
    assert!(alpha >= 1, "alpha must be positive");
    let x = sp_bruteforce(p, alpha);
    let sigma_gen = digit_sum(alpha, p, ScaleKind::Generalized);
    let sigma_std = |v: u64| digit_sum(v, p, ScaleKind::Standard);
    let e_alpha = factorial_exponent(p, alpha) as u128;
    let (p128, x128) = (p as u128, x as u128);
    let rhs = (p128 - 1) * (p128 - 1) * (e_alpha + alpha as u128)
        + (p128 - 1) * sigma_std(alpha) as u128
        + p128 * sigma_gen as u128;
    IdentityReport {
        p,
        alpha,
        x,
        legendre_mix: p128 * x128 == rhs,
        floor_formula: sp_floor_formula(p, alpha) == x,
        bracketing: factorial_exponent(p, x) >= alpha && factorial_exponent(p, x - 1) < alpha,
        digit_system: digit_system_holds(p, alpha, x),
    }
}

/// Whether `x` satisfies `σ₍ₚ₎(x) ≤ σ₍[p]₎(α) ≤ σ₍ₚ₎(x − 1) + 1`.
pub fn digit_system_holds(p: u64, alpha: u64, x: u64) -> bool {
    if x == 0 {
        return false;
    }
    let sigma_gen = digit_sum(alpha, p, ScaleKind::Generalized);
    digit_sum(x, p, ScaleKind::Standard) <= sigma_gen
        && sigma_gen <= digit_sum(x - 1, p, ScaleKind::Standard) + 1
}

/// `S(n) = max S(pᵢ^αᵢ)`; `S(1)` comes from `ctx`.
pub fn smarandache(n: &FactoredNat, ctx: SmarandacheCtx) -> u64 {
    n.factors()
        .iter()
        .map(|&(p, e)| sp_formula(p, e as u64))
        .max()
        .unwrap_or(ctx.s1())
}

/// `(S_p(p^{α−1}), φ(p^α) + p)`; equal for every `α ≥ 2`.
pub fn phi_link(p: u64, alpha: u32) -> Result<(u64, u64)> {
    if alpha < 2 {
        return Err(Error::Domain("phi_link needs alpha >= 2"));
    }
    let inner = p.checked_pow(alpha - 1).ok_or(Error::Overflow("p^(alpha-1)"))?;
    let phi = inner.checked_mul(p - 1).ok_or(Error::Overflow("phi(p^alpha)"))?;
    Ok((sp_formula(p, inner), phi + p))
}

/// `(Σ_{k=1}^{α−1} [S_p(pᵏ) − p], p^α − p)`; equal for every `α ≥ 2`.
pub fn phi_telescope(p: u64, alpha: u32) -> Result<(u64, u64)> {
    if alpha < 2 {
        return Err(Error::Domain("phi_telescope needs alpha >= 2"));
    }
    let top = p.checked_pow(alpha).ok_or(Error::Overflow("p^alpha"))?;
    let lhs = (1..alpha).map(|k| sp_formula(p, p.pow(k)) - p).sum();
    Ok((lhs, top - p))
}

/// `Λ` in exact form: the prime `p` when `n = pⁱ`, `i ≥ 1`.
pub fn mangoldt(n: &FactoredNat) -> Option<u64> {
    match n.factors() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// `exp(Σ_{k|n} Λ(k))` as a factored product over the prime-power divisors.
pub fn mangoldt_divisor_sum(n: &FactoredNat) -> FactoredNat {
    let mut acc = FactoredNat::one();
    for d in n.divisors() {
        if let Some(p) = mangoldt(&d) {
            acc = acc.mul(&FactoredNat::prime_power(p, 1));
        }
    }
    acc
}

/// `exp Ψ(n) = ∏_{k ≤ n} exp Λ(k)`, accumulated term by term.
pub fn psi_factored(n: u64) -> FactoredNat {
    let sieve = FactorSieve::new(n as u32);
    let mut acc = FactoredNat::one();
    for k in 2..=n {
        let fk = sieve.factorize(k).expect("k >= 2");
        if let Some(p) = mangoldt(&fk) {
            acc = acc.mul(&FactoredNat::prime_power(p, 1));
        }
    }
    debug_assert_eq!(acc, lcm_upto(n));
    acc
}

/// Riemann `ζ(s)` for real `s > 1` by Euler–Maclaurin summation.
pub fn riemann_zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta needs s > 1");
    // B_2k / (2k)!
    const B_OVER_FACT: [f64; 6] = [
        1.0 / 6.0 / 2.0,
        -1.0 / 30.0 / 24.0,
        1.0 / 42.0 / 720.0,
        -1.0 / 30.0 / 40_320.0,
        5.0 / 66.0 / 3_628_800.0,
        -691.0 / 2730.0 / 479_001_600.0,
    ];
    let m = 20.0f64;
    let mut sum = 0.0;
    for n in 1..20 {
        sum += libm::pow(n as f64, -s);
    }
    sum += libm::pow(m, 1.0 - s) / (s - 1.0) + 0.5 * libm::pow(m, -s);
    // rising factorial s(s+1)…(s+2k−2) times m^{−s−2k+1}
    let mut rising = s;
    let mut power = libm::pow(m, -s - 1.0);
    for (k, coeff) in B_OVER_FACT.iter().enumerate() {
        sum += coeff * rising * power;
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        power /= m * m;
    }
    sum
}

/// Partial sum of `Σ φ(n)/nˢ` against `ζ(s−1)/ζ(s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaRatio {
    pub partial: f64,
    pub reference: f64,
    /// Upper bound on the omitted tail, `N^{2−s}/(s − 2)`.
    pub tail_bound: f64,
    /// How many `n ≤ N` had every exponent `≥ 2` and were checked against
    /// `φ(n) = ∏ (S_{pᵢ}(pᵢ^{αᵢ−1}) − pᵢ)`.
    pub rewrites_checked: u64,
    /// The `n` where that rewriting failed (expected empty).
    pub rewrite_failures: Vec<u64>,
}

impl ZetaRatio {
    pub fn within_bound(&self, slack: f64) -> bool {
        libm::fabs(self.partial - self.reference) <= self.tail_bound + slack
    }
}

pub fn zeta_ratio_partial(s: f64, n_max: u64) -> Result<ZetaRatio> {
    if !(s > 2.0) {
        return Err(Error::Domain("zeta ratio needs s > 2"));
    }
    if n_max == 0 {
        return Err(Error::Zero);
    }
    let sieve = FactorSieve::new(n_max as u32);
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    let mut rewrites_checked = 0;
    let mut rewrite_failures = Vec::new();
    for n in 1..=n_max {
        let f = sieve.factorize(n)?;
        let mut phi: u64 = 1;
        for &(p, e) in f.factors() {
            phi *= p.pow(e - 1) * (p - 1);
        }
        if n > 1 && f.factors().iter().all(|&(_, e)| e >= 2) {
            rewrites_checked += 1;
            let rewritten: u64 = f
                .factors()
                .iter()
                .map(|&(p, e)| sp_formula(p, p.pow(e - 1)) - p)
                .product();
            if rewritten != phi {
                rewrite_failures.push(n);
            }
        }
        // Kahan summation
        let term = phi as f64 * libm::pow(n as f64, -s) - carry;
        let next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    let n = n_max as f64;
    Ok(ZetaRatio {
        partial: sum,
        reference: riemann_zeta(s - 1.0) / riemann_zeta(s),
        tail_bound: libm::pow(n, 2.0 - s) / (s - 2.0),
        rewrites_checked,
        rewrite_failures,
    })
}

/// Sanity helper: `φ(n)` through the prime-power rewriting, for `n` whose
/// exponents are all at least two.
pub fn phi_via_smarandache(n: &FactoredNat) -> Option<BigUint> {
    let mut acc = BigUint::from(1u8);
    for &(p, e) in n.factors() {
        if e < 2 {
            return None;
        }
        acc *= BigUint::from(sp_formula(p, p.checked_pow(e - 1)?) - p);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{euler_phi, factorize, is_prime};

    fn f(n: u64) -> FactoredNat {
        factorize(n).unwrap()
    }

    #[test]
    fn sp_examples_all_routes() {
        for (p, alpha, want) in [(2, 6, 8), (2, 1, 2), (5, 5, 25), (3, 1, 3), (3, 4, 9), (7, 1, 7)] {
            assert_eq!(sp_bruteforce(p, alpha), want);
            assert_eq!(sp_digits(p, alpha), want);
            assert_eq!(sp_formula(p, alpha), want);
            assert_eq!(sp_floor_formula(p, alpha), want);
        }
    }

    #[test]
    fn identity_suite_examples() {
        for (p, alpha, x) in [(2, 6, 8), (2, 2, 4), (3, 4, 9)] {
            let r = sp_identity_suite(p, alpha);
            assert_eq!(r.x, x);
            assert!(r.all_pass(), "{r:?}");
        }
    }

    #[test]
    fn digit_system_is_not_unique() {
        // x = 10 satisfies the same digit system as the true value 8 for (2, 6).
        assert!(digit_system_holds(2, 6, 8));
        assert!(digit_system_holds(2, 6, 10));
        assert_eq!(sp_bruteforce(2, 6), 8);
    }

    #[test]
    fn smarandache_examples() {
        assert_eq!(smarandache(&f(6), SmarandacheCtx::ONE), 3);
        assert_eq!(smarandache(&f(16), SmarandacheCtx::ONE), 6);
        assert_eq!(smarandache(&f(1), SmarandacheCtx::ONE), 1);
        assert_eq!(smarandache(&f(1), SmarandacheCtx::ZERO), 0);
        for p in (5..200).filter(|&p| is_prime(p)) {
            assert_eq!(smarandache(&f(p), SmarandacheCtx::ONE), p);
        }
        assert_eq!(SmarandacheCtx::new(2), Err(Error::Convention(2)));
    }

    #[test]
    fn smarandache_matches_factorial_scan() {
        // least m with n | m!, tracking m! mod n
        for n in 1..=2000u64 {
            let mut m = 1u64;
            let mut fact = 1 % n;
            while fact != 0 && n > 1 {
                m += 1;
                fact = fact * m % n;
            }
            assert_eq!(smarandache(&f(n), SmarandacheCtx::ONE), m, "n={n}");
        }
    }

    #[test]
    fn phi_link_examples() {
        assert_eq!(phi_link(2, 2), Ok((4, 4)));
        assert_eq!(phi_link(2, 3), Ok((6, 6)));
        assert_eq!(phi_link(3, 2), Ok((9, 9)));
        assert!(phi_link(3, 1).is_err());
        for p in [2u64, 3, 5, 7] {
            for alpha in 2..=8 {
                let (l, r) = phi_link(p, alpha).unwrap();
                assert_eq!(l, r);
            }
        }
        assert_eq!(
            phi_via_smarandache(&f(36)),
            Some(euler_phi(&f(36)))
        );
        assert_eq!(phi_via_smarandache(&f(12)), None);
    }

    #[test]
    fn phi_telescope_examples() {
        assert_eq!(phi_telescope(2, 3), Ok((6, 6)));
        assert_eq!(phi_telescope(2, 2), Ok((2, 2)));
        assert_eq!(phi_telescope(3, 2), Ok((6, 6)));
        // the sum equals p^α − p, not p^α
        let sum: u64 = (1..3).map(|k| sp_formula(2, 2u64.pow(k))).sum::<u64>() - 2 * 2;
        assert_eq!(sum, 6);
        assert_ne!(sum, 8);
    }

    #[test]
    fn mangoldt_examples() {
        assert_eq!(mangoldt(&f(8)), Some(2));
        assert_eq!(mangoldt(&f(6)), None);
        assert_eq!(mangoldt(&f(7)), Some(7));
        assert_eq!(mangoldt(&f(1)), None);
        assert_eq!(mangoldt_divisor_sum(&f(12)).to_u64(), Some(12));
        assert!(mangoldt_divisor_sum(&f(1)).is_one());
        assert_eq!(mangoldt_divisor_sum(&f(30)).to_u64(), Some(30));
        assert_eq!(psi_factored(1), FactoredNat::one());
        assert_eq!(psi_factored(6).to_u64(), Some(60));
        assert_eq!(psi_factored(10).to_u64(), Some(2520));
    }

    #[test]
    fn zeta_values() {
        let pi = core::f64::consts::PI;
        assert!((riemann_zeta(2.0) - pi * pi / 6.0).abs() < 1e-14);
        assert!((riemann_zeta(4.0) - pi.powi(4) / 90.0).abs() < 1e-14);
        assert!((riemann_zeta(3.0) - 1.202_056_903_159_594_3).abs() < 1e-14);
    }

    #[test]
    fn zeta_ratio_examples() {
        let r = zeta_ratio_partial(4.0, 1).unwrap();
        assert_eq!(r.partial, 1.0);
        assert!((r.reference - 1.110_626_8).abs() < 1e-6);
        let r = zeta_ratio_partial(4.0, 1000).unwrap();
        assert!(r.within_bound(1e-12));
        assert!(r.rewrite_failures.is_empty());
        assert!(r.rewrites_checked > 0);
        assert!(zeta_ratio_partial(2.0, 10).is_err());
        let mut last = 0.0;
        for n in 1..50 {
            let p = zeta_ratio_partial(3.0, n).unwrap().partial;
            assert!(p > last);
            last = p;
        }
    }
}
