//! Factored integers and the divisor-lattice primitives everything else builds on.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scales::{digit_sum, ScaleKind};

/// A positive integer stored as its prime factorization.
///
/// Entries are sorted by prime, every prime appears once, and every exponent
/// is at least one. The empty factorization is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactoredNat {
    factors: Vec<(u64, u32)>,
}

impl FactoredNat {
    pub fn one() -> Self {
        Self::default()
    }

    /// `p^e`. The caller vouches that `p` is prime.
    pub fn prime_power(p: u64, e: u32) -> Self {
        debug_assert!(is_prime(p), "{p} is not prime");
        if e == 0 {
            return Self::one();
        }
        Self {
            factors: vec![(p, e)],
        }
    }

    /// Builds a factorization from arbitrary `(prime, exponent)` pairs,
    /// merging repeated primes and dropping zero exponents.
    pub fn from_factors<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u32)>,
    {
        let mut factors: Vec<(u64, u32)> = Vec::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        factors.sort_unstable_by_key(|&(p, _)| p);
        let mut merged: Vec<(u64, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => {
                    *f = f.checked_add(e).ok_or(Error::Overflow("exponent"))?;
                }
                _ => merged.push((p, e)),
            }
        }
        Ok(Self { factors: merged })
    }

    pub(crate) fn from_sorted_unchecked(factors: Vec<(u64, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|&(_, e)| e > 0));
        Self { factors }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p` (zero when `p` does not divide the value).
    pub fn exponent(&self, p: u64) -> u32 {
        match self.factors.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of distinct prime factors.
    pub fn num_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn value(&self) -> BigUint {
        let mut v = BigUint::one();
        for &(p, e) in &self.factors {
            v *= BigUint::from(p).pow(e);
        }
        v
    }

    /// The value, if it fits in a `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        let mut v: u64 = 1;
        for &(p, e) in &self.factors {
            v = v.checked_mul(p.checked_pow(e)?)?;
        }
        Some(v)
    }

    /// Largest squarefree divisor.
    pub fn radical(&self) -> Self {
        Self {
            factors: self.factors.iter().map(|&(p, _)| (p, 1)).collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.factors.iter().all(|&(p, e)| other.exponent(p) >= e)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a.min(b))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a.max(b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.merge(other, |a, b| a.checked_add(b).expect("exponent overflow"))
    }

    /// `self / other` when `other | self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|&(p, e)| {
                let rest = e - other.exponent(p);
                (rest > 0).then_some((p, rest))
            })
            .collect();
        Some(Self { factors })
    }

    /// Componentwise combination over the union of supports; absent primes count as exponent 0.
    fn merge(&self, other: &Self, op: impl Fn(u32, u32) -> u32) -> Self {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (p, x, y) = match (a.get(i), b.get(j)) {
                (Some(&(p, x)), Some(&(q, y))) => match p.cmp(&q) {
                    Ordering::Less => {
                        i += 1;
                        (p, x, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (q, 0, y)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (p, x, y)
                    }
                },
                (Some(&(p, x)), None) => {
                    i += 1;
                    (p, x, 0)
                }
                (None, Some(&(q, y))) => {
                    j += 1;
                    (q, 0, y)
                }
                (None, None) => unreachable!(),
            };
            let e = op(x, y);
            if e > 0 {
                out.push((p, e));
            }
        }
        Self { factors: out }
    }

    /// All divisors, in no particular order.
    pub fn divisors(&self) -> Vec<FactoredNat> {
        let mut out = vec![FactoredNat::one()];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for d in &out {
                for k in 0..=e {
                    let mut f = d.factors.clone();
                    if k > 0 {
                        f.push((p, k));
                    }
                    next.push(FactoredNat { factors: f });
                }
            }
            out = next;
        }
        out
    }

    /// Squarefree divisors `d` paired with `μ(d)`.
    pub fn squarefree_divisors(&self) -> Vec<(FactoredNat, i8)> {
        let mut out = vec![(FactoredNat::one(), 1i8)];
        for &(p, _) in &self.factors {
            let with_p: Vec<_> = out
                .iter()
                .map(|(d, mu)| {
                    let mut f = d.factors.clone();
                    f.push((p, 1));
                    (FactoredNat { factors: f }, -mu)
                })
                .collect();
            out.extend(with_p);
        }
        out
    }
}

impl fmt::Display for FactoredNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Deterministic primality by trial division over `6k ± 1`.
pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Smallest prime strictly greater than `p`.
pub fn next_prime(p: u64) -> u64 {
    let mut q = p + 1;
    while !is_prime(q) {
        q += 1;
    }
    q
}

/// Prime factorization by trial division up to `√n`.
pub fn factorize(n: u64) -> Result<FactoredNat> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut n = n;
    let mut factors = Vec::new();
    let mut strip = |n: &mut u64, d: u64| {
        let mut e = 0;
        while *n % d == 0 {
            *n /= d;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
    };
    strip(&mut n, 2);
    strip(&mut n, 3);
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        strip(&mut n, d);
        strip(&mut n, d + 2);
        d += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(FactoredNat::from_sorted_unchecked(factors))
}

/// Ordered table of consecutive primes `2, 3, 5, …`, grown on demand.
///
/// Growth takes `&mut self`; share a table across threads only after it has
/// been extended far enough.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    primes: Vec<u64>,
    limit: u64,
}

impl Default for PrimeTable {
    fn default() -> Self {
        Self::with_limit(64)
    }
}

impl PrimeTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table holding every prime `≤ limit`.
    pub fn with_limit(limit: u64) -> Self {
        Self {
            primes: sieve(limit),
            limit,
        }
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.primes
    }

    /// Largest value the table is known to be complete up to.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn extend_to(&mut self, limit: u64) {
        if limit > self.limit {
            self.primes = sieve(limit);
            self.limit = limit;
        }
    }

    /// The `i`-th prime, zero-based (`nth(0) == 2`).
    pub fn nth(&mut self, i: usize) -> u64 {
        while self.primes.len() <= i {
            let limit = self.limit.max(16) * 2;
            self.extend_to(limit);
        }
        self.primes[i]
    }

    /// Primes up to and including `limit`.
    pub fn up_to(&mut self, limit: u64) -> &[u64] {
        self.extend_to(limit);
        let end = self.primes.partition_point(|&p| p <= limit);
        &self.primes[..end]
    }

    /// Factorization by trial division over the table.
    pub fn factorize(&mut self, n: u64) -> Result<FactoredNat> {
        if n == 0 {
            return Err(Error::Zero);
        }
        let root = isqrt(n);
        self.extend_to(root);
        let mut n = n;
        let mut factors = Vec::new();
        for &p in &self.primes {
            if p.saturating_mul(p) > n {
                break;
            }
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        if n > 1 {
            factors.push((n, 1));
        }
        Ok(FactoredNat::from_sorted_unchecked(factors))
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

fn sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Smallest-prime-factor table for factoring every integer up to a bound.
#[derive(Clone, Debug)]
pub struct FactorSieve {
    spf: Vec<u32>,
}

impl FactorSieve {
    pub fn new(limit: u32) -> Self {
        let limit = limit as usize;
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Self { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    /// Factorization of `n`; `n` must lie in `1..=limit`.
    pub fn factorize(&self, n: u64) -> Result<FactoredNat> {
        if n == 0 {
            return Err(Error::Zero);
        }
        assert!(n <= self.limit(), "{n} exceeds sieve limit {}", self.limit());
        let mut n = n as usize;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        Ok(FactoredNat::from_sorted_unchecked(factors))
    }
}

/// `(gcd(a, b), lcm(a, b))` as exponent-wise min / max.
pub fn gcd_lcm(a: &FactoredNat, b: &FactoredNat) -> (FactoredNat, FactoredNat) {
    (a.gcd(b), a.lcm(b))
}

/// `Σ_{i≥1} ⌊m/pⁱ⌋` with no primality check.
pub(crate) fn factorial_exponent(p: u64, m: u64) -> u64 {
    let mut total = 0;
    let mut q = m;
    while q >= p {
        q /= p;
        total += q;
    }
    total
}

/// Exponent of the prime `p` in `m!`.
///
/// Computed twice, as the floor sum `Σ ⌊m/pⁱ⌋` and as `(m − σ₍ₚ₎(m)) / (p − 1)`
/// from the base-`p` digit sum; the two must agree.
pub fn legendre_exponent(p: u64, m: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let floor_sum = factorial_exponent(p, m);
    let sigma = digit_sum(m, p, ScaleKind::Standard);
    let digit_formula = (m - sigma) / (p - 1);
    if floor_sum != digit_formula || (m - sigma) % (p - 1) != 0 {
        return Err(Error::LegendreMismatch {
            p,
            m,
            floor_sum,
            digit_formula,
        });
    }
    Ok(floor_sum)
}

/// Euler's totient.
pub fn euler_phi(n: &FactoredNat) -> BigUint {
    let mut phi = BigUint::one();
    for &(p, e) in n.factors() {
        phi *= BigUint::from(p).pow(e - 1) * BigUint::from(p - 1);
    }
    phi
}

/// Möbius function.
pub fn moebius_mu(n: &FactoredNat) -> i8 {
    if !n.is_squarefree() {
        0
    } else if n.num_primes() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of divisors, `∏ (e + 1)`.
pub fn tau(n: &FactoredNat) -> BigUint {
    n.factors()
        .iter()
        .fold(BigUint::one(), |acc, &(_, e)| acc * BigUint::from(e + 1))
}

/// `lcm(1, 2, …, m)`: every prime `p ≤ m` with exponent `⌊log_p m⌋`.
pub fn lcm_upto(m: u64) -> FactoredNat {
    let factors = sieve(m)
        .into_iter()
        .map(|p| {
            let mut e = 0;
            let mut q = 1u64;
            while let Some(next) = q.checked_mul(p).filter(|&x| x <= m) {
                q = next;
                e += 1;
            }
            (p, e)
        })
        .collect();
    FactoredNat::from_sorted_unchecked(factors)
}
