//! `ν(n)`, the least `m` with `n | lcm(1..m)`, and its dual `ν₄(n)`, the
//! greatest `m` with `lcm(1..m) | n`.

use alloc::vec::Vec;

use crate::arith::{factorize, next_prime, FactoredNat};
use crate::error::{Error, Result};

/// Least `m` with `n | lcm(1..m)`, by binary search on that monotone
/// predicate. The exponent of `p` in `lcm(1..m)` is the largest `k` with
/// `pᵏ ≤ m`.
pub fn nu_brute(n: &FactoredNat) -> u64 {
    let divides_lcm = |m: u64| {
        n.factors().iter().all(|&(p, e)| {
            let mut k = 0u32;
            let mut q = 1u64;
            while let Some(next) = q.checked_mul(p).filter(|&x| x <= m) {
                q = next;
                k += 1;
            }
            k >= e
        })
    };
    let (mut lo, mut hi) = (1u64, 1u64);
    while !divides_lcm(hi) {
        lo = hi + 1;
        hi = hi.saturating_mul(2);
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if divides_lcm(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// `max pᵢ^{αᵢ}`; `ν(1) = 1`.
pub fn nu_closed(n: &FactoredNat) -> Result<u64> {
    n.factors()
        .iter()
        .map(|&(p, e)| p.checked_pow(e).ok_or(Error::Overflow("prime power part")))
        .try_fold(1u64, |acc, v| Ok(acc.max(v?)))
}

/// Greatest `m` such that every `i ≤ m` divides `n`.
pub fn nu4(n: &FactoredNat) -> u64 {
    let mut m = 1u64;
    while factorize(m + 1).expect("m + 1 >= 2").divides(n) {
        m += 1;
    }
    m
}

/// `ν₄` through the bounded integer program over the leading run
/// `p₁ = 2, …, p_{t₀}` of primes dividing `n`: maximize `∏ pᵢ^{xᵢ}` subject to
/// `0 ≤ xᵢ ≤ αᵢ` and `∏ pᵢ^{xᵢ} < p_{t₀+1}`, by exhaustive search with exact
/// integer products.
pub fn nu4_ip(n: &FactoredNat) -> u64 {
    let mut run: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while n.exponent(p) > 0 {
        run.push((p, n.exponent(p)));
        p = next_prime(p);
    }
    let bound = p;
    fn search(run: &[(u64, u32)], product: u64, bound: u64) -> u64 {
        let Some((&(p, alpha), rest)) = run.split_first() else {
            return product;
        };
        let mut best = search(rest, product, bound);
        let mut value = product;
        for _ in 0..alpha {
            match value.checked_mul(p) {
                Some(v) if v < bound => {
                    value = v;
                    best = best.max(search(rest, value, bound));
                }
                _ => break,
            }
        }
        best
    }
    search(&run, 1, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u64) -> FactoredNat {
        factorize(n).unwrap()
    }

    #[test]
    fn nu_brute_matches_linear_scan() {
        for n in 1..=600u64 {
            let fn_ = f(n);
            let scan = (1u64..)
                .find(|&m| fn_.divides(&crate::arith::lcm_upto(m)))
                .unwrap();
            assert_eq!(nu_brute(&fn_), scan, "n={n}");
        }
    }

    #[test]
    fn nu_examples() {
        for (n, want) in [(1u64, 1u64), (12, 4), (30, 5), (3960, 11), (64, 64), (49, 49)] {
            assert_eq!(nu_brute(&f(n)), want);
            assert_eq!(nu_closed(&f(n)), Ok(want));
        }
    }

    #[test]
    fn nu4_examples() {
        assert_eq!(nu4(&f(3960)), 6);
        assert_eq!(nu4(&f(45)), 1);
        assert_eq!(nu4(&f(2520)), 10);
        assert_eq!(nu4(&f(1)), 1);
    }

    #[test]
    fn nu4_ip_examples() {
        assert_eq!(nu4_ip(&f(3960)), 6);
        assert_eq!(nu4_ip(&f(45)), 1);
        let n = f(8 * 9 * 5 * 7 * 11 * 13);
        assert_eq!(nu4_ip(&n), 15);
        assert_eq!(nu4(&n), 15);
    }

    #[test]
    fn nu4_ip_is_not_nu4_in_general() {
        // 30: the program allows 2·3 = 6 < 7, but 4 ∤ 30
        assert_eq!(nu4_ip(&f(30)), 6);
        assert_eq!(nu4(&f(30)), 3);
        assert_eq!(nu4_ip(&f(210)), 10);
        assert_eq!(nu4(&f(210)), 3);
    }
}
