//! Digit arithmetic in the standard scale `(p)` and the generalized scale `[p]`.
//!
//! The standard scale has nodes `bₙ(p) = pⁿ⁻¹` at position `n ≥ 1`; the
//! generalized scale has nodes `aₙ(p) = (pⁿ − 1)/(p − 1)`, i.e. `1, p + 1,
//! p² + p + 1, …`, obeying `aₙ₊₁ = p·aₙ + 1`. Generalized digits are produced
//! greedily from the most significant node down. Every such digit is at most
//! `p − 1` except the least significant nonzero one, which may equal `p`.

use alloc::vec::Vec;

/// Which numeration scale a digit string is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScaleKind {
    Standard,
    Generalized,
}

/// Digits of a nonnegative integer, least significant first.
///
/// Position `i` (zero-based in `digits`) carries node `b_{i+1}` or `a_{i+1}`.
/// Zero is the empty string; the last digit is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    base: u64,
    kind: ScaleKind,
    digits: Vec<u64>,
}

impl DigitString {
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn kind(&self) -> ScaleKind {
        self.kind
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    /// Reconstructs the integer in the string's own scale.
    pub fn value(&self) -> u64 {
        let mut node = 1u64;
        let mut total = 0u64;
        for (i, &d) in self.digits.iter().enumerate() {
            if i > 0 {
                node = next_node(node, self.base, self.kind).expect("node overflow");
            }
            total += d * node;
        }
        total
    }
}

fn next_node(node: u64, p: u64, kind: ScaleKind) -> Option<u64> {
    let scaled = node.checked_mul(p)?;
    match kind {
        ScaleKind::Standard => Some(scaled),
        ScaleKind::Generalized => scaled.checked_add(1),
    }
}

/// The `n`-th node (`n ≥ 1`): `pⁿ⁻¹` in the standard scale, `(pⁿ − 1)/(p − 1)`
/// in the generalized one. `None` on overflow or `n = 0`.
pub fn scale_node(p: u64, n: u32, kind: ScaleKind) -> Option<u64> {
    if n == 0 {
        return None;
    }
    let mut node = 1u64;
    for _ in 1..n {
        node = next_node(node, p, kind)?;
    }
    Some(node)
}

/// Writes `alpha` in the scale of kind `kind` over the prime `p`.
pub fn digits_of(alpha: u64, p: u64, kind: ScaleKind) -> DigitString {
    debug_assert!(p >= 2);
    let digits = match kind {
        ScaleKind::Standard => {
            let mut digits = Vec::new();
            let mut rest = alpha;
            while rest > 0 {
                digits.push(rest % p);
                rest /= p;
            }
            digits
        }
        ScaleKind::Generalized => {
            let mut nodes = Vec::new();
            let mut node = 1u64;
            while node <= alpha {
                nodes.push(node);
                match next_node(node, p, kind) {
                    Some(next) => node = next,
                    None => break,
                }
            }
            let mut digits = alloc::vec![0u64; nodes.len()];
            let mut rest = alpha;
            for (i, &node) in nodes.iter().enumerate().rev() {
                digits[i] = rest / node;
                rest -= digits[i] * node;
            }
            debug_assert_eq!(rest, 0);
            digits
        }
    };
    DigitString {
        base: p,
        kind,
        digits,
    }
}

/// `σ₍ₚ₎(α)` or `σ₍[p]₎(α)`.
pub fn digit_sum(alpha: u64, p: u64, kind: ScaleKind) -> u64 {
    match kind {
        ScaleKind::Standard => {
            let mut sum = 0;
            let mut rest = alpha;
            while rest > 0 {
                sum += rest % p;
                rest /= p;
            }
            sum
        }
        ScaleKind::Generalized => digits_of(alpha, p, kind).digit_sum(),
    }
}

/// Reads a digit string positionally in the standard scale, `Σ dᵢ·pⁱ⁻¹`.
///
/// Applied to generalized digits this is the transcription step of the
/// digit route to `S(p^α)`.
pub fn read_in_standard(d: &DigitString) -> u64 {
    d.digits
        .iter()
        .rev()
        .fold(0u64, |acc, &digit| {
            acc.checked_mul(d.base)
                .and_then(|x| x.checked_add(digit))
                .expect("standard reading overflows u64")
        })
}
