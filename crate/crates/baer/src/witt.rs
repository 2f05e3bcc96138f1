//! Number theory for commutator counting: the Möbius function and the Witt
//! formula `χ_n(d)`, plus the small primality/factoring helpers the rest of
//! the crate needs for exact arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Errors from the number-theoretic entry points.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    /// `μ(0)` is undefined.
    #[error("mobius function is undefined at m = 0")]
    MobiusZero,
    /// `χ_0(d)` is undefined; weights start at 1.
    #[error("witt formula requires weight n >= 1")]
    ZeroWeight,
}

/// The number of basic commutators of a given weight on a given alphabet,
/// together with the inputs that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittCount {
    /// Commutator weight `n >= 1`.
    pub weight: u32,
    /// Alphabet size `d >= 0`.
    pub letters: u64,
    /// `χ_n(d)`, exact.
    pub value: BigUint,
}

impl WittCount {
    /// Evaluate the Witt formula for one `(weight, letters)` cell.
    pub fn compute(weight: u32, letters: u64) -> Result<Self, WittError> {
        Ok(WittCount {
            weight,
            letters,
            value: witt(weight, letters)?,
        })
    }
}

/// Möbius function: `μ(1) = 1`, `μ(m) = 0` when a squared prime divides `m`,
/// and `(-1)^s` when `m` is a product of `s` distinct primes.
pub fn mobius(m: u64) -> Result<i8, WittError> {
    if m == 0 {
        return Err(WittError::MobiusZero);
    }
    let mut rest = m;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Witt formula: the number of basic commutators of weight `n` on `d`
/// letters,
///
/// ```text
/// χ_n(d) = (1/n) Σ_{m|n} μ(m) d^{n/m}.
/// ```
///
/// The division by `n` is checked to be exact, and the result is checked to
/// be non-negative; both are theorems, so a violation panics.
pub fn witt(n: u32, d: u64) -> Result<BigUint, WittError> {
    if n == 0 {
        return Err(WittError::ZeroWeight);
    }
    let base = BigInt::from(d);
    let mut sum = BigInt::zero();
    for m in divisors(u64::from(n)) {
        let mu = mobius(m).expect("divisor is nonzero");
        if mu == 0 {
            continue;
        }
        let term = base.pow(n / (m as u32));
        if mu > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = num_integer::Integer::div_rem(&sum, &BigInt::from(n));
    assert!(r.is_zero(), "witt sum must be divisible by n");
    assert!(!q.is_negative(), "witt count must be non-negative");
    Ok(q.to_biguint().expect("non-negative"))
}

/// All positive divisors of `n`, ascending. `n >= 1`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of 0 are not enumerable");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k != n / k {
                large.push(n / k);
            }
        }
        k += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Deterministic Miller–Rabin primality test for `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // n - 1 = 2^s * d with d odd
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // This base set is deterministic for all u64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `n >= 1` by trial division, as ascending
/// `(prime, exponent)` pairs. Falls back to a primality check for a large
/// cofactor; composite cofactors beyond the trial bound are rejected.
pub fn factor(n: u64) -> Result<Vec<(u64, u32)>, FactorError> {
    if n == 0 {
        return Err(FactorError::Zero);
    }
    let mut rest = n;
    let mut out = Vec::new();
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let mut e = 0;
    while rest.is_multiple_of(2) {
        rest /= 2;
        e += 1;
    }
    push(2, e);
    let mut p = 3u64;
    while p <= 1_000_003 && p.saturating_mul(p) <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        push(p, e);
        p += 2;
    }
    if rest > 1 {
        if is_prime(rest) {
            push(rest, 1);
        } else {
            return Err(FactorError::CompositeCofactor(rest));
        }
    }
    Ok(out)
}

/// Errors from [`factor`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    /// 0 has no factorization.
    #[error("cannot factor 0")]
    Zero,
    /// A cofactor survived trial division and is not prime.
    #[error("cannot factor composite cofactor {0}")]
    CompositeCofactor(u64),
}

fn mod_mul(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1u64 % n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, n);
        }
        base = mod_mul(base, base, n);
        exp >>= 1;
    }
    acc
}
