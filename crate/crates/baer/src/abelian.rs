//! Finite abelian groups as first-class values: canonical primary
//! decomposition, tensor products, the nilpotent multiplier of an abelian
//! group, the `S`-function giving its order exponent, and the exhaustive
//! maximization over exponent partitions.

use crate::witt::{factor, witt, FactorError};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Errors from abelian-group constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    /// Cyclic factors must have positive order.
    #[error("cyclic order 0 does not define a group")]
    ZeroOrder,
    /// An order could not be split into prime powers.
    #[error(transparent)]
    Factor(#[from] FactorError),
    /// Exponent lists for the S-function must be descending and positive.
    #[error("exponent list must be descending with all entries >= 1")]
    NotDescending,
    /// Invariant factors must satisfy the divisibility chain.
    #[error("invariant factors must satisfy n_{{i+1}} | n_i")]
    NotDivisibilityChain,
    /// Partition scan refused.
    #[error("partition scan for n = {n} exceeds ceiling {ceiling}")]
    PartitionTooLarge { n: u32, ceiling: u32 },
    /// A rank was too large to address positions explicitly.
    #[error("group rank too large for this computation")]
    RankTooLarge,
}

/// A finite abelian group in canonical primary decomposition: a multiset of
/// prime-power cyclic factors `Z_{p^e}`, stored as `(p, e) -> multiplicity`.
///
/// Equality is multiset equality, so two values are equal exactly when the
/// groups are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FinAbelian {
    factors: BTreeMap<(u64, u32), BigUint>,
}

impl FinAbelian {
    /// The trivial group.
    pub fn trivial() -> Self {
        FinAbelian::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// The cyclic group `Z_{p^e}`; `e = 0` gives the trivial group.
    /// `p` must be prime (unchecked here; checked by the CLI surface).
    pub fn cyclic(p: u64, e: u32) -> Self {
        let mut g = FinAbelian::trivial();
        g.add_factor(p, e, BigUint::one());
        g
    }

    /// Elementary abelian `Z_p^(rank)`.
    pub fn elementary(p: u64, rank: u64) -> Self {
        let mut g = FinAbelian::trivial();
        g.add_factor(p, 1, BigUint::from(rank));
        g
    }

    /// `Z_{p^{e_1}} ⊕ ... ⊕ Z_{p^{e_k}}` from a list of exponents.
    pub fn from_prime_exponents(p: u64, exponents: &[u32]) -> Self {
        let mut g = FinAbelian::trivial();
        for &e in exponents {
            g.add_factor(p, e, BigUint::one());
        }
        g
    }

    /// Add `multiplicity` copies of `Z_{p^e}`.
    pub fn add_factor(&mut self, p: u64, e: u32, multiplicity: BigUint) {
        if e == 0 || multiplicity.is_zero() {
            return;
        }
        *self.factors.entry((p, e)).or_default() += multiplicity;
    }

    /// Split a list of cyclic orders into prime-power factors and normalize.
    /// Rejects order 0; order-1 entries are dropped.
    pub fn normalize(orders: &[u64]) -> Result<Self, AbelianError> {
        let mut g = FinAbelian::trivial();
        for &n in orders {
            if n == 0 {
                return Err(AbelianError::ZeroOrder);
            }
            for (p, e) in factor(n)? {
                g.add_factor(p, e, BigUint::one());
            }
        }
        Ok(g)
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &FinAbelian) -> FinAbelian {
        let mut out = self.clone();
        for (&(p, e), m) in &other.factors {
            out.add_factor(p, e, m.clone());
        }
        out
    }

    /// Iterator over `(p, e, multiplicity)` in ascending `(p, e)` order.
    pub fn factor_triples(&self) -> impl Iterator<Item = (u64, u32, &BigUint)> {
        self.factors.iter().map(|(&(p, e), m)| (p, e, m))
    }

    /// The primes appearing in the decomposition, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.keys().map(|&(p, _)| p).collect();
        ps.dedup();
        ps
    }

    /// Cyclic exponents of one prime as descending `(exponent, multiplicity)`
    /// runs.
    pub fn prime_exponent_runs(&self, p: u64) -> Vec<(u32, BigUint)> {
        let mut runs: Vec<(u32, BigUint)> = self
            .factors
            .range((p, 1)..=(p, u32::MAX))
            .map(|(&(_, e), m)| (e, m.clone()))
            .collect();
        runs.reverse();
        runs
    }

    /// Total number of cyclic factors (the rank of the decomposition).
    pub fn total_rank(&self) -> BigUint {
        self.factors.values().sum()
    }

    /// Rank at one prime.
    pub fn prime_rank(&self, p: u64) -> BigUint {
        self.factors
            .range((p, 1)..=(p, u32::MAX))
            .map(|(_, m)| m)
            .sum()
    }

    /// Group order, exact.
    pub fn order(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (p, e, m) in self.factor_triples() {
            let exp = BigUint::from(e) * m;
            let exp = u64::try_from(&exp).expect("order exponent fits u64");
            acc *= BigUint::from(p).pow(exp.try_into().expect("exponent fits u32"));
        }
        acc
    }

    /// Exponent of `p` in the group order: `Σ e · mult` over the `p`-part.
    pub fn p_exponent(&self, p: u64) -> BigUint {
        self.factors
            .range((p, 1)..=(p, u32::MAX))
            .map(|(&(_, e), m)| BigUint::from(e) * m)
            .sum()
    }

    /// True when all factors share the single prime `p` (trivially true for
    /// the trivial group).
    pub fn is_p_group(&self, p: u64) -> bool {
        self.factors.keys().all(|&(q, _)| q == p)
    }

    /// True when every cyclic factor has exponent 1.
    pub fn is_elementary(&self) -> bool {
        self.factors.keys().all(|&(_, e)| e == 1)
    }

    /// Invariant factors `n_1, n_2, ...` with `n_{i+1} | n_i`, descending.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for p in self.primes() {
            let mut exps = Vec::new();
            for (e, m) in self.prime_exponent_runs(p) {
                let m = u64::try_from(&m).expect("rank fits u64");
                exps.extend(std::iter::repeat_n(e, m as usize));
            }
            per_prime.push((p, exps));
        }
        let k = per_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        (0..k)
            .map(|i| {
                let mut n = BigUint::one();
                for (p, exps) in &per_prime {
                    if let Some(&e) = exps.get(i) {
                        n *= BigUint::from(*p).pow(e);
                    }
                }
                n
            })
            .collect()
    }

    /// Rebuild from any list of cyclic orders given as `u64` invariant
    /// factors (the divisibility chain is not required; factors are simply
    /// split and merged).
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self, AbelianError> {
        FinAbelian::normalize(orders)
    }
}

impl fmt::Display for FinAbelian {
    /// Factors render as `Z(p^e)^mult` joined by ` + `; the trivial group
    /// renders as `1`. Primes ascend; within a prime, exponents descend.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut first = true;
        for p in self.primes() {
            for (e, m) in self.prime_exponent_runs(p) {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "Z({p})")?;
                } else {
                    write!(f, "Z({p}^{e})")?;
                }
                if !m.is_one() {
                    write!(f, "^{m}")?;
                }
            }
        }
        Ok(())
    }
}

/// Tensor product of finite abelian groups:
/// `Z_m ⊗ Z_n = Z_gcd(m,n)` extended bilinearly. Factors at distinct primes
/// annihilate each other.
pub fn tensor(a: &FinAbelian, b: &FinAbelian) -> FinAbelian {
    let mut out = FinAbelian::trivial();
    for (p, e1, m1) in a.factor_triples() {
        for (q, e2, m2) in b.factor_triples() {
            if p == q {
                out.add_factor(p, e1.min(e2), m1 * m2);
            }
        }
    }
    out
}

/// Left-associated iterated tensor `b ⊗ q ⊗ ... ⊗ q` with `c` copies of `q`.
pub fn iterated_tensor(b: &FinAbelian, q: &FinAbelian, c: u32) -> FinAbelian {
    assert!(c >= 1, "iterated tensor needs c >= 1");
    let mut acc = tensor(b, q);
    for _ in 1..c {
        acc = tensor(&acc, q);
    }
    acc
}

/// `χ_{c+1}` evaluated at a `u64` argument, used for multiplier
/// multiplicities.
fn chi(weight: u32, d: u64) -> BigUint {
    witt(weight, d).expect("weight >= 1")
}

/// The `c`-nilpotent multiplier of a finite abelian group.
///
/// Per prime, with cyclic exponents `m_1 >= ... >= m_k`, the result is
/// `⊕_{i=2..k} Z_{p^{m_i}}` with multiplicity `χ_{c+1}(i) − χ_{c+1}(i−1)`;
/// distinct primes contribute independently because their cross tensor terms
/// vanish. Multiplicities over each constant-exponent run telescope, so only
/// `χ` values at run boundaries are evaluated.
pub fn multiplier_abelian(g: &FinAbelian, c: u32) -> FinAbelian {
    assert!(c >= 1, "nilpotency class must be >= 1");
    let weight = c + 1;
    let mut out = FinAbelian::trivial();
    for p in g.primes() {
        let mut pos: u64 = 0; // positions assigned so far
        for (e, m) in g.prime_exponent_runs(p) {
            let count = u64::try_from(&m).expect("rank fits u64");
            let start = pos + 1;
            let end = pos + count;
            pos = end;
            // Positions i in [max(start, 2), end] contribute
            // chi(i) - chi(i-1); the run sums to chi(end) - chi(lo - 1).
            let lo = start.max(2);
            if lo > end {
                continue;
            }
            let mult = chi(weight, end) - chi(weight, lo - 1);
            out.add_factor(p, e, mult);
        }
    }
    out
}

/// The multiplier computed from an invariant-factor presentation
/// `Z_{n_1} ⊕ ... ⊕ Z_{n_k}` with `n_{i+1} | n_i`:
/// `⊕_{i=2..k} Z_{n_i}` with multiplicity `χ_{c+1}(i) − χ_{c+1}(i−1)`.
///
/// This is the same group as [`multiplier_abelian`] of the normalized input;
/// both normalizations are kept so they can be checked against each other.
pub fn multiplier_abelian_invariant_factors(
    ns: &[u64],
    c: u32,
) -> Result<FinAbelian, AbelianError> {
    assert!(c >= 1, "nilpotency class must be >= 1");
    for n in ns {
        if *n == 0 {
            return Err(AbelianError::ZeroOrder);
        }
    }
    for w in ns.windows(2) {
        if w[0] % w[1] != 0 {
            return Err(AbelianError::NotDivisibilityChain);
        }
    }
    let weight = c + 1;
    let mut out = FinAbelian::trivial();
    for (i, &n) in ns.iter().enumerate().skip(1) {
        let i = (i + 1) as u64; // 1-based position
        let mult = chi(weight, i) - chi(weight, i - 1);
        for (p, e) in factor(n)? {
            out.add_factor(p, e, mult.clone());
        }
    }
    Ok(out)
}

/// `S(k : m_1, ..., m_k) = Σ_{i=2..k} (χ_{c+1}(i) − χ_{c+1}(i−1)) m_i`,
/// the exponent of `p` in the multiplier order of an abelian `p`-group with
/// descending cyclic exponents `m_i`.
pub fn s_function(exponents: &[u32], c: u32) -> Result<BigUint, AbelianError> {
    assert!(c >= 1, "nilpotency class must be >= 1");
    for w in exponents.windows(2) {
        if w[0] < w[1] {
            return Err(AbelianError::NotDescending);
        }
    }
    if exponents.contains(&0) {
        return Err(AbelianError::NotDescending);
    }
    let weight = c + 1;
    let mut acc = BigUint::zero();
    for (i, &m) in exponents.iter().enumerate().skip(1) {
        let i = (i + 1) as u64;
        let delta = chi(weight, i) - chi(weight, i - 1);
        acc += delta * BigUint::from(m);
    }
    Ok(acc)
}

/// Default bound on `n` for [`max_abelian`].
pub const DEFAULT_PARTITION_CEILING: u32 = 20;

/// A set of partitions attaining a common S-value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionValue {
    /// All partitions attaining `value`, in the scan order.
    pub partitions: Vec<Vec<u32>>,
    pub value: BigUint,
}

/// Outcome of the exhaustive S-maximization over partitions of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxAbelianReport {
    /// Maximizer(s) over all partitions of `n`.
    pub max: PartitionValue,
    /// Best among partitions with `m_1 >= 2`; `None` only for `n = 1`.
    pub second: Option<PartitionValue>,
}

/// Exhaustively evaluate [`s_function`] over all partitions of `n` and
/// report the argmax and the best non-elementary value. Ties are reported in
/// full rather than broken silently.
pub fn max_abelian(n: u32, c: u32) -> Result<MaxAbelianReport, AbelianError> {
    max_abelian_with_ceiling(n, c, DEFAULT_PARTITION_CEILING)
}

/// As [`max_abelian`] with an explicit ceiling on `n`.
pub fn max_abelian_with_ceiling(
    n: u32,
    c: u32,
    ceiling: u32,
) -> Result<MaxAbelianReport, AbelianError> {
    assert!(n >= 1, "n must be >= 1");
    assert!(c >= 1, "nilpotency class must be >= 1");
    if n > ceiling {
        return Err(AbelianError::PartitionTooLarge { n, ceiling });
    }
    let mut max: Option<PartitionValue> = None;
    let mut second: Option<PartitionValue> = None;
    for part in partitions_desc(n) {
        let value = s_function(&part, c)?;
        record(&mut max, &part, &value);
        if part[0] >= 2 {
            record(&mut second, &part, &value);
        }
    }
    Ok(MaxAbelianReport {
        max: max.expect("n >= 1 has at least one partition"),
        second,
    })
}

fn record(slot: &mut Option<PartitionValue>, part: &[u32], value: &BigUint) {
    match slot {
        None => {
            *slot = Some(PartitionValue {
                partitions: vec![part.to_vec()],
                value: value.clone(),
            })
        }
        Some(pv) => match value.cmp(&pv.value) {
            Ordering::Greater => {
                *slot = Some(PartitionValue {
                    partitions: vec![part.to_vec()],
                    value: value.clone(),
                })
            }
            Ordering::Equal => pv.partitions.push(part.to_vec()),
            Ordering::Less => {}
        },
    }
}

/// All partitions of `n` into descending positive parts, in descending
/// lexicographic order: `(n)`, `(n-1,1)`, ..., `(1,...,1)`.
pub fn partitions_desc(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: u32, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let hi = rest.min(bound);
        for part in (1..=hi).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}
