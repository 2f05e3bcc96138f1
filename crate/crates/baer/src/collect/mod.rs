//! Arithmetic in free nilpotent groups `F/γ_{W+1}(F)` and the brute-force
//! verifier for the relator-lattice congruence behind the `E_1` multiplier
//! computation.
//!
//! Elements are kept in collected normal form: an integer exponent vector
//! over the Hall basis, ascending, so `w = b_1^{e_1} b_2^{e_2} ... b_k^{e_k}`.
//! The engine behind the normal form is the truncated Magnus embedding
//! `x_i -> 1 + X_i` into `Z<X>` modulo words longer than the class: the
//! degree filtration matches the lower central series exactly, so group
//! multiplication is series multiplication followed by graded extraction of
//! basis coordinates (one exact integer solve per weight).

pub mod lattice;
mod series;

pub use lattice::{lattice_equal, IntLattice, LatticeError, SmithQuotient};

use crate::abelian::FinAbelian;
use crate::hall::{HallBasis, HallError};
use crate::witt::is_prime;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use series::{Algebra, Series};
use thiserror::Error;

/// Default ceiling on the monomial table of one context.
pub const DEFAULT_MONOMIAL_CEILING: u64 = 1 << 20;

/// Largest class accepted by [`verify_theorem_11`] without an explicit
/// override.
pub const DEFAULT_VERIFY_MAX_CLASS: u32 = 3;

/// Errors from free-nilpotent arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CollectError {
    #[error(transparent)]
    Hall(#[from] HallError),
    /// The monomial table for `(d, class)` would exceed the ceiling.
    #[error("context too large: {monomials} monomials exceeds ceiling {ceiling}")]
    ContextTooLarge { monomials: u128, ceiling: u64 },
    /// Operands from different contexts.
    #[error("words belong to different contexts")]
    ContextMismatch,
    /// Exponent vector of the wrong length.
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { got: usize, expected: usize },
    /// Graded image requested for a word outside the stated term.
    #[error("word has support below weight {lo}: not in gamma_{lo}")]
    NotInGamma { lo: u32 },
    /// Invalid weight range for a graded image.
    #[error("weight range {lo}..={hi} invalid for class {class}")]
    BadWeightRange { lo: u32, hi: u32, class: u32 },
    /// The verifier requires a prime.
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    /// The verifier requires `2 <= c <= max`.
    #[error("class c = {c} outside supported range 2..={max}")]
    ClassOutOfRange { c: u32, max: u32 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Exact integer solver for one graded stratum: expresses a degree-`n` Lie
/// element in basic-commutator coordinates via a precomputed Hermite form.
#[derive(Debug, Clone)]
struct WeightSolver {
    /// Hermite form of the stratum's Lie-expansion matrix (rows x monomials).
    h: Vec<Vec<BigInt>>,
    /// Transform with `u * m = h`.
    u: Vec<Vec<BigInt>>,
    /// Pivot column of each Hermite row.
    pivots: Vec<usize>,
}

impl WeightSolver {
    fn build(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let k = rows.len();
        let (h, u) = lattice::hermite_with_transform(rows, cols);
        let mut pivots = Vec::with_capacity(k);
        for r in &h {
            let p = r
                .iter()
                .position(|x| !x.is_zero())
                .expect("stratum matrix has full row rank");
            pivots.push(p);
        }
        WeightSolver { h, u, pivots }
    }

    /// Solve `e * M = t` for integer `e`; panics if `t` is outside the row
    /// span, which cannot happen for graded parts of group elements.
    fn solve(&self, t: &[BigInt]) -> Vec<BigInt> {
        let k = self.h.len();
        let mut residual = t.to_vec();
        let mut f = vec![BigInt::zero(); k];
        for ((&p, hrow), fi) in self.pivots.iter().zip(&self.h).zip(f.iter_mut()) {
            if residual[p].is_zero() {
                continue;
            }
            let (q, r) = residual[p].div_rem(&hrow[p]);
            assert!(r.is_zero(), "graded component is not integral over the basis");
            for (res, hv) in residual.iter_mut().zip(hrow.iter()) {
                *res -= &q * hv;
            }
            *fi = q;
        }
        assert!(
            residual.iter().all(Zero::is_zero),
            "graded component is outside the free Lie stratum"
        );
        // e = f * u
        let mut e = vec![BigInt::zero(); k];
        for (fi, urow) in f.iter().zip(self.u.iter()) {
            if fi.is_zero() {
                continue;
            }
            for (ej, uv) in e.iter_mut().zip(urow.iter()) {
                *ej += fi * uv;
            }
        }
        e
    }
}

/// A free nilpotent group `F_d / γ_{class+1}(F_d)` with its Hall basis and
/// the series engine used for collected normal forms. Immutable once built;
/// words borrow it and distinct contexts are fully independent.
#[derive(Debug)]
pub struct NilGroupCtx {
    basis: HallBasis,
    class: u32,
    algebra: Algebra,
    /// Series image of each basis element, in basis order.
    basis_series: Vec<Series>,
    /// One exact solver per weight `1..=class`.
    solvers: Vec<WeightSolver>,
}

impl NilGroupCtx {
    /// Build the context for `d` generators at nilpotency class `class`,
    /// with default resource ceilings.
    pub fn new(d: usize, class: u32) -> Result<Self, CollectError> {
        Self::with_ceilings(
            d,
            class,
            crate::hall::DEFAULT_BASIS_CEILING,
            DEFAULT_MONOMIAL_CEILING,
        )
    }

    /// As [`NilGroupCtx::new`] with explicit basis and monomial ceilings.
    pub fn with_ceilings(
        d: usize,
        class: u32,
        basis_ceiling: u64,
        monomial_ceiling: u64,
    ) -> Result<Self, CollectError> {
        let monomials = Algebra::size(d, class)
            .map(|t| t as u128)
            .unwrap_or(u128::MAX);
        if monomials > monomial_ceiling as u128 {
            return Err(CollectError::ContextTooLarge {
                monomials,
                ceiling: monomial_ceiling,
            });
        }
        let basis = HallBasis::generate_with_ceiling(d, class, basis_ceiling)?;
        let algebra = Algebra::new(d, class);

        // Series images of basis elements; children precede parents in the
        // basis order, so one forward pass suffices.
        let mut basis_series: Vec<Series> = Vec::with_capacity(basis.len());
        // Lie expansions feed the per-weight solvers.
        let mut lie: Vec<Series> = Vec::with_capacity(basis.len());
        for (i, e) in basis.elements().iter().enumerate() {
            match e.children() {
                None => {
                    let idx = e.letter_index().expect("letter");
                    basis_series.push(algebra.generator(idx));
                    lie.push(algebra.letter_poly(idx));
                }
                Some((l, r)) => {
                    let li = basis.index_of(l).expect("child is basic");
                    let ri = basis.index_of(r).expect("child is basic");
                    debug_assert!(li < i && ri < i);
                    basis_series.push(
                        algebra.group_commutator(&basis_series[li], &basis_series[ri]),
                    );
                    lie.push(algebra.lie_bracket(&lie[li], &lie[ri]));
                }
            }
        }

        let mut solvers = Vec::with_capacity(class as usize);
        for n in 1..=class {
            let range = basis.stratum_range(n);
            let cols = algebra.deg_range(n).len();
            let rows: Vec<Vec<BigInt>> = range
                .map(|i| algebra.deg_slice(&lie[i], n).to_vec())
                .collect();
            solvers.push(WeightSolver::build(rows, cols));
        }

        Ok(NilGroupCtx {
            basis,
            class,
            algebra,
            basis_series,
            solvers,
        })
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn class(&self) -> u32 {
        self.class
    }

    /// Number of generators.
    pub fn generator_count(&self) -> usize {
        self.basis.alphabet().len()
    }

    /// Rank of the exponent vector (basis size).
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The identity word.
    pub fn identity(&self) -> NilWord<'_> {
        NilWord {
            ctx: self,
            exps: vec![BigInt::zero(); self.rank()],
        }
    }

    /// The `i`-th generator as a word.
    pub fn generator(&self, i: usize) -> NilWord<'_> {
        assert!(i < self.generator_count(), "generator index out of range");
        let mut w = self.identity();
        w.exps[i] = BigInt::one();
        w
    }

    /// A word from an explicit exponent vector in basis order.
    pub fn word(&self, exps: Vec<BigInt>) -> Result<NilWord<'_>, CollectError> {
        if exps.len() != self.rank() {
            return Err(CollectError::ExponentLength {
                got: exps.len(),
                expected: self.rank(),
            });
        }
        Ok(NilWord { ctx: self, exps })
    }

    /// The basis element at `index`, passed through the full normal-form
    /// extraction (so this doubles as a self-check that each basic
    /// commutator is its own coordinate vector).
    pub fn basis_element_word(&self, index: usize) -> NilWord<'_> {
        let exps = self.normal_form(&self.basis_series[index]);
        NilWord { ctx: self, exps }
    }

    /// Collected normal form of the commutator of two basis elements.
    pub fn commutator_of_basis(&self, i: usize, j: usize) -> NilWord<'_> {
        let s = self
            .algebra
            .group_commutator(&self.basis_series[i], &self.basis_series[j]);
        NilWord {
            ctx: self,
            exps: self.normal_form(&s),
        }
    }

    /// Series image of a collected word.
    fn series_of(&self, exps: &[BigInt]) -> Series {
        let mut acc = self.algebra.one();
        for (i, e) in exps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let p = self.algebra.pow(&self.basis_series[i], e);
            acc = self.algebra.mul(&acc, &p);
        }
        acc
    }

    /// Graded extraction: peel one weight at a time, solving for the
    /// stratum coordinates and dividing the matching basis product back out.
    fn normal_form(&self, s: &Series) -> Vec<BigInt> {
        let mut exps = vec![BigInt::zero(); self.rank()];
        let mut h = s.clone();
        for n in 1..=self.class {
            let t = self.algebra.deg_slice(&h, n);
            if t.iter().all(Zero::is_zero) {
                continue;
            }
            let stratum = self.basis.stratum_range(n);
            let coords = self.solvers[(n - 1) as usize].solve(t);
            let mut q = self.algebra.one();
            for (offset, idx) in stratum.clone().enumerate() {
                if coords[offset].is_zero() {
                    continue;
                }
                let p = self.algebra.pow(&self.basis_series[idx], &coords[offset]);
                q = self.algebra.mul(&q, &p);
            }
            h = self.algebra.mul(&self.algebra.inv(&q), &h);
            debug_assert!(self.algebra.trivial_up_to(&h, n));
            for (offset, idx) in stratum.enumerate() {
                exps[idx] = coords[offset].clone();
            }
        }
        assert!(h.is_one(), "normal form extraction left a nontrivial tail");
        exps
    }
}

/// An element of a free nilpotent group in collected normal form. Two words
/// are equal exactly when they share a context and their exponent vectors
/// agree.
#[derive(Debug, Clone)]
pub struct NilWord<'a> {
    ctx: &'a NilGroupCtx,
    exps: Vec<BigInt>,
}

impl PartialEq for NilWord<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ctx, other.ctx) && self.exps == other.exps
    }
}
impl Eq for NilWord<'_> {}

impl<'a> NilWord<'a> {
    pub fn context(&self) -> &'a NilGroupCtx {
        self.ctx
    }

    /// Exponents over the Hall basis, ascending basis order.
    pub fn exponents(&self) -> &[BigInt] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(Zero::is_zero)
    }

    fn check_ctx(&self, other: &NilWord<'_>) -> Result<(), CollectError> {
        if std::ptr::eq(self.ctx, other.ctx) {
            Ok(())
        } else {
            Err(CollectError::ContextMismatch)
        }
    }

    /// Collected product `self * other`.
    pub fn multiply(&self, other: &NilWord<'a>) -> Result<NilWord<'a>, CollectError> {
        self.check_ctx(other)?;
        let s = self.ctx.algebra.mul(
            &self.ctx.series_of(&self.exps),
            &self.ctx.series_of(&other.exps),
        );
        Ok(NilWord {
            ctx: self.ctx,
            exps: self.ctx.normal_form(&s),
        })
    }

    /// Collected inverse.
    pub fn inverse(&self) -> NilWord<'a> {
        let s = self.ctx.algebra.inv(&self.ctx.series_of(&self.exps));
        NilWord {
            ctx: self.ctx,
            exps: self.ctx.normal_form(&s),
        }
    }

    /// Collected commutator `self^{-1} other^{-1} self other`.
    pub fn commutator(&self, other: &NilWord<'a>) -> Result<NilWord<'a>, CollectError> {
        self.check_ctx(other)?;
        let s = self.ctx.algebra.group_commutator(
            &self.ctx.series_of(&self.exps),
            &self.ctx.series_of(&other.exps),
        );
        Ok(NilWord {
            ctx: self.ctx,
            exps: self.ctx.normal_form(&s),
        })
    }

    /// Collected power by square-and-multiply; `power(w, 0)` is the identity
    /// and negative exponents invert.
    pub fn power(&self, e: &BigInt) -> NilWord<'a> {
        let s = self.ctx.algebra.pow(&self.ctx.series_of(&self.exps), e);
        NilWord {
            ctx: self.ctx,
            exps: self.ctx.normal_form(&s),
        }
    }

    /// Coordinates of the word's image in `γ_lo / γ_{hi+1}`: the exponent
    /// sub-vector over strata `lo..=hi`. Requires every exponent below
    /// weight `lo` to vanish.
    pub fn graded_image(&self, lo: u32, hi: u32) -> Result<Vec<BigInt>, CollectError> {
        if lo < 1 || lo > hi || hi > self.ctx.class {
            return Err(CollectError::BadWeightRange {
                lo,
                hi,
                class: self.ctx.class,
            });
        }
        let first = self.ctx.basis.stratum_range(lo).start;
        if self.exps[..first].iter().any(|e| !e.is_zero()) {
            return Err(CollectError::NotInGamma { lo });
        }
        let end = self.ctx.basis.stratum_range(hi).end;
        Ok(self.exps[first..end].to_vec())
    }
}

/// Outcome of the relator-lattice verification for one `(p, c)`.
#[derive(Debug)]
pub struct TheoremReport {
    pub p: u64,
    pub c: u32,
    /// Whether the generated lattice equals `p · Z^N` exactly.
    pub holds: bool,
    /// Structure of `Z^N / lattice` (the multiplier of the presented group).
    pub quotient: FinAbelian,
    /// Free rank of the quotient; 0 whenever the lattice has full rank.
    pub free_rank: usize,
    /// `N = χ_{c+1}(2) + χ_{c+2}(2)`.
    pub ambient_rank: usize,
    /// The generated sublattice (rows are graded relator images).
    pub lattice: IntLattice,
    /// Hermite rows of the lattice that differ from `p · e_i`; empty exactly
    /// when `holds`. Points at the offending stratum coordinates when a
    /// congruence fails.
    pub defect_rows: Vec<usize>,
}

/// Check the congruence `[R, _c F] ≡ (γ_{c+1} F)^p (mod γ_{c+3} F)` for the
/// two-generator presentation with relator set
/// `{x^p, y^p, [y,x]^p, [y,x,y], [y,x,x]}`, and compute the quotient
/// `γ_{c+1}F / [R,_c F] γ_{c+3}F`, which is the `c`-nilpotent multiplier of
/// the presented group (the exponent-`p` extra-special group of order `p^3`
/// when `p` is odd; the dihedral group of order 8 when `p = 2`).
///
/// The lattice is spanned by the graded images of the left-normed
/// commutators `[w, v_1, ..., v_j]` with `w` a relator, `v_i ∈ {x, y}` and
/// `c <= j <= c + 1`; conjugation closure is absorbed because conjugates
/// differ by higher-weight members of the same family.
pub fn verify_theorem_11(p: u64, c: u32) -> Result<TheoremReport, CollectError> {
    verify_theorem_11_with(p, c, DEFAULT_VERIFY_MAX_CLASS, cfg!(feature = "parallel"))
}

/// Forced-sequential variant of [`verify_theorem_11`]; the data-parallel
/// default and this fallback compute identical reports.
pub fn verify_theorem_11_seq(p: u64, c: u32) -> Result<TheoremReport, CollectError> {
    verify_theorem_11_with(p, c, DEFAULT_VERIFY_MAX_CLASS, false)
}

/// Full-control variant: explicit class ceiling and parallelism switch.
/// `parallel = true` only takes effect when the `parallel` feature is on.
pub fn verify_theorem_11_with(
    p: u64,
    c: u32,
    max_class: u32,
    parallel: bool,
) -> Result<TheoremReport, CollectError> {
    if !is_prime(p) {
        return Err(CollectError::NotPrime(p));
    }
    if c < 2 || c > max_class {
        return Err(CollectError::ClassOutOfRange { c, max: max_class });
    }
    let ctx = NilGroupCtx::new(2, c + 2)?;
    let x = ctx.generator(0);
    let y = ctx.generator(1);
    let pe = BigInt::from(p);
    let yx = y.commutator(&x)?;
    let relators = [
        x.power(&pe),
        y.power(&pe),
        yx.power(&pe),
        yx.commutator(&y)?,
        yx.commutator(&x)?,
    ];

    // (relator index, letter sequence) for every left-normed family member.
    let mut specs: Vec<(usize, Vec<usize>)> = Vec::new();
    for r in 0..relators.len() {
        for j in c..=c + 1 {
            for mask in 0..(1u64 << j) {
                let seq = (0..j).map(|b| ((mask >> b) & 1) as usize).collect();
                specs.push((r, seq));
            }
        }
    }

    let image_of = |spec: &(usize, Vec<usize>)| -> Result<Option<Vec<BigInt>>, CollectError> {
        let (r, seq) = spec;
        let mut w = relators[*r].clone();
        for &v in seq {
            w = w.commutator(if v == 0 { &x } else { &y })?;
        }
        if w.is_identity() {
            return Ok(None);
        }
        Ok(Some(w.graded_image(c + 1, c + 2)?))
    };

    let images = compute_images(&specs, image_of, parallel)?;
    let rows: Vec<Vec<BigInt>> = images.into_iter().flatten().collect();

    let ambient_rank = ctx.basis.stratum_range(c + 2).end
        - ctx.basis.stratum_range(c + 1).start;
    let lattice = IntLattice::new(ambient_rank, rows)?;
    let target = IntLattice::scaled_identity(ambient_rank, &pe);
    let holds = lattice == target;
    let defect_rows = if holds {
        Vec::new()
    } else {
        let h = lattice.hermite();
        let t = target.hermite();
        (0..h.len().max(t.len()))
            .filter(|&i| h.get(i) != t.get(i))
            .collect()
    };
    let q = lattice.smith_quotient()?;
    Ok(TheoremReport {
        p,
        c,
        holds,
        quotient: q.torsion,
        free_rank: q.free_rank,
        ambient_rank,
        lattice,
        defect_rows,
    })
}

#[cfg(feature = "parallel")]
fn compute_images<F>(
    specs: &[(usize, Vec<usize>)],
    image_of: F,
    parallel: bool,
) -> Result<Vec<Option<Vec<BigInt>>>, CollectError>
where
    F: Fn(&(usize, Vec<usize>)) -> Result<Option<Vec<BigInt>>, CollectError> + Sync,
{
    use rayon::prelude::*;
    if parallel {
        specs.par_iter().map(&image_of).collect()
    } else {
        specs.iter().map(&image_of).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn compute_images<F>(
    specs: &[(usize, Vec<usize>)],
    image_of: F,
    _parallel: bool,
) -> Result<Vec<Option<Vec<BigInt>>>, CollectError>
where
    F: Fn(&(usize, Vec<usize>)) -> Result<Option<Vec<BigInt>>, CollectError>,
{
    specs.iter().map(&image_of).collect()
}
