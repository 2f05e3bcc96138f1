//! The correction term `Γ_{c+1}(A, B)` for direct products with abelian
//! arguments, and the resulting direct-product formula for nilpotent
//! multipliers.
//!
//! Terms are indexed by the mixed basic commutators of weight `c + 1` on an
//! alphabet with one letter per cyclic factor of `A` followed by one letter
//! per cyclic factor of `B`; each slot carries its own cyclic factor and the
//! term is the iterated tensor over the slots. `Γ` is the direct sum of the
//! mixed terms.
//!
//! A tempting coarser indexing — two letters `{a, b}` with every slot
//! carrying the whole group — agrees with this one up to weight 3 and on
//! rank-one arguments, but diverges from weight 4 on: the multigraded
//! commutator counts stop being products of the coarse contents (weight-4
//! content `(2,2)` has 5 fine terms against `rank^2 · rank^2` predicting 4).
//! Only the per-cyclic-factor indexing reproduces the multiplier of a direct
//! sum of abelian groups, so it is the one implemented; see the unit tests
//! for the boundary case.

use crate::abelian::{tensor, FinAbelian};
use crate::hall::{Alphabet, BasicCommutator, HallBasis, HallError};
use std::sync::Arc;
use thiserror::Error;

/// Errors from the Γ construction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    /// The weight-(c+1) enumeration hit the basis ceiling.
    #[error(transparent)]
    Resource(#[from] HallError),
    /// An argument has too many cyclic factors to address letters.
    #[error("argument rank too large for letter indexing")]
    RankTooLarge,
}

/// One mixed tensor term of `Γ_{c+1}(A, B)`.
#[derive(Debug, Clone)]
pub struct GammaTermReport {
    /// The indexing basic commutator over the per-factor alphabet.
    pub commutator: Arc<BasicCommutator>,
    /// Total occurrences of `A`-block letters (`s >= 1`).
    pub a_count: u32,
    /// Total occurrences of `B`-block letters (`t >= 1`).
    pub b_count: u32,
    /// The iterated tensor of the slot factors; a cyclic group or trivial.
    pub term: FinAbelian,
}

/// `Γ_{c+1}(A, B)` together with its term table.
#[derive(Debug, Clone)]
pub struct GammaResult {
    pub group: FinAbelian,
    /// Terms in the basis order of their indexing commutators.
    pub terms: Vec<GammaTermReport>,
    /// The basis the commutators render against (letters `a1.., b1..`).
    pub basis: HallBasis,
    /// Number of `A`-block letters; letters `>= split` belong to `B`.
    pub split: usize,
}

/// Compute `Γ_{c+1}(A, B)` for finite abelian `A`, `B` and `c >= 1`.
pub fn gamma(a: &FinAbelian, b: &FinAbelian, c: u32) -> Result<GammaResult, GammaError> {
    assert!(c >= 1, "nilpotency class must be >= 1");
    let a_slots = cyclic_slots(a)?;
    let b_slots = cyclic_slots(b)?;
    let split = a_slots.len();
    let labels = (1..=a_slots.len())
        .map(|i| format!("a{i}"))
        .chain((1..=b_slots.len()).map(|i| format!("b{i}")))
        .collect::<Vec<_>>();
    let alphabet = Alphabet::from_labels(labels).expect("distinct labels");
    let basis = HallBasis::generate_on(alphabet, c + 1, crate::hall::DEFAULT_BASIS_CEILING)?;
    let slots: Vec<FinAbelian> = a_slots.into_iter().chain(b_slots).collect();

    let mut group = FinAbelian::trivial();
    let mut terms = Vec::new();
    for bc in basis.stratum(c + 1) {
        if !bc.is_mixed(split) {
            continue;
        }
        let mut term: Option<FinAbelian> = None;
        let mut a_count = 0u32;
        let mut b_count = 0u32;
        for &(letter, count) in bc.content() {
            if letter < split {
                a_count += count;
            } else {
                b_count += count;
            }
            for _ in 0..count {
                term = Some(match term {
                    None => slots[letter].clone(),
                    Some(t) => tensor(&t, &slots[letter]),
                });
            }
        }
        let term = term.expect("weight >= 2 has slots");
        group = group.direct_sum(&term);
        terms.push(GammaTermReport {
            commutator: bc.clone(),
            a_count,
            b_count,
            term,
        });
    }
    Ok(GammaResult {
        group,
        terms,
        basis,
        split,
    })
}

/// One cyclic group per factor, multiplicities expanded.
fn cyclic_slots(g: &FinAbelian) -> Result<Vec<FinAbelian>, GammaError> {
    let mut out = Vec::new();
    for (p, e, m) in g.factor_triples() {
        let m = u64::try_from(m).map_err(|_| GammaError::RankTooLarge)?;
        let m = usize::try_from(m).map_err(|_| GammaError::RankTooLarge)?;
        for _ in 0..m {
            out.push(FinAbelian::cyclic(p, e));
        }
    }
    Ok(out)
}

/// The direct-product formula: given the already-known multipliers `mg`,
/// `mh` of two factors and their abelianizations, the multiplier of the
/// product is `mg ⊕ mh ⊕ Γ_{c+1}(gab, hab)`.
pub fn multiplier_direct_product(
    mg: &FinAbelian,
    mh: &FinAbelian,
    gab: &FinAbelian,
    hab: &FinAbelian,
    c: u32,
) -> Result<FinAbelian, GammaError> {
    let correction = gamma(gab, hab, c)?.group;
    Ok(mg.direct_sum(mh).direct_sum(&correction))
}
