//! Recognized p-group classes and their c-nilpotent multipliers: abelian
//! groups, extra-special groups, generalized extra-special groups, and
//! direct products of these, plus the order bound, its attainment test, and
//! capability verdicts.
//!
//! Groups are symbolic class members; nothing here multiplies elements. The
//! only element-level engine in the crate is [`crate::collect`], which serves
//! as the independent cross-check for the `E_1` column of the tables.

use crate::abelian::{multiplier_abelian, FinAbelian};
use crate::gamma::{gamma, GammaError};
use crate::witt::{is_prime, witt};
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;
use thiserror::Error;

/// Errors from descriptor validation and table dispatch.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PGroupError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("m must be >= 1")]
    ZeroM,
    #[error("{0} requires p=2")]
    NeedsPTwo(&'static str),
    #[error("{0} requires odd p")]
    NeedsOddP(&'static str),
    #[error("dihedral parameter must satisfy n >= 2")]
    DihedralTooSmall,
    #[error("bound requires n > m >= 1")]
    BadBoundArgs,
    #[error("this computation requires c >= 2")]
    ClassTooSmall,
    #[error("descriptor does not have derived subgroup of order p")]
    DerivedNotP,
    #[error("capability is classified only for extra-special and generalized extra-special descriptors")]
    ClassNotCovered,
    #[error(transparent)]
    Resource(#[from] GammaError),
}

/// Isomorphism type tag of an extra-special group of order `p^{2m+1}`.
///
/// For odd `p`, `ExpP`/`ExpP2` record the exponent; at `m = 1` these are the
/// groups usually written `E_1` and `E_2`. For `p = 2`, `D8`/`Q8` name the
/// order-8 groups; with `m > 1` the tag records the central-product type.
/// In every case the tag only affects results at `m = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EsVariant {
    ExpP,
    ExpP2,
    D8,
    Q8,
}

impl fmt::Display for EsVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EsVariant::ExpP => write!(f, "expP"),
            EsVariant::ExpP2 => write!(f, "expP2"),
            EsVariant::D8 => write!(f, "D8"),
            EsVariant::Q8 => write!(f, "Q8"),
        }
    }
}

/// Center shape of a generalized extra-special group: either the center
/// splits off the derived subgroup (`G = E x A`) or it contains an element
/// of order `p^2` through it (`G = (E . Z_{p^2}) x A`), with `A` elementary
/// abelian of the recorded rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GesCenter {
    Split { complement_rank: u64 },
    Central { complement_rank: u64 },
}

/// A validated extra-special descriptor of order `p^{2m+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtraSpecial {
    p: u64,
    m: u32,
    variant: EsVariant,
}

impl ExtraSpecial {
    pub fn new(p: u64, m: u32, variant: EsVariant) -> Result<Self, PGroupError> {
        if !is_prime(p) {
            return Err(PGroupError::NotPrime(p));
        }
        if m == 0 {
            return Err(PGroupError::ZeroM);
        }
        match variant {
            EsVariant::ExpP if p == 2 => return Err(PGroupError::NeedsOddP("expP")),
            EsVariant::ExpP2 if p == 2 => return Err(PGroupError::NeedsOddP("expP2")),
            EsVariant::D8 if p != 2 => return Err(PGroupError::NeedsPTwo("D8")),
            EsVariant::Q8 if p != 2 => return Err(PGroupError::NeedsPTwo("Q8")),
            _ => {}
        }
        Ok(ExtraSpecial { p, m, variant })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn variant(&self) -> EsVariant {
        self.variant
    }
}

/// A validated generalized extra-special descriptor.
///
/// `Split` with `m = 1` denotes the capable representative of its order
/// (`E_1 x A` for odd `p`, `D8 x A` for `p = 2`); the other variants of the
/// same shape are written as explicit products instead.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenExtraSpecial {
    p: u64,
    m: u32,
    center: GesCenter,
}

impl GenExtraSpecial {
    pub fn new(p: u64, m: u32, center: GesCenter) -> Result<Self, PGroupError> {
        if !is_prime(p) {
            return Err(PGroupError::NotPrime(p));
        }
        if m == 0 {
            return Err(PGroupError::ZeroM);
        }
        Ok(GenExtraSpecial { p, m, center })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn center(&self) -> GesCenter {
        self.center
    }

    /// The tag used for the extra-special factor when a split descriptor is
    /// rewritten as a direct product.
    fn canonical_variant(&self) -> EsVariant {
        if self.p == 2 {
            EsVariant::D8
        } else {
            EsVariant::ExpP
        }
    }
}

/// A recognized group: abelian, extra-special, generalized extra-special,
/// or an external direct product of recognized groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescriptor {
    Abelian(FinAbelian),
    ExtraSpecial(ExtraSpecial),
    GenExtraSpecial(GenExtraSpecial),
    Product(Vec<GroupDescriptor>),
}

impl GroupDescriptor {
    pub fn abelian(g: FinAbelian) -> Self {
        GroupDescriptor::Abelian(g)
    }

    pub fn extra_special(p: u64, m: u32, variant: EsVariant) -> Result<Self, PGroupError> {
        Ok(GroupDescriptor::ExtraSpecial(ExtraSpecial::new(p, m, variant)?))
    }

    pub fn gen_extra_special(p: u64, m: u32, center: GesCenter) -> Result<Self, PGroupError> {
        Ok(GroupDescriptor::GenExtraSpecial(GenExtraSpecial::new(p, m, center)?))
    }

    /// Group order.
    pub fn order(&self) -> BigUint {
        match self {
            GroupDescriptor::Abelian(a) => a.order(),
            GroupDescriptor::ExtraSpecial(es) => {
                BigUint::from(es.p).pow(2 * es.m + 1)
            }
            GroupDescriptor::GenExtraSpecial(ges) => {
                let e = match ges.center {
                    GesCenter::Split { complement_rank } => {
                        2 * ges.m as u64 + 1 + complement_rank
                    }
                    GesCenter::Central { complement_rank } => {
                        2 * ges.m as u64 + 2 + complement_rank
                    }
                };
                BigUint::from(ges.p).pow(u32::try_from(e).expect("order exponent fits u32"))
            }
            GroupDescriptor::Product(parts) => {
                parts.iter().map(GroupDescriptor::order).product()
            }
        }
    }

    /// The abelianization `G/G'`.
    pub fn abelianization(&self) -> FinAbelian {
        match self {
            GroupDescriptor::Abelian(a) => a.clone(),
            GroupDescriptor::ExtraSpecial(es) => {
                FinAbelian::elementary(es.p, 2 * es.m as u64)
            }
            GroupDescriptor::GenExtraSpecial(ges) => {
                let rank = match ges.center {
                    GesCenter::Split { complement_rank } => {
                        2 * ges.m as u64 + complement_rank
                    }
                    // The order-p^2 central factor survives with order p in
                    // G/G', so the abelianization is elementary of corank 1.
                    GesCenter::Central { complement_rank } => {
                        2 * ges.m as u64 + 1 + complement_rank
                    }
                };
                FinAbelian::elementary(ges.p, rank)
            }
            GroupDescriptor::Product(parts) => parts
                .iter()
                .map(GroupDescriptor::abelianization)
                .fold(FinAbelian::trivial(), |acc, a| acc.direct_sum(&a)),
        }
    }

    /// Order of the derived subgroup.
    pub fn derived_order(&self) -> BigUint {
        match self {
            GroupDescriptor::Abelian(_) => BigUint::one(),
            GroupDescriptor::ExtraSpecial(es) => BigUint::from(es.p),
            GroupDescriptor::GenExtraSpecial(ges) => BigUint::from(ges.p),
            GroupDescriptor::Product(parts) => {
                parts.iter().map(GroupDescriptor::derived_order).product()
            }
        }
    }
}

/// Normalized member of the `|G'| = p` family handled by the bound and
/// capability classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum PClass {
    /// `E(p^{2m+1}, variant) x Z_p^rank`.
    Es {
        p: u64,
        m: u32,
        variant: EsVariant,
        rank: u64,
        /// Whether the descriptor was literally an extra-special atom with
        /// no complement (used only for citation tags).
        pure: bool,
    },
    /// `(E(p^{2m+1}) . Z_{p^2}) x Z_p^rank`.
    Central { p: u64, m: u32, rank: u64 },
}

/// Flatten products and recognize `one non-abelian atom x elementary
/// abelian p-part`. Returns `None` when the descriptor is outside the
/// `|G'| = p` family (abelian, several non-abelian factors, a non-elementary
/// or cross-prime abelian part).
pub(crate) fn normalize_p_class(g: &GroupDescriptor) -> Option<PClass> {
    fn collect<'a>(
        g: &'a GroupDescriptor,
        atoms: &mut Vec<&'a GroupDescriptor>,
        abelian: &mut FinAbelian,
    ) {
        match g {
            GroupDescriptor::Abelian(a) => *abelian = abelian.direct_sum(a),
            GroupDescriptor::Product(parts) => {
                for p in parts {
                    collect(p, atoms, abelian);
                }
            }
            other => atoms.push(other),
        }
    }
    let mut atoms = Vec::new();
    let mut abelian = FinAbelian::trivial();
    collect(g, &mut atoms, &mut abelian);
    if atoms.len() != 1 {
        return None;
    }
    let p = match atoms[0] {
        GroupDescriptor::ExtraSpecial(es) => es.p,
        GroupDescriptor::GenExtraSpecial(ges) => ges.p,
        _ => unreachable!("atoms are non-abelian"),
    };
    if !(abelian.is_trivial() || (abelian.is_p_group(p) && abelian.is_elementary())) {
        return None;
    }
    let extra_rank = u64::try_from(&abelian.total_rank()).ok()?;
    Some(match atoms[0] {
        GroupDescriptor::ExtraSpecial(es) => PClass::Es {
            p,
            m: es.m,
            variant: es.variant,
            rank: extra_rank,
            pure: extra_rank == 0,
        },
        GroupDescriptor::GenExtraSpecial(ges) => match ges.center {
            GesCenter::Split { complement_rank } => PClass::Es {
                p,
                m: ges.m,
                variant: ges.canonical_variant(),
                rank: complement_rank + extra_rank,
                pure: complement_rank + extra_rank == 0,
            },
            GesCenter::Central { complement_rank } => PClass::Central {
                p,
                m: ges.m,
                rank: complement_rank + extra_rank,
            },
        },
        _ => unreachable!(),
    })
}

/// Citation tag attached to every computed result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Thm39(u8),
    Thm314(u8),
    Cor28,
    Prop26(Vec<Provenance>),
    Prop55,
    Prop56,
    Thm313ii,
    Thm317,
    Thm42,
    Thm58,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn roman(k: u8) -> &'static str {
            match k {
                1 => "i",
                2 => "ii",
                _ => "iii",
            }
        }
        match self {
            Provenance::Thm39(k) => write!(f, "Thm3.9({})", roman(*k)),
            Provenance::Thm314(k) => write!(f, "Thm3.14({})", roman(*k)),
            Provenance::Cor28 => write!(f, "Cor2.8"),
            Provenance::Prop26(parts) => {
                write!(f, "Prop2.6(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Provenance::Prop55 => write!(f, "Prop5.5"),
            Provenance::Prop56 => write!(f, "Prop5.6"),
            Provenance::Thm313ii => write!(f, "Thm3.13(ii)"),
            Provenance::Thm317 => write!(f, "Thm3.17"),
            Provenance::Thm42 => write!(f, "Thm4.2"),
            Provenance::Thm58 => write!(f, "Thm5.8"),
        }
    }
}

/// Either a full structure or, where only the order is classified, the
/// order alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiplierStructure {
    Full(FinAbelian),
    OrderOnly(BigUint),
}

impl MultiplierStructure {
    pub fn order(&self) -> BigUint {
        match self {
            MultiplierStructure::Full(g) => g.order(),
            MultiplierStructure::OrderOnly(o) => o.clone(),
        }
    }

    pub fn as_full(&self) -> Option<&FinAbelian> {
        match self {
            MultiplierStructure::Full(g) => Some(g),
            MultiplierStructure::OrderOnly(_) => None,
        }
    }
}

/// A multiplier value with the theorem it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierResult {
    pub structure: MultiplierStructure,
    pub provenance: Provenance,
}

fn chi(weight: u32, d: u64) -> BigUint {
    witt(weight, d).expect("weight >= 1")
}

fn elem_big(p: u64, rank: BigUint) -> FinAbelian {
    let mut g = FinAbelian::trivial();
    g.add_factor(p, 1, rank);
    g
}

/// The `c`-nilpotent multiplier of a recognized group, `c >= 1`.
///
/// Structure is returned whenever a structure theorem applies; the central
/// generalized extra-special case at `c = 1` is classified by order only.
pub fn multiplier(g: &GroupDescriptor, c: u32) -> Result<MultiplierResult, PGroupError> {
    assert!(c >= 1, "nilpotency class must be >= 1");
    match g {
        GroupDescriptor::Abelian(a) => Ok(MultiplierResult {
            structure: MultiplierStructure::Full(multiplier_abelian(a, c)),
            provenance: Provenance::Cor28,
        }),
        GroupDescriptor::ExtraSpecial(es) => Ok(extra_special_multiplier(es, c)),
        GroupDescriptor::GenExtraSpecial(ges) => match ges.center {
            GesCenter::Split { complement_rank } => {
                // One product pathway for all split cases, including rank 0.
                let factor = GroupDescriptor::ExtraSpecial(
                    ExtraSpecial::new(ges.p, ges.m, ges.canonical_variant())
                        .expect("validated fields"),
                );
                let tail = GroupDescriptor::Abelian(FinAbelian::elementary(
                    ges.p,
                    complement_rank,
                ));
                product_multiplier(&[factor, tail], c)
            }
            GesCenter::Central { complement_rank } => {
                let core = central_core_multiplier(ges, c);
                if complement_rank == 0 {
                    return Ok(core);
                }
                let core_ab = FinAbelian::elementary(ges.p, 2 * ges.m as u64 + 1);
                let tail = GroupDescriptor::Abelian(FinAbelian::elementary(
                    ges.p,
                    complement_rank,
                ));
                fold_product(core, core_ab, &[tail], c)
            }
        },
        GroupDescriptor::Product(parts) => {
            if parts.len() == 1 {
                return multiplier(&parts[0], c);
            }
            product_multiplier(parts, c)
        }
    }
}

/// The extra-special table.
fn extra_special_multiplier(es: &ExtraSpecial, c: u32) -> MultiplierResult {
    let p = es.p;
    if c == 1 {
        let (structure, clause) = if es.m > 1 {
            // elementary abelian of order p^(2n^2 - n - 1), n = m
            let rank = BigUint::from(2 * es.m as u64 + 1) * BigUint::from(es.m as u64 - 1);
            (MultiplierStructure::Full(elem_big(p, rank)), 1)
        } else {
            match es.variant {
                EsVariant::ExpP => (
                    MultiplierStructure::Full(FinAbelian::elementary(p, 2)),
                    2,
                ),
                EsVariant::ExpP2 => {
                    (MultiplierStructure::Full(FinAbelian::trivial()), 2)
                }
                EsVariant::D8 => (
                    MultiplierStructure::Full(FinAbelian::cyclic(2, 1)),
                    3,
                ),
                EsVariant::Q8 => {
                    (MultiplierStructure::Full(FinAbelian::trivial()), 3)
                }
            }
        };
        return MultiplierResult {
            structure,
            provenance: Provenance::Thm39(clause),
        };
    }
    let (structure, clause) = if es.m > 1 {
        (
            MultiplierStructure::Full(elem_big(p, chi(c + 1, 2 * es.m as u64))),
            1,
        )
    } else {
        match es.variant {
            EsVariant::ExpP => (
                MultiplierStructure::Full(elem_big(p, chi(c + 1, 2) + chi(c + 2, 2))),
                2,
            ),
            EsVariant::ExpP2 => {
                (MultiplierStructure::Full(elem_big(p, chi(c + 1, 2))), 2)
            }
            EsVariant::Q8 => {
                (MultiplierStructure::Full(elem_big(2, chi(c + 1, 2))), 3)
            }
            EsVariant::D8 => {
                let mut g = FinAbelian::cyclic(2, 2);
                g.add_factor(2, 1, chi(c + 1, 2) - BigUint::one());
                (MultiplierStructure::Full(g), 3)
            }
        }
    };
    MultiplierResult {
        structure,
        provenance: Provenance::Thm314(clause),
    }
}

/// Multiplier of the central product core `E(p^{2m+1}) . Z_{p^2}`.
fn central_core_multiplier(ges: &GenExtraSpecial, c: u32) -> MultiplierResult {
    let p = ges.p;
    let m = ges.m as u64;
    if c == 1 {
        // Only the order p^(2m^2 + m - 1) is classified here.
        let exp = 2 * m * m + m - 1;
        MultiplierResult {
            structure: MultiplierStructure::OrderOnly(
                BigUint::from(p).pow(u32::try_from(exp).expect("fits u32")),
            ),
            provenance: Provenance::Prop55,
        }
    } else {
        // Order p^(chi_{c+1}(2m)); elementary abelian since it embeds in the
        // multiplier of an elementary abelian group. Evaluated through the
        // abelian formula on Z_{p^2} + Z_p^(2m-1), whose S-value is the same
        // exponent.
        let mut model = FinAbelian::cyclic(p, 2);
        model.add_factor(p, 1, BigUint::from(2 * m - 1));
        MultiplierResult {
            structure: MultiplierStructure::Full(multiplier_abelian(&model, c)),
            provenance: Provenance::Prop56,
        }
    }
}

/// Left fold of the direct-product formula over descriptor components.
fn product_multiplier(
    parts: &[GroupDescriptor],
    c: u32,
) -> Result<MultiplierResult, PGroupError> {
    assert!(!parts.is_empty(), "product needs at least one component");
    let first = multiplier(&parts[0], c)?;
    fold_product(first, parts[0].abelianization(), &parts[1..], c)
}

/// Fold components into an accumulated (multiplier, abelianization) pair via
/// `M(G x H) = M(G) + M(H) + Γ_{c+1}(G^ab, H^ab)`. Each fold's Γ uses the
/// abelianization of the accumulated product.
fn fold_product(
    first: MultiplierResult,
    first_ab: FinAbelian,
    rest: &[GroupDescriptor],
    c: u32,
) -> Result<MultiplierResult, PGroupError> {
    let mut structure = first.structure;
    let mut acc_ab = first_ab;
    let mut tags = vec![first.provenance];
    for part in rest {
        let comp = multiplier(part, c)?;
        let comp_ab = part.abelianization();
        let correction = gamma(&acc_ab, &comp_ab, c)?.group;
        structure = match (&structure, &comp.structure) {
            (MultiplierStructure::Full(a), MultiplierStructure::Full(b)) => {
                MultiplierStructure::Full(a.direct_sum(b).direct_sum(&correction))
            }
            _ => MultiplierStructure::OrderOnly(
                structure.order() * comp.structure.order() * correction.order(),
            ),
        };
        tags.push(comp.provenance);
        acc_ab = acc_ab.direct_sum(&comp_ab);
    }
    Ok(MultiplierResult {
        structure,
        provenance: if tags.len() == 1 {
            tags.pop().expect("one tag")
        } else {
            Provenance::Prop26(tags)
        },
    })
}

/// `γ*_{c+1}` of the dihedral group of order `2n`: `Z_n` for odd `n`,
/// `Z_n x Z_2^(χ_{c+1}(2) - 1)` for even `n`, in primary decomposition.
pub fn gamma_star_dihedral(n: u64, c: u32) -> Result<FinAbelian, PGroupError> {
    assert!(c >= 1, "nilpotency class must be >= 1");
    if n < 2 {
        return Err(PGroupError::DihedralTooSmall);
    }
    let mut g = FinAbelian::normalize(&[n]).map_err(|_| PGroupError::DihedralTooSmall)?;
    if n.is_multiple_of(2) {
        g.add_factor(2, 1, chi(c + 1, 2) - BigUint::one());
    }
    Ok(g)
}

/// The order-bound exponent for `|G| = p^n`, `|G'| = p^m`, `c >= 2`:
/// `χ_{c+1}(n-m) + χ_{c+2}(2) + (m-1)(n-m)^c`.
pub fn bound_theorem17(n: u32, m: u32, c: u32) -> Result<BigUint, PGroupError> {
    if c < 2 {
        return Err(PGroupError::ClassTooSmall);
    }
    if m < 1 || n <= m {
        return Err(PGroupError::BadBoundArgs);
    }
    let span = (n - m) as u64;
    let tail = BigUint::from(m as u64 - 1) * BigUint::from(span).pow(c);
    Ok(chi(c + 1, span) + chi(c + 2, 2) + tail)
}

/// Whether a `|G'| = p` descriptor attains the `m = 1` bound, which happens
/// exactly for the exponent-`p` order-`p^3` group times an elementary
/// abelian complement (odd `p`).
pub fn bound_attained_m1(g: &GroupDescriptor, c: u32) -> Result<bool, PGroupError> {
    if c < 2 {
        return Err(PGroupError::ClassTooSmall);
    }
    let class = normalize_p_class(g).ok_or(PGroupError::DerivedNotP)?;
    Ok(matches!(
        class,
        PClass::Es {
            m: 1,
            variant: EsVariant::ExpP,
            ..
        }
    ))
}

/// Capability verdict with its citation tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapabilityVerdict {
    pub capable: bool,
    /// Equal to `capable` throughout the classified family.
    pub c_capable: bool,
    pub reason: Provenance,
}

/// Capability and `c`-capability over the extra-special and generalized
/// extra-special family (products with elementary abelian parts included).
/// The two notions coincide on this family; the verdict is `true` exactly
/// for `E_1 x Z_p^r` and `D8 x Z_2^r`.
pub fn capability(g: &GroupDescriptor, c: u32) -> Result<CapabilityVerdict, PGroupError> {
    assert!(c >= 1, "nilpotency class must be >= 1");
    let class = normalize_p_class(g).ok_or(PGroupError::ClassNotCovered)?;
    let (capable, pure) = match class {
        PClass::Es {
            m: 1,
            variant: EsVariant::ExpP | EsVariant::D8,
            pure,
            ..
        } => (true, pure),
        PClass::Es { pure, .. } => (false, pure),
        PClass::Central { .. } => (false, false),
    };
    Ok(CapabilityVerdict {
        capable,
        c_capable: capable,
        reason: if pure { Provenance::Thm42 } else { Provenance::Thm58 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::multiplier_abelian;

    fn es(p: u64, m: u32, v: EsVariant) -> GroupDescriptor {
        GroupDescriptor::extra_special(p, m, v).unwrap()
    }

    fn ges(p: u64, m: u32, center: GesCenter) -> GroupDescriptor {
        GroupDescriptor::gen_extra_special(p, m, center).unwrap()
    }

    fn full(r: &MultiplierResult) -> &FinAbelian {
        r.structure.as_full().expect("full structure")
    }

    #[test]
    fn descriptor_validation() {
        assert_eq!(
            GroupDescriptor::extra_special(3, 1, EsVariant::D8),
            Err(PGroupError::NeedsPTwo("D8"))
        );
        assert_eq!(
            GroupDescriptor::extra_special(2, 1, EsVariant::ExpP),
            Err(PGroupError::NeedsOddP("expP"))
        );
        assert_eq!(
            GroupDescriptor::extra_special(6, 1, EsVariant::ExpP),
            Err(PGroupError::NotPrime(6))
        );
        assert_eq!(
            GroupDescriptor::gen_extra_special(5, 0, GesCenter::Split { complement_rank: 1 }),
            Err(PGroupError::ZeroM)
        );
        // p = 2 with m > 1 records the central-product type
        assert!(GroupDescriptor::extra_special(2, 2, EsVariant::D8).is_ok());
    }

    #[test]
    fn orders_and_abelianizations() {
        let g = es(3, 2, EsVariant::ExpP);
        assert_eq!(g.order(), BigUint::from(3u64).pow(5));
        assert_eq!(g.abelianization(), FinAbelian::elementary(3, 4));
        assert_eq!(g.derived_order(), BigUint::from(3u64));

        let split = ges(5, 1, GesCenter::Split { complement_rank: 2 });
        assert_eq!(split.order(), BigUint::from(5u64).pow(5));
        assert_eq!(split.abelianization(), FinAbelian::elementary(5, 4));

        let central = ges(5, 1, GesCenter::Central { complement_rank: 1 });
        assert_eq!(central.order(), BigUint::from(5u64).pow(5));
        assert_eq!(central.abelianization(), FinAbelian::elementary(5, 4));
        assert_eq!(central.derived_order(), BigUint::from(5u64));
    }

    #[test]
    fn schur_multipliers_of_extra_specials() {
        // order p^3, odd p
        assert_eq!(
            full(&multiplier(&es(3, 1, EsVariant::ExpP), 1).unwrap()),
            &FinAbelian::elementary(3, 2)
        );
        assert!(full(&multiplier(&es(3, 1, EsVariant::ExpP2), 1).unwrap()).is_trivial());
        // order 8
        assert!(full(&multiplier(&es(2, 1, EsVariant::Q8), 1).unwrap()).is_trivial());
        assert_eq!(
            full(&multiplier(&es(2, 1, EsVariant::D8), 1).unwrap()),
            &FinAbelian::cyclic(2, 1)
        );
        // n > 1: elementary abelian of order p^(2n^2 - n - 1)
        let r = multiplier(&es(5, 2, EsVariant::ExpP2), 1).unwrap();
        assert_eq!(full(&r), &FinAbelian::elementary(5, 5));
        assert_eq!(r.provenance.to_string(), "Thm3.9(i)");
    }

    #[test]
    fn higher_multipliers_of_extra_specials() {
        // E(p^5): Z_p^(chi_3(4)) = Z_p^20
        let r = multiplier(&es(5, 2, EsVariant::ExpP), 2).unwrap();
        assert_eq!(full(&r), &FinAbelian::elementary(5, 20));
        assert_eq!(r.provenance.to_string(), "Thm3.14(i)");
        // E_2 at c = 2: Z_p^(chi_3(2)) = Z_p^2
        assert_eq!(
            full(&multiplier(&es(3, 1, EsVariant::ExpP2), 2).unwrap()),
            &FinAbelian::elementary(3, 2)
        );
        // E_1 at c = 2: Z_p^(chi_3(2) + chi_4(2)) = Z_p^5
        assert_eq!(
            full(&multiplier(&es(3, 1, EsVariant::ExpP), 2).unwrap()),
            &FinAbelian::elementary(3, 5)
        );
        // Q8: Z_2^(chi_3(2)) = Z_2^2
        assert_eq!(
            full(&multiplier(&es(2, 1, EsVariant::Q8), 2).unwrap()),
            &FinAbelian::elementary(2, 2)
        );
        // D8: Z_4 + Z_2^(chi_3(2) - 1) = Z_4 + Z_2
        let d8 = multiplier(&es(2, 1, EsVariant::D8), 2).unwrap();
        let mut expected = FinAbelian::cyclic(2, 2);
        expected.add_factor(2, 1, BigUint::one());
        assert_eq!(full(&d8), &expected);
        assert_eq!(d8.provenance.to_string(), "Thm3.14(iii)");
    }

    #[test]
    fn variant_is_informational_above_m_one() {
        for c in 1..=3 {
            assert_eq!(
                multiplier(&es(3, 2, EsVariant::ExpP), c).unwrap().structure,
                multiplier(&es(3, 2, EsVariant::ExpP2), c).unwrap().structure
            );
            assert_eq!(
                multiplier(&es(2, 2, EsVariant::D8), c).unwrap().structure,
                multiplier(&es(2, 2, EsVariant::Q8), c).unwrap().structure
            );
        }
    }

    #[test]
    fn non_capable_extra_specials_reduce_to_their_abelianization() {
        for c in 2..=3 {
            for g in [
                es(3, 1, EsVariant::ExpP2),
                es(2, 1, EsVariant::Q8),
                es(3, 2, EsVariant::ExpP),
                es(2, 2, EsVariant::D8),
            ] {
                let direct = multiplier(&g, c).unwrap();
                let via_ab = multiplier_abelian(&g.abelianization(), c);
                assert_eq!(full(&direct), &via_ab, "{g:?} c={c}");
            }
        }
    }

    #[test]
    fn central_ges_table() {
        // (E(p^3) . Z_{p^2}) at c = 2: Z_p^(chi_3(2)) = Z_p^2
        let r = multiplier(&ges(7, 1, GesCenter::Central { complement_rank: 0 }), 2).unwrap();
        assert_eq!(full(&r), &FinAbelian::elementary(7, 2));
        assert_eq!(r.provenance.to_string(), "Prop5.6");
        // c = 1: order p^(2m^2 + m - 1) only
        let r = multiplier(&ges(3, 2, GesCenter::Central { complement_rank: 0 }), 1).unwrap();
        assert_eq!(
            r.structure,
            MultiplierStructure::OrderOnly(BigUint::from(3u64).pow(9))
        );
        assert_eq!(r.provenance.to_string(), "Prop5.5");
        // with a complement the result folds through the product formula
        let r = multiplier(&ges(3, 1, GesCenter::Central { complement_rank: 1 }), 1).unwrap();
        // |M| = p^(2m^2+m-1) * |M(Z_p)| * |Z_p^(2m+1) ⊗ Z_p|
        //     = 3^2 * 1 * 3^3
        assert_eq!(
            r.structure,
            MultiplierStructure::OrderOnly(BigUint::from(3u64).pow(5))
        );
        assert_eq!(r.provenance.to_string(), "Prop2.6(Prop5.5, Cor2.8)");
    }

    #[test]
    fn split_ges_equals_explicit_product() {
        for c in 1..=3 {
            let g = ges(3, 1, GesCenter::Split { complement_rank: 2 });
            let explicit = GroupDescriptor::Product(vec![
                es(3, 1, EsVariant::ExpP),
                GroupDescriptor::Abelian(FinAbelian::elementary(3, 2)),
            ]);
            assert_eq!(
                multiplier(&g, c).unwrap().structure,
                multiplier(&explicit, c).unwrap().structure,
                "c={c}"
            );
        }
    }

    #[test]
    fn split_ges_attains_the_bound() {
        // E_1 x Z_p^(n-3): |M^(c)| = p^(chi_{c+1}(n-1) + chi_{c+2}(2))
        let g = ges(3, 1, GesCenter::Split { complement_rank: 1 });
        let r = multiplier(&g, 2).unwrap();
        // n = 4: chi_3(3) + chi_4(2) = 8 + 3 = 11
        assert_eq!(full(&r), &FinAbelian::elementary(3, 11));
    }

    #[test]
    fn bound_exponent_examples() {
        assert_eq!(bound_theorem17(4, 1, 2).unwrap(), BigUint::from(11u32));
        assert_eq!(bound_theorem17(5, 2, 2).unwrap(), BigUint::from(20u32));
        assert_eq!(bound_theorem17(3, 1, 2).unwrap(), BigUint::from(5u32));
        assert_eq!(bound_theorem17(3, 3, 2), Err(PGroupError::BadBoundArgs));
        assert_eq!(bound_theorem17(4, 1, 1), Err(PGroupError::ClassTooSmall));
    }

    #[test]
    fn bound_attainment() {
        assert!(bound_attained_m1(&ges(3, 1, GesCenter::Split { complement_rank: 2 }), 2).unwrap());
        assert!(bound_attained_m1(&es(3, 1, EsVariant::ExpP), 2).unwrap());
        assert!(!bound_attained_m1(&es(2, 1, EsVariant::D8), 2).unwrap());
        assert!(!bound_attained_m1(&es(5, 2, EsVariant::ExpP), 2).unwrap());
        assert!(!bound_attained_m1(&es(3, 1, EsVariant::ExpP2), 2).unwrap());
        assert!(
            !bound_attained_m1(&ges(3, 1, GesCenter::Central { complement_rank: 1 }), 2).unwrap()
        );
        assert_eq!(
            bound_attained_m1(&GroupDescriptor::Abelian(FinAbelian::cyclic(3, 1)), 2),
            Err(PGroupError::DerivedNotP)
        );
    }

    #[test]
    fn capability_verdicts() {
        for c in 1..=4 {
            let v = capability(&es(3, 1, EsVariant::ExpP), c).unwrap();
            assert!(v.capable && v.c_capable);
            assert_eq!(v.reason.to_string(), "Thm4.2");
            assert!(!capability(&es(2, 1, EsVariant::Q8), c).unwrap().capable);
            assert!(capability(&es(2, 1, EsVariant::D8), c).unwrap().capable);
            assert!(!capability(&es(3, 1, EsVariant::ExpP2), c).unwrap().capable);
            assert!(!capability(&es(3, 2, EsVariant::ExpP), c).unwrap().capable);
            let split = capability(&ges(3, 1, GesCenter::Split { complement_rank: 4 }), c).unwrap();
            assert!(split.capable);
            assert_eq!(split.reason.to_string(), "Thm5.8");
            assert!(
                !capability(&ges(3, 1, GesCenter::Central { complement_rank: 4 }), c)
                    .unwrap()
                    .capable
            );
            assert!(
                !capability(&ges(5, 3, GesCenter::Split { complement_rank: 0 }), c)
                    .unwrap()
                    .capable
            );
        }
        assert_eq!(
            capability(&GroupDescriptor::Abelian(FinAbelian::cyclic(3, 1)), 2),
            Err(PGroupError::ClassNotCovered)
        );
        let two_atoms = GroupDescriptor::Product(vec![
            es(3, 1, EsVariant::ExpP),
            es(3, 1, EsVariant::ExpP),
        ]);
        assert_eq!(capability(&two_atoms, 2), Err(PGroupError::ClassNotCovered));
    }

    #[test]
    fn q8_times_elementary_is_not_capable() {
        let g = GroupDescriptor::Product(vec![
            es(2, 1, EsVariant::Q8),
            GroupDescriptor::Abelian(FinAbelian::elementary(2, 3)),
        ]);
        assert!(!capability(&g, 2).unwrap().capable);
    }

    #[test]
    fn gamma_star_dihedral_values() {
        assert_eq!(gamma_star_dihedral(3, 2).unwrap(), FinAbelian::cyclic(3, 1));
        let mut d8 = FinAbelian::cyclic(2, 2);
        d8.add_factor(2, 1, BigUint::one());
        assert_eq!(gamma_star_dihedral(4, 2).unwrap(), d8);
        assert_eq!(gamma_star_dihedral(2, 1).unwrap(), FinAbelian::cyclic(2, 1));
        assert_eq!(gamma_star_dihedral(1, 2), Err(PGroupError::DihedralTooSmall));
    }

    #[test]
    fn e1_times_zp_has_the_lemma_316_order() {
        // M^(2)(E_1 x Z_p) = Z_p^11 via the product formula
        let g = GroupDescriptor::Product(vec![
            es(3, 1, EsVariant::ExpP),
            GroupDescriptor::Abelian(FinAbelian::cyclic(3, 1)),
        ]);
        let r = multiplier(&g, 2).unwrap();
        assert_eq!(full(&r), &FinAbelian::elementary(3, 11));
        assert_eq!(
            r.provenance.to_string(),
            "Prop2.6(Thm3.14(ii), Cor2.8)"
        );
    }
}
