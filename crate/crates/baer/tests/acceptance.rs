//! Acceptance suite: one test per exit criterion, every check exact.
//! Each test prints a `criterion N: PASS` line on success so the suite reads
//! as a checklist under `cargo test --test acceptance -- --nocapture`.

use baer::abelian::{
    iterated_tensor, max_abelian, multiplier_abelian, FinAbelian,
};
use baer::collect::verify_theorem_11;
use baer::gamma::multiplier_direct_product;
use baer::hall::HallBasis;
use baer::pgroups::{
    bound_attained_m1, bound_theorem17, capability, gamma_star_dihedral, multiplier,
    EsVariant, GesCenter, GroupDescriptor, MultiplierStructure,
};
use baer::witt::witt;
use num_bigint::BigUint;
use num_traits::Zero;

fn chi(weight: u32, d: u64) -> BigUint {
    witt(weight, d).unwrap()
}

fn es(p: u64, m: u32, v: EsVariant) -> GroupDescriptor {
    GroupDescriptor::extra_special(p, m, v).unwrap()
}

fn ges(p: u64, m: u32, center: GesCenter) -> GroupDescriptor {
    GroupDescriptor::gen_extra_special(p, m, center).unwrap()
}

fn times_elem(g: GroupDescriptor, p: u64, rank: u64) -> GroupDescriptor {
    if rank == 0 {
        g
    } else {
        GroupDescriptor::Product(vec![
            g,
            GroupDescriptor::Abelian(FinAbelian::elementary(p, rank)),
        ])
    }
}

fn full_structure(g: &GroupDescriptor, c: u32) -> FinAbelian {
    match multiplier(g, c).unwrap().structure {
        MultiplierStructure::Full(s) => s,
        MultiplierStructure::OrderOnly(o) => panic!("expected full structure, got order {o}"),
    }
}

/// All single-prime abelian groups of the given prime with `rank` cyclic
/// factors and exponents `<= max_exp` (exponent multisets, descending).
fn abelians_of_rank(p: u64, rank: u32, max_exp: u32) -> Vec<FinAbelian> {
    fn rec(rank: u32, bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rank == 0 {
            out.push(cur.clone());
            return;
        }
        for e in (1..=bound).rev() {
            cur.push(e);
            rec(rank - 1, e, cur, out);
            cur.pop();
        }
    }
    if rank == 0 {
        return vec![FinAbelian::trivial()];
    }
    let mut shapes = Vec::new();
    rec(rank, max_exp, &mut Vec::new(), &mut shapes);
    shapes
        .into_iter()
        .map(|exps| FinAbelian::from_prime_exponents(p, &exps))
        .collect()
}

#[test]
fn criterion_01_witt_matches_enumeration() {
    for d in 0..=4u64 {
        let basis = HallBasis::generate(d as usize, 8).unwrap();
        for n in 1..=8u32 {
            assert_eq!(
                BigUint::from(basis.stratum(n).len()),
                chi(n, d),
                "stratum count d={d} n={n}"
            );
        }
    }
    println!("criterion 1 (witt formula vs basis enumeration): PASS");
}

#[test]
fn criterion_02_relator_lattice_oracle() {
    let mut failures = Vec::new();
    for p in [2u64, 3, 5] {
        for c in [2u32, 3] {
            let report = verify_theorem_11(p, c).unwrap();
            let expected_rank = chi(c + 1, 2) + chi(c + 2, 2);
            let expected =
                {
                    let mut g = FinAbelian::trivial();
                    g.add_factor(p, 1, expected_rank.clone());
                    g
                };
            if !report.holds {
                failures.push(format!(
                    "p={p} c={c}: congruence fails (defect rows {:?}, quotient {})",
                    report.defect_rows, report.quotient
                ));
                continue;
            }
            if report.quotient != expected || report.free_rank != 0 {
                failures.push(format!(
                    "p={p} c={c}: quotient {} != Z_{p}^{expected_rank}",
                    report.quotient
                ));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "relator-lattice congruence expected to hold with quotient \
         Z_p^(chi_c+1(2)+chi_c+2(2)) on every cell, but:\n  {}\n\
         note: at p = 2 the two-generator presentation collapses to the \
         dihedral group of order 8, whose multiplier is Z4 x Z2^(chi-1); \
         the congruence itself is an odd-p statement (the weight-(c+2) \
         correction in [x^p, y, x, ...] carries a binomial(p,2) coefficient, \
         which is not divisible by p at p = 2). See the dihedral cross-checks \
         in tests/cross_checks.rs for the exact p = 2 values.",
        failures.join("\n  ")
    );
    println!("criterion 2 (relator-lattice congruence and E1 quotient): PASS");
}

#[test]
fn criterion_03_extra_special_table() {
    // (descriptor, c, expected) with expectations written out per the
    // classification: c = 1 and c in {2, 3} for every valid variant at
    // p in {2, 3, 5}, m in {1, 2}.
    let z = |p: u64, e: u32| FinAbelian::cyclic(p, e);
    let zr = FinAbelian::elementary;
    let d8_higher = |c: u32| {
        let mut g = z(2, 2);
        g.add_factor(2, 1, chi(c + 1, 2) - BigUint::from(1u32));
        g
    };
    let mut cases: Vec<(GroupDescriptor, u32, FinAbelian)> = Vec::new();
    for p in [3u64, 5] {
        cases.push((es(p, 1, EsVariant::ExpP), 1, zr(p, 2)));
        cases.push((es(p, 1, EsVariant::ExpP2), 1, FinAbelian::trivial()));
        for c in [2u32, 3] {
            let e1_rank = u64::try_from(&(chi(c + 1, 2) + chi(c + 2, 2))).unwrap();
            let e2_rank = u64::try_from(&chi(c + 1, 2)).unwrap();
            cases.push((es(p, 1, EsVariant::ExpP), c, zr(p, e1_rank)));
            cases.push((es(p, 1, EsVariant::ExpP2), c, zr(p, e2_rank)));
        }
    }
    cases.push((es(2, 1, EsVariant::D8), 1, z(2, 1)));
    cases.push((es(2, 1, EsVariant::Q8), 1, FinAbelian::trivial()));
    for c in [2u32, 3] {
        let q8_rank = u64::try_from(&chi(c + 1, 2)).unwrap();
        cases.push((es(2, 1, EsVariant::D8), c, d8_higher(c)));
        cases.push((es(2, 1, EsVariant::Q8), c, zr(2, q8_rank)));
    }
    // m = 2 (order p^5): variant-independent rows for every p.
    for p in [2u64, 3, 5] {
        let variants: &[EsVariant] = if p == 2 {
            &[EsVariant::D8, EsVariant::Q8]
        } else {
            &[EsVariant::ExpP, EsVariant::ExpP2]
        };
        for &v in variants {
            cases.push((es(p, 2, v), 1, zr(p, 5))); // p^(2*4 - 2 - 1)
            for c in [2u32, 3] {
                let rank = u64::try_from(&chi(c + 1, 4)).unwrap();
                cases.push((es(p, 2, v), c, zr(p, rank)));
            }
        }
    }
    for (g, c, expected) in cases {
        assert_eq!(full_structure(&g, c), expected, "{g:?} at c={c}");
    }
    // spot values named explicitly in the table
    assert_eq!(full_structure(&es(5, 2, EsVariant::ExpP), 2), zr(5, 20));
    assert_eq!(full_structure(&es(2, 1, EsVariant::Q8), 2), zr(2, 2));
    println!("criterion 3 (extra-special multiplier table): PASS");
}

#[test]
fn criterion_04_product_formula_cross_validation() {
    let mut cases = 0u64;
    for p in [2u64, 3] {
        let mut pool: Vec<FinAbelian> = Vec::new();
        for rank in 0..=5u32 {
            pool.extend(abelians_of_rank(p, rank, 3));
        }
        for a in &pool {
            for b in &pool {
                let rank = a.total_rank() + b.total_rank();
                if rank > BigUint::from(5u32) {
                    continue;
                }
                for c in 1..=3u32 {
                    let product = multiplier_direct_product(
                        &multiplier_abelian(a, c),
                        &multiplier_abelian(b, c),
                        a,
                        b,
                        c,
                    )
                    .unwrap();
                    let direct = multiplier_abelian(&a.direct_sum(b), c);
                    assert_eq!(product, direct, "a={a} b={b} c={c}");
                    cases += 1;
                }
            }
        }
    }
    assert!(cases > 2000, "expected a thousands-sized matrix, got {cases}");
    println!("criterion 4 (product formula vs direct evaluation, {cases} cases): PASS");
}

#[test]
fn criterion_05_partition_maximization() {
    for n in 1..=10u32 {
        for c in 1..=3u32 {
            let report = max_abelian(n, c).unwrap();
            assert_eq!(
                report.max.partitions,
                vec![vec![1u32; n as usize]],
                "argmax must be the elementary partition, n={n} c={c}"
            );
            assert_eq!(report.max.value, chi(c + 1, n as u64), "n={n} c={c}");
            if n >= 2 {
                let second = report.second.expect("non-elementary partitions exist");
                let mut expected = vec![1u32; (n - 1) as usize];
                expected[0] = 2;
                assert_eq!(second.partitions, vec![expected], "n={n} c={c}");
                assert_eq!(second.value, chi(c + 1, n as u64 - 1), "n={n} c={c}");
            }
        }
    }
    println!("criterion 5 (abelian maximization over partitions): PASS");
}

#[test]
fn criterion_06_order_bound_and_attainment() {
    for p in [2u64, 3, 5] {
        // Every |G'| = p descriptor of order p^n <= p^8 in the family:
        // extra-specials (and their elementary-abelian products) plus both
        // generalized extra-special shapes.
        let mut family: Vec<(GroupDescriptor, u32)> = Vec::new(); // (descriptor, n)
        let variants: &[EsVariant] = if p == 2 {
            &[EsVariant::D8, EsVariant::Q8]
        } else {
            &[EsVariant::ExpP, EsVariant::ExpP2]
        };
        for m in 1..=3u32 {
            for &v in variants {
                for r in 0..=(8 - (2 * m + 1)) {
                    family.push((
                        times_elem(es(p, m, v), p, r as u64),
                        2 * m + 1 + r,
                    ));
                }
            }
            for r in 0..=(8 - (2 * m + 1)) {
                family.push((
                    ges(p, m, GesCenter::Split { complement_rank: r as u64 }),
                    2 * m + 1 + r,
                ));
            }
            for r in 0..=(8u32.saturating_sub(2 * m + 2)) {
                family.push((
                    ges(p, m, GesCenter::Central { complement_rank: r as u64 }),
                    2 * m + 2 + r,
                ));
            }
        }
        for c in [2u32, 3] {
            for (g, n) in &family {
                assert_eq!(
                    g.order(),
                    BigUint::from(p).pow(*n),
                    "order bookkeeping {g:?}"
                );
                let bound = bound_theorem17(*n, 1, c).unwrap();
                let got = multiplier(g, c).unwrap().structure;
                let exponent = match &got {
                    MultiplierStructure::Full(s) => s.p_exponent(p),
                    MultiplierStructure::OrderOnly(_) => unreachable!("c >= 2"),
                };
                assert!(
                    exponent <= bound,
                    "bound violated for {g:?} c={c}: {exponent} > {bound}"
                );
                let attained = bound_attained_m1(g, c).unwrap();
                assert_eq!(
                    exponent == bound,
                    attained,
                    "attainment mismatch for {g:?} c={c}"
                );
            }
            // The p = 2 capable family lands strictly below, at
            // 2^(chi_{c+1}(n-1) + 1).
            if p == 2 {
                for r in 0..=5u32 {
                    let n = 3 + r;
                    let g = times_elem(es(2, 1, EsVariant::D8), 2, r as u64);
                    let exponent = full_structure(&g, c).p_exponent(2);
                    assert_eq!(
                        exponent,
                        chi(c + 1, n as u64 - 1) + BigUint::from(1u32),
                        "dihedral family exponent n={n} c={c}"
                    );
                }
            }
        }
    }
    println!("criterion 6 (order bound, equality case, dihedral branch): PASS");
}

#[test]
fn criterion_07_capability_tables() {
    for c in [2u32, 3, 4] {
        let mut matrix: Vec<(GroupDescriptor, bool)> = Vec::new();
        for p in [2u64, 3, 5] {
            let variants: &[EsVariant] = if p == 2 {
                &[EsVariant::D8, EsVariant::Q8]
            } else {
                &[EsVariant::ExpP, EsVariant::ExpP2]
            };
            for m in 1..=2u32 {
                for &v in variants {
                    for r in 0..=3u64 {
                        // E_1 x Z_p^r and D8 x Z_2^r are capable for every
                        // complement rank; everything else is not.
                        let capable =
                            m == 1 && matches!(v, EsVariant::ExpP | EsVariant::D8);
                        matrix.push((times_elem(es(p, m, v), p, r), capable));
                    }
                }
                for r in 0..=3u64 {
                    matrix.push((
                        ges(p, m, GesCenter::Split { complement_rank: r }),
                        m == 1,
                    ));
                    matrix.push((
                        ges(p, m, GesCenter::Central { complement_rank: r }),
                        false,
                    ));
                }
            }
        }
        for (g, expected) in &matrix {
            let v = capability(g, c).unwrap();
            assert_eq!(v.capable, *expected, "capable({g:?}) at c={c}");
            assert_eq!(v.c_capable, v.capable, "capable == c-capable for {g:?}");
        }
    }
    println!("criterion 7 (capability verdicts): PASS");
}

#[test]
fn criterion_08_dihedral_consistency() {
    for c in [2u32, 3, 4] {
        let via_sequence = gamma_star_dihedral(4, c).unwrap();
        let direct = full_structure(&es(2, 1, EsVariant::D8), c);
        assert_eq!(via_sequence, direct, "D8 consistency at c={c}");
    }
    for n in [3u64, 5, 7] {
        for c in [2u32, 3] {
            assert_eq!(
                gamma_star_dihedral(n, c).unwrap(),
                FinAbelian::normalize(&[n]).unwrap(),
                "odd dihedral n={n}"
            );
        }
    }
    println!("criterion 8 (dihedral gamma-star consistency): PASS");
}

#[test]
fn criterion_09_divisibility_on_abelian_pairs() {
    let mut cases = 0u64;
    let mut failures: Vec<String> = Vec::new();
    for p in [2u64, 3] {
        let mut pool: Vec<FinAbelian> = Vec::new();
        for rank in 0..=4u32 {
            pool.extend(abelians_of_rank(p, rank, 3));
        }
        for b in &pool {
            for q in &pool {
                if b.total_rank() + q.total_rank() > BigUint::from(4u32) {
                    continue;
                }
                let g = b.direct_sum(q);
                for c in 1..=3u32 {
                    cases += 1;
                    let lhs = multiplier_abelian(&g, c).order();
                    let rhs = multiplier_abelian(q, c).order()
                        * multiplier_abelian(b, c).order()
                        * iterated_tensor(b, q, c).order();
                    if !(&rhs % &lhs).is_zero() {
                        failures.push(format!("B={b} Q={q} c={c}: {lhs} | {rhs} fails"));
                    }
                }
            }
        }
    }
    assert!(cases > 500, "matrix too small: {cases}");
    assert!(
        failures.is_empty(),
        "|M(B+Q)| expected to divide |M(Q)| |M(B)| |B tensor_c Q| on every \
         direct-summand pair, but {} of {} instances violate it; first: {}\n\
         note: the bare c-fold tensor term is too small from c = 2 on — \
         already B = Q = Z_p gives |M^(2)(Z_p^2)| = p^2 against \
         |B ⊗ Q ⊗ Q| = p. Replacing the tensor term by the full mixed \
         correction Γ_(c+1)(B, Q) repairs the statement and turns it into \
         the exact product decomposition checked by criterion 4.",
        failures.len(),
        cases,
        failures[0]
    );
    println!("criterion 9 (central-quotient divisibility, {cases} cases): PASS");
}

/// The repaired form of the criterion-9 inequality: with the full mixed
/// correction term in place of the bare iterated tensor, the divisibility
/// holds on every pair (indeed with equality, which is criterion 4); and the
/// iterated tensor itself always divides the correction term, being one of
/// its summands.
#[test]
fn divisibility_holds_with_the_full_correction_term() {
    for p in [2u64, 3] {
        let mut pool: Vec<FinAbelian> = Vec::new();
        for rank in 0..=3u32 {
            pool.extend(abelians_of_rank(p, rank, 2));
        }
        for b in &pool {
            for q in &pool {
                if b.total_rank() + q.total_rank() > BigUint::from(4u32) {
                    continue;
                }
                let g = b.direct_sum(q);
                for c in 1..=3u32 {
                    let lhs = multiplier_abelian(&g, c).order();
                    let correction = baer::gamma::gamma(b, q, c).unwrap().group;
                    let rhs = multiplier_abelian(q, c).order()
                        * multiplier_abelian(b, c).order()
                        * correction.order();
                    assert!(
                        (&rhs % &lhs).is_zero(),
                        "B={b} Q={q} c={c}: {lhs} | {rhs}"
                    );
                    if !b.is_trivial() && !q.is_trivial() {
                        let tensor_term = iterated_tensor(b, q, c).order();
                        assert!(
                            (&correction.order() % &tensor_term).is_zero(),
                            "tensor term must divide the correction term"
                        );
                    }
                }
            }
        }
    }
}
