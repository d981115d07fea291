//! Acceptance suite: end-to-end checks of the headline results, one test
//! per criterion. Each prints a summary line (visible with --nocapture).

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semikit_core::decompose::{self, CatalogEntry, TypeLabel};
use semikit_core::dihedral::{self, dihedral_group};
use semikit_core::morphism::{
    find_isomorphism, fingerprint, hom_from_generator_images, Automorphism, Homomorphism,
};
use semikit_core::products::{
    cyclic_multiplier_auto, diagonal_cyclic_twist, direct_product, semidirect, SemidirectGroup,
    TwistingHom,
};
use semikit_core::rewrite::{
    gendihedral_split, generalized_dihedral, shift_base_factor, shift_ext_factor,
    swap_base_factors, GeneralizedDihedralSpec, WhichFactor,
};
use semikit_core::subgroup::{all_subgroups, close};
use semikit_core::{mindeg, FiniteGroup, GroupRef};

mod util;
use util::{auto_order, automorphisms_of, perm_group};

fn entry(n: TypeLabel, h: TypeLabel, direct: bool) -> CatalogEntry {
    CatalogEntry {
        normal_label: n,
        complement_label: h,
        direct,
    }
}

fn assert_isomorphic(a: &GroupRef, b: &GroupRef, what: &str) {
    assert!(
        find_isomorphism(a, b).unwrap().is_some(),
        "{what}: expected isomorphic groups (|a| = {}, |b| = {})",
        a.order(),
        b.order()
    );
}

/// Criterion 1: the external catalog of the order-60 dihedral group is
/// exactly the eight-entry list, by brute force and by classification.
#[test]
fn acceptance_01_d60_external_catalog() {
    let d60 = dihedral_group(30).unwrap();
    let catalog = decompose::external_catalog(&d60).unwrap();
    let klein = TypeLabel::ElementaryAbelian { p: 2, k: 2 };
    let mut expected = vec![
        entry(TypeLabel::Cyclic(30), TypeLabel::Cyclic(2), false),
        entry(TypeLabel::Cyclic(6), TypeLabel::Dihedral(10), false),
        entry(TypeLabel::Cyclic(10), TypeLabel::Dihedral(6), false),
        entry(TypeLabel::Cyclic(15), klein, false),
        entry(TypeLabel::Cyclic(3), TypeLabel::Dihedral(20), false),
        entry(TypeLabel::Cyclic(5), TypeLabel::Dihedral(12), false),
        entry(TypeLabel::Dihedral(30), TypeLabel::Cyclic(2), false),
        entry(TypeLabel::Dihedral(30), TypeLabel::Cyclic(2), true),
    ];
    expected.sort();
    assert_eq!(catalog, expected, "brute-force catalog of D60");
    let classified = dihedral::external_catalog_from_classification(30).unwrap();
    assert_eq!(catalog, classified, "classification catalog of D60");
    println!("criterion 1 PASS: D60 external catalog has exactly the 8 expected entries");
}

/// Criterion 2: minimal degrees 5 and 7 for the dihedral groups of orders
/// 12 and 24, by formula and by oracle, with verified witnesses.
#[test]
fn acceptance_02_mu_values_with_witnesses() {
    for (n, expected) in [(6usize, 5usize), (12, 7)] {
        let formula = mindeg::mu_dihedral(n);
        assert_eq!(formula.degree, expected, "formula degree for n = {n}");
        let d2n = dihedral_group(n).unwrap();
        let oracle = mindeg::mu_oracle(&d2n).unwrap();
        assert_eq!(oracle.degree, expected, "oracle degree for n = {n}");
        for result in [&formula, &oracle] {
            let image =
                FiniteGroup::from_permutations(result.degree, &result.witness_generators).unwrap();
            assert_eq!(image.order(), 2 * n, "witness image order for n = {n}");
            assert_isomorphic(&image, &d2n, "witness image");
        }
    }
    println!("criterion 2 PASS: mu = 5 and 7 for the order-12 and order-24 dihedral groups");
}

/// Criterion 3: the degree formula agrees with the oracle for all
/// 3 <= n <= 30, the first degree saving happens at n = 6, and the first
/// saving among directly indecomposable dihedral groups at n = 12.
#[test]
fn acceptance_03_mu_formula_sweep() {
    for n in 3..=30 {
        let formula = mindeg::mu_dihedral(n).degree;
        let oracle = mindeg::mu_oracle_dihedral(n, 200).unwrap().degree;
        assert_eq!(formula, oracle, "n = {n}");
    }
    let first_saving = (3..=30).find(|&n| mindeg::mu_dihedral(n).degree < n);
    assert_eq!(first_saving, Some(6));
    let mut first_indecomposable_saving = None;
    for n in 3..=30 {
        let group = dihedral_group(n).unwrap();
        let records = decompose::internal_decompositions(&group, false).unwrap();
        let decomposable = records.iter().any(|r| r.is_direct);
        if !decomposable && mindeg::mu_dihedral(n).degree < n {
            first_indecomposable_saving = Some(n);
            break;
        }
    }
    assert_eq!(first_indecomposable_saving, Some(12));
    println!("criterion 3 PASS: formula = oracle for n in 3..=30; savings thresholds at 6 and 12");
}

fn full_isomorphism_check(witness: &Homomorphism) {
    assert!(witness.is_bijective(), "witness must be bijective");
    let (dom, cod) = (witness.domain(), witness.codomain());
    for a in 0..dom.order() as u32 {
        for b in 0..dom.order() as u32 {
            assert_eq!(
                witness.apply(dom.mul(a, b)),
                cod.mul(witness.apply(a), witness.apply(b)),
                "witness fails multiplicativity at ({a}, {b})"
            );
        }
    }
}

/// Criterion 4: the order-189 diagonal product rewrites to both iterated
/// forms, with witnesses checked on every pair.
#[test]
fn acceptance_04_diagonal_rewrite_order_189() {
    let z7 = FiniteGroup::cyclic(7).unwrap();
    let z9 = FiniteGroup::cyclic(9).unwrap();
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let base = direct_product(&z7, &z9).unwrap();
    let twist = diagonal_cyclic_twist(&base, &z3, 2, 4).unwrap();
    let sdp = semidirect(&twist).unwrap();
    assert_eq!(sdp.group().order(), 189);
    // The degree-16 permutation realization generates the same group.
    let golden = perm_group(
        16,
        &["(1..7)", "(8..16)", "(1,2,4)(3,6,5)(8,11,14)(9,15,12)"],
    );
    assert_eq!(golden.order(), 189);
    assert_isomorphic(
        sdp.group(),
        &golden,
        "diagonal product vs degree-16 realization",
    );

    // Z7 x| (Z9 x|_4 Z3), built from scratch for comparison.
    let inner_94 = semidirect(
        &TwistingHom::from_generator_autos(&z9, &z3, &[cyclic_multiplier_auto(&z9, 4).unwrap()])
            .unwrap(),
    )
    .unwrap();
    let shifted = shift_base_factor(&sdp).unwrap();
    assert!(
        shifted.inner.group().same_table(inner_94.group()),
        "inner product is Z9 x|_4 Z3"
    );
    full_isomorphism_check(&shifted.rewrite.witness);
    assert_eq!(shifted.rewrite.derived_kernel.as_ref().unwrap().size(), 9);

    // The swapped order: Z9 x| (Z7 x|_2 Z3).
    let inner_72 = semidirect(
        &TwistingHom::from_generator_autos(&z7, &z3, &[cyclic_multiplier_auto(&z7, 2).unwrap()])
            .unwrap(),
    )
    .unwrap();
    let (swapped, swap_witness) = swap_base_factors(&sdp).unwrap();
    let shifted_swapped = shift_base_factor(&swapped).unwrap();
    assert!(
        shifted_swapped.inner.group().same_table(inner_72.group()),
        "inner product is Z7 x|_2 Z3"
    );
    let composed = swap_witness.then(&shifted_swapped.rewrite.witness).unwrap();
    // Re-validate the composite end to end.
    let composed = Homomorphism::new(
        Arc::clone(sdp.group()),
        Arc::clone(&shifted_swapped.rewrite.rebuilt),
        composed.images().to_vec(),
    )
    .unwrap();
    full_isomorphism_check(&composed);
    println!(
        "criterion 4 PASS: order-189 diagonal product rewrites both ways with verified witnesses"
    );
}

/// Criterion 5: the order-42 product with a direct-product extending group
/// rewrites to both iterated forms and matches its degree-7 permutation
/// realization.
#[test]
fn acceptance_05_ext_product_rewrite_order_42() {
    let z7 = FiniteGroup::cyclic(7).unwrap();
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let ext = direct_product(&z2, &z3).unwrap();
    // The generator of Z2 negates, the generator of Z3 doubles (mod 7).
    let twist = TwistingHom::from_generator_autos(
        &z7,
        &ext,
        &[
            cyclic_multiplier_auto(&z7, -1).unwrap(),
            cyclic_multiplier_auto(&z7, 2).unwrap(),
        ],
    )
    .unwrap();
    let sdp = semidirect(&twist).unwrap();
    assert_eq!(sdp.group().order(), 42);
    let golden = perm_group(7, &["(1..7)", "(1,6)(2,5)(3,4)", "(1,2,4)(3,6,5)"]);
    assert_eq!(golden.order(), 42);

    let first = shift_ext_factor(&sdp, WhichFactor::First).unwrap();
    full_isomorphism_check(&first.rewrite.witness);
    // The inner product Z7 x|_{-1} Z2 is dihedral of order 14.
    assert_isomorphic(
        first.inner.group(),
        &dihedral_group(7).unwrap(),
        "inner part of the first rewrite",
    );
    assert_isomorphic(
        &first.rewrite.rebuilt,
        &golden,
        "(Z7 x| Z2) x| Z3 vs permutation group",
    );

    let second = shift_ext_factor(&sdp, WhichFactor::Second).unwrap();
    full_isomorphism_check(&second.rewrite.witness);
    assert_eq!(second.inner.group().order(), 21);
    assert_isomorphic(
        &second.rewrite.rebuilt,
        &golden,
        "(Z7 x| Z3) x| Z2 vs permutation group",
    );
    println!("criterion 5 PASS: order-42 product rewrites both ways and matches the degree-7 realization");
}

/// Criterion 6: the generalized dihedral group over Z3 + Z5 matches its
/// degree-8 permutation realization and both split forms.
#[test]
fn acceptance_06_generalized_dihedral_order_30() {
    let spec = GeneralizedDihedralSpec::new(vec![3, 5]).unwrap();
    let d = generalized_dihedral(&spec).unwrap();
    assert_eq!(d.group().order(), 30);
    let golden = perm_group(8, &["(1,2,3)", "(4,5,6,7,8)", "(1,2)(4,7)(5,6)"]);
    assert_eq!(golden.order(), 30);
    assert_isomorphic(d.group(), &golden, "D(Z3+Z5) vs permutation realization");

    // Z3 x| D10: rotations of D10 act trivially, reflections invert.
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let d10 = dihedral_group(5).unwrap();
    let z3_twist = TwistingHom::from_generator_autos(
        &z3,
        &d10,
        &[
            Automorphism::identity(&z3),
            Automorphism::inversion(&z3).unwrap(),
        ],
    )
    .unwrap();
    let z3_d10 = semidirect(&z3_twist).unwrap();
    assert_isomorphic(d.group(), z3_d10.group(), "D(Z3+Z5) vs Z3 x| D10");

    // Z5 x| D6, same construction on the other side.
    let z5 = FiniteGroup::cyclic(5).unwrap();
    let d6 = dihedral_group(3).unwrap();
    let z5_twist = TwistingHom::from_generator_autos(
        &z5,
        &d6,
        &[
            Automorphism::identity(&z5),
            Automorphism::inversion(&z5).unwrap(),
        ],
    )
    .unwrap();
    let z5_d6 = semidirect(&z5_twist).unwrap();
    assert_isomorphic(d.group(), z5_d6.group(), "D(Z3+Z5) vs Z5 x| D6");

    // The split operation reaches both forms with verified witnesses.
    let split = gendihedral_split(&spec, 1).unwrap();
    full_isomorphism_check(&split.rewrite.witness);
    assert_isomorphic(
        split.outer.group(),
        z3_d10.group(),
        "split at 1 vs Z3 x| D10",
    );
    let swapped = GeneralizedDihedralSpec::new(vec![5, 3]).unwrap();
    let split = gendihedral_split(&swapped, 1).unwrap();
    assert_isomorphic(
        split.outer.group(),
        z5_d6.group(),
        "swapped split vs Z5 x| D6",
    );
    println!(
        "criterion 6 PASS: D(Z3+Z5) matches the degree-8 realization, Z3 x| D10, and Z5 x| D6"
    );
}

/// Criterion 7: the golden decomposition set. The order-8 dihedral group
/// splits exactly as Z4 x| Z2 and Z2^2 x| Z2; the symmetric group on 4
/// points exactly as A4 x| Z2 and Z2^2 x| S3; and the dicyclic group of
/// order 24 shows up as Z3 x| Q8 but never as Q8 x| Z3.
#[test]
fn acceptance_07_golden_decomposition_set() {
    let klein = TypeLabel::ElementaryAbelian { p: 2, k: 2 };

    let d8 = dihedral_group(4).unwrap();
    let mut expected = vec![
        entry(TypeLabel::Cyclic(4), TypeLabel::Cyclic(2), false),
        entry(klein.clone(), TypeLabel::Cyclic(2), false),
    ];
    expected.sort();
    assert_eq!(
        decompose::external_catalog(&d8).unwrap(),
        expected,
        "D8 catalog"
    );

    let s4 = FiniteGroup::symmetric(4).unwrap();
    let a4 = perm_group(4, &["(1,2,3)", "(1,2)(3,4)"]);
    assert_eq!(a4.order(), 12);
    let a4_label = decompose::label_group(&a4);
    assert!(a4_label.is_opaque());
    let s3_label = TypeLabel::Dihedral(6);
    let mut expected = vec![
        entry(a4_label, TypeLabel::Cyclic(2), false),
        entry(klein, s3_label, false),
    ];
    expected.sort();
    assert_eq!(
        decompose::external_catalog(&s4).unwrap(),
        expected,
        "S4 catalog"
    );

    // Z3 x| Q8 is the order-24 dicyclic group for every nontrivial twist.
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let q8 = FiniteGroup::dicyclic(2).unwrap();
    let q24 = FiniteGroup::dicyclic(6).unwrap();
    let id3 = Automorphism::identity(&z3);
    let inv3 = Automorphism::inversion(&z3).unwrap();
    let mut nontrivial_q8_twists = 0;
    for a_img in [&id3, &inv3] {
        for x_img in [&id3, &inv3] {
            let Ok(twist) =
                TwistingHom::from_generator_autos(&z3, &q8, &[a_img.clone(), x_img.clone()])
            else {
                continue;
            };
            if twist.is_trivial() {
                continue;
            }
            nontrivial_q8_twists += 1;
            let sdp = semidirect(&twist).unwrap();
            assert_isomorphic(sdp.group(), &q24, "Z3 x| Q8 vs dicyclic of order 24");
        }
    }
    assert!(
        nontrivial_q8_twists >= 1,
        "a nontrivial twist Q8 -> Aut(Z3) exists"
    );

    // Q8 x| Z3 is never dicyclic of order 24.
    let order_three_autos: Vec<Automorphism> = automorphisms_of(&q8)
        .into_iter()
        .filter(|a| auto_order(a) == 3)
        .collect();
    assert!(
        !order_three_autos.is_empty(),
        "Aut(Q8) has elements of order 3"
    );
    for auto in &order_three_autos {
        let twist =
            TwistingHom::from_generator_autos(&q8, &z3, std::slice::from_ref(auto)).unwrap();
        let sdp = semidirect(&twist).unwrap();
        assert!(
            find_isomorphism(sdp.group(), &q24).unwrap().is_none(),
            "Q8 x| Z3 must not be dicyclic of order 24"
        );
    }
    println!(
        "criterion 7 PASS: golden decompositions of D8, S4, and the order-24 products check out"
    );
}

/// Criterion 8: the order-24 product of Z3 by the order-8 dihedral group,
/// with twist kernel <a^2, x>, realizes the four order-consistent shapes.
/// (A fifth shape of the form Z2^2 x| Z3 would have order 12 and cannot
/// occur; every emitted record is order-consistent.)
#[test]
fn acceptance_08_g24_reconstruction() {
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let d8 = dihedral_group(4).unwrap();
    let twist = TwistingHom::from_generator_autos(
        &z3,
        &d8,
        &[
            Automorphism::inversion(&z3).unwrap(),
            Automorphism::identity(&z3),
        ],
    )
    .unwrap();
    // The kernel is exactly <a^2, x> inside the dihedral group.
    let expected_kernel = close(&[2, 4], &d8);
    assert!(
        twist.kernel().same_as(&expected_kernel),
        "twist kernel is <a^2, x>"
    );
    let g24 = semidirect(&twist).unwrap();
    assert_eq!(g24.group().order(), 24);

    let records = decompose::internal_decompositions(g24.group(), false).unwrap();
    let pairs: Vec<(TypeLabel, TypeLabel)> = records
        .iter()
        .map(|r| (r.n_label.clone(), r.h_label.clone()))
        .collect();
    let expected_shapes = [
        (TypeLabel::Cyclic(3), TypeLabel::Dihedral(8)),
        (TypeLabel::Dihedral(12), TypeLabel::Cyclic(2)),
        (
            TypeLabel::DirectProduct(vec![
                TypeLabel::Cyclic(2),
                TypeLabel::Cyclic(2),
                TypeLabel::Cyclic(3),
            ]),
            TypeLabel::Cyclic(2),
        ),
        (TypeLabel::dicyclic_of_order(12), TypeLabel::Cyclic(2)),
    ];
    for shape in &expected_shapes {
        assert!(
            pairs.contains(shape),
            "missing shape {} x| {} in {pairs:?}",
            shape.0,
            shape.1
        );
    }
    for r in &records {
        assert_eq!(
            r.n_label.group_order() * r.h_label.group_order(),
            24,
            "every record must be order-consistent"
        );
    }
    println!("criterion 8 PASS: the order-24 group realizes all four order-consistent shapes");
}

/// Criterion 9: the closed-form dihedral classification equals brute-force
/// enumeration for 3 <= n <= 15, and the closed-form subgroup catalog
/// matches divisor arithmetic and the enumerated lattice for 3 <= n <= 20.
#[test]
fn acceptance_09_classification_equals_brute_force() {
    for n in 3..=15 {
        let group = dihedral_group(n).unwrap();
        let brute = decompose::internal_decompositions(&group, false).unwrap();
        let closed = dihedral::internal_decompositions(n).unwrap();
        let project = |records: &[decompose::DecompositionRecord]| {
            records
                .iter()
                .map(|r| (r.key(), r.n_label.clone(), r.h_label.clone(), r.is_direct))
                .collect::<Vec<_>>()
        };
        assert_eq!(
            project(&closed),
            project(&brute),
            "internal records for n = {n}"
        );
    }
    for n in 3..=20 {
        let divisor_count = (1..=n).filter(|k| n % k == 0).count();
        let divisor_sum: usize = (1..=n).filter(|k| n % k == 0).sum();
        let catalog = dihedral::subgroup_catalog(n).unwrap();
        let a_count = catalog
            .iter()
            .filter(|c| matches!(c.id, dihedral::DihedralSubgroupId::A { .. }))
            .count();
        assert_eq!(a_count, divisor_count, "A-type count for n = {n}");
        assert_eq!(
            catalog.len() - a_count,
            divisor_sum,
            "B-type count for n = {n}"
        );
        let group = dihedral_group(n).unwrap();
        assert_eq!(
            catalog.len(),
            all_subgroups(&group).unwrap().len(),
            "catalog total vs enumerated lattice for n = {n}"
        );
    }
    println!("criterion 9 PASS: classification = brute force (n <= 15); catalog counts d(n) + sigma(n) (n <= 20)");
}

struct FactorPool {
    groups: Vec<GroupRef>,
}

impl FactorPool {
    fn new() -> Self {
        let mut groups = Vec::new();
        for m in 2..=100 {
            groups.push(FiniteGroup::cyclic(m).unwrap());
        }
        for n in 3..=50 {
            groups.push(dihedral_group(n).unwrap());
        }
        Self { groups }
    }

    fn pick(&self, rng: &mut impl Rng) -> GroupRef {
        Arc::clone(&self.groups[rng.gen_range(0..self.groups.len())])
    }
}

/// A random automorphism of a cyclic or dihedral factor. Falls back to the
/// identity when a random proposal fails to validate.
fn random_automorphism(group: &GroupRef, rng: &mut impl Rng) -> Automorphism {
    for _ in 0..20 {
        let candidate = match group.generators().len() {
            1 => cyclic_multiplier_auto(group, rng.gen_range(1..=group.order() as i64)).ok(),
            2 => {
                // Dihedral: a -> a^u, x -> a^v x.
                let n = group.order() / 2;
                let u = rng.gen_range(1..n.max(2));
                let v = rng.gen_range(0..n);
                let a_img = group.pow(1, u);
                let x_img = group.mul(group.pow(1, v), n as u32);
                hom_from_generator_images(group, group, &[a_img, x_img])
                    .ok()
                    .and_then(|h| Automorphism::new(h).ok())
            }
            _ => None,
        };
        if let Some(auto) = candidate {
            return auto;
        }
    }
    Automorphism::identity(group)
}

/// A twist whose generator actions are random automorphisms, retried until
/// the extension validates; the trivial twist always validates.
fn random_twist(base: &GroupRef, ext: &GroupRef, rng: &mut impl Rng) -> TwistingHom {
    for _ in 0..20 {
        let autos: Vec<Automorphism> = ext
            .generators()
            .iter()
            .map(|_| random_automorphism(base, rng))
            .collect();
        if let Ok(twist) = TwistingHom::from_generator_autos(base, ext, &autos) {
            return twist;
        }
    }
    TwistingHom::trivial(base, ext)
}

fn check_product_invariants(sdp: &SemidirectGroup, rng: &mut impl Rng) {
    let group = sdp.group();
    let (n_ord, h_ord) = (sdp.base().order(), sdp.ext().order());
    assert_eq!(group.order(), n_ord * h_ord, "|G| = |N| |H|");
    assert!(sdp.embedded_base().is_normal(), "embedded base is normal");
    assert!(
        sdp.embedded_base()
            .intersect(sdp.embedded_ext())
            .is_trivial(),
        "embeddings meet trivially"
    );
    let mut union = sdp.embedded_base().members();
    union.extend(sdp.embedded_ext().members());
    assert!(close(&union, group).is_whole(), "embeddings generate");
    // Conjugation by an embedded extending element recovers the twist.
    for h in 0..h_ord as u32 {
        for n in 0..n_ord as u32 {
            assert_eq!(
                group.conj(sdp.pair(0, h), sdp.pair(n, 0)),
                sdp.pair(sdp.twist().apply(h, n), 0),
                "conjugation recovers the twist"
            );
        }
    }
    // Group axioms: full associativity sweep on small products, sampled
    // triples above that.
    if group.order() <= 200 {
        assert!(group.verify_associativity(), "associativity on all triples");
    } else {
        for _ in 0..20_000 {
            let (a, b, c) = (
                rng.gen_range(0..group.order()) as u32,
                rng.gen_range(0..group.order()) as u32,
                rng.gen_range(0..group.order()) as u32,
            );
            assert_eq!(group.mul(group.mul(a, b), c), group.mul(a, group.mul(b, c)));
        }
    }
}

/// Criterion 10: 200 randomized semidirect products over cyclic and
/// dihedral factors of order <= 100 pass the product invariants; every
/// fourth product uses a diagonal twist over a two-factor cyclic base and
/// additionally checks the block-kernel identity.
#[test]
fn acceptance_10_randomized_product_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let pool = FactorPool::new();
    let mut built = 0;
    while built < 200 {
        if built % 4 == 0 {
            // Diagonal twist over a cyclic-times-cyclic base.
            let (m1, m2) = (rng.gen_range(2..=20), rng.gen_range(2..=20));
            let ext_order = rng.gen_range(2..=12);
            if m1 * m2 * ext_order > 2000 {
                continue;
            }
            let left = FiniteGroup::cyclic(m1).unwrap();
            let right = FiniteGroup::cyclic(m2).unwrap();
            let base = direct_product(&left, &right).unwrap();
            let ext = FiniteGroup::cyclic(ext_order).unwrap();
            let (k1, k2) = (rng.gen_range(1..=m1 as i64), rng.gen_range(1..=m2 as i64));
            let Ok(twist) = diagonal_cyclic_twist(&base, &ext, k1, k2) else {
                continue;
            };
            let sdp = semidirect(&twist).unwrap();
            check_product_invariants(&sdp, &mut rng);
            // Kernel identity for diagonal twists: the kernel of the twist
            // is the intersection of the kernels of its two blocks.
            let block_kernel = |h: u32, which: usize| -> bool {
                let images = twist.action_images(h);
                match which {
                    0 => {
                        (0..m1 as u32).all(|g1| images[(g1 * m2 as u32) as usize] / m2 as u32 == g1)
                    }
                    _ => (0..m2 as u32).all(|g2| images[g2 as usize] % m2 as u32 == g2),
                }
            };
            for h in 0..ext_order as u32 {
                let in_kernel = twist.kernel().contains(h);
                assert_eq!(
                    in_kernel,
                    block_kernel(h, 0) && block_kernel(h, 1),
                    "kernel = intersection of block kernels"
                );
            }
        } else {
            let base = pool.pick(&mut rng);
            let ext = pool.pick(&mut rng);
            if base.order() * ext.order() > 2000 {
                continue;
            }
            let twist = random_twist(&base, &ext, &mut rng);
            let sdp = semidirect(&twist).unwrap();
            check_product_invariants(&sdp, &mut rng);
        }
        built += 1;
    }
    println!(
        "criterion 10 PASS: 200 randomized semidirect products satisfy the product invariants"
    );
}

/// The fingerprint display used in catalogs stays stable across runs.
#[test]
fn fingerprint_display_is_deterministic() {
    let d60 = dihedral_group(30).unwrap();
    let fp = fingerprint(&d60);
    assert_eq!(
        fp.to_string(),
        "order=60 abelian=false orders={1:1,2:31,3:2,5:4,6:2,10:4,15:8,30:8} center=2 derived=15"
    );
}
