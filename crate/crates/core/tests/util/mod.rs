//! Helpers shared by the integration suites.

use semikit_core::morphism::{hom_from_generator_images, Automorphism};
use semikit_core::subgroup::close;
use semikit_core::{FiniteGroup, GroupRef, Permutation};

pub fn perm_group(degree: usize, cycles: &[&str]) -> GroupRef {
    let perms: Vec<Permutation> = cycles
        .iter()
        .map(|c| Permutation::parse_cycles(degree, c).unwrap())
        .collect();
    FiniteGroup::from_permutations(degree, &perms).unwrap()
}

/// All automorphisms of a 2-generated group, by image search over
/// order-matched element pairs.
pub fn automorphisms_of(group: &GroupRef) -> Vec<Automorphism> {
    let gens = group.generators().to_vec();
    assert_eq!(gens.len(), 2, "helper assumes two stored generators");
    let orders: Vec<usize> = gens.iter().map(|&g| group.element_order(g)).collect();
    let mut found = Vec::new();
    for i in 0..group.order() as u32 {
        if group.element_order(i) != orders[0] {
            continue;
        }
        for j in 0..group.order() as u32 {
            if group.element_order(j) != orders[1] {
                continue;
            }
            if close(&[i, j], group).size() != group.order() {
                continue;
            }
            if let Ok(hom) = hom_from_generator_images(group, group, &[i, j]) {
                if let Ok(auto) = Automorphism::new(hom) {
                    found.push(auto);
                }
            }
        }
    }
    found
}

pub fn auto_order(auto: &Automorphism) -> usize {
    let mut acc = auto.clone();
    let mut k = 1;
    while !acc.is_identity() {
        acc = acc.compose(auto).unwrap();
        k += 1;
    }
    k
}
