//! Verification suites runnable from the command line: witness checks on
//! the named rewrite examples, classification-vs-brute-force sweeps for
//! dihedral groups, and formula-vs-oracle sweeps for minimal degrees.

use semikit_core::morphism::find_isomorphism_limited;
use semikit_core::products::semidirect_limited;
use semikit_core::rewrite::{
    gendihedral_split_limited, generalized_dihedral_limited, shift_base_factor_limited,
    shift_ext_factor_limited, swap_base_factors_limited, GeneralizedDihedralSpec, WhichFactor,
};
use semikit_core::{
    decompose, dihedral, mindeg, products, FiniteGroup, GroupRef, Permutation, TwistingHom,
};

pub struct Check {
    pub name: String,
    pub outcome: Result<(), String>,
}

fn check(name: impl Into<String>, outcome: Result<(), String>) -> Check {
    Check {
        name: name.into(),
        outcome,
    }
}

fn run(name: impl Into<String>, body: impl FnOnce() -> Result<(), String>) -> Check {
    check(name, body())
}

fn iso_check(a: &GroupRef, b: &GroupRef, what: &str, limit: usize) -> Result<(), String> {
    match find_isomorphism_limited(a, b, limit) {
        Ok(Some(_)) => Ok(()),
        Ok(None) => Err(format!("{what}: groups are not isomorphic")),
        Err(e) => Err(format!("{what}: {e}")),
    }
}

fn perm_group(degree: usize, cycles: &[&str], limit: usize) -> Result<GroupRef, String> {
    let perms: Vec<Permutation> = cycles
        .iter()
        .map(|c| Permutation::parse_cycles(degree, c).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    FiniteGroup::from_permutations_limited(degree, &perms, limit).map_err(|e| e.to_string())
}

/// Witness checks on the worked rewrite examples.
pub fn run_props(limit: usize) -> Vec<Check> {
    let mut checks = Vec::new();

    checks.push(run("diagonal-rewrite-order-189", || {
        let z7 = FiniteGroup::cyclic_limited(7, limit).map_err(|e| e.to_string())?;
        let z9 = FiniteGroup::cyclic_limited(9, limit).map_err(|e| e.to_string())?;
        let base = products::direct_product_limited(&z7, &z9, limit).map_err(|e| e.to_string())?;
        let z3 = FiniteGroup::cyclic_limited(3, limit).map_err(|e| e.to_string())?;
        let twist = products::diagonal_cyclic_twist(&base, &z3, 2, 4).map_err(|e| e.to_string())?;
        let sdp = semidirect_limited(&twist, limit).map_err(|e| e.to_string())?;
        let shifted = shift_base_factor_limited(&sdp, limit).map_err(|e| e.to_string())?;
        if shifted.rewrite.derived_kernel.as_ref().map(|k| k.size()) != Some(9) {
            return Err("induced-twist kernel is not the embedded Z9".into());
        }
        let (swapped, _witness) =
            swap_base_factors_limited(&sdp, limit).map_err(|e| e.to_string())?;
        let shifted_swapped =
            shift_base_factor_limited(&swapped, limit).map_err(|e| e.to_string())?;
        if shifted_swapped
            .rewrite
            .derived_kernel
            .as_ref()
            .map(|k| k.size())
            != Some(7)
        {
            return Err("swapped induced-twist kernel is not the embedded Z7".into());
        }
        iso_check(
            &shifted.rewrite.rebuilt,
            sdp.group(),
            "rebuilt vs original",
            limit,
        )
    }));

    checks.push(run("ext-product-rewrite-order-42", || {
        let z7 = FiniteGroup::cyclic_limited(7, limit).map_err(|e| e.to_string())?;
        let z2 = FiniteGroup::cyclic_limited(2, limit).map_err(|e| e.to_string())?;
        let z3 = FiniteGroup::cyclic_limited(3, limit).map_err(|e| e.to_string())?;
        let ext = products::direct_product_limited(&z2, &z3, limit).map_err(|e| e.to_string())?;
        let neg = products::cyclic_multiplier_auto(&z7, -1).map_err(|e| e.to_string())?;
        let dbl = products::cyclic_multiplier_auto(&z7, 2).map_err(|e| e.to_string())?;
        let twist =
            TwistingHom::from_generator_autos(&z7, &ext, &[neg, dbl]).map_err(|e| e.to_string())?;
        let sdp = semidirect_limited(&twist, limit).map_err(|e| e.to_string())?;
        let golden = perm_group(7, &["(1..7)", "(1,6)(2,5)(3,4)", "(1,2,4)(3,6,5)"], limit)?;
        iso_check(
            sdp.group(),
            &golden,
            "original vs permutation realization",
            limit,
        )?;
        for which in [WhichFactor::First, WhichFactor::Second] {
            let shifted =
                shift_ext_factor_limited(&sdp, which, limit).map_err(|e| e.to_string())?;
            iso_check(
                &shifted.rewrite.rebuilt,
                &golden,
                "rebuilt vs permutation realization",
                limit,
            )?;
        }
        Ok(())
    }));

    checks.push(run("generalized-dihedral-order-30", || {
        let spec = GeneralizedDihedralSpec::new(vec![3, 5]).map_err(|e| e.to_string())?;
        let d = generalized_dihedral_limited(&spec, limit).map_err(|e| e.to_string())?;
        let golden = perm_group(8, &["(1,2,3)", "(4,5,6,7,8)", "(1,2)(4,7)(5,6)"], limit)?;
        iso_check(
            d.group(),
            &golden,
            "D(Z3+Z5) vs permutation realization",
            limit,
        )?;
        let split = gendihedral_split_limited(&spec, 1, limit).map_err(|e| e.to_string())?;
        let d10 = dihedral::dihedral_group_limited(5, limit).map_err(|e| e.to_string())?;
        iso_check(split.inner.group(), &d10, "inner part vs D10", limit)?;
        let swapped = GeneralizedDihedralSpec::new(vec![5, 3]).map_err(|e| e.to_string())?;
        let split = gendihedral_split_limited(&swapped, 1, limit).map_err(|e| e.to_string())?;
        let d6 = dihedral::dihedral_group_limited(3, limit).map_err(|e| e.to_string())?;
        iso_check(split.inner.group(), &d6, "inner part vs D6", limit)
    }));

    checks
}

fn d(n: usize) -> usize {
    (1..=n).filter(|k| n % k == 0).count()
}

fn sigma(n: usize) -> usize {
    (1..=n).filter(|k| n % k == 0).sum()
}

/// Classification-vs-brute-force sweeps for `D_{2n}`, `3 <= n <= max_n`.
pub fn run_dihedral(max_n: usize, limit: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 3..=max_n {
        checks.push(run(format!("subgroup-catalog-n{n}"), || {
            let catalog =
                dihedral::subgroup_catalog_limited(n, limit).map_err(|e| e.to_string())?;
            let a_count = catalog
                .iter()
                .filter(|c| matches!(c.id, dihedral::DihedralSubgroupId::A { .. }))
                .count();
            let b_count = catalog.len() - a_count;
            if (a_count, b_count) != (d(n), sigma(n)) {
                return Err(format!(
                    "counts ({a_count}, {b_count}) != (d, sigma) = ({}, {})",
                    d(n),
                    sigma(n)
                ));
            }
            let group = dihedral::dihedral_group_limited(n, limit).map_err(|e| e.to_string())?;
            let brute = semikit_core::subgroup::all_subgroups_limited(&group, limit)
                .map_err(|e| e.to_string())?;
            let mut closed: Vec<Vec<u32>> = catalog.iter().map(|c| c.subgroup.members()).collect();
            closed.sort();
            closed.dedup();
            let mut brute_sets: Vec<Vec<u32>> = brute.iter().map(|s| s.members()).collect();
            brute_sets.sort();
            if closed != brute_sets {
                return Err("catalog member sets differ from the enumerated lattice".into());
            }
            for entry in &catalog {
                if entry.normal != entry.subgroup.is_normal() {
                    return Err(format!("normality flag wrong for {}", entry.id));
                }
            }
            Ok(())
        }));

        checks.push(run(format!("internal-classification-n{n}"), || {
            let group = dihedral::dihedral_group_limited(n, limit).map_err(|e| e.to_string())?;
            let brute = decompose::internal_decompositions_limited(&group, false, limit)
                .map_err(|e| e.to_string())?;
            let closed =
                dihedral::internal_decompositions_limited(n, limit).map_err(|e| e.to_string())?;
            compare_records(&closed, &brute)
        }));

        checks.push(run(format!("external-classification-n{n}"), || {
            let group = dihedral::dihedral_group_limited(n, limit).map_err(|e| e.to_string())?;
            let brute =
                decompose::external_catalog_limited(&group, limit).map_err(|e| e.to_string())?;
            let classified =
                dihedral::external_catalog_from_classification(n).map_err(|e| e.to_string())?;
            if brute != classified {
                return Err(format!(
                    "catalogs differ: brute {brute:?} vs classification {classified:?}"
                ));
            }
            Ok(())
        }));

        checks.push(run(format!("shapes-realize-n{n}"), || {
            let d2n = dihedral::dihedral_group_limited(n, limit).map_err(|e| e.to_string())?;
            for shape in dihedral::external_decompositions(n).map_err(|e| e.to_string())? {
                let sdp = shape.realize(limit).map_err(|e| e.to_string())?;
                iso_check(sdp.group(), &d2n, &format!("shape {shape}"), limit)?;
                let image_order = sdp.ext().order() / sdp.twist().kernel().size();
                let expected = if shape.is_direct() { 1 } else { 2 };
                if image_order != expected {
                    return Err(format!("twist image of {shape} has order {image_order}"));
                }
            }
            Ok(())
        }));
    }
    checks
}

fn compare_records(
    closed: &[decompose::DecompositionRecord],
    brute: &[decompose::DecompositionRecord],
) -> Result<(), String> {
    let project = |records: &[decompose::DecompositionRecord]| -> Vec<_> {
        records
            .iter()
            .map(|r| (r.key(), r.n_label.clone(), r.h_label.clone(), r.is_direct))
            .collect::<Vec<_>>()
    };
    let (a, b) = (project(closed), project(brute));
    if a != b {
        for (x, y) in a.iter().zip(b.iter()) {
            if x != y {
                return Err(format!(
                    "first mismatch: classification {x:?} vs brute force {y:?}"
                ));
            }
        }
        return Err(format!("record counts differ: {} vs {}", a.len(), b.len()));
    }
    Ok(())
}

/// Formula-vs-oracle sweeps for minimal degrees, plus the threshold facts
/// when the range covers them.
pub fn run_mu(max_n: usize, limit: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    let oracle_limit = limit.max(2 * max_n);
    for n in 3..=max_n {
        checks.push(run(format!("mu-formula-vs-oracle-n{n}"), || {
            let formula = mindeg::mu_dihedral(n).degree;
            let oracle = mindeg::mu_oracle_dihedral(n, oracle_limit)
                .map_err(|e| e.to_string())?
                .degree;
            if formula != oracle {
                return Err(format!("formula {formula} != oracle {oracle}"));
            }
            Ok(())
        }));
    }
    if max_n >= 12 {
        checks.push(run("first-degree-savings-at-n6", || {
            let first = (3..=12).find(|&n| mindeg::mu_dihedral(n).degree < n);
            if first != Some(6) {
                return Err(format!("first n with mu < n is {first:?}, expected 6"));
            }
            Ok(())
        }));
        checks.push(run("first-indecomposable-savings-at-n12", || {
            let mut first = None;
            for n in 3..=12 {
                let group =
                    dihedral::dihedral_group_limited(n, limit).map_err(|e| e.to_string())?;
                let records = decompose::internal_decompositions_limited(&group, false, limit)
                    .map_err(|e| e.to_string())?;
                let decomposable = records.iter().any(|r| r.is_direct);
                if !decomposable && mindeg::mu_dihedral(n).degree < n {
                    first = Some(n);
                    break;
                }
            }
            if first != Some(12) {
                return Err(format!(
                    "first directly indecomposable n with mu < n is {first:?}, expected 12"
                ));
            }
            Ok(())
        }));
    }
    checks
}

/// Runs a named suite; `max_n` falls back to the suite's default sweep.
pub fn run_suite(suite: &str, max_n: Option<usize>, limit: usize) -> Option<Vec<Check>> {
    match suite {
        "props" => Some(run_props(limit)),
        "dihedral" => Some(run_dihedral(max_n.unwrap_or(15), limit)),
        "mu" => Some(run_mu(max_n.unwrap_or(30), limit)),
        _ => None,
    }
}
