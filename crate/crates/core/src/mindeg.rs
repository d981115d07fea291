//! Minimal faithful permutation degree: an exact oracle over subgroup
//! cores, closed formulas for abelian and dihedral groups, semidirect
//! upper bounds, and explicit witness embeddings.
//!
//! The oracle uses the coset characterization: the minimal degree is the
//! least total index of a collection of subgroups whose cores intersect
//! trivially, realized by the action on the disjoint union of the coset
//! spaces. The trivial group gets degree 1 by convention (the one-point
//! action), stated explicitly since the formula sums to 0 there.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::group::check_limit;
use crate::perm::Permutation;
use crate::products::{semidirect_limited, TwistingHom};
use crate::subgroup::{all_subgroups_limited, Subgroup};
use crate::{dihedral, GroupRef, Result, DEFAULT_ORACLE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuMethod {
    Oracle,
    Formula,
}

/// A minimal faithful degree together with permutations realizing it.
#[derive(Debug, Clone)]
pub struct MuResult {
    pub degree: usize,
    pub witness_generators: Vec<Permutation>,
    pub method: MuMethod,
}

/// `n` as an ordered list of (prime, exponent) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerDecomposition {
    pub pairs: Vec<(usize, u32)>,
}

impl PrimePowerDecomposition {
    pub fn of(mut n: usize) -> Self {
        let mut pairs = Vec::new();
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                let mut a = 0;
                while n % p == 0 {
                    n /= p;
                    a += 1;
                }
                pairs.push((p, a));
            }
            p += 1;
        }
        if n > 1 {
            pairs.push((n, 1));
        }
        Self { pairs }
    }

    /// The prime-power parts `p^a`, ascending by value.
    pub fn prime_powers(&self) -> Vec<usize> {
        let mut parts: Vec<usize> = self.pairs.iter().map(|&(p, a)| p.pow(a)).collect();
        parts.sort_unstable();
        parts
    }

    pub fn value(&self) -> usize {
        self.pairs
            .iter()
            .map(|&(p, a)| p.pow(a))
            .product::<usize>()
            .max(1)
    }
}

/// Exact minimal faithful degree by exhaustive branch-and-bound over
/// subgroup collections with trivially intersecting cores.
pub fn mu_oracle(group: &GroupRef) -> Result<MuResult> {
    mu_oracle_limited(group, DEFAULT_ORACLE_LIMIT)
}

pub fn mu_oracle_limited(group: &GroupRef, limit: usize) -> Result<MuResult> {
    check_limit(group.order(), limit)?;
    if group.order() == 1 {
        return Ok(MuResult {
            degree: 1,
            witness_generators: vec![],
            method: MuMethod::Oracle,
        });
    }
    let subs = all_subgroups_limited(group, limit)?;
    // Only cores matter for faithfulness and only indices for cost, so for
    // each distinct core keep the cheapest subgroup realizing it.
    let mut best_for_core: HashMap<FixedBitSet, (usize, usize)> = HashMap::new();
    for (i, sub) in subs.iter().enumerate() {
        let core = sub.core();
        if core.is_whole() {
            continue;
        }
        let cost = group.order() / sub.size();
        let entry = best_for_core
            .entry(core.bits().clone())
            .or_insert((cost, i));
        if cost < entry.0 {
            *entry = (cost, i);
        }
    }
    let mut candidates: Vec<(usize, FixedBitSet, usize)> = best_for_core
        .into_iter()
        .map(|(core, (cost, idx))| (cost, core, idx))
        .collect();
    candidates.sort_by_key(|&(cost, _, idx)| (cost, idx));
    // Suffix minima of costs for the branch-and-bound lower bound.
    let mut suffix_min = vec![usize::MAX; candidates.len() + 1];
    for i in (0..candidates.len()).rev() {
        suffix_min[i] = suffix_min[i + 1].min(candidates[i].0);
    }
    let mut whole = FixedBitSet::with_capacity(group.order());
    whole.insert_range(..);
    let mut best_cost = usize::MAX;
    let mut best_choice: Vec<usize> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    search_collections(
        &candidates,
        &suffix_min,
        0,
        &whole,
        0,
        &mut chosen,
        &mut best_cost,
        &mut best_choice,
        group.identity() as usize,
    );
    debug_assert_ne!(
        best_cost,
        usize::MAX,
        "the trivial subgroup always yields a faithful action"
    );
    let blocks: Vec<&Subgroup> = best_choice.iter().map(|&i| &subs[i]).collect();
    let witness = coset_action_witness(group, &blocks);
    // Faithfulness re-check: only the identity fixes every point.
    debug_assert!(action_is_faithful(group, &blocks));
    Ok(MuResult {
        degree: best_cost,
        witness_generators: witness,
        method: MuMethod::Oracle,
    })
}

#[allow(clippy::too_many_arguments)]
fn search_collections(
    candidates: &[(usize, FixedBitSet, usize)],
    suffix_min: &[usize],
    from: usize,
    intersection: &FixedBitSet,
    cost: usize,
    chosen: &mut Vec<usize>,
    best_cost: &mut usize,
    best_choice: &mut Vec<usize>,
    identity: usize,
) {
    if intersection.count_ones(..) == 1 {
        if cost < *best_cost {
            *best_cost = cost;
            *best_choice = chosen.clone();
        }
        return;
    }
    for i in from..candidates.len() {
        let (c, core, idx) = &candidates[i];
        // Even the cheapest way to finish cannot beat the best found.
        if cost + c.max(&suffix_min[i]) >= *best_cost {
            break;
        }
        let mut shrunk = intersection.clone();
        shrunk.intersect_with(core);
        if shrunk.count_ones(..) == intersection.count_ones(..) {
            continue;
        }
        debug_assert!(shrunk.contains(identity));
        chosen.push(*idx);
        search_collections(
            candidates,
            suffix_min,
            i + 1,
            &shrunk,
            cost + c,
            chosen,
            best_cost,
            best_choice,
            identity,
        );
        chosen.pop();
    }
}

/// Left-coset data for `sub`: `points[g]` is the point id of the coset
/// `gH`, `reps[p]` its minimal representative; points are numbered by
/// ascending representative.
fn coset_points(group: &GroupRef, sub: &Subgroup) -> (Vec<usize>, Vec<u32>) {
    let order = group.order();
    let mut min_rep = vec![u32::MAX; order];
    for g in 0..order as u32 {
        if min_rep[g as usize] != u32::MAX {
            continue;
        }
        let coset: Vec<u32> = sub.members().iter().map(|&h| group.mul(g, h)).collect();
        let min = *coset.iter().min().unwrap();
        for x in coset {
            min_rep[x as usize] = min;
        }
    }
    let mut reps: Vec<u32> = min_rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let point_of_rep: HashMap<u32, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let points: Vec<usize> = min_rep.iter().map(|r| point_of_rep[r]).collect();
    (points, reps)
}

/// The action of the group generators on the disjoint union of the coset
/// spaces of the chosen subgroups.
fn coset_action_witness(group: &GroupRef, blocks: &[&Subgroup]) -> Vec<Permutation> {
    let block_data: Vec<(Vec<usize>, Vec<u32>)> =
        blocks.iter().map(|s| coset_points(group, s)).collect();
    let degree: usize = block_data.iter().map(|(_, reps)| reps.len()).sum();
    group
        .generators()
        .iter()
        .map(|&gen| {
            let mut images = vec![0usize; degree];
            let mut offset = 0;
            for (points, reps) in &block_data {
                for (p, &rep) in reps.iter().enumerate() {
                    images[offset + p] = offset + points[group.mul(gen, rep) as usize];
                }
                offset += reps.len();
            }
            Permutation::new(images).expect("coset action is a permutation")
        })
        .collect()
}

fn action_is_faithful(group: &GroupRef, blocks: &[&Subgroup]) -> bool {
    let block_data: Vec<(Vec<usize>, Vec<u32>)> =
        blocks.iter().map(|s| coset_points(group, s)).collect();
    for g in 1..group.order() as u32 {
        let fixes_everything = block_data.iter().all(|(points, _)| {
            (0..group.order() as u32)
                .all(|x| points[group.mul(g, x) as usize] == points[x as usize])
        });
        if fixes_everything {
            return false;
        }
    }
    true
}

/// Minimal degree of a finite abelian group given by invariant factors:
/// the sum of the prime-power parts of the primary decomposition.
pub fn mu_abelian(invariant_orders: &[usize]) -> usize {
    if invariant_orders.is_empty() {
        return 1;
    }
    invariant_orders
        .iter()
        .map(|&m| {
            assert!(m >= 2, "invariant factors must be at least 2");
            PrimePowerDecomposition::of(m)
                .prime_powers()
                .iter()
                .sum::<usize>()
        })
        .sum()
}

/// Minimal degree of the dihedral group of order `2n`, `n >= 3`: the sum
/// of the prime-power parts of `n`. The witness acts on one block per
/// prime power (ascending): the rotation is the product of the natural
/// cycles, the reflection inverts each block in place.
pub fn mu_dihedral(n: usize) -> MuResult {
    assert!(n >= 3, "the dihedral degree formula needs n >= 3");
    let parts = PrimePowerDecomposition::of(n).prime_powers();
    let degree: usize = parts.iter().sum();
    let mut rotation = vec![0usize; degree];
    let mut reflection = vec![0usize; degree];
    let mut offset = 0;
    for &size in &parts {
        for j in 0..size {
            rotation[offset + j] = offset + (j + 1) % size;
            reflection[offset + j] = offset + (size - j) % size;
        }
        offset += size;
    }
    MuResult {
        degree,
        witness_generators: vec![
            Permutation::new(rotation).expect("block cycles form a permutation"),
            Permutation::new(reflection).expect("block inversions form a permutation"),
        ],
        method: MuMethod::Formula,
    }
}

/// The upper bounds on the minimal degree of a semidirect product, plus
/// the exact value when the product fits under the oracle limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuBounds {
    /// `|N| + mu(H)`, always valid.
    pub bound_general: usize,
    /// `|N|`, valid when the twist is injective.
    pub bound_injective: Option<usize>,
    pub actual: Option<usize>,
}

/// Reports the degree bounds for `N x| H` and, when feasible, the oracle
/// value. The oracle is skipped (not failed) when the product exceeds the
/// limit; the extending group itself must stay within it.
pub fn mu_bounds_check(twist: &TwistingHom, limit: usize) -> Result<MuBounds> {
    let base_order = twist.base().order();
    let mu_ext = mu_oracle_limited(twist.ext(), limit)?.degree;
    let bound_general = base_order + mu_ext;
    let bound_injective = twist.is_injective().then_some(base_order);
    let actual = if base_order * twist.ext().order() <= limit {
        let sdp = semidirect_limited(twist, limit.max(base_order * twist.ext().order()))?;
        Some(mu_oracle_limited(sdp.group(), limit)?.degree)
    } else {
        None
    };
    if let Some(actual) = actual {
        debug_assert!(actual <= bound_general);
        if let Some(b) = bound_injective {
            debug_assert!(actual <= b);
        }
    }
    Ok(MuBounds {
        bound_general,
        bound_injective,
        actual,
    })
}

/// Convenience: the oracle applied to a dihedral group, used to cross-check
/// the formula.
pub fn mu_oracle_dihedral(n: usize, limit: usize) -> Result<MuResult> {
    let group = dihedral::dihedral_group_limited(n, limit)?;
    mu_oracle_limited(&group, limit)
}
