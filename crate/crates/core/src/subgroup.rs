//! Subgroups as bit-sets over element indices, with generation, exhaustive
//! lattice enumeration, normality, and core computations.

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::group::{check_limit, FiniteGroup};
use crate::{GroupRef, Result, DEFAULT_ENUM_LIMIT};

/// An element-index subset of a parent group, closed under multiplication
/// and inverses and containing the identity.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: GroupRef,
    members: FixedBitSet,
}

impl Subgroup {
    /// The trivial subgroup `{e}`.
    pub fn trivial(parent: &GroupRef) -> Self {
        close(&[], parent)
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(parent: &GroupRef) -> Self {
        let mut members = FixedBitSet::with_capacity(parent.order());
        members.insert_range(..);
        Subgroup {
            parent: Arc::clone(parent),
            members,
        }
    }

    pub(crate) fn from_bits(parent: &GroupRef, members: FixedBitSet) -> Self {
        debug_assert_eq!(members.len(), parent.order());
        Subgroup {
            parent: Arc::clone(parent),
            members,
        }
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn size(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn contains(&self, g: u32) -> bool {
        self.members.contains(g as usize)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    /// Member indices in ascending order.
    pub fn members(&self) -> Vec<u32> {
        self.members.ones().map(|i| i as u32).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.size() == self.parent.order()
    }

    /// Same member set within the same parent group object.
    pub fn same_as(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        assert!(
            Arc::ptr_eq(&self.parent, &other.parent),
            "subgroups of different groups"
        );
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Subgroup {
            parent: Arc::clone(&self.parent),
            members,
        }
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        assert!(
            Arc::ptr_eq(&self.parent, &other.parent),
            "subgroups of different groups"
        );
        self.members.is_subset(&other.members)
    }

    /// True iff `g s g^{-1}` stays inside for every `g` in the parent and
    /// every member `s`.
    pub fn is_normal(&self) -> bool {
        let g = &*self.parent;
        for h in 0..g.order() as u32 {
            for s in self.members.ones() {
                if !self.members.contains(g.conj(h, s as u32) as usize) {
                    return false;
                }
            }
        }
        true
    }

    /// The largest normal subgroup of the parent contained in this one:
    /// the intersection of all conjugates.
    pub fn core(&self) -> Subgroup {
        let g = &*self.parent;
        let mut core = self.members.clone();
        for h in 0..g.order() as u32 {
            let mut conjugate = FixedBitSet::with_capacity(g.order());
            for s in self.members.ones() {
                conjugate.insert(g.conj(h, s as u32) as usize);
            }
            core.intersect_with(&conjugate);
            if core.count_ones(..) == 1 {
                break;
            }
        }
        Subgroup {
            parent: Arc::clone(&self.parent),
            members: core,
        }
    }

    /// A small generating set, built greedily: repeatedly adjoin the
    /// smallest member outside the closure so far. Deterministic.
    pub fn greedy_generators(&self) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut current = close(&[], &self.parent);
        loop {
            let next = self.members.ones().find(|&m| !current.members.contains(m));
            match next {
                Some(m) => {
                    gens.push(m as u32);
                    current = close(&gens, &self.parent);
                }
                None => return gens,
            }
        }
    }

    /// Materializes the subgroup as a standalone group. Returns the group
    /// together with the inclusion map (new index -> parent index). Labels
    /// are inherited from the parent.
    pub fn as_group(&self) -> (GroupRef, Vec<u32>) {
        let parent = &*self.parent;
        let inclusion = self.members();
        let k = inclusion.len();
        let mut position = vec![u32::MAX; parent.order()];
        for (i, &m) in inclusion.iter().enumerate() {
            position[m as usize] = i as u32;
        }
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                let p = parent.mul(inclusion[i], inclusion[j]);
                debug_assert_ne!(position[p as usize], u32::MAX, "member set not closed");
                table[i * k + j] = position[p as usize];
            }
        }
        let gens = self
            .greedy_generators()
            .iter()
            .map(|&g| position[g as usize])
            .collect();
        let labels = inclusion
            .iter()
            .map(|&m| parent.label(m).to_string())
            .collect();
        let group =
            FiniteGroup::from_table(table, gens, labels).expect("subgroup table is a valid group");
        (group, inclusion)
    }
}

/// The smallest subgroup containing `seed`. An empty seed yields the
/// trivial subgroup. Member ordering is ascending by index.
pub fn close(seed: &[u32], group: &GroupRef) -> Subgroup {
    let order = group.order();
    for &s in seed {
        assert!((s as usize) < order, "seed index {s} out of range");
    }
    let mut members = FixedBitSet::with_capacity(order);
    let mut elems: Vec<u32> = Vec::with_capacity(seed.len() + 1);
    let e = group.identity();
    members.insert(e as usize);
    elems.push(e);
    for &s in seed {
        if !members.contains(s as usize) {
            members.insert(s as usize);
            elems.push(s);
        }
    }
    // Closing under products suffices: in a finite group the inverse of g
    // is a positive power of g.
    let mut i = 0;
    while i < elems.len() {
        let mut j = 0;
        while j <= i {
            for (x, y) in [(elems[i], elems[j]), (elems[j], elems[i])] {
                let p = group.mul(x, y);
                if !members.contains(p as usize) {
                    members.insert(p as usize);
                    elems.push(p);
                }
            }
            j += 1;
        }
        i += 1;
    }
    Subgroup {
        parent: Arc::clone(group),
        members,
    }
}

fn close_bits(seed: &FixedBitSet, group: &GroupRef) -> FixedBitSet {
    let seed_vec: Vec<u32> = seed.ones().map(|i| i as u32).collect();
    close(&seed_vec, group).members
}

/// Every subgroup of the group, each exactly once, sorted by
/// (size, member set). Built by iteratively joining cyclic subgroups
/// until a fixed point.
pub fn all_subgroups(group: &GroupRef) -> Result<Vec<Subgroup>> {
    all_subgroups_limited(group, DEFAULT_ENUM_LIMIT)
}

pub fn all_subgroups_limited(group: &GroupRef, limit: usize) -> Result<Vec<Subgroup>> {
    check_limit(group.order(), limit)?;
    let cyclics: HashSet<FixedBitSet> = (0..group.order() as u32)
        .map(|g| close(&[g], group).members)
        .collect();
    let mut known: HashSet<FixedBitSet> = cyclics.clone();
    known.insert(close(&[], group).members);
    let mut frontier: Vec<FixedBitSet> = known.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for sub in &frontier {
            for cyc in &cyclics {
                if cyc.is_subset(sub) {
                    continue;
                }
                let mut seed = sub.clone();
                seed.union_with(cyc);
                let join = close_bits(&seed, group);
                if !known.contains(&join) {
                    known.insert(join.clone());
                    fresh.push(join);
                }
            }
        }
        frontier = fresh;
    }
    let mut subs: Vec<Subgroup> = known
        .into_iter()
        .map(|members| Subgroup {
            parent: Arc::clone(group),
            members,
        })
        .collect();
    subs.sort_by(|a, b| (a.size(), a.members()).cmp(&(b.size(), b.members())));
    Ok(subs)
}
