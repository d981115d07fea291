//! Exhaustive enumeration of internal semidirect decompositions of a small
//! group, with isomorphism-type labeling and deduplicated external catalogs.
//!
//! A record is an ordered pair (N, H) with N normal, |N|*|H| = |G| and
//! trivial intersection. Labels are canonical per isomorphism class: a
//! group is labeled the same way no matter how it shows up, so equal
//! non-opaque labels imply isomorphism of the labeled subgroups.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::morphism::{fingerprint, IsoFingerprint};
use crate::subgroup::{all_subgroups_limited, close, Subgroup};
use crate::{GroupRef, Result, DEFAULT_ENUM_LIMIT};

/// Canonical isomorphism-type label. Collisions between families are
/// resolved once and for all (order-2 dihedral is `Z2`, order-4 dihedral is
/// `Z2^2`, order-4 dicyclic is `Z4`), so two subgroups with different
/// non-opaque labels are never isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    Cyclic(usize),
    /// `k >= 2` copies of `Z_p`.
    ElementaryAbelian {
        p: usize,
        k: usize,
    },
    /// Nonabelian dihedral group of this order (>= 6).
    Dihedral(usize),
    /// Dicyclic group of this order (>= 8).
    Dicyclic(usize),
    /// Direct product of indecomposable parts, sorted canonically.
    DirectProduct(Vec<TypeLabel>),
    Opaque(IsoFingerprint),
}

impl TypeLabel {
    /// Label of the dihedral group of the given order, canonicalized at the
    /// abelian edge cases.
    pub fn dihedral_of_order(order: usize) -> TypeLabel {
        match order {
            2 => TypeLabel::Cyclic(2),
            4 => TypeLabel::ElementaryAbelian { p: 2, k: 2 },
            _ => TypeLabel::Dihedral(order),
        }
    }

    /// Label of the dicyclic group of the given order (a multiple of 4).
    pub fn dicyclic_of_order(order: usize) -> TypeLabel {
        match order {
            4 => TypeLabel::Cyclic(4),
            _ => TypeLabel::Dicyclic(order),
        }
    }

    pub fn group_order(&self) -> usize {
        match self {
            TypeLabel::Cyclic(n) => *n,
            TypeLabel::ElementaryAbelian { p, k } => p.pow(*k as u32),
            TypeLabel::Dihedral(o) | TypeLabel::Dicyclic(o) => *o,
            TypeLabel::DirectProduct(parts) => parts.iter().map(TypeLabel::group_order).product(),
            TypeLabel::Opaque(fp) => fp.order,
        }
    }

    pub fn is_opaque(&self) -> bool {
        matches!(self, TypeLabel::Opaque(_))
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::Cyclic(n) => write!(f, "Z{n}"),
            TypeLabel::ElementaryAbelian { p, k } => write!(f, "Z{p}^{k}"),
            TypeLabel::Dihedral(o) => write!(f, "D{o}"),
            TypeLabel::Dicyclic(o) => write!(f, "Q{o}"),
            TypeLabel::DirectProduct(parts) => {
                // Compress runs of equal parts: Z2 x Z2 x Z3 -> Z2^2 x Z3.
                let mut i = 0;
                let mut first = true;
                while i < parts.len() {
                    let mut j = i + 1;
                    while j < parts.len() && parts[j] == parts[i] {
                        j += 1;
                    }
                    if !first {
                        write!(f, " x ")?;
                    }
                    first = false;
                    let run = j - i;
                    match (&parts[i], run) {
                        (p, 1) => write!(f, "{p}")?,
                        (TypeLabel::Cyclic(n), k) => write!(f, "Z{n}^{k}")?,
                        (p, k) => write!(f, "{p}^{k}")?,
                    }
                    i = j;
                }
                Ok(())
            }
            TypeLabel::Opaque(fp) => write!(f, "G{}#{:08x}", fp.order, stable_hash(fp)),
        }
    }
}

/// FNV-1a over a canonical encoding; stable across runs and platforms.
fn stable_hash(fp: &IsoFingerprint) -> u32 {
    let mut h: u32 = 0x811c9dc5;
    let mut eat = |x: usize| {
        for b in (x as u64).to_le_bytes() {
            h ^= b as u32;
            h = h.wrapping_mul(0x01000193);
        }
    };
    eat(fp.order);
    eat(fp.abelian as usize);
    eat(fp.center_size);
    eat(fp.derived_subgroup_size);
    for &(ord, count) in &fp.element_order_histogram {
        eat(ord);
        eat(count);
    }
    h
}

/// One internal semidirect decomposition `G = N x| H` as an ordered pair of
/// subgroups with isomorphism-type labels.
#[derive(Debug, Clone)]
pub struct DecompositionRecord {
    pub normal_part: Subgroup,
    pub complement: Subgroup,
    pub n_label: TypeLabel,
    pub h_label: TypeLabel,
    /// Both factors normal, i.e. the decomposition is direct.
    pub is_direct: bool,
}

impl DecompositionRecord {
    /// Sort/comparison key: (|N|, N members, H members).
    pub fn key(&self) -> (usize, Vec<u32>, Vec<u32>) {
        (
            self.normal_part.size(),
            self.normal_part.members(),
            self.complement.members(),
        )
    }
}

/// A deduplicated catalog entry. Direct decompositions are presented
/// unordered (larger factor first); ordered otherwise, normal part first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalogEntry {
    pub normal_label: TypeLabel,
    pub complement_label: TypeLabel,
    pub direct: bool,
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.direct { "x" } else { "x|" };
        write!(f, "{} {} {}", self.normal_label, op, self.complement_label)
    }
}

/// Labels a subgroup by its isomorphism type.
pub fn label(sub: &Subgroup) -> TypeLabel {
    let (group, _) = sub.as_group();
    label_group(&group)
}

/// Labels a materialized group by its isomorphism type.
pub fn label_group(group: &GroupRef) -> TypeLabel {
    let order = group.order();
    if order == 1 {
        return TypeLabel::Cyclic(1);
    }
    let orders: Vec<usize> = (0..order as u32).map(|g| group.element_order(g)).collect();
    if orders.contains(&order) {
        return TypeLabel::Cyclic(order);
    }
    if group.is_abelian() {
        return abelian_label(&orders);
    }
    if let Some(atom) = nonabelian_atom_label(group, &orders) {
        return atom;
    }
    match indecomposable_part_labels(group) {
        Some(mut parts) if parts.len() >= 2 => {
            parts.sort_by_key(|p| (p.group_order(), p.clone()));
            TypeLabel::DirectProduct(parts)
        }
        _ => TypeLabel::Opaque(fingerprint(group)),
    }
}

/// Dihedral/dicyclic recognition via the defining presentations.
fn nonabelian_atom_label(group: &GroupRef, orders: &[usize]) -> Option<TypeLabel> {
    let n = group.order();
    if n % 2 == 0 && n >= 6 && is_dihedral(group, orders) {
        return Some(TypeLabel::Dihedral(n));
    }
    if n % 4 == 0 && n >= 8 && is_dicyclic(group, orders) {
        return Some(TypeLabel::Dicyclic(n));
    }
    None
}

/// Order 2k with a cyclic subgroup of order k inverted by an involution
/// outside it.
fn is_dihedral(group: &GroupRef, orders: &[usize]) -> bool {
    let k = group.order() / 2;
    for r in 0..group.order() as u32 {
        if orders[r as usize] != k {
            continue;
        }
        let cyc = close(&[r], group);
        let r_inv = group.inv(r);
        for t in 0..group.order() as u32 {
            if orders[t as usize] == 2 && !cyc.contains(t) && group.conj(t, r) == r_inv {
                return true;
            }
        }
    }
    false
}

/// Order 4k with an order-2k element `r` and an outside element `x` with
/// `x^2 = r^k` and `x r x^{-1} = r^{-1}`.
fn is_dicyclic(group: &GroupRef, orders: &[usize]) -> bool {
    let two_k = group.order() / 2;
    let k = two_k / 2;
    for r in 0..group.order() as u32 {
        if orders[r as usize] != two_k {
            continue;
        }
        let cyc = close(&[r], group);
        let r_k = group.pow(r, k);
        let r_inv = group.inv(r);
        for x in 0..group.order() as u32 {
            if !cyc.contains(x) && group.mul(x, x) == r_k && group.conj(x, r) == r_inv {
                return true;
            }
        }
    }
    false
}

/// Primary decomposition of an abelian group from its element-order counts:
/// for each prime, the partition is recovered from the sizes of the
/// `p^j`-torsion layers.
fn abelian_label(orders: &[usize]) -> TypeLabel {
    let n = orders.len();
    let mut parts: Vec<usize> = Vec::new();
    for p in primes_dividing(n) {
        // counts[j] = #elements of order dividing p^j = p^(sum_i min(a_i, j)).
        let mut layer_exponents = vec![0usize];
        let mut j = 1;
        loop {
            let pj = p.pow(j as u32);
            let count = orders.iter().filter(|&&o| pj % o == 0).count();
            let log = count.ilog(p) as usize;
            if log == *layer_exponents.last().unwrap() {
                break;
            }
            layer_exponents.push(log);
            j += 1;
        }
        // parts with exponent >= j, for each layer.
        let at_least: Vec<usize> = layer_exponents.windows(2).map(|w| w[1] - w[0]).collect();
        for (jm1, &m) in at_least.iter().enumerate() {
            let next = at_least.get(jm1 + 1).copied().unwrap_or(0);
            for _ in 0..m - next {
                parts.push(p.pow(jm1 as u32 + 1));
            }
        }
    }
    parts.sort_unstable();
    if parts.len() == 1 {
        return TypeLabel::Cyclic(parts[0]);
    }
    let p0 = primes_dividing(parts[0])[0];
    if parts.iter().all(|&q| q == p0) {
        return TypeLabel::ElementaryAbelian {
            p: p0,
            k: parts.len(),
        };
    }
    TypeLabel::DirectProduct(parts.into_iter().map(TypeLabel::Cyclic).collect())
}

fn primes_dividing(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits the group recursively into directly indecomposable parts and
/// labels each leaf. Returns `None` if some leaf is unrecognized. The leaf
/// multiset is independent of split choices (Krull-Remak-Schmidt), so the
/// resulting label is canonical.
fn indecomposable_part_labels(group: &GroupRef) -> Option<Vec<TypeLabel>> {
    let split = find_direct_split(group)?;
    let mut parts = Vec::new();
    let mut stack = vec![split.0, split.1];
    while let Some(part) = stack.pop() {
        match find_direct_split(&part) {
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
            None => parts.push(leaf_label(&part)?),
        }
    }
    Some(parts)
}

fn leaf_label(group: &GroupRef) -> Option<TypeLabel> {
    let order = group.order();
    let orders: Vec<usize> = (0..order as u32).map(|g| group.element_order(g)).collect();
    if orders.contains(&order) {
        return Some(TypeLabel::Cyclic(order));
    }
    nonabelian_atom_label(group, &orders)
}

/// First proper direct split (N, H both normal, trivial intersection,
/// orders multiplying up), if any, as materialized groups.
fn find_direct_split(group: &GroupRef) -> Option<(GroupRef, GroupRef)> {
    let order = group.order();
    if order == 1 {
        return None;
    }
    let subs = all_subgroups_limited(group, usize::MAX).ok()?;
    let normals: Vec<&Subgroup> = subs.iter().filter(|s| s.is_normal()).collect();
    for n_sub in &normals {
        if n_sub.is_trivial() || n_sub.is_whole() {
            continue;
        }
        for h_sub in &normals {
            if h_sub.size() * n_sub.size() != order {
                continue;
            }
            if n_sub.intersect(h_sub).is_trivial() {
                return Some((n_sub.as_group().0, h_sub.as_group().0));
            }
        }
    }
    None
}

/// Every ordered pair (N, H) with N normal, |N|*|H| = |G| and trivial
/// intersection. Trivial pairs included only when flagged. Sorted by
/// (|N|, N member set, H member set).
pub fn internal_decompositions(
    group: &GroupRef,
    include_trivial: bool,
) -> Result<Vec<DecompositionRecord>> {
    internal_decompositions_limited(group, include_trivial, DEFAULT_ENUM_LIMIT)
}

pub fn internal_decompositions_limited(
    group: &GroupRef,
    include_trivial: bool,
    limit: usize,
) -> Result<Vec<DecompositionRecord>> {
    let subs = all_subgroups_limited(group, limit)?;
    let normal_flags: Vec<bool> = subs.iter().map(Subgroup::is_normal).collect();
    let order = group.order();
    let mut by_size: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, s) in subs.iter().enumerate() {
        by_size.entry(s.size()).or_default().push(i);
    }
    let mut labels: HashMap<FixedBitSet, TypeLabel> = HashMap::new();
    let mut label_of = |sub: &Subgroup| -> TypeLabel {
        labels
            .entry(sub.bits().clone())
            .or_insert_with(|| label(sub))
            .clone()
    };
    let mut records = Vec::new();
    for (ni, n_sub) in subs.iter().enumerate() {
        if !normal_flags[ni] {
            continue;
        }
        if order % n_sub.size() != 0 {
            continue;
        }
        let complement_size = order / n_sub.size();
        let Some(candidates) = by_size.get(&complement_size) else {
            continue;
        };
        for &hi in candidates {
            let h_sub = &subs[hi];
            if !include_trivial && (n_sub.is_trivial() || h_sub.is_trivial()) {
                continue;
            }
            if !n_sub.intersect(h_sub).is_trivial() {
                continue;
            }
            records.push(DecompositionRecord {
                n_label: label_of(n_sub),
                h_label: label_of(h_sub),
                normal_part: n_sub.clone(),
                complement: h_sub.clone(),
                is_direct: normal_flags[hi],
            });
        }
    }
    records.sort_by_key(DecompositionRecord::key);
    Ok(records)
}

/// Internal decompositions projected to label pairs, deduplicated and
/// sorted. Direct pairs are canonicalized unordered with the larger factor
/// first, so `A x B` and `B x A` collapse into one entry.
pub fn external_catalog(group: &GroupRef) -> Result<Vec<CatalogEntry>> {
    external_catalog_limited(group, DEFAULT_ENUM_LIMIT)
}

pub fn external_catalog_limited(group: &GroupRef, limit: usize) -> Result<Vec<CatalogEntry>> {
    let records = internal_decompositions_limited(group, false, limit)?;
    let mut entries: Vec<CatalogEntry> = records
        .iter()
        .map(|r| catalog_entry(r.n_label.clone(), r.h_label.clone(), r.is_direct))
        .collect();
    entries.sort();
    entries.dedup();
    Ok(entries)
}

pub(crate) fn catalog_entry(n_label: TypeLabel, h_label: TypeLabel, direct: bool) -> CatalogEntry {
    let (normal_label, complement_label) = if direct {
        let key = |l: &TypeLabel| (l.group_order(), l.clone());
        if key(&h_label) > key(&n_label) {
            (h_label, n_label)
        } else {
            (n_label, h_label)
        }
    } else {
        (n_label, h_label)
    };
    CatalogEntry {
        normal_label,
        complement_label,
        direct,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::dihedral_group;
    use crate::FiniteGroup;

    #[test]
    fn prime_cyclic_has_only_trivial_records() {
        let z7 = FiniteGroup::cyclic(7).unwrap();
        assert!(internal_decompositions(&z7, false).unwrap().is_empty());
        let with_trivial = internal_decompositions(&z7, true).unwrap();
        assert_eq!(with_trivial.len(), 2);
        assert!(with_trivial
            .iter()
            .all(|r| r.normal_part.is_trivial() || r.complement.is_trivial()));
    }

    #[test]
    fn d8_catalog() {
        let d8 = dihedral_group(4).unwrap();
        let catalog = external_catalog(&d8).unwrap();
        let expected = vec![
            catalog_entry(TypeLabel::Cyclic(4), TypeLabel::Cyclic(2), false),
            catalog_entry(
                TypeLabel::ElementaryAbelian { p: 2, k: 2 },
                TypeLabel::Cyclic(2),
                false,
            ),
        ];
        let mut expected = expected;
        expected.sort();
        assert_eq!(catalog, expected);
    }

    #[test]
    fn q8_splits_over_no_proper_pair() {
        let q8 = FiniteGroup::dicyclic(2).unwrap();
        assert!(internal_decompositions(&q8, false).unwrap().is_empty());
    }

    #[test]
    fn z15_has_only_the_direct_form() {
        let z15 = FiniteGroup::cyclic(15).unwrap();
        let records = internal_decompositions(&z15, false).unwrap();
        assert_eq!(records.len(), 2);
        assert!(records.iter().all(|r| r.is_direct));
        let catalog = external_catalog(&z15).unwrap();
        assert_eq!(
            catalog,
            vec![catalog_entry(
                TypeLabel::Cyclic(5),
                TypeLabel::Cyclic(3),
                true
            )]
        );
    }

    #[test]
    fn labels_of_dihedral_subgroups() {
        let d12 = dihedral_group(6).unwrap();
        let rot = close(&[1], &d12);
        assert_eq!(label(&rot), TypeLabel::Cyclic(6));
        let b = close(&[2, 6], &d12); // <a^2, x>, order 6, dihedral
        assert_eq!(label(&b), TypeLabel::Dihedral(6));
        let klein = close(&[3, 6], &d12);
        assert_eq!(label(&klein), TypeLabel::ElementaryAbelian { p: 2, k: 2 });
    }

    #[test]
    fn klein_subgroup_of_s4_is_elementary_abelian() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let subs = crate::subgroup::all_subgroups(&s4).unwrap();
        let klein_normal = subs
            .iter()
            .find(|s| s.size() == 4 && s.is_normal())
            .expect("S4 has a normal Klein subgroup");
        assert_eq!(
            label(klein_normal),
            TypeLabel::ElementaryAbelian { p: 2, k: 2 }
        );
    }

    #[test]
    fn abelian_labels_from_primary_decomposition() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(label_group(&z6), TypeLabel::Cyclic(6));
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v8 = crate::products::direct_product(
            &crate::products::direct_product(&z2, &z2).unwrap(),
            &z2,
        )
        .unwrap();
        assert_eq!(
            label_group(&v8),
            TypeLabel::ElementaryAbelian { p: 2, k: 3 }
        );
        let z6xz2 = crate::products::direct_product(&z6, &z2).unwrap();
        assert_eq!(
            label_group(&z6xz2),
            TypeLabel::DirectProduct(vec![
                TypeLabel::Cyclic(2),
                TypeLabel::Cyclic(2),
                TypeLabel::Cyclic(3)
            ])
        );
        assert_eq!(label_group(&z6xz2).to_string(), "Z2^2 x Z3");
    }

    #[test]
    fn dicyclic_labels() {
        assert_eq!(
            label_group(&FiniteGroup::dicyclic(2).unwrap()),
            TypeLabel::Dicyclic(8)
        );
        assert_eq!(
            label_group(&FiniteGroup::dicyclic(3).unwrap()),
            TypeLabel::Dicyclic(12)
        );
        // Q4 is plain Z4; the canonical constructor agrees.
        assert_eq!(
            label_group(&FiniteGroup::dicyclic(1).unwrap()),
            TypeLabel::Cyclic(4)
        );
        assert_eq!(TypeLabel::dicyclic_of_order(4), TypeLabel::Cyclic(4));
        assert_eq!(TypeLabel::dicyclic_of_order(8), TypeLabel::Dicyclic(8));
    }

    #[test]
    fn product_label_is_split_independent() {
        // D12 x Z2 decomposes many ways; the label must not depend on which
        // split the search stumbles on first.
        let d12 = dihedral_group(6).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let a = crate::products::direct_product(&d12, &z2).unwrap();
        let d6 = dihedral_group(3).unwrap();
        let klein = dihedral_group(2).unwrap();
        let b = crate::products::direct_product(&klein, &d6).unwrap();
        assert_eq!(label_group(&a), label_group(&b));
        assert_eq!(label_group(&a).to_string(), "Z2^2 x D6");
    }

    #[test]
    fn a4_is_opaque_with_stable_display() {
        let a4 = FiniteGroup::from_permutations(
            4,
            &[
                crate::perm::Permutation::parse_cycles(4, "(1,2,3)").unwrap(),
                crate::perm::Permutation::parse_cycles(4, "(1,2)(3,4)").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a4.order(), 12);
        let l = label_group(&a4);
        assert!(l.is_opaque());
        assert_eq!(l.to_string(), label_group(&a4).to_string());
        assert!(l.to_string().starts_with("G12#"));
    }
}
