//! Closed-form dihedral machinery: the rotation/reflection subgroup
//! catalog, the external and internal decomposition classifications, and
//! constructors for the shapes they name.
//!
//! The dihedral group of order `2n` is presented as
//! `<a, x | a^n = e, x^2 = e, x a x = a^{-1}>`; element `i < n` is `a^i`,
//! element `n + i` is `a^i x`.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::decompose::{catalog_entry, label, CatalogEntry, DecompositionRecord, TypeLabel};
use crate::group::{check_buildable, FiniteGroup, Provenance};
use crate::morphism::{hom_from_generator_images, Automorphism};
use crate::products::{semidirect_limited, SemidirectGroup, TwistingHom};
use crate::subgroup::Subgroup;
use crate::{Error, GroupRef, Result, DEFAULT_ENUM_LIMIT};

/// The dihedral group of order `2n` on rotation/reflection pairs. `n = 1`
/// and `n = 2` come out abelian (`Z2` and `Z2 x Z2`) by the same formula.
pub fn dihedral_group(n: usize) -> Result<GroupRef> {
    dihedral_group_limited(n, DEFAULT_ENUM_LIMIT)
}

pub fn dihedral_group_limited(n: usize, limit: usize) -> Result<GroupRef> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "dihedral parameter must be positive".into(),
        ));
    }
    let order = 2 * n;
    check_buildable(order, limit)?;
    let idx = |i: usize, s: usize| (s * n + i) as u32;
    let mut table = vec![0u32; order * order];
    for i in 0..n {
        for s in 0..2 {
            for j in 0..n {
                for t in 0..2 {
                    // (a^i x^s)(a^j x^t) = a^(i + (-1)^s j) x^(s+t).
                    let rot = if s == 0 { (i + j) % n } else { (i + n - j) % n };
                    table[(idx(i, s) as usize) * order + idx(j, t) as usize] =
                        idx(rot, (s + t) % 2);
                }
            }
        }
    }
    let labels = (0..order)
        .map(|e| {
            let (i, s) = (e % n, e / n);
            match (i, s) {
                (0, 0) => "e".to_string(),
                (1, 0) => "a".to_string(),
                (i, 0) => format!("a^{i}"),
                (0, _) => "x".to_string(),
                (1, _) => "a x".to_string(),
                (i, _) => format!("a^{i} x"),
            }
        })
        .collect();
    let generators = if n >= 2 {
        vec![1, n as u32]
    } else {
        vec![n as u32]
    };
    FiniteGroup::from_parts(table, generators, labels, Provenance::Atomic)
}

/// Names one subgroup of `D_{2n}`: `A { m }` is the rotation subgroup
/// `<a^{n/m}>` of size `m`; `B { m, r }` is `<a^{n/m}, a^r x>` of size `2m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DihedralSubgroupId {
    A { m: usize },
    B { m: usize, r: usize },
}

impl fmt::Display for DihedralSubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DihedralSubgroupId::A { m } => write!(f, "A_{m}"),
            DihedralSubgroupId::B { m, r } => write!(f, "B_{{{},{}}}", 2 * m, r),
        }
    }
}

/// One cataloged subgroup with its closed-form normality flag.
#[derive(Debug, Clone)]
pub struct DihedralSubgroup {
    pub id: DihedralSubgroupId,
    pub subgroup: Subgroup,
    pub normal: bool,
}

fn divisors(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn rotation_members(group: &GroupRef, n: usize, m: usize) -> FixedBitSet {
    let d = n / m;
    let mut bits = FixedBitSet::with_capacity(group.order());
    for k in 0..m {
        bits.insert(k * d);
    }
    bits
}

fn reflection_members(group: &GroupRef, n: usize, m: usize, r: usize) -> FixedBitSet {
    let d = n / m;
    let mut bits = rotation_members(group, n, m);
    for k in 0..m {
        bits.insert(n + (k * d + r) % n);
    }
    bits
}

/// All subgroups of `D_{2n}` in closed form: the `d(n)` rotation subgroups
/// `A_m` and the `sigma(n)` reflection-carrying subgroups `B_{2m,r}`.
/// Normality flags are closed-form: `A_m` always; `B_{2m,r}` exactly for
/// the whole group and, when `n` is even, the two index-2 subgroups.
pub fn subgroup_catalog(n: usize) -> Result<Vec<DihedralSubgroup>> {
    subgroup_catalog_limited(n, DEFAULT_ENUM_LIMIT)
}

pub fn subgroup_catalog_limited(n: usize, limit: usize) -> Result<Vec<DihedralSubgroup>> {
    let group = dihedral_group_limited(n, limit)?;
    catalog_on(&group, n)
}

fn catalog_on(group: &GroupRef, n: usize) -> Result<Vec<DihedralSubgroup>> {
    let mut out = Vec::new();
    for m in divisors(n) {
        out.push(DihedralSubgroup {
            id: DihedralSubgroupId::A { m },
            subgroup: Subgroup::from_bits(group, rotation_members(group, n, m)),
            normal: true,
        });
        let b_normal = m == n || (n % 2 == 0 && 2 * m == n);
        for r in 0..n / m {
            out.push(DihedralSubgroup {
                id: DihedralSubgroupId::B { m, r },
                subgroup: Subgroup::from_bits(group, reflection_members(group, n, m, r)),
                normal: b_normal,
            });
        }
    }
    Ok(out)
}

/// One external semidirect decomposition shape of `D_{2n}` from the
/// classification, with enough data to rebuild the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExternalShape {
    /// `Z_n x| Z_2`, the extending generator inverting every rotation.
    ClassicalZnZ2 { n: usize },
    /// `Z_m x| D_{2n/m}` for a unitary divisor `1 < m < n`: rotations of
    /// the dihedral factor act trivially, reflections invert.
    ZmSemidirectD { m: usize, n: usize },
    /// `D_n x| Z_2` for even `n`: the twist inverts the rotation generator
    /// and multiplies the reflection generator by it.
    DnSemidirectZ2 { n: usize },
    /// `D_n x Z_2` for `n = 2 mod 4`.
    DnDirectZ2 { n: usize },
}

impl ExternalShape {
    /// The shape's twist is trivial exactly for the direct form and for the
    /// unitary divisor 2 (inversion on `Z_2` is the identity).
    pub fn is_direct(&self) -> bool {
        matches!(
            self,
            ExternalShape::DnDirectZ2 { .. } | ExternalShape::ZmSemidirectD { m: 2, .. }
        )
    }

    /// Projection to a catalog entry (normal label, complement label,
    /// directness), canonicalized like the brute-force catalog.
    pub fn catalog_entry(&self) -> CatalogEntry {
        let (n_label, h_label) = match *self {
            ExternalShape::ClassicalZnZ2 { n } => (TypeLabel::Cyclic(n), TypeLabel::Cyclic(2)),
            ExternalShape::ZmSemidirectD { m, n } => (
                TypeLabel::Cyclic(m),
                TypeLabel::dihedral_of_order(2 * n / m),
            ),
            ExternalShape::DnSemidirectZ2 { n } | ExternalShape::DnDirectZ2 { n } => {
                (TypeLabel::dihedral_of_order(n), TypeLabel::Cyclic(2))
            }
        };
        catalog_entry(n_label, h_label, self.is_direct())
    }

    /// Materializes the shape as an external semidirect product with the
    /// stated twist.
    pub fn realize(&self, limit: usize) -> Result<SemidirectGroup> {
        match *self {
            ExternalShape::ClassicalZnZ2 { n } => {
                let base = FiniteGroup::cyclic_limited(n, limit)?;
                let ext = FiniteGroup::cyclic_limited(2, limit)?;
                let inv = Automorphism::inversion(&base)?;
                semidirect_limited(
                    &TwistingHom::from_generator_autos(&base, &ext, &[inv])?,
                    limit,
                )
            }
            ExternalShape::ZmSemidirectD { m, n } => {
                let base = FiniteGroup::cyclic_limited(m, limit)?;
                let ext = dihedral_group_limited(n / m, limit)?;
                let inv = Automorphism::inversion(&base)?;
                let autos: Vec<Automorphism> = ext
                    .generators()
                    .iter()
                    .map(|&g| {
                        // Rotations act trivially, reflections invert.
                        if (g as usize) < n / m {
                            Automorphism::identity(&base)
                        } else {
                            inv.clone()
                        }
                    })
                    .collect();
                semidirect_limited(
                    &TwistingHom::from_generator_autos(&base, &ext, &autos)?,
                    limit,
                )
            }
            ExternalShape::DnSemidirectZ2 { n } => {
                let half = n / 2;
                let base = dihedral_group_limited(half, limit)?;
                let ext = FiniteGroup::cyclic_limited(2, limit)?;
                // a -> a^{-1}, x -> a x.
                let a = 1u32;
                let x = half as u32;
                let alpha = Automorphism::new(hom_from_generator_images(
                    &base,
                    &base,
                    &[base.inv(a), base.mul(a, x)],
                )?)?;
                semidirect_limited(
                    &TwistingHom::from_generator_autos(&base, &ext, &[alpha])?,
                    limit,
                )
            }
            ExternalShape::DnDirectZ2 { n } => {
                let base = dihedral_group_limited(n / 2, limit)?;
                let ext = FiniteGroup::cyclic_limited(2, limit)?;
                semidirect_limited(&TwistingHom::trivial(&base, &ext), limit)
            }
        }
    }
}

impl fmt::Display for ExternalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ExternalShape::ClassicalZnZ2 { n } => write!(f, "Z{n} x| Z2"),
            ExternalShape::ZmSemidirectD { m, n } => write!(f, "Z{m} x| D{}", 2 * n / m),
            ExternalShape::DnSemidirectZ2 { n } => write!(f, "D{n} x| Z2"),
            ExternalShape::DnDirectZ2 { n } => write!(f, "D{n} x Z2"),
        }
    }
}

/// The complete list of external semidirect decomposition shapes of
/// `D_{2n}`: one per unitary divisor `1 < m < n`, the classical one, and
/// the reflection-preserving forms for even `n`. Requires `n >= 3`; the
/// abelian cases below that are served by the generic enumerator.
pub fn external_decompositions(n: usize) -> Result<Vec<ExternalShape>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "external classification needs n >= 3, got {n}; use the generic enumerator"
        )));
    }
    let mut shapes = Vec::new();
    for m in divisors(n) {
        if m > 1 && m < n && gcd(m, n / m) == 1 {
            shapes.push(ExternalShape::ZmSemidirectD { m, n });
        }
    }
    shapes.push(ExternalShape::ClassicalZnZ2 { n });
    if n % 2 == 0 {
        shapes.push(ExternalShape::DnSemidirectZ2 { n });
        if n % 4 != 0 {
            shapes.push(ExternalShape::DnDirectZ2 { n });
        }
    }
    Ok(shapes)
}

/// The classification's external catalog as deduplicated label entries,
/// directly comparable with [`crate::decompose::external_catalog`].
pub fn external_catalog_from_classification(n: usize) -> Result<Vec<CatalogEntry>> {
    let mut entries: Vec<CatalogEntry> = external_decompositions(n)?
        .iter()
        .map(ExternalShape::catalog_entry)
        .collect();
    entries.sort();
    entries.dedup();
    Ok(entries)
}

/// All internal semidirect decompositions of `D_{2n}` in closed form:
/// `A_m x| B_{2n/m, r}` for every unitary divisor `m` and every
/// `r mod m`; for even `n` the two index-2 reflection subgroups against
/// order-2 complements of opposite parity; and for `n = 2 mod 4` the two
/// direct forms against the central `A_2`. Requires `n >= 3`.
pub fn internal_decompositions(n: usize) -> Result<Vec<DecompositionRecord>> {
    internal_decompositions_limited(n, DEFAULT_ENUM_LIMIT)
}

pub fn internal_decompositions_limited(n: usize, limit: usize) -> Result<Vec<DecompositionRecord>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "internal classification needs n >= 3, got {n}; use the generic enumerator"
        )));
    }
    let group = dihedral_group_limited(n, limit)?;
    let catalog = catalog_on(&group, n)?;
    let by_id: HashMap<DihedralSubgroupId, &DihedralSubgroup> =
        catalog.iter().map(|c| (c.id, c)).collect();
    let mut pairs: Vec<(DihedralSubgroupId, DihedralSubgroupId)> = Vec::new();
    for m in divisors(n) {
        if m == 1 || gcd(m, n / m) != 1 {
            continue;
        }
        // A_m x| B_{2n/m, r} for all r in Z_m: B-subgroups of size 2n/m are
        // indexed by r in Z_{n/(n/m)} = Z_m.
        for r in 0..m {
            pairs.push((
                DihedralSubgroupId::A { m },
                DihedralSubgroupId::B { m: n / m, r },
            ));
        }
    }
    if n % 2 == 0 {
        for r in 0..n {
            // B_{n,0} pairs with odd r, B_{n,1} with even r.
            let head = if r % 2 == 1 { 0 } else { 1 };
            pairs.push((
                DihedralSubgroupId::B { m: n / 2, r: head },
                DihedralSubgroupId::B { m: 1, r },
            ));
        }
        if n % 4 != 0 {
            for head in 0..2 {
                pairs.push((
                    DihedralSubgroupId::B { m: n / 2, r: head },
                    DihedralSubgroupId::A { m: 2 },
                ));
            }
        }
    }
    let mut label_cache: HashMap<DihedralSubgroupId, TypeLabel> = HashMap::new();
    let mut records = Vec::new();
    for (n_id, h_id) in pairs {
        let n_part = by_id[&n_id];
        let h_part = by_id[&h_id];
        debug_assert!(n_part.normal);
        let n_label = label_cache
            .entry(n_id)
            .or_insert_with(|| label(&n_part.subgroup))
            .clone();
        let h_label = label_cache
            .entry(h_id)
            .or_insert_with(|| label(&h_part.subgroup))
            .clone();
        records.push(DecompositionRecord {
            n_label,
            h_label,
            normal_part: n_part.subgroup.clone(),
            complement: h_part.subgroup.clone(),
            is_direct: h_part.normal,
        });
    }
    records.sort_by_key(DecompositionRecord::key);
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::fingerprint;
    use crate::subgroup::all_subgroups;

    #[test]
    fn small_dihedral_groups_are_abelian() {
        let d2 = dihedral_group(1).unwrap();
        assert_eq!(d2.order(), 2);
        assert_eq!(d2.element_order(1), 2);
        let d4 = dihedral_group(2).unwrap();
        assert_eq!(d4.order(), 4);
        assert!(d4.is_abelian());
        assert!((0..4).all(|g| d4.element_order(g) <= 2));
    }

    #[test]
    fn d12_shape() {
        let d12 = dihedral_group(6).unwrap();
        assert_eq!(d12.order(), 12);
        assert!(!d12.is_abelian());
        assert!(d12.verify_associativity());
        let fp = fingerprint(&d12);
        assert_eq!(
            fp.element_order_histogram,
            vec![(1, 1), (2, 7), (3, 2), (6, 2)]
        );
    }

    #[test]
    fn catalog_counts_match_divisor_arithmetic() {
        // d(6) = 4 rotation subgroups, sigma(6) = 12 reflection subgroups.
        let catalog = subgroup_catalog(6).unwrap();
        let a_count = catalog
            .iter()
            .filter(|c| matches!(c.id, DihedralSubgroupId::A { .. }))
            .count();
        let b_count = catalog.len() - a_count;
        assert_eq!((a_count, b_count), (4, 12));
        // Prime n = 5: d(5) = 2, sigma(5) = 6.
        let catalog5 = subgroup_catalog(5).unwrap();
        let a5 = catalog5
            .iter()
            .filter(|c| matches!(c.id, DihedralSubgroupId::A { .. }))
            .count();
        assert_eq!((a5, catalog5.len() - a5), (2, 6));
    }

    #[test]
    fn catalog_matches_brute_force_lattice() {
        for n in [1usize, 2, 3, 4, 6, 9, 10, 12] {
            let group = dihedral_group(n).unwrap();
            let brute = all_subgroups(&group).unwrap();
            let mut closed: Vec<Vec<u32>> = subgroup_catalog(n)
                .unwrap()
                .iter()
                .map(|c| c.subgroup.members())
                .collect();
            closed.sort();
            closed.dedup();
            let brute_sets: Vec<Vec<u32>> = brute.iter().map(Subgroup::members).collect();
            let mut brute_sets = brute_sets;
            brute_sets.sort();
            assert_eq!(closed, brute_sets, "n = {n}");
        }
    }

    #[test]
    fn normality_flags_match_brute_force() {
        for n in [3usize, 4, 6, 8, 9, 12] {
            for entry in subgroup_catalog(n).unwrap() {
                assert_eq!(
                    entry.normal,
                    entry.subgroup.is_normal(),
                    "n = {n}, id = {}",
                    entry.id
                );
            }
        }
    }

    #[test]
    fn shape_counts_for_prime_powers() {
        // Odd prime power: classical only.
        assert_eq!(external_decompositions(9).unwrap().len(), 1);
        assert_eq!(external_decompositions(25).unwrap().len(), 1);
        // Power of two: classical plus the index-2 reflection form.
        assert_eq!(external_decompositions(8).unwrap().len(), 2);
        assert_eq!(external_decompositions(16).unwrap().len(), 2);
    }

    #[test]
    fn d60_has_eight_catalog_entries() {
        let entries = external_catalog_from_classification(30).unwrap();
        assert_eq!(entries.len(), 8);
    }

    #[test]
    fn every_shape_realizes_the_dihedral_group() {
        use crate::morphism::find_isomorphism;
        for n in [6usize, 8, 9, 12] {
            let d2n = dihedral_group(n).unwrap();
            for shape in external_decompositions(n).unwrap() {
                let sdp = shape.realize(DEFAULT_ENUM_LIMIT).unwrap();
                assert!(
                    find_isomorphism(sdp.group(), &d2n).unwrap().is_some(),
                    "n = {n}, shape = {shape}"
                );
            }
        }
    }

    #[test]
    fn internal_classification_counts() {
        // n = 6: 2 + 3 + 6 records from unitary divisors, 6 from the
        // index-2 forms, 2 direct.
        assert_eq!(internal_decompositions(6).unwrap().len(), 19);
        // n = 9: only the classical family, 9 records.
        let n9 = internal_decompositions(9).unwrap();
        assert_eq!(n9.len(), 9);
        assert!(n9
            .iter()
            .all(|r| r.normal_part.size() == 9 && r.complement.size() == 2));
        // n = 4: classical family plus parity-split index-2 forms.
        assert_eq!(internal_decompositions(4).unwrap().len(), 8);
    }

    #[test]
    fn twist_image_of_proper_shapes_has_order_two() {
        for n in [6usize, 9, 12, 15] {
            for shape in external_decompositions(n).unwrap() {
                let sdp = shape.realize(DEFAULT_ENUM_LIMIT).unwrap();
                let kernel = sdp.twist().kernel();
                let image_order = sdp.ext().order() / kernel.size();
                if shape.is_direct() {
                    assert_eq!(image_order, 1, "n = {n}, shape = {shape}");
                } else {
                    assert_eq!(image_order, 2, "n = {n}, shape = {shape}");
                }
            }
        }
    }
}
