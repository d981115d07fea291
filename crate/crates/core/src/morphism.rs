//! Homomorphisms between materialized groups, kernels, and brute-force
//! isomorphism testing with invariant pruning.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::group::check_limit;
use crate::subgroup::{close, Subgroup};
use crate::{Error, GroupRef, Result, DEFAULT_ENUM_LIMIT};

/// A total multiplication-preserving map between two groups, stored as the
/// image of every domain element.
#[derive(Clone)]
pub struct Homomorphism {
    domain: GroupRef,
    codomain: GroupRef,
    images: Vec<u32>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Homomorphism")
            .field("domain_order", &self.domain.order())
            .field("codomain_order", &self.codomain.order())
            .finish_non_exhaustive()
    }
}

impl Homomorphism {
    /// Validates the full multiplication-preservation table and wraps the
    /// mapping. The error names a violating pair.
    pub fn new(domain: GroupRef, codomain: GroupRef, images: Vec<u32>) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::InvalidArgument(format!(
                "expected {} images, got {}",
                domain.order(),
                images.len()
            )));
        }
        for &x in &images {
            if x as usize >= codomain.order() {
                return Err(Error::IndexOutOfRange {
                    index: x as usize,
                    order: codomain.order(),
                });
            }
        }
        if images[domain.identity() as usize] != codomain.identity() {
            return Err(Error::NotAHomomorphism {
                g: domain.identity() as usize,
                h: domain.identity() as usize,
            });
        }
        for a in 0..domain.order() as u32 {
            for b in 0..domain.order() as u32 {
                let lhs = images[domain.mul(a, b) as usize];
                let rhs = codomain.mul(images[a as usize], images[b as usize]);
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism {
                        g: a as usize,
                        h: b as usize,
                    });
                }
            }
        }
        Ok(Self {
            domain,
            codomain,
            images,
        })
    }

    pub(crate) fn new_unchecked(domain: GroupRef, codomain: GroupRef, images: Vec<u32>) -> Self {
        debug_assert!(
            Self::new(Arc::clone(&domain), Arc::clone(&codomain), images.clone()).is_ok()
        );
        Self {
            domain,
            codomain,
            images,
        }
    }

    pub fn identity(group: &GroupRef) -> Self {
        Self {
            domain: Arc::clone(group),
            codomain: Arc::clone(group),
            images: (0..group.order() as u32).collect(),
        }
    }

    pub fn domain(&self) -> &GroupRef {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupRef {
        &self.codomain
    }

    pub fn apply(&self, g: u32) -> u32 {
        self.images[g as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_bijective(&self) -> bool {
        if self.domain.order() != self.codomain.order() {
            return false;
        }
        let mut seen = vec![false; self.codomain.order()];
        for &x in &self.images {
            if seen[x as usize] {
                return false;
            }
            seen[x as usize] = true;
        }
        true
    }

    /// Pipes this map into `next`: the result sends `x` to `next(self(x))`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if !Arc::ptr_eq(&self.codomain, &next.domain) {
            return Err(Error::GroupMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|&x| next.images[x as usize])
            .collect();
        Ok(Homomorphism {
            domain: Arc::clone(&self.domain),
            codomain: Arc::clone(&next.codomain),
            images,
        })
    }
}

/// A bijective homomorphism from a group to itself.
#[derive(Debug, Clone)]
pub struct Automorphism(Homomorphism);

impl Automorphism {
    pub fn new(hom: Homomorphism) -> Result<Self> {
        if !Arc::ptr_eq(&hom.domain, &hom.codomain) {
            return Err(Error::GroupMismatch);
        }
        if !hom.is_bijective() {
            return Err(Error::NotBijective);
        }
        Ok(Self(hom))
    }

    /// Builds and validates an automorphism from its image vector.
    pub fn from_images(group: &GroupRef, images: Vec<u32>) -> Result<Self> {
        Self::new(Homomorphism::new(
            Arc::clone(group),
            Arc::clone(group),
            images,
        )?)
    }

    pub(crate) fn from_images_unchecked(group: &GroupRef, images: Vec<u32>) -> Self {
        Self(Homomorphism::new_unchecked(
            Arc::clone(group),
            Arc::clone(group),
            images,
        ))
    }

    pub fn identity(group: &GroupRef) -> Self {
        Self(Homomorphism::identity(group))
    }

    /// The map `g -> g^{-1}`, an automorphism exactly when the group is
    /// abelian (validated).
    pub fn inversion(group: &GroupRef) -> Result<Self> {
        let images = (0..group.order() as u32).map(|g| group.inv(g)).collect();
        Self::from_images(group, images)
    }

    pub fn group(&self) -> &GroupRef {
        &self.0.domain
    }

    pub fn apply(&self, g: u32) -> u32 {
        self.0.apply(g)
    }

    pub fn images(&self) -> &[u32] {
        self.0.images()
    }

    pub fn as_hom(&self) -> &Homomorphism {
        &self.0
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0u32; self.0.images.len()];
        for (i, &x) in self.0.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self(Homomorphism {
            domain: Arc::clone(&self.0.domain),
            codomain: Arc::clone(&self.0.codomain),
            images: inv,
        })
    }

    /// `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        Ok(Self(other.0.then(&self.0)?))
    }

    pub fn is_identity(&self) -> bool {
        self.0
            .images
            .iter()
            .enumerate()
            .all(|(i, &x)| i as u32 == x)
    }
}

/// Extends a generator-image assignment to a total homomorphism by
/// factoring every element through the generator closure, then validates
/// the full multiplication table.
pub fn hom_from_generator_images(
    domain: &GroupRef,
    codomain: &GroupRef,
    gen_images: &[u32],
) -> Result<Homomorphism> {
    if gen_images.len() != domain.generators().len() {
        return Err(Error::GeneratorCountMismatch {
            expected: domain.generators().len(),
            got: gen_images.len(),
        });
    }
    let images = extend_generator_assignment(domain, codomain, domain.generators(), gen_images)?;
    Homomorphism::new(Arc::clone(domain), Arc::clone(codomain), images)
}

/// Breadth-first extension of `gens[i] -> gen_images[i]` over the whole
/// domain. Fails fast when two factorizations of one element disagree.
fn extend_generator_assignment(
    domain: &GroupRef,
    codomain: &GroupRef,
    gens: &[u32],
    gen_images: &[u32],
) -> Result<Vec<u32>> {
    for &img in gen_images {
        if img as usize >= codomain.order() {
            return Err(Error::IndexOutOfRange {
                index: img as usize,
                order: codomain.order(),
            });
        }
    }
    let order = domain.order();
    let mut images: Vec<Option<u32>> = vec![None; order];
    images[domain.identity() as usize] = Some(codomain.identity());
    let mut queue = vec![domain.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = images[x as usize].unwrap();
        for (k, &g) in gens.iter().enumerate() {
            let y = domain.mul(x, g);
            let fy = codomain.mul(fx, gen_images[k]);
            match images[y as usize] {
                None => {
                    images[y as usize] = Some(fy);
                    queue.push(y);
                }
                Some(existing) if existing != fy => {
                    return Err(Error::NotAHomomorphism {
                        g: x as usize,
                        h: g as usize,
                    });
                }
                Some(_) => {}
            }
        }
    }
    images
        .into_iter()
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| Error::InvalidArgument("generators do not generate the domain".into()))
}

/// The subgroup of the domain mapping to the identity. Always normal.
pub fn kernel(h: &Homomorphism) -> Subgroup {
    let mut members = FixedBitSet::with_capacity(h.domain.order());
    let e = h.codomain.identity();
    for (g, &img) in h.images.iter().enumerate() {
        if img == e {
            members.insert(g);
        }
    }
    Subgroup::from_bits(&h.domain, members)
}

/// Cheap isomorphism invariants. Equality is necessary for isomorphism,
/// never sufficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoFingerprint {
    pub order: usize,
    pub abelian: bool,
    /// (element order, count) pairs, ascending.
    pub element_order_histogram: Vec<(usize, usize)>,
    pub center_size: usize,
    pub derived_subgroup_size: usize,
}

impl fmt::Display for IsoFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order={} abelian={} orders={{", self.order, self.abelian)?;
        for (i, (ord, count)) in self.element_order_histogram.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{ord}:{count}")?;
        }
        write!(
            f,
            "}} center={} derived={}",
            self.center_size, self.derived_subgroup_size
        )
    }
}

pub fn fingerprint(group: &GroupRef) -> IsoFingerprint {
    let n = group.order() as u32;
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for g in 0..n {
        *histogram.entry(group.element_order(g)).or_insert(0) += 1;
    }
    let center_size = (0..n)
        .filter(|&g| (0..n).all(|h| group.mul(g, h) == group.mul(h, g)))
        .count();
    let mut commutators: Vec<u32> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b))))
        .collect();
    commutators.sort_unstable();
    commutators.dedup();
    let derived_subgroup_size = close(&commutators, group).size();
    IsoFingerprint {
        order: group.order(),
        abelian: group.is_abelian(),
        element_order_histogram: histogram.into_iter().collect(),
        center_size,
        derived_subgroup_size,
    }
}

/// A smallest-size generating sequence, lexicographically least among those
/// of minimal size. The search walks subset sizes upward, skipping elements
/// already inside the closure of the chosen prefix.
pub fn minimal_generators(group: &GroupRef) -> Vec<u32> {
    let order = group.order();
    if order == 1 {
        return vec![];
    }
    for k in 1..=order {
        let mut prefix = Vec::with_capacity(k);
        if let Some(found) = search_generators(group, k, 0, &mut prefix) {
            return found;
        }
    }
    unreachable!("the full element set always generates");
}

fn search_generators(
    group: &GroupRef,
    k: usize,
    start: u32,
    prefix: &mut Vec<u32>,
) -> Option<Vec<u32>> {
    let closure = close(prefix, group);
    if closure.is_whole() && prefix.len() <= k {
        return Some(prefix.clone());
    }
    if prefix.len() == k {
        return None;
    }
    for g in start..group.order() as u32 {
        if closure.contains(g) {
            continue;
        }
        prefix.push(g);
        if let Some(found) = search_generators(group, k, g + 1, prefix) {
            return Some(found);
        }
        prefix.pop();
    }
    None
}

/// Backtracking isomorphism search with invariant pruning: fingerprints
/// first, then images of a minimal generating sequence among equal-order
/// elements, in lexicographic image order. Returns the first witness or
/// `None` after exhaustive search.
pub fn find_isomorphism(g: &GroupRef, h: &GroupRef) -> Result<Option<Homomorphism>> {
    find_isomorphism_limited(g, h, DEFAULT_ENUM_LIMIT)
}

pub fn find_isomorphism_limited(
    g: &GroupRef,
    h: &GroupRef,
    limit: usize,
) -> Result<Option<Homomorphism>> {
    check_limit(g.order(), limit)?;
    check_limit(h.order(), limit)?;
    if fingerprint(g) != fingerprint(h) {
        return Ok(None);
    }
    let gens = minimal_generators(g);
    if gens.is_empty() {
        // Both trivial.
        return Ok(Some(Homomorphism::new_unchecked(
            Arc::clone(g),
            Arc::clone(h),
            vec![h.identity()],
        )));
    }
    let gen_orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let candidates: Vec<Vec<u32>> = gen_orders
        .iter()
        .map(|&ord| {
            (0..h.order() as u32)
                .filter(|&y| h.element_order(y) == ord)
                .collect()
        })
        .collect();
    let mut chosen = Vec::with_capacity(gens.len());
    Ok(assign_images(g, h, &gens, &candidates, &mut chosen))
}

fn assign_images(
    g: &GroupRef,
    h: &GroupRef,
    gens: &[u32],
    candidates: &[Vec<u32>],
    chosen: &mut Vec<u32>,
) -> Option<Homomorphism> {
    if chosen.len() == gens.len() {
        if !close(chosen, h).is_whole() {
            return None;
        }
        let images = extend_generator_assignment(g, h, gens, chosen).ok()?;
        let hom = Homomorphism::new(Arc::clone(g), Arc::clone(h), images).ok()?;
        return hom.is_bijective().then_some(hom);
    }
    for &y in &candidates[chosen.len()] {
        chosen.push(y);
        if let Some(found) = assign_images(g, h, gens, candidates, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}
