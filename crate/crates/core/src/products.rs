//! Direct and external semidirect product constructors, embedded-copy
//! bookkeeping, and the block encoding of automorphisms of direct products.
//!
//! Pair elements are laid out row-major: the index of `(n, h)` is
//! `n * |H| + h`. Direct products record their factor boundaries in the
//! result's [`Provenance`] so block operations need no rediscovery.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::group::{check_buildable, FiniteGroup, Provenance};
use crate::morphism::{Automorphism, Homomorphism};
use crate::subgroup::Subgroup;
use crate::{Error, GroupRef, Result, DEFAULT_ENUM_LIMIT};

/// A validated homomorphism from an extending group `H` into the
/// automorphisms of a base group `N`, stored as one image table per
/// `H`-element.
#[derive(Clone)]
pub struct TwistingHom {
    base: GroupRef,
    ext: GroupRef,
    action: Vec<Vec<u32>>,
}

impl fmt::Debug for TwistingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwistingHom")
            .field("base_order", &self.base.order())
            .field("ext_order", &self.ext.order())
            .finish_non_exhaustive()
    }
}

impl TwistingHom {
    /// Validates a full action table: every image must be an automorphism
    /// of the base, the identity of `H` must act trivially, and the action
    /// must respect multiplication in `H`.
    pub fn new(base: GroupRef, ext: GroupRef, action: Vec<Vec<u32>>) -> Result<Self> {
        if action.len() != ext.order() {
            return Err(Error::InvalidTwist(format!(
                "expected {} automorphisms, got {}",
                ext.order(),
                action.len()
            )));
        }
        for (h, images) in action.iter().enumerate() {
            Automorphism::from_images(&base, images.clone()).map_err(|e| {
                Error::InvalidTwist(format!("image of element {h} is not an automorphism: {e}"))
            })?;
        }
        let e = ext.identity() as usize;
        if action[e]
            .iter()
            .enumerate()
            .any(|(n, &img)| n as u32 != img)
        {
            return Err(Error::InvalidTwist(
                "identity of the extending group must act trivially".into(),
            ));
        }
        for h1 in 0..ext.order() as u32 {
            for h2 in 0..ext.order() as u32 {
                let composite = &action[ext.mul(h1, h2) as usize];
                let (a1, a2) = (&action[h1 as usize], &action[h2 as usize]);
                for n in 0..base.order() {
                    if composite[n] != a1[a2[n] as usize] {
                        return Err(Error::InvalidTwist(format!(
                            "action of product of elements {h1} and {h2} is not the composite action"
                        )));
                    }
                }
            }
        }
        Ok(Self { base, ext, action })
    }

    /// Every element of `H` acts as the identity.
    pub fn trivial(base: &GroupRef, ext: &GroupRef) -> Self {
        let id: Vec<u32> = (0..base.order() as u32).collect();
        Self {
            base: Arc::clone(base),
            ext: Arc::clone(ext),
            action: vec![id; ext.order()],
        }
    }

    /// Extends an automorphism assignment on the generators of `H` to the
    /// whole extending group, then validates it.
    pub fn from_generator_autos(
        base: &GroupRef,
        ext: &GroupRef,
        gen_autos: &[Automorphism],
    ) -> Result<Self> {
        if gen_autos.len() != ext.generators().len() {
            return Err(Error::GeneratorCountMismatch {
                expected: ext.generators().len(),
                got: gen_autos.len(),
            });
        }
        for auto in gen_autos {
            if !Arc::ptr_eq(auto.group(), base) {
                return Err(Error::GroupMismatch);
            }
        }
        let order = ext.order();
        let mut action: Vec<Option<Vec<u32>>> = vec![None; order];
        let identity: Vec<u32> = (0..base.order() as u32).collect();
        action[ext.identity() as usize] = Some(identity);
        let mut queue = vec![ext.identity()];
        let mut head = 0;
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            let action_w = action[w as usize].clone().unwrap();
            for (k, &g) in ext.generators().iter().enumerate() {
                let wg = ext.mul(w, g);
                // phi(w g) = phi(w) after phi(g).
                let action_wg: Vec<u32> = gen_autos[k]
                    .images()
                    .iter()
                    .map(|&n| action_w[n as usize])
                    .collect();
                match &action[wg as usize] {
                    None => {
                        action[wg as usize] = Some(action_wg);
                        queue.push(wg);
                    }
                    Some(existing) if *existing != action_wg => {
                        return Err(Error::InvalidTwist(format!(
                            "generator assignment is inconsistent at element {w} times generator {k}"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let action: Option<Vec<Vec<u32>>> = action.into_iter().collect();
        let action = action.ok_or_else(|| {
            Error::InvalidTwist("generators do not generate the extending group".into())
        })?;
        Self::new(Arc::clone(base), Arc::clone(ext), action)
    }

    pub fn base(&self) -> &GroupRef {
        &self.base
    }

    pub fn ext(&self) -> &GroupRef {
        &self.ext
    }

    pub fn apply(&self, h: u32, n: u32) -> u32 {
        self.action[h as usize][n as usize]
    }

    pub fn action_images(&self, h: u32) -> &[u32] {
        &self.action[h as usize]
    }

    pub fn action_automorphism(&self, h: u32) -> Automorphism {
        Automorphism::from_images_unchecked(&self.base, self.action[h as usize].clone())
    }

    /// The subgroup of `H` acting trivially.
    pub fn kernel(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.ext.order());
        for (h, images) in self.action.iter().enumerate() {
            if images.iter().enumerate().all(|(n, &img)| n as u32 == img) {
                members.insert(h);
            }
        }
        Subgroup::from_bits(&self.ext, members)
    }

    pub fn is_trivial(&self) -> bool {
        self.kernel().is_whole()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }
}

/// An external semidirect product together with its embedded copies of the
/// factors: the base sits inside as a normal subgroup, the extending group
/// as a complement.
#[derive(Debug, Clone)]
pub struct SemidirectGroup {
    group: GroupRef,
    twist: TwistingHom,
    embedded_base: Subgroup,
    embedded_ext: Subgroup,
}

impl SemidirectGroup {
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn base(&self) -> &GroupRef {
        self.twist.base()
    }

    pub fn ext(&self) -> &GroupRef {
        self.twist.ext()
    }

    pub fn twist(&self) -> &TwistingHom {
        &self.twist
    }

    /// The normal copy of the base group inside the product.
    pub fn embedded_base(&self) -> &Subgroup {
        &self.embedded_base
    }

    /// The complement copy of the extending group inside the product.
    pub fn embedded_ext(&self) -> &Subgroup {
        &self.embedded_ext
    }

    /// Index of the pair `(n, h)`.
    pub fn pair(&self, n: u32, h: u32) -> u32 {
        n * self.ext().order() as u32 + h
    }

    /// Inverse of [`pair`](SemidirectGroup::pair).
    pub fn unpair(&self, g: u32) -> (u32, u32) {
        let h_order = self.ext().order() as u32;
        (g / h_order, g % h_order)
    }
}

/// Componentwise product on pairs, generators embedded from both factors,
/// factor boundaries recorded in the result's provenance.
pub fn direct_product(left: &GroupRef, right: &GroupRef) -> Result<GroupRef> {
    direct_product_limited(left, right, DEFAULT_ENUM_LIMIT)
}

pub fn direct_product_limited(left: &GroupRef, right: &GroupRef, limit: usize) -> Result<GroupRef> {
    let trivial = TwistingHom::trivial(left, right);
    let raw = build_product_table(&trivial, limit)?;
    FiniteGroup::from_parts(
        raw.table,
        raw.generators,
        raw.labels,
        Provenance::Direct {
            left: Arc::clone(left),
            right: Arc::clone(right),
        },
    )
}

/// The group on pairs `(n, h)` with `(n1,h1)(n2,h2) = (n1 phi(h1)(n2), h1 h2)`.
pub fn semidirect(twist: &TwistingHom) -> Result<SemidirectGroup> {
    semidirect_limited(twist, DEFAULT_ENUM_LIMIT)
}

pub fn semidirect_limited(twist: &TwistingHom, limit: usize) -> Result<SemidirectGroup> {
    let raw = build_product_table(twist, limit)?;
    let group = FiniteGroup::from_parts(raw.table, raw.generators, raw.labels, Provenance::Atomic)?;
    let (n_ord, h_ord) = (twist.base().order(), twist.ext().order());
    let mut base_bits = FixedBitSet::with_capacity(group.order());
    for n in 0..n_ord {
        base_bits.insert(n * h_ord + twist.ext().identity() as usize);
    }
    let mut ext_bits = FixedBitSet::with_capacity(group.order());
    for h in 0..h_ord {
        ext_bits.insert(twist.base().identity() as usize * h_ord + h);
    }
    Ok(SemidirectGroup {
        embedded_base: Subgroup::from_bits(&group, base_bits),
        embedded_ext: Subgroup::from_bits(&group, ext_bits),
        group,
        twist: twist.clone(),
    })
}

struct RawProduct {
    table: Vec<u32>,
    generators: Vec<u32>,
    labels: Vec<String>,
}

fn build_product_table(twist: &TwistingHom, limit: usize) -> Result<RawProduct> {
    let (n_grp, h_grp) = (twist.base(), twist.ext());
    let (n_ord, h_ord) = (n_grp.order(), h_grp.order());
    let order = n_ord.checked_mul(h_ord).ok_or(Error::LimitExceeded {
        order: usize::MAX,
        limit,
    })?;
    check_buildable(order, limit)?;
    let pair = |n: usize, h: usize| n * h_ord + h;
    let mut table = vec![0u32; order * order];
    for n1 in 0..n_ord as u32 {
        for h1 in 0..h_ord as u32 {
            let row = pair(n1 as usize, h1 as usize) * order;
            let twisted = twist.action_images(h1);
            for n2 in 0..n_ord as u32 {
                let n_part = n_grp.mul(n1, twisted[n2 as usize]);
                for h2 in 0..h_ord as u32 {
                    table[row + pair(n2 as usize, h2 as usize)] =
                        pair(n_part as usize, h_grp.mul(h1, h2) as usize) as u32;
                }
            }
        }
    }
    let mut generators = Vec::new();
    for &g in n_grp.generators() {
        generators.push(pair(g as usize, h_grp.identity() as usize) as u32);
    }
    for &g in h_grp.generators() {
        generators.push(pair(n_grp.identity() as usize, g as usize) as u32);
    }
    let mut labels = Vec::with_capacity(order);
    for n in 0..n_ord {
        for h in 0..h_ord {
            labels.push(format!(
                "({},{})",
                n_grp.label(n as u32),
                h_grp.label(h as u32)
            ));
        }
    }
    Ok(RawProduct {
        table,
        generators,
        labels,
    })
}

/// The four restricted homomorphisms of an automorphism of a direct
/// product: `alpha(g1, g2) = (phi11(g1) phi12(g2), phi21(g1) phi22(g2))`.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub phi11: Homomorphism,
    pub phi12: Homomorphism,
    pub phi21: Homomorphism,
    pub phi22: Homomorphism,
}

fn product_factors(group: &GroupRef) -> Result<(GroupRef, GroupRef)> {
    match group.provenance() {
        Provenance::Direct { left, right } => Ok((Arc::clone(left), Arc::clone(right))),
        Provenance::Atomic => Err(Error::NotADirectProduct),
    }
}

/// Splits an automorphism of a recorded direct product into its four
/// blocks, each validated as a homomorphism.
pub fn block_decompose(alpha: &Automorphism) -> Result<BlockDecomposition> {
    let product = alpha.group();
    let (left, right) = product_factors(product)?;
    let (l_ord, r_ord) = (left.order() as u32, right.order() as u32);
    let pair = |g1: u32, g2: u32| g1 * r_ord + g2;
    let split = |g: u32| (g / r_ord, g % r_ord);
    let (e1, e2) = (left.identity(), right.identity());
    let mut phi11 = Vec::with_capacity(l_ord as usize);
    let mut phi21 = Vec::with_capacity(l_ord as usize);
    for g1 in 0..l_ord {
        let (u, v) = split(alpha.apply(pair(g1, e2)));
        phi11.push(u);
        phi21.push(v);
    }
    let mut phi12 = Vec::with_capacity(r_ord as usize);
    let mut phi22 = Vec::with_capacity(r_ord as usize);
    for g2 in 0..r_ord {
        let (u, v) = split(alpha.apply(pair(e1, g2)));
        phi12.push(u);
        phi22.push(v);
    }
    Ok(BlockDecomposition {
        phi11: Homomorphism::new(Arc::clone(&left), Arc::clone(&left), phi11)?,
        phi12: Homomorphism::new(Arc::clone(&right), Arc::clone(&left), phi12)?,
        phi21: Homomorphism::new(Arc::clone(&left), Arc::clone(&right), phi21)?,
        phi22: Homomorphism::new(Arc::clone(&right), Arc::clone(&right), phi22)?,
    })
}

/// True iff both off-diagonal blocks of the automorphism are trivial.
pub fn is_diagonal(alpha: &Automorphism) -> Result<bool> {
    let product = alpha.group();
    let (left, right) = product_factors(product)?;
    let (l_ord, r_ord) = (left.order() as u32, right.order() as u32);
    let pair = |g1: u32, g2: u32| g1 * r_ord + g2;
    let split = |g: u32| (g / r_ord, g % r_ord);
    let ok_left =
        (0..l_ord).all(|g1| split(alpha.apply(pair(g1, right.identity()))).1 == right.identity());
    let ok_right =
        (0..r_ord).all(|g2| split(alpha.apply(pair(left.identity(), g2))).0 == left.identity());
    Ok(ok_left && ok_right)
}

/// Assembles `alpha(g1, g2) = (u(g1), v(g2))` on a recorded direct product
/// from automorphisms of the factors.
pub fn diagonal_automorphism(
    u: &Automorphism,
    v: &Automorphism,
    product: &GroupRef,
) -> Result<Automorphism> {
    let (left, right) = product_factors(product)?;
    if !Arc::ptr_eq(u.group(), &left) || !Arc::ptr_eq(v.group(), &right) {
        return Err(Error::GroupMismatch);
    }
    let r_ord = right.order() as u32;
    let mut images = Vec::with_capacity(product.order());
    for g1 in 0..left.order() as u32 {
        for g2 in 0..r_ord {
            images.push(u.apply(g1) * r_ord + v.apply(g2));
        }
    }
    Automorphism::from_images(product, images)
}

/// Convenience: the diagonal twist on a recorded direct product of two
/// cyclic groups, sending the extending generator to multiplication by the
/// given pair of multipliers.
pub fn diagonal_cyclic_twist(
    product: &GroupRef,
    ext: &GroupRef,
    mult_left: i64,
    mult_right: i64,
) -> Result<TwistingHom> {
    let (left, right) = product_factors(product)?;
    let u = cyclic_multiplier_auto(&left, mult_left)?;
    let v = cyclic_multiplier_auto(&right, mult_right)?;
    let alpha = diagonal_automorphism(&u, &v, product)?;
    let autos = vec![alpha; ext.generators().len()];
    TwistingHom::from_generator_autos(product, ext, &autos)
}

/// Multiplication by `k` on a cyclic group in additive convention; an
/// automorphism exactly when `gcd(k, n) = 1` (validated).
pub fn cyclic_multiplier_auto(group: &GroupRef, k: i64) -> Result<Automorphism> {
    let n = group.order() as i64;
    let k = k.rem_euclid(n) as u32;
    let images = (0..group.order() as u32)
        .map(|g| group.pow(g, k as usize))
        .collect();
    Automorphism::from_images(group, images)
}
