//! Decomposition rewrites: moving an invariant direct factor of the base
//! group into the extending group, splitting off a factor the twist never
//! touches, peeling direct factors off the extending group, and the
//! generalized dihedral constructions built on top.
//!
//! Every operation returns the rebuilt product together with an explicit
//! witness map that is verified to be an isomorphism, never assumed.

use std::sync::Arc;

use crate::group::Provenance;
use crate::morphism::{Automorphism, Homomorphism};
use crate::products::{direct_product_limited, semidirect_limited, SemidirectGroup, TwistingHom};
use crate::subgroup::Subgroup;
use crate::{Error, FiniteGroup, GroupRef, Result, DEFAULT_ENUM_LIMIT};

/// A rewrite outcome: the original group, the rebuilt one, and the
/// verified isomorphism between them.
#[derive(Debug, Clone)]
pub struct RewriteResult {
    pub original: GroupRef,
    pub rebuilt: GroupRef,
    pub witness: Homomorphism,
    /// Kernel of the induced twist on the moved factor, when applicable.
    pub derived_kernel: Option<Subgroup>,
}

/// Result of moving the second base factor into the extending group:
/// `(N1 x N2) x| H` rebuilt as `N1 x| (N2 x| H)`.
#[derive(Debug, Clone)]
pub struct ShiftedBase {
    pub rewrite: RewriteResult,
    /// The new extending group `N2 x| H`.
    pub inner: SemidirectGroup,
    /// The rebuilt product `N1 x| (N2 x| H)`.
    pub outer: SemidirectGroup,
}

/// Result of splitting off an untouched base factor:
/// `(N1 x N2) x| H` rebuilt as `N1 x (N2 x| H)`.
#[derive(Debug, Clone)]
pub struct SplitOff {
    pub rewrite: RewriteResult,
    pub inner: SemidirectGroup,
    /// The rebuilt direct product `N1 x (N2 x| H)`.
    pub product: GroupRef,
}

/// Result of peeling one direct factor off the extending group:
/// `N x| (H1 x H2)` rebuilt as `(N x| H1) x| H2`.
#[derive(Debug, Clone)]
pub struct ShiftedExt {
    pub rewrite: RewriteResult,
    /// The new base group `N x| H1`.
    pub inner: SemidirectGroup,
    pub outer: SemidirectGroup,
}

/// Which extending-group factor to keep attached to the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhichFactor {
    First,
    Second,
}

fn base_factors(sdp: &SemidirectGroup) -> Result<(GroupRef, GroupRef)> {
    match sdp.base().provenance() {
        Provenance::Direct { left, right } => Ok((Arc::clone(left), Arc::clone(right))),
        Provenance::Atomic => Err(Error::BaseNotAProduct),
    }
}

fn ext_factors(sdp: &SemidirectGroup) -> Result<(GroupRef, GroupRef)> {
    match sdp.ext().provenance() {
        Provenance::Direct { left, right } => Ok((Arc::clone(left), Arc::clone(right))),
        Provenance::Atomic => Err(Error::ExtNotAProduct),
    }
}

/// One image table per extending-group element.
type ActionTables = Vec<Vec<u32>>;

/// Per-element diagonal blocks of the twist with respect to the base
/// factorization: `phi(h)(g1, g2) = (blocks1[h](g1), blocks2[h](g2))`.
/// Fails with [`Error::NotDiagonal`] when the twist mixes the factors.
fn diagonal_blocks(
    sdp: &SemidirectGroup,
    n1: &GroupRef,
    n2: &GroupRef,
) -> Result<(ActionTables, ActionTables)> {
    let (o1, o2) = (n1.order() as u32, n2.order() as u32);
    let pair = |g1: u32, g2: u32| g1 * o2 + g2;
    let twist = sdp.twist();
    let mut blocks1 = Vec::with_capacity(sdp.ext().order());
    let mut blocks2 = Vec::with_capacity(sdp.ext().order());
    for h in 0..sdp.ext().order() as u32 {
        let action = twist.action_images(h);
        let t1: Vec<u32> = (0..o1)
            .map(|g1| action[pair(g1, n2.identity()) as usize] / o2)
            .collect();
        let t2: Vec<u32> = (0..o2)
            .map(|g2| action[pair(n1.identity(), g2) as usize] % o2)
            .collect();
        for g1 in 0..o1 {
            for g2 in 0..o2 {
                if action[pair(g1, g2) as usize] != pair(t1[g1 as usize], t2[g2 as usize]) {
                    return Err(Error::NotDiagonal);
                }
            }
        }
        blocks1.push(t1);
        blocks2.push(t2);
    }
    Ok((blocks1, blocks2))
}

/// Builds the identity-on-indices witness and verifies it is an
/// isomorphism, which amounts to checking the two tables agree everywhere.
fn identity_witness(original: &GroupRef, rebuilt: &GroupRef) -> Result<Homomorphism> {
    let images: Vec<u32> = (0..original.order() as u32).collect();
    let witness = Homomorphism::new(Arc::clone(original), Arc::clone(rebuilt), images)?;
    debug_assert!(witness.is_bijective());
    Ok(witness)
}

/// Rewrites a diagonal semidirect product `(N1 x N2) x| H` as the iterated
/// product `N1 x| (N2 x| H)`, where the inner product carries the second
/// block of the twist and the induced outer twist `(n2, h) -> phi11(h)`
/// forgets the new coordinate. The witness `((n1,n2),h) -> (n1,(n2,h))` is
/// the identity on indices in the row-major layout and is verified in full.
pub fn shift_base_factor(sdp: &SemidirectGroup) -> Result<ShiftedBase> {
    shift_base_factor_limited(sdp, DEFAULT_ENUM_LIMIT)
}

pub fn shift_base_factor_limited(sdp: &SemidirectGroup, limit: usize) -> Result<ShiftedBase> {
    let (n1, n2) = base_factors(sdp)?;
    let (blocks1, blocks2) = diagonal_blocks(sdp, &n1, &n2)?;
    let inner_twist = TwistingHom::new(Arc::clone(&n2), Arc::clone(sdp.ext()), blocks2)
        .map_err(|e| Error::InvalidTwist(format!("second diagonal block: {e}")))?;
    let inner = semidirect_limited(&inner_twist, limit)?;
    // The induced twist on N1: (n2, h) acts as phi11(h).
    let h_ord = sdp.ext().order();
    let mut outer_action = Vec::with_capacity(inner.group().order());
    for inner_elem in 0..inner.group().order() {
        let h = inner_elem % h_ord;
        outer_action.push(blocks1[h].clone());
    }
    let outer_twist = TwistingHom::new(Arc::clone(&n1), Arc::clone(inner.group()), outer_action)
        .map_err(|e| Error::InvalidTwist(format!("induced twist on the first factor: {e}")))?;
    let derived_kernel = outer_twist.kernel();
    let outer = semidirect_limited(&outer_twist, limit)?;
    let witness = identity_witness(sdp.group(), outer.group())?;
    Ok(ShiftedBase {
        rewrite: RewriteResult {
            original: Arc::clone(sdp.group()),
            rebuilt: Arc::clone(outer.group()),
            witness,
            derived_kernel: Some(derived_kernel),
        },
        inner,
        outer,
    })
}

/// Rewrites `(N1 x N2) x| H` with a twist that never touches `N1` as the
/// direct product `N1 x (N2 x| H)`.
pub fn split_trivial_factor(sdp: &SemidirectGroup) -> Result<SplitOff> {
    split_trivial_factor_limited(sdp, DEFAULT_ENUM_LIMIT)
}

pub fn split_trivial_factor_limited(sdp: &SemidirectGroup, limit: usize) -> Result<SplitOff> {
    let (n1, n2) = base_factors(sdp)?;
    let (blocks1, blocks2) = diagonal_blocks(sdp, &n1, &n2)?;
    for t1 in &blocks1 {
        if t1.iter().enumerate().any(|(g, &img)| g as u32 != img) {
            return Err(Error::FirstFactorTwistNotTrivial);
        }
    }
    let inner_twist = TwistingHom::new(Arc::clone(&n2), Arc::clone(sdp.ext()), blocks2)?;
    let inner = semidirect_limited(&inner_twist, limit)?;
    let product = direct_product_limited(&n1, inner.group(), limit)?;
    let witness = identity_witness(sdp.group(), &product)?;
    Ok(SplitOff {
        rewrite: RewriteResult {
            original: Arc::clone(sdp.group()),
            rebuilt: Arc::clone(&product),
            witness,
            derived_kernel: None,
        },
        inner,
        product,
    })
}

/// Rewrites `N x| (H1 x H2)` as `(N x| H1) x| H2` with
/// `phi1(h1) = phi(h1, e)` and `phi2(h2)(n, h1) = (phi(e, h2)(n), h1)`.
/// `which` selects the factor that stays attached to the base; the other
/// ordering swaps the extending factors first and composes the witnesses.
pub fn shift_ext_factor(sdp: &SemidirectGroup, which: WhichFactor) -> Result<ShiftedExt> {
    shift_ext_factor_limited(sdp, which, DEFAULT_ENUM_LIMIT)
}

pub fn shift_ext_factor_limited(
    sdp: &SemidirectGroup,
    which: WhichFactor,
    limit: usize,
) -> Result<ShiftedExt> {
    if which == WhichFactor::Second {
        let (swapped, swap_witness) = swap_ext_factors_limited(sdp, limit)?;
        let shifted = shift_ext_factor_limited(&swapped, WhichFactor::First, limit)?;
        let witness = swap_witness.then(&shifted.rewrite.witness)?;
        return Ok(ShiftedExt {
            rewrite: RewriteResult {
                original: Arc::clone(sdp.group()),
                rebuilt: Arc::clone(&shifted.rewrite.rebuilt),
                witness,
                derived_kernel: None,
            },
            inner: shifted.inner,
            outer: shifted.outer,
        });
    }
    let (h1, h2) = ext_factors(sdp)?;
    let (o1, o2) = (h1.order() as u32, h2.order() as u32);
    let n = sdp.base();
    let twist = sdp.twist();
    let pair = |a: u32, b: u32| a * o2 + b;
    // phi1 = phi restricted to H1.
    let action1: Vec<Vec<u32>> = (0..o1)
        .map(|a| twist.action_images(pair(a, h2.identity())).to_vec())
        .collect();
    let twist1 = TwistingHom::new(Arc::clone(n), Arc::clone(&h1), action1)?;
    let inner = semidirect_limited(&twist1, limit)?;
    // phi2(h2) acts on N x| H1 by twisting the base coordinate only.
    let mut action2 = Vec::with_capacity(o2 as usize);
    for b in 0..o2 {
        let base_images = twist.action_images(pair(h1.identity(), b));
        let mut images = Vec::with_capacity(inner.group().order());
        for elem in 0..inner.group().order() as u32 {
            let (elem_n, elem_h1) = (elem / o1, elem % o1);
            images.push(base_images[elem_n as usize] * o1 + elem_h1);
        }
        action2.push(images);
    }
    let twist2 = TwistingHom::new(Arc::clone(inner.group()), Arc::clone(&h2), action2)?;
    let outer = semidirect_limited(&twist2, limit)?;
    let witness = identity_witness(sdp.group(), outer.group())?;
    Ok(ShiftedExt {
        rewrite: RewriteResult {
            original: Arc::clone(sdp.group()),
            rebuilt: Arc::clone(outer.group()),
            witness,
            derived_kernel: None,
        },
        inner,
        outer,
    })
}

/// Rebuilds the product over the swapped base factorization `N2 x N1`,
/// returning it with the verified coordinate-swap witness. Works for any
/// twist: each automorphism is conjugated by the swap.
pub fn swap_base_factors(sdp: &SemidirectGroup) -> Result<(SemidirectGroup, Homomorphism)> {
    swap_base_factors_limited(sdp, DEFAULT_ENUM_LIMIT)
}

pub fn swap_base_factors_limited(
    sdp: &SemidirectGroup,
    limit: usize,
) -> Result<(SemidirectGroup, Homomorphism)> {
    let (n1, n2) = base_factors(sdp)?;
    let (o1, o2) = (n1.order() as u32, n2.order() as u32);
    let swapped_base = direct_product_limited(&n2, &n1, limit)?;
    let old_pair = |g1: u32, g2: u32| g1 * o2 + g2;
    let new_pair = |g2: u32, g1: u32| g2 * o1 + g1;
    let mut action = Vec::with_capacity(sdp.ext().order());
    for h in 0..sdp.ext().order() as u32 {
        let old = sdp.twist().action_images(h);
        let mut images = vec![0u32; swapped_base.order()];
        for g1 in 0..o1 {
            for g2 in 0..o2 {
                let img = old[old_pair(g1, g2) as usize];
                images[new_pair(g2, g1) as usize] = new_pair(img % o2, img / o2);
            }
        }
        action.push(images);
    }
    let twist = TwistingHom::new(Arc::clone(&swapped_base), Arc::clone(sdp.ext()), action)?;
    let swapped = semidirect_limited(&twist, limit)?;
    let h_ord = sdp.ext().order() as u32;
    let mut witness_images = vec![0u32; sdp.group().order()];
    for g1 in 0..o1 {
        for g2 in 0..o2 {
            for h in 0..h_ord {
                witness_images[(old_pair(g1, g2) * h_ord + h) as usize] =
                    new_pair(g2, g1) * h_ord + h;
            }
        }
    }
    let witness = Homomorphism::new(
        Arc::clone(sdp.group()),
        Arc::clone(swapped.group()),
        witness_images,
    )?;
    Ok((swapped, witness))
}

/// Rebuilds the product over the swapped extending factorization
/// `H2 x H1`, with the verified witness `(n,(h1,h2)) -> (n,(h2,h1))`.
pub fn swap_ext_factors(sdp: &SemidirectGroup) -> Result<(SemidirectGroup, Homomorphism)> {
    swap_ext_factors_limited(sdp, DEFAULT_ENUM_LIMIT)
}

pub fn swap_ext_factors_limited(
    sdp: &SemidirectGroup,
    limit: usize,
) -> Result<(SemidirectGroup, Homomorphism)> {
    let (h1, h2) = ext_factors(sdp)?;
    let (o1, o2) = (h1.order() as u32, h2.order() as u32);
    let swapped_ext = direct_product_limited(&h2, &h1, limit)?;
    let old_pair = |a: u32, b: u32| a * o2 + b;
    let new_pair = |b: u32, a: u32| b * o1 + a;
    let mut action = Vec::with_capacity(swapped_ext.order());
    for new_h in 0..swapped_ext.order() as u32 {
        let (b, a) = (new_h / o1, new_h % o1);
        action.push(sdp.twist().action_images(old_pair(a, b)).to_vec());
    }
    let twist = TwistingHom::new(Arc::clone(sdp.base()), Arc::clone(&swapped_ext), action)?;
    let swapped = semidirect_limited(&twist, limit)?;
    let n_ord = sdp.base().order() as u32;
    let ext_ord = o1 * o2;
    let mut witness_images = vec![0u32; sdp.group().order()];
    for n in 0..n_ord {
        for a in 0..o1 {
            for b in 0..o2 {
                witness_images[(n * ext_ord + old_pair(a, b)) as usize] =
                    n * ext_ord + new_pair(b, a);
            }
        }
    }
    let witness = Homomorphism::new(
        Arc::clone(sdp.group()),
        Arc::clone(swapped.group()),
        witness_images,
    )?;
    Ok((swapped, witness))
}

/// The invariant-factor data of a generalized dihedral group `D(A)`:
/// `A` is the direct sum of cyclic groups of the given orders and the
/// twist inverts every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedDihedralSpec {
    summand_orders: Vec<usize>,
}

impl GeneralizedDihedralSpec {
    /// Validates that every summand has order at least 2. Ascending order
    /// is the conventional input form but any order is accepted; splits
    /// respect the given order.
    pub fn new(summand_orders: Vec<usize>) -> Result<Self> {
        if summand_orders.is_empty() {
            return Err(Error::InvalidArgument(
                "generalized dihedral needs at least one summand".into(),
            ));
        }
        for &m in &summand_orders {
            if m < 2 {
                return Err(Error::BadSummandOrder(m as u32));
            }
        }
        Ok(Self { summand_orders })
    }

    pub fn summand_orders(&self) -> &[usize] {
        &self.summand_orders
    }

    pub fn base_order(&self) -> usize {
        self.summand_orders.iter().product()
    }
}

/// Left-nested direct product of cyclic groups. All bracketings produce
/// the same flat table; only the recorded factor boundary differs.
fn nested_cyclic_product(orders: &[usize], limit: usize) -> Result<GroupRef> {
    let mut acc = FiniteGroup::cyclic_limited(orders[0], limit)?;
    for &m in &orders[1..] {
        let next = FiniteGroup::cyclic_limited(m, limit)?;
        acc = direct_product_limited(&acc, &next, limit)?;
    }
    Ok(acc)
}

fn dihedral_twist_over(base: &GroupRef, limit: usize) -> Result<SemidirectGroup> {
    let z2 = FiniteGroup::cyclic_limited(2, limit)?;
    let inv = Automorphism::inversion(base)?;
    let twist = TwistingHom::from_generator_autos(base, &z2, &[inv])?;
    semidirect_limited(&twist, limit)
}

/// Builds `D(A) = A x| Z2` with the inversion twist. When `A` has
/// exponent at most 2 the inversion is the identity and the result is
/// elementary abelian.
pub fn generalized_dihedral(spec: &GeneralizedDihedralSpec) -> Result<SemidirectGroup> {
    generalized_dihedral_limited(spec, DEFAULT_ENUM_LIMIT)
}

pub fn generalized_dihedral_limited(
    spec: &GeneralizedDihedralSpec,
    limit: usize,
) -> Result<SemidirectGroup> {
    let base = nested_cyclic_product(spec.summand_orders(), limit)?;
    dihedral_twist_over(&base, limit)
}

/// Splits `D(A)` after the `cut`-th summand: `D(A1 + A2) = A1 x| D(A2)`.
/// Realized by rebuilding the base as the two-factor product
/// `A1 x A2` (same flat table) and applying [`shift_base_factor`].
pub fn gendihedral_split(spec: &GeneralizedDihedralSpec, cut: usize) -> Result<ShiftedBase> {
    gendihedral_split_limited(spec, cut, DEFAULT_ENUM_LIMIT)
}

pub fn gendihedral_split_limited(
    spec: &GeneralizedDihedralSpec,
    cut: usize,
    limit: usize,
) -> Result<ShiftedBase> {
    let k = spec.summand_orders().len();
    if cut == 0 || cut >= k {
        return Err(Error::BadCut { cut, max: k });
    }
    let a1 = nested_cyclic_product(&spec.summand_orders()[..cut], limit)?;
    let a2 = nested_cyclic_product(&spec.summand_orders()[cut..], limit)?;
    let base = direct_product_limited(&a1, &a2, limit)?;
    let sdp = dihedral_twist_over(&base, limit)?;
    shift_base_factor_limited(&sdp, limit)
}
