//! Finite-group computation toolkit.
//!
//! Groups are materialized as dense Cayley tables over element indices
//! `0..order`. On top of that sit subgroup-lattice enumeration, homomorphism
//! and isomorphism machinery, direct/semidirect product constructors with
//! factor bookkeeping, decomposition rewrites, an exhaustive internal
//! semidirect-decomposition enumerator, the closed-form dihedral catalog,
//! and minimal faithful permutation degrees with explicit witnesses.
//!
//! Everything is deterministic: catalogs and witnesses come out in a fixed
//! order regardless of platform or thread count.

pub mod decompose;
pub mod dihedral;
pub mod group;
pub mod mindeg;
pub mod morphism;
pub mod perm;
pub mod products;
pub mod rewrite;
pub mod subgroup;

pub use decompose::{
    external_catalog, internal_decompositions, label, CatalogEntry, DecompositionRecord, TypeLabel,
};
pub use group::{FiniteGroup, Provenance};
pub use mindeg::{
    mu_abelian, mu_bounds_check, mu_dihedral, mu_oracle, MuBounds, MuResult,
    PrimePowerDecomposition,
};
pub use morphism::{
    find_isomorphism, fingerprint, hom_from_generator_images, kernel, Automorphism, Homomorphism,
    IsoFingerprint,
};
pub use perm::Permutation;
pub use products::{
    block_decompose, diagonal_automorphism, direct_product, is_diagonal, semidirect,
    BlockDecomposition, SemidirectGroup, TwistingHom,
};
pub use rewrite::{
    gendihedral_split, generalized_dihedral, shift_base_factor, shift_ext_factor,
    split_trivial_factor, swap_base_factors, GeneralizedDihedralSpec, RewriteResult, WhichFactor,
};
pub use subgroup::Subgroup;

use std::sync::Arc;

/// Default cap on the order of any group that gets fully materialized or
/// exhaustively enumerated. Operations that would exceed it fail loudly.
pub const DEFAULT_ENUM_LIMIT: usize = 2000;

/// Default cap for the exact minimal-degree oracle, which sweeps the full
/// subgroup lattice.
pub const DEFAULT_ORACLE_LIMIT: usize = 200;

/// Hard ceiling on materialized Cayley tables, regardless of any raised
/// enumeration limit: beyond this the dense representation stops being
/// sensible (the table is order^2 entries).
pub const MAX_TABLE_ORDER: usize = 4096;

/// Shared handle to an immutable group. All higher-level structures
/// (subgroups, homomorphisms, products) hold one of these.
pub type GroupRef = Arc<FiniteGroup>;

/// Errors surfaced by constructors and enumeration operations.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("group order {order} exceeds the enumeration limit {limit}")]
    LimitExceeded { order: usize, limit: usize },
    #[error("images of {0:?} are not a permutation of 1..={1}")]
    InvalidPermutation(Vec<usize>, usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cannot parse cycle notation {0:?}: {1}")]
    BadCycleNotation(String, String),
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("expected {expected} generator images, got {got}")]
    GeneratorCountMismatch { expected: usize, got: usize },
    #[error("not a homomorphism: images disagree on the product of elements {g} and {h}")]
    NotAHomomorphism { g: usize, h: usize },
    #[error("mapping is not bijective")]
    NotBijective,
    #[error("homomorphism domain/codomain does not match the expected group")]
    GroupMismatch,
    #[error("invalid twisting homomorphism: {0}")]
    InvalidTwist(String),
    #[error("group was not built as a direct product")]
    NotADirectProduct,
    #[error("base group of the semidirect product was not built as a direct product")]
    BaseNotAProduct,
    #[error("extending group of the semidirect product was not built as a direct product")]
    ExtNotAProduct,
    #[error("twist is not diagonal with respect to the recorded base factorization")]
    NotDiagonal,
    #[error("twist acts nontrivially on the first base factor")]
    FirstFactorTwistNotTrivial,
    #[error("summand cut {cut} out of range 1..{max}")]
    BadCut { cut: usize, max: usize },
    #[error("generalized dihedral summand order {0} is below 2")]
    BadSummandOrder(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
