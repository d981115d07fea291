//! Group specification files: a small versioned JSON dialect that can
//! express every group the toolkit constructs, and its materialization
//! into Cayley-table groups.

use std::fmt;
use std::sync::Arc;

use semikit_core::rewrite::{generalized_dihedral_limited, GeneralizedDihedralSpec};
use semikit_core::{
    diagonal_automorphism, dihedral, hom_from_generator_images, products, Automorphism,
    FiniteGroup, GroupRef, Permutation, Provenance, TwistingHom,
};
use serde::{Deserialize, Serialize};

/// Errors with the documented exit-code mapping: parse errors exit 2,
/// validation errors 3, limit overruns 4.
#[derive(Debug)]
pub enum CliError {
    Parse {
        message: String,
        line: usize,
        column: usize,
    },
    Validation(String),
    Limit(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse {
                message,
                line,
                column,
            } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            CliError::Validation(msg) => write!(f, "validation error: {msg}"),
            CliError::Limit(msg) => write!(f, "limit exceeded: {msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Validation(_) => 3,
            CliError::Limit(_) => 4,
        }
    }
}

impl From<semikit_core::Error> for CliError {
    fn from(e: semikit_core::Error) -> Self {
        match e {
            semikit_core::Error::LimitExceeded { .. } => CliError::Limit(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Top-level spec file: `{"specver": 1, "group": {...}}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct SpecFile {
    pub specver: u32,
    pub group: GroupSpec,
}

/// The group-description tree.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    Dicyclic {
        k: usize,
    },
    Symmetric {
        degree: usize,
    },
    Gendihedral {
        orders: Vec<usize>,
    },
    Direct {
        factors: Vec<GroupSpec>,
    },
    Semidirect {
        base: Box<GroupSpec>,
        ext: Box<GroupSpec>,
        twist: Vec<TwistEntry>,
    },
    Perm {
        degree: usize,
        generators: Vec<String>,
    },
}

/// One automorphism of the base group, given per extending-group
/// generator. `multipliers` applies one multiplier per cyclic leaf of the
/// base (in order); `images` lists the image element index of each base
/// generator; `"inversion"` inverts every element (abelian bases only).
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TwistEntry {
    Name(String),
    Multipliers { multipliers: Vec<i64> },
    Images { images: Vec<u32> },
}

pub fn parse_spec(text: &str) -> CliResult<SpecFile> {
    let spec: SpecFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    })?;
    if spec.specver != 1 {
        return Err(CliError::Validation(format!(
            "unsupported specver {}",
            spec.specver
        )));
    }
    Ok(spec)
}

pub fn load_spec(path: &std::path::Path) -> CliResult<SpecFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text)
}

/// Materializes the spec tree into a group, enforcing the limit at every
/// constructor.
pub fn build_group(spec: &GroupSpec, limit: usize) -> CliResult<GroupRef> {
    match spec {
        GroupSpec::Cyclic { n } => Ok(FiniteGroup::cyclic_limited(*n, limit)?),
        GroupSpec::Dihedral { n } => Ok(dihedral::dihedral_group_limited(*n, limit)?),
        GroupSpec::Dicyclic { k } => Ok(FiniteGroup::dicyclic_limited(*k, limit)?),
        GroupSpec::Symmetric { degree } => Ok(FiniteGroup::symmetric_limited(*degree, limit)?),
        GroupSpec::Gendihedral { orders } => {
            let spec = GeneralizedDihedralSpec::new(orders.clone())?;
            Ok(Arc::clone(
                generalized_dihedral_limited(&spec, limit)?.group(),
            ))
        }
        GroupSpec::Direct { factors } => {
            if factors.len() < 2 {
                return Err(CliError::Validation(
                    "direct product needs at least two factors".into(),
                ));
            }
            let mut acc = build_group(&factors[0], limit)?;
            for f in &factors[1..] {
                let next = build_group(f, limit)?;
                acc = products::direct_product_limited(&acc, &next, limit)?;
            }
            Ok(acc)
        }
        GroupSpec::Semidirect { base, ext, twist } => {
            let base = build_group(base, limit)?;
            let ext = build_group(ext, limit)?;
            if twist.len() != ext.generators().len() {
                return Err(CliError::Validation(format!(
                    "twist must give one automorphism per extending-group generator: expected {}, got {}",
                    ext.generators().len(),
                    twist.len()
                )));
            }
            let autos: Vec<Automorphism> = twist
                .iter()
                .map(|entry| twist_automorphism(&base, entry))
                .collect::<CliResult<_>>()?;
            let twist = TwistingHom::from_generator_autos(&base, &ext, &autos)?;
            Ok(Arc::clone(
                products::semidirect_limited(&twist, limit)?.group(),
            ))
        }
        GroupSpec::Perm { degree, generators } => {
            let perms: Vec<Permutation> = generators
                .iter()
                .map(|text| Ok(Permutation::parse_cycles(*degree, text)?))
                .collect::<CliResult<_>>()?;
            Ok(FiniteGroup::from_permutations_limited(
                *degree, &perms, limit,
            )?)
        }
    }
}

fn twist_automorphism(base: &GroupRef, entry: &TwistEntry) -> CliResult<Automorphism> {
    match entry {
        TwistEntry::Name(name) if name == "inversion" => Ok(Automorphism::inversion(base)?),
        TwistEntry::Name(name) if name == "identity" => Ok(Automorphism::identity(base)),
        TwistEntry::Name(name) => Err(CliError::Validation(format!(
            "unknown twist name {name:?}; expected \"inversion\" or \"identity\""
        ))),
        TwistEntry::Multipliers { multipliers } => {
            let (auto, consumed) = multiplier_automorphism(base, multipliers)?;
            if consumed != multipliers.len() {
                return Err(CliError::Validation(format!(
                    "twist lists {} multipliers but the base has {consumed} cyclic factors",
                    multipliers.len()
                )));
            }
            Ok(auto)
        }
        TwistEntry::Images { images } => {
            let hom = hom_from_generator_images(base, base, images)?;
            Ok(Automorphism::new(hom)?)
        }
    }
}

/// One multiplier per direct-factor leaf of the base, assembled into a
/// diagonal automorphism along the recorded product structure.
fn multiplier_automorphism(group: &GroupRef, mults: &[i64]) -> CliResult<(Automorphism, usize)> {
    match group.provenance() {
        Provenance::Atomic => {
            let &k = mults.first().ok_or_else(|| {
                CliError::Validation("not enough multipliers for the base factors".into())
            })?;
            let auto = products::cyclic_multiplier_auto(group, k).map_err(|e| {
                CliError::Validation(format!(
                    "multiplier {k} does not define an automorphism: {e}"
                ))
            })?;
            Ok((auto, 1))
        }
        Provenance::Direct { left, right } => {
            let (left, right) = (Arc::clone(left), Arc::clone(right));
            let (u, used_left) = multiplier_automorphism(&left, mults)?;
            let (v, used_right) = multiplier_automorphism(&right, &mults[used_left..])?;
            let auto = diagonal_automorphism(&u, &v, group)?;
            Ok((auto, used_left + used_right))
        }
    }
}
