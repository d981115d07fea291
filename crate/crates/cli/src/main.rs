//! `semikit`: build finite groups from spec files, enumerate their
//! semidirect decompositions, compute minimal faithful permutation
//! degrees, test isomorphism, and run verification sweeps.
//!
//! Exit codes: 0 success, 1 failed verification check, 2 parse error,
//! 3 validation error, 4 enumeration limit exceeded.

mod spec;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use semikit_core::morphism::{find_isomorphism_limited, fingerprint, IsoFingerprint};
use semikit_core::{
    decompose, mindeg, GroupRef, Permutation, DEFAULT_ENUM_LIMIT, DEFAULT_ORACLE_LIMIT,
};

use spec::{build_group, load_spec, CliError, CliResult, GroupSpec};

#[derive(Parser)]
#[command(
    name = "semikit",
    version,
    about = "Finite-group semidirect decomposition toolkit"
)]
struct Cli {
    /// Override the enumeration limit (also settable via SEMIKIT_LIMIT).
    #[arg(long, global = true)]
    limit: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group from a spec file and print a summary.
    Build { spec: PathBuf },
    /// Enumerate internal decompositions or the external catalog.
    Decompose {
        spec: PathBuf,
        /// List every internal decomposition record.
        #[arg(long, conflicts_with = "external")]
        internal: bool,
        /// List the deduplicated external catalog (default).
        #[arg(long)]
        external: bool,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Minimal faithful permutation degree.
    Mu {
        spec: PathBuf,
        /// Print the witness permutations in 1-based cycle notation.
        #[arg(long)]
        witness: bool,
    },
    /// Search for an isomorphism between two groups.
    Iso { a: PathBuf, b: PathBuf },
    /// Run a verification suite: props, dihedral, or mu.
    Verify {
        suite: String,
        /// Upper end of the sweep for the dihedral and mu suites.
        #[arg(long)]
        max_n: Option<usize>,
    },
}

fn main() -> ExitCode {
    // Die quietly when the read end of a pipe closes, like other unix tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("semikit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn limits(cli: &Cli) -> CliResult<(usize, usize)> {
    let from_env = match std::env::var("SEMIKIT_LIMIT") {
        Ok(text) => Some(text.parse::<usize>().map_err(|_| {
            CliError::Validation(format!("SEMIKIT_LIMIT is not a number: {text:?}"))
        })?),
        Err(_) => None,
    };
    let explicit = cli.limit.or(from_env);
    let enum_limit = explicit.unwrap_or(DEFAULT_ENUM_LIMIT);
    let oracle_limit = explicit.unwrap_or(DEFAULT_ORACLE_LIMIT);
    Ok((enum_limit, oracle_limit))
}

fn dispatch(cli: &Cli) -> CliResult<ExitCode> {
    let (enum_limit, oracle_limit) = limits(cli)?;
    match &cli.command {
        Command::Build { spec } => {
            let group = build_group(&load_spec(spec)?.group, enum_limit)?;
            cmd_build(&group);
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose {
            spec,
            internal,
            external,
            json,
        } => {
            let group = build_group(&load_spec(spec)?.group, enum_limit)?;
            if *internal && !*external {
                cmd_decompose_internal(&group, enum_limit, *json)?;
            } else {
                cmd_decompose_external(&group, enum_limit, *json)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mu { spec, witness } => {
            let parsed = load_spec(spec)?;
            cmd_mu(&parsed.group, enum_limit, oracle_limit, *witness)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Iso { a, b } => {
            let ga = build_group(&load_spec(a)?.group, enum_limit)?;
            let gb = build_group(&load_spec(b)?.group, enum_limit)?;
            cmd_iso(&ga, &gb, enum_limit)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, max_n } => {
            let checks = verify::run_suite(suite, *max_n, enum_limit).ok_or_else(|| {
                CliError::Validation(format!(
                    "unknown suite {suite:?}; expected props, dihedral, or mu"
                ))
            })?;
            let mut failed = 0;
            for check in &checks {
                match &check.outcome {
                    Ok(()) => println!("PASS {}", check.name),
                    Err(why) => {
                        failed += 1;
                        println!("FAIL {}: {why}", check.name);
                    }
                }
            }
            println!(
                "{} of {} checks passed",
                checks.len() - failed,
                checks.len()
            );
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn cmd_build(group: &GroupRef) {
    let fp = fingerprint(group);
    println!("order: {}", group.order());
    println!("abelian: {}", fp.abelian);
    println!("fingerprint: {fp}");
    println!("generators:");
    for &g in group.generators() {
        println!(
            "  [{g}] {} (order {})",
            group.label(g),
            group.element_order(g)
        );
    }
}

fn fingerprint_json(fp: &IsoFingerprint) -> Value {
    let orders: serde_json::Map<String, Value> = fp
        .element_order_histogram
        .iter()
        .map(|&(o, c)| (o.to_string(), json!(c)))
        .collect();
    json!({
        "order": fp.order,
        "abelian": fp.abelian,
        "element_orders": orders,
        "center": fp.center_size,
        "derived": fp.derived_subgroup_size,
    })
}

fn subgroup_json(sub: &semikit_core::Subgroup, label: &decompose::TypeLabel) -> Value {
    let group = sub.parent();
    let generators: Vec<String> = sub
        .greedy_generators()
        .iter()
        .map(|&g| group.label(g).to_string())
        .collect();
    json!({ "label": label.to_string(), "generators": generators })
}

fn cmd_decompose_internal(group: &GroupRef, limit: usize, as_json: bool) -> CliResult<()> {
    let records = decompose::internal_decompositions_limited(group, false, limit)?;
    if as_json {
        let body = json!({
            "group": fingerprint_json(&fingerprint(group)),
            "records": records.iter().map(|r| json!({
                "normal": subgroup_json(&r.normal_part, &r.n_label),
                "complement": subgroup_json(&r.complement, &r.h_label),
                "direct": r.is_direct,
            })).collect::<Vec<_>>(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&body).expect("catalog serializes")
        );
        return Ok(());
    }
    println!("group: {}", fingerprint(group));
    if records.is_empty() {
        println!("no nontrivial internal semidirect decompositions");
        let trivial = decompose::internal_decompositions_limited(group, true, limit)?;
        for r in trivial {
            println!(
                "  (trivial) {} x| {}",
                describe_part(&r.normal_part, &r.n_label),
                describe_part(&r.complement, &r.h_label)
            );
        }
        return Ok(());
    }
    println!("records: {}", records.len());
    for r in &records {
        let op = if r.is_direct { "x " } else { "x|" };
        println!(
            "  {} {op} {}",
            describe_part(&r.normal_part, &r.n_label),
            describe_part(&r.complement, &r.h_label)
        );
    }
    Ok(())
}

fn describe_part(sub: &semikit_core::Subgroup, label: &decompose::TypeLabel) -> String {
    let group = sub.parent();
    let gens: Vec<String> = sub
        .greedy_generators()
        .iter()
        .map(|&g| group.label(g).to_string())
        .collect();
    format!("{label}<{}>", gens.join(", "))
}

fn cmd_decompose_external(group: &GroupRef, limit: usize, as_json: bool) -> CliResult<()> {
    let catalog = decompose::external_catalog_limited(group, limit)?;
    if as_json {
        let body = json!({
            "group": fingerprint_json(&fingerprint(group)),
            "catalog": catalog.iter().map(|e| json!({
                "normal": e.normal_label.to_string(),
                "complement": e.complement_label.to_string(),
                "direct": e.direct,
            })).collect::<Vec<_>>(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&body).expect("catalog serializes")
        );
        return Ok(());
    }
    println!("group: {}", fingerprint(group));
    println!("catalog: {} entries", catalog.len());
    for entry in &catalog {
        println!("  {entry}");
    }
    Ok(())
}

/// Witness for a cyclic group of order n: one natural cycle per prime
/// power of the primary decomposition.
fn cyclic_witness(n: usize) -> (usize, Vec<Permutation>) {
    let parts = mindeg::PrimePowerDecomposition::of(n).prime_powers();
    let degree: usize = parts.iter().sum();
    let mut images = vec![0usize; degree];
    let mut offset = 0;
    for &size in &parts {
        for j in 0..size {
            images[offset + j] = offset + (j + 1) % size;
        }
        offset += size;
    }
    (
        degree,
        vec![Permutation::new(images).expect("cycle blocks form a permutation")],
    )
}

fn cmd_mu(
    spec: &GroupSpec,
    enum_limit: usize,
    oracle_limit: usize,
    witness: bool,
) -> CliResult<()> {
    let result = match spec {
        GroupSpec::Dihedral { n } if *n >= 3 => mindeg::mu_dihedral(*n),
        GroupSpec::Cyclic { n } if *n >= 2 => {
            let (degree, gens) = cyclic_witness(*n);
            debug_assert_eq!(degree, mindeg::mu_abelian(&[*n]));
            mindeg::MuResult {
                degree,
                witness_generators: gens,
                method: mindeg::MuMethod::Formula,
            }
        }
        other => {
            let group = build_group(other, enum_limit)?;
            mindeg::mu_oracle_limited(&group, oracle_limit)?
        }
    };
    let method = match result.method {
        mindeg::MuMethod::Formula => "formula",
        mindeg::MuMethod::Oracle => "oracle",
    };
    println!("mu = {} ({method})", result.degree);
    if witness {
        println!("witness:");
        for p in &result.witness_generators {
            println!("  {p}");
        }
    }
    Ok(())
}

fn separating_invariant(a: &IsoFingerprint, b: &IsoFingerprint) -> Option<&'static str> {
    if a.order != b.order {
        Some("group orders differ")
    } else if a.abelian != b.abelian {
        Some("abelian flags differ")
    } else if a.element_order_histogram != b.element_order_histogram {
        Some("element order histograms differ")
    } else if a.center_size != b.center_size {
        Some("center sizes differ")
    } else if a.derived_subgroup_size != b.derived_subgroup_size {
        Some("derived subgroup sizes differ")
    } else {
        None
    }
}

fn cmd_iso(a: &GroupRef, b: &GroupRef, limit: usize) -> CliResult<()> {
    match find_isomorphism_limited(a, b, limit)? {
        Some(witness) => {
            println!("isomorphic: yes");
            println!("witness (generator images):");
            for &g in a.generators() {
                println!("  {} -> {}", a.label(g), b.label(witness.apply(g)));
            }
        }
        None => {
            let why = separating_invariant(&fingerprint(a), &fingerprint(b))
                .unwrap_or("exhaustive backtracking search found no witness");
            println!("non-isomorphic ({why})");
        }
    }
    Ok(())
}
