//! Command line front end: builds the complexes, runs the verification
//! checks, computes homology and quotients, searches for Tverberg
//! partitions, and exports boundary matrices.
//!
//! Exit codes are the scripting contract: 0 for pass/found, 1 for a
//! verification failure or an unsuccessful search, 2 for usage, size-guard,
//! file, or parse errors. Standard output is JSON with sorted keys unless
//! `--format text` is given, and identical invocations produce byte
//! identical output.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use prismlab::complex::ComplexSpec;
use prismlab::homology::{
    boundary_matrix, euler_characteristic, homology, homology_unreduced, HomologyGroup,
};
use prismlab::orientation::{
    verify_generic_prism_complex, verify_o_orientability, GenericPrismComplex,
    OrientationSearchOutcome,
};
use prismlab::symmetry::{orbit_report, quotient_f_vector, verify_free_action};
use prismlab::tverberg::{tverberg_guarantee_applies, tverberg_search, PointConfig};

const DEFAULT_MAX_CELLS: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "prismlab",
    version,
    about = "Prism complexes of disjoint simplex faces: build, verify, compute"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Cell census of Y(N, r); optionally list the cells of one dimension
    Build {
        n: usize,
        r: usize,
        /// Also list the cells of this dimension
        #[arg(long)]
        dim: Option<usize>,
        /// Write the report to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the structural checks on Y(N, r)
    Verify { n: usize, r: usize },
    /// Integral homology of Y(N, r)
    Homology {
        n: usize,
        r: usize,
        /// Report unreduced homology
        #[arg(long)]
        unreduced: bool,
    },
    /// Orbit census of the slot-permutation action and the quotient counts
    Quotient {
        n: usize,
        r: usize,
        /// Include the orbit report for this dimension
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Search a point file for a partition with intersecting hulls
    Tverberg {
        /// Ambient dimension of the points
        #[arg(long)]
        dim: usize,
        /// Number of partition blocks
        #[arg(long)]
        parts: usize,
        /// Point file: one point per line, integers or p/q
        #[arg(long)]
        points: PathBuf,
    },
    /// Export a boundary matrix in sparse text form
    ExportMatrix {
        n: usize,
        r: usize,
        k: usize,
        /// Destination file for the matrix text
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide coherent orientability of a generic prism complex from JSON
    VerifyGeneric {
        /// Complex description file
        #[arg(long)]
        file: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Build { n, r, dim, out } => cmd_build(n, r, dim, out, cli.format),
        Command::Verify { n, r } => cmd_verify(n, r, cli.format),
        Command::Homology { n, r, unreduced } => cmd_homology(n, r, unreduced, cli.format),
        Command::Quotient { n, r, dim } => cmd_quotient(n, r, dim, cli.format),
        Command::Tverberg { dim, parts, points } => cmd_tverberg(dim, parts, points, cli.format),
        Command::ExportMatrix { n, r, k, out } => cmd_export_matrix(n, r, k, out, cli.format),
        Command::VerifyGeneric { file } => cmd_verify_generic(file, cli.format),
    }
}

/// Builds the complex parameters and enforces the cell-count guard.
fn guarded_spec(n: usize, r: usize) -> Result<ComplexSpec, String> {
    let spec = ComplexSpec::new(n, r).map_err(|e| e.to_string())?;
    let cap = max_cells()?;
    let largest = spec.max_cell_count();
    if largest > BigUint::from(cap) {
        return Err(format!(
            "Y({n},{r}) has up to {largest} cells in one dimension, over the cap {cap}; \
             raise PRISMLAB_MAX_CELLS to proceed"
        ));
    }
    Ok(spec)
}

fn max_cells() -> Result<u64, String> {
    match std::env::var("PRISMLAB_MAX_CELLS") {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| format!("PRISMLAB_MAX_CELLS must be an integer, got {text:?}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_CELLS),
        Err(e) => Err(e.to_string()),
    }
}

/// Prints a value with sorted keys, or writes it to a file.
fn emit(value: &Value, text: String, format: Format, out: Option<PathBuf>) -> Result<(), String> {
    let rendered = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Text => text,
    };
    match out {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn cmd_build(
    n: usize,
    r: usize,
    dim: Option<usize>,
    out: Option<PathBuf>,
    format: Format,
) -> Result<ExitCode, String> {
    let spec = guarded_spec(n, r)?;
    let f = spec.f_vector();
    let mut value = json!({
        "complex": {"n": n, "r": r},
        "dimension": spec.top_dimension(),
        "f_vector": f,
    });
    let mut text = format!(
        "{spec}: dimension {}\nf-vector: {f}\n",
        spec.top_dimension()
    );
    if let Some(k) = dim {
        let cells = spec.cells(k).map_err(|e| e.to_string())?;
        writeln!(text, "cells of dimension {k}:").unwrap();
        for c in &cells {
            writeln!(text, "  {c}").unwrap();
        }
        value["cells"] = serde_json::to_value(&cells).map_err(|e| e.to_string())?;
        value["cells_dim"] = json!(k);
    }
    emit(&value, text, format, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(n: usize, r: usize, format: Format) -> Result<ExitCode, String> {
    let spec = guarded_spec(n, r)?;
    if n < r {
        return Err(format!("verification requires N >= r, got N={n}, r={r}"));
    }

    // boundary of boundary vanishes on every cell
    let mut cells_checked = 0u64;
    let mut boundary_ok = true;
    for k in 0..=spec.top_dimension() {
        for cell in spec.cells(k).map_err(|e| e.to_string())? {
            cells_checked += 1;
            if !cell.boundary().boundary().is_zero() {
                boundary_ok = false;
            }
        }
    }

    let report = verify_o_orientability(&spec).map_err(|e| e.to_string())?;
    let parents_ok = report.parent_counts_all(r);
    let coherence_ok = report.pass();

    let action = verify_free_action(&spec);

    let pass = boundary_ok && parents_ok && coherence_ok && action.pass();
    let value = json!({
        "complex": {"n": n, "r": r},
        "checks": {
            "boundary_squared_zero": {"pass": boundary_ok, "cells_checked": cells_checked},
            "codim1_parent_count": {"pass": parents_ok, "expected": r, "codim1_cells": report.codim1_count()},
            "orientation_coherence": {"pass": coherence_ok, "violations": report.violations().len()},
            "free_action": {"pass": action.pass(), "cells_checked": action.cells_checked()},
        },
        "pass": pass,
    });
    let text = format!(
        "{spec} verification\n  boundary^2 = 0: {} ({} cells)\n  codim-1 parents = {}: {}\n  orientation coherence: {}\n  free action: {}\n  overall: {}\n",
        verdict(boundary_ok),
        cells_checked,
        r,
        verdict(parents_ok),
        verdict(coherence_ok),
        verdict(action.pass()),
        verdict(pass),
    );
    emit(&value, text, format, None)?;
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn group_value(g: &HomologyGroup) -> Value {
    let torsion: Vec<Value> = g
        .torsion
        .iter()
        .map(|d| match u64::try_from(d) {
            Ok(v) => json!(v),
            Err(_) => json!(d.to_string()),
        })
        .collect();
    json!({"dim": g.dimension, "free_rank": g.free_rank, "torsion": torsion})
}

fn cmd_homology(n: usize, r: usize, unreduced: bool, format: Format) -> Result<ExitCode, String> {
    let spec = guarded_spec(n, r)?;
    let groups = if unreduced {
        homology_unreduced(&spec)
    } else {
        homology(&spec)
    };
    let chi = euler_characteristic(&spec);
    let value = json!({
        "complex": {"n": n, "r": r},
        "euler_characteristic": chi,
        "groups": groups.iter().map(group_value).collect::<Vec<_>>(),
        "reduced": !unreduced,
    });
    let mut text = format!(
        "{spec} {} homology, Euler characteristic {chi}\n",
        if unreduced { "unreduced" } else { "reduced" }
    );
    for g in &groups {
        let torsion = if g.torsion.is_empty() {
            String::from("-")
        } else {
            g.torsion
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(
            text,
            "  H_{}: rank {} torsion {}",
            g.dimension, g.free_rank, torsion
        )
        .unwrap();
    }
    emit(&value, text, format, None)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_quotient(
    n: usize,
    r: usize,
    dim: Option<usize>,
    format: Format,
) -> Result<ExitCode, String> {
    let spec = guarded_spec(n, r)?;
    let f = spec.f_vector();
    let q = quotient_f_vector(&spec).map_err(|e| e.to_string())?;
    let order: u64 = (1..=r as u64).product();
    let mut value = json!({
        "complex": {"n": n, "r": r},
        "f_vector": f,
        "group_order": order,
        "quotient_f_vector": q,
    });
    let mut text =
        format!("{spec}: f-vector {f}\nquotient by the {order} slot permutations: {q}\n");
    if let Some(k) = dim {
        let report = orbit_report(&spec, k).map_err(|e| e.to_string())?;
        writeln!(text, "orbits in dimension {k}:").unwrap();
        for orbit in &report.orbits {
            writeln!(text, "  {} x{}", orbit.rep, orbit.size).unwrap();
        }
        value["orbits"] = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    }
    emit(&value, text, format, None)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_tverberg(
    dim: usize,
    parts: usize,
    points: PathBuf,
    format: Format,
) -> Result<ExitCode, String> {
    if parts < 2 {
        return Err("need at least two parts".into());
    }
    let text = std::fs::read_to_string(&points)
        .map_err(|e| format!("cannot read {}: {e}", points.display()))?;
    let config = PointConfig::parse(&text).map_err(|e| e.to_string())?;
    if config.dim() != dim {
        return Err(format!(
            "points have dimension {}, --dim says {dim}",
            config.dim()
        ));
    }
    let guarantee = tverberg_guarantee_applies(&config, parts);
    let found = tverberg_search(&config, parts).map_err(|e| e.to_string())?;
    match found {
        Some(cert) => {
            cert.verify(&config)
                .map_err(|e| format!("certificate failed to verify: {e}"))?;
            let value = json!({
                "certificate": cert,
                "found": true,
                "guarantee": guarantee,
            });
            let text = format!("{cert}\n");
            emit(&value, text, format, None)?;
            Ok(ExitCode::SUCCESS)
        }
        None => {
            // in the guarantee regime an exhausted search is an internal
            // failure, flagged for scripted callers
            let value = json!({
                "found": false,
                "guarantee": guarantee,
                "theorem_violation": guarantee,
            });
            let text = if guarantee {
                "no partition found although one is guaranteed; this is a bug\n".to_string()
            } else {
                "no partition with intersecting hulls\n".to_string()
            };
            emit(&value, text, format, None)?;
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_export_matrix(
    n: usize,
    r: usize,
    k: usize,
    out: PathBuf,
    format: Format,
) -> Result<ExitCode, String> {
    let spec = guarded_spec(n, r)?;
    let matrix = boundary_matrix(&spec, k).map_err(|e| e.to_string())?;
    std::fs::write(&out, matrix.export_text())
        .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    let value = json!({
        "cols": matrix.cols(),
        "k": k,
        "nnz": matrix.nnz(),
        "out": out.display().to_string(),
        "rows": matrix.rows(),
    });
    let text = format!(
        "wrote boundary matrix {k} of {spec}: {} x {} with {} entries to {}\n",
        matrix.rows(),
        matrix.cols(),
        matrix.nnz(),
        out.display()
    );
    emit(&value, text, format, None)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_generic(file: PathBuf, format: Format) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(&file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let complex = GenericPrismComplex::from_json(&text).map_err(|e| e.to_string())?;
    let outcome = verify_generic_prism_complex(&complex).map_err(|e| e.to_string())?;
    match outcome {
        OrientationSearchOutcome::Satisfiable(witness) => {
            let signs: serde_json::Map<String, Value> = witness
                .iter()
                .map(|(id, s)| (id.clone(), json!(s.coef())))
                .collect();
            let value = json!({"satisfiable": true, "witness": signs});
            let mut text = String::from("satisfiable\n");
            for (id, s) in &witness {
                writeln!(text, "  {id}: {s}").unwrap();
            }
            emit(&value, text, format, None)?;
            Ok(ExitCode::SUCCESS)
        }
        OrientationSearchOutcome::Unsatisfiable => {
            let value = json!({"satisfiable": false});
            emit(&value, String::from("unsatisfiable\n"), format, None)?;
            Ok(ExitCode::from(1))
        }
    }
}
