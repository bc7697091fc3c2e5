//! Command-line front end. Every subcommand reads JSON files, calls one
//! library operation (or a fixed composition of a few) and prints one JSON
//! document on standard output.
//!
//! Exit codes: 0 on success, 2 for malformed input or a validation failure,
//! 1 when a numerical routine fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::blocks::{
    block_diagonal_power, extract_blocks, mirsky_spectrum, nonsingular_structure_check,
    partial_product,
};
use crate::circulant::{
    basic_circulant, c_k_matrix, circulant_from_reference, recognize_circulant, w_matrix,
    WVariant,
};
use crate::digraph::{
    cyclic_index, digraph_of, ensure_h_cyclic, feasible_partitions, find_h_partition,
    to_consecutive, CyclicPartition,
};
use crate::eigen::eigenvalues;
use crate::error::{Error, Result};
use crate::io::{
    chain_from_json, chain_value, matrix_from_json, matrix_value,
    orbits_from_json, partition_from_json, partition_value, real_value, vector_from_json,
    vector_value,
};
use crate::jordan::{
    chain_check, reconstruct_from_chains, rotate_left_chain, rotate_right_chain, weyr_zero,
    zero_chain_from_null_vector, zero_chains_all, Orientation, ZeroChainReport,
};
use crate::matrix::{ComplexMatrix, Tolerance};

/// Library operation → subcommand that reaches it.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("digraph_of", "detect"),
    ("cyclic_index", "detect"),
    ("feasible_partitions", "detect"),
    ("find_h_partition", "partition"),
    ("is_h_cyclic", "check"),
    ("to_consecutive", "blocks"),
    ("extract_blocks", "blocks"),
    ("partial_product", "blocks"),
    ("block_diagonal_power", "power"),
    ("mirsky_spectrum", "spectrum"),
    ("eigenvalues", "spectrum"),
    ("nonsingular_structure_check", "check"),
    ("circulant_from_reference", "circulant"),
    ("recognize_circulant", "circulant"),
    ("basic_circulant", "circulant"),
    ("c_k_matrix", "circulant"),
    ("w_matrix", "circulant"),
    ("verify_chain", "rotate-chain"),
    ("rotate_right_chain", "rotate-chain"),
    ("rotate_left_chain", "rotate-chain"),
    ("embed_null_vector", "zero-chains"),
    ("zero_chain_from_null_vector", "zero-chains"),
    ("zero_chains_all", "zero-chains"),
    ("weyr_zero", "weyr"),
    ("reconstruct_from_chains", "reconstruct"),
];

#[derive(Debug, Parser)]
#[command(name = "hcyclic", version, about = "Analyze cyclically h-partite complex matrices")]
pub struct Cli {
    /// Zero threshold for patterns, ranks and residuals.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_EPS)]
    pub tol: f64,

    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    /// Matrix JSON file.
    #[arg(long)]
    pub matrix: PathBuf,
}

#[derive(Debug, Args)]
pub struct MatrixPartitionArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    /// Partition JSON file.
    #[arg(long)]
    pub partition: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cyclic index of the digraph and a partition for every feasible h.
    Detect(MatrixArg),
    /// A cyclically h-partite partition with h nonempty classes, or null.
    Partition {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        h: usize,
    },
    /// Block cycle A_{12}, …, A_{h1} and the products B_i.
    Blocks {
        #[command(flatten)]
        input: MatrixPartitionArgs,
        /// Also print B_{ip} for this class.
        #[arg(long, requires = "length")]
        class: Option<usize>,
        /// Number of factors in B_{ip}.
        #[arg(long, requires = "class")]
        length: Option<usize>,
    },
    /// Diagonal blocks of A^h.
    Power(MatrixPartitionArgs),
    /// Spectrum predicted from B_1.
    Spectrum {
        #[command(flatten)]
        input: MatrixPartitionArgs,
        /// Also print the eigenvalues of A computed directly.
        #[arg(long)]
        direct: bool,
    },
    /// Pattern check and singularity / class-size report.
    Check(MatrixPartitionArgs),
    /// Build, recognize or inspect circulant matrices.
    Circulant {
        /// Reference vector JSON file; prints the circulant it defines.
        #[arg(long, conflicts_with_all = ["matrix", "h"])]
        reference: Option<PathBuf>,
        /// Matrix JSON file; prints whether it is circulant.
        #[arg(long, conflicts_with = "h")]
        matrix: Option<PathBuf>,
        /// Order of the root of unity for C_k and the W matrices.
        #[arg(long, requires = "k")]
        h: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        /// Chain position used by the W matrices.
        #[arg(long, default_value_t = 1)]
        ell: i64,
    },
    /// Rotate a chain to λω^k, optionally verifying both chains against A.
    RotateChain {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Zero-eigenvalue chains from kernels of the B_i.
    ZeroChains {
        #[command(flatten)]
        input: MatrixPartitionArgs,
        /// Grow a single chain from this class.
        #[arg(long, requires = "vector")]
        class: Option<usize>,
        /// Kernel vector JSON file for --class.
        #[arg(long, requires = "class")]
        vector: Option<PathBuf>,
    },
    /// Weyr characteristic at zero.
    Weyr(MatrixArg),
    /// Synthesize an h-cyclic matrix from base chain pairs.
    Reconstruct {
        #[arg(long)]
        chains: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<ComplexMatrix> {
    matrix_from_json(&read(path)?)
}

fn load_partition(path: &Path) -> Result<CyclicPartition> {
    partition_from_json(&read(path)?)
}

fn load_pair(args: &MatrixPartitionArgs) -> Result<(ComplexMatrix, CyclicPartition)> {
    let a = load_matrix(&args.matrix)?;
    let p = load_partition(&args.partition)?;
    p.check_order(a.rows())?;
    if !a.is_square() {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    Ok((a, p))
}

fn classes_value(p: Option<&CyclicPartition>) -> Value {
    p.map_or(Value::Null, |p| json!(p.classes()))
}

/// Consecutive form for the block-oriented commands; the relabelling is
/// reported so results can be mapped back.
fn consecutive(a: &ComplexMatrix, p: &CyclicPartition) -> Result<(ComplexMatrix, CyclicPartition, Value)> {
    if p.is_consecutive() {
        Ok((a.clone(), p.clone(), Value::Null))
    } else {
        let (pa, pp, sigma) = to_consecutive(a, p)?;
        Ok((pa, pp, json!(sigma)))
    }
}

fn report_value(r: &ZeroChainReport) -> Value {
    json!({
        "class": r.class,
        "length": r.length,
        "seed": vector_value(&r.seed),
        "chain": chain_value(&r.chain),
    })
}

fn execute(cli: &Cli) -> Result<Value> {
    let tol = Tolerance::new(cli.tol)?;
    match &cli.command {
        Command::Detect(m) => {
            let a = load_matrix(&m.matrix)?;
            let g = digraph_of(&a, tol)?;
            let mut parts = Map::new();
            for p in feasible_partitions(&g) {
                parts.insert(p.h().to_string(), json!(p.classes()));
            }
            Ok(json!({ "n": g.n(), "cyclic_index": cyclic_index(&g), "partitions": parts }))
        }
        Command::Partition { matrix, h } => {
            let a = load_matrix(matrix)?;
            let g = digraph_of(&a, tol)?;
            Ok(json!({ "h": h, "partition": classes_value(find_h_partition(&g, *h).as_ref()) }))
        }
        Command::Blocks { input, class, length } => {
            let (a, p) = load_pair(input)?;
            let (ca, cp, sigma) = consecutive(&a, &p)?;
            let cycle = extract_blocks(&ca, &cp, tol)?;
            let h = cp.h();
            let products = (1..=h)
                .map(|i| Ok(matrix_value(&partial_product(&cycle, i, h)?)))
                .collect::<Result<Vec<_>>>()?;
            let mut out = json!({
                "h": h,
                "sizes": cp.sizes(),
                "permutation": sigma,
                "blocks": cycle.blocks().iter().map(matrix_value).collect::<Vec<_>>(),
                "products": products,
            });
            if let (Some(i), Some(len)) = (class, length) {
                out["partial_product"] = json!({
                    "class": i,
                    "length": len,
                    "matrix": matrix_value(&partial_product(&cycle, *i, *len)?),
                });
            }
            Ok(out)
        }
        Command::Power(input) => {
            let (a, p) = load_pair(input)?;
            let (ca, cp, sigma) = consecutive(&a, &p)?;
            let diag = block_diagonal_power(&ca, &cp, tol)?;
            Ok(json!({
                "h": cp.h(),
                "permutation": sigma,
                "diagonal_blocks": diag.iter().map(matrix_value).collect::<Vec<_>>(),
            }))
        }
        Command::Spectrum { input, direct } => {
            let (a, p) = load_pair(input)?;
            let s = mirsky_spectrum(&a, &p, tol)?;
            let mut out = json!({
                "h": s.h,
                "zero_count": s.zero_count,
                "base": vector_value(&s.base),
                "orbits": s.root_orbits.iter().map(|o| vector_value(o)).collect::<Vec<_>>(),
                "eigenvalues": vector_value(&s.eigenvalues()),
            });
            if *direct {
                let mut ev = eigenvalues(&a)?;
                ev.sort_by(|x, y| x.norm().total_cmp(&y.norm()).then(x.arg().total_cmp(&y.arg())));
                out["direct"] = vector_value(&ev);
            }
            Ok(out)
        }
        Command::Check(input) => {
            let (a, p) = load_pair(input)?;
            match ensure_h_cyclic(&a, &p, tol) {
                Ok(()) => {
                    let r = nonsingular_structure_check(&a, &p, tol)?;
                    Ok(json!({
                        "h_cyclic": true,
                        "violation": null,
                        "structure": {
                            "singular": r.singular,
                            "singular_blocks": r.singular_blocks,
                            "sizes_equal": r.sizes_equal,
                            "h_divides_n": r.h_divides_n,
                        },
                    }))
                }
                Err(Error::NotCyclic(i, j)) => Ok(json!({
                    "h_cyclic": false,
                    "violation": [i, j],
                    "structure": null,
                })),
                Err(e) => Err(e),
            }
        }
        Command::Circulant { reference, matrix, h, k, ell } => {
            if let Some(path) = reference {
                let r = vector_from_json(&read(path)?)?;
                return Ok(json!({ "matrix": matrix_value(&circulant_from_reference(&r)?) }));
            }
            if let Some(path) = matrix {
                let c = load_matrix(path)?;
                let r = recognize_circulant(&c, tol)?;
                return Ok(json!({
                    "circulant": r.is_some(),
                    "reference": r.as_deref().map_or(Value::Null, vector_value),
                }));
            }
            let (Some(h), Some(k)) = (h, k) else {
                return Err(Error::InvalidArgument(
                    "circulant needs --reference, --matrix, or --h with --k".into(),
                ));
            };
            let ck = c_k_matrix(*h, *k)?;
            let w1 = w_matrix(*h, *k, *ell, WVariant::Scaled)?;
            let w2 = w_matrix(*h, *k, *ell, WVariant::Shifted)?;
            let sum = (0..*h as i64)
                .map(|j| c_k_matrix(*h, j))
                .try_fold(ComplexMatrix::zeros(*h, *h), |acc, m| acc.try_add(&m?))?;
            let sum_residual = if *h >= 2 {
                sum.max_abs_diff(&basic_circulant(*h)?.scale(crate::matrix::re(*h as f64)))?
            } else {
                sum.max_abs_diff(&ComplexMatrix::identity(1))?
            };
            Ok(json!({
                "h": h,
                "k": k,
                "ell": ell,
                "c_k": matrix_value(&ck),
                "w_scaled_deviation": real_value(w1.max_abs_diff(&ck)?),
                "w_shifted_deviation": real_value(w2.max_abs_diff(&ck)?),
                "sum_identity_residual": real_value(sum_residual),
            }))
        }
        Command::RotateChain { chain, partition, k, matrix } => {
            let c = chain_from_json(&read(chain)?)?;
            let p = load_partition(partition)?;
            let rotated = match c.orientation() {
                Orientation::Right => rotate_right_chain(&c, &p, *k)?,
                Orientation::Left => rotate_left_chain(&c, &p, *k)?,
            };
            let mut out = json!({ "chain": chain_value(&rotated) });
            if let Some(path) = matrix {
                let a = load_matrix(path)?;
                ensure_h_cyclic(&a, &p, tol)?;
                let before = chain_check(&a, &c, tol)?;
                let after = chain_check(&a, &rotated, tol)?;
                out["input_verified"] = json!(before.passes(tol));
                out["verified"] = json!(after.passes(tol));
                out["residual"] = real_value(after.recursion_residual);
            }
            Ok(out)
        }
        Command::ZeroChains { input, class, vector } => {
            let (a, p) = load_pair(input)?;
            if let (Some(i), Some(path)) = (class, vector) {
                let x = vector_from_json(&read(path)?)?;
                return Ok(report_value(&zero_chain_from_null_vector(&a, &p, *i, &x, tol)?));
            }
            let all = zero_chains_all(&a, &p, tol)?;
            let classes = all
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "class": c.class,
                        "lengths": c.lengths(),
                        "chains": c.reports.iter().map(report_value).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>();
            Ok(json!({
                "classes": classes,
                "weyr": all.weyr.weights,
                "block_sizes": all.block_sizes,
                "may_be_redundant": all.may_be_redundant,
            }))
        }
        Command::Weyr(m) => {
            let a = load_matrix(&m.matrix)?;
            Ok(json!({ "weyr": weyr_zero(&a, tol)?.weights }))
        }
        Command::Reconstruct { chains, partition } => {
            let orbits = orbits_from_json(&read(chains)?)?;
            let p = load_partition(partition)?;
            let a = reconstruct_from_chains(&orbits, &p, tol)?;
            Ok(json!({ "matrix": matrix_value(&a), "partition": partition_value(&p) }))
        }
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(v) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&v)
            } else {
                serde_json::to_string(&v)
            }
            .expect("JSON values serialize");
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numerical() {
                1
            } else {
                2
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn every_operation_has_a_subcommand() {
        let cmd = Cli::command();
        let names: Vec<&str> = cmd.get_subcommands().map(|s| s.get_name()).collect();
        for (op, sub) in OPERATIONS {
            assert!(names.contains(sub), "{op} routed to unknown subcommand {sub}");
        }
        for name in &names {
            assert!(
                OPERATIONS.iter().any(|(_, s)| s == name),
                "subcommand {name} reaches no listed operation"
            );
        }
        Cli::command().debug_assert();
    }

    #[test]
    fn bad_arguments_exit_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["hcyclic", "frobnicate"], &mut out, &mut err), 2);
        assert_eq!(run(["hcyclic", "weyr", "--matrix", "/nonexistent.json"], &mut out, &mut err), 2);
        assert_eq!(run(["hcyclic", "--tol", "-1", "weyr", "--matrix", "x"], &mut out, &mut err), 2);
    }
}
