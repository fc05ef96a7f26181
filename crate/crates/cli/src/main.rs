//! `diho`: directed homology algebras of precubical sets from the command line.

mod examples;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use diho::dihomology::{ha1, DihomologyError, DimensionMatrix, QuotientMode};
use diho::exactalg::AlgebraError;
use diho::precubical::{PrecubicalError, PrecubicalSet};
use diho::simplicial::{disjoint_union_les_report, SimplicialError};
use diho::tracealg::{mixed_sequence_algebra, path_algebra, r0_algebra, two_path_algebra, TraceError};

#[derive(Parser)]
#[command(name = "diho", version, about = "Directed homology algebras of precubical sets")]
struct Cli {
    /// Worker threads for per-grade computations.
    #[arg(long, global = true, env = "DIHO_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    /// Reachability pairs.
    Reach,
    /// Edge paths.
    Paths,
    /// Chained 2-cell sequences.
    Cells,
    /// Mixed edge and 2-cell sequences.
    Mixed,
}

#[derive(Args, Clone)]
struct Common {
    /// Longest path, in edges; required for complexes with directed cycles.
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

#[derive(Args, Clone)]
struct ModeArg {
    /// Relations divided out: ideal, image or local.
    #[arg(long, default_value = "ideal", value_parser = parse_mode)]
    mode: QuotientMode,
}

fn parse_mode(s: &str) -> Result<QuotientMode, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Check the precubical identities of a complex file.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Path counts between vertices.
    Paths {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Also list every path.
        #[arg(long)]
        list: bool,
    },
    /// Basis words of one of the trace algebras.
    Algebra {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "paths")]
        which: Which,
        #[command(flatten)]
        common: Common,
    },
    /// Reachability algebra.
    Ha0 {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// First directed homology algebra as a dimension matrix.
    Ha1 {
        file: PathBuf,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        common: Common,
        /// Comma-separated vertex subset.
        #[arg(long)]
        restrict: Option<String>,
    },
    /// Representative paths of each grade of the first homology algebra.
    Classes {
        file: PathBuf,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        restrict: Option<String>,
    },
    /// Disjoint-union exact sequence report for two complexes.
    Les {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        common: Common,
        /// Word cap of the coproduct.
        #[arg(long, default_value_t = 2)]
        cap: usize,
    },
    /// Run the built-in examples and check them against their expected values.
    Examples {
        /// Run one example only.
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        cap: usize,
        /// Print the example names and exit.
        #[arg(long)]
        list: bool,
    },
}

/// Exit status with a message for the error stream.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    pub fn flags(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

fn algebra_code(e: &AlgebraError) -> u8 {
    match e {
        AlgebraError::Truncated { .. } => 3,
        _ => 1,
    }
}

fn precubical_code(e: &PrecubicalError) -> u8 {
    match e {
        PrecubicalError::NeedsCap => 2,
        _ => 1,
    }
}

fn trace_code(e: &TraceError) -> u8 {
    match e {
        TraceError::Precubical(p) => precubical_code(p),
        TraceError::Algebra(a) => algebra_code(a),
        TraceError::Truncated(_) => 3,
        TraceError::EndpointMismatch(_) => 1,
    }
}

fn dihomology_code(e: &DihomologyError) -> u8 {
    match e {
        DihomologyError::Trace(t) => trace_code(t),
        DihomologyError::Algebra(a) => algebra_code(a),
        DihomologyError::UnknownVertex(_) => 2,
        _ => 1,
    }
}

impl From<PrecubicalError> for Failure {
    fn from(e: PrecubicalError) -> Self {
        Failure { code: precubical_code(&e), message: e.to_string() }
    }
}

impl From<TraceError> for Failure {
    fn from(e: TraceError) -> Self {
        Failure { code: trace_code(&e), message: e.to_string() }
    }
}

impl From<DihomologyError> for Failure {
    fn from(e: DihomologyError) -> Self {
        Failure { code: dihomology_code(&e), message: e.to_string() }
    }
}

impl From<SimplicialError> for Failure {
    fn from(e: SimplicialError) -> Self {
        let code = match &e {
            SimplicialError::Trace(t) => trace_code(t),
            SimplicialError::Dihomology(d) => dihomology_code(d),
            SimplicialError::Algebra(a) => algebra_code(a),
            SimplicialError::Precubical(p) => precubical_code(p),
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn load(path: &Path) -> Result<PrecubicalSet, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))?;
    let c = PrecubicalSet::from_json(&text)?;
    c.ensure_valid()?;
    Ok(c)
}

fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn parse_subset(restrict: &Option<String>) -> Option<Vec<String>> {
    restrict.as_ref().map(|s| s.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect())
}

fn restrict_matrix(m: DimensionMatrix, subset: &Option<Vec<String>>) -> Result<DimensionMatrix, Failure> {
    match subset {
        Some(vs) => {
            let refs: Vec<&str> = vs.iter().map(String::as_str).collect();
            Ok(m.restrict(&refs)?)
        }
        None => Ok(m),
    }
}

fn matrix_output(m: &DimensionMatrix, format: Format, header: &[String], extra: Value) -> String {
    match format {
        Format::Json => {
            let mut v = extra;
            v["matrix"] = m.to_json();
            to_text(&v)
        }
        Format::Pretty => {
            let mut s: String = header.iter().map(|h| format!("# {h}\n")).collect();
            s.push_str(&m.to_pretty());
            s
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Validate { file, format } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::validation(format!("cannot read {}: {e}", file.display())))?;
            let c = PrecubicalSet::from_json(&text)?;
            let violations = c.validate();
            let counts: Vec<usize> = (0..=c.top_dim().unwrap_or(0)).map(|n| c.cells(n).len()).collect();
            if !violations.is_empty() {
                let lines: Vec<String> = violations.iter().map(|v| format!("violation: {v}")).collect();
                return Err(Failure::validation(format!("{} violation(s)\n{}", lines.len(), lines.join("\n"))));
            }
            Ok(match format {
                Format::Json => to_text(&json!({"valid": true, "cells": counts})),
                Format::Pretty => format!("valid: cells per dimension {counts:?}\n"),
            })
        }
        Command::Paths { file, common, list } => {
            let c = load(&file)?;
            let p = path_algebra(&c, common.max_len)?;
            let m = DimensionMatrix::of_algebra(p.algebra());
            let names: Vec<String> = p.paths().iter().map(|w| w.name()).collect();
            let header = vec![format!("path counts, max_len={}", p.max_len())];
            let mut extra = json!({"max_len": p.max_len(), "truncated": p.is_truncated()});
            if list {
                extra["paths"] = json!(names);
            }
            let mut out = matrix_output(&m, common.format, &header, extra);
            if list && common.format == Format::Pretty {
                for n in names {
                    out.push_str(&format!("{n}\n"));
                }
            }
            Ok(out)
        }
        Command::Algebra { file, which, common } => {
            let c = load(&file)?;
            let alg = match which {
                Which::Reach => std::sync::Arc::new(r0_algebra(&c)?),
                Which::Paths => path_algebra(&c, common.max_len)?.algebra().clone(),
                Which::Cells => {
                    let cap = common.max_len.map(|l| l / 2);
                    two_path_algebra(&c, cap)?.algebra().clone()
                }
                Which::Mixed => {
                    let l = path_algebra(&c, common.max_len)?.max_len();
                    mixed_sequence_algebra(&c, l)?.algebra().clone()
                }
            };
            let words: Vec<Value> = alg
                .words()
                .iter()
                .map(|w| json!({"name": w.name, "source": alg.objects()[w.source], "target": alg.objects()[w.target]}))
                .collect();
            Ok(match common.format {
                Format::Json => to_text(&json!({"dim": alg.dim(), "truncated": alg.is_truncated(), "words": words})),
                Format::Pretty => {
                    let mut s = format!("# dim {}\n", alg.dim());
                    for w in alg.words() {
                        s.push_str(&format!(
                            "{}: {} -> {}\n",
                            w.name,
                            alg.objects()[w.source],
                            alg.objects()[w.target]
                        ));
                    }
                    s
                }
            })
        }
        Command::Ha0 { file, format } => {
            let c = load(&file)?;
            let r = r0_algebra(&c)?;
            let m = DimensionMatrix::of_algebra(&r);
            Ok(matrix_output(&m, format, &["reachability".to_string()], json!({})))
        }
        Command::Ha1 { file, mode, common, restrict } => {
            let c = load(&file)?;
            let h = ha1(&c, mode.mode, common.max_len)?;
            let subset = parse_subset(&restrict);
            let m = restrict_matrix(h.dimension_matrix(), &subset)?;
            let mut header = vec![format!("HA_1 mode={} max_len={}", h.mode(), h.max_len())];
            if h.is_length_filtered() {
                header.push(format!("length-filtered: only paths of at most {} edges", h.max_len()));
            }
            let extra = json!({
                "mode": h.mode().to_string(),
                "max_len": h.max_len(),
                "length_filtered": h.is_length_filtered(),
            });
            Ok(matrix_output(&m, common.format, &header, extra))
        }
        Command::Classes { file, mode, common, restrict } => {
            let c = load(&file)?;
            let h = ha1(&c, mode.mode, common.max_len)?;
            let subset = parse_subset(&restrict);
            let alg = h.base().algebra();
            let objects = alg.objects();
            if let Some(vs) = &subset {
                if let Some(v) = vs.iter().find(|v| !objects.contains(v)) {
                    return Err(Failure::flags(format!("unknown vertex `{v}` in --restrict")));
                }
            }
            let keep = |o: usize| subset.as_ref().is_none_or(|vs| vs.contains(&objects[o]));
            let mut rows = Vec::new();
            for (g, _) in alg.grades() {
                if !keep(g.0) || !keep(g.1) {
                    continue;
                }
                let reps: Vec<String> = h.representatives(g).iter().map(|&w| alg.word(w).name.clone()).collect();
                let module = h.module(g);
                rows.push((objects[g.0].clone(), objects[g.1].clone(), module, reps));
            }
            Ok(match common.format {
                Format::Json => {
                    let items: Vec<Value> = rows
                        .iter()
                        .map(|(s, t, m, r)| {
                            json!({
                                "source": s, "target": t, "rank": m.rank,
                                "torsion": m.torsion.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                                "representatives": r,
                            })
                        })
                        .collect();
                    to_text(&json!({"mode": h.mode().to_string(), "max_len": h.max_len(), "grades": items}))
                }
                Format::Pretty => {
                    let mut s = format!("# classes mode={} max_len={}\n", h.mode(), h.max_len());
                    for (src, t, m, r) in rows {
                        s.push_str(&format!("({src},{t}) {m}: {}\n", r.join(", ")));
                    }
                    s
                }
            })
        }
        Command::Les { left, right, mode, common, cap } => {
            let a = load(&left)?;
            let mut b = load(&right)?;
            if a.disjoint_union(&b).is_err() {
                eprintln!("note: ids of the second complex clash with the first; prefixing them with `r.`");
                b = b.prefixed("r.");
            }
            let r = disjoint_union_les_report(&a, &b, mode.mode, common.max_len, cap)?;
            let out = match common.format {
                Format::Json => to_text(&r.to_json()),
                Format::Pretty => {
                    let mut s = format!("# HA_1 of the union, mode={}\n", mode.mode);
                    s.push_str(&r.union.to_pretty());
                    s.push_str(&format!(
                        "block sum of the parts: {}\n",
                        if r.block_sum_matches { "matches" } else { "DIFFERS" }
                    ));
                    s.push_str(&format!(
                        "coproduct (word cap {}): dim {}, Ker h: dim {}\n",
                        r.word_cap, r.coproduct_dim, r.kernel_dim
                    ));
                    for (p, name) in r.positions.iter().zip(["Ker h", "coproduct", "union paths"]) {
                        s.push_str(&format!(
                            "exactness at {name}: image rank {}, kernel dim {}: {}\n",
                            p.image_rank,
                            p.kernel_dim,
                            if p.exact { "exact" } else { "NOT EXACT" }
                        ));
                    }
                    s
                }
            };
            if r.holds() {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::validation("disjoint-union sequence check failed"))
            }
        }
        Command::Examples { name, mode, common, seed, cap, list } => {
            if list {
                return Ok(examples::names().iter().map(|n| format!("{n}\n")).collect());
            }
            let opts = examples::Options {
                mode: mode.mode,
                max_len: common.max_len,
                seed,
                cap,
                json: common.format == Format::Json,
            };
            examples::run(name.as_deref(), &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().ok();
    }
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
