//! The `gkab` command line.
//!
//! [`parse_and_dispatch`] does all the work and returns the exit code with
//! both output streams, so the binary is a thin wrapper and tests can drive
//! the command line without spawning processes.
//!
//! Exit codes: 0 success, 1 usage, 2 domain error, 3 missing split data,
//! 4 enumeration bound exceeded.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::classifier::{
    classify, classify_all, ff_isomorphic, ff_type, types_isomorphic, FFInput, SplitPolicy,
};
use crate::error::{Error, Result};
use crate::extension::{verify_diagram, verify_uniqueness, TruncationSpec, DEFAULT_BOUND};
use crate::finabelian::FiniteAbelianGroup;
use crate::profinite::{
    t_descriptor, t_l, AnyDescriptor, Cardinal, DiscreteTorsionDescriptor, ProfiniteDescriptor,
};
use crate::quadfields::{class_group, Discriminant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NO_SPLIT_DATA: i32 = 3;
pub const EXIT_BOUND: i32 = 4;

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunResult {
    fn ok(stdout: String) -> Self {
        Self {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        Self {
            exit_code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::SplitDataUnavailable(_) => EXIT_NO_SPLIT_DATA,
        Error::BoundExceeded { .. } => EXIT_BOUND,
        Error::Io { .. } => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "gkab",
    version,
    about = "Isomorphism types of G_K^ab for imaginary quadratic and function fields"
)]
struct Cli {
    /// Print machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class group of an imaginary quadratic field.
    Classgroup {
        #[arg(long, allow_negative_numbers = true)]
        disc: BigInt,
    },
    /// G_K^ab type of one field.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        disc: BigInt,
        /// Split class group for this field, as a group literal.
        #[arg(long)]
        split: Option<String>,
        #[arg(long)]
        split_table: Option<PathBuf>,
    },
    /// Whether fields share a G_K^ab type.
    Compare {
        #[arg(long, allow_negative_numbers = true, required = true, num_args = 1)]
        disc: Vec<BigInt>,
        #[arg(long)]
        split_table: Option<PathBuf>,
    },
    /// Partition a file of discriminants into isomorphism classes.
    Batch {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        split_table: Option<PathBuf>,
    },
    /// Exhaustive uniqueness check for truncated extensions.
    VerifyUniqueness {
        #[arg(long)]
        prime: u64,
        /// Group literal for A.
        #[arg(long, default_value = "1")]
        sub: String,
        /// Quotient exponents; every prefix is checked.
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u64,
        /// Also check the diagram identities at l^n for the full list.
        #[arg(long)]
        diagram: Vec<u32>,
    },
    /// Pontryagin dual of a descriptor.
    Dual {
        #[command(flatten)]
        source: DescriptorSource,
    },
    /// Finite model of a descriptor at one prime.
    Truncate {
        #[command(flatten)]
        source: DescriptorSource,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        max_exp: u32,
        #[arg(long)]
        mult_cap: u64,
        #[arg(long, default_value_t = 0)]
        free_level: u32,
    },
    /// Invariants of a global function field.
    Fftype {
        #[arg(long = "char")]
        characteristic: u64,
        /// Constant field exponent n with q = p^n.
        #[arg(long = "exp")]
        exponent: u64,
        #[arg(long, default_value = "1")]
        class_group: String,
    },
    /// Whether two function fields have isomorphic G_K^ab.
    Ffcompare {
        /// A field as "p:n:group", given twice.
        #[arg(long, num_args = 1, required = true)]
        field: Vec<String>,
    },
}

#[derive(clap::Args, Debug)]
#[group(required = true, multiple = false)]
struct DescriptorSource {
    /// Descriptor document.
    #[arg(long)]
    input: Option<PathBuf>,
    /// T, T_<l>, Zhat, Zhat^<r>, Z_<l>, Q/Z, Z(<l>^inf).
    #[arg(long)]
    preset: Option<String>,
    /// A finite group literal, read as a profinite descriptor.
    #[arg(long)]
    group: Option<String>,
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn parse_and_dispatch<I, T>(argv: I) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    RunResult::ok(text)
                }
                _ => RunResult::usage(text),
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => outcome,
        Err(Failure::Usage(msg)) => RunResult::usage(format!("error: {msg}\n")),
        Err(Failure::Domain(e)) => RunResult {
            exit_code: exit_code_for(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

fn group(literal: &str) -> Result<FiniteAbelianGroup> {
    literal.parse()
}

/// Parses split-table text: one `D: group` entry per line, optionally in
/// braces, with `#` comments.
pub fn parse_split_table(text: &str) -> Result<BTreeMap<BigInt, FiniteAbelianGroup>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let bad = |reason: String| Error::SplitTable { line, reason };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let inner = match (content.strip_prefix('{'), content.strip_suffix('}')) {
            (Some(_), Some(_)) => content[1..content.len() - 1].trim(),
            (None, None) => content,
            _ => return Err(bad("unbalanced braces".into())),
        };
        let (d, g) = inner
            .split_once(':')
            .ok_or_else(|| bad(format!("expected `discriminant: group`, got {content:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| bad(format!("{:?} is not an integer", d.trim())))?;
        let g = g.trim().trim_matches('"');
        let g = group(g).map_err(|e| bad(e.to_string()))?;
        if out.insert(d.clone(), g).is_some() {
            return Err(bad(format!("discriminant {d} listed twice")));
        }
    }
    Ok(out)
}

/// Builtin table overlaid with the entries of a split-table file.
pub fn load_split_table(path: &Path) -> Result<SplitPolicy> {
    let text = read_file(path)?;
    Ok(SplitPolicy::builtin().with_entries(parse_split_table(&text)?))
}

/// One discriminant per line; blank lines and `#` comments are skipped.
pub fn parse_discriminant_list(text: &str) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        out.push(content.parse().map_err(|_| Error::InputLine {
            line: i + 1,
            reason: format!("{content:?} is not an integer"),
        })?);
    }
    Ok(out)
}

fn policy(table: Option<&PathBuf>) -> Result<SplitPolicy> {
    match table {
        Some(p) => load_split_table(p),
        None => Ok(SplitPolicy::builtin()),
    }
}

/// Parses a descriptor preset name.
pub fn preset(name: &str) -> Result<AnyDescriptor> {
    let bad = || Error::MalformedDescriptor(format!("unknown preset {name:?}"));
    let prime = |s: &str| -> Result<u64> { s.parse().map_err(|_| bad()) };
    let n = name.trim();
    if n == "T" {
        return Ok(t_descriptor().into());
    }
    if n == "Q/Z" {
        return Ok(DiscreteTorsionDescriptor::qz(Cardinal::Finite(1)).into());
    }
    if n == "Zhat" {
        return Ok(ProfiniteDescriptor::zhat(Cardinal::Finite(1)).into());
    }
    if let Some(r) = n.strip_prefix("Zhat^") {
        let rank = if r == "aleph0" {
            Cardinal::Aleph0
        } else {
            Cardinal::Finite(r.parse().map_err(|_| bad())?)
        };
        return Ok(ProfiniteDescriptor::zhat(rank).into());
    }
    if let Some(l) = n.strip_prefix("T_") {
        return Ok(t_l(prime(l)?)?.into());
    }
    if let Some(l) = n.strip_prefix("Z_") {
        return Ok(ProfiniteDescriptor::zl(prime(l)?, Cardinal::Finite(1))?.into());
    }
    if let Some(l) = n.strip_prefix("Z(").and_then(|s| s.strip_suffix("^inf)")) {
        return Ok(DiscreteTorsionDescriptor::prufer(prime(l)?, Cardinal::Finite(1))?.into());
    }
    Err(bad())
}

fn descriptor(source: &DescriptorSource) -> std::result::Result<AnyDescriptor, Failure> {
    if let Some(path) = &source.input {
        return Ok(AnyDescriptor::from_document(&read_file(path)?)?);
    }
    if let Some(name) = &source.preset {
        return Ok(preset(name)?);
    }
    let literal = source.group.as_deref().unwrap_or("1");
    Ok(ProfiniteDescriptor::from_finite(&group(literal)?).into())
}

fn parse_field(spec: &str) -> Result<FFInput> {
    let bad = || Error::InvalidGroupLiteral {
        literal: spec.to_string(),
        reason: "expected p:n:group".into(),
    };
    let mut parts = spec.splitn(3, ':');
    let p = parts
        .next()
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(bad)?;
    let n = parts
        .next()
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(bad)?;
    let g = group(parts.next().unwrap_or("1"))?;
    Ok(FFInput {
        characteristic: p,
        constant_exponent: n,
        class_group_deg0: g,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> std::result::Result<RunResult, Failure> {
    let json = cli.json;
    let mut out = String::new();
    match &cli.command {
        Command::Classgroup { disc } => {
            let d = Discriminant::new(disc.clone())?;
            let cg = class_group(&d);
            let forms: Vec<String> = cg.representatives.iter().map(ToString::to_string).collect();
            if json {
                out = pretty(&json!({
                    "discriminant": d.to_string(),
                    "class_number": cg.class_number(),
                    "structure": cg.structure.to_string(),
                    "forms": forms,
                }));
            } else {
                writeln!(out, "discriminant  {d}").unwrap();
                writeln!(out, "class number  {}", cg.class_number()).unwrap();
                writeln!(out, "structure     {}", cg.structure).unwrap();
                writeln!(out, "forms         {}", forms.join(" ")).unwrap();
            }
        }
        Command::Classify {
            disc,
            split,
            split_table,
        } => {
            let mut p = policy(split_table.as_ref())?;
            if let Some(s) = split {
                p = p.with_entry(disc.clone(), group(s)?);
            }
            let c = classify(disc, &p)?;
            if json {
                out = c.to_document();
                out.push('\n');
            } else {
                writeln!(out, "discriminant  {}", c.discriminant).unwrap();
                writeln!(
                    out,
                    "class group   {} (h = {})",
                    c.class_group,
                    c.class_group.order()
                )
                .unwrap();
                writeln!(out, "split group   {} [{}]", c.split.group, c.split.source).unwrap();
                writeln!(out, "G_K^ab        {}", c.gkab).unwrap();
            }
        }
        Command::Compare { disc, split_table } => {
            if disc.len() < 2 {
                return Err(Failure::Usage(
                    "compare needs at least two --disc values".into(),
                ));
            }
            let p = policy(split_table.as_ref())?;
            let types = disc
                .iter()
                .map(|d| classify(d, &p))
                .collect::<Result<Vec<_>>>()?;
            let same = types
                .windows(2)
                .all(|w| types_isomorphic(&w[0].gkab, &w[1].gkab));
            if json {
                out = pretty(&json!({
                    "isomorphic": same,
                    "fields": types.iter().map(|c| json!({
                        "discriminant": c.discriminant.to_string(),
                        "split": c.gkab.split_group.to_string(),
                    })).collect::<Vec<_>>(),
                }));
            } else {
                for c in &types {
                    writeln!(out, "{:<10} {}", c.discriminant.to_string(), c.gkab).unwrap();
                }
                writeln!(
                    out,
                    "{}",
                    if same { "isomorphic" } else { "not isomorphic" }
                )
                .unwrap();
            }
        }
        Command::Batch { input, split_table } => {
            let p = policy(split_table.as_ref())?;
            let discs = parse_discriminant_list(&read_file(input)?)?;
            let report = classify_all(&discs, &p);
            if json {
                out = report.to_document();
                out.push('\n');
            } else {
                for (i, cell) in report.cells.iter().enumerate() {
                    let members: Vec<String> = cell
                        .members
                        .iter()
                        .map(|m| m.discriminant.to_string())
                        .collect();
                    writeln!(
                        out,
                        "class {:<3} {:<24} size {:<3} {}",
                        i + 1,
                        cell.gkab.to_string(),
                        members.len(),
                        members.join(" ")
                    )
                    .unwrap();
                }
                for (d, e) in &report.errors {
                    writeln!(out, "error     {d}: {e}").unwrap();
                }
            }
            if let Some((_, e)) = report.errors.first() {
                let mut stderr = String::new();
                for (d, e) in &report.errors {
                    writeln!(stderr, "error: {d}: {e}").unwrap();
                }
                return Ok(RunResult {
                    exit_code: exit_code_for(e),
                    stdout: out,
                    stderr,
                });
            }
        }
        Command::VerifyUniqueness {
            prime,
            sub,
            exponents,
            bound,
            diagram,
        } => {
            let a = group(sub)?;
            let lists: Vec<Vec<u32>> = (1..=exponents.len())
                .map(|k| exponents[..k].to_vec())
                .collect();
            let report = verify_uniqueness(&a, *prime, &lists, *bound)?;
            let spec = TruncationSpec::new(*prime, a.clone(), exponents.clone(), 0)?;
            let checks = diagram
                .iter()
                .map(|&n| verify_diagram(*prime, &a, &spec, n, *bound))
                .collect::<Result<Vec<_>>>()?;
            if json {
                let mut doc: Value =
                    serde_json::from_str(&report.to_document()).expect("report is json");
                doc["diagrams"] = checks
                    .iter()
                    .map(|c| {
                        json!({
                            "n": c.n,
                            "saturation": c.saturation,
                            "d_socle_order": c.d_socle_order,
                            "t_socle_order": c.t_socle_order,
                            "composite_zero": c.composite_zero,
                            "divisible": c.divisible,
                            "passed": c.passed(),
                            "counterexample": c.counterexample.as_ref().map(|(_, x)| x.to_string()),
                        })
                    })
                    .collect();
                out = pretty(&doc);
            } else {
                writeln!(out, "l = {prime}  A = {a}").unwrap();
                writeln!(
                    out,
                    "{:<14} {:<24} {:<5} {:<14} {:<14} verdict",
                    "exponents", "counts by m", "sat", "survivors", "canonical"
                )
                .unwrap();
                for e in &report.entries {
                    let counts: Vec<String> =
                        e.level_counts.values().map(ToString::to_string).collect();
                    let survivors: Vec<String> =
                        e.survivors.iter().map(ToString::to_string).collect();
                    writeln!(
                        out,
                        "{:<14} {:<24} {:<5} {:<14} {:<14} {}",
                        format!("{:?}", e.quotient_exponents),
                        counts.join(" "),
                        e.saturation.map_or("-".into(), |m| m.to_string()),
                        survivors.join(" | "),
                        e.canonical.to_string(),
                        if e.passed { "PASS" } else { "FAIL" }
                    )
                    .unwrap();
                }
                for c in &checks {
                    writeln!(
                        out,
                        "diagram n={}  |D[l^n]|={} |T[l^n]|={} composite_zero={} divisible={} {}",
                        c.n,
                        c.d_socle_order,
                        c.t_socle_order,
                        c.composite_zero,
                        c.divisible,
                        if c.passed() { "PASS" } else { "FAIL" }
                    )
                    .unwrap();
                }
            }
        }
        Command::Dual { source } => {
            let d = descriptor(source)?.dual();
            out = if json {
                d.to_document() + "\n"
            } else {
                format!("{d}\n")
            };
        }
        Command::Truncate {
            source,
            prime,
            max_exp,
            mult_cap,
            free_level,
        } => {
            let d = descriptor(source)?;
            if !crate::finabelian::primes::is_prime(*prime) {
                return Err(Failure::Usage(format!("--prime {prime} is not prime")));
            }
            let g = d.truncate(*prime, *max_exp, *mult_cap, *free_level);
            if json {
                out = pretty(&json!({
                    "kind": d.kind(),
                    "prime": prime,
                    "max_exp": max_exp,
                    "mult_cap": mult_cap,
                    "free_level": free_level,
                    "group": g.to_string(),
                }));
            } else {
                writeln!(out, "{g}").unwrap();
            }
        }
        Command::Fftype {
            characteristic,
            exponent,
            class_group,
        } => {
            let t = ff_type(&FFInput {
                characteristic: *characteristic,
                constant_exponent: *exponent,
                class_group_deg0: group(class_group)?,
            })?;
            out = if json {
                t.to_document() + "\n"
            } else {
                format!("{t}\n")
            };
        }
        Command::Ffcompare { field } => {
            if field.len() != 2 {
                return Err(Failure::Usage(
                    "ffcompare needs exactly two --field values".into(),
                ));
            }
            let a = ff_type(&parse_field(&field[0])?)?;
            let b = ff_type(&parse_field(&field[1])?)?;
            let same = ff_isomorphic(&a, &b);
            if json {
                out = pretty(&json!({
                    "isomorphic": same,
                    "same_characteristic": a.characteristic == b.characteristic,
                    "same_d_k": a.d_k == b.d_k,
                    "same_nonp_class": a.nonp_class == b.nonp_class,
                }));
            } else {
                writeln!(out, "{a}\n{b}").unwrap();
                writeln!(
                    out,
                    "{}",
                    if same { "isomorphic" } else { "not isomorphic" }
                )
                .unwrap();
            }
        }
    }
    Ok(RunResult::ok(out))
}
