//! Subcommand implementations and the argument surface.

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use kleintft::algebra::{AlgebraElement, StructureAlgebra, RELATION_IDS};
use kleintft::correlator::{
    correlator, verify_cut_relation, CorrelatorQuery, CutRelationId,
};
use kleintft::group::GroupTable;
use kleintft::oracle::{
    count_disc_mixed, count_polygon, verify_oracle_equivalence, ClosedCountSpec, OracleError,
    DEFAULT_LOOP_CAP,
};
use kleintft::surface::SurfaceType;

use crate::context::{self, GroupSpec, LoadedAlgebra};
use crate::schema::{BasisResolver, ElementRef, ModelInput, QueryInput};
use crate::text;
use crate::{EXIT_CAP_EXCEEDED, EXIT_PARSE_ERROR, EXIT_VERIFY_FAILED};

/// Exact structure algebras, Klein-TFT correlators, and Hurwitz numbers for
/// finite permutation groups.
#[derive(Parser, Debug)]
#[command(name = "kleintft", version, disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Build the symmetric group S_n.
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree of a generator-specified permutation group.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Generators, semicolon-separated: cycle notation "(1 2)" or image list "2,1,3".
    #[arg(long)]
    pub generators: Option<String>,
    /// Cap on the group order accepted by the enumerator.
    #[arg(long)]
    pub order_cap: Option<usize>,
    /// Directory for the tensor cache.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for the parallel suites.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a Hurwitz number for a surface type and branch data.
    Hurwitz {
        #[command(flatten)]
        group: GroupArgs,
        /// Doubled genus of the base surface.
        #[arg(long)]
        genus2: u32,
        /// Orientability of the base surface (true/false).
        #[arg(long, action = clap::ArgAction::Set)]
        orientable: bool,
        /// Interior branch classes: partitions separated by semicolons.
        #[arg(long)]
        interior: Option<String>,
        /// Boundary blocks separated by semicolons; each block lists
        /// parenthesized diagrams separated by commas. An empty block gets
        /// the trivial boundary field inserted automatically.
        #[arg(long)]
        boundary: Option<String>,
        /// Also print a decimal rendering.
        #[arg(long)]
        decimal: bool,
    },
    /// Evaluate a correlator from a JSON query.
    Correlator {
        #[command(flatten)]
        group: GroupArgs,
        /// Query file path, or '-' for stdin.
        #[arg(long)]
        query: String,
        #[arg(long)]
        decimal: bool,
    },
    /// Dump the structure-algebra tensors.
    Tables {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Run the full verification suite; exit 0 iff everything passes.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        /// Random tuples per instance family when a relation is sampled.
        #[arg(long, default_value_t = 60)]
        samples: usize,
        /// Largest index space still checked exhaustively.
        #[arg(long, default_value_t = 1000)]
        exhaustive_cap: usize,
    },
    /// Validate, enumerate, and realize semisimple block models.
    Classify {
        /// Model JSON path, or '-' for stdin.
        #[arg(long)]
        model: String,
        /// List all admissible crosscap vectors.
        #[arg(long)]
        enumerate: bool,
        /// Realize every crosscap choice and verify the relation system.
        #[arg(long)]
        realize: bool,
        /// Count the (star, crosscap) extensions of the bare block data.
        #[arg(long)]
        count_extensions: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Direct covering counts.
    Oracle {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum)]
        surface: OracleSurface,
        /// Doubled genus (closed surfaces).
        #[arg(long)]
        genus2: Option<u32>,
        /// Orientability (closed surfaces).
        #[arg(long)]
        orientable: Option<bool>,
        /// Branch classes for closed surfaces: partitions separated by ';'.
        #[arg(long)]
        classes: Option<String>,
        /// Corner diagrams for polygons: parenthesized, separated by ';'.
        #[arg(long)]
        corners: Option<String>,
        /// Interior class for the mixed disc.
        #[arg(long)]
        alpha: Option<String>,
        /// Boundary diagram for the mixed disc.
        #[arg(long)]
        beta: Option<String>,
        /// Cap on the estimated tuple count.
        #[arg(long)]
        cap: Option<u128>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleSurface {
    Closed,
    Polygon,
    Disc,
}

/// An error carrying a process exit code.
#[derive(Debug)]
pub struct CodedError {
    pub code: i32,
    pub error: anyhow::Error,
}

impl CodedError {
    fn new(code: i32, error: anyhow::Error) -> Self {
        CodedError { code, error }
    }
}

impl From<anyhow::Error> for CodedError {
    fn from(error: anyhow::Error) -> Self {
        CodedError { code: EXIT_PARSE_ERROR, error }
    }
}

type CmdResult = Result<(), CodedError>;

/// Parses and runs; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message (also for --help/--version).
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE_ERROR } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Hurwitz { group, genus2, orientable, interior, boundary, decimal } => {
            cmd_hurwitz(group, genus2, orientable, interior, boundary, decimal)
        }
        Command::Correlator { group, query, decimal } => cmd_correlator(group, query, decimal),
        Command::Tables { group } => cmd_tables(group),
        Command::Verify { group, samples, exhaustive_cap } => {
            cmd_verify(group, samples, exhaustive_cap)
        }
        Command::Classify { model, enumerate, realize, count_extensions, format } => {
            cmd_classify(&model, enumerate, realize, count_extensions, format)
        }
        Command::Oracle {
            group,
            surface,
            genus2,
            orientable,
            classes,
            corners,
            alpha,
            beta,
            cap,
        } => cmd_oracle(group, surface, genus2, orientable, classes, corners, alpha, beta, cap),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {:#}", e.error);
            e.code
        }
    }
}

fn group_spec(args: &GroupArgs) -> Result<GroupSpec> {
    context::group_spec_from_flags(args.n, args.degree, args.generators.as_deref())
}

fn with_thread_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .context("building thread pool")?;
            Ok(pool.install(f))
        }
    }
}

fn load(args: &GroupArgs) -> Result<(GroupSpec, LoadedAlgebra), CodedError> {
    let spec = group_spec(args)?;
    let loaded = context::load_or_build(&spec, args.order_cap, args.cache_dir.as_deref())
        .map_err(classify_build_error)?;
    Ok((spec, loaded))
}

fn classify_build_error(e: anyhow::Error) -> CodedError {
    let msg = format!("{e}");
    if msg.contains("exceeds the cap") {
        CodedError::new(EXIT_CAP_EXCEEDED, e)
    } else {
        CodedError::from(e)
    }
}

fn resolver(loaded: &LoadedAlgebra) -> BasisResolver {
    BasisResolver {
        a_labels: loaded.dump.basis_a.iter().map(|b| b.label.clone()).collect(),
        b_labels: loaded.dump.basis_b.iter().map(|b| b.label.clone()).collect(),
    }
}

#[derive(Serialize)]
struct ValueOutput {
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    decimal: Option<String>,
}

fn print_value(format: Format, value: &kleintft::Rat, decimal: bool) -> Result<()> {
    let out = ValueOutput {
        value: text::print_rational(value),
        decimal: decimal.then(|| text::decimal_string(value, 12)),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out)?),
        Format::Csv => {
            println!("key,value");
            println!("value,{}", csv_field(&out.value));
            if let Some(d) = out.decimal {
                println!("decimal,{d}");
            }
        }
        Format::Plain => {
            println!("{}", out.value);
            if let Some(d) = out.decimal {
                println!("≈ {d}");
            }
        }
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Parses `--boundary`: semicolon-separated blocks of comma-separated
/// parenthesized diagrams; empty blocks become the trivial boundary field.
fn parse_boundary_blocks(
    text_arg: &str,
    resolver: &BasisResolver,
    alg: &StructureAlgebra,
) -> Result<Vec<Vec<AlgebraElement>>> {
    let mut blocks = Vec::new();
    for block_text in text::split_top_level(text_arg, ';') {
        let mut block = Vec::new();
        for token in text::split_top_level(&block_text, ',') {
            let token = token.trim().to_string();
            if token.is_empty() {
                continue;
            }
            block.push(resolver.resolve_b(&ElementRef::Label(token), &alg.unit_b())?);
        }
        if block.is_empty() {
            // A contour without special points carries the trivial field.
            block.push(alg.unit_b());
        }
        blocks.push(block);
    }
    Ok(blocks)
}

fn build_query(
    genus2: u32,
    orientable: bool,
    interior: Vec<AlgebraElement>,
    mut blocks: Vec<Vec<AlgebraElement>>,
) -> Result<CorrelatorQuery> {
    blocks.sort_by_key(Vec::len);
    let boundary: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let surface = SurfaceType::new(genus2, orientable, interior.len(), boundary)
        .map_err(|e| anyhow!("{e}"))?;
    Ok(CorrelatorQuery { surface, interior, blocks })
}

fn cmd_hurwitz(
    args: GroupArgs,
    genus2: u32,
    orientable: bool,
    interior: Option<String>,
    boundary: Option<String>,
    decimal: bool,
) -> CmdResult {
    let (spec, loaded) = load(&args)?;
    let res = resolver(&loaded);
    let degree = match &spec {
        GroupSpec::Symmetric { n } => *n,
        GroupSpec::Generated { degree, .. } => *degree,
    };

    let mut interior_elems = Vec::new();
    for token in interior.as_deref().unwrap_or("").split(';') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let partition = text::parse_partition(token)?;
        if partition.n() as usize != degree {
            return Err(CodedError::from(anyhow!(
                "branch partition {token:?} sums to {}, expected {degree}",
                partition.n()
            )));
        }
        interior_elems.push(res.resolve_a(&ElementRef::Label(token.to_string()), &loaded.algebra.unit_a())?);
    }
    let blocks = match boundary.as_deref() {
        None => Vec::new(),
        Some(b) => parse_boundary_blocks(b, &res, &loaded.algebra)?,
    };

    let query = build_query(genus2, orientable, interior_elems, blocks)?;
    let value = correlator(&loaded.algebra, &query).map_err(|e| anyhow!("{e}"))?;
    print_value(args.format, &value, decimal)?;
    Ok(())
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn cmd_correlator(args: GroupArgs, query_path: String, decimal: bool) -> CmdResult {
    let (_, loaded) = load(&args)?;
    let res = resolver(&loaded);
    let input: QueryInput = serde_json::from_str(&read_input(&query_path)?)
        .context("parsing query JSON")
        .map_err(CodedError::from)?;

    if input.surface.m != input.interior.len() {
        return Err(CodedError::from(anyhow!(
            "surface.m = {} but {} interior fields given",
            input.surface.m,
            input.interior.len()
        )));
    }
    let interior: Vec<AlgebraElement> = input
        .interior
        .iter()
        .map(|r| res.resolve_a(r, &loaded.algebra.unit_a()))
        .collect::<Result<_>>()?;
    if input.blocks.len() != input.surface.boundary.len() {
        return Err(CodedError::from(anyhow!(
            "{} blocks given for {} boundary contours",
            input.blocks.len(),
            input.surface.boundary.len()
        )));
    }
    let mut blocks: Vec<Vec<AlgebraElement>> = Vec::with_capacity(input.blocks.len());
    for (block, &points) in input.blocks.iter().zip(&input.surface.boundary) {
        if block.len() != points {
            return Err(CodedError::from(anyhow!(
                "block with {} fields declared for a contour with {points} points",
                block.len()
            )));
        }
        if block.is_empty() {
            // A contour without special points carries the trivial field.
            blocks.push(vec![loaded.algebra.unit_b()]);
        } else {
            blocks.push(
                block
                    .iter()
                    .map(|r| res.resolve_b(r, &loaded.algebra.unit_b()))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
    }

    let query =
        build_query(input.surface.genus2, input.surface.orientable, interior, blocks)?;
    let value = correlator(&loaded.algebra, &query).map_err(|e| anyhow!("{e}"))?;
    print_value(args.format, &value, decimal)?;
    Ok(())
}

fn cmd_tables(args: GroupArgs) -> CmdResult {
    let (_, loaded) = load(&args)?;
    match args.format {
        Format::Json | Format::Plain => {
            println!("{}", serde_json::to_string_pretty(&loaded.dump).map_err(anyhow::Error::from)?);
        }
        Format::Csv => {
            let d = &loaded.dump;
            let a = |i: usize| d.basis_a[i].label.clone();
            let b = |i: usize| d.basis_b[i].label.clone();
            println!("row,column,value");
            let emit = |row: String, col: String, v: &str| {
                println!("{},{},{}", csv_field(&row), csv_field(&col), csv_field(v));
            };
            for (i, row) in d.tensors.f_a.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    emit(format!("F_A[{}]", a(i)), a(j), v);
                }
            }
            for (i, row) in d.tensors.f_b.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    emit(format!("F_B[{}]", b(i)), b(j), v);
                }
            }
            for (i, row) in d.tensors.r.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    emit(format!("R[{}]", a(i)), b(j), v);
                }
            }
            for &(i, j, k, ref v) in &d.tensors.s {
                emit(format!("S[{}|{}]", a(i), a(j)), a(k), v);
            }
            for &(i, j, k, ref v) in &d.tensors.t {
                emit(format!("T[{}|{}]", b(i), b(j)), b(k), v);
            }
            for &(i, j, k, ref v) in &d.tensors.r3 {
                emit(format!("R3[{}|{}]", a(i), b(j)), b(k), v);
            }
            for (i, row) in d.tensors.i_a.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    emit(format!("I_A[{}]", a(i)), a(j), v);
                }
            }
            for (i, row) in d.tensors.i_b.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    emit(format!("I_B[{}]", b(i)), b(j), v);
                }
            }
            for (i, v) in d.tensors.d.iter().enumerate() {
                emit("D".to_string(), a(i), v);
            }
            for (i, v) in d.tensors.j_a.iter().enumerate() {
                emit("J_A".to_string(), a(i), v);
            }
            for (i, v) in d.tensors.j_b.iter().enumerate() {
                emit("J_B".to_string(), b(i), v);
            }
        }
    }
    Ok(())
}

fn cmd_verify(args: GroupArgs, samples: usize, exhaustive_cap: usize) -> CmdResult {
    let spec = group_spec(&args)?;
    let (group, dihedral) = spec.build_tables(args.order_cap).map_err(classify_build_error)?;
    let (algebra, cold_dump) =
        context::build_algebra_dump(&spec, &group, &dihedral).map_err(CodedError::from)?;

    let mut all_pass = true;
    let mut report_line = |name: String, pass: bool| {
        println!("{}: {}", name, if pass { "pass" } else { "FAIL" });
        all_pass &= pass;
    };

    // Cache consistency, when requested: a loaded cache must reproduce the
    // cold tensors bit-exactly.
    if args.cache_dir.is_some() {
        let loaded = context::load_or_build(&spec, args.order_cap, args.cache_dir.as_deref())
            .map_err(CodedError::from)?;
        let same = serde_json::to_string(&loaded.dump).map_err(anyhow::Error::from)?
            == serde_json::to_string(&cold_dump).map_err(anyhow::Error::from)?;
        report_line("cache consistency".to_string(), same);
    }

    let (relation_checks, cut_checks, oracle_report) =
        with_thread_pool(args.threads, || {
            let relation_checks: Vec<_> = RELATION_IDS
                .par_iter()
                .map(|&id| algebra.verify_relation(id))
                .collect();
            let cut_checks: Vec<_> = CutRelationId::ALL
                .par_iter()
                .map(|&id| verify_cut_relation(&algebra, id, exhaustive_cap, samples))
                .collect();
            let oracle_report = verify_oracle_equivalence(&group, &dihedral, &algebra);
            (relation_checks, cut_checks, oracle_report)
        })?;

    for check in &relation_checks {
        report_line(format!("relation {} ({})", check.id, check.name), check.pass);
    }
    for check in &cut_checks {
        report_line(
            format!(
                "cut relation {:?} ({}, {} instances{})",
                check.relation,
                check.relation.name(),
                check.instances,
                if check.exhaustive { ", exhaustive" } else { ", sampled" }
            ),
            check.pass(),
        );
    }
    match oracle_report {
        Ok(report) => {
            report_line(
                format!("oracle equivalence ({} entries)", report.entries_checked),
                report.pass(),
            );
        }
        Err(e) => {
            return Err(CodedError::new(EXIT_CAP_EXCEEDED, anyhow!("{e}")));
        }
    }

    if all_pass {
        println!("all checks passed");
        Ok(())
    } else {
        Err(CodedError::new(EXIT_VERIFY_FAILED, anyhow!("verification failed")))
    }
}

#[derive(Serialize)]
struct ClassifyOutput {
    valid: bool,
    violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    crosscaps: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    realized: Option<Vec<RealizeOutcome>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extension_count: Option<String>,
}

#[derive(Serialize)]
struct RealizeOutcome {
    crosscap: Vec<String>,
    relations_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failed_relation: Option<u8>,
}

fn cmd_classify(
    model_path: &str,
    enumerate: bool,
    realize: bool,
    count_extensions: bool,
    format: Format,
) -> CmdResult {
    let input: ModelInput = serde_json::from_str(&read_input(model_path)?)
        .context("parsing model JSON")
        .map_err(CodedError::from)?;
    let model = input.to_model()?;
    let report = model.validate();
    let mut out = ClassifyOutput {
        valid: report.is_valid(),
        violations: report.violations.iter().map(|v| format!("{v}")).collect(),
        crosscaps: None,
        realized: None,
        extension_count: None,
    };

    if report.is_valid() && (enumerate || realize) {
        let crosscaps = model.enumerate_crosscaps().map_err(|e| anyhow!("{e}"))?;
        if realize {
            let mut outcomes = Vec::new();
            for u in &crosscaps {
                let alg = model.realize(u).map_err(|e| anyhow!("{e}"))?;
                let rel = alg.verify_relations();
                outcomes.push(RealizeOutcome {
                    crosscap: u.iter().map(text::print_rational).collect(),
                    relations_pass: rel.pass(),
                    failed_relation: rel.checks.iter().find(|c| !c.pass).map(|c| c.id),
                });
            }
            out.realized = Some(outcomes);
        }
        out.crosscaps =
            Some(crosscaps.iter().map(|u| u.iter().map(text::print_rational).collect()).collect());
    }
    if count_extensions {
        let tail: Vec<kleintft::Rat> =
            (model.k()..model.m()).map(|i| model.lambda_of(i)).collect();
        let count = kleintft::semisimple::count_open_closed_extensions(
            model.m(),
            model.k(),
            &model.block_dims,
            &model.mu,
            &tail,
        );
        out.extension_count = Some(count.to_string());
    }

    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out).map_err(anyhow::Error::from)?),
        Format::Csv | Format::Plain => {
            println!("valid: {}", out.valid);
            for v in &out.violations {
                println!("violation: {v}");
            }
            if let Some(crosscaps) = &out.crosscaps {
                println!("crosscaps: {}", crosscaps.len());
                for u in crosscaps {
                    println!("  [{}]", u.join(", "));
                }
            }
            if let Some(realized) = &out.realized {
                for r in realized {
                    println!(
                        "realized [{}]: {}",
                        r.crosscap.join(", "),
                        if r.relations_pass { "pass" } else { "FAIL" }
                    );
                }
            }
            if let Some(c) = &out.extension_count {
                println!("extensions: {c}");
            }
        }
    }

    let realized_ok = out.realized.as_ref().map_or(true, |r| r.iter().all(|x| x.relations_pass));
    if out.valid && realized_ok {
        Ok(())
    } else {
        Err(CodedError::new(EXIT_VERIFY_FAILED, anyhow!("model checks failed")))
    }
}

#[derive(Serialize)]
struct OracleOutput {
    count: String,
    homomorphisms: u64,
    elapsed_ms: u128,
}

fn class_indices(group: &GroupTable, text_arg: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for token in text_arg.split(';') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let partition = text::parse_partition(token)?;
        let idx = group
            .class_by_cycle_type(&partition)
            .ok_or_else(|| anyhow!("no unique class with cycle type {token:?}"))?;
        out.push(idx);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_oracle(
    args: GroupArgs,
    surface: OracleSurface,
    genus2: Option<u32>,
    orientable: Option<bool>,
    classes: Option<String>,
    corners: Option<String>,
    alpha: Option<String>,
    beta: Option<String>,
    cap: Option<u128>,
) -> CmdResult {
    let spec = group_spec(&args)?;
    let (group, dihedral) = spec.build_tables(args.order_cap).map_err(classify_build_error)?;
    let started = Instant::now();

    let cap_value = cap.unwrap_or(DEFAULT_LOOP_CAP);
    let map_oracle_err = |e: OracleError| match e {
        OracleError::InfeasibleSize { .. } => CodedError::new(EXIT_CAP_EXCEEDED, anyhow!("{e}")),
        _ => CodedError::from(anyhow!("{e}")),
    };

    let (count, homs) = match surface {
        OracleSurface::Closed => {
            let genus2 = genus2.ok_or_else(|| anyhow!("--genus2 required for closed surfaces"))?;
            let orientable =
                orientable.ok_or_else(|| anyhow!("--orientable required for closed surfaces"))?;
            let class_list = class_indices(&group, classes.as_deref().unwrap_or(""))?;
            let spec =
                ClosedCountSpec::new(&group, genus2, orientable, &class_list, !class_list.is_empty())
                    .map_err(map_oracle_err)?;
            if spec.estimate() > cap_value {
                return Err(map_oracle_err(OracleError::InfeasibleSize {
                    estimate: spec.estimate(),
                    cap: cap_value,
                }));
            }
            let outer = spec.outer_size();
            let homs_inner: u64 = with_thread_pool(args.threads, || {
                let chunks = rayon::current_num_threads().max(1);
                let step = outer.div_ceil(chunks).max(1);
                (0..outer)
                    .into_par_iter()
                    .step_by(step)
                    .map(|start| spec.count_homs_in(start..(start + step).min(outer)))
                    .sum()
            })?;
            spec.finish(homs_inner)
        }
        OracleSurface::Polygon => {
            let corner_arg =
                corners.ok_or_else(|| anyhow!("--corners required for polygons"))?;
            let mut corner_idx = Vec::new();
            for token in text::split_top_level(&corner_arg, ';') {
                let token = token.trim();
                if token.is_empty() {
                    continue;
                }
                let diagram = text::parse_dihedral(text::unparenthesize(token), None)?;
                let idx = dihedral.class_by_diagram(&diagram).map_err(|e| anyhow!("{e}"))?;
                corner_idx.push(idx);
            }
            count_polygon(&group, &dihedral, &corner_idx, Some(cap_value)).map_err(map_oracle_err)?
        }
        OracleSurface::Disc => {
            let alpha_arg = alpha.ok_or_else(|| anyhow!("--alpha required for the disc"))?;
            let beta_arg = beta.ok_or_else(|| anyhow!("--beta required for the disc"))?;
            let alpha_idx = class_indices(&group, &alpha_arg)?
                .into_iter()
                .next()
                .ok_or_else(|| anyhow!("--alpha is empty"))?;
            let diagram = text::parse_dihedral(text::unparenthesize(&beta_arg), None)?;
            let beta_idx = dihedral.class_by_diagram(&diagram).map_err(|e| anyhow!("{e}"))?;
            count_disc_mixed(&group, &dihedral, alpha_idx, beta_idx).map_err(map_oracle_err)?
        }
    };

    let out = OracleOutput {
        count: text::print_rational(&count),
        homomorphisms: homs,
        elapsed_ms: started.elapsed().as_millis(),
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out).map_err(anyhow::Error::from)?),
        Format::Csv => {
            println!("key,value");
            println!("count,{}", csv_field(&out.count));
            println!("homomorphisms,{}", out.homomorphisms);
            println!("elapsed_ms,{}", out.elapsed_ms);
        }
        Format::Plain => {
            println!("{}", out.count);
            println!("homomorphisms: {}", out.homomorphisms);
            println!("elapsed_ms: {}", out.elapsed_ms);
        }
    }
    Ok(())
}
