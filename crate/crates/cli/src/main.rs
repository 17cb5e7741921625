use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use bmzs_core::analysis::pipeline::{basis_text, eliminate_system, run_weight, WeightRun};
use bmzs_core::analysis::tables::{
    bk_table, depth_table, expected_depth_table, family_table, Table,
};
use bmzs_core::analysis::{
    expected_tables, fibonacci_law_check, format_combination, graded_reduced_form, reduced_form,
    verify_hoffman_basis,
};
use bmzs_core::config::{Config, THREADS_ENV};
use bmzs_core::elimination::{
    dense_eliminate_oracle, EliminationOptions, DENSE_ORACLE_MAX_COLUMNS,
};
use bmzs_core::relations::{enumerate_pairs, generate_system, Family, GeneratorConfig, PairFamily};
use bmzs_core::{LinearSystem, MultIndex};

#[derive(Parser, Debug)]
#[command(
    name = "bmzs",
    version,
    about = "Binary double shuffle systems over GF(2)"
)]
struct Cli {
    /// key=value settings file (threads, memo_max_degree)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads for relation generation
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate the binary relation system of one weight
    Gen(GenArgs),
    /// Eliminate a system file and print its dimensions
    Solve(SolveArgs),
    /// Dimension tables over a range of weights
    Report(ReportArgs),
    /// Check the Hoffman basis and the dense oracle over a range of weights
    Verify(VerifyArgs),
    /// Reduced form of one index in terms of Hoffman indices
    Reduce(ReduceArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    weight: u32,
    #[arg(long, default_value = "eds")]
    family: Family,
    /// Output system file; `<out>.pairs` and `<out>.columns` are written next to it
    #[arg(long)]
    out: PathBuf,
    /// Number of independent generation blocks
    #[arg(long, default_value_t = 1)]
    blocks: usize,
    /// Write the compact binary layout instead of text
    #[arg(long)]
    compact: bool,
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Cross-check rank and pivot columns against dense elimination
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    dump_pivots: Option<PathBuf>,
    #[arg(long)]
    dump_basis: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    /// Per-depth coranks, one row per weight
    Depth,
    /// One corank column per family
    Family,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ExpectedKind {
    /// Broadhurst-Kreimer dimensions
    Bk,
    /// Depth-graded Hoffman counts
    Depth,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Inclusive weight range such as `2..12`, or a single weight
    #[arg(long, default_value = "2..12")]
    weights: String,
    /// Comma-separated families
    #[arg(long, default_value = "eds", value_delimiter = ',')]
    family: Vec<Family>,
    #[arg(long, value_enum)]
    table: Option<TableKind>,
    /// Print an expected-value table from the generating series only
    #[arg(long, value_enum)]
    expected: Option<ExpectedKind>,
    #[arg(long)]
    markdown: bool,
    /// Also write the table as TSV
    #[arg(long)]
    tsv: Option<PathBuf>,
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "2..12")]
    weights: String,
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// Admissible index such as `3,1`
    #[arg(long)]
    index: MultIndex,
}

fn parse_weights(text: &str) -> Result<Vec<u32>> {
    let text = text.trim();
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .with_context(|| format!("bad weight `{s}`"))
    };
    if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
        if a > b {
            bail!("empty weight range {text}");
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(parse).collect()
}

/// Rough memory needed to hold the system of one weight, from the pair
/// count and an average row density of one column in sixteen.
fn memory_estimate(family: PairFamily) -> u64 {
    let pairs = enumerate_pairs(family).len() as u64;
    let columns = 1u64 << family.weight.saturating_sub(2);
    pairs * (columns / 16).max(1) * 4
}

fn guard_large(family: PairFamily, allow: bool) -> Result<()> {
    let large = family.weight >= 18 || (family.family == Family::Knt && family.weight >= 21);
    if !large {
        return Ok(());
    }
    let gib = memory_estimate(family) as f64 / f64::from(1u32 << 30);
    eprintln!(
        "{} at weight {}: rough memory estimate {gib:.1} GiB",
        family.family, family.weight
    );
    if !allow {
        bail!("weight {} needs --allow-large", family.weight);
    }
    Ok(())
}

fn generator_config(cli: &Cli, blocks: usize) -> Result<GeneratorConfig> {
    let file = match &cli.config {
        Some(p) => Config::load(p).with_context(|| format!("reading {}", p.display()))?,
        None => Config::default(),
    };
    let threads = cli.threads.unwrap_or(file.threads);
    if threads == 0 {
        bail!("--threads must be positive");
    }
    Ok(GeneratorConfig {
        threads,
        memo_max_degree: file.memo_max_degree,
        blocks: blocks.max(1),
    })
}

fn sidecar(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn emit(table: &Table, markdown: bool, tsv: Option<&Path>) -> Result<()> {
    if markdown {
        print!("{}", table.to_markdown());
    } else {
        print!("{}", table.to_aligned());
    }
    if let Some(p) = tsv {
        fs::write(p, table.to_tsv()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn cmd_gen(cli: &Cli, args: &GenArgs) -> Result<bool> {
    let family = PairFamily::new(args.family, args.weight);
    guard_large(family, args.allow_large)?;
    let sys = generate_system(family, &generator_config(cli, args.blocks)?)?;
    if args.compact {
        fs::write(&args.out, sys.compact_bytes())?;
    } else {
        sys.write_text_file(&args.out)?;
    }
    fs::write(sidecar(&args.out, "pairs"), sys.pairs_text())?;
    fs::write(sidecar(&args.out, "columns"), sys.columns().dump())?;
    println!(
        "wrote {} rows over {} columns to {}",
        sys.rows().len(),
        sys.num_columns(),
        args.out.display()
    );
    Ok(true)
}

fn load_system(path: &Path) -> Result<LinearSystem> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let mut sys = if bytes.starts_with(b"MZF2") {
        LinearSystem::from_compact_bytes(&bytes)?
    } else {
        LinearSystem::parse_text(bytes.as_slice())?
    };
    let pairs = sidecar(path, "pairs");
    if pairs.exists() {
        sys.attach_pairs(fs::File::open(&pairs)?)
            .with_context(|| format!("reading {}", pairs.display()))?;
    }
    Ok(sys)
}

fn cmd_solve(args: &SolveArgs) -> Result<bool> {
    let sys = load_system(&args.input)?;
    let run = eliminate_system(sys, EliminationOptions::default());
    let rep = &run.report;
    println!(
        "weight {} ({} rows, {} columns)",
        rep.weight,
        run.system.rows().len(),
        rep.columns
    );
    println!("rank {}  corank {}", rep.rank, rep.corank);
    let depths: Vec<String> = (1..rep.depth_dims.len())
        .filter(|&r| rep.depth_dims[r] > 0)
        .map(|r| format!("r={r}:{}", rep.depth_dims[r]))
        .collect();
    println!("depth dims {}", depths.join(" "));
    println!(
        "direct pivots {}  conflict pivots {}",
        run.stats.direct, run.stats.conflicts
    );
    if let Some(p) = &args.dump_pivots {
        fs::write(p, run.pivots.dump())?;
    }
    if let Some(p) = &args.dump_basis {
        fs::write(p, basis_text(&run))?;
    }
    let mut ok = true;
    if args.oracle {
        let dense = dense_eliminate_oracle(&run.system)?;
        let agree = dense.rank == rep.rank && dense.pivot_columns == run.pivots.pivot_columns();
        println!("oracle {}", if agree { "agrees" } else { "MISMATCH" });
        ok &= agree;
    }
    Ok(ok)
}

fn runs_for(
    cli: &Cli,
    family: Family,
    weights: &[u32],
    allow_large: bool,
) -> Result<Vec<WeightRun>> {
    let config = generator_config(cli, 1)?;
    weights
        .iter()
        .filter(|&&k| k >= 2)
        .map(|&k| {
            let fam = PairFamily::new(family, k);
            guard_large(fam, allow_large)?;
            Ok(run_weight(fam, &config, EliminationOptions::default())?)
        })
        .collect()
}

fn cmd_report(cli: &Cli, args: &ReportArgs) -> Result<bool> {
    let weights = parse_weights(&args.weights)?;
    let k_max = weights.iter().copied().max().unwrap_or(0);
    let series = expected_tables(k_max, k_max / 2 + 1)?;
    if let Some(kind) = args.expected {
        let table = match kind {
            ExpectedKind::Bk => bk_table(&series, &weights),
            ExpectedKind::Depth => expected_depth_table(&series, &weights),
        };
        emit(&table, args.markdown, args.tsv.as_deref())?;
        return Ok(true);
    }
    let table_kind = args.table.unwrap_or(if args.family.len() > 1 {
        TableKind::Family
    } else {
        TableKind::Depth
    });
    let mut ok = true;
    let mut coranks = Vec::new();
    let mut sys_weights = Vec::new();
    for &family in &args.family {
        let runs = runs_for(cli, family, &weights, args.allow_large)?;
        sys_weights = runs.iter().map(|r| r.report.weight).collect();
        if family == Family::Eds {
            for r in &runs {
                let k = r.report.weight;
                let depth_ok = (0..r.report.depth_dims.len())
                    .all(|d| r.report.depth_dim(d) as u64 == series.depth(k, d as u32));
                if r.report.corank as u64 != series.total(k) || !depth_ok {
                    eprintln!("weight {k}: computed dimensions differ from the expected table");
                    ok = false;
                }
            }
        }
        let dims: Vec<(u32, usize)> = runs
            .iter()
            .map(|r| (r.report.weight, r.report.corank))
            .collect();
        let law = fibonacci_law_check(family, &dims);
        if law.holds() == Some(false) {
            eprintln!(
                "{family}: recurrence exceptions {:?}, expected {:?}",
                law.exceptions,
                law.expected_exceptions.unwrap_or_default()
            );
            ok = false;
        }
        if table_kind == TableKind::Depth {
            let reports: Vec<_> = runs.iter().map(|r| r.report.clone()).collect();
            emit(&depth_table(&reports), args.markdown, args.tsv.as_deref())?;
        }
        coranks.push(runs.iter().map(|r| r.report.corank).collect::<Vec<_>>());
    }
    if table_kind == TableKind::Family {
        let table = family_table(&args.family, &sys_weights, &coranks, &series);
        emit(&table, args.markdown, args.tsv.as_deref())?;
    }
    Ok(ok)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<bool> {
    let weights = parse_weights(&args.weights)?;
    let mut ok = true;
    for run in runs_for(cli, Family::Eds, &weights, args.allow_large)? {
        let k = run.report.weight;
        let check = verify_hoffman_basis(&run.report);
        let oracle = if run.system.num_columns() <= DENSE_ORACLE_MAX_COLUMNS {
            let dense = dense_eliminate_oracle(&run.system)?;
            Some(dense.pivot_columns == run.pivots.pivot_columns())
        } else {
            None
        };
        let line_ok = check.passed && oracle != Some(false);
        println!(
            "weight {k}: hoffman {} ({} pivotless), oracle {}",
            if check.passed { "pass" } else { "FAIL" },
            run.report.pivotless.len(),
            match oracle {
                Some(true) => "agrees",
                Some(false) => "MISMATCH",
                None => "skipped",
            }
        );
        if !check.passed {
            let show = |v: &[MultIndex]| {
                v.iter()
                    .map(|m| format!("({m})"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            println!("  pivotless non-Hoffman: {}", show(&check.extra));
            println!("  Hoffman with pivot: {}", show(&check.covered));
        }
        ok &= line_ok;
    }
    Ok(ok)
}

fn cmd_reduce(cli: &Cli, args: &ReduceArgs) -> Result<bool> {
    let k = &args.index;
    if !k.is_admissible() || k.is_empty() {
        bail!("({k}) is not admissible");
    }
    let fam = PairFamily::new(Family::Eds, k.weight());
    guard_large(fam, false)?;
    let run = run_weight(
        fam,
        &generator_config(cli, 1)?,
        EliminationOptions::default(),
    )?;
    let check = verify_hoffman_basis(&run.report);
    if !check.passed {
        bail!(
            "pivotless columns at weight {} are not the Hoffman indices",
            k.weight()
        );
    }
    let cols = run.system.columns();
    let full = reduced_form(k, cols, &run.pivots)?;
    let graded = graded_reduced_form(k, cols, &run.pivots)?;
    println!("reduced ({k}) = {}", format_combination(&full, cols));
    println!("graded  ({k}) = {}", format_combination(&graded, cols));
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(&cli, a),
        Command::Solve(a) => cmd_solve(a),
        Command::Report(a) => cmd_report(&cli, a),
        Command::Verify(a) => cmd_verify(&cli, a),
        Command::Reduce(a) => cmd_reduce(&cli, a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
