//! Generation, elimination and reporting of one weight, with artifacts on disk.

use std::fs;
use std::path::{Path, PathBuf};

use super::tables::depth_table;
use super::{extract_relation_basis, verify_hoffman_basis, DimensionReport, HoffmanCheck};
use crate::elimination::{
    forward_eliminate_rows, EliminationOptions, EliminationStats, Gf2PivotSequence,
};
use crate::error::Result;
use crate::relations::{generate_system, GeneratorConfig, PairFamily};
use crate::system::{Gf2Combination, LinearSystem};

/// Everything computed for one weight and family.
#[derive(Clone, Debug)]
pub struct WeightRun {
    pub system: LinearSystem,
    pub pivots: Gf2PivotSequence,
    pub stats: EliminationStats,
    pub report: DimensionReport,
}

impl WeightRun {
    pub fn hoffman_check(&self) -> HoffmanCheck {
        verify_hoffman_basis(&self.report)
    }
}

/// Generates and eliminates one system in memory.
pub fn run_weight(
    family: PairFamily,
    config: &GeneratorConfig,
    options: EliminationOptions,
) -> Result<WeightRun> {
    let system = generate_system(family, config)?;
    Ok(eliminate_system(system, options))
}

pub fn eliminate_system(system: LinearSystem, options: EliminationOptions) -> WeightRun {
    let rows: Vec<Gf2Combination> = system.combinations().cloned().collect();
    let (pivots, stats) = forward_eliminate_rows(&rows, system.num_columns() as u32, options);
    let report = DimensionReport::from_pivots(system.columns(), system.family(), &pivots);
    WeightRun {
        system,
        pivots,
        stats,
        report,
    }
}

/// Paths written by [`run_pipeline`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifacts {
    pub system: PathBuf,
    pub columns: PathBuf,
    pub pairs: PathBuf,
    pub pivots: PathBuf,
    pub basis: PathBuf,
    pub report_tsv: PathBuf,
    pub report_txt: PathBuf,
}

impl Artifacts {
    pub fn in_dir(dir: &Path, family: PairFamily) -> Self {
        let stem = format!("{}_k{}", family.family, family.weight);
        let p = |ext: &str| dir.join(format!("{stem}.{ext}"));
        Artifacts {
            system: p("txt"),
            columns: p("columns"),
            pairs: p("pairs"),
            pivots: p("pivots"),
            basis: p("basis"),
            report_tsv: p("report.tsv"),
            report_txt: p("report.txt"),
        }
    }
}

/// Runs generation, elimination and reporting for one weight and writes the
/// system, column table, provenance, pivot dump, relation basis and the
/// dimension report into `dir`.
pub fn run_pipeline(
    family: PairFamily,
    config: &GeneratorConfig,
    dir: &Path,
) -> Result<(WeightRun, Artifacts)> {
    let run = run_weight(family, config, EliminationOptions::default())?;
    fs::create_dir_all(dir)?;
    let art = Artifacts::in_dir(dir, family);
    run.system.write_text_file(&art.system)?;
    fs::write(&art.columns, run.system.columns().dump())?;
    fs::write(&art.pairs, run.system.pairs_text())?;
    fs::write(&art.pivots, run.pivots.dump())?;
    fs::write(&art.basis, basis_text(&run))?;
    let table = depth_table(std::slice::from_ref(&run.report));
    fs::write(&art.report_tsv, table.to_tsv())?;
    fs::write(&art.report_txt, table.to_aligned())?;
    Ok((run, art))
}

/// One `row | K | L` line per basis relation, rows 1-based.
pub fn basis_text(run: &WeightRun) -> String {
    let mut out = String::new();
    for b in extract_relation_basis(&run.system, &run.pivots) {
        match &b.pair {
            Some((k, l)) => out.push_str(&format!("{} | {k} | {l}\n", b.row + 1)),
            None => out.push_str(&format!("{} | - | -\n", b.row + 1)),
        }
    }
    out
}
