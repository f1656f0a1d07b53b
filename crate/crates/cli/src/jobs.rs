//! The five jobs behind the CLI subcommands, with their machine-readable
//! output records and plain-text rendering.

use crate::error::CliError;
use crate::loader::{self, LoadedGroup};
use omk_core::exactnum::rat_int;
use omk_core::invariants::{
    discrepancy, klt_nc, mckay_betti, orbifold_weight_of_sectors, stringy_nc,
};
use omk_core::matgroup::FiniteMatrixGroup;
use omk_core::sectors::{inertia_decomposition, TwistedSector};
use omk_core::MotivicWeight;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Job {
    Sectors,
    McKay,
    Discrepancy,
    OrbifoldWeight,
    Stringy,
}

impl Job {
    pub fn name(self) -> &'static str {
        match self {
            Job::Sectors => "sectors",
            Job::McKay => "mckay",
            Job::Discrepancy => "discrepancy",
            Job::OrbifoldWeight => "orbifold-weight",
            Job::Stringy => "stringy",
        }
    }
}

/// Envelope of every command's output document.
#[derive(Debug, Clone, Serialize)]
pub struct JobResult {
    pub schema: &'static str,
    pub command: &'static str,
    pub inputs_digest: String,
    pub outputs: JobOutput,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum JobOutput {
    Sectors(SectorsOutput),
    McKay(McKayOutput),
    Discrepancy(DiscrepancyOutput),
    OrbifoldWeight(OrbifoldWeightOutput),
    Stringy(StringyOutput),
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub degree: usize,
    pub cyclotomic_order: u64,
    pub class_count: usize,
    pub in_sl: bool,
}

impl GroupSummary {
    fn of(group: &FiniteMatrixGroup) -> GroupSummary {
        GroupSummary {
            order: group.order(),
            degree: group.degree(),
            cyclotomic_order: group.cyclotomic_order(),
            class_count: group.class_count(),
            in_sl: group.is_subgroup_of_sl(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorRow {
    pub class_index: usize,
    pub class_size: usize,
    pub element_order: u64,
    pub exponent_multiplicities: Vec<u64>,
    pub age: String,
    pub shift: String,
    pub fixed_dim: u64,
    pub centralizer_order: u64,
}

impl SectorRow {
    fn of(s: &TwistedSector) -> SectorRow {
        SectorRow {
            class_index: s.class_index,
            class_size: s.class_size,
            element_order: s.order,
            exponent_multiplicities: s.exponent_mult.clone(),
            age: s.age.to_string(),
            shift: s.shift.to_string(),
            fixed_dim: s.fixed_dim,
            centralizer_order: s.centralizer_order,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorsOutput {
    pub group: GroupSummary,
    pub sectors: Vec<SectorRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BettiRow {
    /// Cohomological degree `i = 2 * age`, as an exact rational string.
    pub i: String,
    pub n: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct McKayOutput {
    pub group: GroupSummary,
    pub betti: Vec<BettiRow>,
    pub total: u64,
    pub in_sl: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyOutput {
    pub group: GroupSummary,
    pub discrepancy: String,
    pub min_age: String,
    pub minimizing_class: usize,
    pub minimizing_class_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbifoldWeightOutput {
    pub group: GroupSummary,
    pub weight: String,
    pub dim: String,
    pub euler_at_one: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StringyOutput {
    pub weight: String,
    pub dim: String,
    pub klt: bool,
    /// Specialization at `L = 1`, present when the weight is a polynomial.
    pub euler_at_one: Option<String>,
}

/// Run one job against an input document.
pub fn run_job(job: Job, file: &Path, cap: usize) -> Result<JobResult, CliError> {
    match job {
        Job::Stringy => run_stringy(file),
        _ => run_group_job(job, file, cap),
    }
}

fn run_group_job(job: Job, file: &Path, cap: usize) -> Result<JobResult, CliError> {
    let LoadedGroup {
        group,
        inputs_digest,
    } = loader::load_group_file(file, cap)?;
    let mut warnings = Vec::new();
    let outputs = match job {
        Job::Sectors => {
            let sectors = inertia_decomposition(&group);
            JobOutput::Sectors(SectorsOutput {
                group: GroupSummary::of(&group),
                sectors: sectors.iter().map(SectorRow::of).collect(),
            })
        }
        Job::McKay => {
            let betti = mckay_betti(&group);
            if !betti.in_sl {
                warnings.push(
                    "group is not contained in SL; the counts are defined, but their \
                     reading as Betti numbers of a crepant resolution is not"
                        .to_string(),
                );
            }
            JobOutput::McKay(McKayOutput {
                group: GroupSummary::of(&group),
                total: betti.total(),
                in_sl: betti.in_sl,
                betti: betti
                    .counts
                    .iter()
                    .map(|(i, &n)| BettiRow {
                        i: i.to_string(),
                        n,
                    })
                    .collect(),
            })
        }
        Job::Discrepancy => {
            let report = discrepancy(&group)?;
            JobOutput::Discrepancy(DiscrepancyOutput {
                group: GroupSummary::of(&group),
                discrepancy: report.discrepancy.to_string(),
                min_age: report.min_age.to_string(),
                minimizing_class: report.minimizing_class,
                minimizing_class_size: group.class_sizes()[report.minimizing_class],
            })
        }
        Job::OrbifoldWeight => {
            let sectors = inertia_decomposition(&group);
            let weight = orbifold_weight_of_sectors(group.degree() as u64, &sectors);
            let euler = weight
                .eval(&rat_int(1))
                .expect("orbifold weight is a polynomial");
            JobOutput::OrbifoldWeight(OrbifoldWeightOutput {
                group: GroupSummary::of(&group),
                weight: weight.to_string(),
                dim: weight.dim().to_string(),
                euler_at_one: euler.to_string(),
            })
        }
        Job::Stringy => unreachable!("handled by run_stringy"),
    };
    Ok(JobResult {
        schema: loader::SCHEMA,
        command: job.name(),
        inputs_digest,
        outputs,
        warnings,
    })
}

fn run_stringy(file: &Path) -> Result<JobResult, CliError> {
    let (pair, inputs_digest) = loader::load_pair_file(file)?;
    let weight = stringy_nc(&pair);
    // the stored coefficients are relative-canonical; the KLT test reads
    // divisor coefficients, so it sees their negatives
    let klt = klt_nc(&pair.klt_view(), false);
    let euler_at_one = match &weight {
        MotivicWeight::Infinite => None,
        w => w.poly_coeffs().ok().map(|_| {
            w.eval(&rat_int(1))
                .expect("polynomial has no pole")
                .to_string()
        }),
    };
    Ok(JobResult {
        schema: loader::SCHEMA,
        command: Job::Stringy.name(),
        inputs_digest,
        outputs: JobOutput::Stringy(StringyOutput {
            weight: weight.to_string(),
            dim: weight.dim().to_string(),
            klt,
            euler_at_one,
        }),
        warnings: Vec::new(),
    })
}

impl JobResult {
    /// Deterministic machine form: pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("serializable output");
        text.push('\n');
        text
    }

    /// Plain-text rendering for terminals.
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        match &self.outputs {
            JobOutput::Sectors(o) => {
                writeln_group(&mut out, &o.group);
                writeln!(
                    out,
                    "{:<6} {:<5} {:<5} {:<10} {:<10} {:<4} {:<6} exponent multiplicities",
                    "class", "size", "ord", "age", "shift", "fix", "|C_g|"
                )
                .unwrap();
                for s in &o.sectors {
                    writeln!(
                        out,
                        "{:<6} {:<5} {:<5} {:<10} {:<10} {:<4} {:<6} {:?}",
                        s.class_index,
                        s.class_size,
                        s.element_order,
                        s.age,
                        s.shift,
                        s.fixed_dim,
                        s.centralizer_order,
                        s.exponent_multiplicities
                    )
                    .unwrap();
                }
            }
            JobOutput::McKay(o) => {
                writeln_group(&mut out, &o.group);
                for row in &o.betti {
                    writeln!(out, "n_{} = {}", row.i, row.n).unwrap();
                }
                writeln!(out, "total classes = {}", o.total).unwrap();
                writeln!(out, "in SL = {}", o.in_sl).unwrap();
            }
            JobOutput::Discrepancy(o) => {
                writeln_group(&mut out, &o.group);
                writeln!(out, "discrepancy = {}", o.discrepancy).unwrap();
                writeln!(
                    out,
                    "minimizing class = {} (size {}, age {})",
                    o.minimizing_class, o.minimizing_class_size, o.min_age
                )
                .unwrap();
            }
            JobOutput::OrbifoldWeight(o) => {
                writeln_group(&mut out, &o.group);
                writeln!(out, "orbifold weight = {}", o.weight).unwrap();
                writeln!(out, "dim = {}", o.dim).unwrap();
                writeln!(out, "value at L = 1: {}", o.euler_at_one).unwrap();
            }
            JobOutput::Stringy(o) => {
                writeln!(out, "stringy invariant = {}", o.weight).unwrap();
                writeln!(out, "dim = {}", o.dim).unwrap();
                writeln!(out, "KLT = {}", o.klt).unwrap();
                match &o.euler_at_one {
                    Some(v) => writeln!(out, "value at L = 1: {v}").unwrap(),
                    None => writeln!(out, "value at L = 1: not a polynomial").unwrap(),
                }
            }
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        out
    }
}

fn writeln_group(out: &mut String, g: &GroupSummary) {
    writeln!(
        out,
        "group: order {}, degree {}, cyclotomic order {}, {} classes, in SL = {}",
        g.order, g.degree, g.cyclotomic_order, g.class_count, g.in_sl
    )
    .unwrap();
}
