//! Seeded fuzzing of the gluing checks. Instance `i` draws from its own
//! generator seeded by `seed + i`, so results do not depend on thread count.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::checks::{run_checks, CheckId, CheckReport, Status};
use super::random::{random_gluing, random_source_sink, GluingSpec, RandomSpec, SourceSinkShape};
use crate::format;
use crate::gluing::glue;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FuzzMode {
    /// Arbitrary gluable pairs of arbitrary random algebras.
    General,
    /// Cycles through the source-sink generators and arbitrary gluings.
    Mixed,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub assumption_violated: usize,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::NotApplicable => self.not_applicable += 1,
            Status::AssumptionViolated => self.assumption_violated += 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FuzzFailure {
    pub index: u64,
    pub report: CheckReport,
}

#[derive(Clone, Debug)]
pub struct FuzzSummary {
    pub seed: u64,
    pub count: u64,
    pub tallies: BTreeMap<CheckId, Tally>,
    pub failures: Vec<FuzzFailure>,
    /// Gluings rejected by the construction itself, with their reproduction.
    pub glue_errors: Vec<(u64, String)>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.glue_errors.is_empty()
    }

    pub fn tally(&self, id: CheckId) -> Tally {
        self.tallies.get(&id).cloned().unwrap_or_default()
    }
}

pub fn draw(seed: u64, index: u64, mode: FuzzMode, spec: &RandomSpec) -> GluingSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index));
    match (mode, index % 5) {
        (FuzzMode::Mixed, 1) => random_source_sink(&mut rng, spec, SourceSinkShape::SameBlock, false),
        (FuzzMode::Mixed, 2) => random_source_sink(&mut rng, spec, SourceSinkShape::DifferentBlocks, false),
        (FuzzMode::Mixed, 3) => random_source_sink(&mut rng, spec, SourceSinkShape::SameBlock, true),
        _ => random_gluing(&mut rng, spec),
    }
}

pub fn run_fuzz(seed: u64, count: u64, mode: FuzzMode, spec: &RandomSpec, checks: &[CheckId]) -> FuzzSummary {
    let results: Vec<(u64, Result<Vec<CheckReport>, String>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let s = draw(seed, i, mode, spec);
            let out = match glue(&s.algebra, s.alpha, s.beta) {
                Ok(g) => Ok(run_checks(&g, checks)),
                Err(e) => {
                    let q = s.algebra.quiver();
                    Err(format!(
                        "{e}\n{}# glue --alpha {} --beta {}\n",
                        format::print(&s.algebra),
                        q.arrow_name(s.alpha),
                        q.arrow_name(s.beta)
                    ))
                }
            };
            (i, out)
        })
        .collect();
    let mut summary = FuzzSummary {
        seed,
        count,
        tallies: BTreeMap::new(),
        failures: Vec::new(),
        glue_errors: Vec::new(),
    };
    for (i, r) in results {
        match r {
            Ok(reports) => {
                for report in reports {
                    summary.tallies.entry(report.check).or_default().add(report.status);
                    if report.status == Status::Fail {
                        summary.failures.push(FuzzFailure { index: i, report });
                    }
                }
            }
            Err(e) => summary.glue_errors.push((i, e)),
        }
    }
    summary
}
