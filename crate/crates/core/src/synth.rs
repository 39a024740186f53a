//! Synthetic experiments: random contexts, random fixed-fanout groupings and
//! sweeps measuring how much generalization shrinks the lattice.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::generalize::{generalize_attributes, Axis, GroupingScheme, Mode};
use crate::lattice::{count_concepts_with, DEFAULT_CONCEPT_CEILING};

pub const SWEEP_CSV_HEADER: &str = "seed,nG,nM,density,fanout,mode,size_before,size_after,ratio,censored";

/// Independent Bernoulli(`density`) incidences from a seeded ChaCha8
/// stream, row by row. `density = 1` sets every bit.
pub fn generate_context(n_g: usize, n_m: usize, density: f64, seed: u64) -> Result<FormalContext> {
    if n_g == 0 || n_m == 0 {
        return Err(Error::argument("synthetic contexts need at least one object and one attribute"));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::argument(format!("density {density} is not in (0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FormalContext::from_fn(
        format!("synth-{n_g}x{n_m}-{density}-{seed}"),
        (1..=n_g).map(|i| format!("g{i}")).collect(),
        (1..=n_m).map(|i| format!("m{i}")).collect(),
        |_, _| rng.random_bool(density),
    )
}

/// Shuffles the attributes and cuts them into consecutive groups of
/// `fanout` (the last one possibly smaller).
pub fn random_grouping(n_m: usize, fanout: usize, mode: Mode, seed: u64) -> Result<GroupingScheme> {
    if fanout < 2 || fanout > n_m {
        return Err(Error::argument(format!("fanout {fanout} is not in 2..={n_m}")));
    }
    let mut order: Vec<usize> = (0..n_m).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut scheme = GroupingScheme::new(Axis::Attributes, mode, n_m, false);
    for (k, chunk) in order.chunks(fanout).enumerate() {
        let members = BitSet::from_indices(n_m, chunk.iter().copied()).expect("indices below n_m");
        scheme.push(&format!("s{}", k + 1), members, None)?;
    }
    Ok(scheme)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepGrid {
    pub n_g: Vec<usize>,
    pub n_m: Vec<usize>,
    pub density: Vec<f64>,
    pub fanout: Vec<usize>,
    pub mode: Vec<Mode>,
    pub seeds: Vec<u64>,
    pub ceiling: usize,
}

impl SweepGrid {
    /// One shape and density, several fanouts, seeds `0..n_seeds`.
    pub fn single(n_g: usize, n_m: usize, density: f64, fanout: &[usize], mode: Mode, n_seeds: u64) -> Self {
        SweepGrid {
            n_g: vec![n_g],
            n_m: vec![n_m],
            density: vec![density],
            fanout: fanout.to_vec(),
            mode: vec![mode],
            seeds: (0..n_seeds).collect(),
            ceiling: DEFAULT_CONCEPT_CEILING,
        }
    }

    fn jobs(&self) -> Vec<Job> {
        let mut out = Vec::new();
        for &n_g in &self.n_g {
            for &n_m in &self.n_m {
                for &density in &self.density {
                    for &fanout in &self.fanout {
                        for &mode in &self.mode {
                            for &seed in &self.seeds {
                                out.push(Job { n_g, n_m, density, fanout, mode, seed });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
struct Job {
    n_g: usize,
    n_m: usize,
    density: f64,
    fanout: usize,
    mode: Mode,
    seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub seed: u64,
    pub n_g: usize,
    pub n_m: usize,
    pub density: f64,
    pub fanout: usize,
    pub mode: Mode,
    /// `None` when the count hit the ceiling.
    pub size_before: Option<usize>,
    pub size_after: Option<usize>,
    pub censored: bool,
}

impl SweepRecord {
    pub fn ratio(&self) -> Option<f64> {
        Some(self.size_before? as f64 / self.size_after? as f64)
    }

    pub fn to_csv_line(&self) -> String {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.seed,
            self.n_g,
            self.n_m,
            self.density,
            self.fanout,
            self.mode,
            opt(self.size_before),
            opt(self.size_after),
            self.ratio().map(|r| format!("{r:.6}")).unwrap_or_default(),
            self.censored
        )
    }
}

/// The grouping seed is derived from the context seed and the fanout, so
/// every fanout sees the same random context for a given seed.
fn grouping_seed(seed: u64, fanout: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ fanout as u64
}

fn count_or_censor(ctx: &FormalContext, ceiling: usize) -> Result<Option<usize>> {
    match count_concepts_with(ctx, ceiling) {
        Ok(n) => Ok(Some(n)),
        Err(Error::Ceiling { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn run_job(job: &Job, ceiling: usize) -> Result<SweepRecord> {
    let ctx = generate_context(job.n_g, job.n_m, job.density, job.seed)?;
    let scheme = random_grouping(job.n_m, job.fanout, job.mode, grouping_seed(job.seed, job.fanout))?;
    let size_before = count_or_censor(&ctx, ceiling)?;
    let size_after = count_or_censor(&generalize_attributes(&ctx, &scheme)?, ceiling)?;
    Ok(SweepRecord {
        seed: job.seed,
        n_g: job.n_g,
        n_m: job.n_m,
        density: job.density,
        fanout: job.fanout,
        mode: job.mode,
        censored: size_before.is_none() || size_after.is_none(),
        size_before,
        size_after,
    })
}

/// One record per (cell, seed), in grid order. Cells run in parallel.
pub fn sweep(grid: &SweepGrid) -> Result<Vec<SweepRecord>> {
    let jobs = grid.jobs();
    if jobs.is_empty() {
        return Err(Error::argument("sweep grid is empty"));
    }
    if grid.mode.contains(&Mode::Alpha) {
        return Err(Error::argument("sweeps support exists and forall groupings"));
    }
    jobs.par_iter().map(|j| run_job(j, grid.ceiling)).collect()
}

pub fn records_to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.to_csv_line());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlotPoint {
    pub mode: Mode,
    pub fanout: usize,
    pub median_ratio: f64,
    pub records: usize,
}

/// Median ratio per (mode, fanout) over uncensored records, sorted by mode
/// then fanout.
pub fn median_ratio_by_fanout(records: &[SweepRecord]) -> Vec<PlotPoint> {
    let mut keys: Vec<(Mode, usize)> = records.iter().map(|r| (r.mode, r.fanout)).collect();
    keys.sort_by_key(|&(m, f)| (m.to_string(), f));
    keys.dedup();
    keys.into_iter()
        .filter_map(|(mode, fanout)| {
            let mut ratios: Vec<f64> = records
                .iter()
                .filter(|r| r.mode == mode && r.fanout == fanout)
                .filter_map(SweepRecord::ratio)
                .collect();
            if ratios.is_empty() {
                return None;
            }
            ratios.sort_by(f64::total_cmp);
            let n = ratios.len();
            let median = if n % 2 == 1 { ratios[n / 2] } else { (ratios[n / 2 - 1] + ratios[n / 2]) / 2.0 };
            Some(PlotPoint { mode, fanout, median_ratio: median, records: n })
        })
        .collect()
}

pub fn plot_data_csv(points: &[PlotPoint]) -> String {
    let mut out = String::from("mode,fanout,median_ratio,records\n");
    for p in points {
        out.push_str(&format!("{},{},{:.6},{}\n", p.mode, p.fanout, p.median_ratio, p.records));
    }
    out
}
