//! Scaling benchmark over random square instances.

use std::io::{self, Write};
use std::time::Instant;

use stable_noncrossing::{solve_with, Instance, SolverError, SolverStats};

pub const TSV_HEADER: &str = "n_men\tn_women\tdensity\tseed\tscan_count\tproposal_count\twall_time_ns";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub min: usize,
    pub max: usize,
    pub factor: usize,
    pub reps: usize,
    pub seed: u64,
    pub density: f64,
}

impl BenchConfig {
    /// `min, min·factor, min·factor², ...` up to `max`.
    pub fn sizes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut n = self.min;
        while n <= self.max {
            out.push(n);
            if self.factor < 2 {
                break;
            }
            n *= self.factor;
        }
        out
    }
}

/// One timed solve.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n_men: usize,
    pub n_women: usize,
    pub density: f64,
    pub seed: u64,
    pub scan_count: usize,
    pub proposal_count: usize,
    pub wall_time_ns: u128,
}

impl BenchRecord {
    pub fn within_scan_bound(&self) -> bool {
        self.scan_count <= SolverStats::scan_bound(self.n_men, self.n_women)
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.n_men, self.n_women, self.density, self.seed, self.scan_count, self.proposal_count, self.wall_time_ns
        )
    }
}

/// Runs every size `reps` times, calling `sink` after each record. Rep `r`
/// uses seed `seed + r`. Only the solve is timed, not instance generation.
pub fn run_bench(
    cfg: &BenchConfig,
    mut sink: impl FnMut(&BenchRecord) -> io::Result<()>,
) -> Result<Vec<BenchRecord>, BenchError> {
    let mut records = Vec::new();
    for n in cfg.sizes() {
        for rep in 0..cfg.reps {
            let seed = cfg.seed.wrapping_add(rep as u64);
            let inst = Instance::random(n, n, cfg.density, seed);
            let start = Instant::now();
            let sol = solve_with(&inst, false)?;
            let wall_time_ns = start.elapsed().as_nanos();
            let rec = BenchRecord {
                n_men: n,
                n_women: n,
                density: cfg.density,
                seed,
                scan_count: sol.stats.scan_count,
                proposal_count: sol.stats.proposal_count,
                wall_time_ns,
            };
            sink(&rec)?;
            records.push(rec);
        }
    }
    Ok(records)
}

pub fn write_tsv(out: &mut dyn Write, records: &[BenchRecord]) -> io::Result<()> {
    writeln!(out, "{TSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.to_tsv())?;
    }
    Ok(())
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Median wall time per size, ascending by size.
pub fn median_times(records: &[BenchRecord]) -> Vec<(usize, f64)> {
    let mut sizes: Vec<usize> = records.iter().map(|r| r.n_men).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .into_iter()
        .map(|n| {
            let mut t: Vec<u128> = records.iter().filter(|r| r.n_men == n).map(|r| r.wall_time_ns).collect();
            t.sort_unstable();
            let mid = t.len() / 2;
            let median = if t.len() % 2 == 1 {
                t[mid] as f64
            } else {
                (t[mid - 1] + t[mid]) as f64 / 2.0
            };
            (n, median)
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| ((x as f64).ln(), y.max(1.0).ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
