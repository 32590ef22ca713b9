//! Timing of the plain and splitting solvers on one instance.

use std::fmt;
use std::time::Instant;

use bfglm_core::{combine_matrices, solve, solve_split, Instance, Rng, SolverConfig};

use crate::error::ToolResult;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub dim: usize,
    pub n: usize,
    pub m: usize,
    pub workers: usize,
    pub density_m1: f64,
    pub density_m: f64,
    pub plain_seconds: f64,
    pub krylov_fraction: f64,
    pub split_seconds: f64,
    /// Points handled by the first-variable pass, as a fraction of `D`.
    pub split_fraction: f64,
    /// Both solvers returned the same parametrization.
    pub outputs_agree: bool,
}

impl BenchRow {
    pub const HEADER: &'static str = "D\tn\tm\tworkers\tdens(M1)\tdens(M)\ttime(s)\tkrylov\tsplit(s)\tD_A/D\tagree";
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{:.4}\t{:.4}\t{:.3}\t{:.2}\t{:.3}\t{:.3}\t{}",
            self.dim,
            self.n,
            self.m,
            self.workers,
            self.density_m1,
            self.density_m,
            self.plain_seconds,
            self.krylov_fraction,
            self.split_seconds,
            self.split_fraction,
            self.outputs_agree
        )
    }
}

/// Solves `inst` with both solvers from the same seed.
pub fn bench_instance(inst: &Instance, cfg: &SolverConfig, seed: u64) -> ToolResult<BenchRow> {
    let clock = Instant::now();
    let (plain, stats) = solve(inst, cfg, &mut Rng::new(seed))?;
    let plain_seconds = clock.elapsed().as_secs_f64();
    let clock = Instant::now();
    let (split, _, trace) = solve_split(inst, cfg, 0, &mut Rng::new(seed))?;
    let split_seconds = clock.elapsed().as_secs_f64();
    let generic = combine_matrices(plain.t(), inst.mats())?;
    Ok(BenchRow {
        dim: inst.dim(),
        n: inst.n(),
        m: cfg.m,
        workers: cfg.workers,
        density_m1: inst.mats()[0].density(),
        density_m: generic.density(),
        plain_seconds,
        krylov_fraction: stats.krylov_seconds / plain_seconds.max(f64::MIN_POSITIVE),
        split_seconds,
        split_fraction: trace.d_a as f64 / inst.dim() as f64,
        outputs_agree: plain == split,
    })
}
