//! Per-graph cut reports and the random-graph gain experiment.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bisection::{improved_bisection_from_basis, refine_bisection, top_half_partition};
use crate::error::{Error, Result};
use crate::generators::erdos_renyi_with_rng;
use crate::graph::{Bisection, Graph};
use crate::spectral::{spectral_basis, SpectralBasis, SpectralConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Classic spectral bisection.
    Sb,
    /// Spectral bisection followed by the rotation sweep.
    Alg1,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct PhaseTimings {
    pub spectral_ms: f64,
    pub sweep_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutReport {
    pub graph_id: String,
    pub method: Method,
    pub n: usize,
    pub m: usize,
    pub sb_cut: usize,
    /// Absent when only spectral bisection was run.
    pub alg1_cut: Option<usize>,
    /// `(sb_cut − alg1_cut) / sb_cut`, zero when `sb_cut` is zero.
    pub improvement: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub runtime_ms: PhaseTimings,
}

impl CutReport {
    pub const CSV_HEADER: &'static str =
        "graph_id,n,m,sb_cut,alg1_cut,improvement,lambda2,lambda3,runtime_ms";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.graph_id,
            self.n,
            self.m,
            self.sb_cut,
            self.alg1_cut.map(|c| c.to_string()).unwrap_or_default(),
            self.improvement,
            self.lambda2,
            self.lambda3,
            self.runtime_ms.total_ms
        )
    }
}

fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn improvement(before: usize, after: usize) -> f64 {
    if before == 0 {
        0.0
    } else {
        (before - after) as f64 / before as f64
    }
}

fn dump_vectors(basis: &SpectralBasis) -> String {
    let fmt = |v: &nalgebra::DVector<f64>| {
        v.iter()
            .map(|e| format!("{e:.6e}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "lambda2 = {:.12e}\ny = [{}]\nlambda3 = {:.12e}\nx = [{}]",
        basis.lambda2,
        fmt(&basis.y),
        basis.lambda3,
        fmt(&basis.x)
    )
}

/// Runs spectral bisection (and the sweep for [`Method::Alg1`]) and returns the
/// report together with the winning bisection.
pub fn bisect_report(
    graph_id: &str,
    g: &Graph,
    method: Method,
    cfg: &SpectralConfig,
) -> Result<(CutReport, Bisection)> {
    if !g.n().is_multiple_of(2) {
        return Err(Error::domain(format!(
            "cannot bisect a graph with an odd number of vertices ({})",
            g.n()
        )));
    }
    let start = Instant::now();
    let basis = spectral_basis(g, cfg)?;
    let spectral_ms = ms_since(start);

    let sweep_start = Instant::now();
    let (sb_cut, alg1_cut, best) = match method {
        Method::Sb => {
            let sb = top_half_partition(basis.y.as_slice())?;
            (g.cut_size(&sb)?, None, sb)
        }
        Method::Alg1 => {
            let res = improved_bisection_from_basis(g, &basis)?;
            if res.best_cut > res.initial_cut {
                return Err(Error::Numeric {
                    msg: format!(
                        "sweep returned cut {} above the spectral cut {}\n{}",
                        res.best_cut,
                        res.initial_cut,
                        dump_vectors(&basis)
                    ),
                    residual: f64::NAN,
                });
            }
            (res.initial_cut, Some(res.best_cut), res.best)
        }
    };
    let sweep_ms = ms_since(sweep_start);

    let report = CutReport {
        graph_id: graph_id.to_string(),
        method,
        n: g.n(),
        m: g.m(),
        sb_cut,
        alg1_cut,
        improvement: improvement(sb_cut, alg1_cut.unwrap_or(sb_cut)),
        lambda2: basis.lambda2,
        lambda3: basis.lambda3,
        runtime_ms: PhaseTimings {
            spectral_ms,
            sweep_ms,
            total_ms: ms_since(start),
        },
    };
    Ok((report, best))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefineReport {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub input_cut: usize,
    pub refined_cut: usize,
    pub improvement: f64,
    pub candidates_evaluated: usize,
    pub runtime_ms: f64,
}

impl RefineReport {
    pub const CSV_HEADER: &'static str =
        "graph_id,n,m,input_cut,refined_cut,improvement,candidates_evaluated,runtime_ms";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.graph_id,
            self.n,
            self.m,
            self.input_cut,
            self.refined_cut,
            self.improvement,
            self.candidates_evaluated,
            self.runtime_ms
        )
    }
}

pub fn refine_report(
    graph_id: &str,
    g: &Graph,
    given: &Bisection,
    cfg: &SpectralConfig,
) -> Result<(RefineReport, Bisection)> {
    let start = Instant::now();
    let res = refine_bisection(g, given, cfg)?;
    let report = RefineReport {
        graph_id: graph_id.to_string(),
        n: g.n(),
        m: g.m(),
        input_cut: res.initial_cut,
        refined_cut: res.best_cut,
        improvement: improvement(res.initial_cut, res.best_cut),
        candidates_evaluated: res.candidates_evaluated,
        runtime_ms: ms_since(start),
    };
    Ok((report, res.best))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p: f64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub n: usize,
    pub p: f64,
    pub samples: usize,
    pub discarded_disconnected: usize,
    pub mean_improvement: f64,
    pub max_improvement: f64,
    /// Samples where the sweep strictly beat spectral bisection.
    pub improved_samples: usize,
    pub seed: u64,
}

impl ExperimentSummary {
    pub const CSV_HEADER: &'static str =
        "n,p,samples,discarded_disconnected,mean_improvement,max_improvement,improved_samples,seed";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.p,
            self.samples,
            self.discarded_disconnected,
            self.mean_improvement,
            self.max_improvement,
            self.improved_samples,
            self.seed
        )
    }
}

/// One sample's outcome: `(improvement, discarded disconnected draws)`.
fn run_sample(exp: &ExperimentConfig, index: usize, cfg: &SpectralConfig) -> Result<(f64, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(exp.seed);
    rng.set_stream(index as u64);
    let mut discarded = 0;
    loop {
        let g = erdos_renyi_with_rng(exp.n, exp.p, &mut rng)?;
        if !g.is_connected() {
            discarded += 1;
            if discarded > 10_000 {
                return Err(Error::domain(format!(
                    "G({}, {}) produced no connected sample in 10000 draws",
                    exp.n, exp.p
                )));
            }
            continue;
        }
        let basis = spectral_basis(&g, cfg)?;
        let res = improved_bisection_from_basis(&g, &basis)?;
        return Ok((improvement(res.initial_cut, res.best_cut), discarded));
    }
}

/// Average gain of the rotation sweep over spectral bisection on connected
/// `G(n, p)` samples. Sample `i` draws from ChaCha stream `i` of `seed`, so
/// results do not depend on scheduling.
pub fn run_experiment(exp: &ExperimentConfig, cfg: &SpectralConfig) -> Result<ExperimentSummary> {
    if exp.samples == 0 {
        return Err(Error::input("experiment needs at least one sample"));
    }
    if exp.n < 4 || !exp.n.is_multiple_of(2) {
        return Err(Error::input(format!(
            "experiment needs an even vertex count of at least 4, got {}",
            exp.n
        )));
    }
    if !(exp.p > 0.0 && exp.p <= 1.0) {
        return Err(Error::input(format!(
            "edge probability {} is outside (0, 1]",
            exp.p
        )));
    }
    let outcomes: Vec<(f64, usize)> = (0..exp.samples)
        .into_par_iter()
        .map(|i| run_sample(exp, i, cfg))
        .collect::<Result<_>>()?;

    let gains: Vec<f64> = outcomes.iter().map(|&(g, _)| g).collect();
    Ok(ExperimentSummary {
        n: exp.n,
        p: exp.p,
        samples: exp.samples,
        discarded_disconnected: outcomes.iter().map(|&(_, d)| d).sum(),
        mean_improvement: gains.iter().sum::<f64>() / gains.len() as f64,
        max_improvement: gains.iter().copied().fold(0.0, f64::max),
        improved_samples: gains.iter().filter(|&&g| g > 0.0).count(),
        seed: exp.seed,
    })
}
