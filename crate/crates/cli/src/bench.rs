//! Pruning versus definitional intersection counts over a size range.

use std::fmt::Write as _;

use pretropism::engine::find_pretropisms;
use pretropism::oracle::definitional_pretropisms;
use pretropism::systems::Family;
use pretropism::Options;
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub polytopes: usize,
    pub trials: usize,
    /// Mean over trials; `None` when the definitional run was skipped.
    pub definitional: Option<f64>,
    pub pruning: f64,
    pub predicted_ratio: f64,
    pub actual_ratio: Option<f64>,
    pub pretropisms: f64,
    /// Whether every trial's pruned and definitional ray sets agreed.
    pub rays_match: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub options: Options,
    /// Skip the definitional algorithm above this size.
    pub max_definitional: Option<usize>,
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, CliError> {
    // Only the random family has anything to average.
    let trials = match cfg.family {
        Family::Simplices => cfg.trials.max(1),
        _ => 1,
    };
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let with_def = cfg.max_definitional.is_none_or(|m| n <= m);
        let (mut pruning, mut definitional, mut tropisms) = (0u64, 0u64, 0usize);
        let mut polytope_count = 0;
        let mut all_match = true;
        for t in 0..trials {
            let spec = cfg.family.generate(n, cfg.seed.wrapping_add(t as u64))?;
            let polytopes = spec.polytopes()?;
            polytope_count = polytopes.len();
            let r = find_pretropisms(&polytopes, &cfg.options)?;
            pruning += r.stats.intersections();
            tropisms += r.rays.len();
            if with_def {
                let d = definitional_pretropisms(&polytopes, &cfg.options)?;
                definitional += d.stats.intersections();
                all_match &= d.rays == r.rays;
            }
            tracing::info!(n, trial = t, pruning = r.stats.intersections(), "bench instance done");
        }
        let mean = |x: u64| x as f64 / trials as f64;
        // Each later polytope halves the work in the ball model.
        let predicted_ratio = 0.5f64.powi(polytope_count as i32 - 1);
        let definitional = with_def.then(|| mean(definitional));
        rows.push(BenchRow {
            n,
            polytopes: polytope_count,
            trials,
            definitional,
            pruning: mean(pruning),
            predicted_ratio,
            actual_ratio: definitional.filter(|&d| d > 0.0).map(|d| mean(pruning) / d),
            pretropisms: tropisms as f64 / trials as f64,
            rays_match: with_def.then_some(all_match),
        });
    }
    Ok(rows)
}

fn num(x: f64) -> String {
    if x.fract() == 0.0 {
        format!("{x:.0}")
    } else {
        format!("{x:.2}")
    }
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>4} {:>14} {:>12} {:>10} {:>10} {:>12}",
        "n", "definitional", "pruning", "predicted", "actual", "pretropisms"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>4} {:>14} {:>12} {:>10} {:>10} {:>12}",
            r.n,
            r.definitional.map_or("-".into(), num),
            num(r.pruning),
            format!("{}", r.predicted_ratio),
            r.actual_ratio.map_or("-".into(), |a| format!("{a:.4}")),
            num(r.pretropisms)
        );
    }
    out
}
