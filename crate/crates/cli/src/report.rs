//! Machine-readable run reports.
//!
//! Everything except `timing` is a function of the input and options, so two
//! reports for the same run compare equal once `timing` is dropped.

use std::fmt::Write as _;

use pretropism::engine::degree_sum;
use pretropism::{IntVector, LevelStats, OpCounts, Options, PretropismResult};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ReportOptions {
    pub seed: u64,
    pub sort: bool,
    pub first_positive: bool,
    pub jobs: usize,
}

impl ReportOptions {
    pub fn new(options: &Options) -> Self {
        Self {
            seed: options.seed,
            sort: options.sort,
            first_positive: options.first_positive,
            jobs: options.jobs.unwrap_or_else(default_jobs),
        }
    }
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub provenance: String,
    /// `pruning` or `definitional`.
    pub algorithm: String,
    pub options: ReportOptions,
    /// Processing order of the polytopes, as input indices.
    pub order: Vec<usize>,
    pub pretropism_count: usize,
    pub rays: Vec<IntVector>,
    pub cone_count: usize,
    pub degree_sum: String,
    pub levels: Vec<LevelStats>,
    pub totals: OpCounts,
    /// Present for pruning runs.
    pub cost_bound: Option<u128>,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(
        provenance: &str,
        algorithm: &str,
        options: &Options,
        result: &PretropismResult,
        wall_seconds: f64,
    ) -> Self {
        Self {
            provenance: provenance.to_string(),
            algorithm: algorithm.to_string(),
            options: ReportOptions::new(options),
            order: result.order.clone(),
            pretropism_count: result.rays.len(),
            rays: result.rays.clone(),
            cone_count: result.cones.len(),
            degree_sum: degree_sum(&result.rays).to_string(),
            levels: result.stats.levels.clone(),
            totals: result.stats.totals(),
            cost_bound: (algorithm == "pruning").then(|| result.trace.bound()),
            timing: Timing { wall_seconds },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// One ray per line, entries separated by spaces.
pub fn format_rays(rays: &[IntVector]) -> String {
    rays.iter().map(|r| format!("{r}\n")).collect()
}

/// Human-readable statistics block.
pub fn format_stats(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} run on {}", report.algorithm, report.provenance);
    let _ = writeln!(
        out,
        "{:>5} {:>8} {:>9} {:>9} {:>9} {:>14} {:>12} {:>10}",
        "level", "polytope", "cones in", "gathered", "cones out", "intersections", "containment", "trivial"
    );
    for l in &report.levels {
        let _ = writeln!(
            out,
            "{:>5} {:>8} {:>9} {:>9} {:>9} {:>14} {:>12} {:>10}",
            l.level,
            l.polytope,
            l.cones_in,
            l.cones_gathered,
            l.cones_out,
            l.counts.intersections,
            l.counts.containment_checks,
            l.counts.cones_discarded_trivial
        );
    }
    let t = &report.totals;
    let _ = writeln!(out, "intersections: {}", t.intersections);
    let _ = writeln!(
        out,
        "containment checks: {} ({} hits)",
        t.containment_checks, t.containment_hits
    );
    let _ = writeln!(out, "edges visited: {}", t.edges_visited);
    let _ = writeln!(out, "pruned horizontally: {}", t.cones_pruned_horizontal);
    if let Some(b) = report.cost_bound {
        let _ = writeln!(out, "cost bound: {b}");
    }
    let _ = writeln!(out, "pretropisms: {}", report.pretropism_count);
    let _ = writeln!(out, "degree sum: {}", report.degree_sum);
    let _ = writeln!(out, "wall time: {:.3} s", report.timing.wall_seconds);
    out
}
