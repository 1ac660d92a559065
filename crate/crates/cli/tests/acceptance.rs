//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Criterion 8 lists what is reported but
//! not asserted.
//!
//! Set `PRETROPISM_STRETCH=1` to include reduced cyclic-10 (several minutes).

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use pretropism::engine::{explore_edge_skeleton, find_pretropisms};
use pretropism::oracle::{
    brute_force_skeleton, check_pretropism_graph_connected, definitional_pretropisms,
};
use pretropism::systems::{gen_cyclic, gen_generic_simplices, gen_nbody, gen_nvortex};
use pretropism::{Cone, ConeKey, IntVector, Options, Polytope, PretropismResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    failures: usize,
}

impl Outcome {
    fn report(&mut self, id: &str, pass: bool, detail: String) {
        println!("{} criterion {id}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failures += 1;
        }
    }
}

/// A pruned and a definitional run on the same input.
struct Paired {
    label: String,
    pruned: PretropismResult,
    definitional: PretropismResult,
}

fn paired(label: String, polytopes: &[Polytope]) -> Paired {
    let opts = Options::default();
    Paired {
        label,
        pruned: find_pretropisms(polytopes, &opts).expect("pruned run"),
        definitional: definitional_pretropisms(polytopes, &opts).expect("definitional run"),
    }
}

fn reduced_cyclic(n: usize) -> Vec<Polytope> {
    gen_cyclic(n, true).polytopes().expect("cyclic polytopes")
}

fn golden_counts(out: &mut Outcome, runs: &mut Vec<Paired>) {
    let start = Instant::now();
    let expected = [(4, 2), (5, 0), (6, 8), (7, 28), (8, 94)];
    let mut got = Vec::new();
    for (n, _) in expected {
        let run = paired(format!("reduced cyclic-{n}"), &reduced_cyclic(n));
        got.push(run.pruned.rays.len());
        runs.push(run);
    }
    let want: Vec<usize> = expected.iter().map(|e| e.1).collect();
    out.report(
        "1",
        got == want,
        format!(
            "reduced cyclic-n (n=4..8) pretropisms {got:?}, expected {want:?} ({:.1} s)",
            start.elapsed().as_secs_f64()
        ),
    );
}

fn oracle_equivalence(out: &mut Outcome, runs: &mut Vec<Paired>) {
    let start = Instant::now();
    for n in [3, 4] {
        for seed in 0..20 {
            let spec = gen_generic_simplices(n, seed);
            runs.push(paired(
                format!("simplices n={n} seed={seed}"),
                &spec.polytopes().expect("simplex polytopes"),
            ));
        }
    }
    // reduced cyclic 4..7 were already run for criterion 1
    let cases: Vec<&Paired> = runs
        .iter()
        .filter(|r| {
            r.label.starts_with("simplices")
                || ["4", "5", "6", "7"]
                    .iter()
                    .any(|n| r.label == format!("reduced cyclic-{n}"))
        })
        .collect();
    let bad: Vec<&str> = cases
        .iter()
        .filter(|r| r.pruned.rays != r.definitional.rays)
        .map(|r| r.label.as_str())
        .collect();
    out.report(
        "2",
        bad.is_empty(),
        format!(
            "{} instances (40 generic simplex, reduced cyclic 4..7), ray-set mismatches: {bad:?} ({:.1} s)",
            cases.len(),
            start.elapsed().as_secs_f64()
        ),
    );
}

fn random_polytope(rng: &mut ChaCha8Rng, d: usize) -> Polytope {
    loop {
        let k = rng.gen_range(d + 1..=12);
        let pts: Vec<IntVector> = (0..k)
            .map(|_| IntVector::from_i64s(&(0..d).map(|_| rng.gen_range(0..=30)).collect::<Vec<_>>()))
            .collect();
        let p = Polytope::new(&pts).expect("nonempty points");
        if p.edge_count() > 0 {
            return p;
        }
    }
}

fn keys(cones: &[Cone]) -> BTreeSet<ConeKey> {
    cones.iter().map(|c| c.key().clone()).collect()
}

fn theorem_one(out: &mut Outcome) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2016);
    let (mut disconnected, mut incomplete) = (0, 0);
    for i in 0..500 {
        let d = 3 + i % 3;
        let p = random_polytope(&mut rng, d);
        let q = random_polytope(&mut rng, d);
        let e = rng.gen_range(0..q.edge_count());
        let c = &q.edges()[e].normal_cone;
        if !check_pretropism_graph_connected(&p, c).expect("nontrivial cone") {
            disconnected += 1;
        }
        let walked = explore_edge_skeleton(&p, c, 0).expect("nontrivial cone");
        let brute = brute_force_skeleton(&p, c).expect("nontrivial cone");
        if keys(&walked) != keys(&brute) {
            incomplete += 1;
        }
    }
    out.report(
        "3",
        disconnected == 0 && incomplete == 0,
        format!(
            "500 random (polytope, cone) pairs in dims 3-5: {disconnected} disconnected pretropism graphs, {incomplete} walk/brute-force differences ({:.1} s)",
            start.elapsed().as_secs_f64()
        ),
    );
}

fn cost_model(out: &mut Outcome, runs: &[Paired]) {
    let mut bound_violations = Vec::new();
    let mut oracle_violations = Vec::new();
    for r in runs {
        let pruned = r.pruned.stats.intersections();
        let bound = r.pruned.trace.bound();
        if u128::from(pruned) > bound {
            bound_violations.push(format!("{} ({pruned} > {bound})", r.label));
        }
        if pruned > r.definitional.stats.intersections() {
            oracle_violations.push(r.label.clone());
        }
    }
    out.report(
        "4",
        bound_violations.is_empty() && oracle_violations.is_empty(),
        format!(
            "{} runs: pruning > cost bound in {:?}; pruning > definitional in {:?}",
            runs.len(),
            bound_violations,
            oracle_violations
        ),
    );
}

fn ratio_trend(out: &mut Outcome, runs: &[Paired]) {
    let reference = [(5, 1_850.0), (6, 63_981.0), (7, 989_751.0), (8, 58_155_904.0)];
    let mut ok = true;
    let mut lines = Vec::new();
    for (n, reference_def) in reference {
        let r = runs
            .iter()
            .find(|r| r.label == format!("reduced cyclic-{n}"))
            .expect("criterion 1 ran this size");
        let def = r.definitional.stats.intersections() as f64;
        let pruned = r.pruned.stats.intersections() as f64;
        let ratio = pruned / def;
        let predicted = 0.5f64.powi(r.pruned.order.len() as i32 - 1);
        ok &= ratio < predicted;
        let within = ((def - reference_def) / reference_def).abs() <= 0.25;
        lines.push(format!(
            "n={n} ratio {ratio:.6} < {predicted} (definitional {def} vs reference {reference_def}, within 25%: {within})"
        ));
    }
    out.report("5", ok, lines.join("; "));
}

fn random_cone(rng: &mut ChaCha8Rng) -> Cone {
    let d = rng.gen_range(2..=5);
    let random_vec = |rng: &mut ChaCha8Rng| loop {
        let v = IntVector::from_i64s(&(0..d).map(|_| rng.gen_range(-4..=4)).collect::<Vec<_>>());
        if !v.is_zero() {
            return v;
        }
    };
    let rays: Vec<IntVector> = (0..rng.gen_range(1..=6)).map(|_| random_vec(rng)).collect();
    let lineality: Vec<IntVector> = if rng.gen_bool(0.2) {
        vec![random_vec(rng)]
    } else {
        Vec::new()
    };
    Cone::from_rays(d, &rays, &lineality)
}

fn random_cone_in(rng: &mut ChaCha8Rng, d: usize) -> Cone {
    loop {
        let c = random_cone(rng);
        if c.ambient_dim() == d {
            return c;
        }
    }
}

fn cone_algebra(out: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures: Vec<String> = Vec::new();
    for case in 0..200 {
        let a = random_cone(&mut rng);
        let d = a.ambient_dim();
        let b = random_cone_in(&mut rng, d);
        let c = random_cone_in(&mut rng, d);
        let mut fail = |what: &str| failures.push(format!("case {case}: {what}"));
        if a.intersect(&a).key() != a.key() {
            fail("idempotence");
        }
        if a.intersect(&b).key() != b.intersect(&a).key() {
            fail("commutativity");
        }
        if a.intersect(&b).intersect(&c).key() != a.intersect(&b.intersect(&c)).key() {
            fail("associativity");
        }
        let meet = a.intersect(&b);
        if a.contains(&b) != (meet.key() == b.key()) || !a.contains(&meet) || !b.contains(&meet) {
            fail("contains/intersect consistency");
        }
        let round = Cone::from_constraints(d, a.inequalities(), a.equations());
        if round.key() != a.key() {
            fail("V to H to V round trip");
        }
        for _ in 0..5 {
            let mut x = IntVector::zeros(d);
            for r in a.rays() {
                x = x.add(&r.scale(&rng.gen_range(0..=5).into()));
            }
            for l in a.lineality() {
                x = x.add(&l.scale(&rng.gen_range(-5..=5).into()));
            }
            if !a.contains_point(&x) {
                fail("sampled generator combination violates H-representation");
                break;
            }
        }
    }
    out.report(
        "6",
        failures.is_empty(),
        format!("200 random cones (dim <= 5, <= 6 rays): failures {failures:?}"),
    );
}

fn run_cli(jobs: usize, report: &std::path::Path) -> (Vec<u8>, serde_json::Value) {
    let output = Command::new(env!("CARGO_BIN_EXE_pretropism"))
        .args(["compute", "gen:cyclic-reduced:n=7", "--jobs", &jobs.to_string(), "--report"])
        .arg(report)
        .output()
        .expect("binary runs");
    assert!(output.status.success(), "compute failed: {output:?}");
    let text = std::fs::read_to_string(report).expect("report written");
    (output.stdout, serde_json::from_str(&text).expect("report is JSON"))
}

fn determinism(out: &mut Outcome) {
    let dir = tempfile::tempdir().expect("temp dir");
    let (rays1, rep1) = run_cli(1, &dir.path().join("j1.json"));
    let (rays8, rep8) = run_cli(8, &dir.path().join("j8.json"));
    let same_rays = rays1 == rays8 && !rays1.is_empty();
    let same_totals = rep1["totals"] == rep8["totals"] && rep1["levels"] == rep8["levels"];
    out.report(
        "7",
        same_rays && same_totals,
        format!(
            "compute reduced cyclic-7 --jobs 1 vs --jobs 8: identical ray output {same_rays}, identical stats {same_totals} ({} intersections)",
            rep1["totals"]["intersections"]
        ),
    );
}

fn informational() {
    let opts = Options::default();
    let mut stretch = vec![9];
    if std::env::var_os("PRETROPISM_STRETCH").is_some() {
        stretch.push(10);
    }
    for n in stretch {
        let start = Instant::now();
        let r = find_pretropisms(&reduced_cyclic(n), &opts).expect("run");
        println!(
            "INFO criterion 8: reduced cyclic-{n}: {} pretropisms, {} pruning intersections ({:.1} s); reference {}",
            r.rays.len(),
            r.stats.intersections(),
            start.elapsed().as_secs_f64(),
            if n == 9 { "259 / 198,300" } else { "712 / 1,933,147" }
        );
    }
    let published = [
        ("n-body", 3, gen_nbody(3), "4 / 121"),
        ("n-vortex", 3, gen_nvortex(3), "4 / 87"),
        ("n-vortex", 4, gen_nvortex(4), "25 / 10,595"),
    ];
    for (name, n, spec, reference) in published {
        let r = find_pretropisms(&spec.polytopes().expect("polytopes"), &opts).expect("run");
        println!(
            "INFO criterion 8: {name} n={n} (shipped formulation): {} pretropisms, {} intersections; reference {reference}",
            r.rays.len(),
            r.stats.intersections()
        );
    }
    println!("INFO criterion 8: published timings and the external-tool and mixed-volume comparisons are not reproduced");
}

fn main() -> ExitCode {
    let mut out = Outcome { failures: 0 };
    let mut runs = Vec::new();
    golden_counts(&mut out, &mut runs);
    oracle_equivalence(&mut out, &mut runs);
    theorem_one(&mut out);
    cost_model(&mut out, &runs);
    ratio_trend(&mut out, &runs);
    cone_algebra(&mut out);
    determinism(&mut out);
    informational();
    if out.failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", out.failures);
        ExitCode::FAILURE
    }
}
