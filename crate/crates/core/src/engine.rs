//! Pruned computation of pretropisms.
//!
//! Level one holds the normal cones of the edges of the first polytope. Each
//! further level explores the edge skeleton of the next polytope once per
//! surviving cone, starting at the face picked out by an interior ray of the
//! cone and walking only through edges whose normal cones meet it (vertical
//! pruning). The gathered level is deduplicated and reduced to its maximal
//! cones (horizontal pruning) before it seeds the next level.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::cone::{Cone, ConeKey};
use crate::error::GeometryError;
use crate::linalg::IntVector;
use crate::polytope::Polytope;
use crate::stats::{LevelStats, OpCounts, Stats};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Options {
    /// Seed for interior-ray selection; 0 uses unit weights.
    pub seed: u64,
    /// Process polytopes by increasing lineality dimension.
    pub sort: bool,
    /// Keep only output rays whose first coordinate is positive.
    pub first_positive: bool,
    /// Cut the first level down to `x_0 >= 0` so that exploration never
    /// follows cones on the wrong side; implies `first_positive`. Cones are
    /// cut before they are intersected, so their generators (and hence the
    /// reported rays) can differ from the plain filter's.
    pub restrict_first_positive: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            seed: 0,
            sort: true,
            first_positive: false,
            restrict_first_positive: false,
            jobs: None,
        }
    }
}

/// One exploration of an edge skeleton against a cone.
#[derive(Clone, Debug, Default)]
pub struct Exploration {
    /// Distinct nontrivial intersections, in discovery order.
    pub cones: Vec<Cone>,
    /// Every edge tested, in test order.
    pub tested_edges: Vec<usize>,
    /// Edges whose normal cone met the input cone nontrivially.
    pub graph_edges: Vec<usize>,
    pub counts: OpCounts,
}

/// Per root edge of the first polytope, the number of edges of each later
/// polytope tested while exploring cones descending from that edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CostTrace {
    /// `sizes[e][j]`: edges of the `(j + 2)`-th processed polytope tested on
    /// behalf of root edge `e`.
    pub sizes: Vec<Vec<u64>>,
}

impl CostTrace {
    pub fn bound(&self) -> u128 {
        cost_bound(&self.sizes)
    }
}

#[derive(Clone, Debug)]
pub struct PretropismResult {
    /// Final cones, sorted by key.
    pub cones: Vec<Cone>,
    /// Distinct primitive generating rays of the final cones, sorted.
    pub rays: Vec<IntVector>,
    pub stats: Stats,
    /// Processing order (indices into the input).
    pub order: Vec<usize>,
    pub trace: CostTrace,
}

impl PretropismResult {
    fn empty(order: Vec<usize>, stats: Stats, trace: CostTrace) -> Self {
        Self {
            cones: Vec::new(),
            rays: Vec::new(),
            stats,
            order,
            trace,
        }
    }
}

/// Explores the skeleton of `p` for the edges whose normal cones meet `c`.
pub fn explore_edge_skeleton(
    p: &Polytope,
    c: &Cone,
    seed: u64,
) -> Result<Vec<Cone>, GeometryError> {
    Ok(explore(p, c, seed)?.cones)
}

/// Instrumented form of [`explore_edge_skeleton`].
pub fn explore(p: &Polytope, c: &Cone, seed: u64) -> Result<Exploration, GeometryError> {
    if c.ambient_dim() != p.ambient_dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: p.ambient_dim(),
            found: c.ambient_dim(),
        });
    }
    if c.is_trivial() {
        return Err(GeometryError::TrivialCone);
    }
    let r = c.interior_ray(seed)?;
    let mut start = p.edges_touching(&p.initial_face(&r)?);
    // A line has no interior path between its two directions, so both ends
    // seed the walk.
    if c.rays().is_empty() && c.lineality().len() == 1 {
        start.extend(p.edges_touching(&p.initial_face(&-&r)?));
        start.sort_unstable();
        start.dedup();
    }

    let mut out = Exploration::default();
    let mut queued = vec![false; p.edge_count()];
    let mut queue: VecDeque<usize> = VecDeque::with_capacity(p.edge_count());
    for e in start {
        queued[e] = true;
        queue.push_back(e);
    }
    let mut seen: BTreeMap<ConeKey, ()> = BTreeMap::new();
    let counts = &mut out.counts;
    while let Some(e) = queue.pop_front() {
        counts.edges_visited += 1;
        out.tested_edges.push(e);
        let edge = &p.edges()[e];
        let found = if counts.contains(&edge.normal_cone, c) {
            Some(c.clone())
        } else {
            let x = counts.intersect(c, &edge.normal_cone);
            if x.is_trivial() {
                counts.cones_discarded_trivial += 1;
                None
            } else {
                Some(x)
            }
        };
        let Some(found) = found else { continue };
        out.graph_edges.push(e);
        if seen.insert(found.key().clone(), ()).is_none() {
            out.cones.push(found);
        }
        for &nb in &edge.neighbor_edges {
            if !queued[nb] {
                queued[nb] = true;
                queue.push_back(nb);
            }
        }
    }
    Ok(out)
}

/// Maximal cones of `cones` under inclusion, after deduplication by key.
pub fn horizontal_prune(cones: &[Cone]) -> Vec<Cone> {
    let mut counts = OpCounts::default();
    let deduped = dedup_by_key(cones.iter().cloned());
    prune_counted(&deduped, &mut counts)
        .into_iter()
        .map(|i| deduped[i].clone())
        .collect()
}

fn dedup_by_key(cones: impl Iterator<Item = Cone>) -> Vec<Cone> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for c in cones {
        if seen.insert(c.key().clone(), ()).is_none() {
            out.push(c);
        }
    }
    out
}

/// Indices of the cones not strictly contained in another one. Cones must
/// have distinct keys.
fn prune_counted(cones: &[Cone], counts: &mut OpCounts) -> Vec<usize> {
    let per_cone: Vec<(bool, OpCounts)> = cones
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut local = OpCounts::default();
            let covered = cones
                .iter()
                .enumerate()
                .any(|(j, o)| j != i && o.dim() >= c.dim() && local.contains(o, c));
            (covered, local)
        })
        .collect();
    let mut kept = Vec::new();
    for (i, (covered, local)) in per_cone.into_iter().enumerate() {
        *counts += local;
        if covered {
            counts.cones_pruned_horizontal += 1;
        } else {
            kept.push(i);
        }
    }
    kept
}

/// Stable order of the polytopes by increasing lineality dimension.
pub fn sort_polytopes(polytopes: &[Polytope]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..polytopes.len()).collect();
    order.sort_by_key(|&i| polytopes[i].lineality_basis().len());
    order
}

/// Evaluates `sum_e prod_j sizes[e][j]`: one row per edge of the first
/// polytope, one entry per later polytope. Saturates instead of overflowing.
pub fn cost_bound(sizes: &[Vec<u64>]) -> u128 {
    sizes
        .iter()
        .map(|row| {
            row.iter()
                .fold(1u128, |acc, &s| acc.saturating_mul(u128::from(s)))
        })
        .fold(0u128, u128::saturating_add)
}

/// Sum over `rays` of `max_i v_i - min(min_i v_i, 0)`.
pub fn degree_sum(rays: &[IntVector]) -> BigInt {
    rays.iter()
        .map(|v| {
            let max = v.iter().max().cloned().unwrap_or(BigInt::zero());
            let min = v.iter().min().cloned().unwrap_or(BigInt::zero());
            max - min.min(BigInt::zero())
        })
        .sum()
}

/// Distinct generating rays of `cones` (extreme rays and both orientations of
/// each lineality vector), sorted.
pub fn extract_rays(cones: &[Cone], first_positive: bool) -> Vec<IntVector> {
    let mut rays: Vec<IntVector> = cones.iter().flat_map(Cone::generating_rays).collect();
    if first_positive {
        rays.retain(|r| r.dim() > 0 && r[0] > BigInt::zero());
    }
    rays.sort();
    rays.dedup();
    rays
}

pub(crate) fn validate(polytopes: &[Polytope]) -> Result<usize, GeometryError> {
    if polytopes.len() < 2 {
        return Err(GeometryError::TooFewPolytopes {
            needed: 2,
            got: polytopes.len(),
        });
    }
    let d = polytopes[0].ambient_dim();
    if let Some(bad) = polytopes.iter().find(|p| p.ambient_dim() != d) {
        return Err(GeometryError::DimensionMismatch {
            expected: d,
            found: bad.ambient_dim(),
        });
    }
    Ok(d)
}

/// Runs `f` on a dedicated pool when a thread count is requested.
pub(crate) fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

struct LevelCone {
    cone: Cone,
    root: usize,
}

/// All pretropisms of `polytopes`.
pub fn find_pretropisms(
    polytopes: &[Polytope],
    options: &Options,
) -> Result<PretropismResult, GeometryError> {
    let dim = validate(polytopes)?;
    let order: Vec<usize> = if options.sort {
        sort_polytopes(polytopes)
    } else {
        (0..polytopes.len()).collect()
    };
    with_jobs(options.jobs, || run(polytopes, order, dim, options))
}

fn run(
    polytopes: &[Polytope],
    order: Vec<usize>,
    dim: usize,
    options: &Options,
) -> Result<PretropismResult, GeometryError> {
    let first = &polytopes[order[0]];
    let mut stats = Stats::default();
    let root_count = first.edge_count();
    let mut tested: Vec<Vec<Vec<bool>>> = vec![Vec::new(); root_count];

    let halfspace = options
        .restrict_first_positive
        .then(|| Cone::from_constraints(dim, &[IntVector::unit(dim, 0)], &[]));
    let mut level1_counts = OpCounts::default();
    let mut level: Vec<LevelCone> = Vec::new();
    let mut seen = BTreeMap::new();
    for (root, e) in first.edges().iter().enumerate() {
        let cone = match &halfspace {
            Some(h) => {
                let c = level1_counts.intersect(&e.normal_cone, h);
                if c.is_trivial() {
                    level1_counts.cones_discarded_trivial += 1;
                    continue;
                }
                c
            }
            None => e.normal_cone.clone(),
        };
        if seen.insert(cone.key().clone(), ()).is_none() {
            level.push(LevelCone { cone, root });
        }
    }
    level.sort_by(|a, b| a.cone.key().cmp(b.cone.key()));
    stats.levels.push(LevelStats {
        level: 1,
        polytope: order[0],
        cones_in: 0,
        cones_gathered: level.len(),
        cones_out: level.len(),
        counts: level1_counts,
    });
    let trace_of = |tested: &Vec<Vec<Vec<bool>>>| CostTrace {
        sizes: tested
            .iter()
            .map(|per| {
                (1..polytopes.len())
                    .map(|j| {
                        per.get(j - 1)
                            .map_or(0, |t| t.iter().filter(|&&b| b).count() as u64)
                    })
                    .collect()
            })
            .collect(),
    };
    if level.is_empty() {
        tracing::warn!("first polytope has no edges; no pretropisms");
        let trace = trace_of(&tested);
        return Ok(PretropismResult::empty(order, stats, trace));
    }

    for (k, &pi) in order.iter().enumerate().skip(1) {
        let p = &polytopes[pi];
        let explored: Vec<Exploration> = level
            .par_iter()
            .map(|lc| explore(p, &lc.cone, options.seed))
            .collect::<Result<_, _>>()?;

        let mut counts = OpCounts::default();
        let mut gathered: BTreeMap<ConeKey, LevelCone> = BTreeMap::new();
        for (parent, ex) in level.iter().zip(explored) {
            counts += ex.counts;
            let marks = &mut tested[parent.root];
            if marks.len() < k {
                marks.resize(k, Vec::new());
            }
            let mark = &mut marks[k - 1];
            if mark.is_empty() {
                mark.resize(p.edge_count(), false);
            }
            for e in ex.tested_edges {
                mark[e] = true;
            }
            for cone in ex.cones {
                gathered.entry(cone.key().clone()).or_insert(LevelCone {
                    cone,
                    root: parent.root,
                });
            }
        }
        let gathered: Vec<LevelCone> = gathered.into_values().collect();
        let cones: Vec<Cone> = gathered.iter().map(|lc| lc.cone.clone()).collect();
        let kept = prune_counted(&cones, &mut counts);
        let cones_in = level.len();
        let cones_gathered = gathered.len();
        let mut slots: Vec<Option<LevelCone>> = gathered.into_iter().map(Some).collect();
        level = kept.into_iter().filter_map(|i| slots[i].take()).collect();
        stats.levels.push(LevelStats {
            level: k + 1,
            polytope: pi,
            cones_in,
            cones_gathered,
            cones_out: level.len(),
            counts,
        });
        if level.is_empty() {
            let trace = trace_of(&tested);
            return Ok(PretropismResult::empty(order, stats, trace));
        }
    }

    let cones: Vec<Cone> = level.into_iter().map(|lc| lc.cone).collect();
    let first_positive = options.first_positive || options.restrict_first_positive;
    let rays = extract_rays(&cones, first_positive);
    let trace = trace_of(&tested);
    Ok(PretropismResult {
        cones,
        rays,
        stats,
        order,
        trace,
    })
}
