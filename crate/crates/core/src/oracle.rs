//! The definitional algorithm: the full refinement tree, level by level, with
//! no skeleton walk and no pruning. Used to cross-check the engine and as the
//! baseline for intersection counts.
//!
//! Identical cones reached along different branches are expanded identically,
//! so [`definitional_pretropisms`] stores each level as a multiset and charges
//! every intersection once per copy. The counters match a literal expansion of
//! the tree exactly (see [`refinement_tree`] for that expansion on small
//! inputs) while the work done is proportional to the number of distinct cones.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;

use crate::cone::{Cone, ConeKey};
use crate::engine::{extract_rays, horizontal_prune, sort_polytopes, validate, with_jobs};
use crate::engine::{Options, PretropismResult};
use crate::error::GeometryError;
use crate::polytope::Polytope;
use crate::stats::{LevelStats, OpCounts, Stats};

#[derive(Clone, Debug)]
pub struct RefinementTreeNode {
    pub cone: Cone,
    /// 1 for the edge cones of the first polytope.
    pub level: usize,
    /// Index of the parent node; `None` below the root.
    pub parent: Option<usize>,
    /// Edge of the level's polytope whose normal cone produced this node.
    pub edge: usize,
}

fn processing_order(polytopes: &[Polytope], options: &Options) -> Vec<usize> {
    if options.sort {
        sort_polytopes(polytopes)
    } else {
        (0..polytopes.len()).collect()
    }
}

/// Pretropisms by full common refinement.
///
/// The returned cones are the maximal leaves of the tree, and the rays are
/// extracted from them with the engine's rule, so the two results are
/// directly comparable. Level statistics describe the unpruned tree:
/// `cones_out` counts nodes, with multiplicity.
pub fn definitional_pretropisms(
    polytopes: &[Polytope],
    options: &Options,
) -> Result<PretropismResult, GeometryError> {
    validate(polytopes)?;
    let order = processing_order(polytopes, options);
    with_jobs(options.jobs, || Ok(run(polytopes, order, options)))
}

fn run(polytopes: &[Polytope], order: Vec<usize>, options: &Options) -> PretropismResult {
    let first = &polytopes[order[0]];
    let mut stats = Stats::default();
    let mut level: BTreeMap<ConeKey, (Cone, u64)> = BTreeMap::new();
    for e in first.edges() {
        level
            .entry(e.normal_cone.key().clone())
            .or_insert_with(|| (e.normal_cone.clone(), 0))
            .1 += 1;
    }
    let nodes = |l: &BTreeMap<ConeKey, (Cone, u64)>| l.values().map(|(_, m)| *m as usize).sum();
    stats.levels.push(LevelStats {
        level: 1,
        polytope: order[0],
        cones_in: 0,
        cones_gathered: nodes(&level),
        cones_out: nodes(&level),
        counts: OpCounts::default(),
    });

    for (k, &pi) in order.iter().enumerate().skip(1) {
        if level.is_empty() {
            break;
        }
        let p = &polytopes[pi];
        let parents: Vec<(Cone, u64)> = level.into_values().collect();
        let expanded: Vec<(Vec<Cone>, OpCounts)> = parents
            .par_iter()
            .map(|(c, mult)| {
                let mut counts = OpCounts::default();
                let mut children = Vec::new();
                for e in p.edges() {
                    let x = counts.intersect(c, &e.normal_cone);
                    if x.is_trivial() {
                        counts.cones_discarded_trivial += 1;
                    } else {
                        children.push(x);
                    }
                }
                (children, counts.scaled(*mult))
            })
            .collect();

        let cones_in = nodes_of(&parents);
        let mut counts = OpCounts::default();
        let mut next: BTreeMap<ConeKey, (Cone, u64)> = BTreeMap::new();
        for ((_, mult), (children, c)) in parents.iter().zip(expanded) {
            counts += c;
            for x in children {
                next.entry(x.key().clone()).or_insert_with(|| (x.clone(), 0)).1 += mult;
            }
        }
        level = next;
        stats.levels.push(LevelStats {
            level: k + 1,
            polytope: pi,
            cones_in,
            cones_gathered: nodes(&level),
            cones_out: nodes(&level),
            counts,
        });
    }

    let leaves: Vec<Cone> = level.into_values().map(|(c, _)| c).collect();
    let mut cones = horizontal_prune(&leaves);
    cones.sort_by(|a, b| a.key().cmp(b.key()));
    let rays = extract_rays(
        &cones,
        options.first_positive || options.restrict_first_positive,
    );
    PretropismResult {
        cones,
        rays,
        stats,
        order,
        trace: Default::default(),
    }
}

fn nodes_of(parents: &[(Cone, u64)]) -> usize {
    parents.iter().map(|(_, m)| *m as usize).sum()
}

/// The refinement tree expanded literally, one node per intersection that
/// produced a nontrivial cone. Exponential in the number of polytopes; meant
/// for small inputs and for checking the multiset counters.
pub fn refinement_tree(
    polytopes: &[Polytope],
    options: &Options,
) -> Result<(Vec<RefinementTreeNode>, OpCounts), GeometryError> {
    validate(polytopes)?;
    let order = processing_order(polytopes, options);
    let mut counts = OpCounts::default();
    let mut nodes: Vec<RefinementTreeNode> = polytopes[order[0]]
        .edges()
        .iter()
        .enumerate()
        .map(|(edge, e)| RefinementTreeNode {
            cone: e.normal_cone.clone(),
            level: 1,
            parent: None,
            edge,
        })
        .collect();
    let mut frontier: Vec<usize> = (0..nodes.len()).collect();
    for (k, &pi) in order.iter().enumerate().skip(1) {
        let mut next = Vec::new();
        for &parent in &frontier {
            for (edge, e) in polytopes[pi].edges().iter().enumerate() {
                let x = counts.intersect(&nodes[parent].cone, &e.normal_cone);
                if x.is_trivial() {
                    counts.cones_discarded_trivial += 1;
                    continue;
                }
                next.push(nodes.len());
                nodes.push(RefinementTreeNode {
                    cone: x,
                    level: k + 1,
                    parent: Some(parent),
                    edge,
                });
            }
        }
        frontier = next;
    }
    Ok((nodes, counts))
}

/// Every nontrivial `c ∩ N(e)` over all edges, without traversal, deduplicated
/// and in edge order.
pub fn brute_force_skeleton(p: &Polytope, c: &Cone) -> Result<Vec<Cone>, GeometryError> {
    if c.is_trivial() {
        return Err(GeometryError::TrivialCone);
    }
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for e in p.edges() {
        let x = c.intersect(&e.normal_cone);
        if !x.is_trivial() && seen.insert(x.key().clone(), ()).is_none() {
            out.push(x);
        }
    }
    Ok(out)
}

/// Whether the edges whose normal cones meet `c` nontrivially form a connected
/// subgraph of the edge skeleton (vacuously true when there are none).
pub fn check_pretropism_graph_connected(p: &Polytope, c: &Cone) -> Result<bool, GeometryError> {
    if c.is_trivial() {
        return Err(GeometryError::TrivialCone);
    }
    let hit: Vec<bool> = p
        .edges()
        .iter()
        .map(|e| !c.intersect(&e.normal_cone).is_trivial())
        .collect();
    let Some(start) = hit.iter().position(|&h| h) else {
        return Ok(true);
    };
    let mut seen = vec![false; hit.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(e) = queue.pop_front() {
        for &nb in &p.edges()[e].neighbor_edges {
            if hit[nb] && !seen[nb] {
                seen[nb] = true;
                queue.push_back(nb);
            }
        }
    }
    Ok(hit.iter().zip(&seen).all(|(&h, &s)| !h || s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntVector;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    fn square() -> Polytope {
        Polytope::new(&[v(&[0, 0]), v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap()
    }

    #[test]
    fn squares_refine_to_themselves() {
        let r = definitional_pretropisms(&[square(), square()], &Options::default()).unwrap();
        assert_eq!(r.cones.len(), 4);
        assert_eq!(r.rays, vec![v(&[-1, 0]), v(&[0, -1]), v(&[0, 1]), v(&[1, 0])]);
        // 4 x 4 intersections, 12 of them trivial
        let t = r.stats.totals();
        assert_eq!(t.intersections, 16);
        assert_eq!(t.cones_discarded_trivial, 12);
    }

    #[test]
    fn multiset_counts_match_literal_tree() {
        let tri = Polytope::new(&[v(&[0, 0]), v(&[2, 0]), v(&[0, 1])]).unwrap();
        let ps = [square(), tri, square()];
        let r = definitional_pretropisms(&ps, &Options::default()).unwrap();
        let (nodes, counts) = refinement_tree(&ps, &Options::default()).unwrap();
        assert_eq!(r.stats.totals().intersections, counts.intersections);
        assert_eq!(r.stats.totals().cones_discarded_trivial, counts.cones_discarded_trivial);
        let leaves = nodes.iter().filter(|n| n.level == 3).count();
        assert_eq!(r.stats.levels[2].cones_out, leaves);
        for n in &nodes {
            if let Some(p) = n.parent {
                assert_eq!(nodes[p].level + 1, n.level);
            }
        }
    }

    #[test]
    fn brute_force_on_square() {
        let ray = Cone::from_rays(2, &[v(&[0, 1])], &[]);
        assert_eq!(brute_force_skeleton(&square(), &ray).unwrap(), vec![ray.clone()]);
        assert!(brute_force_skeleton(&square(), &Cone::zero(2)).is_err());
    }

    #[test]
    fn connectivity_on_square() {
        let plane = Cone::whole_space(2);
        assert!(check_pretropism_graph_connected(&square(), &plane).unwrap());
        let ray = Cone::from_rays(2, &[v(&[0, 1])], &[]);
        assert!(check_pretropism_graph_connected(&square(), &ray).unwrap());
    }
}
