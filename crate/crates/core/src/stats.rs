//! Operation counters for the refinement algorithms.

use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::cone::Cone;

/// Counts of the primitive operations performed by a computation.
///
/// Counting goes through [`OpCounts::intersect`] and [`OpCounts::contains`];
/// each task owns its counter and the totals are merged afterwards, which
/// keeps the result independent of scheduling.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub intersections: u64,
    pub containment_checks: u64,
    pub containment_hits: u64,
    pub edges_visited: u64,
    pub cones_pruned_horizontal: u64,
    pub cones_discarded_trivial: u64,
}

impl OpCounts {
    pub fn intersect(&mut self, a: &Cone, b: &Cone) -> Cone {
        self.intersections += 1;
        a.intersect(b)
    }

    /// Counted form of `outer.contains(inner)`.
    pub fn contains(&mut self, outer: &Cone, inner: &Cone) -> bool {
        self.containment_checks += 1;
        let hit = outer.contains(inner);
        if hit {
            self.containment_hits += 1;
        }
        hit
    }

    /// Every counter multiplied by `k`.
    pub fn scaled(self, k: u64) -> Self {
        Self {
            intersections: self.intersections * k,
            containment_checks: self.containment_checks * k,
            containment_hits: self.containment_hits * k,
            edges_visited: self.edges_visited * k,
            cones_pruned_horizontal: self.cones_pruned_horizontal * k,
            cones_discarded_trivial: self.cones_discarded_trivial * k,
        }
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, o: Self) {
        self.intersections += o.intersections;
        self.containment_checks += o.containment_checks;
        self.containment_hits += o.containment_hits;
        self.edges_visited += o.edges_visited;
        self.cones_pruned_horizontal += o.cones_pruned_horizontal;
        self.cones_discarded_trivial += o.cones_discarded_trivial;
    }
}

impl Add for OpCounts {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

impl std::iter::Sum for OpCounts {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), Add::add)
    }
}

/// Counters for one refinement level.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStats {
    /// Number of polytopes incorporated after this level.
    pub level: usize,
    /// Position of the polytope processed at this level, in input order.
    pub polytope: usize,
    pub cones_in: usize,
    /// Distinct cones gathered before horizontal pruning.
    pub cones_gathered: usize,
    pub cones_out: usize,
    pub counts: OpCounts,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub levels: Vec<LevelStats>,
}

impl Stats {
    pub fn totals(&self) -> OpCounts {
        self.levels.iter().map(|l| l.counts).sum()
    }

    pub fn intersections(&self) -> u64 {
        self.totals().intersections
    }
}
