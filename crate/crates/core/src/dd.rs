//! Double description kernel.
//!
//! Converts between the two representations of a polyhedral cone by adding
//! constraints one at a time to a (lineality, extreme rays) pair. Adjacency of
//! rays is decided combinatorially from zero sets over the processed
//! inequalities, so the kernel never leaves exact integer arithmetic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::IntVector;

/// Fixed-capacity bit set over constraint indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct ZeroSet(Vec<u64>);

impl ZeroSet {
    pub fn new(capacity: usize) -> Self {
        Self(vec![0; capacity.div_ceil(64).max(1)])
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn and(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn is_subset(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Intermediate (and final) state of a double description run.
#[derive(Clone, Debug)]
pub(crate) struct DdState {
    pub lineality: Vec<IntVector>,
    pub rays: Vec<IntVector>,
    /// Per ray: processed inequalities it satisfies with equality.
    pub zeros: Vec<ZeroSet>,
    processed: ZeroSet,
}

impl DdState {
    /// The whole space, ready to accept up to `capacity` inequalities.
    pub fn full_space(dim: usize, capacity: usize) -> Self {
        Self {
            lineality: (0..dim).map(|i| IntVector::unit(dim, i)).collect(),
            rays: Vec::new(),
            zeros: Vec::new(),
            processed: ZeroSet::new(capacity),
        }
    }

    /// Starts from a cone already known in both forms.
    ///
    /// `rays` must be the extreme rays of the cone cut out by `inequalities`
    /// (plus whatever equations) with the given lineality; the inequalities
    /// occupy bits `0..inequalities.len()`.
    pub fn from_double(
        lineality: Vec<IntVector>,
        rays: Vec<IntVector>,
        inequalities: &[IntVector],
        capacity: usize,
    ) -> Self {
        debug_assert!(capacity >= inequalities.len());
        let mut processed = ZeroSet::new(capacity);
        for i in 0..inequalities.len() {
            processed.set(i);
        }
        let zeros = rays
            .iter()
            .map(|r| {
                let mut z = ZeroSet::new(capacity);
                for (i, a) in inequalities.iter().enumerate() {
                    if a.dot(r).is_zero() {
                        z.set(i);
                    }
                }
                z
            })
            .collect();
        Self {
            lineality,
            rays,
            zeros,
            processed,
        }
    }

    pub fn is_zero_cone(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }

    /// Intersects with `{x : <a, x> = 0}`.
    pub fn add_equation(&mut self, a: &IntVector) {
        if self.cut_lineality(a).is_some() {
            return;
        }
        let (pos, neg, zero) = self.partition(a);
        if pos.is_empty() && neg.is_empty() {
            return;
        }
        let combos = self.combinations(a, &pos, &neg);
        let mut rays = Vec::with_capacity(zero.len() + combos.len());
        let mut zeros = Vec::with_capacity(rays.capacity());
        for (i, _) in zero {
            rays.push(self.rays[i].clone());
            zeros.push(self.zeros[i].clone());
        }
        for (r, z) in combos {
            rays.push(r);
            zeros.push(z);
        }
        self.rays = rays;
        self.zeros = zeros;
    }

    /// Intersects with `{x : <a, x> >= 0}`, recording it as inequality `bit`.
    pub fn add_inequality(&mut self, a: &IntVector, bit: usize) {
        if let Some(pivot) = self.cut_lineality(a) {
            for z in &mut self.zeros {
                z.set(bit);
            }
            // The pivot direction was in the lineality, so it is tight on every
            // earlier constraint.
            self.rays.push(pivot);
            self.zeros.push(self.processed.clone());
            self.processed.set(bit);
            return;
        }
        let (pos, neg, zero) = self.partition(a);
        self.processed.set(bit);
        for &(i, _) in &zero {
            self.zeros[i].set(bit);
        }
        if neg.is_empty() {
            return;
        }
        let combos = self.combinations(a, &pos, &neg);
        let mut rays = Vec::with_capacity(pos.len() + zero.len() + combos.len());
        let mut zeros = Vec::with_capacity(rays.capacity());
        for &(i, _) in pos.iter().chain(&zero) {
            rays.push(self.rays[i].clone());
            zeros.push(self.zeros[i].clone());
        }
        for (r, mut z) in combos {
            z.set(bit);
            rays.push(r);
            zeros.push(z);
        }
        self.rays = rays;
        self.zeros = zeros;
    }

    /// If `a` is not identically zero on the lineality, removes one lineality
    /// direction so that the rest (and all rays) become orthogonal to `a`.
    /// Returns that direction, oriented so that `<a, pivot> > 0`.
    fn cut_lineality(&mut self, a: &IntVector) -> Option<IntVector> {
        let idx = self.lineality.iter().position(|l| !a.dot(l).is_zero())?;
        let mut pivot = self.lineality.swap_remove(idx);
        let mut s = a.dot(&pivot);
        if s < BigInt::zero() {
            pivot = -pivot;
            s = -s;
        }
        for l in self.lineality.iter_mut().chain(self.rays.iter_mut()) {
            let t = a.dot(l);
            if !t.is_zero() {
                let mut next = IntVector::combine(&s, l, &-t, &pivot);
                next.make_primitive();
                *l = next;
            }
        }
        pivot.make_primitive();
        Some(pivot)
    }

    #[allow(clippy::type_complexity)]
    fn partition(
        &self,
        a: &IntVector,
    ) -> (Vec<(usize, BigInt)>, Vec<(usize, BigInt)>, Vec<(usize, BigInt)>) {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zero = Vec::new();
        for (i, r) in self.rays.iter().enumerate() {
            let t = a.dot(r);
            match t.cmp(&BigInt::zero()) {
                Ordering::Greater => pos.push((i, t)),
                Ordering::Less => neg.push((i, t)),
                Ordering::Equal => zero.push((i, t)),
            }
        }
        (pos, neg, zero)
    }

    /// New rays on the hyperplane `<a, x> = 0` from adjacent (pos, neg) pairs.
    fn combinations(
        &self,
        _a: &IntVector,
        pos: &[(usize, BigInt)],
        neg: &[(usize, BigInt)],
    ) -> Vec<(IntVector, ZeroSet)> {
        let mut out = Vec::new();
        for (p, tp) in pos {
            for (n, tn) in neg {
                let common = self.zeros[*p].and(&self.zeros[*n]);
                if !self.adjacent(*p, *n, &common) {
                    continue;
                }
                // tp > 0 > tn: tp * n - tn * p lies on the hyperplane.
                let mut r = IntVector::combine(tp, &self.rays[*n], &-tn, &self.rays[*p]);
                r.make_primitive();
                out.push((r, common));
            }
        }
        out
    }

    fn adjacent(&self, p: usize, n: usize, common: &ZeroSet) -> bool {
        !self
            .zeros
            .iter()
            .enumerate()
            .any(|(k, z)| k != p && k != n && common.is_subset(z))
    }
}

/// Splits processed inequalities into implicit equalities and irredundant
/// facets, using the final zero sets.
///
/// Returns `(facets, implicit)` as index lists into the inequality sequence;
/// among inequalities defining the same facet only the first is kept.
pub(crate) fn classify_inequalities(state: &DdState, count: usize) -> (Vec<usize>, Vec<usize>) {
    let nrays = state.rays.len();
    let mut implicit = Vec::new();
    let mut candidates: Vec<(usize, ZeroSet)> = Vec::new();
    for i in 0..count {
        let mut tight = ZeroSet::new(nrays);
        let mut all = true;
        for (k, z) in state.zeros.iter().enumerate() {
            if z.get(i) {
                tight.set(k);
            } else {
                all = false;
            }
        }
        if all {
            implicit.push(i);
        } else {
            candidates.push((i, tight));
        }
    }
    let mut facets = Vec::new();
    for (idx, (i, t)) in candidates.iter().enumerate() {
        let dominated = candidates.iter().enumerate().any(|(jdx, (_, u))| {
            jdx != idx && t.is_subset(u) && (t != u || jdx < idx)
        });
        if !dominated {
            facets.push(*i);
        }
    }
    (facets, implicit)
}
