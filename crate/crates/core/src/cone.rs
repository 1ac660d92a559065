//! Exact polyhedral cones.
//!
//! A [`Cone`] always carries both descriptions: generators (extreme rays plus a
//! lineality basis) and constraints (facet inequalities plus equations). The
//! generator side is kept in a canonical form so that set equality of cones is
//! equality of their [`ConeKey`]s:
//!
//! * the lineality basis is the row-reduced echelon form of the lineality
//!   space, each row primitive with a positive pivot;
//! * extreme rays are projected onto the orthogonal complement of the
//!   lineality space, made primitive and sorted.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dd::{classify_inequalities, DdState};
use crate::error::GeometryError;
use crate::linalg::{int_kernel_basis, orthogonal_basis, project_out, row_echelon, IntVector};

/// Canonical serialization of a cone as a point set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConeKey(Box<[u8]>);

impl ConeKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for ConeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

#[derive(Clone)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<IntVector>,
    lineality: Vec<IntVector>,
    inequalities: Vec<IntVector>,
    equations: Vec<IntVector>,
    dim: usize,
    key: ConeKey,
}

impl Cone {
    /// The cone generated by `rays` (nonnegative combinations) and `lineality`
    /// (arbitrary combinations).
    ///
    /// Panics if a vector does not have length `ambient_dim`.
    pub fn from_rays(ambient_dim: usize, rays: &[IntVector], lineality: &[IntVector]) -> Cone {
        check_dims(ambient_dim, rays.iter().chain(lineality));
        // The dual cone's extreme rays are the facet normals and its
        // lineality is the space of equations.
        let mut dual = DdState::full_space(ambient_dim, rays.len());
        for l in lineality.iter().filter(|l| !l.is_zero()) {
            dual.add_equation(l);
        }
        for (i, r) in rays.iter().enumerate() {
            if !r.is_zero() {
                dual.add_inequality(r, i);
            }
        }
        let facets = dual.rays;
        let mut primal = DdState::full_space(ambient_dim, facets.len());
        for e in &dual.lineality {
            primal.add_equation(e);
        }
        for (i, a) in facets.iter().enumerate() {
            primal.add_inequality(a, i);
        }
        Cone::assemble(ambient_dim, primal.lineality, primal.rays, facets)
    }

    /// The cone `{x : <a, x> >= 0 for a in inequalities, <e, x> = 0 for e in equations}`.
    pub fn from_constraints(
        ambient_dim: usize,
        inequalities: &[IntVector],
        equations: &[IntVector],
    ) -> Cone {
        check_dims(ambient_dim, inequalities.iter().chain(equations));
        let mut st = DdState::full_space(ambient_dim, inequalities.len());
        for e in equations {
            st.add_equation(e);
        }
        for (i, a) in inequalities.iter().enumerate() {
            st.add_inequality(a, i);
        }
        let (facets, _) = classify_inequalities(&st, inequalities.len());
        let facets = facets.into_iter().map(|i| inequalities[i].clone()).collect();
        Cone::assemble(ambient_dim, st.lineality, st.rays, facets)
    }

    pub fn zero(ambient_dim: usize) -> Cone {
        Cone::from_rays(ambient_dim, &[], &[])
    }

    pub fn whole_space(ambient_dim: usize) -> Cone {
        let basis: Vec<_> = (0..ambient_dim).map(|i| IntVector::unit(ambient_dim, i)).collect();
        Cone::from_rays(ambient_dim, &[], &basis)
    }

    /// Builds the canonical cone from a minimal generator description and a
    /// valid (facet) inequality list.
    fn assemble(
        ambient_dim: usize,
        lineality: Vec<IntVector>,
        rays: Vec<IntVector>,
        inequalities: Vec<IntVector>,
    ) -> Cone {
        let lineality = row_echelon(lineality, ambient_dim).rows;
        let ortho = orthogonal_basis(&lineality);
        let mut rays: Vec<IntVector> = rays
            .iter()
            .map(|r| project_out(r, &ortho))
            .filter(|r| !r.is_zero())
            .collect();
        rays.sort();
        rays.dedup();
        let generators: Vec<IntVector> = rays.iter().chain(&lineality).cloned().collect();
        let equations = int_kernel_basis(&generators, ambient_dim);
        let dim = ambient_dim - equations.len();
        let key = make_key(ambient_dim, &lineality, &rays);
        Cone {
            ambient_dim,
            rays,
            lineality,
            inequalities,
            equations,
            dim,
            key,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extreme rays, in canonical form.
    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    /// Lineality basis, in canonical form.
    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    /// Each `a` means `<a, x> >= 0`.
    pub fn inequalities(&self) -> &[IntVector] {
        &self.inequalities
    }

    /// Each `a` means `<a, x> = 0`.
    pub fn equations(&self) -> &[IntVector] {
        &self.equations
    }

    /// Dimension of the cone as a set.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn key(&self) -> &ConeKey {
        &self.key
    }

    pub fn canonical_key(&self) -> ConeKey {
        self.key.clone()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim == 0
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Extreme rays followed by both orientations of each lineality vector.
    pub fn generating_rays(&self) -> Vec<IntVector> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(-l);
        }
        out
    }

    /// Whether the vector `x` lies in the cone.
    pub fn contains_point(&self, x: &IntVector) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
            && self.inequalities.iter().all(|a| a.dot(x) >= BigInt::zero())
    }

    /// Set intersection. Starts from this cone's double description and adds
    /// the other cone's constraints.
    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        let own = self.inequalities.len();
        let capacity = own + other.inequalities.len();
        let mut st = DdState::from_double(
            self.lineality.clone(),
            self.rays.clone(),
            &self.inequalities,
            capacity,
        );
        for e in &other.equations {
            if st.is_zero_cone() {
                break;
            }
            st.add_equation(e);
        }
        for (j, a) in other.inequalities.iter().enumerate() {
            if st.is_zero_cone() {
                break;
            }
            st.add_inequality(a, own + j);
        }
        if st.is_zero_cone() {
            return Cone::zero(self.ambient_dim);
        }
        let (facets, _) = classify_inequalities(&st, capacity);
        let facets = facets
            .into_iter()
            .map(|i| {
                if i < own {
                    self.inequalities[i].clone()
                } else {
                    other.inequalities[i - own].clone()
                }
            })
            .collect();
        Cone::assemble(self.ambient_dim, st.lineality, st.rays, facets)
    }

    /// Whether `inner` is a subset of this cone: every generator of `inner`
    /// satisfies every constraint of `self`.
    pub fn contains(&self, inner: &Cone) -> bool {
        assert_eq!(self.ambient_dim, inner.ambient_dim, "ambient dimension mismatch");
        if inner.dim > self.dim {
            return false;
        }
        inner.rays.iter().all(|r| self.contains_point(r))
            && inner.lineality.iter().all(|l| {
                self.equations.iter().all(|e| e.dot(l).is_zero())
                    && self.inequalities.iter().all(|a| a.dot(l).is_zero())
            })
    }

    /// A primitive vector in the relative interior.
    ///
    /// Seed 0 sums the extreme rays (or, for a linear subspace, the lineality
    /// basis) with unit weights; other seeds draw weights in `1..=16` from a
    /// ChaCha8 stream.
    pub fn interior_ray(&self, seed: u64) -> Result<IntVector, GeometryError> {
        if self.is_trivial() {
            return Err(GeometryError::TrivialCone);
        }
        let gens = if self.rays.is_empty() {
            &self.lineality
        } else {
            &self.rays
        };
        let mut rng = (seed != 0).then(|| ChaCha8Rng::seed_from_u64(seed));
        let mut sum = IntVector::zeros(self.ambient_dim);
        for g in gens {
            let w = match rng.as_mut() {
                Some(rng) => BigInt::from(rng.gen_range(1u32..=16)),
                None => BigInt::one(),
            };
            sum = IntVector::combine(&BigInt::one(), &sum, &w, g);
        }
        sum.primitive().map_err(|_| GeometryError::TrivialCone)
    }
}

/// Free-function form of [`Cone::from_rays`].
pub fn cone_from_rays(ambient_dim: usize, rays: &[IntVector], lineality: &[IntVector]) -> Cone {
    Cone::from_rays(ambient_dim, rays, lineality)
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Cone {}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cone")
            .field("dim", &self.dim)
            .field("rays", &self.rays.iter().map(|r| r.to_string()).collect::<Vec<_>>())
            .field(
                "lineality",
                &self.lineality.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

fn check_dims<'a>(dim: usize, vs: impl Iterator<Item = &'a IntVector>) {
    for v in vs {
        assert_eq!(v.dim(), dim, "vector has dimension {}, expected {dim}", v.dim());
    }
}

fn make_key(ambient_dim: usize, lineality: &[IntVector], rays: &[IntVector]) -> ConeKey {
    let mut s = format!("{ambient_dim}|L");
    for l in lineality {
        s.push('[');
        push_vec(&mut s, l);
        s.push(']');
    }
    s.push_str("|R");
    for r in rays {
        s.push('[');
        push_vec(&mut s, r);
        s.push(']');
    }
    ConeKey(s.into_bytes().into_boxed_slice())
}

fn push_vec(s: &mut String, v: &IntVector) {
    use std::fmt::Write;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{x}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    fn cone(rays: &[&[i64]], lin: &[&[i64]]) -> Cone {
        let d = rays.first().or(lin.first()).map_or(0, |r| r.len());
        let rays: Vec<_> = rays.iter().map(|r| v(r)).collect();
        let lin: Vec<_> = lin.iter().map(|r| v(r)).collect();
        Cone::from_rays(d, &rays, &lin)
    }

    #[test]
    fn quadrant_constraints() {
        let c = cone(&[&[1, 0], &[0, 1]], &[]);
        let mut ineqs = c.inequalities().to_vec();
        ineqs.sort();
        assert_eq!(ineqs, vec![v(&[0, 1]), v(&[1, 0])]);
        assert!(c.equations().is_empty());
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn line_has_one_equation() {
        let c = cone(&[], &[&[1, 1]]);
        assert_eq!(c.equations().len(), 1);
        let e = &c.equations()[0];
        assert!(e == &v(&[1, -1]) || e == &v(&[-1, 1]));
        assert_eq!(c.dim(), 1);
        assert!(c.inequalities().is_empty());
    }

    #[test]
    fn redundant_ray_dropped() {
        let c = cone(&[&[1, 0], &[1, 1], &[1, 2]], &[]);
        assert_eq!(c.rays(), &[v(&[1, 0]), v(&[1, 2])]);
    }

    #[test]
    fn adjacent_quadrants_share_axis() {
        let a = cone(&[&[1, 0], &[0, 1]], &[]);
        let b = cone(&[&[0, 1], &[-1, 0]], &[]);
        let c = a.intersect(&b);
        assert_eq!(c, cone(&[&[0, 1]], &[]));
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn opposite_quadrants_meet_at_zero() {
        let a = cone(&[&[1, 0], &[0, 1]], &[]);
        let b = cone(&[&[-1, 0], &[0, -1]], &[]);
        let c = a.intersect(&b);
        assert!(c.is_trivial());
        assert_eq!(c, Cone::zero(2));
    }

    #[test]
    fn containment_examples() {
        let q = cone(&[&[1, 0], &[0, 1]], &[]);
        let r = cone(&[&[1, 1]], &[]);
        assert!(q.contains(&r));
        assert!(!r.contains(&q));
        assert!(q.contains(&Cone::zero(2)));
        assert!(r.contains(&Cone::zero(2)));
    }

    #[test]
    fn triviality() {
        assert!(Cone::zero(3).is_trivial());
        assert!(!cone(&[&[1, 2, 3]], &[]).is_trivial());
        assert!(!cone(&[], &[&[1, 0, 0]]).is_trivial());
    }

    #[test]
    fn interior_ray_examples() {
        assert_eq!(cone(&[&[1, 0], &[0, 1]], &[]).interior_ray(0).unwrap(), v(&[1, 1]));
        assert_eq!(cone(&[&[2, 4]], &[]).interior_ray(0).unwrap(), v(&[1, 2]));
        assert_eq!(cone(&[], &[&[1, 0, 0]]).interior_ray(0).unwrap(), v(&[1, 0, 0]));
        assert_eq!(Cone::zero(2).interior_ray(0), Err(GeometryError::TrivialCone));
    }

    #[test]
    fn key_examples() {
        let a = cone(&[&[1, 0], &[0, 1]], &[]);
        let b = cone(&[&[0, 1], &[1, 0], &[1, 1]], &[]);
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_eq!(Cone::zero(2).canonical_key().to_string(), "2|L|R");
        assert_eq!(cone(&[], &[&[1, 1]]).key(), cone(&[], &[&[-1, -1]]).key());
    }

    #[test]
    fn rays_with_lineality_are_projected() {
        // Half-plane y >= 0 written with a slanted generator.
        let a = cone(&[&[3, 1]], &[&[1, 0]]);
        assert_eq!(a.rays(), &[v(&[0, 1])]);
        assert_eq!(a.lineality(), &[v(&[1, 0])]);
        let b = Cone::from_constraints(2, &[v(&[0, 1])], &[]);
        assert_eq!(a, b);
    }

    #[test]
    fn whole_space_and_constraints_roundtrip() {
        let w = Cone::whole_space(3);
        assert_eq!(w.dim(), 3);
        assert!(w.inequalities().is_empty() && w.equations().is_empty());
        let oct = Cone::from_constraints(
            3,
            &[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, 1, 1])],
            &[],
        );
        assert_eq!(oct.rays().len(), 3);
        assert_eq!(oct.inequalities().len(), 3);
    }

    #[test]
    fn intersect_with_lineality() {
        // plane x = z intersected with the octant
        let plane = cone(&[], &[&[1, 0, 1], &[0, 1, 0]]);
        let oct = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[]);
        let c = plane.intersect(&oct);
        assert_eq!(c, cone(&[&[1, 0, 1], &[0, 1, 0]], &[]));
        assert_eq!(c, oct.intersect(&plane));
    }
}
