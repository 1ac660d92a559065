//! Convex hulls of lattice point sets and their edge skeletons.
//!
//! The hull is computed by converting the homogenized point cone
//! `cone{(1, p)}` to its facet description, so non-full-dimensional supports
//! need no special treatment: the equations of the homogenized cone are the
//! affine hull and everything else is done within it.
//!
//! Inner-normal convention throughout: a facet `(a, b)` means `<a, x> >= b`
//! on the polytope, and a normal cone collects directions minimized on a face.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::cone::Cone;
use crate::dd::{DdState, ZeroSet};
use crate::error::GeometryError;
use crate::linalg::{int_kernel_basis, orthogonal_basis, project_out, row_echelon, IntVector};

/// Facet inequality `<normal, x> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: IntVector,
    pub offset: BigInt,
}

#[derive(Clone, Debug)]
pub struct EdgeRecord {
    /// Vertex indices, smaller first.
    pub endpoints: (usize, usize),
    /// Edges sharing an endpoint, ascending.
    pub neighbor_edges: Vec<usize>,
    pub normal_cone: Cone,
}

/// Vertices minimizing a linear functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFace {
    pub vertex_indices: Vec<usize>,
    pub defining_ray: IntVector,
}

#[derive(Clone, Debug)]
pub struct Polytope {
    ambient_dim: usize,
    points: Vec<IntVector>,
    vertices: Vec<IntVector>,
    facets: Vec<Facet>,
    edges: Vec<EdgeRecord>,
    affine_span_basis: Vec<IntVector>,
    lineality_basis: Vec<IntVector>,
    vertex_edges: Vec<Vec<usize>>,
}

impl Polytope {
    /// Convex hull of `points`. Vertices are reported in lexicographic order.
    pub fn new(points: &[IntVector]) -> Result<Polytope, GeometryError> {
        let first = points.first().ok_or(GeometryError::EmptyPointSet)?;
        let d = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != d) {
            return Err(GeometryError::DimensionMismatch {
                expected: d,
                found: bad.dim(),
            });
        }
        let distinct: Vec<IntVector> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        let diffs: Vec<IntVector> = distinct.iter().map(|p| p.sub(&distinct[0])).collect();
        let affine_span_basis = row_echelon(diffs.clone(), d).rows;
        let lineality_basis = int_kernel_basis(&diffs, d);
        let intrinsic = affine_span_basis.len();

        if intrinsic == 0 {
            return Ok(Polytope {
                ambient_dim: d,
                points: points.to_vec(),
                vertices: distinct,
                facets: Vec::new(),
                edges: Vec::new(),
                affine_span_basis,
                lineality_basis,
                vertex_edges: vec![Vec::new()],
            });
        }

        let facets = hull_facets(&distinct, &lineality_basis);
        let tight = |p: &IntVector| {
            let mut z = ZeroSet::new(facets.len());
            for (i, f) in facets.iter().enumerate() {
                if f.normal.dot(p) == f.offset {
                    z.set(i);
                }
            }
            z
        };

        // A point is a vertex iff no other point lies on all of its facets.
        let point_sets: Vec<ZeroSet> = distinct.iter().map(tight).collect();
        let vertex_ids: Vec<usize> = (0..distinct.len())
            .filter(|&i| {
                !(0..distinct.len()).any(|j| j != i && point_sets[i].is_subset(&point_sets[j]))
            })
            .collect();
        let vertices: Vec<IntVector> = vertex_ids.iter().map(|&i| distinct[i].clone()).collect();
        let vsets: Vec<ZeroSet> = vertex_ids.iter().map(|&i| point_sets[i].clone()).collect();

        // Two vertices span an edge iff the smallest face containing both
        // (the meet of their common facets) holds no other vertex.
        let mut pairs = Vec::new();
        for u in 0..vertices.len() {
            for w in u + 1..vertices.len() {
                let common = vsets[u].and(&vsets[w]);
                let blocked = (0..vertices.len())
                    .any(|x| x != u && x != w && common.is_subset(&vsets[x]));
                if !blocked {
                    pairs.push((u, w, common));
                }
            }
        }

        let mut vertex_edges = vec![Vec::new(); vertices.len()];
        for (k, (u, w, _)) in pairs.iter().enumerate() {
            vertex_edges[*u].push(k);
            vertex_edges[*w].push(k);
        }
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(k, (u, w, common))| {
                let normals: Vec<IntVector> = (0..facets.len())
                    .filter(|&i| common.get(i))
                    .map(|i| facets[i].normal.clone())
                    .collect();
                let mut neighbor_edges: Vec<usize> = vertex_edges[*u]
                    .iter()
                    .chain(&vertex_edges[*w])
                    .copied()
                    .filter(|&e| e != k)
                    .collect();
                neighbor_edges.sort_unstable();
                neighbor_edges.dedup();
                EdgeRecord {
                    endpoints: (*u, *w),
                    neighbor_edges,
                    normal_cone: Cone::from_rays(d, &normals, &lineality_basis),
                }
            })
            .collect();

        Ok(Polytope {
            ambient_dim: d,
            points: points.to_vec(),
            vertices,
            facets,
            edges,
            affine_span_basis,
            lineality_basis,
            vertex_edges,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The input support, as given.
    pub fn points(&self) -> &[IntVector] {
        &self.points
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Directions spanning the affine hull.
    pub fn affine_span_basis(&self) -> &[IntVector] {
        &self.affine_span_basis
    }

    /// Orthogonal complement of the affine hull directions; shared by every
    /// normal cone of the polytope.
    pub fn lineality_basis(&self) -> &[IntVector] {
        &self.lineality_basis
    }

    pub fn intrinsic_dim(&self) -> usize {
        self.affine_span_basis.len()
    }

    /// Edges incident to vertex `v`.
    pub fn vertex_edges(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    /// The face minimizing `<r, x>`.
    pub fn initial_face(&self, r: &IntVector) -> Result<SupportFace, GeometryError> {
        if r.dim() != self.ambient_dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.ambient_dim,
                found: r.dim(),
            });
        }
        if r.is_zero() {
            return Err(GeometryError::ZeroRay);
        }
        let values: Vec<BigInt> = self.vertices.iter().map(|v| r.dot(v)).collect();
        let min = values.iter().min().expect("polytope has a vertex");
        let vertex_indices = values
            .iter()
            .enumerate()
            .filter(|(_, x)| *x == min)
            .map(|(i, _)| i)
            .collect();
        Ok(SupportFace {
            vertex_indices,
            defining_ray: r.clone(),
        })
    }

    /// Edges with at least one endpoint in `face`, ascending.
    pub fn edges_touching(&self, face: &SupportFace) -> Vec<usize> {
        let mut out: Vec<usize> = face
            .vertex_indices
            .iter()
            .flat_map(|&v| self.vertex_edges[v].iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Free-function form of [`Polytope::new`].
pub fn build_polytope(points: &[IntVector]) -> Result<Polytope, GeometryError> {
    Polytope::new(points)
}

/// Facets of `conv(points)` with normals orthogonal to `lineality`.
fn hull_facets(points: &[IntVector], lineality: &[IntVector]) -> Vec<Facet> {
    let d = points[0].dim();
    let mut dual = DdState::full_space(d + 1, points.len());
    for (i, p) in points.iter().enumerate() {
        let mut lifted = Vec::with_capacity(d + 1);
        lifted.push(BigInt::one());
        lifted.extend(p.iter().cloned());
        dual.add_inequality(&IntVector::new(lifted), i);
    }
    let ortho = orthogonal_basis(lineality);
    let mut facets: Vec<Facet> = dual
        .rays
        .iter()
        .filter_map(|f| {
            let a = IntVector::new(f.entries()[1..].to_vec());
            let normal = project_out(&a, &ortho);
            if normal.is_zero() {
                return None;
            }
            let offset = points.iter().map(|p| normal.dot(p)).min()?;
            Some(Facet { normal, offset })
        })
        .collect();
    facets.sort_by(|x, y| x.normal.cmp(&y.normal));
    facets.dedup();
    facets
}
