//! Lattice-polyhedral geometry of the Newton polyhedron at the origin and
//! the combinatorial invariants read off its bounded faces.

mod hull;
mod nondegeneracy;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{affine_dimension, gcd_all, kernel_basis, primitive, rank};
use crate::lp::{minimize, LpOutcome};
use crate::poly::{ExponentVector, Face};
use hull::{face_lattice, orthant_hull_facets, polytope_facets, undominated, Halfspace};

pub use nondegeneracy::{check_nondegeneracy, face_verdict, FaceVerdict, NondegeneracyScope, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    #[error("support is empty")]
    EmptySupport,
    #[error("support point {point} does not have {n} coordinates")]
    Dimension { point: ExponentVector, n: usize },
}

fn check_support(support: &[ExponentVector], n: usize) -> Result<(), NewtonError> {
    if support.is_empty() {
        return Err(NewtonError::EmptySupport);
    }
    if let Some(p) = support.iter().find(|p| p.dim() != n) {
        return Err(NewtonError::Dimension { point: p.clone(), n });
    }
    Ok(())
}

fn ev(v: Vec<i64>) -> ExponentVector {
    ExponentVector::new(v).expect("hull points are nonnegative")
}

/// A facet of the Newton polyhedron. Unbounded facets have a zero entry in
/// their normal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub vertices: Vec<ExponentVector>,
    pub bounded: bool,
}

/// `conv(support) + R^n_{>=0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    n: usize,
    vertices: Vec<ExponentVector>,
    halfspaces: Vec<Halfspace>,
}

impl NewtonPolyhedron {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn facets(&self) -> Vec<Facet> {
        self.halfspaces
            .iter()
            .map(|h| Facet {
                normal: h.normal.clone(),
                offset: h.offset,
                vertices: self
                    .vertices
                    .iter()
                    .filter(|v| h.is_tight(v.entries()))
                    .cloned()
                    .collect(),
                bounded: h.normal.iter().all(|&a| a > 0),
            })
            .collect()
    }

    /// Membership test for an arbitrary lattice point.
    pub fn contains(&self, p: &ExponentVector) -> bool {
        self.halfspaces.iter().all(|h| h.value(p.entries()) >= h.offset)
    }
}

pub fn newton_polyhedron(support: &[ExponentVector], n: usize) -> Result<NewtonPolyhedron, NewtonError> {
    check_support(support, n)?;
    let points: Vec<Vec<i64>> = support.iter().map(|p| p.entries().to_vec()).collect();
    let points = undominated(&points);
    let halfspaces = orthant_hull_facets(&points, n);
    // pointed polyhedron: a point is a vertex iff its tight normals span R^n
    let vertices = points
        .into_iter()
        .filter(|p| {
            let tight: Vec<Vec<i64>> = halfspaces
                .iter()
                .filter(|h| h.is_tight(p))
                .map(|h| h.normal.clone())
                .collect();
            rank(&tight, n) == n
        })
        .map(ev)
        .collect();
    Ok(NewtonPolyhedron {
        n,
        vertices,
        halfspaces,
    })
}

/// The bounded faces of a Newton polyhedron with their containment relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonBoundary {
    pub n: usize,
    /// Sorted by dimension, then by vertex list.
    pub faces: Vec<Face>,
    /// `(i, j)` whenever face `i` is a facet of face `j`.
    pub covers: Vec<(usize, usize)>,
}

impl NewtonBoundary {
    pub fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == dim)
    }

    pub fn vertices(&self) -> Vec<ExponentVector> {
        self.faces_of_dim(0).map(|f| f.vertices[0].clone()).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Face> {
        self.faces_of_dim(1)
    }

    /// A boundary touches every coordinate axis iff it has a pure-power vertex
    /// on each axis.
    pub fn is_convenient(&self) -> bool {
        let axes: BTreeSet<usize> = self
            .vertices()
            .iter()
            .filter_map(|v| v.pure_power_axis())
            .collect();
        axes.len() == self.n
    }
}

fn sorted_faces(raw: Vec<Face>) -> (Vec<Face>, Vec<(usize, usize)>) {
    let mut faces = raw;
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    let mut covers = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        for (j, g) in faces.iter().enumerate() {
            if g.dim == f.dim + 1 && f.vertices.iter().all(|v| g.vertices.contains(v)) {
                covers.push((i, j));
            }
        }
    }
    (faces, covers)
}

fn summed_normal(halfspaces: &[Halfspace], ids: &[usize], n: usize) -> Vec<i64> {
    let mut normal = vec![0i64; n];
    for &i in ids {
        for (a, b) in normal.iter_mut().zip(&halfspaces[i].normal) {
            *a += b;
        }
    }
    primitive(&normal)
}

fn build_face(vertices: Vec<ExponentVector>, normal: Vec<i64>) -> Face {
    let refs: Vec<&[i64]> = vertices.iter().map(|v| v.entries()).collect();
    let dim = affine_dimension(&refs).unwrap_or(0);
    let offset = vertices[0].dot(&normal);
    Face {
        vertices,
        dim,
        normal,
        offset,
    }
}

/// All bounded faces of `polyhedron`.
///
/// A face cut out by the facets `S` is bounded iff every coordinate is
/// positive in some normal of `S`; the sum of those normals is then a
/// strictly positive supporting functional for it.
pub fn newton_boundary(polyhedron: &NewtonPolyhedron) -> NewtonBoundary {
    let n = polyhedron.n;
    let hs = &polyhedron.halfspaces;
    let verts: Vec<Vec<i64>> = polyhedron.vertices.iter().map(|v| v.entries().to_vec()).collect();
    let records = face_lattice(&verts, hs, |ids| {
        (0..n).all(|c| ids.iter().any(|&i| hs[i].normal[c] > 0))
    });
    let raw = records
        .into_iter()
        .map(|r| {
            let mut vs: Vec<ExponentVector> =
                r.vertex_ids.iter().map(|&i| polyhedron.vertices[i].clone()).collect();
            vs.sort();
            build_face(vs, summed_normal(hs, &r.facet_ids, n))
        })
        .collect();
    let (faces, covers) = sorted_faces(raw);
    NewtonBoundary { n, faces, covers }
}

/// `conv(support)` with its full face lattice (including the polytope itself).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolytope {
    pub n: usize,
    pub dim: usize,
    pub vertices: Vec<ExponentVector>,
    pub faces: Vec<Face>,
}

pub fn newton_polytope(support: &[ExponentVector]) -> Result<NewtonPolytope, NewtonError> {
    let n = support.first().ok_or(NewtonError::EmptySupport)?.dim();
    check_support(support, n)?;
    let distinct: Vec<Vec<i64>> = support
        .iter()
        .map(|p| p.entries().to_vec())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let refs: Vec<&[i64]> = distinct.iter().map(|p| p.as_slice()).collect();
    let k = affine_dimension(&refs).unwrap_or(0);
    if k == 0 {
        let v = ev(distinct[0].clone());
        return Ok(NewtonPolytope {
            n,
            dim: 0,
            vertices: vec![v.clone()],
            faces: vec![build_face(vec![v], vec![0; n])],
        });
    }

    // coordinates on which projection is injective along the affine hull
    let diffs: Vec<Vec<i64>> = distinct[1..]
        .iter()
        .map(|p| p.iter().zip(&distinct[0]).map(|(a, b)| a - b).collect())
        .collect();
    let mut coords: Vec<usize> = Vec::new();
    for c in 0..n {
        let mut trial = coords.clone();
        trial.push(c);
        let cols: Vec<Vec<i64>> = diffs
            .iter()
            .map(|d| trial.iter().map(|&t| d[t]).collect())
            .collect();
        if rank(&cols, trial.len()) == trial.len() {
            coords = trial;
        }
        if coords.len() == k {
            break;
        }
    }
    let projected: Vec<Vec<i64>> = distinct
        .iter()
        .map(|p| coords.iter().map(|&c| p[c]).collect())
        .collect();
    let facets = polytope_facets(&projected, k);
    let lifted: Vec<Halfspace> = facets
        .iter()
        .map(|h| {
            let mut normal = vec![0i64; n];
            for (&c, &a) in coords.iter().zip(&h.normal) {
                normal[c] = a;
            }
            Halfspace {
                normal,
                offset: h.offset,
            }
        })
        .collect();
    let vertex_ids: Vec<usize> = (0..distinct.len())
        .filter(|&i| {
            let tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|h| h.is_tight(&projected[i]))
                .map(|h| h.normal.clone())
                .collect();
            rank(&tight, k) == k
        })
        .collect();
    let verts: Vec<Vec<i64>> = vertex_ids.iter().map(|&i| distinct[i].clone()).collect();
    let records = face_lattice(&verts, &lifted, |_| true);
    let raw = records
        .into_iter()
        .map(|r| {
            let mut vs: Vec<ExponentVector> = r.vertex_ids.iter().map(|&i| ev(verts[i].clone())).collect();
            vs.sort();
            build_face(vs, summed_normal(&lifted, &r.facet_ids, n))
        })
        .collect();
    let (faces, _) = sorted_faces(raw);
    Ok(NewtonPolytope {
        n,
        dim: k,
        vertices: verts.into_iter().map(ev).collect(),
        faces,
    })
}

/// Whether the support contains a pure power of every variable.
///
/// This is the axis condition on the polyhedron: if `t·e_i = Σ λ_j α_j + r`
/// with `λ_j > 0` and `r >= 0`, every coordinate other than `i` vanishes on
/// each `α_j`, so each `α_j` is itself a pure power of `x_i`.
pub fn is_convenient(support: &[ExponentVector], n: usize) -> bool {
    (0..n).all(|axis| support.iter().any(|p| p.pure_power_axis() == Some(axis)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatWitness {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// Flat iff the boundary spans exactly one affine hyperplane, and that
/// hyperplane has a strictly positive normal.
pub fn is_flat(boundary: &NewtonBoundary) -> Option<FlatWitness> {
    let n = boundary.n;
    let vertices = boundary.vertices();
    let first = vertices.first()?;
    let diffs: Vec<Vec<i64>> = vertices[1..]
        .iter()
        .map(|v| v.entries().iter().zip(first.entries()).map(|(a, b)| a - b).collect())
        .collect();
    let kernel = kernel_basis(&diffs, n);
    if kernel.len() != 1 {
        return None;
    }
    let mut normal = kernel.into_iter().next().unwrap();
    if normal.iter().all(|&a| a < 0) {
        normal.iter_mut().for_each(|a| *a = -*a);
    }
    if !normal.iter().all(|&a| a > 0) {
        return None;
    }
    let offset = first.dot(&normal);
    Some(FlatWitness { normal, offset })
}

/// A boundary vertex with all coordinates positive, with its lattice distance
/// to the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorVertexData {
    pub q: ExponentVector,
    pub d: i64,
}

pub fn interior_vertices(boundary: &NewtonBoundary) -> Vec<InteriorVertexData> {
    boundary
        .vertices()
        .into_iter()
        .filter(|v| v.is_interior())
        .map(|q| InteriorVertexData {
            d: gcd_all(q.entries()),
            q,
        })
        .collect()
}

/// Lattice points of the closed segment `[a, b]`, from `a` to `b`.
pub fn segment_lattice_points(a: &ExponentVector, b: &ExponentVector) -> Vec<ExponentVector> {
    let delta: Vec<i64> = b.entries().iter().zip(a.entries()).map(|(x, y)| x - y).collect();
    let g = gcd_all(&delta);
    if g == 0 {
        return vec![a.clone()];
    }
    let step: Vec<i64> = delta.iter().map(|d| d / g).collect();
    (0..=g)
        .map(|k| ev(a.entries().iter().zip(&step).map(|(x, s)| x + k * s).collect()))
        .collect()
}

/// Number of lattice points with all coordinates positive lying on some
/// closed bounded edge.
pub fn pi_f(boundary: &NewtonBoundary) -> usize {
    boundary
        .edges()
        .flat_map(|e| segment_lattice_points(&e.vertices[0], &e.vertices[1]))
        .filter(|p| p.is_interior())
        .collect::<BTreeSet<_>>()
        .len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiHomogeneity {
    pub weights: Vec<i64>,
    pub degree: i64,
}

/// Positive integer weights `v` and degree `C` with `v·α = C` on the support.
///
/// Solved as the LP `min Σ v_i` subject to `v_i >= 1` and the equalities;
/// the rational optimum is scaled to a primitive integer vector.
pub fn is_quasi_homogeneous(support: &[ExponentVector], n: usize) -> Option<QuasiHomogeneity> {
    if support.is_empty() || support.iter().any(|p| p.dim() != n) {
        return None;
    }
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    // variables: w_1..w_n (v_i = w_i + 1) and C
    let mut cost = vec![q(1); n];
    cost.push(q(0));
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for p in support {
        let mut row: Vec<BigRational> = p.entries().iter().map(|&a| q(a)).collect();
        row.push(q(-1));
        rows.push(row);
        rhs.push(q(-p.degree()));
    }
    let LpOutcome::Optimal { x, .. } = minimize(&cost, &rows, &rhs) else {
        return None;
    };
    let mut values: Vec<BigRational> = x[..n].iter().map(|w| w + BigRational::one()).collect();
    values.push(x[n].clone());
    if !values[n].is_positive() {
        return None;
    }
    let lcm = values
        .iter()
        .fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let ints: Vec<BigInt> = values.iter().map(|v| (v * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let ints: Vec<i64> = ints
        .iter()
        .map(|v| (v / &g).to_i64().expect("weights fit in i64"))
        .collect();
    Some(QuasiHomogeneity {
        weights: ints[..n].to_vec(),
        degree: ints[n],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<ExponentVector> {
        v.iter().map(|p| ExponentVector::new(p.to_vec()).unwrap()).collect()
    }

    fn boundary_of(v: &[&[i64]]) -> NewtonBoundary {
        let s = pts(v);
        newton_boundary(&newton_polyhedron(&s, s[0].dim()).unwrap())
    }

    #[test]
    fn polyhedron_vertices() {
        let np = newton_polyhedron(&pts(&[&[0, 4], &[3, 0]]), 2).unwrap();
        assert_eq!(np.vertices(), pts(&[&[0, 4], &[3, 0]]).as_slice());
        let np = newton_polyhedron(&pts(&[&[0, 4], &[1, 1], &[3, 0]]), 2).unwrap();
        assert_eq!(np.vertices(), pts(&[&[0, 4], &[1, 1], &[3, 0]]).as_slice());
        let np = newton_polyhedron(&pts(&[&[0, 4], &[2, 2], &[3, 0]]), 2).unwrap();
        assert_eq!(np.vertices(), pts(&[&[0, 4], &[3, 0]]).as_slice());
        assert!(np.contains(&pts(&[&[2, 2]])[0]));
    }

    #[test]
    fn polyhedron_errors() {
        assert_eq!(newton_polyhedron(&[], 2), Err(NewtonError::EmptySupport));
        assert!(matches!(
            newton_polyhedron(&pts(&[&[1, 2, 3]]), 2),
            Err(NewtonError::Dimension { .. })
        ));
    }

    #[test]
    fn figure_boundaries() {
        let b1 = boundary_of(&[&[0, 4], &[3, 0]]);
        assert_eq!(b1.faces.len(), 3);
        let edge = b1.edges().next().unwrap();
        assert_eq!(edge.vertices, pts(&[&[0, 4], &[3, 0]]));
        assert_eq!((edge.normal.clone(), edge.offset), (vec![4, 3], 12));
        assert_eq!(b1.covers, vec![(0, 2), (1, 2)]);

        let b2 = boundary_of(&[&[0, 4], &[1, 1], &[3, 0]]);
        assert_eq!(b2.faces_of_dim(0).count(), 3);
        let edges: Vec<_> = b2.edges().map(|e| e.vertices.clone()).collect();
        assert_eq!(
            edges,
            vec![pts(&[&[0, 4], &[1, 1]]), pts(&[&[1, 1], &[3, 0]])]
        );
        for f in &b2.faces {
            assert!(f.normal.iter().all(|&a| a > 0));
            for v in &f.vertices {
                assert_eq!(v.dot(&f.normal), f.offset);
            }
        }
    }

    #[test]
    fn single_point_boundary() {
        let b = boundary_of(&[&[2, 2]]);
        assert_eq!(b.faces.len(), 1);
        assert_eq!(b.faces[0].vertices, pts(&[&[2, 2]]));
        assert!(!b.is_convenient());
    }

    #[test]
    fn convenience() {
        assert!(is_convenient(&pts(&[&[0, 4], &[1, 1], &[3, 0]]), 2));
        assert!(!is_convenient(&pts(&[&[1, 1], &[3, 0]]), 2));
        assert!(is_convenient(&pts(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]), 3));
        assert!(boundary_of(&[&[0, 4], &[1, 1], &[3, 0]]).is_convenient());
    }

    #[test]
    fn flatness() {
        let w = is_flat(&boundary_of(&[&[0, 4], &[3, 0]])).unwrap();
        assert_eq!((w.normal, w.offset), (vec![4, 3], 12));
        assert!(is_flat(&boundary_of(&[&[0, 4], &[1, 1], &[3, 0]])).is_none());
        let w = is_flat(&boundary_of(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap();
        assert_eq!((w.normal, w.offset), (vec![1, 1, 1], 2));
        // a lone vertex spans no hyperplane
        assert!(is_flat(&boundary_of(&[&[2, 2]])).is_none());
    }

    #[test]
    fn interior_vertex_data() {
        let iv = interior_vertices(&boundary_of(&[&[0, 4], &[1, 1], &[3, 0]]));
        assert_eq!(iv, vec![InteriorVertexData { q: pts(&[&[1, 1]])[0].clone(), d: 1 }]);
        assert!(interior_vertices(&boundary_of(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])).is_empty());
        let t = boundary_of(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 7], &[1, 1, 1]]);
        let iv = interior_vertices(&t);
        assert_eq!(iv.len(), 1);
        assert_eq!(iv[0].q, pts(&[&[1, 1, 1]])[0]);
        assert_eq!(iv[0].d, 1);
        // gcd convention for the lattice distance
        let iv = interior_vertices(&boundary_of(&[&[6, 0], &[2, 2], &[0, 6]]));
        assert_eq!(iv[0].d, 2);
    }

    #[test]
    fn pi_f_values() {
        assert_eq!(pi_f(&boundary_of(&[&[0, 4], &[1, 1], &[3, 0]])), 1);
        assert_eq!(pi_f(&boundary_of(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]])), 0);
        assert_eq!(pi_f(&boundary_of(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 7], &[1, 1, 1]])), 1);
        // x^2 + y^2: the edge passes through (1,1)
        assert_eq!(pi_f(&boundary_of(&[&[2, 0], &[0, 2]])), 1);
    }

    #[test]
    fn segments() {
        let s = segment_lattice_points(&pts(&[&[0, 4]])[0], &pts(&[&[3, 0]])[0]);
        assert_eq!(s, pts(&[&[0, 4], &[3, 0]]));
        let s = segment_lattice_points(&pts(&[&[4, 0]])[0], &pts(&[&[0, 4]])[0]);
        assert_eq!(s, pts(&[&[4, 0], &[3, 1], &[2, 2], &[1, 3], &[0, 4]]));
        let s = segment_lattice_points(&pts(&[&[2, 0, 0]])[0], &pts(&[&[0, 0, 4]])[0]);
        assert_eq!(s, pts(&[&[2, 0, 0], &[1, 0, 2], &[0, 0, 4]]));
    }

    #[test]
    fn quasi_homogeneity() {
        let qh = is_quasi_homogeneous(&pts(&[&[0, 4], &[3, 0]]), 2).unwrap();
        assert_eq!((qh.weights, qh.degree), (vec![4, 3], 12));
        assert!(is_quasi_homogeneous(&pts(&[&[0, 4], &[1, 1], &[3, 0]]), 2).is_none());
        let qh = is_quasi_homogeneous(&pts(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]), 3).unwrap();
        assert_eq!((qh.weights, qh.degree), (vec![1, 1, 1], 2));
        // non-unique weights still yield a valid primitive solution
        let qh = is_quasi_homogeneous(&pts(&[&[2, 2]]), 2).unwrap();
        assert_eq!(qh.weights.iter().map(|w| w * 2).sum::<i64>(), qh.degree);
        assert!(qh.weights.iter().all(|&w| w > 0));
    }

    #[test]
    fn polytopes() {
        let p = newton_polytope(&pts(&[&[0, 4], &[1, 1], &[3, 0]])).unwrap();
        assert_eq!(p.dim, 2);
        assert_eq!(p.vertices.len(), 3);
        assert_eq!(p.faces.len(), 7);
        let p = newton_polytope(&pts(&[&[2, 0], &[0, 2], &[1, 1]])).unwrap();
        assert_eq!(p.dim, 1);
        assert_eq!(p.vertices, pts(&[&[0, 2], &[2, 0]]));
        let p = newton_polytope(&pts(&[&[3, 0, 0]])).unwrap();
        assert_eq!(p.dim, 0);
        assert_eq!(p.faces.len(), 1);
        // tetrahedron: 4 + 6 + 4 + 1 faces
        let p = newton_polytope(&pts(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 7], &[1, 1, 1]])).unwrap();
        assert_eq!(p.faces.len(), 15);
    }
}
