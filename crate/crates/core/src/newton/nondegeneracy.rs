use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{newton_boundary, newton_polyhedron, newton_polytope, segment_lattice_points, NewtonError};
use crate::poly::{support, ExponentVector, Face, SparsePolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NondegeneracyScope {
    /// Faces of the Newton boundary.
    AtZero,
    /// Faces of the Newton polytope.
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NonDegenerate,
    Degenerate,
    /// Faces of dimension two or more are not decided.
    Assumed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceVerdict {
    pub face: Face,
    pub verdict: Verdict,
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// Squarefreeness over Q (equivalently over C) of a univariate polynomial
/// given by ascending coefficients.
pub(crate) fn is_squarefree(coeffs: &[BigRational]) -> bool {
    let mut p = coeffs.to_vec();
    trim(&mut p);
    if p.len() <= 1 {
        return true;
    }
    let derivative: Vec<BigRational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(k.into()))
        .collect();
    gcd(&p, &derivative).len() == 1
}

/// Verdict for a single face of `p`'s relevant polytope.
///
/// On an edge `[a, b]` the restriction is `x^a * g(x^u)` with `u` the
/// primitive edge direction; its zero set in the torus is smooth and reduced
/// exactly when `g` is squarefree (`g(0) != 0` since `a` is a vertex).
pub fn face_verdict(p: &SparsePolynomial, face: &Face) -> Verdict {
    match face.dim {
        0 => Verdict::NonDegenerate,
        1 => {
            let coeffs: Vec<BigRational> = segment_lattice_points(&face.vertices[0], &face.vertices[1])
                .iter()
                .map(|e: &ExponentVector| p.coefficient(e).cloned().unwrap_or_else(BigRational::zero))
                .collect();
            if is_squarefree(&coeffs) {
                Verdict::NonDegenerate
            } else {
                Verdict::Degenerate
            }
        }
        _ => Verdict::Assumed,
    }
}

pub fn check_nondegeneracy(
    p: &SparsePolynomial,
    scope: NondegeneracyScope,
) -> Result<Vec<FaceVerdict>, NewtonError> {
    let supp: Vec<ExponentVector> = support(p).into_iter().collect();
    let faces = match scope {
        NondegeneracyScope::AtZero => newton_boundary(&newton_polyhedron(&supp, p.n())?).faces,
        NondegeneracyScope::Global => newton_polytope(&supp)?.faces,
    };
    Ok(faces
        .into_iter()
        .map(|face| FaceVerdict {
            verdict: face_verdict(p, &face),
            face,
        })
        .collect())
}
