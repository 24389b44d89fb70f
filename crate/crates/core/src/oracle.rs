//! Slow, independent reference implementations used to cross-check the hull
//! enumeration and the edge lattice-point count on small inputs.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::lp::feasible_point;
use crate::newton::NewtonBoundary;
use crate::poly::ExponentVector;

pub use crate::newton::segment_lattice_points;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Whether `p` lies in `conv(others) + R^n_{>=0}`, decided by feasibility of
/// `Σ λ_j q_j + s = p`, `Σ λ_j = 1`, `λ, s >= 0`.
fn dominated_by_hull(p: &ExponentVector, others: &[&ExponentVector]) -> bool {
    if others.is_empty() {
        return false;
    }
    let n = p.dim();
    let m = others.len();
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row: Vec<BigRational> = others.iter().map(|o| q(o.entries()[i])).collect();
        row.extend((0..n).map(|j| q((i == j) as i64)));
        rows.push(row);
        rhs.push(q(p.entries()[i]));
    }
    let mut last = vec![q(1); m];
    last.extend((0..n).map(|_| q(0)));
    rows.push(last);
    rhs.push(q(1));
    feasible_point(&rows, &rhs).is_some()
}

/// Vertices of `conv(support) + R^n_{>=0}`: the points not contained in the
/// polyhedron spanned by the remaining (distinct) points.
pub fn brute_hull_vertices(support: &[ExponentVector], n: usize) -> BTreeSet<ExponentVector> {
    let points: BTreeSet<&ExponentVector> = support.iter().filter(|p| p.dim() == n).collect();
    points
        .iter()
        .filter(|&&p| {
            let others: Vec<&ExponentVector> = points.iter().copied().filter(|&o| o != p).collect();
            !dominated_by_hull(p, &others)
        })
        .map(|&p| p.clone())
        .collect()
}

fn on_segment(p: &[i64], a: &[i64], b: &[i64]) -> bool {
    let d: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let w: Vec<i64> = p.iter().zip(a).map(|(x, y)| x - y).collect();
    // w = t d with 0 <= t <= 1
    for i in 0..d.len() {
        for j in 0..d.len() {
            if w[i] * d[j] != w[j] * d[i] {
                return false;
            }
        }
    }
    let dd: i64 = d.iter().map(|x| x * x).sum();
    let wd: i64 = w.iter().zip(&d).map(|(x, y)| x * y).sum();
    if dd == 0 {
        return w.iter().all(|&x| x == 0);
    }
    (0..=dd).contains(&wd)
}

/// Count of points of `[1, bound]^n` lying on some closed bounded edge.
pub fn brute_pi_f(boundary: &NewtonBoundary, bound: i64) -> usize {
    let n = boundary.n;
    let edges: Vec<(&[i64], &[i64])> = boundary
        .edges()
        .map(|e| (e.vertices[0].entries(), e.vertices[1].entries()))
        .collect();
    if n == 0 || bound < 1 {
        return 0;
    }
    let mut count = 0;
    let mut p = vec![1i64; n];
    loop {
        if edges.iter().any(|(a, b)| on_segment(&p, a, b)) {
            count += 1;
        }
        let mut i = 0;
        while i < n && p[i] == bound {
            p[i] = 1;
            i += 1;
        }
        if i == n {
            return count;
        }
        p[i] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::{newton_boundary, newton_polyhedron};

    fn pts(v: &[&[i64]]) -> Vec<ExponentVector> {
        v.iter().map(|p| ExponentVector::new(p.to_vec()).unwrap()).collect()
    }

    fn boundary(v: &[&[i64]]) -> NewtonBoundary {
        let s = pts(v);
        newton_boundary(&newton_polyhedron(&s, s[0].dim()).unwrap())
    }

    #[test]
    fn hull_vertices() {
        let s = pts(&[&[0, 4], &[2, 2], &[3, 0]]);
        assert_eq!(brute_hull_vertices(&s, 2), pts(&[&[0, 4], &[3, 0]]).into_iter().collect());
        let s = pts(&[&[0, 4], &[1, 1], &[3, 0]]);
        assert_eq!(brute_hull_vertices(&s, 2).len(), 3);
        let s = pts(&[&[2, 5, 1]]);
        assert_eq!(brute_hull_vertices(&s, 3), s.into_iter().collect());
        let s = pts(&[&[1, 1], &[1, 1], &[2, 2]]);
        assert_eq!(brute_hull_vertices(&s, 2), pts(&[&[1, 1]]).into_iter().collect());
    }

    #[test]
    fn brute_counts() {
        assert_eq!(brute_pi_f(&boundary(&[&[0, 4], &[1, 1], &[3, 0]]), 4), 1);
        assert_eq!(brute_pi_f(&boundary(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]), 2), 0);
        assert_eq!(brute_pi_f(&boundary(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 7], &[1, 1, 1]]), 7), 1);
        assert_eq!(brute_pi_f(&boundary(&[&[4, 0], &[0, 4]]), 4), 3);
    }

    #[test]
    fn segment_points() {
        let p = |v: &[i64]| ExponentVector::new(v.to_vec()).unwrap();
        assert_eq!(segment_lattice_points(&p(&[0, 4]), &p(&[3, 0])).len(), 2);
        assert_eq!(
            segment_lattice_points(&p(&[4, 0]), &p(&[0, 4])),
            pts(&[&[4, 0], &[3, 1], &[2, 2], &[1, 3], &[0, 4]])
        );
        assert_eq!(
            segment_lattice_points(&p(&[2, 0, 0]), &p(&[0, 0, 4])),
            pts(&[&[2, 0, 0], &[1, 0, 2], &[0, 0, 4]])
        );
    }
}
