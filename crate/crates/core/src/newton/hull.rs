//! Facet enumeration by exhaustive supporting-hyperplane search, and face
//! lattices recovered from facet incidences.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;

use crate::linalg::kernel_basis;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Halfspace {
    /// Inner normal: points of the hull satisfy `normal·x >= offset`.
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Halfspace {
    pub fn value(&self, p: &[i64]) -> i64 {
        self.normal.iter().zip(p).map(|(a, b)| a * b).sum()
    }

    pub fn is_tight(&self, p: &[i64]) -> bool {
        self.value(p) == self.offset
    }
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Drops points that dominate another point coordinatewise; they are never
/// vertices of `conv(points) + R^n_{>=0}` and never needed to span a facet.
pub(crate) fn undominated(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let distinct: BTreeSet<&Vec<i64>> = points.iter().collect();
    distinct
        .iter()
        .filter(|p| {
            !distinct
                .iter()
                .any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))
        })
        .map(|p| (*p).clone())
        .collect()
}

/// Facets of `conv(points) + R^n_{>=0}`.
///
/// Every facet is spanned by `k >= 1` points and `n - k` coordinate
/// directions; each such choice whose span is a hyperplane is tested.
pub(crate) fn orthant_hull_facets(points: &[Vec<i64>], n: usize) -> Vec<Halfspace> {
    let mut found = BTreeSet::new();
    for k in 1..=n.min(points.len()) {
        for chosen in (0..points.len()).combinations(k) {
            let base = &points[chosen[0]];
            let point_rows: Vec<Vec<i64>> =
                chosen[1..].iter().map(|&i| diff(&points[i], base)).collect();
            for dirs in (0..n).combinations(n - k) {
                let mut rows = point_rows.clone();
                rows.extend(dirs.iter().map(|&i| unit(n, i)));
                let kernel = kernel_basis(&rows, n);
                if kernel.len() != 1 {
                    continue;
                }
                let mut normal = kernel.into_iter().next().unwrap();
                if normal.iter().all(|&a| a <= 0) {
                    normal.iter_mut().for_each(|a| *a = -*a);
                } else if normal.iter().any(|&a| a < 0) {
                    // the recession cone forces a nonnegative normal
                    continue;
                }
                let h = Halfspace {
                    offset: base.iter().zip(&normal).map(|(a, b)| a * b).sum(),
                    normal,
                };
                if points.iter().all(|p| h.value(p) >= h.offset) {
                    found.insert(h);
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Facets of the full-dimensional polytope `conv(points)` in `R^k`.
pub(crate) fn polytope_facets(points: &[Vec<i64>], k: usize) -> Vec<Halfspace> {
    let mut found = BTreeSet::new();
    for chosen in (0..points.len()).combinations(k) {
        let base = &points[chosen[0]];
        let rows: Vec<Vec<i64>> = chosen[1..].iter().map(|&i| diff(&points[i], base)).collect();
        let kernel = kernel_basis(&rows, k);
        if kernel.len() != 1 {
            continue;
        }
        let normal = kernel.into_iter().next().unwrap();
        let mut h = Halfspace {
            offset: base.iter().zip(&normal).map(|(a, b)| a * b).sum(),
            normal,
        };
        let above = points.iter().all(|p| h.value(p) >= h.offset);
        let below = points.iter().all(|p| h.value(p) <= h.offset);
        if above == below {
            continue;
        }
        if below {
            h.normal.iter_mut().for_each(|a| *a = -*a);
            h.offset = -h.offset;
        }
        found.insert(h);
    }
    found.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FaceRecord {
    pub vertex_ids: Vec<usize>,
    pub facet_ids: Vec<usize>,
}

/// All faces reachable as smallest faces containing vertex subsets, subject to
/// `admissible` on the set of facets tight along the face.
pub(crate) fn face_lattice<F>(vertices: &[Vec<i64>], facets: &[Halfspace], admissible: F) -> Vec<FaceRecord>
where
    F: Fn(&[usize]) -> bool,
{
    let tight: Vec<BTreeSet<usize>> = vertices
        .iter()
        .map(|v| {
            facets
                .iter()
                .enumerate()
                .filter(|(_, h)| h.is_tight(v))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let closure = |s: &BTreeSet<usize>| -> Vec<usize> {
        (0..vertices.len())
            .filter(|&w| s.is_subset(&tight[w]))
            .collect()
    };

    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue: VecDeque<(Vec<usize>, BTreeSet<usize>)> = VecDeque::new();
    for s in tight.iter().cloned() {
        let ids: Vec<usize> = s.iter().copied().collect();
        if !admissible(&ids) {
            continue;
        }
        let u = closure(&s);
        if seen.insert(u.clone()) {
            queue.push_back((u, s));
        }
    }
    while let Some((u, s)) = queue.pop_front() {
        for (w, tw) in tight.iter().enumerate() {
            if u.contains(&w) {
                continue;
            }
            let s2: BTreeSet<usize> = s.intersection(tw).copied().collect();
            let ids: Vec<usize> = s2.iter().copied().collect();
            if !admissible(&ids) {
                continue;
            }
            let u2 = closure(&s2);
            if seen.insert(u2.clone()) {
                queue.push_back((u2, s2));
            }
        }
        out.push(FaceRecord {
            vertex_ids: u,
            facet_ids: s.into_iter().collect(),
        });
    }
    out
}
