//! Small exact integer linear algebra used by the hull code.

use num_integer::Integer;

pub(crate) fn gcd_slice(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides a vector by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

fn normalize_row(row: &mut [i128]) {
    let g = gcd_slice(row);
    if g > 1 {
        row.iter_mut().for_each(|x| *x /= g);
    }
}

/// Fraction-free reduction to a form where each pivot column is zero outside
/// its pivot row. Returns the reduced rows and pivot columns.
fn reduce(rows: &[Vec<i128>], cols: usize) -> (Vec<Vec<i128>>, Vec<usize>) {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        normalize_row(&mut m[r]);
        for j in 0..m.len() {
            if j == r || m[j][c] == 0 {
                continue;
            }
            let a = m[r][c];
            let b = m[j][c];
            let pivot_row = m[r].clone();
            for (x, y) in m[j].iter_mut().zip(&pivot_row) {
                *x = *x * a - y * b;
            }
            normalize_row(&mut m[j]);
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let wide: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    reduce(&wide, cols).1.len()
}

/// Integer basis of the rational kernel of `rows` (each vector primitive).
pub fn kernel_basis(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let wide: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let (m, pivots) = reduce(&wide, cols);
    let lcm = pivots
        .iter()
        .enumerate()
        .fold(1i128, |l, (r, &c)| l.lcm(&m[r][c].abs()));
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0i128; cols];
        v[free] = lcm;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free] * (lcm / m[r][c]);
        }
        let g = gcd_slice(&v);
        basis.push(v.iter().map(|x| i64::try_from(x / g).expect("kernel entry overflow")).collect());
    }
    basis
}

/// Dimension of the affine hull of `points` (-1 for no points is reported as `None`).
pub fn affine_dimension(points: &[&[i64]]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<i64>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&diffs, first.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_line_through_figure_one_points() {
        // direction (3,-4) between (0,4) and (3,0)
        let k = kernel_basis(&[vec![3, -4]], 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0] * 3 - v[1] * 4, 0);
        assert_eq!(gcd_all(v).abs(), 1);
        assert_eq!(v.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![4, 3]);
    }

    #[test]
    fn kernel_dimension_and_rank() {
        assert_eq!(kernel_basis(&[], 3).len(), 3);
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6]], 3), 1);
        let k = kernel_basis(&[vec![1, 2, 3], vec![2, 4, 6]], 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!(v[0] + 2 * v[1] + 3 * v[2], 0);
        }
    }

    #[test]
    fn affine_dimensions() {
        assert_eq!(affine_dimension(&[&[1, 1]]), Some(0));
        assert_eq!(affine_dimension(&[&[2, 0], &[1, 1], &[0, 2]]), Some(1));
        assert_eq!(affine_dimension(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]), Some(2));
        assert_eq!(affine_dimension(&[]), None);
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[4, 6, 8]), vec![2, 3, 4]);
        assert_eq!(primitive(&[0, 0]), vec![0, 0]);
    }
}
