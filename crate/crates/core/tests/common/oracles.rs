//! Reference implementations written independently of the library, used
//! as test oracles.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};

/// Percentile by the 1-indexed rank `R = rho/100 * (n+1)`, clamped to the
/// data, with linear interpolation between neighbouring order statistics.
pub fn percentile(sorted: &[f64], rho: f64) -> f64 {
    let n = sorted.len();
    let rank = rho / 100.0 * (n as f64 + 1.0);
    if rank <= 1.0 {
        return sorted[0];
    }
    if rank >= n as f64 {
        return sorted[n - 1];
    }
    let lo = rank.floor() as usize;
    let frac = rank - lo as f64;
    let a = sorted[lo - 1];
    let b = sorted[lo];
    a + frac * (b - a)
}

/// Sample covariance (divisor n-1) of row-major data.
pub fn covariance(rows: &[Vec<f64>]) -> DMatrix<f64> {
    let n = rows.len();
    let d = rows[0].len();
    let x = DMatrix::from_fn(n, d, |i, j| rows[i][j]);
    let mean = x.row_mean();
    let centered = DMatrix::from_fn(n, d, |i, j| x[(i, j)] - mean[j]);
    centered.transpose() * &centered / (n as f64 - 1.0)
}

/// Eigenpairs of the sample covariance, eigenvalues descending, each vector
/// flipped so its largest-magnitude entry is positive.
pub fn covariance_eigen(rows: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let eig = SymmetricEigen::new(covariance(rows));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| {
            let mut v: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
            flip_sign(&mut v);
            v
        })
        .collect();
    (values, vectors)
}

pub fn flip_sign(v: &mut [f64]) {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i].abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn sse_of_groups(points: &[Vec<f64>], groups: &[usize], n_groups: usize) -> f64 {
    let d = points[0].len();
    let mut sums = vec![vec![0.0; d]; n_groups];
    let mut counts = vec![0usize; n_groups];
    for (p, &g) in points.iter().zip(groups) {
        counts[g] += 1;
        for j in 0..d {
            sums[g][j] += p[j];
        }
    }
    points
        .iter()
        .zip(groups)
        .map(|(p, &g)| {
            (0..d)
                .map(|j| {
                    let diff = p[j] - sums[g][j] / counts[g] as f64;
                    diff * diff
                })
                .sum::<f64>()
        })
        .sum()
}

/// Smallest within-cluster sum of squares over every partition of the
/// points into at most `k` non-empty groups.
pub fn optimal_sse(points: &[Vec<f64>], k: usize) -> f64 {
    let n = points.len();
    let mut groups = vec![0usize; n];
    let mut best = f64::INFINITY;
    // Restricted growth strings enumerate each set partition once.
    fn rec(
        i: usize,
        used: usize,
        k: usize,
        groups: &mut [usize],
        points: &[Vec<f64>],
        best: &mut f64,
    ) {
        if i == groups.len() {
            *best = best.min(sse_of_groups(points, groups, used));
            return;
        }
        for g in 0..(used + 1).min(k) {
            groups[i] = g;
            rec(i + 1, used.max(g + 1), k, groups, points, best);
        }
    }
    rec(0, 0, k, &mut groups, points, &mut best);
    best
}

/// Adjusted Rand index from pair counts over all n(n-1)/2 pairs.
pub fn pair_counting_ari(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len();
    let (mut both, mut only_a, mut only_b, mut neither) = (0f64, 0f64, 0f64, 0f64);
    for i in 0..n {
        for j in i + 1..n {
            match (a[i] == a[j], b[i] == b[j]) {
                (true, true) => both += 1.0,
                (true, false) => only_a += 1.0,
                (false, true) => only_b += 1.0,
                (false, false) => neither += 1.0,
            }
        }
    }
    let total = both + only_a + only_b + neither;
    let expected = (both + only_a) * (both + only_b) / total;
    let max = ((both + only_a) + (both + only_b)) / 2.0;
    if max == expected {
        return 1.0;
    }
    (both - expected) / (max - expected)
}
