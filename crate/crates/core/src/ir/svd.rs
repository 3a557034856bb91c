//! Deterministic SVD for LSI: Householder QR followed by one-sided Jacobi.

use alloc::vec::Vec;

const MAX_SWEEPS: usize = 80;
const ORTHOGONALITY: f64 = 1e-15;

/// Singular values below this fraction of the largest are treated as zero.
pub const RELATIVE_CUTOFF: f64 = 1e-10;

/// Singular values in descending order with their right singular vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Svd {
    pub sigma: Vec<f64>,
    /// `v[j]` is the right singular vector paired with `sigma[j]`.
    pub v: Vec<Vec<f64>>,
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// The `n × n` factor R of `A = QR` for a tall matrix given as `n` columns.
fn householder_r(columns: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = columns.len();
    let m = columns.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<f64>> = columns.to_vec();
    for k in 0..n.min(m) {
        let norm = libm::sqrt(dot(&a[k][k..], &a[k][k..]));
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vv = dot(&v, &v);
        if vv == 0.0 {
            continue;
        }
        for col in a.iter_mut().skip(k) {
            let s = 2.0 * dot(&v, &col[k..]) / vv;
            for (x, vi) in col[k..].iter_mut().zip(&v) {
                *x -= s * vi;
            }
        }
    }
    a.iter()
        .enumerate()
        .map(|(j, col)| (0..n).map(|i| if i <= j && i < m { col[i] } else { 0.0 }).collect())
        .collect()
}

/// SVD of a matrix given as columns (one per document).
///
/// Matrices with more rows than columns are first reduced to their R factor,
/// which has the same singular values and right singular vectors.
pub fn svd_columns(columns: &[Vec<f64>]) -> Svd {
    let n = columns.len();
    let m = columns.first().map_or(0, Vec::len);
    let mut w = if m > n {
        householder_r(columns)
    } else {
        columns.to_vec()
    };
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = alloc::vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&w[p], &w[p]);
                let beta = dot(&w[q], &w[q]);
                let gamma = dot(&w[p], &w[q]);
                if alpha == 0.0 || beta == 0.0 || gamma.abs() <= ORTHOGONALITY * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                rotate(&mut w, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = w.iter().map(|col| libm::sqrt(dot(col, col))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    let max = order.first().map_or(0.0, |&i| norms[i]);
    let sigma = order
        .iter()
        .map(|&i| {
            if norms[i] < RELATIVE_CUTOFF * max {
                0.0
            } else {
                norms[i]
            }
        })
        .collect();
    let v = order.iter().map(|&i| v[i].clone()).collect();
    Svd { sigma, v }
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    let (wp, wq) = (&mut left[p], &mut right[0]);
    for (x, y) in wp.iter_mut().zip(wq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}
