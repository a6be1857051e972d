//! Symmetric tridiagonal eigenproblems.
//!
//! The matrix is given by its diagonal `d` (length n) and off-diagonal `e`
//! (length n−1). Eigenvalues come from Sturm-sequence bisection, eigenvectors
//! from inverse iteration with partial pivoting.

/// Number of eigenvalues strictly less than `x`.
pub fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let n = d.len();
    let mut count = 0;
    let mut q = d[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let denom = if q.abs() < f64::MIN_POSITIVE.sqrt() { f64::MIN_POSITIVE.sqrt().copysign(q) } else { q };
        q = d[i] - x - e[i - 1] * e[i - 1] / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin interval containing the whole spectrum.
pub fn gershgorin(d: &[f64], e: &[f64]) -> (f64, f64) {
    let n = d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - left - right);
        hi = hi.max(d[i] + left + right);
    }
    (lo, hi)
}

/// The `k`-th smallest eigenvalue (0-based) by bisection.
pub fn bisect_eigenvalue(d: &[f64], e: &[f64], k: usize) -> f64 {
    let (mut lo, mut hi) = gershgorin(d, e);
    let span = (hi - lo).max(1.0);
    lo -= 1e-12 * span;
    hi += 1e-12 * span;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(d, e, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves `(T − σI) x = b` in place with partial pivoting.
fn shifted_solve(d: &[f64], e: &[f64], sigma: f64, b: &mut [f64]) {
    let n = d.len();
    if n == 1 {
        let p = d[0] - sigma;
        b[0] /= if p == 0.0 { f64::EPSILON } else { p };
        return;
    }
    // Upper factor rows: u0 (diagonal), u1, u2 (two superdiagonals).
    let mut u0 = vec![0.0; n];
    let mut u1 = vec![0.0; n];
    let mut u2 = vec![0.0; n];
    let mut diag = d[0] - sigma;
    let mut sup = e[0];
    for i in 0..n - 1 {
        let sub = e[i];
        let next_diag = d[i + 1] - sigma;
        let next_sup = if i + 1 < n - 1 { e[i + 1] } else { 0.0 };
        if diag.abs() >= sub.abs() {
            let piv = if diag == 0.0 { f64::EPSILON } else { diag };
            let m = sub / piv;
            u0[i] = piv;
            u1[i] = sup;
            u2[i] = 0.0;
            b[i + 1] -= m * b[i];
            diag = next_diag - m * sup;
            sup = next_sup;
        } else {
            let m = diag / sub;
            u0[i] = sub;
            u1[i] = next_diag;
            u2[i] = next_sup;
            b.swap(i, i + 1);
            b[i + 1] -= m * b[i];
            let new_diag = sup - m * next_diag;
            sup = -m * next_sup;
            diag = new_diag;
        }
    }
    u0[n - 1] = if diag == 0.0 { f64::EPSILON } else { diag };
    for i in (0..n).rev() {
        let mut s = b[i];
        if i + 1 < n {
            s -= u1[i] * b[i + 1];
        }
        if i + 2 < n {
            s -= u2[i] * b[i + 2];
        }
        b[i] = s / u0[i];
    }
}

/// Unit eigenvector for the eigenvalue `lambda` by inverse iteration.
pub fn inverse_iteration(d: &[f64], e: &[f64], lambda: f64) -> Vec<f64> {
    let n = d.len();
    let (lo, hi) = gershgorin(d, e);
    let sigma = lambda + 1e-10 * (hi - lo).max(1.0) * f64::EPSILON.sqrt();
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64 / 13.0).collect();
    for _ in 0..4 {
        shifted_solve(d, e, sigma, &mut v);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    v
}
