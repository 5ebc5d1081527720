//! Uniform-grid quadrature and differentiation.

use num_complex::Complex64;

/// `n` uniformly spaced samples from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { b } else { a + h * i as f64 })
                .collect()
        }
    }
}

/// Trapezoid weights for `n` nodes with spacing `h`.
pub fn trapezoid_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![h; n];
    if n >= 2 {
        w[0] = 0.5 * h;
        w[n - 1] = 0.5 * h;
    }
    w
}

/// Trapezoid rule for samples `f` with spacing `h`, summed left to right.
pub fn trapezoid(f: &[f64], h: f64) -> f64 {
    match f.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = f[1..n - 1].iter().sum();
            h * (inner + 0.5 * (f[0] + f[n - 1]))
        }
    }
}

/// Minimum number of nodes accepted by [`derivative`].
pub const DERIVATIVE_MIN_NODES: usize = 5;

/// Fourth-order finite-difference derivative: central stencil inside,
/// one-sided stencils on the two outermost nodes at each end.
///
/// Returns `None` when fewer than [`DERIVATIVE_MIN_NODES`] samples are given.
pub fn derivative(f: &[Complex64], h: f64) -> Option<Vec<Complex64>> {
    let n = f.len();
    if n < DERIVATIVE_MIN_NODES {
        return None;
    }
    let s = 1.0 / (12.0 * h);
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    for i in 2..n - 2 {
        d[i] = (-f[i + 2] + f[i + 1] * 8.0 - f[i - 1] * 8.0 + f[i - 2]) * s;
    }
    d[0] = (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) * s;
    d[1] = (f[0] * -3.0 - f[1] * 10.0 + f[2] * 18.0 - f[3] * 6.0 + f[4]) * s;
    let m = n - 1;
    d[m] = -(f[m] * -25.0 + f[m - 1] * 48.0 - f[m - 2] * 36.0 + f[m - 3] * 16.0 - f[m - 4] * 3.0) * s;
    d[m - 1] = -(f[m] * -3.0 - f[m - 1] * 10.0 + f[m - 2] * 18.0 - f[m - 3] * 6.0 + f[m - 4]) * s;
    Some(d)
}

/// Dense matrix of [`derivative`], row-major: `(D f)_i = sum_j D[i][j] f_j`.
pub fn derivative_matrix(n: usize, h: f64) -> Option<Vec<Vec<f64>>> {
    if n < DERIVATIVE_MIN_NODES {
        return None;
    }
    let s = 1.0 / (12.0 * h);
    let mut d = vec![vec![0.0; n]; n];
    for (i, row) in d.iter_mut().enumerate().take(n - 2).skip(2) {
        row[i + 2] = -s;
        row[i + 1] = 8.0 * s;
        row[i - 1] = -8.0 * s;
        row[i - 2] = s;
    }
    let left0 = [-25.0, 48.0, -36.0, 16.0, -3.0];
    let left1 = [-3.0, -10.0, 18.0, -6.0, 1.0];
    let m = n - 1;
    for k in 0..5 {
        d[0][k] = left0[k] * s;
        d[1][k] = left1[k] * s;
        d[m][m - k] = -left0[k] * s;
        d[m - 1][m - k] = -left1[k] * s;
    }
    Some(d)
}
