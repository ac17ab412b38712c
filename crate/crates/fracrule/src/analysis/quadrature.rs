//! Fixed-order Gauss–Legendre quadrature.

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1],
/// returned in ascending node order.
///
/// Nodes are Newton-refined roots of the Legendre polynomial Pₙ; the usual
/// cosine initial guess converges in a handful of iterations. The rule
/// integrates polynomials of degree ≤ 2n−1 exactly.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be at least 1");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Initial guess for the i-th root (descending order).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 {
                let (_, d_final) = legendre_with_derivative(n, x);
                dp = d_final;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Roots come out descending; store symmetrically, ascending.
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        // The middle node of an odd rule is exactly 0.
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_with_derivative(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

/// (Pₙ(x), Pₙ′(x)) via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k_f = k as f64;
        let p_next = ((2.0 * k_f - 1.0) * x * p - (k_f - 1.0) * p_prev) / k_f;
        p_prev = p;
        p = p_next;
    }
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}
