//! Gauss–Legendre quadrature rules of arbitrary order.
//!
//! Nodes are the roots of the Legendre polynomial `P_n`, found by Newton's
//! method from the classical Chebyshev-like initial guesses; weights follow
//! from `w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2)`.  For the orders used here
//! (up to a few thousand) the nodes converge to machine precision in a
//! handful of iterations and the whole rule costs `O(n^2)`.
//!
//! An `n`-point rule integrates polynomials up to degree `2n - 1` exactly;
//! for smooth oscillatory integrands it converges once `n` exceeds roughly
//! half the maximum phase rotation (in radians) across the interval, which
//! is what the correlation module's automatic node selection is based on.

/// A one-dimensional Gauss–Legendre rule mapped onto `[a, b]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    /// Quadrature nodes in ascending order.
    pub nodes: Vec<f64>,
    /// Positive weights, summing to `b - a`.
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the `n`-point rule on the interval `[a, b]` (`a < b`).
    ///
    /// # Panics
    ///
    /// Panics if `n == 0` or the interval is empty or not finite; callers
    /// validate their inputs before reaching this low-level routine.
    pub fn new(n: usize, a: f64, b: f64) -> Self {
        assert!(n > 0, "quadrature order must be positive");
        assert!(a.is_finite() && b.is_finite() && a < b, "invalid interval [{a}, {b}]");
        let (ref_nodes, ref_weights) = reference_rule(n);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let nodes = ref_nodes.iter().map(|&x| mid + half * x).collect();
        let weights = ref_weights.iter().map(|&w| half * w).collect();
        Self { nodes, weights }
    }

    /// Number of nodes.
    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// True when the rule has no nodes (never, for constructed rules).
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates `f` over the rule's interval.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Reference nodes and weights on `[-1, 1]`.
fn reference_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    // Roots come in symmetric pairs; solve for the non-negative half.
    for i in 0..n.div_ceil(2) {
        // Initial guess for the i-th root (descending order).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() <= 1e-15 * x.abs().max(1.0) {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Store the pair; descending guesses fill from the top end.
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        // Central node of odd rules is exactly zero.
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Evaluates `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}
