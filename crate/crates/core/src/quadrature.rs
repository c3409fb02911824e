//! Gauss-Legendre rules and composite integration over `[a, b]`.

use crate::scalar::Real;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Builds the rule by Newton iteration on `P_n` from Chebyshev-like
    /// starting points. `n = 0` yields an empty rule.
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = T::lit(n as f64);
        let two = T::lit(2.0);
        for i in 0..n.div_ceil(2) {
            let mut x = (T::PI() * (T::lit(i as f64) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() <= T::epsilon() * T::lit(4.0) {
                    break;
                }
            }
            let dp = legendre(n, x).1;
            let w = two / ((T::one() - x * x) * dp * dp);
            nodes[i] = x;
            nodes[n - 1 - i] = -x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Composite rule on `[a, b]` split into `panels` equal pieces; calls
    /// `visit(x, w)` for every node with its scaled weight.
    pub fn for_each_node(&self, a: T, b: T, panels: usize, mut visit: impl FnMut(T, T)) {
        let h = (b - a) / T::lit(panels as f64);
        let half = h / T::lit(2.0);
        for p in 0..panels {
            let mid = a + h * (T::lit(p as f64) + T::lit(0.5));
            for (&x, &w) in self.nodes.iter().zip(&self.weights) {
                visit(mid + half * x, half * w);
            }
        }
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (T::one(), T::zero());
    }
    for k in 2..=n {
        let kf = T::lit(k as f64);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::lit(n as f64);
    (p1, nf * (x * p1 - p0) / (x * x - T::one()))
}
